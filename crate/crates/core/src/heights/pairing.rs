use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::HeightContext;
use crate::coleman::{
    basis_integrals, integrate_antisym, tiny_integral, tiny_order, weierstrass_disc_antiderivative, Differential, IntegralResult,
    MeromorphicIntegral,
};
use crate::curve::{AntisymDivisor, Disc, GeneralDivisor, Point, ThirdKindForm};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::padic::Padic;
use crate::polyseries::Poly;

/// `Res(a, b) = prod_{a(r) = 0} b(r)` for monic `a`, as the determinant of
/// multiplication by `b` on `Q[x]/(a)`.
pub fn resultant(a: &Poly<BigRational>, b: &Poly<BigRational>) -> Result<BigRational> {
    let a = a.monic()?;
    let d = a.degree().unwrap_or(0);
    if d == 0 {
        return Ok(BigRational::from_integer(1.into()));
    }
    let zero = BigRational::zero();
    let mut cols = Vec::with_capacity(d);
    for k in 0..d {
        let r = b.mul(&Poly::monomial(k, &zero)).rem(&a)?;
        cols.push((0..d).map(|i| r.coeff(i)).collect::<Vec<_>>());
    }
    Ok(Matrix::from_fn(d, d, |i, j| cols[j][i].clone()).determinant())
}

/// The three terms of an antisymmetric local height and their sum.
#[derive(Clone, Debug)]
pub struct HeightBreakdown {
    /// `h(D1, D2^w)`.
    pub weierstrass: Padic,
    /// `h(D1^w, D2^nw)`, by symmetry.
    pub cross: Padic,
    /// `h(D1^nw, D2^nw)`.
    pub non_weierstrass: Padic,
    pub total: IntegralResult,
    /// Labeled intermediate values.
    pub trace: Vec<(String, String)>,
}

impl fmt::Display for HeightBreakdown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.total)
    }
}

/// `h(D1, D2) = 1/4 log((a1/c1)(D2+)) + 1/4 h(D1-, D2-)`.
#[derive(Clone, Debug)]
pub struct GeneralHeight {
    pub plus_quarter: Padic,
    pub minus_quarter: Padic,
    pub minus_parts: Vec<HeightBreakdown>,
    pub total: IntegralResult,
}

type Pairs = Vec<(Point, i64)>;

fn label(v: &[Padic]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl HeightContext {
    fn split_wnw(&self, d: &[(Point, i64)]) -> Result<(Pairs, Pairs)> {
        let mut w = Vec::new();
        let mut nw = Vec::new();
        for (pt, m) in d {
            match self.curve.disc(pt) {
                Disc::Infinity => {
                    return Err(Error::Unsupported("divisor meets the residue disc at infinity".into()))
                }
                Disc::Weierstrass(_) => w.push((pt.clone(), *m)),
                Disc::NonWeierstrass(..) => nw.push((pt.clone(), *m)),
            }
        }
        Ok((w, nw))
    }

    fn check_disjoint(&self, d1: &[(Point, i64)], d2: &[(Point, i64)]) -> Result<()> {
        for (a, _) in d1 {
            for (b, _) in d2 {
                if a.x.agrees_with(&b.x) {
                    return Err(Error::SupportOverlap(format!("{a:?} and {b:?} share an x-coordinate")));
                }
            }
        }
        Ok(())
    }

    /// `sum_k m_k int_{-R_k}^{R_k} (sum_i c_i w_i)` over basis integrals.
    fn holomorphic_over_pairs(&self, coeffs: &[Padic], d: &[(Point, i64)]) -> Result<Padic> {
        let mut acc = self.curve.zero();
        for (r, m) in d {
            let ints = basis_integrals(&self.curve, &self.fd, &r.involution(), r)?;
            for (c, i) in coeffs.iter().zip(&ints) {
                acc = acc.add(&c.mul(&i.value).mul_int(*m));
            }
        }
        Ok(acc)
    }

    /// `int_{D2^nw} nu_1` for `nu_1` with poles at `D1^nw`, by reciprocity.
    pub fn integrate_nw(&self, nu: &ThirdKindForm, psi_nu: &[Padic], d2: &[(Point, i64)]) -> Result<MeromorphicIntegral> {
        let beta = ThirdKindForm::for_pairs(d2);
        let psi_beta = self.psi_third(&beta)?;
        integrate_antisym(&self.curve, &self.fd, &self.cup_padic, nu, psi_nu, d2, &psi_beta)
    }

    /// The local height of two antisymmetric divisors given as point pairs
    /// `m ((P) - (-P))`.
    pub fn height_pairs(&self, d1: &[(Point, i64)], d2: &[(Point, i64)]) -> Result<HeightBreakdown> {
        self.check_disjoint(d1, d2)?;
        let (d1w, d1nw) = self.split_wnw(d1)?;
        let (d2w, d2nw) = self.split_wnw(d2)?;
        let zero = self.curve.zero();
        let n_work = self.work();
        let mut trace = Vec::new();

        let nu1w = ThirdKindForm::for_pairs(&d1w);
        let nu1nw = ThirdKindForm::for_pairs(&d1nw);
        let psi1nw = if d1nw.is_empty() { vec![zero.clone(); 2 * self.genus()] } else { self.psi_third(&nu1nw)? };
        let psi1w = if d1w.is_empty() { vec![zero.clone(); 2 * self.genus()] } else { self.psi_third(&nu1w)? };
        let psi1: Vec<Padic> = psi1w.iter().zip(&psi1nw).map(|(a, b)| a.add(b)).collect();
        let eta1 = self.eta(&psi1)?;
        trace.push(("psi(nu_1)".into(), label(&psi1)));
        trace.push(("psi(nu_1) in basis w_0..w_(g-1), W".into(), label(&self.w_coordinates(&psi1)?)));
        trace.push(("eta_1".into(), label(&eta1)));

        // (i) W-disc points of D2: in-disc antiderivatives of omega_D1
        let mut weier = zero.clone();
        if !d2w.is_empty() {
            let form = Differential { holo: eta1.iter().map(|e| e.neg()).collect(), third: nu1w.add(&nu1nw) };
            let order = tiny_order(self.curve.prime(), n_work + 2) + 4;
            for (r, m) in &d2w {
                let a = weierstrass_disc_antiderivative(&self.curve, &form, r, order, &self.branch)?;
                let v = a.eval_between(&r.y.neg(), &r.y)?;
                trace.push((format!("int_(-R)^R omega_D1, R = {r:?}"), v.to_string()));
                weier = weier.add(&v.mul_int(*m));
            }
        }

        // (ii) h(D1^w, D2^nw) = int_{D1^w} omega_{D2^nw}
        let mut cross = zero.clone();
        if !d1w.is_empty() && !d2nw.is_empty() {
            let (form, _) = self.omega_d(&ThirdKindForm::for_pairs(&d2nw))?;
            for (q, m) in &d1w {
                let v = tiny_integral(&self.curve, &form, &q.involution(), q, n_work + 2)?.value;
                trace.push((format!("int_(-Q)^Q omega_D2nw, Q = {q:?}"), v.to_string()));
                cross = cross.add(&v.mul_int(*m));
            }
        }

        // (iii) h(D1^nw, D2^nw) = int_{D2^nw} nu - int_{D2^nw} eta
        let mut nonw = zero.clone();
        if !d1nw.is_empty() && !d2nw.is_empty() {
            let mi = self.integrate_nw(&nu1nw, &psi1nw, &d2nw)?;
            let eta_nw = self.eta(&psi1nw)?;
            let eta_int = self.holomorphic_over_pairs(&eta_nw, &d2nw)?;
            trace.push(("psi(alpha)".into(), label(&mi.psi_alpha)));
            trace.push(("psi(alpha) in basis w_0..w_(g-1), W".into(), label(&self.w_coordinates(&mi.psi_alpha)?)));
            trace.push(("psi(alpha) cup psi(beta)".into(), mi.cup.to_string()));
            for (l, v) in &mi.residues.contributions {
                trace.push((format!("residue {l}"), v.to_string()));
            }
            trace.push(("residues, non-Weierstrass".into(), mi.residues.non_weierstrass.to_string()));
            trace.push(("residues, Weierstrass".into(), mi.residues.weierstrass.to_string()));
            for (l, v) in &mi.tiny {
                trace.push((l.clone(), v.to_string()));
            }
            trace.push(("int_D2 nu_1".into(), mi.value.value.to_string()));
            trace.push(("int_D2 eta_1".into(), eta_int.to_string()));
            nonw = mi.value.value.sub(&eta_int);
        }

        let total = weier.add(&cross).add(&nonw);
        let log = vec![format!("requested {} digits, tracked {}", self.n, total.abs_prec())];
        Ok(HeightBreakdown {
            weierstrass: weier,
            cross,
            non_weierstrass: nonw,
            total: IntegralResult::new(total, self.n as i64, log),
            trace,
        })
    }

    fn pairs_of(&self, d: &AntisymDivisor) -> Result<Pairs> {
        Ok(d.pairs(&self.curve)?.into_iter().map(|pp| (pp.point, pp.mult)).collect())
    }

    /// Local height of antisymmetric divisors `[a1, b1]`, `[a2, b2]`.
    pub fn height_antisym(&self, d1: &AntisymDivisor, d2: &AntisymDivisor) -> Result<HeightBreakdown> {
        if d1.a.gcd(&d2.a).degree() != Some(0) {
            return Err(Error::SupportOverlap("antisymmetric divisors share support".into()));
        }
        self.height_pairs(&self.pairs_of(d1)?, &self.pairs_of(d2)?)
    }

    /// Local height of general degree-zero divisors.
    pub fn height_general(&self, d1: &GeneralDivisor, d2: &GeneralDivisor) -> Result<GeneralHeight> {
        let ((a1, c1), m1) = d1.decompose_pm()?;
        let ((a2, c2), m2) = d2.decompose_pm()?;
        // (a1/c1)(D2+) = q^2 with q = (Res(a2,a1)/Res(a2,c1)) / (Res(c2,a1)/Res(c2,c1))
        let r = |x: &Poly<BigRational>, y: &Poly<BigRational>| -> Result<BigRational> {
            let v = resultant(x, y)?;
            if Zero::is_zero(&v) {
                return Err(Error::SupportOverlap("divisors share an x-coordinate".into()));
            }
            Ok(v)
        };
        let q = (r(&a2, &a1)? / r(&a2, &c1)?) / (r(&c2, &a1)? / r(&c2, &c1)?);
        let plus_quarter = self.curve.rational(&q).log(&self.branch)?.div_int(2)?;
        let p1 = self.pairs_of(&m1)?;
        let p2 = self.pairs_of(&m2)?;
        let mut minus = self.curve.zero();
        let mut minus_parts = Vec::new();
        for a in &p1 {
            for b in &p2 {
                let h = self.height_pairs(std::slice::from_ref(a), std::slice::from_ref(b))?;
                minus = minus.add(&h.total.value);
                minus_parts.push(h);
            }
        }
        let minus_quarter = minus.div_int(4)?;
        let total = plus_quarter.add(&minus_quarter);
        let log = vec![format!("plus part to {}, minus part to {}", plus_quarter.abs_prec(), minus_quarter.abs_prec())];
        Ok(GeneralHeight {
            plus_quarter,
            minus_quarter,
            minus_parts,
            total: IntegralResult::new(total, self.n as i64, log),
        })
    }
}
