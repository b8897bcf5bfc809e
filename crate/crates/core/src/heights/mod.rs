//! Cup products, the map Psi from third-kind forms to cohomology, the forms
//! `omega_D`, and local heights at p.

mod pairing;

pub use pairing::{resultant, GeneralHeight, HeightBreakdown};

use num_rational::BigRational;

use crate::coleman::{basis_integrals, tiny_integrals, Differential};
use crate::curve::{CurveModel, Disc, InfinityChart, Point, ThirdKindForm};
use crate::error::{Error, Result};
use crate::frobenius::{frobenius_matrix, FrobData, SubspaceW};
use crate::linalg::Matrix;
use crate::padic::{BranchSpec, Padic};
use crate::polyseries::Series;

/// `N_ij = Res_inf(w_j int w_i)`, exactly.
pub fn cup_matrix(curve: &CurveModel) -> Matrix<BigRational> {
    let g = curve.genus();
    let chart = InfinityChart::new(curve.f_rational(), 4 * g + 6).expect("chart at infinity over Q");
    let ints: Vec<Series<BigRational>> = chart
        .omegas
        .iter()
        .map(|w| w.integrate().expect("basis forms have no residue at infinity"))
        .collect();
    Matrix::from_fn(2 * g, 2 * g, |i, j| chart.omegas[j].mul(&ints[i]).residue())
}

/// `a cup b = sum_ij a_i b_j N_ij`.
pub fn cup_product(n: &Matrix<Padic>, a: &[Padic], b: &[Padic]) -> Padic {
    let nb = n.mul_vec(b);
    a.iter().zip(&nb).fold(nb[0].zero_like(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// How the complement `W` to the holomorphic forms is chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum WPolicy {
    /// The unit-root subspace (ordinary reduction only).
    UnitRoot,
    /// `span{w_1}`, genus 1 only.
    G1Omega1,
    /// Columns of a `2g x g` matrix.
    Explicit(Vec<Vec<BigRational>>),
}

/// Everything a local height at p depends on.
#[derive(Clone, Debug)]
pub struct HeightContext {
    pub curve: CurveModel,
    pub fd: FrobData,
    pub cup: Matrix<BigRational>,
    pub cup_padic: Matrix<Padic>,
    pub w: SubspaceW,
    pub policy: WPolicy,
    pub branch: BranchSpec,
    /// Requested absolute precision of results.
    pub n: u32,
}

/// Extra working digits on top of the requested precision.
pub const GUARD: u32 = 3;

impl HeightContext {
    pub fn new(f: Vec<BigRational>, p: u32, n: u32, policy: &WPolicy, branch: BranchSpec) -> Result<HeightContext> {
        Self::with_guard(f, p, n, GUARD, policy, branch)
    }

    pub fn with_guard(
        f: Vec<BigRational>,
        p: u32,
        n: u32,
        guard: u32,
        policy: &WPolicy,
        branch: BranchSpec,
    ) -> Result<HeightContext> {
        let n_work = n + guard;
        let curve = CurveModel::new(f, p, 2 * n_work + 4)?;
        let fd = frobenius_matrix(&curve, n_work)?;
        Self::from_parts(curve, fd, n, policy, branch)
    }

    /// Builds the context around a precomputed (e.g. cached) Frobenius matrix.
    pub fn from_parts(
        curve: CurveModel,
        fd: FrobData,
        n: u32,
        policy: &WPolicy,
        branch: BranchSpec,
    ) -> Result<HeightContext> {
        let g = curve.genus();
        let cup = cup_matrix(&curve);
        let cup_padic = cup.map(|q| curve.rational(q));
        let proto = curve.zero();
        let w = match policy {
            WPolicy::UnitRoot => SubspaceW::unit_root(&fd, fd.n_work)?,
            WPolicy::G1Omega1 => {
                if g != 1 {
                    return Err(Error::Validation("W policy g1-omega1 needs genus 1".into()));
                }
                SubspaceW::upper_span(1, &proto)
            }
            WPolicy::Explicit(cols) => {
                if cols.len() != 2 * g || cols.iter().any(|r| r.len() != g) {
                    return Err(Error::Validation(format!("explicit W must be {} x {g}", 2 * g)));
                }
                SubspaceW::explicit(Matrix::from_rows(
                    cols.iter().map(|r| r.iter().map(|q| curve.rational(q)).collect()).collect(),
                ))?
            }
        };
        let ctx = HeightContext { curve, fd, cup, cup_padic, w, policy: policy.clone(), branch, n };
        ctx.check_isotropic()?;
        Ok(ctx)
    }

    fn check_isotropic(&self) -> Result<()> {
        let g = self.w.basis.cols();
        for i in 0..g {
            for j in 0..g {
                let c = cup_product(&self.cup_padic, &self.w.basis.column(i), &self.w.basis.column(j));
                let floor = self.fd.n_work as i64 - 2 * self.w.complement_valuation()?.abs() - 2;
                if !c.truncate_abs(floor).is_zero() {
                    return Err(Error::Validation(format!("W is not isotropic: <w_{i}, w_{j}> = {c}")));
                }
            }
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    fn work(&self) -> i64 {
        self.fd.n_work as i64
    }

    /// `int_{-P}^{P} w_i` for all `i`.
    pub fn basis_over_pair(&self, pt: &Point) -> Result<Vec<Padic>> {
        let neg = pt.involution();
        match self.curve.disc(pt) {
            Disc::Infinity => Err(Error::Unsupported("divisor meets the residue disc at infinity".into())),
            Disc::NonWeierstrass(..) => {
                Ok(basis_integrals(&self.curve, &self.fd, &neg, pt)?.into_iter().map(|r| r.value).collect())
            }
            Disc::Weierstrass(_) => {
                let proto = self.curve.zero();
                let forms: Vec<Differential> = (0..2 * self.genus()).map(|i| Differential::basis(i, &proto)).collect();
                Ok(tiny_integrals(&self.curve, &forms, &neg, pt, self.work() + 2)?
                    .into_iter()
                    .map(|r| r.value)
                    .collect())
            }
        }
    }

    /// The point pairs `m ((P) - (-P))` making up the residue divisor of `nu`.
    pub fn residue_pairs(&self, nu: &ThirdKindForm) -> Result<Vec<(Point, Padic)>> {
        nu.terms
            .iter()
            .map(|(x, c)| {
                let y = self.curve.f().eval(x).sqrt()?;
                let m = c.div(&y)?;
                Ok((Point::new(x.clone(), y), m))
            })
            .collect()
    }

    /// `Res_inf(nu int w_j)` for all `j`.
    fn residues_at_infinity(&self, nu: &ThirdKindForm) -> Result<Vec<Padic>> {
        let g = self.genus();
        let order = 4 * g + 6;
        let chart = InfinityChart::new(self.curve.f(), order)?;
        let proto = self.curve.zero();
        let s = &chart.s;
        // dx / ((x - a) y) = -s' s^g / ((1 - a s) t) dt
        let t_inv = Series::exact(-1, vec![proto.one_like()], &proto);
        let base = s.derivative().mul(&s.pow(g)).mul(&t_inv).neg();
        let mut form = Series::zero(order as i64, &proto);
        for (a, c) in &nu.terms {
            let den = Series::constant(proto.one_like()).sub(&s.scale(a));
            form = form.add(&base.mul(&den.inv(order)?).scale(c));
        }
        chart.omegas.iter().map(|w| Ok(form.mul(&w.integrate()?).residue())).collect()
    }

    /// `Psi(nu)` for a third-kind form, in the basis `w_0, ..., w_(2g-1)`.
    pub fn psi_third(&self, nu: &ThirdKindForm) -> Result<Vec<Padic>> {
        let g2 = 2 * self.genus();
        let mut s = self.residues_at_infinity(nu)?;
        for (pt, m) in self.residue_pairs(nu)? {
            let ints = self.basis_over_pair(&pt)?;
            for j in 0..g2 {
                s[j] = s[j].add(&m.mul(&ints[j]));
            }
        }
        self.cup_padic.solve_vec(&s)
    }

    /// `Psi(w)`; the identity on holomorphic forms.
    pub fn psi(&self, form: &Differential) -> Result<Vec<Padic>> {
        let mut v = if form.third.terms.is_empty() {
            vec![self.curve.zero(); 2 * self.genus()]
        } else {
            self.psi_third(&form.third)?
        };
        for (i, a) in form.holo.iter().enumerate() {
            v[i] = v[i].add(a);
        }
        Ok(v)
    }

    /// `eta`, the holomorphic part of `psi` along `W`, as `g` coefficients.
    pub fn eta(&self, psi: &[Padic]) -> Result<Vec<Padic>> {
        let (h, _) = self.w.split(psi)?;
        Ok(h[..self.genus()].to_vec())
    }

    /// `omega_D = nu - eta` for the form `nu` with residue divisor `D`, with `Psi(nu)`.
    pub fn omega_d(&self, nu: &ThirdKindForm) -> Result<(Differential, Vec<Padic>)> {
        let psi = self.psi_third(nu)?;
        let eta = self.eta(&psi)?;
        let form = Differential { holo: eta.iter().map(|e| e.neg()).collect(), third: nu.clone() };
        Ok((form, psi))
    }

    /// Coordinates of `v` in the basis `w_0, ..., w_(g-1)` followed by the
    /// spanning vectors of `W`.
    pub fn w_coordinates(&self, v: &[Padic]) -> Result<Vec<Padic>> {
        let (mut h, wc) = self.w.split(v)?;
        h.truncate(self.genus());
        h.extend(wc);
        Ok(h)
    }
}

#[cfg(test)]
mod tests;
