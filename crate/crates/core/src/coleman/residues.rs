use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;

use super::Differential;
use crate::curve::{local_coords_weierstrass, CurveModel, Disc, Point, ThirdKindForm};
use crate::error::{Error, Result};
use crate::padic::{floor_log, Coeff, Padic, PadicAlgebra, QuotientRing, RingElement};
use crate::polyseries::{zp_roots, Poly, Series};

/// What a residue job covers.
#[derive(Clone, Debug)]
pub enum JobDisc {
    /// The Weierstrass points `(u, 0)` over the roots `u` of the job modulus.
    Weierstrass,
    /// The poles of `alpha` in one non-Weierstrass disc.
    PoleDisc(Disc),
}

/// One independent piece of `sum_A Res_A(alpha int beta)`.
#[derive(Clone, Debug)]
pub struct ResidueJob {
    pub disc: JobDisc,
    /// Weierstrass jobs: the factor of `f` whose roots are the x-coordinates.
    /// Pole-disc jobs: unused (each pole carries its own `u^p - x`).
    pub modulus: Vec<Padic>,
    /// Expansion order in the local parameter.
    pub order: usize,
    /// Pole-disc jobs: the marked point fixing the constant of integration.
    pub marked: Option<Point>,
    /// Pole-disc jobs: the poles `A0` of `nu` in the disc and `Res_A0(nu)`.
    pub poles: Vec<(Point, Padic)>,
}

/// The residue sum split by disc, for diagnostics.
#[derive(Clone, Debug)]
pub struct ResidueBreakdown {
    pub contributions: Vec<(String, Padic)>,
    pub non_weierstrass: Padic,
    pub weierstrass: Padic,
    pub total: Padic,
    pub notes: Vec<String>,
}

impl fmt::Display for ResidueBreakdown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, v) in &self.contributions {
            writeln!(f, "{label}: {v}")?;
        }
        write!(f, "non-Weierstrass total: {}\nWeierstrass total: {}", self.non_weierstrass, self.weierstrass)
    }
}

/// `binom(-1/2, k)` for `k < n`.
fn binomials(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n);
    let mut c = BigRational::from_integer(1.into());
    for k in 0..n {
        out.push(c.clone());
        let k = k as i64;
        c = c * BigRational::new((-1 - 2 * k).into(), (2 * (k + 1)).into());
    }
    out
}

/// Residue of `alpha = phi^* nu - p nu` at a Q_p-rational point `A` where
/// `nu` has residue `+1` at `pole` and `-1` at its negative.
pub fn alpha_residue_shortcut(curve: &CurveModel, a: &Point, pole: &Point) -> Option<i64> {
    let p = curve.prime() as i64;
    let teich = curve.is_teichmuller(pole);
    if !a.x.agrees_with(&pole.x) {
        return None;
    }
    if a.y.agrees_with(&pole.y) {
        Some(if teich { 1 - p } else { -p })
    } else if a.y.agrees_with(&pole.y.neg()) {
        Some(if teich { p - 1 } else { p })
    } else {
        None
    }
}

/// Smallest `K` with `floor(K/p) - floor(log_p K) >= n`: terms of an
/// antiderivative needed to evaluate at `u - x(M)`, `(u - x(M))^p` in `pR`.
fn ring_order(p: u32, n: i64) -> usize {
    let mut k = p as usize;
    while (k / p as usize) as i64 - (floor_log(p, k as u64) as i64) < n {
        k += p as usize;
    }
    k
}

/// Lists the Weierstrass jobs and the pole-disc jobs of `alpha = phi^* nu - p nu`,
/// for `n` digits and `n` binomial terms of `1/phi(y)`.
pub fn plan_residue_jobs(curve: &CurveModel, nu: &ThirdKindForm, n: u32) -> Result<(Vec<ResidueJob>, Vec<String>)> {
    let p = curve.prime();
    let mut notes = Vec::new();
    let mut jobs = Vec::new();
    // pole discs
    let mut groups: Vec<(Disc, Vec<(Point, Padic)>)> = Vec::new();
    for (xi, ci) in &nu.terms {
        let yi = curve.f().eval(xi).sqrt()?;
        let pt = Point::new(xi.clone(), yi.clone());
        let d = curve.disc(&pt);
        if d.is_weierstrass() {
            return Err(Error::Unsupported(format!(
                "pole above x = {xi} is in a Weierstrass disc; meromorphic integration needs poles in non-Weierstrass discs"
            )));
        }
        let r = ci.div(&yi)?;
        for (pt, r) in [(pt.clone(), r.clone()), (pt.involution(), r.neg())] {
            let d = curve.disc(&pt);
            match groups.iter_mut().find(|(g, _)| *g == d) {
                Some((_, v)) => v.push((pt, r)),
                None => groups.push((d, vec![(pt, r)])),
            }
        }
    }
    let k = ring_order(p, n as i64 + 1);
    for (d, poles) in groups {
        jobs.push(ResidueJob {
            disc: JobDisc::PoleDisc(d),
            modulus: vec![],
            order: k,
            marked: Some(poles[0].0.clone()),
            poles,
        });
    }
    // Weierstrass points
    let order = (2 * p as usize * n as usize).saturating_sub(p as usize + 2);
    let roots = zp_roots(curve.f())?;
    let mut cofactor = curve.f().clone();
    for r in &roots {
        cofactor = cofactor.divrem(&Poly::linear(r))?.0;
        let exact_zero_root = r.is_zero() && curve.f_rational().coeff(0) == BigRational::from_integer(0.into());
        if exact_zero_root {
            notes.push("residue at (0,0) skipped: alpha is holomorphic there".into());
            continue;
        }
        jobs.push(ResidueJob {
            disc: JobDisc::Weierstrass,
            modulus: vec![r.neg(), r.one_like()],
            order,
            marked: None,
            poles: vec![],
        });
    }
    if cofactor.degree().unwrap_or(0) > 0 {
        jobs.push(ResidueJob {
            disc: JobDisc::Weierstrass,
            modulus: cofactor.monic()?.coeffs().to_vec(),
            order,
            marked: None,
            poles: vec![],
        });
    }
    notes.push("residue at infinity is zero: alpha int beta is holomorphic there".into());
    Ok((jobs, notes))
}

fn job_label(job: &ResidueJob) -> String {
    match &job.disc {
        JobDisc::PoleDisc(d) => format!("poles in disc {d:?}"),
        JobDisc::Weierstrass if job.modulus.len() == 2 => {
            format!("Weierstrass point x = {}", job.modulus[0].neg())
        }
        JobDisc::Weierstrass => format!("Weierstrass points over a degree {} factor", job.modulus.len() - 1),
    }
}

/// `sum_A Res_A(alpha int beta)` over all jobs, `alpha = phi^* nu - p nu`.
pub fn residue_sum(
    curve: &CurveModel,
    nu: &ThirdKindForm,
    beta: &Differential,
    n: u32,
) -> Result<ResidueBreakdown> {
    let (jobs, notes) = plan_residue_jobs(curve, nu, n)?;
    let values: Vec<Result<Padic>> = jobs
        .par_iter()
        .map(|job| match job.disc {
            JobDisc::PoleDisc(_) => pole_disc_job(curve, job, beta),
            JobDisc::Weierstrass => weierstrass_job(curve, job, nu, beta, n),
        })
        .collect();
    let zero = curve.zero();
    let (mut nw, mut w) = (zero.clone(), zero.clone());
    let mut contributions = Vec::new();
    for (job, v) in jobs.iter().zip(values) {
        let v = v?;
        match job.disc {
            JobDisc::PoleDisc(_) => nw = nw.add(&v),
            JobDisc::Weierstrass => w = w.add(&v),
        }
        contributions.push((job_label(job), v));
    }
    Ok(ResidueBreakdown { contributions, total: nw.add(&w), non_weierstrass: nw, weierstrass: w, notes })
}

/// Poles of `alpha` in one non-Weierstrass disc. With `F` the antiderivative
/// of `beta` vanishing at the marked point `M`, each pole `A0` of `nu` with
/// residue `r` contributes `r (sum_{u^p = x(A0)} F(u) - p F(A0))`.
fn pole_disc_job(curve: &CurveModel, job: &ResidueJob, beta: &Differential) -> Result<Padic> {
    let marked = job.marked.as_ref().expect("pole-disc job has a marked point");
    let p = curve.prime();
    let xr = marked.x.residue().map(u64::from);
    if beta.third.terms.iter().any(|(x, _)| x.is_integral() && x.residue().map(u64::from) == xr) {
        return Err(Error::SupportOverlap("beta has a pole in a pole disc of alpha".into()));
    }
    let k = job.order;
    let lc = curve.local_coords(marked, k + 2)?;
    let series = beta.expand(&lc, k + 2)?.truncate(k as i64);
    let anti = series.integrate()?;
    let declared = (k / p as usize) as i64 - floor_log(p, k as u64) as i64;
    let mut acc = curve.zero();
    for (a0, r) in &job.poles {
        let x0 = &a0.x;
        let local = anti.eval(&x0.sub(&marked.x))?;
        // rational preimages are read off with the residue table, the rest by trace
        let (table, modulus) = if curve.is_teichmuller(a0) {
            // (u^p - x0)/(u - x0) = sum_j x0^j u^(p-1-j)
            let mut m = Vec::with_capacity(p as usize);
            let mut pw = x0.one_like();
            let mut rev = Vec::with_capacity(p as usize);
            for _ in 0..p {
                rev.push(pw.clone());
                pw = pw.mul(x0);
            }
            for j in (0..p as usize).rev() {
                m.push(rev[j].clone());
            }
            (1 - p as i64, m)
        } else {
            let mut m = vec![x0.zero_like(); p as usize + 1];
            m[0] = x0.neg();
            m[p as usize] = x0.one_like();
            (-(p as i64), m)
        };
        let ring = QuotientRing::new(modulus)?;
        let u = RingElement::generator(&ring);
        let delta = u.sub(&u.embed(&marked.x));
        let tr = anti.eval_in(&delta)?.trace();
        let contrib = tr.add(&local.mul_int(table));
        acc = acc.add(&r.mul(&contrib));
    }
    Ok(acc.truncate_abs(declared))
}

/// Weierstrass points over the roots of the job modulus: expands
/// `phi^* nu = sum c_i d(x^p) / ((x^p - x_i) phi(y))` with
/// `1/phi(y) = t^-p sum_{k<n} binom(-1/2,k) (f(x^p)/t^(2p) - 1)^k` in the
/// coordinates `y = t`; `p nu int beta` is holomorphic there.
fn weierstrass_job(
    curve: &CurveModel,
    job: &ResidueJob,
    nu: &ThirdKindForm,
    beta: &Differential,
    n: u32,
) -> Result<Padic> {
    let (value, declared) = if job.modulus.len() == 2 {
        let root = job.modulus[0].neg();
        weierstrass_residue(curve, &root, nu, beta, n, job.order)?
    } else {
        let ring = QuotientRing::new(job.modulus.clone())?;
        let u = RingElement::generator(&ring);
        let (r, declared) = weierstrass_residue(curve, &u, nu, beta, n, job.order)?;
        (r.trace(), declared)
    };
    Ok(value.truncate_abs(declared))
}

/// The residue at `(root, 0)` and its guaranteed digits.
fn weierstrass_residue<A: PadicAlgebra>(
    curve: &CurveModel,
    root: &A,
    nu: &ThirdKindForm,
    beta: &Differential,
    n: u32,
    order: usize,
) -> Result<(A, i64)> {
    let p = curve.prime() as usize;
    let f = curve.f().embed_in(root);
    let one = root.one_like();
    let mut order = order;
    loop {
        let lc = local_coords_weierstrass(&f, root, order + 2)?;
        let x = &lc.x;
        let xp = x.pow(p);
        let z = f.eval_series(&xp).shift(-2 * p as i64).sub(&Series::constant(one.clone()));
        let mut s = Series::constant(root.zero_like());
        for c in binomials(n as usize).iter().rev() {
            s = s.mul(&z).add(&Series::constant(root.rational_like(c)));
        }
        let inv_phi_y = s.shift(-(p as i64));
        let mut poles = Series::constant(root.zero_like());
        for (xi, ci) in &nu.terms {
            let d = xp.sub(&Series::constant(root.embed(xi)));
            poles = poles.add(&d.inv(order + 2)?.scale(&root.embed(ci)));
        }
        let alpha = poles.mul(&xp.derivative()).mul(&inv_phi_y);
        let anti = beta.expand(&lc, order + 2)?.integrate()?;
        let prod = alpha.mul(&anti);
        if prod.prec() > -1 {
            let declared = n as i64 - floor_log(p as u32, order as u64 + 1) as i64;
            return Ok((prod.residue(), declared));
        }
        order += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_coefficients() {
        let b = binomials(4);
        let r = |a: i64, d: i64| BigRational::new(a.into(), d.into());
        assert_eq!(b, vec![r(1, 1), r(-1, 2), r(3, 8), r(-5, 16)]);
    }

    #[test]
    fn ring_order_bound() {
        let k = ring_order(11, 7);
        assert!(k / 11 - floor_log(11, k as u64) as usize >= 7);
    }

    #[test]
    fn shortcut_table() {
        let c = CurveModel::from_ints(&[0, 40, 18, -23, 0, 1], 11, 10).unwrap();
        let pt = c.point_from_ints(-4, 24).unwrap();
        assert_eq!(alpha_residue_shortcut(&c, &pt, &pt), Some(-11));
        assert_eq!(alpha_residue_shortcut(&c, &pt.involution(), &pt), Some(11));
        let t = c.teichmuller_point(&pt).unwrap();
        assert_eq!(alpha_residue_shortcut(&c, &t, &t), Some(-10));
        assert_eq!(alpha_residue_shortcut(&c, &t.involution(), &t), Some(10));
        let r = c.point_from_ints(5, 30).unwrap();
        assert_eq!(alpha_residue_shortcut(&c, &r, &pt), None);
    }
}
