use super::Differential;
use crate::curve::{CurveModel, Disc, Point, ThirdKindForm};
use crate::error::{Error, Result};
use crate::padic::{BranchSpec, Padic};
use crate::polyseries::Series;

/// The exact quotient `s(t) / (t - c)` of a power series vanishing at `c`,
/// for `v(c) >= 1`, via the tail sums `b_k = sum_{j > k} a_j c^(j-k-1)`.
///
/// Unknown coefficients beyond the truncation order are charged against the
/// p-adic precision of each `b_k`.
pub fn divide_by_root(s: &Series<Padic>, c: &Padic) -> Result<Series<Padic>> {
    if s.lo() < 0 {
        return Err(Error::Domain("division by t - c needs a power series".into()));
    }
    let vc = c.valuation().unwrap_or(crate::padic::EXACT);
    if vc < 1 {
        return Err(Error::Domain(format!("root {c} is not in the open unit disc")));
    }
    let hi = s.hi();
    if hi <= 0 {
        return Ok(Series::zero((s.prec() - 1).max(0), s.proto()));
    }
    let amin = (0..hi).filter_map(|k| s.coeff(k).valuation()).min().unwrap_or(0);
    let mut b = vec![s.proto().zero_like(); (hi - 1).max(0) as usize];
    let mut acc = s.proto().zero_like();
    for k in (0..hi - 1).rev() {
        acc = s.coeff(k + 1).add(&c.mul(&acc));
        b[k as usize] = acc.clone();
    }
    if !s.is_exact() {
        for (k, bk) in b.iter_mut().enumerate() {
            let tail = (s.prec() - k as i64 - 1).saturating_mul(vc).saturating_add(amin);
            *bk = bk.truncate_abs(tail);
        }
    }
    let prec = if s.is_exact() { s.prec() } else { s.prec() - 1 };
    Ok(Series::new(0, b, prec, s.proto()))
}

/// Antiderivative on one disc of `g(t) dt` with simple poles at `t = c_j`:
/// `sum_j r_j log(t - c_j) + H(t)`, logarithms on a fixed branch.
#[derive(Clone, Debug)]
pub struct InDiscAntiderivative {
    /// `(c_j, r_j)`.
    pub poles: Vec<(Padic, Padic)>,
    /// Antiderivative of the holomorphic part.
    pub holo: Series<Padic>,
    pub branch: BranchSpec,
}

impl InDiscAntiderivative {
    /// For `g = numerator / prod_j (t - c_j)` with `numerator` a power series.
    pub fn new(numerator: &Series<Padic>, poles: &[Padic], branch: &BranchSpec) -> Result<InDiscAntiderivative> {
        for (i, a) in poles.iter().enumerate() {
            if poles[..i].iter().any(|b| b.agrees_with(a)) {
                return Err(Error::Domain("repeated pole: only simple poles are supported".into()));
            }
        }
        let proto = numerator.proto().clone();
        let mut residues = Vec::with_capacity(poles.len());
        for (j, cj) in poles.iter().enumerate() {
            let mut den = proto.one_like();
            for (k, ck) in poles.iter().enumerate() {
                if k != j {
                    den = den.mul(&cj.sub(ck));
                }
            }
            residues.push(numerator.eval(cj)?.div(&den)?);
        }
        // numerator - sum_j r_j prod_{k != j} (t - c_k) vanishes at every pole
        let mut rest = numerator.clone();
        for (j, rj) in residues.iter().enumerate() {
            let mut prod = Series::constant(rj.clone());
            for (k, ck) in poles.iter().enumerate() {
                if k != j {
                    prod = prod.mul(&Series::exact(0, vec![ck.neg(), proto.one_like()], &proto));
                }
            }
            rest = rest.sub(&prod);
        }
        for c in poles {
            rest = divide_by_root(&rest, c)?;
        }
        Ok(InDiscAntiderivative {
            poles: poles.iter().cloned().zip(residues).collect(),
            holo: rest.integrate()?,
            branch: branch.clone(),
        })
    }

    /// A holomorphic form, given by its series in `t`.
    pub fn holomorphic(series: &Series<Padic>, branch: &BranchSpec) -> Result<InDiscAntiderivative> {
        Ok(InDiscAntiderivative { poles: vec![], holo: series.integrate()?, branch: branch.clone() })
    }

    pub fn add(&self, other: &InDiscAntiderivative) -> InDiscAntiderivative {
        let mut poles = self.poles.clone();
        poles.extend(other.poles.iter().cloned());
        InDiscAntiderivative { poles, holo: self.holo.add(&other.holo), branch: self.branch.clone() }
    }

    /// `int_{t0}^{t1}`.
    pub fn eval_between(&self, t0: &Padic, t1: &Padic) -> Result<Padic> {
        let mut acc = self.holo.eval(t1)?.sub(&self.holo.eval(t0)?);
        for (c, r) in &self.poles {
            if r.is_exact_zero() {
                continue;
            }
            let l1 = t1.sub(c).log(&self.branch)?;
            let l0 = t0.sub(c).log(&self.branch)?;
            acc = acc.add(&r.mul(&l1.sub(&l0)));
        }
        Ok(acc)
    }
}

/// The antiderivative of `form` on the Weierstrass disc containing `pt`, in
/// the parameter `t = y`. Third-kind poles inside the disc become log terms.
pub fn weierstrass_disc_antiderivative(
    curve: &CurveModel,
    form: &Differential,
    pt: &Point,
    order: usize,
    branch: &BranchSpec,
) -> Result<InDiscAntiderivative> {
    let r = match curve.disc(pt) {
        Disc::Weierstrass(r) => r,
        d => return Err(Error::Domain(format!("disc {d:?} is not a Weierstrass disc"))),
    };
    let (_, lc) = curve.local_coords_weierstrass_at(pt, order + 2)?;
    let inside = |x: &Padic| x.is_integral() && x.residue().map(u64::from) == Some(r);
    let (near, far): (Vec<_>, Vec<_>) = form.third.terms.iter().cloned().partition(|(x, _)| inside(x));
    let outer = Differential { holo: form.holo.clone(), third: ThirdKindForm { terms: far } };
    let series = outer.expand(&lc, order + 2)?.truncate(order as i64);
    let mut out = InDiscAntiderivative::holomorphic(&series, branch)?;
    // x'(t)/t, a power series since x is even in t
    let dx_over_t = lc.x.derivative().shift(-1).drop_below(0);
    for (xi, ci) in near {
        let yi = curve.f().eval(&xi).sqrt()?;
        let d = lc.x.sub(&Series::constant(xi.clone()));
        let u = divide_by_root(&divide_by_root(&d, &yi)?, &yi.neg())?;
        let num = dx_over_t.mul(&u.inv(order + 2)?).scale(&ci).truncate(order as i64);
        out = out.add(&InDiscAntiderivative::new(&num, &[yi.clone(), yi.neg()], branch)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coleman::tiny_integral;
    use crate::padic::log1p_series;

    fn p13(n: i64) -> Padic {
        Padic::from_int(13, 20, n)
    }

    #[test]
    fn divide_by_root_recovers_factor() {
        // (t - 13)(1 + 2t + 3t^2) / (t - 13) = 1 + 2t + 3t^2
        let c = p13(13);
        let proto = p13(0);
        let q = Series::exact(0, vec![p13(1), p13(2), p13(3)], &proto);
        let s = q.mul(&Series::exact(0, vec![c.neg(), p13(1)], &proto)).truncate(10);
        let d = divide_by_root(&s, &c).unwrap();
        for k in 0..3 {
            assert!(d.coeff(k).agrees_with(&q.coeff(k)));
        }
        assert!(d.coeff(3).is_zero());
    }

    #[test]
    fn single_pole_gives_log() {
        // 1/(t - c) dt between t0 and t1 is log((t1 - c)/(t0 - c))
        let proto = p13(0);
        let c = p13(13 * 2);
        let one = Series::exact(0, vec![p13(1)], &proto).truncate(30);
        let a = InDiscAntiderivative::new(&one, &[c.clone()], &BranchSpec::iwasawa()).unwrap();
        let t0 = p13(13 * 5);
        let t1 = p13(13 * 7 + 169);
        let got = a.eval_between(&t0, &t1).unwrap();
        // oracle: direct log series of the unit ratio
        let ratio = t1.sub(&c).div(&t0.sub(&c)).unwrap();
        let w = ratio.pow(12).unwrap();
        let want = log1p_series(&w.sub(&w.one_like())).div_int(12).unwrap();
        assert!(got.sub(&want).truncate_abs(15).is_zero(), "{got} vs {want}");
    }

    #[test]
    fn symmetric_path_doubles_even_integrand() {
        // 2c/(t^2 - c^2) is even, so its integral from -t0 to t0 is 2 log((t0 - c)/(t0 + c))
        let proto = p13(0);
        let c = p13(13 * 3);
        let num = Series::exact(0, vec![c.mul_int(2)], &proto).truncate(30);
        let a = InDiscAntiderivative::new(&num, &[c.clone(), c.neg()], &BranchSpec::iwasawa()).unwrap();
        let t0 = p13(13 * 5);
        let got = a.eval_between(&t0.neg(), &t0).unwrap();
        let w = t0.sub(&c).div(&t0.add(&c)).unwrap().pow(12).unwrap();
        let want = log1p_series(&w.sub(&w.one_like())).div_int(6).unwrap();
        assert!(got.sub(&want).truncate_abs(15).is_zero(), "{got} vs {want}");
        // the odd integrand 2t/(t^2 - c^2) integrates to 0 on the same path
        let odd = Series::exact(0, vec![p13(0), p13(2)], &proto).truncate(30);
        let b = InDiscAntiderivative::new(&odd, &[c.clone(), c.neg()], &BranchSpec::iwasawa()).unwrap();
        assert!(b.eval_between(&t0.neg(), &t0).unwrap().truncate_abs(15).is_zero());
    }

    #[test]
    fn agrees_with_tiny_without_poles() {
        let c = CurveModel::from_ints(&[0, 40, 18, -23, 0, 1], 11, 14).unwrap();
        let pt = c.lift_x(&c.int(4 + 7 * 121), None).unwrap();
        let q = c.lift_x(&c.int(4 + 7 * 121 + 3 * 1331 * 7), None).unwrap();
        let other = c.point_from_ints(5, 30).unwrap();
        let form = Differential::third_kind(&ThirdKindForm::for_pair(&other))
            .add(&Differential::basis(3, &c.zero()));
        let a = weierstrass_disc_antiderivative(&c, &form, &pt, 20, &BranchSpec::iwasawa()).unwrap();
        let via = a.eval_between(&pt.y, &q.y).unwrap();
        let tiny = tiny_integral(&c, &form, &pt, &q, 10).unwrap();
        assert!(via.sub(&tiny.value).truncate_abs(10).is_zero());
    }
}
