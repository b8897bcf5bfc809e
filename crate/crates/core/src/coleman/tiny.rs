use super::{Differential, IntegralResult};
use crate::curve::{CurveModel, Disc, LocalCoords, Point};
use crate::error::{Error, Result};
use crate::padic::{floor_log, Padic};

/// Guaranteed digits of a tiny integral whose integrand is truncated at `t^m`
/// and whose endpoints are known to `n` digits.
pub fn tiny_precision(p: u32, n: i64, m: usize) -> i64 {
    n.min(m as i64 + 1 - floor_log(p, m as u64 + 1) as i64)
}

/// Smallest truncation order giving `n` digits.
pub fn tiny_order(p: u32, n: i64) -> usize {
    let mut m = (n - 1).max(1) as usize;
    while tiny_precision(p, i64::MAX, m) < n {
        m += 1;
    }
    m
}

/// Local coordinates on the disc of `from` together with the parameter
/// values of both endpoints.
fn disc_chart(
    curve: &CurveModel,
    from: &Point,
    to: &Point,
    order: usize,
) -> Result<(LocalCoords<Padic>, Padic, Padic)> {
    let d = curve.disc(from);
    if d != curve.disc(to) {
        return Err(Error::DifferentDiscs(format!("{from:?} and {to:?}")));
    }
    match d {
        Disc::Infinity => Err(Error::Unsupported("tiny integral in the disc at infinity".into())),
        Disc::NonWeierstrass(..) => {
            let lc = curve.local_coords(from, order)?;
            Ok((lc, curve.zero(), to.x.sub(&from.x)))
        }
        Disc::Weierstrass(_) => {
            let (_, lc) = curve.local_coords_weierstrass_at(from, order)?;
            Ok((lc, from.y.clone(), to.y.clone()))
        }
    }
}

/// Rejects third-kind forms with a pole inside the disc.
fn check_holomorphic(form: &Differential, disc: &Disc) -> Result<()> {
    let xr = match disc {
        Disc::NonWeierstrass(x, _) | Disc::Weierstrass(x) => *x,
        Disc::Infinity => return Ok(()),
    };
    for (xi, _) in &form.third.terms {
        if xi.is_integral() && xi.residue().map(u64::from) == Some(xr) {
            return Err(Error::LogTermRequired(format!(
                "pole above x = {xi} lies in the integration disc; use the in-disc antiderivative"
            )));
        }
    }
    Ok(())
}

/// `int_from^to` of each form, with integrands truncated at `t^m` and
/// endpoints known to `n` digits.
pub fn tiny_integrals_truncated(
    curve: &CurveModel,
    forms: &[Differential],
    from: &Point,
    to: &Point,
    m: usize,
    n: i64,
) -> Result<Vec<IntegralResult>> {
    let p = curve.prime();
    let disc = curve.disc(from);
    for form in forms {
        check_holomorphic(form, &disc)?;
    }
    let reported = tiny_precision(p, n, m);
    let mut order = m + 2;
    loop {
        let (lc, t0, t1) = disc_chart(curve, from, to, order)?;
        let mut out = Vec::with_capacity(forms.len());
        let mut short = false;
        for form in forms {
            let s = form.expand(&lc, order)?;
            if s.prec() < m as i64 {
                short = true;
                break;
            }
            let anti = s.truncate(m as i64).integrate()?;
            let value = anti.eval(&t1)?.sub(&anti.eval(&t0)?);
            let log = vec![format!(
                "tiny: integrand to O(t^{m}), min({n}, {m}+1-floor(log_{p}({}))) = {reported} digits",
                m + 1
            )];
            out.push(IntegralResult::new(value, reported, log));
        }
        if !short {
            return Ok(out);
        }
        order += 4;
    }
}

/// Tiny integrals to `n` digits.
pub fn tiny_integrals(
    curve: &CurveModel,
    forms: &[Differential],
    from: &Point,
    to: &Point,
    n: i64,
) -> Result<Vec<IntegralResult>> {
    tiny_integrals_truncated(curve, forms, from, to, tiny_order(curve.prime(), n), n)
}

pub fn tiny_integral(
    curve: &CurveModel,
    form: &Differential,
    from: &Point,
    to: &Point,
    n: i64,
) -> Result<IntegralResult> {
    Ok(tiny_integrals(curve, std::slice::from_ref(form), from, to, n)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ThirdKindForm;

    fn genus2() -> CurveModel {
        CurveModel::from_ints(&[0, 40, 18, -23, 0, 1], 11, 14).unwrap()
    }

    #[test]
    fn order_meets_precision() {
        for p in [3u32, 7, 11] {
            for n in 1..20 {
                let m = tiny_order(p, n);
                assert!(tiny_precision(p, i64::MAX, m) >= n);
                assert!(m == 1 || tiny_precision(p, i64::MAX, m - 1) < n);
            }
        }
        assert_eq!(tiny_precision(3, 100, 8), 7);
        assert_eq!(tiny_precision(3, 5, 8), 5);
    }

    #[test]
    fn same_point_gives_zero() {
        let c = genus2();
        let r = c.point_from_ints(5, 30).unwrap();
        let w = Differential::basis(2, &c.zero());
        let v = tiny_integral(&c, &w, &r, &r, 10).unwrap();
        assert!(v.value.is_zero());
    }

    #[test]
    fn exact_forms_integrate_to_differences() {
        // d(x) = 2y * w_0 and d(y) = f'(x)/2 * dx/y, so int dx = x(Q) - x(P)
        let c = genus2();
        let r = c.point_from_ints(5, 30).unwrap();
        let fr = c.frobenius_point(&r).unwrap();
        let lc = c.local_coords(&r, 30).unwrap();
        let dy = lc.y.derivative().truncate(25).integrate().unwrap();
        let t1 = fr.x.sub(&r.x);
        let v = dy.eval(&t1).unwrap();
        assert!(v.sub(&fr.y.sub(&r.y)).truncate_abs(20).is_zero());
    }

    #[test]
    fn reversal_and_additivity() {
        let c = genus2();
        let r = c.point_from_ints(5, 30).unwrap();
        let q = c.lift_x(&c.int(5 + 11 * 3), Some(8)).unwrap();
        let s = c.lift_x(&c.int(5 - 11 * 7), Some(8)).unwrap();
        for i in 0..4 {
            let w = Differential::basis(i, &c.zero());
            let a = tiny_integral(&c, &w, &r, &q, 10).unwrap();
            let b = tiny_integral(&c, &w, &q, &r, 10).unwrap();
            assert!(a.value.add(&b.value).is_zero(), "{} {}", a.value, b.value);
            let rq = a.value;
            let qs = tiny_integral(&c, &w, &q, &s, 10).unwrap().value;
            let rs = tiny_integral(&c, &w, &r, &s, 10).unwrap().value;
            assert!(rq.add(&qs).sub(&rs).is_zero());
        }
    }

    #[test]
    fn weierstrass_disc_is_odd() {
        // y is odd on the disc of (4, 0), so int_{-P}^{P} w_i = 2 int_{W}^{P} w_i
        let c = genus2();
        let x = c.int(4 + 7 * 121);
        let pt = c.lift_x(&x, None).unwrap();
        let (root, _) = c.local_coords_weierstrass_at(&pt, 4).unwrap();
        let w_pt = Point::new(root, c.zero());
        for i in 0..4 {
            let form = Differential::basis(i, &c.zero());
            let full = tiny_integral(&c, &form, &pt.involution(), &pt, 10).unwrap();
            let half = tiny_integral(&c, &form, &w_pt, &pt, 10).unwrap();
            assert!(full.value.sub(&half.value.mul_int(2)).is_zero());
        }
    }

    #[test]
    fn pole_in_disc_is_rejected() {
        let c = genus2();
        let r = c.point_from_ints(5, 30).unwrap();
        let q = c.lift_x(&c.int(5 + 11), Some(8)).unwrap();
        let nu = Differential::third_kind(&ThirdKindForm::for_pair(&r));
        assert!(matches!(tiny_integral(&c, &nu, &r, &q, 8), Err(Error::LogTermRequired(_))));
    }
}
