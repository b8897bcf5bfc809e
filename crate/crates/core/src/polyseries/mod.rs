//! Polynomials, truncated Laurent series, Hensel lifting and CRT.

pub(crate) mod fp;
mod hensel;
mod poly;
mod series;

pub use hensel::{hensel_factor, hensel_split, newton_root, zp_roots};
pub use poly::Poly;
pub use series::{Series, EXACT_ORDER};

use num_rational::BigRational;

use crate::error::{Error, Result};

/// `e` with `e = b mod a` and `e = -d mod c`, reduced modulo `lcm(a, c)`.
pub fn crt_combine(
    a: &Poly<BigRational>,
    b: &Poly<BigRational>,
    c: &Poly<BigRational>,
    d: &Poly<BigRational>,
) -> Result<Poly<BigRational>> {
    let g = a.gcd(c);
    let nd = d.neg();
    if g.degree().unwrap_or(0) > 0 && !b.sub(&nd).rem(&g)?.is_zero() {
        return Err(Error::SupportOverlap(
            "congruences disagree on a common factor of the two divisors".into(),
        ));
    }
    // e = b + a*k with a*k = -d - b mod c; after dividing by g, a/g is a unit mod c/g.
    let a1 = a.divrem(&g)?.0;
    let c1 = c.divrem(&g)?.0;
    let r = nd.sub(b).divrem(&g)?.0;
    let k = if c1.degree() == Some(0) {
        Poly::zero(b.proto())
    } else {
        let (_, s, _) = a1.ext_gcd(&c1);
        r.mul(&s).rem(&c1)?
    };
    let e = b.add(&a.mul(&k));
    e.rem(&a.mul(&c1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Padic;
    use num_traits::Zero;

    fn qp(p: u32, cap: u32, c: &[i64]) -> Poly<Padic> {
        let proto = Padic::zero(p, cap);
        Poly::new(c.iter().map(|&x| proto.int_like(x)).collect(), &proto)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_of_one_plus_t() {
        let proto = Padic::zero(7, 10);
        let s = Series::exact(0, vec![proto.int_like(1), proto.int_like(1)], &proto);
        let r = s.sqrt(&proto.int_like(1), 6).unwrap();
        let expect = [rat(1, 1), rat(1, 2), rat(-1, 8), rat(1, 16), rat(-5, 128), rat(7, 256)];
        for (k, e) in expect.iter().enumerate() {
            assert!(r.coeff(k as i64).agrees_with(&proto.rational_like(e)), "t^{k}");
        }
        assert_eq!(r.prec(), 6);
        let sq = r.mul(&r);
        assert!(sq.sub(&s).valuation() >= 6);
    }

    #[test]
    fn inverse_and_laurent() {
        let proto = Padic::zero(5, 10);
        let s = Series::exact(2, vec![proto.int_like(3), proto.int_like(1), proto.int_like(4)], &proto);
        let inv = s.inv(8).unwrap();
        assert_eq!(inv.lo(), -2);
        let one = s.mul(&inv);
        assert!(one.coeff(0).agrees_with(&proto.int_like(1)));
        for k in 1..8 {
            assert!(one.coeff(k).is_zero(), "t^{k}");
        }
        assert_eq!(one.prec(), 8);
    }

    #[test]
    fn integrate_and_residue() {
        let proto = Padic::zero(5, 10);
        let one = Series::constant(proto.int_like(1));
        let t = one.integrate().unwrap();
        assert!(t.coeff(1).agrees_with(&proto.int_like(1)));
        let tp = Series::exact(4, vec![proto.int_like(1)], &proto).integrate().unwrap();
        assert_eq!(tp.coeff(5).valuation(), Some(-1));
        assert_eq!(tp.coeff(5).rel_prec(), 10);
        let pole = Series::exact(-1, vec![proto.int_like(1)], &proto);
        assert!(pole.residue().agrees_with(&proto.int_like(1)));
        assert!(matches!(pole.integrate(), Err(Error::LogTermRequired(_))));
        let s = Series::new(-3, (0..10).map(|k| proto.int_like(k * k + 1)).collect(), 7, &proto);
        let s = s.sub(&Series::exact(-1, vec![s.coeff(-1)], &proto));
        let back = s.integrate().unwrap().derivative();
        assert!(back.sub(&s).valuation() >= 7);
    }

    #[test]
    fn compose_tracks_precision() {
        let proto = Padic::zero(7, 10);
        // (1 + u)^2 with u = t + t^2
        let f = Series::new(0, vec![proto.int_like(1), proto.int_like(2), proto.int_like(1)], 5, &proto);
        let g = Series::exact(1, vec![proto.int_like(1), proto.int_like(1)], &proto);
        let h = f.compose(&g).unwrap();
        assert_eq!(h.prec(), 5);
        let expect = [1, 2, 3, 2, 1];
        for (k, e) in expect.iter().enumerate() {
            assert!(h.coeff(k as i64).agrees_with(&proto.int_like(*e)));
        }
    }

    #[test]
    fn hensel_split_weierstrass_part() {
        let cap = 12;
        // (x - 15)(x - 7) against f = x^5 - 23x^3 + 18x^2 + 40x over Q_11
        let a = qp(11, cap, &[105, -22, 1]);
        let f = qp(11, cap, &[0, 40, 18, -23, 0, 1]);
        let (w, nw) = hensel_factor(&a, &f).unwrap();
        assert!(w.eval(&Padic::from_int(11, cap, 15)).is_zero());
        assert!(nw.eval(&Padic::from_int(11, cap, 7)).is_zero());
        assert!(w.mul(&nw).sub(&a).is_zero());

        let coprime = qp(11, cap, &[-7, 1]);
        let (w, nw) = hensel_factor(&coprime, &f).unwrap();
        assert_eq!(w.degree(), Some(0));
        assert_eq!(nw, coprime);
    }

    #[test]
    fn roots_in_the_same_disc() {
        let cap = 10;
        // (x - 4)(x - 15)(x - 2) over Q_11: two roots share a residue disc.
        let a = qp(11, cap, &[-120, 98, -21, 1]);
        let mut roots: Vec<i64> = zp_roots(&a)
            .unwrap()
            .iter()
            .map(|r| num_traits::ToPrimitive::to_i64(&r.to_bigint().unwrap()).unwrap())
            .collect();
        roots.sort();
        assert_eq!(roots, vec![2, 4, 15]);
    }

    #[test]
    fn crt_interpolates() {
        let a = Poly::from_ints(&[4, 1]);
        let b = Poly::from_ints(&[24]);
        let c = Poly::from_ints(&[-1, 1]);
        let d = Poly::from_ints(&[6]);
        let e = crt_combine(&a, &b, &c, &d).unwrap();
        assert_eq!(e.eval(&rat(-4, 1)), rat(24, 1));
        assert_eq!(e.eval(&rat(1, 1)), rat(-6, 1));
        let one = Poly::from_ints(&[1]);
        let e = crt_combine(&a, &Poly::from_ints(&[3, 2]), &one, &Poly::zero(&BigRational::zero())).unwrap();
        assert_eq!(e, Poly::from_ints(&[-5]));
    }
}
