//! Algebraic invariants checked on random inputs.

mod common;

use cgheight::coleman::{tiny_integrals, Differential};
use cgheight::curve::CurveModel;
use cgheight::heights::{cup_matrix, resultant};
use cgheight::linalg::Matrix;
use cgheight::padic::{BranchSpec, Padic};
use cgheight::polyseries::{Poly, Series};
use common::agreement;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

const CAP: u32 = 12;

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 7, 11, 13])
}

fn padic(p: u32, num: i64, den: i64) -> Padic {
    Padic::from_rational(p, CAP, &BigRational::new(num.into(), den.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(p in prime(), a in -10_000i64..10_000, b in 1i64..10_000, c in -500i64..500, d in 1i64..500) {
        let x = padic(p, a, b);
        let y = padic(p, c, d);
        prop_assert!(x.add(&y).sub(&y).sub(&x).is_zero());
        prop_assert!(x.mul(&y).sub(&y.mul(&x)).is_zero());
        let z = x.add(&y);
        prop_assert!(z.mul(&y).sub(&x.mul(&y).add(&y.mul(&y))).is_zero());
        if !y.is_zero() {
            prop_assert!(x.mul(&y).div(&y).unwrap().sub(&x).is_zero());
        }
    }

    #[test]
    fn printed_form_parses_back(p in prime(), a in -1_000_000i64..1_000_000, b in 1i64..1000, k in 2i64..10) {
        let x = padic(p, a, b).truncate_abs(k);
        let s = x.to_string();
        let y = Padic::parse(p, CAP, &s).unwrap();
        prop_assert_eq!(y.to_string(), s);
        prop_assert_eq!(y.abs_prec(), x.abs_prec());
    }

    #[test]
    fn log_is_a_homomorphism(p in prime(), a in 1i64..5000, b in 1i64..5000, ea in 0i64..3, eb in 0i64..3) {
        let unit = |n: i64| if n % p as i64 == 0 { n + 1 } else { n };
        let x = padic(p, unit(a), 1).shift(ea);
        let y = padic(p, unit(b), 1).shift(eb);
        let br = BranchSpec::iwasawa();
        let lhs = x.mul(&y).log(&br).unwrap();
        let rhs = x.log(&br).unwrap().add(&y.log(&br).unwrap());
        prop_assert!(agreement(&lhs, &rhs) >= CAP as i64 - 2, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn square_roots_square_back(p in prime(), a in 1i64..5000) {
        let x = padic(p, a, 1);
        let sq = x.mul(&x);
        let r = sq.sqrt().unwrap();
        prop_assert!(r.mul(&r).sub(&sq).is_zero());
    }

    #[test]
    fn series_inverse(p in prime(), cs in prop::collection::vec(-50i64..50, 1..8), c0 in 1i64..50) {
        let proto = Padic::zero(p, CAP);
        let c0 = if c0 % p as i64 == 0 { c0 + 1 } else { c0 };
        let mut coeffs = vec![proto.int_like(c0)];
        coeffs.extend(cs.iter().map(|&c| proto.int_like(c)));
        let s = Series::exact(0, coeffs, &proto);
        let prod = s.mul(&s.inv(10).unwrap());
        prop_assert!(prod.coeff(0).sub(&proto.one_like()).is_zero());
        for k in 1..10 {
            prop_assert!(prod.coeff(k).is_zero(), "t^{} coefficient {}", k, prod.coeff(k));
        }
    }

    #[test]
    fn polynomial_division(a in prop::collection::vec(-20i64..20, 1..8), d in prop::collection::vec(-20i64..20, 1..4)) {
        let mut d = d;
        d.push(1);
        let (pa, pd) = (Poly::from_ints(&a), Poly::from_ints(&d));
        let (q, r) = pa.divrem(&pd).unwrap();
        prop_assert_eq!(q.mul(&pd).add(&r), pa);
        prop_assert!(r.degree().map_or(true, |k| k < d.len() - 1));
    }

    #[test]
    fn resultant_is_multiplicative(a in prop::collection::vec(-9i64..9, 1..4), b in prop::collection::vec(-9i64..9, 1..4), c in prop::collection::vec(-9i64..9, 1..3)) {
        let monic = |v: &[i64]| { let mut v = v.to_vec(); v.push(1); Poly::from_ints(&v) };
        let (pa, pb, pc) = (monic(&a), Poly::from_ints(&b), Poly::from_ints(&c));
        let lhs = resultant(&pa, &pb.mul(&pc)).unwrap();
        prop_assert_eq!(lhs, resultant(&pa, &pb).unwrap() * resultant(&pa, &pc).unwrap());
    }

    #[test]
    fn linear_solve(p in prime(), m in prop::collection::vec(-30i64..30, 9), v in prop::collection::vec(-30i64..30, 3)) {
        let proto = Padic::zero(p, CAP);
        let a = Matrix::from_fn(3, 3, |i, j| proto.int_like(m[3 * i + j] + if i == j { 100 * p as i64 + 1 } else { 0 }));
        let b: Vec<Padic> = v.iter().map(|&x| proto.int_like(x)).collect();
        let x = a.solve_vec(&b).unwrap();
        for (l, r) in a.mul_vec(&x).iter().zip(&b) {
            prop_assert!(l.sub(r).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cup_matrix_is_antisymmetric(cs in prop::collection::vec(-9i64..9, 5)) {
        let mut f = cs.clone();
        f.push(1);
        // skip singular models
        let Ok(curve) = CurveModel::from_ints(&f, 1009, 8) else { return Ok(()) };
        let n = cup_matrix(&curve);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(n.get(i, j).clone(), -n.get(j, i).clone());
            }
        }
        prop_assert!(!n.determinant().is_zero());
    }

    #[test]
    fn tiny_integrals_are_additive(k1 in 1i64..40, k2 in 1i64..40) {
        let c = CurveModel::from_ints(&[0, -5, 0, 1], 13, 16).unwrap();
        let a = c.point_from_ints(-1, 2).unwrap();
        let lift = |k: i64| c.lift_x(&a.x.add(&c.int(13 * k)), a.y.residue());
        let (Ok(b), Ok(d)) = (lift(k1), lift(-k2)) else { return Ok(()) };
        let forms = [Differential::basis(0, &c.zero()), Differential::basis(1, &c.zero())];
        let ab = tiny_integrals(&c, &forms, &a, &b, 8).unwrap();
        let bd = tiny_integrals(&c, &forms, &b, &d, 8).unwrap();
        let ad = tiny_integrals(&c, &forms, &a, &d, 8).unwrap();
        for i in 0..2 {
            let sum = ab[i].value.add(&bd[i].value);
            prop_assert!(agreement(&sum, &ad[i].value) >= 8, "w_{}: {} vs {}", i, sum, ad[i].value);
        }
    }
}
