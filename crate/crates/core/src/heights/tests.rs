use super::*;
use crate::polyseries::Poly;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ratq(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ctx_for(f: &[i64], p: u32, n: u32, policy: &WPolicy) -> HeightContext {
    HeightContext::new(f.iter().map(|&c| rat(c)).collect(), p, n, policy, BranchSpec::iwasawa()).unwrap()
}

fn genus2(n: u32) -> HeightContext {
    ctx_for(&[0, 40, 18, -23, 0, 1], 11, n, &WPolicy::UnitRoot)
}

#[test]
fn cup_matrix_shape() {
    for f in [vec![3, 1, 4, 1, 5, 1], vec![2, 7, 1, 8, 2, 8, 1, 1]] {
        let c = CurveModel::from_ints(&f, 101, 10).unwrap();
        let g = c.genus();
        let n = cup_matrix(&c);
        for i in 0..2 * g {
            for j in 0..2 * g {
                assert_eq!(n.get(i, j), &-n.get(j, i).clone());
                if i + j < 2 * g - 1 {
                    assert_eq!(n.get(i, j), &rat(0), "N[{i}][{j}] above the anti-diagonal");
                }
            }
            // 1/(2g-1), 1/(2g-3), ..., -1/(2g-1)
            let k = 2 * g as i64 - 1 - 2 * i as i64;
            assert_eq!(n.get(i, 2 * g - 1 - i), &ratq(1, k));
        }
    }
}

#[test]
fn resultant_is_product_of_values() {
    let a = Poly::from_ints(&[2, -3, 1]);
    let b = Poly::from_ints(&[-3, 1]);
    assert_eq!(resultant(&a, &b).unwrap(), rat(2));
    assert_eq!(resultant(&Poly::from_ints(&[-5, 1]), &Poly::from_ints(&[7, 0, 1])).unwrap(), rat(32));
}

#[test]
fn psi_is_identity_on_basis_forms() {
    let ctx = genus2(4);
    let proto = ctx.curve.zero();
    for i in 0..4 {
        let v = ctx.psi(&Differential::basis(i, &proto)).unwrap();
        for (j, x) in v.iter().enumerate() {
            assert_eq!(x.is_zero(), i != j);
        }
    }
}

#[test]
fn omega_d_has_class_in_w_and_the_right_residues() {
    let ctx = genus2(4);
    let c = &ctx.curve;
    let pt = c.point_from_ints(-4, 24).unwrap();
    let nu = ThirdKindForm::for_pair(&pt);
    let (form, _) = ctx.omega_d(&nu).unwrap();
    let psi = ctx.psi(&form).unwrap();
    let (h, _) = ctx.w.split(&psi).unwrap();
    for x in &h {
        assert!(x.is_zero(), "holomorphic residue {x}");
    }
    // oracle: read the residue off the Laurent expansion at P and -P
    for (q, want) in [(pt.clone(), 1), (pt.involution(), -1)] {
        let lc = c.local_coords(&q, 12).unwrap();
        let s = form.expand(&lc, 12).unwrap();
        assert!(s.residue().sub(&c.int(want)).is_zero());
    }
}

#[test]
fn genus1_eta_is_the_w0_component() {
    let ctx = ctx_for(&[0, -5, 0, 1], 13, 4, &WPolicy::G1Omega1);
    let q = ctx.curve.point_from_ints(-1, 2).unwrap();
    let psi = ctx.psi_third(&ThirdKindForm::for_pair(&q)).unwrap();
    let eta = ctx.eta(&psi).unwrap();
    assert_eq!(eta.len(), 1);
    assert!(eta[0].sub(&psi[0]).is_zero());
}

#[test]
fn mixed_divisors_are_symmetric() {
    let ctx = genus2(4);
    let c = &ctx.curve;
    let p = c.point_from_ints(-4, 24).unwrap();
    let r = c.point_from_ints(5, 30).unwrap();
    let t1 = c.lift_x(&c.int(4 + 7 * 121), None).unwrap();
    let t2 = c.lift_x(&c.int(4 + 2 * 121), None).unwrap();
    let d1 = vec![(p, 1), (t1, 1)];
    let d2 = vec![(r, 1), (t2, 2)];
    let a = ctx.height_pairs(&d1, &d2).unwrap().total;
    let b = ctx.height_pairs(&d2, &d1).unwrap().total;
    assert!(a.precision >= 3, "{a:?}");
    assert!(a.value.agrees_with(&b.value), "{} vs {}", a.value, b.value);
}

#[test]
fn overlapping_or_infinite_support_is_rejected() {
    let ctx = genus2(3);
    let c = &ctx.curve;
    let p = c.point_from_ints(-4, 24).unwrap();
    let e = ctx.height_pairs(&[(p.clone(), 1)], &[(p.involution(), 1)]).unwrap_err();
    assert_eq!(e.code(), "SUPPORT_OVERLAP");
    // x = 1/121 lies in the disc at infinity
    let far = c.lift_x(&c.rational(&ratq(1, 121)), None).unwrap();
    let e = ctx.height_pairs(&[(p, 1)], &[(far, 1)]).unwrap_err();
    assert_eq!(e.code(), "UNSUPPORTED");
}

#[test]
fn explicit_w_must_be_isotropic_and_complementary() {
    let f: Vec<BigRational> = [0, 40, 18, -23, 0, 1].iter().map(|&c| rat(c)).collect();
    let col = |v: [i64; 2]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
    // span{w_2, w_3} is not isotropic: w_2 cup w_3 = -23/3
    let bad = WPolicy::Explicit(vec![col([0, 0]), col([0, 0]), col([1, 0]), col([0, 1])]);
    let e = HeightContext::new(f, 11, 3, &bad, BranchSpec::iwasawa()).unwrap_err();
    assert_eq!(e.code(), "VALIDATION");
}
