use super::*;
use crate::polyseries::fp;

/// Number of points of `y^2 = f(x)` over F_p and F_(p^2), including infinity.
fn count_points(f: &[i64], p: u64) -> (i64, i64) {
    let fm: Vec<u64> = f.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    let chi = |v: u64| -> i64 {
        if v == 0 {
            0
        } else if fp::pow_mod(v, (p - 1) / 2, p) == 1 {
            1
        } else {
            -1
        }
    };
    let n1 = 1 + (0..p).map(|x| 1 + chi(fp::eval(&fm, x, p))).sum::<i64>();
    // F_(p^2) = F_p(sqrt(r)) for a non-residue r
    let r = (2..p).find(|&r| chi(r) == -1).unwrap();
    let mul = |a: (u64, u64), b: (u64, u64)| ((a.0 * b.0 + a.1 * b.1 % p * r) % p, (a.0 * b.1 + a.1 * b.0) % p);
    let pow = |mut b: (u64, u64), mut e: u64| {
        let mut acc = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let q = p * p;
    let mut n2 = 1;
    for a in 0..p {
        for b in 0..p {
            let x = (a, b);
            let mut v = (0, 0);
            for c in fm.iter().rev() {
                v = mul(v, x);
                v.0 = (v.0 + c) % p;
            }
            n2 += if v == (0, 0) {
                1
            } else if pow(v, (q - 1) / 2) == (1, 0) {
                2
            } else {
                0
            };
        }
    }
    (n1, n2)
}

fn check_charpoly(f: &[i64], p: u32, n: u32) {
    let curve = CurveModel::from_ints(f, p, n + 4).unwrap();
    let fd = frobenius_matrix(&curve, n).unwrap();
    let g = curve.genus();
    let (n1, n2) = count_points(f, p as u64);
    let pi = p as i64;
    let s1 = pi + 1 - n1;
    let s2 = pi * pi + 1 - n2;
    let m = &fd.matrix;
    let mut tr1 = m.get(0, 0).zero_like();
    let m2 = m.mul(m);
    let mut tr2 = tr1.clone();
    for i in 0..2 * g {
        tr1 = tr1.add(m.get(i, i));
        tr2 = tr2.add(m2.get(i, i));
    }
    assert!(tr1.agrees_with(&Padic::from_int(p, n, s1)), "trace {tr1} vs {s1}");
    assert!(tr2.agrees_with(&Padic::from_int(p, n, s2)), "trace of M^2 {tr2} vs {s2}");
    let det = m.determinant();
    assert_eq!(det.valuation(), Some(g as i64));
    assert!(det.agrees_with(&Padic::from_int(p, n, pi.pow(g as u32))));
    let cp = fd.charpoly().unwrap();
    // T^2 - s1 T + p for g = 1; T^4 - a1 T^3 + a2 T^2 - p a1 T + p^2 for g = 2
    let expect: Vec<i64> = if g == 1 {
        vec![pi, -s1, 1]
    } else {
        let a2 = (s1 * s1 - s2) / 2;
        vec![pi * pi, -pi * s1, a2, -s1, 1]
    };
    for (c, e) in cp.iter().zip(&expect) {
        assert!(c.agrees_with(&Padic::from_int(p, n, *e)), "{c} vs {e}");
    }
}

#[test]
fn charpoly_matches_point_counts_genus1() {
    check_charpoly(&[0, -5, 0, 1], 7, 6);
    check_charpoly(&[0, -5, 0, 1], 13, 5);
}

#[test]
fn charpoly_matches_point_counts_genus2() {
    check_charpoly(&[0, 40, 18, -23, 0, 1], 11, 5);
}

#[test]
fn reduction_of_basis_and_exact_forms() {
    let curve = CurveModel::from_ints(&[0, 40, 18, -23, 0, 1], 11, 10).unwrap();
    let proto = curve.zero();
    let red = Reducer::new(curve.f()).unwrap();
    let half = proto.int_like(2).inv().unwrap();
    for i in 0..4 {
        let mut form = BTreeMap::new();
        form.insert(1, Poly::monomial(i, &proto).scale(&half));
        let (c, _) = red.reduce(&form).unwrap();
        for (j, cj) in c.iter().enumerate() {
            assert!(cj.agrees_with(&proto.int_like((i == j) as i64)));
        }
    }
    for k in 0..6 {
        // d(x^k y) = (k x^(k-1) f + x^k f'/2) dx / y
        let mut a = curve.f().derivative().shift(k).scale(&half);
        if k > 0 {
            a = a.add(&curve.f().shift(k - 1).scale(&proto.int_like(k as i64)));
        }
        let mut form = BTreeMap::new();
        form.insert(1, a);
        let (c, _) = red.reduce(&form).unwrap();
        assert!(c.iter().all(Padic::is_zero), "d(x^{k} y)");
        // d(x^k / y) = (k x^(k-1) f - x^k f'/2) dx / y^3
        let mut b = curve.f().derivative().shift(k).scale(&half).neg();
        if k > 0 {
            b = b.add(&curve.f().shift(k - 1).scale(&proto.int_like(k as i64)));
        }
        let mut form = BTreeMap::new();
        form.insert(3, b);
        let (c, _) = red.reduce(&form).unwrap();
        assert!(c.iter().all(Padic::is_zero), "d(x^{k}/y)");
    }
}

#[test]
fn digits_stable_under_more_precision() {
    let curve = CurveModel::from_ints(&[0, 40, 18, -23, 0, 1], 11, 10).unwrap();
    let a = frobenius_matrix(&curve, 5).unwrap();
    let b = frobenius_matrix(&curve, 7).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let x = a.matrix.get(i, j);
            let y = b.matrix.get(i, j).truncate_abs(5);
            assert!(x.agrees_with(&y), "M[{i}][{j}]: {x} vs {y}");
            assert!(x.abs_prec() >= 5);
        }
    }
}

#[test]
fn unit_root_subspace_is_frobenius_stable() {
    let curve = CurveModel::from_ints(&[0, 40, 18, -23, 0, 1], 11, 10).unwrap();
    let fd = frobenius_matrix(&curve, 6).unwrap();
    let w = SubspaceW::unit_root(&fd, 6).unwrap();
    assert_eq!(w.complement_valuation().unwrap(), 0);
    let image = fd.action().mul(&w.basis);
    // each image column is in W: its holomorphic component vanishes
    for j in 0..2 {
        let (h, _) = w.split(&image.column(j)).unwrap();
        assert!(h.iter().all(|c| c.abs_prec() < 6 || c.is_zero() || c.valuation().unwrap() >= 6), "{h:?}");
    }
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let curve = CurveModel::from_ints(&[0, -5, 0, 1], 13, 8).unwrap();
    let fd = frobenius_matrix(&curve, 4).unwrap();
    cache::store_to(d, &curve, &fd).unwrap();
    let back = cache::load_from(d, &curve, 4).unwrap().unwrap();
    assert!(back.matrix == fd.matrix);
    for (a, b) in back.exact.iter().zip(&fd.exact) {
        assert_eq!(a.terms.len(), b.terms.len());
        for (k, v) in &a.terms {
            assert!(v == &b.terms[k]);
        }
    }
    assert!(cache::load_from(d, &curve, 5).unwrap().is_none());
}
