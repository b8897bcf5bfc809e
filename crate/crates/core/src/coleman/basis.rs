use super::{tiny_integrals, Differential, IntegralResult};
use crate::curve::{CurveModel, Point};
use crate::error::{Error, Result};
use crate::frobenius::FrobData;
use crate::linalg::Matrix;
use crate::padic::floor_log;

/// `(int_from^to w_i)_i` for points in non-Weierstrass discs, by solving
/// `(M - I) v = f(P) - f(Q) - int_P^phi(P) w - int_phi(Q)^Q w`.
pub fn basis_integrals(
    curve: &CurveModel,
    fd: &FrobData,
    from: &Point,
    to: &Point,
) -> Result<Vec<IntegralResult>> {
    for pt in [from, to] {
        if curve.disc(pt).is_weierstrass() {
            return Err(Error::Domain(format!("basis integrals need non-Weierstrass endpoints, got {pt:?}")));
        }
    }
    let g2 = 2 * fd.g;
    let proto = curve.zero();
    let n = fd.n_work as i64;
    let p = curve.prime();
    if from.x.agrees_with(&to.x) && from.y.agrees_with(&to.y) {
        return Ok((0..g2).map(|_| IntegralResult::zero(&proto)).collect());
    }
    let forms: Vec<Differential> = (0..g2).map(|i| Differential::basis(i, &proto)).collect();
    let guard = n + 2;
    let fp = curve.frobenius_point(from)?;
    let fq = curve.frobenius_point(to)?;
    let t_p = tiny_integrals(curve, &forms, from, &fp, guard)?;
    let t_q = tiny_integrals(curve, &forms, &fq, to, guard)?;
    let ep = fd.exact_values(from)?;
    let eq = fd.exact_values(to)?;
    let rhs: Vec<_> = (0..g2)
        .map(|i| ep[i].sub(&eq[i]).sub(&t_p[i].value).sub(&t_q[i].value))
        .collect();
    let id = Matrix::identity(g2, &proto);
    let a = fd.matrix.sub(&id);
    let v = a.solve_vec(&rhs)?;
    let m = fd.det_m_minus_i_valuation()?;
    let loss = m.max(floor_log(p, n as u64) as i64);
    let reported = n - loss;
    let log = vec![
        format!("tiny corrections to {guard} digits"),
        format!("v_p(det(M - I)) = {m}, reported {n} - max({m}, floor(log_{p}({n}))) = {reported}"),
    ];
    Ok(v.into_iter().map(|x| IntegralResult::new(x, reported, log.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coleman::tiny_integral;
    use crate::frobenius::frobenius_matrix;

    #[test]
    fn agrees_with_tiny_in_one_disc_and_is_additive() {
        let c = CurveModel::from_ints(&[0, 40, 18, -23, 0, 1], 11, 14).unwrap();
        let fd = frobenius_matrix(&c, 7).unwrap();
        let r = c.point_from_ints(5, 30).unwrap();
        let q = c.lift_x(&c.int(5 + 11 * 4), Some(8)).unwrap();
        let s = c.point_from_ints(-2, 12).unwrap();
        let rq = basis_integrals(&c, &fd, &r, &q).unwrap();
        for (i, v) in rq.iter().enumerate() {
            let t = tiny_integral(&c, &Differential::basis(i, &c.zero()), &r, &q, 10).unwrap();
            assert!(v.value.agrees_with(&t.value), "w_{i}: {} vs {}", v.value, t.value);
        }
        let qs = basis_integrals(&c, &fd, &q, &s).unwrap();
        let rs = basis_integrals(&c, &fd, &r, &s).unwrap();
        for i in 0..4 {
            assert!(rq[i].value.add(&qs[i].value).agrees_with(&rs[i].value));
        }
        // the involution negates every basis form
        let neg = basis_integrals(&c, &fd, &r.involution(), &s.involution()).unwrap();
        for i in 0..4 {
            assert!(neg[i].value.add(&rs[i].value).is_zero());
        }
    }
}
