//! Kedlaya's algorithm: the matrix of Frobenius on `H^1_dR`, its exact parts,
//! and the unit-root complement `W`.

mod cache;
mod reduce;

pub use cache::{load_cached, store_cached, CACHE_ENV};
pub use reduce::{ExactPart, Reducer};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::curve::{CurveModel, Point};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::padic::{floor_log, Padic};
use crate::polyseries::Poly;

/// Frobenius data at working precision `n_work`:
/// `phi^*(w_i) = d f_i + sum_j M_ij w_j` for `w_i = x^i dx/(2y)`.
#[derive(Clone, Debug)]
pub struct FrobData {
    pub p: u32,
    pub g: usize,
    pub n_work: u32,
    /// Row convention: row `i` holds the coefficients of `phi^*(w_i)`.
    pub matrix: Matrix<Padic>,
    pub exact: Vec<ExactPart>,
    /// Number of binomial terms used for `1/phi(y)`.
    pub terms: usize,
}

/// `binom(-1/2, k)`.
fn binom_minus_half(k: usize) -> BigRational {
    let mut c = BigRational::from_integer(1.into());
    for j in 0..k {
        c = c * BigRational::new(BigInt::from(-1) - BigInt::from(2 * j as i64), BigInt::from(2 * (j as i64 + 1)));
    }
    c
}

/// Number of binomial terms of `1/phi(y)` and the coefficient cap needed for
/// `n` correct digits of the Frobenius matrix.
pub fn kedlaya_budget(p: u32, g: usize, n: u32) -> (usize, u32) {
    let loss = floor_log(p, (2 * n as u64 + 1) * p as u64 * (2 * g as u64 + 1)) + 1;
    let terms = (n + loss + 1) as usize;
    (terms, n + 2 * loss + 4)
}

/// Runs Kedlaya's algorithm on the curve, giving `M` modulo `p^n_work`.
pub fn frobenius_matrix(curve: &CurveModel, n_work: u32) -> Result<FrobData> {
    let p = curve.prime();
    let g = curve.genus();
    let (terms, cap) = kedlaya_budget(p, g, n_work);
    let c = curve.with_cap(cap);
    let proto = c.zero();
    let f = c.f().clone();
    let reducer = Reducer::new(&f)?;
    // E = f(x^p) - f(x)^p
    let xp = Poly::monomial(p as usize, &proto);
    let e = f.compose(&xp).sub(&f.pow(p as usize));
    let mut e_pows = vec![Poly::constant(proto.one_like())];
    for k in 1..terms {
        e_pows.push(e_pows[k - 1].mul(&e));
    }
    let half_p = proto.int_like(p as i64).div_int(2)?;
    let rows: Vec<Result<(Vec<Padic>, ExactPart)>> = (0..2 * g)
        .into_par_iter()
        .map(|i| {
            let mono = Poly::monomial(p as usize * (i + 1) - 1, &proto);
            let mut form: BTreeMap<i64, Poly<Padic>> = BTreeMap::new();
            for (k, ek) in e_pows.iter().enumerate() {
                let coeff = proto.rational_like(&binom_minus_half(k)).mul(&half_p);
                let s = p as i64 * (2 * k as i64 + 1);
                form.insert(s, mono.mul(ek).scale(&coeff));
            }
            reducer.reduce(&form)
        })
        .collect();
    let mut m_rows = Vec::with_capacity(2 * g);
    let mut exact = Vec::with_capacity(2 * g);
    for row in rows {
        let (coeffs, ex) = row?;
        m_rows.push(coeffs.into_iter().map(|x| x.truncate_abs(n_work as i64)).collect());
        exact.push(ex);
    }
    Ok(FrobData { p, g, n_work, matrix: Matrix::from_rows(m_rows), exact, terms })
}

impl FrobData {
    /// The matrix acting on coefficient vectors (column convention), `M^T`.
    pub fn action(&self) -> Matrix<Padic> {
        self.matrix.transpose()
    }

    /// `f_i(P)` for all `i`.
    pub fn exact_values(&self, pt: &Point) -> Result<Vec<Padic>> {
        self.exact.iter().map(|h| h.eval(&pt.x, &pt.y)).collect()
    }

    /// `v_p(det(M - I))`.
    pub fn det_m_minus_i_valuation(&self) -> Result<i64> {
        let id = Matrix::identity(2 * self.g, self.matrix.get(0, 0));
        let d = self.matrix.sub(&id).determinant();
        d.valuation().ok_or_else(|| Error::PrecisionExhausted("det(M - I) is zero to precision".into()))
    }

    /// Characteristic polynomial of `M`, lowest coefficient first.
    pub fn charpoly(&self) -> Result<Vec<Padic>> {
        self.matrix.charpoly()
    }
}

/// A complement `W` to the holomorphic forms, as a `2g x g` matrix whose
/// columns span it.
#[derive(Clone, Debug)]
pub struct SubspaceW {
    pub basis: Matrix<Padic>,
}

impl SubspaceW {
    /// The unit-root subspace: span of `Frob^n w_g, ..., Frob^n w_(2g-1)`.
    pub fn unit_root(fd: &FrobData, n: u32) -> Result<SubspaceW> {
        let g = fd.g;
        let a = fd.action().pow(n as u64);
        let basis = Matrix::from_fn(2 * g, g, |i, j| a.get(i, g + j).clone());
        let w = SubspaceW { basis };
        let v = w.complement_valuation()?;
        if v > 0 {
            return Err(Error::NonOrdinary(format!(
                "the unit-root subspace is not complementary (valuation {v}); supply W explicitly"
            )));
        }
        Ok(w)
    }

    /// `span{w_g, ..., w_(2g-1)}` (the isotropic choice for genus 1 is `span{w_1}`).
    pub fn upper_span(g: usize, proto: &Padic) -> SubspaceW {
        SubspaceW {
            basis: Matrix::from_fn(2 * g, g, |i, j| if i == g + j { proto.one_like() } else { proto.zero_like() }),
        }
    }

    pub fn explicit(basis: Matrix<Padic>) -> Result<SubspaceW> {
        let w = SubspaceW { basis };
        if w.basis.rows() != 2 * w.basis.cols() {
            return Err(Error::Validation("W must be a 2g x g matrix".into()));
        }
        let v = w.complement_valuation()?;
        let _ = v;
        Ok(w)
    }

    fn stacked(&self) -> Matrix<Padic> {
        let g = self.basis.cols();
        let proto = self.basis.get(0, 0).clone();
        Matrix::from_fn(2 * g, 2 * g, |i, j| {
            if j < g {
                if i == j {
                    proto.one_like()
                } else {
                    proto.zero_like()
                }
            } else {
                self.basis.get(i, j - g).clone()
            }
        })
    }

    /// Valuation of `det [w_0 .. w_(g-1) | W]`.
    pub fn complement_valuation(&self) -> Result<i64> {
        self.stacked()
            .determinant()
            .valuation()
            .ok_or_else(|| Error::NonOrdinary("W is not complementary to the holomorphic forms".into()))
    }

    /// Splits `v = h + w` with `h` holomorphic and `w` in `W`; returns `(h, w-coordinates)`.
    pub fn split(&self, v: &[Padic]) -> Result<(Vec<Padic>, Vec<Padic>)> {
        let g = self.basis.cols();
        let c = self.stacked().solve_vec(v)?;
        let mut h = c[..g].to_vec();
        h.extend((0..g).map(|_| v[0].zero_like()));
        Ok((h, c[g..].to_vec()))
    }
}

#[cfg(test)]
mod tests;
