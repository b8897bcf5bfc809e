use super::local::LocalCoords;
use super::Point;
use crate::error::Result;
use crate::padic::{Padic, PadicAlgebra};
use crate::polyseries::Series;

/// A form `sum_i c_i dx / ((x - x_i) y)` with simple poles at the points
/// `(x_i, ±y)` above each `x_i`.
///
/// With `c_i = m_i y_i` the residue divisor is `sum_i m_i ((P_i) - (-P_i))`.
#[derive(Clone, Debug)]
pub struct ThirdKindForm {
    pub terms: Vec<(Padic, Padic)>,
}

impl ThirdKindForm {
    /// `y(P) dx / ((x - x(P)) y)`, the form with residue divisor `(P) - (-P)`.
    pub fn for_pair(pt: &Point) -> ThirdKindForm {
        ThirdKindForm { terms: vec![(pt.x.clone(), pt.y.clone())] }
    }

    /// The form for `sum m_i ((P_i) - (-P_i))`.
    pub fn for_pairs(pairs: &[(Point, i64)]) -> ThirdKindForm {
        ThirdKindForm {
            terms: pairs.iter().map(|(pt, m)| (pt.x.clone(), pt.y.mul_int(*m))).collect(),
        }
    }

    pub fn scale(&self, c: &Padic) -> ThirdKindForm {
        ThirdKindForm { terms: self.terms.iter().map(|(x, k)| (x.clone(), k.mul(c))).collect() }
    }

    pub fn add(&self, other: &ThirdKindForm) -> ThirdKindForm {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ThirdKindForm { terms }
    }

    pub fn pole_xs(&self) -> Vec<Padic> {
        self.terms.iter().map(|(x, _)| x.clone()).collect()
    }

    /// Expansion in local coordinates over a Q_p-algebra, away from the poles
    /// unless the pole sits exactly at `t = 0` (then it appears as a Laurent term).
    pub fn expand<A: PadicAlgebra>(&self, lc: &LocalCoords<A>, terms: usize) -> Result<Series<A>> {
        let proto = lc.x.proto().clone();
        let dx = lc.x.derivative();
        let yinv = lc.y.inv(terms)?;
        let mut acc = Series::zero(lc.x.prec().max(1), &proto).as_exact();
        for (xi, ci) in &self.terms {
            let shifted = lc.x.sub(&Series::constant(proto.embed(xi)));
            let inv = shifted.inv(terms)?;
            acc = acc.add(&inv.scale(&proto.embed(ci)));
        }
        Ok(acc.mul(&dx).mul(&yinv))
    }
}
