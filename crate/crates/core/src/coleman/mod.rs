//! Coleman integration: tiny integrals, basis integrals between
//! non-Weierstrass points, in-disc antiderivatives with log terms, the
//! residue engine and meromorphic integration by reciprocity.

mod basis;
mod indisc;
mod meromorphic;
mod residues;
mod tiny;

pub use basis::basis_integrals;
pub use indisc::{divide_by_root, weierstrass_disc_antiderivative, InDiscAntiderivative};
pub use meromorphic::{integrate_antisym, integrate_meromorphic, MeromorphicIntegral};
pub use residues::{
    alpha_residue_shortcut, plan_residue_jobs, residue_sum, JobDisc, ResidueBreakdown, ResidueJob,
};
pub use tiny::{tiny_integral, tiny_integrals, tiny_integrals_truncated, tiny_order, tiny_precision};

use std::fmt;

use crate::curve::{LocalCoords, ThirdKindForm};
use crate::error::Result;
use crate::padic::{Padic, PadicAlgebra};
use crate::polyseries::Series;

/// A Coleman integral with its guaranteed absolute precision.
#[derive(Clone, Debug)]
pub struct IntegralResult {
    pub value: Padic,
    /// Absolute precision in digits; `value` is truncated to it.
    pub precision: i64,
    /// Precision charges, one line each.
    pub log: Vec<String>,
}

impl IntegralResult {
    pub fn new(value: Padic, precision: i64, log: Vec<String>) -> IntegralResult {
        let precision = precision.min(value.abs_prec());
        IntegralResult { value: value.truncate_abs(precision), precision, log }
    }

    pub fn zero(proto: &Padic) -> IntegralResult {
        IntegralResult { value: proto.zero_like(), precision: crate::padic::EXACT, log: vec![] }
    }
}

impl fmt::Display for IntegralResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `sum_i a_i x^i dx/(2y) + nu` with `nu` of the third kind.
#[derive(Clone, Debug)]
pub struct Differential {
    /// Coefficients on the basis `x^i dx/(2y)`, `i < 2g` (may be shorter).
    pub holo: Vec<Padic>,
    pub third: ThirdKindForm,
}

impl Differential {
    pub fn basis(i: usize, proto: &Padic) -> Differential {
        let mut holo = vec![proto.zero_like(); i + 1];
        holo[i] = proto.one_like();
        Differential { holo, third: ThirdKindForm { terms: vec![] } }
    }

    pub fn holomorphic(coeffs: Vec<Padic>) -> Differential {
        Differential { holo: coeffs, third: ThirdKindForm { terms: vec![] } }
    }

    pub fn third_kind(nu: &ThirdKindForm) -> Differential {
        Differential { holo: vec![], third: nu.clone() }
    }

    pub fn add(&self, other: &Differential) -> Differential {
        let len = self.holo.len().max(other.holo.len());
        let get = |v: &[Padic], i: usize, proto: &Padic| v.get(i).cloned().unwrap_or_else(|| proto.zero_like());
        let proto = self
            .holo
            .first()
            .or(other.holo.first())
            .cloned()
            .or_else(|| self.third.terms.first().map(|t| t.0.zero_like()))
            .or_else(|| other.third.terms.first().map(|t| t.0.zero_like()));
        let holo = match proto {
            Some(z) => (0..len).map(|i| get(&self.holo, i, &z).add(&get(&other.holo, i, &z))).collect(),
            None => vec![],
        };
        Differential { holo, third: self.third.add(&other.third) }
    }

    pub fn scale(&self, c: &Padic) -> Differential {
        Differential { holo: self.holo.iter().map(|a| a.mul(c)).collect(), third: self.third.scale(c) }
    }

    /// Pullback to the local coordinates as the coefficient of `dt`.
    pub fn expand<A: PadicAlgebra>(&self, lc: &LocalCoords<A>, terms: usize) -> Result<Series<A>> {
        let proto = lc.x.proto().clone();
        let mut acc: Option<Series<A>> = None;
        for (i, a) in self.holo.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            let s = lc.basis_form(i, terms)?.scale(&proto.embed(a));
            acc = Some(match acc {
                Some(x) => x.add(&s),
                None => s,
            });
        }
        if !self.third.terms.is_empty() {
            let s = self.third.expand(lc, terms)?;
            acc = Some(match acc {
                Some(x) => x.add(&s),
                None => s,
            });
        }
        Ok(acc.unwrap_or_else(|| Series::zero(crate::polyseries::EXACT_ORDER, &proto)))
    }
}
