use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::padic::{Coeff, Padic, PadicAlgebra};

/// Order marker of a series with no truncation (a Laurent polynomial).
pub const EXACT_ORDER: i64 = i64::MAX / 4;

/// A truncated Laurent series `sum_{k >= lo} c_k t^k + O(t^prec)`.
///
/// Coefficients are stored for exponents `lo .. lo + coeffs.len()`; any
/// exponent from there up to `prec` has coefficient zero.
#[derive(Clone)]
pub struct Series<C> {
    lo: i64,
    coeffs: Vec<C>,
    prec: i64,
    proto: C,
}

impl<C: Coeff> Series<C> {
    pub fn new(lo: i64, coeffs: Vec<C>, prec: i64, proto: &C) -> Series<C> {
        let mut s = Series { lo, coeffs, prec, proto: proto.zero_like() };
        s.normalize();
        s
    }

    /// A Laurent polynomial, exact in every order.
    pub fn exact(lo: i64, coeffs: Vec<C>, proto: &C) -> Series<C> {
        Series::new(lo, coeffs, EXACT_ORDER, proto)
    }

    pub fn zero(prec: i64, proto: &C) -> Series<C> {
        Series::new(0, vec![], prec, proto)
    }

    pub fn constant(c: C) -> Series<C> {
        let proto = c.zero_like();
        Series::exact(0, vec![c], &proto)
    }

    /// `t`.
    pub fn variable(proto: &C) -> Series<C> {
        Series::exact(1, vec![proto.one_like()], proto)
    }

    pub fn from_poly(p: &Poly<C>) -> Series<C> {
        Series::exact(0, p.coeffs().to_vec(), p.proto())
    }

    fn normalize(&mut self) {
        let keep = (self.prec - self.lo).max(0);
        if (self.coeffs.len() as i64) > keep {
            self.coeffs.truncate(keep as usize);
        }
        while self.coeffs.last().map_or(false, Coeff::is_exact_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self
            .coeffs
            .iter()
            .take_while(|c| c.is_exact_zero())
            .count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.lo += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = self.lo.min(self.prec);
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn proto(&self) -> &C {
        &self.proto
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT_ORDER
    }

    /// Highest stored exponent plus one.
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64
    }

    pub fn coeff(&self, k: i64) -> C {
        if k < self.lo || k >= self.hi() {
            return self.proto.zero_like();
        }
        self.coeffs[(k - self.lo) as usize].clone()
    }

    /// Exponent of the first coefficient not known to be zero; `prec` if none.
    pub fn valuation(&self) -> i64 {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map_or(self.prec, |i| self.lo + i as i64)
    }

    /// Drops the terms below `t^k` (used for terms known to be zero only to
    /// finite p-adic precision).
    pub fn drop_below(&self, k: i64) -> Series<C> {
        if k <= self.lo {
            return self.clone();
        }
        let skip = ((k - self.lo) as usize).min(self.coeffs.len());
        Series::new(k.min(self.prec), self.coeffs[skip..].to_vec(), self.prec, &self.proto)
    }

    /// Forgets the truncation order, treating the stored terms as exact.
    pub fn as_exact(&self) -> Series<C> {
        Series::new(self.lo, self.coeffs.clone(), EXACT_ORDER, &self.proto)
    }

    pub fn truncate(&self, prec: i64) -> Series<C> {
        Series::new(self.lo, self.coeffs.clone(), self.prec.min(prec), &self.proto)
    }

    pub fn map<D: Coeff>(&self, proto: &D, f: impl Fn(&C) -> D) -> Series<D> {
        Series::new(self.lo, self.coeffs.iter().map(f).collect(), self.prec, proto)
    }

    fn combine(&self, other: &Series<C>, op: impl Fn(&C, &C) -> C) -> Series<C> {
        let lo = self.lo.min(other.lo);
        let prec = self.prec.min(other.prec);
        let hi = self.hi().max(other.hi()).min(prec);
        let coeffs = (lo..hi.max(lo)).map(|k| op(&self.coeff(k), &other.coeff(k))).collect();
        Series::new(lo, coeffs, prec, &self.proto)
    }

    pub fn add(&self, other: &Series<C>) -> Series<C> {
        self.combine(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Series<C>) -> Series<C> {
        self.combine(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Series<C> {
        Series::new(self.lo, self.coeffs.iter().map(Coeff::neg).collect(), self.prec, &self.proto)
    }

    pub fn scale(&self, c: &C) -> Series<C> {
        Series::new(self.lo, self.coeffs.iter().map(|a| a.mul(c)).collect(), self.prec, &self.proto)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Series<C> {
        let prec = if self.is_exact() { self.prec } else { self.prec + k };
        Series::new(self.lo + k, self.coeffs.clone(), prec, &self.proto)
    }

    pub fn mul(&self, other: &Series<C>) -> Series<C> {
        let v1 = self.valuation();
        let v2 = other.valuation();
        let prec = if self.is_exact() && other.is_exact() {
            EXACT_ORDER
        } else if self.is_exact() {
            other.prec + v1
        } else if other.is_exact() {
            self.prec + v2
        } else {
            (self.prec + v2).min(other.prec + v1)
        };
        let lo = self.lo + other.lo;
        let hi = (self.hi() + other.hi() - 1).min(prec).max(lo);
        let mut out = vec![self.proto.zero_like(); (hi - lo) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= out.len() {
                    break;
                }
                out[k] = out[k].add(&a.mul(b));
            }
        }
        Series::new(lo, out, prec, &self.proto)
    }

    /// `1/self` with `terms` relative terms (capped by the known precision).
    pub fn inv(&self, terms: usize) -> Result<Series<C>> {
        let v = self.valuation();
        if v >= self.prec {
            return Err(Error::NotInvertible("series is zero to its precision".into()));
        }
        let rel = if self.is_exact() { terms as i64 } else { (self.prec - v).min(terms as i64) };
        // Newton steps run on exact truncations; precision is reattached at the end.
        let unit = self.shift(-v).drop_below(0).truncate(rel).as_exact();
        let c0 = unit.coeff(0).inv()?;
        let mut b = Series::exact(0, vec![c0], &self.proto);
        let two = Series::constant(self.proto.int_like(2));
        let mut n = 1;
        while n < rel {
            n = (2 * n).min(rel);
            let ab = unit.truncate(n).as_exact().mul(&b).truncate(n).as_exact();
            b = b.mul(&two.sub(&ab)).truncate(n).as_exact();
        }
        let b = Series::new(b.lo, b.coeffs, rel, &self.proto);
        Ok(b.shift(-v))
    }

    pub fn div(&self, other: &Series<C>, terms: usize) -> Result<Series<C>> {
        Ok(self.mul(&other.inv(terms)?))
    }

    /// Square root with leading coefficient `root`, where `root^2` must equal
    /// the leading coefficient of `self`.
    pub fn sqrt(&self, root: &C, terms: usize) -> Result<Series<C>> {
        let v = self.valuation();
        if v % 2 != 0 {
            return Err(Error::NonSquare("series of odd valuation".into()));
        }
        if !root.mul(root).sub(&self.coeff(v)).is_zero() {
            return Err(Error::NonSquare("supplied root does not square to the leading term".into()));
        }
        let rel = if self.is_exact() { terms as i64 } else { (self.prec - v).min(terms as i64) };
        let unit = self.shift(-v).drop_below(0).truncate(rel).as_exact();
        let half = self.proto.int_like(2).inv()?;
        let mut y = Series::exact(0, vec![root.clone()], &self.proto);
        let mut n = 1;
        while n < rel {
            n = (2 * n).min(rel);
            let q = unit.truncate(n).as_exact().div(&y, n as usize)?.truncate(n).as_exact();
            y = y.add(&q).scale(&half).truncate(n).as_exact();
        }
        let y = Series::new(y.lo, y.coeffs, rel, &self.proto);
        Ok(y.shift(v / 2))
    }

    pub fn derivative(&self) -> Series<C> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul_int(self.lo + i as i64))
            .collect();
        let prec = if self.is_exact() { self.prec } else { self.prec - 1 };
        Series::new(self.lo - 1, coeffs, prec, &self.proto)
    }

    /// Term-wise antiderivative with zero constant term. Fails if the `t^-1`
    /// coefficient is not zero to its precision.
    pub fn integrate(&self) -> Result<Series<C>> {
        let r = self.coeff(-1);
        if !r.is_zero() {
            return Err(Error::LogTermRequired(format!("residue {r:?} is nonzero")));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.lo + i as i64;
            coeffs.push(if k == -1 { self.proto.zero_like() } else { c.div_int(k + 1)? });
        }
        let prec = if self.is_exact() { self.prec } else { self.prec + 1 };
        let mut out = Series::new(self.lo + 1, coeffs, prec, &self.proto);
        if out.lo <= 0 && out.hi() > 0 {
            out.coeffs[(-out.lo) as usize] = self.proto.zero_like();
            out.normalize();
        }
        Ok(out)
    }

    /// The coefficient of `t^-1`.
    pub fn residue(&self) -> C {
        self.coeff(-1)
    }

    /// `self(g(t))` for a power series `self` (`lo >= 0`) and `g` of positive valuation.
    pub fn compose(&self, g: &Series<C>) -> Result<Series<C>> {
        if self.lo < 0 {
            return Err(Error::Domain("cannot compose a Laurent tail".into()));
        }
        let vg = g.valuation();
        if vg < 1 {
            return Err(Error::Domain("inner series must have positive valuation".into()));
        }
        let bound = if self.is_exact() {
            EXACT_ORDER
        } else {
            self.prec.saturating_mul(vg).min(EXACT_ORDER)
        };
        let mut acc = Series::zero(EXACT_ORDER, &self.proto);
        for k in (self.lo..self.hi()).rev() {
            acc = acc.mul(g).add(&Series::constant(self.coeff(k))).truncate(bound);
        }
        Ok(acc.mul(&g.pow(self.lo as usize)).truncate(bound))
    }

    fn pow_exact(&self, e: usize) -> Series<C> {
        let mut acc = Series::constant(self.proto.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Series<C> {
        self.pow_exact(e)
    }

    /// Sum of `c_k x^k` over the stored terms, for a power series (`lo >= 0`).
    pub fn eval(&self, x: &C) -> Result<C> {
        if self.lo < 0 {
            return self.shift(-self.lo).eval(x).and_then(|v| {
                let xi = x.inv()?;
                let mut r = v;
                for _ in 0..(-self.lo) {
                    r = r.mul(&xi);
                }
                Ok(r)
            });
        }
        let mut acc = self.proto.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        for _ in 0..self.lo {
            acc = acc.mul(x);
        }
        Ok(acc)
    }
}

impl Series<Padic> {
    /// Evaluates at an element of a Q_p-algebra (power series only).
    pub fn eval_in<A: PadicAlgebra>(&self, x: &A) -> Result<A> {
        if self.lo < 0 {
            return Err(Error::Domain("cannot evaluate a Laurent tail in an algebra".into()));
        }
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&x.embed(c));
        }
        for _ in 0..self.lo {
            acc = acc.mul(x);
        }
        Ok(acc)
    }

    pub fn embed_in<A: PadicAlgebra>(&self, proto: &A) -> Series<A> {
        self.map(proto, |c| proto.embed(c))
    }
}

impl<C: Coeff> Poly<C> {
    /// The polynomial evaluated at a series.
    pub fn eval_series(&self, s: &Series<C>) -> Series<C> {
        let mut acc = Series::zero(EXACT_ORDER, self.proto());
        for c in self.coeffs().iter().rev() {
            acc = acc.mul(s).add(&Series::constant(c.clone()));
        }
        acc
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(format!("({c})*t^{}", self.lo + i as i64));
        }
        if !self.is_exact() {
            terms.push(format!("O(t^{})", self.prec));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl<C: fmt::Debug> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Series")
            .field("lo", &self.lo)
            .field("prec", &self.prec)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}
