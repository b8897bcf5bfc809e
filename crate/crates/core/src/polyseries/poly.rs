use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::fp;
use crate::error::{Error, Result};
use crate::padic::{Coeff, Padic, PadicAlgebra};

/// A polynomial with coefficients lowest first.
///
/// `proto` fixes the coefficient context (prime, cap, quotient ring) so that
/// the zero polynomial still knows where it lives.
#[derive(Clone)]
pub struct Poly<C> {
    coeffs: Vec<C>,
    proto: C,
}

impl<C: Coeff> Poly<C> {
    pub fn new(coeffs: Vec<C>, proto: &C) -> Poly<C> {
        let mut p = Poly { coeffs, proto: proto.zero_like() };
        p.trim();
        p
    }

    pub fn zero(proto: &C) -> Poly<C> {
        Poly { coeffs: vec![], proto: proto.zero_like() }
    }

    pub fn constant(c: C) -> Poly<C> {
        let proto = c.zero_like();
        Poly::new(vec![c], &proto)
    }

    /// `x - c`.
    pub fn linear(c: &C) -> Poly<C> {
        Poly::new(vec![c.neg(), c.one_like()], c)
    }

    /// `x^k`.
    pub fn monomial(k: usize, proto: &C) -> Poly<C> {
        let mut c = vec![proto.zero_like(); k + 1];
        c[k] = proto.one_like();
        Poly::new(c, proto)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, Coeff::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn proto(&self) -> &C {
        &self.proto
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.proto.zero_like())
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn map<D: Coeff>(&self, proto: &D, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect(), proto)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = self.proto.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add(&self, other: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect(), &self.proto)
    }

    pub fn sub(&self, other: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect(), &self.proto)
    }

    pub fn neg(&self) -> Poly<C> {
        Poly::new(self.coeffs.iter().map(Coeff::neg).collect(), &self.proto)
    }

    pub fn scale(&self, c: &C) -> Poly<C> {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.proto)
    }

    pub fn mul(&self, other: &Poly<C>) -> Poly<C> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.proto);
        }
        let mut out = vec![self.proto.zero_like(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out, &self.proto)
    }

    pub fn pow(&self, e: usize) -> Poly<C> {
        let mut acc = Poly::constant(self.proto.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Poly<C> {
        Poly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul_int(k as i64)).collect(),
            &self.proto,
        )
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly<C> {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.proto.zero_like(); k];
        c.extend(self.coeffs.iter().cloned());
        Poly::new(c, &self.proto)
    }

    /// Quotient and remainder by a divisor whose leading coefficient is invertible.
    pub fn divrem(&self, d: &Poly<C>) -> Result<(Poly<C>, Poly<C>)> {
        let dd = d.degree().ok_or_else(|| Error::NotInvertible("division by zero polynomial".into()))?;
        let lead_inv = d.leading().unwrap().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(&self.proto), self.clone()));
        }
        let mut q = vec![self.proto.zero_like(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].mul(&lead_inv);
            for (i, di) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                r[idx] = r[idx].sub(&c.mul(di));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q, &self.proto), Poly::new(r, &self.proto)))
    }

    pub fn rem(&self, d: &Poly<C>) -> Result<Poly<C>> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> Result<Poly<C>> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => Ok(self.scale(&l.inv()?)),
        }
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Poly<C>) -> Poly<C> {
        let mut acc = Poly::zero(&self.proto);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// `x^deg * self(1/x)` for the given nominal degree.
    pub fn reverse(&self, deg: usize) -> Poly<C> {
        let mut c: Vec<C> = (0..=deg).map(|k| self.coeff(k)).collect();
        c.reverse();
        Poly::new(c, &self.proto)
    }
}

impl Poly<BigRational> {
    pub fn from_ints(c: &[i64]) -> Poly<BigRational> {
        let zero = BigRational::zero();
        Poly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect(), &zero)
    }

    /// Monic gcd over Q.
    pub fn gcd(&self, other: &Poly<BigRational>) -> Poly<BigRational> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic().expect("rational leading coefficient")
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` the monic gcd.
    pub fn ext_gcd(
        &self,
        other: &Poly<BigRational>,
    ) -> (Poly<BigRational>, Poly<BigRational>, Poly<BigRational>) {
        let zero = BigRational::zero();
        let one = Poly::constant(BigRational::from_integer(1.into()));
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero(&zero));
        let (mut t0, mut t1) = (Poly::zero(&zero), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = r0.leading().map(|l| Coeff::inv(l).unwrap()).unwrap_or_else(|| zero.one_like());
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(&self, other: &Poly<BigRational>) -> Poly<BigRational> {
        let g = self.gcd(other);
        let (q, _) = self.mul(other).divrem(&g).expect("gcd is nonzero");
        q.monic().unwrap()
    }

    pub fn to_padic(&self, p: u32, cap: u32) -> Poly<Padic> {
        let proto = Padic::zero(p, cap);
        self.map(&proto, |c| Padic::from_rational(p, cap, c))
    }

    /// Reduction mod p; `None` if a coefficient is not p-integral.
    pub fn reduce_mod_p(&self, p: u32) -> Option<fp::FpPoly> {
        let pb = BigInt::from(p);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let den = c.denom() % &pb;
            if den.is_zero() {
                return None;
            }
            let num = (c.numer() % &pb + &pb) % &pb;
            let v = (num * fp::inv_mod(den.to_u64().unwrap(), p as u64)) % &pb;
            out.push(((v + &pb) % &pb).to_u64().unwrap());
        }
        Some(fp::trim(out))
    }
}

impl Poly<Padic> {
    /// Evaluates at an element of a Q_p-algebra.
    pub fn eval_in<A: PadicAlgebra>(&self, x: &A) -> A {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&x.embed(c));
        }
        acc
    }

    /// Coefficients embedded into a Q_p-algebra.
    pub fn embed_in<A: PadicAlgebra>(&self, proto: &A) -> Poly<A> {
        self.map(proto, |c| proto.embed(c))
    }

    /// Reduction mod p; `None` if a coefficient is not integral to that precision.
    pub(crate) fn reduce_mod_p(&self) -> Option<fp::FpPoly> {
        let out: Option<Vec<u64>> = self
            .coeffs
            .iter()
            .map(|c| {
                if c.is_zero() {
                    (c.abs_prec() >= 1).then_some(0)
                } else if c.is_integral() {
                    Some(c.residue().unwrap_or(0) as u64)
                } else {
                    None
                }
            })
            .collect();
        out.map(fp::trim)
    }

    pub(crate) fn from_fp(a: &fp::FpPoly, proto: &Padic) -> Poly<Padic> {
        Poly::new(a.iter().map(|&c| proto.int_like(c as i64)).collect(), proto)
    }
}

impl<C: fmt::Display + Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<C: Coeff + PartialEq> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
