use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::{Coeff, Padic, PadicAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// The ring Q_p[u]/(m(u)) for a monic `m` of degree `d >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRing {
    p: u32,
    cap: u32,
    /// Coefficients of `m`, lowest first; the last one is 1.
    modulus: Vec<Padic>,
    /// `tr(u^k)` for `k < d`.
    power_traces: Vec<Padic>,
}

impl QuotientRing {
    /// `modulus` lists the coefficients of a monic polynomial, lowest first.
    pub fn new(modulus: Vec<Padic>) -> Result<Arc<QuotientRing>> {
        let d = modulus.len().saturating_sub(1);
        if d == 0 {
            return Err(Error::Domain("quotient ring modulus must have degree >= 1".into()));
        }
        if !modulus[d].sub(&modulus[d].one_like()).is_zero() {
            return Err(Error::Domain("quotient ring modulus must be monic".into()));
        }
        let p = modulus[0].prime();
        let cap = modulus.iter().map(Padic::cap).max().unwrap();
        let mut modulus = modulus;
        modulus[d] = Padic::one(p, cap);
        // Newton's identities for the power sums of the roots of m.
        let mut s: Vec<Padic> = vec![Padic::from_int(p, cap, d as i64)];
        for k in 1..d {
            let mut acc = modulus[d - k].mul_int(k as i64);
            for i in 1..k {
                acc = acc.add(&modulus[d - i].mul(&s[k - i]));
            }
            s.push(acc.neg());
        }
        Ok(Arc::new(QuotientRing { p, cap, modulus, power_traces: s }))
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn modulus(&self) -> &[Padic] {
        &self.modulus
    }
}

/// An element of a [`QuotientRing`], as coefficients of `1, u, ..., u^(d-1)`.
#[derive(Clone)]
pub struct RingElement {
    ring: Arc<QuotientRing>,
    coeffs: Vec<Padic>,
}

impl RingElement {
    pub fn new(ring: &Arc<QuotientRing>, mut coeffs: Vec<Padic>) -> RingElement {
        let zero = Padic::zero(ring.p, ring.cap);
        let d = ring.degree();
        if coeffs.len() > d {
            return RingElement::reduce(ring, coeffs);
        }
        coeffs.resize(d, zero);
        RingElement { ring: ring.clone(), coeffs }
    }

    /// The class of the generator `u`.
    pub fn generator(ring: &Arc<QuotientRing>) -> RingElement {
        let mut c = vec![Padic::zero(ring.p, ring.cap), Padic::one(ring.p, ring.cap)];
        if ring.degree() == 1 {
            c = vec![ring.modulus[0].neg()];
        }
        RingElement::new(ring, c)
    }

    pub fn constant(ring: &Arc<QuotientRing>, c: &Padic) -> RingElement {
        RingElement::new(ring, vec![c.clone()])
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    fn reduce(ring: &Arc<QuotientRing>, mut c: Vec<Padic>) -> RingElement {
        let d = ring.degree();
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_exact_zero() {
                continue;
            }
            let base = c.len() - d;
            for (i, m) in ring.modulus[..d].iter().enumerate() {
                c[base + i] = c[base + i].sub(&top.mul(m));
            }
        }
        RingElement::new(ring, c)
    }

    fn check_same(&self, other: &RingElement) {
        debug_assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "ring elements from different rings"
        );
    }

    /// Matrix of multiplication by `self` on the basis `1, u, ..., u^(d-1)`.
    fn mul_matrix(&self) -> Matrix<Padic> {
        let d = self.ring.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        let u = RingElement::generator(&self.ring);
        for _ in 0..d {
            cols.push(cur.coeffs.clone());
            cur = cur.mul(&u);
        }
        Matrix::from_fn(d, d, |i, j| cols[j][i].clone())
    }

    pub fn norm(&self) -> Padic {
        self.mul_matrix().determinant()
    }

    pub fn pow(&self, mut e: u64) -> RingElement {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_exact_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*u"),
                _ => format!("({c})*u^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Coeff for RingElement {
    fn zero_like(&self) -> Self {
        RingElement::new(&self.ring, vec![])
    }
    fn one_like(&self) -> Self {
        RingElement::constant(&self.ring, &Padic::one(self.ring.p, self.ring.cap))
    }
    fn int_like(&self, n: i64) -> Self {
        RingElement::constant(&self.ring, &Padic::from_int(self.ring.p, self.ring.cap, n))
    }
    fn rational_like(&self, q: &BigRational) -> Self {
        RingElement::constant(&self.ring, &Padic::from_rational(self.ring.p, self.ring.cap, q))
    }
    fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        RingElement { ring: self.ring.clone(), coeffs }
    }
    fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        RingElement { ring: self.ring.clone(), coeffs }
    }
    fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let d = self.ring.degree();
        let zero = Padic::zero(self.ring.p, self.ring.cap);
        let mut prod = vec![zero; 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        RingElement::reduce(&self.ring, prod)
    }
    fn neg(&self) -> Self {
        RingElement { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(Padic::neg).collect() }
    }
    fn inv(&self) -> Result<Self> {
        let d = self.ring.degree();
        let mut e = vec![Padic::zero(self.ring.p, self.ring.cap); d];
        e[0] = Padic::one(self.ring.p, self.ring.cap);
        let x = self
            .mul_matrix()
            .solve_vec(&e)
            .map_err(|_| Error::NotInvertible(format!("{self} is a zero divisor")))?;
        Ok(RingElement::new(&self.ring, x))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Padic::is_zero)
    }
    fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(Padic::is_exact_zero)
    }
    fn pivot_key(&self) -> i64 {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(Padic::val_bound)
            .min()
            .unwrap_or(i64::MAX)
    }
    fn mul_int(&self, n: i64) -> Self {
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mul_int(n)).collect(),
        }
    }
    fn div_int(&self, n: i64) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.div_int(n)).collect::<Result<_>>()?;
        Ok(RingElement { ring: self.ring.clone(), coeffs })
    }
}

impl PadicAlgebra for RingElement {
    fn embed(&self, x: &Padic) -> Self {
        RingElement::constant(&self.ring, x)
    }
    fn scale(&self, x: &Padic) -> Self {
        RingElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mul(x)).collect(),
        }
    }
    fn trace(&self) -> Padic {
        let mut acc = Padic::zero(self.ring.p, self.ring.cap);
        for (c, t) in self.coeffs.iter().zip(&self.ring.power_traces) {
            acc = acc.add(&c.mul(t));
        }
        acc
    }
}

impl RingElement {
    fn reduction_key(&self) -> Option<Vec<u32>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_zero() && c.abs_prec() >= 1 { Some(0) } else { c.residue() })
            .collect()
    }

    fn from_residues(ring: &Arc<QuotientRing>, digits: &[u32]) -> RingElement {
        let c = digits.iter().map(|&d| Padic::from_int(ring.p, ring.cap, d as i64)).collect();
        RingElement::new(ring, c)
    }

    fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() && c.abs_prec() >= 0 || c.is_integral())
    }

    /// A square root `r` with `r^2 = self`. The residue of the root is found by
    /// exhaustive search when the residue ring is small, otherwise the search
    /// starts from the square root of the constant term.
    pub fn sqrt(&self) -> Result<RingElement> {
        let d = self.ring.degree();
        let p = self.ring.p as u64;
        let size = p.checked_pow(d as u32).unwrap_or(u64::MAX);
        let target = self
            .reduction_key()
            .filter(|_| self.is_integral())
            .ok_or_else(|| Error::NonSquare(format!("{self} is not integral")))?;
        let mut start = None;
        if size <= 1 << 18 {
            let mut digits = vec![0u32; d];
            for _ in 0..size {
                let r = RingElement::from_residues(&self.ring, &digits);
                if r.reduction_key().map_or(false, |k| k.iter().any(|&x| x != 0))
                    && r.mul(&r).reduction_key().as_deref() == Some(&target[..])
                {
                    start = Some(r);
                    break;
                }
                for digit in digits.iter_mut() {
                    *digit += 1;
                    if *digit < self.ring.p {
                        break;
                    }
                    *digit = 0;
                }
            }
        } else {
            start = self.coeffs[0].sqrt().ok().map(|c| RingElement::constant(&self.ring, &c));
        }
        let mut y = start.ok_or_else(|| Error::NonSquare(format!("{self} has no square root")))?;
        let two_inv = Padic::from_int(self.ring.p, self.ring.cap, 2).inv()?;
        for _ in 0..(2 * self.ring.cap + 8) {
            let next = y.add(&self.div(&y)?).scale(&two_inv);
            if next == y {
                break;
            }
            y = next;
        }
        if !y.mul(&y).sub(self).is_zero() {
            return Err(Error::NonSquare(format!("{self}: square root iteration did not converge")));
        }
        Ok(y)
    }

    /// The logarithm of a unit of the ring (or a power of p times a unit).
    pub fn log(&self, branch: &super::BranchSpec) -> Result<RingElement> {
        let v = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(Padic::val_bound)
            .min()
            .ok_or_else(|| Error::Domain("log of zero".into()))?;
        let unit = self.scale(&Padic::one(self.ring.p, self.ring.cap).shift(-v));
        let norm = unit.norm();
        if !norm.is_unit() {
            return Err(Error::Domain(format!("log of non-unit {self}")));
        }
        // Order of the residue class in the finite unit group.
        let one = unit.one_like();
        let one_key = one.reduction_key();
        let mut k: u64 = 1;
        let mut acc = unit.clone();
        while acc.reduction_key() != one_key {
            acc = acc.mul(&unit);
            k += 1;
            if k > 1 << 22 {
                return Err(Error::Domain("residue order too large".into()));
            }
        }
        let z = acc.sub(&one);
        let mut out = z.zero_like();
        let mut power = z.clone();
        let limit = (self.ring.cap as u64 + 2) * 2 + 8;
        let mut j: u64 = 1;
        while j <= limit + 4 * (ilog_u64(j, self.ring.p) as u64) {
            let term = power.div_int(j as i64)?;
            out = if j % 2 == 1 { out.add(&term) } else { out.sub(&term) };
            power = power.mul(&z);
            j += 1;
        }
        let mut out = out.div_int(k as i64)?;
        if v != 0 {
            if let Some(lp) = &branch.log_p {
                out = out.add(&out.embed(&lp.mul_int(v)));
            }
        }
        Ok(out)
    }
}

fn ilog_u64(n: u64, p: u32) -> u32 {
    super::ilog(n, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::BranchSpec;

    fn ring(p: u32, cap: u32, m: &[i64]) -> Arc<QuotientRing> {
        QuotientRing::new(m.iter().map(|&c| Padic::from_int(p, cap, c)).collect()).unwrap()
    }

    fn elem(r: &Arc<QuotientRing>, c: &[i64]) -> RingElement {
        RingElement::new(r, c.iter().map(|&x| Padic::from_int(r.prime(), r.cap(), x)).collect())
    }

    #[test]
    fn traces() {
        let r = ring(13, 10, &[-5, 0, 1]);
        assert!(elem(&r, &[1]).trace().agrees_with(&Padic::from_int(13, 10, 2)));
        assert!(elem(&r, &[0, 1]).trace().is_zero());
        let mut m = vec![0i64; 12];
        m[0] = 4;
        m[11] = 1;
        let r = ring(11, 10, &m);
        let e = elem(&r, &[7, 2, 0, 1]);
        assert!(e.trace().agrees_with(&Padic::from_int(11, 10, 77)));
    }

    /// For a split modulus the trace is the sum of the evaluations at the roots.
    #[test]
    fn trace_of_split_modulus() {
        // (u-2)(u-3)(u+7) = u^3 - 2u^2 - 29u + 42
        let r = ring(7, 10, &[42, -29, 2, 1]);
        let e = elem(&r, &[5, -1, 3]);
        let direct: i64 = [2i64, 3, -7].iter().map(|u| 5 - u + 3 * u * u).sum();
        assert!(e.trace().agrees_with(&Padic::from_int(7, 10, direct)));
    }

    #[test]
    fn inverse_and_sqrt() {
        let mut m = vec![0i64; 12];
        m[0] = 4;
        m[11] = 1;
        let r = ring(11, 8, &m);
        let e = elem(&r, &[3, 1, 0, 5, 0, 0, 0, 0, 0, 0, 2]);
        let inv = e.inv().unwrap();
        assert!(inv.mul(&e).sub(&e.one_like()).is_zero());

        // 4 + u has norm 11, a non-residue mod 13, so it is not a square.
        let r = ring(13, 8, &[-5, 0, 1]);
        assert!(matches!(elem(&r, &[4, 1]).sqrt(), Err(Error::NonSquare(_))));
        let e = elem(&r, &[9, 4]);
        let s = e.sqrt().unwrap();
        assert!(s.mul(&s).sub(&e).is_zero());
        let e = elem(&r, &[4, 13]);
        let s = e.sqrt().unwrap();
        assert!(s.mul(&s).sub(&e).is_zero());
        assert!(elem(&r, &[1]).inv().unwrap() == elem(&r, &[1]));
    }

    #[test]
    fn ring_log_is_additive() {
        let r = ring(13, 8, &[-5, 0, 1]);
        let a = elem(&r, &[4, 1]);
        let b = elem(&r, &[2, 3]);
        let br = BranchSpec::iwasawa();
        let lhs = a.mul(&b).log(&br).unwrap();
        let rhs = a.log(&br).unwrap().add(&b.log(&br).unwrap());
        assert!(lhs.sub(&rhs).is_zero(), "{lhs} vs {rhs}");
        let c = elem(&r, &[3]);
        let direct = Padic::from_int(13, 8, 3).log(&br).unwrap();
        assert!(c.log(&br).unwrap().sub(&c.embed(&direct)).is_zero());
    }
}
