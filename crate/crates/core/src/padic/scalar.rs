use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Absolute precision marker of an exact zero.
pub const EXACT: i64 = i64::MAX / 4;

thread_local! {
    static POWERS: RefCell<HashMap<(u32, u32), BigInt>> = RefCell::new(HashMap::new());
}

/// Runs `f` on `p^k` out of a per-thread cache.
pub(crate) fn with_pow<R>(p: u32, k: u32, f: impl FnOnce(&BigInt) -> R) -> R {
    POWERS.with(|cache| {
        let mut cache = cache.borrow_mut();
        let m = cache
            .entry((p, k))
            .or_insert_with(|| BigInt::from(p).pow(k));
        f(m)
    })
}

pub(crate) fn pow_p(p: u32, k: u32) -> BigInt {
    with_pow(p, k, |m| m.clone())
}

/// Number of times `p` divides the nonzero integer `n`.
pub(crate) fn bigint_valuation(n: &BigInt, p: u32) -> u32 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// An element of Q_p stored as `unit * p^val`, with the unit known modulo
/// `p^rprec`.
///
/// A zero carries only an absolute precision: `O(p^val)`. The exact zero
/// uses `val == EXACT`. Every element remembers the relative precision cap
/// `cap` of the computation it belongs to; constants built from it inherit
/// that cap and no result ever carries more than `cap` relative digits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Padic {
    p: u32,
    cap: u32,
    val: i64,
    unit: BigInt,
    rprec: u32,
}

impl Padic {
    fn normalized(p: u32, cap: u32, val: i64, n: BigInt, rprec: i64) -> Padic {
        if rprec <= 0 {
            return Padic::zero_with_abs(p, cap, val + rprec.max(0));
        }
        let rprec = rprec as u32;
        let mut n = with_pow(p, rprec, |m| n.mod_floor(m));
        if n.is_zero() {
            return Padic::zero_with_abs(p, cap, val + rprec as i64);
        }
        let k = bigint_valuation(&n, p);
        let mut val = val;
        let mut rprec = rprec;
        if k > 0 {
            n = with_pow(p, k, |m| &n / m);
            val += k as i64;
            rprec -= k;
        }
        if rprec > cap {
            rprec = cap;
            n = with_pow(p, cap, |m| n.mod_floor(m));
        }
        Padic { p, cap, val, unit: n, rprec }
    }

    /// The exact zero.
    pub fn zero(p: u32, cap: u32) -> Padic {
        Padic { p, cap, val: EXACT, unit: BigInt::zero(), rprec: 0 }
    }

    /// `O(p^abs)`.
    pub fn zero_with_abs(p: u32, cap: u32, abs: i64) -> Padic {
        Padic { p, cap, val: abs.min(EXACT), unit: BigInt::zero(), rprec: 0 }
    }

    pub fn one(p: u32, cap: u32) -> Padic {
        Padic::from_int(p, cap, 1)
    }

    pub fn from_int(p: u32, cap: u32, n: i64) -> Padic {
        Padic::from_bigint(p, cap, &BigInt::from(n))
    }

    pub fn from_bigint(p: u32, cap: u32, n: &BigInt) -> Padic {
        if n.is_zero() {
            return Padic::zero(p, cap);
        }
        let v = bigint_valuation(n, p);
        let u = with_pow(p, v, |m| n / m);
        Padic::normalized(p, cap, v as i64, u, cap as i64)
    }

    pub fn from_rational(p: u32, cap: u32, q: &BigRational) -> Padic {
        let num = Padic::from_bigint(p, cap, q.numer());
        let den = Padic::from_bigint(p, cap, q.denom());
        num.div(&den).expect("rational denominators are nonzero")
    }

    /// `unit * p^val` with the unit known modulo `p^rprec`.
    pub fn from_parts(p: u32, cap: u32, val: i64, unit: BigInt, rprec: u32) -> Padic {
        Padic::normalized(p, cap, val, unit, rprec as i64)
    }

    /// The integer `n` known modulo `p^abs`.
    pub fn from_int_mod(p: u32, cap: u32, n: &BigInt, abs: i64) -> Padic {
        if abs <= 0 {
            return Padic::zero_with_abs(p, cap, abs);
        }
        Padic::normalized(p, cap, 0, n.clone(), abs)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Same value, constants derived from it use the new cap.
    pub fn with_cap(&self, cap: u32) -> Padic {
        let mut out = self.clone();
        out.cap = cap;
        if out.rprec > cap {
            out.rprec = cap;
            out.unit = with_pow(self.p, cap, |m| out.unit.mod_floor(m));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rprec == 0
    }

    pub fn is_exact_zero(&self) -> bool {
        self.rprec == 0 && self.val >= EXACT
    }

    /// Valuation of a nonzero element, `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// A lower bound for the valuation; for zeros this is the absolute precision.
    pub fn val_bound(&self) -> i64 {
        self.val
    }

    pub fn abs_prec(&self) -> i64 {
        if self.is_zero() {
            self.val
        } else {
            self.val + self.rprec as i64
        }
    }

    pub fn rel_prec(&self) -> u32 {
        self.rprec
    }

    /// The unit part as an integer modulo `p^rel_prec`.
    pub fn unit_int(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    pub fn is_integral(&self) -> bool {
        self.val >= 0
    }

    /// Reduction modulo p of an integral element.
    pub fn residue(&self) -> Option<u32> {
        if self.is_zero() {
            return if self.val >= 1 { Some(0) } else { None };
        }
        match self.val {
            v if v > 0 => Some(0),
            0 => Some((&self.unit % BigInt::from(self.p)).to_u32().unwrap()),
            _ => None,
        }
    }

    /// Representative integer modulo `p^abs_prec` of an integral element.
    pub fn to_bigint(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.val < 0 {
            return None;
        }
        Some(&self.unit * pow_p(self.p, self.val as u32))
    }

    /// Lifts to the rational `unit * p^val` (digits below the precision are zero).
    pub fn to_rational(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let u = BigRational::from_integer(self.unit.clone());
        if self.val >= 0 {
            u * BigRational::from_integer(pow_p(self.p, self.val as u32))
        } else {
            u / BigRational::from_integer(pow_p(self.p, (-self.val) as u32))
        }
    }

    /// Lowers the absolute precision to at most `abs`.
    pub fn truncate_abs(&self, abs: i64) -> Padic {
        if abs >= self.abs_prec() {
            return self.clone();
        }
        if self.is_zero() || abs <= self.val {
            return Padic::zero_with_abs(self.p, self.cap, abs);
        }
        Padic::normalized(self.p, self.cap, self.val, self.unit.clone(), abs - self.val)
    }

    pub fn zero_like(&self) -> Padic {
        Padic::zero(self.p, self.cap)
    }

    pub fn one_like(&self) -> Padic {
        Padic::one(self.p, self.cap)
    }

    pub fn int_like(&self, n: i64) -> Padic {
        Padic::from_int(self.p, self.cap, n)
    }

    pub fn rational_like(&self, q: &BigRational) -> Padic {
        Padic::from_rational(self.p, self.cap, q)
    }

    pub fn add(&self, other: &Padic) -> Padic {
        debug_assert_eq!(self.p, other.p);
        if other.is_exact_zero() {
            return self.clone();
        }
        if self.is_exact_zero() {
            return other.clone();
        }
        let cap = self.cap.max(other.cap);
        let abs = self.abs_prec().min(other.abs_prec());
        let vmin = self.val.min(other.val);
        if abs <= vmin {
            return Padic::zero_with_abs(self.p, cap, abs);
        }
        let r = abs - vmin;
        let mut n = BigInt::zero();
        for x in [self, other] {
            if x.is_zero() {
                continue;
            }
            let shift = x.val - vmin;
            if shift < r {
                n += with_pow(self.p, shift as u32, |m| &x.unit * m);
            }
        }
        Padic::normalized(self.p, cap, vmin, n, r)
    }

    pub fn neg(&self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        let unit = with_pow(self.p, self.rprec, |m| m - &self.unit);
        Padic { unit, ..self.clone() }
    }

    pub fn sub(&self, other: &Padic) -> Padic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Padic) -> Padic {
        let cap = self.cap.max(other.cap);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Padic::zero(self.p, cap);
        }
        if self.is_zero() || other.is_zero() {
            return Padic::zero_with_abs(self.p, cap, self.val + other.val);
        }
        let r = self.rprec.min(other.rprec);
        let unit = &self.unit * &other.unit;
        Padic::normalized(self.p, cap, self.val + other.val, unit, r as i64)
    }

    pub fn inv(&self) -> Result<Padic> {
        if self.is_zero() {
            return Err(Error::NotInvertible(format!("{self} has no inverse")));
        }
        let unit = with_pow(self.p, self.rprec, |m| mod_inverse(&self.unit, m))
            .expect("units are invertible");
        Ok(Padic { p: self.p, cap: self.cap, val: -self.val, unit, rprec: self.rprec })
    }

    pub fn div(&self, other: &Padic) -> Result<Padic> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn mul_int(&self, n: i64) -> Padic {
        self.mul(&self.int_like(n))
    }

    pub fn div_int(&self, n: i64) -> Result<Padic> {
        self.div(&self.int_like(n))
    }

    /// Multiplies by `p^k`, keeping the relative precision.
    pub fn shift(&self, k: i64) -> Padic {
        if self.is_exact_zero() {
            return self.clone();
        }
        Padic { val: self.val + k, ..self.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<Padic> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = self.one_like();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// True when the difference is zero to the known precision.
    pub fn agrees_with(&self, other: &Padic) -> bool {
        self.sub(other).is_zero()
    }

    /// Digits `a_k` for `k` from the valuation up to the absolute precision.
    pub fn digits(&self) -> (i64, Vec<u32>) {
        if self.is_zero() {
            return (self.val, vec![]);
        }
        let pb = BigInt::from(self.p);
        let mut n = self.unit.clone();
        let mut out = Vec::with_capacity(self.rprec as usize);
        for _ in 0..self.rprec {
            let (q, r) = n.div_rem(&pb);
            out.push(r.to_u32().unwrap());
            n = q;
        }
        (self.val, out)
    }

    /// Parses the printed form, e.g. `6*11^-1 + 10 + 7*11 + O(11^5)`.
    pub fn parse(p: u32, cap: u32, s: &str) -> Result<Padic> {
        let bad = |why: &str| Error::Parse(format!("{why} in p-adic literal {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(Padic::zero(p, cap));
        }
        let mut acc = Padic::zero(p, cap);
        let mut abs: Option<i64> = None;
        for term in s.split('+').map(str::trim) {
            if let Some(inner) = term.strip_prefix("O(").and_then(|t| t.strip_suffix(')')) {
                let e = parse_power(inner, p).ok_or_else(|| bad("malformed O-term"))?;
                abs = Some(e);
                continue;
            }
            if abs.is_some() {
                return Err(bad("term after O-term"));
            }
            let (coef, power) = match term.split_once('*') {
                Some((c, pw)) => (c.trim(), Some(pw.trim())),
                None if term.starts_with(&format!("{p}^")) || term == p.to_string() => {
                    ("1", Some(term))
                }
                None => (term, None),
            };
            let c: BigInt = coef.parse().map_err(|_| bad("bad coefficient"))?;
            let e = match power {
                Some(pw) => parse_power(pw, p).ok_or_else(|| bad("bad power"))?,
                None => 0,
            };
            acc = acc.add(&Padic::from_bigint(p, cap, &c).shift(e));
        }
        match abs {
            Some(n) => Ok(acc.truncate_abs(n)),
            None => Ok(acc),
        }
    }
}

fn parse_power(s: &str, p: u32) -> Option<i64> {
    let s = s.trim();
    let ps = p.to_string();
    if s == ps {
        return Some(1);
    }
    let rest = s.strip_prefix(&ps)?.strip_prefix('^')?;
    rest.trim().parse().ok()
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact_zero() {
            return write!(f, "0");
        }
        let p = self.p;
        let (v, digits) = self.digits();
        let mut terms = Vec::new();
        for (i, d) in digits.iter().enumerate() {
            if *d == 0 {
                continue;
            }
            let e = v + i as i64;
            let term = match (e, *d) {
                (0, d) => format!("{d}"),
                (1, 1) => format!("{p}"),
                (1, d) => format!("{d}*{p}"),
                (e, 1) => format!("{p}^{e}"),
                (e, d) => format!("{d}*{p}^{e}"),
            };
            terms.push(term);
        }
        match self.abs_prec() {
            1 => terms.push(format!("O({p})")),
            a => terms.push(format!("O({p}^{a})")),
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Choice of `log(p)`, which pins down the extension of the p-adic logarithm
/// from units to all of Q_p^×. The default is the Iwasawa branch, `log(p) = 0`.
#[derive(Clone, Debug)]
pub struct BranchSpec {
    pub log_p: Option<Padic>,
}

impl BranchSpec {
    pub fn iwasawa() -> BranchSpec {
        BranchSpec { log_p: None }
    }

    pub fn with_log_p(value: Padic) -> BranchSpec {
        BranchSpec { log_p: Some(value) }
    }
}

impl Default for BranchSpec {
    fn default() -> Self {
        BranchSpec::iwasawa()
    }
}

/// `log(1 + z)` for `v(z) >= 1`, summed until the terms drop below the
/// precision of `z`.
pub(crate) fn log1p_series(z: &Padic) -> Padic {
    let target = z.abs_prec().min(z.val_bound() + z.cap() as i64);
    let vz = match z.valuation() {
        Some(v) => v,
        None => return z.zero_like().truncate_abs(target),
    };
    debug_assert!(vz >= 1);
    let mut acc = z.zero_like();
    let mut power = z.clone();
    let mut k: i64 = 1;
    loop {
        // v(z^k / k) >= k*vz - log_p(k)
        let kv = k * vz - ilog(k as u64, z.prime()) as i64;
        if kv >= target {
            break;
        }
        let term = power.div_int(k).expect("k is nonzero");
        acc = if k % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        power = power.mul(z);
        k += 1;
    }
    acc.truncate_abs(target)
}

pub(crate) fn ilog(n: u64, p: u32) -> u32 {
    let mut k = 0;
    let mut m = n;
    while m >= p as u64 {
        m /= p as u64;
        k += 1;
    }
    k
}

impl Padic {
    /// The p-adic logarithm on the chosen branch.
    pub fn log(&self, branch: &BranchSpec) -> Result<Padic> {
        if self.is_zero() {
            return Err(Error::Domain("log of zero".into()));
        }
        let u = Padic { val: 0, ..self.clone() };
        // u^(p-1) is a principal unit
        let w = u.pow(self.p as i64 - 1)?;
        let z = w.sub(&w.one_like());
        let lw = log1p_series(&z);
        let mut out = lw.div_int(self.p as i64 - 1)?;
        if self.val != 0 {
            if let Some(lp) = &branch.log_p {
                out = out.add(&lp.mul_int(self.val));
            }
        }
        Ok(out)
    }

    /// The Teichmüller representative of a unit: the `(p-1)`-st root of unity
    /// congruent to it modulo p, computed to the full cap.
    pub fn teichmuller(&self) -> Result<Padic> {
        if !self.is_unit() {
            return Err(Error::Domain(format!("teichmuller of non-unit {self}")));
        }
        let r = self.residue().unwrap() as i64;
        let mut y = Padic::from_int(self.p, self.cap, r);
        for _ in 0..self.cap {
            y = y.pow(self.p as i64)?;
        }
        Ok(y)
    }

    /// Square root; the first digit of the result is taken in `1..=(p-1)/2`.
    pub fn sqrt(&self) -> Result<Padic> {
        self.sqrt_with_sign(None)
    }

    /// Square root whose leading unit digit is `sign_digit` (or its negative
    /// is, in which case that root is not chosen).
    pub fn sqrt_with_sign(&self, sign_digit: Option<u32>) -> Result<Padic> {
        if self.is_exact_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            let half = self.val.div_euclid(2);
            return Ok(Padic::zero_with_abs(self.p, self.cap, half));
        }
        if self.val % 2 != 0 {
            return Err(Error::NonSquare(format!("{self} has odd valuation")));
        }
        let p = self.p as u64;
        let u0 = (&self.unit % BigInt::from(p)).to_u64().unwrap();
        let mut root = None;
        for r in 1..=(p - 1) / 2 {
            if (r * r) % p == u0 {
                root = Some(r);
                break;
            }
        }
        let mut r = root.ok_or_else(|| {
            Error::NonSquare(format!("{self}: unit part is a non-residue mod {p}"))
        })?;
        if let Some(s) = sign_digit {
            let s = s as u64 % p;
            if s == p - r {
                r = p - r;
            } else if s != r {
                return Err(Error::NonSquare(format!(
                    "{self}: no square root with leading digit {s}"
                )));
            }
        }
        let prec = self.rprec;
        let modulus = pow_p(self.p, prec);
        let mut y = BigInt::from(r);
        let mut k = 1u32;
        while k < prec {
            k = (2 * k).min(prec);
            let m = pow_p(self.p, k);
            let inv2y = mod_inverse(&(BigInt::from(2) * &y), &m).unwrap();
            let fy = (&y * &y - &self.unit).mod_floor(&m);
            y = (&y - fy * inv2y).mod_floor(&m);
        }
        let y = y.mod_floor(&modulus);
        Ok(Padic::normalized(self.p, self.cap, self.val / 2, y, prec as i64))
    }
}

impl std::ops::Add<&Padic> for &Padic {
    type Output = Padic;
    fn add(self, o: &Padic) -> Padic {
        Padic::add(self, o)
    }
}

impl std::ops::Sub<&Padic> for &Padic {
    type Output = Padic;
    fn sub(self, o: &Padic) -> Padic {
        Padic::sub(self, o)
    }
}

impl std::ops::Mul<&Padic> for &Padic {
    type Output = Padic;
    fn mul(self, o: &Padic) -> Padic {
        Padic::mul(self, o)
    }
}

impl std::ops::Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        Padic::neg(self)
    }
}

/// Integer part helper used by precision formulas: `floor(log_p(n))` for `n >= 1`.
pub fn floor_log(p: u32, n: u64) -> u32 {
    ilog(n.max(1), p)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u32, s: &str) -> Padic {
        Padic::parse(p, 20, s).unwrap()
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "6*11^-1 + 10 + 7*11 + 6*11^2 + 3*11^3 + 7*11^4 + O(11^5)",
            "11 + 4*11^3 + O(11^6)",
            "O(11^5)",
            "0",
            "2 + O(13)",
        ] {
            let p = if s.contains("13") { 13 } else { 11 };
            assert_eq!(q(p, s).to_string(), s);
        }
    }

    #[test]
    fn arithmetic_tracks_precision() {
        let a = q(7, "3 + 2*7 + O(7^3)");
        let b = q(7, "1 + O(7^5)");
        assert_eq!(a.add(&b).abs_prec(), 3);
        assert_eq!(a.mul(&b.shift(2)).abs_prec(), 5);
        let c = a.sub(&a);
        assert!(c.is_zero());
        assert_eq!(c.abs_prec(), 3);
        let inv = a.inv().unwrap();
        assert!(inv.mul(&a).agrees_with(&a.one_like()));
    }

    #[test]
    fn rational_embedding() {
        let x = Padic::from_rational(5, 10, &BigRational::new(1.into(), 3.into()));
        assert!(x.mul_int(3).agrees_with(&Padic::one(5, 10)));
        let y = Padic::from_rational(5, 10, &BigRational::new(7.into(), 25.into()));
        assert_eq!(y.valuation(), Some(-2));
        assert_eq!(y.to_rational() * BigRational::from_integer(25.into()) % BigRational::from_integer(pow_p(5, 10)),
            BigRational::from_integer(7.into()));
    }

    /// log(3) in Q_13 from the exact rational series of log(3^12), reduced mod 13^12.
    #[test]
    fn log_matches_rational_series() {
        let p = 13u32;
        let n = 12u32;
        let modulus = pow_p(p, n + 4);
        let z = BigInt::from(3).pow(12) - 1;
        let mut acc = BigRational::zero();
        let mut zk = BigInt::one();
        for k in 1..40i64 {
            zk = (&zk * &z) % &modulus;
            let term = BigRational::new(zk.clone(), BigInt::from(k));
            acc = if k % 2 == 1 { acc + term } else { acc - term };
        }
        let oracle = Padic::from_rational(p, n, &(acc / BigRational::from_integer(12.into())))
            .truncate_abs(n as i64);
        let got = Padic::from_int(p, n, 3).log(&BranchSpec::iwasawa()).unwrap();
        assert!(got.agrees_with(&oracle), "{got} vs {oracle}");
        let l2 = Padic::from_int(p, n, 2).log(&BranchSpec::iwasawa()).unwrap();
        let l6 = Padic::from_int(p, n, 6).log(&BranchSpec::iwasawa()).unwrap();
        assert!(l6.agrees_with(&l2.add(&got)));
    }

    #[test]
    fn log_branch_and_roots_of_unity() {
        let p = 11;
        let t = Padic::from_int(p, 10, 2).teichmuller().unwrap();
        assert!(t.log(&BranchSpec::iwasawa()).unwrap().is_zero());
        assert!(t.pow(10).unwrap().agrees_with(&t.one_like()));
        let lp = Padic::from_int(p, 10, 5);
        let x = Padic::from_int(p, 10, 11);
        assert!(x.log(&BranchSpec::with_log_p(lp.clone())).unwrap().agrees_with(&lp));
        assert!(x.log(&BranchSpec::iwasawa()).unwrap().is_zero());
    }

    #[test]
    fn square_roots() {
        let x = Padic::from_int(11, 12, 24 * 24);
        let r = x.sqrt_with_sign(Some(2)).unwrap();
        assert!(r.agrees_with(&Padic::from_int(11, 12, 24)));
        assert!(Padic::from_int(11, 12, 2).sqrt().is_err());
        let y = Padic::from_int(11, 12, 3 * 121);
        let s = y.sqrt().unwrap();
        assert_eq!(s.valuation(), Some(1));
        assert!(s.mul(&s).agrees_with(&y));
    }
}
