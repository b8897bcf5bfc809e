//! Capped-precision arithmetic in Q_p and in quotient rings Q_p[u]/(m(u)).

mod ring;
mod scalar;

pub use ring::{QuotientRing, RingElement};
pub use scalar::{floor_log, BranchSpec, Padic, EXACT};
pub(crate) use scalar::ilog;
#[cfg(test)]
pub(crate) use scalar::log1p_series;

use num_rational::BigRational;

use crate::error::Result;

/// Coefficient arithmetic shared by polynomials, series and matrices.
///
/// Constructors take `&self` so that context (prime, cap, modulus) is
/// inherited from an existing element.
pub trait Coeff: Clone + std::fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn rational_like(&self, q: &BigRational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Zero to the known precision.
    fn is_zero(&self) -> bool;
    /// Zero with no precision loss attached.
    fn is_exact_zero(&self) -> bool;

    /// Ordering key for pivot selection; smaller is a better pivot.
    fn pivot_key(&self) -> i64 {
        if self.is_zero() {
            i64::MAX
        } else {
            0
        }
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn mul_int(&self, n: i64) -> Self {
        self.mul(&self.int_like(n))
    }

    fn div_int(&self, n: i64) -> Result<Self> {
        self.div(&self.int_like(n))
    }
}

/// Coefficient rings that are Q_p-algebras with a trace down to Q_p.
pub trait PadicAlgebra: Coeff {
    fn embed(&self, x: &Padic) -> Self;
    fn scale(&self, x: &Padic) -> Self;
    fn trace(&self) -> Padic;
}

impl Coeff for Padic {
    fn zero_like(&self) -> Self {
        Padic::zero_like(self)
    }
    fn one_like(&self) -> Self {
        Padic::one_like(self)
    }
    fn int_like(&self, n: i64) -> Self {
        Padic::int_like(self, n)
    }
    fn rational_like(&self, q: &BigRational) -> Self {
        Padic::rational_like(self, q)
    }
    fn add(&self, other: &Self) -> Self {
        Padic::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Padic::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Padic::mul(self, other)
    }
    fn neg(&self) -> Self {
        Padic::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        Padic::inv(self)
    }
    fn is_zero(&self) -> bool {
        Padic::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        Padic::is_exact_zero(self)
    }
    fn pivot_key(&self) -> i64 {
        if Padic::is_zero(self) {
            i64::MAX
        } else {
            self.val_bound()
        }
    }
}

impl PadicAlgebra for Padic {
    fn embed(&self, x: &Padic) -> Self {
        x.clone()
    }
    fn scale(&self, x: &Padic) -> Self {
        Padic::mul(self, x)
    }
    fn trace(&self) -> Padic {
        self.clone()
    }
}

impl Coeff for BigRational {
    fn zero_like(&self) -> Self {
        num_traits::Zero::zero()
    }
    fn one_like(&self) -> Self {
        num_traits::One::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn rational_like(&self, q: &BigRational) -> Self {
        q.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if num_traits::Zero::is_zero(self) {
            return Err(crate::error::Error::NotInvertible("rational zero".into()));
        }
        Ok(num_traits::Inv::inv(self.clone()))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}
