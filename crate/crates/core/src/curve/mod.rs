//! The odd-degree hyperelliptic model `y^2 = f(x)`, its points, local
//! coordinates, divisors and third-kind forms.

mod divisor;
mod forms;
mod local;

pub use divisor::{AntisymDivisor, GeneralDivisor, MumfordDivisor, PointPair};
pub use forms::ThirdKindForm;
pub use local::{local_coords_weierstrass, InfinityChart, LocalCoords};

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::Padic;
use crate::polyseries::{fp, Poly};

/// `y^2 = f(x)` over Q_p with `f` monic of degree `2g + 1` and good reduction at `p`.
#[derive(Clone, Debug)]
pub struct CurveModel {
    p: u32,
    g: usize,
    cap: u32,
    f_rat: Poly<BigRational>,
    f: Poly<Padic>,
    weierstrass_residues: Vec<u64>,
}

/// Residue disc of a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Disc {
    Infinity,
    /// The disc of the Weierstrass point `(r, 0)` mod p.
    Weierstrass(u64),
    /// The disc of the point `(x, y)` mod p, with `y` nonzero.
    NonWeierstrass(u64, u64),
}

impl Disc {
    pub fn is_weierstrass(&self) -> bool {
        !matches!(self, Disc::NonWeierstrass(..))
    }
}

/// An affine point with coordinates in Q_p.
#[derive(Clone, PartialEq)]
pub struct Point {
    pub x: Padic,
    pub y: Padic,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub fn new(x: Padic, y: Padic) -> Point {
        Point { x, y }
    }

    /// The hyperelliptic involution `(x, y) -> (x, -y)`.
    pub fn involution(&self) -> Point {
        Point { x: self.x.clone(), y: self.y.neg() }
    }
}

impl CurveModel {
    /// Builds the model from the coefficients of `f`, lowest first.
    pub fn new(f: Vec<BigRational>, p: u32, cap: u32) -> Result<CurveModel> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Validation(format!("p = {p} must be an odd prime")));
        }
        let zero = BigRational::zero();
        let f_rat = Poly::new(f, &zero);
        let deg = f_rat.degree().unwrap_or(0);
        if deg < 3 || deg % 2 == 0 {
            return Err(Error::Validation(format!("deg f = {deg} must be odd and at least 3")));
        }
        if !f_rat.leading().unwrap().is_one() {
            return Err(Error::Validation("f must be monic".into()));
        }
        let f_bar = f_rat
            .reduce_mod_p(p)
            .ok_or_else(|| Error::BadReduction(format!("f is not {p}-integral")))?;
        let df_bar = fp::trim(
            f_bar.iter().enumerate().skip(1).map(|(k, c)| (k as u64 * c) % p as u64).collect(),
        );
        if fp::gcd(&f_bar, &df_bar, p as u64).len() > 1 {
            return Err(Error::BadReduction(format!("f has a repeated root mod {p}")));
        }
        let weierstrass_residues = fp::roots(&f_bar, p as u64);
        let f_pad = f_rat.to_padic(p, cap);
        Ok(CurveModel {
            p,
            g: (deg - 1) / 2,
            cap,
            f_rat,
            f: f_pad,
            weierstrass_residues,
        })
    }

    pub fn from_ints(f: &[i64], p: u32, cap: u32) -> Result<CurveModel> {
        CurveModel::new(f.iter().map(|&c| BigRational::from_integer(c.into())).collect(), p, cap)
    }

    /// The same curve with a different coefficient cap.
    pub fn with_cap(&self, cap: u32) -> CurveModel {
        CurveModel::new(self.f_rat.coeffs().to_vec(), self.p, cap).expect("already validated")
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn f(&self) -> &Poly<Padic> {
        &self.f
    }

    pub fn f_rational(&self) -> &Poly<BigRational> {
        &self.f_rat
    }

    /// Roots of `f` mod p.
    pub fn weierstrass_residues(&self) -> &[u64] {
        &self.weierstrass_residues
    }

    pub fn zero(&self) -> Padic {
        Padic::zero(self.p, self.cap)
    }

    pub fn int(&self, n: i64) -> Padic {
        Padic::from_int(self.p, self.cap, n)
    }

    pub fn rational(&self, q: &BigRational) -> Padic {
        Padic::from_rational(self.p, self.cap, q)
    }

    /// A point from rational coordinates, checked to lie on the curve.
    pub fn point(&self, x: &BigRational, y: &BigRational) -> Result<Point> {
        let fx = self.f_rat.eval(x);
        if &fx != &(y * y) {
            return Err(Error::Validation(format!("({x}, {y}) is not on the curve")));
        }
        Ok(Point::new(self.rational(x), self.rational(y)))
    }

    pub fn point_from_ints(&self, x: i64, y: i64) -> Result<Point> {
        self.point(&BigRational::from_integer(x.into()), &BigRational::from_integer(y.into()))
    }

    /// The point with the given x-coordinate whose y-coordinate reduces to
    /// `y_digit` mod p (or its negative when `y_digit` is `None`).
    pub fn lift_x(&self, x: &Padic, y_digit: Option<u32>) -> Result<Point> {
        let y = self.f.eval(x).sqrt_with_sign(y_digit)?;
        Ok(Point::new(x.clone(), y))
    }

    pub fn is_on_curve(&self, pt: &Point) -> bool {
        self.f.eval(&pt.x).sub(&pt.y.mul(&pt.y)).is_zero()
    }

    pub fn disc(&self, pt: &Point) -> Disc {
        if !pt.x.is_integral() {
            return Disc::Infinity;
        }
        let x = pt.x.residue().map_or(0, u64::from);
        let y = if pt.y.valuation().map_or(true, |v| v > 0) {
            0
        } else {
            pt.y.residue().unwrap() as u64
        };
        if y == 0 {
            Disc::Weierstrass(x)
        } else {
            Disc::NonWeierstrass(x, y)
        }
    }

    pub fn same_disc(&self, a: &Point, b: &Point) -> bool {
        self.disc(a) == self.disc(b)
    }

    /// The canonical lift of Frobenius on a non-Weierstrass point:
    /// `(x^p, y')` with `y'^2 = f(x^p)` and `y' = y^p mod p`.
    pub fn frobenius_point(&self, pt: &Point) -> Result<Point> {
        match self.disc(pt) {
            Disc::NonWeierstrass(_, yr) => {
                let x = pt.x.pow(self.p as i64)?;
                let sign = crate::polyseries::fp::pow_mod(yr, self.p as u64, self.p as u64);
                self.lift_x(&x, Some(sign as u32))
            }
            d => Err(Error::Domain(format!("Frobenius lift of a point in disc {d:?}"))),
        }
    }

    /// True when the point is fixed by the Frobenius lift.
    pub fn is_teichmuller(&self, pt: &Point) -> bool {
        pt.x.pow(self.p as i64).map_or(false, |xp| xp.agrees_with(&pt.x))
    }

    /// The Teichmüller point in the disc of `pt`.
    pub fn teichmuller_point(&self, pt: &Point) -> Result<Point> {
        let x = if pt.x.is_unit() { pt.x.teichmuller()? } else { self.zero() };
        let digit = pt.y.residue().ok_or_else(|| Error::Domain("point in a Weierstrass disc".into()))?;
        self.lift_x(&x, Some(digit))
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
