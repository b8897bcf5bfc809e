use num_rational::BigRational;
use num_traits::Zero;

use super::{CurveModel, Point};
use crate::error::{Error, Result};
use crate::padic::Padic;
use crate::polyseries::{crt_combine, zp_roots, Poly};

/// A point with multiplicity; in an antisymmetric divisor it stands for
/// `mult * ((P) - (-P))`.
#[derive(Clone, Debug)]
pub struct PointPair {
    pub point: Point,
    pub mult: i64,
}

/// `(a, b)`: the divisor of the points `(x, b(x))` over the roots of `a`,
/// minus `deg(a)` times the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct MumfordDivisor {
    pub a: Poly<BigRational>,
    pub b: Poly<BigRational>,
}

/// `[a, b]`: the antisymmetric divisor `D - w*D` for `D = (a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntisymDivisor {
    pub a: Poly<BigRational>,
    pub b: Poly<BigRational>,
}

/// `(a1, b1) - (c1, d1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralDivisor {
    pub pos: MumfordDivisor,
    pub neg: MumfordDivisor,
}

fn rzero() -> BigRational {
    BigRational::zero()
}

/// Yun's square-free decomposition: `a = prod_i a_i^i`, returned as `(a_i, i)`.
fn squarefree_parts(a: &Poly<BigRational>) -> Vec<(Poly<BigRational>, i64)> {
    let mut out = Vec::new();
    let da = a.derivative();
    let mut c = a.gcd(&da);
    let mut w = a.divrem(&c).expect("gcd divides").0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.divrem(&y).expect("gcd divides").0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic().unwrap(), i));
        }
        w = y;
        c = c.divrem(&w).expect("gcd divides").0;
        i += 1;
    }
    out
}

impl MumfordDivisor {
    /// From distinct-x rational points `(x_i, y_i)`, by Lagrange interpolation.
    pub fn from_points(curve: &CurveModel, pts: &[(BigRational, BigRational)]) -> Result<MumfordDivisor> {
        for (i, (x, y)) in pts.iter().enumerate() {
            curve.point(x, y)?;
            if pts[..i].iter().any(|(x2, _)| x2 == x) {
                return Err(Error::Validation(format!(
                    "repeated x-coordinate {x}: give such divisors as Mumford pairs"
                )));
            }
        }
        let one = Poly::constant(BigRational::from_integer(1.into()));
        let mut a = one.clone();
        for (x, _) in pts {
            a = a.mul(&Poly::linear(x));
        }
        let mut b = Poly::zero(&rzero());
        for (i, (xi, yi)) in pts.iter().enumerate() {
            let mut basis = Poly::constant(yi.clone());
            for (j, (xj, _)) in pts.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Poly::linear(xj)).scale(&(BigRational::from_integer(1.into()) / (xi - xj)));
                }
            }
            b = b.add(&basis);
        }
        Ok(MumfordDivisor { a, b })
    }

    pub fn new(a: Poly<BigRational>, b: Poly<BigRational>) -> Result<MumfordDivisor> {
        if a.degree().is_none() {
            return Err(Error::Validation("Mumford polynomial a must be nonzero".into()));
        }
        let a = a.monic()?;
        let b = b.rem(&a)?;
        Ok(MumfordDivisor { a, b })
    }

    /// Checks that `a | f - b^2`, i.e. the points lie on the curve.
    pub fn validate(&self, curve: &CurveModel) -> Result<()> {
        let r = curve.f_rational().sub(&self.b.mul(&self.b)).rem(&self.a)?;
        if !r.is_zero() {
            return Err(Error::Validation("Mumford pair (a, b) does not satisfy a | f - b^2".into()));
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.a.degree().unwrap_or(0)
    }

    /// The points of the divisor over Q_p, with multiplicities.
    pub fn points(&self, curve: &CurveModel) -> Result<Vec<PointPair>> {
        points_of(curve, &self.a, &self.b)
    }
}

fn points_of(curve: &CurveModel, a: &Poly<BigRational>, b: &Poly<BigRational>) -> Result<Vec<PointPair>> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_parts(a) {
        if part.reduce_mod_p(curve.prime()).is_none() {
            return Err(Error::Unsupported(
                "divisor has points in the residue disc at infinity".into(),
            ));
        }
        let roots = zp_roots(&part.to_padic(curve.prime(), curve.cap()))?;
        if roots.len() != part.degree().unwrap() {
            return Err(Error::Unsupported(
                "divisor points must all be defined over Q_p".into(),
            ));
        }
        let bp = b.to_padic(curve.prime(), curve.cap());
        for x in roots {
            let y = bp.eval(&x);
            let pt = Point::new(x, y);
            if !curve.is_on_curve(&pt) {
                return Err(Error::Validation("b does not interpolate points of the curve".into()));
            }
            out.push(PointPair { point: pt, mult });
        }
    }
    Ok(out)
}

impl AntisymDivisor {
    pub fn new(a: Poly<BigRational>, b: Poly<BigRational>) -> Result<AntisymDivisor> {
        let m = MumfordDivisor::new(a, b)?;
        Ok(AntisymDivisor { a: m.a, b: m.b })
    }

    /// `sum_i ((P_i) - (-P_i))` for rational points with distinct x.
    pub fn from_points(curve: &CurveModel, pts: &[(BigRational, BigRational)]) -> Result<AntisymDivisor> {
        let m = MumfordDivisor::from_points(curve, pts)?;
        Ok(AntisymDivisor { a: m.a, b: m.b })
    }

    /// Reduced standard representation: `a` prime to `f`.
    pub fn is_reduced_standard(&self, curve: &CurveModel) -> bool {
        self.a.gcd(curve.f_rational()).degree() == Some(0)
    }

    /// The point pairs `m ((P) - (-P))` making up the divisor.
    pub fn pairs(&self, curve: &CurveModel) -> Result<Vec<PointPair>> {
        if !self.is_reduced_standard(curve) {
            return Err(Error::Validation("antisymmetric divisor meets a Weierstrass point".into()));
        }
        points_of(curve, &self.a, &self.b)
    }

    /// Splits off the points reducing to Weierstrass points: returns
    /// `(a_w, b mod a_w, a_nw, b mod a_nw)` over Q_p.
    pub fn wnw_split(&self, curve: &CurveModel) -> Result<[Poly<Padic>; 4]> {
        let a = self.a.to_padic(curve.prime(), curve.cap());
        let b = self.b.to_padic(curve.prime(), curve.cap());
        let (aw, anw) = crate::polyseries::hensel_factor(&a, curve.f())?;
        let bw = if aw.degree() == Some(0) { Poly::zero(b.proto()) } else { b.rem(&aw)? };
        let bnw = if anw.degree() == Some(0) { Poly::zero(b.proto()) } else { b.rem(&anw)? };
        Ok([aw, bw, anw, bnw])
    }
}

impl GeneralDivisor {
    pub fn new(pos: MumfordDivisor, neg: MumfordDivisor) -> Result<GeneralDivisor> {
        if pos.degree() != neg.degree() {
            return Err(Error::Validation("general divisor must have degree zero".into()));
        }
        Ok(GeneralDivisor { pos, neg })
    }

    /// `D = D+/2 + D-/2`: returns `(a1, c1)` with `D+ = div(a1/c1)`, and `D-` as `[a1 c1, e]`.
    pub fn decompose_pm(&self) -> Result<((Poly<BigRational>, Poly<BigRational>), AntisymDivisor)> {
        let e = crt_combine(&self.pos.a, &self.pos.b, &self.neg.a, &self.neg.b)?;
        let minus = AntisymDivisor { a: self.pos.a.mul(&self.neg.a), b: e };
        Ok(((self.pos.a.clone(), self.neg.a.clone()), minus))
    }
}
