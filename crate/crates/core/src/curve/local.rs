use super::{CurveModel, Point};
use crate::error::{Error, Result};
use crate::padic::{Coeff, Padic};
use crate::polyseries::{Poly, Series};

/// A local parametrization `t -> (x(t), y(t))` of a neighbourhood of a point.
#[derive(Clone, Debug)]
pub struct LocalCoords<C> {
    pub x: Series<C>,
    pub y: Series<C>,
}

impl<C: Coeff> LocalCoords<C> {
    /// The basis form `x^i dx / (2y)` as a series in `t` (coefficient of `dt`).
    pub fn basis_form(&self, i: usize, terms: usize) -> Result<Series<C>> {
        let proto = self.x.proto().clone();
        let half = proto.int_like(2).inv()?;
        let xi = self.x.pow(i);
        let num = xi.mul(&self.x.derivative()).scale(&half);
        num.div(&self.y, terms)
    }

    /// `g(x) dx / y` for a polynomial `g`.
    pub fn poly_form(&self, g: &Poly<C>, terms: usize) -> Result<Series<C>> {
        let num = g.eval_series(&self.x).mul(&self.x.derivative());
        num.div(&self.y, terms)
    }
}

impl CurveModel {
    /// Coordinates `x = x(P) + t`, `y = sqrt(f(x))` with `y(0) = y(P)`, to `O(t^order)`.
    pub fn local_coords(&self, pt: &Point, order: usize) -> Result<LocalCoords<Padic>> {
        if self.disc(pt).is_weierstrass() {
            return Err(Error::Domain("local coordinates x - x(P) need a non-Weierstrass point".into()));
        }
        let proto = self.zero();
        let x = Series::exact(0, vec![pt.x.clone(), proto.one_like()], &proto);
        let fx = self.f.eval_series(&x);
        let y = fx.sqrt(&pt.y, order)?;
        Ok(LocalCoords { x: x.truncate(order as i64), y })
    }

    /// The linear interpolation `x = (1 - t) x(P) + t x(Q)`, with `y(0) = y(P)`.
    pub fn local_coords_interp(&self, p: &Point, q: &Point, order: usize) -> Result<LocalCoords<Padic>> {
        if self.disc(p) != self.disc(q) {
            return Err(Error::DifferentDiscs(format!("{p:?} and {q:?}")));
        }
        if self.disc(p).is_weierstrass() {
            return Err(Error::Domain("interpolation inside a Weierstrass disc".into()));
        }
        let proto = self.zero();
        let x = Series::exact(0, vec![p.x.clone(), q.x.sub(&p.x)], &proto);
        let y = self.f.eval_series(&x).sqrt(&p.y, order)?;
        Ok(LocalCoords { x: x.truncate(order as i64), y })
    }

    /// Coordinates at a point in a Weierstrass disc, `y = t` and
    /// `f(x(t)) = t^2`, with `x(0)` the root of `f` in the disc.
    pub fn local_coords_weierstrass_at(&self, pt: &Point, order: usize) -> Result<(Padic, LocalCoords<Padic>)> {
        let r = match self.disc(pt) {
            super::Disc::Weierstrass(r) => r,
            d => return Err(Error::Domain(format!("point in disc {d:?} is not Weierstrass"))),
        };
        let root = crate::polyseries::newton_root(&self.f, &self.int(r as i64))?;
        Ok((root.clone(), local_coords_weierstrass(&self.f, &root, order)?))
    }
}

/// `y = t`, `x(t)` with `f(x(t)) = t^2` and `x(0) = a`, to `O(t^order)`.
pub fn local_coords_weierstrass<C: Coeff>(f: &Poly<C>, a: &C, order: usize) -> Result<LocalCoords<C>> {
    let proto = a.zero_like();
    let df = f.derivative();
    let c = df.eval(a);
    let cinv = c.inv().map_err(|_| Error::Domain("f'(a) is not invertible".into()))?;
    if !f.eval(a).is_zero() {
        return Err(Error::Domain("not a root of f".into()));
    }
    let t2 = Series::exact(2, vec![proto.one_like()], &proto);
    let mut x = Series::exact(0, vec![a.clone()], &proto).add(&t2.scale(&cinv));
    let order = order as i64;
    let mut n: i64 = 4;
    loop {
        n = (2 * n).min(order.max(1));
        let fx = f.eval_series(&x).truncate(n).as_exact();
        let dfx = df.eval_series(&x).truncate(n).as_exact();
        let corr = fx.sub(&t2).div(&dfx, n as usize)?.truncate(n).as_exact();
        x = x.sub(&corr).truncate(n).as_exact();
        if n >= order {
            break;
        }
    }
    // one more step to settle the top terms
    let fx = f.eval_series(&x).truncate(order).as_exact();
    let dfx = df.eval_series(&x).truncate(order).as_exact();
    let corr = fx.sub(&t2).div(&dfx, order as usize)?.truncate(order).as_exact();
    x = x.sub(&corr).truncate(order);
    let y = Series::exact(1, vec![proto.one_like()], &proto);
    Ok(LocalCoords { x, y })
}

/// The chart at infinity: `x = 1/s`, `y = t/s^(g+1)` with `t^2 = s f_rev(s)`,
/// `f_rev(s) = s^(2g+1) f(1/s)`.
#[derive(Clone, Debug)]
pub struct InfinityChart<C> {
    pub s: Series<C>,
    /// `omegas[i]` is the pullback of `x^i dx/(2y)`, i.e. `-s^(g-1-i) s'(t)/(2t)`.
    pub omegas: Vec<Series<C>>,
}

impl<C: Coeff> InfinityChart<C> {
    pub fn new(f: &Poly<C>, order: usize) -> Result<InfinityChart<C>> {
        let proto = f.proto().clone();
        let d = f.degree().unwrap();
        let g = (d - 1) / 2;
        let frev = f.reverse(d);
        let order = order as i64;
        let t2 = Series::exact(2, vec![proto.one_like()], &proto);
        let mut s = t2.clone();
        // each round fixes two more coefficients
        for _ in 0..=(order / 2 + 1) {
            let denom = frev.eval_series(&s).truncate(order).as_exact();
            s = t2.div(&denom, order as usize)?.truncate(order + 2).as_exact();
        }
        let s = s.truncate(order + 2);
        let ds = s.derivative();
        let sinv = s.inv(order as usize + 2)?;
        let half_t_inv = Series::exact(-1, vec![proto.int_like(2).inv()?.neg()], &proto);
        let base = ds.mul(&half_t_inv);
        let mut omegas = Vec::with_capacity(2 * g);
        for i in 0..2 * g {
            let e = g as i64 - 1 - i as i64;
            let sp = if e >= 0 { s.pow(e as usize) } else { sinv.pow((-e) as usize) };
            omegas.push(sp.mul(&base));
        }
        Ok(InfinityChart { s, omegas })
    }
}
