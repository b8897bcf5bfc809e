use std::collections::BTreeMap;

use crate::error::Result;
use crate::padic::{Coeff, Padic, QuotientRing, RingElement};
use crate::polyseries::Poly;

/// A function `sum_s P_s(x) y^(-s)` over odd `s` (with `s = -1` for multiples of `y`).
#[derive(Clone, Debug, Default)]
pub struct ExactPart {
    pub terms: BTreeMap<i64, Poly<Padic>>,
}

impl ExactPart {
    pub fn add_term(&mut self, s: i64, p: &Poly<Padic>) {
        let e = self.terms.entry(s).or_insert_with(|| Poly::zero(p.proto()));
        *e = e.add(p);
    }

    /// Value at `(x, y)` with `y` a unit.
    pub fn eval(&self, x: &Padic, y: &Padic) -> Result<Padic> {
        let yinv = y.inv()?;
        let mut acc = x.zero_like();
        for (s, poly) in &self.terms {
            let ypow = if *s >= 0 { yinv.pow(*s)? } else { y.pow(-*s)? };
            acc = acc.add(&poly.eval(x).mul(&ypow));
        }
        Ok(acc)
    }
}

/// Reduction of forms `sum_s A_s(x) y^(-s) dx` (odd `s >= 1`) to the basis
/// `x^i dx/(2y)`, `i < 2g`, modulo exact forms.
pub struct Reducer {
    f: Poly<Padic>,
    df: Poly<Padic>,
    /// `1/f' mod f`.
    df_inv: Poly<Padic>,
    g: usize,
}

impl Reducer {
    pub fn new(f: &Poly<Padic>) -> Result<Reducer> {
        let ring = QuotientRing::new(f.monic()?.coeffs().to_vec())?;
        let df = f.derivative();
        let u = RingElement::generator(&ring);
        let inv = df.eval_in(&u).inv()?;
        let df_inv = Poly::new(inv.coeffs().to_vec(), f.proto());
        let g = (f.degree().unwrap() - 1) / 2;
        Ok(Reducer { f: f.clone(), df, df_inv, g })
    }

    /// Returns the coefficient vector `c` and exact part `h` with
    /// `form = sum_j c_j x^j dx/(2y) + dh`.
    pub fn reduce(&self, form: &BTreeMap<i64, Poly<Padic>>) -> Result<(Vec<Padic>, ExactPart)> {
        let proto = self.f.proto().clone();
        let mut exact = ExactPart::default();
        let mut work: BTreeMap<i64, Poly<Padic>> = form.clone();
        let smax = work.keys().next_back().copied().unwrap_or(1);
        let mut s = smax;
        while s >= 3 {
            if let Some(a) = work.remove(&s) {
                if !a.is_zero() {
                    let (u, v) = self.split(&a)?;
                    let k = proto.int_like(s - 2);
                    let two_over = proto.int_like(2).div(&k)?;
                    let next = u.add(&v.derivative().scale(&two_over));
                    let e = work.entry(s - 2).or_insert_with(|| Poly::zero(&proto));
                    *e = e.add(&next);
                    exact.add_term(s - 2, &v.scale(&two_over.neg()));
                }
            }
            s -= 2;
        }
        let mut a = work.remove(&1).unwrap_or_else(|| Poly::zero(&proto));
        let two_g = 2 * self.g;
        let half = proto.int_like(2).inv()?;
        while let Some(d) = a.degree() {
            if d < two_g {
                break;
            }
            let m = d - two_g;
            // d(x^m y) = (m x^(m-1) f + x^m f'/2) dx/y, leading coefficient m + (2g+1)/2
            let mut dterm = self.df.shift(m).scale(&half);
            if m > 0 {
                dterm = dterm.add(&self.f.shift(m - 1).scale(&proto.int_like(m as i64)));
            }
            let lead = dterm.leading().unwrap().clone();
            let c = a.leading().unwrap().div(&lead)?;
            let before = a.coeffs().len();
            a = a.sub(&dterm.scale(&c));
            // force the cancelled leading term out even when it is only zero to precision
            if a.coeffs().len() >= before {
                a = Poly::new(a.coeffs()[..before - 1].to_vec(), &proto);
            }
            exact.add_term(-1, &Poly::monomial(m, &proto).scale(&c));
        }
        let coeffs = (0..two_g).map(|j| a.coeff(j).mul_int(2)).collect();
        Ok((coeffs, exact))
    }

    /// `a = u f + v f'` with `deg v < deg f`.
    fn split(&self, a: &Poly<Padic>) -> Result<(Poly<Padic>, Poly<Padic>)> {
        let r = a.rem(&self.f)?;
        let v = r.mul(&self.df_inv).rem(&self.f)?;
        let rest = a.sub(&v.mul(&self.df));
        let (u, _) = rest.divrem(&self.f)?;
        Ok((u, v))
    }
}
