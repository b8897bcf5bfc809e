use super::fp;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::padic::Padic;

/// Lifts the factorization `a = g * h` mod p, where `g_bar` is a monic factor
/// of `a mod p` coprime to its cofactor. `a` must be monic with integral
/// coefficients. Returns monic `(g, h)` with `a = g * h` to the coefficient cap.
pub fn hensel_split(a: &Poly<Padic>, g_bar: &fp::FpPoly) -> Result<(Poly<Padic>, Poly<Padic>)> {
    let proto = a.proto().clone();
    let p = proto.prime() as u64;
    let a_bar = a
        .reduce_mod_p()
        .ok_or_else(|| Error::Domain(format!("{a} is not integral")))?;
    let (h_bar, r) = fp::divrem(&a_bar, g_bar, p);
    if !r.is_empty() {
        return Err(Error::Domain("Hensel target does not divide the reduction".into()));
    }
    let (gcd, s_bar, t_bar) = fp::ext_gcd(g_bar, &h_bar, p);
    if gcd != vec![1] {
        return Err(Error::Domain("Hensel factors are not coprime mod p".into()));
    }
    let s = Poly::from_fp(&s_bar, &proto);
    let t = Poly::from_fp(&t_bar, &proto);
    let mut g = Poly::from_fp(g_bar, &proto);
    let mut h = Poly::from_fp(&fp::monic(&h_bar, p), &proto);
    let dg = g.degree().unwrap_or(0);
    let dh = h.degree().unwrap_or(0);
    // Linear lifting: one digit per round.
    for _ in 0..=proto.cap() + 1 {
        let e = a.sub(&g.mul(&h));
        if e.is_zero() {
            break;
        }
        let dg_corr = if dg == 0 { Poly::zero(&proto) } else { t.mul(&e).rem(&g)? };
        let dh_corr = if dh == 0 { Poly::zero(&proto) } else { s.mul(&e).rem(&h)? };
        g = g.add(&dg_corr);
        h = h.add(&dh_corr);
    }
    Ok((g, h))
}

/// Splits a monic `a` as `(a_w, a_nw)`, where `a_w` collects the roots of `a`
/// that reduce to roots of `f` mod p and `a_nw` the rest.
pub fn hensel_factor(a: &Poly<Padic>, f: &Poly<Padic>) -> Result<(Poly<Padic>, Poly<Padic>)> {
    let p = a.proto().prime() as u64;
    let a_bar = a.reduce_mod_p().ok_or_else(|| Error::Domain(format!("{a} is not integral")))?;
    let f_bar = f.reduce_mod_p().ok_or_else(|| Error::Domain(format!("{f} is not integral")))?;
    let mut rest = a_bar;
    let mut w = vec![1u64];
    loop {
        let g = fp::gcd(&rest, &f_bar, p);
        if g.len() <= 1 {
            break;
        }
        w = fp::mul(&w, &g, p);
        rest = fp::divrem(&rest, &g, p).0;
    }
    hensel_split(a, &w)
}

/// Newton refinement of an approximate simple root.
pub fn newton_root(a: &Poly<Padic>, x0: &Padic) -> Result<Padic> {
    let da = a.derivative();
    let mut x = x0.clone();
    for _ in 0..(2 * a.proto().cap() + 8) {
        let fx = a.eval(&x);
        if fx.is_zero() {
            break;
        }
        let d = da.eval(&x);
        if d.is_zero() {
            return Err(Error::Domain("Newton step at a multiple root".into()));
        }
        let nx = x.sub(&fx.div(&d)?);
        if nx == x {
            break;
        }
        x = nx;
    }
    Ok(x)
}

/// The roots of `a` in Z_p, each to the coefficient cap. Roots must be simple.
pub fn zp_roots(a: &Poly<Padic>) -> Result<Vec<Padic>> {
    let proto = a.proto().clone();
    let p = proto.prime();
    let mut out = Vec::new();
    roots_rec(a, &proto, &Padic::zero(p, proto.cap()), 0, &mut out)?;
    let cap = proto.cap();
    out.iter().map(|r| newton_root(a, &r.with_cap(cap))).collect()
}

fn normalize_integral(a: &Poly<Padic>) -> Poly<Padic> {
    let v = a
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(Padic::val_bound)
        .min()
        .unwrap_or(0);
    a.map(a.proto(), |c| c.shift(-v))
}

fn roots_rec(
    a: &Poly<Padic>,
    proto: &Padic,
    prefix: &Padic,
    depth: u32,
    out: &mut Vec<Padic>,
) -> Result<()> {
    let p = proto.prime();
    if depth > proto.cap() {
        return Err(Error::PrecisionExhausted(
            "root isolation exceeded the working precision (repeated root?)".into(),
        ));
    }
    let a = normalize_integral(a);
    let a_bar = match a.reduce_mod_p() {
        Some(b) => b,
        None => return Ok(()),
    };
    if a_bar.len() <= 1 {
        return Ok(());
    }
    let da_bar = fp::trim(
        a_bar.iter().enumerate().skip(1).map(|(k, c)| (k as u64 * c) % p as u64).collect(),
    );
    for r in fp::roots(&a_bar, p as u64) {
        let scale = Padic::one(p, proto.cap()).shift(depth as i64);
        let x = prefix.add(&proto.int_like(r as i64).mul(&scale));
        if fp::eval(&da_bar, r, p as u64) != 0 {
            out.push(x);
            continue;
        }
        // x = r + p*z
        let sub = Poly::new(vec![proto.int_like(r as i64), proto.int_like(p as i64)], proto);
        let b = a.compose(&sub);
        roots_rec(&b, proto, &x, depth + 1, out)?;
    }
    Ok(())
}
