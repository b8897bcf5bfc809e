//! Fixtures and oracles shared by the integration tests.
#![allow(dead_code)]

use cgheight::curve::{CurveModel, Disc, Point};
use cgheight::heights::{HeightContext, WPolicy};
use cgheight::padic::{BranchSpec, Padic};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;

pub const GENUS2: [i64; 6] = [0, 40, 18, -23, 0, 1];
pub const GENUS1: [i64; 4] = [0, -5, 0, 1];

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ctx(f: &[i64], p: u32, n: u32, guard: u32) -> HeightContext {
    let f = f.iter().map(|&c| rat(c)).collect();
    HeightContext::with_guard(f, p, n, guard, &WPolicy::UnitRoot, BranchSpec::iwasawa()).unwrap()
}

pub fn padic(p: u32, s: &str) -> Padic {
    Padic::parse(p, 60, s).unwrap()
}

/// `got` carries at least the digits of `want` and they match.
pub fn digit_exact(got: &Padic, want: &str) -> Result<(), String> {
    let w = padic(got.prime(), want);
    if got.abs_prec() < w.abs_prec() || !got.sub(&w).is_zero() {
        return Err(format!("got {got}, want {want}"));
    }
    Ok(())
}

/// Number of leading digits on which `a` and `b` agree.
pub fn agreement(a: &Padic, b: &Padic) -> i64 {
    let d = a.sub(b);
    if d.is_zero() {
        d.abs_prec()
    } else {
        d.valuation().unwrap()
    }
}

/// A point with integral x-coordinate `x0 + p k` for random `k`, in the disc
/// `x0 mod p`, if `f(x)` is a square.
pub fn point_near(curve: &CurveModel, x0: i64, rng: &mut StdRng) -> Option<Point> {
    let p = curve.prime() as i64;
    let x = curve.int(x0 + p * rng.gen_range(-20..=20));
    curve.lift_x(&x, None).ok()
}

/// A random point in a non-Weierstrass disc with x-residue not in `avoid`.
pub fn random_nw_point(curve: &CurveModel, avoid: &[u32], rng: &mut StdRng) -> Point {
    let p = curve.prime();
    for _ in 0..10_000 {
        let x0 = rng.gen_range(0..p);
        if avoid.contains(&x0) {
            continue;
        }
        if let Some(pt) = point_near(curve, x0 as i64, rng) {
            if matches!(curve.disc(&pt), Disc::NonWeierstrass(..)) {
                return if rng.gen_bool(0.5) { pt } else { pt.involution() };
            }
        }
    }
    panic!("no non-Weierstrass point avoiding x-residues {avoid:?}");
}

/// A point in the Weierstrass disc of the root `r` of `f`, which must be
/// simple with `f'(r)` a unit: `x = r + p^2 k`.
pub fn random_w_point(curve: &CurveModel, r: i64, rng: &mut StdRng) -> Point {
    let p = curve.prime() as i64;
    loop {
        let k = rng.gen_range(1..p);
        if let Ok(pt) = curve.lift_x(&curve.int(r + p * p * k), None) {
            return pt;
        }
    }
}

pub fn x_residue(pt: &Point) -> u32 {
    pt.x.residue().expect("integral point")
}

pub fn floor_log(p: u32, n: u64) -> i64 {
    let mut k = 0;
    let mut q = p as u64;
    while q <= n {
        k += 1;
        q *= p as u64;
    }
    k
}
