use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::{ExactPart, FrobData};
use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::padic::Padic;
use crate::polyseries::Poly;

/// Environment variable naming a directory for cached Frobenius data.
pub const CACHE_ENV: &str = "CGHEIGHT_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CachedPadic {
    cap: u32,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct CachedFrob {
    f: Vec<String>,
    p: u32,
    n_work: u32,
    terms: usize,
    matrix: Vec<Vec<CachedPadic>>,
    exact: Vec<BTreeMap<i64, Vec<CachedPadic>>>,
}

fn enc(x: &Padic) -> CachedPadic {
    CachedPadic { cap: x.cap(), value: x.to_string() }
}

fn dec(p: u32, c: &CachedPadic) -> Result<Padic> {
    Padic::parse(p, c.cap, &c.value)
}

fn cache_path(dir: &str, curve: &CurveModel, n_work: u32) -> PathBuf {
    let f: Vec<String> = curve.f_rational().coeffs().iter().map(|c| c.to_string()).collect();
    let key = f.join("_").replace('-', "m").replace('/', "o");
    PathBuf::from(dir).join(format!("frob_p{}_n{}_f{}.json", curve.prime(), n_work, key))
}

/// Loads cached data for `(f, p, n_work)` from the directory in [`CACHE_ENV`], if any.
pub fn load_cached(curve: &CurveModel, n_work: u32) -> Result<Option<FrobData>> {
    let dir = match std::env::var(CACHE_ENV) {
        Ok(d) if !d.is_empty() => d,
        _ => return Ok(None),
    };
    load_from(&dir, curve, n_work)
}

pub(crate) fn load_from(dir: &str, curve: &CurveModel, n_work: u32) -> Result<Option<FrobData>> {
    let path = cache_path(dir, curve, n_work);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(_) => return Ok(None),
    };
    let c: CachedFrob =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let p = c.p;
    let rows = c
        .matrix
        .iter()
        .map(|r| r.iter().map(|x| dec(p, x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut exact = Vec::new();
    for e in &c.exact {
        let mut part = ExactPart::default();
        for (s, coeffs) in e {
            let cs = coeffs.iter().map(|x| dec(p, x)).collect::<Result<Vec<_>>>()?;
            let proto = cs.first().cloned().unwrap_or_else(|| curve.zero());
            part.terms.insert(*s, Poly::new(cs, &proto.zero_like()));
        }
        exact.push(part);
    }
    Ok(Some(FrobData {
        p,
        g: curve.genus(),
        n_work: c.n_work,
        matrix: Matrix::from_rows(rows),
        exact,
        terms: c.terms,
    }))
}

/// Writes the data to the cache directory, if one is configured.
pub fn store_cached(curve: &CurveModel, fd: &FrobData) -> Result<()> {
    match std::env::var(CACHE_ENV) {
        Ok(d) if !d.is_empty() => store_to(&d, curve, fd),
        _ => Ok(()),
    }
}

pub(crate) fn store_to(dir: &str, curve: &CurveModel, fd: &FrobData) -> Result<()> {
    let c = CachedFrob {
        f: curve.f_rational().coeffs().iter().map(|c| c.to_string()).collect(),
        p: fd.p,
        n_work: fd.n_work,
        terms: fd.terms,
        matrix: fd.matrix.to_rows().iter().map(|r| r.iter().map(enc).collect()).collect(),
        exact: fd
            .exact
            .iter()
            .map(|e| e.terms.iter().map(|(s, poly)| (*s, poly.coeffs().iter().map(enc).collect())).collect())
            .collect(),
    };
    fs::create_dir_all(dir)?;
    let text = serde_json::to_string_pretty(&c).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(cache_path(dir, curve, fd.n_work), text)?;
    Ok(())
}
