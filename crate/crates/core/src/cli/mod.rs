//! Batch front end: a TOML job in, a deterministic report out.

mod job;

pub use job::{
    parse_padic, parse_poly, parse_rational, AwaySpec, Command, CurveSpec, DivisorKind, DivisorSpec, JobSpec, WSpec,
    MAX_PRECISION,
};

use serde::Serialize;

use crate::coleman::{basis_integrals, integrate_meromorphic};
use crate::curve::{CurveModel, ThirdKindForm};
use crate::error::{Error, Result};
use crate::frobenius::{frobenius_matrix, load_cached, store_cached, FrobData, SubspaceW};
use crate::heights::{cup_matrix, HeightBreakdown, HeightContext, WPolicy, GUARD};
use crate::padic::Padic;

/// One labeled output value. Level 0 is always shown; levels 1 and 2 need
/// the matching verbosity.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Entry {
    pub label: String,
    pub value: String,
    #[serde(skip)]
    pub level: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: &'static str,
    pub prime: u32,
    pub entries: Vec<Entry>,
}

#[derive(Serialize)]
struct Structured<'a> {
    command: &'a str,
    prime: u32,
    entries: Vec<&'a Entry>,
}

impl Report {
    fn new(command: Command, prime: u32) -> Report {
        Report { command: command.name(), prime, entries: Vec::new() }
    }

    fn push(&mut self, level: u8, label: impl Into<String>, value: impl ToString) {
        self.entries.push(Entry { label: label.into(), value: value.to_string(), level });
    }

    pub fn value(&self, label: &str) -> Option<&str> {
        self.entries.iter().find(|e| e.label == label).map(|e| e.value.as_str())
    }

    fn visible(&self, verbosity: u8) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(move |e| e.level <= verbosity)
    }

    /// `label: value` lines.
    pub fn render_text(&self, verbosity: u8) -> String {
        let mut out = format!("command: {}\np: {}\n", self.command, self.prime);
        for e in self.visible(verbosity) {
            out.push_str(&format!("{}: {}\n", e.label, e.value));
        }
        out
    }

    /// A JSON object with a flat `entries` list of `{label, value}`.
    pub fn render_structured(&self, verbosity: u8) -> String {
        let s = Structured { command: self.command, prime: self.prime, entries: self.visible(verbosity).collect() };
        serde_json::to_string_pretty(&s).expect("report serializes") + "\n"
    }
}

fn vector(v: &[Padic]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn frob_data(curve: &CurveModel, n_work: u32) -> Result<FrobData> {
    if let Some(fd) = load_cached(curve, n_work)? {
        return Ok(fd);
    }
    let fd = frobenius_matrix(curve, n_work)?;
    store_cached(curve, &fd)?;
    Ok(fd)
}

fn curve_for(job: &JobSpec) -> Result<(CurveModel, u32)> {
    let n_work = job.precision + job.guard.unwrap_or(GUARD);
    let curve = CurveModel::new(job.coefficients()?, job.prime, 2 * n_work + 4)?;
    Ok((curve, n_work))
}

/// Builds the height context, reusing cached Frobenius data when
/// `CGHEIGHT_CACHE_DIR` is set.
pub fn context(job: &JobSpec) -> Result<HeightContext> {
    let (curve, n_work) = curve_for(job)?;
    let fd = frob_data(&curve, n_work)?;
    let branch = job.branch(&curve)?;
    HeightContext::from_parts(curve, fd, job.precision, &job.w_policy()?, branch)
}

fn require(value: &Padic, n: u32, what: &str) -> Result<()> {
    if value.abs_prec() < n as i64 {
        return Err(Error::PrecisionExhausted(format!(
            "{what} is known to O(p^{}) only, {n} digits requested; raise `guard`",
            value.abs_prec()
        )));
    }
    Ok(())
}

fn away_value(job: &JobSpec, ctx: &HeightContext) -> Result<Option<Padic>> {
    let Some(away) = &job.away else { return Ok(None) };
    let mut acc = ctx.curve.zero();
    if let Some(v) = &away.value {
        acc = acc.add(&parse_padic(&ctx.curve, v)?);
    }
    for [c, q] in away.logs.iter().flatten() {
        let c = ctx.curve.rational(&parse_rational(c)?);
        let l = ctx.curve.rational(&parse_rational(q)?).log(&ctx.branch)?;
        acc = acc.add(&c.mul(&l));
    }
    Ok(Some(acc))
}

fn breakdown_entries(report: &mut Report, prefix: &str, h: &HeightBreakdown) {
    for (l, v) in &h.trace {
        report.push(1, format!("{prefix}{l}"), v);
    }
    report.push(2, format!("{prefix}h(D1, D2^w)"), &h.weierstrass);
    report.push(2, format!("{prefix}h(D1^w, D2^nw)"), &h.cross);
    report.push(2, format!("{prefix}h(D1^nw, D2^nw)"), &h.non_weierstrass);
}

fn run_height(job: &JobSpec, report: &mut Report) -> Result<()> {
    let ctx = context(job)?;
    let n = job.precision;
    let local = match job.divisors[0].kind() {
        DivisorKind::Antisymmetric => {
            let d1 = job.divisors[0].antisymmetric(&ctx.curve)?;
            let d2 = job.divisors[1].antisymmetric(&ctx.curve)?;
            let h = ctx.height_antisym(&d1, &d2)?;
            require(&h.total.value, n, "local height")?;
            report.push(0, "local height", &h.total);
            breakdown_entries(report, "", &h);
            h.total.value
        }
        DivisorKind::General => {
            let d1 = job.divisors[0].general(&ctx.curve)?;
            let d2 = job.divisors[1].general(&ctx.curve)?;
            let h = ctx.height_general(&d1, &d2)?;
            require(&h.total.value, n, "local height")?;
            report.push(0, "local height", &h.total);
            report.push(1, "1/4 h(D1+, D2+)", h.plus_quarter.truncate_abs(n as i64));
            report.push(1, "1/4 h(D1-, D2-)", &h.minus_quarter);
            for (k, part) in h.minus_parts.iter().enumerate() {
                report.push(1, format!("minus part {k}"), &part.total);
                breakdown_entries(report, &format!("minus part {k}: "), part);
            }
            h.total.value
        }
    };
    report.push(0, "precision", local.abs_prec());
    if let Some(away) = away_value(job, &ctx)? {
        report.push(0, "away-from-p contribution", away.truncate_abs(n as i64));
        report.push(0, "global height", local.add(&away).truncate_abs(n as i64));
    }
    Ok(())
}

fn run_psi(job: &JobSpec, report: &mut Report) -> Result<()> {
    let ctx = context(job)?;
    let d = job.divisors[0].antisymmetric(&ctx.curve)?;
    let pairs: Vec<_> = d.pairs(&ctx.curve)?.into_iter().map(|pp| (pp.point, pp.mult)).collect();
    let nu = ThirdKindForm::for_pairs(&pairs);
    let psi = ctx.psi_third(&nu)?;
    report.push(0, "psi", vector(&psi));
    let coords = match job.w.exponent {
        Some(k) if ctx.policy == WPolicy::UnitRoot => {
            let w = SubspaceW::unit_root(&ctx.fd, k)?;
            let (mut h, wc) = w.split(&psi)?;
            h.truncate(ctx.genus());
            h.extend(wc);
            h
        }
        _ => ctx.w_coordinates(&psi)?,
    };
    report.push(0, "psi in basis w_0..w_(g-1), W", vector(&coords));
    report.push(1, "eta", vector(&ctx.eta(&psi)?));
    Ok(())
}

fn run_integrate_basis(job: &JobSpec, report: &mut Report) -> Result<()> {
    let (curve, n_work) = curve_for(job)?;
    let fd = frob_data(&curve, n_work)?;
    let ends = job.endpoints()?;
    let from = curve.point(&ends[0].0, &ends[0].1)?;
    let to = curve.point(&ends[1].0, &ends[1].1)?;
    let ints = basis_integrals(&curve, &fd, &from, &to)?;
    for (i, r) in ints.iter().enumerate() {
        report.push(0, format!("int w_{i}"), r.value.truncate_abs(job.precision as i64));
        report.push(0, format!("precision w_{i}"), r.precision.min(job.precision as i64));
    }
    for l in ints.first().map(|r| r.log.clone()).unwrap_or_default() {
        report.push(2, "note", l);
    }
    Ok(())
}

fn run_integrate_meromorphic(job: &JobSpec, report: &mut Report) -> Result<()> {
    let ctx = context(job)?;
    let d = job.divisors[0].antisymmetric(&ctx.curve)?;
    let pairs: Vec<_> = d.pairs(&ctx.curve)?.into_iter().map(|pp| (pp.point, pp.mult)).collect();
    let nu = ThirdKindForm::for_pairs(&pairs);
    let psi_nu = ctx.psi_third(&nu)?;
    let ends = job.endpoints()?;
    let s = ctx.curve.point(&ends[0].0, &ends[0].1)?;
    let r = ctx.curve.point(&ends[1].0, &ends[1].1)?;
    let psi_of = |b: &ThirdKindForm| ctx.psi_third(b);
    let v = integrate_meromorphic(&ctx.curve, &ctx.fd, &ctx.cup_padic, &nu, &psi_nu, &s, &r, &psi_of)?;
    let value = v.value.truncate_abs(job.precision as i64);
    require(&value, job.precision, "integral")?;
    report.push(0, "integral", &value);
    report.push(0, "precision", value.abs_prec());
    report.push(1, "psi(nu)", vector(&psi_nu));
    for l in v.log {
        report.push(2, "note", l);
    }
    Ok(())
}

fn run_frobenius(job: &JobSpec, report: &mut Report) -> Result<()> {
    let (curve, n_work) = curve_for(job)?;
    let fd = frob_data(&curve, n_work)?;
    let n = job.precision as i64;
    for (i, row) in fd.matrix.to_rows().iter().enumerate() {
        let row: Vec<Padic> = row.iter().map(|x| x.truncate_abs(n)).collect();
        report.push(0, format!("M row {i}"), vector(&row));
    }
    let cp: Vec<Padic> = fd.charpoly()?.iter().map(|x| x.truncate_abs(n)).collect();
    report.push(1, "charpoly (constant term first)", vector(&cp));
    Ok(())
}

fn run_cup(job: &JobSpec, report: &mut Report) -> Result<()> {
    let (curve, _) = curve_for(job)?;
    for (i, row) in cup_matrix(&curve).to_rows().iter().enumerate() {
        let row: Vec<String> = row.iter().map(|q| q.to_string()).collect();
        report.push(0, format!("N row {i}"), format!("[{}]", row.join(", ")));
    }
    Ok(())
}

/// Executes a validated job.
pub fn run(job: &JobSpec) -> Result<Report> {
    job.validate()?;
    let mut report = Report::new(job.command, job.prime);
    report.push(0, "requested precision", job.precision);
    match job.command {
        Command::Height => run_height(job, &mut report)?,
        Command::Psi => run_psi(job, &mut report)?,
        Command::IntegrateBasis => run_integrate_basis(job, &mut report)?,
        Command::IntegrateMeromorphic => run_integrate_meromorphic(job, &mut report)?,
        Command::FrobeniusMatrix => run_frobenius(job, &mut report)?,
        Command::CupMatrix => run_cup(job, &mut report)?,
    }
    Ok(report)
}
