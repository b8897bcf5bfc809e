use std::str::FromStr;

use num_rational::BigRational;
use serde::Deserialize;

use crate::curve::{AntisymDivisor, CurveModel, GeneralDivisor, MumfordDivisor};
use crate::error::{Error, Result};
use crate::heights::WPolicy;
use crate::padic::{BranchSpec, Padic};
use crate::polyseries::Poly;

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Height,
    CupMatrix,
    Psi,
    IntegrateBasis,
    IntegrateMeromorphic,
    FrobeniusMatrix,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Height => "height",
            Command::CupMatrix => "cup-matrix",
            Command::Psi => "psi",
            Command::IntegrateBasis => "integrate-basis",
            Command::IntegrateMeromorphic => "integrate-meromorphic",
            Command::FrobeniusMatrix => "frobenius-matrix",
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum DivisorKind {
    Antisymmetric,
    General,
}

pub type PointSpec = [String; 2];

/// One divisor. Antisymmetric divisors take `points` (each standing for
/// `(P) - (-P)`) or a Mumford pair `a`, `b`; general divisors take
/// `positive`/`negative` point lists or the pairs `positive_a`, ... .
/// Polynomials are coefficient lists, constant term first.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorSpec {
    pub kind: Option<DivisorKind>,
    pub points: Option<Vec<PointSpec>>,
    pub a: Option<Vec<String>>,
    pub b: Option<Vec<String>>,
    pub positive: Option<Vec<PointSpec>>,
    pub negative: Option<Vec<PointSpec>>,
    pub positive_a: Option<Vec<String>>,
    pub positive_b: Option<Vec<String>>,
    pub negative_a: Option<Vec<String>>,
    pub negative_b: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    /// Coefficients of `f`, constant term first; `f` monic of odd degree.
    pub f: Vec<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WSpec {
    /// `unit-root` (default), `g1-omega1` or `explicit`.
    pub policy: Option<String>,
    /// Explicit `2g x g` matrix, row by row.
    pub matrix: Option<Vec<Vec<String>>>,
    /// Power of Frobenius used for the printed W-coordinates of `psi`.
    pub exponent: Option<u32>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AwaySpec {
    /// A p-adic literal in the printed format.
    pub value: Option<String>,
    /// `[c, q]` pairs meaning `sum c log(q)`.
    pub logs: Option<Vec<[String; 2]>>,
}

/// A job description, read from TOML.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    pub curve: CurveSpec,
    pub prime: u32,
    pub precision: u32,
    #[serde(default)]
    pub divisors: Vec<DivisorSpec>,
    /// Endpoints for the integration commands.
    #[serde(default)]
    pub points: Vec<PointSpec>,
    #[serde(default)]
    pub w: WSpec,
    /// Value of `log p` for the branch of the logarithm, rational or p-adic; default 0.
    pub log_p: Option<String>,
    pub away: Option<AwaySpec>,
    /// Extra working digits.
    pub guard: Option<u32>,
}

pub const MAX_PRECISION: u32 = 40;

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Validation(format!("not an exact rational: {s:?}")))
}

pub fn parse_poly(cs: &[String]) -> Result<Poly<BigRational>> {
    let coeffs = cs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs, &BigRational::from_integer(0.into())))
}

fn parse_points(pts: &[PointSpec]) -> Result<Vec<(BigRational, BigRational)>> {
    pts.iter().map(|[x, y]| Ok((parse_rational(x)?, parse_rational(y)?))).collect()
}

/// A rational or a literal in the printed p-adic format.
pub fn parse_padic(curve: &CurveModel, s: &str) -> Result<Padic> {
    if s.contains("O(") {
        Padic::parse(curve.prime(), curve.cap(), s)
    } else {
        Ok(curve.rational(&parse_rational(s)?))
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl JobSpec {
    pub fn from_toml(text: &str) -> Result<JobSpec> {
        let job: JobSpec = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        job.validate()?;
        Ok(job)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.prime) || self.prime == 2 {
            return Err(Error::Validation(format!("p = {} must be an odd prime", self.prime)));
        }
        if self.precision == 0 || self.precision > MAX_PRECISION {
            return Err(Error::Validation(format!("precision must be in 1..={MAX_PRECISION}")));
        }
        self.coefficients()?;
        let need = |k: usize, what: &str| -> Result<()> {
            if self.divisors.len() != k {
                return Err(Error::Validation(format!(
                    "command {} needs {k} {what}, got {}",
                    self.command.name(),
                    self.divisors.len()
                )));
            }
            Ok(())
        };
        let need_points = |k: usize| -> Result<()> {
            if self.points.len() != k {
                return Err(Error::Validation(format!(
                    "command {} needs {k} endpoints in `points`",
                    self.command.name()
                )));
            }
            Ok(())
        };
        match self.command {
            Command::Height => {
                need(2, "divisors")?;
                if self.divisors[0].kind() != self.divisors[1].kind() {
                    return Err(Error::Validation("both divisors must be of the same kind".into()));
                }
            }
            Command::Psi => need(1, "antisymmetric divisor")?,
            Command::IntegrateMeromorphic => {
                need(1, "antisymmetric divisor")?;
                need_points(2)?;
            }
            Command::IntegrateBasis => need_points(2)?,
            Command::CupMatrix | Command::FrobeniusMatrix => {}
        }
        Ok(())
    }

    pub fn coefficients(&self) -> Result<Vec<BigRational>> {
        self.curve.f.iter().map(|c| parse_rational(c)).collect()
    }

    pub fn w_policy(&self) -> Result<WPolicy> {
        match self.w.policy.as_deref().unwrap_or("unit-root") {
            "unit-root" => Ok(WPolicy::UnitRoot),
            "g1-omega1" => Ok(WPolicy::G1Omega1),
            "explicit" => {
                let m = self.w.matrix.as_ref().ok_or_else(|| Error::Validation("explicit W needs `matrix`".into()))?;
                let rows = m
                    .iter()
                    .map(|r| r.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok(WPolicy::Explicit(rows))
            }
            other => Err(Error::Validation(format!("unknown W policy {other:?}"))),
        }
    }

    pub fn branch(&self, curve: &CurveModel) -> Result<BranchSpec> {
        match &self.log_p {
            None => Ok(BranchSpec::iwasawa()),
            Some(s) => Ok(BranchSpec::with_log_p(parse_padic(curve, s)?)),
        }
    }

    pub fn endpoints(&self) -> Result<Vec<(BigRational, BigRational)>> {
        parse_points(&self.points)
    }
}

impl DivisorSpec {
    pub fn kind(&self) -> DivisorKind {
        self.kind.unwrap_or(DivisorKind::Antisymmetric)
    }

    fn side(
        curve: &CurveModel,
        pts: &Option<Vec<PointSpec>>,
        a: &Option<Vec<String>>,
        b: &Option<Vec<String>>,
        what: &str,
    ) -> Result<MumfordDivisor> {
        match (pts, a, b) {
            (Some(p), None, None) => MumfordDivisor::from_points(curve, &parse_points(p)?),
            (None, Some(a), Some(b)) => {
                let m = MumfordDivisor::new(parse_poly(a)?, parse_poly(b)?)?;
                m.validate(curve)?;
                Ok(m)
            }
            _ => Err(Error::Validation(format!("{what}: give either points or a Mumford pair a, b"))),
        }
    }

    pub fn antisymmetric(&self, curve: &CurveModel) -> Result<AntisymDivisor> {
        if self.kind() != DivisorKind::Antisymmetric {
            return Err(Error::Validation("expected an antisymmetric divisor".into()));
        }
        let m = Self::side(curve, &self.points, &self.a, &self.b, "antisymmetric divisor")?;
        Ok(AntisymDivisor { a: m.a, b: m.b })
    }

    pub fn general(&self, curve: &CurveModel) -> Result<GeneralDivisor> {
        if self.kind() != DivisorKind::General {
            return Err(Error::Validation("expected a general divisor".into()));
        }
        let pos = Self::side(curve, &self.positive, &self.positive_a, &self.positive_b, "positive part")?;
        let neg = Self::side(curve, &self.negative, &self.negative_a, &self.negative_b, "negative part")?;
        GeneralDivisor::new(pos, neg)
    }
}
