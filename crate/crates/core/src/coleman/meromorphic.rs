use super::{residue_sum, tiny_integral, Differential, IntegralResult, ResidueBreakdown};
use crate::curve::{CurveModel, Point, ThirdKindForm};
use crate::error::{Error, Result};
use crate::frobenius::FrobData;
use crate::heights::cup_product;
use crate::linalg::Matrix;
use crate::padic::Padic;

/// `int_D nu` by reciprocity, with the intermediate quantities.
#[derive(Clone, Debug)]
pub struct MeromorphicIntegral {
    pub value: IntegralResult,
    /// `Psi(alpha) = phi^* Psi(nu) - p Psi(nu)`.
    pub psi_alpha: Vec<Padic>,
    /// `Psi(alpha) cup Psi(beta)`.
    pub cup: Padic,
    pub residues: ResidueBreakdown,
    /// Tiny integrals subtracted in the reciprocity formula, with labels.
    pub tiny: Vec<(String, Padic)>,
}

fn check_targets(curve: &CurveModel, nu: &ThirdKindForm, targets: &[(Point, i64)]) -> Result<()> {
    for (r, _) in targets {
        let d = curve.disc(r);
        if d.is_weierstrass() {
            return Err(Error::Domain(format!("endpoint {r:?} is not in a non-Weierstrass disc")));
        }
        let xr = r.x.residue();
        if nu.terms.iter().any(|(x, _)| x.is_integral() && x.residue() == xr) {
            return Err(Error::SupportOverlap(format!("endpoint {r:?} shares a residue disc with a pole")));
        }
    }
    Ok(())
}

/// `int_D nu` for `D = sum_k m_k ((R_k) - (-R_k))`, with `beta` the form of
/// residue divisor `D`:
/// `(1-p) int_D nu = Psi(alpha) cup Psi(beta) + sum Res(alpha int beta)
///   - sum_k m_k (int_{phi(-R_k)}^{-R_k} nu + int_{R_k}^{phi(R_k)} nu)`.
pub fn integrate_antisym(
    curve: &CurveModel,
    fd: &FrobData,
    cup_matrix: &Matrix<Padic>,
    nu: &ThirdKindForm,
    psi_nu: &[Padic],
    targets: &[(Point, i64)],
    psi_beta: &[Padic],
) -> Result<MeromorphicIntegral> {
    check_targets(curve, nu, targets)?;
    let p = curve.prime() as i64;
    let n = fd.n_work;
    let beta = ThirdKindForm::for_pairs(targets);
    let frob_psi = fd.action().mul_vec(psi_nu);
    let psi_alpha: Vec<Padic> = frob_psi.iter().zip(psi_nu).map(|(a, b)| a.sub(&b.mul_int(p))).collect();
    let cup = cup_product(cup_matrix, &psi_alpha, psi_beta);
    let residues = residue_sum(curve, nu, &Differential::third_kind(&beta), n)?;
    let form = Differential::third_kind(nu);
    let guard = n as i64 + 2;
    let mut tiny = Vec::new();
    let mut tiny_sum = curve.zero();
    for (r, m) in targets {
        let fr = curve.frobenius_point(r)?;
        let t1 = tiny_integral(curve, &form, r, &fr, guard)?.value;
        let nr = r.involution();
        let fnr = curve.frobenius_point(&nr)?;
        let t2 = tiny_integral(curve, &form, &fnr, &nr, guard)?.value;
        tiny_sum = tiny_sum.add(&t1.add(&t2).mul_int(*m));
        tiny.push((format!("int_R^phi(R) nu, R = {r:?}"), t1));
        tiny.push((format!("int_phi(-R)^-R nu, R = {r:?}"), t2));
    }
    let num = cup.add(&residues.total).sub(&tiny_sum);
    let value = num.div(&curve.int(1 - p))?;
    let log = vec![format!(
        "reciprocity: cup to {}, residues to {}, tiny to {guard}",
        cup.abs_prec(),
        residues.total.abs_prec()
    )];
    Ok(MeromorphicIntegral {
        value: IntegralResult::new(value, n as i64, log),
        psi_alpha,
        cup,
        residues,
        tiny,
    })
}

/// `int_S^R nu` for `S, R` in non-Weierstrass discs away from the poles.
///
/// Every third-kind form here is odd under the involution, so
/// `int_S^R nu = (int_{-R}^R nu - int_{-S}^S nu) / 2`; each half is an
/// antisymmetric integral. `psi_of` computes `Psi` of the auxiliary forms.
#[allow(clippy::too_many_arguments)]
pub fn integrate_meromorphic(
    curve: &CurveModel,
    fd: &FrobData,
    cup_matrix: &Matrix<Padic>,
    nu: &ThirdKindForm,
    psi_nu: &[Padic],
    s: &Point,
    r: &Point,
    psi_of: &dyn Fn(&ThirdKindForm) -> Result<Vec<Padic>>,
) -> Result<IntegralResult> {
    let half = |pt: &Point| -> Result<IntegralResult> {
        let targets = [(pt.clone(), 1)];
        let psi_beta = psi_of(&ThirdKindForm::for_pairs(&targets))?;
        Ok(integrate_antisym(curve, fd, cup_matrix, nu, psi_nu, &targets, &psi_beta)?.value)
    };
    let ir = half(r)?;
    let is = half(s)?;
    let value = ir.value.sub(&is.value).div_int(2)?;
    let mut log = ir.log;
    log.extend(is.log);
    Ok(IntegralResult::new(value, ir.precision.min(is.precision), log))
}
