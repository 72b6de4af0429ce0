//! Lower bounds on `S(X|B) + S(Z|B)` and the closed-form curves of the two
//! one-parameter families.

use crate::error::{Error, Result};
use crate::infoquant::{
    conditional_entropy, delta, h2, holevo, marginal_entropy, measured_conditional_entropy,
    mutual_information, CorrelationReport,
};
use crate::matops::Subsystem;
use crate::measure::{q_mu, q_prime, ranked_pauli_axis, PauliAxis, ProjectiveObservable};
use crate::states::DensityMatrix;

/// Every bound and its ingredients for one `(ρ, X, Z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundsReport {
    pub q_mu: f64,
    pub q_prime: f64,
    /// `S(A|B)`.
    pub s_cond: f64,
    pub i_ab: f64,
    pub i_xb: f64,
    pub i_zb: f64,
    pub delta: f64,
    pub bound_mu: f64,
    pub bound_mu_mixed: f64,
    pub bound_berta: f64,
    pub bound_coles_piani: f64,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub bound_pati: Option<f64>,
    pub bound_ours: f64,
    /// `S(X|B) + S(Z|B)`.
    pub actual: f64,
    /// `max{0, D_A − J_A}`, present when a correlation report was supplied.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub pati_correction: Option<f64>,
}

/// `S(X|B) + S(Z|B)`.
pub fn actual_uncertainty(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<f64> {
    Ok(measured_conditional_entropy(rho, x)? + measured_conditional_entropy(rho, z)?)
}

/// `q_MU`, the memoryless bound for pure `A`.
pub fn bound_maassen_uffink(x: &ProjectiveObservable, z: &ProjectiveObservable) -> Result<f64> {
    q_mu(x, z)
}

/// `q_MU + S(ρ^A)`.
pub fn bound_mu_mixed(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<f64> {
    Ok(q_mu(x, z)? + marginal_entropy(rho, Subsystem::A))
}

/// `q_MU + S(A|B)`.
pub fn bound_berta(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<f64> {
    Ok(q_mu(x, z)? + conditional_entropy(rho))
}

/// `q' + S(A|B)`.
pub fn bound_coles_piani(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<f64> {
    Ok(q_prime(x, z)? + conditional_entropy(rho))
}

fn pati_correction(corr: &CorrelationReport) -> f64 {
    (corr.discord - corr.classical_correlation).max(0.0)
}

/// Berta's bound plus `max{0, D_A − J_A}`. `corr` must describe `rho`.
pub fn bound_pati(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
    corr: &CorrelationReport,
) -> Result<f64> {
    Ok(bound_berta(rho, x, z)? + pati_correction(corr))
}

/// Berta's bound plus `max{0, δ}`.
pub fn bound_ours(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<f64> {
    Ok(bound_berta(rho, x, z)? + delta(rho, x, z)?.max(0.0))
}

/// Computes every field of [`BoundsReport`] with shared intermediate values.
pub fn bounds_report(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
    corr: Option<&CorrelationReport>,
) -> Result<BoundsReport> {
    let q = q_mu(x, z)?;
    let qp = q_prime(x, z)?;
    let s_cond = conditional_entropy(rho);
    let s_a = marginal_entropy(rho, Subsystem::A);
    let i_ab = mutual_information(rho);
    let i_xb = holevo(rho, x)?;
    let i_zb = holevo(rho, z)?;
    let delta = i_ab - i_xb - i_zb;
    let berta = q + s_cond;
    let correction = corr.map(pati_correction);
    Ok(BoundsReport {
        q_mu: q,
        q_prime: qp,
        s_cond,
        i_ab,
        i_xb,
        i_zb,
        delta,
        bound_mu: q,
        bound_mu_mixed: q + s_a,
        bound_berta: berta,
        bound_coles_piani: qp + s_cond,
        bound_pati: correction.map(|c| berta + c),
        bound_ours: berta + delta.max(0.0),
        actual: actual_uncertainty(rho, x, z)?,
        pati_correction: correction,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ClosedFormFamily {
    /// `r = (1−2p, −p, −p)`.
    BellDiagonalSpecial,
    /// `p |Ψ⁺⟩⟨Ψ⁺| + (1−p) |11⟩⟨11|`.
    XStateSpecial,
}

/// Which complementary pair the curves refer to.
///
/// For the Bell-diagonal family the axes are ranked by `|r_i|`: `X` is the
/// axis with the largest correlation, `Y` the second and `Z` the smallest.
/// For the X-state family they are the literal Pauli axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum ObservablePair {
    XY,
    XZ,
}

/// Observables the closed forms assume for `rho` of `family`.
pub fn reference_pair(
    family: ClosedFormFamily,
    rho: &DensityMatrix,
    pair: ObservablePair,
) -> Result<(ProjectiveObservable, ProjectiveObservable)> {
    let (x, z) = match family {
        ClosedFormFamily::BellDiagonalSpecial => {
            let second = match pair {
                ObservablePair::XY => 2,
                ObservablePair::XZ => 3,
            };
            (ranked_pauli_axis(rho, 1)?, ranked_pauli_axis(rho, second)?)
        }
        ClosedFormFamily::XStateSpecial => match pair {
            ObservablePair::XY => (PauliAxis::X, PauliAxis::Y),
            ObservablePair::XZ => (PauliAxis::X, PauliAxis::Z),
        },
    };
    Ok((
        ProjectiveObservable::pauli(x),
        ProjectiveObservable::pauli(z),
    ))
}

/// Closed-form values for one `(family, p, pair)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClosedFormCurves {
    pub s_cond: f64,
    pub i_ab: f64,
    pub i_xb: f64,
    pub i_zb: f64,
    pub classical_correlation: f64,
    pub delta: f64,
    pub berta: f64,
    pub pati: f64,
    pub ours: f64,
}

/// `x log₂ y` with `0 · log 0 = 0`.
#[inline]
fn xlog2(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * libm::log2(y)
    }
}

pub fn closed_form_curves(
    family: ClosedFormFamily,
    p: f64,
    pair: ObservablePair,
) -> Result<ClosedFormCurves> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
        });
    }
    Ok(match family {
        ClosedFormFamily::BellDiagonalSpecial => bell_diagonal_special_curves(p, pair),
        ClosedFormFamily::XStateSpecial => xstate_curves(p, pair),
    })
}

fn bell_diagonal_special_curves(p: f64, pair: ObservablePair) -> ClosedFormCurves {
    let along = 1.0 - h2(p);
    let across = 1.0 - h2((1.0 + p) / 2.0);
    let (i_max, i_min) = (along.max(across), along.min(across));

    let berta = -xlog2(p, p) - xlog2(1.0 - p, (1.0 - p) / 2.0);
    let i_ab = 2.0 + xlog2(p, p) + xlog2(1.0 - p, (1.0 - p) / 2.0);
    let pati = berta + (i_ab - 2.0 * i_max).max(0.0);
    let (i_zb, ours) = match pair {
        // 2 − max{·} − (1 − h((1+p)/2))
        ObservablePair::XY => (across, 2.0 - i_max - across),
        ObservablePair::XZ => (i_min, 2.0 - i_max - i_min),
    };
    ClosedFormCurves {
        s_cond: berta - 1.0,
        i_ab,
        i_xb: i_max,
        i_zb,
        classical_correlation: i_max,
        delta: i_ab - i_max - i_zb,
        berta,
        pati,
        ours,
    }
}

fn xstate_curves(p: f64, pair: ObservablePair) -> ClosedFormCurves {
    let half = p / 2.0;
    let s_cond =
        -xlog2(p, p) - xlog2(1.0 - p, 1.0 - p) + xlog2(half, half) + xlog2(1.0 - half, 1.0 - half);
    let i_ab = xlog2(p, p) + xlog2(1.0 - p, 1.0 - p)
        - 2.0 * xlog2(half, half)
        - 2.0 * xlog2(1.0 - half, 1.0 - half);
    let s = libm::sqrt(1.0 - 2.0 * p + 2.0 * p * p);
    let (lo, hi) = (0.5 * (1.0 - s), 0.5 * (1.0 + s));
    let marginal = -xlog2(half, half) - xlog2(1.0 - half, 1.0 - half);
    let i_x = marginal + xlog2(lo, lo) + xlog2(hi, hi);
    let i_z = marginal + xlog2(half, p / (2.0 - p)) + xlog2(1.0 - p, 2.0 * (1.0 - p) / (2.0 - p));
    // the state is invariant under diag(1, e^{ia}) ⊗ diag(1, e^{ia}), so I(Y;B) = I(X;B)
    let i_zb = match pair {
        ObservablePair::XY => i_x,
        ObservablePair::XZ => i_z,
    };
    let berta = 1.0 + s_cond;
    let delta = i_ab - i_x - i_zb;
    ClosedFormCurves {
        s_cond,
        i_ab,
        i_xb: i_x,
        i_zb,
        classical_correlation: i_x,
        delta,
        berta,
        pati: berta + (i_ab - 2.0 * i_x).max(0.0),
        ours: berta + delta.max(0.0),
    }
}
