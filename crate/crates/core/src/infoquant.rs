//! Entropic and correlation quantities, in bits.
//!
//! Entropies of matrices are Shannon entropies of their eigenvalues clipped to
//! `[0, 1]`, with `0·log 0 = 0`.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Invariant, Result};
use crate::matops::{herm_eigenvalues, ComplexMatrix, Subsystem};
use crate::measure::{
    observable_from_bloch, outcome_ensemble, post_measurement_state, BlochDirection,
    MeasurementEnsemble, PauliAxis, ProjectiveObservable,
};
use crate::states::{validate, DensityMatrix};

/// `−p log₂ p`, zero at `p ≤ 0`.
#[inline]
pub(crate) fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * libm::log2(p)
    }
}

/// Entropy of already-trusted probabilities; negatives count as zero.
pub(crate) fn entropy_of(probs: impl IntoIterator<Item = f64>) -> f64 {
    probs.into_iter().map(|p| plogp(p.min(1.0))).sum()
}

/// Shannon entropy `−Σ p log₂ p`.
///
/// Entries in `[−1e-12, 0)` are treated as round-off and clamped to zero.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    if let Some(&bad) = probs.iter().find(|p| p.is_nan() || **p < -1e-12) {
        return Err(Error::NegativeProbability { value: bad });
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::ProbabilitySum { sum });
    }
    Ok(entropy_of(probs.iter().copied()))
}

/// Binary entropy without range checks; the argument is clamped to `[0, 1]`.
#[inline]
pub(crate) fn h2(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    plogp(x) + plogp(1.0 - x)
}

/// `h(x) = −x log₂ x − (1−x) log₂(1−x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
        });
    }
    Ok(h2(x))
}

/// Entropy of a Hermitian matrix trusted to be a state.
pub(crate) fn spectral_entropy(m: &ComplexMatrix) -> f64 {
    let values = herm_eigenvalues(&m.hermitian_part()).expect("Hermitian part is Hermitian");
    entropy_of(values.into_iter().map(|v| v.max(0.0)))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    spectral_entropy(rho.matrix())
}

/// Entropy of a raw matrix, checked to be a state (trace within 1e-9).
pub fn matrix_entropy(m: &ComplexMatrix) -> Result<f64> {
    let report = validate(m, m.dim(), 1);
    let failed = report.checks.iter().find(|c| match c.invariant {
        Invariant::Trace => c.residual > 1e-9,
        _ => !c.passed,
    });
    if let Some(check) = failed {
        return Err(Error::InvalidState {
            invariant: check.invariant,
            residual: check.residual,
        });
    }
    Ok(spectral_entropy(m))
}

/// `S(A|B) = S(ρ^{AB}) − S(ρ^B)`.
pub fn conditional_entropy(rho: &DensityMatrix) -> f64 {
    von_neumann_entropy(rho) - spectral_entropy(&rho.reduced(Subsystem::B))
}

/// `I(A;B) = S(ρ^A) + S(ρ^B) − S(ρ^{AB})`.
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    spectral_entropy(&rho.reduced(Subsystem::A)) + spectral_entropy(&rho.reduced(Subsystem::B))
        - von_neumann_entropy(rho)
}

pub fn marginal_entropy(rho: &DensityMatrix, keep: Subsystem) -> f64 {
    spectral_entropy(&rho.reduced(keep))
}

/// Shannon entropy of the outcome distribution of `x` on `A`.
pub fn outcome_entropy(rho: &DensityMatrix, x: &ProjectiveObservable) -> Result<f64> {
    Ok(entropy_of(outcome_ensemble(rho, x)?.probs))
}

/// `S(X|B)` of the post-measurement state `ρ^{XB}`.
pub fn measured_conditional_entropy(rho: &DensityMatrix, x: &ProjectiveObservable) -> Result<f64> {
    Ok(conditional_entropy(&post_measurement_state(rho, x)?))
}

/// Holevo quantity of an ensemble whose average is `rho_b`.
pub fn ensemble_holevo(ensemble: &MeasurementEnsemble, rho_b: &ComplexMatrix) -> f64 {
    let conditional: f64 = ensemble
        .support()
        .map(|(p, s)| p * spectral_entropy(s))
        .sum();
    spectral_entropy(rho_b) - conditional
}

/// `I(P;B) = S(ρ^B) − Σ p_i S(ρ^B_i)`.
pub fn holevo(rho: &DensityMatrix, p: &ProjectiveObservable) -> Result<f64> {
    let ensemble = outcome_ensemble(rho, p)?;
    Ok(ensemble_holevo(&ensemble, &rho.reduced(Subsystem::B)))
}

fn check_pair(x: &ProjectiveObservable, z: &ProjectiveObservable) -> Result<()> {
    if x.dim() != z.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: z.dim(),
        });
    }
    Ok(())
}

/// Holevo correction `δ = I(A;B) − I(X;B) − I(Z;B)`.
pub fn delta(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<f64> {
    check_pair(x, z)?;
    Ok(mutual_information(rho) - holevo(rho, x)? - holevo(rho, z)?)
}

/// `log₂ dA + S(ρ^A) − H(X) − H(Z)`; `δ` is at least this for complementary pairs.
pub fn delta_floor(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<f64> {
    check_pair(x, z)?;
    Ok(
        libm::log2(rho.dim_a() as f64) + marginal_entropy(rho, Subsystem::A)
            - outcome_entropy(rho, x)?
            - outcome_entropy(rho, z)?,
    )
}

/// Settings for the Bloch-sphere search behind [`classical_correlation`].
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OptimizerConfig {
    /// Polar grid points over `[0, π/2]`, endpoints included.
    pub grid_theta: usize,
    /// Azimuthal grid points over `[0, 2π)`.
    pub grid_phi: usize,
    /// Pattern search stops once the step falls below this (radians).
    pub refine_tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_theta: 60,
            grid_phi: 120,
            refine_tol: 1e-6,
        }
    }
}

/// Minimum objective gain for a pattern-search move.
const MIN_IMPROVEMENT: f64 = 1e-9;
const MAX_REFINE_ITERATIONS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OptimizerTrace {
    pub grid_best: f64,
    pub refined_best: f64,
    pub iterations: usize,
}

/// Classical correlation and discord of a state with a qubit `A`.
///
/// The maximum is over rank-one projective measurements only; general POVMs
/// are not searched.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CorrelationReport {
    pub classical_correlation: f64,
    pub discord: f64,
    pub mutual_information: f64,
    pub optimal_direction: BlochDirection,
    pub optimizer: OptimizerTrace,
    /// Measurement class searched; always `"projective"`.
    pub measurements: &'static str,
}

/// `J_A = max_n I(P_n;B)` by a hemisphere grid followed by compass search.
pub fn classical_correlation(
    rho: &DensityMatrix,
    cfg: &OptimizerConfig,
) -> Result<CorrelationReport> {
    if rho.dim_a() != 2 {
        return Err(Error::UnsupportedDimension { dim: rho.dim_a() });
    }
    if cfg.grid_theta == 0 || cfg.grid_phi == 0 {
        return Err(Error::OutOfRange {
            name: "grid",
            value: cfg.grid_theta.min(cfg.grid_phi) as f64,
        });
    }
    if cfg.refine_tol.is_nan() || cfg.refine_tol <= 0.0 {
        return Err(Error::OutOfRange {
            name: "refine_tol",
            value: cfg.refine_tol,
        });
    }
    let rho_b = rho.reduced(Subsystem::B);
    let objective = |theta: f64, phi: f64| -> f64 {
        let obs = observable_from_bloch(BlochDirection::from_angles(theta, phi));
        let ens = outcome_ensemble(rho, &obs).expect("qubit A checked above");
        ensemble_holevo(&ens, &rho_b)
    };

    let theta_step = if cfg.grid_theta > 1 {
        FRAC_PI_2 / (cfg.grid_theta - 1) as f64
    } else {
        FRAC_PI_2
    };
    let phi_step = 2.0 * PI / cfg.grid_phi as f64;

    // strict comparison in index order: the lowest (θ, φ) index wins ties
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..cfg.grid_theta {
        let theta = i as f64 * theta_step;
        for j in 0..cfg.grid_phi {
            let phi = j as f64 * phi_step;
            let f = objective(theta, phi);
            if f > best.0 {
                best = (f, theta, phi);
            }
        }
    }
    for axis in PauliAxis::ALL {
        let (theta, phi) = match axis {
            PauliAxis::X => (FRAC_PI_2, 0.0),
            PauliAxis::Y => (FRAC_PI_2, FRAC_PI_2),
            PauliAxis::Z => (0.0, 0.0),
        };
        let f = objective(theta, phi);
        if f > best.0 {
            best = (f, theta, phi);
        }
    }
    let grid_best = best.0;

    let (mut st, mut sp) = (theta_step, phi_step);
    let mut iterations = 0;
    while st.max(sp) >= cfg.refine_tol && iterations < MAX_REFINE_ITERATIONS {
        iterations += 1;
        let (f0, t0, p0) = best;
        let mut candidate = best;
        for (t, p) in [(t0 + st, p0), (t0 - st, p0), (t0, p0 + sp), (t0, p0 - sp)] {
            let f = objective(t, p);
            if f > candidate.0 {
                candidate = (f, t, p);
            }
        }
        if candidate.0 > f0 + MIN_IMPROVEMENT {
            best = candidate;
        } else {
            if candidate.0 > f0 {
                best = candidate;
            }
            st *= 0.5;
            sp *= 0.5;
        }
    }

    let i_ab = mutual_information(rho);
    let j_a = best.0.max(0.0);
    Ok(CorrelationReport {
        classical_correlation: j_a,
        discord: i_ab - j_a,
        mutual_information: i_ab,
        optimal_direction: BlochDirection::from_angles(best.1, best.2),
        optimizer: OptimizerTrace {
            grid_best,
            refined_best: best.0,
            iterations,
        },
        measurements: "projective",
    })
}
