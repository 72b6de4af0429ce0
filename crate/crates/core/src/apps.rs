//! Applications of the Holevo-corrected bound: entanglement witnessing, and
//! bounds on entanglement of formation and distillable common randomness.

use crate::bounds::actual_uncertainty;
use crate::error::{Error, Result};
use crate::infoquant::{delta, h2, marginal_entropy};
use crate::matops::{herm_eigenvalues, Subsystem};
use crate::measure::{outcome_ensemble, q_mu, MeasurementEnsemble, ProjectiveObservable};
use crate::states::DensityMatrix;

/// Margin below which a witness does not fire.
pub const WITNESS_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WitnessVerdict {
    pub entangled_by_berta: bool,
    pub entangled_by_ours: bool,
    /// `q_MU − actual`.
    pub margin_berta: f64,
    /// `q_MU + max{0, δ} − actual`.
    pub margin_ours: f64,
}

/// Entanglement is certified when the measured uncertainty falls below the
/// separable-state threshold.
pub fn witness(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<WitnessVerdict> {
    let q = q_mu(x, z)?;
    let d = delta(rho, x, z)?;
    let actual = actual_uncertainty(rho, x, z)?;
    let margin_berta = q - actual;
    let margin_ours = q + d.max(0.0) - actual;
    Ok(WitnessVerdict {
        entangled_by_berta: margin_berta > WITNESS_MARGIN,
        entangled_by_ours: margin_ours > WITNESS_MARGIN,
        margin_berta,
        margin_ours,
    })
}

/// Minimum error of discriminating Bob's two conditional states,
/// `½(1 − ‖p₀ρ₀ − p₁ρ₁‖₁)`.
pub fn helstrom_error(ensemble: &MeasurementEnsemble) -> Result<f64> {
    if ensemble.probs.len() != 2 {
        return Err(Error::UnsupportedOutcomes {
            count: ensemble.probs.len(),
        });
    }
    let (p0, p1) = (ensemble.probs[0], ensemble.probs[1]);
    let diff = &ensemble.cond_states[0].scale(p0) - &ensemble.cond_states[1].scale(p1);
    let trace_norm: f64 = herm_eigenvalues(&diff.hermitian_part())?
        .iter()
        .map(|v| v.abs())
        .sum();
    Ok((0.5 * (1.0 - trace_norm)).clamp(0.0, 0.5))
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FanoInputs {
    pub pe_x: f64,
    pub pe_z: f64,
    /// Dimension of the measured system.
    pub d: usize,
}

/// `h(P^X_e) + P^X_e log₂(d−1) + h(P^Z_e) + P^Z_e log₂(d−1)`.
pub fn fano_term(f: &FanoInputs) -> Result<f64> {
    for (name, pe) in [("pe_x", f.pe_x), ("pe_z", f.pe_z)] {
        if !(0.0..=1.0).contains(&pe) {
            return Err(Error::OutOfRange { name, value: pe });
        }
    }
    let extra = if f.d > 2 {
        libm::log2((f.d - 1) as f64)
    } else {
        0.0
    };
    Ok(h2(f.pe_x) + f.pe_x * extra + h2(f.pe_z) + f.pe_z * extra)
}

/// Fano inputs from Helstrom errors for `x` and `z` on `rho`.
pub fn fano_inputs(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<FanoInputs> {
    Ok(FanoInputs {
        pe_x: helstrom_error(&outcome_ensemble(rho, x)?)?,
        pe_z: helstrom_error(&outcome_ensemble(rho, z)?)?,
        d: rho.dim_a(),
    })
}

/// Lower bound on the regularized entanglement of formation.
///
/// Negative values are returned as-is and flagged vacuous.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EofBound {
    pub value: f64,
    pub vacuous: bool,
    pub fano: f64,
}

/// `q_MU + max{0, δ} − b_F`.
pub fn eof_lower_bound(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<EofBound> {
    let fano = fano_term(&fano_inputs(rho, x, z)?)?;
    let value = q_mu(x, z)? + delta(rho, x, z)?.max(0.0) - fano;
    Ok(EofBound {
        value,
        vacuous: value < 0.0,
        fano,
    })
}

/// `S(ρ^B) + b_F − q_MU − max{0, δ}`.
pub fn common_randomness_upper_bound(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
    z: &ProjectiveObservable,
) -> Result<f64> {
    let fano = fano_term(&fano_inputs(rho, x, z)?)?;
    Ok(marginal_entropy(rho, Subsystem::B) + fano - q_mu(x, z)? - delta(rho, x, z)?.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matops::{tensor, ComplexMatrix};
    use crate::measure::PauliAxis;
    use crate::states::StateFamily;
    use alloc::vec;

    fn xz() -> (ProjectiveObservable, ProjectiveObservable) {
        (
            ProjectiveObservable::pauli(PauliAxis::X),
            ProjectiveObservable::pauli(PauliAxis::Z),
        )
    }

    fn ket11() -> DensityMatrix {
        DensityMatrix::new(
            ComplexMatrix::from_real_diagonal(&[0.0, 0.0, 0.0, 1.0]),
            2,
            2,
        )
        .unwrap()
    }

    fn ensemble(probs: [f64; 2], states: [&[f64]; 2]) -> MeasurementEnsemble {
        MeasurementEnsemble {
            probs: probs.to_vec(),
            cond_states: states
                .iter()
                .map(|d| ComplexMatrix::from_real_diagonal(d))
                .collect(),
        }
    }

    #[test]
    fn witness_examples() {
        let (x, z) = xz();
        let singlet = StateFamily::Werner(1.0).build().unwrap();
        let v = witness(&singlet, &x, &z).unwrap();
        assert!(v.entangled_by_berta && v.entangled_by_ours);

        let prod = DensityMatrix::new(
            tensor(
                &ComplexMatrix::from_real_diagonal(&[0.6, 0.4]),
                &ComplexMatrix::from_real_diagonal(&[0.1, 0.9]),
            ),
            2,
            2,
        )
        .unwrap();
        let v = witness(&prod, &x, &z).unwrap();
        assert!(!v.entangled_by_berta && !v.entangled_by_ours);

        let v = witness(&StateFamily::Werner(0.8).build().unwrap(), &x, &z).unwrap();
        assert!(v.entangled_by_ours);
        // actual = 2h(0.9); threshold 1 + max{0, δ}
        assert!((v.margin_berta - (1.0 - 2.0 * h2(0.9))).abs() < 1e-12);
    }

    #[test]
    fn helstrom_examples() {
        let e = ensemble([0.5, 0.5], [&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(helstrom_error(&e).unwrap().abs() < 1e-15);
        let e = ensemble([0.3, 0.7], [&[0.4, 0.6], &[0.4, 0.6]]);
        assert!((helstrom_error(&e).unwrap() - 0.3).abs() < 1e-15);

        let singlet = StateFamily::Werner(1.0).build().unwrap();
        let z = ProjectiveObservable::pauli(PauliAxis::Z);
        let ens = outcome_ensemble(&singlet, &z).unwrap();
        assert!(helstrom_error(&ens).unwrap().abs() < 1e-15);
    }

    #[test]
    fn helstrom_rejects_three_outcomes() {
        let e = MeasurementEnsemble {
            probs: vec![0.2, 0.3, 0.5],
            cond_states: vec![ComplexMatrix::identity(1); 3],
        };
        assert_eq!(
            helstrom_error(&e),
            Err(Error::UnsupportedOutcomes { count: 3 })
        );
    }

    #[test]
    fn fano_examples() {
        let f = |pe_x, pe_z, d| fano_term(&FanoInputs { pe_x, pe_z, d }).unwrap();
        assert_eq!(f(0.0, 0.0, 2), 0.0);
        assert_eq!(f(0.5, 0.5, 2), 2.0);
        let want = h2(0.1) + h2(0.2);
        assert!((f(0.1, 0.2, 2) - want).abs() < 1e-15);
        assert!((want - 1.19093).abs() < 1e-5);
        // d = 3 adds P_e log₂ 2 per term
        assert!((f(0.1, 0.2, 3) - (want + 0.3)).abs() < 1e-15);
        assert!(fano_term(&FanoInputs {
            pe_x: 1.2,
            pe_z: 0.0,
            d: 2
        })
        .is_err());
    }

    #[test]
    fn eof_and_common_randomness_examples() {
        let (x, z) = xz();
        let singlet = StateFamily::Werner(1.0).build().unwrap();
        let eof = eof_lower_bound(&singlet, &x, &z).unwrap();
        assert!((eof.value - 1.0).abs() < 1e-9 && !eof.vacuous);
        assert!(
            common_randomness_upper_bound(&singlet, &x, &z)
                .unwrap()
                .abs()
                < 1e-9
        );

        let mixed = StateFamily::Werner(0.0).build().unwrap();
        let eof = eof_lower_bound(&mixed, &x, &z).unwrap();
        assert!((eof.value + 1.0).abs() < 1e-9 && eof.vacuous);
        assert!((common_randomness_upper_bound(&mixed, &x, &z).unwrap() - 2.0).abs() < 1e-9);

        // |11⟩: Bob learns nothing about X (P_e = ½) but knows Z (P_e = 0)
        let eof = eof_lower_bound(&ket11(), &x, &z).unwrap();
        assert!((eof.fano - 1.0).abs() < 1e-12);
        assert!(eof.value.abs() < 1e-12);
        assert!(
            common_randomness_upper_bound(&ket11(), &x, &z)
                .unwrap()
                .abs()
                < 1e-12
        );
    }
}
