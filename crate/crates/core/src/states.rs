//! Bipartite density matrices and the named two-qubit families.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Invariant, Result};
use crate::matops::{
    c, herm_eigenvalues, partial_trace, pauli_x, pauli_y, pauli_z, tensor, ComplexMatrix,
    Subsystem, C64, HERMITIAN_TOL,
};

/// Tolerance for the trace and positivity invariants.
pub const STATE_TOL: f64 = 1e-10;

/// A validated state on `C^dA ⊗ C^dB`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    da: usize,
    db: usize,
}

impl DensityMatrix {
    /// Validates `mat` and stores its Hermitian part.
    pub fn new(mat: ComplexMatrix, da: usize, db: usize) -> Result<Self> {
        let report = validate(&mat, da, db);
        if let Some(check) = report.first_failure() {
            return Err(Error::InvalidState {
                invariant: check.invariant,
                residual: check.residual,
            });
        }
        Ok(DensityMatrix {
            mat: mat.hermitian_part(),
            da,
            db,
        })
    }

    /// Wraps a matrix produced by a trace-preserving map of a valid state.
    pub(crate) fn from_trusted(mat: ComplexMatrix, da: usize, db: usize) -> Self {
        debug_assert_eq!(mat.dim(), da * db);
        DensityMatrix { mat, da, db }
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.da, self.db)
    }

    #[inline]
    pub fn dim_a(&self) -> usize {
        self.da
    }

    #[inline]
    pub fn dim_b(&self) -> usize {
        self.db
    }

    /// Reduced state of the kept subsystem.
    pub fn reduced(&self, keep: Subsystem) -> ComplexMatrix {
        partial_trace(&self.mat, (self.da, self.db), keep)
            .expect("dimensions checked at construction")
    }

    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    /// `trace(ρ · (σ_i ⊗ σ_i))` for i = x, y, z. Requires two qubits.
    pub fn pauli_correlations(&self) -> Result<[f64; 3]> {
        if self.dims() != (2, 2) {
            return Err(Error::UnsupportedDimension {
                dim: self.da.max(self.db),
            });
        }
        let paulis = [pauli_x(), pauli_y(), pauli_z()];
        Ok(core::array::from_fn(|i| {
            (&self.mat * &tensor(&paulis[i], &paulis[i])).trace().re
        }))
    }
}

/// Result of checking one invariant.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct InvariantCheck {
    pub invariant: Invariant,
    pub passed: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ValidationReport {
    pub checks: Vec<InvariantCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, invariant: Invariant) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.invariant == invariant)
    }
}

/// Checks dimension, Hermiticity, unit trace and positivity of a candidate state.
pub fn validate(mat: &ComplexMatrix, da: usize, db: usize) -> ValidationReport {
    let mut checks = Vec::with_capacity(4);
    let dim_ok = da > 0 && db > 0 && da * db == mat.dim();
    checks.push(InvariantCheck {
        invariant: Invariant::Dimension,
        passed: dim_ok,
        residual: (mat.dim() as f64 - (da * db) as f64).abs(),
    });
    let herm = mat.hermiticity_residual();
    checks.push(InvariantCheck {
        invariant: Invariant::Hermitian,
        passed: herm <= HERMITIAN_TOL,
        residual: herm,
    });
    let trace = (mat.trace() - c(1.0, 0.0)).norm();
    checks.push(InvariantCheck {
        invariant: Invariant::Trace,
        passed: trace <= STATE_TOL,
        residual: trace,
    });
    let min_eig = herm_eigenvalues(&mat.hermitian_part())
        .ok()
        .and_then(|v| v.last().copied())
        .unwrap_or(0.0);
    let psd = (-min_eig).max(0.0);
    checks.push(InvariantCheck {
        invariant: Invariant::PositiveSemidefinite,
        passed: psd <= STATE_TOL,
        residual: psd,
    });
    ValidationReport { checks }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    /// Amplitudes in the basis |00⟩, |01⟩, |10⟩, |11⟩.
    pub fn ket(self) -> [C64; 4] {
        let s = FRAC_1_SQRT_2;
        let z = c(0.0, 0.0);
        match self {
            BellState::PhiPlus => [c(s, 0.0), z, z, c(s, 0.0)],
            BellState::PhiMinus => [c(s, 0.0), z, z, c(-s, 0.0)],
            BellState::PsiPlus => [z, c(s, 0.0), c(s, 0.0), z],
            BellState::PsiMinus => [z, c(s, 0.0), c(-s, 0.0), z],
        }
    }

    pub fn projector(self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.ket())
    }
}

/// A state to construct: one of the named families or an explicit matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum StateFamily {
    /// `Σ √λ_i |i⟩|i⟩` with `dA = dB = λ.len()`.
    PureSchmidt(Vec<f64>),
    /// `(1−p)/4 · I + p |Ψ⁻⟩⟨Ψ⁻|`.
    Werner(f64),
    /// `(I⊗I + Σ r_i σ_i⊗σ_i)/4`.
    BellDiagonal([f64; 3]),
    /// Bell-diagonal with `r = (1−2p, −p, −p)`.
    BellDiagonalSpecial(f64),
    /// `p |Ψ⁺⟩⟨Ψ⁺| + (1−p) |11⟩⟨11|`.
    XStateSpecial(f64),
    Explicit {
        mat: ComplexMatrix,
        da: usize,
        db: usize,
    },
}

fn check_unit_interval(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value: p })
    }
}

impl StateFamily {
    pub fn name(&self) -> &'static str {
        match self {
            StateFamily::PureSchmidt(_) => "pure_schmidt",
            StateFamily::Werner(_) => "werner",
            StateFamily::BellDiagonal(_) => "bell_diagonal",
            StateFamily::BellDiagonalSpecial(_) => "bell_diagonal_special",
            StateFamily::XStateSpecial(_) => "xstate",
            StateFamily::Explicit { .. } => "explicit",
        }
    }

    /// The family's matrix and dimensions before density-matrix validation.
    ///
    /// Parameter ranges are still checked; positivity is not.
    pub fn matrix(&self) -> Result<(ComplexMatrix, usize, usize)> {
        match self {
            StateFamily::PureSchmidt(lambda) => pure_schmidt(lambda),
            StateFamily::Werner(p) => {
                check_unit_interval("p", *p)?;
                let mixed = ComplexMatrix::identity(4).scale((1.0 - p) / 4.0);
                let singlet = BellState::PsiMinus.projector().scale(*p);
                Ok((&mixed + &singlet, 2, 2))
            }
            StateFamily::BellDiagonal(r) => bell_diagonal(*r),
            StateFamily::BellDiagonalSpecial(p) => {
                check_unit_interval("p", *p)?;
                bell_diagonal([1.0 - 2.0 * p, -p, -p])
            }
            StateFamily::XStateSpecial(p) => {
                check_unit_interval("p", *p)?;
                let mut m = BellState::PsiPlus.projector().scale(*p);
                m[(3, 3)] += c(1.0 - p, 0.0);
                Ok((m, 2, 2))
            }
            StateFamily::Explicit { mat, da, db } => Ok((mat.clone(), *da, *db)),
        }
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        let (m, da, db) = self.matrix()?;
        if matches!(
            self,
            StateFamily::BellDiagonal(_) | StateFamily::BellDiagonalSpecial(_)
        ) {
            if let Some(check) = validate(&m, da, db).get(Invariant::PositiveSemidefinite) {
                if !check.passed {
                    return Err(Error::InvalidState {
                        invariant: Invariant::Tetrahedron,
                        residual: check.residual,
                    });
                }
            }
        }
        DensityMatrix::new(m, da, db)
    }
}

fn pure_schmidt(lambda: &[f64]) -> Result<(ComplexMatrix, usize, usize)> {
    if lambda.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    if let Some(&bad) = lambda.iter().find(|l| l.is_nan() || **l < 0.0) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: bad,
        });
    }
    let sum: f64 = lambda.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidState {
            invariant: Invariant::SchmidtNormalization,
            residual: (sum - 1.0).abs(),
        });
    }
    let d = lambda.len();
    let mut psi = alloc::vec![c(0.0, 0.0); d * d];
    for (i, l) in lambda.iter().enumerate() {
        psi[i * d + i] = c(libm::sqrt(*l), 0.0);
    }
    Ok((ComplexMatrix::projector(&psi), d, d))
}

fn bell_diagonal(r: [f64; 3]) -> Result<(ComplexMatrix, usize, usize)> {
    if let Some(&bad) = r.iter().find(|x| !x.is_finite()) {
        return Err(Error::OutOfRange {
            name: "r",
            value: bad,
        });
    }
    let paulis = [pauli_x(), pauli_y(), pauli_z()];
    let mut m = ComplexMatrix::identity(4);
    for (ri, s) in r.iter().zip(&paulis) {
        m = &m + &tensor(s, s).scale(*ri);
    }
    Ok((m.scale(0.25), 2, 2))
}
