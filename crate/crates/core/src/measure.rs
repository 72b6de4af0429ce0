//! Projective observables on subsystem `A` and the classical-quantum objects
//! they induce.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matops::{c, tensor, ComplexMatrix, C64};
use crate::states::DensityMatrix;

/// Orthonormality tolerance for measurement bases.
pub const BASIS_TOL: f64 = 1e-10;

/// Outcomes with probability below this carry a placeholder state and are
/// excluded from all averages.
pub const PROB_FLOOR: f64 = 1e-14;

/// Unit vector on the Bloch sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct BlochDirection([f64; 3]);

impl BlochDirection {
    pub fn new(n: [f64; 3]) -> Result<Self> {
        let norm = libm::sqrt(n.iter().map(|x| x * x).sum::<f64>());
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitVector { norm });
        }
        Ok(BlochDirection(n))
    }

    /// Direction at polar angle `theta` and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = (libm::sin(theta), libm::cos(theta));
        BlochDirection([st * libm::cos(phi), st * libm::sin(phi), ct])
    }

    #[inline]
    pub fn components(&self) -> [f64; 3] {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn index(self) -> usize {
        match self {
            PauliAxis::X => 0,
            PauliAxis::Y => 1,
            PauliAxis::Z => 2,
        }
    }

    pub fn direction(self) -> BlochDirection {
        let mut n = [0.0; 3];
        n[self.index()] = 1.0;
        BlochDirection(n)
    }

    pub fn name(self) -> &'static str {
        match self {
            PauliAxis::X => "sigma_x",
            PauliAxis::Y => "sigma_y",
            PauliAxis::Z => "sigma_z",
        }
    }
}

/// An orthonormal measurement basis `{|x_i⟩}` on subsystem `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveObservable {
    basis: Vec<Vec<C64>>,
}

impl ProjectiveObservable {
    pub fn new(basis: Vec<Vec<C64>>) -> Result<Self> {
        let d = basis.len();
        if let Some(v) = basis.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.len(),
            });
        }
        let gram = ComplexMatrix::from_fn(d, |i, j| {
            basis[i]
                .iter()
                .zip(&basis[j])
                .map(|(a, b)| a.conj() * b)
                .sum()
        });
        let mut residual = gram.max_abs_diff(&ComplexMatrix::identity(d));
        let completeness = basis.iter().fold(ComplexMatrix::zeros(d), |acc, v| {
            &acc + &ComplexMatrix::projector(v)
        });
        residual = residual.max(completeness.max_abs_diff(&ComplexMatrix::identity(d)));
        if residual > BASIS_TOL {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(ProjectiveObservable { basis })
    }

    /// Basis given by the columns of a unitary matrix.
    pub fn from_columns(u: &ComplexMatrix) -> Result<Self> {
        Self::new((0..u.dim()).map(|j| u.column(j)).collect())
    }

    pub fn computational(d: usize) -> Self {
        ProjectiveObservable {
            basis: (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| c(if i == j { 1.0 } else { 0.0 }, 0.0))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn pauli(axis: PauliAxis) -> Self {
        observable_from_bloch(axis.direction())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vector(&self, i: usize) -> &[C64] {
        &self.basis[i]
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[C64]> {
        self.basis.iter().map(Vec::as_slice)
    }

    pub fn projector(&self, i: usize) -> ComplexMatrix {
        ComplexMatrix::projector(&self.basis[i])
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), |i, j| self.basis[j][i])
    }
}

/// Two-outcome observable with projectors `(I ± n·σ)/2`; outcome 0 is `+`.
pub fn observable_from_bloch(n: BlochDirection) -> ProjectiveObservable {
    let [nx, ny, nz] = n.0;
    // +1 eigenvector of n·σ, picking the better-conditioned of two forms
    let (a, b) = if nz >= 0.0 {
        (c(1.0 + nz, 0.0), c(nx, ny))
    } else {
        (c(nx, -ny), c(1.0 - nz, 0.0))
    };
    let norm = libm::sqrt(a.norm_sqr() + b.norm_sqr());
    let (a, b) = (a / norm, b / norm);
    ProjectiveObservable {
        basis: vec![vec![a, b], vec![-b.conj(), a.conj()]],
    }
}

fn check_same_dim(x: &ProjectiveObservable, z: &ProjectiveObservable) -> Result<()> {
    if x.dim() != z.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: z.dim(),
        });
    }
    Ok(())
}

/// `c_ij = |⟨x_i|z_j⟩|²`.
pub fn overlap_matrix(x: &ProjectiveObservable, z: &ProjectiveObservable) -> Result<Vec<Vec<f64>>> {
    check_same_dim(x, z)?;
    Ok(x.vectors()
        .map(|xi| {
            z.vectors()
                .map(|zj| {
                    xi.iter()
                        .zip(zj)
                        .map(|(a, b)| a.conj() * b)
                        .sum::<C64>()
                        .norm_sqr()
                })
                .collect()
        })
        .collect())
}

/// Largest and second-largest overlap, counting repeated values.
fn top_two_overlaps(x: &ProjectiveObservable, z: &ProjectiveObservable) -> Result<(f64, f64)> {
    let mut entries: Vec<f64> = overlap_matrix(x, z)?.into_iter().flatten().collect();
    entries.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    let max = entries[0];
    Ok((max, entries.get(1).copied().unwrap_or(max)))
}

/// Incompatibility `log₂(1/c)` with `c = max_ij c_ij`.
pub fn q_mu(x: &ProjectiveObservable, z: &ProjectiveObservable) -> Result<f64> {
    let (max, _) = top_two_overlaps(x, z)?;
    let q = -libm::log2(max.min(1.0));
    Ok(if q > 0.0 { q } else { 0.0 })
}

/// Incompatibility refined by the second-largest overlap `c₂`.
pub fn q_prime(x: &ProjectiveObservable, z: &ProjectiveObservable) -> Result<f64> {
    let (max, second) = top_two_overlaps(x, z)?;
    Ok(q_prime_from_overlaps(max, second))
}

/// `log₂(1/c) + ½(1 − √c) log₂(c/c₂)` for largest overlap `c` and runner-up `c₂`.
pub fn q_prime_from_overlaps(c_max: f64, c_second: f64) -> f64 {
    let c_max = c_max.min(1.0);
    let q = -libm::log2(c_max);
    let q = if q > 0.0 { q } else { 0.0 };
    if c_second >= c_max {
        return q;
    }
    q + 0.5 * (1.0 - libm::sqrt(c_max)) * libm::log2(c_max / c_second)
}

/// Conditional operator `Tr_A((|x⟩⟨x| ⊗ I) ρ (|x⟩⟨x| ⊗ I))` on `B`, unnormalized.
fn conditional_operator(rho: &DensityMatrix, x: &[C64]) -> ComplexMatrix {
    let (da, db) = rho.dims();
    let m = rho.matrix();
    ComplexMatrix::from_fn(db, |b, b2| {
        let mut acc = c(0.0, 0.0);
        for a in 0..da {
            let xa = x[a].conj();
            if xa.norm_sqr() == 0.0 {
                continue;
            }
            for a2 in 0..da {
                acc += xa * m[(a * db + b, a2 * db + b2)] * x[a2];
            }
        }
        acc
    })
}

fn check_observable_dim(rho: &DensityMatrix, x: &ProjectiveObservable) -> Result<()> {
    if x.dim() != rho.dim_a() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim_a(),
            found: x.dim(),
        });
    }
    Ok(())
}

/// `ρ^{XB} = Σ_i (|x_i⟩⟨x_i| ⊗ I) ρ (|x_i⟩⟨x_i| ⊗ I)`.
pub fn post_measurement_state(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
) -> Result<DensityMatrix> {
    check_observable_dim(rho, x)?;
    let (da, db) = rho.dims();
    let mut out = ComplexMatrix::zeros(da * db);
    for (i, xi) in x.vectors().enumerate() {
        let block = conditional_operator(rho, xi);
        out = &out + &tensor(&x.projector(i), &block);
    }
    Ok(DensityMatrix::from_trusted(out.hermitian_part(), da, db))
}

/// Outcome probabilities and Bob's normalized conditional states.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementEnsemble {
    pub probs: Vec<f64>,
    pub cond_states: Vec<ComplexMatrix>,
}

impl MeasurementEnsemble {
    /// `(p_i, ρ^B_i)` for outcomes with `p_i ≥ PROB_FLOOR`.
    pub fn support(&self) -> impl Iterator<Item = (f64, &ComplexMatrix)> {
        self.probs
            .iter()
            .copied()
            .zip(&self.cond_states)
            .filter(|(p, _)| *p >= PROB_FLOOR)
    }

    /// `Σ p_i ρ^B_i` over the support.
    pub fn average_state(&self) -> ComplexMatrix {
        let d = self.cond_states.first().map_or(0, ComplexMatrix::dim);
        self.support()
            .fold(ComplexMatrix::zeros(d), |acc, (p, s)| &acc + &s.scale(p))
    }
}

pub fn outcome_ensemble(
    rho: &DensityMatrix,
    x: &ProjectiveObservable,
) -> Result<MeasurementEnsemble> {
    check_observable_dim(rho, x)?;
    let db = rho.dim_b();
    let mut probs = Vec::with_capacity(x.dim());
    let mut cond_states = Vec::with_capacity(x.dim());
    for xi in x.vectors() {
        let op = conditional_operator(rho, xi).hermitian_part();
        let p = op.trace().re.max(0.0);
        probs.push(p);
        cond_states.push(if p >= PROB_FLOOR {
            op.scale(1.0 / p)
        } else {
            ComplexMatrix::identity(db).scale(1.0 / db as f64)
        });
    }
    Ok(MeasurementEnsemble { probs, cond_states })
}

/// Pauli axis with the `rank`-th largest `|⟨σ_i ⊗ σ_i⟩|` (rank 1 = largest).
///
/// Ties go to the lower axis index. Only defined for two qubits.
pub fn ranked_pauli_axis(rho: &DensityMatrix, rank: usize) -> Result<PauliAxis> {
    if !(1..=3).contains(&rank) {
        return Err(Error::OutOfRange {
            name: "rank",
            value: rank as f64,
        });
    }
    let r = rho.pauli_correlations()?;
    let mut axes = PauliAxis::ALL;
    // exact ties only matter at isolated parameter values; treat |Δ| ≤ 1e-12 as equal
    axes.sort_by(|a, b| {
        let (ra, rb) = (r[a.index()].abs(), r[b.index()].abs());
        if (ra - rb).abs() <= 1e-12 {
            a.index().cmp(&b.index())
        } else {
            rb.partial_cmp(&ra).unwrap_or(core::cmp::Ordering::Equal)
        }
    });
    Ok(axes[rank - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::StateFamily;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};

    fn same_projectors(a: &ProjectiveObservable, b: &ProjectiveObservable) -> bool {
        (0..a.dim()).all(|i| a.projector(i).max_abs_diff(&b.projector(i)) < 1e-12)
    }

    fn observable(vectors: &[[f64; 2]]) -> ProjectiveObservable {
        ProjectiveObservable::new(
            vectors
                .iter()
                .map(|v| vec![c(v[0], 0.0), c(v[1], 0.0)])
                .collect(),
        )
        .unwrap()
    }

    /// 3×3 circulant unitary with |U_00|² = 1/2 and the other overlaps 1/4.
    fn qutrit_basis() -> ProjectiveObservable {
        let alpha = libm::acos(-1.0 / (2.0 * core::f64::consts::SQRT_2));
        let u0 = c(FRAC_1_SQRT_2, 0.0);
        let u1 = c(0.5 * libm::cos(alpha), 0.5 * libm::sin(alpha));
        let u = ComplexMatrix::from_fn(3, |i, j| match (j + 3 - i) % 3 {
            0 => u0,
            _ => u1,
        });
        ProjectiveObservable::from_columns(&u).unwrap()
    }

    #[test]
    fn bloch_axes_give_pauli_eigenbases() {
        let s = FRAC_1_SQRT_2;
        let z = ProjectiveObservable::pauli(PauliAxis::Z);
        assert!(same_projectors(&z, &ProjectiveObservable::computational(2)));
        let x = ProjectiveObservable::pauli(PauliAxis::X);
        assert!(same_projectors(&x, &observable(&[[s, s], [s, -s]])));
        let y = ProjectiveObservable::pauli(PauliAxis::Y);
        let want = ProjectiveObservable::new(vec![
            vec![c(s, 0.0), c(0.0, s)],
            vec![c(s, 0.0), c(0.0, -s)],
        ])
        .unwrap();
        assert!(same_projectors(&y, &want));
    }

    #[test]
    fn bloch_projectors_match_formula() {
        let n = BlochDirection::new([0.48, -0.6, -0.64]).unwrap();
        let obs = observable_from_bloch(n);
        let paulis = [
            crate::matops::pauli_x(),
            crate::matops::pauli_y(),
            crate::matops::pauli_z(),
        ];
        let ndots = paulis
            .iter()
            .zip(n.components())
            .fold(ComplexMatrix::zeros(2), |acc, (s, k)| &acc + &s.scale(k));
        let plus = (&ComplexMatrix::identity(2) + &ndots).scale(0.5);
        let minus = (&ComplexMatrix::identity(2) - &ndots).scale(0.5);
        assert!(obs.projector(0).max_abs_diff(&plus) < 1e-14);
        assert!(obs.projector(1).max_abs_diff(&minus) < 1e-14);
    }

    #[test]
    fn bloch_rejects_non_unit() {
        assert!(matches!(
            BlochDirection::new([1.0, 1.0, 0.0]),
            Err(Error::NonUnitVector { .. })
        ));
    }

    #[test]
    fn overlaps_and_incompatibility() {
        let x = ProjectiveObservable::pauli(PauliAxis::X);
        let z = ProjectiveObservable::pauli(PauliAxis::Z);
        let c_xz = overlap_matrix(&x, &z).unwrap();
        assert!(c_xz.iter().flatten().all(|v| (v - 0.5).abs() < 1e-15));
        assert!((q_mu(&x, &z).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(q_mu(&z, &z).unwrap(), 0.0);
        assert_eq!(q_prime(&z, &z).unwrap(), 0.0);
        let c_zz = overlap_matrix(&z, &z).unwrap();
        assert_eq!(c_zz, [[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn overlaps_at_bloch_angle() {
        let theta = PI / 3.0;
        let z = ProjectiveObservable::pauli(PauliAxis::Z);
        let t = observable_from_bloch(BlochDirection::from_angles(theta, 0.0));
        let m = overlap_matrix(&z, &t).unwrap();
        let (cc, ss) = (
            libm::cos(theta / 2.0).powi(2),
            libm::sin(theta / 2.0).powi(2),
        );
        let want = [[cc, ss], [ss, cc]];
        for (row, wrow) in m.iter().zip(want) {
            for (g, w) in row.iter().zip(wrow) {
                assert!((g - w).abs() < 1e-14);
            }
        }
        assert!((q_mu(&z, &t).unwrap() - libm::log2(4.0 / 3.0)).abs() < 1e-14);
        assert!((q_prime(&z, &t).unwrap() - q_mu(&z, &t).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn q_prime_uses_second_largest_overlap() {
        let x = ProjectiveObservable::computational(3);
        let z = qutrit_basis();
        let m = overlap_matrix(&x, &z).unwrap();
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { 0.5 } else { 0.25 };
                assert!((v - want).abs() < 1e-14, "{m:?}");
            }
        }
        assert!((q_mu(&x, &z).unwrap() - 1.0).abs() < 1e-14);
        // 1/2 occurs three times, so c₂ = c and the correction vanishes
        assert!((q_prime(&x, &z).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn q_prime_formula_with_distinct_runner_up() {
        // 1 + (1 − √0.5)/2 · log₂ 2
        assert!((q_prime_from_overlaps(0.5, 0.25) - 1.146_446_609_406_726_2).abs() < 1e-12);
        assert_eq!(q_prime_from_overlaps(1.0, 1.0), 0.0);
        assert_eq!(q_prime_from_overlaps(0.5, 0.5), 1.0);
    }

    #[test]
    fn overlap_dimension_mismatch() {
        let x = ProjectiveObservable::computational(3);
        let z = ProjectiveObservable::computational(2);
        assert!(matches!(
            overlap_matrix(&x, &z),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn non_orthonormal_basis_is_rejected() {
        let err = ProjectiveObservable::new(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap_err();
        assert!(matches!(err, Error::NotOrthonormal { .. }));
    }

    #[test]
    fn singlet_under_z_measurement() {
        let rho = StateFamily::Werner(1.0).build().unwrap();
        let z = ProjectiveObservable::pauli(PauliAxis::Z);
        let post = post_measurement_state(&rho, &z).unwrap();
        let want = ComplexMatrix::from_real_diagonal(&[0.0, 0.5, 0.5, 0.0]);
        assert!(post.matrix().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn post_measurement_of_diagonal_product_is_identity_map() {
        let rho_b = ComplexMatrix::from_rows(&[
            vec![c(0.6, 0.0), c(0.2, -0.1)],
            vec![c(0.2, 0.1), c(0.4, 0.0)],
        ])
        .unwrap();
        let ket0 = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        let rho = DensityMatrix::new(tensor(&ket0, &rho_b), 2, 2).unwrap();
        let z = ProjectiveObservable::pauli(PauliAxis::Z);
        let post = post_measurement_state(&rho, &z).unwrap();
        assert!(post.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn post_measurement_is_idempotent() {
        let rho = StateFamily::XStateSpecial(0.37).build().unwrap();
        let x = observable_from_bloch(BlochDirection::from_angles(0.7, 1.9));
        let once = post_measurement_state(&rho, &x).unwrap();
        let twice = post_measurement_state(&once, &x).unwrap();
        assert!(once.matrix().max_abs_diff(twice.matrix()) < 1e-12);
        assert!((once.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn werner_outcomes_are_uniform() {
        let rho = StateFamily::Werner(0.7).build().unwrap();
        let x = observable_from_bloch(BlochDirection::from_angles(1.1, 0.3));
        let ens = outcome_ensemble(&rho, &x).unwrap();
        for p in &ens.probs {
            assert!((p - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn schmidt_basis_measurement_leaves_bob_pure() {
        let rho = StateFamily::PureSchmidt(vec![0.3, 0.7]).build().unwrap();
        let z = ProjectiveObservable::computational(2);
        let ens = outcome_ensemble(&rho, &z).unwrap();
        for (_, s) in ens.support() {
            assert!(((s * s).trace().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_probability_outcome_gets_placeholder() {
        let mut m = ComplexMatrix::zeros(4);
        m[(3, 3)] = c(1.0, 0.0);
        let rho = DensityMatrix::new(m, 2, 2).unwrap();
        let z = ProjectiveObservable::pauli(PauliAxis::Z);
        let ens = outcome_ensemble(&rho, &z).unwrap();
        assert_eq!(ens.probs, [0.0, 1.0]);
        assert!(
            ens.cond_states[1].max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.0, 1.0]))
                < 1e-15
        );
        assert!(ens.cond_states[0].max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
        assert_eq!(ens.support().count(), 1);
    }

    #[test]
    fn ranked_axes_follow_correlation_magnitude() {
        let rho = StateFamily::BellDiagonal([0.1, -0.5, 0.3]).build().unwrap();
        assert_eq!(ranked_pauli_axis(&rho, 1).unwrap(), PauliAxis::Y);
        assert_eq!(ranked_pauli_axis(&rho, 2).unwrap(), PauliAxis::Z);
        assert_eq!(ranked_pauli_axis(&rho, 3).unwrap(), PauliAxis::X);
        // r = (1−2p, −p, −p): x leads below p = 1/3, trails above
        let low = StateFamily::BellDiagonalSpecial(0.2).build().unwrap();
        assert_eq!(ranked_pauli_axis(&low, 1).unwrap(), PauliAxis::X);
        let high = StateFamily::BellDiagonalSpecial(0.6).build().unwrap();
        assert_eq!(ranked_pauli_axis(&high, 1).unwrap(), PauliAxis::Y);
        assert_eq!(ranked_pauli_axis(&high, 3).unwrap(), PauliAxis::X);
    }
}
