//! Random states and observables for property and acceptance tests.
#![allow(dead_code)]

use eur_core::matops::{tensor, C64};
use eur_core::{ComplexMatrix, DensityMatrix, ProjectiveObservable, StateFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, |_, _| gaussian(rng))
}

/// `G G† / tr(G G†)` for a square Ginibre `G` (Hilbert–Schmidt measure).
pub fn random_matrix_state(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d);
    let m = &g * &g.adjoint();
    let t = m.trace().re;
    m.scale(1.0 / t).hermitian_part()
}

pub fn random_state(rng: &mut impl Rng, da: usize, db: usize) -> DensityMatrix {
    DensityMatrix::new(random_matrix_state(rng, da * db), da, db).expect("valid random state")
}

/// Haar unitary via Gram–Schmidt on a Ginibre matrix.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = g.column(j);
        for u in &cols {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(d, |i, j| cols[j][i])
}

pub fn random_observable(rng: &mut impl Rng, d: usize) -> ProjectiveObservable {
    ProjectiveObservable::from_columns(&random_unitary(rng, d)).expect("unitary columns")
}

/// Random complementary qubit pair: a Haar-rotated (σ_x, σ_z).
pub fn random_mub_pair(rng: &mut impl Rng) -> (ProjectiveObservable, ProjectiveObservable) {
    let u = random_unitary(rng, 2);
    let rotate = |axis| {
        let m = ProjectiveObservable::pauli(axis).basis_matrix();
        ProjectiveObservable::from_columns(&(&u * &m)).expect("unitary columns")
    };
    (
        rotate(eur_core::PauliAxis::X),
        rotate(eur_core::PauliAxis::Z),
    )
}

/// Correlation vector uniform over the tetrahedron of Bell-diagonal states.
pub fn random_bell_vector(rng: &mut impl Rng) -> [f64; 3] {
    // Φ⁺, Φ⁻, Ψ⁺, Ψ⁻
    const VERTICES: [[f64; 3]; 4] = [
        [1.0, -1.0, 1.0],
        [-1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0],
        [-1.0, -1.0, -1.0],
    ];
    let w: Vec<f64> = (0..4).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    let mut r = [0.0; 3];
    for (wi, v) in w.iter().zip(VERTICES) {
        for k in 0..3 {
            r[k] += wi / total * v[k];
        }
    }
    r
}

pub fn random_bell_diagonal(rng: &mut impl Rng) -> ([f64; 3], DensityMatrix) {
    let r = random_bell_vector(rng);
    (
        r,
        StateFamily::BellDiagonal(r)
            .build()
            .expect("inside tetrahedron"),
    )
}

pub fn random_product_state(rng: &mut impl Rng, da: usize, db: usize) -> DensityMatrix {
    let a = random_matrix_state(rng, da);
    let b = random_matrix_state(rng, db);
    DensityMatrix::new(tensor(&a, &b), da, db).expect("valid product")
}

pub fn random_schmidt(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    let mut lambda: Vec<f64> = w.iter().map(|x| x / total).collect();
    // absorb rounding so the coefficients sum to 1 within 1e-12
    let drift: f64 = 1.0 - lambda.iter().sum::<f64>();
    lambda[0] += drift;
    lambda
}

pub fn binary_entropy(x: f64) -> f64 {
    eur_core::infoquant::binary_entropy(x).expect("in range")
}
