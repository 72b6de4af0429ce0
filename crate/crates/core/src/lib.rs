//! Entropic uncertainty bounds in the presence of quantum memory.
//!
//! All quantities are computed from dense bipartite density matrices. Subsystem
//! `A` is the measured system and is always the left (slow) tensor factor;
//! `B` is the memory. Entropies are in bits.
//!
//! Modules, bottom-up:
//!
//! - [`matops`]: dense complex matrices, Kronecker products, partial traces and
//!   a Hermitian eigensolver.
//! - [`states`]: validated [`DensityMatrix`] values and the named state families.
//! - [`measure`]: projective observables on `A`, overlaps, incompatibility
//!   measures and the classical-quantum states they induce.
//! - [`infoquant`]: entropies, mutual information, Holevo quantities,
//!   classical correlation and discord (Bloch-sphere optimizer), and the
//!   Holevo correction `delta`.
//! - [`bounds`]: the lower bounds, the actual uncertainty and closed-form
//!   curves for the two special one-parameter families.
//! - [`apps`]: entanglement witness, Fano term, entanglement-of-formation lower
//!   bound and distillable common randomness upper bound.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod apps;
pub mod bounds;
mod error;
pub mod infoquant;
pub mod matops;
pub mod measure;
pub mod states;

pub use error::{Error, Invariant, Result};
pub use matops::{ComplexMatrix, Subsystem, C64};
pub use measure::{BlochDirection, MeasurementEnsemble, PauliAxis, ProjectiveObservable};
pub use states::{DensityMatrix, StateFamily};
