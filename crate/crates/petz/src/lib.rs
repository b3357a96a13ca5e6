//! Symmetric Petz-Rényi divergences and their tight trace-norm and
//! observable-statistics lower bounds, at desk scale.
//!
//! The pieces:
//!
//! - [`matrix`], [`eigen`], [`state`]: dense complex Hermitian linear algebra
//!   with a cyclic Jacobi eigensolver, validated density matrices and
//!   observables, matrix powers on the support, trace distance.
//! - [`divergence`]: the Petz-Rényi family `D_alpha`, its symmetric version,
//!   the quantum relative entropy and Holevo fidelity.
//! - [`classical`]: distributions, Rényi divergences, triangular
//!   discrimination (halved convention), total variation, involutions and
//!   entropy variables.
//! - [`ns`]: the Nussbaum-Szkoła embedding carrying states and observables
//!   into classical data without changing divergences or first moments.
//! - [`bounds`]: the increasing bound function
//!   `B(alpha, x) = ln[cosh((2 alpha - 1) arctanh x) / cosh(arctanh x)] / (alpha - 1)`,
//!   its numeric inverse, the inverted-bound function `f`, and the
//!   Pinsker-type comparator it dominates.
//! - [`uncertainty`]: the mean-shift statistic `s`, the sign operator of a
//!   state difference, and checked inequalities connecting all of the above
//!   (including the classical and exchange-fluctuation uncertainty
//!   relations).
//! - [`sampler`]: seeded, substream-addressed generation of random states,
//!   observables, distributions, involutions, and the exactly saturating
//!   two-level family.
//! - [`io`]: the JSON matrix format used by the command-line harness.
//!
//! Everything is generic over the real scalar through [`Scalar`]; `f64` is
//! the working precision and the `*64` aliases below are the common entry
//! points.
//!
//! ```
//! use petz::{symmetric_petz_renyi, bound_b, s_statistic, sampler};
//!
//! let (rho, sigma, theta) = sampler::saturating_pair::<f64>(2.0, 1.0).unwrap();
//! let d = symmetric_petz_renyi(&rho, &sigma, 2.0).unwrap().finite().unwrap();
//! let s = s_statistic(&rho, &sigma, &theta).unwrap();
//! let b = bound_b(2.0, s).unwrap();
//! assert!((d - b).abs() <= 1e-9); // this family saturates the bound
//! ```

pub mod bounds;
pub mod classical;
pub mod divergence;
pub mod eigen;
pub mod error;
pub mod io;
pub mod matrix;
pub mod ns;
pub mod sampler;
pub mod scalar;
pub mod state;
pub mod uncertainty;

pub use num_complex::Complex;

pub use bounds::{bound_b, bound_b_inverse, pinsker_rhs, uncertainty_f, BoundInverse};
pub use classical::{
    classical_kl, classical_renyi, entropy_variable, exp_moment_identity, mean_shift_bound,
    pair_construction, symmetric_classical_renyi, total_variation, triangular_discrimination,
    Distribution, EntropyVariable, Involution,
};
pub use divergence::{
    holevo_fidelity, petz_renyi, quantum_relative_entropy, symmetric_petz_renyi, ExtendedReal,
};
pub use eigen::{hermitian_eigen, EigenDecomposition};
pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use ns::{ns_divergence_identity, ns_embed, ns_moments, NsEmbedding, NsMoments};
pub use sampler::{
    random_density, random_distribution, random_involution, random_observable,
    random_trajectory_instance, saturating_pair, RngStream, SubStream,
};
pub use scalar::Scalar;
pub use state::{trace_distance, validate_density, DensityMatrix, Observable, Tolerances};
pub use uncertainty::{
    check_classical_tur, check_exchange_tur, check_inverted_uncertainty,
    check_trace_norm_bound, check_uncertainty_relation, moment_summary, omega_operator,
    s_statistic, InequalityMargin, MomentSummary, OmegaResult, TraceNormCheck,
};

/// Default grid of Rényi orders used by sweeps: brackets both Pinsker
/// regimes and includes the fidelity (`1/2`) and relative-entropy (`1`)
/// special cases.
pub const DEFAULT_ALPHA_GRID: &[f64] = &[0.3, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0];

pub type ComplexMatrix64 = ComplexMatrix<f64>;
pub type EigenDecomposition64 = EigenDecomposition<f64>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type Observable64 = Observable<f64>;
pub type Distribution64 = Distribution<f64>;
pub type ExtendedReal64 = ExtendedReal<f64>;

pub type ComplexMatrix32 = ComplexMatrix<f32>;
pub type DensityMatrix32 = DensityMatrix<f32>;
pub type Observable32 = Observable<f32>;
pub type Distribution32 = Distribution<f32>;
