//! Scalar abstraction: all numerics are generic over the real type.
//!
//! `f64` is the working precision; `f32` instantiations are supported for
//! callers that want them. Default thresholds are stated as `f64` literals
//! and widened to a small multiple of the type's epsilon so that an `f32`
//! instantiation stays usable instead of demanding sub-epsilon agreement.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar the library is generic over: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`; thresholds and literals enter through here.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must convert into the scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `value` widened to at least `eps_units` machine epsilons.
///
/// At `f64` the stated value wins; at `f32` the epsilon floor takes over.
pub(crate) fn eps_floored<T: Scalar>(value: f64, eps_units: f64) -> T {
    let stated = T::from_f64_lossy(value);
    let floor = T::epsilon() * T::from_f64_lossy(eps_units);
    stated.max(floor)
}

/// Largest argument passed to `arctanh`: `1 - max(1e-15, 4·eps)`.
pub(crate) fn one_minus_tiny<T: Scalar>() -> T {
    T::one() - eps_floored::<T>(1e-15, 4.0)
}

/// Relative threshold below which an eigenvalue counts as zero.
pub(crate) fn support_rel<T: Scalar>() -> T {
    eps_floored::<T>(1e-12, 64.0)
}

/// Threshold on a squared eigenvector overlap below which it counts as zero.
pub(crate) fn overlap_sq_zero<T: Scalar>() -> T {
    eps_floored::<T>(1e-14, 16.0)
}

/// Mass of a state on the other state's kernel above which the support
/// inclusion needed by negative matrix powers is considered violated.
pub(crate) fn kernel_mass_threshold<T: Scalar>() -> T {
    eps_floored::<T>(1e-12, 64.0)
}

/// Relative threshold under which two means count as equal (0/0 conventions).
pub(crate) fn mean_equal_rel<T: Scalar>() -> T {
    eps_floored::<T>(1e-12, 64.0)
}

/// A trace overlap at or below this maps straight to `+inf` divergence.
pub(crate) fn overlap_underflow<T: Scalar>() -> T {
    T::from_f64_lossy(1e-300).max(T::min_positive_value())
}

/// Half-width of the interval around `alpha = 1` served by the limit branch.
pub(crate) fn alpha_one_window<T: Scalar>() -> T {
    T::from_f64_lossy(1e-8)
}
