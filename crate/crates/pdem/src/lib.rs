//! Bound states of the D-dimensional radial Schrödinger equation with a
//! power-law position-dependent effective mass m(r) = m₀ rᵞ, for the
//! pseudoharmonic and modified Kratzer molecular potentials.
//!
//! Two independent solution routes are provided and cross-checked:
//!
//! * [`analytic`] — closed-form energies and radial wavefunctions obtained
//!   through a point canonical transformation of the constant-mass problem,
//! * [`numsolve`] — a self-adjoint finite-difference eigensolver for the
//!   same radial equation, with Richardson extrapolation.
//!
//! The [`pct`] module exposes the transformation itself (mapping function,
//! energy scale, wavefunction rescaling) so the commuting diagram between the
//! two routes can be verified directly.  All core math is generic over the
//! scalar type via [`Real`]; concrete `f64` aliases live at the crate root.

use std::fmt::Debug;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub mod analytic;
pub mod error;
pub mod model;
pub mod numsolve;
pub mod oracle;
pub mod pct;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};

/// Floating-point scalar the solvers are generic over.
///
/// Implemented for `f32` and `f64`.  The stated tolerances (1e-12 reduction
/// identities, 1e-6 eigenvalue agreement) are only meaningful in `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for pulling an `f64` literal into the generic scalar type.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal not representable in scalar type")
}

/// Default scalar used by the CLI and the concrete aliases below.
pub type Scalar = f64;

pub type MassProfile64 = model::MassProfile<f64>;
pub type PseudoharmonicParams64 = model::PseudoharmonicParams<f64>;
pub type KratzerParams64 = model::KratzerParams<f64>;
pub type Case64 = model::Case<f64>;
pub type RadialSolution64 = analytic::RadialSolution<f64>;
pub type PctMap64 = pct::PctMap<f64>;
pub type RadialGrid64 = numsolve::RadialGrid<f64>;
