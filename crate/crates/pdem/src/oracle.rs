//! Finite-difference residual oracle for the effective-mass radial equation
//!
//! R″ + (m′/m)((D−1)/(2r) − d/dr)R − l_D(l_D+1)/r² R + 2m(r)[E − V(r)]R = 0.
//!
//! The oracle only sees the candidate solution and the potential as black
//! boxes; derivatives come from Richardson-extrapolated central differences,
//! so it is independent of how a wavefunction was produced (closed form,
//! transformation engine, or eigensolver interpolant).

use crate::model::{Geometry, MassProfile};
use crate::{lit, Real};

/// Scaled residual at a single radius.
///
/// The raw residual is divided by the magnitude of the largest contributing
/// term, so the value measures cancellation quality rather than amplitude.
/// Returns 0 where the wavefunction has underflowed to zero.
pub fn ode_residual_at<T: Real>(
    eval: &dyn Fn(T) -> T,
    potential: &dyn Fn(T) -> T,
    energy: T,
    geom: &Geometry,
    mass: &MassProfile<T>,
    r: T,
    step: T,
) -> T {
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let h = step.min(r / two);
    let d1 = |h: T| (eval(r + h) - eval(r - h)) / (two * h);
    let d2 = |h: T| (eval(r + h) - two * eval(r) + eval(r - h)) / (h * h);
    // two-stage Richardson: eliminate the O(h²) and O(h⁴) terms of the
    // central stencils, leaving O(h⁶) truncation
    let extrap2 = |d: &dyn Fn(T) -> T| {
        let r1 = (four * d(h / two) - d(h)) / lit::<T>(3.0);
        let r1b = (four * d(h / four) - d(h / two)) / lit::<T>(3.0);
        (lit::<T>(16.0) * r1b - r1) / lit::<T>(15.0)
    };
    let fp = extrap2(&d1);
    let fpp = extrap2(&d2);
    let f = eval(r);

    let d = T::from_u32(geom.dim()).unwrap();
    let lam = mass.lambda();
    let t_second = fpp;
    // (m′/m)((D−1)/(2r) R − R′) with m′/m = λ/r
    let t_mass = lam / r * ((d - T::one()) / (two * r) * f - fp);
    let t_centrifugal = -geom.centrifugal::<T>() / (r * r) * f;
    let t_energy = two * mass.mass_at(r) * (energy - potential(r)) * f;

    let residual = t_second + t_mass + t_centrifugal + t_energy;
    // near a classical turning point E − V and R″ vanish together, which
    // would collapse the divisor and amplify pure roundoff; splitting the
    // energy term into |E| + |V| keeps the scale representative there
    let t_energy_scale = two * mass.mass_at(r) * (energy.abs() + potential(r).abs()) * f.abs();
    let scale = t_second
        .abs()
        .max(t_mass.abs())
        .max(t_centrifugal.abs())
        .max(t_energy_scale);
    if scale == T::zero() {
        T::zero()
    } else {
        residual.abs() / scale
    }
}

/// Max scaled residual over a set of radii, with a caller-supplied step
/// schedule (the step must be small against the local oscillation scale).
pub fn ode_residual_max<T: Real>(
    eval: &dyn Fn(T) -> T,
    potential: &dyn Fn(T) -> T,
    energy: T,
    geom: &Geometry,
    mass: &MassProfile<T>,
    radii: &[T],
    step: &dyn Fn(T) -> T,
) -> T {
    let mut worst = T::zero();
    for &r in radii {
        worst = worst.max(ode_residual_at(
            eval, potential, energy, geom, mass, r, step(r),
        ));
    }
    worst
}

/// Log-spaced radii on [lo, hi], the standard residual probe set.
pub fn log_spaced<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    let n = T::from_usize(count - 1).unwrap();
    let ratio = (hi / lo).ln() / n;
    (0..count)
        .map(|i| lo * (ratio * T::from_usize(i).unwrap()).exp())
        .collect()
}
