//! The point canonical transformation engine.
//!
//! For m(r) = m₀ rᵞ the mapping q(r) = r^ν with ν = 1 + λ/2 is the unique
//! power-law choice for which (q′)²/m is r-independent, so a constant-mass
//! solution in s = q(r) maps onto a bound state of the effective-mass
//! equation with a plain energy rescaling.  This module builds the map,
//! applies it to energies, potentials and wavefunctions, and verifies the
//! angular-momentum matching condition numerically.

use crate::model::{effective_angular_momentum, Geometry, MassProfile};
use crate::{lit, Real, Result};

/// The transformation data: s = q(r) = r^ν, g² = q′/m = (ν/m₀) r^{−λ/2},
/// and the constant energy scale (q′)²/m = ν²/m₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PctMap<T> {
    nu: T,
    m0: T,
    lambda: T,
    energy_scale: T,
}

impl<T: Real> PctMap<T> {
    pub fn nu(&self) -> T {
        self.nu
    }

    pub fn energy_scale(&self) -> T {
        self.energy_scale
    }

    /// q(r) = r^ν, strictly increasing on (0, ∞).
    pub fn q(&self, r: T) -> T {
        r.powf(self.nu)
    }

    /// q′(r) = ν r^{ν−1} (> 0 for r > 0).
    pub fn q_prime(&self, r: T) -> T {
        self.nu * r.powf(self.nu - T::one())
    }

    /// g(r) = √(ν/m₀) · r^{−λ/4}.
    pub fn g(&self, r: T) -> T {
        (self.nu / self.m0).sqrt() * r.powf(-self.lambda / lit::<T>(4.0))
    }
}

/// Construct the map for a mass profile; fails for λ ≤ −2 (ν ≤ 0).
pub fn build_map<T: Real>(mass: &MassProfile<T>) -> PctMap<T> {
    // MassProfile construction already guarantees λ > −2.
    let nu = mass.nu();
    PctMap {
        nu,
        m0: mass.m0(),
        lambda: mass.lambda(),
        energy_scale: nu * nu / mass.m0(),
    }
}

/// E = ((q′)²/m) Ẽ with the constant scale ν²/m₀.
pub fn map_energy<T: Real>(map: &PctMap<T>, reference_energy: T) -> T {
    map.energy_scale() * reference_energy
}

/// V(r) = ((q′)²/m) Ṽ(q(r)).
pub fn map_potential<'a, T: Real, F>(map: &'a PctMap<T>, reference: F) -> impl Fn(T) -> Result<T> + 'a
where
    F: Fn(T) -> Result<T> + 'a,
{
    let scale = map.energy_scale();
    move |r: T| Ok(scale * reference(map.q(r))?)
}

/// R(r) = R̃(q(r)) / g(r).
pub fn map_wavefunction<'a, T: Real, F>(map: &'a PctMap<T>, reference: F) -> impl Fn(T) -> T + 'a
where
    F: Fn(T) -> T + 'a,
{
    move |r: T| reference(map.q(r)) / map.g(r)
}

/// F(x) = x″/x − (3/2)(x′/x)², the Schwarzian-type combination entering the
/// angular matching condition.
fn schwarzian_power_law<T: Real>(exponent: T, r: T) -> T {
    // For x(r) = c r^k: x″/x = k(k−1)/r², (x′/x)² = k²/r².
    let k = exponent;
    (k * (k - T::one()) - lit::<T>(1.5) * k * k) / (r * r)
}

/// Max absolute mismatch of the angular matching condition
///
/// Λ_D(Λ_D+1)(q′/q)² = l_D(l_D+1)/r² − ((D−1)/2r)(m′/m) − (1/2)[F(m) − F(q′)]
///
/// over the given radii, with Λ taken from the closed-form map and all
/// derivatives analytic for the power-law family.  Vanishes (to rounding)
/// exactly when Λ is the correct effective angular momentum.
pub fn angular_map_residual<T: Real>(
    map: &PctMap<T>,
    geom: &Geometry,
    mass: &MassProfile<T>,
    big_lambda: T,
    radii: &[T],
) -> T {
    let d = T::from_u32(geom.dim()).unwrap();
    let lam = mass.lambda();
    let lambda_d = big_lambda + (d - lit::<T>(3.0)) / lit::<T>(2.0);
    let centrifugal = geom.centrifugal::<T>();
    let mut worst = T::zero();
    for &r in radii {
        let qp_over_q = map.nu() / r; // (r^ν)′/r^ν = ν/r
        let lhs = lambda_d * (lambda_d + T::one()) * qp_over_q * qp_over_q;
        let mass_log_deriv = lam / r; // m′/m
        let f_m = schwarzian_power_law(lam, r);
        let f_qp = schwarzian_power_law(map.nu() - T::one(), r);
        let rhs = centrifugal / (r * r)
            - (d - T::one()) / (lit::<T>(2.0) * r) * mass_log_deriv
            - lit::<T>(0.5) * (f_m - f_qp);
        worst = worst.max((lhs - rhs).abs());
    }
    worst
}

/// Same residual with m, q′ supplied as closures and all derivatives taken
/// by central differences — a check hook for non-power-law mass profiles.
pub fn angular_map_residual_numeric<T: Real>(
    geom: &Geometry,
    mass_fn: &dyn Fn(T) -> T,
    q_fn: &dyn Fn(T) -> T,
    big_lambda: T,
    radii: &[T],
) -> T {
    let d = T::from_u32(geom.dim()).unwrap();
    let lambda_d = big_lambda + (d - lit::<T>(3.0)) / lit::<T>(2.0);
    let centrifugal = geom.centrifugal::<T>();
    let deriv = |f: &dyn Fn(T) -> T, r: T, h: T| (f(r + h) - f(r - h)) / (lit::<T>(2.0) * h);
    let second = |f: &dyn Fn(T) -> T, r: T, h: T| {
        (f(r + h) - lit::<T>(2.0) * f(r) + f(r - h)) / (h * h)
    };
    let mut worst = T::zero();
    for &r in radii {
        // the schwarzian of q′ nests two difference stencils, so the step
        // must stay well above the noise floor of the inner derivative
        let h = lit::<T>(2e-3) * r;
        let q_prime = |x: T| deriv(q_fn, x, lit::<T>(2e-3) * x);
        let schwarzian = |f: &dyn Fn(T) -> T| {
            second(f, r, h) / f(r) - lit::<T>(1.5) * (deriv(f, r, h) / f(r)).powi(2)
        };
        let qp_over_q = q_prime(r) / q_fn(r);
        let lhs = lambda_d * (lambda_d + T::one()) * qp_over_q * qp_over_q;
        let rhs = centrifugal / (r * r)
            - (d - T::one()) / (lit::<T>(2.0) * r) * (deriv(mass_fn, r, h) / mass_fn(r))
            - lit::<T>(0.5) * (schwarzian(mass_fn) - schwarzian(&q_prime));
        worst = worst.max((lhs - rhs).abs());
    }
    worst
}

/// Convenience: Λ from the closed form, then the analytic residual.
pub fn angular_map_residual_closed_form<T: Real>(
    map: &PctMap<T>,
    geom: &Geometry,
    mass: &MassProfile<T>,
    radii: &[T],
) -> Result<T> {
    let big_lambda = effective_angular_momentum(geom, mass)?;
    Ok(angular_map_residual(map, geom, mass, big_lambda, radii))
}
