//! Closed-form bound-state energies, radial wavefunctions, and effective
//! potentials for the power-law effective mass, plus the constant-mass
//! reference solutions they reduce to.
//!
//! Both wavefunction families share one algebraic shape,
//!
//! ```text
//! R(r) ∝ r^power · exp(−decay_coeff · r^decay_power) · F(−n, b; arg_coeff · r^arg_power)
//! ```
//!
//! so a single evaluator type covers the pseudoharmonic and Kratzer states
//! in every dimension and for every admissible mass exponent.  Normalization
//! constants are fixed numerically under the flat measure ∫R² dr = 1: for
//! m(r) = m₀ rᵞ the transformation weight m g⁴ = ν²/m₀ is constant, so the
//! physical norm reduces to the flat integral.

use crate::model::{
    effective_angular_momentum, Geometry, KratzerParams, MassProfile, PotentialKind,
    PseudoharmonicParams,
};
use crate::specfun::{log_gamma, KummerPoly};
use crate::{lit, quad, Error, Real, Result};

/// Unnormalized radial profile r^power · e^{−c r^p} · F(−n, b; a r^q).
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionShape<T> {
    pub power: T,
    pub decay_coeff: T,
    pub decay_power: T,
    pub arg_coeff: T,
    pub arg_power: T,
    pub poly: KummerPoly<T>,
}

impl<T: Real> WavefunctionShape<T> {
    pub fn eval(&self, r: T) -> T {
        if r <= T::zero() {
            return T::zero();
        }
        // work in logs for the power/exponential part to avoid overflow
        let log_amp = self.power * r.ln() - self.decay_coeff * r.powf(self.decay_power);
        let poly = self.poly.eval(self.arg_coeff * r.powf(self.arg_power));
        log_amp.exp() * poly
    }

    /// Radius beyond which the squared profile is below ~1e−22 of its peak;
    /// the certifiable truncation point for normalization quadrature.
    pub fn tail_radius(&self) -> T {
        let p = self.decay_power;
        let c = self.decay_coeff;
        let w = self.power.max(lit::<T>(0.5));
        let n = T::from_u32(self.poly.degree()).unwrap();
        let r_peak = (w / (c * p)).powf(T::one() / p).max(T::one());
        let log_env = |r: T| {
            let arg = self.arg_coeff * r.powf(self.arg_power);
            w * r.ln() + n * (T::one() + arg).ln() - c * r.powf(p)
        };
        let peak = log_env(r_peak);
        let mut r = r_peak;
        while log_env(r) > peak - lit::<T>(26.0) {
            r = r * lit::<T>(1.15);
        }
        r
    }

    /// Radius where the power/exponential envelope peaks; states with slow
    /// decay can sit far from the unit radius, so probes should center here.
    pub fn peak_radius(&self) -> T {
        let w = self.power.max(lit::<T>(0.5));
        (w / (self.decay_coeff * self.decay_power))
            .powf(T::one() / self.decay_power)
            .max(lit::<T>(0.1))
    }

    /// Finite-difference step small against the local log-derivative scale.
    pub fn suggested_fd_step(&self, r: T) -> T {
        let kappa = T::one()
            + self.power.abs() / r
            + self.decay_coeff * self.decay_power * r.powf(self.decay_power - T::one());
        (lit::<T>(0.01) / kappa).min(r / lit::<T>(3.0))
    }
}

/// One normalized bound state.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution<T> {
    pub n: u32,
    pub geom: Geometry,
    pub energy: T,
    pub norm_constant: T,
    pub shape: WavefunctionShape<T>,
}

impl<T: Real> RadialSolution<T> {
    /// Normalized R(r); zero at the origin and for r ≤ 0.
    pub fn eval(&self, r: T) -> T {
        self.norm_constant * self.shape.eval(r)
    }

    pub fn tail_radius(&self) -> T {
        self.shape.tail_radius()
    }

    /// Count interior sign changes by sampling up to the tail radius.
    pub fn interior_nodes(&self, samples: usize) -> usize {
        let r_max = self.tail_radius();
        let h = r_max / T::from_usize(samples + 1).unwrap();
        let mut nodes = 0;
        let mut prev = T::zero();
        let floor = lit::<T>(1e-12);
        let mut scale = T::zero();
        let values: Vec<T> = (1..=samples)
            .map(|i| self.eval(h * T::from_usize(i).unwrap()))
            .collect();
        for &v in &values {
            scale = scale.max(v.abs());
        }
        for &v in &values {
            if v.abs() <= floor * scale {
                continue;
            }
            if prev != T::zero() && (v > T::zero()) != (prev > T::zero()) {
                nodes += 1;
            }
            prev = v;
        }
        nodes
    }
}

fn normalize<T: Real>(shape: &WavefunctionShape<T>) -> Result<T> {
    let r_max = shape.tail_radius();
    let sq = |r: T| {
        let v = shape.eval(r);
        v * v
    };
    let integral = quad::integrate(&sq, T::zero(), r_max, lit::<T>(1e-12), T::zero())?;
    if !(integral > T::zero()) || !integral.is_finite() {
        return Err(Error::QuadratureFailure(format!(
            "normalization integral not positive-finite: {:?}",
            integral
        )));
    }
    Ok(T::one() / integral.sqrt())
}

/// √[(Λ(l) + D/2 − 1)² + η²rₑ⁴], the pseudoharmonic index.
fn pseudoharmonic_index<T: Real>(
    geom: &Geometry,
    mass: &MassProfile<T>,
    params: &PseudoharmonicParams<T>,
) -> Result<T> {
    let big_lambda = effective_angular_momentum(geom, mass)?;
    let d = T::from_u32(geom.dim()).unwrap();
    let base = big_lambda + d / lit::<T>(2.0) - T::one();
    let eta_re2 = params.eta() * params.re() * params.re();
    Ok((base * base + eta_re2 * eta_re2).sqrt())
}

/// Bound-state energy of the pseudoharmonic oscillator with m(r) = m₀ rᵞ:
/// E = ((2+λ)/2) [−ηrₑ² + 1 + 2n + √((Λ+D/2−1)² + η²rₑ⁴)] C.
pub fn pseudoharmonic_energy<T: Real>(
    n: u32,
    geom: &Geometry,
    mass: &MassProfile<T>,
    params: &PseudoharmonicParams<T>,
) -> Result<T> {
    let mu = pseudoharmonic_index(geom, mass, params)?;
    let bracket = -params.eta() * params.re() * params.re()
        + T::one()
        + lit::<T>(2.0) * T::from_u32(n).unwrap()
        + mu;
    Ok(mass.nu() * params.c() * bracket)
}

/// Effective pseudoharmonic potential V(r) = (m₀/2) (r^ν − rₑ²/r^ν)² C².
pub fn pseudoharmonic_potential<T: Real>(
    r: T,
    mass: &MassProfile<T>,
    params: &PseudoharmonicParams<T>,
) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::DomainError(format!(
            "potential requires r > 0, got {:?}",
            r
        )));
    }
    let s = r.powf(mass.nu());
    let bracket = s - params.re() * params.re() / s;
    Ok(mass.m0() / lit::<T>(2.0) * bracket * bracket * params.c() * params.c())
}

/// Normalized pseudoharmonic bound state.
pub fn pseudoharmonic_wavefunction<T: Real>(
    n: u32,
    geom: &Geometry,
    mass: &MassProfile<T>,
    params: &PseudoharmonicParams<T>,
) -> Result<RadialSolution<T>> {
    let mu = pseudoharmonic_index(geom, mass, params)?;
    let energy = pseudoharmonic_energy(n, geom, mass, params)?;
    let nu = mass.nu();
    let lam = mass.lambda();
    let eta = params.eta();
    let shape = WavefunctionShape {
        power: nu * (mu + lit::<T>(0.5)) + lam / lit::<T>(4.0),
        decay_coeff: eta / lit::<T>(2.0),
        decay_power: lit::<T>(2.0) + lam,
        arg_coeff: eta,
        arg_power: lit::<T>(2.0) + lam,
        poly: KummerPoly::new(n, mu + T::one())?,
    };
    let norm_constant = normalize(&shape)?;
    Ok(RadialSolution {
        n,
        geom: *geom,
        energy,
        norm_constant,
        shape,
    })
}

/// (1/(2+λ)) √[(2+λ)²(D+2Λ−2)² + 32 m₀ rₑ² P], the Kratzer index.
fn kratzer_index<T: Real>(
    geom: &Geometry,
    mass: &MassProfile<T>,
    params: &KratzerParams<T>,
) -> Result<T> {
    let big_lambda = effective_angular_momentum(geom, mass)?;
    let d = T::from_u32(geom.dim()).unwrap();
    let two = lit::<T>(2.0);
    let two_lam = two + mass.lambda();
    let base = two_lam * (d + two * big_lambda - two);
    let radicand =
        base * base + lit::<T>(32.0) * mass.m0() * params.re() * params.re() * params.p();
    Ok(radicand.sqrt() / two_lam)
}

/// Kratzer decay constant γ = 16 m₀ rₑ P / ((2+λ)² (1 + 2n + χ)).
fn kratzer_gamma<T: Real>(n: u32, chi: T, mass: &MassProfile<T>, params: &KratzerParams<T>) -> T {
    let two_lam = lit::<T>(2.0) + mass.lambda();
    let denom = T::one() + lit::<T>(2.0) * T::from_u32(n).unwrap() + chi;
    lit::<T>(16.0) * mass.m0() * params.re() * params.p() / (two_lam * two_lam * denom)
}

/// Bound-state energy of the modified Kratzer potential with m(r) = m₀ rᵞ:
/// E = P − 32 m₀ rₑ² P² / [(1+2n)(2+λ) + √((2+λ)²(D+2Λ−2)² + 32 m₀ rₑ² P)]².
pub fn kratzer_energy<T: Real>(
    n: u32,
    geom: &Geometry,
    mass: &MassProfile<T>,
    params: &KratzerParams<T>,
) -> Result<T> {
    let chi = kratzer_index(geom, mass, params)?;
    let nu = mass.nu();
    let denom = T::one() + lit::<T>(2.0) * T::from_u32(n).unwrap() + chi;
    let p = params.p();
    Ok(p - lit::<T>(8.0) * mass.m0() * params.re() * params.re() * p * p
        / (nu * nu * denom * denom))
}

/// Effective Kratzer potential V(r) = P ((r^ν − rₑ)/r^ν)².
pub fn kratzer_potential<T: Real>(
    r: T,
    mass: &MassProfile<T>,
    params: &KratzerParams<T>,
) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::DomainError(format!(
            "potential requires r > 0, got {:?}",
            r
        )));
    }
    let s = r.powf(mass.nu());
    let bracket = (s - params.re()) / s;
    Ok(params.p() * bracket * bracket)
}

/// Normalized Kratzer bound state.
pub fn kratzer_wavefunction<T: Real>(
    n: u32,
    geom: &Geometry,
    mass: &MassProfile<T>,
    params: &KratzerParams<T>,
) -> Result<RadialSolution<T>> {
    if !(params.ve() > T::zero()) {
        return Err(Error::InvalidParameter(
            "Kratzer bound states require Ve > 0".into(),
        ));
    }
    let chi = kratzer_index(geom, mass, params)?;
    let gamma = kratzer_gamma(n, chi, mass, params);
    let energy = kratzer_energy(n, geom, mass, params)?;
    let nu = mass.nu();
    let shape = WavefunctionShape {
        power: nu * (T::one() + chi) / lit::<T>(2.0) + mass.lambda() / lit::<T>(4.0),
        decay_coeff: gamma,
        decay_power: nu,
        arg_coeff: lit::<T>(2.0) * gamma,
        arg_power: nu,
        poly: KummerPoly::new(n, T::one() + chi)?,
    };
    let norm_constant = normalize(&shape)?;
    Ok(RadialSolution {
        n,
        geom: *geom,
        energy,
        norm_constant,
        shape,
    })
}

/// A constant-mass (s-space) reference solution with explicit angular
/// momentum Λ — the source the transformation engine maps from, and the
/// λ = 0 oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSolution<T> {
    pub energy: T,
    pub shape: WavefunctionShape<T>,
    pub norm_constant: T,
}

impl<T: Real> ReferenceSolution<T> {
    pub fn eval(&self, s: T) -> T {
        self.norm_constant * self.shape.eval(s)
    }
}

/// Constant-mass (m = 1) reference spectrum and wavefunction for either
/// potential at given (n, D, Λ, Vₑ, rₑ).
///
/// Spectra depend on (D, Λ) only through D + 2Λ, which is what makes the
/// inter-dimensional degeneracy E(n, l, D) = E(n, l−1, D+2) exact.
pub fn constant_mass_reference<T: Real>(
    kind: PotentialKind,
    n: u32,
    dim: u32,
    big_lambda: T,
    ve: T,
    re: T,
) -> Result<ReferenceSolution<T>> {
    if !(ve > T::zero()) || !(re > T::zero()) {
        return Err(Error::InvalidParameter(
            "reference solution requires Ve > 0 and re > 0".into(),
        ));
    }
    let two = lit::<T>(2.0);
    let d = T::from_u32(dim).unwrap();
    let nf = T::from_u32(n).unwrap();
    let shape;
    let energy;
    match kind {
        PotentialKind::Pseudoharmonic => {
            let eta = (two * ve).sqrt() / re;
            let base = big_lambda + d / two - T::one();
            let eta_re2 = eta * re * re;
            let mu = (base * base + eta_re2 * eta_re2).sqrt();
            energy = eta * (-eta * re * re + T::one() + two * nf + mu);
            shape = WavefunctionShape {
                power: mu + lit::<T>(0.5),
                decay_coeff: eta / two,
                decay_power: two,
                arg_coeff: eta,
                arg_power: two,
                poly: KummerPoly::new(n, mu + T::one())?,
            };
        }
        PotentialKind::Kratzer => {
            let base = d + two * big_lambda - two;
            let chi = (base * base + lit::<T>(8.0) * ve * re * re).sqrt();
            let denom = T::one() + two * nf + chi;
            // 1/(2a²) = 8Vₑ²rₑ² with a = 1/(4Vₑrₑ)
            energy = ve - lit::<T>(8.0) * ve * ve * re * re / (denom * denom);
            let k = lit::<T>(4.0) * ve * re / denom;
            shape = WavefunctionShape {
                power: (T::one() + chi) / two,
                decay_coeff: k,
                decay_power: T::one(),
                arg_coeff: two * k,
                arg_power: T::one(),
                poly: KummerPoly::new(n, T::one() + chi)?,
            };
        }
    }
    let norm_constant = normalize(&shape)?;
    Ok(ReferenceSolution {
        energy,
        shape,
        norm_constant,
    })
}

/// Closed-form normalization of the constant-mass pseudoharmonic reference,
/// A² = 2 η^{μ+1} Γ(n+μ+1) / (n! Γ(μ+1)²), consistent with the Kummer form
/// of the wavefunction under ∫R̃² ds = 1.
pub fn pseudoharmonic_reference_norm<T: Real>(
    n: u32,
    dim: u32,
    big_lambda: T,
    ve: T,
    re: T,
) -> Result<T> {
    let two = lit::<T>(2.0);
    let d = T::from_u32(dim).unwrap();
    let eta = (two * ve).sqrt() / re;
    let base = big_lambda + d / two - T::one();
    let eta_re2 = eta * re * re;
    let mu = (base * base + eta_re2 * eta_re2).sqrt();
    let nf = T::from_u32(n).unwrap();
    let log_a2 = two.ln() + (mu + T::one()) * eta.ln() + log_gamma(nf + mu + T::one())?
        - log_gamma(nf + T::one())?
        - two * log_gamma(mu + T::one())?;
    Ok((log_a2 / two).exp())
}

/// The paper's D = 1, 2, 3 specializations, re-derived from the general
/// formulas by parameter substitution.  They provide an independent
/// arithmetic route for the reduction-identity checks.
pub mod reductions {
    use super::*;

    fn pseudoharmonic_from_index_sq<T: Real>(
        n: u32,
        mass: &MassProfile<T>,
        params: &PseudoharmonicParams<T>,
        index_sq: T,
    ) -> T {
        let eta = params.eta();
        let re2 = params.re() * params.re();
        let nu = mass.nu();
        let mu = (index_sq + eta * eta * re2 * re2).sqrt();
        eta * nu * nu / mass.m0()
            * (-eta * re2 + T::one() + lit::<T>(2.0) * T::from_u32(n).unwrap() + mu)
    }

    /// D = 2 (l = M): index² = (4M² + λ²)/(2+λ)².
    pub fn pseudoharmonic_energy_d2<T: Real>(
        n: u32,
        m_quantum: u32,
        mass: &MassProfile<T>,
        params: &PseudoharmonicParams<T>,
    ) -> T {
        let lam = mass.lambda();
        let mf = T::from_u32(m_quantum).unwrap();
        let two_lam = lit::<T>(2.0) + lam;
        let index_sq = (lit::<T>(4.0) * mf * mf + lam * lam) / (two_lam * two_lam);
        pseudoharmonic_from_index_sq(n, mass, params, index_sq)
    }

    /// D = 3: index² = ((2l+1)² + λ(λ−2))/(2+λ)².
    pub fn pseudoharmonic_energy_d3<T: Real>(
        n: u32,
        l: u32,
        mass: &MassProfile<T>,
        params: &PseudoharmonicParams<T>,
    ) -> T {
        let lam = mass.lambda();
        let lf = T::from_u32(l).unwrap();
        let two_lam = lit::<T>(2.0) + lam;
        let base = lit::<T>(2.0) * lf + T::one();
        let index_sq = (base * base + lam * (lam - lit::<T>(2.0))) / (two_lam * two_lam);
        pseudoharmonic_from_index_sq(n, mass, params, index_sq)
    }

    /// D = 1 (s-wave encoding): index² = ((1+λ)/(2+λ))².
    pub fn pseudoharmonic_energy_d1<T: Real>(
        n: u32,
        mass: &MassProfile<T>,
        params: &PseudoharmonicParams<T>,
    ) -> T {
        let lam = mass.lambda();
        let ratio = (T::one() + lam) / (lit::<T>(2.0) + lam);
        pseudoharmonic_from_index_sq(n, mass, params, ratio * ratio)
    }

    fn kratzer_from_root<T: Real>(
        n: u32,
        mass: &MassProfile<T>,
        params: &KratzerParams<T>,
        root: T,
    ) -> T {
        let two_lam = lit::<T>(2.0) + mass.lambda();
        let p = params.p();
        let re2 = params.re() * params.re();
        let denom = (T::one() + lit::<T>(2.0) * T::from_u32(n).unwrap()) * two_lam + root;
        p - lit::<T>(32.0) * mass.m0() * re2 * p * p / (denom * denom)
    }

    /// D = 2 (l = M): root = √(16M² + 32m₀rₑ²P + 4λ²).
    pub fn kratzer_energy_d2<T: Real>(
        n: u32,
        m_quantum: u32,
        mass: &MassProfile<T>,
        params: &KratzerParams<T>,
    ) -> T {
        let lam = mass.lambda();
        let mf = T::from_u32(m_quantum).unwrap();
        let root = (lit::<T>(16.0) * mf * mf
            + lit::<T>(32.0) * mass.m0() * params.re() * params.re() * params.p()
            + lit::<T>(4.0) * lam * lam)
            .sqrt();
        kratzer_from_root(n, mass, params, root)
    }

    /// D = 3: root = 2√((1+2l)² + 8m₀rₑ²P + λ(λ−2)).
    pub fn kratzer_energy_d3<T: Real>(
        n: u32,
        l: u32,
        mass: &MassProfile<T>,
        params: &KratzerParams<T>,
    ) -> T {
        let lam = mass.lambda();
        let base = T::one() + lit::<T>(2.0) * T::from_u32(l).unwrap();
        let root = lit::<T>(2.0)
            * (base * base
                + lit::<T>(8.0) * mass.m0() * params.re() * params.re() * params.p()
                + lam * (lam - lit::<T>(2.0)))
                .sqrt();
        kratzer_from_root(n, mass, params, root)
    }

    /// D = 1 (s-wave encoding): root = 2√((1+λ)² + 8m₀rₑ²P).
    pub fn kratzer_energy_d1<T: Real>(
        n: u32,
        mass: &MassProfile<T>,
        params: &KratzerParams<T>,
    ) -> T {
        let lam = mass.lambda();
        let base = T::one() + lam;
        let root = lit::<T>(2.0)
            * (base * base + lit::<T>(8.0) * mass.m0() * params.re() * params.re() * params.p())
                .sqrt();
        kratzer_from_root(n, mass, params, root)
    }
}
