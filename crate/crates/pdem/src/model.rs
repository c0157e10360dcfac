//! Physical inputs, derived constants, and the effective angular momentum
//! map, with validation.
//!
//! Everything here is an immutable value type: derived quantities (η, C, P,
//! a, Λ) are computed at construction and never mutated, so bundles can be
//! shared freely across threads.  Atomic units (ħ = e = 1) throughout.

use serde::{Deserialize, Serialize};

use crate::{lit, Error, Real, Result};

/// Power-law effective mass m(r) = m₀ rᵞ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassProfile<T> {
    m0: T,
    lambda: T,
}

impl<T: Real> MassProfile<T> {
    /// Requires m₀ > 0 and λ > −2 so that the mapping exponent
    /// ν = 1 + λ/2 is positive and q(r) = r^ν is monotone on (0, ∞).
    pub fn new(m0: T, lambda: T) -> Result<Self> {
        if !(m0 > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "m0 must be positive, got {:?}",
                m0
            )));
        }
        if !(lambda > lit::<T>(-2.0)) {
            return Err(Error::InvalidLambda {
                lambda: lambda.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { m0, lambda })
    }

    pub fn m0(&self) -> T {
        self.m0
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// Mapping exponent ν = 1 + λ/2 (always positive).
    pub fn nu(&self) -> T {
        T::one() + self.lambda / lit::<T>(2.0)
    }

    /// m(r) = m₀ rᵞ for r > 0.
    pub fn mass_at(&self, r: T) -> T {
        self.m0 * r.powf(self.lambda)
    }
}

/// Spatial dimension and angular momentum quantum number.
///
/// The radial equation sees only the shifted index l_D = l + (D−3)/2, which
/// may be half-integer.  D = 1 is encoded on the half-line through l = 1 or
/// l = 0, giving l_D = 0 and −1 respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Geometry {
    dim: u32,
    l: u32,
}

impl Geometry {
    pub fn new(dim: u32, l: u32) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidParameter(
                "dimension D must be at least 1".into(),
            ));
        }
        // On the half-line the only angular labels are the parity pair
        // l_D = −1 (even) and l_D = 0 (odd), encoded as l = 0 and l = 1.
        if dim == 1 && l > 1 {
            return Err(Error::InvalidParameter(format!(
                "D = 1 admits only l = 0 or 1 (parity encoding), got l = {}",
                l
            )));
        }
        Ok(Self { dim, l })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// l_D = l + (D−3)/2.
    pub fn l_index<T: Real>(&self) -> T {
        T::from_u32(self.l).unwrap() + (T::from_u32(self.dim).unwrap() - lit::<T>(3.0)) / lit::<T>(2.0)
    }

    /// l_D (l_D + 1), the centrifugal strength of the radial equation.
    pub fn centrifugal<T: Real>(&self) -> T {
        let ld = self.l_index::<T>();
        ld * (ld + T::one())
    }
}

/// Effective angular momentum Λ(l) of the constant-mass reference problem.
///
/// Λ = −(D−2)/2 + √[(D+2l−2)² + (2+λ)² − 2(2+λD)] / (2+λ).
///
/// Rejects (does not clamp) combinations with a negative radicand: those
/// have no real constant-mass image.
pub fn effective_angular_momentum<T: Real>(geom: &Geometry, mass: &MassProfile<T>) -> Result<T> {
    let d = T::from_u32(geom.dim()).unwrap();
    let l = T::from_u32(geom.l()).unwrap();
    let two = lit::<T>(2.0);
    let lam = mass.lambda();
    let two_lam = two + lam;
    let base = d + two * l - two;
    let radicand = base * base + two_lam * two_lam - two * (two + lam * d);
    if radicand < T::zero() {
        return Err(Error::NegativeRadicand {
            radicand: radicand.to_f64().unwrap_or(f64::NAN),
            dim: geom.dim(),
            l: geom.l(),
        });
    }
    Ok(-(d - two) / two + radicand.sqrt() / two_lam)
}

/// λ = 2 special case Λ₁(l) = −(D−2)/2 + √[(D+2l−2)² − 4(D−3)] / 4.
///
/// Must agree with [`effective_angular_momentum`] at λ = 2 for all valid
/// (D, l); kept as an independent arithmetic route for that check.
pub fn lambda1_check<T: Real>(geom: &Geometry) -> Result<T> {
    let d = T::from_u32(geom.dim()).unwrap();
    let l = T::from_u32(geom.l()).unwrap();
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let base = d + two * l - two;
    let radicand = base * base - four * (d - lit::<T>(3.0));
    if radicand < T::zero() {
        return Err(Error::NegativeRadicand {
            radicand: radicand.to_f64().unwrap_or(f64::NAN),
            dim: geom.dim(),
            l: geom.l(),
        });
    }
    Ok(-(d - two) / two + radicand.sqrt() / four)
}

/// Pseudoharmonic potential parameters with their derived constants.
///
/// Vₑ = κrₑ²/8, η = √κ/2 = √(2Vₑ)/rₑ and C = νη/m₀, equivalently
/// η = 2m₀C/(2+λ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoharmonicParams<T> {
    ve: T,
    re: T,
    kappa: T,
    eta: T,
    c: T,
}

impl<T: Real> PseudoharmonicParams<T> {
    pub fn new(ve: T, re: T, mass: &MassProfile<T>) -> Result<Self> {
        if !(ve > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "Ve must be positive, got {:?}",
                ve
            )));
        }
        if !(re > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "re must be positive, got {:?}",
                re
            )));
        }
        let eight = lit::<T>(8.0);
        let kappa = eight * ve / (re * re);
        let eta = (lit::<T>(2.0) * ve).sqrt() / re;
        let c = mass.nu() * eta / mass.m0();
        Ok(Self {
            ve,
            re,
            kappa,
            eta,
            c,
        })
    }

    pub fn ve(&self) -> T {
        self.ve
    }
    pub fn re(&self) -> T {
        self.re
    }
    pub fn kappa(&self) -> T {
        self.kappa
    }
    pub fn eta(&self) -> T {
        self.eta
    }
    pub fn c(&self) -> T {
        self.c
    }
}

/// Modified Kratzer potential parameters with their derived constants.
///
/// P = (2+λ)² Vₑ / (4m₀) and a = 1/(4Vₑrₑ).  Vₑ = 0 is admitted as the
/// degenerate free limit (P = 0, every energy 0); `a` is then infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KratzerParams<T> {
    ve: T,
    re: T,
    p: T,
}

impl<T: Real> KratzerParams<T> {
    pub fn new(ve: T, re: T, mass: &MassProfile<T>) -> Result<Self> {
        if !(ve >= T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "Ve must be non-negative, got {:?}",
                ve
            )));
        }
        if !(re > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "re must be positive, got {:?}",
                re
            )));
        }
        let two_lam = lit::<T>(2.0) + mass.lambda();
        let p = two_lam * two_lam * ve / (lit::<T>(4.0) * mass.m0());
        Ok(Self { ve, re, p })
    }

    pub fn ve(&self) -> T {
        self.ve
    }
    pub fn re(&self) -> T {
        self.re
    }
    pub fn p(&self) -> T {
        self.p
    }

    /// a = 1/(4Vₑrₑ); infinite in the Vₑ = 0 limit.
    pub fn a(&self) -> T {
        T::one() / (lit::<T>(4.0) * self.ve * self.re)
    }

    /// Pseudo-Coulomb wave number of the (n, Λ) reference state,
    /// k = 1 / (a (1 + 2n + √[(D+2Λ−2)² + 8Vₑrₑ²])).
    pub fn wave_number(&self, n: u32, geom: &Geometry, big_lambda: T) -> T {
        let d = T::from_u32(geom.dim()).unwrap();
        let two = lit::<T>(2.0);
        let base = d + two * big_lambda - two;
        let chi = (base * base + lit::<T>(8.0) * self.ve * self.re * self.re).sqrt();
        let denom = T::one() + two * T::from_u32(n).unwrap() + chi;
        T::one() / (self.a() * denom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    Pseudoharmonic,
    Kratzer,
}

impl std::fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PotentialKind::Pseudoharmonic => write!(f, "pseudoharmonic"),
            PotentialKind::Kratzer => write!(f, "kratzer"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential<T> {
    Pseudoharmonic(PseudoharmonicParams<T>),
    Kratzer(KratzerParams<T>),
}

impl<T: Real> Potential<T> {
    pub fn kind(&self) -> PotentialKind {
        match self {
            Potential::Pseudoharmonic(_) => PotentialKind::Pseudoharmonic,
            Potential::Kratzer(_) => PotentialKind::Kratzer,
        }
    }

    pub fn ve(&self) -> T {
        match self {
            Potential::Pseudoharmonic(p) => p.ve(),
            Potential::Kratzer(p) => p.ve(),
        }
    }

    pub fn re(&self) -> T {
        match self {
            Potential::Pseudoharmonic(p) => p.re(),
            Potential::Kratzer(p) => p.re(),
        }
    }
}

/// A fully validated parameter bundle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case<T> {
    pub mass: MassProfile<T>,
    pub geom: Geometry,
    pub potential: Potential<T>,
}

/// On-disk form of a parameter bundle.
///
/// Only the primitive inputs are stored; every derived quantity is
/// recomputed on load and never trusted from the file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseInput {
    pub m0: f64,
    pub lambda: f64,
    #[serde(rename = "D")]
    pub dim: u32,
    pub l: u32,
    pub potential: PotentialInput,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialInput {
    pub kind: PotentialKind,
    #[serde(rename = "Ve")]
    pub ve: f64,
    #[serde(rename = "re")]
    pub re: f64,
}

impl CaseInput {
    /// Check every invariant and populate the derived fields.
    ///
    /// Collects all violations instead of stopping at the first, each
    /// message naming the offending field.
    pub fn validate<T: Real>(&self) -> std::result::Result<Case<T>, Vec<String>> {
        let mut errors = Vec::new();
        if !(self.m0 > 0.0) {
            errors.push(format!("m0: must be positive, got {}", self.m0));
        }
        if !(self.lambda > -2.0) {
            errors.push(format!(
                "lambda: nu = 1 + lambda/2 must be positive, got lambda = {}",
                self.lambda
            ));
        }
        if self.dim < 1 {
            errors.push("D: must be at least 1".into());
        }
        if self.dim == 1 && self.l > 1 {
            errors.push(format!(
                "l: D = 1 admits only the parity labels 0 and 1, got {}",
                self.l
            ));
        }
        match self.potential.kind {
            PotentialKind::Pseudoharmonic => {
                if !(self.potential.ve > 0.0) {
                    errors.push(format!("Ve: must be positive, got {}", self.potential.ve));
                }
            }
            PotentialKind::Kratzer => {
                if !(self.potential.ve >= 0.0) {
                    errors.push(format!(
                        "Ve: must be non-negative, got {}",
                        self.potential.ve
                    ));
                }
            }
        }
        if !(self.potential.re > 0.0) {
            errors.push(format!("re: must be positive, got {}", self.potential.re));
        }
        if !errors.is_empty() {
            return Err(errors);
        }

        let mass = MassProfile::new(lit::<T>(self.m0), lit::<T>(self.lambda))
            .expect("checked above");
        let geom = Geometry::new(self.dim, self.l).expect("checked above");
        // Λ must exist for the bundle to be usable at all.
        if let Err(e) = effective_angular_momentum(&geom, &mass) {
            errors.push(format!("(D, l, lambda): {}", e));
            return Err(errors);
        }
        let potential = match self.potential.kind {
            PotentialKind::Pseudoharmonic => Potential::Pseudoharmonic(
                PseudoharmonicParams::new(lit::<T>(self.potential.ve), lit::<T>(self.potential.re), &mass)
                    .expect("checked above"),
            ),
            PotentialKind::Kratzer => Potential::Kratzer(
                KratzerParams::new(lit::<T>(self.potential.ve), lit::<T>(self.potential.re), &mass)
                    .expect("checked above"),
            ),
        };
        Ok(Case {
            mass,
            geom,
            potential,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(d: u32, l: u32) -> Geometry {
        Geometry::new(d, l).unwrap()
    }

    fn mass(m0: f64, lambda: f64) -> MassProfile<f64> {
        MassProfile::new(m0, lambda).unwrap()
    }

    #[test]
    fn effective_angular_momentum_spot_values() {
        // constant-mass limit: Λ = l
        let lam = effective_angular_momentum(&geom(3, 0), &mass(1.0, 0.0)).unwrap();
        assert_eq!(lam, 0.0);
        let lam = effective_angular_momentum(&geom(3, 1), &mass(1.0, 2.0)).unwrap();
        assert!((lam - 0.25).abs() < 1e-15);
        let lam = effective_angular_momentum(&geom(2, 0), &mass(1.0, 1.0)).unwrap();
        assert!((lam - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lambda_zero_reduces_to_l_exactly() {
        for d in 1..=6u32 {
            for l in 0..=8u32 {
                if d == 1 && l > 1 {
                    continue;
                }
                let lam = effective_angular_momentum(&geom(d, l), &mass(2.5, 0.0)).unwrap();
                // The square root picks the branch with Λ + (D−3)/2 ≥ −1/2,
                // so D=1, l=0 (which encodes l_D = −1) lands on the mirror
                // value 1 − both give the same centrifugal l_D(l_D+1) = 0.
                let expected = if d == 1 && l == 0 { 1.0 } else { l as f64 };
                assert_eq!(lam, expected, "D={d} l={l}");
            }
        }
    }

    #[test]
    fn lambda1_special_case() {
        assert!((lambda1_check::<f64>(&geom(3, 1)).unwrap() - 0.25).abs() < 1e-15);
        assert!((lambda1_check::<f64>(&geom(3, 0)).unwrap() + 0.25).abs() < 1e-15);
        assert!((lambda1_check::<f64>(&geom(2, 0)).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lambda1_matches_general_formula_at_lambda_two() {
        let m = mass(1.0, 2.0);
        for d in 1..=6u32 {
            for l in 0..=6u32 {
                if d == 1 && l > 1 {
                    continue;
                }
                let g = geom(d, l);
                let general = effective_angular_momentum(&g, &m).unwrap();
                let special = lambda1_check::<f64>(&g).unwrap();
                assert!(
                    (general - special).abs() < 1e-14,
                    "D={d} l={l}: {general} vs {special}"
                );
            }
        }
    }

    #[test]
    fn monotone_in_l() {
        for d in 1..=5u32 {
            for lambda in [-1.5, 0.0, 0.7, 2.0, 3.0] {
                let m = mass(1.0, lambda);
                let mut prev = f64::NEG_INFINITY;
                for l in 0..=6u32 {
                    let Ok(g) = Geometry::new(d, l) else { continue };
                    if let Ok(v) = effective_angular_momentum(&g, &m) {
                        // D=1: l = 0 and l = 1 encode the degenerate pair
                        // l_D = −1, 0 and share the same Λ
                        if d == 1 && l == 1 {
                            assert_eq!(v, prev, "D=1 parity pair split");
                        } else {
                            assert!(v > prev, "D={d} lambda={lambda} l={l}");
                        }
                        prev = v;
                    }
                }
            }
        }
    }

    #[test]
    fn one_dimensional_l_index_encoding() {
        assert_eq!(geom(1, 1).l_index::<f64>(), 0.0);
        assert_eq!(geom(1, 0).l_index::<f64>(), -1.0);
        // beyond the parity pair there is nothing to label on the half-line
        assert!(Geometry::new(1, 2).is_err());
    }

    #[test]
    fn pseudoharmonic_derived_constants() {
        let m = mass(1.0, 0.0);
        let p = PseudoharmonicParams::new(1.0, 1.0, &m).unwrap();
        // η = √(2Vₑ)/rₑ and the κ identity Vₑ = κrₑ²/8
        assert!((p.eta() - 2.0f64.sqrt()).abs() < 1e-15);
        assert!((p.ve() - p.kappa() * p.re() * p.re() / 8.0).abs() < 1e-15);
        // η = 2 m₀ C / (2+λ)
        assert!((p.eta() - 2.0 * m.m0() * p.c() / (2.0 + m.lambda())).abs() < 1e-15);
    }

    #[test]
    fn kratzer_derived_constants() {
        let m = mass(2.0, 1.0);
        let p = KratzerParams::new(3.0, 0.5, &m).unwrap();
        assert!((p.p() - 9.0 * 3.0 / 8.0).abs() < 1e-15);
        assert!((p.a() - 1.0 / 6.0).abs() < 1e-15);
        // λ = 0: P = Vₑ/m₀
        let m0 = mass(2.0, 0.0);
        let p0 = KratzerParams::new(3.0, 0.5, &m0).unwrap();
        assert!((p0.p() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn validation_reports_offending_fields() {
        let input = CaseInput {
            m0: -1.0,
            lambda: -2.0,
            dim: 3,
            l: 0,
            potential: PotentialInput {
                kind: PotentialKind::Pseudoharmonic,
                ve: 1.0,
                re: 1.0,
            },
        };
        let errs = input.validate::<f64>().unwrap_err();
        assert!(errs.iter().any(|e| e.starts_with("m0:")));
        assert!(errs.iter().any(|e| e.starts_with("lambda:")));
    }

    #[test]
    fn validation_accepts_unit_bundle() {
        let input = CaseInput {
            m0: 1.0,
            lambda: 0.0,
            dim: 3,
            l: 0,
            potential: PotentialInput {
                kind: PotentialKind::Pseudoharmonic,
                ve: 1.0,
                re: 1.0,
            },
        };
        let case = input.validate::<f64>().unwrap();
        match case.potential {
            Potential::Pseudoharmonic(p) => {
                assert!((p.eta() - 2.0f64.sqrt()).abs() < 1e-15)
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn radicand_boundary_is_exact() {
        // The radicand equals (λ-(D-2))² + [(D+2l-2)² - (D-2)²], so it is
        // never negative for valid inputs; it touches zero at λ = D-2, l = 0.
        let m = mass(1.0, 2.0);
        let g = geom(4, 0);
        let lam = effective_angular_momentum(&g, &m).unwrap();
        assert_eq!(lam, -1.0);
    }
}
