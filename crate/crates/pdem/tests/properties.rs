//! Randomized invariants of the model layer, the transformation engine, and
//! the special-function kernel.

use pdem::analytic;
use pdem::model::{
    effective_angular_momentum, lambda1_check, Geometry, KratzerParams, MassProfile,
    PseudoharmonicParams,
};
use pdem::pct;
use pdem::specfun;
use proptest::prelude::*;

fn arb_geometry() -> impl Strategy<Value = Geometry> {
    (1u32..=5, 0u32..=4)
        .prop_filter("D=1 admits only the parity pair l=0,1", |(d, l)| {
            !(*d == 1 && *l > 1)
        })
        .prop_map(|(d, l)| Geometry::new(d, l).unwrap())
}

fn arb_mass() -> impl Strategy<Value = MassProfile<f64>> {
    (0.1f64..10.0, -1.5f64..4.0).prop_map(|(m0, lambda)| MassProfile::new(m0, lambda).unwrap())
}

proptest! {
    /// The effective angular momentum is defined for every admissible
    /// (D, l, λ) and reproduces the centrifugal strength of the original
    /// equation: ν²Λ_D(Λ_D+1) == l_D(l_D+1) − λ(D−1)/2 + 3λ²/16 + λ/4.
    #[test]
    fn effective_angular_momentum_matches_centrifugal_identity(
        geom in arb_geometry(),
        mass in arb_mass(),
    ) {
        let big_lambda = effective_angular_momentum(&geom, &mass).unwrap();
        prop_assert!(big_lambda.is_finite());
        let d = geom.dim() as f64;
        let l_d: f64 = geom.l_index();
        let lam = mass.lambda();
        let nu = mass.nu();
        let lambda_d = big_lambda + (d - 3.0) / 2.0;
        let lhs = nu * nu * lambda_d * (lambda_d + 1.0);
        let rhs = l_d * (l_d + 1.0) - lam * (d - 1.0) / 2.0
            + 3.0 * lam * lam / 16.0
            + lam / 4.0;
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "{lhs} vs {rhs}");
    }

    /// Constant mass leaves the angular label untouched (away from the D=1
    /// mirror branch).
    #[test]
    fn constant_mass_keeps_l(
        d in 2u32..=5,
        l in 0u32..=6,
        m0 in 0.1f64..10.0,
    ) {
        let geom = Geometry::new(d, l).unwrap();
        let mass = MassProfile::new(m0, 0.0).unwrap();
        prop_assert_eq!(
            effective_angular_momentum(&geom, &mass).unwrap(),
            l as f64
        );
    }

    /// The dedicated quadratic-mass shortcut agrees with the general form.
    #[test]
    fn quadratic_mass_shortcut_agrees(geom in arb_geometry(), m0 in 0.1f64..10.0) {
        let mass = MassProfile::new(m0, 2.0).unwrap();
        let general = effective_angular_momentum(&geom, &mass).unwrap();
        let special = lambda1_check::<f64>(&geom).unwrap();
        prop_assert!((general - special).abs() < 1e-13, "{general} vs {special}");
    }

    /// The coordinate map is a strictly increasing bijection of (0, ∞)
    /// fixing the unit radius, and energy mapping is the constant rescale
    /// by the engine's energy scale.
    #[test]
    fn coordinate_map_monotone_and_energy_linear(
        mass in arb_mass(),
        r_lo in 1e-3f64..10.0,
        bump in 1e-6f64..5.0,
        e in -50.0f64..50.0,
    ) {
        let map = pct::build_map(&mass);
        prop_assert!(map.q(r_lo) < map.q(r_lo + bump));
        prop_assert!((map.q(1.0) - 1.0).abs() < 1e-15);
        let mapped = pct::map_energy(&map, e);
        prop_assert!((mapped - map.energy_scale() * e).abs() <= 1e-12 * mapped.abs().max(1.0));
    }

    /// F(−n, b; 0) = 1 exactly for every valid order.
    #[test]
    fn kummer_is_one_at_origin(n in 0u32..40, b in 0.05f64..80.0) {
        prop_assert_eq!(specfun::kummer_terminating(n, b, 0.0).unwrap(), 1.0);
    }

    /// Pseudoharmonic spectra stay positive and climb with the radial
    /// quantum number by the constant spacing 2νC.
    #[test]
    fn pseudoharmonic_spectrum_positive_and_ascending(
        geom in arb_geometry(),
        mass in arb_mass(),
        ve in 0.05f64..20.0,
        re in 0.3f64..3.0,
        n in 0u32..6,
    ) {
        let params = PseudoharmonicParams::new(ve, re, &mass).unwrap();
        let e_n = analytic::pseudoharmonic_energy(n, &geom, &mass, &params).unwrap();
        let e_next = analytic::pseudoharmonic_energy(n + 1, &geom, &mass, &params).unwrap();
        prop_assert!(e_n > 0.0);
        let spacing = 2.0 * mass.nu() * params.c();
        prop_assert!((e_next - e_n - spacing).abs() <= 1e-10 * spacing.max(1.0));
    }

    /// Kratzer levels stay strictly below the dissociation plateau and
    /// ascend with n.
    #[test]
    fn kratzer_spectrum_bounded_and_ascending(
        geom in arb_geometry(),
        mass in arb_mass(),
        ve in 0.05f64..20.0,
        re in 0.3f64..3.0,
        n in 0u32..6,
    ) {
        let params = KratzerParams::new(ve, re, &mass).unwrap();
        let e_n = analytic::kratzer_energy(n, &geom, &mass, &params).unwrap();
        let e_next = analytic::kratzer_energy(n + 1, &geom, &mass, &params).unwrap();
        prop_assert!(e_n < params.p());
        prop_assert!(e_next > e_n);
    }

    /// At constant mass the spectrum depends on (D, l) only through D + 2l:
    /// raising D by two while lowering l by one changes nothing.
    #[test]
    fn interdimensional_degeneracy_at_constant_mass(
        d in 1u32..=3,
        l in 1u32..=4,
        m0 in 0.1f64..10.0,
        ve in 0.05f64..20.0,
        re in 0.3f64..3.0,
        n in 0u32..4,
    ) {
        prop_assume!(!(d == 1 && l > 1));
        let mass = MassProfile::new(m0, 0.0).unwrap();
        let a = Geometry::new(d, l).unwrap();
        let b = Geometry::new(d + 2, l - 1).unwrap();
        let ph = PseudoharmonicParams::new(ve, re, &mass).unwrap();
        let ea = analytic::pseudoharmonic_energy(n, &a, &mass, &ph).unwrap();
        let eb = analytic::pseudoharmonic_energy(n, &b, &mass, &ph).unwrap();
        prop_assert!((ea - eb).abs() <= 1e-12 * ea.abs());
        let kr = KratzerParams::new(ve, re, &mass).unwrap();
        let ea = analytic::kratzer_energy(n, &a, &mass, &kr).unwrap();
        let eb = analytic::kratzer_energy(n, &b, &mass, &kr).unwrap();
        prop_assert!((ea - eb).abs() <= 1e-12 * ea.abs().max(1e-3));
    }
}
