//! Implementations of the four subcommands.  Every table is buffered as a
//! string and emitted in deterministic case order, so identical configs
//! produce byte-identical output.

use crate::config::{CaseSpec, SolverOptions};
use crate::CliError;
use pdem::analytic::{self, RadialSolution};
use pdem::model::{
    effective_angular_momentum, Case, CaseInput, Potential, PotentialInput, PotentialKind,
};
use pdem::numsolve::{self, GridSchedule};
use pdem::pct;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// 17 significant digits, locale-independent.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn numeric(e: pdem::Error) -> CliError {
    CliError::Numeric(e.to_string())
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Config(vec![format!("{}: {e}", path.display())])),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn analytic_energy(case: &Case<f64>, n: u32) -> pdem::Result<f64> {
    match &case.potential {
        Potential::Pseudoharmonic(p) => {
            analytic::pseudoharmonic_energy(n, &case.geom, &case.mass, p)
        }
        Potential::Kratzer(p) => analytic::kratzer_energy(n, &case.geom, &case.mass, p),
    }
}

fn analytic_state(case: &Case<f64>, n: u32) -> pdem::Result<RadialSolution<f64>> {
    match &case.potential {
        Potential::Pseudoharmonic(p) => {
            analytic::pseudoharmonic_wavefunction(n, &case.geom, &case.mass, p)
        }
        Potential::Kratzer(p) => analytic::kratzer_wavefunction(n, &case.geom, &case.mass, p),
    }
}

fn potential_closure(case: &Case<f64>) -> Box<dyn Fn(f64) -> f64 + Sync + Send> {
    let mass = case.mass;
    match case.potential {
        Potential::Pseudoharmonic(p) => {
            Box::new(move |r| analytic::pseudoharmonic_potential(r, &mass, &p).unwrap())
        }
        Potential::Kratzer(p) => {
            Box::new(move |r| analytic::kratzer_potential(r, &mass, &p).unwrap())
        }
    }
}

// ---------------------------------------------------------------- spectrum

pub fn spectrum(spec: &CaseSpec, out: &Option<PathBuf>) -> Result<i32, CliError> {
    let cases = spec.expand()?;
    let mut table = String::from("kind,D,l,lambda,n,energy\n");
    for c in &cases {
        let e = analytic_energy(&c.case, c.n).map_err(numeric)?;
        writeln!(
            table,
            "{},{},{},{},{},{}",
            c.input.potential.kind,
            c.input.dim,
            c.input.l,
            fmt(c.input.lambda),
            c.n,
            fmt(e)
        )
        .unwrap();
    }
    emit(out, &table)?;
    Ok(0)
}

// ------------------------------------------------------------ wavefunction

pub fn wavefunction(
    spec: &CaseSpec,
    n_flag: Option<u32>,
    l_flag: Option<u32>,
    grid_n_flag: Option<usize>,
    out: &Option<PathBuf>,
) -> Result<i32, CliError> {
    let grid_n = grid_n_flag.unwrap_or(spec.solver.grid_n);
    let single = |name: &str, range: &[u32]| -> Result<u32, CliError> {
        match range {
            [only] => Ok(*only),
            _ => Err(CliError::Config(vec![format!(
                "{name}: pick one state (flag or single-entry range), got {range:?}"
            )])),
        }
    };
    let [lambda] = spec.lambda[..] else {
        return Err(CliError::Config(vec![format!(
            "lambda: wavefunction output needs a single value, got {:?}",
            spec.lambda
        )]));
    };
    let [dim] = spec.dims[..] else {
        return Err(CliError::Config(vec![format!(
            "D: wavefunction output needs a single value, got {:?}",
            spec.dims
        )]));
    };
    let n = match n_flag {
        Some(n) => n,
        None => single("n", &spec.n)?,
    };
    let l = match l_flag {
        Some(l) => l,
        None => single("l", &spec.l)?,
    };
    let input = CaseInput {
        m0: spec.m0,
        lambda,
        dim,
        l,
        potential: spec.potential,
    };
    let case: Case<f64> = input.validate().map_err(CliError::Config)?;
    // normalization quadrature is the only fallible numeric step here
    let state = analytic_state(&case, n).map_err(numeric)?;

    let r_cut = state.tail_radius();
    let dr = r_cut / grid_n as f64;
    let mut table = String::new();
    writeln!(table, "# norm_constant = {}", fmt(state.norm_constant)).unwrap();
    writeln!(
        table,
        "# sum R^2 dr over these samples approximates 1 only to the grid resolution"
    )
    .unwrap();
    table.push_str("r,R\n");
    for i in 0..grid_n {
        // midpoint samples so the row-sum quadrature has no boundary bias
        let r = (i as f64 + 0.5) * dr;
        writeln!(table, "{},{}", fmt(r), fmt(state.eval(r))).unwrap();
    }
    emit(out, &table)?;
    Ok(0)
}

// ---------------------------------------------------------------- verify

struct VerifyGroup {
    input: CaseInput,
    ns: Vec<u32>,
}

struct CaseReport {
    id: String,
    input: CaseInput,
    n: u32,
    expected: f64,
    actual: f64,
    rel_err: f64,
    pass: bool,
    diagnostics: Vec<String>,
}

/// Unit-parameter matrix over both potentials, used when no config is given.
fn default_matrix() -> Vec<VerifyGroup> {
    let mut groups = Vec::new();
    for kind in [PotentialKind::Pseudoharmonic, PotentialKind::Kratzer] {
        for dim in 1..=5u32 {
            for l in 0..=2u32 {
                if dim == 1 && l > 1 {
                    continue;
                }
                for lambda in [0.0, 1.0, 2.0] {
                    groups.push(VerifyGroup {
                        input: CaseInput {
                            m0: 1.0,
                            lambda,
                            dim,
                            l,
                            potential: PotentialInput { kind, ve: 1.0, re: 1.0 },
                        },
                        ns: (0..=3).collect(),
                    });
                }
            }
        }
    }
    groups
}

fn spec_matrix(spec: &CaseSpec) -> Result<Vec<VerifyGroup>, CliError> {
    let cases = spec.expand()?;
    let mut groups: Vec<VerifyGroup> = Vec::new();
    for c in &cases {
        match groups.iter_mut().find(|g| g.input == c.input) {
            Some(g) => g.ns.push(c.n),
            None => groups.push(VerifyGroup {
                input: c.input,
                ns: vec![c.n],
            }),
        }
    }
    Ok(groups)
}

fn case_id(input: &CaseInput, n: u32) -> String {
    format!(
        "{}-D{}-l{}-lam{}-n{}",
        input.potential.kind, input.dim, input.l, input.lambda, n
    )
}

fn verify_group(
    group: &VerifyGroup,
    solver: &SolverOptions,
    inject_fault: bool,
) -> Result<Vec<CaseReport>, CliError> {
    let case: Case<f64> = group.input.validate().map_err(CliError::Config)?;
    let potential = potential_closure(&case);
    let k = (*group.ns.iter().max().unwrap() + 1) as usize;

    let r_max =
        numsolve::suggest_r_max(&case.geom, &case.mass, &potential, k).map_err(numeric)?;
    let schedule = GridSchedule {
        r_min: solver.r_min,
        r_max,
        base_cells: solver.grid_n.max((r_max / 0.06).ceil() as usize),
        levels: solver.levels,
    };
    let refined =
        numsolve::refine(&schedule, &case.geom, &case.mass, &potential, k).map_err(numeric)?;

    let map = pct::build_map(&case.mass);
    let big_lambda = effective_angular_momentum(&case.geom, &case.mass).map_err(numeric)?;
    let fault = if inject_fault { 1e-3 } else { 0.0 };
    let radii: Vec<f64> = (0..20).map(|i| 0.1 * 1.275f64.powi(i)).collect();
    let angular_res = pct::angular_map_residual_closed_form(&map, &case.geom, &case.mass, &radii)
        .map_err(numeric)?;

    let mut reports = Vec::new();
    for &n in &group.ns {
        let mut diagnostics = Vec::new();
        let direct = analytic_energy(&case, n).map_err(numeric)?;
        let reference = analytic::constant_mass_reference(
            case.potential.kind(),
            n,
            group.input.dim,
            big_lambda + fault,
            case.potential.ve(),
            case.potential.re(),
        )
        .map_err(numeric)?;
        let expected = pct::map_energy(&map, reference.energy);
        let actual = refined[n as usize].extrapolated;
        let rel_err = (actual - expected).abs() / expected.abs().max(1.0);
        if rel_err > solver.tol {
            diagnostics.push(format!(
                "energy: numeric {actual:.12e} vs closed form {expected:.12e} (rel {rel_err:.2e})"
            ));
        }
        // the two derivation routes must agree independently of the solver
        if !inject_fault && (expected - direct).abs() > 1e-12 * direct.abs().max(1.0) {
            diagnostics.push(format!(
                "transformed energy {expected:.12e} disagrees with direct formula {direct:.12e}"
            ));
        }
        if angular_res > 1e-10 {
            diagnostics.push(format!("angular matching residual {angular_res:.2e}"));
        }
        // constant-mass degeneracy partner (D+2, l−1)
        if group.input.lambda == 0.0 && group.input.l >= 1 {
            let partner = CaseInput {
                dim: group.input.dim + 2,
                l: group.input.l - 1,
                ..group.input
            };
            let partner_case: Case<f64> = partner.validate().map_err(CliError::Config)?;
            let partner_e = analytic_energy(&partner_case, n).map_err(numeric)?;
            if (partner_e - direct).abs() > 1e-12 * direct.abs().max(1.0) {
                diagnostics.push(format!(
                    "degeneracy: (D+2, l-1) partner gives {partner_e:.12e} vs {direct:.12e}"
                ));
            }
        }
        reports.push(CaseReport {
            id: case_id(&group.input, n),
            input: group.input,
            n,
            expected,
            actual,
            rel_err,
            pass: diagnostics.is_empty(),
            diagnostics,
        });
    }
    Ok(reports)
}

pub fn verify(
    config: Option<&Path>,
    grid_n_flag: Option<usize>,
    tol_flag: Option<f64>,
    json: bool,
    inject_fault: bool,
    out: &Option<PathBuf>,
) -> Result<i32, CliError> {
    let (groups, mut solver) = match config {
        Some(path) => {
            let spec = CaseSpec::load(path)?;
            (spec_matrix(&spec)?, spec.solver)
        }
        None => (default_matrix(), SolverOptions::default()),
    };
    // flags win over the config file
    if let Some(g) = grid_n_flag {
        solver.grid_n = g;
    }
    if let Some(t) = tol_flag {
        solver.tol = t;
    }

    let results: Vec<Result<Vec<CaseReport>, CliError>> = groups
        .par_iter()
        .map(|g| verify_group(g, &solver, inject_fault))
        .collect();
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }

    let all_pass = reports.iter().all(|r| r.pass);
    let mut table = String::new();
    if json {
        let cases: Vec<serde_json::Value> = reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "id": r.id,
                    "kind": r.input.potential.kind,
                    "params": {
                        "m0": r.input.m0,
                        "lambda": r.input.lambda,
                        "D": r.input.dim,
                        "l": r.input.l,
                        "Ve": r.input.potential.ve,
                        "re": r.input.potential.re,
                        "n": r.n,
                    },
                    "expected": r.expected,
                    "actual": r.actual,
                    "rel_err": r.rel_err,
                    "pass": r.pass,
                })
            })
            .collect();
        table = serde_json::to_string_pretty(&serde_json::json!({ "cases": cases })).unwrap();
        table.push('\n');
    } else {
        for r in &reports {
            let status = if r.pass { "PASS" } else { "FAIL" };
            writeln!(table, "{status} {} rel_err={:.3e}", r.id, r.rel_err).unwrap();
            for d in &r.diagnostics {
                writeln!(table, "     {d}").unwrap();
            }
        }
        writeln!(
            table,
            "{}/{} cases passed",
            reports.iter().filter(|r| r.pass).count(),
            reports.len()
        )
        .unwrap();
    }
    emit(out, &table)?;
    Ok(if all_pass { 0 } else { 1 })
}

// -------------------------------------------------------------- degeneracy

pub fn degeneracy(spec: &CaseSpec, out: &Option<PathBuf>) -> Result<i32, CliError> {
    if spec.lambda.iter().any(|&l| l != 0.0) {
        return Err(CliError::Config(vec![format!(
            "lambda: the inter-dimensional degeneracy holds only at lambda = 0, got {:?}",
            spec.lambda
        )]));
    }
    let cases = spec.expand()?;
    let mut table =
        String::from("kind,D,l,n,energy,partner_D,partner_l,partner_energy,rel_diff\n");
    for c in cases.iter().filter(|c| c.input.l >= 1) {
        let e = analytic_energy(&c.case, c.n).map_err(numeric)?;
        let partner_input = CaseInput {
            dim: c.input.dim + 2,
            l: c.input.l - 1,
            ..c.input
        };
        let partner: Case<f64> = partner_input.validate().map_err(CliError::Config)?;
        let pe = analytic_energy(&partner, c.n).map_err(numeric)?;
        writeln!(
            table,
            "{},{},{},{},{},{},{},{},{}",
            c.input.potential.kind,
            c.input.dim,
            c.input.l,
            c.n,
            fmt(e),
            partner_input.dim,
            partner_input.l,
            fmt(pe),
            fmt((pe - e).abs() / e.abs().max(1.0)),
        )
        .unwrap();
    }
    emit(out, &table)?;
    Ok(0)
}
