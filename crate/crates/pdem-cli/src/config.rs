//! On-disk run configuration: one JSON file describing a potential, a mass
//! profile, and the (λ, D, l, n) ranges to expand into concrete cases.

use crate::CliError;
use pdem::model::{Case, CaseInput, PotentialInput};
use serde::Deserialize;
use std::path::Path;

/// Numerical knobs, with every default the binary applies in one place.
///
/// | field  | default | meaning                                            |
/// |--------|---------|----------------------------------------------------|
/// | grid_N | 1000    | cells of the coarsest grid; doubles per level      |
/// | levels | 4       | grids in the extrapolation ladder                  |
/// | r_min  | 1e-5    | inner wall of the radial domain                    |
/// | tol    | 1e-6    | relative analytic-vs-numeric pass threshold        |
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    #[serde(rename = "grid_N")]
    pub grid_n: usize,
    pub levels: usize,
    pub r_min: f64,
    pub tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            grid_n: 1000,
            levels: 4,
            r_min: 1e-5,
            tol: 1e-6,
        }
    }
}

/// A family of cases sharing one potential and mass prefactor.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub potential: PotentialInput,
    pub m0: f64,
    pub lambda: Vec<f64>,
    #[serde(rename = "D")]
    pub dims: Vec<u32>,
    pub l: Vec<u32>,
    pub n: Vec<u32>,
    #[serde(default)]
    pub solver: SolverOptions,
}

/// One validated case plus the primitive inputs it came from.
#[derive(Debug, Clone, Copy)]
pub struct ExpandedCase {
    pub case: Case<f64>,
    pub input: CaseInput,
    pub n: u32,
}

impl CaseSpec {
    pub fn load(path: &Path) -> Result<CaseSpec, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(vec![format!("{}: {e}", path.display())]))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(vec![format!("{}: {e}", path.display())]))
    }

    /// Expand the ranges in deterministic (λ, D, l, n) order, validating
    /// every combination and collecting all violations.
    pub fn expand(&self) -> Result<Vec<ExpandedCase>, CliError> {
        let mut errors = Vec::new();
        for (field, empty) in [
            ("lambda", self.lambda.is_empty()),
            ("D", self.dims.is_empty()),
            ("l", self.l.is_empty()),
            ("n", self.n.is_empty()),
        ] {
            if empty {
                errors.push(format!("{field}: range must be non-empty"));
            }
        }
        let mut out = Vec::new();
        for &lambda in &self.lambda {
            for &dim in &self.dims {
                for &l in &self.l {
                    let input = CaseInput {
                        m0: self.m0,
                        lambda,
                        dim,
                        l,
                        potential: self.potential,
                    };
                    match input.validate::<f64>() {
                        Ok(case) => {
                            for &n in &self.n {
                                out.push(ExpandedCase { case, input, n });
                            }
                        }
                        Err(errs) => errors.extend(
                            errs.into_iter()
                                .map(|e| format!("(lambda={lambda}, D={dim}, l={l}): {e}")),
                        ),
                    }
                }
            }
        }
        if errors.is_empty() {
            Ok(out)
        } else {
            Err(CliError::Config(errors))
        }
    }
}
