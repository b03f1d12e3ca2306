//! Built-in grids of (type, lattice, genus).

use hitchin_core::{CartanType, LatticeSpec};
use rayon::prelude::*;

use crate::report::{run, Report};
use crate::spec::{RunSpec, SweepSpec};
use crate::CliError;

/// Simple types of rank ≤ 4 up to isomorphism.
pub const RANK_FOUR_TYPES: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"];

pub const PRESETS: &[&str] = &["acceptance", "small", "exceptional"];

fn grid(types: &[&str], genera: &[u32]) -> Vec<(CartanType, LatticeSpec, u32)> {
    let mut out = Vec::new();
    for t in types {
        for lattice in [LatticeSpec::SimplyConnected, LatticeSpec::Adjoint] {
            for &g in genera {
                out.push((t.parse().expect("built-in type"), lattice.clone(), g));
            }
        }
    }
    out
}

pub fn preset(name: &str) -> Result<Vec<(CartanType, LatticeSpec, u32)>, CliError> {
    match name {
        "acceptance" => Ok(grid(RANK_FOUR_TYPES, &[2, 3, 4])),
        "small" => Ok(grid(&["A1", "A2", "B2", "G2"], &[2])),
        "exceptional" => Ok(grid(&["G2", "F4", "E6", "E7", "E8"], &[2])),
        other => Err(CliError::Usage(format!(
            "sweep: unknown preset `{other}` (available: {})",
            PRESETS.join(", ")
        ))),
    }
}

/// Runs every grid point in parallel; results keep grid order.
pub fn run_sweep(sweep: &SweepSpec) -> Result<Vec<Result<Report, CliError>>, CliError> {
    let specs: Vec<RunSpec> = preset(&sweep.preset)?
        .into_iter()
        .map(|(cartan, lattice, genus)| RunSpec {
            cartan,
            lattice,
            genus,
            enumeration_cap: sweep.enumeration_cap,
            verify: sweep.verify,
            output_format: sweep.output_format,
        })
        .collect();
    Ok(specs.par_iter().map(run).collect())
}
