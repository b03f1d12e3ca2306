//! The full pipeline for one group and its serialized report.

use std::fmt::Write as _;
use std::time::Instant;

use hitchin_core::characters;
use hitchin_core::fiber::{self, FiberReport};
use hitchin_core::prym::{self, DimensionReport, Intermediates, StrategyUsed};
use hitchin_core::{cover_stats, CoverStats, LatticeSpec, RootDatum, WeylGroup};
use serde::{Deserialize, Serialize};

use crate::spec::RunSpec;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub spec: SpecEcho,
    pub datum: DatumSummary,
    pub cover: CoverSummary,
    pub dimension: DimensionSummary,
    pub fiber: FiberSummary,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecEcho {
    #[serde(rename = "type")]
    pub cartan: String,
    pub lattice: String,
    /// Rows of a custom basis, entries as `p` or `p/q`.
    pub lattice_basis: Option<Vec<Vec<String>>>,
    pub central_rank: usize,
    pub genus: u32,
    pub max_enumeration: u64,
    pub verify: bool,
    pub format: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub component: usize,
    pub long: bool,
    pub size: usize,
    pub representative: usize,
    pub representative_root: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSummary {
    pub rank: usize,
    pub semisimple_rank: usize,
    pub central_rank: usize,
    pub components: Vec<String>,
    pub dim_g: usize,
    pub roots: usize,
    pub positive_roots: usize,
    pub weyl_order: String,
    pub weyl_enumerated: bool,
    /// Invariant factors of `π₁` of the derived group.
    pub derived_fundamental_group: Vec<i64>,
    pub orbits: Vec<OrbitSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSummary {
    pub deg_k: i64,
    pub ram: i64,
    pub n: Vec<i64>,
    pub branch_fiber_size: Option<String>,
    pub ramification_points: String,
    pub spectral_genus: String,
    pub d: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntermediateSummary {
    pub trivial_lefschetz: i64,
    pub reflection_lefschetz: Vec<i64>,
    pub trivial_h1: i64,
    pub reflection_h1: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedSummary {
    pub m: i64,
    pub intermediates: IntermediateSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionSummary {
    pub strategy: String,
    pub m: i64,
    pub dim_p: i64,
    pub dim_m: i64,
    pub closed_form_m: i64,
    pub intermediates: IntermediateSummary,
    pub strategy_agreement: Option<bool>,
    pub enumerated: Option<EnumeratedSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pgl2Summary {
    pub components: u32,
    pub per_component_fiber: String,
    pub lambda_quotient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSummary {
    pub injective: bool,
    pub reason: String,
    pub type_condition: Option<String>,
    pub exceptional_roots: Vec<usize>,
    pub a: usize,
    pub d: String,
    pub bound_exponent: String,
    /// Decimal, or `2^N` when too large to print.
    pub bound: String,
    pub pgl2_exact: Option<Pgl2Summary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub total_us: u64,
}

fn small(x: i128) -> Result<i64, CliError> {
    i64::try_from(x).map_err(|_| CliError::Core(hitchin_core::Error::Overflow("report field")))
}

fn smalls(xs: &[i128]) -> Result<Vec<i64>, CliError> {
    xs.iter().map(|&x| small(x)).collect()
}

fn echo(spec: &RunSpec) -> SpecEcho {
    let lattice_basis = match &spec.lattice {
        LatticeSpec::Custom(rows) => Some(rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()),
        _ => None,
    };
    SpecEcho {
        cartan: spec.cartan.to_string(),
        lattice: spec.lattice.name().to_string(),
        lattice_basis,
        central_rank: spec.cartan.central_rank(),
        genus: spec.genus,
        max_enumeration: spec.enumeration_cap,
        verify: spec.verify,
        format: spec.output_format.as_str().to_string(),
    }
}

fn datum_summary(datum: &RootDatum, group: &WeylGroup<'_>) -> DatumSummary {
    DatumSummary {
        rank: datum.rank(),
        semisimple_rank: datum.cartan_type().semisimple_rank(),
        central_rank: datum.central_rank(),
        components: datum.cartan_type().components().iter().map(ToString::to_string).collect(),
        dim_g: datum.dim_g(),
        roots: datum.root_count(),
        positive_roots: datum.positive_count(),
        weyl_order: group.order().to_string(),
        weyl_enumerated: group.is_enumerated(),
        derived_fundamental_group: datum.derived_fundamental_group(),
        orbits: group
            .root_orbits()
            .iter()
            .map(|o| OrbitSummary {
                component: o.component,
                long: o.long,
                size: o.len(),
                representative: o.representative,
                representative_root: datum.roots()[o.representative].clone(),
            })
            .collect(),
    }
}

fn cover_summary(c: &CoverStats) -> Result<CoverSummary, CliError> {
    Ok(CoverSummary {
        deg_k: small(c.deg_k())?,
        ram: small(c.ram_count())?,
        n: smalls(c.n())?,
        branch_fiber_size: c.branch_fiber_size().map(|x| x.to_string()),
        ramification_points: c.ramification_points().to_string(),
        spectral_genus: c.spectral_genus().to_string(),
        d: c.d().to_string(),
    })
}

fn intermediate_summary(i: &Intermediates) -> Result<IntermediateSummary, CliError> {
    Ok(IntermediateSummary {
        trivial_lefschetz: small(i.trivial_lefschetz)?,
        reflection_lefschetz: smalls(&i.reflection_lefschetz)?,
        trivial_h1: small(i.trivial_h1)?,
        reflection_h1: smalls(&i.reflection_h1)?,
    })
}

fn dimension_summary(r: &DimensionReport) -> Result<DimensionSummary, CliError> {
    let strategy = match r.strategy {
        StrategyUsed::Analytic => "analytic",
        StrategyUsed::Enumerated => "enumerated",
        StrategyUsed::Both => "both",
    };
    Ok(DimensionSummary {
        strategy: strategy.to_string(),
        m: small(r.m)?,
        dim_p: small(r.dim_p)?,
        dim_m: small(r.dim_m)?,
        closed_form_m: small(r.closed_form_m)?,
        intermediates: intermediate_summary(&r.intermediates)?,
        strategy_agreement: r.strategy_agreement,
        enumerated: match &r.enumerated {
            Some(e) => Some(EnumeratedSummary {
                m: small(e.m)?,
                intermediates: intermediate_summary(&e.intermediates)?,
            }),
            None => None,
        },
    })
}

fn fiber_summary(f: &FiberReport) -> FiberSummary {
    FiberSummary {
        injective: f.injective,
        reason: f.reason.as_str().to_string(),
        type_condition: f.type_condition.map(|r| r.as_str().to_string()),
        exceptional_roots: f.exceptional_roots.clone(),
        a: f.a,
        d: f.d.to_string(),
        bound_exponent: f.bound.exponent.to_string(),
        bound: f.bound.to_string(),
        pgl2_exact: f.pgl2_exact.map(|p| Pgl2Summary {
            components: p.components,
            per_component_fiber: p.per_component_fiber.to_string(),
            lambda_quotient: p.lambda_quotient.to_string(),
        }),
    }
}

/// Fails when a verified run disagrees, with both sets of values in the message.
pub fn check_agreement(report: &Report) -> Result<(), CliError> {
    let d = &report.dimension;
    if d.strategy_agreement != Some(false) {
        return Ok(());
    }
    let mut dump = String::new();
    let _ = writeln!(dump, "{} ({}), genus {}", report.spec.cartan, report.spec.lattice, report.spec.genus);
    let _ = writeln!(dump, "  analytic:   M = {}, {:?}", d.m, d.intermediates);
    if let Some(e) = &d.enumerated {
        let _ = writeln!(dump, "  enumerated: M = {}, {:?}", e.m, e.intermediates);
    }
    Err(CliError::Verification(dump))
}

/// Analytic pipeline; with `verify`, also enumerates `W` (when `|W| ≤ cap`)
/// and recomputes every quantity by full summation.
pub fn run(spec: &RunSpec) -> Result<Report, CliError> {
    let start = Instant::now();
    let datum = RootDatum::new(spec.cartan.clone(), spec.lattice.clone())?;
    let cap = if spec.verify { spec.enumeration_cap as u128 } else { 1 };
    let group = WeylGroup::generate(&datum, cap)?;
    let cover = cover_stats(&datum, &group, spec.genus)?;
    let dimension = prym::prym_dimension(&datum, &group, spec.genus, spec.verify)?;
    let fiber = fiber::fiber_bound(&datum, &group, spec.genus)?;

    if spec.verify && group.is_enumerated() {
        datum.validate()?;
        let h1 = characters::h1_character(&group, &cover)?;
        let values = h1.materialize()?;
        if values.first() != Some(&(2 * cover.spectral_genus())) {
            return Err(CliError::Verification(format!(
                "χ_H1(1) = {:?} but 2·g̃ = {}",
                values.first(),
                2 * cover.spectral_genus()
            )));
        }
    }

    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        spec: echo(spec),
        datum: datum_summary(&datum, &group),
        cover: cover_summary(&cover)?,
        dimension: dimension_summary(&dimension)?,
        fiber: fiber_summary(&fiber),
        timing: Timing { total_us: 0 },
    };
    check_agreement(&report)?;
    report.timing.total_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let d = &self.datum;
        let _ = writeln!(
            s,
            "group       {} (lattice {}, central rank {})",
            self.spec.cartan, self.spec.lattice, self.spec.central_rank
        );
        let _ = writeln!(s, "genus       {}", self.spec.genus);
        let _ = writeln!(
            s,
            "datum       rank {}, dim G {}, |R| {}, |W| {}, π₁(G,G) {:?}",
            d.rank, d.dim_g, d.roots, d.weyl_order, d.derived_fundamental_group
        );
        for (j, o) in d.orbits.iter().enumerate() {
            let _ = writeln!(
                s,
                "  orbit {j}   component {}, {} roots, size {}, representative {:?}",
                o.component,
                if o.long { "long" } else { "short" },
                o.size,
                o.representative_root
            );
        }
        let c = &self.cover;
        let _ = writeln!(
            s,
            "cover       |Ram| {}, n {:?}, branch fibre {}, g̃ {}, d {}",
            c.ram,
            c.n,
            c.branch_fiber_size.as_deref().unwrap_or("-"),
            c.spectral_genus,
            c.d
        );
        let m = &self.dimension;
        let _ = writeln!(
            s,
            "prym        M {}, dim P {}, dim M {} ({})",
            m.m, m.dim_p, m.dim_m, m.strategy
        );
        let _ = writeln!(
            s,
            "            <B,L> {}, <S_i,L> {:?}",
            m.intermediates.trivial_lefschetz, m.intermediates.reflection_lefschetz
        );
        if let Some(a) = m.strategy_agreement {
            let _ = writeln!(s, "            strategies agree: {a}");
        }
        let f = &self.fiber;
        let _ = writeln!(s, "fibre       injective {} ({}), |A| {}", f.injective, f.reason, f.a);
        let _ = writeln!(s, "            bound 2^{} = {}", f.bound_exponent, f.bound);
        if let Some(p) = &f.pgl2_exact {
            let _ = writeln!(
                s,
                "            PGl(2): {} components, fibre {} each, |Λ'/Λ| {}",
                p.components, p.per_component_fiber, p.lambda_quotient
            );
        }
        s
    }
}
