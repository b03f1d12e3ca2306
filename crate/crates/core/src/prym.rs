//! Dimension of the generalized Prym variety `[J(C̃) ⊗ X(T)*]^W`.
//!
//! `dim P = M/2` where `M = dim Hom_W(S, H¹) = ⟨χ_S, χ_{H¹}⟩`. Splitting
//! `S = B^h ⊕ S_1 ⊕ … ⊕ S_N` and writing `χ_{H¹} = 2χ_B − χ_L` reduces `M` to
//! inner products against the Lefschetz character. Both the analytic route
//! (descriptor Gram table) and the brute-force route (sum over `W`) are kept.

use crate::characters::{self, inner_product_int, Strategy};
use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::spectral::{check_genus, cover_stats, CoverStats};
use crate::weyl::WeylGroup;

/// `(g − 1)·dim G + h`.
pub fn moduli_dimension(datum: &RootDatum, genus: u32) -> Result<i128> {
    check_genus(genus)?;
    Ok((genus as i128 - 1) * datum.dim_g() as i128 + datum.central_rank() as i128)
}

/// Intermediate inner products on the way to `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intermediates {
    /// `⟨χ_B, χ_L⟩`, expected `2 − 2g`.
    pub trivial_lefschetz: i128,
    /// `⟨χ_{S_i}, χ_L⟩` per component, expected
    /// `(2 − 2g) dim S_i − Σ_{R_j ⊂ S_i} n_j`.
    pub reflection_lefschetz: Vec<i128>,
    /// `⟨χ_B, χ_{H¹}⟩ = 2 − ⟨χ_B, χ_L⟩`.
    pub trivial_h1: i128,
    /// `⟨χ_{S_i}, χ_{H¹}⟩ = −⟨χ_{S_i}, χ_L⟩`.
    pub reflection_h1: Vec<i128>,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum StrategyUsed {
    Analytic,
    Enumerated,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub genus: u32,
    /// `M = dim Hom_W(S, H¹)`.
    pub m: i128,
    pub dim_p: i128,
    pub dim_m: i128,
    /// `2h + (2g − 2) dim T + |Ram|`.
    pub closed_form_m: i128,
    pub intermediates: Intermediates,
    pub strategy: StrategyUsed,
    /// Present when both strategies ran.
    pub strategy_agreement: Option<bool>,
    /// Enumerated values, kept when both strategies ran.
    pub enumerated: Option<EnumeratedCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedCheck {
    pub m: i128,
    pub intermediates: Intermediates,
}

fn intermediates(group: &WeylGroup<'_>, cover: &CoverStats, strategy: Strategy) -> Result<Intermediates> {
    let datum = group.datum();
    let lef = characters::lefschetz_character(group, cover)?;
    let b = characters::trivial(group);
    let trivial_lefschetz = inner_product_int(&b, &lef, strategy)?;
    let mut reflection_lefschetz = Vec::with_capacity(datum.component_count());
    for i in 0..datum.component_count() {
        let s = characters::reflection_component(group, i)?;
        reflection_lefschetz.push(inner_product_int(&s, &lef, strategy)?);
    }
    Ok(Intermediates {
        trivial_h1: 2 - trivial_lefschetz,
        reflection_h1: reflection_lefschetz.iter().map(|x| -x).collect(),
        trivial_lefschetz,
        reflection_lefschetz,
    })
}

fn assemble_m(datum: &RootDatum, inter: &Intermediates) -> i128 {
    datum.central_rank() as i128 * inter.trivial_h1 + inter.reflection_h1.iter().sum::<i128>()
}

fn closed_form_m(datum: &RootDatum, cover: &CoverStats) -> i128 {
    let h = datum.central_rank() as i128;
    2 * h + cover.deg_k() * datum.rank() as i128 + cover.ram_count()
}

fn report(
    datum: &RootDatum,
    cover: &CoverStats,
    m: i128,
    intermediates: Intermediates,
    strategy: StrategyUsed,
) -> Result<DimensionReport> {
    if m % 2 != 0 {
        return Err(Error::Inconsistent(format!("M = {m} is odd")));
    }
    Ok(DimensionReport {
        genus: cover.genus(),
        m,
        dim_p: m / 2,
        dim_m: moduli_dimension(datum, cover.genus())?,
        closed_form_m: closed_form_m(datum, cover),
        intermediates,
        strategy,
        strategy_agreement: None,
        enumerated: None,
    })
}

/// `M` assembled term by term from the descriptor Gram table:
/// `M = h⟨χ_B, χ_{H¹}⟩ + Σ_i ⟨χ_{S_i}, χ_{H¹}⟩`.
pub fn prym_dimension_analytic(datum: &RootDatum, group: &WeylGroup<'_>, genus: u32) -> Result<DimensionReport> {
    let cover = cover_stats(datum, group, genus)?;
    let inter = intermediates(group, &cover, Strategy::Analytic)?;
    let m = assemble_m(datum, &inter);
    let r = report(datum, &cover, m, inter, StrategyUsed::Analytic)?;
    if r.m != r.closed_form_m {
        return Err(Error::Inconsistent(format!(
            "assembled M = {} differs from closed form {}",
            r.m, r.closed_form_m
        )));
    }
    Ok(r)
}

/// `M = (1/|W|) Σ_w χ_S(w) χ_{H¹}(w)` with traces and coset counts on every
/// element.
pub fn prym_dimension_enumerated(datum: &RootDatum, group: &WeylGroup<'_>, genus: u32) -> Result<DimensionReport> {
    if !group.is_enumerated() {
        return Err(Error::EnumerationUnavailable {
            order: group.order(),
            cap: group.cap(),
        });
    }
    let cover = cover_stats(datum, group, genus)?;
    let s = characters::reflection_character(group);
    let h1 = characters::h1_character(group, &cover)?;
    let m = inner_product_int(&s, &h1, Strategy::Enumerated)?;
    let inter = intermediates(group, &cover, Strategy::Enumerated)?;
    report(datum, &cover, m, inter, StrategyUsed::Enumerated)
}

/// Runs the analytic route and, when `verify` is set and `W` is enumerated,
/// the enumerated route as well, recording whether they agree.
pub fn prym_dimension(datum: &RootDatum, group: &WeylGroup<'_>, genus: u32, verify: bool) -> Result<DimensionReport> {
    let mut r = prym_dimension_analytic(datum, group, genus)?;
    if verify && group.is_enumerated() {
        let e = prym_dimension_enumerated(datum, group, genus)?;
        r.strategy = StrategyUsed::Both;
        r.strategy_agreement = Some(e.m == r.m && e.intermediates == r.intermediates);
        r.enumerated = Some(EnumeratedCheck {
            m: e.m,
            intermediates: e.intermediates,
        });
    }
    Ok(r)
}
