//! Injectivity and fibre-size data for the map from the Hitchin fibre to the
//! `W`-invariant `T`-bundles.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::spectral::{check_genus, cover_stats};
use crate::weyl::WeylGroup;

/// Largest exponent for which [`PowerOfTwo::value`] materializes the integer.
pub const MATERIALIZE_LIMIT: u128 = 1 << 20;

/// `2^exponent`, kept symbolic because the exponents scale with `|W|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerOfTwo {
    pub exponent: u128,
}

impl PowerOfTwo {
    pub fn new(exponent: u128) -> Self {
        PowerOfTwo { exponent }
    }

    /// The exact integer, or `None` above [`MATERIALIZE_LIMIT`] bits.
    pub fn value(&self) -> Option<BigUint> {
        if self.exponent > MATERIALIZE_LIMIT {
            return None;
        }
        Some(BigUint::one() << (self.exponent as usize))
    }
}

impl fmt::Display for PowerOfTwo {
    /// Decimal when materializable, `2^e` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "2^{}", self.exponent),
        }
    }
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash)]
pub enum InjectivityReason {
    /// `(G, G)` is simply connected.
    SimplyConnectedDerived,
    /// No Dynkin component of type `B_l`, `l ≥ 1` (A1 counts as `B_1`).
    NoBComponent,
    /// Neither named condition holds, but every root pairs to 1 with some
    /// character.
    AllRootsUnitPairing,
    NotGuaranteed,
}

impl InjectivityReason {
    pub fn is_injective(self) -> bool {
        self != InjectivityReason::NotGuaranteed
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InjectivityReason::SimplyConnectedDerived => "simply_connected_derived",
            InjectivityReason::NoBComponent => "no_B_component",
            InjectivityReason::AllRootsUnitPairing => "all_roots_unit_pairing",
            InjectivityReason::NotGuaranteed => "not_guaranteed",
        }
    }
}

/// Whether one of the two sufficient type conditions applies, without
/// looking at individual roots.
pub fn type_condition(datum: &RootDatum) -> Option<InjectivityReason> {
    if datum.derived_group_is_simply_connected() {
        Some(InjectivityReason::SimplyConnectedDerived)
    } else if !datum.cartan_type().components().iter().any(|c| c.is_b_like()) {
        Some(InjectivityReason::NoBComponent)
    } else {
        None
    }
}

pub fn injectivity_verdict(datum: &RootDatum) -> InjectivityReason {
    type_condition(datum).unwrap_or_else(|| {
        if exceptional_roots(datum).is_empty() {
            InjectivityReason::AllRootsUnitPairing
        } else {
            InjectivityReason::NotGuaranteed
        }
    })
}

/// Positive roots `α` with no `λ ∈ X(T)` such that `⟨λ, α∨⟩ = 1`, ascending.
pub fn exceptional_roots(datum: &RootDatum) -> Vec<usize> {
    datum
        .positive_roots()
        .filter(|&i| !datum.root_admits_unit_pairing(i).expect("positive root index"))
        .collect()
}

/// Exact counts for `PGl(2)`: two components of the Hitchin fibre, each
/// mapping with generic fibre `2^{d−2}`; `Λ'/Λ ≅ (ℤ/2)^{d−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pgl2Count {
    pub d: i128,
    pub components: u32,
    pub per_component_fiber: PowerOfTwo,
    pub lambda_quotient: PowerOfTwo,
}

pub fn pgl2_exact_count(genus: u32) -> Result<Pgl2Count> {
    check_genus(genus)?;
    let d = 4 * genus as i128 - 4;
    Ok(Pgl2Count {
        d,
        components: 2,
        per_component_fiber: PowerOfTwo::new((d - 2) as u128),
        lambda_quotient: PowerOfTwo::new((d - 1) as u128),
    })
}

/// `A1` with no central torus and the root lattice as `X(T)`.
pub fn is_pgl2(datum: &RootDatum) -> bool {
    let t = datum.cartan_type();
    t.central_rank() == 0
        && t.components().len() == 1
        && t.components()[0].is_b_like()
        && t.components()[0].rank() == 1
        && !datum.derived_group_is_simply_connected()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub injective: bool,
    pub reason: InjectivityReason,
    /// Verdict from the named type conditions alone.
    pub type_condition: Option<InjectivityReason>,
    pub exceptional_roots: Vec<usize>,
    pub a: usize,
    pub d: i128,
    /// `2^{a(d−1)}`, or 1 when no root is exceptional.
    pub bound: PowerOfTwo,
    pub pgl2_exact: Option<Pgl2Count>,
}

pub fn fiber_bound(datum: &RootDatum, group: &WeylGroup<'_>, genus: u32) -> Result<FiberReport> {
    check_genus(genus)?;
    let cover = cover_stats(datum, group, genus)?;
    let reason = injectivity_verdict(datum);
    let exceptional = exceptional_roots(datum);
    let a = exceptional.len();
    let injective = reason.is_injective();
    if injective && a != 0 {
        return Err(Error::Inconsistent(format!(
            "verdict {} with {} exceptional roots",
            reason.as_str(),
            a
        )));
    }
    let d = cover.d();
    let bound = if a == 0 {
        PowerOfTwo::new(0)
    } else {
        let e = (a as u128).checked_mul((d - 1) as u128).ok_or(Error::Overflow("fibre bound exponent"))?;
        PowerOfTwo::new(e)
    };
    let pgl2_exact = if is_pgl2(datum) {
        Some(pgl2_exact_count(genus)?)
    } else {
        None
    };
    Ok(FiberReport {
        injective,
        reason,
        type_condition: type_condition(datum),
        exceptional_roots: exceptional,
        a,
        d,
        bound,
        pgl2_exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;
    use crate::root_datum::LatticeSpec;

    fn datum(t: &str, lattice: LatticeSpec) -> RootDatum {
        RootDatum::new(t.parse().unwrap(), lattice).unwrap()
    }

    #[test]
    fn verdicts() {
        use InjectivityReason::*;
        assert_eq!(injectivity_verdict(&datum("A3", LatticeSpec::SimplyConnected)), SimplyConnectedDerived);
        assert_eq!(injectivity_verdict(&datum("D4", LatticeSpec::Adjoint)), NoBComponent);
        assert_eq!(injectivity_verdict(&datum("B2", LatticeSpec::Adjoint)), NotGuaranteed);
        assert_eq!(injectivity_verdict(&datum("A1", LatticeSpec::Adjoint)), NotGuaranteed);
        // C2 is stored as B2
        assert_eq!(injectivity_verdict(&datum("C2", LatticeSpec::Adjoint)), NotGuaranteed);
        assert_eq!(injectivity_verdict(&datum("C3", LatticeSpec::Adjoint)), NoBComponent);
    }

    #[test]
    fn exceptional_root_sets() {
        let pgl2 = datum("A1", LatticeSpec::Adjoint);
        assert_eq!(exceptional_roots(&pgl2), vec![0]);
        let so5 = datum("B2", LatticeSpec::Adjoint);
        let a = exceptional_roots(&so5);
        assert_eq!(a.len(), 2);
        assert!(a.iter().all(|&r| !so5.is_long(r)));
        for t in ["A2", "B3", "C4", "D4", "G2", "F4", "E6"] {
            assert!(exceptional_roots(&datum(t, LatticeSpec::SimplyConnected)).is_empty(), "{t}");
        }
    }

    #[test]
    fn verdict_falls_back_to_unit_pairing() {
        // SO(5) × SL(2) glued so that the derived group is not simply
        // connected but the short roots of B2 still pair to 1: X(T) is the
        // root lattice of B2 ⊕ A1 plus (ω₂ of B2 + ω of A1).
        let t: CartanType = "B2+A1".parse().unwrap();
        let basis = vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 2]];
        let d = RootDatum::new(t, LatticeSpec::custom_integer(&basis)).unwrap();
        d.validate().unwrap();
        assert!(!d.derived_group_is_simply_connected());
        assert_eq!(type_condition(&d), None);
        // the A1 root pairs with ω₂ + ω to 1, the B2 short roots too
        assert!(exceptional_roots(&d).is_empty());
        assert_eq!(injectivity_verdict(&d), InjectivityReason::AllRootsUnitPairing);
        let w = WeylGroup::generate(&d, 100).unwrap();
        let r = fiber_bound(&d, &w, 2).unwrap();
        assert!(r.injective);
        assert_eq!(r.bound, PowerOfTwo::new(0));
    }

    #[test]
    fn bounds() {
        let pgl2 = datum("A1", LatticeSpec::Adjoint);
        let w = WeylGroup::generate(&pgl2, 10).unwrap();
        let r = fiber_bound(&pgl2, &w, 2).unwrap();
        assert_eq!((r.d, r.a), (4, 1));
        assert_eq!(r.bound.value().unwrap(), BigUint::from(8u32));
        let exact = r.pgl2_exact.unwrap();
        assert_eq!(exact.components, 2);
        assert_eq!(exact.per_component_fiber.value().unwrap(), BigUint::from(4u32));

        let sl2 = datum("A1", LatticeSpec::SimplyConnected);
        let w = WeylGroup::generate(&sl2, 10).unwrap();
        let r = fiber_bound(&sl2, &w, 2).unwrap();
        assert!(r.injective);
        assert_eq!(r.bound.value().unwrap(), BigUint::one());
        assert!(r.pgl2_exact.is_none());

        let so5 = datum("B2", LatticeSpec::Adjoint);
        let w = WeylGroup::generate(&so5, 10).unwrap();
        let r = fiber_bound(&so5, &w, 2).unwrap();
        assert_eq!((r.d, r.a), (16, 2));
        assert_eq!(r.bound.value().unwrap(), BigUint::one() << 30usize);
        assert_eq!(fiber_bound(&so5, &w, 1), Err(Error::Genus(1)));
    }

    #[test]
    fn pgl2_counts() {
        let c = pgl2_exact_count(2).unwrap();
        assert_eq!(c.d, 4);
        assert_eq!(c.per_component_fiber.to_string(), "4");
        assert_eq!(c.lambda_quotient.to_string(), "8");
        let c = pgl2_exact_count(3).unwrap();
        assert_eq!(c.d, 8);
        assert_eq!(c.per_component_fiber.to_string(), "64");
        assert!(pgl2_exact_count(1).is_err());
    }

    #[test]
    fn huge_bound_stays_symbolic() {
        let p = PowerOfTwo::new(MATERIALIZE_LIMIT + 1);
        assert!(p.value().is_none());
        assert_eq!(p.to_string(), format!("2^{}", MATERIALIZE_LIMIT + 1));
    }
}
