//! Counting data of the generic spectral cover `C̃ → C`.

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::weyl::WeylGroup;

pub fn check_genus(genus: u32) -> Result<()> {
    if genus < 2 {
        Err(Error::Genus(genus))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverStats {
    genus: u32,
    deg_k: i128,
    weyl_order: i128,
    positive_roots: i128,
    orbit_sizes: Vec<usize>,
    ram_count: i128,
    n: Vec<i128>,
    branch_fiber_size: Option<i128>,
    d_alpha_size: i128,
    ramification_points: i128,
    spectral_genus: i128,
    d: i128,
}

fn mul(a: i128, b: i128, what: &'static str) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn add(a: i128, b: i128, what: &'static str) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

/// Branch data of the `|W|`-sheeted cover for a genus-`g` base curve.
///
/// Each branch point over orbit `R_j` has a fibre of `|W|/2` points, all simply
/// ramified. The spectral genus is obtained from Riemann–Hurwitz applied to
/// that ramification count. For a torus (`R = ∅`) the cover is the identity.
pub fn cover_stats(datum: &RootDatum, group: &WeylGroup<'_>, genus: u32) -> Result<CoverStats> {
    check_genus(genus)?;
    let deg_k = 2 * genus as i128 - 2;
    let weyl_order = i128::try_from(group.order()).map_err(|_| Error::Overflow("|W|"))?;
    let orbit_sizes: Vec<usize> = group.root_orbits().iter().map(|o| o.len()).collect();
    let n: Vec<i128> = orbit_sizes.iter().map(|&s| s as i128 * deg_k).collect();
    let ram_count = n.iter().sum();
    let positive_roots = datum.positive_count() as i128;

    let branch_fiber_size = if datum.root_count() == 0 {
        None
    } else {
        Some(weyl_order / 2)
    };
    let ramification_points = mul(ram_count, branch_fiber_size.unwrap_or(0), "ramification points")?;
    let d = mul(weyl_order, deg_k, "d")?;
    // 2g̃ − 2 = |W|(2g − 2) + #ramification points
    let chi = add(d, ramification_points, "spectral genus")?;
    let spectral_genus = chi / 2 + 1;

    let stats = CoverStats {
        genus,
        deg_k,
        weyl_order,
        positive_roots,
        orbit_sizes,
        ram_count,
        n,
        branch_fiber_size,
        d_alpha_size: d,
        ramification_points,
        spectral_genus,
        d,
    };
    stats.check_invariants()?;
    Ok(stats)
}

pub fn spectral_genus(stats: &CoverStats) -> i128 {
    stats.spectral_genus
}

impl CoverStats {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn deg_k(&self) -> i128 {
        self.deg_k
    }

    pub fn weyl_order(&self) -> i128 {
        self.weyl_order
    }

    pub fn positive_roots(&self) -> i128 {
        self.positive_roots
    }

    pub fn orbit_sizes(&self) -> &[usize] {
        &self.orbit_sizes
    }

    /// `|Ram|`, the degree of the branch divisor on `C`.
    pub fn ram_count(&self) -> i128 {
        self.ram_count
    }

    /// Number of branch points whose fibre belongs to each root orbit.
    pub fn n(&self) -> &[i128] {
        &self.n
    }

    /// `|W|/2`; `None` for a torus.
    pub fn branch_fiber_size(&self) -> Option<i128> {
        self.branch_fiber_size
    }

    /// `|D_α|` for any positive root `α`.
    pub fn d_alpha_size(&self) -> i128 {
        self.d_alpha_size
    }

    /// Total number of ramification points on `C̃`.
    pub fn ramification_points(&self) -> i128 {
        self.ramification_points
    }

    pub fn spectral_genus(&self) -> i128 {
        self.spectral_genus
    }

    /// Degree of `π*K`.
    pub fn d(&self) -> i128 {
        self.d
    }

    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Inconsistent(format!("cover stats: {m}")));
        let roots: i128 = self.orbit_sizes.iter().map(|&s| s as i128).sum();
        if self.deg_k != 2 * self.genus as i128 - 2 {
            return fail("deg K ≠ 2g − 2");
        }
        if self.ram_count != roots * self.deg_k {
            return fail("|Ram| ≠ |R|(2g − 2)");
        }
        if self.n.iter().sum::<i128>() != self.ram_count {
            return fail("Σ n_j ≠ |Ram|");
        }
        if self.n.iter().zip(&self.orbit_sizes).any(|(&n, &s)| n != s as i128 * self.deg_k) {
            return fail("n_j ≠ |R_j|·deg K");
        }
        if roots != 2 * self.positive_roots {
            return fail("orbit sizes do not add up to 2|R⁺|");
        }
        if roots > 0 && self.weyl_order % 2 != 0 {
            return fail("|W| is odd for a non-empty root system");
        }
        let closed = self
            .weyl_order
            .checked_mul(self.genus as i128 - 1)
            .and_then(|x| x.checked_mul(1 + self.positive_roots))
            .and_then(|x| x.checked_add(1));
        if closed != Some(self.spectral_genus) {
            return fail("g̃ ≠ 1 + |W|(g − 1)(1 + |R⁺|)");
        }
        let via_d_alpha = self.positive_roots.checked_mul(self.d_alpha_size);
        if via_d_alpha != Some(self.ramification_points) {
            return fail("Σ_{α∈R⁺} |D_α| ≠ number of ramification points");
        }
        if self.d != self.weyl_order * self.deg_k || self.d_alpha_size != self.d {
            return fail("d ≠ |W|·deg K");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;
    use crate::root_datum::LatticeSpec;

    fn stats(t: &str, g: u32) -> CoverStats {
        let d = RootDatum::new(t.parse().unwrap(), LatticeSpec::SimplyConnected).unwrap();
        let w = WeylGroup::generate(&d, 1).unwrap();
        cover_stats(&d, &w, g).unwrap()
    }

    #[test]
    fn a1_genus_two() {
        let s = stats("A1", 2);
        assert_eq!(s.ram_count(), 4);
        assert_eq!(s.n(), &[4]);
        assert_eq!(s.branch_fiber_size(), Some(1));
        assert_eq!(s.spectral_genus(), 5);
        assert_eq!(s.d(), 4);
        // Euler characteristic of the double cover
        assert_eq!(2 - 2 * s.spectral_genus(), 2 * (2 - 2 * 2) - s.ram_count());
    }

    #[test]
    fn g2_genus_two() {
        let s = stats("G2", 2);
        assert_eq!(s.ram_count(), 24);
        assert_eq!(s.n(), &[12, 12]);
        assert_eq!(s.branch_fiber_size(), Some(6));
        assert_eq!(s.d(), 24);
    }

    #[test]
    fn a2_spectral_genus() {
        assert_eq!(spectral_genus(&stats("A2", 2)), 25);
    }

    #[test]
    fn torus_cover_is_trivial() {
        let d = RootDatum::new(CartanType::torus(1).unwrap(), LatticeSpec::SimplyConnected).unwrap();
        let w = WeylGroup::generate(&d, 1).unwrap();
        for g in [2, 3, 7] {
            let s = cover_stats(&d, &w, g).unwrap();
            assert_eq!(s.ram_count(), 0);
            assert_eq!(s.spectral_genus(), g as i128);
            assert_eq!(s.branch_fiber_size(), None);
        }
    }

    #[test]
    fn genus_below_two_rejected() {
        let d = RootDatum::new("A1".parse().unwrap(), LatticeSpec::SimplyConnected).unwrap();
        let w = WeylGroup::generate(&d, 1).unwrap();
        assert_eq!(cover_stats(&d, &w, 1), Err(Error::Genus(1)));
        assert_eq!(cover_stats(&d, &w, 0), Err(Error::Genus(0)));
    }

    #[test]
    fn e8_large_numbers() {
        let s = stats("E8", 2);
        assert_eq!(s.d(), 696_729_600 * 2);
        assert_eq!(s.spectral_genus(), 1 + 696_729_600 * 121);
    }

    #[test]
    fn tampered_stats_fail_invariants() {
        let mut s = stats("B2", 3);
        s.n[0] += 1;
        assert!(s.check_invariants().is_err());
        let mut s = stats("B2", 3);
        s.spectral_genus += 1;
        assert!(s.check_invariants().is_err());
    }
}
