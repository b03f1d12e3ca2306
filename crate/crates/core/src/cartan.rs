//! Cartan types of split reductive groups: simple components plus a central torus.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// One connected component of the Dynkin diagram, already normalized.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    /// Validates and normalizes `family_rank`. Low-rank aliases expand to their
    /// canonical form: B1, C1 → A1; C2 → B2; D2 → A1+A1; D3 → A3.
    pub fn normalized(family: Family, rank: usize) -> Result<Vec<SimpleType>> {
        use Family::*;
        let invalid = || Error::InvalidType(format!("{family}{rank}"));
        let one = |family, rank| Ok(vec![SimpleType { family, rank }]);
        match (family, rank) {
            (_, 0) => Err(invalid()),
            (A, l) => one(A, l),
            (B, 1) | (C, 1) => one(A, 1),
            (B, l) => one(B, l),
            (C, 2) => one(B, 2),
            (C, l) => one(C, l),
            (D, 1) => Err(invalid()),
            (D, 2) => Ok(vec![SimpleType { family: A, rank: 1 }; 2]),
            (D, 3) => one(A, 3),
            (D, l) => one(D, l),
            (E, 6..=8) => one(E, rank),
            (F, 4) => one(F, 4),
            (G, 2) => one(G, 2),
            _ => Err(invalid()),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Type B in the wide sense, including B1 = A1. These are exactly the
    /// simple types with a root that pairs to 1 with no other root.
    pub fn is_b_like(&self) -> bool {
        self.family == Family::B || (self.family == Family::A && self.rank == 1)
    }

    /// Cartan matrix `C[i][j] = ⟨α_i, α_j∨⟩` in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut c = vec![vec![0i64; l]; l];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => (1..l).for_each(|i| link(i - 1, i)),
            Family::D => {
                (1..l - 1).for_each(|i| link(i - 1, i));
                link(l - 3, l - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                (3..l).for_each(|i| link(i - 1, i));
            }
            Family::F => (1..4).for_each(|i| link(i - 1, i)),
            Family::G => link(0, 1),
        }
        match self.family {
            // α_l short
            Family::B => c[l - 2][l - 1] = -2,
            // α_l long
            Family::C => c[l - 1][l - 2] = -2,
            Family::F => c[1][2] = -2,
            // α_1 short
            Family::G => c[1][0] = -3,
            _ => {}
        }
        c
    }

    /// Degrees of the basic invariants of the Weyl group.
    pub fn degrees(&self) -> Vec<u64> {
        let l = self.rank as u64;
        match self.family {
            Family::A => (2..=l + 1).collect(),
            Family::B | Family::C => (1..=l).map(|i| 2 * i).collect(),
            Family::D => (1..l).map(|i| 2 * i).chain([l]).collect(),
            Family::E => match l {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
        }
    }

    pub fn weyl_order(&self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }

    /// `|R⁺|`, the sum of `(degree - 1)`.
    pub fn positive_root_count(&self) -> usize {
        self.degrees().iter().map(|&d| d as usize - 1).sum()
    }

    /// Number of W-orbits on the roots (root lengths).
    pub fn orbit_count(&self) -> usize {
        if self.is_simply_laced() {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanType {
    components: Vec<SimpleType>,
    central_rank: usize,
}

impl CartanType {
    pub fn new(components: &[(Family, usize)], central_rank: usize) -> Result<Self> {
        let mut out = Vec::new();
        for &(family, rank) in components {
            out.extend(SimpleType::normalized(family, rank)?);
        }
        if out.is_empty() && central_rank == 0 {
            return Err(Error::EmptyGroup);
        }
        Ok(CartanType {
            components: out,
            central_rank,
        })
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        Self::new(&[(family, rank)], 0)
    }

    pub fn torus(rank: usize) -> Result<Self> {
        Self::new(&[], rank)
    }

    pub fn with_central_rank(mut self, central_rank: usize) -> Result<Self> {
        if self.components.is_empty() && central_rank == 0 {
            return Err(Error::EmptyGroup);
        }
        self.central_rank = central_rank;
        Ok(self)
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.components
    }

    pub fn central_rank(&self) -> usize {
        self.central_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.components.iter().map(SimpleType::rank).sum()
    }

    pub fn rank(&self) -> usize {
        self.semisimple_rank() + self.central_rank
    }

    pub fn weyl_order(&self) -> u128 {
        self.components.iter().map(SimpleType::weyl_order).product()
    }
}

/// Parses `A2+B3`; `T` (or an empty string) stands for no simple factors.
/// The central rank is always 0 after parsing.
impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut parts = Vec::new();
        if !(s.is_empty() || s.eq_ignore_ascii_case("t")) {
            for token in s.split('+') {
                let token = token.trim();
                let invalid = || Error::InvalidType(token.to_string());
                let mut chars = token.chars();
                let family = chars.next().and_then(Family::from_char).ok_or_else(invalid)?;
                let rank: usize = chars.as_str().parse().map_err(|_| invalid())?;
                parts.push((family, rank));
            }
        }
        let mut components = Vec::new();
        for (family, rank) in parts {
            components.extend(SimpleType::normalized(family, rank)?);
        }
        Ok(CartanType {
            components,
            central_rank: 0,
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "T");
        }
        let names: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "{}", names.join("+"))
    }
}
