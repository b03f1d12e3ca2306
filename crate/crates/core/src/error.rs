use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan type `{0}`")]
    InvalidType(String),

    #[error("a group with no simple components needs central rank >= 1")]
    EmptyGroup,

    #[error("custom lattice basis must be a {expected}x{expected} matrix, got {rows}x{cols}")]
    LatticeShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("custom lattice basis is singular")]
    LatticeSingular,

    #[error("custom lattice entry ({row}, {col}) = {value} is not in the weight lattice")]
    NotInWeightLattice { row: usize, col: usize, value: String },

    #[error("custom lattice does not contain the root lattice (root {root} is not integral)")]
    RootLatticeNotContained { root: usize },

    #[error("root index {index} out of range (datum has {count} roots)")]
    RootIndex { index: usize, count: usize },

    #[error("orbit index {index} out of range ({count} orbits)")]
    OrbitIndex { index: usize, count: usize },

    #[error("component index {index} out of range ({count} components)")]
    ComponentIndex { index: usize, count: usize },

    #[error("coroot of root {0} is not integral under the symmetric form")]
    NonIntegralCoroot(usize),

    #[error("genus must be >= 2, got {0}")]
    Genus(u32),

    #[error("Weyl group of order {order} is not enumerated (cap {cap})")]
    EnumerationUnavailable { order: u128, cap: u128 },

    #[error("enumerated {found} Weyl group elements, expected {expected}")]
    EnumerationMismatch { found: usize, expected: u128 },

    #[error("matrix does not act on this datum")]
    ForeignElement,

    #[error("class functions belong to different Weyl groups")]
    GroupMismatch,

    #[error("no evaluation strategy available for this inner product")]
    StrategyUnavailable,

    #[error("inner product of virtual characters is not an integer: {0}")]
    NonIntegralInnerProduct(String),

    #[error("cover statistics do not match this Weyl group")]
    CoverMismatch,

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
