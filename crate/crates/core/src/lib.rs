//! Root data, Weyl groups and character computations for the abelianized
//! Hitchin system: spectral cover data, the dimension of the generalized
//! Prym variety and fibre bounds for the map to `W`-invariant `T`-bundles.

pub mod cartan;
pub mod characters;
pub mod error;
pub mod fiber;
pub mod linalg;
pub mod prym;
pub mod root_datum;
pub mod spectral;
pub mod weyl;

pub use cartan::{CartanType, Family, SimpleType};
pub use error::{Error, Result};
pub use fiber::{fiber_bound, injectivity_verdict, pgl2_exact_count, FiberReport, InjectivityReason, PowerOfTwo};
pub use prym::{prym_dimension, DimensionReport};
pub use root_datum::{LatticeSpec, RootDatum};
pub use spectral::{cover_stats, CoverStats};
pub use weyl::{WeylGroup, DEFAULT_ENUMERATION_CAP};
