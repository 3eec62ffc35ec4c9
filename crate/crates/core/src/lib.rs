//! Countable and separable linear orders given by finite terms.
//!
//! Terms are built from `fin(n)`, `ω`, `ω*`, `Z`, `Q` and `R` by ordered
//! sums and the lexicographic product with the two-point order. Everything
//! except `R` is countable, and points of countable terms can be enumerated,
//! compared and placed into `Q`. Separable orders embed into the doubled
//! reals `R×2` through the weighted-sum map over a dense subset.

pub mod analysis;
pub mod cardinal;
pub mod dense;
pub mod elem;
pub mod embed;
pub mod enumerate;
pub mod error;
pub mod homog;
pub mod order;
mod serde_util;
pub mod term;

pub use analysis::{
    cardinality, classify, embeds_into_reals, is_separable, jump_cardinality, jump_relations, jumps,
    ClassReport, Jump, JumpRelations,
};
pub use cardinal::CardinalClass;
pub use dense::{
    both_sided_dense, canonical_dense, check_dense_sampled, sided_dense, DenseSet, DensityMode,
    DensityVerdict, Members, SampleBudget, Sided,
};
pub use elem::{format_elem, parse_elem, validate, Bit, Elem, RealPoint};
pub use enumerate::{enumerate, index_of, nth, Enumeration};
pub use error::{Error, Result};
pub use homog::{
    extend_to_automorphism, quotient_map, validate_partial_map, Automorphism, Direction, PartialMap,
    Validation, Violation, ViolationKind,
};
pub use order::{bounds, compare, neighbor, Bounds, Side};
pub use term::{format_term, parse_term, OrderTerm};
