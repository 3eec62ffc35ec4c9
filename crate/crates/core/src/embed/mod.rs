//! Constructive embeddings: back-and-forth into `Q`, the supremum map with
//! its jump bit, and the weighted-sum embeddings into `R×2` and `R`.

mod collision;
mod rational;
mod staged;
mod universal;

pub use collision::{collision_fixture, CollisionRecord, NaivePoint, NaiveStage, ROBUST_STAGE, TRACE_STAGES};
pub use rational::{embed_rationals, Placement, RationalEmbedding};
pub use staged::{decimal, record, Approximation, SplitPoint, SplitPointRecord, StagedReal};
pub use universal::{
    embed_to_reals, jump_bit, jump_rational, naive_e1, universal_embed, CertifiedOrdering,
    JumpWitness, NaiveValue, RealEmbedding, UniversalEmbedding, Witness,
};
