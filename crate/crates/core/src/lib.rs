//! Finite-group workbench for stable subsets.
//!
//! Given a finite group `G` (as a Cayley table) and a subset `A ⊆ G`, this
//! crate measures the half-graph ladder index of `A`, searches for a
//! bounded-index normal subgroup `H` together with a union of cosets `Y`
//! approximating `A`, and checks the induced regularity of the bipartite
//! Cayley graph on the cosets of `H`.
//!
//! All verdicts are computed with exact integer or rational arithmetic.

pub mod corpus;
pub mod group;
pub mod mask;
pub mod rational;
pub mod regularity;
pub mod rng;
pub mod stability;
pub mod structure;

pub use group::{
    build_group, conjugacy_classes, coset_partition, enumerate_normal_subgroups, normal_core,
    subgroup_closure, validate_table, CosetPartition, Group, GroupError, Subgroup, TableDefect,
    Validation,
};
pub use mask::SubsetMask;
pub use rational::{fmt_rational, parse_rational, Rational};
pub use regularity::{BipartiteCayleyGraph, PairVerdict, RegularityError, RegularityVerdict, Side};
pub use stability::{
    is_k_stable, ladder_index, translate_cover_number, verify_certificate, CoverResult,
    HalfGraphCertificate, StabilityError,
};
pub use structure::{
    find_structure, optimal_coset_union, per_coset_dichotomy, StructureError, StructureResult,
};
