//! Finite groups as Cayley tables.
//!
//! Canonical element orders per family:
//!
//! * `cyclic:m` residues `0..m`.
//! * `product:G,H` pairs `(g, h)` with the first factor varying fastest,
//!   index `g + |G|·h`. So `{0} × H` sits at the multiples of `|G|`.
//! * `fpn:p,n` coordinate vectors of `F_p^n` in lexicographic order (first
//!   coordinate most significant).
//! * `dihedral:m` the `2m` elements `s^f r^i` at index `f·m + i`.
//! * `symmetric:n` permutations of `0..n` in lexicographic one-line order,
//!   multiplied as composition `(στ)(x) = σ(τ(x))`.
//! * `quaternion:8` the elements `1, -1, i, -i, j, -j, k, -k`.
//! * `table:<path>` whatever order the file uses.

mod families;
mod subgroup;
mod table;

use std::path::PathBuf;

pub use families::build_group;
pub(crate) use families::is_prime;
pub use subgroup::{
    conjugacy_classes, coset_partition, enumerate_normal_subgroups, is_normal_mask,
    is_subgroup_mask, normal_core, subgroup_closure, CosetPartition, Subgroup,
};
pub use table::{parse_table_text, validate_table, TableDefect, Validation};

use crate::mask::SubsetMask;

/// Largest supported group order.
pub const MAX_ORDER: usize = 4096;

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("unknown group family {0:?}")]
    UnknownFamily(String),
    #[error("malformed group descriptor {descriptor:?}: {reason}")]
    Malformed { descriptor: String, reason: String },
    #[error("{family}: {reason}")]
    OutOfRange { family: &'static str, reason: String },
    #[error("cannot read table file {path:?}: {source}")]
    TableIo { path: PathBuf, source: std::io::Error },
    #[error("table line {line}: {reason}")]
    TableSyntax { line: usize, reason: String },
    #[error("table is not a group: {0}")]
    InvalidTable(TableDefect),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("set is not a subgroup: {0}")]
    NotASubgroup(String),
}

/// A validated finite group. Immutable after construction.
#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<u16>,
    inverses: Vec<u16>,
    identity: usize,
    labels: Vec<String>,
    generators: Vec<usize>,
    descriptor: String,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("descriptor", &self.descriptor)
            .field("order", &self.order)
            .finish()
    }
}

impl Group {
    /// Builds a group from a product function over `0..order`, validating
    /// the result.
    pub fn from_fn(
        order: usize,
        labels: Vec<String>,
        descriptor: impl Into<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        let rows: Vec<Vec<usize>> =
            (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(&rows, labels, descriptor)
    }

    pub fn from_table(
        rows: &[Vec<usize>],
        labels: Vec<String>,
        descriptor: impl Into<String>,
    ) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 || order > MAX_ORDER {
            return Err(GroupError::OutOfRange {
                family: "table",
                reason: format!("order {order} outside 1..={MAX_ORDER}"),
            });
        }
        if labels.len() != order {
            return Err(GroupError::LabelCount { expected: order, got: labels.len() });
        }
        if let Validation::Fail(defect) = validate_table(rows) {
            return Err(GroupError::InvalidTable(defect));
        }
        let table: Vec<u16> = rows.iter().flatten().map(|&x| x as u16).collect();
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x))
            .expect("validated table has an identity");
        let mut inverses = vec![0u16; order];
        for a in 0..order {
            let b = (0..order).find(|&b| table[a * order + b] as usize == identity).unwrap();
            inverses[a] = b as u16;
        }
        let mut g = Group {
            order,
            table,
            inverses,
            identity,
            labels,
            generators: Vec::new(),
            descriptor: descriptor.into(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Generators picked greedily in index order: the smallest element not yet
    /// in the span is added until the span is everything.
    fn greedy_generators(&self) -> Vec<usize> {
        let mut span = SubsetMask::from_indices(self.order, [self.identity]);
        let mut gens = Vec::new();
        while let Some(x) = (0..self.order).find(|&x| !span.contains(x)) {
            gens.push(x);
            span = subgroup_closure(self, &SubsetMask::from_indices(self.order, gens.clone()));
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// A generating set (greedy, in index order).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, &x)| {
            self.generators[i + 1..].iter().all(|&y| self.mul(x, y) == self.mul(y, x))
        })
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != self.identity {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    /// `gS`
    pub fn left_translate(&self, g: usize, s: &SubsetMask) -> SubsetMask {
        SubsetMask::from_indices(self.order, s.iter().map(|x| self.mul(g, x)))
    }

    /// `Sg`
    pub fn right_translate(&self, s: &SubsetMask, g: usize) -> SubsetMask {
        SubsetMask::from_indices(self.order, s.iter().map(|x| self.mul(x, g)))
    }

    /// `gSg⁻¹`
    pub fn conjugate_set(&self, g: usize, s: &SubsetMask) -> SubsetMask {
        SubsetMask::from_indices(self.order, s.iter().map(|x| self.conjugate(g, x)))
    }
}
