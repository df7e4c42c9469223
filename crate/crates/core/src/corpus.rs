//! Deterministic instance generators and the group zoo.
//!
//! Random choices go through [`Lcg`], so a `(spec, seed)` pair yields the
//! same mask on every platform.

use serde::{Deserialize, Serialize};

use crate::group::{build_group, coset_partition, enumerate_normal_subgroups, is_prime, Group, Subgroup};
use crate::mask::SubsetMask;
use crate::rational::{from_usize, Rational};
use crate::rng::Lcg;
use crate::structure::optimal_coset_union;

/// Group descriptors exercised by the test suites, in ascending order.
pub const ZOO: &[&str] = &[
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "fpn:2,2",
    "cyclic:5",
    "cyclic:6",
    "dihedral:3",
    "symmetric:3",
    "cyclic:7",
    "cyclic:8",
    "fpn:2,3",
    "product:cyclic:2,cyclic:4",
    "dihedral:4",
    "quaternion:8",
    "fpn:3,2",
    "dihedral:5",
    "cyclic:12",
    "dihedral:6",
    "product:cyclic:2,cyclic:6",
    "product:cyclic:3,cyclic:5",
    "cyclic:15",
    "cyclic:16",
    "fpn:2,4",
    "dihedral:8",
    "product:quaternion:8,cyclic:2",
    "product:dihedral:3,cyclic:3",
    "symmetric:4",
    "product:cyclic:3,cyclic:9",
    "fpn:3,3",
    "cyclic:32",
    "fpn:2,5",
    "dihedral:16",
    "product:dihedral:4,cyclic:4",
    "product:symmetric:4,cyclic:2",
    "cyclic:64",
    "dihedral:32",
];

/// Builds every zoo group of order at most `max_order`.
pub fn zoo(max_order: usize) -> Vec<Group> {
    ZOO.iter()
        .map(|d| build_group(d).expect("zoo descriptors are valid"))
        .filter(|g| g.order() <= max_order)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("k must be at least 2, got {0}")]
    BadK(usize),
    #[error("n must be at least 1")]
    BadN,
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("prime {prime} must exceed n = {n}")]
    PrimeTooSmall { prime: usize, n: usize },
    #[error("epsilon outside the band 1/(1-ε) < p < 1/ε")]
    EpsilonOutsideBand,
    #[error("group or set does not match Z/p × Z/q and {{0}} × Z/q")]
    Mismatch,
    #[error("{flips} flips requested in a group of order {order}")]
    TooManyFlips { flips: usize, order: usize },
    #[error("interval needs m ≥ 4k, got m = {m}, k = {k}")]
    IntervalTooLong { m: usize, k: usize },
    #[error("interval length must be at least 1")]
    EmptyInterval,
}

/// `G = Z/p × Z/q` with `A = {0} × Z/q`, a 2-stable set that no union of
/// cosets of a normal subgroup of index `≤ n` approximates within `ε|G|`.
#[derive(Clone, Debug)]
pub struct CounterexampleInstance {
    pub k: usize,
    pub n: usize,
    pub eps: Rational,
    pub p: usize,
    pub q: usize,
    pub group: Group,
    pub a_set: SubsetMask,
}

impl Serialize for CounterexampleInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CounterexampleInstance", 7)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("eps", &crate::rational::fmt_rational(&self.eps))?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("group", self.group.descriptor())?;
        st.serialize_field("a_set", &self.a_set)?;
        st.end()
    }
}

impl CounterexampleInstance {
    /// Builds and validates an instance with the given parameters.
    pub fn new(k: usize, n: usize, eps: Rational, p: usize, q: usize) -> Result<Self, CorpusError> {
        let group = build_group(&format!("product:cyclic:{p},cyclic:{q}")).map_err(|_| CorpusError::Mismatch)?;
        let a_set = SubsetMask::from_indices(p * q, (0..q).map(|j| j * p));
        let inst = Self { k, n, eps, p, q, group, a_set };
        inst.validate()?;
        Ok(inst)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Re-checks every instance invariant.
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.k < 2 {
            return Err(CorpusError::BadK(self.k));
        }
        if self.n < 1 {
            return Err(CorpusError::BadN);
        }
        for prime in [self.p, self.q] {
            if !is_prime(prime) {
                return Err(CorpusError::NotPrime(prime));
            }
            if prime <= self.n {
                return Err(CorpusError::PrimeTooSmall { prime, n: self.n });
            }
        }
        if !in_band(self.p, self.eps) {
            return Err(CorpusError::EpsilonOutsideBand);
        }
        let g = &self.group;
        let expected = SubsetMask::from_indices(self.p * self.q, (0..self.q).map(|j| j * self.p));
        if g.order() != self.p * self.q || self.a_set != expected {
            return Err(CorpusError::Mismatch);
        }
        Ok(())
    }
}

/// `1/(1-ε) < p < 1/ε`, with `0 < ε < 1`.
fn in_band(p: usize, eps: Rational) -> bool {
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    if eps <= zero || eps >= one {
        return false;
    }
    let p = from_usize(p);
    (one - eps).recip() < p && p < eps.recip()
}

fn next_prime_above(n: usize) -> usize {
    (n + 1..).find(|&x| is_prime(x)).unwrap()
}

/// Smallest prime `p > n`, then the smallest prime `q > n` with
/// `pq ≥ min_order`. The band `1/(1-ε) < p < 1/ε` is `0 < ε < 1/p`; within
/// it `ε` is the midpoint of `[(q-1)/pq, 1/p]`, i.e. `(2q-1)/(2pq)`, so
/// that `ε|G| = q - 1/2`.
///
/// For `p = 3, q = 5` this gives `ε = 3/10`.
pub fn gen_counterexample(k: usize, n: usize, min_order: usize) -> Result<CounterexampleInstance, CorpusError> {
    if k < 2 {
        return Err(CorpusError::BadK(k));
    }
    if n < 1 {
        return Err(CorpusError::BadN);
    }
    let p = next_prime_above(n);
    let mut q = next_prime_above(n);
    while p * q < min_order {
        q = next_prime_above(q);
    }
    let eps = Rational::new((2 * q - 1) as i64, (2 * p * q) as i64);
    CounterexampleInstance::new(k, n, eps, p, q)
}

/// Outcome of checking every normal subgroup of index `≤ n` and every union
/// of its cosets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleVerdict {
    pub holds: bool,
    /// Normal subgroups examined.
    pub subgroups: usize,
    /// Smallest `|A△Y|` found over all candidates.
    pub min_sym_diff: usize,
    /// `ε·|G|`
    #[serde(with = "crate::rational::serde_p_q")]
    pub bound: Rational,
    /// Every `|A△Y|` value seen, ascending and deduplicated.
    pub sym_diffs: Vec<usize>,
    /// A coset union with `|A△Y| ≤ ε|G|`, if one exists.
    pub witness: Option<CounterexampleWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleWitness {
    pub subgroup: Subgroup,
    pub y_mask: SubsetMask,
    pub sym_diff: usize,
}

/// Exhaustively confirms `|A△Y| > ε|G|` for every normal `H` of index
/// `≤ n` and every union `Y` of cosets of `H`.
pub fn verify_counterexample(inst: &CounterexampleInstance) -> CounterexampleVerdict {
    let g = inst.group();
    let a = &inst.a_set;
    let bound = inst.eps * from_usize(g.order());
    let mut sym_diffs = Vec::new();
    let mut witness = None;
    let subgroups = enumerate_normal_subgroups(g, inst.n);
    for h in &subgroups {
        let parts = coset_partition(g, h);
        let m = parts.len();
        assert!(m < 26, "coset union enumeration capped at 2^25");
        for choice in 0u32..1 << m {
            let y = (0..m)
                .filter(|i| choice >> i & 1 == 1)
                .fold(SubsetMask::empty(g.order()), |acc, i| acc.union(&parts.cosets[i]));
            let d = a.symmetric_difference(&y).count();
            sym_diffs.push(d);
            if from_usize(d) <= bound && witness.as_ref().is_none_or(|w: &CounterexampleWitness| d < w.sym_diff) {
                witness = Some(CounterexampleWitness { subgroup: h.clone(), y_mask: y, sym_diff: d });
            }
        }
    }
    sym_diffs.sort_unstable();
    sym_diffs.dedup();
    CounterexampleVerdict {
        holds: witness.is_none(),
        subgroups: subgroups.len(),
        min_sym_diff: sym_diffs.first().copied().unwrap_or(usize::MAX),
        bound,
        sym_diffs,
        witness,
    }
}

/// A seeded union of cosets of `h` (each coset kept on a fair coin), then
/// `flips` distinct seeded elements toggled.
pub fn gen_noisy_coset_set(g: &Group, h: &Subgroup, flips: usize, seed: u64) -> Result<SubsetMask, CorpusError> {
    if flips > g.order() {
        return Err(CorpusError::TooManyFlips { flips, order: g.order() });
    }
    let mut rng = Lcg::new(seed);
    let mut mask = gen_coset_union(g, h, &mut rng);
    for x in rng.sample_distinct(g.order(), flips) {
        mask.toggle(x);
    }
    Ok(mask)
}

/// A seeded union of cosets of `h`.
pub fn gen_coset_union(g: &Group, h: &Subgroup, rng: &mut Lcg) -> SubsetMask {
    coset_partition(g, h)
        .cosets
        .iter()
        .fold(SubsetMask::empty(g.order()), |acc, c| if rng.coin() { acc.union(c) } else { acc })
}

/// A uniformly random subset (each element on a fair coin).
pub fn gen_random_set(g: &Group, seed: u64) -> SubsetMask {
    let mut rng = Lcg::new(seed);
    SubsetMask::from_indices(g.order(), (0..g.order()).filter(|_| rng.coin()))
}

/// `Z/m` with the interval `A = {0, …, k-1}`.
pub fn gen_interval_set(m: usize, k: usize) -> Result<(Group, SubsetMask), CorpusError> {
    if k == 0 {
        return Err(CorpusError::EmptyInterval);
    }
    if m < 4 * k {
        return Err(CorpusError::IntervalTooLong { m, k });
    }
    let g = build_group(&format!("cyclic:{m}")).map_err(|_| CorpusError::IntervalTooLong { m, k })?;
    Ok((g, SubsetMask::from_indices(m, 0..k)))
}

/// Distance from `mask` to the nearest union of cosets of `h`.
pub fn coset_distance(g: &Group, mask: &SubsetMask, h: &Subgroup) -> usize {
    optimal_coset_union(g, mask, h).1
}

/// One manifest line: a group descriptor, a subset spec, and a seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub line: usize,
    pub group: String,
    pub set: String,
    pub seed: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("manifest line {line}: expected `<group> <set> <seed>`, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("manifest line {line}: bad seed {text:?}")]
    Seed { line: usize, text: String },
}

/// Parses whitespace-separated `(group, set, seed)` triples, one per line.
/// Blank lines and `#` comments are skipped.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, ManifestError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let parts: Vec<&str> = body.split_whitespace().collect();
        let [group, set, seed] = parts[..] else {
            return Err(ManifestError::Syntax { line, text: raw.to_string() });
        };
        let seed = seed.parse().map_err(|_| ManifestError::Seed { line, text: seed.to_string() })?;
        out.push(ManifestEntry { line, group: group.to_string(), set: set.to_string(), seed });
    }
    Ok(out)
}
