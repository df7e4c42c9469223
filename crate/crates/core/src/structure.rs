//! Coset approximation of `A` by a union of cosets of a normal subgroup,
//! the per-coset dichotomy, and the regularity of the induced coset
//! partition of `C_A(G)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::group::{coset_partition, enumerate_normal_subgroups, normal_core, CosetPartition, Group, Subgroup};
use crate::mask::SubsetMask;
use crate::rational::{fmt_rational, from_usize, Rational};
use crate::regularity::{cayley_graph, PairKind, PairVerdict, RegularityError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("epsilon {} must lie strictly between 0 and 1", fmt_rational(.0))]
    InvalidEpsilon(Rational),
    #[error("max_index must be at least 1")]
    InvalidBudget,
    #[error("mask has length {got}, group order is {expected}")]
    MaskLength { expected: usize, got: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("no admissible normal subgroup of index at most {max_index}")]
    NoAdmissible { max_index: usize },
    #[error("no error bound given for index {0}")]
    MissingGamma(usize),
    #[error("translate budget {0} outside 1..=3")]
    InvalidTranslateBudget(usize),
    #[error(transparent)]
    Regularity(#[from] RegularityError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CosetVerdict {
    Sparse,
    Dense,
    Violation,
}

/// One coset of `H` and how `A` meets it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetEntry {
    pub coset: usize,
    pub representative: usize,
    /// `|C ∩ A|`
    pub inside: usize,
    /// `|C \ A|`
    pub outside: usize,
    pub verdict: CosetVerdict,
}

/// An admissible (or candidate) approximation `A ≈ Y` by cosets of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureResult {
    pub subgroup: Subgroup,
    pub y_mask: SubsetMask,
    pub sym_diff: usize,
    #[serde(with = "crate::rational::serde_p_q")]
    pub epsilon: Rational,
    /// `ε·|H|`
    #[serde(with = "crate::rational::serde_p_q")]
    pub threshold: Rational,
    pub index: usize,
    /// Coset membership in `Y`: dense cosets are taken, sparse ones are not.
    pub per_coset: Vec<CosetEntry>,
}

impl StructureResult {
    pub fn is_admissible(&self) -> bool {
        from_usize(self.sym_diff) <= self.threshold
    }
}

fn check_eps(eps: Rational) -> Result<(), StructureError> {
    if eps <= Rational::from_integer(0) || eps >= Rational::from_integer(1) {
        return Err(StructureError::InvalidEpsilon(eps));
    }
    Ok(())
}

fn check_mask(g: &Group, a: &SubsetMask) -> Result<(), StructureError> {
    if a.len() != g.order() {
        return Err(StructureError::MaskLength { expected: g.order(), got: a.len() });
    }
    Ok(())
}

/// `(|C ∩ A|, |C \ A|)` per coset.
fn coset_counts(parts: &CosetPartition, a: &SubsetMask) -> Vec<(usize, usize)> {
    parts
        .cosets
        .iter()
        .map(|c| {
            let inside = c.intersection_count(a);
            (inside, c.count() - inside)
        })
        .collect()
}

/// Union of the cosets where `A` is a strict majority. Over all `2^m`
/// coset unions this minimizes `|A△Y| = Σ_C min(|C∩A|, |C\A|)`.
pub fn optimal_coset_union(g: &Group, a: &SubsetMask, h: &Subgroup) -> (SubsetMask, usize) {
    let parts = coset_partition(g, h);
    let (y, sym_diff, _) = majority_union(&parts, a);
    (y, sym_diff)
}

fn majority_union(parts: &CosetPartition, a: &SubsetMask) -> (SubsetMask, usize, Vec<CosetEntry>) {
    let mut y = SubsetMask::empty(a.len());
    let mut sym_diff = 0;
    let mut entries = Vec::with_capacity(parts.len());
    for (i, (inside, outside)) in coset_counts(parts, a).into_iter().enumerate() {
        let take = inside > outside;
        if take {
            y = y.union(&parts.cosets[i]);
        }
        sym_diff += inside.min(outside);
        entries.push(CosetEntry {
            coset: i,
            representative: parts.representatives[i],
            inside,
            outside,
            verdict: if take { CosetVerdict::Dense } else { CosetVerdict::Sparse },
        });
    }
    (y, sym_diff, entries)
}

/// The optimal approximation by cosets of `h` at error `eps`, admissible or
/// not.
pub fn evaluate_subgroup(g: &Group, a: &SubsetMask, h: &Subgroup, eps: Rational) -> StructureResult {
    let parts = coset_partition(g, h);
    let (y_mask, sym_diff, per_coset) = majority_union(&parts, a);
    StructureResult {
        threshold: eps * from_usize(h.order()),
        index: h.index(),
        subgroup: h.clone(),
        y_mask,
        sym_diff,
        epsilon: eps,
        per_coset,
    }
}

/// Minimum-index normal `H` (ties by smallest mask) with a union of cosets
/// `Y` satisfying `|A△Y| ≤ ε|H|`.
pub fn find_structure(
    g: &Group,
    a: &SubsetMask,
    eps: Rational,
    max_index: usize,
) -> Result<StructureResult, StructureError> {
    check_eps(eps)?;
    if max_index == 0 {
        return Err(StructureError::InvalidBudget);
    }
    check_mask(g, a)?;
    let candidates = enumerate_normal_subgroups(g, max_index);
    find_structure_among(g, a, eps, &candidates)
        .ok_or(StructureError::NoAdmissible { max_index })
}

/// Like [`find_structure`] over a precomputed candidate list, which must be
/// sorted by (index, mask). Returns the first admissible candidate.
pub fn find_structure_among(
    g: &Group,
    a: &SubsetMask,
    eps: Rational,
    candidates: &[Subgroup],
) -> Option<StructureResult> {
    candidates
        .par_iter()
        .map(|h| evaluate_subgroup(g, a, h, eps))
        .find_first(StructureResult::is_admissible)
}

/// Every admissible result at the minimum admissible index.
pub fn minimal_witnesses(
    g: &Group,
    a: &SubsetMask,
    eps: Rational,
    max_index: usize,
) -> Result<Vec<StructureResult>, StructureError> {
    let best = find_structure(g, a, eps, max_index)?;
    Ok(enumerate_normal_subgroups(g, best.index)
        .into_iter()
        .filter(|h| h.index() == best.index)
        .map(|h| evaluate_subgroup(g, a, &h, eps))
        .filter(StructureResult::is_admissible)
        .collect())
}

/// Minimum-index normal `H` with `|A△Y| ≤ γ(m)·|H|`, where `m = [G:H]`.
/// `gamma` must cover every divisor of `|G|` up to `max_index`.
pub fn gamma_variant_search(
    g: &Group,
    a: &SubsetMask,
    gamma: &BTreeMap<usize, Rational>,
    max_index: usize,
) -> Result<StructureResult, StructureError> {
    if max_index == 0 {
        return Err(StructureError::InvalidBudget);
    }
    check_mask(g, a)?;
    let n = g.order();
    if let Some(m) = (1..=max_index.min(n)).filter(|m| n.is_multiple_of(*m)).find(|m| !gamma.contains_key(m)) {
        return Err(StructureError::MissingGamma(m));
    }
    enumerate_normal_subgroups(g, max_index)
        .par_iter()
        .map(|h| evaluate_subgroup(g, a, h, gamma[&h.index()]))
        .find_first(StructureResult::is_admissible)
        .ok_or(StructureError::NoAdmissible { max_index })
}

/// A point of the (index, `|A△Y|`) trade-off.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParetoPoint {
    pub index: usize,
    pub sym_diff: usize,
    pub subgroup: Subgroup,
}

/// Normal subgroups of index `≤ max_index` not dominated in
/// (index, sym_diff): each point has strictly smaller `|A△Y|` than every
/// point of smaller index.
pub fn pareto_front(g: &Group, a: &SubsetMask, max_index: usize) -> Vec<ParetoPoint> {
    let scored: Vec<ParetoPoint> = enumerate_normal_subgroups(g, max_index)
        .par_iter()
        .map(|h| ParetoPoint {
            index: h.index(),
            sym_diff: optimal_coset_union(g, a, h).1,
            subgroup: h.clone(),
        })
        .collect();
    let mut front: Vec<ParetoPoint> = Vec::new();
    let mut i = 0;
    while i < scored.len() {
        let index = scored[i].index;
        let layer_end = scored[i..].iter().position(|p| p.index != index).map_or(scored.len(), |d| i + d);
        let best = scored[i..layer_end].iter().min_by_key(|p| p.sym_diff).unwrap();
        if front.last().is_none_or(|last| best.sym_diff < last.sym_diff) {
            front.push(best.clone());
        }
        i = layer_end;
    }
    front
}

/// Per-coset report: each coset is sparse, dense, or a violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyReport {
    #[serde(with = "crate::rational::serde_p_q")]
    pub epsilon: Rational,
    #[serde(with = "crate::rational::serde_p_q")]
    pub threshold: Rational,
    pub cosets: Vec<CosetEntry>,
    pub pass: bool,
}

/// For each coset `C` of normal `h`: sparse if `|C∩A| ≤ ε|H|`, else dense
/// if `|C\A| ≤ ε|H|`, else a violation.
pub fn per_coset_dichotomy(
    g: &Group,
    a: &SubsetMask,
    h: &Subgroup,
    eps: Rational,
) -> Result<DichotomyReport, StructureError> {
    check_eps(eps)?;
    check_mask(g, a)?;
    if !h.is_normal() {
        return Err(StructureError::NotNormal);
    }
    let parts = coset_partition(g, h);
    let threshold = eps * from_usize(h.order());
    let cosets: Vec<CosetEntry> = coset_counts(&parts, a)
        .into_iter()
        .enumerate()
        .map(|(i, (inside, outside))| CosetEntry {
            coset: i,
            representative: parts.representatives[i],
            inside,
            outside,
            verdict: if from_usize(inside) <= threshold {
                CosetVerdict::Sparse
            } else if from_usize(outside) <= threshold {
                CosetVerdict::Dense
            } else {
                CosetVerdict::Violation
            },
        })
        .collect();
    let pass = cosets.iter().all(|c| c.verdict != CosetVerdict::Violation);
    Ok(DichotomyReport { epsilon: eps, threshold, cosets, pass })
}

/// The `m×m` matrix of uniform ε-goodness verdicts over ordered coset
/// pairs of `H` in `C_A(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    #[serde(with = "crate::rational::serde_p_q")]
    pub epsilon: Rational,
    pub matrix: Vec<Vec<PairKind>>,
    pub pass: bool,
    /// First failing pair in row-major order.
    pub witness: Option<FailingPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingPair {
    pub left: usize,
    pub right: usize,
    pub verdict: PairVerdict,
}

pub fn verify_corollary_partition(
    g: &Group,
    a: &SubsetMask,
    h: &Subgroup,
    eps: Rational,
) -> Result<PartitionReport, StructureError> {
    check_eps(eps)?;
    check_mask(g, a)?;
    if !h.is_normal() {
        return Err(StructureError::NotNormal);
    }
    let parts = coset_partition(g, h);
    let graph = cayley_graph(g, a);
    let m = parts.len();
    let verdicts: Vec<PairVerdict> = (0..m * m)
        .into_par_iter()
        .map(|ij| graph.is_uniformly_good(&parts.cosets[ij / m], &parts.cosets[ij % m], eps))
        .collect::<Result<_, _>>()?;
    let witness = verdicts
        .iter()
        .position(|v| v.kind == PairKind::Fail)
        .map(|ij| FailingPair { left: ij / m, right: ij % m, verdict: verdicts[ij].clone() });
    let matrix = verdicts.chunks(m).map(|row| row.iter().map(|v| v.kind).collect()).collect();
    Ok(PartitionReport { epsilon: eps, matrix, pass: witness.is_none(), witness })
}

/// A subgroup `K` in the Boolean algebra generated by a few left translates
/// of `A`, whose normal core is `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefinabilityWitness {
    pub translators: Vec<usize>,
    /// Disjunctive normal form: each atom lists, per translator `g_i`,
    /// whether it is `g_i A` (true) or its complement (false).
    pub atoms: Vec<Vec<bool>>,
    pub k: SubsetMask,
}

impl DefinabilityWitness {
    /// Renders e.g. `(0A ∩ 2A) ∪ (0A ∩ ¬2A)` using element labels.
    pub fn formula(&self, g: &Group) -> String {
        self.atoms
            .iter()
            .map(|atom| {
                let lits: Vec<String> = self
                    .translators
                    .iter()
                    .zip(atom)
                    .map(|(&t, &pos)| format!("{}{}A", if pos { "" } else { "¬" }, g.label(t)))
                    .collect();
                format!("({})", lits.join(" ∩ "))
            })
            .collect::<Vec<_>>()
            .join(" ∪ ")
    }
}

/// Bounded search for `K` built from at most `translate_budget` left
/// translates of `A` with `normal_core(K) = H`. `None` only means nothing
/// was found within the budget.
///
/// Translator sets are tried by size, then lexicographically; within a set,
/// unions of atoms by ascending atom bitmask.
pub fn definability_check(
    g: &Group,
    a: &SubsetMask,
    h: &Subgroup,
    translate_budget: usize,
) -> Result<Option<DefinabilityWitness>, StructureError> {
    check_mask(g, a)?;
    if !(1..=3).contains(&translate_budget) {
        return Err(StructureError::InvalidTranslateBudget(translate_budget));
    }
    if !h.is_normal() {
        return Err(StructureError::NotNormal);
    }
    let n = g.order();
    let translates: Vec<SubsetMask> = (0..n).map(|x| g.left_translate(x, a)).collect();
    for t in 1..=translate_budget {
        let found = combinations(n, t)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|combo| search_combo(g, h, &translates, &combo))
            .find_first(Option::is_some)
            .flatten();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn search_combo(
    g: &Group,
    h: &Subgroup,
    translates: &[SubsetMask],
    combo: &[usize],
) -> Option<DefinabilityWitness> {
    let n = g.order();
    let t = combo.len();
    let atoms: Vec<SubsetMask> = (0..1usize << t)
        .map(|signs| {
            combo.iter().enumerate().fold(SubsetMask::full(n), |acc, (i, &x)| {
                if signs >> i & 1 == 1 {
                    acc.intersection(&translates[x])
                } else {
                    acc.difference(&translates[x])
                }
            })
        })
        .collect();
    let live: Vec<usize> = (0..atoms.len()).filter(|&s| !atoms[s].is_empty()).collect();
    let id_atom = live.iter().position(|&s| atoms[s].contains(g.identity()))?;
    let others: Vec<usize> = (0..live.len()).filter(|&i| i != id_atom).collect();
    for choice in 0u32..1 << others.len() {
        let mut picked = vec![live[id_atom]];
        picked.extend((0..others.len()).filter(|&j| choice >> j & 1 == 1).map(|j| live[others[j]]));
        picked.sort_unstable();
        let k = picked.iter().fold(SubsetMask::empty(n), |acc, &s| acc.union(&atoms[s]));
        if !n.is_multiple_of(k.count()) || !h.elements().is_subset(&k) {
            continue;
        }
        let Ok(sub) = Subgroup::new(g, k.clone()) else { continue };
        if normal_core(g, &sub).elements() == h.elements() {
            let atoms = picked
                .iter()
                .map(|&s| (0..t).map(|i| s >> i & 1 == 1).collect())
                .collect();
            return Some(DefinabilityWitness { translators: combo.to_vec(), atoms, k });
        }
    }
    None
}

/// `t`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, t: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (t <= n).then(|| (0..t).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut c = cur.clone();
        if let Some(i) = (0..t).rev().find(|&i| c[i] < n - t + i) {
            c[i] += 1;
            for j in i + 1..t {
                c[j] = c[j - 1] + 1;
            }
            next = Some(c);
        }
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn set(n: usize, xs: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(n, xs.iter().copied())
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn sub(g: &Group, xs: &[usize]) -> Subgroup {
        Subgroup::new(g, set(g.order(), xs)).unwrap()
    }

    #[test]
    fn coset_union_examples() {
        let z15 = build_group("cyclic:15").unwrap();
        let h = sub(&z15, &[0, 3, 6, 9, 12]);
        let (y, d) = optimal_coset_union(&z15, h.elements(), &h);
        assert_eq!((y, d), (h.elements().clone(), 0));
        let (y, d) = optimal_coset_union(&z15, &set(15, &[]), &h);
        assert_eq!((y.count(), d), (0, 0));
        // drop 12, add 1
        let noisy = set(15, &[0, 1, 3, 6, 9]);
        let (y, d) = optimal_coset_union(&z15, &noisy, &h);
        assert_eq!((y, d), (h.elements().clone(), 2));
    }

    #[test]
    fn ties_are_left_out() {
        let z4 = build_group("cyclic:4").unwrap();
        let h = sub(&z4, &[0, 2]);
        let (y, d) = optimal_coset_union(&z4, &set(4, &[0, 1]), &h);
        assert!(y.is_empty());
        assert_eq!(d, 2);
    }

    #[test]
    fn find_structure_examples() {
        let z15 = build_group("product:cyclic:3,cyclic:5").unwrap();
        let a = set(15, &[0, 3, 6, 9, 12]);
        let res = find_structure(&z15, &a, r(1, 10), 15).unwrap();
        assert_eq!((res.index, res.sym_diff), (3, 0));
        assert_eq!(res.y_mask, a);
        assert_eq!(res.subgroup.elements(), &a);

        let mut flipped = a.clone();
        flipped.toggle(1);
        let res = find_structure(&z15, &flipped, r(3, 10), 15).unwrap();
        assert_eq!((res.index, res.sym_diff), (3, 1));
        assert!(res.is_admissible());

        let all = SubsetMask::full(15);
        let res = find_structure(&z15, &all, r(1, 2), 15).unwrap();
        assert_eq!((res.index, res.sym_diff), (1, 0));
    }

    #[test]
    fn find_structure_errors() {
        let z6 = build_group("cyclic:6").unwrap();
        let a = set(6, &[0, 1]);
        assert_eq!(find_structure(&z6, &a, r(0, 1), 6), Err(StructureError::InvalidEpsilon(r(0, 1))));
        assert_eq!(find_structure(&z6, &a, r(1, 1), 6), Err(StructureError::InvalidEpsilon(r(1, 1))));
        assert_eq!(find_structure(&z6, &a, r(1, 10), 0), Err(StructureError::InvalidBudget));
        // {0,1} is not within 6/10 of any coset union of index ≤ 3
        assert_eq!(
            find_structure(&z6, &a, r(1, 10), 3),
            Err(StructureError::NoAdmissible { max_index: 3 })
        );
        assert_eq!(find_structure(&z6, &a, r(1, 10), 6).unwrap().index, 6);
    }

    #[test]
    fn minimal_witnesses_share_the_minimum_index() {
        let z12 = build_group("cyclic:12").unwrap();
        for (a, eps) in [(set(12, &[0, 1, 2]), r(1, 10)), (set(12, &[0, 6, 1]), r(1, 3))] {
            let best = find_structure(&z12, &a, eps, 12).unwrap();
            let ws = minimal_witnesses(&z12, &a, eps, 12).unwrap();
            assert!(ws.contains(&best));
            assert!(ws.iter().all(|w| w.index == best.index && w.is_admissible()));
        }
    }

    #[test]
    fn gamma_variant_examples() {
        let z15 = build_group("cyclic:15").unwrap();
        let a = set(15, &[0, 3, 6, 9, 12]);
        let inv: BTreeMap<usize, Rational> = [1, 3, 5, 15].into_iter().map(|m| (m, r(1, m as i64))).collect();
        // γ(1) = 1 admits G itself: |A△∅| = 5 ≤ 15
        let res = gamma_variant_search(&z15, &a, &inv, 15).unwrap();
        assert_eq!((res.index, res.sym_diff), (1, 5));
        let mut strict = inv.clone();
        strict.insert(1, r(1, 10));
        let res = gamma_variant_search(&z15, &a, &strict, 15).unwrap();
        assert_eq!((res.index, res.sym_diff), (3, 0));

        let constant: BTreeMap<usize, Rational> = [1, 3, 5, 15].into_iter().map(|m| (m, r(3, 10))).collect();
        let mut noisy = a.clone();
        noisy.toggle(2);
        assert_eq!(
            gamma_variant_search(&z15, &noisy, &constant, 15).unwrap(),
            find_structure(&z15, &noisy, r(3, 10), 15).unwrap()
        );

        let zero: BTreeMap<usize, Rational> = [1, 3, 5, 15].into_iter().map(|m| (m, r(0, 1))).collect();
        let res = gamma_variant_search(&z15, &noisy, &zero, 15).unwrap();
        assert_eq!((res.index, res.sym_diff), (15, 0));

        let partial: BTreeMap<usize, Rational> = [(1, r(1, 2))].into_iter().collect();
        assert_eq!(gamma_variant_search(&z15, &a, &partial, 15), Err(StructureError::MissingGamma(3)));
    }

    #[test]
    fn pareto_front_is_decreasing() {
        let z12 = build_group("cyclic:12").unwrap();
        let a = set(12, &[0, 1, 2]);
        let front = pareto_front(&z12, &a, 12);
        assert_eq!(front.first().unwrap().index, 1);
        assert_eq!(front.last().unwrap().sym_diff, 0);
        for w in front.windows(2) {
            assert!(w[0].index < w[1].index && w[0].sym_diff > w[1].sym_diff);
        }
    }

    #[test]
    fn dichotomy_examples() {
        let z6 = build_group("cyclic:6").unwrap();
        let h = sub(&z6, &[0, 2, 4]);
        let rep = per_coset_dichotomy(&z6, h.elements(), &h, r(1, 10)).unwrap();
        assert!(rep.pass);
        let kinds: Vec<_> = rep.cosets.iter().map(|c| c.verdict).collect();
        assert_eq!(kinds, [CosetVerdict::Dense, CosetVerdict::Sparse]);

        let rep = per_coset_dichotomy(&z6, &set(6, &[0, 1, 2]), &h, r(1, 10)).unwrap();
        assert!(!rep.pass);
        assert_eq!((rep.cosets[0].inside, rep.cosets[0].outside), (2, 1));
        assert_eq!(rep.cosets[0].verdict, CosetVerdict::Violation);

        let s3 = build_group("symmetric:3").unwrap();
        let not_normal = sub(&s3, &[0, 1]);
        assert_eq!(
            per_coset_dichotomy(&s3, &set(6, &[0]), &not_normal, r(1, 10)),
            Err(StructureError::NotNormal)
        );
    }

    #[test]
    fn corollary_partition_examples() {
        let z6 = build_group("cyclic:6").unwrap();
        let h = sub(&z6, &[0, 2, 4]);
        for eps in [r(1, 100), r(1, 3), r(99, 100)] {
            let rep = verify_corollary_partition(&z6, h.elements(), &h, eps).unwrap();
            assert!(rep.pass);
            if eps < r(1, 3) {
                assert_eq!(
                    rep.matrix,
                    vec![vec![PairKind::Dense, PairKind::Sparse], vec![PairKind::Sparse, PairKind::Dense]]
                );
            }
        }
        let rep = verify_corollary_partition(&z6, &set(6, &[0, 1, 2]), &h, r(1, 10)).unwrap();
        assert!(!rep.pass);
        let w = rep.witness.unwrap();
        assert_eq!(w.verdict.kind, PairKind::Fail);
        assert_eq!(rep.matrix[w.left][w.right], PairKind::Fail);
    }

    #[test]
    fn definability_examples() {
        let z6 = build_group("cyclic:6").unwrap();
        let h = sub(&z6, &[0, 2, 4]);

        let w = definability_check(&z6, h.elements(), &h, 1).unwrap().unwrap();
        assert_eq!((w.translators.clone(), w.k.clone()), (vec![0], h.elements().clone()));
        assert_eq!(w.formula(&z6), "(0A)");

        let coset = set(6, &[1, 3, 5]);
        let w = definability_check(&z6, &coset, &h, 1).unwrap().unwrap();
        assert_eq!(w.translators.len(), 1);
        assert_eq!(&w.k, h.elements());

        let a = set(6, &[0, 1, 2, 4]);
        assert_eq!(definability_check(&z6, &a, &h, 1).unwrap(), None);
        let w = definability_check(&z6, &a, &h, 2).unwrap().unwrap();
        assert_eq!(&w.k, h.elements());
        let direct = a.intersection(&z6.left_translate(2, &a));
        assert_eq!(&direct, h.elements());

        assert_eq!(definability_check(&z6, &a, &h, 4), Err(StructureError::InvalidTranslateBudget(4)));
    }

    #[test]
    fn combinations_in_order() {
        let all: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 3).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }
}
