//! Subgroups, conjugacy classes, normal subgroups and cosets.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Group, GroupError};
use crate::mask::SubsetMask;

/// A subgroup together with its index and normality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    elements: SubsetMask,
    index: usize,
    is_normal: bool,
}

impl Subgroup {
    /// Validates closure and computes normality.
    pub fn new(g: &Group, elements: SubsetMask) -> Result<Self, GroupError> {
        if elements.len() != g.order() {
            return Err(GroupError::NotASubgroup(format!(
                "mask length {} does not match group order {}",
                elements.len(),
                g.order()
            )));
        }
        if !is_subgroup_mask(g, &elements) {
            return Err(GroupError::NotASubgroup(format!("{elements:?}")));
        }
        Ok(Self::trusted(g, elements))
    }

    /// For masks already known to be subgroups.
    pub(crate) fn trusted(g: &Group, elements: SubsetMask) -> Self {
        let is_normal = is_normal_mask(g, &elements);
        Self::with_normality(g, elements, is_normal)
    }

    fn with_normality(g: &Group, elements: SubsetMask, is_normal: bool) -> Self {
        debug_assert_eq!(g.order() % elements.count(), 0);
        Self { index: g.order() / elements.count(), elements, is_normal }
    }

    pub fn whole(g: &Group) -> Self {
        Self::with_normality(g, SubsetMask::full(g.order()), true)
    }

    pub fn trivial(g: &Group) -> Self {
        Self::with_normality(g, SubsetMask::from_indices(g.order(), [g.identity()]), true)
    }

    pub fn elements(&self) -> &SubsetMask {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.count()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(x)
    }
}

/// Nonempty, contains the identity and is closed under the product. In a
/// finite group that already makes it a subgroup.
pub fn is_subgroup_mask(g: &Group, s: &SubsetMask) -> bool {
    if !s.contains(g.identity()) {
        return false;
    }
    let members = s.to_vec();
    members.iter().all(|&a| members.iter().all(|&b| s.contains(g.mul(a, b))))
}

/// Invariance under conjugation by a generating set of `g`.
pub fn is_normal_mask(g: &Group, s: &SubsetMask) -> bool {
    g.generators().iter().all(|&x| s.iter().all(|h| s.contains(g.conjugate(x, h))))
}

/// Smallest subgroup containing `generators`.
pub fn subgroup_closure(g: &Group, generators: &SubsetMask) -> SubsetMask {
    let mut span = SubsetMask::from_indices(g.order(), [g.identity()]);
    let mut members = vec![g.identity()];
    let mut gens = Vec::new();
    for x in generators.iter() {
        extend_closure(g, &mut span, &mut members, &mut gens, x);
    }
    span
}

/// Adds generator `x` to the subgroup `span` (with element list `members` and
/// generators `gens`), multiplying on the right until closed.
fn extend_closure(
    g: &Group,
    span: &mut SubsetMask,
    members: &mut Vec<usize>,
    gens: &mut Vec<usize>,
    x: usize,
) {
    if span.contains(x) {
        return;
    }
    gens.push(x);
    // old members only need the new generator; new members need all of them
    let old = members.len();
    for i in 0..old {
        let y = g.mul(members[i], x);
        if span.insert(y) {
            members.push(y);
        }
    }
    let mut next = old;
    while next < members.len() {
        let z = members[next];
        next += 1;
        for &t in gens.iter() {
            let y = g.mul(z, t);
            if span.insert(y) {
                members.push(y);
            }
        }
    }
}

/// Conjugacy classes, each sorted, ordered by smallest member.
pub fn conjugacy_classes(g: &Group) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        assigned[x] = true;
        let mut class = vec![x];
        let mut next = 0;
        while next < class.len() {
            let y = class[next];
            next += 1;
            for &t in g.generators() {
                let z = g.conjugate(t, y);
                if !assigned[z] {
                    assigned[z] = true;
                    class.push(z);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// All normal subgroups of index at most `max_index`, sorted by index and
/// then by element mask.
///
/// Every normal subgroup is a union of conjugacy classes, and is reached from
/// the trivial subgroup by repeatedly joining in the normal closure of one
/// more class. The search walks that join lattice, so only actual normal
/// subgroups are ever materialized.
pub fn enumerate_normal_subgroups(g: &Group, max_index: usize) -> Vec<Subgroup> {
    let classes = conjugacy_classes(g);
    let e = g.identity();
    let trivial = SubsetMask::from_indices(g.order(), [e]);

    let mut seen: HashSet<SubsetMask> = HashSet::new();
    seen.insert(trivial.clone());
    let mut frontier = vec![(trivial, vec![e], Vec::<usize>::new())];
    let mut found = Vec::new();
    while let Some((span, members, gens)) = frontier.pop() {
        for class in &classes {
            if span.contains(class[0]) {
                continue;
            }
            let (mut s, mut m, mut t) = (span.clone(), members.clone(), gens.clone());
            for &x in class {
                extend_closure(g, &mut s, &mut m, &mut t, x);
            }
            if seen.insert(s.clone()) {
                frontier.push((s, m, t));
            }
        }
        found.push(span);
    }

    let mut out: Vec<Subgroup> = found
        .into_iter()
        .filter(|s| g.order() / s.count() <= max_index)
        .map(|s| Subgroup::with_normality(g, s, true))
        .collect();
    out.sort_by(|a, b| a.index.cmp(&b.index).then_with(|| a.elements.cmp(&b.elements)));
    out
}

/// `⋂_{x∈G} xKx⁻¹`, the largest normal subgroup of `g` inside `k`.
pub fn normal_core(g: &Group, k: &Subgroup) -> Subgroup {
    if k.is_normal {
        return k.clone();
    }
    let mut core = k.elements.clone();
    let mut done = SubsetMask::empty(g.order());
    // xKx⁻¹ depends only on the left coset xK
    for x in 0..g.order() {
        if done.contains(x) {
            continue;
        }
        for h in k.elements.iter() {
            done.insert(g.mul(x, h));
        }
        core = core.intersection(&g.conjugate_set(x, &k.elements));
    }
    Subgroup::with_normality(g, core, true)
}

/// Left cosets `xH` of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetPartition {
    pub subgroup: Subgroup,
    /// Coset 0 is `H`; the rest follow in order of smallest member.
    pub cosets: Vec<SubsetMask>,
    /// Smallest member of each coset.
    pub representatives: Vec<usize>,
    /// Coset id of each element.
    pub coset_of: Vec<usize>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

pub fn coset_partition(g: &Group, h: &Subgroup) -> CosetPartition {
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets = Vec::with_capacity(h.index);
    let mut representatives = Vec::with_capacity(h.index);
    let starts = std::iter::once(g.identity()).chain(0..n);
    for x in starts {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = cosets.len();
        let coset = g.left_translate(x, &h.elements);
        for y in coset.iter() {
            coset_of[y] = id;
        }
        representatives.push(coset.first().unwrap());
        cosets.push(coset);
    }
    CosetPartition { subgroup: h.clone(), cosets, representatives, coset_of }
}
