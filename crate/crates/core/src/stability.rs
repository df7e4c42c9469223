//! Half-graph ladder index and translate covers.
//!
//! A height-`k` half graph in `A ⊆ G` is a pair of tuples `a_1..a_k`,
//! `b_1..b_k` with `a_i·b_j ∈ A` exactly when `i ≤ j`. The ladder index is
//! the largest such `k`; `A` is then `(k+1)`-stable and not `k`-stable.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::group::Group;
use crate::mask::SubsetMask;

pub const DEFAULT_K_CAP: usize = 16;
pub const DEFAULT_EXACT_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilityError {
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("mask has length {got}, group has order {order}")]
    MaskLength { got: usize, order: usize },
    #[error("the empty set has no translate cover")]
    EmptySet,
}

/// Witness tuples for a half graph of the given height.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfGraphCertificate {
    pub height: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl HalfGraphCertificate {
    /// The first `k` rows and columns, itself a certificate of height `k`.
    pub fn prefix(&self, k: usize) -> Self {
        assert!(k <= self.height);
        Self { height: k, a: self.a[..k].to_vec(), b: self.b[..k].to_vec() }
    }
}

fn check_mask(g: &Group, a: &SubsetMask) -> Result<(), StabilityError> {
    if a.len() != g.order() {
        return Err(StabilityError::MaskLength { got: a.len(), order: g.order() });
    }
    Ok(())
}

/// `true` iff `a_i·b_j ∈ A ⇔ i ≤ j` for all `k²` pairs.
pub fn verify_certificate(
    g: &Group,
    a: &SubsetMask,
    cert: &HalfGraphCertificate,
) -> Result<bool, StabilityError> {
    check_mask(g, a)?;
    if cert.a.len() != cert.height || cert.b.len() != cert.height {
        return Err(StabilityError::MalformedCertificate(format!(
            "height {} with {} a's and {} b's",
            cert.height,
            cert.a.len(),
            cert.b.len()
        )));
    }
    if let Some(&index) = cert.a.iter().chain(&cert.b).find(|&&x| x >= g.order()) {
        return Err(StabilityError::IndexOutOfRange { index, order: g.order() });
    }
    Ok(cert.a.iter().enumerate().all(|(i, &ai)| {
        cert.b.iter().enumerate().all(|(j, &bj)| a.contains(g.mul(ai, bj)) == (i <= j))
    }))
}

/// Exact ladder index capped at `k_cap`, with a certificate when it is
/// positive.
///
/// The certificate always has `a_1` equal to the identity: any half graph
/// `(a_i, b_j)` can be moved to `(a_i h, h⁻¹ b_j)` with `h = a_1⁻¹`.
pub fn ladder_index(
    g: &Group,
    a: &SubsetMask,
    k_cap: usize,
) -> (usize, Option<HalfGraphCertificate>) {
    assert!(k_cap >= 1, "k_cap must be positive");
    assert_eq!(a.len(), g.order(), "mask length must equal group order");
    LadderSearch::new(g, a).run(k_cap)
}

/// Whether `A` is `k`-stable; otherwise a certificate of height exactly `k`.
pub fn is_k_stable(
    g: &Group,
    a: &SubsetMask,
    k: usize,
) -> (bool, Option<HalfGraphCertificate>) {
    assert!(k >= 1, "k must be positive");
    let (found, cert) = ladder_index(g, a, k);
    if found >= k {
        (false, cert)
    } else {
        (true, None)
    }
}

/// Branch-and-bound over sequences of distinct row sets.
///
/// Row `R(x) = {y : x·y ∈ A} = x⁻¹A`. Having chosen rows `R_1..R_t`, the
/// frame keeps `I_t = R_1 ∩ .. ∩ R_t` and, for `j < t`, the candidate sets
/// `S_j = I_j \ (R_{j+1} ∪ .. ∪ R_t)` from which `b_j` must come. Adding a
/// row only shrinks these sets, so an empty one prunes the branch. The
/// `b`'s of any extension are distinct members of `I_t`, which bounds the
/// reachable height by `t - 1 + |I_t|`.
struct LadderSearch {
    words: usize,
    rows: Vec<Vec<u64>>,
    row_rep: Vec<usize>,
    root: usize,
    empty: bool,
}

struct Best {
    height: usize,
    rows: Vec<usize>,
    b: Vec<usize>,
    target: usize,
}

fn popcount(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

fn lowest(w: &[u64]) -> usize {
    let (i, x) = w.iter().enumerate().find(|(_, x)| **x != 0).expect("nonempty");
    i * 64 + x.trailing_zeros() as usize
}

impl LadderSearch {
    fn new(g: &Group, a: &SubsetMask) -> Self {
        let n = g.order();
        let words = n.div_ceil(64);
        let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut rows = Vec::new();
        let mut row_rep = Vec::new();
        let mut row_of = vec![0; n];
        for x in 0..n {
            let mut r = vec![0u64; words];
            for y in 0..n {
                if a.contains(g.mul(x, y)) {
                    r[y / 64] |= 1 << (y % 64);
                }
            }
            row_of[x] = *index.entry(r.clone()).or_insert_with(|| {
                rows.push(r);
                row_rep.push(x);
                rows.len() - 1
            });
        }
        let root = row_of[g.identity()];
        // the identity is the canonical a_1 for its row
        row_rep[root] = g.identity();
        Self { words, rows, row_rep, root, empty: a.is_empty() }
    }

    fn run(&self, target: usize) -> (usize, Option<HalfGraphCertificate>) {
        if self.empty {
            return (0, None);
        }
        let mut best = Best { height: 0, rows: Vec::new(), b: Vec::new(), target };
        let mut chosen = vec![self.root];
        let frame = self.rows[self.root].clone();
        self.descend(&frame, &mut chosen, &mut best);
        let cert = HalfGraphCertificate {
            height: best.height,
            a: best.rows.iter().map(|&r| self.row_rep[r]).collect(),
            b: best.b,
        };
        (best.height, Some(cert))
    }

    /// `frame` holds `[I_t, S_1, .., S_{t-1}]`, `t = chosen.len()`, all
    /// nonempty.
    fn descend(&self, frame: &[u64], chosen: &mut Vec<usize>, best: &mut Best) {
        let w = self.words;
        let t = chosen.len();
        if t > best.height {
            best.height = t;
            best.rows = chosen.clone();
            best.b = (1..t).map(|j| lowest(&frame[j * w..(j + 1) * w])).collect();
            best.b.push(lowest(&frame[..w]));
        }
        if best.height >= best.target {
            return;
        }
        let i_t = &frame[..w];
        if t - 1 + popcount(i_t) <= best.height {
            return;
        }
        let mut next = vec![0u64; (t + 1) * w];
        'rows: for (r, row) in self.rows.iter().enumerate() {
            // I_{t+1} = I_t ∩ R
            for k in 0..w {
                next[k] = i_t[k] & row[k];
            }
            if next[..w].iter().all(|&x| x == 0) {
                continue;
            }
            // S_j ← S_j \ R for j < t, and S_t = I_t \ R
            for j in 1..=t {
                let src = if j == t { 0 } else { j };
                let mut any = 0;
                for k in 0..w {
                    let v = frame[src * w + k] & !row[k];
                    next[j * w + k] = v;
                    any |= v;
                }
                if any == 0 {
                    continue 'rows;
                }
            }
            chosen.push(r);
            self.descend(&next, chosen, best);
            chosen.pop();
            if best.height >= best.target {
                return;
            }
        }
    }
}

/// Outcome of a translate-cover search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub cover_size: usize,
    /// `g_i` with `⋃ g_i·A = G`.
    pub translators: Vec<usize>,
    /// Minimality was proven within the node budget.
    pub exact: bool,
    pub nodes: u64,
}

/// Fewest left translates `g·A` covering `G`.
///
/// Greedy gives the initial bound; a branch-and-bound set-cover search then
/// tries to prove or improve it within `exact_limit` nodes. Any cover can be
/// translated so that it contains `A` itself, so the search fixes that
/// translate first.
pub fn translate_cover_number(
    g: &Group,
    a: &SubsetMask,
    exact_limit: u64,
) -> Result<CoverResult, StabilityError> {
    check_mask(g, a)?;
    if a.is_empty() {
        return Err(StabilityError::EmptySet);
    }
    let n = g.order();
    let mut index: HashMap<SubsetMask, usize> = HashMap::new();
    let mut translates: Vec<SubsetMask> = Vec::new();
    let mut reps = Vec::new();
    for x in 0..n {
        let t = g.left_translate(x, a);
        index.entry(t.clone()).or_insert_with(|| {
            translates.push(t);
            reps.push(x);
            translates.len() - 1
        });
    }
    let mut covers_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, t) in translates.iter().enumerate() {
        for x in t.iter() {
            covers_of[x].push(i);
        }
    }

    // greedy
    let mut uncovered = SubsetMask::full(n);
    let mut greedy = Vec::new();
    while !uncovered.is_empty() {
        let (best, _) = translates
            .iter()
            .enumerate()
            .map(|(i, t)| (i, t.intersection_count(&uncovered)))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        greedy.push(best);
        uncovered = uncovered.difference(&translates[best]);
    }

    let identity_translate = index[a];
    let mut search = CoverSearch {
        translates: &translates,
        covers_of: &covers_of,
        set_size: a.count(),
        best: greedy.clone(),
        nodes: 0,
        limit: exact_limit,
        aborted: false,
    };
    let covered = translates[identity_translate].clone();
    let mut chosen = vec![identity_translate];
    search.descend(&covered, &mut chosen);

    let mut translators: Vec<usize> = search.best.iter().map(|&i| reps[i]).collect();
    translators.sort_unstable();
    Ok(CoverResult {
        cover_size: translators.len(),
        translators,
        exact: !search.aborted,
        nodes: search.nodes,
    })
}

struct CoverSearch<'a> {
    translates: &'a [SubsetMask],
    covers_of: &'a [Vec<usize>],
    set_size: usize,
    best: Vec<usize>,
    nodes: u64,
    limit: u64,
    aborted: bool,
}

impl CoverSearch<'_> {
    fn descend(&mut self, covered: &SubsetMask, chosen: &mut Vec<usize>) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.aborted = true;
            return;
        }
        let missing = covered.len() - covered.count();
        if missing == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + missing.div_ceil(self.set_size) >= self.best.len() {
            return;
        }
        let x = covered.complement().first().unwrap();
        let mut options: Vec<(usize, usize)> = self.covers_of[x]
            .iter()
            .map(|&i| (i, self.translates[i].count() - self.translates[i].intersection_count(covered)))
            .collect();
        options.sort_by(|p, q| q.1.cmp(&p.1).then(p.0.cmp(&q.0)));
        for (i, _) in options {
            chosen.push(i);
            let next = covered.union(&self.translates[i]);
            self.descend(&next, chosen);
            chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}
