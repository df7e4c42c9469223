//! The bipartite Cayley graph `C_A(G)` and pair-quality predicates.
//!
//! `C_A(G)` has two copies of `G` as its sides, with an edge `(v, w)`
//! exactly when `v·w ∈ A`. Degrees into a set `S` are `|A ∩ vS|` on the
//! left and `|A ∩ Sw|` on the right.
//!
//! Verdicts compare integers against rational thresholds exactly; the
//! non-strict inequalities (`≤ ε|X|`, `≥ (1-ε)|X|`, `|X₀| ≥ ε|X|`) are
//! applied as written.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::group::Group;
use crate::mask::SubsetMask;
use crate::rational::{from_usize, Rational};
use crate::rng::Lcg;

/// Default bound on `|X| + |Y|` for exhaustive sub-pair scans.
pub const DEFAULT_SIZE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegularityError {
    #[error("pair sides differ in size ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("empty side")]
    EmptySide,
    #[error("|X| + |Y| = {size} exceeds the exhaustive cap {cap}; use the sampled check")]
    CapExceeded { size: usize, cap: usize },
    #[error("epsilon {0} outside the required range")]
    EpsilonOutOfRange(Rational),
    #[error("pair is not uniformly ε²-good (verdict {:?})", .0.kind)]
    NotUniformlyGood(Box<PairVerdict>),
    #[error("at least one trial is required")]
    NoTrials,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// `C_A(G)` with materialized rows and columns.
#[derive(Clone, Debug)]
pub struct BipartiteCayleyGraph<'g> {
    group: &'g Group,
    a_set: SubsetMask,
    rows: Vec<SubsetMask>,
    cols: Vec<SubsetMask>,
}

pub fn cayley_graph<'g>(g: &'g Group, a: &SubsetMask) -> BipartiteCayleyGraph<'g> {
    BipartiteCayleyGraph::new(g, a)
}

impl<'g> BipartiteCayleyGraph<'g> {
    pub fn new(g: &'g Group, a: &SubsetMask) -> Self {
        assert_eq!(a.len(), g.order(), "mask length must equal group order");
        let n = g.order();
        let mut rows = vec![SubsetMask::empty(n); n];
        let mut cols = vec![SubsetMask::empty(n); n];
        for v in 0..n {
            for w in 0..n {
                if a.contains(g.mul(v, w)) {
                    rows[v].insert(w);
                    cols[w].insert(v);
                }
            }
        }
        Self { group: g, a_set: a.clone(), rows, cols }
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn a_set(&self) -> &SubsetMask {
        &self.a_set
    }

    /// Right neighbours of left vertex `v`.
    pub fn row(&self, v: usize) -> &SubsetMask {
        &self.rows[v]
    }

    /// Left neighbours of right vertex `w`.
    pub fn col(&self, w: usize) -> &SubsetMask {
        &self.cols[w]
    }

    #[inline]
    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.rows[v].contains(w)
    }

    pub fn degree(&self, side: Side, v: usize, s: &SubsetMask) -> usize {
        match side {
            Side::Left => self.rows[v].intersection_count(s),
            Side::Right => self.cols[v].intersection_count(s),
        }
    }

    pub fn edge_count(&self, x: &SubsetMask, y: &SubsetMask) -> usize {
        x.iter().map(|v| self.rows[v].intersection_count(y)).sum()
    }

    /// `|E ∩ (X×Y)| / |X×Y|`
    pub fn density(&self, x: &SubsetMask, y: &SubsetMask) -> Result<Rational, RegularityError> {
        if x.is_empty() || y.is_empty() {
            return Err(RegularityError::EmptySide);
        }
        let edges = self.edge_count(x, y);
        Ok(Rational::new(edges as i64, (x.count() * y.count()) as i64))
    }

    /// Uniform ε-goodness of an equal-size pair: every left degree into `Y`
    /// and every right degree from `X` share one value `d`, which is either
    /// `≤ ε|X|` (sparse) or `≥ (1-ε)|X|` (dense).
    pub fn is_uniformly_good(
        &self,
        x: &SubsetMask,
        y: &SubsetMask,
        eps: Rational,
    ) -> Result<PairVerdict, RegularityError> {
        if x.count() != y.count() {
            return Err(RegularityError::SizeMismatch { left: x.count(), right: y.count() });
        }
        if x.is_empty() {
            return Err(RegularityError::EmptySide);
        }
        let degrees = x
            .iter()
            .map(|v| VertexDegree { side: Side::Left, vertex: v, degree: self.degree(Side::Left, v, y) })
            .chain(y.iter().map(|w| VertexDegree {
                side: Side::Right,
                vertex: w,
                degree: self.degree(Side::Right, w, x),
            }));
        let mut reference: Option<VertexDegree> = None;
        for vd in degrees {
            match reference {
                None => reference = Some(vd),
                Some(r) if r.degree != vd.degree => {
                    return Ok(PairVerdict {
                        kind: PairKind::Fail,
                        epsilon: eps,
                        degree: None,
                        witness: Some(GoodnessWitness::UnequalDegrees { first: r, second: vd }),
                    });
                }
                Some(_) => {}
            }
        }
        let r = reference.unwrap();
        let d = from_usize(r.degree);
        let size = from_usize(x.count());
        let kind = if d <= eps * size {
            PairKind::Sparse
        } else if d >= (Rational::from_integer(1) - eps) * size {
            PairKind::Dense
        } else {
            return Ok(PairVerdict {
                kind: PairKind::Fail,
                epsilon: eps,
                degree: Some(r.degree),
                witness: Some(GoodnessWitness::MiddleBand(r)),
            });
        };
        Ok(PairVerdict { kind, epsilon: eps, degree: Some(r.degree), witness: None })
    }

    /// Exhaustive ε-regularity: every `X₀ ⊆ X`, `Y₀ ⊆ Y` with
    /// `|X₀| ≥ ε|X|` and `|Y₀| ≥ ε|Y|` has `|d(X,Y) - d(X₀,Y₀)| < ε`.
    ///
    /// Scans `2^|X| · 2^|Y|` sub-pairs; the reported witness is the first
    /// violation in ascending (local `X₀` mask, local `Y₀` mask) order.
    pub fn is_regular_exact(
        &self,
        x: &SubsetMask,
        y: &SubsetMask,
        eps: Rational,
        size_cap: usize,
    ) -> Result<RegularityVerdict, RegularityError> {
        let scan = SubPairScan::new(self, x, y, size_cap)?;
        let pair_density = Rational::new(scan.total_edges as i64, (scan.p * scan.q) as i64);
        let witness = scan.first_irregular(eps).map(|(mx, my, e)| scan.witness(mx, my, e));
        let checked = scan.qualifying_count(eps);
        Ok(RegularityVerdict {
            outcome: if witness.is_some() {
                RegularityOutcome::Irregular
            } else {
                RegularityOutcome::Regular
            },
            epsilon: eps,
            pair_density,
            checked,
            witness,
        })
    }

    /// One-sided sampled ε-regularity. Each trial draws a qualifying size
    /// uniformly, then a uniform subset of that size, for each side.
    /// Never reports a pass, only "no violation found".
    pub fn is_regular_sampled(
        &self,
        x: &SubsetMask,
        y: &SubsetMask,
        eps: Rational,
        trials: u64,
        seed: u64,
    ) -> Result<RegularityVerdict, RegularityError> {
        if trials == 0 {
            return Err(RegularityError::NoTrials);
        }
        if x.is_empty() || y.is_empty() {
            return Err(RegularityError::EmptySide);
        }
        let xs = x.to_vec();
        let ys = y.to_vec();
        let total = self.edge_count(x, y);
        let pair_density = Rational::new(total as i64, (xs.len() * ys.len()) as i64);
        let mut rng = Lcg::new(seed);
        let n = self.group.order();
        let draw = |rng: &mut Lcg, items: &[usize]| {
            let lo = min_qualifying(items.len(), eps);
            let size = lo + rng.below(items.len() - lo + 1);
            let picks = rng.sample_distinct(items.len(), size);
            SubsetMask::from_indices(n, picks.into_iter().map(|i| items[i]))
        };
        for done in 1..=trials {
            let x0 = draw(&mut rng, &xs);
            let y0 = draw(&mut rng, &ys);
            let e = self.edge_count(&x0, &y0);
            if violates(e, x0.count(), y0.count(), total, xs.len() * ys.len(), eps) {
                let density = Rational::new(e as i64, (x0.count() * y0.count()) as i64);
                return Ok(RegularityVerdict {
                    outcome: RegularityOutcome::Irregular,
                    epsilon: eps,
                    pair_density,
                    checked: done,
                    witness: Some(IrregularWitness { x0, y0, density }),
                });
            }
        }
        Ok(RegularityVerdict {
            outcome: RegularityOutcome::NoViolationFound,
            epsilon: eps,
            pair_density,
            checked: trials,
            witness: None,
        })
    }

    /// Checks the density dichotomy on a uniformly ε²-good pair: every
    /// nonempty sub-pair with `|X₀| ≥ ε|X|` or `|Y₀| ≥ ε|Y|` has density
    /// `≤ ε` (sparse case) or every one has density `≥ 1-ε` (dense case).
    pub fn proposition_dichotomy_check(
        &self,
        x: &SubsetMask,
        y: &SubsetMask,
        eps: Rational,
    ) -> Result<DichotomyReport, RegularityError> {
        let half = Rational::new(1, 2);
        if eps <= Rational::from_integer(0) || eps >= half {
            return Err(RegularityError::EpsilonOutOfRange(eps));
        }
        let goodness = self.is_uniformly_good(x, y, eps * eps)?;
        if goodness.kind == PairKind::Fail {
            return Err(RegularityError::NotUniformlyGood(Box::new(goodness)));
        }
        let scan = SubPairScan::new(self, x, y, DEFAULT_SIZE_CAP)?;
        let ext = scan.extremes(eps);
        let one = Rational::from_integer(1);
        let min_density = Rational::new(ext.min.e as i64, ext.min.st as i64);
        let max_density = Rational::new(ext.max.e as i64, ext.max.st as i64);
        let sparse_case_holds = max_density <= eps;
        let dense_case_holds = min_density >= one - eps;
        let (extremal, violation) = match goodness.kind {
            PairKind::Sparse => (max_density, (!sparse_case_holds).then_some(ext.max)),
            _ => (min_density, (!dense_case_holds).then_some(ext.min)),
        };
        Ok(DichotomyReport {
            epsilon: eps,
            goodness: goodness.kind,
            sparse_case_holds,
            dense_case_holds,
            extremal_density: extremal,
            min_density,
            max_density,
            subpairs: ext.count,
            witness: violation.map(|d| scan.witness(d.mx, d.my, d.e)),
        })
    }
}

/// Smallest subset size `s ≥ 1` with `s ≥ ε·size`.
fn min_qualifying(size: usize, eps: Rational) -> usize {
    let (num, den) = (*eps.numer(), *eps.denom());
    let need = (num as i128 * size as i128 + den as i128 - 1).div_euclid(den as i128);
    need.clamp(1, size as i128) as usize
}

/// `|e/(s·t) - total/pq| ≥ ε`, cross-multiplied.
#[inline]
fn violates(e: usize, s: usize, t: usize, total: usize, pq: usize, eps: Rational) -> bool {
    let lhs = (e as i128 * pq as i128 - total as i128 * (s * t) as i128).abs() * *eps.denom() as i128;
    let rhs = *eps.numer() as i128 * (s * t) as i128 * pq as i128;
    lhs >= rhs
}

/// Exhaustive sub-pair enumeration over local bit masks. For a fixed `X₀`,
/// each `y_j` gets the count of its neighbours in `X₀`; edge counts of all
/// `Y₀` then follow by subset sums.
struct SubPairScan<'a> {
    xs: Vec<usize>,
    ys: Vec<usize>,
    p: usize,
    q: usize,
    /// `col_bits[j]`: local bits `i` with an edge `(x_i, y_j)`.
    col_bits: Vec<u32>,
    total_edges: usize,
    n: usize,
    _graph: std::marker::PhantomData<&'a ()>,
}

#[derive(Clone, Copy, Debug)]
struct Density {
    e: u64,
    st: u64,
    mx: u32,
    my: u32,
}

impl Density {
    /// Order by density value, ties by mask position.
    fn cmp_value(&self, other: &Self) -> std::cmp::Ordering {
        (self.e * other.st)
            .cmp(&(other.e * self.st))
            .then((self.mx, self.my).cmp(&(other.mx, other.my)))
    }
}

struct Extremes {
    min: Density,
    max: Density,
    count: u64,
}

impl<'a> SubPairScan<'a> {
    fn new(
        graph: &'a BipartiteCayleyGraph<'_>,
        x: &SubsetMask,
        y: &SubsetMask,
        size_cap: usize,
    ) -> Result<Self, RegularityError> {
        if x.is_empty() || y.is_empty() {
            return Err(RegularityError::EmptySide);
        }
        let size = x.count() + y.count();
        if size > size_cap.min(DEFAULT_SIZE_CAP.max(size_cap)).min(31) || size > size_cap {
            return Err(RegularityError::CapExceeded { size, cap: size_cap });
        }
        let xs = x.to_vec();
        let ys = y.to_vec();
        let col_bits: Vec<u32> = ys
            .iter()
            .map(|&w| {
                xs.iter()
                    .enumerate()
                    .filter(|(_, &v)| graph.has_edge(v, w))
                    .fold(0u32, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        let total_edges = col_bits.iter().map(|c| c.count_ones() as usize).sum();
        Ok(Self {
            p: xs.len(),
            q: ys.len(),
            xs,
            ys,
            col_bits,
            total_edges,
            n: graph.group.order(),
            _graph: std::marker::PhantomData,
        })
    }

    fn witness(&self, mx: u32, my: u32, e: u64) -> IrregularWitness {
        let x0 = SubsetMask::from_indices(
            self.n,
            (0..self.p).filter(|i| mx >> i & 1 == 1).map(|i| self.xs[i]),
        );
        let y0 = SubsetMask::from_indices(
            self.n,
            (0..self.q).filter(|j| my >> j & 1 == 1).map(|j| self.ys[j]),
        );
        let density = Rational::new(e as i64, (x0.count() * y0.count()) as i64);
        IrregularWitness { x0, y0, density }
    }

    /// Edge counts of every `Y₀` for the given `X₀`, indexed by local mask.
    fn fill_sums(&self, mx: u32, sums: &mut [u32]) {
        let counts: Vec<u32> = self.col_bits.iter().map(|c| (c & mx).count_ones()).collect();
        sums[0] = 0;
        for my in 1..sums.len() {
            sums[my] = sums[my & (my - 1)] + counts[my.trailing_zeros() as usize];
        }
    }

    fn qualifying_count(&self, eps: Rational) -> u64 {
        let side = |size: usize| -> u64 {
            (min_qualifying(size, eps)..=size).map(|s| binomial(size, s)).sum()
        };
        side(self.p) * side(self.q)
    }

    fn first_irregular(&self, eps: Rational) -> Option<(u32, u32, u64)> {
        let (smin, tmin) = (min_qualifying(self.p, eps), min_qualifying(self.q, eps));
        let pq = self.p * self.q;
        (1u32..1 << self.p)
            .into_par_iter()
            .map_init(
                || vec![0u32; 1 << self.q],
                |sums, mx| {
                    let s = mx.count_ones() as usize;
                    if s < smin {
                        return None;
                    }
                    self.fill_sums(mx, sums);
                    (1u32..1 << self.q).find_map(|my| {
                        let t = my.count_ones() as usize;
                        let e = sums[my as usize] as usize;
                        (t >= tmin && violates(e, s, t, self.total_edges, pq, eps))
                            .then_some((mx, my, e as u64))
                    })
                },
            )
            .find_first(Option::is_some)
            .flatten()
    }

    /// Min and max density over nonempty sub-pairs where at least one side
    /// meets its ε-fraction.
    fn extremes(&self, eps: Rational) -> Extremes {
        let (smin, tmin) = (min_qualifying(self.p, eps), min_qualifying(self.q, eps));
        let merge = |a: Option<Extremes>, b: Option<Extremes>| match (a, b) {
            (None, b) => b,
            (a, None) => a,
            (Some(a), Some(b)) => Some(Extremes {
                min: if b.min.cmp_value(&a.min).is_lt() { b.min } else { a.min },
                max: if b.max.cmp_value(&a.max).is_gt() { b.max } else { a.max },
                count: a.count + b.count,
            }),
        };
        (1u32..1 << self.p)
            .into_par_iter()
            .map_init(
                || vec![0u32; 1 << self.q],
                |sums, mx| {
                    let s = mx.count_ones() as usize;
                    self.fill_sums(mx, sums);
                    let mut acc: Option<Extremes> = None;
                    for my in 1u32..1 << self.q {
                        let t = my.count_ones() as usize;
                        if s < smin && t < tmin {
                            continue;
                        }
                        let d = Density { e: sums[my as usize] as u64, st: (s * t) as u64, mx, my };
                        acc = merge(acc, Some(Extremes { min: d, max: d, count: 1 }));
                    }
                    acc
                },
            )
            .reduce(|| None, merge)
            .expect("X₀ = X, Y₀ = Y always qualifies")
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Sparse,
    Dense,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDegree {
    pub side: Side,
    pub vertex: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum GoodnessWitness {
    UnequalDegrees { first: VertexDegree, second: VertexDegree },
    /// The common degree lies strictly between `ε|X|` and `(1-ε)|X|`.
    MiddleBand(VertexDegree),
}

/// Outcome of the uniform ε-goodness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub kind: PairKind,
    #[serde(with = "crate::rational::serde_p_q")]
    pub epsilon: Rational,
    /// The common degree, when all degrees agree.
    pub degree: Option<usize>,
    pub witness: Option<GoodnessWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularityOutcome {
    Regular,
    Irregular,
    /// Sampled check only.
    NoViolationFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrregularWitness {
    pub x0: SubsetMask,
    pub y0: SubsetMask,
    #[serde(with = "crate::rational::serde_p_q")]
    pub density: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    pub outcome: RegularityOutcome,
    #[serde(with = "crate::rational::serde_p_q")]
    pub epsilon: Rational,
    #[serde(with = "crate::rational::serde_p_q")]
    pub pair_density: Rational,
    /// Sub-pairs examined (qualifying sub-pairs for the exact check, trials
    /// for the sampled one).
    pub checked: u64,
    pub witness: Option<IrregularWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyReport {
    #[serde(with = "crate::rational::serde_p_q")]
    pub epsilon: Rational,
    /// Sparse or dense, from the ε²-goodness test.
    pub goodness: PairKind,
    /// All qualifying densities are `≤ ε`.
    pub sparse_case_holds: bool,
    /// All qualifying densities are `≥ 1-ε`.
    pub dense_case_holds: bool,
    /// Largest density in the sparse case, smallest in the dense case.
    #[serde(with = "crate::rational::serde_p_q")]
    pub extremal_density: Rational,
    #[serde(with = "crate::rational::serde_p_q")]
    pub min_density: Rational,
    #[serde(with = "crate::rational::serde_p_q")]
    pub max_density: Rational,
    pub subpairs: u64,
    /// Sub-pair breaking the expected case, if any.
    pub witness: Option<IrregularWitness>,
}

impl DichotomyReport {
    /// Exactly one of the two cases holds, and it is the one predicted by
    /// the goodness test.
    pub fn confirmed(&self) -> bool {
        match self.goodness {
            PairKind::Sparse => self.sparse_case_holds && !self.dense_case_holds,
            PairKind::Dense => self.dense_case_holds && !self.sparse_case_holds,
            PairKind::Fail => false,
        }
    }
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

    #[test]
    fn graph_shapes() {
        let z6 = build_group("cyclic:6").unwrap();
        let g = cayley_graph(&z6, &set(6, &[]));
        assert!((0..6).all(|v| g.row(v).is_empty()));
        let g = cayley_graph(&z6, &SubsetMask::full(6));
        assert!((0..6).all(|v| g.row(v).is_full()));
        let g = cayley_graph(&z6, &set(6, &[0, 2, 4]));
        assert!((0..6).all(|v| g.row(v).count() == 3 && g.col(v).count() == 3));
    }

    #[test]
    fn degrees_and_densities() {
        let z6 = build_group("cyclic:6").unwrap();
        let g = cayley_graph(&z6, &set(6, &[0, 2, 4]));
        assert_eq!(g.degree(Side::Left, 0, &set(6, &[])), 0);
        assert_eq!(g.degree(Side::Left, 0, &set(6, &[1, 3, 5])), 0);
        assert_eq!(g.density(&set(6, &[0, 2, 4]), &set(6, &[1, 3, 5])).unwrap(), r(0, 1));
        assert_eq!(g.density(&set(6, &[0, 2, 4]), &set(6, &[0, 2, 4])).unwrap(), r(1, 1));
        assert_eq!(g.density(&set(6, &[]), &set(6, &[1])), Err(RegularityError::EmptySide));

        let z15 = build_group("cyclic:15").unwrap();
        let g = cayley_graph(&z15, &set(15, &[0, 3, 6, 9, 12]));
        assert_eq!(g.degree(Side::Left, 1, &SubsetMask::full(15)), 5);
        assert_eq!(g.density(&SubsetMask::full(15), &SubsetMask::full(15)).unwrap(), r(1, 3));
    }

    #[test]
    fn right_degree_is_right_translate() {
        let s3 = build_group("symmetric:3").unwrap();
        let a = set(6, &[1, 2, 3]);
        let g = cayley_graph(&s3, &a);
        let s = set(6, &[0, 1, 4]);
        for w in 0..6 {
            assert_eq!(g.degree(Side::Right, w, &s), a.intersection_count(&s3.right_translate(&s, w)));
            assert_eq!(g.degree(Side::Left, w, &s), a.intersection_count(&s3.left_translate(w, &s)));
        }
    }

    #[test]
    fn goodness_examples() {
        let z6 = build_group("cyclic:6").unwrap();
        let g = cayley_graph(&z6, &set(6, &[0, 2, 4]));
        let c0 = set(6, &[0, 2, 4]);
        let c1 = set(6, &[1, 3, 5]);
        for eps in [r(1, 100), r(1, 3), r(9, 10)] {
            let v = g.is_uniformly_good(&c0, &c0, eps).unwrap();
            if eps < r(1, 1) && eps * r(3, 1) < r(3, 1) {
                assert!(matches!(v.kind, PairKind::Dense | PairKind::Sparse));
            }
            assert_eq!(g.is_uniformly_good(&c0, &c1, eps).unwrap().kind, PairKind::Sparse);
        }
        assert_eq!(g.is_uniformly_good(&c0, &c0, r(1, 10)).unwrap().kind, PairKind::Dense);
        assert_eq!(
            g.is_uniformly_good(&c0, &set(6, &[1]), r(1, 10)),
            Err(RegularityError::SizeMismatch { left: 3, right: 1 })
        );
    }

    #[test]
    fn goodness_unequal_degrees() {
        // Z/8 with A = {0,1,2}, X = {0,1,2,3}, Y = {0,4,5,6}: left degrees
        // into Y are 1,1,0,... so not all equal.
        let z8 = build_group("cyclic:8").unwrap();
        let g = cayley_graph(&z8, &set(8, &[0, 1, 2]));
        let x = set(8, &[0, 1, 2, 3]);
        let y = set(8, &[0, 4, 5, 6]);
        let degs: Vec<usize> = x.iter().map(|v| g.degree(Side::Left, v, &y)).collect();
        assert!(degs.contains(&1) && degs.contains(&2));
        let v = g.is_uniformly_good(&x, &y, r(1, 10)).unwrap();
        assert_eq!(v.kind, PairKind::Fail);
        match v.witness {
            Some(GoodnessWitness::UnequalDegrees { first, second }) => {
                assert_ne!(first.degree, second.degree);
                let side_set = |s: Side| if s == Side::Left { &y } else { &x };
                assert_eq!(g.degree(first.side, first.vertex, side_set(first.side)), first.degree);
                assert_eq!(g.degree(second.side, second.vertex, side_set(second.side)), second.degree);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn goodness_boundary_is_inclusive() {
        // all degrees 1 on |X| = 4: sparse exactly at ε = 1/4
        let z4 = build_group("cyclic:4").unwrap();
        let g = cayley_graph(&z4, &set(4, &[0]));
        let all = SubsetMask::full(4);
        assert_eq!(g.is_uniformly_good(&all, &all, r(1, 4)).unwrap().kind, PairKind::Sparse);
        let v = g.is_uniformly_good(&all, &all, r(1, 5)).unwrap();
        assert_eq!(v.kind, PairKind::Fail);
        assert!(matches!(v.witness, Some(GoodnessWitness::MiddleBand(_))));
    }

    #[test]
    fn exact_regularity() {
        let z6 = build_group("cyclic:6").unwrap();
        let g = cayley_graph(&z6, &set(6, &[0, 2, 4]));
        let c0 = set(6, &[0, 2, 4]);
        let v = g.is_regular_exact(&c0, &c0, r(1, 2), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(v.outcome, RegularityOutcome::Regular);
        // sizes ≥ 2 on each side: (C(3,2)+1)² = 16 sub-pairs
        assert_eq!(v.checked, 16);

        let full = cayley_graph(&z6, &SubsetMask::full(6));
        let all = SubsetMask::full(6);
        let v = full.is_regular_exact(&all, &all, r(1, 10), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(v.outcome, RegularityOutcome::Regular);

        let z30 = build_group("cyclic:30").unwrap();
        let big = cayley_graph(&z30, &set(30, &[0]));
        assert!(matches!(
            big.is_regular_exact(&SubsetMask::full(30), &SubsetMask::full(30), r(1, 4), 24),
            Err(RegularityError::CapExceeded { size: 60, cap: 24 })
        ));
    }

    /// A half graph on 4+4 vertices: Z/8 with A = {0,1,2,3}, X = {0,7,6,5}
    /// as a_i = -i, Y = {0,1,2,3} — edge iff y - i ∈ [0,3] mod 8.
    fn half_graph() -> (crate::group::Group, SubsetMask, SubsetMask, SubsetMask) {
        let z8 = build_group("cyclic:8").unwrap();
        (z8, set(8, &[0, 1, 2, 3]), set(8, &[0, 5, 6, 7]), set(8, &[0, 1, 2, 3]))
    }

    #[test]
    fn half_graph_is_irregular() {
        let (z8, a, x, y) = half_graph();
        let g = cayley_graph(&z8, &a);
        let v = g.is_regular_exact(&x, &y, r(1, 4), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(v.outcome, RegularityOutcome::Irregular);
        let w = v.witness.unwrap();
        // the witness must re-check: sizes qualify and density is off by ≥ ε
        assert!(w.x0.is_subset(&x) && w.y0.is_subset(&y));
        assert!(w.x0.count() >= 1 && w.y0.count() >= 1);
        assert_eq!(g.density(&w.x0, &w.y0).unwrap(), w.density);
        let gap = w.density - g.density(&x, &y).unwrap();
        assert!(gap >= r(1, 4) || -gap >= r(1, 4));

        let sampled = g.is_regular_sampled(&x, &y, r(1, 4), 500, 11).unwrap();
        assert_eq!(sampled.outcome, RegularityOutcome::Irregular);
        let w = sampled.witness.unwrap();
        let gap = g.density(&w.x0, &w.y0).unwrap() - g.density(&x, &y).unwrap();
        assert!(gap >= r(1, 4) || -gap >= r(1, 4));
    }

    #[test]
    fn sampled_is_deterministic_and_one_sided() {
        let z6 = build_group("cyclic:6").unwrap();
        let full = cayley_graph(&z6, &SubsetMask::full(6));
        let all = SubsetMask::full(6);
        let v = full.is_regular_sampled(&all, &all, r(1, 3), 100, 5).unwrap();
        assert_eq!(v.outcome, RegularityOutcome::NoViolationFound);
        assert_eq!(full.is_regular_sampled(&all, &all, r(1, 3), 0, 5), Err(RegularityError::NoTrials));

        let (z8, a, x, y) = half_graph();
        let g = cayley_graph(&z8, &a);
        let once = g.is_regular_sampled(&x, &y, r(1, 4), 20, 3).unwrap();
        let twice = g.is_regular_sampled(&x, &y, r(1, 4), 20, 3).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn dichotomy_examples() {
        let z6 = build_group("cyclic:6").unwrap();
        let g = cayley_graph(&z6, &set(6, &[0, 2, 4]));
        let c0 = set(6, &[0, 2, 4]);
        let c1 = set(6, &[1, 3, 5]);
        let dense = g.proposition_dichotomy_check(&c0, &c0, r(49, 100)).unwrap();
        assert_eq!(dense.goodness, PairKind::Dense);
        assert!(dense.confirmed());
        assert_eq!(dense.min_density, r(1, 1));
        let sparse = g.proposition_dichotomy_check(&c0, &c1, r(1, 3)).unwrap();
        assert_eq!(sparse.goodness, PairKind::Sparse);
        assert!(sparse.confirmed());
        assert_eq!(sparse.extremal_density, r(0, 1));
        // ε must lie in (0, 1/2)
        for bad in [r(3, 5), r(1, 2), r(0, 1)] {
            assert!(matches!(
                g.proposition_dichotomy_check(&c0, &c0, bad),
                Err(RegularityError::EpsilonOutOfRange(_))
            ));
        }
        // the half graph is not uniformly good
        let (z8, a, x, y) = half_graph();
        let h = cayley_graph(&z8, &a);
        assert!(matches!(
            h.proposition_dichotomy_check(&x, &y, r(1, 4)),
            Err(RegularityError::NotUniformlyGood(_))
        ));
    }

    #[test]
    fn min_qualifying_sizes() {
        assert_eq!(min_qualifying(3, r(1, 2)), 2);
        assert_eq!(min_qualifying(4, r(1, 2)), 2);
        assert_eq!(min_qualifying(4, r(1, 4)), 1);
        assert_eq!(min_qualifying(4, r(1, 100)), 1);
    }
}
