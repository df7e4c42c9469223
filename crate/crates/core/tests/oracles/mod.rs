//! Naive reference implementations. None of these share code paths with the
//! library searches beyond the group table itself.
#![allow(dead_code)]

use std::collections::HashSet;

use workbench_core::{Group, SubsetMask};

/// Subsets of a group of order ≤ 64 as plain `u64` bit sets.
pub fn bits(mask: &SubsetMask) -> u64 {
    assert!(mask.len() <= 64);
    mask.iter().fold(0, |acc, x| acc | 1 << x)
}

pub fn from_bits(n: usize, b: u64) -> SubsetMask {
    SubsetMask::from_indices(n, (0..n).filter(|i| b >> i & 1 == 1))
}

fn row_bits(g: &Group, a: u64, x: usize) -> u64 {
    (0..g.order()).filter(|&y| a >> g.mul(x, y) & 1 == 1).fold(0, |acc, y| acc | 1 << y)
}

/// Does some tuple `a_1..a_k` admit, for every `j`, a `b_j` with
/// `a_i·b_j ∈ A ⇔ i ≤ j`? Enumerates all `|G|^k` tuples.
pub fn has_ladder_all_tuples(g: &Group, a: &SubsetMask, k: usize) -> bool {
    let n = g.order();
    let ab = bits(a);
    let rows: Vec<u64> = (0..n).map(|x| row_bits(g, ab, x)).collect();
    let mut tuple = vec![0usize; k];
    loop {
        let ok = (0..k).all(|j| {
            let mut cand = u64::MAX >> (64 - n);
            for (i, &x) in tuple.iter().enumerate() {
                if i <= j {
                    cand &= rows[x];
                } else {
                    cand &= !rows[x];
                }
            }
            cand != 0
        });
        if ok {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return false;
            }
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

pub fn ladder_all_tuples(g: &Group, a: &SubsetMask, k_cap: usize) -> usize {
    (1..=k_cap).take_while(|&k| has_ladder_all_tuples(g, a, k)).last().unwrap_or(0)
}

/// Ladder index by level-wise extension: every valid height-`t` tuple of
/// `a`'s (each column pattern realizable by some `b`) is kept, and level
/// `t+1` extends all of them by every element. Valid tuples are closed
/// under prefixes, so nothing is lost; no bound is used.
pub fn ladder_levelwise(g: &Group, a: &SubsetMask, k_cap: usize) -> usize {
    let n = g.order();
    let ab = bits(a);
    let rows: Vec<u64> = (0..n).map(|x| row_bits(g, ab, x)).collect();
    let full = u64::MAX >> (64 - n);
    let valid = |t: &[usize]| {
        (0..t.len()).all(|j| {
            let cand = t.iter().enumerate().fold(full, |acc, (i, &x)| {
                if i <= j {
                    acc & rows[x]
                } else {
                    acc & !rows[x]
                }
            });
            cand != 0
        })
    };
    let mut level: Vec<Vec<usize>> = vec![vec![]];
    let mut k = 0;
    while k < k_cap {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for t in &level {
            for x in 0..n {
                let mut ext = t.clone();
                ext.push(x);
                // tuples with identical row sequences behave identically
                let key: Vec<u64> = ext.iter().map(|&y| rows[y]).collect();
                if valid(&ext) && seen.insert(key) {
                    next.push(ext);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
        k += 1;
    }
    k
}

pub fn is_subgroup_naive(g: &Group, s: u64) -> bool {
    let n = g.order();
    if s >> g.identity() & 1 == 0 {
        return false;
    }
    let members: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
    members.iter().all(|&x| s >> g.inv(x) & 1 == 1)
        && members.iter().all(|&x| members.iter().all(|&y| s >> g.mul(x, y) & 1 == 1))
}

pub fn is_normal_naive(g: &Group, s: u64) -> bool {
    let n = g.order();
    (0..n).all(|x| {
        (0..n)
            .filter(|i| s >> i & 1 == 1)
            .all(|h| s >> g.mul(g.mul(x, h), g.inv(x)) & 1 == 1)
    })
}

/// Every normal subgroup, by scanning all subsets whose size divides `|G|`.
/// Returned as (index, mask bits) sorted the same way as the library.
pub fn normal_subgroups_naive(g: &Group) -> Vec<(usize, Vec<usize>)> {
    let n = g.order();
    assert!(n <= 24, "all-subsets scan is for small groups");
    let mut out = Vec::new();
    for s in 0u64..1 << n {
        let size = s.count_ones() as usize;
        if size == 0 || n % size != 0 {
            continue;
        }
        if is_subgroup_naive(g, s) && is_normal_naive(g, s) {
            out.push((n / size, (0..n).filter(|i| s >> i & 1 == 1).collect::<Vec<_>>()));
        }
    }
    out.sort();
    out
}

/// Every subgroup (normal or not), by joining cyclic subgroups until no
/// new ones appear.
pub fn all_subgroups(g: &Group) -> Vec<u64> {
    let n = g.order();
    assert!(n <= 64);
    let cyclic = |x: usize| {
        let mut s = 1u64 << g.identity();
        let mut y = x;
        while y != g.identity() {
            s |= 1 << y;
            y = g.mul(y, x);
        }
        s
    };
    let close = |mut s: u64| loop {
        let mut t = s;
        for x in (0..n).filter(|i| s >> i & 1 == 1) {
            for y in (0..n).filter(|i| s >> i & 1 == 1) {
                t |= 1 << g.mul(x, y);
            }
        }
        if t == s {
            return s;
        }
        s = t;
    };
    let cyclics: Vec<u64> = (0..n).map(cyclic).collect();
    let mut found: HashSet<u64> = cyclics.iter().copied().collect();
    let mut frontier: Vec<u64> = found.iter().copied().collect();
    while let Some(s) = frontier.pop() {
        for &c in &cyclics {
            if c & !s != 0 {
                let j = close(s | c);
                if found.insert(j) {
                    frontier.push(j);
                }
            }
        }
    }
    let mut v: Vec<u64> = found.into_iter().collect();
    v.sort();
    v
}

/// Minimum `|A△Y|` over all `2^m` unions of the given cosets.
pub fn best_coset_union(a: u64, cosets: &[u64]) -> usize {
    let m = cosets.len();
    assert!(m <= 20);
    (0u64..1 << m)
        .map(|choice| {
            let y = (0..m).filter(|i| choice >> i & 1 == 1).fold(0, |acc, i| acc | cosets[i]);
            (a ^ y).count_ones() as usize
        })
        .min()
        .unwrap()
}

/// Left cosets `xH` computed directly.
pub fn left_cosets(g: &Group, h: u64) -> Vec<u64> {
    let n = g.order();
    let mut seen = 0u64;
    let mut out = Vec::new();
    for x in 0..n {
        if seen >> x & 1 == 1 {
            continue;
        }
        let c = (0..n).filter(|i| h >> i & 1 == 1).fold(0u64, |acc, y| acc | 1 << g.mul(x, y));
        seen |= c;
        out.push(c);
    }
    out
}

/// Smallest number of left translates of `A` covering `G`, by trying all
/// translator sets of growing size.
pub fn min_cover_naive(g: &Group, a: &SubsetMask) -> usize {
    let n = g.order();
    let full = u64::MAX >> (64 - n);
    let ab = bits(a);
    let translates: Vec<u64> = (0..n)
        .map(|x| (0..n).filter(|&y| ab >> y & 1 == 1).fold(0u64, |acc, y| acc | 1 << g.mul(x, y)))
        .collect();
    for size in 1..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if idx.iter().fold(0u64, |acc, &i| acc | translates[i]) == full {
                return size;
            }
            let Some(p) = (0..size).rev().find(|&p| idx[p] < n - size + p) else { break };
            idx[p] += 1;
            for q in p + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    unreachable!("G covers itself")
}

/// Density of the sub-pair as a reduced fraction `(num, den)`.
pub fn density_naive(g: &Group, a: &SubsetMask, x: &[usize], y: &[usize]) -> (usize, usize) {
    let e = x.iter().flat_map(|&v| y.iter().map(move |&w| (v, w))).filter(|&(v, w)| a.contains(g.mul(v, w))).count();
    let d = x.len() * y.len();
    let gcd = (1..=d).rev().find(|c| e % c == 0 && d % c == 0).unwrap();
    (e / gcd, d / gcd)
}
