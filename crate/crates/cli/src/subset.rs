//! Subset specs: `list:0,3,6`, `hex:<mask>` and `gen:<generator>`.
//!
//! Generators (all seeded by `--seed`):
//!
//! * `gen:interval:<k>` elements `0..k`
//! * `gen:random` each element kept on a fair coin
//! * `gen:coset:<m>` random union of cosets of the first normal subgroup of
//!   index `m`
//! * `gen:noisy:<m>:<flips>` the same, then `flips` distinct elements toggled
//! * `gen:subgroup:<i>,<j>,…` the subgroup generated by the listed elements

use workbench_core::corpus::{gen_coset_union, gen_noisy_coset_set, gen_random_set};
use workbench_core::rng::Lcg;
use workbench_core::{enumerate_normal_subgroups, subgroup_closure, Group, Subgroup, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubsetSpecError {
    #[error("element {index} out of range for group of order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("malformed subset spec {spec:?}: {reason}")]
    Malformed { spec: String, reason: String },
    #[error("no normal subgroup of index {0}")]
    NoSubgroupOfIndex(usize),
}

fn malformed(spec: &str, reason: impl Into<String>) -> SubsetSpecError {
    SubsetSpecError::Malformed { spec: spec.to_string(), reason: reason.into() }
}

fn parse_indices(spec: &str, body: &str, order: usize) -> Result<SubsetMask, SubsetSpecError> {
    let body = body.trim();
    if body.is_empty() {
        return Ok(SubsetMask::empty(order));
    }
    let idx = body
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| malformed(spec, format!("bad index {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    SubsetMask::try_from_indices(order, idx).map_err(|index| SubsetSpecError::OutOfRange { index, order })
}

fn parse_hex(spec: &str, body: &str, order: usize) -> Result<SubsetMask, SubsetSpecError> {
    let digits = body.trim().trim_start_matches("0x").trim_start_matches("0X");
    if digits.is_empty() {
        return Err(malformed(spec, "empty hex mask"));
    }
    let mut idx = Vec::new();
    for (pos, c) in digits.chars().rev().enumerate() {
        let v = c.to_digit(16).ok_or_else(|| malformed(spec, format!("bad hex digit {c:?}")))?;
        idx.extend((0..4).filter(|b| v >> b & 1 == 1).map(|b| 4 * pos + b));
    }
    SubsetMask::try_from_indices(order, idx).map_err(|index| SubsetSpecError::OutOfRange { index, order })
}

fn parse_count(spec: &str, t: &str) -> Result<usize, SubsetSpecError> {
    t.parse().map_err(|_| malformed(spec, format!("bad number {t:?}")))
}

fn normal_of_index(g: &Group, m: usize) -> Result<Subgroup, SubsetSpecError> {
    enumerate_normal_subgroups(g, m)
        .into_iter()
        .find(|h| h.index() == m)
        .ok_or(SubsetSpecError::NoSubgroupOfIndex(m))
}

/// Parses a subset spec against the canonical element order of `g`.
pub fn parse_subset_spec(spec: &str, g: &Group, seed: u64) -> Result<SubsetMask, SubsetSpecError> {
    let order = g.order();
    let (kind, body) = spec.split_once(':').ok_or_else(|| malformed(spec, "expected list:, hex: or gen:"))?;
    match kind {
        "list" => parse_indices(spec, body, order),
        "hex" => parse_hex(spec, body, order),
        "gen" => {
            let parts: Vec<&str> = body.split(':').collect();
            match parts[..] {
                ["interval", k] => {
                    let k = parse_count(spec, k)?;
                    SubsetMask::try_from_indices(order, 0..k)
                        .map_err(|index| SubsetSpecError::OutOfRange { index, order })
                }
                ["random"] => Ok(gen_random_set(g, seed)),
                ["coset", m] => {
                    let h = normal_of_index(g, parse_count(spec, m)?)?;
                    Ok(gen_coset_union(g, &h, &mut Lcg::new(seed)))
                }
                ["noisy", m, flips] => {
                    let h = normal_of_index(g, parse_count(spec, m)?)?;
                    gen_noisy_coset_set(g, &h, parse_count(spec, flips)?, seed)
                        .map_err(|e| malformed(spec, e.to_string()))
                }
                ["subgroup", gens] => Ok(subgroup_closure(g, &parse_indices(spec, gens, order)?)),
                _ => Err(malformed(spec, "unknown generator")),
            }
        }
        _ => Err(malformed(spec, format!("unknown kind {kind:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use workbench_core::build_group;

    #[test]
    fn list_and_hex() {
        let z15 = build_group("cyclic:15").unwrap();
        let a = parse_subset_spec("list:0,3,6,9,12", &z15, 0).unwrap();
        assert_eq!(a.to_vec(), vec![0, 3, 6, 9, 12]);
        assert!(parse_subset_spec("hex:0", &z15, 0).unwrap().is_empty());
        assert_eq!(parse_subset_spec(&format!("hex:{}", a.to_hex()), &z15, 0).unwrap(), a);
        assert_eq!(parse_subset_spec("hex:0x1249", &z15, 0).unwrap(), a);
        assert!(parse_subset_spec("list:", &z15, 0).unwrap().is_empty());
        assert_eq!(
            parse_subset_spec("list:15", &z15, 0),
            Err(SubsetSpecError::OutOfRange { index: 15, order: 15 })
        );
        assert_eq!(
            parse_subset_spec("hex:8000", &z15, 0),
            Err(SubsetSpecError::OutOfRange { index: 15, order: 15 })
        );
        assert!(matches!(parse_subset_spec("list:1,x", &z15, 0), Err(SubsetSpecError::Malformed { .. })));
        assert!(matches!(parse_subset_spec("hex:zz", &z15, 0), Err(SubsetSpecError::Malformed { .. })));
        assert!(matches!(parse_subset_spec("0,1", &z15, 0), Err(SubsetSpecError::Malformed { .. })));
    }

    #[test]
    fn generators() {
        let z12 = build_group("cyclic:12").unwrap();
        assert_eq!(parse_subset_spec("gen:interval:3", &z12, 0).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(parse_subset_spec("gen:subgroup:8", &z12, 0).unwrap().to_vec(), vec![0, 4, 8]);
        let r1 = parse_subset_spec("gen:random", &z12, 4).unwrap();
        assert_eq!(r1, parse_subset_spec("gen:random", &z12, 4).unwrap());
        let c = parse_subset_spec("gen:coset:3", &z12, 1).unwrap();
        assert_eq!(c.count() % 4, 0);
        let noisy = parse_subset_spec("gen:noisy:3:2", &z12, 1).unwrap();
        assert_eq!(noisy.symmetric_difference(&c).count(), 2);
        assert_eq!(parse_subset_spec("gen:coset:5", &z12, 1), Err(SubsetSpecError::NoSubgroupOfIndex(5)));
        assert!(parse_subset_spec("gen:bogus", &z12, 1).is_err());
    }
}
