//! Scan for arc elements that complete a vertex stabilizer to a connected
//! symmetric graph: 2-elements g with g² in H, the intersection H ∩ H^g of
//! index = valency in H, and ⟨H, g⟩ the whole group.
//!
//! Filters run cheapest first over a sharded stream of all group elements;
//! every survivor is re-verified independently before it is reported. The
//! power-of-two order test accepts any exponent; whether some feasible
//! element exceeds order 64 is recorded rather than assumed away.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Perm;
use crate::stabchain::{GroupError, PermGroup};
use crate::subgroup::{Subgroup, SubgroupError};

/// Default bound on the ambient order for a full scan.
pub const SCAN_CAP: u64 = 250_000_000;

const SHARD_SIZE: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum FeasibleError {
    #[error("ambient order {order} exceeds the element budget {budget}")]
    BudgetExceeded { order: BigUint, budget: u64 },
    #[error("valency {valency} does not divide the subgroup order {order}")]
    ValencyDoesNotDivide { valency: usize, order: BigUint },
    #[error("candidate degree {got} does not match the ambient degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("subgroup does not sit inside the ambient group")]
    NotSubgroup,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
}

/// Scan input: the ambient group, one subgroup-class representative, the
/// wanted valency, and the largest ambient order the caller will scan.
pub struct FeasibilityQuery<'a> {
    pub ambient_name: &'a str,
    pub ambient: &'a PermGroup,
    pub subgroup: &'a Subgroup,
    pub valency: usize,
    pub element_budget: u64,
}

impl<'a> FeasibilityQuery<'a> {
    pub fn new(
        ambient_name: &'a str,
        ambient: &'a PermGroup,
        subgroup: &'a Subgroup,
        valency: usize,
    ) -> Self {
        FeasibilityQuery {
            ambient_name,
            ambient,
            subgroup,
            valency,
            element_budget: SCAN_CAP,
        }
    }
}

/// Feasible elements sharing one double coset; their coset graphs coincide.
pub struct FeasibleClass {
    /// Lex-least element of the shared double coset.
    pub canonical: Perm,
    /// Indices into `FeasibilityReport::feasible`.
    pub members: Vec<usize>,
    /// Size of the double coset itself.
    pub double_coset_size: u64,
}

pub struct FeasibilityReport {
    pub ambient_name: String,
    pub subgroup_gens: Vec<Perm>,
    pub valency: usize,
    pub feasible: Vec<Perm>,
    pub classes: Vec<FeasibleClass>,
    pub scanned: u64,
    pub elapsed_ms: u64,
    /// True when some feasible element has order above 64; the scan itself
    /// never assumes that bound.
    pub any_order_above_64: bool,
}

/// Per-condition outcome of an independent feasibility check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeasibilityCheck {
    pub two_element: bool,
    pub square_in_subgroup: bool,
    pub intersection_index_ok: bool,
    pub generates_ambient: bool,
}

impl FeasibilityCheck {
    pub fn all(&self) -> bool {
        self.two_element
            && self.square_in_subgroup
            && self.intersection_index_ok
            && self.generates_ambient
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FeasibilityJson {
    pub ambient: String,
    pub subgroup_generators: Vec<String>,
    pub valency: usize,
    pub feasible_count: usize,
    pub feasible: Vec<String>,
    pub classes: Vec<FeasibleClassJson>,
    pub scanned: u64,
    pub elapsed_ms: u64,
    pub any_order_above_64: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FeasibleClassJson {
    pub representative: String,
    pub members: Vec<String>,
    pub double_coset_size: u64,
}

impl FeasibilityReport {
    pub fn to_json(&self) -> FeasibilityJson {
        FeasibilityJson {
            ambient: self.ambient_name.clone(),
            subgroup_generators: self
                .subgroup_gens
                .iter()
                .map(|p| p.to_cycle_string())
                .collect(),
            valency: self.valency,
            feasible_count: self.feasible.len(),
            feasible: self.feasible.iter().map(|p| p.to_cycle_string()).collect(),
            classes: self
                .classes
                .iter()
                .map(|c| FeasibleClassJson {
                    representative: c.canonical.to_cycle_string(),
                    members: c
                        .members
                        .iter()
                        .map(|&i| self.feasible[i].to_cycle_string())
                        .collect(),
                    double_coset_size: c.double_coset_size,
                })
                .collect(),
            scanned: self.scanned,
            elapsed_ms: self.elapsed_ms,
            any_order_above_64: self.any_order_above_64,
        }
    }
}

/// Checks every condition without short-circuiting.
pub fn verify_feasible(
    ambient: &PermGroup,
    h: &Subgroup,
    cand: &Perm,
    valency: usize,
) -> Result<FeasibilityCheck, FeasibleError> {
    if cand.degree() != ambient.degree() {
        return Err(FeasibleError::DegreeMismatch {
            expected: ambient.degree(),
            got: cand.degree(),
        });
    }
    check_valency(h, valency)?;
    let two_element = cand.is_two_element();
    let square_in_subgroup = h.contains(&cand.compose(cand));
    let members = h.elements()?;
    let intersection = intersection_size(h, members, cand);
    let intersection_index_ok = intersection * valency as u64 == members.len() as u64;
    let mut gens: Vec<Perm> = h.gens().to_vec();
    gens.push(cand.clone());
    let joined = PermGroup::new(ambient.degree(), gens)?;
    let generates_ambient = joined.order() == ambient.order();
    Ok(FeasibilityCheck {
        two_element,
        square_in_subgroup,
        intersection_index_ok,
        generates_ambient,
    })
}

fn check_valency(h: &Subgroup, valency: usize) -> Result<(), FeasibleError> {
    if valency == 0 || h.order() % BigUint::from(valency) != BigUint::ZERO {
        return Err(FeasibleError::ValencyDoesNotDivide {
            valency,
            order: h.order(),
        });
    }
    Ok(())
}

/// |H ∩ H^g| by direct membership count over H's elements.
fn intersection_size(h: &Subgroup, members: &[Perm], g: &Perm) -> u64 {
    let g_inv = g.inverse();
    members
        .iter()
        .filter(|x| h.contains(&x.conjugate_by(&g_inv)))
        .count() as u64
}

/// Finds every feasible element of the ambient group.
pub fn scan_feasible(q: &FeasibilityQuery) -> Result<FeasibilityReport, FeasibleError> {
    let start_time = Instant::now();
    if !q.subgroup.group().is_subgroup_of(q.ambient) {
        return Err(FeasibleError::NotSubgroup);
    }
    check_valency(q.subgroup, q.valency)?;
    let order = match q.ambient.order_u64() {
        Some(o) if o <= q.element_budget => o,
        _ => {
            return Err(FeasibleError::BudgetExceeded {
                order: q.ambient.order(),
                budget: q.element_budget,
            })
        }
    };
    let members = q.subgroup.elements()?;
    let target = members.len() as u64 / q.valency as u64;

    let shards: Vec<(u64, u64)> = (0..order)
        .step_by(SHARD_SIZE as usize)
        .map(|s| (s, (s + SHARD_SIZE).min(order)))
        .collect();
    // filters cheapest first: order shape, square membership, intersection
    // size; the generation test runs on the rare survivors afterwards
    let mut survivors: Vec<Perm> = shards
        .into_par_iter()
        .flat_map_iter(|(lo, hi)| {
            q.ambient
                .elements_range(lo, hi)
                .filter(|g| g.is_two_element())
                .filter(|g| q.subgroup.contains(&g.compose(g)))
                .filter(|g| intersection_size(q.subgroup, members, g) == target)
                .collect::<Vec<Perm>>()
        })
        .collect();
    survivors.sort_unstable_by(|a, b| a.images().cmp(b.images()));

    let ambient_order = q.ambient.order();
    let mut feasible = Vec::new();
    for g in survivors {
        let mut gens: Vec<Perm> = q.subgroup.gens().to_vec();
        gens.push(g.clone());
        if PermGroup::new(q.ambient.degree(), gens)?.order() == ambient_order {
            feasible.push(g);
        }
    }
    // every reported element must pass the independent check
    for g in &feasible {
        let check = verify_feasible(q.ambient, q.subgroup, g, q.valency)?;
        assert!(check.all(), "scan survivor failed re-verification");
    }

    let classes = group_by_double_coset(q.ambient, q.subgroup, &feasible)?;
    let any_order_above_64 = feasible
        .iter()
        .any(|g| g.order_u64().map_or(true, |o| o > 64));
    Ok(FeasibilityReport {
        ambient_name: q.ambient_name.to_string(),
        subgroup_gens: q.subgroup.gens().to_vec(),
        valency: q.valency,
        feasible,
        classes,
        scanned: order,
        elapsed_ms: start_time.elapsed().as_millis() as u64,
        any_order_above_64,
    })
}

/// Groups elements by their double coset; the canonical key is the
/// lex-least member of H·g·H.
fn group_by_double_coset(
    ambient: &PermGroup,
    h: &Subgroup,
    elements: &[Perm],
) -> Result<Vec<FeasibleClass>, FeasibleError> {
    let mut by_key: HashMap<Perm, (Vec<usize>, u64)> = HashMap::new();
    let mut key_order: Vec<Perm> = Vec::new();
    for (i, g) in elements.iter().enumerate() {
        let dc = crate::coset::double_coset(ambient, h, g).map_err(|e| match e {
            crate::coset::CosetError::Group(inner) => FeasibleError::Group(inner),
            crate::coset::CosetError::Subgroup(inner) => FeasibleError::Subgroup(inner),
            other => panic!("double coset of a scanned element cannot fail: {other}"),
        })?;
        let canonical = dc
            .coset_reps
            .iter()
            .map(|r| h.group().coset_min(r))
            .min_by(|a, b| a.images().cmp(b.images()))
            .expect("double coset is nonempty");
        let entry = by_key
            .entry(canonical.clone())
            .or_insert_with(|| (Vec::new(), dc.size()));
        if entry.0.is_empty() {
            key_order.push(canonical);
        }
        entry.0.push(i);
    }
    Ok(key_order
        .into_iter()
        .map(|key| {
            let (members, double_coset_size) = by_key.remove(&key).expect("key recorded");
            FeasibleClass {
                canonical: key,
                members,
                double_coset_size,
            }
        })
        .collect())
}

/// One representative element per double-coset class, in class order.
pub fn distinct_graph_candidates(report: &FeasibilityReport) -> Vec<Perm> {
    report
        .classes
        .iter()
        .map(|c| report.feasible[c.members[0]].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;
    use std::collections::HashSet;

    fn group(degree: usize, words: &[&str]) -> PermGroup {
        PermGroup::new(
            degree,
            words
                .iter()
                .map(|w| parse_cycles(w, degree).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn sub(g: &PermGroup, words: &[&str]) -> Subgroup {
        Subgroup::from_gens(
            g,
            words
                .iter()
                .map(|w| parse_cycles(w, g.degree()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    /// Fully independent oracle: closures and conjugation done with raw
    /// image vectors, no stabilizer chains.
    fn brute_feasible(g: &PermGroup, h_members: &[Perm], valency: usize) -> Vec<Perm> {
        let h_set: HashSet<Vec<u32>> = h_members.iter().map(|p| p.images().to_vec()).collect();
        let all: Vec<Perm> = g.elements().collect();
        let mut out = Vec::new();
        for cand in &all {
            let pow2 = {
                let mut o = cand.order_u64().unwrap();
                while o % 2 == 0 {
                    o /= 2;
                }
                o == 1
            };
            if !pow2 {
                continue;
            }
            if !h_set.contains(cand.compose(cand).images()) {
                continue;
            }
            let inv = cand.inverse();
            let inter = h_members
                .iter()
                .filter(|x| h_set.contains(inv.compose(x).compose(cand).images()))
                .count();
            if inter * valency != h_members.len() {
                continue;
            }
            // closure of H ∪ {cand} by repeated products
            let mut closure: HashSet<Vec<u32>> = h_set.clone();
            closure.insert(cand.images().to_vec());
            let mut frontier: Vec<Perm> = h_members.to_vec();
            frontier.push(cand.clone());
            let gens: Vec<Perm> = vec![cand.clone()]
                .into_iter()
                .chain(h_members.iter().cloned())
                .collect();
            while let Some(x) = frontier.pop() {
                for s in &gens {
                    let y = x.compose(s);
                    if closure.insert(y.images().to_vec()) {
                        frontier.push(y);
                    }
                }
            }
            if closure.len() == all.len() {
                out.push(cand.clone());
            }
        }
        out.sort_unstable_by(|a, b| a.images().cmp(b.images()));
        out
    }

    #[test]
    fn scan_matches_brute_force_oracle() {
        let cases: Vec<(PermGroup, Vec<&str>, usize)> = vec![
            (group(4, &["(1,2)", "(1,2,3,4)"]), vec!["(1,2,3)"], 3),
            (group(4, &["(1,2)", "(1,2,3,4)"]), vec!["(1,2,3)"], 1),
            (
                group(5, &["(1,2)", "(1,2,3,4,5)"]),
                vec!["(1,2)", "(3,4)", "(3,4,5)"],
                3,
            ),
            (
                group(5, &["(1,2)", "(1,2,3,4,5)"]),
                vec!["(1,2,3,4)"],
                2,
            ),
            (
                group(5, &["(1,2,3)", "(3,4,5)"]),
                vec!["(1,2,3)"],
                3,
            ),
            (
                group(6, &["(1,2)", "(1,2,3,4,5,6)"]),
                vec!["(1,2)(3,4)", "(1,3)(2,4)"],
                4,
            ),
        ];
        for (g, h_words, valency) in cases {
            let h = sub(&g, &h_words);
            let q = FeasibilityQuery::new("case", &g, &h, valency);
            let report = scan_feasible(&q).unwrap();
            let brute = brute_feasible(&g, h.elements().unwrap(), valency);
            assert_eq!(report.feasible, brute, "H = {h_words:?} valency {valency}");
            assert_eq!(report.scanned, g.order_u64().unwrap());
            assert!(!report.any_order_above_64);
        }
    }

    #[test]
    fn pair_stabilizer_scan_finds_the_petersen_arc() {
        let g = group(5, &["(1,2)", "(1,2,3,4,5)"]);
        let h = sub(&g, &["(1,2)", "(3,4)", "(3,4,5)"]);
        let q = FeasibilityQuery::new("deg5", &g, &h, 3);
        let report = scan_feasible(&q).unwrap();
        let arc = parse_cycles("(1,3)(2,4)", 5).unwrap();
        assert!(report.feasible.contains(&arc));
        // all feasible elements here share one double coset and give one graph
        assert_eq!(report.classes.len(), 1);
        let candidates = distinct_graph_candidates(&report);
        assert_eq!(candidates.len(), 1);
        let built = crate::coset::coset_graph(&g, &h, &candidates[0], 1000).unwrap();
        let petersen = crate::graph::petersen_graph();
        assert!(crate::symmetry::are_isomorphic(&built.graph, &petersen).is_some());
    }

    #[test]
    fn double_coset_grouping_matches_brute_force() {
        let g = group(4, &["(1,2)", "(1,2,3,4)"]);
        let h = sub(&g, &["(1,2,3)"]);
        let q = FeasibilityQuery::new("deg4", &g, &h, 3);
        let report = scan_feasible(&q).unwrap();
        assert!(!report.feasible.is_empty());
        // brute double cosets as element sets
        let members = h.elements().unwrap();
        let brute_class = |x: &Perm| -> Vec<Vec<u32>> {
            let mut set: Vec<Vec<u32>> = members
                .iter()
                .flat_map(|a| {
                    members
                        .iter()
                        .map(move |b| a.compose(x).compose(b).images().to_vec())
                })
                .collect();
            set.sort_unstable();
            set.dedup();
            set
        };
        for class in &report.classes {
            let first = brute_class(&report.feasible[class.members[0]]);
            assert_eq!(first.len() as u64, class.double_coset_size);
            for &m in &class.members[1..] {
                assert_eq!(brute_class(&report.feasible[m]), first);
            }
        }
        // distinct classes really are distinct
        let keys: HashSet<Vec<Vec<u32>>> = report
            .classes
            .iter()
            .map(|c| brute_class(&report.feasible[c.members[0]]))
            .collect();
        assert_eq!(keys.len(), report.classes.len());
        // every feasible element appears in exactly one class
        let total: usize = report.classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, report.feasible.len());
    }

    #[test]
    fn verify_reports_each_condition() {
        let g = group(4, &["(1,2)", "(1,2,3,4)"]);
        let h = sub(&g, &["(1,2,3)"]);
        // identity: everything except index and generation
        let id = Perm::identity(4);
        let check = verify_feasible(&g, &h, &id, 3).unwrap();
        assert!(check.two_element);
        assert!(check.square_in_subgroup);
        assert!(!check.intersection_index_ok);
        assert!(!check.generates_ambient);
        assert!(!check.all());
        // an order-3 element fails the 2-element test
        let three = parse_cycles("(1,2,4)", 4).unwrap();
        let check = verify_feasible(&g, &h, &three, 3).unwrap();
        assert!(!check.two_element);
        // a genuinely feasible element passes everything
        let q = FeasibilityQuery::new("deg4", &g, &h, 3);
        let report = scan_feasible(&q).unwrap();
        for f in &report.feasible {
            assert!(verify_feasible(&g, &h, f, 3).unwrap().all());
        }
        // degree mismatch is refused
        assert!(matches!(
            verify_feasible(&g, &h, &Perm::identity(5), 3),
            Err(FeasibleError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn caps_and_valency_are_enforced() {
        let g = group(4, &["(1,2)", "(1,2,3,4)"]);
        let h = sub(&g, &["(1,2,3)"]);
        let mut q = FeasibilityQuery::new("deg4", &g, &h, 3);
        q.element_budget = 10;
        assert!(matches!(
            scan_feasible(&q),
            Err(FeasibleError::BudgetExceeded { .. })
        ));
        let q = FeasibilityQuery::new("deg4", &g, &h, 4);
        assert!(matches!(
            scan_feasible(&q),
            Err(FeasibleError::ValencyDoesNotDivide { .. })
        ));
        let other = group(5, &["(1,2,3,4,5)"]);
        let foreign = sub(&other, &["(1,2,3,4,5)"]);
        let q = FeasibilityQuery::new("deg5", &g, &foreign, 1);
        assert!(matches!(scan_feasible(&q), Err(FeasibleError::NotSubgroup)));
    }

    #[test]
    fn json_shape_is_stable() {
        let g = group(4, &["(1,2)", "(1,2,3,4)"]);
        let h = sub(&g, &["(1,2,3)"]);
        let q = FeasibilityQuery::new("deg4", &g, &h, 3);
        let report = scan_feasible(&q).unwrap();
        let json = report.to_json();
        assert_eq!(json.feasible_count, report.feasible.len());
        assert_eq!(json.classes.len(), report.classes.len());
        let text = serde_json::to_string(&json).unwrap();
        let back: FeasibilityJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
    }
}
