//! Subgroup-level operations: intersections, normality, conjugacy.
//!
//! Conjugacy of subgroups is decided without general normalizer machinery,
//! by one of two routes:
//!
//! * a bounded scan over the ambient group's elements, below
//!   [`CONJUGACY_SCAN_CAP`];
//! * for ambient groups that are a full alternating or symmetric group in
//!   natural action, a structural search over equivariant point bijections
//!   (any size), including the parity analysis that decides whether a
//!   symmetric-conjugacy class splits in the alternating group.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::isotype::{
    self, elements_capped, for_each_isomorphism, small_generating_set, IsoType, WordGroup,
    ELEMENT_CAP,
};
use crate::perm::Perm;
use crate::stabchain::{GroupError, PermGroup};

pub const CONJUGACY_SCAN_CAP: u64 = 2_000_000;

#[derive(Debug, Error)]
pub enum SubgroupError {
    #[error("subgroup order {order} exceeds the element cap {cap}")]
    ElementCap { order: BigUint, cap: u64 },
    #[error("both subgroups exceed the element cap; cannot intersect by filtering")]
    BothAboveCap,
    #[error("generator does not lie in the ambient group")]
    NotInAmbient,
    #[error(
        "no conjugacy strategy: ambient order {order} exceeds the scan cap {cap} \
         and the ambient is not a natural alternating or symmetric group"
    )]
    NoConjugacyStrategy { order: BigUint, cap: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A subgroup of some ambient permutation group, with a lazily cached
/// element list for orders up to [`ELEMENT_CAP`].
#[derive(Debug)]
pub struct Subgroup {
    group: PermGroup,
    elements: OnceLock<Vec<Perm>>,
}

impl Clone for Subgroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(v) = self.elements.get() {
            let _ = elements.set(v.clone());
        }
        Subgroup {
            group: self.group.clone(),
            elements,
        }
    }
}

impl Subgroup {
    pub fn from_gens(ambient: &PermGroup, gens: Vec<Perm>) -> Result<Self, SubgroupError> {
        if !gens.iter().all(|g| ambient.contains(g)) {
            return Err(SubgroupError::NotInAmbient);
        }
        let group = PermGroup::new(ambient.degree(), gens)?;
        Ok(Subgroup {
            group,
            elements: OnceLock::new(),
        })
    }

    pub fn from_group(ambient: &PermGroup, group: PermGroup) -> Result<Self, SubgroupError> {
        if !group.is_subgroup_of(ambient) {
            return Err(SubgroupError::NotInAmbient);
        }
        Ok(Subgroup {
            group,
            elements: OnceLock::new(),
        })
    }

    /// Wraps a group already known to live in the intended ambient.
    pub(crate) fn wrap(group: PermGroup) -> Self {
        Subgroup {
            group,
            elements: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Subgroup::wrap(PermGroup::trivial(degree))
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn gens(&self) -> &[Perm] {
        self.group.gens()
    }

    pub fn order(&self) -> BigUint {
        self.group.order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.group.order_u64()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.group.contains(p)
    }

    /// Full element list, lexicographically sorted and cached.
    pub fn elements(&self) -> Result<&[Perm], SubgroupError> {
        if let Some(v) = self.elements.get() {
            return Ok(v);
        }
        let computed = elements_capped(&self.group, ELEMENT_CAP).ok_or_else(|| {
            SubgroupError::ElementCap {
                order: self.group.order(),
                cap: ELEMENT_CAP,
            }
        })?;
        Ok(self.elements.get_or_init(|| computed))
    }

    /// Intersection, computed by filtering one side's elements through the
    /// other side's membership test. Needs at least one side enumerable.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup, SubgroupError> {
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let (listed, tester) = match small.elements() {
            Ok(v) => (v, large),
            Err(_) => match large.elements() {
                Ok(v) => (v, small),
                Err(_) => return Err(SubgroupError::BothAboveCap),
            },
        };
        let common: Vec<Perm> = listed
            .iter()
            .filter(|p| tester.group.contains(p))
            .cloned()
            .collect();
        Ok(Subgroup::wrap(PermGroup::new(self.degree(), common)?))
    }

    /// The conjugate `self^by = by⁻¹ · self · by`; `by` must lie in ambient.
    pub fn conjugate(&self, ambient: &PermGroup, by: &Perm) -> Result<Subgroup, SubgroupError> {
        if !ambient.contains(by) {
            return Err(SubgroupError::NotInAmbient);
        }
        Ok(Subgroup::wrap(self.group.conjugate_by(by)))
    }

    /// True iff conjugating every generator of `self` by every generator of
    /// `g` stays inside `self`. Requires `self ≤ g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        assert!(
            self.group.is_subgroup_of(g),
            "normality asked for a non-subgroup"
        );
        self.group
            .gens()
            .iter()
            .all(|h| g.gens().iter().all(|x| self.group.contains(&h.conjugate_by(x))))
    }

    pub fn iso_type(&self) -> Result<IsoType, SubgroupError> {
        let elements = self.elements()?;
        Ok(isotype::recognize(&self.group, elements))
    }
}

fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NaturalAmbient {
    Symmetric,
    Alternating,
}

/// Detects a full symmetric or alternating group in natural action.
pub fn natural_ambient_kind(g: &PermGroup) -> Option<NaturalAmbient> {
    let n = g.degree() as u64;
    if n < 3 {
        return None;
    }
    let full = factorial(n);
    let order = g.order();
    if order == full {
        return Some(NaturalAmbient::Symmetric);
    }
    if BigUint::from(2u32) * &order == full && g.gens().iter().all(|p| p.is_even()) {
        return Some(NaturalAmbient::Alternating);
    }
    None
}

/// Conjugacy of subgroups inside `ambient`, with a verified witness.
///
/// Route 1: ambient order ≤ [`CONJUGACY_SCAN_CAP`]: scan ambient elements.
/// Route 2: natural Sₙ/Aₙ ambient: structural search (see
/// [`visit_point_equivalences`]); in the alternating case an even witness
/// is required, and its absence after an exhaustive search is a proof of
/// non-conjugacy (the search walks every conjugator parity class).
pub fn are_conjugate(
    ambient: &PermGroup,
    h1: &Subgroup,
    h2: &Subgroup,
) -> Result<Option<Perm>, SubgroupError> {
    if h1.order() != h2.order() {
        return Ok(None);
    }
    if h1.group.same_group_as(&h2.group) {
        return Ok(Some(Perm::identity(ambient.degree())));
    }
    // cheap conjugation invariant: orbit-size multisets
    let sizes = |s: &Subgroup| {
        let mut v: Vec<usize> = s.group.orbits().iter().map(|o| o.len()).collect();
        v.sort_unstable();
        v
    };
    if sizes(h1) != sizes(h2) {
        return Ok(None);
    }

    let witness = if let Some(kind) = natural_ambient_kind(ambient) {
        natural_conjugate_witness(kind, h1, h2)?
    } else if ambient.order_u64().is_some_and(|o| o <= CONJUGACY_SCAN_CAP) {
        scan_conjugate_witness(ambient, h1, h2)
    } else {
        return Err(SubgroupError::NoConjugacyStrategy {
            order: ambient.order(),
            cap: CONJUGACY_SCAN_CAP,
        });
    };

    // never trust the search: re-check the certificate
    if let Some(ref g) = witness {
        assert!(
            conjugates_onto(&h1.group, &h2.group, g),
            "conjugacy witness failed verification"
        );
        assert!(ambient.contains(g), "conjugacy witness outside ambient");
    }
    Ok(witness)
}

/// True iff `h^g = k` (orders already known equal).
fn conjugates_onto(h: &PermGroup, k: &PermGroup, g: &Perm) -> bool {
    h.gens().iter().all(|x| k.contains(&x.conjugate_by(g)))
}

fn scan_conjugate_witness(ambient: &PermGroup, h1: &Subgroup, h2: &Subgroup) -> Option<Perm> {
    ambient
        .elements()
        .find(|g| conjugates_onto(&h1.group, &h2.group, g))
}

fn natural_conjugate_witness(
    kind: NaturalAmbient,
    h1: &Subgroup,
    h2: &Subgroup,
) -> Result<Option<Perm>, SubgroupError> {
    let degree = h1.degree();
    let mut witness = None;
    visit_point_equivalences(h1, h2, &mut |sigma, spare_fixed| {
        match kind {
            NaturalAmbient::Symmetric => {
                witness = Some(sigma.clone());
                true
            }
            NaturalAmbient::Alternating => {
                if sigma.is_even() {
                    witness = Some(sigma.clone());
                    true
                } else if let Some((a, b)) = spare_fixed {
                    // compose with a transposition of two points fixed by h2
                    let swap = Perm::from_cycles(degree, &[vec![a, b]]).unwrap();
                    witness = Some(sigma.compose(&swap));
                    true
                } else {
                    false
                }
            }
        }
    })?;
    Ok(witness)
}

/// Visits every conjugating bijection σ with `h1^σ = h2`, up to
/// rearrangement of h2-fixed points.
///
/// A conjugator is exactly an equivariant pair: an abstract isomorphism
/// α: H1 → H2 together with a point bijection φ with φ(p^h) = φ(p)^α(h).
/// The search enumerates every α (generator-image search) and, per α, every
/// assignment of H1-orbits to H2-orbits together with every image point for
/// each orbit representative whose exact H2-stabilizer matches the α-image
/// of the representative's stabilizer. Conjugators correspond bijectively
/// to these (α, assignment, image points) choices once the map on fixed
/// points is pinned down, so an exhausted search is a proof that no
/// conjugator exists beyond fixed-point rearrangements. (Image points in
/// one orbit may NOT be collapsed to a single representative: two of them
/// differ by a centralizer translate of the block, whose parity is
/// unrelated to the parities in H2.)
///
/// Fixed points are mapped sorted-to-sorted; `visit(σ, spare_fixed)` gets a
/// pair of h2-fixed points when at least two exist (composing σ with their
/// transposition flips parity and still conjugates, and together the two
/// options cover both parities available from fixed-point rearrangement).
/// Returning true stops the search; the function reports whether it was
/// stopped.
pub(crate) fn visit_point_equivalences(
    h1: &Subgroup,
    h2: &Subgroup,
    visit: &mut dyn FnMut(&Perm, Option<(usize, usize)>) -> bool,
) -> Result<bool, SubgroupError> {
    let degree = h1.degree();
    let h1_elements = h1.elements()?.to_vec();
    let h2_elements = h2.elements()?.to_vec();
    if h1_elements.len() != h2_elements.len() {
        return Ok(false);
    }
    if h1_elements.len() == 1 {
        // trivial subgroups: the identity bijection conjugates
        let spare = (degree >= 2).then_some((0, 1));
        return Ok(visit(&Perm::identity(degree), spare));
    }

    let gens = small_generating_set(degree, &h1_elements);
    let words = WordGroup::new(&gens, degree);
    let h2_index: HashMap<&Perm, u32> = h2_elements.iter().zip(0u32..).collect();

    // point stabilizer element-index sets on both sides
    let stab_sets = |elements: &[Perm]| -> Vec<Vec<u32>> {
        (0..degree)
            .map(|p| {
                elements
                    .iter()
                    .zip(0u32..)
                    .filter(|(e, _)| !e.moves(p))
                    .map(|(_, i)| i)
                    .collect()
            })
            .collect()
    };
    let h1_stabs = stab_sets(&words.elements);
    let h2_stabs = stab_sets(&h2_elements);

    let h1_orbits: Vec<Vec<usize>> = h1.group.orbits().into_iter().filter(|o| o.len() > 1).collect();
    let h2_orbits: Vec<Vec<usize>> = h2.group.orbits().into_iter().filter(|o| o.len() > 1).collect();
    let h1_fixed: Vec<usize> = h1.group.orbits().into_iter().filter(|o| o.len() == 1).map(|o| o[0]).collect();
    let h2_fixed: Vec<usize> = h2.group.orbits().into_iter().filter(|o| o.len() == 1).map(|o| o[0]).collect();
    if h1_orbits.len() != h2_orbits.len() || h1_fixed.len() != h2_fixed.len() {
        return Ok(false);
    }
    let spare_fixed = (h2_fixed.len() >= 2).then(|| (h2_fixed[0], h2_fixed[1]));

    struct Search<'a> {
        words: &'a WordGroup,
        map_idx: Vec<u32>,
        h2_elements: &'a [Perm],
        h1_stabs: &'a [Vec<u32>],
        h2_stabs: &'a [Vec<u32>],
        h1_orbits: &'a [Vec<usize>],
        h2_orbits: &'a [Vec<usize>],
        h1_fixed: &'a [usize],
        h2_fixed: &'a [usize],
        spare_fixed: Option<(usize, usize)>,
        used: Vec<bool>,
        phi: Vec<u32>,
        degree: usize,
    }

    impl Search<'_> {
        fn rec(
            &mut self,
            oi: usize,
            visit: &mut dyn FnMut(&Perm, Option<(usize, usize)>) -> bool,
        ) -> bool {
            if oi == self.h1_orbits.len() {
                for (a, b) in self.h1_fixed.iter().zip(self.h2_fixed.iter()) {
                    self.phi[*a] = *b as u32;
                }
                let sigma = Perm::from_images(self.phi.clone()).expect("bijection by construction");
                return visit(&sigma, self.spare_fixed);
            }
            let orbit = &self.h1_orbits[oi];
            let rep = orbit[0];
            // α-image of the stabilizer of rep, as h2 element indices
            let mut target_stab: Vec<u32> = self.h1_stabs[rep]
                .iter()
                .map(|&i| self.map_idx[i as usize])
                .collect();
            target_stab.sort_unstable();
            for ti in 0..self.h2_orbits.len() {
                if self.used[ti] || self.h2_orbits[ti].len() != orbit.len() {
                    continue;
                }
                for pi in 0..self.h2_orbits[ti].len() {
                    let p = self.h2_orbits[ti][pi];
                    if self.h2_stabs[p] != target_stab {
                        continue;
                    }
                    self.used[ti] = true;
                    for (i, word_el) in self.words.elements.iter().enumerate() {
                        let from = word_el.image(rep);
                        let to = self.h2_elements[self.map_idx[i] as usize].image(p);
                        self.phi[from] = to as u32;
                    }
                    if self.rec(oi + 1, visit) {
                        return true;
                    }
                    self.used[ti] = false;
                }
            }
            false
        }
    }

    let mut stopped = false;
    for_each_isomorphism(&words, &gens, &h2_elements, &mut |map| {
        let map_idx: Vec<u32> = map.iter().map(|p| h2_index[p]).collect();
        let mut search = Search {
            words: &words,
            map_idx,
            h2_elements: &h2_elements,
            h1_stabs: &h1_stabs,
            h2_stabs: &h2_stabs,
            h1_orbits: &h1_orbits,
            h2_orbits: &h2_orbits,
            h1_fixed: &h1_fixed,
            h2_fixed: &h2_fixed,
            spare_fixed,
            used: vec![false; h2_orbits.len()],
            phi: vec![0u32; degree],
            degree,
        };
        let _ = search.degree;
        if search.rec(0, visit) {
            stopped = true;
            true
        } else {
            false
        }
    });
    Ok(stopped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;
    use num_integer::Integer;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn group(degree: usize, cycle_strings: &[&str]) -> PermGroup {
        let gens = cycle_strings
            .iter()
            .map(|s| parse_cycles(s, degree).unwrap())
            .collect();
        PermGroup::new(degree, gens).unwrap()
    }

    fn symmetric(n: usize) -> PermGroup {
        let t = Perm::from_cycles(n, &[vec![0, 1]]).unwrap();
        let c = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        PermGroup::new(n, vec![t, c]).unwrap()
    }

    fn alternating(n: usize) -> PermGroup {
        let three = Perm::from_cycles(n, &[vec![0, 1, 2]]).unwrap();
        let long = if n % 2 == 1 {
            Perm::from_cycles(n, &[(0..n).collect()]).unwrap()
        } else {
            Perm::from_cycles(n, &[(1..n).collect()]).unwrap()
        };
        PermGroup::new(n, vec![three, long]).unwrap()
    }

    fn sub(ambient: &PermGroup, cycle_strings: &[&str]) -> Subgroup {
        let gens = cycle_strings
            .iter()
            .map(|s| parse_cycles(s, ambient.degree()).unwrap())
            .collect();
        Subgroup::from_gens(ambient, gens).unwrap()
    }

    #[test]
    fn element_listing() {
        let s6 = symmetric(6);
        let five = sub(&s6, &["(1,2,3,4,5)"]);
        assert_eq!(five.elements().unwrap().len(), 5);
        let trivial = Subgroup::trivial(6);
        assert_eq!(trivial.elements().unwrap(), &[Perm::identity(6)]);
    }

    #[test]
    fn intersect_matches_brute_force() {
        let s6 = symmetric(6);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let mut random_sub = || {
                let a = s6.random_element(&mut rng);
                let b = s6.random_element(&mut rng);
                Subgroup::from_gens(&s6, vec![a, b]).unwrap()
            };
            let h1 = random_sub();
            let h2 = random_sub();
            let meet = h1.intersect(&h2).unwrap();
            let set1: HashSet<&Perm> = h1.elements().unwrap().iter().collect();
            let set2: HashSet<&Perm> = h2.elements().unwrap().iter().collect();
            let expected: HashSet<&&Perm> = set1.intersection(&set2).collect();
            assert_eq!(meet.order_u64(), Some(expected.len() as u64));
            for p in expected {
                assert!(meet.contains(p));
            }
            // commutative, idempotent, divides gcd
            assert_eq!(h2.intersect(&h1).unwrap().order(), meet.order());
            assert_eq!(h1.intersect(&h1).unwrap().order(), h1.order());
            let g = h1.order_u64().unwrap().gcd(&h2.order_u64().unwrap());
            assert_eq!(g % meet.order_u64().unwrap(), 0);
        }
    }

    #[test]
    fn conjugate_preserves_structure() {
        let s6 = symmetric(6);
        let h = sub(&s6, &["(1,2,3)", "(1,2)(4,5)"]);
        let by = parse_cycles("(2,6,3)", 6).unwrap();
        let hc = h.conjugate(&s6, &by).unwrap();
        assert_eq!(hc.order(), h.order());
        assert_eq!(
            hc.iso_type().unwrap().fingerprint,
            h.iso_type().unwrap().fingerprint
        );
        // conjugating by a non-member is rejected
        let a6 = alternating(6);
        let odd = parse_cycles("(1,2)", 6).unwrap();
        assert!(h.conjugate(&a6, &odd).is_err());
    }

    #[test]
    fn sylow_three_orbit_in_a4() {
        let a4 = group(4, &["(1,2,3)", "(1,2)(3,4)"]);
        let p = sub(&a4, &["(1,2,3)"]);
        let mut distinct: HashSet<Vec<Perm>> = HashSet::new();
        for g in a4.elements() {
            let conj = p.conjugate(&a4, &g).unwrap();
            distinct.insert(conj.elements().unwrap().to_vec());
        }
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn normality_checks() {
        let s4 = symmetric(4);
        let a4 = sub(&s4, &["(1,2,3)", "(1,2)(3,4)"]);
        assert!(a4.is_normal_in(&s4));
        assert!(!sub(&s4, &["(1,2)"]).is_normal_in(&s4));
        let v4 = sub(&s4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert!(v4.is_normal_in(a4.group()));
        assert!(v4.is_normal_in(&s4));
        let whole = sub(&s4, &["(1,2)", "(1,2,3,4)"]);
        assert!(whole.is_normal_in(&s4));
    }

    #[test]
    fn normality_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let s5 = symmetric(5);
        for _ in 0..15 {
            let h = Subgroup::from_gens(&s5, vec![s5.random_element(&mut rng)]).unwrap();
            let brute = s5.elements().all(|g| {
                h.elements()
                    .unwrap()
                    .iter()
                    .all(|x| h.contains(&x.conjugate_by(&g)))
            });
            assert_eq!(h.is_normal_in(&s5), brute);
        }
    }

    #[test]
    fn conjugacy_small_cases() {
        let s4 = symmetric(4);
        let p1 = sub(&s4, &["(1,2,3)"]);
        let p2 = sub(&s4, &["(2,3,4)"]);
        let w = are_conjugate(&s4, &p1, &p2).unwrap();
        assert!(w.is_some());
        // same subgroup: identity witness
        let w = are_conjugate(&s4, &p1, &p1).unwrap();
        assert_eq!(w, Some(Perm::identity(4)));
        // different cycle structure, same order: not conjugate
        let t1 = sub(&s4, &["(1,2)"]);
        let t2 = sub(&s4, &["(1,2)(3,4)"]);
        assert_eq!(are_conjugate(&s4, &t1, &t2).unwrap(), None);
        // different orders: not conjugate
        assert_eq!(are_conjugate(&s4, &p1, &t1).unwrap(), None);
    }

    #[test]
    fn conjugacy_by_scan() {
        // direct product of two symmetric factors: not a natural ambient,
        // so the element scan decides
        let w = group(7, &["(1,2)", "(1,2,3)", "(4,5)", "(4,5,6,7)"]);
        assert_eq!(natural_ambient_kind(&w), None);
        let in_left = sub(&w, &["(1,2,3)"]);
        let moved = sub(&w, &["(1,2,3)"])
            .conjugate(&w, &parse_cycles("(4,5,6,7)", 7).unwrap())
            .unwrap();
        assert!(are_conjugate(&w, &in_left, &moved).unwrap().is_some());
        // same orbit-size multiset but supports in different factors:
        // conjugation preserves the factors, so never conjugate
        let in_right = sub(&w, &["(4,5,6)"]);
        assert_eq!(are_conjugate(&w, &in_left, &in_right).unwrap(), None);
    }

    #[test]
    fn natural_ambient_detection() {
        assert_eq!(
            natural_ambient_kind(&symmetric(6)),
            Some(NaturalAmbient::Symmetric)
        );
        assert_eq!(
            natural_ambient_kind(&alternating(7)),
            Some(NaturalAmbient::Alternating)
        );
        let d10 = group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]);
        assert_eq!(natural_ambient_kind(&d10), None);
    }

    #[test]
    fn natural_path_agrees_with_scan_path() {
        // are_conjugate routes natural ambients structurally; compare its
        // verdict against a guarded element scan on A6/S6
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let a6 = alternating(6);
        let s6 = symmetric(6);
        for ambient in [&a6, &s6] {
            for _ in 0..12 {
                let h1 = Subgroup::from_gens(ambient, vec![ambient.random_element(&mut rng)])
                    .unwrap();
                let h2 = Subgroup::from_gens(ambient, vec![ambient.random_element(&mut rng)])
                    .unwrap();
                let structural = are_conjugate(ambient, &h1, &h2).unwrap();
                let scan = (h1.order() == h2.order())
                    .then(|| scan_conjugate_witness(ambient, &h1, &h2))
                    .flatten();
                assert_eq!(
                    structural.is_some(),
                    scan.is_some(),
                    "path disagreement for {:?} vs {:?}",
                    h1.gens(),
                    h2.gens()
                );
            }
        }
    }

    /// The simple group of order 168 in its degree-7 action, generated from
    /// invertible 3x3 matrices over the field of two elements acting on the
    /// seven nonzero vectors (point v-1 holds vector with bits of v).
    fn psl27() -> PermGroup {
        let apply = |m: [[u8; 3]; 3], v: usize| -> usize {
            let bits = [v & 1, (v >> 1) & 1, (v >> 2) & 1];
            let mut w = 0usize;
            for (i, row) in m.iter().enumerate() {
                let b = row
                    .iter()
                    .zip(bits.iter())
                    .map(|(&c, &x)| (c as usize) * x)
                    .sum::<usize>()
                    % 2;
                w |= b << i;
            }
            w
        };
        let to_perm = |m: [[u8; 3]; 3]| {
            let images: Vec<u32> = (1..=7).map(|v| apply(m, v) as u32 - 1).collect();
            Perm::from_images(images).unwrap()
        };
        let shear = to_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let cycle = to_perm([[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        let g = PermGroup::new(7, vec![shear, cycle]).unwrap();
        assert_eq!(g.order_u64(), Some(168));
        g
    }

    #[test]
    fn alternating_class_split_is_detected() {
        // the order-168 simple group on 7 points is self-normalizing in the
        // alternating group and its two alternating classes fuse in the
        // symmetric group: the transposition-conjugate copy is conjugate in
        // S7 but not in A7
        let a7 = alternating(7);
        let s7 = symmetric(7);
        let l = psl27();
        assert!(l.gens().iter().all(|p| p.is_even()));
        let swap = parse_cycles("(1,2)", 7).unwrap();
        let lc = l.conjugate_by(&swap);

        let h = Subgroup::from_group(&s7, l.clone()).unwrap();
        let hc = Subgroup::from_group(&s7, lc.clone()).unwrap();
        assert!(are_conjugate(&s7, &h, &hc).unwrap().is_some());

        let h_alt = Subgroup::from_group(&a7, l.clone()).unwrap();
        let hc_alt = Subgroup::from_group(&a7, lc).unwrap();
        assert_eq!(are_conjugate(&a7, &h_alt, &hc_alt).unwrap(), None);

        // an even-conjugate copy stays in the same alternating class
        let even = parse_cycles("(1,2)(3,4)", 7).unwrap();
        let he = Subgroup::from_group(&a7, l.conjugate_by(&even)).unwrap();
        assert!(are_conjugate(&a7, &h_alt, &he).unwrap().is_some());
    }

    #[test]
    fn block_swap_keeps_single_class() {
        // ⟨(1..5)(6..10)⟩: swapping the two 5-point blocks is five
        // transpositions, an odd normalizing element, so the class does NOT
        // split and even conjugators exist for the transposition-conjugate
        let a10 = alternating(10);
        let h = Subgroup::from_gens(&a10, vec![parse_cycles("(1,2,3,4,5)(6,7,8,9,10)", 10).unwrap()])
            .unwrap();
        let swap = parse_cycles("(1,2)", 10).unwrap();
        let hc = Subgroup::from_group(&a10, h.group().conjugate_by(&swap)).unwrap();
        let w = are_conjugate(&a10, &h, &hc).unwrap();
        assert!(w.is_some_and(|g| g.is_even()));
    }

    #[test]
    fn no_strategy_error_is_reported() {
        // big non-natural ambient: a direct product of two alternating groups
        let mut gens = Vec::new();
        for g in alternating(13).gens() {
            let mut images: Vec<u32> = (0..26).collect();
            for p in 0..13 {
                images[p] = g.image(p) as u32;
            }
            gens.push(Perm::from_images(images).unwrap());
        }
        for g in alternating(13).gens() {
            let mut images: Vec<u32> = (0..26).collect();
            for p in 0..13 {
                images[13 + p] = 13 + g.image(p) as u32;
            }
            gens.push(Perm::from_images(images).unwrap());
        }
        let big = PermGroup::new(26, gens).unwrap();
        assert!(natural_ambient_kind(&big).is_none());
        assert!(big.order_u64().map_or(true, |o| o > CONJUGACY_SCAN_CAP));
        let h1 = sub(&big, &["(1,2,3)"]);
        let h2 = sub(&big, &["(2,3,4)"]);
        match are_conjugate(&big, &h1, &h2) {
            Err(SubgroupError::NoConjugacyStrategy { .. }) => {}
            other => panic!("expected NoConjugacyStrategy, got {other:?}"),
        }
    }

    #[test]
    fn iso_type_of_subgroups() {
        let s6 = symmetric(6);
        let a4 = sub(&s6, &["(1,2,3)", "(1,2)(3,4)"]);
        assert_eq!(a4.iso_type().unwrap().name, crate::isotype::IsoName::A4);
        let s4 = sub(&s6, &["(1,2,3,4)", "(1,2)"]);
        assert_eq!(s4.iso_type().unwrap().name, crate::isotype::IsoName::S4);
    }
}
