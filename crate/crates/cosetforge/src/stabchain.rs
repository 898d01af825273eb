//! Finite permutation groups via deterministic stabilizer chains.
//!
//! A [`PermGroup`] is built from generators with the classic Schreier-Sims
//! procedure (no randomization, so identical input always yields an
//! identical chain). Base points are chosen in natural order, which pins
//! down a useful invariant: the base point of each level is the smallest
//! point moved by that level's group. Coset canonicalization
//! ([`PermGroup::coset_min`]) depends on it.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use thiserror::Error;

use crate::perm::Perm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator degree {found} does not match group degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order {order} exceeds the cap {cap} for this operation")]
    OrderAboveCap { order: BigUint, cap: u64 },
}

/// Schreier-vector entry: how a point was first reached from the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Absent,
    Root,
    Via { parent: u32, gen: u32 },
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Indices into the shared strong-generator pool.
    gen_idx: Vec<usize>,
    /// Points in BFS discovery order; `orbit[0] == base`.
    orbit: Vec<u32>,
    /// Indexed by point.
    schreier: Vec<Slot>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut schreier = vec![Slot::Absent; degree];
        schreier[base] = Slot::Root;
        Level {
            base,
            gen_idx: Vec::new(),
            orbit: vec![base as u32],
            schreier,
        }
    }

    fn in_orbit(&self, point: usize) -> bool {
        self.schreier[point] != Slot::Absent
    }

    /// Full BFS rebuild of the orbit and Schreier vector.
    fn rebuild_orbit(&mut self, pool: &[Perm]) {
        for slot in &mut self.schreier {
            *slot = Slot::Absent;
        }
        self.schreier[self.base] = Slot::Root;
        self.orbit.clear();
        self.orbit.push(self.base as u32);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head] as usize;
            head += 1;
            for &gi in &self.gen_idx {
                let q = pool[gi].image(p);
                if self.schreier[q] == Slot::Absent {
                    self.schreier[q] = Slot::Via {
                        parent: p as u32,
                        gen: gi as u32,
                    };
                    self.orbit.push(q as u32);
                }
            }
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    pool: Vec<Perm>,
    pool_inv: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Builds the group generated by `gens` acting on `{0, ..., degree-1}`.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, GroupError> {
        let hint: Vec<usize> = (0..degree).collect();
        Self::with_base_hint(degree, gens, &hint)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: Vec::new(),
            pool: Vec::new(),
            pool_inv: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Builds a chain whose base points are chosen in `hint` order. The
    /// final chain is rebuilt until every level's base is the first hint
    /// point its group moves; with the natural hint this means base points
    /// are exactly the smallest moved points, level by level.
    pub(crate) fn with_base_hint(
        degree: usize,
        gens: Vec<Perm>,
        hint: &[usize],
    ) -> Result<Self, GroupError> {
        let mut clean = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
            if !g.is_identity() && !clean.contains(&g) {
                clean.push(g);
            }
        }
        // Bases are prescribed up front from the whole generator pool, so
        // the base-choice invariant holds by construction. A verification
        // pass that grows the pool may invalidate the prescription; rebuild
        // with the grown pool until a pass adds nothing. The pool is a
        // subset of the (finite) group and only grows, so this terminates.
        let mut pool = clean.clone();
        loop {
            let (mut group, grew) = Self::build_chain(degree, pool, hint);
            if !grew {
                debug_assert!(group.bases_first_moved(hint));
                group.gens = clean;
                return Ok(group);
            }
            pool = group.pool;
        }
    }

    /// Base sequence for a chain over `pool`: repeatedly take the first
    /// hint point moved by a generator fixing all bases chosen so far.
    fn bases_for(pool: &[Perm], hint: &[usize]) -> Vec<usize> {
        let mut bases: Vec<usize> = Vec::new();
        loop {
            let live: Vec<&Perm> = pool
                .iter()
                .filter(|g| bases.iter().all(|&b| !g.moves(b)))
                .collect();
            match hint
                .iter()
                .copied()
                .find(|&p| live.iter().any(|g| g.moves(p)))
            {
                Some(b) => bases.push(b),
                None => return bases,
            }
        }
    }

    fn bases_first_moved(&self, hint: &[usize]) -> bool {
        self.levels.iter().all(|level| {
            let first = hint
                .iter()
                .copied()
                .find(|&p| level.gen_idx.iter().any(|&gi| self.pool[gi].moves(p)));
            first == Some(level.base)
        })
    }

    fn build_chain(degree: usize, gens: Vec<Perm>, hint: &[usize]) -> (Self, bool) {
        let mut group = PermGroup {
            degree,
            gens: Vec::new(),
            pool: Vec::new(),
            pool_inv: Vec::new(),
            levels: Vec::new(),
        };
        if gens.is_empty() {
            return (group, false);
        }

        // Prescribed bases; level k holds every input generator fixing the
        // first k bases.
        let bases = Self::bases_for(&gens, hint);
        for &b in &bases {
            group.levels.push(Level::new(b, degree));
        }
        for g in gens {
            group.push_pool(g);
        }
        for gi in 0..group.pool.len() {
            for k in 0..group.levels.len() {
                let fixes_prefix = (0..k).all(|j| !group.pool[gi].moves(group.levels[j].base));
                if fixes_prefix {
                    group.levels[k].gen_idx.push(gi);
                } else {
                    break;
                }
            }
        }
        for k in 0..group.levels.len() {
            group.levels[k].rebuild_orbit(&group.pool);
        }
        let mut grew = false;

        // Verified pairs (orbit point, generator index) per level; marks are
        // only set after the Schreier generator sifts to the identity and are
        // wiped whenever the level's orbit or generator list changes.
        let mut processed: Vec<std::collections::HashSet<(u32, u32)>> =
            vec![std::collections::HashSet::new(); group.levels.len()];

        let mut i = group.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            let mut restart_at: Option<usize> = None;
            'pairs: for oi in 0..group.levels[level].orbit.len() {
                let point = group.levels[level].orbit[oi];
                for gi_pos in 0..group.levels[level].gen_idx.len() {
                    let gi = group.levels[level].gen_idx[gi_pos] as u32;
                    if processed[level].contains(&(point, gi)) {
                        continue;
                    }
                    let schreier_gen = group.schreier_generator(level, point as usize, gi as usize);
                    let (residue, stop) = group.strip(schreier_gen, level + 1);
                    if residue.is_identity() {
                        processed[level].insert((point, gi));
                        continue;
                    }
                    // New strong generator: it fixes the bases of levels
                    // level+1 .. stop, so it belongs to each of them.
                    let stop = if stop == group.levels.len() {
                        let new_base = hint
                            .iter()
                            .copied()
                            .find(|&p| residue.moves(p))
                            .expect("non-identity residue moves some point");
                        group.levels.push(Level::new(new_base, degree));
                        processed.push(std::collections::HashSet::new());
                        group.levels.len() - 1
                    } else {
                        stop
                    };
                    let ri = group.push_pool(residue);
                    grew = true;
                    for k in level + 1..=stop {
                        group.levels[k].gen_idx.push(ri);
                        group.levels[k].rebuild_orbit(&group.pool);
                        processed[k].clear();
                    }
                    restart_at = Some(stop);
                    break 'pairs;
                }
            }
            match restart_at {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        (group, grew)
    }

    fn push_pool(&mut self, g: Perm) -> usize {
        self.pool_inv.push(g.inverse());
        self.pool.push(g);
        self.pool.len() - 1
    }

    /// `u_point · s · u_{point^s}⁻¹` for the level's transversal `u`.
    fn schreier_generator(&self, level: usize, point: usize, gi: usize) -> Perm {
        let u = self.transversal_element(level, point);
        let us = u.compose(&self.pool[gi]);
        let image = us.image(self.levels[level].base);
        self.strip_through_level(us, level, image)
    }

    /// Multiplies `p` on the right by the inverse transversal element that
    /// carries `target` back to the level's base.
    fn strip_through_level(&self, mut p: Perm, level: usize, target: usize) -> Perm {
        let mut point = target;
        loop {
            match self.levels[level].schreier[point] {
                Slot::Root => return p,
                Slot::Via { parent, gen } => {
                    p = p.compose(&self.pool_inv[gen as usize]);
                    point = parent as usize;
                }
                Slot::Absent => unreachable!("target not in orbit"),
            }
        }
    }

    /// Sifts `p` through levels `start..`; returns the residue and the first
    /// level it could not pass (== number of levels if it passed them all).
    fn strip(&self, mut p: Perm, start: usize) -> (Perm, usize) {
        for level in start..self.levels.len() {
            let image = p.image(self.levels[level].base);
            if !self.levels[level].in_orbit(image) {
                return (p, level);
            }
            p = self.strip_through_level(p, level, image);
        }
        (p, self.levels.len())
    }

    /// The transversal element carrying the level's base to `point`.
    fn transversal_element(&self, level: usize, point: usize) -> Perm {
        let mut path = Vec::new();
        let mut p = point;
        loop {
            match self.levels[level].schreier[p] {
                Slot::Root => break,
                Slot::Via { parent, gen } => {
                    path.push(gen as usize);
                    p = parent as usize;
                }
                Slot::Absent => panic!("point {point} not in orbit of level {level}"),
            }
        }
        let mut u = Perm::identity(self.degree);
        for &gi in path.iter().rev() {
            u = u.compose(&self.pool[gi]);
        }
        u
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generators the group was constructed from (identity and
    /// duplicates dropped).
    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::one();
        for level in &self.levels {
            acc *= BigUint::from(level.orbit.len());
        }
        acc
    }

    pub fn order_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for level in &self.levels {
            acc = acc.checked_mul(level.orbit.len() as u64)?;
        }
        Some(acc)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, stop) = self.strip(p.clone(), 0);
        stop == self.levels.len() && residue.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group_as(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// Orbit of a point under the whole group.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.gens {
                let q = g.image(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit
    }

    /// All orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut orbit = self.orbit(p);
            for &q in &orbit {
                seen[q] = true;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).len() == self.degree
    }

    /// The stabilizer of `point` as a standalone group.
    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        let mut hint = Vec::with_capacity(self.degree);
        hint.push(point);
        hint.extend((0..self.degree).filter(|&p| p != point));
        let chain = Self::with_base_hint(self.degree, self.gens.clone(), &hint)
            .expect("generators already validated");
        if chain.levels.is_empty() || chain.levels[0].base != point {
            // Nothing moves the point, so the stabilizer is the whole group.
            return Self::new(self.degree, self.gens.clone()).expect("valid");
        }
        let stab_gens: Vec<Perm> = chain
            .levels
            .get(1)
            .map(|level| level.gen_idx.iter().map(|&gi| chain.pool[gi].clone()).collect())
            .unwrap_or_default();
        Self::new(self.degree, stab_gens).expect("valid")
    }

    /// The conjugate group `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Perm) -> PermGroup {
        let gens = self.gens.iter().map(|h| h.conjugate_by(g)).collect();
        Self::new(self.degree, gens).expect("conjugation preserves degree")
    }

    /// Lexicographically least element of the right coset `H·x` (comparing
    /// image arrays). Used as the canonical coset label.
    ///
    /// Correctness leans on the base-choice invariant: at each level, every
    /// point before the level's base (other than earlier bases) is fixed by
    /// the level's group, so a greedy choice per level is globally optimal.
    pub fn coset_min(&self, x: &Perm) -> Perm {
        assert_eq!(x.degree(), self.degree, "coset_min: degree mismatch");
        let mut cur = x.clone();
        for (li, level) in self.levels.iter().enumerate() {
            let mut best = level.orbit[0] as usize;
            for &gamma in &level.orbit {
                if cur.image(gamma as usize) < cur.image(best) {
                    best = gamma as usize;
                }
            }
            if best != level.base {
                let u = self.transversal_element(li, best);
                cur = u.compose(&cur);
            }
        }
        cur
    }

    /// Uniformly random element: one uniformly chosen transversal element
    /// per level, multiplied deepest level first. The factorization
    /// `g = u_{L-1} ∘ ... ∘ u_0` is unique, so the product is uniform.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut acc = Perm::identity(self.degree);
        for (li, level) in self.levels.iter().enumerate().rev() {
            let point = level.orbit[rng.gen_range(0..level.orbit.len())] as usize;
            if point != level.base {
                acc = acc.compose(&self.transversal_element(li, point));
            }
        }
        acc
    }

    fn materialized_transversals(&self) -> Vec<Vec<Perm>> {
        (0..self.levels.len())
            .map(|li| {
                self.levels[li]
                    .orbit
                    .iter()
                    .map(|&p| self.transversal_element(li, p as usize))
                    .collect()
            })
            .collect()
    }

    /// Iterates every element exactly once, in a deterministic order.
    pub fn elements(&self) -> Elements {
        let total = self
            .order_u64()
            .expect("element enumeration requires the order to fit in u64");
        Elements::new(self, 0, total)
    }

    /// The elements with odometer counters in `start..end`; the
    /// concatenation over a partition of `0..order` is the full listing.
    pub fn elements_range(&self, start: u64, end: u64) -> Elements {
        let total = self
            .order_u64()
            .expect("element enumeration requires the order to fit in u64");
        assert!(start <= end && end <= total, "element range out of bounds");
        Elements::new(self, start, end)
    }
}

/// Element iterator: a mixed-radix odometer over per-level transversal
/// indices, level 0 fastest. Stepping the fast digit costs one composition
/// against a cached suffix product.
pub struct Elements {
    transversals: Vec<Vec<Perm>>,
    digits: Vec<usize>,
    /// `suffix[k]` = product of transversal picks for levels `k..`, deepest
    /// first; `suffix[0]` composed with the level-0 pick is the element.
    suffix: Vec<Perm>,
    remaining: u64,
}

impl Elements {
    fn new(group: &PermGroup, start: u64, end: u64) -> Self {
        let nlevels = group.levels.len();
        let transversals = group.materialized_transversals();
        let mut digits = vec![0usize; nlevels];
        let mut c = start;
        for (k, level) in group.levels.iter().enumerate() {
            let len = level.orbit.len() as u64;
            digits[k] = (c % len) as usize;
            c /= len;
        }
        let mut it = Elements {
            transversals,
            digits,
            suffix: vec![Perm::identity(group.degree); nlevels + 1],
            remaining: end - start,
        };
        it.rebuild_suffixes_from(nlevels);
        it
    }

    /// Recomputes `suffix[k]` for `k < from_level` (suffix[len] = id).
    fn rebuild_suffixes_from(&mut self, from_level: usize) {
        for k in (0..from_level).rev() {
            self.suffix[k] = self.suffix[k + 1].compose(&self.transversals[k][self.digits[k]]);
        }
    }
}

impl Iterator for Elements {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let element = self.suffix[0].clone();
        if self.remaining > 0 {
            // Advance the odometer, level 0 fastest.
            let mut k = 0;
            loop {
                self.digits[k] += 1;
                if self.digits[k] < self.transversals[k].len() {
                    break;
                }
                self.digits[k] = 0;
                k += 1;
            }
            self.rebuild_suffixes_from(k + 1);
        }
        Some(element)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;
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

    /// Independent order computation: closure under multiplication.
    fn closure(gens: &[Perm]) -> HashSet<Perm> {
        let degree = gens[0].degree();
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(Perm::identity(degree));
        let mut frontier = vec![Perm::identity(degree)];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = p.compose(g);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        seen
    }

    fn symmetric(n: usize) -> PermGroup {
        let transposition = Perm::from_cycles(n, &[vec![0, 1]]).unwrap();
        let cycle = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        PermGroup::new(n, vec![transposition, cycle]).unwrap()
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

    fn factorial(n: u64) -> BigUint {
        (1..=n).map(BigUint::from).product::<BigUint>().max(BigUint::one())
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(group(4, &["(1,2)", "(1,2,3,4)"]).order_u64(), Some(24));
        assert_eq!(group(4, &["(1,2,3)", "(1,2)(3,4)"]).order_u64(), Some(12));
        assert_eq!(group(5, &["(1,2,3,4,5)"]).order_u64(), Some(5));
        assert_eq!(PermGroup::trivial(6).order_u64(), Some(1));
        // dihedral of order 10
        assert_eq!(
            group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]).order_u64(),
            Some(10)
        );
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        for n in 3..=12 {
            assert_eq!(symmetric(n).order(), factorial(n as u64));
            let half = factorial(n as u64) / BigUint::from(2u32);
            assert_eq!(alternating(n).order(), half);
        }
    }

    #[test]
    fn large_alternating_chain() {
        // degree-24 chain: order has 24 digits, far beyond u64
        let a24 = alternating(24);
        let expected = factorial(24) / BigUint::from(2u32);
        assert_eq!(a24.order(), expected);
        assert_eq!(a24.order_u64(), None);
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..5 {
            let p = a24.random_element(&mut rng);
            assert!(p.is_even());
            assert!(a24.contains(&p));
        }
        assert!(!a24.contains(&parse_cycles("(1,2)", 24).unwrap()));
    }

    #[test]
    fn order_matches_closure_on_random_gen_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let degree = rng.gen_range(3..=7);
            let mut gens = Vec::new();
            for _ in 0..rng.gen_range(1..=2) {
                let mut images: Vec<u32> = (0..degree as u32).collect();
                images.shuffle(&mut rng);
                gens.push(Perm::from_images(images).unwrap());
            }
            let brute = closure(&gens);
            let g = PermGroup::new(degree, gens).unwrap();
            assert_eq!(g.order_u64(), Some(brute.len() as u64));
            for p in &brute {
                assert!(g.contains(p));
            }
        }
    }

    #[test]
    fn membership_respects_parity() {
        let a10 = alternating(10);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..40 {
            let mut images: Vec<u32> = (0..10).collect();
            images.shuffle(&mut rng);
            let p = Perm::from_images(images).unwrap();
            assert_eq!(a10.contains(&p), p.is_even());
        }
    }

    #[test]
    fn base_points_are_smallest_moved() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let degree = rng.gen_range(4..=9);
            let mut gens = Vec::new();
            for _ in 0..2 {
                let mut images: Vec<u32> = (0..degree as u32).collect();
                images.shuffle(&mut rng);
                gens.push(Perm::from_images(images).unwrap());
            }
            let g = PermGroup::new(degree, gens).unwrap();
            let base = g.base();
            for w in base.windows(2) {
                assert!(w[0] < w[1], "base not increasing: {base:?}");
            }
            // every element fixes all non-base points before each base point
            let elements: Vec<Perm> = g.elements().collect();
            for (k, &b) in base.iter().enumerate() {
                let deeper: Vec<&Perm> = elements
                    .iter()
                    .filter(|p| base[..k].iter().all(|&earlier| !p.moves(earlier)))
                    .collect();
                for p in deeper {
                    for q in 0..b {
                        if !base[..k].contains(&q) {
                            assert!(!p.moves(q), "level {k} moves {q} below base {b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn element_iteration_is_exact() {
        for g in [symmetric(4), alternating(5), group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"])] {
            let elements: Vec<Perm> = g.elements().collect();
            assert_eq!(elements.len() as u64, g.order_u64().unwrap());
            let distinct: HashSet<&Perm> = elements.iter().collect();
            assert_eq!(distinct.len(), elements.len());
            for p in &elements {
                assert!(g.contains(p));
            }
        }
    }

    #[test]
    fn element_ranges_partition_the_listing() {
        let g = symmetric(5);
        let total = g.order_u64().unwrap();
        let full: Vec<Perm> = g.elements().collect();
        let mut stitched = Vec::new();
        let cuts = [0, 17, 40, 99, total];
        for w in cuts.windows(2) {
            stitched.extend(g.elements_range(w[0], w[1]));
        }
        assert_eq!(stitched, full);
    }

    #[test]
    fn point_stabilizer_orbit_product() {
        for g in [symmetric(6), alternating(7), group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"])] {
            for v in 0..g.degree() {
                let stab = g.point_stabilizer(v);
                for p in stab.gens() {
                    assert!(!p.moves(v));
                    assert!(g.contains(p));
                }
                let orbit = g.orbit(v).len() as u64;
                assert_eq!(
                    stab.order_u64().unwrap() * orbit,
                    g.order_u64().unwrap(),
                    "orbit-stabilizer failed at point {v}"
                );
            }
        }
    }

    #[test]
    fn point_stabilizer_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..15 {
            let degree = rng.gen_range(4..=7);
            let mut images: Vec<u32> = (0..degree as u32).collect();
            images.shuffle(&mut rng);
            let a = Perm::from_images(images).unwrap();
            let mut images: Vec<u32> = (0..degree as u32).collect();
            images.shuffle(&mut rng);
            let b = Perm::from_images(images).unwrap();
            let g = PermGroup::new(degree, vec![a.clone(), b.clone()]).unwrap();
            let v = rng.gen_range(0..degree);
            let stab = g.point_stabilizer(v);
            let expected: HashSet<Perm> = closure(&[a, b])
                .into_iter()
                .filter(|p| !p.moves(v))
                .collect();
            assert_eq!(stab.order_u64(), Some(expected.len() as u64));
            for p in &expected {
                assert!(stab.contains(p));
            }
        }
    }

    #[test]
    fn coset_min_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..200 {
            let degree = rng.gen_range(4..=7);
            let mut gens = Vec::new();
            for _ in 0..2 {
                let mut images: Vec<u32> = (0..degree as u32).collect();
                images.shuffle(&mut rng);
                gens.push(Perm::from_images(images).unwrap());
            }
            let h = PermGroup::new(degree, gens.clone()).unwrap();
            let mut images: Vec<u32> = (0..degree as u32).collect();
            images.shuffle(&mut rng);
            let x = Perm::from_images(images).unwrap();

            let brute = closure(&gens)
                .into_iter()
                .map(|p| p.compose(&x))
                .min()
                .unwrap();
            assert_eq!(h.coset_min(&x), brute);
        }
    }

    #[test]
    fn coset_min_is_constant_on_cosets() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let h = alternating(6);
        for _ in 0..50 {
            let mut images: Vec<u32> = (0..6).collect();
            images.shuffle(&mut rng);
            let x = Perm::from_images(images).unwrap();
            let rep = h.coset_min(&x);
            // rep lies in the coset
            assert!(h.contains(&rep.compose(&x.inverse())));
            // and is stable under left multiplication by subgroup elements
            for _ in 0..10 {
                let s = h.random_element(&mut rng);
                assert_eq!(h.coset_min(&s.compose(&x)), rep);
            }
        }
    }

    #[test]
    fn random_elements_are_uniform_on_s4() {
        // chi-squared over all 24 elements, df 23; crit at alpha = 0.001
        let g = symmetric(4);
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let samples = 10_000usize;
        let mut counts: std::collections::HashMap<Perm, usize> = std::collections::HashMap::new();
        for _ in 0..samples {
            let p = g.random_element(&mut rng);
            assert!(g.contains(&p));
            *counts.entry(p).or_default() += 1;
        }
        assert_eq!(counts.len(), 24);
        let expected = samples as f64 / 24.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 49.728, "chi-squared {chi2} too large");
    }

    #[test]
    fn conjugate_group_has_same_order() {
        let g = group(6, &["(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)"]);
        let by = parse_cycles("(1,6,3)(2,5)", 6).unwrap();
        let conj = g.conjugate_by(&by);
        assert_eq!(conj.order(), g.order());
        for h in g.gens() {
            assert!(conj.contains(&h.conjugate_by(&by)));
        }
    }

    #[test]
    fn subgroup_and_equality_checks() {
        let s4 = symmetric(4);
        let a4 = alternating(4);
        assert!(a4.is_subgroup_of(&s4));
        assert!(!s4.is_subgroup_of(&a4));
        let s4_again = group(4, &["(1,2)", "(2,3)", "(3,4)"]);
        assert!(s4.same_group_as(&s4_again));
    }

    #[test]
    fn orbits_and_transitivity() {
        let g = group(6, &["(1,2,3)", "(4,5)"]);
        assert_eq!(g.orbits(), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert!(!g.is_transitive());
        assert!(symmetric(5).is_transitive());
        assert_eq!(PermGroup::trivial(3).orbits(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn rejects_degree_mismatch() {
        let err = PermGroup::new(4, vec![Perm::identity(5)]);
        assert_eq!(
            err.err(),
            Some(GroupError::DegreeMismatch {
                expected: 4,
                found: 5
            })
        );
    }
}
