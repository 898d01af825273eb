//! Conjugacy-class censuses of subgroups of a given isomorphism type.
//!
//! Two strategies cover every ambient this crate targets:
//!
//! * (a) pair scan, for ambient order ≤ [`PAIR_SCAN_CAP`]: all ambient
//!   elements are materialized; candidates arise as ⟨r, b⟩ where r runs over
//!   conjugacy-class representatives of elements of the profile's first
//!   order and b over all elements of the second order, filtered by the
//!   product order. Complete because every subgroup of the target type
//!   contains a generating pair with the stored profile, and some conjugate
//!   of it contains the chosen class representative.
//! * (b) structural, for a natural alternating ambient of any size: faithful
//!   actions of the target's model group on n points are enumerated as
//!   multisets of coset actions, realized explicitly, and deduplicated with
//!   the alternating-group conjugacy path (which also resolves class
//!   splitting, by testing the transposition-conjugate copy).
//!
//! The type of order 72 is not 2-generated (its quotient by the derived
//! subgroup of the order-24 factor is an elementary extension in which every
//! pair generates a proper subgroup), so strategy (a) reaches it through its
//! unique index-2 subgroup of the direct-product type of order 36: census
//! that type first, then scan ambient elements g with K^g = K, g² ∈ K,
//! g ∉ K and keep K ∪ Kg when it has the right type.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::isotype::{self, elements_capped, model_group, IsoName, ELEMENT_CAP};
use crate::perm::Perm;
use crate::stabchain::{GroupError, PermGroup};
use crate::subgroup::{are_conjugate, natural_ambient_kind, NaturalAmbient, Subgroup, SubgroupError};

pub const PAIR_SCAN_CAP: u64 = 2_000_000;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("no census strategy: ambient order {order} exceeds the pair-scan cap {cap} and the ambient is not a natural alternating group")]
    NoStrategy { order: BigUint, cap: u64 },
    #[error("no stored generator profile or model route for target type {target}")]
    IncompleteProfile { target: IsoName },
    #[error("pair-scan census requires degree ≤ 255, got {degree}")]
    DegreeTooLarge { degree: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
}

/// One conjugacy class of subgroups: the first-found representative plus the
/// class size when the whole class was walked (pair-scan strategy only).
#[derive(Debug, Clone)]
pub struct CensusClass {
    pub representative: Subgroup,
    pub class_size: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct SubgroupCensus {
    pub ambient_name: String,
    pub target: IsoName,
    pub classes: Vec<CensusClass>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusJson {
    pub ambient: String,
    pub target: String,
    pub class_count: usize,
    pub classes: Vec<CensusClassJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusClassJson {
    pub generators: Vec<String>,
    pub order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_size: Option<u64>,
}

impl SubgroupCensus {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn to_json(&self) -> CensusJson {
        CensusJson {
            ambient: self.ambient_name.clone(),
            target: self.target.to_string(),
            class_count: self.classes.len(),
            classes: self
                .classes
                .iter()
                .map(|c| CensusClassJson {
                    generators: c
                        .representative
                        .gens()
                        .iter()
                        .map(|p| p.to_cycle_string())
                        .collect(),
                    order: c.representative.order_u64().expect("census targets are small"),
                    class_size: c.class_size,
                })
                .collect(),
        }
    }
}

/// Census of conjugacy classes of subgroups of type `target` in `g`.
pub fn census(
    ambient_name: &str,
    g: &PermGroup,
    target: IsoName,
) -> Result<SubgroupCensus, CensusError> {
    if target == IsoName::Other {
        return Err(CensusError::IncompleteProfile { target });
    }
    if g.order_u64().is_some_and(|o| o <= PAIR_SCAN_CAP) {
        return census_pair_scan(ambient_name, g, target);
    }
    if natural_ambient_kind(g) == Some(NaturalAmbient::Alternating) {
        return census_natural_alternating(ambient_name, g, target);
    }
    Err(CensusError::NoStrategy {
        order: g.order(),
        cap: PAIR_SCAN_CAP,
    })
}

// ---------------------------------------------------------------------------
// packed element storage for the pair scan

struct PackedElements {
    degree: usize,
    data: Vec<u8>,
}

impl PackedElements {
    fn from_group(g: &PermGroup) -> Result<PackedElements, CensusError> {
        let degree = g.degree();
        if degree > 255 {
            return Err(CensusError::DegreeTooLarge { degree });
        }
        let count = g
            .order_u64()
            .expect("pair scan only runs under the cap") as usize;
        let mut data = Vec::with_capacity(count * degree);
        for p in g.elements() {
            data.extend(p.images().iter().map(|&i| i as u8));
        }
        Ok(PackedElements { degree, data })
    }

    fn len(&self) -> usize {
        self.data.len() / self.degree
    }

    fn get(&self, i: usize) -> &[u8] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    fn to_perm(&self, i: usize) -> Perm {
        Perm::from_images(self.get(i).iter().map(|&b| b as u32).collect())
            .expect("stored images are bijective")
    }
}

/// Order of the permutation `i ↦ b[a[i]]`, with a reusable scratch bitmap.
fn packed_product_order(a: &[u8], b: &[u8], seen: &mut [bool]) -> u64 {
    seen.fill(false);
    let mut order: u64 = 1;
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len: u64 = 0;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = b[a[p] as usize] as usize;
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

fn packed_order(a: &[u8], seen: &mut [bool]) -> u64 {
    // identity second factor: walk a's own cycles
    let mut order: u64 = 1;
    seen.fill(false);
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len: u64 = 0;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = a[p] as usize;
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// Conjugate `x` by `g` in packed form: out[g[i]] = g[x[i]].
fn packed_conjugate(x: &[u8], g: &[u8], out: &mut [u8]) {
    for i in 0..x.len() {
        out[g[i] as usize] = g[x[i] as usize];
    }
}

// ---------------------------------------------------------------------------
// candidate bookkeeping and conjugacy partitioning

struct Candidate {
    /// Concatenation of the subgroup's sorted packed elements: a canonical
    /// set key.
    key: Vec<u8>,
    gens: Vec<Perm>,
    seq: (usize, usize),
}

fn subgroup_key(elements: &mut Vec<Vec<u8>>) -> Vec<u8> {
    elements.sort_unstable();
    elements.concat()
}

fn perm_set_key(perms: &[Perm]) -> Vec<u8> {
    let mut packed: Vec<Vec<u8>> = perms
        .iter()
        .map(|p| p.images().iter().map(|&i| i as u8).collect())
        .collect();
    subgroup_key(&mut packed)
}

fn hash128(bytes: &[u8]) -> u128 {
    use std::hash::{Hash, Hasher};
    let mut h1 = std::collections::hash_map::DefaultHasher::new();
    bytes.hash(&mut h1);
    let mut h2 = std::collections::hash_map::DefaultHasher::new();
    0xa5a5_5a5a_u64.hash(&mut h2);
    bytes.hash(&mut h2);
    ((h1.finish() as u128) << 64) | h2.finish() as u128
}

/// Partitions candidate subgroups into ambient conjugacy classes by walking
/// each class as an orbit of element-sets under generator conjugation.
/// Candidates must arrive in deterministic scan order with distinct keys;
/// the first candidate of each class becomes its representative. Visited
/// sets are tracked by 128-bit hashes (collision odds are negligible at the
/// orbit sizes involved); candidate assignment itself re-checks full keys.
fn partition_candidates(
    ambient: &PermGroup,
    degree: usize,
    candidates: Vec<Candidate>,
) -> Vec<CensusClass> {
    let gens_packed: Vec<Vec<u8>> = ambient
        .gens()
        .iter()
        .map(|g| g.images().iter().map(|&i| i as u8).collect())
        .collect();
    let mut by_hash: HashMap<u128, Vec<usize>> = HashMap::new();
    for (i, c) in candidates.iter().enumerate() {
        by_hash.entry(hash128(&c.key)).or_default().push(i);
    }
    let mut assigned = vec![false; candidates.len()];
    let mut classes = Vec::new();

    for i in 0..candidates.len() {
        if assigned[i] {
            continue;
        }
        assigned[i] = true;
        let mut visited: HashSet<u128> = HashSet::new();
        visited.insert(hash128(&candidates[i].key));
        let mut frontier = vec![candidates[i].key.clone()];
        while let Some(set) = frontier.pop() {
            for g in &gens_packed {
                let mut conj: Vec<Vec<u8>> = set
                    .chunks(degree)
                    .map(|x| {
                        let mut out = vec![0u8; degree];
                        packed_conjugate(x, g, &mut out);
                        out
                    })
                    .collect();
                let key = subgroup_key(&mut conj);
                let h = hash128(&key);
                if visited.insert(h) {
                    if let Some(hits) = by_hash.get(&h) {
                        for &j in hits {
                            if !assigned[j] && candidates[j].key == key {
                                assigned[j] = true;
                            }
                        }
                    }
                    frontier.push(key);
                }
            }
        }
        let mut gens = candidates[i].gens.clone();
        gens.sort_unstable();
        let group = PermGroup::new(degree, gens).expect("candidate generators are clean");
        classes.push(CensusClass {
            representative: Subgroup::wrap(group),
            class_size: Some(visited.len() as u64),
        });
    }
    classes
}

// ---------------------------------------------------------------------------
// strategy (a): pair scan

/// Conjugacy-class representatives (as element indices, first-found order)
/// of the packed elements listed in `indices`.
fn element_class_reps(ambient: &PermGroup, packed: &PackedElements, indices: &[usize]) -> Vec<usize> {
    let degree = packed.degree;
    let gens_packed: Vec<Vec<u8>> = ambient
        .gens()
        .iter()
        .map(|g| g.images().iter().map(|&i| i as u8).collect())
        .collect();
    let mut visited: HashSet<Vec<u8>> = HashSet::new();
    let mut reps = Vec::new();
    for &i in indices {
        let start = packed.get(i);
        if visited.contains(start) {
            continue;
        }
        reps.push(i);
        visited.insert(start.to_vec());
        let mut frontier = vec![start.to_vec()];
        while let Some(x) = frontier.pop() {
            for g in &gens_packed {
                let mut out = vec![0u8; degree];
                packed_conjugate(&x, g, &mut out);
                if !visited.contains(out.as_slice()) {
                    visited.insert(out.clone());
                    frontier.push(out);
                }
            }
        }
    }
    reps
}

pub(crate) fn census_pair_scan(
    ambient_name: &str,
    g: &PermGroup,
    target: IsoName,
) -> Result<SubgroupCensus, CensusError> {
    let Some((o1, o2, o3)) = isotype::generator_profile(target) else {
        if target == IsoName::Z3sS4 {
            return census_by_extension(ambient_name, g);
        }
        return Err(CensusError::IncompleteProfile { target });
    };
    let target_order = target.order().expect("recognized targets have orders");
    let degree = g.degree();
    let packed = PackedElements::from_group(g)?;

    // one pass for element orders
    let mut o1_indices = Vec::new();
    let mut o2_indices = Vec::new();
    {
        let mut seen = vec![false; degree];
        for i in 0..packed.len() {
            let o = packed_order(packed.get(i), &mut seen);
            if o == o1 {
                o1_indices.push(i);
            }
            if o == o2 {
                o2_indices.push(i);
            }
        }
    }
    let reps = element_class_reps(g, &packed, &o1_indices);

    // sharded pair scan; deterministic after the (rep, b) sort
    let mut raw: Vec<(usize, usize)> = reps
        .iter()
        .enumerate()
        .flat_map(|(ri, &rep_idx)| {
            let r = packed.get(rep_idx);
            o2_indices
                .par_chunks(1024)
                .flat_map_iter(|chunk| {
                    let mut seen = vec![false; degree];
                    let mut hits = Vec::new();
                    for &bi in chunk {
                        if packed_product_order(r, packed.get(bi), &mut seen) == o3 {
                            hits.push((ri, bi));
                        }
                    }
                    hits
                })
                .collect::<Vec<_>>()
        })
        .collect();
    raw.sort_unstable();

    // closure, exact-order, and recognition filters; dedupe identical sets
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut seen_keys: HashSet<Vec<u8>> = HashSet::new();
    for (ri, bi) in raw {
        let r = packed.to_perm(reps[ri]);
        let b = packed.to_perm(bi);
        let Some(set) = isotype::closure_capped(degree, &[r.clone(), b.clone()], target_order as usize)
        else {
            continue;
        };
        if set.len() as u64 != target_order {
            continue;
        }
        let members: Vec<Perm> = set.into_iter().collect();
        let key = perm_set_key(&members);
        if !seen_keys.insert(key.clone()) {
            continue;
        }
        let grp = PermGroup::new(degree, vec![r.clone(), b.clone()])?;
        let els = elements_capped(&grp, ELEMENT_CAP).expect("bounded by target order");
        if isotype::recognize(&grp, &els).name != target {
            continue;
        }
        candidates.push(Candidate {
            key,
            gens: vec![r, b],
            seq: (ri, bi),
        });
    }
    candidates.sort_by_key(|c| c.seq);

    Ok(SubgroupCensus {
        ambient_name: ambient_name.to_string(),
        target,
        classes: partition_candidates(g, degree, candidates),
    })
}

/// Strategy (a) route for the non-2-generated order-72 type: census its
/// unique index-2 subgroup type (order 36) first, then extend each class
/// representative K by ambient elements g with K^g = K, g² ∈ K, g ∉ K.
/// Complete because every order-72 copy contains exactly one such K (its
/// abelianization is Z2), and K is conjugate to some census representative.
fn census_by_extension(ambient_name: &str, g: &PermGroup) -> Result<SubgroupCensus, CensusError> {
    let inner = census_pair_scan(ambient_name, g, IsoName::Z3xA4)?;
    let degree = g.degree();
    let order = g.order_u64().expect("pair scan only runs under the cap");

    let mut candidates: Vec<Candidate> = Vec::new();
    let mut seen_keys: HashSet<Vec<u8>> = HashSet::new();
    for (ki, class) in inner.classes.iter().enumerate() {
        let k = &class.representative;
        let k_els: Vec<Perm> = k.elements()?.to_vec();
        let k_set: HashSet<&Perm> = k_els.iter().collect();
        let k_gens = k.gens().to_vec();

        let shard = |range: std::ops::Range<u64>| -> Vec<(u64, Perm)> {
            let mut hits = Vec::new();
            for (offset, el) in g.elements_range(range.start, range.end).enumerate() {
                if k_set.contains(&el) {
                    continue;
                }
                if !k_set.contains(&el.compose(&el)) {
                    continue;
                }
                if !k_gens.iter().all(|x| k_set.contains(&x.conjugate_by(&el))) {
                    continue;
                }
                hits.push((range.start + offset as u64, el.clone()));
            }
            hits
        };
        let shard_size = 65_536u64;
        let mut found: Vec<(u64, Perm)> = (0..order.div_ceil(shard_size))
            .into_par_iter()
            .flat_map_iter(|s| shard(s * shard_size..order.min((s + 1) * shard_size)))
            .collect();
        found.sort_unstable_by_key(|(i, _)| *i);

        for (ei, el) in found {
            let members: Vec<Perm> = k_els
                .iter()
                .cloned()
                .chain(k_els.iter().map(|x| x.compose(&el)))
                .collect();
            let key = perm_set_key(&members);
            if !seen_keys.insert(key.clone()) {
                continue;
            }
            let mut gens = k_gens.clone();
            gens.push(el);
            let grp = PermGroup::new(degree, gens.clone())?;
            if grp.order_u64() != Some(72) {
                continue;
            }
            let els = elements_capped(&grp, ELEMENT_CAP).expect("order 72");
            if isotype::recognize(&grp, &els).name != IsoName::Z3sS4 {
                continue;
            }
            candidates.push(Candidate {
                key,
                gens,
                seq: (ki, ei as usize),
            });
        }
    }
    candidates.sort_by_key(|c| c.seq);

    Ok(SubgroupCensus {
        ambient_name: ambient_name.to_string(),
        target: IsoName::Z3sS4,
        classes: partition_candidates(g, degree, candidates),
    })
}

// ---------------------------------------------------------------------------
// strategy (b): natural alternating ambient

/// Multiplication table over a sorted element list; entry [i][j] is the
/// index of elements[i]∘elements[j].
pub(crate) struct MultTable {
    pub elements: Vec<Perm>,
    pub index: HashMap<Perm, u16>,
    table: Vec<u16>,
    n: usize,
}

impl MultTable {
    pub fn new(mut elements: Vec<Perm>) -> MultTable {
        elements.sort_unstable();
        let n = elements.len();
        assert!(n <= u16::MAX as usize, "multiplication table limited to 65535 elements");
        let index: HashMap<Perm, u16> = elements
            .iter()
            .cloned()
            .zip(0u16..)
            .collect();
        let mut table = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&elements[i].compose(&elements[j])];
            }
        }
        MultTable {
            elements,
            index,
            table,
            n,
        }
    }

    pub fn mul(&self, i: u16, j: u16) -> u16 {
        self.table[i as usize * self.n + j as usize]
    }

    pub fn len(&self) -> usize {
        self.n
    }
}

/// Closure of a generator list in index space: right-multiplication walk
/// from the identity, linear in the subgroup order.
fn closure_from_gens(table: &MultTable, gens: &[u16], id: u16) -> Vec<u16> {
    let mut member = vec![false; table.len()];
    member[id as usize] = true;
    let mut list = vec![id];
    let mut head = 0;
    while head < list.len() {
        for &g in gens {
            let p = table.mul(list[head], g);
            if !member[p as usize] {
                member[p as usize] = true;
                list.push(p);
            }
        }
        head += 1;
    }
    list.sort_unstable();
    list
}

/// Every subgroup of the group described by `table`, as sorted element-index
/// sets. Walks closures of increasing generator chains; each extension step
/// only adds an element that is the least generator of its own cyclic group,
/// with index above the previous extension (every subgroup is reached by its
/// increasing chain of least missing elements).
pub(crate) fn subgroup_catalog(table: &MultTable) -> Vec<Vec<u16>> {
    let n = table.len();
    let id = identity_index(table) as u16;
    // canonical[x]: x is the least element among the generators of ⟨x⟩
    let mut canonical = vec![false; n];
    for x in 0..n as u16 {
        if x == id {
            continue;
        }
        let mut powers = vec![x];
        let mut p = x;
        loop {
            p = table.mul(p, x);
            if p == id {
                break;
            }
            powers.push(p);
        }
        // generators of ⟨x⟩ are the powers with exponent coprime to the order
        let ord = powers.len() + 1; // including identity
        let gens: Vec<u16> = (1..ord)
            .filter(|k| num_integer::gcd(*k, ord) == 1)
            .map(|k| powers[k - 1])
            .collect();
        if gens.iter().all(|&gp| gp >= x) {
            canonical[x as usize] = true;
        }
    }

    let trivial = vec![id];
    // lowest extension floor each subgroup has been queued with; a smaller
    // floor re-queues the subgroup so increasing chains pass through it
    let mut floor: HashMap<Vec<u16>, u16> = HashMap::new();
    floor.insert(trivial.clone(), 0);
    // queue entries: (element set, generator chain, extension floor)
    let mut queue: Vec<(Vec<u16>, Vec<u16>, u16)> = vec![(trivial, Vec::new(), 0)];
    while let Some((s, gens, from)) = queue.pop() {
        let member: HashSet<u16> = s.iter().copied().collect();
        for x in from..n as u16 {
            if !canonical[x as usize] || member.contains(&x) {
                continue;
            }
            let mut chain = gens.clone();
            chain.push(x);
            let t = closure_from_gens(table, &chain, id);
            let bound = x + 1;
            let improved = match floor.entry(t.clone()) {
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(bound);
                    true
                }
                std::collections::hash_map::Entry::Occupied(mut o) => {
                    if bound < *o.get() {
                        o.insert(bound);
                        true
                    } else {
                        false
                    }
                }
            };
            if improved {
                queue.push((t, chain, bound));
            }
        }
    }
    let mut out: Vec<Vec<u16>> = floor.into_keys().collect();
    out.sort();
    out
}

fn identity_index(table: &MultTable) -> usize {
    // sorted element lists put the identity first
    debug_assert!(table.elements[0].is_identity());
    0
}

/// Strategy (b): embeddings of the target's model group into a natural
/// alternating group, enumerated by faithful coset-action multisets.
pub(crate) fn census_natural_alternating(
    ambient_name: &str,
    g: &PermGroup,
    target: IsoName,
) -> Result<SubgroupCensus, CensusError> {
    let Some(model) = model_group(target) else {
        return Err(CensusError::IncompleteProfile { target });
    };
    let n = g.degree();
    let m_els = elements_capped(model, ELEMENT_CAP).expect("models are small");
    let table = MultTable::new(m_els);
    let m = table.len();

    // subgroups of the model, grouped into model-conjugacy classes
    let subgroups = subgroup_catalog(&table);
    let sub_index: HashMap<&[u16], usize> =
        subgroups.iter().map(|s| s.as_slice()).zip(0..).collect();
    let inverse: Vec<u16> = (0..m as u16)
        .map(|i| {
            (0..m as u16)
                .find(|&j| table.mul(i, j) == identity_index(&table) as u16)
                .expect("group elements have inverses")
        })
        .collect();
    let model_gen_indices: Vec<u16> = model
        .gens()
        .iter()
        .map(|p| table.index[p])
        .collect();
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut class_reps: Vec<usize> = Vec::new();
    for start in 0..subgroups.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let class_id = class_reps.len();
        class_reps.push(start);
        class_of[start] = class_id;
        let mut frontier = vec![start];
        while let Some(si) = frontier.pop() {
            for &gi in &model_gen_indices {
                let conj: Vec<u16> = {
                    let mut v: Vec<u16> = subgroups[si]
                        .iter()
                        .map(|&x| table.mul(table.mul(inverse[gi as usize], x), gi))
                        .collect();
                    v.sort_unstable();
                    v
                };
                let ti = sub_index[conj.as_slice()];
                if class_of[ti] == usize::MAX {
                    class_of[ti] = class_id;
                    frontier.push(ti);
                }
            }
        }
    }

    // class data: representative set and its index in the model
    let class_sets: Vec<&Vec<u16>> = class_reps.iter().map(|&si| &subgroups[si]).collect();
    let class_index: Vec<usize> = class_sets.iter().map(|s| m / s.len()).collect();

    // multisets of classes whose indices sum to n (repetition allowed)
    let mut order: Vec<usize> = (0..class_sets.len()).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(class_index[c]));
    let mut multisets: Vec<Vec<usize>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn pick(
        order: &[usize],
        class_index: &[usize],
        from: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(chosen.clone());
            return;
        }
        for oi in from..order.len() {
            let c = order[oi];
            if class_index[c] <= remaining {
                chosen.push(c);
                pick(order, class_index, oi, remaining - class_index[c], chosen, out);
                chosen.pop();
            }
        }
    }
    pick(&order, &class_index, 0, n, &mut chosen, &mut multisets);

    // realize each multiset as a combined coset action; keep faithful,
    // even-only embeddings; also try the transposition-conjugate so the
    // alternating dedupe resolves class splitting
    let mut raw_candidates: Vec<Subgroup> = Vec::new();
    for multiset in &multisets {
        let mut images: Vec<Vec<u32>> = vec![Vec::with_capacity(n); model_gen_indices.len()];
        for &c in multiset {
            let set = class_sets[c];
            // label cosets by least member element; relabel in first-seen order
            let mut coset_label = vec![u16::MAX; m];
            for x in 0..m as u16 {
                let mut least = u16::MAX;
                for &s in set {
                    least = least.min(table.mul(s, x));
                }
                coset_label[x as usize] = least;
            }
            let mut point_of: HashMap<u16, u32> = HashMap::new();
            let mut labels_in_order: Vec<u16> = Vec::new();
            for x in 0..m as u16 {
                let l = coset_label[x as usize];
                point_of.entry(l).or_insert_with(|| {
                    labels_in_order.push(l);
                    labels_in_order.len() as u32 - 1
                });
            }
            let base = images[0].len() as u32;
            for (gi, &gen_idx) in model_gen_indices.iter().enumerate() {
                for &l in &labels_in_order {
                    let l2 = coset_label[table.mul(l, gen_idx) as usize];
                    images[gi].push(base + point_of[&l2]);
                }
            }
        }
        let gens: Vec<Perm> = images
            .into_iter()
            .map(|im| Perm::from_images(im).expect("coset action is a permutation"))
            .collect();
        if !gens.iter().all(|p| p.is_even()) {
            continue;
        }
        let grp = PermGroup::new(n, gens.clone())?;
        if grp.order() != model.order() {
            continue; // unfaithful: some kernel collapses the action
        }
        let swap = Perm::from_cycles(n, &[vec![0, 1]]).expect("degree ≥ 2");
        raw_candidates.push(Subgroup::wrap(grp.clone()));
        raw_candidates.push(Subgroup::wrap(grp.conjugate_by(&swap)));
    }

    // alternating-conjugacy dedupe, keeping first-found representatives
    let mut classes: Vec<CensusClass> = Vec::new();
    for cand in raw_candidates {
        let mut known = false;
        for cls in &classes {
            if are_conjugate(g, &cls.representative, &cand)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            let mut gens = cand.gens().to_vec();
            gens.sort_unstable();
            classes.push(CensusClass {
                representative: Subgroup::wrap(PermGroup::new(n, gens)?),
                class_size: None,
            });
        }
    }

    Ok(SubgroupCensus {
        ambient_name: ambient_name.to_string(),
        target,
        classes,
    })
}
