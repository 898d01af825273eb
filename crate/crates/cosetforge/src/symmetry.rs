//! Graph automorphisms, isomorphism testing, and s-arc transitivity.
//!
//! The automorphism search individualizes base vertices one at a time,
//! refines the coloring around each, and extends partial maps by a
//! backtrack that only ever places a vertex on a color-compatible image
//! consistent with its already-mapped neighbors. Generators are collected
//! level by level: the group fixing a base prefix pointwise is built from
//! the group one level deeper plus one coset representative per new point
//! in the orbit of the next base vertex.

use std::collections::{BTreeMap, HashSet, VecDeque};

use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::perm::Perm;
use crate::stabchain::{GroupError, PermGroup};

/// Vertex-count bound for the automorphism backtrack.
pub const AUT_VERTEX_CAP: usize = 20_000;

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("graph on {n} vertices exceeds the automorphism cap {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("permutation {index} in the supplied list is not an automorphism")]
    NotAutomorphism { index: usize },
    #[error("permutation degree {got} does not match the vertex count {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Coarsest equitable coloring refining the given one. Color ids are
/// assigned by sorted signature rank, so colorings of different graphs are
/// comparable whenever their initial colorings mean the same thing.
pub fn equitable_refinement(graph: &SimpleGraph, initial: &[usize]) -> Vec<usize> {
    assert_eq!(initial.len(), graph.vertex_count());
    let n = graph.vertex_count();
    let mut color = initial.to_vec();
    let mut classes = 0;
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut around: Vec<usize> = graph
                .neighbors(v)
                .iter()
                .map(|&w| color[w as usize])
                .collect();
            around.sort_unstable();
            sigs.push((color[v], around));
        }
        let mut table: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for sig in &sigs {
            table.insert(sig, 0);
        }
        for (rank, slot) in table.values_mut().enumerate() {
            *slot = rank;
        }
        let next: Vec<usize> = sigs.iter().map(|s| table[s]).collect();
        let next_classes = table.len();
        if next_classes == classes {
            return next;
        }
        classes = next_classes;
        color = next;
    }
}

/// Refinement from a coloring where the pinned vertices get unique colors
/// 1, 2, ... in order and everything else starts at 0.
fn refine_pinned(graph: &SimpleGraph, pinned: &[usize]) -> Vec<usize> {
    let mut init = vec![0usize; graph.vertex_count()];
    for (i, &v) in pinned.iter().enumerate() {
        init[v] = i + 1;
    }
    equitable_refinement(graph, &init)
}

fn class_count(colors: &[usize]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m + 1)
}

/// Backtrack that extends a partial vertex map to a full isomorphism.
///
/// `order` visits domain vertices so that, within a component, every vertex
/// after the first has an earlier neighbor; candidates then come from the
/// image's neighborhood. Consistency is local: a placement must send every
/// already-mapped neighbor edge to an edge. With matching edge counts that
/// makes a completed map an isomorphism, since the edge map is injective.
struct MapSearch<'a> {
    dom: &'a SimpleGraph,
    cod: &'a SimpleGraph,
    dom_color: &'a [usize],
    cod_color: &'a [usize],
    order: Vec<usize>,
    map: Vec<Option<u32>>,
    used: Vec<bool>,
}

impl MapSearch<'_> {
    fn place(&mut self, u: usize, w: usize) -> bool {
        if self.used[w] || self.cod_color[w] != self.dom_color[u] {
            return false;
        }
        for &x in self.dom.neighbors(u) {
            if let Some(y) = self.map[x as usize] {
                if !self.cod.has_edge(w, y as usize) {
                    return false;
                }
            }
        }
        self.map[u] = Some(w as u32);
        self.used[w] = true;
        true
    }

    fn unplace(&mut self, u: usize) {
        let w = self.map[u].take().expect("unplace follows place");
        self.used[w as usize] = false;
    }

    fn extend(&mut self, idx: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let u = self.order[idx];
        let anchor = self
            .dom
            .neighbors(u)
            .iter()
            .find_map(|&x| self.map[x as usize]);
        match anchor {
            Some(y) => {
                let pool: Vec<usize> = self
                    .cod
                    .neighbors(y as usize)
                    .iter()
                    .map(|&w| w as usize)
                    .collect();
                for w in pool {
                    if self.place(u, w) {
                        if self.extend(idx + 1) {
                            return true;
                        }
                        self.unplace(u);
                    }
                }
            }
            None => {
                for w in 0..self.cod.vertex_count() {
                    if self.place(u, w) {
                        if self.extend(idx + 1) {
                            return true;
                        }
                        self.unplace(u);
                    }
                }
            }
        }
        false
    }
}

/// Domain traversal order: seeds first, then breadth-first growth so later
/// vertices have mapped neighbors, restarting for unreached components.
fn search_order(graph: &SimpleGraph, seeds: &[usize]) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            order.push(s);
            queue.push_back(s);
        }
    }
    let mut fallback = 0;
    loop {
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        while fallback < n && seen[fallback] {
            fallback += 1;
        }
        if fallback == n {
            return order;
        }
        seen[fallback] = true;
        order.push(fallback);
        queue.push_back(fallback);
    }
}

/// Finds one automorphism fixing `prefix` pointwise and sending b to c, or
/// proves there is none under the pinned refinement.
fn find_prefix_automorphism(
    graph: &SimpleGraph,
    prefix: &[usize],
    b: usize,
    c: usize,
) -> Option<Perm> {
    let mut dom_pins = prefix.to_vec();
    dom_pins.push(b);
    let mut cod_pins = prefix.to_vec();
    cod_pins.push(c);
    let dom_color = refine_pinned(graph, &dom_pins);
    let cod_color = refine_pinned(graph, &cod_pins);
    if dom_color[b] != cod_color[c] {
        return None;
    }
    let mut dom_hist = BTreeMap::new();
    for &col in &dom_color {
        *dom_hist.entry(col).or_insert(0u32) += 1;
    }
    let mut cod_hist = BTreeMap::new();
    for &col in &cod_color {
        *cod_hist.entry(col).or_insert(0u32) += 1;
    }
    if dom_hist != cod_hist {
        return None;
    }
    let n = graph.vertex_count();
    let mut search = MapSearch {
        dom: graph,
        cod: graph,
        dom_color: &dom_color,
        cod_color: &cod_color,
        order: search_order(graph, &dom_pins),
        map: vec![None; n],
        used: vec![false; n],
    };
    for &p in prefix {
        if !search.place(p, p) {
            return None;
        }
    }
    if !search.place(b, c) {
        return None;
    }
    let start = prefix.len() + 1;
    if !search.extend(start) {
        return None;
    }
    let images: Vec<u32> = search.map.iter().map(|m| m.unwrap()).collect();
    Some(Perm::from_images(images).expect("search produced a bijection"))
}

fn is_automorphism(graph: &SimpleGraph, p: &Perm) -> bool {
    if p.degree() != graph.vertex_count() {
        return false;
    }
    graph
        .edges()
        .iter()
        .all(|&(u, v)| graph.has_edge(p.image(u as usize), p.image(v as usize)))
}

fn orbit_of(point: usize, degree: usize, gens: &[Perm]) -> Vec<bool> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.image(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

/// Full automorphism group of the graph.
pub fn automorphism_group(graph: &SimpleGraph) -> Result<PermGroup, SymmetryError> {
    automorphism_group_seeded(graph, &[])
}

/// Full automorphism group, starting from already-known automorphisms.
/// Seeds shrink the search: any image already reachable by the known group
/// skips its backtrack call.
pub fn automorphism_group_seeded(
    graph: &SimpleGraph,
    seeds: &[Perm],
) -> Result<PermGroup, SymmetryError> {
    let n = graph.vertex_count();
    if n > AUT_VERTEX_CAP {
        return Err(SymmetryError::TooManyVertices {
            n,
            cap: AUT_VERTEX_CAP,
        });
    }
    for (index, s) in seeds.iter().enumerate() {
        if s.degree() != n {
            return Err(SymmetryError::DegreeMismatch {
                expected: n,
                got: s.degree(),
            });
        }
        if !is_automorphism(graph, s) {
            return Err(SymmetryError::NotAutomorphism { index });
        }
    }
    if n == 0 {
        return Ok(PermGroup::trivial(1));
    }
    // descend: individualize base vertices until the coloring is discrete
    let mut base: Vec<usize> = Vec::new();
    let mut level_colors: Vec<Vec<usize>> = vec![refine_pinned(graph, &base)];
    loop {
        let colors = level_colors.last().unwrap();
        if class_count(colors) == n {
            break;
        }
        let mut hist = vec![0usize; class_count(colors)];
        for &c in colors.iter() {
            hist[c] += 1;
        }
        let split_class = hist.iter().position(|&h| h > 1).expect("non-discrete");
        let b = colors
            .iter()
            .position(|&c| c == split_class)
            .expect("class is populated");
        base.push(b);
        level_colors.push(refine_pinned(graph, &base));
    }
    // ascend: gens[l] generates the automorphisms fixing base[..l] pointwise
    let mut gens: Vec<Perm> = Vec::new();
    for level in (0..base.len()).rev() {
        let prefix = &base[..level];
        let b = base[level];
        let colors = &level_colors[level];
        let mut next_gens: Vec<Perm> = gens;
        for s in seeds {
            if prefix.iter().all(|&p| s.image(p) == p) && !next_gens.contains(s) {
                next_gens.push(s.clone());
            }
        }
        let mut reached = orbit_of(b, n, &next_gens);
        for c in 0..n {
            if reached[c] || colors[c] != colors[b] {
                continue;
            }
            if let Some(found) = find_prefix_automorphism(graph, prefix, b, c) {
                debug_assert!(is_automorphism(graph, &found));
                next_gens.push(found);
                reached = orbit_of(b, n, &next_gens);
            }
        }
        gens = next_gens;
    }
    let group = PermGroup::new(n, gens)?;
    debug_assert!(group.gens().iter().all(|g| is_automorphism(graph, g)));
    Ok(group)
}

/// One isomorphism between the graphs, if any exists.
pub fn are_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Option<Perm> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let n = a.vertex_count();
    if n == 0 {
        return Some(Perm::identity(0));
    }
    let acol = equitable_refinement(a, &vec![0; n]);
    let bcol = equitable_refinement(b, &vec![0; n]);
    let mut ah: BTreeMap<usize, u32> = BTreeMap::new();
    for &c in &acol {
        *ah.entry(c).or_insert(0) += 1;
    }
    let mut bh: BTreeMap<usize, u32> = BTreeMap::new();
    for &c in &bcol {
        *bh.entry(c).or_insert(0) += 1;
    }
    if ah != bh {
        return None;
    }
    let mut search = MapSearch {
        dom: a,
        cod: b,
        dom_color: &acol,
        cod_color: &bcol,
        order: search_order(a, &[]),
        map: vec![None; n],
        used: vec![false; n],
    };
    if !search.extend(0) {
        return None;
    }
    let images: Vec<u32> = search.map.iter().map(|m| m.unwrap()).collect();
    let p = Perm::from_images(images).expect("bijection");
    debug_assert!(a
        .edges()
        .iter()
        .all(|&(u, v)| b.has_edge(p.image(u as usize), p.image(v as usize))));
    Some(p)
}

/// Number of s-arcs: walks v0..vs along edges that never immediately turn
/// back. Computed by dynamic programming over directed edges.
pub fn count_s_arcs(graph: &SimpleGraph, s: usize) -> u64 {
    let n = graph.vertex_count();
    if s == 0 {
        return n as u64;
    }
    // weight of each directed edge (u, v) = number of (s-1)-arcs ending u → v
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    for u in 0..n {
        for &v in graph.neighbors(u) {
            arcs.push((u as u32, v));
        }
    }
    let index: std::collections::HashMap<(u32, u32), usize> = arcs
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i))
        .collect();
    let mut weight = vec![1u64; arcs.len()];
    for _ in 1..s {
        let mut next = vec![0u64; arcs.len()];
        for (i, &(u, v)) in arcs.iter().enumerate() {
            for &x in graph.neighbors(v as usize) {
                if x != u {
                    next[index[&(v, x)]] += weight[i];
                }
            }
        }
        weight = next;
    }
    weight.iter().sum()
}

/// Lexicographically smallest s-arc, if one exists.
fn first_s_arc(graph: &SimpleGraph, s: usize) -> Option<Vec<u32>> {
    fn grow(graph: &SimpleGraph, arc: &mut Vec<u32>, s: usize) -> bool {
        if arc.len() == s + 1 {
            return true;
        }
        let last = *arc.last().unwrap() as usize;
        let forbidden = if arc.len() >= 2 {
            Some(arc[arc.len() - 2])
        } else {
            None
        };
        for &w in graph.neighbors(last) {
            if Some(w) == forbidden {
                continue;
            }
            arc.push(w);
            if grow(graph, arc, s) {
                return true;
            }
            arc.pop();
        }
        false
    }
    for v in 0..graph.vertex_count() {
        let mut arc = vec![v as u32];
        if grow(graph, &mut arc, s) {
            return Some(arc);
        }
    }
    None
}

/// Whether the given vertex group is transitive on s-arcs. The group's
/// generators must act as automorphisms. Vacuously true when the graph has
/// no s-arcs.
pub fn is_s_arc_transitive(
    graph: &SimpleGraph,
    group: &PermGroup,
    s: usize,
) -> Result<bool, SymmetryError> {
    let n = graph.vertex_count();
    if group.degree() != n.max(1) {
        return Err(SymmetryError::DegreeMismatch {
            expected: n,
            got: group.degree(),
        });
    }
    for (index, g) in group.gens().iter().enumerate() {
        if !is_automorphism(graph, g) {
            return Err(SymmetryError::NotAutomorphism { index });
        }
    }
    let total = count_s_arcs(graph, s);
    if s == 0 {
        if n == 0 {
            return Ok(true);
        }
        return Ok(orbit_of(0, n, group.gens()).iter().filter(|&&r| r).count() as u64 == total);
    }
    if total == 0 {
        return Ok(true);
    }
    let start = first_s_arc(graph, s).expect("positive count implies an arc exists");
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(start.clone());
    let mut stack = vec![start];
    while let Some(arc) = stack.pop() {
        for g in group.gens() {
            let image: Vec<u32> = arc.iter().map(|&v| g.image(v as usize) as u32).collect();
            if !seen.contains(&image) {
                seen.insert(image.clone());
                stack.push(image);
            }
        }
    }
    Ok(seen.len() as u64 == total)
}

/// Largest s in 0..=cap with the group transitive on s-arcs; None when even
/// vertex transitivity (s = 0) fails.
pub fn max_arc_transitivity(
    graph: &SimpleGraph,
    group: &PermGroup,
    cap: usize,
) -> Result<Option<usize>, SymmetryError> {
    let mut best = None;
    for s in 0..=cap {
        if count_s_arcs(graph, s) == 0 {
            break;
        }
        if is_s_arc_transitive(graph, group, s)? {
            best = Some(s);
        } else {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, petersen_graph, star_graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rayon::prelude::*;

    fn brute_aut_order(graph: &SimpleGraph) -> u64 {
        let n = graph.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0u64;
        loop {
            let ok = graph.edges().iter().all(|&(u, v)| {
                graph.has_edge(perm[u as usize], perm[v as usize])
            });
            if ok {
                count += 1;
            }
            if !next_permutation(&mut perm) {
                return count;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        if p.len() < 2 {
            return false;
        }
        let mut i = p.len() - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = p.len() - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn named_graph_automorphism_orders() {
        assert_eq!(
            automorphism_group(&petersen_graph()).unwrap().order_u64(),
            Some(120)
        );
        assert_eq!(
            automorphism_group(&cycle_graph(6)).unwrap().order_u64(),
            Some(12)
        );
        assert_eq!(
            automorphism_group(&cycle_graph(9)).unwrap().order_u64(),
            Some(18)
        );
        assert_eq!(
            automorphism_group(&path_graph(5)).unwrap().order_u64(),
            Some(2)
        );
        assert_eq!(
            automorphism_group(&complete_graph(6)).unwrap().order_u64(),
            Some(720)
        );
        assert_eq!(
            automorphism_group(&star_graph(6)).unwrap().order_u64(),
            Some(120)
        );
        // empty and edgeless graphs
        assert_eq!(
            automorphism_group(&SimpleGraph::new(0)).unwrap().order_u64(),
            Some(1)
        );
        assert_eq!(
            automorphism_group(&SimpleGraph::new(4)).unwrap().order_u64(),
            Some(24)
        );
        // two disjoint triangles: wreath-type symmetry of order 72
        let two = SimpleGraph::from_edges(
            6,
            [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert_eq!(automorphism_group(&two).unwrap().order_u64(), Some(72));
    }

    #[test]
    fn automorphisms_match_brute_force_on_all_small_graphs() {
        // every graph on five vertices
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        (0u32..1 << pairs.len()).into_par_iter().for_each(|mask| {
            let mut g = SimpleGraph::new(5);
            for (bit, &(u, v)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
            }
            let fast = automorphism_group(&g).unwrap().order_u64().unwrap();
            assert_eq!(fast, brute_aut_order(&g), "mask {mask}");
        });
    }

    #[test]
    fn automorphisms_match_brute_force_on_random_graphs() {
        let cases: Vec<(usize, u64)> = (0..60)
            .map(|i| (6 + (i % 2) as usize, 0xc0ffee + i as u64))
            .collect();
        cases.into_par_iter().for_each(|(n, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = SimpleGraph::new(n);
            let density = rng.gen_range(0.2..0.8);
            for v in 1..n {
                for u in 0..v {
                    if rng.gen_bool(density) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let fast = automorphism_group(&g).unwrap().order_u64().unwrap();
            assert_eq!(fast, brute_aut_order(&g), "seed {seed}");
        });
    }

    #[test]
    fn seeded_search_agrees_and_validates() {
        let p = petersen_graph();
        let full = automorphism_group(&p).unwrap();
        // seed with a pair of generators found by the unseeded search
        let seeds: Vec<Perm> = full.gens().to_vec();
        let seeded = automorphism_group_seeded(&p, &seeds).unwrap();
        assert_eq!(seeded.order_u64(), Some(120));
        // a non-automorphism seed is rejected
        let bad = Perm::from_cycles(10, &[vec![0, 1]]).unwrap();
        assert!(matches!(
            automorphism_group_seeded(&p, &[bad]),
            Err(SymmetryError::NotAutomorphism { index: 0 })
        ));
        let short = Perm::identity(3);
        assert!(matches!(
            automorphism_group_seeded(&p, &[short]),
            Err(SymmetryError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn refinement_separates_degrees_and_stabilizes() {
        let g = star_graph(5);
        let colors = equitable_refinement(&g, &vec![0; 5]);
        assert_ne!(colors[0], colors[1]);
        assert!(colors[1] == colors[2] && colors[2] == colors[3] && colors[3] == colors[4]);
        // already-equitable colorings are fixed points up to renaming
        let again = equitable_refinement(&g, &colors);
        assert_eq!(class_count(&again), class_count(&colors));
        // regular connected graphs stay monochrome
        let c = cycle_graph(7);
        assert_eq!(class_count(&equitable_refinement(&c, &vec![0; 7])), 1);
    }

    #[test]
    fn isomorphism_found_and_refuted() {
        // cycle relabelings are isomorphic
        let c6 = cycle_graph(6);
        let shuffled = SimpleGraph::from_edges(
            6,
            [(2, 4), (4, 0), (0, 5), (5, 3), (3, 1), (1, 2)],
        )
        .unwrap();
        let iso = are_isomorphic(&c6, &shuffled).unwrap();
        for (u, v) in c6.edges() {
            assert!(shuffled.has_edge(iso.image(u as usize), iso.image(v as usize)));
        }
        // same degree sequence, different structure
        let two_triangles = SimpleGraph::from_edges(
            6,
            [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert!(are_isomorphic(&c6, &two_triangles).is_none());
        // size mismatches short-circuit
        assert!(are_isomorphic(&c6, &cycle_graph(5)).is_none());
        assert!(are_isomorphic(&c6, &path_graph(6)).is_none());
    }

    #[test]
    fn arc_counts_follow_the_valency_formula() {
        // regular graph: n * d * (d-1)^(s-1)
        let p = petersen_graph();
        assert_eq!(count_s_arcs(&p, 0), 10);
        assert_eq!(count_s_arcs(&p, 1), 30);
        assert_eq!(count_s_arcs(&p, 2), 60);
        assert_eq!(count_s_arcs(&p, 3), 120);
        for s in 1..6 {
            assert_eq!(count_s_arcs(&p, s), 10 * 3 * 2u64.pow(s as u32 - 1));
            assert_eq!(count_s_arcs(&cycle_graph(6), s), 12);
        }
        // irregular: verify against direct enumeration on a path
        let path = path_graph(4);
        assert_eq!(count_s_arcs(&path, 1), 6);
        assert_eq!(count_s_arcs(&path, 2), 4);
        assert_eq!(count_s_arcs(&path, 3), 2);
        assert_eq!(count_s_arcs(&path, 4), 0);
        assert_eq!(count_s_arcs(&star_graph(4), 2), 6);
    }

    #[test]
    fn petersen_is_three_arc_transitive_and_not_four() {
        let p = petersen_graph();
        let aut = automorphism_group(&p).unwrap();
        for s in 0..=3 {
            assert!(is_s_arc_transitive(&p, &aut, s).unwrap(), "s = {s}");
        }
        assert!(!is_s_arc_transitive(&p, &aut, 4).unwrap());
        assert_eq!(max_arc_transitivity(&p, &aut, 8).unwrap(), Some(3));
    }

    #[test]
    fn transitivity_depends_on_the_acting_group() {
        let c6 = cycle_graph(6);
        let aut = automorphism_group(&c6).unwrap();
        // the full dihedral group is transitive on s-arcs of every length
        for s in 0..8 {
            assert!(is_s_arc_transitive(&c6, &aut, s).unwrap());
        }
        assert_eq!(max_arc_transitivity(&c6, &aut, 8).unwrap(), Some(8));
        // the rotation subgroup moves vertices but never flips an arc
        let rot = PermGroup::new(
            6,
            vec![Perm::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap()],
        )
        .unwrap();
        assert!(is_s_arc_transitive(&c6, &rot, 0).unwrap());
        assert!(!is_s_arc_transitive(&c6, &rot, 1).unwrap());
        assert_eq!(max_arc_transitivity(&c6, &rot, 8).unwrap(), Some(0));
        // paths are not even vertex transitive
        let p4 = path_graph(4);
        let paut = automorphism_group(&p4).unwrap();
        assert_eq!(max_arc_transitivity(&p4, &paut, 8).unwrap(), None);
        // groups that are not automorphisms are refused
        let bogus = PermGroup::new(6, vec![Perm::from_cycles(6, &[vec![0, 1]]).unwrap()]).unwrap();
        assert!(matches!(
            is_s_arc_transitive(&c6, &bogus, 1),
            Err(SymmetryError::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn vertex_cap_is_enforced() {
        let g = SimpleGraph::new(AUT_VERTEX_CAP + 1);
        assert!(matches!(
            automorphism_group(&g),
            Err(SymmetryError::TooManyVertices { .. })
        ));
    }
}
