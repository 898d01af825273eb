//! Right-coset actions, double cosets, and the graphs built from them.
//!
//! Cosets are canonicalized by the lex-least member (`PermGroup::coset_min`),
//! so every structure here is deterministic: breadth-first discovery order
//! over the ambient generators fixes vertex numbering.
//!
//! Products read left to right throughout: `a.compose(&b)` applies a first.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::graph::{GraphError, SimpleGraph};
use crate::perm::Perm;
use crate::stabchain::{GroupError, PermGroup};
use crate::subgroup::{Subgroup, SubgroupError};

/// Default bound on the number of cosets a caller may materialize.
pub const INDEX_CAP: usize = 100_000;

#[derive(Debug, Error)]
pub enum CosetError {
    #[error("subgroup does not sit inside the ambient group")]
    NotSubgroup,
    #[error("coset index {index} exceeds the cap {cap}")]
    IndexTooLarge { index: BigUint, cap: usize },
    #[error("arc element lies outside the ambient group")]
    ArcNotInGroup,
    #[error("arc element lies inside the point subgroup; every vertex would carry a loop")]
    ArcInSubgroup,
    #[error("double coset of the arc is not inverse-closed; adjacency would be directed")]
    AsymmetricArc,
    #[error("connection set must exclude the identity")]
    IdentityInConnectionSet,
    #[error("connection set must be closed under inverses (missing inverse of {element})")]
    ConnectionSetNotInverseClosed { element: String },
    #[error("connection element lies outside the group")]
    ConnectionNotInGroup,
    #[error("group order {order} exceeds the cap {cap} for an element-indexed graph")]
    GroupTooLarge { order: BigUint, cap: usize },
    #[error("partition is not a partition of the vertex set: {reason}")]
    BadPartition { reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Action of a group on the right cosets of a subgroup.
///
/// Coset 0 is the subgroup itself; `reps[c]` is the lex-least member of
/// coset c; `gen_images[j]` is the permutation of coset indices induced by
/// the j-th ambient generator.
pub struct CosetAction {
    pub reps: Vec<Perm>,
    pub gen_images: Vec<Perm>,
    index_of: HashMap<Perm, usize>,
}

impl CosetAction {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Coset index of an arbitrary group element.
    pub fn coset_of(&self, h: &Subgroup, x: &Perm) -> Option<usize> {
        self.index_of.get(&h.group().coset_min(x)).copied()
    }

    /// The induced permutation group on coset indices.
    pub fn action_group(&self) -> Result<PermGroup, GroupError> {
        PermGroup::new(self.reps.len().max(1), self.gen_images.clone())
    }
}

/// Enumerates the right cosets of h in g by breadth-first right translation.
pub fn coset_action(g: &PermGroup, h: &Subgroup, cap: usize) -> Result<CosetAction, CosetError> {
    if !h.group().is_subgroup_of(g) {
        return Err(CosetError::NotSubgroup);
    }
    let index = g.order() / h.order();
    if index > BigUint::from(cap) {
        return Err(CosetError::IndexTooLarge { index, cap });
    }
    let expected = index.to_usize().expect("index fits after cap check");
    let start = h.group().coset_min(&Perm::identity(g.degree()));
    let mut index_of = HashMap::with_capacity(expected);
    index_of.insert(start.clone(), 0usize);
    let mut reps = vec![start];
    let mut head = 0;
    while head < reps.len() {
        let rep = reps[head].clone();
        head += 1;
        for s in g.gens() {
            let key = h.group().coset_min(&rep.compose(s));
            if !index_of.contains_key(&key) {
                index_of.insert(key.clone(), reps.len());
                reps.push(key);
            }
        }
    }
    assert_eq!(reps.len(), expected, "coset walk must reach the full index");
    let gen_images = g
        .gens()
        .iter()
        .map(|s| {
            let images = reps
                .iter()
                .map(|rep| index_of[&h.group().coset_min(&rep.compose(s))] as u32)
                .collect();
            Perm::from_images(images).expect("coset translation is a bijection")
        })
        .collect();
    Ok(CosetAction {
        reps,
        gen_images,
        index_of,
    })
}

/// The double coset H·g·H, stored as right-coset representatives of H.
pub struct DoubleCoset {
    /// Defining middle element.
    pub rep: Perm,
    /// Elements r with H·g·H equal to the disjoint union of the H·r.
    pub coset_reps: Vec<Perm>,
    subgroup_order: u64,
}

impl DoubleCoset {
    pub fn size(&self) -> u64 {
        self.subgroup_order * self.coset_reps.len() as u64
    }

    /// Number of right cosets of H inside the double coset; the valency of
    /// the coset graph built from it.
    pub fn coset_count(&self) -> usize {
        self.coset_reps.len()
    }

    /// Whether the double coset equals its own inverse set.
    pub fn is_inverse_closed(&self, h: &Subgroup) -> bool {
        let inv_key = h.group().coset_min(&self.rep.inverse());
        self.coset_reps
            .iter()
            .any(|r| h.group().coset_min(r) == inv_key)
    }
}

/// Decomposes H·g·H into right cosets of H.
///
/// The representatives are g·d over a right transversal d of H ∩ H^g in H,
/// which are pairwise in distinct right cosets by construction.
pub fn double_coset(
    ambient: &PermGroup,
    h: &Subgroup,
    g: &Perm,
) -> Result<DoubleCoset, CosetError> {
    if !ambient.contains(g) {
        return Err(CosetError::ArcNotInGroup);
    }
    if !h.group().is_subgroup_of(ambient) {
        return Err(CosetError::NotSubgroup);
    }
    let conj = h.conjugate(ambient, g)?;
    let core = h.intersect(&conj)?;
    let members = h.elements()?;
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut reps = Vec::new();
    for member in members {
        if seen.insert(core.group().coset_min(member)) {
            reps.push(g.compose(member));
        }
    }
    Ok(DoubleCoset {
        rep: g.clone(),
        coset_reps: reps,
        subgroup_order: members.len() as u64,
    })
}

/// A coset graph together with the vertex action that built it.
pub struct CosetGraph {
    pub graph: SimpleGraph,
    pub action: CosetAction,
    pub valency: usize,
}

/// Builds the graph on right cosets of h where the coset of y is joined to
/// the cosets of g·d·y over the double-coset representatives g·d.
///
/// Neighbor cosets of a fixed vertex are pairwise distinct, so the valency
/// is exactly the right-coset count of the double coset; a loop would need
/// the arc inside h, which is rejected up front.
pub fn coset_graph(
    ambient: &PermGroup,
    h: &Subgroup,
    arc: &Perm,
    cap: usize,
) -> Result<CosetGraph, CosetError> {
    if h.contains(arc) {
        return Err(CosetError::ArcInSubgroup);
    }
    let dc = double_coset(ambient, h, arc)?;
    if !dc.is_inverse_closed(h) {
        return Err(CosetError::AsymmetricArc);
    }
    let action = coset_action(ambient, h, cap)?;
    let n = action.index();
    let mut graph = SimpleGraph::new(n);
    for c in 0..n {
        for r in &dc.coset_reps {
            let key = h.group().coset_min(&r.compose(&action.reps[c]));
            let nb = action.index_of[&key];
            graph
                .add_edge(c, nb)
                .expect("distinct cosets cannot loop");
        }
    }
    let valency = dc.coset_count();
    debug_assert!((0..n).all(|v| graph.degree(v) == valency));
    Ok(CosetGraph {
        graph,
        action,
        valency,
    })
}

/// Cayley graph of a group with an inverse-closed, identity-free connection
/// set. Vertices are the group's elements in enumeration order; x is joined
/// to x·s.
pub fn cayley_graph(
    group: &PermGroup,
    connection: &[Perm],
    cap: usize,
) -> Result<SimpleGraph, CosetError> {
    let order = group.order();
    if order > BigUint::from(cap) {
        return Err(CosetError::GroupTooLarge { order, cap });
    }
    for s in connection {
        if !group.contains(s) {
            return Err(CosetError::ConnectionNotInGroup);
        }
        if s.is_identity() {
            return Err(CosetError::IdentityInConnectionSet);
        }
        if !connection.contains(&s.inverse()) {
            return Err(CosetError::ConnectionSetNotInverseClosed {
                element: s.to_cycle_string(),
            });
        }
    }
    let elements: Vec<Perm> = group.elements().collect();
    let index_of: HashMap<&Perm, usize> = elements.iter().zip(0..).collect();
    let mut graph = SimpleGraph::new(elements.len());
    for (i, x) in elements.iter().enumerate() {
        for s in connection {
            let j = index_of[&x.compose(s)];
            graph.add_edge(i, j).expect("connection set has no identity");
        }
    }
    Ok(graph)
}

/// Collapses vertex classes to single vertices; classes become adjacent when
/// any cross pair is adjacent, and within-class edges are dropped.
pub fn quotient_graph(
    graph: &SimpleGraph,
    class_of: &[usize],
) -> Result<SimpleGraph, CosetError> {
    if class_of.len() != graph.vertex_count() {
        return Err(CosetError::BadPartition {
            reason: format!(
                "{} labels for {} vertices",
                class_of.len(),
                graph.vertex_count()
            ),
        });
    }
    let classes = match class_of.iter().max() {
        None => 0,
        Some(&m) => m + 1,
    };
    let mut seen = vec![false; classes];
    for &c in class_of {
        seen[c] = true;
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(CosetError::BadPartition {
            reason: format!("class {missing} is empty"),
        });
    }
    let mut out = SimpleGraph::new(classes);
    for (u, v) in graph.edges() {
        let (cu, cv) = (class_of[u as usize], class_of[v as usize]);
        if cu != cv {
            out.add_edge(cu, cv)?;
        }
    }
    Ok(out)
}

/// Orbits of a generator set on 0..degree, each sorted, ordered by least
/// element.
pub fn vertex_orbits(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut orbits = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in gens {
                let q = g.image(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// A group is semiregular when only the identity fixes a point, i.e. every
/// orbit has full group size.
pub fn is_semiregular(group: &PermGroup) -> bool {
    let order = group.order();
    vertex_orbits(group.degree(), group.gens())
        .iter()
        .all(|o| BigUint::from(o.len()) == order)
}

/// Regular means transitive and semiregular: one orbit of full group size.
pub fn is_regular(group: &PermGroup) -> bool {
    BigUint::from(group.degree()) == group.order() && is_semiregular(group)
}
