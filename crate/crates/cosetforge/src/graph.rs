//! Undirected simple graphs with sparse6 and edge-list input/output.
//!
//! The sparse6 codec is byte-exact against the reference encoder: edges are
//! sorted by (larger endpoint, smaller endpoint), written as (b, x) items of
//! 1 + k bits, and padded with 1-bits to a 6-bit boundary. When n is a power
//! of two, k < 6, at least k padding bits are needed, and the final current
//! vertex is below n - 1, a single 0-bit precedes the padding; all-ones
//! padding would otherwise decode as a loop on vertex n - 1.
//!
//! Decoding is strict: inputs that encode loops or repeated edges are
//! rejected rather than silently simplified.

use std::fmt;
use thiserror::Error;

/// Decoder cap on the declared vertex count. The format itself allows up to
/// 2^36 vertices; accepting that would let a six-byte header demand a huge
/// allocation.
pub const MAX_DECODE_VERTICES: u64 = 1 << 22;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {v} not allowed in a simple graph")]
    Loop { v: usize },
    #[error("repeated edge {u}-{v}")]
    RepeatedEdge { u: usize, v: usize },
    #[error("sparse6 data must start with ':'")]
    MissingColon,
    #[error("byte 0x{byte:02x} outside the sparse6 printable range 63..=126")]
    ByteOutOfRange { byte: u8 },
    #[error("input ended inside the vertex-count header")]
    TruncatedHeader,
    #[error("declared vertex count {n} exceeds the decoder cap {max}")]
    TooManyVertices { n: u64, max: u64 },
    #[error("edge list line {line}: {reason}")]
    EdgeLine { line: usize, reason: String },
    #[error("empty input")]
    EmptyInput,
}

/// Undirected simple graph on vertices 0..n with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge iterator, rejecting loops and repeats.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(GraphError::RepeatedEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Adds an edge; Ok(false) means it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::Loop { v });
        }
        match self.adj[u].binary_search(&(v as u32)) {
            Ok(_) => Ok(false),
            Err(iu) => {
                self.adj[u].insert(iu, v as u32);
                let iv = self.adj[v].binary_search(&(u as u32)).unwrap_err();
                self.adj[v].insert(iv, u as u32);
                self.m += 1;
                Ok(true)
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Sorted neighbor list of v.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as (min, max) pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &w in &self.adj[u] {
                if (u as u32) < w {
                    out.push((u as u32, w));
                }
            }
        }
        out
    }

    /// Common degree if the graph is regular.
    pub fn regular_valency(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.adj[0].len();
        self.adj.iter().all(|row| row.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w as usize);
                }
            }
        }
        count == self.n
    }

    /// Serializes to sparse6 (no trailing newline, no optional header).
    pub fn to_sparse6(&self) -> String {
        let n = self.n;
        let mut out = String::from(":");
        for d in n_to_data(n as u64) {
            out.push((d + 63) as char);
        }
        let k = bits_per_vertex(n as u64);
        let mut bits: Vec<bool> = Vec::new();
        let push_val = |bits: &mut Vec<bool>, x: usize| {
            for i in (0..k).rev() {
                bits.push(x >> i & 1 == 1);
            }
        };
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(self.m);
        for u in 0..n {
            for &w in &self.adj[u] {
                if (w as usize) < u {
                    edges.push((u, w as usize));
                }
            }
        }
        edges.sort_unstable();
        let mut curv = 0usize;
        for (v, u) in edges {
            if v == curv {
                bits.push(false);
                push_val(&mut bits, u);
            } else if v == curv + 1 {
                curv += 1;
                bits.push(true);
                push_val(&mut bits, u);
            } else {
                curv = v;
                bits.push(true);
                push_val(&mut bits, v);
                bits.push(false);
                push_val(&mut bits, u);
            }
        }
        let pad = (6 - bits.len() % 6) % 6;
        if k < 6 && n == 1 << k && pad >= k && curv < n - 1 {
            bits.push(false);
        }
        while bits.len() % 6 != 0 {
            bits.push(true);
        }
        for chunk in bits.chunks(6) {
            let byte = chunk.iter().fold(0u8, |acc, &b| acc << 1 | b as u8);
            out.push((byte + 63) as char);
        }
        out
    }

    /// Parses sparse6; tolerates an optional ">>sparse6<<" header and
    /// trailing newline.
    pub fn from_sparse6(input: &str) -> Result<Self, GraphError> {
        let s = input.trim_end_matches(['\n', '\r']);
        let s = s.strip_prefix(">>sparse6<<").unwrap_or(s);
        let body = s.strip_prefix(':').ok_or(GraphError::MissingColon)?;
        let mut data = Vec::with_capacity(body.len());
        for byte in body.bytes() {
            if !(63..=126).contains(&byte) {
                return Err(GraphError::ByteOutOfRange { byte });
            }
            data.push(byte - 63);
        }
        let (n, items) = data_to_n(&data)?;
        if n > MAX_DECODE_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                max: MAX_DECODE_VERTICES,
            });
        }
        let n_us = n as usize;
        let k = bits_per_vertex(n);
        let total_bits = items.len() * 6;
        let bit_at = |pos: usize| items[pos / 6] >> (5 - pos % 6) & 1;
        let mut g = SimpleGraph::new(n_us);
        let mut pos = 0usize;
        let mut v: u64 = 0;
        while pos + 1 + k <= total_bits {
            let b = bit_at(pos);
            pos += 1;
            let mut x: u64 = 0;
            for _ in 0..k {
                x = x << 1 | bit_at(pos) as u64;
                pos += 1;
            }
            if b == 1 {
                v += 1;
            }
            if x >= n || v >= n {
                break;
            }
            if x > v {
                v = x;
            } else if x == v {
                return Err(GraphError::Loop { v: v as usize });
            } else if !g.add_edge(x as usize, v as usize)? {
                return Err(GraphError::RepeatedEdge {
                    u: x as usize,
                    v: v as usize,
                });
            }
        }
        Ok(g)
    }

    /// Serializes to the edge-list format: a "vertices n" header line, then
    /// one "u v" line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("vertices {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list format. Lines starting with '#' and blank lines
    /// are skipped. A leading "vertices n" line fixes the vertex count;
    /// without it the count is inferred as the largest endpoint plus one.
    pub fn from_edge_list(input: &str) -> Result<Self, GraphError> {
        let mut declared: Option<usize> = None;
        let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
        let mut saw_data = false;
        for (idx, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let mut parts = line.split_whitespace();
            let first = parts.next().unwrap();
            if !saw_data && first == "vertices" {
                let count = parts
                    .next()
                    .ok_or_else(|| GraphError::EdgeLine {
                        line: lineno,
                        reason: "missing vertex count".into(),
                    })?
                    .parse::<usize>()
                    .map_err(|e| GraphError::EdgeLine {
                        line: lineno,
                        reason: format!("bad vertex count: {e}"),
                    })?;
                if parts.next().is_some() {
                    return Err(GraphError::EdgeLine {
                        line: lineno,
                        reason: "trailing tokens after vertex count".into(),
                    });
                }
                declared = Some(count);
                saw_data = true;
                continue;
            }
            saw_data = true;
            let second = parts.next().ok_or_else(|| GraphError::EdgeLine {
                line: lineno,
                reason: "expected two endpoints".into(),
            })?;
            if parts.next().is_some() {
                return Err(GraphError::EdgeLine {
                    line: lineno,
                    reason: "more than two endpoints".into(),
                });
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|e| GraphError::EdgeLine {
                    line: lineno,
                    reason: format!("bad endpoint {tok:?}: {e}"),
                })
            };
            pairs.push((parse(first)?, parse(second)?, lineno));
        }
        if !saw_data {
            return Err(GraphError::EmptyInput);
        }
        let n = match declared {
            Some(c) => c,
            None => pairs
                .iter()
                .map(|&(u, v, _)| u.max(v) + 1)
                .max()
                .unwrap_or(0),
        };
        let mut g = SimpleGraph::new(n);
        for (u, v, lineno) in pairs {
            match g.add_edge(u, v) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(GraphError::EdgeLine {
                        line: lineno,
                        reason: format!("repeated edge {u}-{v}"),
                    })
                }
                Err(e) => {
                    return Err(GraphError::EdgeLine {
                        line: lineno,
                        reason: e.to_string(),
                    })
                }
            }
        }
        Ok(g)
    }

    /// Parses either supported format, detected by the sparse6 markers.
    pub fn parse_auto(input: &str) -> Result<Self, GraphError> {
        let t = input.trim_start();
        if t.starts_with(':') || t.starts_with(">>sparse6<<") {
            SimpleGraph::from_sparse6(t)
        } else {
            SimpleGraph::from_edge_list(input)
        }
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

/// Smallest k >= 1 with 2^k >= n; item width for x fields.
fn bits_per_vertex(n: u64) -> usize {
    let mut k = 1;
    while 1u64 << k < n {
        k += 1;
    }
    k
}

/// Header units (pre-offset values) for a vertex count.
fn n_to_data(n: u64) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8]
    } else if n <= 258_047 {
        vec![63, (n >> 12 & 63) as u8, (n >> 6 & 63) as u8, (n & 63) as u8]
    } else {
        vec![
            63,
            63,
            (n >> 30 & 63) as u8,
            (n >> 24 & 63) as u8,
            (n >> 18 & 63) as u8,
            (n >> 12 & 63) as u8,
            (n >> 6 & 63) as u8,
            (n & 63) as u8,
        ]
    }
}

fn data_to_n(data: &[u8]) -> Result<(u64, &[u8]), GraphError> {
    match data {
        [] => Err(GraphError::TruncatedHeader),
        [first, rest @ ..] if *first <= 62 => Ok((*first as u64, rest)),
        [_, second, rest @ ..] if *second <= 62 => {
            if rest.len() < 2 {
                return Err(GraphError::TruncatedHeader);
            }
            let n = (*second as u64) << 12 | (rest[0] as u64) << 6 | rest[1] as u64;
            Ok((n, &rest[2..]))
        }
        [_, _, rest @ ..] => {
            if rest.len() < 6 {
                return Err(GraphError::TruncatedHeader);
            }
            let n = rest[..6].iter().fold(0u64, |acc, &d| acc << 6 | d as u64);
            Ok((n, &rest[6..]))
        }
        _ => Err(GraphError::TruncatedHeader),
    }
}

/// Path on n vertices: i adjacent to i+1.
pub fn path_graph(n: usize) -> SimpleGraph {
    SimpleGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Cycle on n vertices (n >= 3).
pub fn cycle_graph(n: usize) -> SimpleGraph {
    assert!(n >= 3);
    SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Complete graph on n vertices.
pub fn complete_graph(n: usize) -> SimpleGraph {
    SimpleGraph::from_edges(n, (0..n).flat_map(|v| (0..v).map(move |u| (u, v)))).unwrap()
}

/// Star with center 0 and n - 1 leaves.
pub fn star_graph(n: usize) -> SimpleGraph {
    assert!(n >= 1);
    SimpleGraph::from_edges(n, (1..n).map(|v| (0, v))).unwrap()
}

/// Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes.
pub fn petersen_graph() -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    SimpleGraph::from_edges(10, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn from_pairs(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
        SimpleGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    /// Each entry was produced by an independent reference implementation
    /// of the format; strings are checked byte for byte in both directions.
    fn frozen_battery() -> Vec<(&'static str, SimpleGraph, &'static str)> {
        vec![
            ("empty0", SimpleGraph::new(0), r":?"),
            ("empty1", SimpleGraph::new(1), r":@"),
            ("empty2", SimpleGraph::new(2), r":A"),
            ("edge2", from_pairs(2, &[(0, 1)]), r":An"),
            (
                "seven",
                from_pairs(7, &[(0, 1), (0, 2), (1, 2), (5, 6)]),
                r":Fa@x^",
            ),
            ("pad_k4_edge", from_pairs(4, &[(0, 1)]), r":Cb"),
            (
                "pad_k4_tri",
                from_pairs(4, &[(0, 1), (0, 2), (1, 2)]),
                r":CcJ",
            ),
            ("k4", complete_graph(4), r":CcKI"),
            ("p4", path_graph(4), r":Cdv"),
            ("jump_k4", from_pairs(4, &[(0, 2)]), r":Co"),
            ("pad8_edge", from_pairs(8, &[(0, 1)]), r":Gb"),
            ("pad8_tail", from_pairs(8, &[(0, 1), (5, 6)]), r":Gbd"),
            (
                "pad16",
                from_pairs(16, &[(0, 1), (2, 3), (13, 14)]),
                r":O`KVen",
            ),
            ("petersen", petersen_graph(), r":I`ES@obGkqegW~"),
            ("c5", cycle_graph(5), r":DaY_~"),
            ("c6", cycle_graph(6), r":EaYmC"),
            ("c7", cycle_graph(7), r":FaYnGV"),
            ("star7", star_graph(7), r":FaGaG"),
            (
                "two_triangles",
                from_pairs(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]),
                r":Ea@ozR",
            ),
            (
                "tail_isolated",
                from_pairs(9, &[(0, 1), (1, 2), (2, 3)]),
                r":H`EV",
            ),
            ("head_isolated", from_pairs(7, &[(5, 6)]), r":Fx^"),
            ("p30", path_graph(30), r":]_`abcdefghijklmnopqrstuvwxyz{"),
            (
                "p62",
                path_graph(62),
                r":}_OWSMHDbPxCeTJeRXs}`PhSydUlVkUZTmx\nV{EFDbqX[u^PhtY|ev\nw[]VNhtz\~Fftz}^",
            ),
            (
                "p63",
                path_graph(63),
                r":~??~_OWSMHDbPxCeTJeRXs}`PhSydUlVkUZTmx\nV{EFDbqX[u^PhtY|ev\nw[]VNhtz\~Fftz}^^",
            ),
            (
                "c64",
                cycle_graph(64),
                r":~?@?_OWSMHDbPxCeTJeRXs}`PhSydUlVkUZTmx\nV{EFDbqX[u^PhtY|ev\nw[]VNhtz\~Fftz}^WBz",
            ),
            (
                "p65",
                path_graph(65),
                r":~?@@_GEA_wQD`g]GaWiJbGuMbxAPchMSdXYVeHeYexq\fh}_gYIbhIUehyahiimkjYynkJEqkzQtlj]wmZiznJu}n~",
            ),
            ("k10", complete_graph(10), r":I`?K?a_COw@CKc?aEOk?aEOhg@CK`RF_COqDK\F"),
            (
                "star62",
                star_graph(62),
                r":}_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_^",
            ),
            (
                "star63",
                star_graph(63),
                r":~??~_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_OGCA@?_ON",
            ),
            (
                "p100",
                path_graph(100),
                r":~?@c_GEA_wQD`g]GaWiJbGuMbxAPchMSdXYVeHeYexq\fh}_gYIbhIUehyahiimkjYynkJEqkzQtlj]wmZiznJu}n{B@okNCp[ZFqKfIq{rLrk~Os\JRtLVUt|bXuln[v\z^wMFa",
            ),
            (
                "c129",
                cycle_graph(129),
                r":~?A@_C@_SB_cD_sF`CH`SJ`cL`sNaCPaSRacTasVbCXbSZbc\bs^cC`cSbccdcsfdChdSjdcldsneCpeSrectesvfCxfSzfc|fs~gD@gTBgdDgtFhDHhTJhdLhtNiDPiTRidTitVjDXjTZjd\jt^kD`kTbkddktflDhlTjldlltnmDpmTrmdtmtvnDxnTznd|ns?N~",
            ),
        ]
    }

    #[test]
    fn encoder_matches_reference_battery() {
        for (name, g, expect) in frozen_battery() {
            assert_eq!(g.to_sparse6(), expect, "encode {name}");
        }
    }

    #[test]
    fn decoder_matches_reference_battery() {
        for (name, g, text) in frozen_battery() {
            let back = SimpleGraph::from_sparse6(text).unwrap();
            assert_eq!(back, g, "decode {name}");
        }
    }

    #[test]
    fn decoder_tolerates_header_and_newline() {
        let g = SimpleGraph::from_sparse6(">>sparse6<<:Fa@x^\n").unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(
            g.edges(),
            vec![(0, 1), (0, 2), (1, 2), (5, 6)]
        );
    }

    #[test]
    fn decoder_rejects_malformed_input() {
        assert!(matches!(
            SimpleGraph::from_sparse6("Fa@x^"),
            Err(GraphError::MissingColon)
        ));
        assert!(matches!(
            SimpleGraph::from_sparse6(":Fa @x^"),
            Err(GraphError::ByteOutOfRange { byte: b' ' })
        ));
        assert!(matches!(
            SimpleGraph::from_sparse6(":"),
            Err(GraphError::TruncatedHeader)
        ));
        assert!(matches!(
            SimpleGraph::from_sparse6(":~?"),
            Err(GraphError::TruncatedHeader)
        ));
        assert!(matches!(
            SimpleGraph::from_sparse6(":~~???"),
            Err(GraphError::TruncatedHeader)
        ));
        // declared 2^36 - 1 vertices
        assert!(matches!(
            SimpleGraph::from_sparse6(":~~~~~~~~"),
            Err(GraphError::TooManyVertices { .. })
        ));
    }

    #[test]
    fn decoder_rejects_loops_and_repeats() {
        // triangle in a 4-vertex graph without the special pad bit; the
        // all-ones tail reads as an item putting a loop on vertex 3
        assert!(matches!(
            SimpleGraph::from_sparse6(":CcN"),
            Err(GraphError::Loop { v: 3 })
        ));
        // the same edge three times
        assert!(matches!(
            SimpleGraph::from_sparse6(":A_"),
            Err(GraphError::RepeatedEdge { u: 0, v: 1 })
        ));
    }

    #[test]
    fn roundtrip_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_6a01);
        for trial in 0..300 {
            let n = rng.gen_range(0..=70);
            let density = rng.gen_range(0.0..0.4);
            let mut g = SimpleGraph::new(n);
            for v in 1..n {
                for u in 0..v {
                    if rng.gen_bool(density) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let text = g.to_sparse6();
            let back = SimpleGraph::from_sparse6(&text).unwrap();
            assert_eq!(back, g, "trial {trial} n {n}");
        }
    }

    #[test]
    fn edge_list_roundtrip_and_parsing() {
        let g = from_pairs(7, &[(0, 1), (0, 2), (1, 2), (5, 6)]);
        let text = g.to_edge_list();
        assert!(text.starts_with("vertices 7\n"));
        assert_eq!(SimpleGraph::from_edge_list(&text).unwrap(), g);

        let inferred = SimpleGraph::from_edge_list("# comment\n0 1\n\n2 1\n").unwrap();
        assert_eq!(inferred.vertex_count(), 3);
        assert_eq!(inferred.edges(), vec![(0, 1), (1, 2)]);

        assert!(matches!(
            SimpleGraph::from_edge_list(""),
            Err(GraphError::EmptyInput)
        ));
        assert!(matches!(
            SimpleGraph::from_edge_list("0 1 2\n"),
            Err(GraphError::EdgeLine { line: 1, .. })
        ));
        assert!(matches!(
            SimpleGraph::from_edge_list("0 zero\n"),
            Err(GraphError::EdgeLine { line: 1, .. })
        ));
        assert!(matches!(
            SimpleGraph::from_edge_list("vertices 2\n0 5\n"),
            Err(GraphError::EdgeLine { line: 2, .. })
        ));
        assert!(matches!(
            SimpleGraph::from_edge_list("3 3\n"),
            Err(GraphError::EdgeLine { line: 1, .. })
        ));
        assert!(matches!(
            SimpleGraph::from_edge_list("0 1\n1 0\n"),
            Err(GraphError::EdgeLine { line: 2, .. })
        ));
    }

    #[test]
    fn format_autodetection() {
        let g = from_pairs(4, &[(0, 1), (1, 2)]);
        assert_eq!(SimpleGraph::parse_auto(&g.to_sparse6()).unwrap(), g);
        assert_eq!(SimpleGraph::parse_auto(&g.to_edge_list()).unwrap(), g);
        assert_eq!(
            SimpleGraph::parse_auto(">>sparse6<<:Cdv").unwrap(),
            path_graph(4)
        );
    }

    #[test]
    fn structure_queries() {
        let p = petersen_graph();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.regular_valency(), Some(3));
        assert!(p.is_connected());
        assert!(p.has_edge(0, 5));
        assert!(!p.has_edge(0, 3));

        let two = from_pairs(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
        assert!(!two.is_connected());
        assert_eq!(two.regular_valency(), Some(2));

        assert_eq!(path_graph(4).regular_valency(), None);
        assert_eq!(star_graph(5).degree(0), 4);
        assert!(SimpleGraph::new(0).is_connected());
        assert!(SimpleGraph::new(1).is_connected());
    }
}
