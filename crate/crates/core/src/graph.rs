//! Finite simple connected graphs with stable, totally ordered vertex names.
//!
//! Vertices are stored in name order, so a vertex index is also its rank
//! under [`natural_cmp`]. Every traversal in this crate iterates indices in
//! increasing order, which makes all constructions deterministic.

use alloc::collections::VecDeque;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A subset of a graph's vertices, by index.
pub type VertexSet = BitSet;

/// Total order on identifiers that compares embedded digit runs numerically,
/// so `v2 < v10`. Ties fall back to plain byte order.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (ab, bb) = (a.as_bytes(), b.as_bytes());
    let (mut i, mut j) = (0, 0);
    while i < ab.len() && j < bb.len() {
        if ab[i].is_ascii_digit() && bb[j].is_ascii_digit() {
            let si = i;
            while i < ab.len() && ab[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < bb.len() && bb[j].is_ascii_digit() {
                j += 1;
            }
            let da = strip_zeros(&ab[si..i]);
            let db = strip_zeros(&bb[sj..j]);
            let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            let ord = ab[i].cmp(&bb[j]);
            if ord != Ordering::Equal {
                return ord;
            }
            i += 1;
            j += 1;
        }
    }
    (ab.len() - i).cmp(&(bb.len() - j)).then_with(|| ab.cmp(bb))
}

fn strip_zeros(digits: &[u8]) -> &[u8] {
    let k = digits.iter().take_while(|&&d| d == b'0').count();
    &digits[k.min(digits.len().saturating_sub(1))..]
}

fn valid_identifier(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(|c| c.is_whitespace() || c.is_control())
}

/// Renames repeated entries by appending primes, keeping the first
/// occurrence of each name untouched.
pub(crate) fn disambiguate(names: &mut [String]) {
    let mut taken: alloc::collections::BTreeSet<String> = alloc::collections::BTreeSet::new();
    let all: alloc::collections::BTreeSet<String> = names.iter().cloned().collect();
    for name in names.iter_mut() {
        if taken.insert(name.clone()) {
            continue;
        }
        let mut fresh = name.clone();
        while all.contains(&fresh) || taken.contains(&fresh) {
            fresh.push('′');
        }
        taken.insert(fresh.clone());
        *name = fresh;
    }
}

/// A finite, simple, connected, undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field(
                "edges",
                &self
                    .edges
                    .iter()
                    .map(|&(u, v)| (&self.names[u], &self.names[v]))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Graph {
    /// Builds and validates a graph from named vertices and edges.
    ///
    /// Repeated edges are merged; the result must be connected.
    pub fn new<V, S, E, A, B>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| natural_cmp(&names[a], &names[b]));
        let sorted: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0].clone()));
            }
        }
        if let Some(bad) = sorted.iter().find(|s| !valid_identifier(s)) {
            return Err(Error::InvalidIdentifier(bad.clone()));
        }
        let lookup = |s: &str| -> Result<usize> {
            sorted
                .binary_search_by(|probe| natural_cmp(probe, s))
                .map_err(|_| Error::UnknownEndpoint(s.to_string()))
        };
        let mut index_edges = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = lookup(a)?;
            let v = lookup(b)?;
            if u == v {
                return Err(Error::SelfLoop(a.to_string()));
            }
            index_edges.push((u, v));
        }
        Graph::from_sorted_parts(sorted, index_edges)
    }

    /// Builds a graph from names in arbitrary order and edges between their
    /// positions. Returns the graph and, for each input position, the index
    /// of that vertex in the built graph.
    pub fn from_indexed(names: Vec<String>, edges: &[(usize, usize)]) -> Result<(Graph, Vec<usize>)> {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| natural_cmp(&names[a], &names[b]));
        let mut position = vec![0; names.len()];
        for (rank, &i) in order.iter().enumerate() {
            position[i] = rank;
        }
        let sorted: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0].clone()));
            }
        }
        if let Some(bad) = sorted.iter().find(|s| !valid_identifier(s)) {
            return Err(Error::InvalidIdentifier(bad.clone()));
        }
        let mut mapped = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(names[u].clone()));
            }
            mapped.push((position[u], position[v]));
        }
        let g = Graph::from_sorted_parts(sorted, mapped)?;
        Ok((g, position))
    }

    fn from_sorted_parts(names: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Graph> {
        if names.is_empty() {
            return Err(Error::Empty);
        }
        let mut edges: Vec<(usize, usize)> =
            edges.into_iter().map(|(u, v)| if u < v { (u, v) } else { (v, u) }).collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); names.len()];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        let g = Graph { names, adj, edges };
        if g.bfs(0).contains(&u32::MAX) {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|p| natural_cmp(p, name)).ok()
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// The designated basepoint: the least vertex identifier.
    pub fn basepoint(&self) -> usize {
        0
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.vertex_count())
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, items: I) -> VertexSet {
        VertexSet::from_indices(self.vertex_count(), items)
    }

    /// Breadth-first distances from `src`; `u32::MAX` marks unreachable.
    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.names.len()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.bfs(u)[v] as usize
    }

    pub fn distances(&self) -> DistanceMatrix {
        DistanceMatrix::new(self)
    }

    /// Vertices lying on some geodesic from `u` to `v`.
    pub fn interval(&self, u: usize, v: usize) -> VertexSet {
        let du = self.bfs(u);
        let dv = self.bfs(v);
        let total = du[v];
        self.set_of((0..self.vertex_count()).filter(|&w| du[w] + dv[w] == total))
    }

    /// Every 4-cycle, once each, as `[a, b, c, d]` with `a` the least vertex
    /// and `b < d`.
    pub fn four_cycles(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            let na = &self.adj[a];
            for (i, &b) in na.iter().enumerate() {
                if b < a {
                    continue;
                }
                for &d in &na[i + 1..] {
                    if d < a {
                        continue;
                    }
                    for &c in &self.adj[b] {
                        if c > a && c != d && self.has_edge(c, d) {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether `set` induces a connected subgraph. The empty set does not.
    pub fn is_connected_subset(&self, set: &VertexSet) -> bool {
        let Some(start) = set.iter().next() else {
            return false;
        };
        let mut seen = self.empty_set();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if set.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.count() == set.count()
    }

    /// Connected components after deleting the edges in `removed` (edge
    /// indices). Returns the component label of each vertex and the count.
    pub fn components_without(&self, removed: &BitSet) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX {
                        let e = self.edge_index(u, w).expect("adjacent");
                        if !removed.contains(e) {
                            label[w] = count;
                            stack.push(w);
                        }
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Names of a vertex set, in index order.
    pub fn set_names(&self, set: &VertexSet) -> Vec<&str> {
        set.iter().map(|v| self.name(v)).collect()
    }
}

/// Canonical form of a 4-cycle given in cyclic order: rotate the least
/// vertex to the front, then orient so the second entry is the smaller
/// neighbour.
pub fn canonical_cycle(c: [usize; 4]) -> [usize; 4] {
    let k = (0..4).min_by_key(|&i| c[i]).unwrap_or(0);
    let r = [c[k], c[(k + 1) % 4], c[(k + 2) % 4], c[(k + 3) % 4]];
    if r[1] < r[3] {
        r
    } else {
        [r[0], r[3], r[2], r[1]]
    }
}

/// All-pairs shortest path lengths.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            d.extend(g.bfs(s));
        }
        DistanceMatrix { n, d }
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.d[u * self.n + v] as usize
    }

    #[inline]
    pub fn on_geodesic(&self, u: usize, w: usize, v: usize) -> bool {
        self.get(u, w) + self.get(w, v) == self.get(u, v)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}
