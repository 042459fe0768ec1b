//! Medians, the median-graph test and its diagnostics, median and convex
//! hulls, and the submedian certificate.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, VertexSet};
use crate::hyperplane::Hyperplanes;

/// Three pairwise-squared edges at a centre with no vertex closing the cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CornerWitness {
    pub center: usize,
    pub arms: [usize; 3],
    /// Far corners of the squares on arms `(0,1)`, `(0,2)`, `(1,2)`.
    pub faces: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedianReport {
    pub is_median: bool,
    /// A triple with zero or several medians.
    pub witness: Option<[usize; 3]>,
    /// `[u0, u1, w0, w1, w2]` with each `u` adjacent to each `w`.
    pub k23_found: Option<[usize; 5]>,
    pub cube_condition_violation: Option<CornerWitness>,
}

fn medians_of(d: &DistanceMatrix, x: usize, y: usize, z: usize) -> impl Iterator<Item = usize> + '_ {
    (0..d.vertex_count()).filter(move |&w| d.on_geodesic(x, w, y) && d.on_geodesic(y, w, z) && d.on_geodesic(x, w, z))
}

/// The unique vertex on geodesics between each pair of `x, y, z`, if there
/// is exactly one.
pub fn median(g: &Graph, x: usize, y: usize, z: usize) -> Option<usize> {
    let d = g.distances();
    unique(medians_of(&d, x, y, z))
}

fn unique<I: Iterator<Item = usize>>(mut it: I) -> Option<usize> {
    let first = it.next()?;
    match it.next() {
        Some(_) => None,
        None => Some(first),
    }
}

/// Exhaustive median test over all vertex triples, with diagnostics on
/// failure.
pub fn is_median(g: &Graph) -> MedianReport {
    let d = g.distances();
    let witness = first_bad_triple(g, &d);
    if witness.is_none() {
        return MedianReport {
            is_median: true,
            witness: None,
            k23_found: None,
            cube_condition_violation: None,
        };
    }
    MedianReport {
        is_median: false,
        witness,
        k23_found: find_k23(g),
        cube_condition_violation: find_open_corner(g),
    }
}

fn first_bad_triple(g: &Graph, d: &DistanceMatrix) -> Option<[usize; 3]> {
    let n = g.vertex_count();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if unique(medians_of(d, x, y, z)).is_none() {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

fn common_neighbors<'a>(g: &'a Graph, a: usize, b: usize) -> impl Iterator<Item = usize> + 'a {
    g.neighbors(a).iter().copied().filter(move |&w| g.has_edge(w, b))
}

/// Two vertices with three common neighbours, if any.
pub fn find_k23(g: &Graph) -> Option<[usize; 5]> {
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            let common: Vec<usize> = common_neighbors(g, u, v).take(3).collect();
            if let [a, b, c] = common[..] {
                return Some([u, v, a, b, c]);
            }
        }
    }
    None
}

/// A corner (centre with three neighbours whose edges pairwise span
/// squares) that no vertex completes to a 3-cube.
pub fn find_open_corner(g: &Graph) -> Option<CornerWitness> {
    for o in 0..g.vertex_count() {
        let nb = g.neighbors(o);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                for k in j + 1..nb.len() {
                    let (a, b, c) = (nb[i], nb[j], nb[k]);
                    let face = |p: usize, q: usize| common_neighbors(g, p, q).find(|&w| w != o);
                    let (Some(ab), Some(ac), Some(bc)) = (face(a, b), face(a, c), face(b, c)) else {
                        continue;
                    };
                    if ab == ac || ab == bc || ac == bc {
                        continue;
                    }
                    let closed = g
                        .neighbors(ab)
                        .iter()
                        .any(|&p| p != o && p != a && p != b && g.has_edge(p, ac) && g.has_edge(p, bc));
                    if !closed {
                        return Some(CornerWitness {
                            center: o,
                            arms: [a, b, c],
                            faces: [ab, ac, bc],
                        });
                    }
                }
            }
        }
    }
    None
}

/// A graph verified to be median, with its hyperplanes, metric and the
/// hyperplane coordinates of each vertex.
#[derive(Clone, Debug)]
pub struct MedianGraph {
    graph: Graph,
    hyperplanes: Hyperplanes,
    dist: DistanceMatrix,
    codes: Vec<BitSet>,
    by_code: BTreeMap<BitSet, usize>,
}

impl MedianGraph {
    /// Runs the exhaustive triple check; fails with `NotMedian`.
    pub fn new(graph: Graph) -> Result<Self> {
        let dist = graph.distances();
        if first_bad_triple(&graph, &dist).is_some() {
            return Err(Error::NotMedian);
        }
        let hyperplanes = Hyperplanes::new(&graph);
        let codes = hyperplanes.codes(&graph).map_err(|_| Error::NotMedian)?;
        let by_code = codes.iter().cloned().enumerate().map(|(v, c)| (c, v)).collect();
        Ok(MedianGraph {
            graph,
            hyperplanes,
            dist,
            codes,
            by_code,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn hyperplanes(&self) -> &Hyperplanes {
        &self.hyperplanes
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.dist.get(u, v)
    }

    /// Hyperplanes separating `v` from the basepoint.
    pub fn code(&self, v: usize) -> &BitSet {
        &self.codes[v]
    }

    pub fn vertex_with_code(&self, code: &BitSet) -> Option<usize> {
        self.by_code.get(code).copied()
    }

    /// Median by coordinatewise majority of hyperplane codes.
    pub fn median(&self, x: usize, y: usize, z: usize) -> usize {
        let (a, b, c) = (&self.codes[x], &self.codes[y], &self.codes[z]);
        let mut ab = a.clone();
        ab.intersect_with(b);
        let mut ac = a.clone();
        ac.intersect_with(c);
        let mut bc = b.clone();
        bc.intersect_with(c);
        ab.union_with(&ac);
        ab.union_with(&bc);
        self.by_code[&ab]
    }

    /// Neighbour of `v` across hyperplane `j`, if `v` is on its carrier.
    pub fn across(&self, v: usize, j: usize) -> Option<usize> {
        let mut code = self.codes[v].clone();
        code.toggle(j);
        self.vertex_with_code(&code)
    }

    /// Smallest superset of `s` closed under medians.
    pub fn median_hull(&self, s: &VertexSet) -> Result<VertexSet> {
        let mut cur = s.clone();
        for _ in 0..=self.graph.vertex_count() {
            let members = cur.to_vec();
            let mut next = cur.clone();
            for (i, &x) in members.iter().enumerate() {
                for (j, &y) in members.iter().enumerate().skip(i + 1) {
                    for &z in &members[j + 1..] {
                        next.insert(self.median(x, y, z));
                    }
                }
            }
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::Internal("median hull did not stabilize"))
    }

    /// Smallest superset of `s` containing every interval between members.
    pub fn convex_hull(&self, s: &VertexSet) -> Result<VertexSet> {
        let n = self.graph.vertex_count();
        let mut cur = s.clone();
        for _ in 0..=n {
            let members = cur.to_vec();
            let mut next = cur.clone();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    for w in 0..n {
                        if self.dist.on_geodesic(u, w, v) {
                            next.insert(w);
                        }
                    }
                }
            }
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::Internal("convex hull did not stabilize"))
    }

    pub fn is_convex(&self, s: &VertexSet) -> Result<bool> {
        if !self.graph.is_connected_subset(s) {
            return Err(Error::DisconnectedSubset);
        }
        Ok(&self.convex_hull(s)? == s)
    }
}

pub fn median_hull(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    MedianGraph::new(g.clone())?.median_hull(s)
}

pub fn convex_hull(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    MedianGraph::new(g.clone())?.convex_hull(s)
}

pub fn is_convex(g: &Graph, s: &VertexSet) -> Result<bool> {
    MedianGraph::new(g.clone())?.is_convex(s)
}

/// Necessary conditions for a graph to be submedian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmedianCertificate {
    /// Every cycle crosses every parallelism class an even number of times,
    /// so crossing parities from the basepoint are path independent.
    pub parity_consistent: bool,
    /// Crossing-parity vectors are well defined and pairwise distinct.
    pub parity_injective: bool,
    /// The binary cycle space is spanned by 4-cycles.
    pub squares_span_cycles: bool,
    /// Two distinct vertices with the same parity vector, when injectivity
    /// fails for that reason.
    pub collision: Option<(usize, usize)>,
}

impl SubmedianCertificate {
    pub fn is_consistent(&self) -> bool {
        self.parity_injective && self.squares_span_cycles
    }
}

pub fn submedian_certificate(g: &Graph) -> SubmedianCertificate {
    let hs = Hyperplanes::new(g);
    let k = hs.len();
    let n = g.vertex_count();
    let mut parity: Vec<Option<BitSet>> = vec![None; n];
    parity[0] = Some(BitSet::new(k));
    let mut queue = alloc::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if parity[w].is_none() {
                let mut p = parity[u].clone().expect("visited");
                p.toggle(hs.class_of(g, u, w).expect("edge"));
                parity[w] = Some(p);
                queue.push_back(w);
            }
        }
    }
    let parity: Vec<BitSet> = parity.into_iter().map(|p| p.expect("connected")).collect();
    let parity_consistent = g.edges().iter().enumerate().all(|(e, &(u, v))| {
        let mut p = parity[u].clone();
        p.toggle(hs.class_of_edge(e));
        p == parity[v]
    });
    let mut seen: BTreeMap<&BitSet, usize> = BTreeMap::new();
    let mut collision = None;
    for (v, p) in parity.iter().enumerate() {
        if let Some(&u) = seen.get(p) {
            collision = Some((u, v));
            break;
        }
        seen.insert(p, v);
    }
    let parity_injective = parity_consistent && collision.is_none();

    // Rank of the square vectors over GF(2) against the cycle-space dimension.
    let m = g.edge_count();
    let mut basis: Vec<BitSet> = Vec::new();
    for [a, b, c, d] in g.four_cycles() {
        let mut v = BitSet::new(m);
        for (x, y) in [(a, b), (b, c), (c, d), (d, a)] {
            v.toggle(g.edge_index(x, y).expect("edge"));
        }
        for row in &basis {
            let pivot = row.first().expect("nonzero row");
            if v.contains(pivot) {
                v.xor_with(row);
            }
        }
        if let Some(p) = v.first() {
            for row in basis.iter_mut() {
                if row.contains(p) {
                    row.xor_with(&v);
                }
            }
            basis.push(v);
        }
    }
    let cycle_rank = m + 1 - n;
    SubmedianCertificate {
        parity_consistent,
        parity_injective,
        squares_span_cycles: basis.len() == cycle_rank,
        collision,
    }
}
