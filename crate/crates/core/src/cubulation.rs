//! Wallspaces, consistent orientations and the cubulation median graph,
//! plus the square-completion used to factor maps through it.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{disambiguate, Graph, VertexSet};
use crate::hyperplane::Hyperplanes;
use crate::morphism::PPMap;

/// A partition of the carrier's vertices into two nonempty sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub id: usize,
    pub side_plus: VertexSet,
    pub side_minus: VertexSet,
}

#[derive(Clone, Debug)]
pub struct Wallspace {
    carrier: Graph,
    walls: Vec<Wall>,
}

/// One side per wall; bit `i` set means the plus side of wall `i`.
pub type Orientation = BitSet;

impl Wallspace {
    /// Builds a wallspace from the plus sides of its walls.
    pub fn new(carrier: Graph, plus_sides: Vec<VertexSet>) -> Result<Self> {
        let n = carrier.vertex_count();
        let mut walls = Vec::with_capacity(plus_sides.len());
        for (id, plus) in plus_sides.into_iter().enumerate() {
            let minus = plus.complement();
            if plus.capacity() != n || plus.is_empty() || minus.is_empty() {
                return Err(Error::Internal("wall side is empty"));
            }
            walls.push(Wall {
                id,
                side_plus: plus,
                side_minus: minus,
            });
        }
        Ok(Wallspace { carrier, walls })
    }

    pub fn carrier(&self) -> &Graph {
        &self.carrier
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn principal_orientation(&self, x: usize) -> Result<Orientation> {
        if x >= self.carrier.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{x}")));
        }
        Ok(BitSet::from_indices(
            self.walls.len(),
            self.walls.iter().filter(|w| w.side_plus.contains(x)).map(|w| w.id),
        ))
    }

    pub fn is_consistent(&self, o: &Orientation) -> bool {
        self.constraints().admits(o)
    }

    pub(crate) fn constraints(&self) -> PairConstraints {
        let k = self.walls.len();
        let mut c = PairConstraints::new(k);
        for i in 0..k {
            for j in i + 1..k {
                for (si, sj) in [(false, false), (false, true), (true, false), (true, true)] {
                    let a = self.side(i, si);
                    let b = self.side(j, sj);
                    if !a.intersects(b) {
                        c.forbid(i, si, j, sj);
                    }
                }
            }
        }
        c
    }

    fn side(&self, i: usize, plus: bool) -> &VertexSet {
        if plus {
            &self.walls[i].side_plus
        } else {
            &self.walls[i].side_minus
        }
    }
}

/// One wall per hyperplane, sides being its two halfspaces.
pub fn walls_from_hyperplanes(g: &Graph) -> Result<Wallspace> {
    let hs = Hyperplanes::new(g);
    hs.require_halfspaces()?;
    let sides = hs.iter().map(|h| h.plus().expect("checked").clone()).collect();
    Wallspace::new(g.clone(), sides)
}

pub fn principal_orientation(w: &Wallspace, x: usize) -> Result<Orientation> {
    w.principal_orientation(x)
}

/// Forbidden value combinations on pairs of coordinates of a bit vector.
#[derive(Clone, Debug)]
pub(crate) struct PairConstraints {
    len: usize,
    /// Per coordinate `i`, entries `(j, mask)`: bit `2 * v_i + v_j` of
    /// `mask` marks the combination `(v_i, v_j)` as forbidden.
    by_coord: Vec<Vec<(usize, u8)>>,
}

impl PairConstraints {
    pub(crate) fn new(len: usize) -> Self {
        PairConstraints {
            len,
            by_coord: vec![Vec::new(); len],
        }
    }

    pub(crate) fn forbid(&mut self, i: usize, vi: bool, j: usize, vj: bool) {
        let bit = |a: bool, b: bool| 1u8 << (2 * a as u8 + b as u8);
        Self::add(&mut self.by_coord[i], j, bit(vi, vj));
        Self::add(&mut self.by_coord[j], i, bit(vj, vi));
    }

    fn add(list: &mut Vec<(usize, u8)>, j: usize, mask: u8) {
        match list.iter_mut().find(|(k, _)| *k == j) {
            Some((_, m)) => *m |= mask,
            None => list.push((j, mask)),
        }
    }

    fn coord_ok(&self, v: &BitSet, i: usize) -> bool {
        let vi = v.contains(i) as u8;
        self.by_coord[i].iter().all(|&(j, mask)| mask >> (2 * vi + v.contains(j) as u8) & 1 == 0)
    }

    pub(crate) fn admits(&self, v: &BitSet) -> bool {
        (0..self.len).all(|i| self.coord_ok(v, i))
    }

    /// All admissible vectors reachable from `start` by single flips through
    /// admissible vectors, in discovery order.
    pub(crate) fn reachable_from(&self, start: BitSet) -> Vec<BitSet> {
        let mut seen: BTreeMap<BitSet, ()> = BTreeMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone(), ());
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.len {
                let mut w = v.clone();
                w.toggle(i);
                if !seen.contains_key(&w) && self.coord_ok(&w, i) {
                    seen.insert(w.clone(), ());
                    queue.push_back(w);
                }
            }
            out.push(v);
        }
        out
    }

    /// Every admissible vector, by exhaustive filtering. Only for small
    /// lengths.
    pub(crate) fn brute_force(&self) -> Vec<BitSet> {
        assert!(self.len <= 24, "brute force over {} coordinates", self.len);
        (0u64..1 << self.len)
            .map(|x| BitSet::from_indices(self.len, (0..self.len).filter(|&i| x >> i & 1 == 1)))
            .filter(|v| self.admits(v))
            .collect()
    }
}

/// A graph on bit vectors with single-flip edges, together with the
/// vectors themselves by vertex index.
pub(crate) struct FlipGraph {
    pub graph: Graph,
    pub vectors: Vec<BitSet>,
    pub index: BTreeMap<BitSet, usize>,
}

/// Builds the single-flip graph on `vectors`. A vector equal to some
/// `named[v]` takes the names of all such `v` (joined with `|`); other
/// vectors are named by their sign pattern.
pub(crate) fn flip_graph(vectors: Vec<BitSet>, carrier: &Graph, named: &[BitSet]) -> Result<FlipGraph> {
    let mut owners: BTreeMap<&BitSet, Vec<usize>> = BTreeMap::new();
    for (v, key) in named.iter().enumerate() {
        owners.entry(key).or_default().push(v);
    }
    let mut names: Vec<String> = vectors
        .iter()
        .map(|vec| match owners.get(vec) {
            Some(vs) => join_names(carrier, vs),
            None => sign_pattern(vec),
        })
        .collect();
    disambiguate(&mut names);
    let pos: BTreeMap<&BitSet, usize> = vectors.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        for b in 0..v.capacity() {
            let mut w = v.clone();
            w.toggle(b);
            if let Some(&j) = pos.get(&w) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    let (graph, position) = Graph::from_indexed(names, &edges)?;
    let mut sorted = vec![BitSet::new(0); vectors.len()];
    for (i, v) in vectors.into_iter().enumerate() {
        sorted[position[i]] = v;
    }
    let index = sorted.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    Ok(FlipGraph {
        graph,
        vectors: sorted,
        index,
    })
}

/// Names of the given vertices in order, joined with `|`.
pub(crate) fn join_names(g: &Graph, vs: &[usize]) -> String {
    let mut s = String::new();
    for (i, &v) in vs.iter().enumerate() {
        if i > 0 {
            s.push('|');
        }
        s.push_str(g.name(v));
    }
    s
}

fn sign_pattern(v: &BitSet) -> String {
    let mut s = String::from("⟨");
    for i in 0..v.capacity() {
        s.push(if v.contains(i) { '+' } else { '-' });
    }
    s.push('⟩');
    s
}

/// The cubulation of a wallspace and the canonical map into it.
#[derive(Clone, Debug)]
pub struct Cubulation {
    pub graph: Graph,
    /// Carrier vertex to its principal orientation's vertex.
    pub eta: Vec<usize>,
    /// Orientation of each vertex of `graph`.
    pub orientations: Vec<Orientation>,
}

impl Cubulation {
    pub fn vertex_of(&self, o: &Orientation) -> Option<usize> {
        self.orientations.iter().position(|x| x == o)
    }
}

/// Vertices are the consistent orientations, edges join orientations that
/// differ on one wall.
pub fn cubulate(w: &Wallspace) -> Result<Cubulation> {
    let g = w.carrier();
    let principal: Vec<Orientation> =
        (0..g.vertex_count()).map(|x| w.principal_orientation(x)).collect::<Result<_>>()?;
    let vectors = w.constraints().reachable_from(principal[g.basepoint()].clone());
    let fg = flip_graph(vectors, g, &principal)?;
    let eta = principal.iter().map(|o| fg.index[o]).collect();
    Ok(Cubulation {
        graph: fg.graph,
        eta,
        orientations: fg.vectors,
    })
}

/// Consistent orientations by exhaustive filtering; a cross-check for the
/// breadth-first enumeration on at most 20 walls.
pub fn consistent_orientations_brute_force(w: &Wallspace) -> Vec<Orientation> {
    w.constraints().brute_force()
}

/// Failure of square completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Completion {
    /// Images of the three known corners of the square at this vertex span
    /// no fourth corner.
    MissingCorner(usize),
    /// The vertex lies on no square with three assigned corners.
    Unreachable(usize),
    /// A known corner is not sent to an edge.
    NotEdge(usize),
}

/// Extends a partial vertex map `m -> y` by repeatedly assigning the
/// missing corner of squares with three assigned corners. A square
/// `p u w v` whose known edges `w u`, `w v` land on one edge sends `p` to
/// the image of `w`; otherwise `p` goes to the other common neighbour of
/// the images of `u` and `v`. Unassigned vertices are scanned in index
/// order, or in reverse when `reversed`.
pub(crate) fn complete_squares(
    m: &Graph,
    y: &Graph,
    mut xi: Vec<Option<usize>>,
    reversed: bool,
) -> core::result::Result<Vec<usize>, Completion> {
    let n = m.vertex_count();
    let order: Vec<usize> = if reversed { (0..n).rev().collect() } else { (0..n).collect() };
    loop {
        let mut progress = false;
        let mut pending = false;
        for &p in &order {
            if xi[p].is_some() {
                continue;
            }
            match fourth_corner(m, y, &xi, p)? {
                Some(img) => {
                    xi[p] = Some(img);
                    progress = true;
                }
                None => pending = true,
            }
        }
        if !pending {
            return Ok(xi.into_iter().map(|v| v.expect("assigned")).collect());
        }
        if !progress {
            let p = order.iter().copied().find(|&p| xi[p].is_none()).expect("pending");
            return Err(Completion::Unreachable(p));
        }
    }
}

fn fourth_corner(
    m: &Graph,
    y: &Graph,
    xi: &[Option<usize>],
    p: usize,
) -> core::result::Result<Option<usize>, Completion> {
    let known: Vec<usize> = m.neighbors(p).iter().copied().filter(|&u| xi[u].is_some()).collect();
    for (i, &u) in known.iter().enumerate() {
        for &v in &known[i + 1..] {
            let Some(w) = m.neighbors(u).iter().copied().find(|&w| w != p && xi[w].is_some() && m.has_edge(w, v))
            else {
                continue;
            };
            let (iu, iv, iw) = (xi[u].expect("known"), xi[v].expect("known"), xi[w].expect("known"));
            if !y.has_edge(iu, iw) || !y.has_edge(iv, iw) {
                return Err(Completion::NotEdge(w));
            }
            if iu == iv {
                return Ok(Some(iw));
            }
            return match y.neighbors(iu).iter().copied().find(|&z| z != iw && y.has_edge(z, iv)) {
                Some(z) => Ok(Some(z)),
                None => Err(Completion::MissingCorner(p)),
            };
        }
    }
    Ok(None)
}

/// The unique parallel-preserving `xi` on the cubulation with
/// `psi = xi ∘ eta`, where `psi` is defined on the wallspace carrier.
pub fn universal_map_through_cubulation(psi: &PPMap, cub: &Cubulation) -> Result<PPMap> {
    universal_map_in_order(psi, cub, false)
}

/// As [`universal_map_through_cubulation`], scanning corners in reverse
/// identifier order; the result must not depend on it.
pub fn universal_map_in_order(psi: &PPMap, cub: &Cubulation, reversed: bool) -> Result<PPMap> {
    if psi.domain().vertex_count() != cub.eta.len() {
        return Err(Error::DomainMismatch);
    }
    let mut seed = vec![None; cub.graph.vertex_count()];
    for (x, &m) in cub.eta.iter().enumerate() {
        push_image(&mut seed, m, psi.apply(x), psi.codomain(), psi.domain(), x)?;
    }
    let xi = complete_squares(&cub.graph, psi.codomain(), seed, reversed)
        .map_err(|c| completion_error(c, &cub.graph, false))?;
    let xi = PPMap::new(cub.graph.clone(), psi.codomain().clone(), xi)
        .map_err(|e| Error::NotFactorizable(format!("completed map is not parallel-preserving: {e}")))?;
    for (x, &m) in cub.eta.iter().enumerate() {
        if xi.apply(m) != psi.apply(x) {
            return Err(Error::NotFactorizable(format!("completion disagrees at `{}`", psi.domain().name(x))));
        }
    }
    Ok(xi)
}

/// Records `seed[m] = y`, failing if `m` already has another image.
pub(crate) fn push_image(
    seed: &mut [Option<usize>],
    m: usize,
    y: usize,
    codomain: &Graph,
    domain: &Graph,
    x: usize,
) -> Result<()> {
    match seed[m] {
        Some(prev) if prev != y => Err(Error::NotFactorizable(format!(
            "`{}` and another vertex with the same image go to `{}` and `{}`",
            domain.name(x),
            codomain.name(y),
            codomain.name(prev)
        ))),
        _ => {
            seed[m] = Some(y);
            Ok(())
        }
    }
}

pub(crate) fn completion_error(c: Completion, m: &Graph, missing_is_corner: bool) -> Error {
    match c {
        Completion::MissingCorner(p) if missing_is_corner => Error::MissingFourthCorner(m.name(p).into()),
        Completion::MissingCorner(p) => Error::NotFactorizable(format!("no fourth corner for `{}`", m.name(p))),
        Completion::Unreachable(p) => Error::NotFactorizable(format!("`{}` is not reached by square completion", m.name(p))),
        Completion::NotEdge(p) => Error::NotFactorizable(format!("an edge at `{}` is not sent to an edge", m.name(p))),
    }
}
