//! Parallelism classes of edges (hyperplanes), their halfspaces, carriers,
//! fibers and pairwise relations.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::union_find::UnionFind;

/// One parallelism class of edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub id: usize,
    /// Edge indices into [`Graph::edges`], increasing.
    pub edges: Vec<usize>,
    /// Endpoints of the class's edges.
    pub carrier: VertexSet,
    /// `(plus, minus)` when deleting the class's edges leaves exactly two
    /// components; `plus` contains the basepoint.
    pub halfspaces: Option<(VertexSet, VertexSet)>,
}

impl Hyperplane {
    pub fn plus(&self) -> Option<&VertexSet> {
        self.halfspaces.as_ref().map(|(p, _)| p)
    }

    pub fn minus(&self) -> Option<&VertexSet> {
        self.halfspaces.as_ref().map(|(_, m)| m)
    }

    /// Endpoint pairs of the class's edges.
    pub fn edge_pairs<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = (usize, usize)> + 'a {
        self.edges.iter().map(move |&e| g.edges()[e])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    Equal,
    Transverse,
    Tangent,
    Separated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperplaneRelation {
    pub kind: RelationKind,
    /// Number of hyperplanes whose halfspaces split the two carriers; zero
    /// unless `kind` is `Separated`.
    pub separation_distance: usize,
}

impl HyperplaneRelation {
    pub fn in_contact(&self) -> bool {
        matches!(self.kind, RelationKind::Transverse | RelationKind::Tangent)
    }
}

/// All hyperplanes of a graph, with cached transversality and contact
/// tables.
#[derive(Clone, Debug)]
pub struct Hyperplanes {
    edge_class: Vec<usize>,
    planes: Vec<Hyperplane>,
    transverse: Vec<BitSet>,
    touching: Vec<BitSet>,
}

/// Partition of the edges of `g` into hyperplanes.
pub fn hyperplanes(g: &Graph) -> Hyperplanes {
    Hyperplanes::new(g)
}

impl Hyperplanes {
    pub fn new(g: &Graph) -> Self {
        let m = g.edge_count();
        let cycles = g.four_cycles();
        let mut uf = UnionFind::new(m);
        let e = |u: usize, v: usize| g.edge_index(u, v).expect("cycle edge");
        for &[a, b, c, d] in &cycles {
            uf.union(e(a, b), e(c, d));
            uf.union(e(b, c), e(d, a));
        }
        let (edge_class, k) = uf.labels();

        let mut members = vec![Vec::new(); k];
        for (ei, &c) in edge_class.iter().enumerate() {
            members[c].push(ei);
        }
        let planes = members
            .into_iter()
            .enumerate()
            .map(|(id, edges)| {
                let carrier = g.set_of(edges.iter().flat_map(|&ei| {
                    let (u, v) = g.edges()[ei];
                    [u, v]
                }));
                let removed = BitSet::from_indices(m, edges.iter().copied());
                let (label, count) = g.components_without(&removed);
                let halfspaces = (count == 2).then(|| {
                    let base = label[g.basepoint()];
                    let plus = g.set_of((0..g.vertex_count()).filter(|&v| label[v] == base));
                    let minus = plus.complement();
                    (plus, minus)
                });
                Hyperplane {
                    id,
                    edges,
                    carrier,
                    halfspaces,
                }
            })
            .collect();

        let mut transverse = vec![BitSet::new(k); k];
        for &[a, b, c, _] in &cycles {
            let (x, y) = (edge_class[e(a, b)], edge_class[e(b, c)]);
            if x != y {
                transverse[x].insert(y);
                transverse[y].insert(x);
            }
        }
        let mut touching = vec![BitSet::new(k); k];
        for v in 0..g.vertex_count() {
            let incident: Vec<usize> = g.neighbors(v).iter().map(|&w| edge_class[e(v, w)]).collect();
            for (i, &x) in incident.iter().enumerate() {
                for &y in &incident[i + 1..] {
                    if x != y {
                        touching[x].insert(y);
                        touching[y].insert(x);
                    }
                }
            }
        }
        Hyperplanes {
            edge_class,
            planes,
            transverse,
            touching,
        }
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn get(&self, id: usize) -> &Hyperplane {
        &self.planes[id]
    }

    pub fn checked(&self, id: usize) -> Result<&Hyperplane> {
        self.planes.get(id).ok_or(Error::UnknownHyperplane(id))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Hyperplane> {
        self.planes.iter()
    }

    /// Hyperplane of an edge index.
    pub fn class_of_edge(&self, e: usize) -> usize {
        self.edge_class[e]
    }

    pub fn edge_classes(&self) -> &[usize] {
        &self.edge_class
    }

    /// Hyperplane of the edge `u v`, if adjacent.
    pub fn class_of(&self, g: &Graph, u: usize, v: usize) -> Option<usize> {
        g.edge_index(u, v).map(|e| self.edge_class[e])
    }

    /// Whether every hyperplane delimits exactly two halfspaces.
    pub fn all_separate(&self) -> bool {
        self.planes.iter().all(|h| h.halfspaces.is_some())
    }

    pub fn require_halfspaces(&self) -> Result<()> {
        match self.planes.iter().find(|h| h.halfspaces.is_none()) {
            Some(h) => Err(Error::HalfspacesUnavailable(h.id)),
            None => Ok(()),
        }
    }

    pub fn is_transverse(&self, j: usize, k: usize) -> bool {
        self.transverse[j].contains(k)
    }

    pub fn is_tangent(&self, j: usize, k: usize) -> bool {
        j != k && self.touching[j].contains(k) && !self.transverse[j].contains(k)
    }

    pub fn in_contact(&self, j: usize, k: usize) -> bool {
        j != k && (self.transverse[j].contains(k) || self.touching[j].contains(k))
    }

    /// `Some(true)` when `v` lies in the plus halfspace of `j`.
    pub fn side(&self, j: usize, v: usize) -> Option<bool> {
        self.planes[j].plus().map(|p| p.contains(v))
    }

    /// Hyperplanes whose halfspaces place the carriers of `j` and `k` on
    /// opposite sides.
    pub fn separators(&self, j: usize, k: usize) -> Vec<usize> {
        let (cj, ck) = (&self.planes[j].carrier, &self.planes[k].carrier);
        self.planes
            .iter()
            .filter(|l| match &l.halfspaces {
                Some((plus, minus)) => {
                    (cj.is_subset(plus) && ck.is_subset(minus)) || (cj.is_subset(minus) && ck.is_subset(plus))
                }
                None => false,
            })
            .map(|l| l.id)
            .collect()
    }

    pub fn relation(&self, j: usize, k: usize) -> HyperplaneRelation {
        let kind = if j == k {
            RelationKind::Equal
        } else if self.transverse[j].contains(k) {
            RelationKind::Transverse
        } else if self.touching[j].contains(k) {
            RelationKind::Tangent
        } else {
            RelationKind::Separated
        };
        let separation_distance = match kind {
            RelationKind::Separated => self.separators(j, k).len(),
            _ => 0,
        };
        HyperplaneRelation {
            kind,
            separation_distance,
        }
    }

    /// Hyperplanes with `u` and `v` in opposite halfspaces.
    pub fn separating(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.require_halfspaces()?;
        Ok(self
            .planes
            .iter()
            .filter(|h| h.plus().is_some_and(|p| p.contains(u) != p.contains(v)))
            .map(|h| h.id)
            .collect())
    }

    /// The involution of the carrier of `j` swapping the endpoints of each
    /// of its edges; `None` off the carrier.
    pub fn canonical_involution(&self, g: &Graph, j: usize) -> Result<Vec<Option<usize>>> {
        let h = self.checked(j)?;
        let mut inv = vec![None; g.vertex_count()];
        for (u, v) in h.edge_pairs(g) {
            for (p, q) in [(u, v), (v, u)] {
                if inv[p].is_some() {
                    return Err(Error::NotWellDefined {
                        hyperplane: j,
                        vertex: g.name(p).into(),
                    });
                }
                inv[p] = Some(q);
            }
        }
        Ok(inv)
    }

    /// The two sides of the carrier of `j`, exchanged by its involution.
    pub fn fibers(&self, g: &Graph, j: usize) -> Result<(VertexSet, VertexSet)> {
        self.canonical_involution(g, j)?;
        let h = self.get(j);
        let (plus, minus) = h.halfspaces.as_ref().ok_or(Error::HalfspacesUnavailable(j))?;
        let mut a = h.carrier.clone();
        a.intersect_with(plus);
        let mut b = h.carrier.clone();
        b.intersect_with(minus);
        Ok((a, b))
    }

    /// Per vertex, the set of hyperplanes separating it from the basepoint.
    pub fn codes(&self, g: &Graph) -> Result<Vec<BitSet>> {
        self.require_halfspaces()?;
        Ok((0..g.vertex_count())
            .map(|v| BitSet::from_indices(self.len(), self.planes.iter().filter(|h| h.minus().is_some_and(|m| m.contains(v))).map(|h| h.id)))
            .collect())
    }
}

/// Display label of a hyperplane id: `A`..`Z`, then `H26`, `H27`, ...
pub fn label(id: usize) -> alloc::string::String {
    if id < 26 {
        alloc::string::String::from(char::from(b'A' + id as u8))
    } else {
        alloc::format!("H{id}")
    }
}

/// Inverse of [`label`]; also accepts `H<k>` and bare integers.
pub fn parse_label(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    if b.len() == 1 && b[0].is_ascii_uppercase() {
        return Some((b[0] - b'A') as usize);
    }
    let digits = s.strip_prefix('H').unwrap_or(s);
    digits.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn class_counts() {
        let p4 = hyperplanes(&families::path(4));
        assert_eq!(p4.len(), 4);
        assert!(p4.iter().all(|h| h.edges.len() == 1));
        let c4 = hyperplanes(&families::cycle(4));
        assert_eq!(c4.len(), 2);
        assert!(c4.iter().all(|h| h.edges.len() == 2));
        let q3 = hyperplanes(&families::hypercube(3));
        assert_eq!(q3.len(), 3);
        assert!(q3.iter().all(|h| h.edges.len() == 4));
    }

    #[test]
    fn involution_on_edge_and_square() {
        let p2 = families::path(2);
        let hs = hyperplanes(&p2);
        let inv = hs.canonical_involution(&p2, 0).unwrap();
        assert_eq!(inv, vec![Some(1), Some(0), None]);

        let c4 = families::cycle(4);
        let hs = hyperplanes(&c4);
        for j in 0..2 {
            let inv = hs.canonical_involution(&c4, j).unwrap();
            for v in 0..4 {
                let w = inv[v].unwrap();
                assert!(c4.has_edge(v, w));
                assert_eq!(inv[w], Some(v));
            }
        }
    }

    #[test]
    fn involution_fails_on_k23() {
        let g = families::k23();
        let hs = hyperplanes(&g);
        // All six edges are parallel through the three squares.
        assert_eq!(hs.len(), 1);
        assert!(matches!(hs.canonical_involution(&g, 0), Err(Error::NotWellDefined { .. })));
    }

    #[test]
    fn relations() {
        let c4 = hyperplanes(&families::cycle(4));
        assert_eq!(c4.relation(0, 1).kind, RelationKind::Transverse);
        assert_eq!(c4.relation(1, 1).kind, RelationKind::Equal);
        let p2 = hyperplanes(&families::path(2));
        assert_eq!(p2.relation(0, 1).kind, RelationKind::Tangent);
        let p4 = hyperplanes(&families::path(4));
        let r = p4.relation(0, 3);
        assert_eq!(r.kind, RelationKind::Separated);
        assert_eq!(r.separation_distance, 2);
        assert_eq!(p4.separators(0, 3), vec![1, 2]);
    }

    #[test]
    fn separating_sets() {
        let p4 = families::path(4);
        let hs = hyperplanes(&p4);
        assert_eq!(hs.separating(0, 4).unwrap(), vec![0, 1, 2, 3]);
        let c4 = families::cycle(4);
        let hs = hyperplanes(&c4);
        let e = hs.class_of(&c4, 0, 1).unwrap();
        assert_eq!(hs.separating(0, 1).unwrap(), vec![e]);
        let q3 = families::hypercube(3);
        let hs = hyperplanes(&q3);
        assert_eq!(hs.separating(0, 7).unwrap().len(), 3);
    }

    #[test]
    fn fibers_of_grid_row_class() {
        let g = families::grid(3, 3);
        let hs = hyperplanes(&g);
        let j = hs.class_of(&g, g.vertex("r0c0").unwrap(), g.vertex("r1c0").unwrap()).unwrap();
        let (a, b) = hs.fibers(&g, j).unwrap();
        assert_eq!(g.set_names(&a), ["r0c0", "r0c1", "r0c2"]);
        assert_eq!(g.set_names(&b), ["r1c0", "r1c1", "r1c2"]);
    }

    #[test]
    fn labels_round_trip() {
        for id in [0, 3, 25, 26, 100] {
            assert_eq!(parse_label(&label(id)), Some(id));
        }
        assert_eq!(parse_label("7"), Some(7));
    }
}
