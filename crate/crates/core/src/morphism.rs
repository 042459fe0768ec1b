//! Parallel-preserving maps: validation, classification by hyperplane
//! behaviour, composition, and the violations that factorization repairs.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hyperplane::Hyperplanes;
use crate::median::MedianGraph;

/// A vertex map sending edges to edges and parallel edges to parallel
/// edges, with its induced map on hyperplanes.
#[derive(Clone, Debug)]
pub struct PPMap {
    domain: Graph,
    codomain: Graph,
    vertex_map: Vec<usize>,
    hyperplane_map: Vec<usize>,
    domain_h: Hyperplanes,
    codomain_h: Hyperplanes,
}

impl PartialEq for PPMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.vertex_map == other.vertex_map
    }
}

impl Eq for PPMap {}

/// Checks that `vertex_map` is parallel-preserving and builds the map.
pub fn validate(domain: Graph, codomain: Graph, vertex_map: Vec<usize>) -> Result<PPMap> {
    let dh = Hyperplanes::new(&domain);
    let ch = Hyperplanes::new(&codomain);
    PPMap::with_hyperplanes(domain, codomain, vertex_map, dh, ch)
}

impl PPMap {
    pub fn new(domain: Graph, codomain: Graph, vertex_map: Vec<usize>) -> Result<PPMap> {
        validate(domain, codomain, vertex_map)
    }

    /// Builds from `(domain name, codomain name)` pairs covering every
    /// domain vertex.
    pub fn from_names<A: AsRef<str>, B: AsRef<str>>(
        domain: Graph,
        codomain: Graph,
        pairs: impl IntoIterator<Item = (A, B)>,
    ) -> Result<PPMap> {
        let n = domain.vertex_count();
        let mut map = alloc::vec![usize::MAX; n];
        let mut got = 0;
        for (a, b) in pairs {
            let u = domain.vertex(a.as_ref())?;
            let v = codomain.vertex(b.as_ref())?;
            if map[u] == usize::MAX {
                got += 1;
            }
            map[u] = v;
        }
        if got != n {
            return Err(Error::MapNotTotal { expected: n, got });
        }
        validate(domain, codomain, map)
    }

    pub fn identity(g: &Graph) -> PPMap {
        validate(g.clone(), g.clone(), (0..g.vertex_count()).collect()).expect("identity is parallel-preserving")
    }

    pub(crate) fn with_hyperplanes(
        domain: Graph,
        codomain: Graph,
        vertex_map: Vec<usize>,
        domain_h: Hyperplanes,
        codomain_h: Hyperplanes,
    ) -> Result<PPMap> {
        let n = domain.vertex_count();
        if vertex_map.len() != n {
            return Err(Error::MapNotTotal {
                expected: n,
                got: vertex_map.len(),
            });
        }
        if let Some(&bad) = vertex_map.iter().find(|&&v| v >= codomain.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{bad}")));
        }
        let mut hyperplane_map = alloc::vec![usize::MAX; domain_h.len()];
        let mut first_edge = alloc::vec![usize::MAX; domain_h.len()];
        for (e, &(u, v)) in domain.edges().iter().enumerate() {
            let (fu, fv) = (vertex_map[u], vertex_map[v]);
            let name = |x: usize| domain.name(x).to_string();
            if fu == fv {
                return Err(Error::EdgeCollapsed(name(u), name(v)));
            }
            let Some(c) = codomain_h.class_of(&codomain, fu, fv) else {
                return Err(Error::EdgeNotPreserved(name(u), name(v)));
            };
            let j = domain_h.class_of_edge(e);
            if hyperplane_map[j] == usize::MAX {
                hyperplane_map[j] = c;
                first_edge[j] = e;
            } else if hyperplane_map[j] != c {
                let (a, b) = domain.edges()[first_edge[j]];
                return Err(Error::ParallelBroken(
                    format!("{}-{}", name(a), name(b)),
                    format!("{}-{}", name(u), name(v)),
                ));
            }
        }
        Ok(PPMap {
            domain,
            codomain,
            vertex_map,
            hyperplane_map,
            domain_h,
            codomain_h,
        })
    }

    pub fn domain(&self) -> &Graph {
        &self.domain
    }

    pub fn codomain(&self) -> &Graph {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn hyperplane_map(&self) -> &[usize] {
        &self.hyperplane_map
    }

    pub fn domain_hyperplanes(&self) -> &Hyperplanes {
        &self.domain_h
    }

    pub fn codomain_hyperplanes(&self) -> &Hyperplanes {
        &self.codomain_h
    }

    pub fn apply(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    /// Image of a domain hyperplane.
    pub fn image(&self, j: usize) -> usize {
        self.hyperplane_map[j]
    }

    /// Distinct image vertices, as a codomain set.
    pub fn image_set(&self) -> crate::graph::VertexSet {
        self.codomain.set_of(self.vertex_map.iter().copied())
    }

    /// Transverse hyperplanes go to transverse hyperplanes.
    pub fn is_chiasmatic(&self) -> bool {
        let k = self.domain_h.len();
        (0..k).all(|a| {
            (a + 1..k).all(|b| {
                !self.domain_h.is_transverse(a, b) || self.codomain_h.is_transverse(self.image(a), self.image(b))
            })
        })
    }
}

/// `outer ∘ inner`.
pub fn compose(outer: &PPMap, inner: &PPMap) -> Result<PPMap> {
    if inner.codomain != outer.domain {
        return Err(Error::DomainMismatch);
    }
    let vertex_map = inner.vertex_map.iter().map(|&v| outer.vertex_map[v]).collect();
    PPMap::with_hyperplanes(
        inner.domain.clone(),
        outer.codomain.clone(),
        vertex_map,
        inner.domain_h.clone(),
        outer.codomain_h.clone(),
    )
}

/// Strength of a map, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapKind {
    NotParallelPreserving,
    ParallelPreserving,
    IsometricEmbedding,
    ConvexEmbedding,
    Isometry,
}

impl MapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::NotParallelPreserving => "not-parallel-preserving",
            MapKind::ParallelPreserving => "parallel-preserving",
            MapKind::IsometricEmbedding => "isometric-embedding",
            MapKind::ConvexEmbedding => "convex-embedding",
            MapKind::Isometry => "isometry",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapClass {
    pub kind: MapKind,
    /// Domain hyperplanes showing why the next kind up fails: a merged pair
    /// for parallel-preserving maps, a non-transverse pair with transverse
    /// images for isometric embeddings.
    pub witness: Option<(usize, usize)>,
}

/// Classifies a map between median graphs from its hyperplane map alone.
pub fn classify(psi: &PPMap) -> Result<MapClass> {
    MedianGraph::new(psi.domain.clone())?;
    MedianGraph::new(psi.codomain.clone())?;
    let class = classify_unchecked(psi);
    #[cfg(debug_assertions)]
    if psi.domain.vertex_count() <= 40 && psi.codomain.vertex_count() <= 40 {
        debug_assert_eq!(class.kind, metric_kind(psi), "hyperplane and metric classifications disagree");
    }
    Ok(class)
}

pub(crate) fn classify_unchecked(psi: &PPMap) -> MapClass {
    if let Some(w) = first_merged_pair(psi) {
        return MapClass {
            kind: MapKind::ParallelPreserving,
            witness: Some(w),
        };
    }
    if let Some(w) = transversalized_pairs(psi).next() {
        return MapClass {
            kind: MapKind::IsometricEmbedding,
            witness: Some(w),
        };
    }
    let kind = if psi.domain_h.len() == psi.codomain_h.len() {
        MapKind::Isometry
    } else {
        MapKind::ConvexEmbedding
    };
    MapClass { kind, witness: None }
}

/// Classification from distances, image convexity and bijectivity.
pub fn metric_kind(psi: &PPMap) -> MapKind {
    let dd = psi.domain.distances();
    let cd = psi.codomain.distances();
    let n = psi.domain.vertex_count();
    let f = &psi.vertex_map;
    let isometric = (0..n).all(|u| (u + 1..n).all(|v| dd.get(u, v) == cd.get(f[u], f[v])));
    if !isometric {
        return MapKind::ParallelPreserving;
    }
    let image = psi.image_set();
    let m = psi.codomain.vertex_count();
    let convex = image.iter().all(|a| {
        image
            .iter()
            .all(|b| (0..m).all(|w| !cd.on_geodesic(a, w, b) || image.contains(w)))
    });
    if !convex {
        MapKind::IsometricEmbedding
    } else if n == m {
        MapKind::Isometry
    } else {
        MapKind::ConvexEmbedding
    }
}

fn first_merged_pair(psi: &PPMap) -> Option<(usize, usize)> {
    let k = psi.domain_h.len();
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).find(|&(a, b)| psi.image(a) == psi.image(b))
}

/// Non-transverse pairs with transverse images, tangent pairs first.
fn transversalized_pairs(psi: &PPMap) -> impl Iterator<Item = (usize, usize)> + '_ {
    let k = psi.domain_h.len();
    let all = move || (0..k).flat_map(move |a| (a + 1..k).map(move |b| (a, b)));
    let hit = move |&(a, b): &(usize, usize)| {
        !psi.domain_h.is_transverse(a, b) && psi.codomain_h.is_transverse(psi.image(a), psi.image(b))
    };
    all()
        .filter(move |&(a, b)| psi.domain_h.is_tangent(a, b))
        .filter(hit)
        .chain(all().filter(move |&(a, b)| !psi.domain_h.in_contact(a, b)).filter(hit))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Distinct hyperplanes with the same image.
    Merged,
    /// Non-transverse hyperplanes with transverse images.
    Transversalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub pair: (usize, usize),
    pub kind: ViolationKind,
    pub separation_distance: usize,
}

/// Merged pairs ordered by separation distance then ids.
pub fn merged_pairs(psi: &PPMap) -> Vec<Violation> {
    let k = psi.domain_h.len();
    let mut out: Vec<Violation> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .filter(|&(a, b)| psi.image(a) == psi.image(b))
        .map(|(a, b)| Violation {
            pair: (a, b),
            kind: ViolationKind::Merged,
            separation_distance: psi.domain_h.relation(a, b).separation_distance,
        })
        .collect();
    out.sort_by_key(|v| (v.separation_distance, v.pair));
    out
}

/// The first obstruction to being a convex embedding: the closest merged
/// pair, otherwise a transversalized pair (tangent ones first).
pub fn find_violation(psi: &PPMap) -> Result<Option<Violation>> {
    MedianGraph::new(psi.domain.clone())?;
    MedianGraph::new(psi.codomain.clone())?;
    Ok(find_violation_unchecked(psi))
}

pub(crate) fn find_violation_unchecked(psi: &PPMap) -> Option<Violation> {
    if let Some(v) = merged_pairs(psi).into_iter().next() {
        return Some(v);
    }
    transversalized_pairs(psi).next().map(|(a, b)| Violation {
        pair: (a, b),
        kind: ViolationKind::Transversalized,
        separation_distance: psi.domain_h.relation(a, b).separation_distance,
    })
}
