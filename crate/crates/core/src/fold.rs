//! Folds: the first-fold quotient, the fold of a pair (its cubulation),
//! the fold of a collection through parity walls, and the unique map
//! through a fold.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cubulation::{self, complete_squares, cubulate, walls_from_hyperplanes, Wallspace};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hyperplane::{label, Hyperplanes, RelationKind};
use crate::median::MedianGraph;
use crate::morphism::{compose, validate, PPMap};
use crate::union_find::UnionFind;

/// Unordered hyperplane pairs, stored as sorted `(a, b)` with `a <= b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairCollection {
    pairs: Vec<(usize, usize)>,
}

impl PairCollection {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        PairCollection { pairs }
    }

    pub fn single(a: usize, b: usize) -> Self {
        Self::new([(a, b)])
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Pairs of two distinct hyperplanes.
    pub fn proper(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied().filter(|(a, b)| a != b)
    }

    /// Relabels every id through `f`.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::new(self.pairs.iter().map(|&(a, b)| (f(a), f(b))))
    }

    /// Checks that ids are below `len`.
    pub fn check_ids(&self, len: usize) -> Result<()> {
        match self.pairs.iter().flat_map(|&(a, b)| [a, b]).find(|&x| x >= len) {
            Some(x) => Err(Error::UnknownHyperplane(x)),
            None => Ok(()),
        }
    }

    /// Classes of the equivalence relation generated by the pairs, over
    /// `len` hyperplanes: `(label per hyperplane, class count)`.
    pub fn connected_classes(&self, len: usize) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(len);
        for &(a, b) in &self.pairs {
            uf.union(a, b);
        }
        uf.labels()
    }
}

#[derive(Clone, Debug)]
pub struct FoldResult {
    pub source: Graph,
    pub target: Graph,
    pub zeta: PPMap,
    /// Source hyperplanes grouped by the class they are merged into, each
    /// group increasing, groups ordered by least member.
    pub merged_classes: Vec<Vec<usize>>,
    pub pairs: PairCollection,
}

fn groups(labels: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); count];
    for (j, &c) in labels.iter().enumerate() {
        out[c].push(j);
    }
    out
}

fn require_contact(hs: &Hyperplanes, a: usize, b: usize) -> Result<()> {
    hs.checked(a)?;
    hs.checked(b)?;
    let r = hs.relation(a, b);
    match r.kind {
        RelationKind::Separated => Err(Error::NotInContact {
            a,
            b,
            distance: r.separation_distance,
        }),
        _ => Ok(()),
    }
}

/// Identifies `α(p)` with `β(p)` for every `p` on both carriers, where `α`
/// and `β` are the canonical involutions of `a` and `b`. Works on any graph
/// whose two involutions are well defined. Returns the quotient and the
/// quotient map by vertex index. Merged vertices are named by their
/// members joined with `|`.
pub fn identify_across(g: &Graph, hs: &Hyperplanes, a: usize, b: usize) -> Result<(Graph, Vec<usize>)> {
    let alpha = hs.canonical_involution(g, a)?;
    let beta = hs.canonical_involution(g, b)?;
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for p in 0..n {
        if let (Some(x), Some(y)) = (alpha[p], beta[p]) {
            uf.union(x, y);
        }
    }
    let (label, count) = uf.labels();
    let members = groups(&label, count);
    let names: Vec<String> = members.iter().map(|vs| cubulation::join_names(g, vs)).collect();
    let mut edges = Vec::with_capacity(g.edge_count());
    for &(u, v) in g.edges() {
        if label[u] == label[v] {
            return Err(Error::Internal("first fold collapsed an edge"));
        }
        edges.push((label[u], label[v]));
    }
    let (z, position) = Graph::from_indexed(names, &edges)?;
    Ok((z, label.iter().map(|&c| position[c]).collect()))
}

/// The first fold of a median graph relative to two hyperplanes in
/// contact, with its quotient map.
pub fn first_fold(g: &Graph, a: usize, b: usize) -> Result<(Graph, PPMap)> {
    let mg = MedianGraph::new(g.clone())?;
    let hs = mg.hyperplanes();
    require_contact(hs, a, b)?;
    let (z, pi) = identify_across(g, hs, a, b)?;
    let pi = validate(g.clone(), z.clone(), pi)?;
    Ok((z, pi))
}

/// The cubulation of the first fold, with `zeta = eta ∘ pi`.
pub fn fold_pair(g: &Graph, a: usize, b: usize) -> Result<FoldResult> {
    let (z, pi) = first_fold(g, a, b)?;
    let walls = walls_from_hyperplanes(&z).map_err(|_| Error::Internal("first fold hyperplanes do not separate"))?;
    let cub = cubulate(&walls)?;
    let eta = validate(z, cub.graph.clone(), cub.eta)?;
    let zeta = compose(&eta, &pi)?;
    let k = pi.domain_hyperplanes().len();
    let pairs = PairCollection::single(a, b);
    let (label, count) = pairs.connected_classes(k);
    Ok(FoldResult {
        source: g.clone(),
        target: cub.graph,
        zeta,
        merged_classes: groups(&label, count),
        pairs,
    })
}

/// Folds every pair of `pairs` at once. Each class of hyperplanes linked by
/// pairs becomes one wall, whose sides are the vertices crossing an even or
/// odd number of the class's hyperplanes from the basepoint.
pub fn fold_collection(g: &Graph, pairs: &PairCollection) -> Result<FoldResult> {
    let mg = MedianGraph::new(g.clone())?;
    let hs = mg.hyperplanes();
    pairs.check_ids(hs.len())?;
    for (a, b) in pairs.proper() {
        require_contact(hs, a, b)?;
    }
    let (label, count) = pairs.connected_classes(hs.len());
    let n = g.vertex_count();
    let sides = (0..count)
        .map(|c| {
            g.set_of((0..n).filter(|&x| mg.code(x).iter().filter(|&j| label[j] == c).count() % 2 == 0))
        })
        .collect();
    let walls = Wallspace::new(g.clone(), sides)?;
    let cub = cubulate(&walls)?;
    let zeta = validate(g.clone(), cub.graph.clone(), cub.eta)?;
    Ok(FoldResult {
        source: g.clone(),
        target: cub.graph,
        zeta,
        merged_classes: groups(&label, count),
        pairs: pairs.clone(),
    })
}

/// The unique `xi` on the fold target with `psi = xi ∘ zeta`.
pub fn factor_through_fold(fr: &FoldResult, psi: &PPMap) -> Result<PPMap> {
    if psi.domain() != &fr.source {
        return Err(Error::DomainMismatch);
    }
    for (a, b) in fr.pairs.proper() {
        if psi.image(a) != psi.image(b) {
            return Err(Error::NotFactorizable(format!("hyperplanes {} and {} have different images", label(a), label(b))));
        }
    }
    let mut seed = vec![None; fr.target.vertex_count()];
    for x in 0..fr.source.vertex_count() {
        cubulation::push_image(&mut seed, fr.zeta.apply(x), psi.apply(x), psi.codomain(), &fr.source, x)?;
    }
    let xi = complete_squares(&fr.target, psi.codomain(), seed, false)
        .map_err(|c| cubulation::completion_error(c, &fr.target, false))?;
    let xi = validate(fr.target.clone(), psi.codomain().clone(), xi)
        .map_err(|e| Error::NotFactorizable(format!("completed map is not parallel-preserving: {e}")))?;
    if (0..fr.source.vertex_count()).any(|x| xi.apply(fr.zeta.apply(x)) != psi.apply(x)) {
        return Err(Error::NotFactorizable("completion disagrees with the map".into()));
    }
    Ok(xi)
}
