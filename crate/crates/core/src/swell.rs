//! Swellings: gluing squares so that tangent hyperplanes become transverse,
//! for one pair by a prism over the common carrier and for a collection
//! through spots, plus the unique extension of maps over a swelling.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::cubulation::{self, complete_squares, flip_graph, PairConstraints};
use crate::error::{Error, Result};
use crate::fold::PairCollection;
use crate::graph::{disambiguate, Graph};
use crate::hyperplane::{label, Hyperplanes, RelationKind};
use crate::median::MedianGraph;
use crate::morphism::{validate, PPMap};

#[derive(Clone, Debug)]
pub struct SwellResult {
    pub source: Graph,
    pub target: Graph,
    /// Isometric embedding of the source into the target.
    pub embedding: PPMap,
    /// Pairs of source hyperplanes made transverse.
    pub new_transversal_pairs: PairCollection,
    /// For each target vertex, the source halfspaces containing it: bit `j`
    /// set means the side of hyperplane `j` holding the basepoint.
    pub spots: Vec<BitSet>,
}

impl SwellResult {
    /// Target hyperplane of each source hyperplane.
    pub fn hyperplane_map(&self) -> &[usize] {
        self.embedding.hyperplane_map()
    }
}

/// Splits `pairs` into the tangent ones, rejecting separated pairs.
fn tangent_pairs(hs: &Hyperplanes, pairs: &PairCollection) -> Result<PairCollection> {
    pairs.check_ids(hs.len())?;
    let mut out = Vec::new();
    for (a, b) in pairs.proper() {
        match hs.relation(a, b).kind {
            RelationKind::Tangent => out.push((a, b)),
            RelationKind::Transverse | RelationKind::Equal => {}
            RelationKind::Separated => return Err(Error::NotTangent { a, b }),
        }
    }
    Ok(PairCollection::new(out))
}

/// Glues a square `p, α(p), γ(p), β(p)` at every `p` on both carriers and
/// joins `γ(p)` to `γ(q)` whenever `p` and `q` are adjacent.
pub fn swell_pair(g: &Graph, a: usize, b: usize) -> Result<SwellResult> {
    let mg = MedianGraph::new(g.clone())?;
    let hs = mg.hyperplanes();
    hs.checked(a)?;
    hs.checked(b)?;
    if !hs.is_tangent(a, b) {
        return Err(Error::NotTangent { a, b });
    }
    let alpha = hs.canonical_involution(g, a)?;
    let beta = hs.canonical_involution(g, b)?;
    let n = g.vertex_count();
    let (la, lb) = (label(a.min(b)), label(a.max(b)));
    let common: Vec<usize> = (0..n).filter(|&p| alpha[p].is_some() && beta[p].is_some()).collect();
    let mut slot = vec![usize::MAX; n];
    let mut names: Vec<String> = g.names().to_vec();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    for &p in &common {
        slot[p] = names.len();
        names.push(format!("γ({};{la},{lb})", g.name(p)));
    }
    for &p in &common {
        let gp = slot[p];
        edges.push((gp, alpha[p].expect("on carrier")));
        edges.push((gp, beta[p].expect("on carrier")));
        for &q in g.neighbors(p) {
            if p < q && slot[q] != usize::MAX {
                edges.push((gp, slot[q]));
            }
        }
    }
    let mut raw: Vec<BitSet> = (0..n).map(|x| mg.code(x).complement()).collect();
    for &p in &common {
        let mut o = raw[p].clone();
        o.toggle(a);
        o.toggle(b);
        raw.push(o);
    }
    disambiguate(&mut names);
    let (target, position) = Graph::from_indexed(names, &edges)?;
    let mut spots = vec![BitSet::new(hs.len()); target.vertex_count()];
    for (i, o) in raw.into_iter().enumerate() {
        spots[position[i]] = o;
    }
    let embedding = validate(g.clone(), target.clone(), position[..n].to_vec())?;
    Ok(SwellResult {
        source: g.clone(),
        target,
        embedding,
        new_transversal_pairs: PairCollection::single(a, b),
        spots,
    })
}

/// The graph of spots: one halfspace per hyperplane, choices pairwise
/// intersecting except on the pairs of `pairs`, edges between spots that
/// differ on one hyperplane. Transverse pairs are ignored; separated pairs
/// are rejected.
pub fn swell_collection(g: &Graph, pairs: &PairCollection) -> Result<SwellResult> {
    let mg = MedianGraph::new(g.clone())?;
    let hs = mg.hyperplanes();
    let tangent = tangent_pairs(hs, pairs)?;
    let k = hs.len();
    let mut c = PairConstraints::new(k);
    let side = |j: usize, plus: bool| {
        let h = hs.get(j);
        if plus {
            h.plus().expect("median")
        } else {
            h.minus().expect("median")
        }
    };
    for i in 0..k {
        for j in i + 1..k {
            if tangent.contains(i, j) {
                continue;
            }
            for (si, sj) in [(false, false), (false, true), (true, false), (true, true)] {
                if !side(i, si).intersects(side(j, sj)) {
                    c.forbid(i, si, j, sj);
                }
            }
        }
    }
    // Principal orientations are the complements of the codes.
    let principal: Vec<_> = (0..g.vertex_count()).map(|x| mg.code(x).complement()).collect();
    let spots = c.reachable_from(principal[g.basepoint()].clone());
    let fg = flip_graph(spots, g, &principal)?;
    let embedding = validate(g.clone(), fg.graph.clone(), principal.iter().map(|o| fg.index[o]).collect())?;
    Ok(SwellResult {
        source: g.clone(),
        target: fg.graph,
        embedding,
        new_transversal_pairs: tangent,
        spots: fg.vectors,
    })
}

/// The unique parallel-preserving `xi` on the swelling with
/// `xi ∘ embedding = psi`. Each swelled pair must have transverse images.
pub fn extend_through_swell(sr: &SwellResult, psi: &PPMap) -> Result<PPMap> {
    if psi.domain() != &sr.source {
        return Err(Error::DomainMismatch);
    }
    let yh = psi.codomain_hyperplanes();
    for (a, b) in sr.new_transversal_pairs.proper() {
        if !yh.is_transverse(psi.image(a), psi.image(b)) {
            return Err(Error::NotFactorizable(format!(
                "images of hyperplanes {} and {} are not transverse",
                label(a),
                label(b)
            )));
        }
    }
    let mut seed = vec![None; sr.target.vertex_count()];
    for x in 0..sr.source.vertex_count() {
        seed[sr.embedding.apply(x)] = Some(psi.apply(x));
    }
    let xi = complete_squares(&sr.target, psi.codomain(), seed, false)
        .map_err(|c| cubulation::completion_error(c, &sr.target, true))?;
    let xi = validate(sr.target.clone(), psi.codomain().clone(), xi)
        .map_err(|e| Error::NotFactorizable(format!("extension is not parallel-preserving: {e}")))?;
    Ok(xi)
}
