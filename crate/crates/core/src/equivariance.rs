//! Finite groups of graph automorphisms, orbits of hyperplane pairs, and
//! folds and swellings over whole orbits with the action they induce.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::factorize::{self, FactorizationTrace, Mode};
use crate::fold::{factor_through_fold, fold_collection, FoldResult, PairCollection};
use crate::graph::Graph;
use crate::hyperplane::Hyperplanes;
use crate::morphism::{compose, PPMap};
use crate::swell::{extend_through_swell, swell_collection, SwellResult};

/// Largest group closure that [`verify_group`] enumerates.
pub const GROUP_CAP: usize = 10_000;

/// A finite group of automorphisms given by generating permutations.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    carrier: Graph,
    generators: Vec<Vec<usize>>,
    elements: Vec<Vec<usize>>,
}

fn is_automorphism(g: &Graph, p: &[usize]) -> bool {
    let n = g.vertex_count();
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    g.edges().iter().all(|&(u, v)| g.has_edge(p[u], p[v]))
}

/// Checks each generator and enumerates the generated group.
pub fn verify_group(g: &Graph, generators: Vec<Vec<usize>>) -> Result<SymmetryGroup> {
    for (i, p) in generators.iter().enumerate() {
        if !is_automorphism(g, p) {
            return Err(Error::NotAutomorphism(i));
        }
    }
    let identity: Vec<usize> = (0..g.vertex_count()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut elements = Vec::new();
    let mut queue = VecDeque::from([identity.clone()]);
    seen.insert(identity);
    while let Some(e) = queue.pop_front() {
        for s in &generators {
            let next: Vec<usize> = e.iter().map(|&x| s[x]).collect();
            if seen.insert(next.clone()) {
                if seen.len() > GROUP_CAP {
                    return Err(Error::GroupTooLarge(GROUP_CAP));
                }
                queue.push_back(next);
            }
        }
        elements.push(e);
    }
    Ok(SymmetryGroup {
        carrier: g.clone(),
        generators,
        elements,
    })
}

impl SymmetryGroup {
    pub fn trivial(g: &Graph) -> Self {
        verify_group(g, Vec::new()).expect("empty generating set")
    }

    pub fn carrier(&self) -> &Graph {
        &self.carrier
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Permutation of hyperplanes induced by an automorphism.
pub fn hyperplane_action(g: &Graph, hs: &Hyperplanes, perm: &[usize]) -> Vec<usize> {
    hs.iter()
        .map(|h| {
            let (u, v) = g.edges()[h.edges[0]];
            hs.class_of(g, perm[u], perm[v]).expect("automorphism keeps edges")
        })
        .collect()
}

/// Closure of `seeds` under hyperplane permutations.
pub(crate) fn orbit_under(perms: &[Vec<usize>], seeds: &PairCollection) -> PairCollection {
    let mut seen: BTreeSet<(usize, usize)> = seeds.pairs().iter().copied().collect();
    let mut queue: VecDeque<(usize, usize)> = seen.iter().copied().collect();
    while let Some((a, b)) = queue.pop_front() {
        for p in perms {
            let (x, y) = (p[a], p[b]);
            let pair = (x.min(y), x.max(y));
            if seen.insert(pair) {
                queue.push_back(pair);
            }
        }
    }
    PairCollection::new(seen)
}

/// Closure of the seed pairs under the group's action on hyperplanes.
pub fn orbit_of_pairs(group: &SymmetryGroup, seeds: &PairCollection) -> PairCollection {
    let g = &group.carrier;
    let hs = Hyperplanes::new(g);
    let perms: Vec<Vec<usize>> = group.generators.iter().map(|p| hyperplane_action(g, &hs, p)).collect();
    orbit_under(&perms, seeds)
}

/// Generator images on the target of a fold or swelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedAction {
    pub target: Graph,
    pub generator_images: Vec<Vec<usize>>,
}

fn automorphism_map(g: &Graph, perm: &[usize]) -> Result<PPMap> {
    PPMap::new(g.clone(), g.clone(), perm.to_vec())
}

/// For each generator `s`, the unique map `t` with `t ∘ step = step ∘ s`,
/// obtained from the universal property by `lift`.
pub(crate) fn induce(
    step: &PPMap,
    generators: &[Vec<usize>],
    lift: impl Fn(&PPMap) -> Result<PPMap>,
) -> Result<InducedAction> {
    let source = step.domain();
    let target = step.codomain();
    let mut images = Vec::with_capacity(generators.len());
    for s in generators {
        let pushed = compose(step, &automorphism_map(source, s)?)?;
        let t = lift(&pushed)?;
        images.push(t.vertex_map().to_vec());
    }
    let action = InducedAction {
        target: target.clone(),
        generator_images: images,
    };
    check_action(step, generators, &action)?;
    Ok(action)
}

/// Induced images are automorphisms and every square commutes.
pub fn check_action(step: &PPMap, generators: &[Vec<usize>], action: &InducedAction) -> Result<()> {
    verify_group(&action.target, action.generator_images.clone())?;
    for (i, (s, t)) in generators.iter().zip(&action.generator_images).enumerate() {
        if (0..step.domain().vertex_count()).any(|x| t[step.apply(x)] != step.apply(s[x])) {
            return Err(Error::NotEquivariant(i));
        }
    }
    Ok(())
}

/// Folds the orbit of `{a, b}` and induces the action on the result.
pub fn equivariant_fold(g: &Graph, group: &SymmetryGroup, a: usize, b: usize) -> Result<(FoldResult, InducedAction)> {
    let pairs = orbit_of_pairs(group, &PairCollection::single(a, b));
    let fr = fold_collection(g, &pairs)?;
    let action = induce(&fr.zeta, &group.generators, |m| factor_through_fold(&fr, m))?;
    Ok((fr, action))
}

/// Swells the orbit of `{a, b}` and induces the action on the result.
pub fn equivariant_swell(g: &Graph, group: &SymmetryGroup, a: usize, b: usize) -> Result<(SwellResult, InducedAction)> {
    let pairs = orbit_of_pairs(group, &PairCollection::single(a, b));
    let sr = swell_collection(g, &pairs)?;
    let action = induce(&sr.embedding, &group.generators, |m| extend_through_swell(&sr, m))?;
    Ok((sr, action))
}

/// Factorizes an equivariant map folding and swelling whole orbits.
/// Generator `i` of `group` corresponds to generator `i` of `cogroup`.
pub fn factorize_equivariant(
    psi: &PPMap,
    group: &SymmetryGroup,
    cogroup: &SymmetryGroup,
    mode: Mode,
) -> Result<FactorizationTrace> {
    if group.carrier() != psi.domain() || cogroup.carrier() != psi.codomain() {
        return Err(Error::DomainMismatch);
    }
    if group.generators.len() != cogroup.generators.len() {
        return Err(Error::NotEquivariant(group.generators.len().min(cogroup.generators.len())));
    }
    check_equivariant(psi, &group.generators, &cogroup.generators)?;
    let trace = factorize::run(psi, mode, Some(group.generators.clone()))?;
    let last = match trace.moves.last() {
        Some(m) => m.induced.as_ref().expect("equivariant moves carry actions").generator_images.clone(),
        None => group.generators.clone(),
    };
    check_equivariant(&trace.iota, &last, &cogroup.generators)?;
    Ok(trace)
}

fn check_equivariant(psi: &PPMap, gens: &[Vec<usize>], cogens: &[Vec<usize>]) -> Result<()> {
    for (i, (s, t)) in gens.iter().zip(cogens).enumerate() {
        if (0..psi.domain().vertex_count()).any(|x| psi.apply(s[x]) != t[psi.apply(x)]) {
            return Err(Error::NotEquivariant(i));
        }
    }
    Ok(())
}
