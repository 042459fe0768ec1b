//! Factorization of a parallel-preserving map between median graphs into
//! folds and swellings followed by an isometric (or convex) embedding.

use alloc::vec::Vec;

use crate::equivariance::{self, InducedAction};
use crate::error::{Error, Result};
use crate::fold::{factor_through_fold, fold_collection, fold_pair, PairCollection};
use crate::graph::Graph;
use crate::hyperplane::Hyperplanes;
use crate::median::MedianGraph;
use crate::morphism::{compose, merged_pairs, PPMap};
use crate::swell::{extend_through_swell, swell_collection, swell_pair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Stop at an isometric embedding; its image is the median hull.
    MedianHull,
    /// Stop at a convex embedding; its image is the convex hull.
    ConvexHull,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Fold,
    Swell,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::Fold => "fold",
            MoveKind::Swell => "swell",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Move {
    pub kind: MoveKind,
    /// Hyperplane ids of the graph before the move.
    pub pairs: PairCollection,
    /// The fold map or swelling embedding.
    pub step_map: PPMap,
    /// Generator images on the new graph, in equivariant runs.
    pub induced: Option<InducedAction>,
}

impl Move {
    pub fn before(&self) -> &Graph {
        self.step_map.domain()
    }

    pub fn after(&self) -> &Graph {
        self.step_map.codomain()
    }
}

#[derive(Clone, Debug)]
pub struct FactorizationTrace {
    pub moves: Vec<Move>,
    /// Composite of the step maps, source to terminal graph.
    pub eta: PPMap,
    /// Terminal graph into the original codomain.
    pub iota: PPMap,
    pub mode: Mode,
}

impl FactorizationTrace {
    pub fn terminal(&self) -> &Graph {
        self.iota.domain()
    }
}

struct Run {
    mode: Mode,
    psi: PPMap,
    eta: PPMap,
    moves: Vec<Move>,
    /// Current generator permutations, in equivariant runs.
    actions: Option<Vec<Vec<usize>>>,
    measure: (usize, usize),
}

impl Run {
    fn new(psi: &PPMap, mode: Mode, actions: Option<Vec<Vec<usize>>>) -> Result<Run> {
        MedianGraph::new(psi.domain().clone())?;
        MedianGraph::new(psi.codomain().clone())?;
        let mut run = Run {
            mode,
            psi: psi.clone(),
            eta: PPMap::identity(psi.domain()),
            moves: Vec::new(),
            actions,
            measure: (usize::MAX, usize::MAX),
        };
        run.measure = run.current_measure();
        Ok(run)
    }

    fn hyperplanes(&self) -> &Hyperplanes {
        self.psi.domain_hyperplanes()
    }

    /// Hyperplane count, then the separation distances of merged pairs plus
    /// (in convex mode) the number of non-transverse pairs with transverse
    /// images.
    fn current_measure(&self) -> (usize, usize) {
        let hs = self.hyperplanes();
        let yh = self.psi.codomain_hyperplanes();
        let k = hs.len();
        let mut second: usize = merged_pairs(&self.psi).iter().map(|v| v.separation_distance).sum();
        if self.mode == Mode::ConvexHull {
            for a in 0..k {
                for b in a + 1..k {
                    if !hs.is_transverse(a, b) && yh.is_transverse(self.psi.image(a), self.psi.image(b)) {
                        second += 1;
                    }
                }
            }
        }
        (k, second)
    }

    /// The pair together with its orbit, in equivariant runs.
    fn orbit(&self, a: usize, b: usize) -> PairCollection {
        let seed = PairCollection::single(a, b);
        match &self.actions {
            Some(gens) => {
                let g = self.psi.domain();
                let perms: Vec<Vec<usize>> =
                    gens.iter().map(|p| equivariance::hyperplane_action(g, self.hyperplanes(), p)).collect();
                equivariance::orbit_under(&perms, &seed)
            }
            None => seed,
        }
    }

    fn apply(&mut self, kind: MoveKind, a: usize, b: usize) -> Result<()> {
        let g = self.psi.domain().clone();
        let pairs = self.orbit(a, b);
        let (step, next_psi, induced) = match kind {
            MoveKind::Fold => {
                let fr = if pairs.len() == 1 { fold_pair(&g, a, b)? } else { fold_collection(&g, &pairs)? };
                let next = factor_through_fold(&fr, &self.psi)?;
                let induced = match &self.actions {
                    Some(gens) => Some(equivariance::induce(&fr.zeta, gens, |m| factor_through_fold(&fr, m))?),
                    None => None,
                };
                (fr.zeta, next, induced)
            }
            MoveKind::Swell => {
                let sr = if pairs.len() == 1 { swell_pair(&g, a, b)? } else { swell_collection(&g, &pairs)? };
                let next = extend_through_swell(&sr, &self.psi)?;
                let induced = match &self.actions {
                    Some(gens) => Some(equivariance::induce(&sr.embedding, gens, |m| extend_through_swell(&sr, m))?),
                    None => None,
                };
                (sr.embedding, next, induced)
            }
        };
        self.eta = compose(&step, &self.eta)?;
        self.psi = next_psi;
        if let Some(act) = &induced {
            self.actions = Some(act.generator_images.clone());
        }
        self.moves.push(Move {
            kind,
            pairs,
            step_map: step,
            induced,
        });
        let m = self.current_measure();
        if m >= self.measure {
            return Err(Error::Internal("termination measure did not decrease"));
        }
        self.measure = m;
        Ok(())
    }

    /// Current id of a hyperplane that had id `j` after `from` moves.
    fn track(&self, j: usize, from: usize) -> usize {
        self.moves[from..].iter().fold(j, |j, m| m.step_map.image(j))
    }

    /// Folds and swells until `a` and `b` coincide.
    fn unify(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Ok(());
        }
        if self.psi.image(a) != self.psi.image(b) {
            return Err(Error::ImagesDiffer { a, b });
        }
        let hs = self.hyperplanes();
        if hs.in_contact(a, b) {
            return self.apply(MoveKind::Fold, a, b);
        }
        let seps = hs.separators(a, b);
        let mut chain = Vec::with_capacity(seps.len() + 1);
        chain.push(a);
        chain.extend(seps.iter().copied());
        let colliding = chain
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| chain[i + 1..].iter().map(move |&y| (x.min(y), x.max(y))))
            .filter(|&(x, y)| self.psi.image(x) == self.psi.image(y))
            .min_by_key(|&(x, y)| (hs.relation(x, y).separation_distance, x, y));
        let start = self.moves.len();
        match colliding {
            Some((x, y)) => self.unify(x, y)?,
            None => {
                let h = seps
                    .iter()
                    .copied()
                    .find(|&h| hs.is_tangent(a, h))
                    .ok_or(Error::Internal("no separator is tangent to the hyperplane"))?;
                self.apply(MoveKind::Swell, a, h)?;
            }
        }
        let (a, b) = (self.track(a, start), self.track(b, start));
        self.unify(a, b)
    }

    fn finish(self, original: &PPMap) -> Result<FactorizationTrace> {
        let replay = compose(&self.psi, &self.eta)?;
        if replay.vertex_map() != original.vertex_map() {
            return Err(Error::Internal("factorization does not reproduce the map"));
        }
        Ok(FactorizationTrace {
            moves: self.moves,
            eta: self.eta,
            iota: self.psi,
            mode: self.mode,
        })
    }
}

/// Moves making `a` and `b` coincide, and the induced map from the last
/// graph.
pub fn fold_unique_pair(psi: &PPMap, a: usize, b: usize) -> Result<(Vec<Move>, PPMap)> {
    let hs = psi.domain_hyperplanes();
    hs.checked(a)?;
    hs.checked(b)?;
    if a == b || psi.image(a) != psi.image(b) {
        return Err(Error::ImagesDiffer { a, b });
    }
    let mut run = Run::new(psi, Mode::MedianHull, None)?;
    run.unify(a, b)?;
    Ok((run.moves, run.psi))
}

pub fn factorize(psi: &PPMap, mode: Mode) -> Result<FactorizationTrace> {
    run(psi, mode, None)
}

pub(crate) fn run(psi: &PPMap, mode: Mode, actions: Option<Vec<Vec<usize>>>) -> Result<FactorizationTrace> {
    let mut run = Run::new(psi, mode, actions)?;
    loop {
        if let Some(v) = merged_pairs(&run.psi).first() {
            let (a, b) = v.pair;
            run.unify(a, b)?;
            continue;
        }
        if mode == Mode::ConvexHull {
            let hs = run.hyperplanes();
            let yh = run.psi.codomain_hyperplanes();
            let k = hs.len();
            let found = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).find(|&(a, b)| {
                hs.is_tangent(a, b) && yh.is_transverse(run.psi.image(a), run.psi.image(b))
            });
            if let Some((a, b)) = found {
                run.apply(MoveKind::Swell, a, b)?;
                continue;
            }
            let stray = (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .any(|(a, b)| !hs.is_transverse(a, b) && yh.is_transverse(run.psi.image(a), run.psi.image(b)));
            if stray {
                return Err(Error::Internal("transverse images without a tangent witness"));
            }
        }
        break;
    }
    run.finish(psi)
}
