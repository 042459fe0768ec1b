//! Fixtures and brute-force oracles shared by the integration tests. The
//! oracles use only breadth-first search and set closure, never the
//! library's own median or hyperplane machinery.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use cubefold_core::families::*;
use cubefold_core::{fold_pair, Graph, Hyperplanes, MapKind, PPMap, PairCollection};

pub fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("P1", path(1)),
        ("P2", path(2)),
        ("P3", path(3)),
        ("P4", path(4)),
        ("P5", path(5)),
        ("C4", cycle(4)),
        ("grid2x3", grid(2, 3)),
        ("grid2x4", grid(2, 4)),
        ("grid3x3", grid(3, 3)),
        ("grid3x4", grid(3, 4)),
        ("Q3", hypercube(3)),
        ("Q4", hypercube(4)),
        ("star3", star(3)),
        ("tripod", tripod()),
        ("tree6", tree(&[0, 1, 1, 0, 4])),
        ("staircase2", staircase(2)),
        ("staircase3", staircase(3)),
        ("staircase4", staircase(4)),
        ("two_squares", two_squares()),
        ("C4xP2", product(&cycle(4), &path(2))),
        ("star3xP1", product(&star(3), &path(1))),
        ("young3321", young(&[3, 3, 2, 1])),
    ]
}

/// All-pairs distances by breadth-first search.
pub fn dist(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in g.neighbors(u) {
                    if d[w] == usize::MAX {
                        d[w] = d[u] + 1;
                        q.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

fn on_geodesic(d: &[Vec<usize>], a: usize, w: usize, b: usize) -> bool {
    d[a][w] + d[w][b] == d[a][b]
}

/// Closure under taking geodesics.
pub fn convex_hull(g: &Graph, s: &BTreeSet<usize>) -> BTreeSet<usize> {
    let d = dist(g);
    let mut cur = s.clone();
    loop {
        let mut next = cur.clone();
        for &a in &cur {
            for &b in &cur {
                next.extend((0..g.vertex_count()).filter(|&w| on_geodesic(&d, a, w, b)));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Closure under medians of triples, medians found by distance sums.
pub fn median_hull(g: &Graph, s: &BTreeSet<usize>) -> BTreeSet<usize> {
    let d = dist(g);
    let mut cur = s.clone();
    loop {
        let pts: Vec<usize> = cur.iter().copied().collect();
        let mut next = cur.clone();
        for &x in &pts {
            for &y in &pts {
                for &z in &pts {
                    let m = (0..g.vertex_count())
                        .find(|&m| on_geodesic(&d, x, m, y) && on_geodesic(&d, y, m, z) && on_geodesic(&d, x, m, z))
                        .expect("median graph");
                    next.insert(m);
                }
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn image(psi: &PPMap) -> BTreeSet<usize> {
    psi.vertex_map().iter().copied().collect()
}

/// Classification from distances, convexity of the image and bijectivity.
pub fn metric_kind(psi: &PPMap) -> MapKind {
    let dd = dist(psi.domain());
    let cd = dist(psi.codomain());
    let f = psi.vertex_map();
    let n = f.len();
    if (0..n).any(|u| (0..n).any(|v| dd[u][v] != cd[f[u]][f[v]])) {
        return MapKind::ParallelPreserving;
    }
    let img = image(psi);
    if convex_hull(psi.codomain(), &img) != img {
        MapKind::IsometricEmbedding
    } else if img.len() == psi.codomain().vertex_count() {
        MapKind::Isometry
    } else {
        MapKind::ConvexEmbedding
    }
}

pub fn is_automorphism(g: &Graph, p: &[usize]) -> bool {
    let set: BTreeSet<usize> = p.iter().copied().collect();
    p.len() == g.vertex_count()
        && set.len() == p.len()
        && p.iter().all(|&x| x < p.len())
        && g.edges().iter().all(|&(u, v)| g.has_edge(p[u], p[v]))
}

/// Isomorphism check given a candidate bijection.
pub fn is_isomorphism(g: &Graph, h: &Graph, f: &[usize]) -> bool {
    let set: BTreeSet<usize> = f.iter().copied().collect();
    g.vertex_count() == h.vertex_count()
        && g.edge_count() == h.edge_count()
        && set.len() == f.len()
        && g.edges().iter().all(|&(u, v)| h.has_edge(f[u], f[v]))
}

/// Unordered hyperplane pairs satisfying `keep`.
pub fn pairs_where(hs: &Hyperplanes, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let k = hs.len();
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).filter(|&(a, b)| keep(a, b)).collect()
}

/// Every subset of `items` with between one and `max` elements.
pub fn subsets<T: Copy>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    fn go<T: Copy>(items: &[T], start: usize, max: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, i + 1, max, cur, out);
            cur.pop();
        }
    }
    go(items, 0, max, &mut Vec::new(), &mut out);
    out
}

pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

/// Folds the pairs one at a time in the given order, following ids through
/// each fold. Returns the last graph and the composite hyperplane map.
pub fn iterated_fold(g: &Graph, order: &[(usize, usize)]) -> cubefold_core::Result<(Graph, Vec<usize>, PPMap)> {
    let k = Hyperplanes::new(g).len();
    let mut ids: Vec<usize> = (0..k).collect();
    let mut cur = g.clone();
    let mut zeta = PPMap::identity(g);
    for &(a, b) in order {
        let (x, y) = (ids[a], ids[b]);
        if x == y {
            continue;
        }
        let fr = fold_pair(&cur, x, y)?;
        ids = ids.iter().map(|&j| fr.zeta.image(j)).collect();
        zeta = cubefold_core::compose(&fr.zeta, &zeta)?;
        cur = fr.target;
    }
    Ok((cur, ids, zeta))
}

/// Classes of the relation generated by `pairs` on `0..k`, as labels.
pub fn classes(k: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..k).collect();
    loop {
        let mut changed = false;
        for &(a, b) in pairs {
            let m = label[a].min(label[b]);
            for l in [a, b] {
                if label[l] != m {
                    label[l] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

pub fn collection(pairs: &[(usize, usize)]) -> PairCollection {
    PairCollection::new(pairs.iter().copied())
}
