//! Small-graph isomorphism: colour refinement followed by backtracking.
//!
//! Intended as a test oracle for graphs of a few hundred vertices at most.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Returns a bijection `f` with `u ~ v` in `g1` iff `f[u] ~ f[v]` in `g2`.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let (c1, c2) = refine(g1, g2)?;

    // Visit vertices in BFS order from a member of the rarest colour class so
    // that each new vertex has already-mapped neighbours to constrain it.
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &c1 {
        *freq.entry(c).or_default() += 1;
    }
    let start = (0..n).min_by_key(|&v| (freq[&c1[v]], v)).unwrap_or(0);
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[start] = true;
    order.push(start);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g1.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g1, g2, &c1, &c2, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g1: &Graph,
    g2: &Graph,
    c1: &[usize],
    c2: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&u) = order.get(depth) else {
        return true;
    };
    // If some neighbour is mapped, candidates are restricted to its image's
    // neighbourhood.
    let anchor = g1.neighbors(u).iter().find(|&&w| map[w] != usize::MAX).copied();
    let candidates: Vec<usize> = match anchor {
        Some(w) => g2.neighbors(map[w]).to_vec(),
        None => (0..g2.vertex_count()).collect(),
    };
    for x in candidates {
        if used[x] || c2[x] != c1[u] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| g1.has_edge(u, w) == g2.has_edge(x, map[w]));
        if !consistent {
            continue;
        }
        map[u] = x;
        used[x] = true;
        if extend(g1, g2, c1, c2, order, depth + 1, map, used) {
            return true;
        }
        map[u] = usize::MAX;
        used[x] = false;
    }
    false
}

/// Joint colour refinement of both graphs. Returns `None` when the colour
/// histograms already disagree.
fn refine(g1: &Graph, g2: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g1.vertex_count();
    let mut c1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let mut c2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    let mut classes = 0;
    loop {
        let sig = |g: &Graph, c: &[usize], v: usize| {
            let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| c[w]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let s1: Vec<_> = (0..n).map(|v| sig(g1, &c1, v)).collect();
        let s2: Vec<_> = (0..n).map(|v| sig(g2, &c2, v)).collect();
        let mut palette: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in s1.iter().chain(s2.iter()) {
            let next = palette.len();
            palette.entry(s).or_insert(next);
        }
        let n1: Vec<usize> = s1.iter().map(|s| palette[s]).collect();
        let n2: Vec<usize> = s2.iter().map(|s| palette[s]).collect();
        let count = palette.len();
        let mut h1 = n1.clone();
        let mut h2 = n2.clone();
        h1.sort_unstable();
        h2.sort_unstable();
        if h1 != h2 {
            return None;
        }
        c1 = n1;
        c2 = n2;
        if count == classes {
            return Some((c1, c2));
        }
        classes = count;
    }
}
