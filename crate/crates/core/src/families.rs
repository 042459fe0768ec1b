//! Standard small graphs used as fixtures: paths, cycles, grids, cubes,
//! trees, staircases and a few non-median witnesses.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::fold::identify_across;
use crate::graph::Graph;
use crate::hyperplane::Hyperplanes;

fn build(names: Vec<String>, edges: Vec<(usize, usize)>) -> Graph {
    Graph::from_indexed(names, &edges).expect("family graphs are valid").0
}

/// Path with `n` edges on `v0..vn`.
pub fn path(n: usize) -> Graph {
    let names = (0..=n).map(|i| format!("v{i}")).collect();
    build(names, (0..n).map(|i| (i, i + 1)).collect())
}

/// Cycle on `v0..v{n-1}`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let names = (0..n).map(|i| format!("v{i}")).collect();
    build(names, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// The `d`-cube on binary strings of length `d`.
pub fn hypercube(d: usize) -> Graph {
    let n = 1usize << d;
    let names = (0..n)
        .map(|x| (0..d).rev().map(|b| if x >> b & 1 == 1 { '1' } else { '0' }).collect())
        .collect();
    let mut edges = Vec::new();
    for x in 0..n {
        for b in 0..d {
            let y = x ^ (1 << b);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    build(names, edges)
}

/// Grid with `rows` x `cols` vertices named `r{i}c{j}`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |i: usize, j: usize| i * cols + j;
    let names = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| format!("r{i}c{j}")))
        .collect();
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
        }
    }
    build(names, edges)
}

/// Star with centre `c` and leaves `l1..lk`.
pub fn star(k: usize) -> Graph {
    let mut names: Vec<String> = (1..=k).map(|i| format!("l{i}")).collect();
    names.push("c".into());
    build(names, (0..k).map(|i| (i, k)).collect())
}

/// Tripod with centre `c` and leaves `a`, `b`, `d`.
pub fn tripod() -> Graph {
    Graph::new(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("c", "d")]).expect("valid")
}

/// Complete bipartite graph with parts `{u0,u1}` and `{w0,w1,w2}`.
pub fn k23() -> Graph {
    let names = ["u0", "u1", "w0", "w1", "w2"].map(String::from).to_vec();
    let edges = (0..2).flat_map(|u| (2..5).map(move |w| (u, w))).collect();
    build(names, edges)
}

/// Three squares around a vertex without the closing cube vertex: the
/// 3-cube minus `111`.
pub fn corner() -> Graph {
    let q = hypercube(3);
    let names: Vec<String> = q.names().iter().filter(|s| *s != "111").cloned().collect();
    let edges: Vec<(&str, &str)> = q
        .edges()
        .iter()
        .map(|&(u, v)| (q.name(u), q.name(v)))
        .filter(|&(a, b)| a != "111" && b != "111")
        .collect();
    Graph::new(names, edges).expect("valid")
}

/// Staircase of `k` squares: square `i` has lower-left corner `(i, i)`
/// in the integer lattice, consecutive squares share one vertex.
/// Vertices are named `p{x}_{y}`.
pub fn staircase(k: usize) -> Graph {
    let mut pts: Vec<(usize, usize)> = Vec::new();
    let mut edges: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for i in 0..k {
        let sq = [(i, i), (i + 1, i), (i + 1, i + 1), (i, i + 1)];
        for p in sq {
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        for t in 0..4 {
            edges.push((sq[t], sq[(t + 1) % 4]));
        }
    }
    let names: Vec<String> = pts.iter().map(|&(x, y)| format!("p{x}_{y}")).collect();
    let pos = |p: (usize, usize)| pts.iter().position(|&q| q == p).expect("point");
    let edges = edges.into_iter().map(|(a, b)| (pos(a), pos(b))).collect();
    build(names, edges)
}

/// Cartesian product; vertices are named `a.b`.
pub fn product(g: &Graph, h: &Graph) -> Graph {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    let names = (0..n)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}.{}", g.name(i), h.name(j)))
        .collect();
    let id = |i: usize, j: usize| i * m + j;
    let mut edges = Vec::new();
    for &(a, b) in g.edges() {
        for j in 0..m {
            edges.push((id(a, j), id(b, j)));
        }
    }
    for &(a, b) in h.edges() {
        for i in 0..n {
            edges.push((id(i, a), id(i, b)));
        }
    }
    build(names, edges)
}

/// Tree on `t0..t{n-1}` where vertex `i > 0` hangs off `parents[i-1]`.
pub fn tree(parents: &[usize]) -> Graph {
    let n = parents.len() + 1;
    let names = (0..n).map(|i| format!("t{i}")).collect();
    let edges = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
    build(names, edges)
}

/// Two 4-cycles sharing one edge, labelled as the target of the
/// non-canonical folding example: `p q r u t` along the bottom-left path
/// and `s` closing the second square.
///
/// ```text
/// p --- s --- t
/// |     |     |
/// q --- r --- u
/// ```
pub fn two_squares() -> Graph {
    Graph::new(
        ["p", "q", "r", "s", "t", "u"],
        [("p", "q"), ("q", "r"), ("r", "u"), ("u", "t"), ("p", "s"), ("s", "t"), ("s", "r")],
    )
    .expect("valid")
}

/// Lattice points `(i, j)` with `j <= rows[i]`, named `y{i}_{j}`. Rows
/// must be non-increasing for the graph to be median.
pub fn young(rows: &[usize]) -> Graph {
    let mut names = Vec::new();
    let mut start = Vec::new();
    for (i, &r) in rows.iter().enumerate() {
        start.push(names.len());
        names.extend((0..=r).map(|j| format!("y{i}_{j}")));
    }
    let mut edges = Vec::new();
    for (i, &r) in rows.iter().enumerate() {
        for j in 0..=r {
            if j < r {
                edges.push((start[i] + j, start[i] + j + 1));
            }
            if i + 1 < rows.len() && j <= rows[i + 1] {
                edges.push((start[i] + j, start[i + 1] + j));
            }
        }
    }
    build(names, edges)
}

/// Hyperplane pairs, each given by one edge of either hyperplane, of three
/// successive first folds of `young(&[3, 3, 2, 1])`.
pub const REFOLD_STEPS: [[(&str, &str); 2]; 3] = [
    [("y0_0", "y0_1"), ("y0_0", "y1_0")],
    [("y0_0|y1_1", "y1_2"), ("y2_0", "y3_0")],
    [("y0_0|y1_1", "y2_1"), ("y0_2", "y0_3")],
];

/// The graph left by [`REFOLD_STEPS`]. The first fold is of a median
/// graph; the later ones identify across hyperplanes of non-median graphs.
/// Two of its vertices cross every parallelism class with equal parity.
pub fn refolded() -> Graph {
    let mut g = young(&[3, 3, 2, 1]);
    for [(a, b), (c, d)] in REFOLD_STEPS {
        let hs = Hyperplanes::new(&g);
        let class = |u: &str, v: &str| {
            hs.class_of(&g, g.vertex(u).expect("vertex"), g.vertex(v).expect("vertex")).expect("edge")
        };
        let (x, y) = (class(a, b), class(c, d));
        g = identify_across(&g, &hs, x, y).expect("involutions defined").0;
    }
    g
}
