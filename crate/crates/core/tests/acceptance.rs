//! The acceptance suite: one PASS or FAIL line per criterion. Exits with a
//! failure status if any criterion fails.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use common::*;
use cubefold_core::equivariance::{equivariant_fold, equivariant_swell, factorize_equivariant, verify_group};
use cubefold_core::families::*;
use cubefold_core::fold::first_fold;
use cubefold_core::iso::is_isomorphic;
use cubefold_core::median::{is_median, submedian_certificate};
use cubefold_core::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: cubefold_core::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {}: {e}", e.name()))
}

fn squares(g: &Graph) -> usize {
    g.four_cycles().len()
}

fn shape(g: &Graph) -> (usize, usize, usize) {
    (g.vertex_count(), g.edge_count(), squares(g))
}

/// P4 hyperplanes are A, B, C, D from left to right.
fn c1_fold_route() -> Outcome {
    let p4 = path(4);
    let fr = ok(fold_pair(&p4, 1, 2), "fold B:C")?;
    let (a, d) = (fr.zeta.image(0), fr.zeta.image(3));
    let fr2 = ok(fold_pair(&fr.target, a, d), "fold A:D")?;
    ensure(is_isomorphic(&fr2.target, &path(2)).is_some(), || format!("got {:?}", fr2.target))?;
    Ok(format!("terminal graph {:?} is a path of length two", shape(&fr2.target)))
}

fn c2_swell_route() -> Outcome {
    let p4 = path(4);
    let s1 = ok(swell_pair(&p4, 0, 1), "swell A:B")?;
    let h = s1.hyperplane_map().to_vec();
    let s2 = ok(swell_pair(&s1.target, h[0], h[2]), "swell A:C")?;
    let h: Vec<usize> = h.iter().map(|&j| s2.hyperplane_map()[j]).collect();
    let fr = ok(fold_pair(&s2.target, h[0], h[3]), "fold A:D")?;
    ensure(shape(&fr.target) == (6, 7, 2), || format!("shape {:?}", shape(&fr.target)))?;
    ensure(is_isomorphic(&fr.target, &two_squares()).is_some(), || "not two squares on an edge".into())?;
    Ok("6 vertices, 7 edges, 2 squares sharing an edge".into())
}

fn c3_mixed_routes() -> Outcome {
    let p4 = path(4);
    let fr = ok(fold_pair(&p4, 1, 2), "fold B:C")?;
    let sr = ok(swell_pair(&fr.target, fr.zeta.image(0), fr.zeta.image(3)), "swell A:D")?;
    let edge_and_square = Graph::new(["a", "b", "c", "d", "e"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "e")]).unwrap();
    ensure(shape(&sr.target) == (5, 5, 1), || format!("fold then swell shape {:?}", shape(&sr.target)))?;
    ensure(is_isomorphic(&sr.target, &edge_and_square).is_some(), || "not an edge and a square on a vertex".into())?;

    let mut g = p4;
    let mut ids: Vec<usize> = (0..4).collect();
    for other in [1, 2, 3] {
        let sr = ok(swell_pair(&g, ids[0], ids[other]), "swell")?;
        ids = ids.iter().map(|&j| sr.hyperplane_map()[j]).collect();
        g = sr.target;
    }
    ensure(shape(&g) == (8, 10, 3), || format!("three swells shape {:?}", shape(&g)))?;
    ensure(is_median(&g).is_median, || "chain is not median".into())?;
    Ok("(5, 5, 1) and a chain of three squares (8, 10, 3)".into())
}

fn c4_metric_law() -> Outcome {
    let fx = fixtures();
    let mut pairs = 0;
    for (name, g) in &fx {
        let hs = Hyperplanes::new(g);
        let d = dist(g);
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                let sep = ok(hs.separating(u, v), name)?.len();
                ensure(sep == d[u][v], || format!("{name}: {u},{v}: {sep} separators, distance {}", d[u][v]))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{} fixtures, {pairs} ordered pairs", fx.len()))
}

fn c5_fixed_point() -> Outcome {
    let fx = fixtures();
    for (name, g) in &fx {
        let cub = ok(cubulate(&ok(walls_from_hyperplanes(g), name)?), name)?;
        ensure(is_isomorphism(g, &cub.graph, &cub.eta), || format!("{name}: eta is not an isomorphism"))?;
    }
    Ok(format!("{} fixtures", fx.len()))
}

fn c6_order_independence() -> Outcome {
    let mut collections = 0;
    let mut orders = 0;
    for (name, g) in fixtures() {
        let hs = Hyperplanes::new(&g);
        let contact = pairs_where(&hs, |a, b| hs.in_contact(a, b));
        for pc in subsets(&contact, 3) {
            collections += 1;
            let label = classes(hs.len(), &pc);
            let same_class = |ids: &[usize]| {
                (0..ids.len()).all(|i| (0..ids.len()).all(|j| (ids[i] == ids[j]) == (label[i] == label[j])))
            };
            let whole = ok(fold_collection(&g, &collection(&pc)), name)?;
            ensure(same_class(whole.zeta.hyperplane_map()), || format!("{name} {pc:?}: collection merges wrong classes"))?;
            for order in permutations(&pc) {
                orders += 1;
                let (t, ids, _) = ok(iterated_fold(&g, &order), name)?;
                ensure(same_class(&ids), || format!("{name} {order:?}: iterated folds merge wrong classes"))?;
                ensure(is_isomorphic(&t, &whole.target).is_some(), || format!("{name} {order:?}: targets differ"))?;
            }
        }
    }
    Ok(format!("{collections} collections, {orders} orders"))
}

struct SwellCase {
    name: &'static str,
    sr: SwellResult,
}

fn swell_cases() -> Result<Vec<SwellCase>, String> {
    let mut out = Vec::new();
    for (name, g) in fixtures() {
        let hs = Hyperplanes::new(&g);
        let tangent = pairs_where(&hs, |a, b| hs.is_tangent(a, b));
        for pc in subsets(&tangent, 3) {
            if pc.len() == 1 {
                out.push(SwellCase { name, sr: ok(swell_pair(&g, pc[0].0, pc[0].1), name)? });
            }
            out.push(SwellCase { name, sr: ok(swell_collection(&g, &collection(&pc)), name)? });
        }
    }
    Ok(out)
}

fn c7_swelling_contract() -> Outcome {
    let cases = swell_cases()?;
    for SwellCase { name, sr } in &cases {
        let (g, t, f) = (&sr.source, &sr.target, sr.embedding.vertex_map());
        let (dg, dt) = (dist(g), dist(t));
        let n = g.vertex_count();
        ensure((0..n).all(|u| (0..n).all(|v| dg[u][v] == dt[f[u]][f[v]])), || format!("{name}: not isometric"))?;
        let hull = convex_hull(t, &image(&sr.embedding));
        ensure(hull.len() == t.vertex_count(), || format!("{name}: convex hull of the image is not the target"))?;
        let (hg, ht) = (Hyperplanes::new(g), Hyperplanes::new(t));
        ensure(hg.len() == ht.len(), || format!("{name}: hyperplane count {} -> {}", hg.len(), ht.len()))?;
        let h = sr.hyperplane_map();
        for a in 0..hg.len() {
            for b in a + 1..hg.len() {
                let want = hg.is_transverse(a, b) || sr.new_transversal_pairs.contains(a, b);
                ensure(ht.is_transverse(h[a], h[b]) == want, || format!("{name}: transversality of {a},{b}"))?;
            }
        }
    }
    Ok(format!("{} swellings", cases.len()))
}

fn c8_spot_metric() -> Outcome {
    let cases = swell_cases()?;
    let mut checked = 0;
    for SwellCase { name, sr } in &cases {
        let t = &sr.target;
        if t.vertex_count() > 60 {
            continue;
        }
        checked += 1;
        let d = dist(t);
        for u in 0..t.vertex_count() {
            for v in 0..t.vertex_count() {
                let diff = sr.spots[u].symmetric_difference_count(&sr.spots[v]);
                ensure(diff == d[u][v], || format!("{name}: spots {u},{v} differ on {diff}, distance {}", d[u][v]))?;
            }
        }
    }
    Ok(format!("{checked} targets"))
}

fn random_domain(rng: &mut StdRng) -> Graph {
    match rng.gen_range(0..6) {
        0 => path(rng.gen_range(2..=5)),
        1 => grid(rng.gen_range(2..=3), rng.gen_range(2..=3)),
        2 => {
            let n = rng.gen_range(2..=6);
            let parents: Vec<usize> = (1..n).map(|i| rng.gen_range(0..i)).collect();
            tree(&parents)
        }
        3 => {
            let mut rows: Vec<usize> = (0..rng.gen_range(2..=3)).map(|_| rng.gen_range(1..=3)).collect();
            rows.sort_unstable_by(|a, b| b.cmp(a));
            young(&rows)
        }
        4 => staircase(rng.gen_range(1..=3)),
        _ => product(&path(1), &star(3)),
    }
}

/// A random composite of folds and swellings out of a random domain.
fn random_map(rng: &mut StdRng) -> cubefold_core::Result<PPMap> {
    let x = random_domain(rng);
    let mut psi = PPMap::identity(&x);
    for _ in 0..rng.gen_range(1..=4) {
        let y = psi.codomain().clone();
        if y.vertex_count() > 30 {
            break;
        }
        let hs = Hyperplanes::new(&y);
        let contact = pairs_where(&hs, |a, b| hs.in_contact(a, b));
        let tangent = pairs_where(&hs, |a, b| hs.is_tangent(a, b));
        let step = if rng.gen_bool(0.5) && !tangent.is_empty() {
            let &(a, b) = tangent.choose(rng).expect("nonempty");
            swell_pair(&y, a, b)?.embedding
        } else if let Some(&(a, b)) = contact.choose(rng) {
            fold_pair(&y, a, b)?.zeta
        } else {
            break;
        };
        psi = compose(&step, &psi)?;
    }
    Ok(psi)
}

fn c9_factorization() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut maps = 0;
    let mut moves = 0;
    while maps < 30 {
        let psi = ok(random_map(&mut rng), "generator")?;
        if psi.hyperplane_map().iter().collect::<BTreeSet<_>>().len() == psi.domain_hyperplanes().len()
            && maps % 3 != 0
        {
            // Keep most of the corpus away from maps that are already embeddings.
            continue;
        }
        maps += 1;
        let y = psi.codomain();
        for mode in [Mode::MedianHull, Mode::ConvexHull] {
            let t = ok(factorize(&psi, mode), "factorize")?;
            moves += t.moves.len();
            let replay = ok(compose(&t.iota, &t.eta), "compose")?;
            ensure(replay.vertex_map() == psi.vertex_map(), || format!("map {maps}: iota . eta differs from psi"))?;
            let kind = ok(classify(&t.iota), "classify")?.kind;
            let (bar, hull) = match mode {
                Mode::MedianHull => (MapKind::IsometricEmbedding, median_hull(y, &image(&psi))),
                Mode::ConvexHull => (MapKind::ConvexEmbedding, convex_hull(y, &image(&psi))),
            };
            ensure(kind >= bar, || format!("map {maps} {mode:?}: iota is only {kind:?}"))?;
            ensure(image(&t.iota) == hull, || format!("map {maps} {mode:?}: image of iota is not the hull"))?;
        }
    }
    Ok(format!("{maps} maps, both modes, {moves} moves"))
}

fn c10_submedian() -> Outcome {
    let mut folds = 0;
    for (name, g) in fixtures() {
        let hs = Hyperplanes::new(&g);
        for (a, b) in pairs_where(&hs, |a, b| hs.in_contact(a, b)) {
            let (z, _) = ok(first_fold(&g, a, b), name)?;
            let cert = submedian_certificate(&z);
            ensure(cert.is_consistent(), || format!("{name} {a}:{b}: {cert:?}"))?;
            folds += 1;
        }
    }
    let bad = refolded();
    let cert = submedian_certificate(&bad);
    ensure(!cert.parity_injective, || format!("refolded fixture passes: {cert:?}"))?;
    let (u, v) = cert.collision.ok_or("no collision reported")?;
    Ok(format!(
        "{folds} first folds pass; refolded fixture (three first folds) collides at {} and {}",
        bad.name(u),
        bad.name(v)
    ))
}

/// Checks an induced action against its step map.
fn check_square(step: &PPMap, gens: &[Vec<usize>], images: &[Vec<usize>], what: &str) -> Result<(), String> {
    ensure(gens.len() == images.len(), || format!("{what}: generator count"))?;
    for (i, (s, t)) in gens.iter().zip(images).enumerate() {
        ensure(is_automorphism(step.codomain(), t), || format!("{what}: image of generator {i} is not an automorphism"))?;
        for x in 0..step.domain().vertex_count() {
            ensure(t[step.apply(x)] == step.apply(s[x]), || format!("{what}: generator {i} square fails at {x}"))?;
        }
    }
    Ok(())
}

fn c11_equivariance() -> Outcome {
    let p4 = path(4);
    let flip = ok(verify_group(&p4, vec![vec![4, 3, 2, 1, 0]]), "flip")?;
    let c4 = cycle(4);
    let rot = ok(verify_group(&c4, vec![vec![1, 2, 3, 0]]), "rotation")?;
    let mut squares_checked = 0;
    for (g, group) in [(&p4, &flip), (&c4, &rot)] {
        let hs = Hyperplanes::new(g);
        for (a, b) in pairs_where(&hs, |a, b| hs.in_contact(a, b)) {
            let (fr, act) = ok(equivariant_fold(g, group, a, b), "equivariant fold")?;
            check_square(&fr.zeta, group.generators(), &act.generator_images, "fold")?;
            squares_checked += 1;
        }
        for (a, b) in pairs_where(&hs, |a, b| hs.is_tangent(a, b)) {
            let (sr, act) = ok(equivariant_swell(g, group, a, b), "equivariant swell")?;
            check_square(&sr.embedding, group.generators(), &act.generator_images, "swell")?;
            squares_checked += 1;
        }
    }

    // P4 wrapped around a square, with the flip matching a reflection; the
    // rotating square onto an edge; P4 onto P2 with flip matching flip.
    let reflect = ok(verify_group(&c4, vec![vec![0, 3, 2, 1]]), "reflection")?;
    let wrap = ok(PPMap::new(p4.clone(), c4.clone(), vec![0, 1, 2, 3, 0]), "wrap")?;
    let p1 = path(1);
    let swap = ok(verify_group(&p1, vec![vec![1, 0]]), "swap")?;
    let collapse = ok(PPMap::new(c4.clone(), p1, vec![0, 1, 0, 1]), "collapse")?;
    let p2 = path(2);
    let p2flip = ok(verify_group(&p2, vec![vec![2, 1, 0]]), "flip of P2")?;
    let onto_p2 = ok(PPMap::new(p4.clone(), p2, vec![1, 0, 1, 2, 1]), "P4 onto P2")?;
    let mut moves = 0;
    for (psi, group, cogroup) in [(&wrap, &flip, &reflect), (&collapse, &rot, &swap), (&onto_p2, &flip, &p2flip)] {
        for mode in [Mode::MedianHull, Mode::ConvexHull] {
            let t = ok(factorize_equivariant(psi, group, cogroup, mode), "equivariant factorization")?;
            let mut gens = group.generators().to_vec();
            for m in &t.moves {
                let act = m.induced.as_ref().ok_or("move without induced action")?;
                check_square(&m.step_map, &gens, &act.generator_images, m.kind.as_str())?;
                gens = act.generator_images.clone();
                moves += 1;
            }
            for (s, c) in gens.iter().zip(cogroup.generators()) {
                ensure((0..s.len()).all(|x| t.iota.apply(s[x]) == c[t.iota.apply(x)]), || "iota is not equivariant".into())?;
            }
            ensure(!t.moves.is_empty(), || "expected at least one move".into())?;
        }
    }
    Ok(format!("{squares_checked} single moves, {moves} factorization moves"))
}

fn c12_classification() -> Outcome {
    let mut maps: Vec<PPMap> = Vec::new();
    for (_, g) in fixtures() {
        maps.push(PPMap::identity(&g));
        // Slice inclusion into the product with an edge: vertex x goes to x.v0.
        let prism = product(&g, &path(1));
        maps.push(ok(PPMap::new(g.clone(), prism, (0..g.vertex_count()).map(|x| 2 * x).collect()), "slice")?);
        let hs = Hyperplanes::new(&g);
        for (a, b) in pairs_where(&hs, |a, b| hs.in_contact(a, b)) {
            maps.push(ok(fold_pair(&g, a, b), "fold")?.zeta);
        }
    }
    for case in swell_cases()? {
        maps.push(case.sr.embedding);
    }
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..40 {
        let psi = ok(random_map(&mut rng), "generator")?;
        for mode in [Mode::MedianHull, Mode::ConvexHull] {
            maps.push(ok(factorize(&psi, mode), "factorize")?.iota);
        }
        maps.push(psi);
    }
    maps.retain(|m| m.domain().vertex_count() <= 40 && m.codomain().vertex_count() <= 40);
    let mut kinds = BTreeSet::new();
    for m in &maps {
        let got = ok(classify(m), "classify")?.kind;
        let want = metric_kind(m);
        ensure(got == want, || format!("classify says {got:?}, oracle says {want:?} for {:?}", m.vertex_map()))?;
        kinds.insert(got.as_str());
    }
    Ok(format!("{} maps, kinds seen: {}", maps.len(), kinds.into_iter().collect::<Vec<_>>().join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("fold route on P4", c1_fold_route),
        ("swell route on P4", c2_swell_route),
        ("mixed fold and swell routes on P4", c3_mixed_routes),
        ("separating hyperplanes count distance", c4_metric_law),
        ("cubulating a median graph gives it back", c5_fixed_point),
        ("fold order independence", c6_order_independence),
        ("swelling contract", c7_swelling_contract),
        ("spot metric", c8_spot_metric),
        ("factorization corpus", c9_factorization),
        ("first folds are submedian", c10_submedian),
        ("equivariance squares commute", c11_equivariance),
        ("classification matches metric oracle", c12_classification),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
