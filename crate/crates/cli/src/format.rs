//! Line-based text formats for graphs, maps, groups and factorization
//! traces. Blank lines and lines starting with `#` are ignored everywhere.
//!
//! ```text
//! graph P2        map collapse       group flip
//! v v0            m v0 a             gen v0->v2 v2->v0
//! v v1            m v1 b
//! e v0 v1         m v2 a
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cubefold_core::hyperplane::{label, parse_label};
use cubefold_core::{Error, FactorizationTrace, Graph, PPMap, PairCollection};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Core(e) => e.name(),
            CliError::Io { .. } => "IoError",
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Significant lines with their 1-based numbers, split on whitespace.
fn lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
        .collect()
}

fn header<'a>(line: usize, toks: &[&'a str], keyword: &str) -> Result<&'a str, ParseError> {
    match toks {
        [k, name] if *k == keyword => Ok(name),
        [k] if *k == keyword => Ok(""),
        _ => Err(parse_err(line, format!("expected `{keyword} <name>`"))),
    }
}

fn graph_block(block: &[(usize, Vec<&str>)]) -> Result<(String, Graph), CliError> {
    let Some(((hl, htoks), rest)) = block.split_first() else {
        return Err(parse_err(0, "empty input").into());
    };
    let name = header(*hl, htoks, "graph")?.to_string();
    let mut vertices: BTreeMap<&str, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for (line, toks) in rest {
        match toks.as_slice() {
            ["v", id] => {
                if vertices.insert(id, *line).is_some() {
                    return Err(parse_err(*line, format!("duplicate vertex `{id}`")).into());
                }
            }
            ["e", a, b] => {
                if a == b {
                    return Err(parse_err(*line, format!("self-loop at `{a}`")).into());
                }
                edges.push((*line, *a, *b));
            }
            _ => return Err(parse_err(*line, "expected `v <id>` or `e <id> <id>`").into()),
        }
    }
    for &(line, a, b) in &edges {
        for x in [a, b] {
            if !vertices.contains_key(x) {
                return Err(parse_err(line, format!("unknown endpoint `{x}`")).into());
            }
        }
    }
    let g = Graph::new(vertices.keys().copied(), edges.iter().map(|&(_, a, b)| (a, b)))?;
    Ok((name, g))
}

pub fn parse_graph(text: &str) -> Result<(String, Graph), CliError> {
    graph_block(&lines(text))
}

/// Canonical form: vertices in the graph's order, edges sorted by index.
pub fn write_graph(name: &str, g: &Graph) -> String {
    let mut s = format!("graph {name}\n");
    for v in g.names() {
        let _ = writeln!(s, "v {v}");
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "e {} {}", g.name(u), g.name(v));
    }
    s
}

/// Line number, domain id, codomain id.
type MapLine<'a> = (usize, &'a str, &'a str);

fn map_pairs<'a>(block: &[(usize, Vec<&'a str>)]) -> Result<(String, Vec<MapLine<'a>>), ParseError> {
    let Some(((hl, htoks), rest)) = block.split_first() else {
        return Err(parse_err(0, "empty input"));
    };
    let name = header(*hl, htoks, "map")?.to_string();
    let mut out = Vec::new();
    for (line, toks) in rest {
        match toks.as_slice() {
            ["m", a, b] => out.push((*line, *a, *b)),
            _ => return Err(parse_err(*line, "expected `m <domain-id> <codomain-id>`")),
        }
    }
    Ok((name, out))
}

pub fn parse_map(text: &str, domain: &Graph, codomain: &Graph) -> Result<(String, PPMap), CliError> {
    let (name, pairs) = map_pairs(&lines(text))?;
    let mut f = vec![None; domain.vertex_count()];
    for (line, a, b) in pairs {
        let x = domain.index_of(a).ok_or_else(|| parse_err(line, format!("unknown domain vertex `{a}`")))?;
        let y = codomain.index_of(b).ok_or_else(|| parse_err(line, format!("unknown codomain vertex `{b}`")))?;
        if f[x].replace(y).is_some() {
            return Err(parse_err(line, format!("vertex `{a}` mapped twice")).into());
        }
    }
    let got = f.iter().filter(|x| x.is_some()).count();
    if got != f.len() {
        return Err(Error::MapNotTotal {
            expected: f.len(),
            got,
        }
        .into());
    }
    let psi = PPMap::new(domain.clone(), codomain.clone(), f.into_iter().map(Option::unwrap).collect())?;
    Ok((name, psi))
}

pub fn write_map(name: &str, psi: &PPMap) -> String {
    let mut s = format!("map {name}\n");
    for (x, &y) in psi.vertex_map().iter().enumerate() {
        let _ = writeln!(s, "m {} {}", psi.domain().name(x), psi.codomain().name(y));
    }
    s
}

fn gen_line(line: usize, toks: &[&str], g: &Graph) -> Result<Vec<usize>, ParseError> {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    let mut seen = vec![false; perm.len()];
    for tok in &toks[1..] {
        let (a, b) = tok.split_once("->").ok_or_else(|| parse_err(line, format!("expected `a->b`, got `{tok}`")))?;
        let x = g.index_of(a).ok_or_else(|| parse_err(line, format!("unknown vertex `{a}`")))?;
        let y = g.index_of(b).ok_or_else(|| parse_err(line, format!("unknown vertex `{b}`")))?;
        if std::mem::replace(&mut seen[x], true) {
            return Err(parse_err(line, format!("vertex `{a}` listed twice")));
        }
        perm[x] = y;
    }
    Ok(perm)
}

/// Generators of a group acting on `g`. Vertices a generator does not list
/// are fixed. An optional `group <name>` header may come first.
pub fn parse_group(text: &str, g: &Graph) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut gens = Vec::new();
    for (i, (line, toks)) in lines(text).into_iter().enumerate() {
        match toks.first() {
            Some(&"group") if i == 0 => {}
            Some(&"gen") => gens.push(gen_line(line, &toks, g)?),
            _ => return Err(parse_err(line, "expected `gen a->b ...`")),
        }
    }
    Ok(gens)
}

pub fn write_group(name: &str, g: &Graph, gens: &[Vec<usize>]) -> String {
    let mut s = format!("group {name}\n");
    for p in gens {
        s.push_str("gen");
        for (x, &y) in p.iter().enumerate() {
            if x != y {
                let _ = write!(s, " {}->{}", g.name(x), g.name(y));
            }
        }
        s.push('\n');
    }
    s
}

/// `A:B,C:D`, labels as printed by `hyperplanes`.
pub fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>, String> {
    s.split(',')
        .map(|p| {
            let (a, b) = p.trim().split_once(':').ok_or_else(|| format!("expected `A:B`, got `{p}`"))?;
            let lab = |x: &str| parse_label(x.trim()).ok_or_else(|| format!("bad hyperplane label `{x}`"));
            Ok((lab(a)?, lab(b)?))
        })
        .collect()
}

pub fn format_pairs(pairs: &PairCollection) -> String {
    let inner: Vec<String> = pairs.pairs().iter().map(|&(a, b)| format!("{}:{}", label(a), label(b))).collect();
    format!("{{{}}}", inner.join(","))
}

/// Vertex names in braces, space separated.
pub fn format_set<'a>(names: impl IntoIterator<Item = &'a str>) -> String {
    format!("{{{}}}", names.into_iter().collect::<Vec<_>>().join(" "))
}

/// The move lines, each intermediate graph (with induced generators in
/// equivariant runs) and the terminal map.
pub fn write_trace(t: &FactorizationTrace) -> String {
    let mut s = String::new();
    for (k, m) in t.moves.iter().enumerate() {
        let _ = writeln!(s, "move {} {} {}", k + 1, m.kind.as_str(), format_pairs(&m.pairs));
        s.push_str(&write_graph(&format!("step{}", k + 1), m.after()));
        if let Some(act) = &m.induced {
            for line in write_group("", m.after(), &act.generator_images).lines().skip(1) {
                let _ = writeln!(s, "{line}");
            }
        }
    }
    s.push_str(&write_map("iota", &t.iota));
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceMove {
    pub index: usize,
    pub kind: String,
    pub pairs: Vec<(usize, usize)>,
    pub graph: Graph,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedTrace {
    pub moves: Vec<TraceMove>,
    /// Terminal vertex to codomain vertex name.
    pub iota: Vec<(String, String)>,
}

pub fn parse_trace(text: &str) -> Result<ParsedTrace, CliError> {
    let all = lines(text);
    let starts: Vec<usize> = (0..all.len()).filter(|&i| matches!(all[i].1[0], "move" | "map")).collect();
    let mut moves = Vec::new();
    let mut iota = None;
    for (n, &i) in starts.iter().enumerate() {
        let end = starts.get(n + 1).copied().unwrap_or(all.len());
        let (line, toks) = &all[i];
        if toks[0] == "map" {
            let (_, pairs) = map_pairs(&all[i..end])?;
            iota = Some(pairs.into_iter().map(|(_, a, b)| (a.to_string(), b.to_string())).collect());
            continue;
        }
        let [_, k, kind, pairs] = toks.as_slice() else {
            return Err(parse_err(*line, "expected `move <k> fold|swell {A:B,...}`").into());
        };
        let index = k.parse().map_err(|_| parse_err(*line, format!("bad move number `{k}`")))?;
        if !matches!(*kind, "fold" | "swell") {
            return Err(parse_err(*line, format!("unknown move kind `{kind}`")).into());
        }
        let inner = pairs
            .strip_prefix('{')
            .and_then(|p| p.strip_suffix('}'))
            .ok_or_else(|| parse_err(*line, "pairs must be in braces"))?;
        let pairs = if inner.is_empty() { Vec::new() } else { parse_pairs(inner).map_err(|m| parse_err(*line, m))? };
        let body = &all[i + 1..end];
        let split = body.iter().position(|(_, t)| t[0] == "gen").unwrap_or(body.len());
        let (_, graph) = graph_block(&body[..split])?;
        let generators = body[split..]
            .iter()
            .map(|(l, t)| if t[0] == "gen" { gen_line(*l, t, &graph) } else { Err(parse_err(*l, "expected `gen`")) })
            .collect::<Result<_, _>>()?;
        moves.push(TraceMove {
            index,
            kind: kind.to_string(),
            pairs,
            graph,
            generators,
        });
    }
    let iota = iota.ok_or_else(|| parse_err(all.last().map_or(0, |l| l.0), "missing terminal map"))?;
    Ok(ParsedTrace { moves, iota })
}
