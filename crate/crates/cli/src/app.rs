//! The `cubefold` command line. [`run`] takes the argument vector and two
//! sinks so tests can drive it without a process.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubefold_core::cubulation::{cubulate, walls_from_hyperplanes};
use cubefold_core::equivariance::{factorize_equivariant, orbit_of_pairs, verify_group};
use cubefold_core::fold::first_fold;
use cubefold_core::hyperplane::{label, Hyperplanes};
use cubefold_core::median::{is_median, MedianGraph};
use cubefold_core::{classify, factorize, fold_collection, swell_collection, Graph, Mode, PPMap, PairCollection};

use crate::dot::export_dot;
use crate::format::{self, CliError};

#[derive(Parser, Debug)]
#[command(name = "cubefold", version, about = "Folds, swellings and factorizations of maps between median graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test whether a graph is median.
    Check { graph: PathBuf },
    /// List hyperplanes with their edges and halfspaces.
    Hyperplanes { graph: PathBuf },
    /// Median of three vertices.
    Median { graph: PathBuf, x: String, y: String, z: String },
    /// Median or convex hull of a vertex set.
    Hull(HullArgs),
    /// Cubulate the hyperplane wallspace and print the comparison map.
    Cubulate { graph: PathBuf },
    /// Fold hyperplane pairs together.
    Fold {
        #[arg(long, required = true, value_delimiter = ',', value_parser = pairs_arg)]
        pairs: Vec<(usize, usize)>,
        /// Only identify across the pair, without cubulating afterwards.
        #[arg(long)]
        first: bool,
        graph: PathBuf,
    },
    /// Make tangent hyperplane pairs transverse.
    Swell {
        #[arg(long, required = true, value_delimiter = ',', value_parser = pairs_arg)]
        pairs: Vec<(usize, usize)>,
        graph: PathBuf,
    },
    /// Classify a map between median graphs.
    Classify { domain: PathBuf, codomain: PathBuf, map: PathBuf },
    /// Factor a map into folds and swells followed by an embedding.
    Factorize(FactorizeArgs),
    /// Orbit of hyperplane pairs under a group.
    Orbit {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, required = true, value_delimiter = ',', value_parser = pairs_arg)]
        pairs: Vec<(usize, usize)>,
        graph: PathBuf,
    },
    /// Graphviz export coloured by hyperplane.
    ExportDot {
        /// Hyperplanes to draw thicker, e.g. `A,C`.
        #[arg(long, value_delimiter = ',', value_parser = label_arg)]
        highlight: Vec<usize>,
        graph: PathBuf,
    },
}

#[derive(Args, Debug)]
struct HullArgs {
    #[arg(long, conflicts_with = "convex", required_unless_present = "convex")]
    median: bool,
    #[arg(long)]
    convex: bool,
    graph: PathBuf,
    #[arg(required = true)]
    vertices: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Median,
    Convex,
}

#[derive(Args, Debug)]
struct FactorizeArgs {
    #[arg(long, value_enum, default_value = "median")]
    mode: ModeArg,
    /// Write the trace here instead of standard output.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Directory for one DOT file per move plus the terminal graph.
    #[arg(long)]
    emit_dot: Option<PathBuf>,
    #[arg(long, requires = "cogroup")]
    group: Option<PathBuf>,
    #[arg(long, requires = "group")]
    cogroup: Option<PathBuf>,
    domain: PathBuf,
    codomain: PathBuf,
    map: PathBuf,
}

fn pairs_arg(s: &str) -> Result<(usize, usize), String> {
    let v = format::parse_pairs(s)?;
    match v.as_slice() {
        [p] => Ok(*p),
        _ => Err(format!("expected one pair, got `{s}`")),
    }
}

fn label_arg(s: &str) -> Result<usize, String> {
    cubefold_core::hyperplane::parse_label(s).ok_or_else(|| format!("bad hyperplane label `{s}`"))
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on a domain or input error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "IoError: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", e.name());
            1
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn graph(path: &Path) -> Result<Graph, CliError> {
    Ok(format::parse_graph(&read(path)?)?.1)
}

fn graph_named(path: &Path) -> Result<(String, Graph), CliError> {
    format::parse_graph(&read(path)?)
}

fn names(g: &Graph, vs: impl IntoIterator<Item = usize>) -> String {
    format::format_set(vs.into_iter().map(|v| g.name(v)))
}

fn execute(cmd: Command) -> Result<String, CliError> {
    let mut s = String::new();
    match cmd {
        Command::Check { graph: p } => {
            let g = graph(&p)?;
            let r = is_median(&g);
            if r.is_median {
                s.push_str("median: true\n");
            } else if let Some([u0, u1, w0, w1, w2]) = r.k23_found {
                let n = |v| g.name(v);
                let _ = writeln!(s, "median: false (K_{{2,3}} witness {} {} | {} {} {})", n(u0), n(u1), n(w0), n(w1), n(w2));
            } else if let Some(c) = r.cube_condition_violation {
                let _ = writeln!(
                    s,
                    "median: false (open cube corner at {}: arms {})",
                    g.name(c.center),
                    names(&g, c.arms)
                );
            } else if let Some([x, y, z]) = r.witness {
                let _ = writeln!(s, "median: false (triple {} {} {} has no unique median)", g.name(x), g.name(y), g.name(z));
            }
            let _ = writeln!(s, "vertices: {}\nedges: {}", g.vertex_count(), g.edge_count());
        }
        Command::Hyperplanes { graph: p } => {
            let g = graph(&p)?;
            let hs = Hyperplanes::new(&g);
            for h in hs.iter() {
                let edges: Vec<String> = h.edge_pairs(&g).map(|(u, v)| format!("{}-{}", g.name(u), g.name(v))).collect();
                let _ = write!(s, "H{}: {{{}}} | ", h.id, edges.join(" "));
                match &h.halfspaces {
                    Some((plus, minus)) => {
                        let _ = writeln!(s, "plus={} minus={}", names(&g, plus.iter()), names(&g, minus.iter()));
                    }
                    None => s.push_str("plus=none minus=none\n"),
                }
            }
        }
        Command::Median { graph: p, x, y, z } => {
            let m = MedianGraph::new(graph(&p)?)?;
            let g = m.graph();
            let v = m.median(g.vertex(&x)?, g.vertex(&y)?, g.vertex(&z)?);
            let _ = writeln!(s, "{}", g.name(v));
        }
        Command::Hull(a) => {
            let m = MedianGraph::new(graph(&a.graph)?)?;
            let g = m.graph();
            let set = g.set_of(a.vertices.iter().map(|v| g.vertex(v)).collect::<Result<Vec<_>, _>>()?);
            let hull = if a.median { m.median_hull(&set)? } else { m.convex_hull(&set)? };
            let _ = writeln!(s, "{}", names(g, hull.iter()));
        }
        Command::Cubulate { graph: p } => {
            let (name, g) = graph_named(&p)?;
            let cub = cubulate(&walls_from_hyperplanes(&g)?)?;
            s.push_str(&format::write_graph(&format!("{name}_cubulated"), &cub.graph));
            s.push_str("map eta\n");
            for (v, &w) in cub.eta.iter().enumerate() {
                let _ = writeln!(s, "m {} {}", g.name(v), cub.graph.name(w));
            }
        }
        Command::Fold { pairs, first, graph: p } => {
            let (name, g) = graph_named(&p)?;
            if first {
                let &[(a, b)] = pairs.as_slice() else {
                    return Err(format::ParseError {
                        line: 0,
                        message: "--first takes exactly one pair".into(),
                    }
                    .into());
                };
                let (t, zeta) = first_fold(&g, a, b)?;
                s.push_str(&format::write_graph(&format!("{name}_folded"), &t));
                s.push_str(&format::write_map("zeta", &zeta));
            } else {
                let fr = fold_collection(&g, &PairCollection::new(pairs))?;
                s.push_str(&format::write_graph(&format!("{name}_folded"), &fr.target));
                s.push_str(&format::write_map("zeta", &fr.zeta));
                for class in fr.merged_classes.iter().filter(|c| c.len() > 1) {
                    let members: Vec<String> = class.iter().map(|&j| label(j)).collect();
                    let _ = writeln!(s, "merged {} -> {}", members.join(" "), label(fr.zeta.image(class[0])));
                }
            }
        }
        Command::Swell { pairs, graph: p } => {
            let (name, g) = graph_named(&p)?;
            let sr = swell_collection(&g, &PairCollection::new(pairs))?;
            s.push_str(&format::write_graph(&format!("{name}_swollen"), &sr.target));
            s.push_str(&format::write_map("embedding", &sr.embedding));
            for &(a, b) in sr.new_transversal_pairs.pairs() {
                let _ = writeln!(s, "transverse {}:{}", label(a), label(b));
            }
        }
        Command::Classify { domain, codomain, map } => {
            let psi = load_map(&domain, &codomain, &map)?;
            let c = classify(&psi)?;
            let _ = writeln!(s, "kind: {}", c.kind.as_str());
            if let Some((a, b)) = c.witness {
                let _ = writeln!(s, "witness: {}:{}", label(a), label(b));
            }
        }
        Command::Factorize(a) => s = factorize_cmd(a)?,
        Command::Orbit { group, pairs, graph: p } => {
            let g = graph(&p)?;
            let grp = verify_group(&g, format::parse_group(&read(&group)?, &g)?)?;
            let orbit = orbit_of_pairs(&grp, &PairCollection::new(pairs));
            let _ = writeln!(s, "order: {}\norbit: {}", grp.order(), format::format_pairs(&orbit));
        }
        Command::ExportDot { highlight, graph: p } => {
            let (name, g) = graph_named(&p)?;
            s = export_dot(&name, &g, &highlight);
        }
    }
    Ok(s)
}

fn load_map(domain: &Path, codomain: &Path, map: &Path) -> Result<PPMap, CliError> {
    let x = graph(domain)?;
    let y = graph(codomain)?;
    Ok(format::parse_map(&read(map)?, &x, &y)?.1)
}

fn factorize_cmd(a: FactorizeArgs) -> Result<String, CliError> {
    let psi = load_map(&a.domain, &a.codomain, &a.map)?;
    let mode = match a.mode {
        ModeArg::Median => Mode::MedianHull,
        ModeArg::Convex => Mode::ConvexHull,
    };
    let trace = match (&a.group, &a.cogroup) {
        (Some(gp), Some(cp)) => {
            let group = verify_group(psi.domain(), format::parse_group(&read(gp)?, psi.domain())?)?;
            let cogroup = verify_group(psi.codomain(), format::parse_group(&read(cp)?, psi.codomain())?)?;
            factorize_equivariant(&psi, &group, &cogroup, mode)?
        }
        _ => factorize(&psi, mode)?,
    };
    let text = format::write_trace(&trace);
    if let Some(dir) = &a.emit_dot {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        for (k, m) in trace.moves.iter().enumerate() {
            let touched: Vec<usize> = m.pairs.pairs().iter().map(|&(x, _)| m.step_map.image(x)).collect();
            let name = format!("move{}", k + 1);
            write_file(&dir.join(format!("{name}.dot")), &export_dot(&name, m.after(), &touched))?;
        }
        write_file(&dir.join("terminal.dot"), &export_dot("terminal", trace.terminal(), &[]))?;
    }
    match &a.trace {
        Some(path) => {
            write_file(path, &text)?;
            let t = trace.terminal();
            Ok(format!(
                "moves: {}\nterminal: {} vertices, {} edges\n",
                trace.moves.len(),
                t.vertex_count(),
                t.edge_count()
            ))
        }
        None => Ok(text),
    }
}
