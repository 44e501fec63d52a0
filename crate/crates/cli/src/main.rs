use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gentle_ext::extensions::{cluster_triangles, ext_basis, ext_report, snake_graph, ShortExactSequence};
use gentle_ext::oracle::Prepared;
use gentle_ext::snake::{sign_function_from_string, string_from_sequence, string_from_signed_snake_graph, Piece};
use gentle_ext::strings::all_strings;
use gentle_ext::{
    derive_quiver, enumerate_crossings, ext1_dim_oracle, load_triangulation, parse_string, smooth_checked, Error,
    Quiver, SnakeGraph, StringWord, Walk,
};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Extensions between string modules of gentle algebras from triangulated
/// surfaces.
///
/// Every command reads a triangulation document. Exit status is 0 on
/// success, 1 on invalid input and 2 when two independent computations
/// disagree.
#[derive(Parser)]
#[command(name = "gentle-ext", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Verb {
    /// Print the quiver with potential of the triangulation.
    Quiver {
        triangulation: PathBuf,
    },
    /// Check that a string is valid.
    Validate {
        triangulation: PathBuf,
        #[command(flatten)]
        arc: FirstArc,
    },
    /// Print the snake graph of an arc and its sign function.
    Snake {
        triangulation: PathBuf,
        #[command(flatten)]
        arc: FirstArc,
    },
    /// List the crossings of two arcs in a stable order.
    Crossings {
        triangulation: PathBuf,
        #[command(flatten)]
        arcs: TwoArcs,
    },
    /// Smooth one crossing, by strings and by snake graphs.
    Smooth {
        triangulation: PathBuf,
        #[command(flatten)]
        arcs: TwoArcs,
        /// Index into the `crossings` listing.
        #[arg(long)]
        crossing: usize,
    },
    /// Extension dimensions in both directions, with bases and triangles.
    Ext {
        triangulation: PathBuf,
        #[command(flatten)]
        arcs: TwoArcs,
    },
    /// Extension dimensions computed by linear algebra.
    OracleExt {
        triangulation: PathBuf,
        #[command(flatten)]
        arcs: TwoArcs,
    },
    /// Compare crossings with the linear-algebra oracle on all strings up to
    /// a length, and check the snake graph route on every crossing.
    Check {
        triangulation: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
}

#[derive(Args)]
struct FirstArc {
    /// Arc as a string, e.g. `1>2<3`.
    #[arg(long, required_unless_present = "seq1", conflicts_with = "seq1")]
    arc1: Option<String>,
    /// Arc as the comma-separated arcs of the triangulation it crosses.
    #[arg(long, value_delimiter = ',')]
    seq1: Option<Vec<String>>,
}

#[derive(Args)]
struct TwoArcs {
    #[command(flatten)]
    first: FirstArc,
    /// Second arc as a string.
    #[arg(long, required_unless_present = "seq2", conflicts_with = "seq2")]
    arc2: Option<String>,
    /// Second arc as a crossing sequence.
    #[arg(long, value_delimiter = ',')]
    seq2: Option<Vec<String>>,
}

fn read_arc(q: &Quiver, arc: &Option<String>, seq: &Option<Vec<String>>) -> gentle_ext::Result<StringWord> {
    match (arc, seq) {
        (Some(s), _) => parse_string(q, s),
        (None, Some(seq)) => {
            let t = q.triangulation();
            let ids = seq
                .iter()
                .map(|s| t.edge_id(s.trim()).ok_or_else(|| Error::UnknownEdge(s.clone())))
                .collect::<gentle_ext::Result<Vec<_>>>()?;
            string_from_sequence(q, &ids)
        }
        (None, None) => Err(Error::Precondition("no arc given".into())),
    }
}

impl FirstArc {
    fn read(&self, q: &Quiver) -> gentle_ext::Result<StringWord> {
        read_arc(q, &self.arc1, &self.seq1)
    }
}

impl TwoArcs {
    fn read(&self, q: &Quiver) -> gentle_ext::Result<(StringWord, StringWord)> {
        Ok((self.first.read(q)?, read_arc(q, &self.arc2, &self.seq2)?))
    }
}

fn load(path: &PathBuf) -> anyhow::Result<Quiver> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(derive_quiver(&load_triangulation(&text)?)?)
}

fn emit(format: Format, text: String, value: Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json output")),
    }
}

fn dimension_vector(q: &Quiver, w: &StringWord) -> Value {
    let dv = w.dimension_vector(q);
    let map: serde_json::Map<String, Value> = q
        .vertices()
        .filter(|v| dv[v.0] > 0)
        .map(|v| (q.label(v).to_string(), json!(dv[v.0])))
        .collect();
    Value::Object(map)
}

fn graph_json(q: &Quiver, g: &SnakeGraph) -> Value {
    let t = q.triangulation();
    let tiles: Vec<Value> = g
        .tiles
        .iter()
        .map(|tile| {
            json!({
                "diagonal": t.label(tile.diag),
                "n": t.label(tile.n),
                "e": t.label(tile.e),
                "s": t.label(tile.s),
                "w": t.label(tile.w),
                "rel": tile.rel,
            })
        })
        .collect();
    json!({ "tiles": tiles, "glue": g.glue })
}

fn piece_text(q: &Quiver, p: &Piece) -> String {
    let t = q.triangulation();
    match p {
        Piece::Graph(g) => {
            let d: Vec<&str> = g.diagonals().iter().map(|&e| t.label(e)).collect();
            format!("snake graph on tiles {}", d.join(","))
        }
        Piece::Edge(e) => format!("single edge {}", t.label(*e)),
    }
}

fn piece_json(q: &Quiver, p: &Piece) -> Value {
    match p {
        Piece::Graph(g) => graph_json(q, g),
        Piece::Edge(e) => json!({ "edge": q.triangulation().label(*e) }),
    }
}

fn ses_json(q: &Quiver, s: &ShortExactSequence) -> Value {
    json!({
        "sub": s.sub.ascii(q),
        "middle": s.middle.iter().map(|w| w.ascii(q)).collect::<Vec<_>>(),
        "quotient": s.quotient.ascii(q),
        "crossing": s.crossing.describe(q),
    })
}

fn ses_text(q: &Quiver, s: &ShortExactSequence) -> String {
    let mid = if s.middle.is_empty() {
        "0".to_string()
    } else {
        s.middle.iter().map(|w| w.ascii(q)).collect::<Vec<_>>().join(" + ")
    };
    format!("0 -> {} -> {mid} -> {} -> 0", s.sub.ascii(q), s.quotient.ascii(q))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let format = cli.format;
    match cli.verb {
        Verb::Quiver { triangulation } => {
            let q = load(&triangulation)?;
            let points = q.triangulation().marked_points();
            let mut v = q.to_json();
            v["marked_points"] = json!(points);
            emit(format, format!("{q}\nmarked points: {points}"), v);
        }
        Verb::Validate { triangulation, arc } => {
            let q = load(&triangulation)?;
            let w = arc.read(&q)?;
            let dv = dimension_vector(&q, &w);
            emit(
                format,
                format!("valid: {}\ndimension: {}\ndimension vector: {dv}", w.ascii(&q), w.total_dim()),
                json!({ "valid": true, "string": w.ascii(&q), "dimension": w.total_dim(), "dimension_vector": dv }),
            );
        }
        Verb::Snake { triangulation, arc } => {
            let q = load(&triangulation)?;
            let w = arc.read(&q)?;
            let (g, f) = sign_function_from_string(&q, &Walk::new(&q, &w))?;
            if string_from_signed_snake_graph(&q, &g, f)? != w {
                return Err(Error::Consistency(format!("{} does not read back from its snake graph", w.ascii(&q))).into());
            }
            let signs: Vec<String> = f.interior_signs(&g).iter().map(|s| s.to_string()).collect();
            let mut v = graph_json(&q, &g);
            v["string"] = json!(w.ascii(&q));
            v["signs"] = json!(signs);
            emit(
                format,
                format!(
                    "string: {}\n{}\ninterior signs: {}",
                    w.ascii(&q),
                    g.render(q.triangulation()),
                    signs.join(" ")
                ),
                v,
            );
        }
        Verb::Crossings { triangulation, arcs } => {
            let q = load(&triangulation)?;
            let (a, b) = arcs.read(&q)?;
            let cs = enumerate_crossings(&q, &a, &b);
            let text: Vec<String> = cs
                .iter()
                .enumerate()
                .map(|(i, c)| format!("[{i}] {:?}: {}", c.direction, c.describe(&q)))
                .collect();
            let v: Vec<Value> = cs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut j = c.to_json(&q);
                    j["index"] = json!(i);
                    j
                })
                .collect();
            let text = if text.is_empty() { "no crossings".to_string() } else { text.join("\n") };
            emit(format, text, json!(v));
        }
        Verb::Smooth {
            triangulation,
            arcs,
            crossing,
        } => {
            let q = load(&triangulation)?;
            let (a, b) = arcs.read(&q)?;
            let cs = enumerate_crossings(&q, &a, &b);
            let c = cs.get(crossing).ok_or_else(|| {
                Error::Precondition(format!("crossing index {crossing} out of range ({} crossings)", cs.len()))
            })?;
            let (sm, res) = smooth_checked(&q, c)?;
            let pieces = [&res.g3, &res.g4, &res.g5, &res.g6];
            let mut text = vec![c.describe(&q)];
            let mut terms = Vec::new();
            for (i, (t, p)) in sm.terms().into_iter().zip(pieces).enumerate() {
                text.push(format!("w{} = {}    G{} = {}", i + 3, t.display(&q), i + 3, piece_text(&q, p)));
                let mut j = t.to_json(&q);
                j["piece"] = piece_json(&q, p);
                terms.push(j);
            }
            emit(
                format,
                text.join("\n"),
                json!({ "crossing": c.to_json(&q), "w3": terms[0], "w4": terms[1], "w5": terms[2], "w6": terms[3] }),
            );
        }
        Verb::Ext { triangulation, arcs } => {
            let q = load(&triangulation)?;
            let (m, n) = arcs.read(&q)?;
            let r = ext_report(&q, &m, &n)?;
            let mn = ext_basis(&q, &m, &n)?;
            let nm = ext_basis(&q, &n, &m)?;
            let tris = cluster_triangles(&q, &m, &n)?;
            let mut text = vec![
                format!("M = {}", m.ascii(&q)),
                format!("N = {}", n.ascii(&q)),
                format!("dim Ext1(M,N) = {}", r.dim_mn),
                format!("dim Ext1(N,M) = {}", r.dim_nm),
                format!("Int = {}, k = {}, k' = {}", r.int, r.k, r.k_prime),
                format!("check: {} + {} = {} - {} - {}", r.dim_mn, r.dim_nm, r.int, r.k, r.k_prime),
            ];
            text.push("extensions of M by N:".into());
            text.extend(mn.iter().map(|s| format!("  {}", ses_text(&q, s))));
            text.push("extensions of N by M:".into());
            text.extend(nm.iter().map(|s| format!("  {}", ses_text(&q, s))));
            text.push("triangles:".into());
            for (c, pair) in &tris {
                text.push(format!("  {}", c.describe(&q)));
                for t in pair {
                    text.push(format!("    {}", t.display(&q)));
                }
            }
            let triangles: Vec<Value> = tris
                .iter()
                .map(|(c, pair)| json!({ "crossing": c.describe(&q), "triangles": pair.iter().map(|t| t.display(&q)).collect::<Vec<_>>() }))
                .collect();
            emit(
                format,
                text.join("\n"),
                json!({
                    "M": m.ascii(&q),
                    "N": n.ascii(&q),
                    "dim_MN": r.dim_mn,
                    "dim_NM": r.dim_nm,
                    "Int": r.int,
                    "k": r.k,
                    "k_prime": r.k_prime,
                    "same_module": r.same_module,
                    "formula_holds": true,
                    "basis_MN": mn.iter().map(|s| ses_json(&q, s)).collect::<Vec<_>>(),
                    "basis_NM": nm.iter().map(|s| ses_json(&q, s)).collect::<Vec<_>>(),
                    "triangles": triangles,
                }),
            );
        }
        Verb::OracleExt { triangulation, arcs } => {
            let q = load(&triangulation)?;
            let (m, n) = arcs.read(&q)?;
            let (mn, nm) = (ext1_dim_oracle(&q, &m, &n)?, ext1_dim_oracle(&q, &n, &m)?);
            emit(
                format,
                format!("dim Ext1(M,N) = {mn}\ndim Ext1(N,M) = {nm}"),
                json!({ "M": m.ascii(&q), "N": n.ascii(&q), "dim_MN": mn, "dim_NM": nm }),
            );
        }
        Verb::Check {
            triangulation,
            max_len,
            parallel,
        } => {
            let q = load(&triangulation)?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(parallel).build()?;
            let summary = pool.install(|| check(&q, max_len))?;
            let ok = summary.mismatches.is_empty();
            let text = format!(
                "strings: {}\npairs: {}\ncrossings: {}\nmismatches: {}{}",
                summary.strings,
                summary.pairs,
                summary.crossings,
                summary.mismatches.len(),
                summary
                    .mismatches
                    .iter()
                    .take(20)
                    .map(|m| format!("\n  {m}"))
                    .collect::<String>()
            );
            emit(
                format,
                text,
                json!({
                    "max_len": max_len,
                    "strings": summary.strings,
                    "pairs": summary.pairs,
                    "crossings": summary.crossings,
                    "mismatches": summary.mismatches,
                    "ok": ok,
                }),
            );
            if !ok {
                return Err(Error::Consistency(format!("{} mismatches", summary.mismatches.len())).into());
            }
        }
    }
    Ok(())
}

struct CheckSummary {
    strings: usize,
    pairs: usize,
    crossings: usize,
    mismatches: Vec<String>,
}

fn check(q: &Quiver, max_len: usize) -> anyhow::Result<CheckSummary> {
    let ws = all_strings(q, max_len);
    let mut mismatches: Vec<String> = ws
        .par_iter()
        .filter_map(|w| {
            let back = snake_graph(q, w)
                .and_then(|_| sign_function_from_string(q, &Walk::new(q, w)))
                .and_then(|(g, f)| string_from_signed_snake_graph(q, &g, f));
            match back {
                Ok(b) if b == *w => None,
                other => Some(format!("{}: snake graph roundtrip gives {:?}", w.ascii(q), other.map(|b| b.ascii(q)))),
            }
        })
        .collect();
    let prepared = ws
        .iter()
        .map(|w| Prepared::new(q, w))
        .collect::<gentle_ext::Result<Vec<_>>>()?;
    let results: Vec<(usize, Vec<String>)> = (0..ws.len())
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            let mut crossings = 0;
            for j in i..ws.len() {
                let (a, b) = (&prepared[i], &prepared[j]);
                let pair = || format!("({}, {})", a.word.ascii(q), b.word.ascii(q));
                let oracle = a.ext1(q, b).and_then(|x| b.ext1(q, a).map(|y| (x, y)));
                match (ext_report(q, &a.word, &b.word), oracle) {
                    (Ok(r), Ok((x, y))) if (r.dim_mn, r.dim_nm) == (x, y) => {}
                    (Ok(r), Ok((x, y))) => found.push(format!(
                        "{}: crossings give ({}, {}), oracle gives ({x}, {y})",
                        pair(),
                        r.dim_mn,
                        r.dim_nm
                    )),
                    (Err(e), _) | (_, Err(e)) => found.push(format!("{}: {e}", pair())),
                }
                for c in enumerate_crossings(q, &a.word, &b.word) {
                    crossings += 1;
                    if let Err(e) = smooth_checked(q, &c) {
                        found.push(format!("{}: {e}", c.describe(q)));
                    }
                }
            }
            (crossings, found)
        })
        .collect();
    let mut crossings = 0;
    for (n, found) in results {
        crossings += n;
        mismatches.extend(found);
    }
    let n = ws.len();
    Ok(CheckSummary {
        strings: n,
        pairs: n * (n + 1) / 2,
        crossings,
        mismatches,
    })
}

fn exit_code(err: &anyhow::Error) -> (u8, &'static str) {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_consistency_fault() => (2, "consistency"),
        _ => (1, "validation"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (code, kind) = exit_code(&err);
            let diag = json!({ "error": kind, "message": format!("{err:#}") });
            eprintln!("{diag}");
            ExitCode::from(code)
        }
    }
}
