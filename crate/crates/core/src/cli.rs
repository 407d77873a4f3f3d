//! Command-line front end. `run` never exits the process; it returns the
//! exit code and both output streams so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::certificate::Certificate;
use crate::core_fd::{embed_in_fd, fd_dimension, matrix_units};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphDoc, GraphInput};
use crate::groupoid::{Groupoid, NegPosFactor, DEFAULT_TRUNCATION};
use crate::lpa::{parse_element, Element};
use crate::property_y::{decide_property_y, decide_strongly_graded, property_y_witness, YWitness};
use crate::selftest::{run_selftest, verify_certificate_text};
use crate::witness::{factor_homogeneous, factor_local_unit, factor_local_unit_ladder, Direction, FactorOutcome};

#[derive(Debug, Parser)]
#[command(name = "leavitt", version, about = "Strong grading, normal forms and core analysis for graph algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphOpts {
    /// Graph file, or inline JSON starting with `{`.
    #[arg(long)]
    graph: String,
    /// Depth at which ladder presets are materialized.
    #[arg(long)]
    truncate: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Strong-grading verdict with clause-by-clause evidence.
    Analyze {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        allow_empty_prefix: bool,
    },
    /// Normal form of an element.
    Nf {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        expr: String,
    },
    /// Product of two elements, in normal form.
    Mul {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Image under the involution.
    Star {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        expr: String,
    },
    /// Homogeneous components by degree.
    Grade {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        expr: String,
    },
    /// Writes p_v as a sum of products of degrees (k, -k) or (-k, k).
    FactorUnit {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        direction: String,
        #[arg(long, default_value_t = 8)]
        max_level: usize,
    },
    /// Factors a homogeneous element through degrees (a, n - a).
    FactorHomog {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, default_value_t = 8)]
        max_level: usize,
    },
    /// Finite-dimensional *-subalgebra of the core containing a degree-0 element.
    CoreEmbed {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        expr: String,
    },
    /// Dimension of the core subspace F_{k,J}.
    FdDim {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'J')]
        cutoff: usize,
    },
    /// Matrix units of the block at a vertex, with a relation check.
    MatrixUnits {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'J')]
        cutoff: usize,
        #[arg(long)]
        vertex: String,
    },
    /// Property (Y) alone, with a failure certificate when it fails.
    PropertyY {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        allow_empty_prefix: bool,
    },
    /// Factors the degree-0 groupoid element (x, 0, y) through degrees ±k.
    GroupoidFactor {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        x: String,
        /// Defaults to x.
        #[arg(long)]
        y: Option<String>,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Least prefix of x admitting a path k edges longer.
    OracleY {
        #[command(flatten)]
        g: GraphOpts,
        #[arg(long)]
        x: String,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long)]
        allow_empty_prefix: bool,
    },
    /// Runs the invariant suite, or re-verifies a certificate file.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        verify: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Domain(Error),
    Usage(String),
    /// Already reported on stdout; exit 1.
    Negative,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Run = std::result::Result<String, (String, Failure)>;

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => CliOutput { code: 0, stdout: out, stderr: String::new() },
        Err((out, Failure::Negative)) => CliOutput { code: 1, stdout: out, stderr: String::new() },
        Err((out, Failure::Domain(e))) => CliOutput { code: 1, stdout: out, stderr: format!("error: {e}\n") },
        Err((out, Failure::Usage(m))) => CliOutput { code: 2, stdout: out, stderr: format!("usage error: {m}\n") },
    }
}

/// Reads `--graph`: a path, or inline JSON.
pub fn parse_graph(arg: &str) -> Result<GraphInput> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::InvalidInput(format!("cannot read `{arg}`: {e}")))?
    };
    let doc: GraphDoc = serde_json::from_str(&text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    GraphInput::from_doc(doc)
}

fn materialize(input: &GraphInput, truncate: Option<usize>) -> Arc<Graph> {
    match input {
        GraphInput::Finite(g) => Arc::new(g.clone()),
        GraphInput::Ladder(p) => Arc::new(p.instantiate(truncate.unwrap_or(DEFAULT_TRUNCATION))),
    }
}

fn element(g: &Arc<Graph>, text: &str) -> Result<Element> {
    Ok(parse_element(text, g)?.normalize())
}

fn render(json: bool, value: Value, text: String) -> String {
    if json {
        format!("{}\n", serde_json::to_string_pretty(&value).expect("json values serialize"))
    } else {
        text
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(cmd: Command) -> Run {
    let plain = |r: Result<String>| r.map_err(|e| (String::new(), Failure::Domain(e)));
    match cmd {
        Command::Analyze { g, allow_empty_prefix } => plain(analyze(&g, allow_empty_prefix)),
        Command::Nf { g, expr } => plain(unary(&g, &expr, "normal_form", |x| Ok(x.clone()))),
        Command::Star { g, expr } => plain(unary(&g, &expr, "star", |x| Ok(x.star()))),
        Command::Mul { g, lhs, rhs } => plain((|| {
            let graph = materialize(&parse_graph(&g.graph)?, g.truncate);
            let p = element(&graph, &lhs)?.mul(&element(&graph, &rhs)?)?;
            Ok(render(g.json, json!({ "product": p.to_expr() }), format!("{p}\n")))
        })()),
        Command::Grade { g, expr } => plain((|| {
            let graph = materialize(&parse_graph(&g.graph)?, g.truncate);
            let parts = element(&graph, &expr)?.grade_decompose();
            let map: BTreeMap<String, String> = parts.iter().map(|(d, x)| (d.to_string(), x.to_expr())).collect();
            let text: String = parts.iter().map(|(d, x)| format!("{d}: {x}\n")).collect();
            Ok(render(g.json, json!({ "components": map }), if text.is_empty() { "0\n".into() } else { text }))
        })()),
        Command::FactorUnit { g, vertex, degree, direction, max_level } => {
            factor_unit(&g, &vertex, degree, &direction, max_level)
        }
        Command::FactorHomog { g, expr, degree, max_level } => {
            let input = parse_graph(&g.graph).map_err(|e| (String::new(), e.into()))?;
            let graph = materialize(&input, g.truncate);
            let x = element(&graph, &expr).map_err(|e| (String::new(), e.into()))?;
            let out = factor_homogeneous(&graph, &x, degree, max_level).map_err(|e| (String::new(), e.into()))?;
            report_factorization(&g, out)
        }
        Command::CoreEmbed { g, expr } => plain((|| {
            let graph = materialize(&parse_graph(&g.graph)?, g.truncate);
            let e = embed_in_fd(&parse_element(&expr, &graph)?)?;
            let cert = Certificate::embedding(&e);
            let text = format!(
                "k = {}, J = {}, W = {{{}}}\ndimension {}\nbasis:\n{}coordinates: {}\n",
                e.length,
                e.cutoff,
                e.extra_vertices.iter().map(|&v| graph.vertex_name(v)).collect::<Vec<_>>().join(", "),
                e.dimension,
                e.basis.iter().map(|b| format!("  {b}\n")).collect::<String>(),
                e.coordinates.iter().map(crate::coeff::format).collect::<Vec<_>>().join(" "),
            );
            Ok(render(g.json, serde_json::to_value(&cert).expect("serializable"), text))
        })()),
        Command::FdDim { g, k, cutoff } => plain((|| {
            let graph = materialize(&parse_graph(&g.graph)?, g.truncate);
            let d = fd_dimension(&graph, k, cutoff)?;
            Ok(render(g.json, json!({ "k": k, "J": cutoff, "dimension": d }), format!("{d}\n")))
        })()),
        Command::MatrixUnits { g, k, cutoff, vertex } => plain((|| {
            let graph = materialize(&parse_graph(&g.graph)?, g.truncate);
            let v = graph.vertex_id(&vertex).ok_or_else(|| Error::UnknownId(vertex.clone()))?;
            let sys = matrix_units(&graph, k, cutoff, v)?;
            let index: Vec<String> = sys.index.iter().map(|p| graph.path_to_string(p)).collect();
            let value = json!({
                "k": k, "J": cutoff, "vertex": vertex, "size": sys.size(), "index": index,
                "relations": sys.report,
            });
            let text = format!(
                "d = {}\nindex: {}\nrelations: {} products checked, {}\n",
                sys.size(),
                index.join(", "),
                sys.report.products_checked,
                if sys.report.ok() { "all hold".to_string() } else { format!("{} failures", sys.report.failures.len()) }
            );
            Ok(render(g.json, value, text))
        })()),
        Command::PropertyY { g, allow_empty_prefix } => plain((|| {
            let input = parse_graph(&g.graph)?;
            let verdict = decide_property_y(&input, allow_empty_prefix);
            let cert = Certificate::property_y_failure(&input, &verdict);
            let mut value = serde_json::to_value(&verdict).expect("serializable");
            if let Some(c) = &cert {
                value["certificate"] = serde_json::to_value(c).expect("serializable");
            }
            let text = match verdict.failing_degree() {
                None => "property (Y) holds\n".to_string(),
                Some(k) => format!("property (Y) fails with k = {k}\n"),
            };
            Ok(render(g.json, value, text))
        })()),
        Command::GroupoidFactor { g, x, y, k } => plain(groupoid_factor(&g, &x, y.as_deref(), k)),
        Command::OracleY { g, x, k, allow_empty_prefix } => plain((|| {
            let input = parse_graph(&g.graph)?;
            let graph = materialize(&input, g.truncate);
            let ladder = match &input {
                GraphInput::Ladder(p) => Some(p),
                GraphInput::Finite(_) => None,
            };
            let point = crate::boundary::BoundaryPath::parse(&graph, &x)?;
            let (value, text) = match property_y_witness(&graph, ladder, &point, k, allow_empty_prefix)? {
                YWitness::Found { n, beta } => {
                    let b = graph.path_to_string(&beta);
                    (json!({ "found": true, "n": n, "beta": b }), format!("n = {n}, beta = {b}\n"))
                }
                YWitness::Exhausted { bound, exact } => (
                    json!({ "found": false, "bound": bound, "exact": exact }),
                    if exact {
                        "no prefix works (closed form)\n".to_string()
                    } else {
                        format!("no prefix works up to length {bound}\n")
                    },
                ),
            };
            Ok(render(g.json, value, text))
        })()),
        Command::Selftest { seed, verify, json } => selftest(seed, verify, json),
    }
}

fn analyze(g: &GraphOpts, allow_empty: bool) -> Result<String> {
    let input = parse_graph(&g.graph)?;
    let report = decide_strongly_graded(&input, allow_empty);
    let mut value = serde_json::to_value(&report).expect("serializable");
    if let Some(c) = Certificate::property_y_failure(&input, &report.property_y) {
        value["certificate"] = serde_json::to_value(c).expect("serializable");
    }
    let y = match report.property_y.failing_degree() {
        None => "holds".to_string(),
        Some(k) => format!("fails with k = {k}"),
    };
    let text = format!(
        "strongly graded: {}\n  row-finite: {} ({})\n  no sources: {} ({})\n  property (Y): {}\nLeavitt path algebra: {}\ngraph C*-algebra: {}\n{}\n",
        yes(report.strongly_graded),
        yes(report.row_finite.holds),
        report.row_finite.evidence,
        yes(report.no_sources.holds),
        report.no_sources.evidence,
        y,
        report.leavitt_path_algebra,
        report.graph_c_star_algebra,
        report.derivation,
    );
    Ok(render(g.json, value, text))
}

fn unary(g: &GraphOpts, expr: &str, key: &str, f: impl Fn(&Element) -> Result<Element>) -> Result<String> {
    let graph = materialize(&parse_graph(&g.graph)?, g.truncate);
    let x = f(&element(&graph, expr)?)?;
    Ok(render(g.json, json!({ key: x.to_expr() }), format!("{x}\n")))
}

fn report_factorization(g: &GraphOpts, out: FactorOutcome) -> Run {
    match out {
        FactorOutcome::Found(w) => {
            let cert = Certificate::factorization(&w);
            let text = format!(
                "{} = sum over {} pairs of degrees ({}, {}), level {}\n{}",
                w.target,
                w.pairs.len(),
                w.split.0,
                w.split.1,
                w.level,
                w.pairs.iter().map(|(x, y)| format!("  ({x}) * ({y})\n")).collect::<String>()
            );
            Ok(render(g.json, serde_json::to_value(&cert).expect("serializable"), text))
        }
        FactorOutcome::NotFoundUpTo(m) => Err((
            render(g.json, json!({ "found": false, "not_found_up_to": m }), format!("no witness up to level {m}\n")),
            Failure::Negative,
        )),
    }
}

fn factor_unit(g: &GraphOpts, vertex: &str, degree: usize, direction: &str, max_level: usize) -> Run {
    let dir: Direction = direction.parse().map_err(|e: Error| (String::new(), Failure::Usage(e.to_string())))?;
    let input = parse_graph(&g.graph).map_err(|e| (String::new(), e.into()))?;
    let out = match &input {
        GraphInput::Finite(graph) => {
            let graph = Arc::new(graph.clone());
            let v = graph.vertex_id(vertex).ok_or_else(|| (String::new(), Error::UnknownId(vertex.into()).into()))?;
            factor_local_unit(&graph, v, degree, dir, max_level)
        }
        GraphInput::Ladder(p) => {
            factor_local_unit_ladder(p, g.truncate.unwrap_or(DEFAULT_TRUNCATION), vertex, degree, dir, max_level)
        }
    }
    .map_err(|e| (String::new(), e.into()))?;
    report_factorization(g, out)
}

fn groupoid_factor(g: &GraphOpts, x: &str, y: Option<&str>, k: usize) -> Result<String> {
    let gr = Groupoid::from_input(&parse_graph(&g.graph)?, g.truncate)?;
    let graph = gr.graph().clone();
    let px = gr.parse_point(x)?;
    let py = match y {
        Some(y) => gr.parse_point(y)?,
        None => px.clone(),
    };
    let el = gr.element(&px, 0, &py)?;
    let f = gr.factor_element(&el, k)?;
    let show = |a: &crate::groupoid::GroupoidElement| a.display(&graph).to_string();
    let pos = json!([show(&f.pos_neg.0), show(&f.pos_neg.1)]);
    let (neg, neg_text) = match &f.neg_pos {
        NegPosFactor::Found(h1, h2) => {
            (json!({ "found": true, "pair": [show(h1), show(h2)] }), format!("{} * {}", show(h1), show(h2)))
        }
        NegPosFactor::Exhausted { bound, exact } => (
            json!({ "found": false, "bound": bound, "exact": exact }),
            if *exact { "none (exact)".to_string() } else { format!("none up to prefix length {bound}") },
        ),
    };
    let value = json!({ "element": show(&el), "k": k, "pos_neg": pos, "neg_pos": neg });
    let text = format!(
        "element {}\n(+{k}, -{k}): {} * {}\n(-{k}, +{k}): {}\n",
        show(&el),
        show(&f.pos_neg.0),
        show(&f.pos_neg.1),
        neg_text
    );
    Ok(render(g.json, value, text))
}

fn selftest(seed: u64, verify: Option<PathBuf>, json_out: bool) -> Run {
    if let Some(path) = verify {
        let text = std::fs::read_to_string(&path).map_err(|e| {
            (String::new(), Failure::Domain(Error::InvalidInput(format!("cannot read {}: {e}", path.display()))))
        })?;
        let cert = verify_certificate_text(&text).map_err(|e| (String::new(), e.into()))?;
        return Ok(render(
            json_out,
            json!({ "verified": true, "certificate": cert.kind() }),
            format!("verified {} certificate\n", cert.kind()),
        ));
    }
    let report = run_selftest(seed);
    let text: String = report
        .checks
        .iter()
        .map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect();
    let out = render(json_out, serde_json::to_value(&report).expect("serializable"), text);
    if report.passed() {
        Ok(out)
    } else {
        Err((out, Failure::Negative))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOOP: &str = r#"{"kind":"finite","vertices":["v"],"edges":[{"id":"e","range":"v","source":"v"}]}"#;
    const L2: &str = r#"{"kind":"finite","vertices":["v"],"edges":[{"id":"e","range":"v","source":"v"},{"id":"f","range":"v","source":"v"}]}"#;

    fn go(args: &[&str]) -> CliOutput {
        run(std::iter::once("leavitt").chain(args.iter().copied()))
    }

    #[test]
    fn normal_form_text() {
        let out = go(&["nf", "--graph", L2, "--expr", "[e|e]"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "[v|v] - [f|f]\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["nf", "--graph", LOOP, "--expr", "[e|f]"]).code, 1);
        assert_eq!(go(&["nf", "--graph", LOOP, "--bogus"]).code, 2);
        assert_eq!(go(&["frobnicate"]).code, 2);
        let out = go(&["factor-unit", "--graph", LOOP, "--vertex", "v", "--degree", "1", "--direction", "up"]);
        assert_eq!(out.code, 2);
        assert_eq!(go(&["nf", "--graph", "{\"kind\":", "--expr", "0"]).code, 1);
    }

    #[test]
    fn analyze_loop_json() {
        let out = go(&["analyze", "--graph", LOOP, "--json"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["strongly_graded"], true);
    }

    #[test]
    fn factor_unit_witness() {
        let out = go(&[
            "factor-unit", "--graph", LOOP, "--vertex", "v", "--degree", "1", "--direction", "neg-pos", "--max-level", "3",
            "--json",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["witness"]["pairs"][0][0], "[v|e]");
        assert_eq!(v["witness"]["split"], json!([-1, 1]));
        assert!(Certificate::from_json(&out.stdout).unwrap().verify().is_ok());
    }

    #[test]
    fn negative_degree_flag() {
        let out = go(&["factor-homog", "--graph", LOOP, "--expr", "[v|e]", "--degree", "-2"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
    }
}
