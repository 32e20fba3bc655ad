//! `qrcert` command-line front end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qrcert::certify::{analyze_resultant, certify, certify_bipartite, Certificate};
use qrcert::count::{
    count_constrained, count_multiplicity_averaged, count_summed, count_symmetrized, PartitionSpec,
};
use qrcert::empirical::{gen_gnp, gen_two_type, qr_experiment, Generator, TwoTypeGraphon};
use qrcert::graph::{parse_graph, SmallGraph};
use qrcert::lambda::{
    check_alg_system, degree_le1_check, degree_seq_equations, lambda_bernstein, lambda_q, lambda_x,
    WitnessTriple,
};
use qrcert::poly::{parse_rational, Rational};
use qrcert::report::{LIBRARY_VERSION, SCHEMA_VERSION};
use qrcert::survey::{survey, survey_from_graph6_list, SurveyRow};
use qrcert::Error;
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 64;
const EXIT_INPUT: u8 = 65;
const EXIT_SOFTWARE: u8 = 70;

#[derive(Parser, Debug)]
#[command(
    name = "qrcert",
    version,
    about = "Decide whether equal-part restricted subgraph counts of a pattern force quasi-randomness"
)]
struct Cli {
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print a short human-readable summary instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify a pattern F as good (the restricted counts force quasi-randomness)
    /// or bad (a two-type graphon witness (u,v,s) makes Λ affine).
    ///
    /// Exit code 0 for good, 1 for bad, 2 for inconclusive.
    Certify {
        /// graph6 string or a file holding graph6 or an edge list.
        graph: String,
    },
    /// Certify every isomorphism class of patterns on m vertices.
    Survey {
        /// Pattern size, 2..=8, enumerated internally.
        #[arg(long, required_unless_present = "list")]
        m: Option<usize>,
        /// File with one graph6 string per line, used instead of enumeration.
        #[arg(long)]
        list: Option<PathBuf>,
    },
    /// Certify the complete bipartite pattern K_{a,b} and report the real
    /// roots of its resultant R(u) in (0,1) and (1,∞).
    Bipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Subset polynomial Λ(q) = Σ_A u^e(A) v^e(A^c) s^e(A,A^c) q^|A| (1-q)^|A^c|,
    /// its Bernstein coefficients, Λ*(x), and the degree-at-most-one test.
    Lambda {
        graph: String,
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Degree-sequence equations f1, f2 at s = 1 and their resultant R(u)
    /// with respect to v, with root counts in (0,1) and (1,∞).
    Resultant {
        /// Use the path on N vertices.
        #[arg(long, conflicts_with = "graph")]
        path: Option<usize>,
        #[arg(required_unless_present = "path")]
        graph: Option<String>,
    },
    /// Count injective homomorphisms F → G with vertex i mapped into its
    /// assigned part: N, the relabelling average Ñ, the sum over part
    /// subsets, or the multiplicity average.
    Count {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
        /// JSON file: a list of parts, or {"parts": [...], "assignment": [...]}.
        /// Without a file every vertex maps into the whole host.
        #[arg(long)]
        parts: Option<PathBuf>,
        /// Average over all relabellings of the pattern (Ñ).
        #[arg(long)]
        symmetrize: bool,
        /// Sum Ñ over all increasing choices of m of the r parts.
        #[arg(long, conflicts_with = "mults")]
        summed: bool,
        /// Part multiplicities, e.g. 2,1: average Ñ over their rearrangements.
        #[arg(long, value_delimiter = ',')]
        mults: Option<Vec<usize>>,
    },
    /// Sample a seeded random host graph and print it as graph6.
    Sample {
        #[command(subcommand)]
        model: SampleModel,
    },
    /// Compare N(F, G; U_1..U_m) with p^e(F) Π|U_i| on random hosts and
    /// random disjoint parts of sizes floor(alpha_i n).
    Experiment {
        #[arg(long)]
        pattern: String,
        /// Host model.
        #[arg(long, value_parser = ["gnp", "twotype"])]
        gen: String,
        #[arg(long)]
        n: usize,
        /// Edge probability for gnp.
        #[arg(long, value_parser = rational)]
        p: Option<Rational>,
        #[command(flatten)]
        triple: OptionalTripleArgs,
        /// Part fractions, e.g. 1/3,1/3,1/3.
        #[arg(long, value_delimiter = ',', value_parser = rational, required = true)]
        alphas: Vec<Rational>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SampleModel {
    /// Erdős–Rényi G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational)]
        p: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Two-type model: first n/2 vertices low, edge probabilities v (low-low),
    /// u (high-high) and s (across).
    Twotype {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct TripleArgs {
    #[arg(long, value_parser = rational)]
    u: Rational,
    #[arg(long, value_parser = rational)]
    v: Rational,
    #[arg(long, value_parser = rational)]
    s: Rational,
}

#[derive(Args, Debug)]
struct OptionalTripleArgs {
    #[arg(long, value_parser = rational)]
    u: Option<Rational>,
    #[arg(long, value_parser = rational)]
    v: Option<Rational>,
    #[arg(long, value_parser = rational)]
    s: Option<Rational>,
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            Error::DivisionByZero | Error::ZeroPolynomial => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Report plus the exit code it implies.
struct Outcome {
    json: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome {
            json,
            text,
            code: 0,
        }
    }
}

fn read_graph(arg: &str) -> Result<SmallGraph, Failure> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    parse_graph(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn versioned(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.entry("schema_version").or_insert(json!(SCHEMA_VERSION));
        map.entry("library_version")
            .or_insert(json!(LIBRARY_VERSION));
    }
    v
}

fn poly_text(coeffs: &[String], var: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(k, c)| {
            let power = match k {
                0 => return c.clone(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            match c.as_str() {
                "1" => power,
                "-1" => format!("-{power}"),
                _ => format!("{c}*{power}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn certificate_text(c: &Certificate) -> String {
    let mut out = format!(
        "{}: {} ({})",
        c.graph,
        c.verdict.label(),
        c.verdict.method_label()
    );
    if let (Some(a), Some(b)) = (c.evidence.roots_01, c.evidence.roots_1inf) {
        out += &format!("; roots of R in (0,1): {a}, in (1,inf): {b}");
    }
    if let qrcert::certify::Verdict::Bad { witness, pair } = &c.verdict {
        out += &format!(
            "; witness (u,v,s) = ({}, {}, {}), a = {}, b = {}",
            witness.u, witness.v, witness.s, pair.a, pair.b
        );
    }
    out
}

fn run_certify(graph: &str) -> Result<Outcome, Failure> {
    let f = read_graph(graph)?;
    let cert = certify(&f)?;
    Ok(Outcome {
        text: certificate_text(&cert),
        json: to_json(&cert),
        code: cert.verdict.exit_code() as u8,
    })
}

fn run_survey(m: Option<usize>, list: Option<&Path>) -> Result<Outcome, Failure> {
    let rows: Vec<SurveyRow> = match list {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            survey_from_graph6_list(&text)?
        }
        None => survey(m.expect("clap requires m or list"))?,
    };
    let mut methods = std::collections::BTreeMap::<String, usize>::new();
    let mut categories = std::collections::BTreeMap::<String, usize>::new();
    let mut text = String::new();
    for r in &rows {
        let v = &r.certificate.verdict;
        *methods
            .entry(format!("{} {}", v.label(), v.method_label()))
            .or_default() += 1;
        *categories.entry(format!("{:?}", r.category)).or_default() += 1;
        text += &format!(
            "{:<10} e={:<3} {:<13} {} ({})\n",
            r.graph6,
            r.edges,
            format!("{:?}", r.category),
            v.label(),
            v.method_label()
        );
    }
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "library_version": LIBRARY_VERSION,
        "m": m,
        "graphs": rows.len(),
        "methods": methods,
        "categories": categories,
        "rows": to_json(&rows),
    });
    Ok(Outcome::ok(json, text.trim_end().to_string()))
}

fn run_bipartite(a: usize, b: usize) -> Result<Outcome, Failure> {
    let report = certify_bipartite(a, b)?;
    let mut text = format!("K_{{{a},{b}}}: {}", certificate_text(&report.certificate));
    if report.certificate.evidence.roots_01.is_none() {
        // a fast path decided; the counts were computed separately
        text += &format!(
            "; roots of R in (0,1): {}, in (1,inf): {}",
            report.roots_01.map_or("-".into(), |x| x.to_string()),
            report.roots_1inf.map_or("-".into(), |x| x.to_string()),
        );
    }
    Ok(Outcome {
        code: report.certificate.verdict.exit_code() as u8,
        json: versioned(to_json(&report)),
        text,
    })
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn run_lambda(graph: &str, t: &TripleArgs) -> Result<Outcome, Failure> {
    let f = read_graph(graph)?;
    let w = WitnessTriple::new(t.u.clone(), t.v.clone(), t.s.clone())?;
    let q = lambda_q(&f, &w)?;
    let x = lambda_x(&f, &w)?;
    let bern = lambda_bernstein(&f, &w)?;
    let affine = degree_le1_check(&f, &w);
    let system = check_alg_system(&f, &w);
    let q_strings = q.to_strings();
    let x_strings = x.to_strings();
    let text = format!(
        "Lambda(q) = {}\nLambda*(x) = {}\nBernstein coefficients: [{}]\ndegree <= 1: {}",
        poly_text(&q_strings, "q"),
        poly_text(&x_strings, "x"),
        strings(&bern).join(", "),
        match &affine {
            Some(p) => format!("yes, a = {}, b = {}", p.a, p.b),
            None => "no".into(),
        }
    );
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "library_version": LIBRARY_VERSION,
        "graph": f.to_graph6()?,
        "witness": to_json(&w),
        "lambda_q": q_strings,
        "lambda_x": x_strings,
        "bernstein": strings(&bern),
        "degree_le1": to_json(&affine),
        "alg_system": to_json(&system),
    });
    Ok(Outcome::ok(json, text))
}

fn run_resultant(path: Option<usize>, graph: Option<&str>) -> Result<Outcome, Failure> {
    let f = match (path, graph) {
        (Some(n), _) => {
            if n < 2 {
                return Err(Failure::Usage("--path needs at least 2 vertices".into()));
            }
            SmallGraph::path(n)
        }
        (None, Some(g)) => read_graph(g)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let f = qrcert::graph::strip_isolated(&f);
    let (f1, f2) = degree_seq_equations(&f)?;
    let by_v = |p: &qrcert::poly::BiPoly| -> Vec<Vec<String>> {
        p.coeffs().iter().map(|c| c.to_strings()).collect()
    };
    let analysis = analyze_resultant(&f)?;
    let (coeffs, r01, r1inf) = match &analysis {
        Some(a) => (
            a.resultant.to_strings(),
            Some(a.roots_01),
            Some(a.roots_1inf),
        ),
        None => (Vec::new(), None, None),
    };
    let text = match &analysis {
        Some(_) => format!(
            "R(u) = {}\nroots in (0,1): {}, in (1,inf): {}",
            poly_text(&coeffs, "u"),
            r01.unwrap(),
            r1inf.unwrap()
        ),
        None => "degenerate system: R(u) vanishes identically".into(),
    };
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "library_version": LIBRARY_VERSION,
        "graph": f.to_graph6()?,
        "f1_by_v_power": by_v(&f1),
        "f2_by_v_power": by_v(&f2),
        "resultant_coeffs": coeffs,
        "roots_01": r01,
        "roots_1inf": r1inf,
    });
    Ok(Outcome::ok(json, text))
}

/// Parts plus an optional explicit assignment.
type PartsFile = (Vec<Vec<usize>>, Option<Vec<usize>>);

fn read_parts(path: &Path) -> Result<PartsFile, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| Failure::Input(format!("{}: {e}", path.display()));
    let value: Value = serde_json::from_str(&text).map_err(bad)?;
    match value {
        Value::Array(_) => Ok((serde_json::from_value(value).map_err(bad)?, None)),
        Value::Object(mut map) => {
            let parts = map
                .remove("parts")
                .ok_or_else(|| Failure::Input(format!("{}: missing \"parts\"", path.display())))?;
            let assignment = match map.remove("assignment") {
                Some(a) => Some(serde_json::from_value(a).map_err(bad)?),
                None => None,
            };
            Ok((serde_json::from_value(parts).map_err(bad)?, assignment))
        }
        _ => Err(Failure::Input(format!(
            "{}: expected a list of parts or an object",
            path.display()
        ))),
    }
}

fn run_count(
    pattern: &str,
    host: &str,
    parts: Option<&Path>,
    symmetrize: bool,
    summed: bool,
    mults: Option<&[usize]>,
) -> Result<Outcome, Failure> {
    let f = read_graph(pattern)?;
    let g = read_graph(host)?;
    let m = f.vertex_count();
    let (parts, assignment) = match parts {
        Some(p) => read_parts(p)?,
        None => (vec![(0..g.vertex_count()).collect()], Some(vec![0; m])),
    };
    let (kind, value) = if summed {
        ("summed", count_summed(&f, &g, &parts)?.to_string())
    } else if let Some(mults) = mults {
        (
            "multiplicity_averaged",
            count_multiplicity_averaged(&f, &g, &parts, mults)?.to_string(),
        )
    } else {
        let assignment = match assignment {
            Some(a) => a,
            None if parts.len() == m => (0..m).collect(),
            None => {
                return Err(Failure::Input(format!(
                    "{} parts for a pattern on {m} vertices; give an assignment",
                    parts.len()
                )))
            }
        };
        let spec = PartitionSpec::new(parts.clone(), assignment);
        if symmetrize {
            ("symmetrized", count_symmetrized(&f, &g, &spec)?.to_string())
        } else {
            ("constrained", count_constrained(&f, &g, &spec)?.to_string())
        }
    };
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "library_version": LIBRARY_VERSION,
        "pattern": f.to_graph6()?,
        "host_vertices": g.vertex_count(),
        "host_edges": g.edge_count(),
        "kind": kind,
        "count": value,
    });
    Ok(Outcome::ok(json, format!("{kind} count: {value}")))
}

fn run_sample(model: &SampleModel) -> Result<Outcome, Failure> {
    let (g, params) = match model {
        SampleModel::Gnp { n, p, seed } => (
            gen_gnp(*n, p, *seed)?,
            json!({"model": "gnp", "n": n, "p": p.to_string(), "seed": seed}),
        ),
        SampleModel::Twotype { n, triple, seed } => {
            let w = TwoTypeGraphon::new(triple.u.clone(), triple.v.clone(), triple.s.clone())?;
            (
                gen_two_type(*n, &w, *seed)?,
                json!({"model": "two_type", "n": n, "graphon": to_json(&w), "seed": seed}),
            )
        }
    };
    let g6 = g.to_graph6()?;
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "library_version": LIBRARY_VERSION,
        "generator": params,
        "edges": g.edge_count(),
        "graph6": g6,
    });
    Ok(Outcome::ok(json, g6))
}

#[allow(clippy::too_many_arguments)]
fn run_experiment(
    pattern: &str,
    gen: &str,
    n: usize,
    p: Option<&Rational>,
    triple: &OptionalTripleArgs,
    alphas: &[Rational],
    trials: usize,
    seed: u64,
) -> Result<Outcome, Failure> {
    let f = read_graph(pattern)?;
    let generator = match gen {
        "gnp" => Generator::Gnp {
            n,
            p: p.cloned()
                .ok_or_else(|| Failure::Usage("gnp needs --p".into()))?,
        },
        _ => {
            let (Some(u), Some(v), Some(s)) = (&triple.u, &triple.v, &triple.s) else {
                return Err(Failure::Usage("twotype needs --u, --v and --s".into()));
            };
            Generator::TwoType {
                n,
                graphon: TwoTypeGraphon::new(u.clone(), v.clone(), s.clone())?,
            }
        }
    };
    if let Generator::Gnp { p, .. } = &generator {
        TwoTypeGraphon::constant(p.clone())?;
    }
    let report = qr_experiment(&f, &generator, alphas, trials, seed)?;
    let text = format!(
        "expected {} per trial; mean relative deviation {}; max {}",
        report.expected,
        report
            .mean_relative_deviation_f64
            .map_or("undefined".into(), |x| format!("{x:.6}")),
        report
            .max_relative_deviation_f64
            .map_or("undefined".into(), |x| format!("{x:.6}")),
    );
    Ok(Outcome::ok(to_json(&report), text))
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Certify { graph } => run_certify(graph),
        Command::Survey { m, list } => run_survey(*m, list.as_deref()),
        Command::Bipartite { a, b } => run_bipartite(*a, *b),
        Command::Lambda { graph, triple } => run_lambda(graph, triple),
        Command::Resultant { path, graph } => run_resultant(*path, graph.as_deref()),
        Command::Count {
            pattern,
            host,
            parts,
            symmetrize,
            summed,
            mults,
        } => run_count(
            pattern,
            host,
            parts.as_deref(),
            *symmetrize,
            *summed,
            mults.as_deref(),
        ),
        Command::Sample { model } => run_sample(model),
        Command::Experiment {
            pattern,
            gen,
            n,
            p,
            triple,
            alphas,
            trials,
            seed,
        } => run_experiment(pattern, gen, *n, p.as_ref(), triple, alphas, *trials, *seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("thread pool is configured once");
    }
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Internal(m) => (EXIT_SOFTWARE, m),
            };
            eprintln!("error: {msg}");
            return ExitCode::from(code);
        }
    };
    let rendered = if cli.human {
        outcome.text + "\n"
    } else {
        serde_json::to_string_pretty(&outcome.json).expect("json renders") + "\n"
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(outcome.code)
}
