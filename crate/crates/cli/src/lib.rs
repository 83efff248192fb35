//! Command-line front end for `otformal`.
//!
//! [`run`] parses arguments, dispatches one command and returns the exit
//! code with the text (or JSON) report, so tests can drive it in-process.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use otformal_core::arrangement::DEFAULT_FLAT_LIMIT;
use otformal_core::betti::{koszul_betti, BettiOptions, FieldMode};
use otformal_core::exactlin::DEFAULT_PRIME;
use otformal_core::graphic::{
    chordless_cycles, clique_homology, graph_to_arrangement, graphic_formality_with, is_chordal, kappa_counts,
    parse_graph, Graph,
};
use otformal_core::groebner::{render_poly, BuchbergerConfig, MonomialOrder};
use otformal_core::matroid::{broken_circuits, circuits};
use otformal_core::otalgebra::{
    aot_hilbert_check, codim_degree, formality_with, ot_ideal_in, phi_vanishing_check, syzygy_implication_check,
    FormalityMethod,
};
use otformal_core::{parse_arrangement, Arrangement, Error};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "otformal", version, about = "Orlik-Terao algebras and 2-formality of hyperplane arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Which OT ideal to use.
    #[arg(long, global = true, value_enum, default_value_t = IdealKind::Full)]
    ideal: IdealKind,
    /// Monomial order for Gröbner bases.
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    order: OrderArg,
    /// Formality test(s) to run.
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    /// Compute Betti numbers modulo this prime.
    #[arg(long, global = true, conflicts_with = "exact")]
    prime: Option<u64>,
    /// Compute Betti numbers over the rationals.
    #[arg(long, global = true)]
    exact: bool,
    #[arg(long, global = true)]
    max_i: Option<usize>,
    #[arg(long, global = true)]
    max_j: Option<usize>,
    /// Random points for the phi vanishing check.
    #[arg(long, global = true, default_value_t = 5)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on queued S-pairs in Buchberger's algorithm.
    #[arg(long, global = true)]
    limit_pairs: Option<usize>,
    /// Cap on the number of flats in the intersection lattice.
    #[arg(long, global = true)]
    limit_flats: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum IdealKind {
    Full,
    Quadratic,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Direct,
    Codim,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Commands on `.arr` arrangement files.
    Arr {
        #[command(subcommand)]
        command: ArrCommand,
    },
    /// Commands on `.graph` files.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ArrCommand {
    /// Size, rank, Poincaré polynomial and multiple points.
    Info { file: PathBuf },
    /// Circuits with their dependencies, and broken circuits.
    Circuits { file: PathBuf },
    /// Generators and reduced Gröbner basis of the OT ideal.
    Ot { file: PathBuf },
    /// Decide 2-formality.
    Formality { file: PathBuf },
    /// Hilbert series of the OT algebra.
    Hilbert { file: PathBuf },
    /// Graded Betti numbers of the OT algebra.
    Betti { file: PathBuf },
    /// Linear syzygies among quadrics and the dependence they force.
    Syzygies { file: PathBuf },
    /// Artinian OT algebra against the Poincaré polynomial, and vanishing
    /// of the generators at random points.
    Aot { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    /// Vertices, edges, chordless cycles, clique counts and homology.
    Info { file: PathBuf },
    /// Print the graphic arrangement in `.arr` format.
    ToArr { file: PathBuf },
    /// Decide 2-formality from the clique complex and cross-check.
    Formality { file: PathBuf },
    /// Graded Betti numbers of the graphic OT algebra.
    Betti { file: PathBuf },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Core(Error),
    /// An error raised while reading the named input file.
    Input(String, Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Core(e) | Failure::Input(_, e) => match e {
                Error::Parse { .. } => EXIT_PARSE,
                Error::Resource { .. } => EXIT_RESOURCE,
                Error::Invariant(_) => EXIT_INVARIANT,
                _ => EXIT_USAGE,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
            Failure::Input(path, e) => format!("{path}: {e}"),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Text and JSON renderings of a command's result.
struct Output {
    text: String,
    input: Value,
    result: Value,
    field_mode: Option<FieldMode>,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr };
        }
    };
    let start = Instant::now();
    let (command, outcome) = dispatch(&cli);
    match outcome {
        Ok(out) => {
            let stdout = if cli.opts.json {
                let report = json!({
                    "command": command,
                    "input": out.input,
                    "result": out.result,
                    "field_mode": out.field_mode,
                    "seed": cli.opts.seed,
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                });
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                out.text + "\n"
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(f) => Outcome { code: f.code(), stdout: String::new(), stderr: format!("error: {}\n", f.message()) },
    }
}

fn dispatch(cli: &Cli) -> (String, Res<Output>) {
    let o = &cli.opts;
    match &cli.command {
        Command::Arr { command } => {
            let (name, file) = match command {
                ArrCommand::Info { file } => ("info", file),
                ArrCommand::Circuits { file } => ("circuits", file),
                ArrCommand::Ot { file } => ("ot", file),
                ArrCommand::Formality { file } => ("formality", file),
                ArrCommand::Hilbert { file } => ("hilbert", file),
                ArrCommand::Betti { file } => ("betti", file),
                ArrCommand::Syzygies { file } => ("syzygies", file),
                ArrCommand::Aot { file } => ("aot", file),
            };
            let res = load_arrangement(file).and_then(|a| {
                let input = arrangement_summary(file, &a);
                let mut out = match command {
                    ArrCommand::Info { .. } => arr_info(&a, o),
                    ArrCommand::Circuits { .. } => arr_circuits(&a, o),
                    ArrCommand::Ot { .. } => arr_ot(&a, o),
                    ArrCommand::Formality { .. } => arr_formality(&a, o),
                    ArrCommand::Hilbert { .. } => arr_hilbert(&a, o),
                    ArrCommand::Betti { .. } => betti(&a, o),
                    ArrCommand::Syzygies { .. } => arr_syzygies(&a),
                    ArrCommand::Aot { .. } => arr_aot(&a, o),
                }?;
                out.input = input;
                Ok(out)
            });
            (format!("arr {name}"), res)
        }
        Command::Graph { command } => {
            let (name, file) = match command {
                GraphCommand::Info { file } => ("info", file),
                GraphCommand::ToArr { file } => ("to-arr", file),
                GraphCommand::Formality { file } => ("formality", file),
                GraphCommand::Betti { file } => ("betti", file),
            };
            let res = load_graph(file).and_then(|g| {
                let input = json!({
                    "path": file.display().to_string(),
                    "kind": "graph",
                    "vertices": g.vertices(),
                    "edges": g.edges().len(),
                });
                let mut out = match command {
                    GraphCommand::Info { .. } => graph_info(&g),
                    GraphCommand::ToArr { .. } => graph_to_arr(&g, file),
                    GraphCommand::Formality { .. } => graph_formality(&g, o),
                    GraphCommand::Betti { .. } => betti(&graph_to_arrangement(&g)?, o),
                }?;
                out.input = input;
                Ok(out)
            });
            (format!("graph {name}"), res)
        }
    }
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_arrangement(path: &Path) -> Res<Arrangement> {
    let text = read(path)?;
    parse_arrangement(&text).map_err(|e| Failure::Input(path.display().to_string(), e))
}

fn load_graph(path: &Path) -> Res<Graph> {
    let text = read(path)?;
    parse_graph(&text).map_err(|e| Failure::Input(path.display().to_string(), e))
}

fn arrangement_summary(path: &Path, a: &Arrangement) -> Value {
    json!({
        "path": path.display().to_string(),
        "kind": "arrangement",
        "name": a.name(),
        "ambient": a.ambient_dim(),
        "d": a.len(),
        "rank": a.rank(),
    })
}

fn output(text: String, result: Value) -> Output {
    Output { text, input: Value::Null, result, field_mode: None }
}

fn config(o: &Opts) -> BuchbergerConfig {
    o.limit_pairs.map(|max_pairs| BuchbergerConfig { max_pairs }).unwrap_or_default()
}

fn order(o: &Opts) -> MonomialOrder {
    match o.order {
        OrderArg::Lex => MonomialOrder::Lex,
        OrderArg::Grevlex => MonomialOrder::Grevlex,
    }
}

fn method(o: &Opts) -> FormalityMethod {
    match o.method {
        MethodArg::Direct => FormalityMethod::Direct,
        MethodArg::Codim => FormalityMethod::Codim,
        MethodArg::Both => FormalityMethod::Both,
    }
}

fn quadratic(o: &Opts) -> bool {
    o.ideal == IdealKind::Quadratic
}

fn ideal_label(o: &Opts) -> &'static str {
    if quadratic(o) { "quadratic" } else { "full" }
}

fn yes(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|i| i + 1).collect()
}

fn arr_info(a: &Arrangement, o: &Opts) -> Res<Output> {
    let lattice = a.lattice_with_limit(o.limit_flats.unwrap_or(DEFAULT_FLAT_LIMIT))?;
    let p = lattice.poincare();
    let flats: Vec<usize> = (0..=a.rank()).map(|k| lattice.flats_of_rank(k).len()).collect();
    let multiple: Vec<Vec<usize>> = lattice.multiple_points().map(|f| one_based(&f.hyperplanes)).collect();
    let mut text = vec![
        format!("name: {}", a.name().unwrap_or("-")),
        format!("ambient: {}, hyperplanes: {}, rank: {}", a.ambient_dim(), a.len(), a.rank()),
        format!("poincare: {}", render_poly(&p.coefficients().iter().map(|&c| c as i64).collect::<Vec<_>>())),
        format!("flats by rank: {}", join(&flats, " ")),
        format!("multiple points: {}", multiple.len()),
    ];
    text.extend(multiple.iter().map(|m| format!("  {{{}}}", join(m, ","))));
    Ok(output(
        text.join("\n"),
        json!({
            "poincare": p.coefficients(),
            "flats_by_rank": flats,
            "multiple_points": multiple,
            "essential": a.is_essential(),
        }),
    ))
}

fn arr_circuits(a: &Arrangement, o: &Opts) -> Res<Output> {
    let cs = circuits(a, quadratic(o).then_some(3));
    let bcs = broken_circuits(&cs);
    let mut text = vec![format!("circuits: {}", cs.len())];
    for c in &cs {
        let terms: Vec<String> = c.indices.iter().zip(&c.weights).map(|(i, w)| format!("{w}*a{}", i + 1)).collect();
        text.push(format!("  {{{}}}: {} = 0", join(&one_based(&c.indices), ","), terms.join(" + ").replace("+ -", "- ")));
    }
    text.push(format!("broken circuits: {}", bcs.len()));
    let json_cs: Vec<Value> = cs
        .iter()
        .map(|c| json!({"hyperplanes": one_based(&c.indices), "weights": c.weights}))
        .collect();
    let json_bcs: Vec<Vec<usize>> = bcs.iter().map(|b| one_based(&b.indices)).collect();
    Ok(output(text.join("\n"), json!({"circuits": json_cs, "broken_circuits": json_bcs})))
}

fn arr_ot(a: &Arrangement, o: &Opts) -> Res<Output> {
    let ideal = ot_ideal_in(a, quadratic(o), order(o))?;
    let gb = ideal.groebner(order(o), config(o))?;
    let mut text = vec![format!("{} OT ideal: {} generators", ideal_label(o), ideal.len())];
    text.extend(ideal.generators.iter().map(|g| format!("  {g}")));
    text.push(format!("reduced Gröbner basis ({:?}): {} elements", order(o), gb.len()).to_lowercase());
    text.extend(gb.gens().iter().map(|g| format!("  {g}")));
    Ok(output(
        text.join("\n"),
        json!({
            "ideal": ideal_label(o),
            "order": format!("{:?}", order(o)).to_lowercase(),
            "generators": ideal.generators,
            "groebner_basis": gb.gens(),
        }),
    ))
}

fn arr_formality(a: &Arrangement, o: &Opts) -> Res<Output> {
    let r = formality_with(a, method(o), config(o))?;
    Ok(output(r.summary(), serde_json::to_value(&r).expect("serializable")))
}

fn arr_hilbert(a: &Arrangement, o: &Opts) -> Res<Output> {
    let ideal = ot_ideal_in(a, quadratic(o), order(o))?;
    let gb = ideal.groebner(order(o), config(o))?;
    let hs = gb.hilbert_series()?;
    let (codim, degree) = codim_degree(&ideal)?;
    let text = [
        format!("{} OT algebra", ideal_label(o)),
        format!("hilbert series: {hs}"),
        format!("dimension {}, codimension {codim}, degree {degree}", hs.dimension()),
    ];
    Ok(output(
        text.join("\n"),
        json!({
            "ideal": ideal_label(o),
            "series": hs,
            "rendered": hs.to_string(),
            "dimension": hs.dimension(),
            "codimension": codim,
            "degree": degree,
        }),
    ))
}

fn betti(a: &Arrangement, o: &Opts) -> Res<Output> {
    let field = match (o.exact, o.prime) {
        (true, _) => FieldMode::Rational,
        (false, Some(p)) => FieldMode::Prime(p),
        (false, None) => FieldMode::Prime(DEFAULT_PRIME),
    };
    let opts = BettiOptions { max_i: o.max_i, max_j: o.max_j, field, ..Default::default() };
    let ideal = ot_ideal_in(a, quadratic(o), MonomialOrder::Grevlex)?;
    let table = koszul_betti(&ideal.generators, a.len(), &opts)?;
    let mut result = serde_json::to_value(&table).expect("serializable");
    result["ideal"] = json!(ideal_label(o));
    result["totals"] = json!(table.totals());
    Ok(Output { text: table.to_string(), input: Value::Null, result, field_mode: Some(field) })
}

fn arr_syzygies(a: &Arrangement) -> Res<Output> {
    let r = syzygy_implication_check(a)?;
    let checked = r.instances.iter().filter(|i| matches!(i, otformal_core::otalgebra::SyzygyInstance::Checked { .. })).count();
    let text = [
        format!("quadrics: {}, linear syzygies: {}", r.quadrics, r.syzygies),
        format!("instances: {} ({checked} checked)", r.instances.len()),
        format!("all dependent: {}", yes(r.all_pass)),
    ];
    // 1-based quadric positions, with the hyperplanes of each 3-circuit
    let quadrics = ot_ideal_in(a, true, MonomialOrder::Grevlex)?;
    let mut result = serde_json::to_value(&r).expect("serializable");
    for inst in result["instances"].as_array_mut().expect("array") {
        let support: Vec<usize> = serde_json::from_value(inst["support"].clone()).expect("indices");
        let triples: Vec<Vec<usize>> = support.iter().map(|&i| one_based(&quadrics.circuits[i].indices)).collect();
        inst["support"] = json!(one_based(&support));
        inst["circuits"] = json!(triples);
    }
    Ok(output(text.join("\n"), result))
}

fn arr_aot(a: &Arrangement, o: &Opts) -> Res<Output> {
    let report = aot_hilbert_check(a, a.rank())?;
    let ideal = ot_ideal_in(a, quadratic(o), MonomialOrder::Grevlex)?;
    let vanishes = phi_vanishing_check(a, &ideal, o.trials, o.seed)?;
    let text = [
        format!("AOT hilbert function: {}", join(&report.aot, " ")),
        format!("poincare coefficients: {}", join(&report.poincare, " ")),
        format!("agree: {}", yes(report.agrees)),
        format!("generators vanish at {} random points: {}", o.trials, yes(vanishes)),
    ];
    Ok(output(
        text.join("\n"),
        json!({
            "aot": report.aot,
            "poincare": report.poincare,
            "agrees": report.agrees,
            "phi_vanishing": {"trials": o.trials, "seed": o.seed, "holds": vanishes},
        }),
    ))
}

fn graph_info(g: &Graph) -> Res<Output> {
    let cycles = chordless_cycles(g);
    let long: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() > 3).collect();
    let mut kappa = kappa_counts(g, g.vertices().saturating_sub(1));
    while kappa.last() == Some(&0) {
        kappa.pop();
    }
    let h1 = clique_homology(g, 1);
    let chordal = is_chordal(g);
    let mut text = vec![
        format!("vertices: {}, edges: {}, components: {}", g.vertices(), g.edges().len(), g.components()),
        format!("cliques on 2, 3, ... vertices: {}", join(&kappa, " ")),
        format!("chordal: {}", yes(chordal)),
        format!("H1 of clique complex: {h1}"),
        format!("chordless cycles of length > 3: {}", long.len()),
    ];
    text.extend(long.iter().map(|c| format!("  {}", join(c, "-"))));
    Ok(output(
        text.join("\n"),
        json!({
            "components": g.components(),
            "clique_counts": kappa,
            "chordal": chordal,
            "h1": h1,
            "chordless_cycles": cycles,
        }),
    ))
}

fn graph_to_arr(g: &Graph, path: &Path) -> Res<Output> {
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let a = graph_to_arrangement(g)?.with_name(name);
    let text = a.to_arr_text();
    Ok(output(text.trim_end().to_string(), json!({"arr": text, "d": a.len(), "rank": a.rank()})))
}

fn graph_formality(g: &Graph, o: &Opts) -> Res<Output> {
    let r = graphic_formality_with(g, method(o), config(o))?;
    let text = format!("{}; H1 = {}", r.arrangement.summary(), r.h1);
    Ok(output(text, serde_json::to_value(&r).expect("serializable")))
}
