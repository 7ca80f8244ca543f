//! Command-line surface. `run` parses arguments, writes results to `out` and
//! a single-line diagnostic to `err`, and returns the exit code.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::canon::{canonical_code, Mode};
use crate::complexes::{
    build_quotient_complex, enumerate_roses, enumerate_vertices, prop5_verify, reference_f_vector,
    Family,
};
use crate::format::{
    format_rational, parse_graph_file, parse_rational, serialize, to_json, Format, GraphFile,
    GraphValue,
};
use crate::morse::{
    canonical_split_forest, collapse_metric, critical_structure, is_split, max_epsilon,
    slide_branch, CriticalPoint, Length, MetricRibbonGraph, PathEnd,
};
use crate::moves::{collapse_forest, collapse_plain, expand, expand_plain, ArcPartition, Forest};
use crate::ribbon::{EdgeId, HalfEdge, Profile, RibbonGraph};
use crate::Error;

#[derive(Parser, Debug)]
#[command(
    name = "ribbon-degree",
    version,
    about = "Basepointed ribbon graphs and their degree complexes"
)]
struct Cli {
    /// Output format; `text` writes graphs in the native format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Worker threads for enumeration (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    #[arg(long)]
    genus: usize,
    #[arg(long)]
    punctures: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report surface type, degree, validity and critical structure.
    Analyze { file: String },
    /// List isomorphism classes of valid ribbon graphs of a surface type.
    Enumerate {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Degree bound (default: the top degree 4g+2p-4).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Only one-vertex graphs.
        #[arg(long)]
        roses_only: bool,
    },
    /// Quotient degree complex for ribbon graphs.
    Complex {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        max_degree: usize,
        /// Also list every cell.
        #[arg(long)]
        cells: bool,
    },
    /// Quotient degree complex for plain graphs of a given rank.
    Auter {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        cells: bool,
    },
    /// Generate and check the distinct roses of the alteration construction.
    Prop5 {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Canonical splitting of a metric graph.
    Split { file: String },
    /// Collapse the edges containing the given half-edges.
    Collapse {
        file: String,
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<HalfEdge>,
    },
    /// Split a vertex along an arc of its half-edges.
    Expand {
        file: String,
        #[arg(long)]
        vertex: String,
        #[arg(long, value_delimiter = ',', required = true)]
        arc: Vec<HalfEdge>,
    },
    /// Slide a branch of a split metric graph into its epsilon cone.
    Slide {
        file: String,
        #[arg(long)]
        branch: HalfEdge,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        epsilon: String,
    },
    /// Check canonical splitting on random metrics over enumerated graphs.
    CheckSplit {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

struct Context {
    format: OutputFormat,
    jobs: usize,
    seed: u64,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("bad arguments");
            let line = line.strip_prefix("error: ").unwrap_or(line);
            let _ = writeln!(err, "error[invalid-input]: {line}");
            return 1;
        }
    };
    let ctx = Context {
        format: cli.format,
        jobs: cli
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        seed: cli.seed,
    };
    let mut text = String::new();
    let result = dispatch(&ctx, cli.command, &mut text);
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error[{}]: {msg}", e.category());
            e.exit_code()
        }
    }
}

fn dispatch(ctx: &Context, command: Command, out: &mut String) -> Result<(), Error> {
    match command {
        Command::Analyze { file } => analyze(ctx, &read(&file)?, out),
        Command::Enumerate {
            surface,
            max_degree,
            roses_only,
        } => enumerate(ctx, surface, max_degree, roses_only, out),
        Command::Complex {
            surface,
            max_degree,
            cells,
        } => complex(
            ctx,
            Family::Ribbon {
                genus: surface.genus,
                punctures: surface.punctures,
            },
            max_degree,
            cells,
            out,
        ),
        Command::Auter {
            rank,
            max_degree,
            cells,
        } => complex(ctx, Family::Plain { rank }, max_degree, cells, out),
        Command::Prop5 { surface } => prop5(ctx, surface, out),
        Command::Split { file } => split(ctx, &read(&file)?, out),
        Command::Collapse { file, edges } => collapse(ctx, &read(&file)?, &edges, out),
        Command::Expand { file, vertex, arc } => expand_cmd(ctx, &read(&file)?, &vertex, &arc, out),
        Command::Slide {
            file,
            branch,
            target,
            epsilon,
        } => slide(ctx, &read(&file)?, branch, &target, &epsilon, out),
        Command::CheckSplit {
            surface,
            max_degree,
            samples,
        } => check_split(ctx, surface, max_degree, samples, out),
    }
}

fn read(path: &str) -> Result<GraphFile, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
    parse_graph_file(&text).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

fn rational(text: &str, what: &str) -> Result<Length, Error> {
    parse_rational(text)
        .ok_or_else(|| Error::Invalid(format!("{what} `{text}` is not a rational p/q")))
}

fn emit_json(out: &mut String, value: &Value) {
    out.push_str(&serde_json::to_string_pretty(value).expect("json values serialize"));
    out.push('\n');
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn analyze(ctx: &Context, file: &GraphFile, out: &mut String) -> Result<(), Error> {
    let g = file.value.ribbon();
    let (kind, mode) = match file.value {
        GraphValue::Plain(_) => ("plain", Mode::Plain),
        GraphValue::Metric(_) => ("metric", Mode::Ribbon),
        GraphValue::Ribbon(_) => ("ribbon", Mode::Ribbon),
    };
    let report = g.validate(match mode {
        Mode::Ribbon => Profile::RibbonSpace,
        Mode::Plain => Profile::AuterSpace,
    });
    let violations: Vec<String> = report.violations(g).iter().map(|v| v.to_string()).collect();
    let code = canonical_code(g, mode).to_string();
    let surface = (mode == Mode::Ribbon).then(|| g.surface_type());
    let cycles: Vec<Vec<HalfEdge>> = if mode == Mode::Ribbon {
        g.boundary_cycles()
            .iter()
            .map(|c| c.half_edges().to_vec())
            .collect()
    } else {
        Vec::new()
    };
    let metric = match &file.value {
        GraphValue::Metric(m) => Some(m),
        _ => None,
    };

    if ctx.format == OutputFormat::Json {
        let mut v = json!({
            "kind": kind,
            "halfedges": g.half_edge_count(),
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "basepoint": g.basepoint().0,
            "rank": g.rank(),
            "degree": g.degree(),
            "valid": report.is_valid(),
            "violations": violations,
            "canonical_code": code,
        });
        if let Some(s) = surface {
            v["genus"] = json!(s.genus);
            v["punctures"] = json!(s.punctures);
            v["boundary_cycles"] = json!(cycles);
        }
        if let Some(m) = metric {
            v["metric"] = metric_json(m);
        }
        emit_json(out, &v);
        return Ok(());
    }

    writeln!(out, "kind {kind}").unwrap();
    writeln!(out, "half-edges {}", g.half_edge_count()).unwrap();
    writeln!(out, "vertices {}", g.vertex_count()).unwrap();
    writeln!(out, "edges {}", g.edge_count()).unwrap();
    writeln!(out, "basepoint {}", g.basepoint().0).unwrap();
    if let Some(s) = surface {
        writeln!(out, "genus {}", s.genus).unwrap();
        writeln!(out, "punctures {}", s.punctures).unwrap();
    }
    writeln!(out, "rank {}", g.rank()).unwrap();
    writeln!(out, "degree {}", g.degree()).unwrap();
    if surface.is_some() {
        writeln!(out, "boundary-cycles {}", cycles.len()).unwrap();
        for c in &cycles {
            writeln!(out, "boundary {}", join(c)).unwrap();
        }
    }
    writeln!(out, "valid {}", report.is_valid()).unwrap();
    for v in &violations {
        writeln!(out, "violation {v}").unwrap();
    }
    writeln!(out, "canonical-code {code}").unwrap();
    if let Some(m) = metric {
        metric_text(m, out);
    }
    Ok(())
}

fn point_text(p: &CriticalPoint) -> String {
    match p {
        CriticalPoint::Vertex(v) => format!("vertex {}", v.0),
        CriticalPoint::Interior(x) => format!(
            "interior edge {} offset {}",
            x.edge.0,
            format_rational(&x.offset)
        ),
    }
}

fn end_text(e: &PathEnd) -> String {
    match e {
        PathEnd::Critical(i) => format!("critical {i}"),
        PathEnd::Basepoint => "basepoint".to_string(),
    }
}

fn metric_text(m: &MetricRibbonGraph, out: &mut String) {
    let cs = critical_structure(m);
    writeln!(out, "normalized {}", m.is_normalized()).unwrap();
    for (v, h) in cs.heights.vertices() {
        writeln!(out, "height {} {}", v.0, format_rational(h)).unwrap();
    }
    for (i, p) in cs.points.iter().enumerate() {
        writeln!(
            out,
            "critical {i} {} height {} codimension {} downward {}",
            point_text(&p.point),
            format_rational(&p.height),
            p.codimension,
            join(&p.downward)
        )
        .unwrap();
    }
    for p in &cs.paths {
        writeln!(
            out,
            "path from {} via {} to {}",
            p.from,
            join(&p.arrivals),
            end_text(&p.to)
        )
        .unwrap();
    }
    writeln!(out, "codimension {}", cs.codimension).unwrap();
    writeln!(out, "c {}", cs.c).unwrap();
    writeln!(out, "e {}", cs.e).unwrap();
    writeln!(out, "split {}", is_split(m)).unwrap();
    writeln!(out, "epsilon-bound {}", format_rational(&max_epsilon(m))).unwrap();
}

fn metric_json(m: &MetricRibbonGraph) -> Value {
    let cs = critical_structure(m);
    let heights: Vec<Value> = cs
        .heights
        .vertices()
        .iter()
        .map(|(v, h)| json!({ "vertex": v.0, "height": format_rational(h) }))
        .collect();
    let points: Vec<Value> = cs
        .points
        .iter()
        .map(|p| {
            let mut v = json!({
                "height": format_rational(&p.height),
                "codimension": p.codimension,
                "downward": p.downward,
            });
            match &p.point {
                CriticalPoint::Vertex(x) => v["vertex"] = json!(x.0),
                CriticalPoint::Interior(x) => {
                    v["edge"] = json!(x.edge.0);
                    v["offset"] = json!(format_rational(&x.offset));
                }
            }
            v
        })
        .collect();
    let paths: Vec<Value> = cs
        .paths
        .iter()
        .map(|p| {
            let to = match p.to {
                PathEnd::Critical(i) => json!(i),
                PathEnd::Basepoint => json!("basepoint"),
            };
            json!({ "from": p.from, "arrivals": p.arrivals, "to": to })
        })
        .collect();
    json!({
        "normalized": m.is_normalized(),
        "heights": heights,
        "critical_points": points,
        "paths": paths,
        "codimension": cs.codimension,
        "c": cs.c,
        "e": cs.e,
        "split": is_split(m),
        "epsilon_bound": format_rational(&max_epsilon(m)),
    })
}

fn enumerate(
    ctx: &Context,
    surface: SurfaceArgs,
    max_degree: Option<usize>,
    roses_only: bool,
    out: &mut String,
) -> Result<(), Error> {
    let family = Family::Ribbon {
        genus: surface.genus,
        punctures: surface.punctures,
    };
    let classes = if roses_only {
        enumerate_roses(surface.genus, surface.punctures)?
    } else {
        enumerate_vertices(family, max_degree, ctx.jobs)?
    };
    let mut rows: Vec<(usize, String)> = classes
        .iter()
        .map(|(c, g)| (g.degree(), c.to_string()))
        .collect();
    rows.sort();
    if ctx.format == OutputFormat::Json {
        let list: Vec<Value> = rows
            .iter()
            .map(|(d, c)| json!({ "degree": d, "code": c }))
            .collect();
        emit_json(
            out,
            &json!({
                "genus": surface.genus,
                "punctures": surface.punctures,
                "max_degree": max_degree,
                "roses_only": roses_only,
                "count": rows.len(),
                "classes": list,
            }),
        );
        return Ok(());
    }
    writeln!(out, "genus {}", surface.genus).unwrap();
    writeln!(out, "punctures {}", surface.punctures).unwrap();
    if let Some(k) = max_degree {
        writeln!(out, "max-degree {k}").unwrap();
    }
    writeln!(out, "classes {}", rows.len()).unwrap();
    for (d, c) in &rows {
        writeln!(out, "degree {d} code {c}").unwrap();
    }
    Ok(())
}

fn complex(
    ctx: &Context,
    family: Family,
    k: usize,
    cells: bool,
    out: &mut String,
) -> Result<(), Error> {
    let summary = build_quotient_complex(family, k, ctx.jobs)?;
    let reference = reference_f_vector(family, k);
    let mismatch = reference.as_ref().is_some_and(|r| *r != summary.f_vector);
    if ctx.format == OutputFormat::Json {
        let mut v = serde_json::to_value(&summary).expect("summary serializes");
        if !cells {
            v.as_object_mut()
                .expect("summary is an object")
                .remove("cells");
        }
        v["reference_f_vector"] = json!(reference);
        emit_json(out, &v);
    } else {
        match family {
            Family::Ribbon { genus, punctures } => {
                writeln!(out, "genus {genus}").unwrap();
                writeln!(out, "punctures {punctures}").unwrap();
            }
            Family::Plain { rank } => writeln!(out, "rank {rank}").unwrap(),
        }
        writeln!(out, "max-degree {k}").unwrap();
        writeln!(out, "f-vector {}", join(&summary.f_vector)).unwrap();
        writeln!(out, "euler {}", summary.euler).unwrap();
        writeln!(out, "connected {}", summary.connected).unwrap();
        if let Some(r) = &reference {
            writeln!(out, "reference {}", join(r)).unwrap();
        }
        if cells {
            for c in &summary.cells {
                let flag: Vec<String> = c.flag.iter().map(|f| format!("{{{}}}", join(f))).collect();
                writeln!(
                    out,
                    "cell {} host {} flag {}",
                    c.dim,
                    c.host_code,
                    flag.join(" < ")
                )
                .unwrap();
            }
        }
    }
    if mismatch {
        return Err(Error::Verification(format!(
            "f-vector {} differs from the published {}",
            join(&summary.f_vector),
            join(reference.as_ref().expect("mismatch implies a reference"))
        )));
    }
    Ok(())
}

fn prop5(ctx: &Context, surface: SurfaceArgs, out: &mut String) -> Result<(), Error> {
    let report = prop5_verify(surface.genus, surface.punctures)?;
    if ctx.format == OutputFormat::Json {
        let mut v = serde_json::to_value(&report).expect("report serializes");
        v["passed"] = json!(report.passed());
        emit_json(out, &v);
    } else {
        writeln!(out, "genus {}", report.genus).unwrap();
        writeln!(out, "punctures {}", report.punctures).unwrap();
        writeln!(out, "expected {}", report.expected).unwrap();
        writeln!(out, "emitted {}", report.emitted).unwrap();
        writeln!(out, "distinct {}", report.distinct).unwrap();
        match report.in_census {
            Some(b) => writeln!(out, "in-census {b}").unwrap(),
            None => writeln!(out, "in-census unchecked").unwrap(),
        }
        for w in &report.witnesses {
            let alts = if w.alterations.is_empty() {
                "-".to_string()
            } else {
                w.alterations
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            writeln!(
                out,
                "rose {alts} rotation {} code {}",
                join(&w.rotation),
                w.code
            )
            .unwrap();
        }
        writeln!(
            out,
            "result {}",
            if report.passed() { "pass" } else { "fail" }
        )
        .unwrap();
    }
    if !report.passed() {
        return Err(Error::Verification(format!(
            "expected {} distinct roses, found {} of {}",
            report.expected, report.distinct, report.emitted
        )));
    }
    Ok(())
}

fn emit_graph(
    ctx: &Context,
    value: &GraphValue,
    extra: Option<(&str, Vec<HalfEdge>)>,
    out: &mut String,
) {
    match ctx.format {
        OutputFormat::Text => {
            if let Some((name, items)) = &extra {
                if items.is_empty() {
                    writeln!(out, "# {name}").unwrap();
                } else {
                    writeln!(out, "# {name} {}", join(items)).unwrap();
                }
            }
            out.push_str(&serialize(value, Format::Native));
        }
        OutputFormat::Json => {
            let mut v = to_json(value);
            if let Some((name, items)) = extra {
                v[name] = json!(items);
            }
            emit_json(out, &v);
        }
    }
}

fn require_metric<'a>(file: &'a GraphFile, command: &str) -> Result<&'a MetricRibbonGraph, Error> {
    match &file.value {
        GraphValue::Metric(m) => Ok(m),
        _ => Err(Error::Invalid(format!(
            "{command} needs a ribbon graph with edge lengths"
        ))),
    }
}

fn split(ctx: &Context, file: &GraphFile, out: &mut String) -> Result<(), Error> {
    let m = require_metric(file, "split")?;
    let (result, forest) = canonical_split_forest(m)?;
    let collapsed = forest.edges().map(|e| e.0).collect();
    emit_graph(
        ctx,
        &GraphValue::Metric(result),
        Some(("collapsed", collapsed)),
        out,
    );
    Ok(())
}

fn collapse(
    ctx: &Context,
    file: &GraphFile,
    edges: &[HalfEdge],
    out: &mut String,
) -> Result<(), Error> {
    let g = file.value.ribbon();
    let forest = Forest::new(g, edges.iter().copied())?;
    let value = match &file.value {
        GraphValue::Ribbon(g) => GraphValue::Ribbon(collapse_forest(g, &forest)?),
        GraphValue::Metric(m) => GraphValue::Metric(collapse_metric(m, &forest)?),
        GraphValue::Plain(p) => GraphValue::Plain(collapse_plain(p, &forest)?),
    };
    emit_graph(ctx, &value, None, out);
    Ok(())
}

fn expand_cmd(
    ctx: &Context,
    file: &GraphFile,
    vertex: &str,
    arc: &[HalfEdge],
    out: &mut String,
) -> Result<(), Error> {
    let v = file
        .vertex(vertex)
        .ok_or_else(|| Error::Invalid(format!("vertex `{vertex}` is not in the file")))?;
    let g = file.value.ribbon();
    let rot = g.rotation(v);
    let distinct: BTreeSet<HalfEdge> = arc.iter().copied().collect();
    if distinct.len() != arc.len() {
        return Err(Error::Invalid("the arc lists a half-edge twice".into()));
    }
    if let Some(h) = arc.iter().find(|h| !rot.contains(h)) {
        return Err(Error::Invalid(format!(
            "half-edge {h} is not at vertex `{vertex}`"
        )));
    }
    let value = match &file.value {
        GraphValue::Metric(_) => {
            return Err(Error::Invalid(
                "expand acts on graphs without lengths".into(),
            ))
        }
        GraphValue::Ribbon(g) => {
            let start = rot
                .iter()
                .position(|&h| h == arc[0])
                .expect("checked above");
            let d = rot.len();
            let b: Vec<HalfEdge> = (arc.len()..d).map(|i| rot[(start + i) % d]).collect();
            let part = ArcPartition {
                vertex: v,
                a: arc.to_vec(),
                b,
            };
            GraphValue::Ribbon(expand(g, &part)?)
        }
        GraphValue::Plain(p) => {
            let b: Vec<HalfEdge> = rot
                .iter()
                .copied()
                .filter(|h| !distinct.contains(h))
                .collect();
            GraphValue::Plain(expand_plain(p, v, arc, &b)?)
        }
    };
    let report = value.ribbon().validate(Profile::RibbonSpace);
    if let Some(violation) = report.violations(value.ribbon()).first() {
        return Err(Error::Invalid(format!(
            "expansion is not allowed: {violation}"
        )));
    }
    emit_graph(ctx, &value, None, out);
    Ok(())
}

fn slide(
    ctx: &Context,
    file: &GraphFile,
    branch: HalfEdge,
    target: &str,
    epsilon: &str,
    out: &mut String,
) -> Result<(), Error> {
    let m = require_metric(file, "slide")?;
    let target = rational(target, "target")?;
    let eps = rational(epsilon, "epsilon")?;
    let result = slide_branch(m, &eps, branch, target)?;
    let created = result.created.iter().map(|e| e.0).collect();
    emit_graph(
        ctx,
        &GraphValue::Metric(result.graph),
        Some(("created", created)),
        out,
    );
    Ok(())
}

/// A metric with lengths `a/b`, `1 <= a <= 30`, `1 <= b <= 12`.
pub fn random_metric(g: &RibbonGraph, rng: &mut impl Rng) -> MetricRibbonGraph {
    let lengths = g
        .edge_ids()
        .into_iter()
        .map(|e: EdgeId| {
            let a: i64 = rng.gen_range(1..=30);
            let b: i64 = rng.gen_range(1..=12);
            (e, Length::new(BigInt::from(a), BigInt::from(b)))
        })
        .collect();
    MetricRibbonGraph::normalized(g.clone(), lengths).expect("positive lengths on every edge")
}

fn check_split(
    ctx: &Context,
    surface: SurfaceArgs,
    max_degree: Option<usize>,
    samples: usize,
    out: &mut String,
) -> Result<(), Error> {
    let family = Family::Ribbon {
        genus: surface.genus,
        punctures: surface.punctures,
    };
    let graphs: Vec<RibbonGraph> = enumerate_vertices(family, max_degree, ctx.jobs)?
        .into_values()
        .collect();
    if graphs.is_empty() {
        return Err(Error::Invalid("no valid graphs of this type".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut failures = Vec::new();
    for i in 0..samples {
        let g = &graphs[rng.gen_range(0..graphs.len())];
        let m = random_metric(g, &mut rng);
        let s = crate::morse::canonical_split(&m)?;
        let again = crate::morse::canonical_split(&s)?;
        let ok = is_split(&s)
            && again == s
            && s.graph().degree() <= g.degree()
            && s.graph().surface_type() == g.surface_type();
        if !ok {
            failures.push(i);
        }
    }
    if ctx.format == OutputFormat::Json {
        emit_json(
            out,
            &json!({
                "genus": surface.genus,
                "punctures": surface.punctures,
                "seed": ctx.seed,
                "graphs": graphs.len(),
                "samples": samples,
                "failures": failures,
            }),
        );
    } else {
        writeln!(out, "graphs {}", graphs.len()).unwrap();
        writeln!(out, "samples {samples}").unwrap();
        writeln!(out, "seed {}", ctx.seed).unwrap();
        writeln!(out, "failures {}", failures.len()).unwrap();
    }
    if !failures.is_empty() {
        return Err(Error::Verification(format!(
            "{} samples failed",
            failures.len()
        )));
    }
    Ok(())
}
