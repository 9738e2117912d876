use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use premod::classify::{classify_rank5, ClassificationReport, ClassifyConfig};
use premod::data::DataSet;
use premod::exact_algebra::{parse_cyclotomic, TwistSymbol};
use premod::fusion_ring::{enumerate_fusion_rings_with, DimensionVector, FusionConstraints, FusionRing, SearchConfig};
use premod::groups::{census, character_table, identify_rep_ring};
use premod::premodular::{
    degeneracy_class, muger_center, orthogonality_failures, theta_condition_residual, DatumViolation, PremodularDatum,
};

#[derive(Parser)]
#[command(name = "premod", version, about = "Exact premodular data and the rank-5 classification")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the main output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 60, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_order: u64,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    node_budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check every premodular equation on a datum file.
    Validate { file: PathBuf },
    /// Run the rank-5 case analysis.
    Classify,
    /// Catalog groups with K conjugacy classes and order at most MAX_ORDER.
    Census {
        k: usize,
        #[arg(value_name = "MAX_ORDER")]
        bound: usize,
    },
    /// Order, classes and irreducible degrees of a catalog group.
    GroupInfo { label: String },
    /// Enumerate commutative fusion rings with the given dimensions.
    Solve {
        #[arg(long)]
        rank: usize,
        /// Comma-separated, e.g. `1,1,2,1,1` or `1,1,phi^2,phi^2,2phi`.
        #[arg(long)]
        dims: String,
        /// Fix N_ab^c = m, written `a,b,c=m`; repeatable.
        #[arg(long = "fix")]
        fix: Vec<String>,
        /// Duality involution, comma-separated.
        #[arg(long)]
        dual: Option<String>,
    },
}

/// Failures that are findings rather than errors.
struct Findings(bool);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Findings(false)) => ExitCode::SUCCESS,
        Ok(Findings(true)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dataset() -> Result<DataSet> {
    match std::env::var_os("PREMOD_DATA_DIR") {
        Some(dir) => DataSet::from_dir(Path::new(&dir)).with_context(|| format!("loading data from {}", dir.to_string_lossy())),
        None => Ok(DataSet::bundled()?),
    }
}

fn config(cli: &Cli) -> ClassifyConfig {
    let mut cfg = ClassifyConfig { max_order: cli.max_order as usize, ..ClassifyConfig::default() };
    if let Some(b) = cli.node_budget {
        cfg.node_budget = b;
    }
    cfg
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<Findings> {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Classify => classify(cli),
        Command::Census { k, bound } => {
            let data = dataset()?;
            let found = census(&data.catalog, *k, *bound)?;
            let text = match cli.format {
                Format::Json => render_json(&Value::Array(
                    found
                        .iter()
                        .map(|e| json!({"name": e.name, "order": e.order, "classes": e.classes, "degrees": e.degrees}))
                        .collect(),
                )),
                Format::Text => found.iter().map(|e| format!("{}\t{}\n", e.name, e.order)).collect(),
            };
            emit(cli, &text)?;
            Ok(Findings(false))
        }
        Command::GroupInfo { label } => group_info(cli, label),
        Command::Solve { rank, dims, fix, dual } => solve(cli, *rank, dims, fix, dual.as_deref()),
    }
}

fn classify(cli: &Cli) -> Result<Findings> {
    let data = dataset()?;
    let report: ClassificationReport = classify_rank5(&data, &config(cli))?;
    let body = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.render_text(),
    };
    match &cli.out {
        Some(p) => {
            fs::write(p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
            if cli.format == Format::Text {
                print!("{}", report.render_text());
            }
        }
        None => print!("{body}"),
    }
    Ok(Findings(false))
}

fn violation_tag(v: &DatumViolation) -> &'static str {
    match v {
        DatumViolation::Balancing(_) => "balancing",
        DatumViolation::TwistOfUnit => "unit-twist",
        DatumViolation::NotSymmetric { .. } => "symmetry",
        DatumViolation::FirstColumn { .. } => "first-column",
        DatumViolation::DualConjugate { .. } => "duality",
        DatumViolation::Fusion(_) => "fusion",
        DatumViolation::Dimension { .. } => "dimension",
    }
}

fn datum_violations(datum: &PremodularDatum) -> Vec<(&'static str, String)> {
    let mut out: Vec<(&'static str, String)> = datum.check().iter().map(|v| (violation_tag(v), v.to_string())).collect();
    if !out.is_empty() {
        return out;
    }
    for (x, y) in orthogonality_failures(datum) {
        out.push(("orthogonality", format!("(S²)[{x}][{y}] differs from dim C · Σ_w N_xy^w d_w over the center")));
    }
    let twists: Vec<TwistSymbol> = datum.twists.iter().map(|t| TwistSymbol::Known(*t)).collect();
    for x in 0..datum.rank() {
        match theta_condition_residual(&datum.ring, &datum.dims, &twists, x) {
            Ok(c) if c.integral() == Some(false) => {
                let value = c.concrete.map(|v| v.pretty()).unwrap_or_default();
                out.push(("theta-condition", format!("right side for X{x} is {value}, not an integer")));
            }
            Ok(_) => {}
            Err(e) => out.push(("theta-condition", format!("X{x}: {e}"))),
        }
    }
    out
}

fn validate(cli: &Cli, file: &Path) -> Result<Findings> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let datum: PremodularDatum = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", file.display()))?;
    let violations = datum_violations(&datum);
    let center = muger_center(&datum);
    let class = if violations.is_empty() { Some(degeneracy_class(&datum)) } else { None };
    let out = match cli.format {
        Format::Json => render_json(&json!({
            "file": file.display().to_string(),
            "rank": datum.rank(),
            "valid": violations.is_empty(),
            "class": class.map(|c| format!("{c:?}")),
            "center": center.indices,
            "violations": violations.iter().map(|(t, m)| json!({"tag": t, "message": m})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            if violations.is_empty() {
                format!(
                    "{}: ok, rank {}, Müger center {{{}}}, {:?}\n",
                    file.display(),
                    datum.rank(),
                    center.indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
                    class.expect("valid datum")
                )
            } else {
                violations.iter().map(|(t, m)| format!("{t}: {m}\n")).collect()
            }
        }
    };
    emit(cli, &out)?;
    Ok(Findings(!violations.is_empty()))
}

fn group_info(cli: &Cli, label: &str) -> Result<Findings> {
    let data = dataset()?;
    let Some(entry) = data.catalog.iter().find(|e| e.name == label) else {
        bail!("no catalog group named {label:?}");
    };
    let g = entry.build()?;
    let t = character_table(&g)?;
    let sizes: Vec<usize> = t.classes.iter().map(|c| c.size).collect();
    let text = match cli.format {
        Format::Json => render_json(&json!({
            "name": label,
            "order": g.order(),
            "classes": t.len(),
            "class_sizes": sizes,
            "degrees": t.degrees,
            "abelian": g.is_abelian(),
            "exponent": g.exponent(),
        })),
        Format::Text => format!(
            "{label}\norder {}\nclasses {}\nclass sizes ({})\ndegrees ({})\nexponent {}\n",
            g.order(),
            t.len(),
            join(&sizes),
            join(&t.degrees),
            g.exponent()
        ),
    };
    emit(cli, &text)?;
    Ok(Findings(false))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|t| t.trim().parse::<usize>().with_context(|| format!("bad index {t:?}"))).collect()
}

fn parse_fix(s: &str) -> Result<(usize, usize, usize, u32)> {
    let (lhs, m) = s.split_once('=').with_context(|| format!("expected a,b,c=m, got {s:?}"))?;
    let idx = parse_list(lhs)?;
    let [a, b, c] = idx[..] else { bail!("expected three indices in {s:?}") };
    Ok((a, b, c, m.trim().parse().with_context(|| format!("bad multiplicity in {s:?}"))?))
}

fn products(ring: &FusionRing) -> Vec<String> {
    let r = ring.rank();
    let mut out = Vec::new();
    for a in 1..r {
        for b in a..r {
            let terms: Vec<String> = ring
                .product(a, b)
                .into_iter()
                .map(|(c, m)| if m == 1 { format!("X{c}") } else { format!("{m}X{c}") })
                .collect();
            out.push(format!("X{a}⊗X{b} = {}", terms.join("+")));
        }
    }
    out
}

fn solve(cli: &Cli, rank: usize, dims: &str, fix: &[String], dual: Option<&str>) -> Result<Findings> {
    let dims: Vec<_> = dims.split(',').map(parse_cyclotomic).collect::<Result<_, _>>()?;
    if dims.len() != rank {
        bail!("rank {rank} needs {rank} dimensions, got {}", dims.len());
    }
    let dv = DimensionVector::new(dims);
    let mut cons = FusionConstraints::new();
    for f in fix {
        let (a, b, c, m) = parse_fix(f)?;
        cons = cons.entry(a, b, c, m);
    }
    if let Some(d) = dual {
        cons = cons.dual(parse_list(d)?);
    }
    let mut search = SearchConfig::default();
    if let Some(b) = cli.node_budget {
        search.node_budget = b;
    }
    let (rings, stats) = enumerate_fusion_rings_with(rank, &dv, &cons, &search)?;
    let found: Vec<(FusionRing, Option<String>)> = rings
        .iter()
        .map(|r| (r.canonical_form(dv.as_slice()).0, identify_rep_ring(r)))
        .collect();
    let text = match cli.format {
        Format::Json => render_json(&json!({
            "rank": rank,
            "dims": dv.as_slice().iter().map(|d| d.pretty()).collect::<Vec<_>>(),
            "nodes": stats.nodes,
            "rings": found.iter().map(|(r, name)| json!({
                "rep_of": name,
                "dual": r.duals(),
                "N": r.tensor(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!("{} fusion ring(s)\n", found.len());
            for (i, (r, name)) in found.iter().enumerate() {
                let label = name.as_ref().map(|n| format!("Rep({n})")).unwrap_or_else(|| "not a group ring".into());
                s.push_str(&format!("ring {}: {label}\n", i + 1));
                for p in products(r) {
                    s.push_str(&format!("  {p}\n"));
                }
            }
            s
        }
    };
    emit(cli, &text)?;
    Ok(Findings(found.is_empty()))
}
