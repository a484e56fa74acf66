//! `gac`: f-, h-, g- and γ-vectors of graph-associahedra and nestohedra.
//!
//! Node labels are 1-indexed. Exit codes: 0 ok or pass, 1 verification
//! failure, 2 usage or parse error, 3 semantic error (e.g. a disconnected
//! input), 4 resource limit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gac_core::bounds::{
    default_product_cases, verify_connected_bounds, verify_gal_flag, verify_hamiltonian_bounds,
    verify_monotonicity, verify_product_rule, verify_tree_bounds, BoundReport, HarnessError,
};
use gac_core::face_polynomials::entries_to_json;
use gac_core::families::{check_identity, gamma_family, h_family, Family, FamilyError, IdentityId};
use gac_core::{
    f_from_h, g_from_h, is_flag, polytope_vectors, BuildingSet, BuildingSetError, FaceError,
    FaceVector, GraphError, Int, PolyError, SimpleGraph, VectorError,
};

const MAX_FAMILY_N: usize = 12;

#[derive(Parser)]
#[command(name = "gac", version, about = "Face vectors of graph-associahedra and nestohedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// f-, h-, g- and γ-vectors of one graph or building set.
    Vectors {
        /// Named graph (`path:5`, `cycle:4`, `complete:3`, `star:6`) or a graph JSON file.
        #[arg(long, conflicts_with = "building_set", required_unless_present = "building_set")]
        graph: Option<String>,
        /// Building-set text file.
        #[arg(long)]
        building_set: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Omit the top face `f_n = 1` from the f-vector.
        #[arg(long)]
        proper_faces_only: bool,
    },
    /// Table of one vector over a family for n = 0..=max-n.
    Family {
        #[arg(long, value_enum)]
        name: FamilyName,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = VectorKind::H)]
        vector: VectorKind,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exhaustive bound verification; prints a JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Node count (ignored by the product suite).
        #[arg(long)]
        m: Option<usize>,
        /// Worker threads.
        #[arg(long, env = "GAC_JOBS")]
        jobs: Option<usize>,
        /// Check at most this many covers (monotonicity only).
        #[arg(long)]
        samples: Option<usize>,
        /// Report `elapsed_ms` as 0 so output is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Truncated check of a generating-function identity.
    Identity {
        #[arg(long, value_enum)]
        id: IdentityArg,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    As,
    Cy,
    Pe,
    St,
}

impl From<FamilyName> for Family {
    fn from(name: FamilyName) -> Self {
        match name {
            FamilyName::As => Family::As,
            FamilyName::Cy => Family::Cy,
            FamilyName::Pe => Family::Pe,
            FamilyName::St => Family::St,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VectorKind {
    F,
    H,
    G,
    Gamma,
}

impl VectorKind {
    fn label(self) -> &'static str {
        match self {
            VectorKind::F => "f",
            VectorKind::H => "h",
            VectorKind::G => "g",
            VectorKind::Gamma => "gamma",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Connected,
    Hamiltonian,
    Tree,
    Monotonicity,
    Product,
    GalFlag,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum IdentityArg {
    AsFunctional,
    CyRelation,
    PeOde,
    StOde,
    AsClosedForm,
    PeClosedForm,
}

impl From<IdentityArg> for IdentityId {
    fn from(id: IdentityArg) -> Self {
        match id {
            IdentityArg::AsFunctional => IdentityId::AsFunctional,
            IdentityArg::CyRelation => IdentityId::CyRelation,
            IdentityArg::PeOde => IdentityId::PeOde,
            IdentityArg::StOde => IdentityId::StOde,
            IdentityArg::AsClosedForm => IdentityId::AsClosedForm,
            IdentityArg::PeClosedForm => IdentityId::PeClosedForm,
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = match e {
            GraphError::Parse(_) | GraphError::InvalidEdge(..) => 2,
            GraphError::MTooLarge { .. }
            | GraphError::GroundTooLarge(_)
            | GraphError::TooLargeForHamiltonicity(_) => 4,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<BuildingSetError> for Failure {
    fn from(e: BuildingSetError) -> Self {
        let code = match e {
            BuildingSetError::Parse { .. } => 2,
            BuildingSetError::GroundTooLarge(_) => 4,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<FaceError> for Failure {
    fn from(e: FaceError) -> Self {
        let code = match e {
            FaceError::GroundTooLarge(_) => 4,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

impl From<VectorError> for Failure {
    fn from(e: VectorError) -> Self {
        match e {
            VectorError::Face(e) => e.into(),
            VectorError::Poly(e) => e.into(),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Graph(e) => e.into(),
            HarnessError::BuildingSet(e) => e.into(),
            HarnessError::Vectors(e) => e.into(),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        let code = match e {
            FamilyError::UnknownFamily(_)
            | FamilyError::UnknownSeries(_)
            | FamilyError::UnknownIdentity(_) => 2,
            FamilyError::OrderTooLarge(_) => 4,
            FamilyError::Graph(e) => return e.into(),
            FamilyError::Face(e) => return e.into(),
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", line.trim_start_matches("error: ").trim());
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message.replace('\n', " "));
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Vectors { graph, building_set, format, proper_faces_only } => {
            let b = match (graph, building_set) {
                (Some(spec), None) => load_graph(&spec)?.graphical_building_set()?,
                (None, Some(path)) => load_building_set(&path)?,
                _ => return Err(Failure::usage("exactly one of --graph or --building-set is required")),
            };
            run_vectors(&b, format, proper_faces_only)
        }
        Command::Family { name, max_n, vector, format } => run_family(name.into(), max_n, vector, format),
        Command::Verify { suite, m, jobs, samples, no_timing, format } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Failure { code: 4, message: e.to_string() })?;
            let mut report = pool.install(|| run_suite(suite, m, samples))?;
            if no_timing {
                report.elapsed_ms = 0;
            }
            match format {
                Format::Pretty => println!(
                    "{} m={} checked={} failures={} {}",
                    report.suite,
                    report.m,
                    report.checked,
                    report.failures.len(),
                    if report.pass { "PASS" } else { "FAIL" }
                ),
                _ => println!("{}", report.to_json()),
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Identity { id, order } => {
            let report = check_identity(id.into(), order)?;
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["summary"] = Value::String(report.summary());
            println!("{value}");
            Ok(if report.verified { 0 } else { 1 })
        }
    }
}

fn load_graph(spec: &str) -> Result<SimpleGraph, Failure> {
    if spec.contains(':') && !Path::new(spec).exists() {
        Ok(SimpleGraph::from_spec(spec)?)
    } else {
        Ok(SimpleGraph::read_json(Path::new(spec))?)
    }
}

fn load_building_set(path: &Path) -> Result<BuildingSet, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(BuildingSet::parse_text(&text)?)
}

fn tuple(entries: &[Int]) -> String {
    let parts: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(","))
}

fn run_vectors(b: &BuildingSet, format: Format, proper_only: bool) -> Result<u8, Failure> {
    if !b.is_connected() {
        return Err(Failure { code: 3, message: BuildingSetError::NotConnected.to_string() });
    }
    let vectors = polytope_vectors(b)?;
    let flag = is_flag(b)?;
    let f: &[Int] = if proper_only { vectors.f.proper() } else { vectors.f.entries() };
    let facets = b.len() - 1;
    let rows: [(&str, &[Int]); 4] = [
        ("f", f),
        ("h", vectors.h.entries()),
        ("g", vectors.g.entries()),
        ("gamma", vectors.gamma.entries()),
    ];
    match format {
        Format::Json => {
            let mut out = json!({
                "m": b.ground_size(),
                "n": b.dimension(),
                "building_set_size": b.len(),
                "flag": flag,
                "facets": facets,
            });
            for (name, entries) in rows {
                out[name] = entries_to_json(entries);
            }
            println!("{out}");
        }
        Format::Csv => {
            println!("vector,entries");
            for (name, entries) in rows {
                let parts: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
                println!("{name},{}", parts.join(","));
            }
        }
        Format::Pretty => {
            println!(
                "m={} n={} |B|={} flag={} facets={}",
                b.ground_size(),
                b.dimension(),
                b.len(),
                flag,
                facets
            );
            for (name, entries) in rows {
                println!("{name:<6}{}", tuple(entries));
            }
        }
    }
    Ok(0)
}

fn family_row(family: Family, n: usize, kind: VectorKind) -> Vec<Int> {
    let h = h_family(family, n);
    match kind {
        VectorKind::F => f_from_h(&h).entries().to_vec(),
        VectorKind::H => h.entries().to_vec(),
        VectorKind::G => g_from_h(&h).entries().to_vec(),
        VectorKind::Gamma => gamma_family(family, n).entries().to_vec(),
    }
}

fn run_family(family: Family, max_n: usize, kind: VectorKind, format: Format) -> Result<u8, Failure> {
    if max_n > MAX_FAMILY_N {
        return Err(Failure {
            code: 4,
            message: format!("--max-n {max_n} exceeds the maximum of {MAX_FAMILY_N}"),
        });
    }
    let rows: Vec<Vec<Int>> = (0..=max_n).map(|n| family_row(family, n, kind)).collect();
    match format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .enumerate()
                .map(|(n, r)| json!({ "n": n, "entries": entries_to_json(r) }))
                .collect();
            println!("{}", json!({ "family": family.name(), "vector": kind.label(), "rows": rows }));
        }
        Format::Csv => {
            let width = rows.iter().map(Vec::len).max().unwrap_or(0);
            let mut header = vec!["n".to_string()];
            header.extend((0..width).map(|i| format!("{}_{i}", kind.label())));
            println!("{}", header.join(","));
            for (n, r) in rows.iter().enumerate() {
                let mut fields = vec![n.to_string()];
                fields.extend((0..width).map(|i| r.get(i).map(Int::to_string).unwrap_or_default()));
                println!("{}", fields.join(","));
            }
        }
        Format::Pretty => {
            for (n, r) in rows.iter().enumerate() {
                println!("n={n:<3}{}", tuple(r));
            }
        }
    }
    Ok(0)
}

fn run_suite(suite: Suite, m: Option<usize>, samples: Option<usize>) -> Result<BoundReport, Failure> {
    if let Suite::Product = suite {
        return Ok(verify_product_rule(&default_product_cases())?);
    }
    let m = m.ok_or_else(|| Failure::usage("--m is required for this suite"))?;
    if m == 0 {
        return Err(Failure { code: 3, message: "--m must be at least 1".into() });
    }
    let report = match suite {
        Suite::Connected => verify_connected_bounds(m)?,
        Suite::Hamiltonian => verify_hamiltonian_bounds(m)?,
        Suite::Tree => verify_tree_bounds(m)?,
        Suite::Monotonicity => verify_monotonicity(m, samples)?,
        Suite::GalFlag => verify_gal_flag(m)?,
        Suite::Product => unreachable!("handled above"),
    };
    Ok(report)
}
