use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latknot::distortion::{format_fraction, vertex_distortion_parallel};
use latknot::explorer::{canonical_steps, classify_distortion_one, conformation_counts, EnumerationConfig};
use latknot::io::{self as kio, IoError};
use latknot::knot::LatticeKnot;
use latknot::oracle::bfs_vertex_distortion;
use latknot::reduction::{apply_reduction, is_irreducible, Direction, ReductionMove};
use latknot::torus::{generate_torus_tabulation, structure_report, torus_knot, DistortionFormula};
use latknot::{LatticePoint, StickType, Tabulation};

#[derive(Parser)]
#[command(name = "latknot", version, about = "Construct, validate and measure knots in the cubic lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the tabulation of the lattice torus knot T(p, p+1) as JSON.
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        p: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a knot from a tabulation JSON or vertex CSV and check it.
    Validate { input: PathBuf },
    /// Print the exact vertex distortion.
    Distortion {
        input: PathBuf,
        /// List every vertex pair attaining the maximum.
        #[arg(long)]
        pairs: bool,
        /// Recompute with the breadth-first oracle and require agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Apply a stick reduction, or test every possible one.
    Reduce {
        input: PathBuf,
        #[arg(long, required_unless_present = "check_irreducible")]
        stick: Option<usize>,
        #[arg(long, value_enum, default_value = "with")]
        direction: Dir,
        #[arg(long, default_value_t = 1)]
        amount: u64,
        #[arg(long, conflicts_with = "stick")]
        check_irreducible: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a knot to OBJ, vertex CSV or canonical JSON.
    Export {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Tabulate edge length, stick number and distortion of T(p, p+1) against the closed forms.
    Survey {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
        min_p: u64,
        #[arg(long)]
        max_p: u64,
        /// Also evaluate the even-p formulas at odd p and the odd formula at even p.
        #[arg(long)]
        even_formulas: bool,
        #[arg(long, default_value_t = 24)]
        cap: u64,
    },
    /// Count lattice polygons up to isometry, or list those with distortion one.
    Enumerate {
        #[arg(long, default_value_t = 12)]
        max_length: usize,
        #[arg(long, default_value_t = latknot::explorer::DEFAULT_MAX_EDGE_LENGTH)]
        cap: usize,
        #[arg(long)]
        distortion_one: bool,
        /// Write one vertex CSV per distortion-one conformation here.
        #[arg(long, requires = "distortion_one")]
        output_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    With,
    Against,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Obj,
    Csv,
    Json,
}

/// Exit status 1 for a knot or check that fails, 2 for unusable input.
enum Failure {
    Invalid(String),
    Usage(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Knot(k) => Failure::Invalid(format!("invalid knot: {k}")),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

enum Parsed {
    Table(Tabulation, LatticePoint),
    Vertices(Vec<LatticePoint>),
}

fn parse_input(path: &Path) -> Result<Parsed, Failure> {
    let text = read_input(path)?;
    let json = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => true,
        Some("csv") => false,
        _ => text.trim_start().starts_with('{'),
    };
    if json {
        let (tab, origin) = kio::tabulation_from_json(&text)?;
        Ok(Parsed::Table(tab, origin))
    } else {
        Ok(Parsed::Vertices(kio::vertices_from_csv(&text)?))
    }
}

fn load_knot(path: &Path) -> Result<LatticeKnot, Failure> {
    let knot = match parse_input(path)? {
        Parsed::Table(tab, origin) => latknot::build_knot(&tab, origin).map_err(IoError::from)?,
        Parsed::Vertices(v) => LatticeKnot::from_vertices(&v).map_err(IoError::from)?,
    };
    Ok(knot)
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn render(knot: &LatticeKnot, format: Format) -> String {
    match format {
        Format::Obj => kio::knot_to_obj(knot),
        Format::Csv => kio::vertices_to_csv(knot),
        Format::Json => kio::canonical_json(knot),
    }
}

/// The p for which `tab` is exactly the generated torus table, if any.
fn torus_parameter(tab: &Tabulation) -> Option<u64> {
    let n = tab.types.len() as u64;
    if n < 12 || !n.is_multiple_of(6) {
        return None;
    }
    let p = n / 6;
    (generate_torus_tabulation(p).ok()? == *tab).then_some(p)
}

fn validate(input: &Path) -> Outcome {
    let parsed = parse_input(input)?;
    let (knot, torus) = match parsed {
        Parsed::Table(tab, origin) => {
            let knot = latknot::build_knot(&tab, origin).map_err(IoError::from)?;
            (knot, torus_parameter(&tab))
        }
        Parsed::Vertices(v) => (LatticeKnot::from_vertices(&v).map_err(IoError::from)?, None),
    };
    println!("simple, closed, {} sticks, length {}", knot.stick_count(), knot.edge_length());
    if let Some(p) = torus {
        let report = structure_report(p).map_err(|e| Failure::Invalid(e.to_string()))?;
        if !report.passed() {
            return Err(Failure::Invalid(format!("T({p},{}) structure checks failed: {report:?}", p + 1)));
        }
        println!("T({p},{}) structure checks passed", p + 1);
    }
    Ok(())
}

fn distortion(input: &Path, pairs: bool, oracle: bool) -> Outcome {
    let knot = load_knot(input)?;
    let report = vertex_distortion_parallel(&knot);
    println!("{}", format_fraction(&report.value));
    if pairs {
        for &(i, j) in &report.realizing_pairs {
            println!("{i} {j} {} {}", knot.vertex(i), knot.vertex(j));
        }
    }
    if oracle {
        let (value, oracle_pairs) = bfs_vertex_distortion(&knot);
        let mut ours: Vec<(LatticePoint, LatticePoint)> = report
            .realizing_pairs
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (knot.vertex(i), knot.vertex(j));
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        ours.sort();
        if value != report.value || ours != oracle_pairs {
            return Err(Failure::Invalid(format!(
                "oracle disagrees: scan {} with {} pairs, BFS {} with {} pairs",
                format_fraction(&report.value),
                ours.len(),
                format_fraction(&value),
                oracle_pairs.len()
            )));
        }
        println!("oracle agrees");
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn reduce(
    input: &Path,
    stick: Option<usize>,
    direction: Dir,
    amount: u64,
    check: bool,
    format: Format,
    output: Option<&Path>,
) -> Outcome {
    let knot = load_knot(input)?;
    if check {
        let report = is_irreducible(&knot);
        if report.irreducible {
            println!("irreducible");
        } else {
            println!("reducible");
            for w in &report.witnesses {
                println!("stick {} {} by up to {}", w.stick, w.direction, w.max_amount);
            }
        }
        return Ok(());
    }
    let direction = match direction {
        Dir::With => Direction::WithOrientation,
        Dir::Against => Direction::AgainstOrientation,
    };
    let stick = stick.expect("clap requires --stick here");
    let mv = ReductionMove::new(stick, direction, amount).map_err(|e| Failure::Usage(e.to_string()))?;
    let reduced = apply_reduction(&knot, mv).map_err(|e| Failure::Invalid(format!("reduction failed: {e}")))?;
    emit(output, &render(&reduced, format))
}

fn flag(applies: bool, value: &latknot::Rational, delta: &latknot::Rational) -> (String, &'static str) {
    if !applies {
        return ("-".into(), "-");
    }
    (format_fraction(value), if value == delta { "MATCH" } else { "MISMATCH" })
}

fn survey(min_p: u64, max_p: u64, all_formulas: bool, cap: u64) -> Outcome {
    if max_p > cap {
        return Err(Failure::Usage(format!("--max-p {max_p} exceeds the cap {cap}")));
    }
    if min_p > max_p {
        return Err(Failure::Usage(format!("--min-p {min_p} is larger than --max-p {max_p}")));
    }
    let mut out = io::stdout().lock();
    let header = "p,edge_length,stick_number,delta_v,formula_a,a,formula_b,b,formula_c,c";
    writeln!(out, "{header}").map_err(|e| Failure::Usage(e.to_string()))?;
    for p in min_p..=max_p {
        let knot = torus_knot(p).map_err(|e| Failure::Invalid(e.to_string()))?;
        let delta = vertex_distortion_parallel(&knot).value;
        let mut row = format!("{p},{},{},{}", knot.edge_length(), knot.stick_count(), format_fraction(&delta));
        for f in DistortionFormula::ALL {
            let (value, verdict) = flag(all_formulas || f.applies_to(p), &f.value(p), &delta);
            row.push_str(&format!(",{value},{verdict}"));
        }
        writeln!(out, "{row}").map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn enumerate(max_length: usize, cap: usize, distortion_one: bool, dir: Option<&Path>) -> Outcome {
    let config = EnumerationConfig::new(max_length).with_cap(cap);
    let usage = |e: latknot::explorer::ExplorerError| Failure::Usage(e.to_string());
    if !distortion_one {
        println!("length,conformations");
        for (n, count) in conformation_counts(config).map_err(usage)? {
            println!("{n},{count}");
        }
        return Ok(());
    }
    let found = classify_distortion_one(config).map_err(usage)?;
    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    }
    println!("length,steps,structure");
    let mut failed = false;
    for (k, (knot, report)) in found.iter().enumerate() {
        let steps: Vec<String> =
            canonical_steps(knot.steps()).into_iter().map(|c| StickType::from_code(c).to_string()).collect();
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        failed |= !report.passed();
        println!("{},{},{verdict}", knot.edge_length(), steps.join(" "));
        if let Some(dir) = dir {
            let path = dir.join(format!("len{:02}_{k}.csv", knot.edge_length()));
            emit(Some(&path), &kio::vertices_to_csv(knot))?;
        }
    }
    if failed {
        return Err(Failure::Invalid("a distortion-one conformation failed the structure check".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Generate { p, output } => {
            let tab = generate_torus_tabulation(p).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(output.as_deref(), &kio::tabulation_to_json(&tab, LatticePoint::ORIGIN))
        }
        Command::Validate { input } => validate(&input),
        Command::Distortion { input, pairs, oracle } => distortion(&input, pairs, oracle),
        Command::Reduce { input, stick, direction, amount, check_irreducible, format, output } => {
            reduce(&input, stick, direction, amount, check_irreducible, format, output.as_deref())
        }
        Command::Export { input, format, output } => emit(output.as_deref(), &render(&load_knot(&input)?, format)),
        Command::Survey { min_p, max_p, even_formulas, cap } => survey(min_p, max_p, even_formulas, cap),
        Command::Enumerate { max_length, cap, distortion_one, output_dir } => {
            enumerate(max_length, cap, distortion_one, output_dir.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
