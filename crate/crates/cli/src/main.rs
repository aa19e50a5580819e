use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use freecurve::arrangement::{parse_lines, search_deformation};
use freecurve::classify::{self, BoundsReport, CandidateRecord, ExclusionConfig};
use freecurve::report::{analyze_arrangement, analyze_polynomial, deformation_report};
use freecurve::{
    catalog, parse_poly, Error, FieldTag, LineArrangement, LinearForm, MdrOptions, ProjectivePoint, Scalar,
    CATALOG_NAMES,
};

#[derive(Parser)]
#[command(name = "freecurve", version, about = "Freeness tests for plane curves and line arrangements")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Coefficient field for parsed input.
    #[arg(long, global = true, value_name = "Q|Qw")]
    field: Option<FieldTag>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an arrangement or a polynomial.
    Analyze {
        /// A `.lines` file or `@catalog:NAME`.
        source: Option<String>,
        /// A homogeneous polynomial instead of an arrangement.
        #[arg(long, conflicts_with = "source", requires = "tau")]
        poly: Option<String>,
        /// Total Tjurina number of the polynomial.
        #[arg(long)]
        tau: Option<u64>,
    },
    /// List the weak combinatorics allowed by the bounds.
    Classify {
        #[arg(long, default_value_t = 4)]
        dmin: u32,
        #[arg(long, default_value_t = 12)]
        dmax: u32,
        /// Exclusion file, or `default`.
        #[arg(long, default_value = "default")]
        exclusions: String,
        /// Also list excluded candidates.
        #[arg(long)]
        all: bool,
    },
    /// Check the triple point bounds for d lines.
    Bounds {
        #[arg(long = "d")]
        d: u32,
    },
    /// Split a triple point by moving one line.
    Deform {
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// 0-based index of the line to move.
        #[arg(long)]
        line: usize,
        /// Direction form; with --eps omitted too, one is searched for.
        #[arg(long, requires = "eps", allow_hyphen_values = true)]
        dir: Option<String>,
        #[arg(long, requires = "dir", allow_hyphen_values = true)]
        eps: Option<String>,
    },
    /// Delete one line and analyze the rest.
    Delete {
        source: String,
        /// 0-based index of the line to delete.
        #[arg(long)]
        line: usize,
    },
    /// Named arrangements.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::FieldMismatch { .. }) => 3,
            Failure::Lib(Error::NonGenericDeformation(_)) => 4,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => e.fmt(f),
            Failure::Input(s) => f.write_str(s),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(()) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> CliResult<()> {
    let options = MdrOptions::default();
    match &cli.command {
        Command::Analyze { source, poly, tau } => match (source, poly) {
            (_, Some(expr)) => {
                let tau = tau.ok_or_else(|| Failure::Input("--poly requires --tau".into()))?;
                let f = parse_poly(expr, cli.field.unwrap_or(FieldTag::QW))?;
                let report = analyze_polynomial(&f, tau, expr, options)?;
                emit(cli, out, &report, &report)
            }
            (Some(src), None) => {
                if tau.is_some() {
                    return Err(Failure::Input("--tau is computed for arrangements and must not be given".into()));
                }
                let arr = load(src, cli.field)?;
                let report = analyze_arrangement(&arr, src, options)?;
                emit(cli, out, &report, &report)
            }
            (None, None) => Err(Failure::Input("give a source or --poly".into())),
        },
        Command::Classify { dmin, dmax, exclusions, all } => {
            if *dmin < 2 || dmin > dmax {
                return Err(Failure::Input(format!("bad degree range {dmin}..{dmax}")));
            }
            let config = if exclusions == "default" {
                ExclusionConfig::default()
            } else {
                let text =
                    std::fs::read_to_string(exclusions).map_err(|e| Failure::Input(format!("{exclusions}: {e}")))?;
                ExclusionConfig::parse(&text)?
            };
            let records: Vec<CandidateRecord> = classify::classify_all(*dmin, *dmax, &config)?
                .into_iter()
                .filter(|r| *all || r.is_admissible())
                .collect();
            if cli.json {
                push_json(out, &records);
            } else {
                out.push_str("d\tt2\tt3\tr\tstatus\n");
                for r in &records {
                    out.push_str(&format!("{}\t{}\t{}\t{}\t{}", r.d, r.t2, r.t3, r.r, r.status));
                    if let Some(c) = &r.citation {
                        out.push_str(&format!("\t# {c}"));
                    }
                    out.push('\n');
                }
                let n = records.iter().filter(|r| r.is_admissible()).count();
                out.push_str(&format!("admissible: {n}\n"));
            }
            Ok(())
        }
        Command::Bounds { d } => {
            let report = classify::bounds(*d)?;
            let view = BoundsView { verdict: if report.consistent { "consistent" } else { "contradiction" }, report };
            emit(cli, out, &view, &view)
        }
        Command::Deform { source, point, line, dir, eps } => {
            let arr = load(source, cli.field)?;
            let p: ProjectivePoint = point.parse()?;
            let (deformed, eps) = match (dir, eps) {
                (Some(dir), Some(eps)) => {
                    let dir = LinearForm::parse(dir)?;
                    let eps: Scalar = eps.parse()?;
                    (arr.deform_triple_point(&p, *line, &dir, &eps)?, eps)
                }
                _ => {
                    let found = search_deformation(&arr, &p, *line)?;
                    (found.result, found.eps)
                }
            };
            let report = deformation_report(&arr, &deformed, &p, *line, &eps, source, options)?;
            emit(cli, out, &report, &report)
        }
        Command::Delete { source, line } => {
            let arr = load(source, cli.field)?.delete_line(*line)?;
            let label = format!("{source} minus line {line}");
            let report = analyze_arrangement(&arr, &label, options)?;
            emit(cli, out, &report, &report)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                if cli.json {
                    push_json(out, &CATALOG_NAMES);
                } else {
                    for name in CATALOG_NAMES {
                        out.push_str(name);
                        out.push('\n');
                    }
                }
                Ok(())
            }
            CatalogAction::Show { name } => {
                let arr = catalog(name)?;
                let wc = arr.weak_combinatorics();
                let view = CatalogView {
                    name: name.clone(),
                    field: arr.field(),
                    lines: arr.lines().iter().map(ToString::to_string).collect(),
                    d: arr.len(),
                    t2: wc.t2(),
                    t3: wc.t3(),
                    combinatorics: wc.to_string(),
                };
                emit(cli, out, &view, &view)
            }
        },
    }
}

fn load(source: &str, field: Option<FieldTag>) -> CliResult<LineArrangement> {
    let arr = match source.strip_prefix("@catalog:") {
        Some(name) => catalog(name)?,
        None => {
            let path = PathBuf::from(source);
            let text = std::fs::read_to_string(&path).map_err(|e| Failure::Input(format!("{source}: {e}")))?;
            parse_lines(&text, field)?
        }
    };
    if let Some(f) = field {
        if !f.contains(arr.field()) {
            return Err(Error::FieldMismatch { expected: f, found: arr.field() }.into());
        }
    }
    Ok(arr)
}

fn emit<T: Serialize, D: std::fmt::Display>(cli: &Cli, out: &mut String, value: &T, text: &D) -> CliResult<()> {
    if cli.json {
        push_json(out, value);
    } else {
        out.push_str(&text.to_string());
    }
    Ok(())
}

fn push_json<T: Serialize + ?Sized>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string_pretty(value).expect("serializable"));
    out.push('\n');
}

#[derive(Serialize)]
struct BoundsView {
    #[serde(flatten)]
    report: BoundsReport,
    verdict: &'static str,
}

impl std::fmt::Display for BoundsView {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let r = &self.report;
        writeln!(f, "d:               {}", r.d)?;
        writeln!(f, "t3 lower bound:  {}", r.t3_lower_bound)?;
        writeln!(f, "Schonheim U3:    {}", r.u3)?;
        writeln!(f, "mdr window:      {}", r.mdr_window)?;
        writeln!(f, "verdict:         {}", self.verdict)?;
        for reason in &r.reasons {
            writeln!(f, "reason:          {reason}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct CatalogView {
    name: String,
    field: FieldTag,
    lines: Vec<String>,
    d: usize,
    t2: u64,
    t3: u64,
    combinatorics: String,
}

impl std::fmt::Display for CatalogView {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} over {}", self.name, self.field)?;
        for (i, l) in self.lines.iter().enumerate() {
            writeln!(f, "  {i}: {l}")?;
        }
        writeln!(f, "combinatorics: {}", self.combinatorics)
    }
}
