//! `radial-embed` command-line tool.
//!
//! Exit codes: 0 success, 1 input error, 2 no admissible embedding,
//! 3 mismatch against an expectation or a failed verification.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use radial_embed::catalog::{self, Expected};
use radial_embed::document::{ProblemSpec, VerdictDocument};
use radial_embed::region::boundary_export;
use radial_embed::verify::{self, Suite};
use radial_embed::{best_verdict, parse_q, Dimension, EmbeddingVerdict, RegionSpec, Q};

const EXIT_INPUT: u8 = 1;
const EXIT_INADMISSIBLE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "radial-embed",
    version,
    about = "Compact embeddings of weighted radial Sobolev spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the verdict for a problem document.
    Verdict {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the boundary of the admissible region in the (alpha, q) plane.
    Region {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        dim: u32,
        /// Range of alpha as LO:HI.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; the region case (and, for CSV, the curve number) is appended to the file stem.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Reproduce a catalogued example and compare with its expected ranges.
    Example {
        name: String,
        /// Parameter binding KEY=VALUE; `n` sets the dimension.
        #[arg(long = "param", value_name = "KEY=VALUE", allow_hyphen_values = true)]
        params: Vec<String>,
        /// List the catalogue instead.
        #[arg(long)]
        list: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<radial_embed::Error> for Failure {
    fn from(e: radial_embed::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verdict { spec, out } => verdict(&spec, out.as_deref()),
        Command::Region {
            beta,
            gamma,
            dim,
            alpha,
            format,
            out,
            samples,
        } => region(&beta, &gamma, dim, &alpha, format, &out, samples),
        Command::Example { name, params, list } => {
            if list {
                list_examples()
            } else {
                example(&name, &params)
            }
        }
        Command::Verify { suite, seed, out } => run_verify(&suite, seed, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| input(format!("cannot write {}: {e}", path.display())))
}

fn verdict(spec_path: &Path, out: Option<&Path>) -> Result<u8, Failure> {
    let text = fs::read_to_string(spec_path).map_err(|e| input(format!("cannot read {}: {e}", spec_path.display())))?;
    let spec = ProblemSpec::parse(&text).map_err(|e| input(format!("{}: {e}", spec_path.display())))?;
    let v = spec.verdict()?;
    let doc = VerdictDocument::new(spec.dimension, &v).to_json();
    println!("{doc}");
    if let Some(p) = out {
        write(p, &doc)?;
    }
    Ok(if v.sum_space { 0 } else { EXIT_INADMISSIBLE })
}

fn suffixed(out: &Path, tag: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "region".into());
    let name = match out.extension() {
        Some(ext) => format!("{stem}-{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{tag}"),
    };
    out.with_file_name(name)
}

fn region(
    beta: &str,
    gamma: &str,
    dim: u32,
    alpha: &str,
    format: Format,
    out: &Path,
    samples: usize,
) -> Result<u8, Failure> {
    let n = Dimension::new(dim)?;
    let (lo, hi) = alpha
        .split_once(':')
        .ok_or_else(|| input(format!("alpha range {alpha:?} is not LO:HI")))?;
    let spec: RegionSpec<Q> = RegionSpec::new(parse_q(beta)?, parse_q(gamma)?, n)?;
    let boundary = boundary_export(&spec, (parse_q(lo)?, parse_q(hi)?), samples)?;
    let tag = spec.case().tag();
    match format {
        // one file per boundary curve
        Format::Csv => {
            for (i, body) in boundary.to_csv().iter().enumerate() {
                let path = suffixed(out, &format!("{tag}-{}", i + 1));
                write(&path, body)?;
                println!("{}", path.display());
            }
        }
        Format::Svg => {
            let path = suffixed(out, tag);
            write(&path, &boundary.to_svg())?;
            println!("{}", path.display());
        }
    }
    Ok(0)
}

fn list_examples() -> Result<u8, Failure> {
    for case in catalog::example_catalog() {
        let params: Vec<String> = case
            .params
            .iter()
            .map(|p| format!("{}={} ({})", p.name, p.default, p.range))
            .collect();
        println!("{:10} {}  [{}]", case.name, case.summary, params.join(", "));
    }
    Ok(0)
}

fn matches(v: &EmbeddingVerdict, e: &Expected) -> bool {
    v.q1_interval == e.q1 && v.q2_halfline == e.q2 && v.single_q == e.single_q
}

fn example(name: &str, params: &[String]) -> Result<u8, Failure> {
    let case = catalog::find(name).ok_or_else(|| input(format!("unknown example {name:?}; try --list")))?;
    let pairs = params
        .iter()
        .map(|p| {
            p.split_once('=')
                .ok_or_else(|| input(format!("parameter {p:?} is not KEY=VALUE")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let bindings = case.bind(&pairs)?;
    let inst = case.instance(&bindings)?;
    let (origin, infinity) = case.specs(&bindings)?;
    let v = best_verdict(&origin, &infinity, inst.n)?;
    let got = VerdictDocument::new(inst.n, &v);
    if matches(&v, &inst.expected) {
        println!("{}", got.to_json());
        println!("{name}: match");
        return Ok(0);
    }
    let expected = EmbeddingVerdict {
        q1_interval: inst.expected.q1.clone(),
        q2_halfline: inst.expected.q2.clone(),
        single_q: inst.expected.single_q.clone(),
        sum_space: !inst.expected.q1.is_empty() && !inst.expected.q2.is_empty(),
        single_space: !inst.expected.single_q.is_empty(),
        origin: None,
        infinity: None,
        notes: vec!["expected".into()],
    };
    println!("computed:\n{}", got.to_json());
    println!("expected:\n{}", VerdictDocument::new(inst.n, &expected).to_json());
    eprintln!("{name}: mismatch");
    Ok(EXIT_MISMATCH)
}

fn run_verify(suite: &str, seed: u64, out: Option<&Path>) -> Result<u8, Failure> {
    let suite: Suite = suite.parse()?;
    let report = verify::run(suite, seed)?;
    if let Some(p) = out {
        write(p, &serde_json::to_string_pretty(&report).expect("reports serialize"))?;
    }
    let mut names: Vec<&str> = Vec::new();
    for c in &report.checks {
        if !names.contains(&c.name.as_str()) {
            names.push(&c.name);
        }
    }
    for name in names {
        let (total, failed) = report
            .checks
            .iter()
            .filter(|c| c.name == name)
            .fold((0, 0), |(t, f), c| (t + 1, f + usize::from(!c.holds)));
        println!("{name}: {} / {total} hold", total - failed);
    }
    println!("{} checks, {} failures (seed {seed})", report.total, report.failures);
    Ok(if report.passed() { 0 } else { EXIT_MISMATCH })
}
