use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serre_scope::algebra::tensor_algebra;
use serre_scope::corpus::{corpus_get, corpus_list};
use serre_scope::dsl::{parse_spec, AlgebraSpec};
use serre_scope::linalg::parse_rational;
use serre_scope::pipeline::{default_t_grid, run_many, PipelineOptions};
use serre_scope::report::{emit_csv, emit_json, emit_markdown, Format, InvariantReport};
use serre_scope::{Error, Q};

const EXIT_USAGE: u8 = 1;
const EXIT_IDENTITY_FAILED: u8 = 2;

/// Serre-functor dynamics of bound quiver algebras.
#[derive(Parser)]
#[command(name = "serre-scope", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify, compute invariants and verify identities.
    Analyze {
        /// `.alg` files or `corpus:NAME`.
        #[arg(required = true)]
        inputs: Vec<String>,
        #[command(flatten)]
        opts: Opts,
        #[arg(long, default_value = "json", value_parser = parse_format)]
        format: Format,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Built-in algebras.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Run only the verification identities; one ✓/✗ line each.
    Verify {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Write the tensor product `A ⊗ B` as `.alg` source.
    Tensor {
        a: String,
        b: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    /// Print the `.alg` source of an entry.
    Show { name: String },
}

#[derive(Args)]
struct Opts {
    /// Window dimension (default: global dimension, at least 1).
    #[arg(long)]
    d: Option<usize>,
    /// Homological window / Serre powers for twisted CY algebras.
    #[arg(long)]
    n_max: Option<usize>,
    /// K-level window / Serre powers for d-representation-infinite algebras.
    #[arg(long)]
    k_n_max: Option<usize>,
    #[arg(long)]
    p_max: Option<usize>,
    /// Comma-separated rationals, e.g. `-1,0,1/2,1`.
    #[arg(long, value_delimiter = ',', value_parser = parse_t, allow_hyphen_values = true)]
    t: Option<Vec<Q>>,
    /// Cell budget for derived computations.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    hh_n_max: Option<usize>,
}

impl Opts {
    fn pipeline(&self) -> PipelineOptions {
        let base = PipelineOptions::default();
        PipelineOptions {
            d: self.d.or(base.d),
            n_max: self.n_max.unwrap_or(base.n_max),
            k_n_max: self.k_n_max.unwrap_or(base.k_n_max),
            p_max: self.p_max.unwrap_or(base.p_max),
            t_grid: self.t.clone().unwrap_or_else(default_t_grid),
            budget: self.budget.unwrap_or(base.budget),
            hh_n_max: self.hh_n_max.unwrap_or(base.hh_n_max),
            ..base
        }
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_t(s: &str) -> Result<Q, String> {
    parse_rational(s)
}

/// A failure with its exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn load(input: &str) -> Result<AlgebraSpec, Failure> {
    if let Some(name) = input.strip_prefix("corpus:") {
        return Ok(corpus_get(name)?.spec);
    }
    let text = std::fs::read_to_string(input).map_err(|e| Failure(EXIT_USAGE, format!("{input}: {e}")))?;
    parse_spec(&text).map_err(|e| Failure(EXIT_USAGE, format!("{input}:{e}")))
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

/// Stdout that tolerates a closed pipe (`| head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn reports(inputs: &[String], opts: &Opts) -> Result<Vec<InvariantReport>, Failure> {
    let specs = inputs.iter().map(|i| load(i)).collect::<Result<Vec<_>, _>>()?;
    run_many(&specs, &opts.pipeline())
        .into_iter()
        .zip(inputs)
        .map(|(r, i)| r.map_err(|e| Failure(EXIT_USAGE, format!("{i}: {e}"))))
        .collect()
}

fn verdict(reports: &[InvariantReport]) -> Result<(), Failure> {
    let failed: usize = reports.iter().map(|r| r.verifications.iter().filter(|v| !v.passed).count()).sum();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure(EXIT_IDENTITY_FAILED, format!("{failed} identities failed")))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            inputs,
            opts,
            format,
            output,
        } => {
            let reports = reports(&inputs, &opts)?;
            let text = match format {
                Format::Json if reports.len() == 1 => emit_json(&reports[0]),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&reports).expect("plain data");
                    s.push('\n');
                    s
                }
                Format::Csv => emit_csv(&reports),
                Format::Markdown => reports.iter().map(emit_markdown).collect::<Vec<_>>().join("\n"),
            };
            write_out(&output, &text)?;
            verdict(&reports)
        }
        Command::Corpus { action: CorpusAction::List } => {
            let mut text = String::new();
            for e in corpus_list() {
                let family = serde_json::to_value(e.family).expect("plain enum");
                text.push_str(&format!(
                    "{:<18} {:<12} {} vertices, {} arrows\n",
                    e.name,
                    family.as_str().unwrap_or(""),
                    e.spec.vertices.len(),
                    e.spec.arrows.len()
                ));
            }
            emit(&text);
            Ok(())
        }
        Command::Corpus {
            action: CorpusAction::Show { name },
        } => {
            emit(&corpus_get(&name)?.spec.to_source());
            Ok(())
        }
        Command::Verify { inputs, opts } => {
            let reports = reports(&inputs, &opts)?;
            let mut text = String::new();
            for r in &reports {
                text.push_str(&format!("{} — {}\n", r.algebra.name, r.classification.label));
                for v in &r.verifications {
                    let mark = if v.passed { '✓' } else { '✗' };
                    text.push_str(&format!("  {mark} {}: {} (residual {})\n", v.id, v.statement, v.residual));
                }
            }
            emit(&text);
            verdict(&reports)
        }
        Command::Tensor { a, b, output } => {
            let (sa, sb) = (load(&a)?, load(&b)?);
            let t = tensor_algebra(&sa.build()?, &sb.build()?)?;
            let mut spec = AlgebraSpec::from_algebra(&t);
            spec.name = format!("{}x{}", sa.name, sb.name);
            write_out(&output, &spec.to_source())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
