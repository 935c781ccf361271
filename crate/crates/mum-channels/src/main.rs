//! Command-line front end: bases → measurements → channels → analysis as a
//! JSON pipeline. Every subcommand prints one JSON document to stdout;
//! diagnostics go to stderr. Identical invocations (including the seed)
//! produce byte-identical output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use mum_channels::channel::{commutation_check, composition_table, fujiwara_algoet_check};
use mum_channels::suite::{run_all, SuiteConfig};
use mum_channels::{
    analyze, build_mums, custom_axis_basis, feasible_t_interval, gell_mann_basis,
    hw_observable_basis, optimal_t, pauli_axis_basis, verify_mum_conditions, AxisBasis,
    GeneralizedPauliChannel, MumSet, Operator, Tolerance,
};

#[derive(Parser)]
#[command(name = "mum-channels")]
#[command(about = "mutually unbiased measurements and the generalized Pauli channels built on them")]
struct Cli {
    /// Exit nonzero when a verdict (not an input) fails.
    #[arg(long, global = true)]
    strict: bool,
    /// RNG seed; defaults to MUM_CHANNELS_SEED or 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap the worker thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Tolerance for entrywise and norm comparisons.
    #[arg(long, global = true, default_value_t = 1e-10)]
    eq_tol: f64,
    /// Eigenvalue floor for positivity checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    psd_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit an operator basis grouped into axes.
    Basis(BasisArgs),
    /// Build, verify, or optimize measurement families.
    #[command(subcommand)]
    Mum(MumCommand),
    /// Build or check generalized Pauli channels.
    #[command(subcommand)]
    Channel(ChannelCommand),
    /// Entanglement breaking, output purity, and eigenvector census.
    Analyze {
        /// Channel JSON produced by `channel build`.
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        mc_samples: usize,
    },
    /// Run the reference verification suite.
    PaperSuite {
        /// Machine-readable results array instead of the text table.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 100_000)]
        mc_samples: usize,
    },
}

#[derive(Args)]
struct BasisArgs {
    /// pauli | gell-mann | heisenberg-weyl
    #[arg(long)]
    name: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
}

#[derive(Subcommand)]
enum MumCommand {
    /// Construct a MUM family from a basis.
    Build {
        /// pauli | gell-mann | heisenberg-weyl | file
        #[arg(long)]
        basis: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// "optimal" or a literal value.
        #[arg(long, default_value = "optimal")]
        t: String,
        /// Basis JSON (for --basis file).
        #[arg(long)]
        basis_file: Option<PathBuf>,
    },
    /// Check the MUM conditions of a stored family.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Report the feasible t interval and the optimal parameters.
    Optimize {
        #[arg(long)]
        basis: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        basis_file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ChannelCommand {
    /// Attach a probability or eigenvalue vector to a MUM family.
    Build {
        #[arg(long)]
        mum: PathBuf,
        /// Comma-separated p_0,...,p_{d+1}.
        #[arg(long)]
        probs: Option<String>,
        /// Comma-separated λ_1,...,λ_{d+1}.
        #[arg(long)]
        eigenvalues: Option<String>,
    },
    /// CP verdicts plus composition and commutation deviations.
    Check {
        #[arg(long)]
        file: PathBuf,
    },
}

/// On-disk channel document; `mum_ref` points at the MUM JSON it was built
/// from.
#[derive(Serialize, Deserialize)]
struct ChannelFile {
    mum_ref: String,
    probs: Vec<f64>,
    eigenvalues: Vec<f64>,
}

struct CliError {
    code: &'static str,
    detail: String,
}

impl From<mum_channels::Error> for CliError {
    fn from(e: mum_channels::Error) -> Self {
        CliError {
            code: e.code(),
            detail: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: "Io",
            detail: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError {
            code: "Json",
            detail: e.to_string(),
        }
    }
}

fn usage_error(detail: impl Into<String>) -> CliError {
    CliError {
        code: "Usage",
        detail: detail.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Build the global pool once; a failure means it already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(verdicts_ok) => {
            // Verdict failures exit 1 under --strict, and always for the
            // verification suite.
            let suite = matches!(cli.command, Command::PaperSuite { .. });
            if !verdicts_ok && (cli.strict || suite) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({"error": e.code, "detail": e.detail}))
                    .expect("error document serializes")
            );
            ExitCode::from(2)
        }
    }
}

fn resolve_seed(cli: &Cli) -> u64 {
    cli.seed
        .or_else(|| {
            std::env::var("MUM_CHANNELS_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0)
}

fn tolerance(cli: &Cli) -> Result<Tolerance, CliError> {
    Ok(Tolerance::new(cli.eq_tol, cli.psd_tol)?)
}

fn emit<T: Serialize>(value: &T) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Returns whether all verdicts in the produced report passed.
fn run(cli: &Cli) -> Result<bool, CliError> {
    let tol = tolerance(cli)?;
    let seed = resolve_seed(cli);
    match &cli.command {
        Command::Basis(args) => {
            let basis = named_basis(&args.name, args.dim, None)?;
            emit(&basis)?;
            Ok(true)
        }
        Command::Mum(MumCommand::Build {
            basis,
            dim,
            t,
            basis_file,
        }) => {
            let basis = named_basis(basis, *dim, basis_file.as_deref())?;
            let t = match t.as_str() {
                "optimal" => optimal_t(&basis)?.0,
                literal => literal
                    .parse::<f64>()
                    .map_err(|_| usage_error(format!("--t must be 'optimal' or a number, got '{literal}'")))?,
            };
            let m = build_mums(&basis, t)?;
            emit(&m)?;
            Ok(true)
        }
        Command::Mum(MumCommand::Verify { file }) => {
            let m = load_mum(file)?;
            let report = verify_mum_conditions(&m, &tol);
            let pass = report.pass;
            emit(&report)?;
            Ok(pass)
        }
        Command::Mum(MumCommand::Optimize {
            basis,
            dim,
            basis_file,
        }) => {
            let basis = named_basis(basis, *dim, basis_file.as_deref())?;
            let (t_min, t_max) = feasible_t_interval(&basis)?;
            let (t_opt, kappa_opt) = optimal_t(&basis)?;
            emit(&json!({
                "dim": basis.dim(),
                "label": basis.label(),
                "t_min": t_min,
                "t_max": t_max,
                "t_opt": t_opt,
                "kappa_opt": kappa_opt,
            }))?;
            Ok(true)
        }
        Command::Channel(ChannelCommand::Build {
            mum,
            probs,
            eigenvalues,
        }) => {
            let m = load_mum(mum)?;
            let ch = match (probs, eigenvalues) {
                (Some(p), None) => {
                    GeneralizedPauliChannel::from_probs(m, parse_list(p)?, &tol)?
                }
                (None, Some(l)) => {
                    GeneralizedPauliChannel::from_eigenvalues(m, parse_list(l)?)?
                }
                _ => {
                    return Err(usage_error(
                        "provide exactly one of --probs and --eigenvalues",
                    ))
                }
            };
            emit(&ChannelFile {
                mum_ref: mum.to_string_lossy().into_owned(),
                probs: ch.probs().to_vec(),
                eigenvalues: ch.eigenvalues().to_vec(),
            })?;
            Ok(true)
        }
        Command::Channel(ChannelCommand::Check { file }) => {
            let ch = load_channel(file)?;
            let cp = ch.is_completely_positive(&tol);
            let sufficient = ch.sufficient_cp_check(&tol);
            let fa = ((ch.kappa() - 1.0).abs() <= 1e-9)
                .then(|| fujiwara_algoet_check(ch.eigenvalues(), ch.dim(), &tol));
            let composition = composition_table(ch.mums());
            let commutation = commutation_check(&ch, 10, seed);
            let pass = cp.is_cp;
            emit(&json!({
                "cp": cp,
                "sufficient_cp": sufficient,
                "fa": fa,
                "composition_deviations": composition,
                "commutation_deviations": commutation,
            }))?;
            Ok(pass)
        }
        Command::Analyze {
            channel,
            mc_samples,
        } => {
            let ch = load_channel(channel)?;
            let report = analyze(&ch, *mc_samples, seed, &tol);
            emit(&report)?;
            Ok(true)
        }
        Command::PaperSuite { json, mc_samples } => {
            let results = run_all(&SuiteConfig {
                seed,
                nu2_mc_samples: *mc_samples,
                fault: None,
            });
            let all_pass = results.iter().all(|r| r.pass);
            if *json {
                emit(&results)?;
            } else {
                for r in &results {
                    println!(
                        "[{}] {:2}. {:<28} {}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.id,
                        r.name,
                        r.detail
                    );
                }
                println!(
                    "{}/{} criteria passed",
                    results.iter().filter(|r| r.pass).count(),
                    results.len()
                );
            }
            Ok(all_pass)
        }
    }
}

fn named_basis(name: &str, dim: usize, file: Option<&Path>) -> Result<AxisBasis, CliError> {
    match name {
        "pauli" => {
            if dim != 2 {
                return Err(usage_error("the pauli basis has dim 2"));
            }
            Ok(pauli_axis_basis())
        }
        "gell-mann" => Ok(gell_mann_basis(dim)?),
        "heisenberg-weyl" => Ok(hw_observable_basis(dim)?),
        "file" => {
            let path = file.ok_or_else(|| usage_error("--basis file needs --basis-file"))?;
            load_basis(path)
        }
        other => Err(usage_error(format!(
            "unknown basis '{other}' (expected pauli | gell-mann | heisenberg-weyl | file)"
        ))),
    }
}

/// Raw grouped-basis document; validated through the library constructor.
#[derive(Deserialize)]
struct BasisFile {
    #[allow(dead_code)]
    dim: usize,
    #[allow(dead_code)]
    label: Option<String>,
    axes: Vec<Vec<Operator>>,
}

fn load_basis(path: &Path) -> Result<AxisBasis, CliError> {
    let raw: BasisFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let flat: Vec<Operator> = raw.axes.iter().flatten().cloned().collect();
    let mut partition = Vec::new();
    let mut next = 0;
    for axis in &raw.axes {
        partition.push((next..next + axis.len()).collect::<Vec<_>>());
        next += axis.len();
    }
    Ok(custom_axis_basis(&flat, &partition)?)
}

fn load_mum(path: &Path) -> Result<MumSet, CliError> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn load_channel(path: &Path) -> Result<GeneralizedPauliChannel, CliError> {
    let doc: ChannelFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let mum_path = PathBuf::from(&doc.mum_ref);
    let mum_json = if mum_path.is_file() {
        std::fs::read_to_string(&mum_path)?
    } else {
        // Fall back to resolving relative to the channel document.
        let sibling = path
            .parent()
            .map(|dir| dir.join(&mum_path))
            .unwrap_or(mum_path);
        std::fs::read_to_string(sibling)?
    };
    let m: MumSet = serde_json::from_str(&mum_json)?;
    let ch = GeneralizedPauliChannel::from_eigenvalues(m, doc.eigenvalues)?;
    // The stored probabilities are derived data; reject a tampered document.
    for (a, b) in doc.probs.iter().zip(ch.probs()) {
        if (a - b).abs() > 1e-8 {
            return Err(usage_error(
                "channel document is inconsistent: probs do not match eigenvalues",
            ));
        }
    }
    Ok(ch)
}

fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| usage_error(format!("bad number '{x}' in list")))
        })
        .collect()
}
