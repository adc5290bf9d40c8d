use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qrpnn_core::experiments::{
    default_noise_grid, Domain, KernelParams, ModelSpec, Preset, TrialConfig,
};
use qrpnn_core::UpdateMode;

use crate::error::CliError;

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "QRPNN_THREADS";

#[derive(Parser, Debug)]
#[command(name = "qrpnn", version, about = "Quaternion-valued associative memory experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recall probability over a grid of noise levels.
    Sweep(Flags),
    /// Probe every stored memory and check that it is a fixed point.
    FixedPointCheck(Flags),
    /// One noisy probe, reporting the trajectory outcome.
    SingleRun(Flags),
}

#[derive(Args, Debug, Clone)]
struct Flags {
    /// Parameter preset: example1 (bipolar) or example2 (quaternion).
    #[arg(long, default_value = "example1")]
    preset: String,
    /// Model name, a comma-separated list of names, or `all` (sweep only).
    #[arg(long, default_value = "qrpnn-exponential")]
    model: String,
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    /// High-order kernel exponent.
    #[arg(long)]
    q: Option<f64>,
    /// Potential kernel exponent.
    #[arg(long = "L")]
    l: Option<f64>,
    #[arg(long = "epsilon-p")]
    epsilon_p: Option<f64>,
    /// Exponential kernel rate.
    #[arg(long)]
    alpha: Option<f64>,
    /// Noise levels, comma-separated. Defaults to 0.0..=1.0 in steps of 0.1 for sweeps.
    #[arg(long, allow_hyphen_values = true)]
    noise: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long = "max-iters")]
    max_iters: Option<usize>,
    /// Convergence tolerance (max-component change between iterations).
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<f64>,
    /// Max-component distance to the target counted as a successful recall.
    #[arg(long = "success-tol", allow_hyphen_values = true)]
    success_tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Worker threads; defaults to the QRPNN_THREADS environment variable, then all cores.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Sync,
    Async,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Sweep,
    FixedPointCheck,
    SingleRun,
}

/// Fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: CommandKind,
    pub preset: Preset,
    /// One config per requested model; `noise_prob` holds the first grid value.
    pub trials: Vec<TrialConfig>,
    pub kernel_params: KernelParams,
    pub noise_grid: Vec<f64>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub threads: Option<usize>,
}

impl CliConfig {
    pub fn primary(&self) -> &TrialConfig {
        &self.trials[0]
    }
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{flag}: {msg}"))
}

fn positive(flag: &str, v: Option<usize>) -> Result<Option<usize>, CliError> {
    match v {
        Some(0) => Err(usage(flag, "must be >= 1")),
        other => Ok(other),
    }
}

fn non_negative(flag: &str, v: Option<f64>) -> Result<Option<f64>, CliError> {
    match v {
        Some(x) if !x.is_finite() || x < 0.0 => Err(usage(flag, format!("must be a finite value >= 0, got {x}"))),
        other => Ok(other),
    }
}

fn parse_noise(raw: &str) -> Result<Vec<f64>, CliError> {
    let values = raw
        .split(',')
        .map(|s| {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| usage("--noise", format!("'{s}' is not a number")))?;
            if !(0.0..=1.0).contains(&v) {
                return Err(usage("--noise", format!("{v} is outside [0, 1]")));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(usage("--noise", "no values given"));
    }
    Ok(values)
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::from_clap)?;
    let (command, flags) = match cli.command {
        Command::Sweep(f) => (CommandKind::Sweep, f),
        Command::FixedPointCheck(f) => (CommandKind::FixedPointCheck, f),
        Command::SingleRun(f) => (CommandKind::SingleRun, f),
    };

    let preset: Preset = flags.preset.parse().map_err(|e| usage("--preset", e))?;
    let mut kernel_params = preset.kernel_params();
    if let Some(q) = flags.q {
        kernel_params.q = q;
    }
    if let Some(l) = flags.l {
        kernel_params.l = l;
    }
    if let Some(eps) = flags.epsilon_p {
        kernel_params.epsilon_p = eps;
    }
    if let Some(alpha) = flags.alpha {
        kernel_params.alpha = alpha;
    }

    let models: Vec<ModelSpec> = if flags.model == "all" {
        if command != CommandKind::Sweep {
            return Err(usage("--model", "`all` is only accepted by sweep"));
        }
        let mut all = preset.models();
        for m in &mut all {
            *m = ModelSpec::parse(&m.name(), &kernel_params).map_err(|e| usage("--model", e))?;
        }
        all
    } else {
        flags
            .model
            .split(',')
            .map(|name| ModelSpec::parse(name.trim(), &kernel_params).map_err(|e| usage("--model", e)))
            .collect::<Result<_, _>>()?
    };
    if models.len() > 1 && command != CommandKind::Sweep {
        return Err(usage("--model", "only sweep accepts several models"));
    }

    let domain = match &flags.domain {
        Some(d) => d.parse::<Domain>().map_err(|e| usage("--domain", e))?,
        None => preset.domain(),
    };
    let noise_grid = match &flags.noise {
        Some(raw) => parse_noise(raw)?,
        None if command == CommandKind::Sweep => default_noise_grid(),
        None => vec![0.0],
    };
    if command == CommandKind::SingleRun && noise_grid.len() != 1 {
        return Err(usage("--noise", "single-run takes exactly one noise level"));
    }

    let n = positive("--n", flags.n)?;
    let p = positive("--p", flags.p)?;
    let trials = positive("--trials", flags.trials)?;
    let max_iters = positive("--max-iters", flags.max_iters)?;
    let tol = non_negative("--tol", flags.tol)?;
    let success_tol = non_negative("--success-tol", flags.success_tol)?;
    let threads = positive("--threads", flags.threads)?;
    let update_mode = flags.mode.map(|m| match m {
        ModeArg::Sync => UpdateMode::Synchronous,
        ModeArg::Async => UpdateMode::Asynchronous,
    });

    let trial_configs = models
        .into_iter()
        .map(|model| {
            let base = preset.config(model, flags.seed);
            let cfg = TrialConfig {
                domain,
                n: n.unwrap_or(base.n),
                p: p.unwrap_or(base.p),
                noise_prob: noise_grid[0],
                trials: trials.unwrap_or(base.trials),
                max_iters: max_iters.unwrap_or(base.max_iters),
                tol: tol.unwrap_or(base.tol),
                success_tol: success_tol.unwrap_or(base.success_tol),
                update_mode,
                ..base
            };
            cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(cfg)
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    Ok(CliConfig {
        command,
        preset,
        trials: trial_configs,
        kernel_params,
        noise_grid,
        out: flags.out,
        format: flags.format,
        threads,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qrpnn_core::ActivationKernel;

    fn parse(s: &str) -> Result<CliConfig, CliError> {
        parse_args(std::iter::once("qrpnn").chain(s.split_whitespace()))
    }

    #[test]
    fn example1_preset() {
        let c = parse("sweep --preset example1 --model qrpnn-exponential --seed 42 --out fig1a.csv").unwrap();
        let t = c.primary();
        assert_eq!((t.n, t.p, t.seed), (100, 36, 42));
        assert_eq!(t.model, ModelSpec::Qrpnn(ActivationKernel::Exponential { alpha: 4.0 }));
        assert_eq!(t.domain, Domain::Bipolar);
        assert_eq!(c.out.as_deref(), Some(std::path::Path::new("fig1a.csv")));
        assert_eq!(c.noise_grid.len(), 11);
    }

    #[test]
    fn potential_flags() {
        let c = parse("sweep --model qrcnn-potential --L 3 --epsilon-p 1e-5").unwrap();
        assert_eq!(
            c.primary().model,
            ModelSpec::Qrcnn(ActivationKernel::Potential { l: 3.0, epsilon: 1e-5 })
        );
    }

    #[test]
    fn negative_noise_is_usage_error() {
        let err = parse("sweep --noise -0.2").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("--noise"));
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(parse("sweep --model qrpnn-cubic").unwrap_err().to_string().contains("--model"));
        assert!(parse("sweep --preset example3").unwrap_err().to_string().contains("--preset"));
        assert!(parse("sweep --domain octonion").unwrap_err().to_string().contains("--domain"));
        assert!(parse("sweep --q 0.5 --model qrcnn-high-order").unwrap_err().to_string().contains("--model"));
        assert!(parse("sweep --trials 0").unwrap_err().to_string().contains("--trials"));
        assert!(parse("sweep --bogus").is_err());
    }

    #[test]
    fn model_lists() {
        let c = parse("sweep --preset example2 --model all").unwrap();
        assert_eq!(c.trials.len(), 10);
        assert!(c.trials.iter().all(|t| t.domain == Domain::Quaternion));
        let c = parse("sweep --model qrcnn-high-order,qrpnn-high-order --q 7").unwrap();
        assert_eq!(c.trials[1].model, ModelSpec::Qrpnn(ActivationKernel::HighOrder { q: 7.0 }));
        assert!(parse("fixed-point-check --model all").is_err());
        assert!(parse("single-run --noise 0.1,0.2").is_err());
    }

    #[test]
    fn overrides_and_modes() {
        let c = parse("single-run --n 20 --p 3 --noise 0.3 --mode async --max-iters 50 --tol 0").unwrap();
        let t = c.primary();
        assert_eq!((t.n, t.p, t.max_iters, t.noise_prob, t.tol), (20, 3, 50, 0.3, 0.0));
        assert_eq!(t.mode(), UpdateMode::Asynchronous);
        assert_eq!(c.command, CommandKind::SingleRun);
    }
}
