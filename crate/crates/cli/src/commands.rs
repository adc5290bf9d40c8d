use std::io::Write;

use qrpnn_core::experiments::{fixed_point_distances, run_sweep, run_trial, trial_rng, SweepResult};

use crate::args::{CliConfig, CommandKind, OutputFormat, THREADS_ENV};
use crate::error::CliError;
use crate::output::{csv_string, emit_csv, summary_header, summary_table};

/// Thread count from `--threads`, then the environment, then rayon's default.
pub fn resolve_threads(config: &CliConfig) -> Result<usize, CliError> {
    if let Some(t) = config.threads {
        return Ok(t);
    }
    match std::env::var(THREADS_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(t),
            _ => Err(CliError::Usage(format!("{THREADS_ENV}: '{raw}' is not a positive integer"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn io_err(path: &str) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.into(),
        source,
    }
}

pub fn sweep(config: &CliConfig) -> Result<Vec<SweepResult>, CliError> {
    config
        .trials
        .iter()
        .map(|t| run_sweep(t, &config.noise_grid).map_err(CliError::from))
        .collect()
}

/// Runs the configured subcommand, writing reports to `out` and the settings header to `log`.
pub fn execute(
    config: &CliConfig,
    threads: usize,
    out: &mut dyn Write,
    log: &mut dyn Write,
) -> Result<(), CliError> {
    let header = summary_header(config, threads);
    match config.command {
        CommandKind::Sweep => {
            let results = sweep(config)?;
            for r in &results {
                let nonconverged = r.total_trials() - r.total_converged();
                if nonconverged > 0 {
                    writeln!(log, "# {}: {nonconverged} trial(s) hit max_iters without converging", r.model)
                        .map_err(io_err("stderr"))?;
                }
                if r.total_singular() > 0 {
                    writeln!(log, "# {}: {} trial(s) had a singular kernel matrix", r.model, r.total_singular())
                        .map_err(io_err("stderr"))?;
                }
            }
            match config.format {
                OutputFormat::Csv => {
                    log.write_all(header.as_bytes()).map_err(io_err("stderr"))?;
                    match &config.out {
                        Some(path) => emit_csv(&results, path)?,
                        None => out.write_all(csv_string(&results).as_bytes()).map_err(io_err("stdout"))?,
                    }
                }
                OutputFormat::Summary => {
                    write!(out, "{header}{}", summary_table(&results)).map_err(io_err("stdout"))?;
                    if let Some(path) = &config.out {
                        emit_csv(&results, path)?;
                    }
                }
            }
            Ok(())
        }
        CommandKind::FixedPointCheck => {
            let t = config.primary();
            out.write_all(header.as_bytes()).map_err(io_err("stdout"))?;
            let distances = fixed_point_distances(t)?;
            let mut violations = 0;
            for (k, d) in distances.iter().enumerate() {
                let ok = *d <= t.success_tol;
                if !ok {
                    violations += 1;
                }
                writeln!(out, "memory {:>3}: distance {:.3e} {}", k + 1, d, if ok { "fixed" } else { "MOVED" })
                    .map_err(io_err("stdout"))?;
            }
            if violations > 0 {
                return Err(CliError::Assertion(format!(
                    "{violations} of {} memories are not fixed points of {}",
                    distances.len(),
                    t.model
                )));
            }
            writeln!(out, "all {} memories are fixed points", distances.len()).map_err(io_err("stdout"))?;
            Ok(())
        }
        CommandKind::SingleRun => {
            let t = config.primary();
            let outcome = run_trial(t, &mut trial_rng(t.seed, 0, 0))?;
            write!(
                out,
                "{header}success: {}\nconverged: {}\niterations: {}\nfinal_distance: {:.3e}\nsingular: {}\n",
                outcome.success, outcome.converged, outcome.iterations, outcome.final_distance, outcome.singular
            )
            .map_err(io_err("stdout"))?;
            Ok(())
        }
    }
}
