use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use qrpnn_core::experiments::SweepResult;

use crate::args::CliConfig;
use crate::error::CliError;

pub const CSV_HEADER: &str =
    "model,domain,n,p,kernel_params,noise_prob,trials,successes,recall_prob,mean_iters,seed";

/// CSV text for one or more sweeps: a single header, then one row per grid point.
pub fn csv_string(results: &[SweepResult]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in results {
        for pt in &r.points {
            // `{:?}` on f64 is locale-free and always keeps a decimal point.
            writeln!(
                out,
                "{},{},{},{},{},{:?},{},{},{:?},{:?},{}",
                r.model,
                r.domain.name(),
                r.n,
                r.p,
                r.kernel_params,
                pt.noise_prob,
                pt.trials,
                pt.successes,
                pt.recall_probability,
                pt.mean_iterations,
                r.seed
            )
            .expect("writing to a String cannot fail");
        }
    }
    out
}

pub fn emit_csv(results: &[SweepResult], path: &Path) -> Result<(), CliError> {
    fs::write(path, csv_string(results)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Every effective setting, one `# key: value` line each.
pub fn summary_header(config: &CliConfig, threads: usize) -> String {
    let t = config.primary();
    let kp = &config.kernel_params;
    let models: Vec<String> = config
        .trials
        .iter()
        .map(|c| format!("{} [{}]", c.model.name(), c.mode().name()))
        .collect();
    let grid: Vec<String> = config.noise_grid.iter().map(|v| format!("{v:?}")).collect();
    let mut s = String::new();
    let lines = [
        ("preset", config.preset.name().to_string()),
        ("models", models.join(", ")),
        ("domain", t.domain.name().to_string()),
        ("n", t.n.to_string()),
        ("p", t.p.to_string()),
        ("q", kp.q.to_string()),
        ("L", kp.l.to_string()),
        ("epsilon_p", format!("{:e}", kp.epsilon_p)),
        ("alpha", kp.alpha.to_string()),
        ("noise", grid.join(",")),
        ("trials", t.trials.to_string()),
        ("max_iters", t.max_iters.to_string()),
        ("tol", format!("{:e}", t.tol)),
        ("success_tol", format!("{:e}", t.success_tol)),
        ("seed", t.seed.to_string()),
        ("threads", threads.to_string()),
    ];
    for (k, v) in lines {
        writeln!(s, "# {k}: {v}").unwrap();
    }
    s
}

/// Human-readable table of a sweep, including convergence and singular-matrix counts.
pub fn summary_table(results: &[SweepResult]) -> String {
    let mut s = String::new();
    for r in results {
        writeln!(
            s,
            "{} ({}, {}, {} update)",
            r.model,
            r.domain.name(),
            r.kernel_params,
            r.update_mode.name()
        )
        .unwrap();
        writeln!(s, "  noise  recall  mean_iters  converged  singular").unwrap();
        for pt in &r.points {
            writeln!(
                s,
                "  {:5.2}  {:6.3}  {:10.2}  {:>4}/{:<4}  {:>8}",
                pt.noise_prob, pt.recall_probability, pt.mean_iterations, pt.converged, pt.trials, pt.singular
            )
            .unwrap();
        }
    }
    s
}
