use std::process::ExitCode;

use qrpnn_cli::commands::{execute, resolve_threads};
use qrpnn_cli::{parse_args, CliError};

fn real_main() -> Result<(), CliError> {
    let config = parse_args(std::env::args_os())?;
    let threads = resolve_threads(&config)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    execute(&config, threads, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Info(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qrpnn: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
