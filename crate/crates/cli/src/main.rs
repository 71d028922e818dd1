use std::io::{self, Write};
use std::process::ExitCode;

use bisys_cli::{max_depth_from_env, run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = match run(&cli, max_depth_from_env(), &mut out, &mut err) {
        Ok(outcome) => outcome.exit_code(),
        // A closed pipe (`bisys words … | head`) is not an error.
        Err(bisys_cli::CliError::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
