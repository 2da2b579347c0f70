use std::io::Write;
use std::process::ExitCode;

use simons_cli::{run_cli, THREADS_ENV};

fn main() -> ExitCode {
    let threads = std::env::var(THREADS_ENV).ok();
    let out = run_cli(std::env::args_os(), threads.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
