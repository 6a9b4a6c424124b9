use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(axialis_cli::run(std::env::args()) as u8)
}
