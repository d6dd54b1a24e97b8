use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(knodel::cli::run(std::env::args_os()))
}
