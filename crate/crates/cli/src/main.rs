use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qgenocchi_cli::run(std::env::args_os()))
}
