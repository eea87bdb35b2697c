use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(halflap_cli::run(std::env::args_os()))
}
