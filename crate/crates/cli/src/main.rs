use std::process::ExitCode;

fn main() -> ExitCode {
    fractalqm_cli::run()
}
