use std::process::ExitCode;

fn main() -> ExitCode {
    triq::cli::main_with_args(std::env::args_os())
}
