use std::process::ExitCode;

fn main() -> ExitCode {
    gravcoh::cli::main_from(std::env::args_os())
}
