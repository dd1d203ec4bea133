use std::process::ExitCode;

fn main() -> ExitCode {
    let code = spiderlab::cli::run(std::env::args_os());
    ExitCode::from(code)
}
