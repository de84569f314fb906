use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(amqc::cli::run(std::env::args_os()))
}
