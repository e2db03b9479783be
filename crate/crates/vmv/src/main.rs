use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(vmv::run(std::env::args_os()))
}
