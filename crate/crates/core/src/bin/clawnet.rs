use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let (code, report) = clawnet::cli::run(&argv);
    print!("{report}");
    ExitCode::from(code as u8)
}
