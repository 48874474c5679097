use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = rado::cli::run(std::env::args_os());
    println!("{out}");
    if code != 0 {
        eprintln!("rado: exit {code}");
    }
    ExitCode::from(code as u8)
}
