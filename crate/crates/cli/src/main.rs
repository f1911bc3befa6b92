use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = latspec_cli::run(std::env::args_os());
    let mut out: Box<dyn Write> = if code == latspec_cli::EXIT_ERROR { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
    let _ = out.write_all(text.as_bytes());
    ExitCode::from(code as u8)
}
