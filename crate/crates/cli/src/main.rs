use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = sextic_cli::run(std::env::args_os());
    if outcome.document.is_null() {
        // help or version text
        print!("{}", outcome.summary);
        return ExitCode::SUCCESS;
    }
    eprintln!("{}", outcome.summary.trim_end());
    let text = outcome.rendered();
    let written = match &outcome.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(sextic_cli::EXIT_USAGE as u8);
    }
    ExitCode::from(outcome.code as u8)
}
