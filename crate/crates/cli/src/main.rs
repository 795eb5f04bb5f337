use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    match profilelint::run(std::env::args_os(), &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string();
            let prefix = if msg.starts_with("error:") { "" } else { "error: " };
            eprintln!("{prefix}{}", msg.trim_end());
            e.exit_code()
        }
    }
}
