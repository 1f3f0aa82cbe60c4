use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let r = updag::cli::run(std::env::args_os());
    let out = r.stdout();
    if r.exit_code >= 2 && !r.json_mode {
        eprint!("{out}");
    } else {
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    ExitCode::from(r.exit_code as u8)
}
