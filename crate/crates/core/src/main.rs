use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = rootsep::cli::run_args(std::env::args_os());
    let _ = match out.json.get("usage").and_then(|u| u.as_str()) {
        Some(text) if out.code == 0 => write!(std::io::stdout(), "{text}"),
        Some(text) => write!(std::io::stderr(), "{text}"),
        None => writeln!(
            std::io::stdout(),
            "{}",
            serde_json::to_string_pretty(&out.json).expect("json renders")
        ),
    };
    ExitCode::from(out.code as u8)
}
