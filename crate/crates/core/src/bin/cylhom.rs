use std::io::Write;

fn main() {
    let out = cylhom::cli_io::run_command(std::env::args_os());
    print!("{}", out.report);
    if !out.diagnostics.is_empty() {
        eprintln!("{}", out.diagnostics.trim_end());
    }
    let _ = std::io::stdout().flush();
    std::process::exit(out.exit_code);
}
