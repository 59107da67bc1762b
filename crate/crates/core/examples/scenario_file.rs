//! Reads a scenario, prints it back in normalized form, and runs the
//! `complex` subcommand on it.

use cylhom::cli_io::{emit_scenario, parse_scenario_file, run_command};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/examples/scenarios/synthetic_complex.toml"
        )
        .into()
    });
    let s = match parse_scenario_file(&path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(2);
        }
    };
    println!("{}", emit_scenario(&s));

    let out = run_command(["cylhom", "complex", "--scenario", path.as_str()]);
    print!("{}", out.report);
    std::process::exit(out.exit_code);
}
