mod commands;
mod report;
mod request;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use report::{Outcome, Report};
use request::{Cli, Command, Format, Input};

fn run_input(
    input: &Input,
    command: &'static str,
    f: impl FnOnce(&request::Parsed) -> hsing_core::Result<serde_json::Value>,
) -> (Report, Format) {
    let start = Instant::now();
    let format = input.common.format;
    let text = match input.text() {
        Ok(t) => t,
        Err(e) => {
            let outcome = Outcome::Error(format!("{e:#}"));
            return (Report::new(command, input.echo(None), outcome, start), format);
        }
    };
    let outcome = match request::parse_input(input, &text).and_then(|p| f(&p)) {
        Ok(v) => Outcome::Ok(v),
        Err(e) => Outcome::from_error(&e),
    };
    (Report::new(command, input.echo(Some(&text)), outcome, start), format)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (report, format) = match &cli.command {
        Command::Order(i) => run_input(i, "order", commands::order),
        Command::InitialForm(i) => run_input(i, "initial-form", commands::initial_form),
        Command::Directrix(i) => run_input(i, "directrix", commands::directrix),
        Command::Polyhedron(i) => run_input(i, "polyhedron", commands::polyhedron),
        Command::Delta(i) => run_input(i, "delta", commands::delta),
        Command::Prepare(i) => run_input(i, "prepare", commands::prepare),
        Command::Nubar(a) => run_input(&a.input, "nubar", |p| commands::nubar(p, a)),
        Command::Slope(i) => run_input(i, "slope", commands::slope),
        Command::RefinedSlope(i) => {
            run_input(i, "refined-slope", |p| commands::refined_slope(p, i.common.seed))
        }
        Command::Hord(i) => run_input(i, "hord", commands::hord),
        Command::Cut(a) => {
            run_input(&a.input, "cut", |p| commands::cut(p, a, a.input.common.seed))
        }
        Command::Suite(c) => {
            let start = Instant::now();
            let echo = request::Echo {
                field: c.field.clone(),
                vars: String::new(),
                precision: c.precision,
                seed: c.seed,
                polynomial: None,
            };
            let outcome = match commands::suite(c.seed, c.precision) {
                Ok((v, true)) => Outcome::Ok(v),
                Ok((v, false)) => Outcome::Failed(v),
                Err(e) => Outcome::from_error(&e),
            };
            (Report::new("suite", echo, outcome, start), c.format)
        }
    };
    match report.render(format) {
        Ok(s) => {
            let _ = writeln!(std::io::stdout().lock(), "{s}");
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(report.exit_code())
}
