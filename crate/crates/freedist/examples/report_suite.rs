//! Runs one verification suite and prints the text report.

use freedist::report::{render, run_suite, Format, Params, Report};

fn main() {
    let suite = std::env::args().nth(1).unwrap_or_else(|| "octonion".into());
    let p = Params { timing: false, ..Params::default() };
    match run_suite(&suite, &p) {
        Ok(checks) => print!("{}", render(&Report::new(&suite, &p, checks), Format::Text).unwrap()),
        Err(e) => eprintln!("{e}"),
    }
}
