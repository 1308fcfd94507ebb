//! The `modfour` command-line driver.
//!
//! Exit codes: 0 when every asserted check passes, 1 when one fails, 2 when
//! a theorem's hypotheses do not hold and `--strict` is set, 3 for input
//! errors.

pub mod format;
pub mod run;

use std::path::{Path, PathBuf};

use clap::Parser;

use crate::exactalg::FieldKind;
pub use format::{parse, serialize, InputDocument, ParseError};
pub use run::{run, Command, Flags, Outcome, RunError};

pub const EXIT_INPUT: i32 = 3;

fn parse_degrees(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected <lo>..<hi>")?;
    let lo: usize = lo.parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: usize = hi.parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Parser, Debug)]
#[command(name = "modfour", about = "Mod-4 congruences for Z/p actions on finite complexes")]
pub struct Args {
    pub command: Command,
    /// Input document, or the name of a bundled one.
    #[arg(long)]
    pub file: Option<String>,
    #[arg(long)]
    pub complex: Option<String>,
    #[arg(long)]
    pub action: Option<String>,
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Coefficient field: Q or F<p>.
    #[arg(long)]
    pub field: Option<FieldKind>,
    /// Exit 2 when a theorem is not applicable.
    #[arg(long)]
    pub strict: bool,
    /// Degree range `lo..hi` for equivariant Betti numbers.
    #[arg(long, value_parser = parse_degrees)]
    pub degrees: Option<(usize, usize)>,
    /// Total Betti number of the fixed set, compared by `theorem1-alg`.
    #[arg(long)]
    pub fixed_set_dim: Option<usize>,
    /// Also write the report to this path.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Read `--file` from disk, falling back to the bundled documents.
pub fn load(file: &str) -> Result<InputDocument, String> {
    let path = Path::new(file);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{file}: {e}"))?;
        return parse(&text).map_err(|e| format!("{file}: {e}"));
    }
    format::builtin(file).ok_or_else(|| {
        format!(
            "{file}: no such file or bundled document (bundled: {})",
            format::builtin_names().join(", ")
        )
    })
}

/// Parse arguments, run, print; returns the exit code.
pub fn execute<I, T>(argv: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            return (e.to_string(), code);
        }
    };
    let doc = match (&args.file, args.command) {
        (Some(f), _) => match load(f) {
            Ok(d) => d,
            Err(e) => return (format!("error: {e}\n"), EXIT_INPUT),
        },
        (None, Command::Suite) => InputDocument::default(),
        (None, _) => return ("error: --file is required\n".into(), EXIT_INPUT),
    };
    let flags = Flags {
        p: args.p,
        field: args.field,
        strict: args.strict,
        degrees: args.degrees,
        complex: args.complex,
        action: args.action,
        algebra: args.algebra,
        fixed_set_dim: args.fixed_set_dim,
    };
    match run(args.command, &doc, &flags) {
        Ok(o) => {
            if let Some(path) = &args.report {
                if let Err(e) = std::fs::write(path, &o.text) {
                    return (format!("error: {}: {e}\n", path.display()), EXIT_INPUT);
                }
            }
            (o.text, o.code)
        }
        Err(e) => (format!("error: {e}\n"), EXIT_INPUT),
    }
}

pub fn main() -> i32 {
    let (text, code) = execute(std::env::args_os());
    if code == EXIT_INPUT {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    code
}
