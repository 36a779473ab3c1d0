//! Command-line driver for the hendecagon folding construction.
//!
//! Subcommands: `classify`, `poly`, `solve`, `construct` and `verify`.
//! Exit codes are 0 on success, 1 when a construction or verification fails
//! and 2 for usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use hendecagon_core::construction::{
    hendecagon_script, run_script, verify_hendecagon, ConstructionState, DEFAULT_SCRIPT_TOL,
};
use hendecagon_core::cyclotomic::{classify_constructible, halved_cyclotomic};
use hendecagon_core::fold::{eliminate_to_quintic, solve_two_fold, TwoFoldConfig};
use hendecagon_core::geom::{format_rational, Line, Point};
use hendecagon_core::script::{config_from_text, script_from_text};

pub mod checks;
pub mod svg;

use svg::{emit_svg, DiagramSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hendecagon",
    version,
    about = "Fold a regular hendecagon with a two-fold operation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether a regular n-gon is constructible with single folds.
    Classify { n: u64 },
    /// Print the polynomial in t = 2cos(2π/n) for odd n, highest degree first.
    Poly { n: u64 },
    /// Solve the two-fold alignment and print every solution with residuals.
    Solve {
        /// two-fold-config document; defaults to the hendecagon instance.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SCRIPT_TOL)]
        tol: f64,
    },
    /// Run a fold script, write step diagrams and a residual report.
    Construct {
        /// fold-script document; defaults to the built-in hendecagon script.
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SCRIPT_TOL)]
        tol: f64,
    },
    /// Run the acceptance checks.
    Verify,
}

/// `x` to 12 significant digits: fixed notation for moderate magnitudes,
/// scientific otherwise.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..12).contains(&magnitude) {
        let decimals = (11 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

fn point_text(p: &Point<f64>) -> String {
    format!("({}, {})", sig12(p.x), sig12(p.y))
}

fn line_text(l: &Line<f64>) -> String {
    let (a, b, c) = l.coefficients();
    format!("[{}, {}, {}]", sig12(a), sig12(b), sig12(c))
}

/// Writes to `out`; errors carry the exit code.
pub fn execute(command: &Command, out: &mut String) -> Result<(), (i32, String)> {
    let usage = |e: String| (EXIT_USAGE, e);
    match command {
        Command::Classify { n } => {
            if *n < 3 {
                return Err(usage(format!("n must be at least 3, got {n}")));
            }
            let _ = writeln!(out, "{}", classify_constructible(*n));
        }
        Command::Poly { n } => {
            let poly = halved_cyclotomic(*n)
                .map_err(|e| usage(e.to_string()))?
                .poly;
            let coeffs: Vec<String> = poly.coeffs().iter().rev().map(format_rational).collect();
            let _ = writeln!(out, "{}", coeffs.join(" "));
        }
        Command::Solve { config, tol } => {
            let config = match config {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    config_from_text(&text)
                        .map_err(|e| usage(format!("{}: {e}", path.display())))?
                }
                None => TwoFoldConfig::hendecagon(),
            };
            let quintic = eliminate_to_quintic(&config).map_err(|e| usage(e.to_string()))?;
            let solutions =
                solve_two_fold(&config, *tol).map_err(|e| (EXIT_FAILURE, e.to_string()))?;
            let _ = writeln!(out, "polynomial = {quintic}");
            let _ = writeln!(out, "solutions = {}", solutions.len());
            for (i, sol) in solutions.iter().enumerate() {
                let _ = writeln!(out, "\n[solution {}]", i + 1);
                let _ = writeln!(out, "t = {}", sig12(sol.t));
                let _ = writeln!(out, "s = {}", sig12(sol.s));
                let _ = writeln!(out, "gamma = {}", line_text(&sol.gamma));
                let _ = writeln!(out, "delta = {}", line_text(&sol.delta));
                let _ = writeln!(out, "q_image = {}", point_text(&sol.q_image));
                let _ = writeln!(out, "p_image = {}", point_text(&sol.p_image));
                for (check, r) in &sol.residuals {
                    let _ = writeln!(out, "residual.{check} = {}", sig12(*r));
                }
                let _ = writeln!(out, "off_sheet = {:?}", sol.off_sheet);
            }
        }
        Command::Construct {
            script,
            out: dir,
            tol,
        } => {
            let script = match script {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    script_from_text(&text)
                        .map_err(|e| usage(format!("{}: {e}", path.display())))?
                }
                None => hendecagon_script(),
            };
            let state = run_script(&script, *tol).map_err(|e| (EXIT_FAILURE, e.to_string()))?;
            let report = residual_report(&state, *tol);
            out.push_str(&report);
            if let Some(dir) = dir {
                let spec = DiagramSpec::for_state(&state).with_out_dir(dir);
                let docs = emit_svg(&state, &spec).map_err(|e| (EXIT_FAILURE, e.to_string()))?;
                let path = dir.join("residuals.txt");
                fs::write(&path, &report)
                    .map_err(|e| (EXIT_FAILURE, format!("{}: {e}", path.display())))?;
                let _ = writeln!(out, "wrote {} diagrams to {}", docs.len(), dir.display());
            }
        }
        Command::Verify => {
            let outcomes = checks::run_all();
            for o in &outcomes {
                let _ = writeln!(out, "{o}");
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Err((EXIT_FAILURE, "acceptance checks failed".into()));
            }
        }
    }
    Ok(())
}

/// Per-check residuals, off-sheet points and the polygon check.
pub fn residual_report(state: &ConstructionState, tol: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "steps = {}", state.records.len());
    let _ = writeln!(out, "max_residual = {}", sig12(state.max_residual()));
    let _ = writeln!(out, "off_sheet = {:?}", state.off_sheet_points(tol));
    for (id, sol) in &state.two_folds {
        let _ = writeln!(out, "two_fold.{id}.t = {}", sig12(sol.t));
    }
    let verification = verify_hendecagon(state, tol);
    for check in &verification.checks {
        let verdict = if check.passed { "pass" } else { "fail" };
        let _ = writeln!(
            out,
            "check.{} = {verdict} ({})",
            check.name.replace(' ', "_"),
            sig12(check.max_error)
        );
    }
    let _ = writeln!(out, "\n[residuals]");
    for (key, r) in &state.residual_log {
        let _ = writeln!(out, "{key} = {}", sig12(*r));
    }
    out
}

/// Parses `args` (program name first) and runs the command, printing to
/// stdout and stderr. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut out = String::new();
    let result = execute(&cli.command, &mut out);
    print!("{out}");
    match result {
        Ok(()) => EXIT_OK,
        Err((code, message)) => {
            eprintln!("error: {message}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(1.6825070656623624), "1.68250706566");
        assert_eq!(sig12(-2.5), "-2.50000000000");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(2.220446049250313e-16), "2.22044604925e-16");
        assert_eq!(sig12(123456.0), "123456.000000");
    }

    #[test]
    fn poly_is_descending() {
        let mut out = String::new();
        execute(&Command::Poly { n: 11 }, &mut out).unwrap();
        assert_eq!(out, "1 1 -4 -3 3 1\n");
        assert_eq!(
            execute(&Command::Poly { n: 10 }, &mut out).unwrap_err().0,
            EXIT_USAGE
        );
    }
}
