use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use billiard_polygons::census::{
    analyze, golden_alpha, theorem13_from, verify_golden, verify_rational, Analysis,
};
use billiard_polygons::gaps::{
    four_gap_points, gap_census, three_gap_points, verify_four_gap, verify_three_gap,
};
use billiard_polygons::orbit::{
    build_line_family, fold_orbit, intercept_orbit, verify_orbit_equals_lines, TruncationSpec,
};
use billiard_polygons::parse::parse_alpha_with_tolerance;
use billiard_polygons::report::{faces_json, CensusJson, GapsJson, OrbitJson};
use billiard_polygons::scalar::DEFAULT_TOLERANCE;
use billiard_polygons::sweep::{run_sweep, SweepConfig};
use billiard_polygons::{svg, Error, Scalar};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "billiard",
    version,
    about = "Polygon partitions of the square billiard"
)]
struct Cli {
    /// Output format. Defaults to json, or svg for `render`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance for decimal slopes such as 0.1405.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build the partition for one truncated orbit and count areas and shapes.
    Analyze {
        #[command(flatten)]
        target: Target,
        /// Emit every face instead of the census summary.
        #[arg(long)]
        faces: bool,
    },
    /// Gap census of a rotation orbit.
    Gaps {
        #[arg(value_enum)]
        kind: GapKind,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: u32,
    },
    /// Check one of the theorems on a concrete instance.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Random quadratic slopes over a range of truncations.
    Sweep {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "sweep-count", default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        min_squares: u32,
        #[arg(long, default_value_t = 40)]
        max_squares: u32,
    },
    /// Draw one of the standard pictures as SVG.
    Render {
        #[arg(long, value_parser = ["1", "3", "5", "6", "7", "8"])]
        figure: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        squares: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
        /// Decimal places in coordinates.
        #[arg(long, default_value_t = 3)]
        precision: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GapKind {
    Three,
    Four,
}

#[derive(Subcommand)]
enum Verify {
    /// At most 13 areas and 16 shapes, with every area matched to its formula.
    Theorem13 {
        #[command(flatten)]
        target: Target,
    },
    /// A rational slope p/q run until the orbit closes.
    Rational {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Slope 1/(n + phi) at every boundary truncation up to `squares`.
    Golden {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 60)]
        squares: u32,
    },
    /// The orbit equals the union of the chords of both line families.
    Lines {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        squares: u32,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    alpha: String,
    /// Stop where the orbit leaves the N-th square of the unfolded grid.
    #[arg(long, conflicts_with = "m", required_unless_present = "m")]
    squares: Option<u32>,
    /// Stop at this abscissa, which must put the endpoint on the boundary.
    #[arg(long = "M", id = "m")]
    m: Option<String>,
}

/// Why a command failed: 1 for a violated invariant, 2 for bad input.
enum Failure {
    Violation(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::TheoremViolation(_) | Error::FormulaMismatch(_) | Error::DegenerateFace => {
                Failure::Violation(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    format: Option<Format>,
    out: Option<PathBuf>,
    tol: f64,
}

impl Ctx {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn alpha(&self, expr: &str) -> Result<Scalar, Failure> {
        let parsed = parse_alpha_with_tolerance(expr, self.tol)
            .map_err(|e| Failure::Input(format!("--alpha {expr:?}: {e}")))?;
        for note in &parsed.notes {
            log::info!("{note}");
        }
        Ok(parsed.value)
    }

    fn spec(&self, t: &Target) -> Result<TruncationSpec, Failure> {
        let alpha = self.alpha(&t.alpha)?;
        Ok(match (&t.squares, &t.m) {
            (Some(n), _) => TruncationSpec::squares(alpha, *n),
            (None, Some(m)) => TruncationSpec::abscissa(alpha, self.alpha(m)?),
            (None, None) => unreachable!("clap requires one of them"),
        })
    }

    fn emit(&self, content: &str) -> Outcome {
        match &self.out {
            Some(path) => fs::write(path, content)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(content.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| Failure::Input(e.to_string()))
            }
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Outcome {
        let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
        s.push('\n');
        self.emit(&s)
    }

    /// JSON or text; svg is not available for this command.
    fn emit_report<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Outcome {
        match self.format(Format::Json) {
            Format::Json => self.emit_json(value),
            Format::Text => self.emit(&text()),
            Format::Svg => Err(Failure::Input("this command has no svg output".into())),
        }
    }
}

fn census_text(a: &Analysis, c: &CensusJson) -> String {
    let mut s = format!(
        "alpha = {} (~{:.6})\nM = {} (~{:.6}), endpoint on the {:?} side\nfaces: {}\ndistinct areas: {}\ndistinct shapes: {}\n",
        a.alpha,
        a.alpha.to_f64(),
        a.m,
        a.m.to_f64(),
        a.side,
        c.n_faces,
        c.distinct_areas,
        c.distinct_shapes
    );
    for (i, d) in a.d.iter().enumerate() {
        s += &format!("d{} = {} (~{:.6})\n", i + 1, d, d.to_f64());
    }
    for class in &c.per_class {
        let slot = class.formula_slot.as_deref().unwrap_or("unmatched");
        s += &format!(
            "  {slot:<24} {:>5} x {} (~{:.3e})\n",
            class.count, class.area.exact, class.area.approx
        );
    }
    s += &format!("bounds hold: {}\n", c.theorem_ok);
    if let Some(e) = &c.formula_error {
        s += &format!("formula check: {e}\n");
    }
    s
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        format: cli.format,
        out: cli.out,
        tol: cli.tol,
    };
    match cli.command {
        Command::Analyze { target, faces } => {
            let spec = ctx.spec(&target)?;
            let a = analyze(&spec)?;
            let census = CensusJson::new(&a, &spec.truncation);
            match ctx.format(Format::Json) {
                Format::Json if faces => ctx.emit_json(&faces_json(&a))?,
                Format::Json => ctx.emit_json(&census)?,
                Format::Text => ctx.emit(&census_text(&a, &census))?,
                Format::Svg => ctx.emit(&svg::subdivision_svg(&a, true, 3))?,
            }
            if !census.theorem_ok {
                return Err(Failure::Violation(format!(
                    "bounds or area formulas fail: {} areas, {} shapes{}",
                    census.distinct_areas,
                    census.distinct_shapes,
                    census
                        .formula_error
                        .map(|e| format!("; {e}"))
                        .unwrap_or_default()
                )));
            }
            Ok(())
        }
        Command::Gaps { kind, alpha, n } => {
            let alpha = ctx.alpha(&alpha)?;
            let (gaps, result) = match kind {
                GapKind::Three => (
                    gap_census(&three_gap_points(&alpha, n)?),
                    verify_three_gap(&alpha, n).map(|_| ()),
                ),
                GapKind::Four => (
                    gap_census(&four_gap_points(&alpha, n)?),
                    verify_four_gap(&alpha, n).map(|_| ()),
                ),
            };
            let report = GapsJson::new(&alpha, n, &gaps, result.is_ok());
            ctx.emit_report(&report, || {
                let mut s = format!(
                    "alpha = {alpha}, n = {n}: {} distinct lengths\n",
                    gaps.len()
                );
                for (l, m) in gaps.lengths.iter().zip(&gaps.multiplicities) {
                    s += &format!("  {l} (~{:.6}) x {m}\n", l.to_f64());
                }
                s
            })?;
            result.map_err(Failure::from)
        }
        Command::Verify { what } => verify(&ctx, what),
        Command::Sweep {
            seed,
            count,
            min_squares,
            max_squares,
        } => {
            if min_squares < 1 || min_squares > max_squares {
                return Err(Failure::Input(format!(
                    "empty truncation range {min_squares}..={max_squares}"
                )));
            }
            let report = run_sweep(&SweepConfig {
                seed,
                count,
                min_squares,
                max_squares,
            })?;
            ctx.emit_report(&report, || {
                format!(
                    "{} slopes x N = {min_squares}..={max_squares}: {} cases, max {} areas, max {} shapes, {} violations\n",
                    count,
                    report.cases.len(),
                    report.max_areas,
                    report.max_shapes,
                    report.violations
                )
            })?;
            if !report.passed() {
                return Err(Failure::Violation(format!(
                    "{} sweep cases violate an invariant",
                    report.violations
                )));
            }
            Ok(())
        }
        Command::Render {
            figure,
            alpha,
            squares,
            n,
            p,
            q,
            precision,
        } => {
            if ctx.format(Format::Svg) != Format::Svg {
                return Err(Failure::Input("render only produces svg".into()));
            }
            let alpha_or = |default: Scalar| -> Result<Scalar, Failure> {
                alpha.as_deref().map_or(Ok(default), |e| ctx.alpha(e))
            };
            let s3m1 = Scalar::sqrt_int(3) - Scalar::one();
            let out = match figure.as_str() {
                "1" => {
                    let a = alpha_or(s3m1)?;
                    svg::orbit_svg(
                        &fold_orbit(&TruncationSpec::squares(a, squares.unwrap_or(8)))?,
                        precision,
                    )
                }
                "3" => {
                    let a = alpha_or(Scalar::approx(0.1405, ctx.tol))?;
                    svg::bouncing_svg(&four_gap_points(&a, n.unwrap_or(16))?, precision)
                }
                "5" => {
                    let a = alpha_or(s3m1)?;
                    let n = squares.unwrap_or(4);
                    let orbit = fold_orbit(&TruncationSpec::squares(a.clone(), n))?;
                    svg::line_construction_svg(&build_line_family(&a, n)?, &orbit, precision)
                }
                "6" => {
                    let a = alpha_or(s3m1)?;
                    let n = squares.unwrap_or(8) as i64;
                    svg::intercepts_svg(
                        &intercept_orbit(&a, &(-n..=n).collect::<Vec<_>>())?,
                        precision,
                    )
                }
                "7" => {
                    let (p, q) = (p.unwrap_or(3), q.unwrap_or(5));
                    if q <= 0 {
                        return Err(Failure::Input("q must be positive".into()));
                    }
                    let spec = TruncationSpec::abscissa(Scalar::ratio(p, q), Scalar::int(q));
                    svg::subdivision_svg(&analyze(&spec)?, true, precision)
                }
                "8" => {
                    let a = alpha_or(Scalar::sqrt_int(10) / Scalar::int(7))?;
                    svg::subdivision_svg(
                        &analyze(&TruncationSpec::squares(a, squares.unwrap_or(11)))?,
                        true,
                        precision,
                    )
                }
                _ => unreachable!("clap restricts the figure"),
            };
            ctx.emit(&out)
        }
    }
}

fn verify(ctx: &Ctx, what: Verify) -> Outcome {
    match what {
        Verify::Theorem13 { target } => {
            let spec = ctx.spec(&target)?;
            let a = analyze(&spec)?;
            let census = CensusJson::new(&a, &spec.truncation);
            ctx.emit_report(&census, || census_text(&a, &census))?;
            theorem13_from(&a)?;
            match a.formula_error {
                Some(e) => Err(Failure::Violation(e)),
                None => Ok(()),
            }
        }
        Verify::Rational { p, q } => {
            let r = verify_rational(p, q)?;
            ctx.emit_report(&r, || {
                let areas: Vec<String> = r.areas.iter().map(ToString::to_string).collect();
                format!(
                    "slope {p}/{q}: {} areas after M0 = {}: {}\n",
                    r.distinct_areas,
                    r.m0,
                    areas.join(", ")
                )
            })
        }
        Verify::Golden { n, squares } => {
            let r = verify_golden(n, squares)?;
            ctx.emit_report(&r, || {
                format!(
                    "slope {} (1/({n}+phi)): {} truncations, at most {} areas, {} geometric checks\n",
                    golden_alpha(n),
                    r.truncations,
                    r.max_areas,
                    r.geometric_checks
                )
            })
        }
        Verify::Lines { alpha, squares } => {
            let alpha = ctx.alpha(&alpha)?;
            let r = verify_orbit_equals_lines(&alpha, squares)?;
            let orbit = fold_orbit(&TruncationSpec::squares(alpha.clone(), squares))?;
            let body = serde_json::json!({ "report": r, "orbit": OrbitJson::from(&orbit) });
            ctx.emit_report(&body, || {
                format!(
                    "slope {alpha}, N = {squares}: {} segments equal {} chords\n",
                    r.segments, r.chords
                )
            })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("BILLIARD_LOG", "warn"))
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violations_and_input_errors_are_told_apart() {
        assert!(matches!(
            Failure::from(Error::TheoremViolation("x".into())),
            Failure::Violation(_)
        ));
        assert!(matches!(
            Failure::from(Error::FormulaMismatch("x".into())),
            Failure::Violation(_)
        ));
        assert!(matches!(
            Failure::from(Error::MixedExactness),
            Failure::Input(_)
        ));
        assert!(matches!(
            Failure::from(Error::Domain("x".into())),
            Failure::Input(_)
        ));
    }
}
