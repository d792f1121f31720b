//! Command-line front end for the `freqfn` engine.
//!
//! [`run`] parses arguments, executes one subcommand and returns the
//! process exit code: 0 on success, 1 on usage or input errors, 2 when a
//! `check` suite finds a violated invariant.

mod check;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use freqfn::analysis::{
    band_extent, densities_non_increasing, discontinuities, level_density_series, scan, ScanReport,
};
use freqfn::corpus::{generate, CorpusSpec, Params};
use freqfn::oracle::{default_r_max, oracle_eval};
use freqfn::{aux_frequency, build_profile, frequency, parse_rat, parse_stepfn, Rat, StepFn};

pub use check::{run_suite, SuiteName, SuiteReport};
pub use output::{emit_plot, render_svg, sibling_csv, PlotKind, Series, Table};

#[derive(Parser, Debug)]
#[command(
    name = "freqfn",
    version,
    about = "Exact maximal and frequency functions of rational step functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn pair_arg(s: &str) -> Result<(u32, u32), String> {
    let (k, l) = s.split_once(',').ok_or("expected `k,l`")?;
    let parse = |v: &str| v.trim().parse::<u32>().map_err(|e| format!("`{v}`: {e}"));
    let (k, l) = (parse(k)?, parse(l)?);
    if k == 0 || l == 0 {
        return Err("k and l must be positive".into());
    }
    Ok((k, l))
}

#[derive(Args, Debug)]
struct FnArg {
    /// Step-function file: one `left right value` piece per line.
    #[arg(long = "fn", value_name = "FILE")]
    path: PathBuf,
}

impl FnArg {
    fn load(&self) -> Result<StepFn> {
        let bytes = std::fs::read(&self.path)
            .with_context(|| format!("cannot read {}", self.path.display()))?;
        parse_stepfn(&bytes).with_context(|| format!("{}", self.path.display()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    Maximal,
    Frequency,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximal function, frequency and attainment status at one point.
    Eval {
        #[command(flatten)]
        f: FnArg,
        #[arg(long, value_parser = rat_arg)]
        x: Rat,
        /// Also print the auxiliary approximant for `k,l`.
        #[arg(long, value_parser = pair_arg, value_name = "K,L")]
        aux: Option<(u32, u32)>,
        /// Also print the radius-grid oracle's estimate.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_parser = rat_arg)]
        r_max: Option<Rat>,
        #[arg(long, default_value_t = 1 << 16)]
        grid: u64,
    },
    /// Average profile at one point as CSV.
    Profile {
        #[command(flatten)]
        f: FnArg,
        #[arg(long, value_parser = rat_arg)]
        x: Rat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal and frequency functions on the grid `step·ℤ ∩ [−N, N]`.
    Scan {
        #[command(flatten)]
        f: FnArg,
        #[arg(long = "N", value_parser = rat_arg)]
        n: Rat,
        #[arg(long, value_parser = rat_arg, default_value = "1/8")]
        step: Rat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Plotted quantity for `--format svg`.
        #[arg(long, value_enum, default_value_t = Quantity::Frequency)]
        y: Quantity,
    },
    /// Density of `{|x| ≤ N : 𝒯f(x) ≤ |x|/C}` for each `N`.
    Density {
        #[command(flatten)]
        f: FnArg,
        #[arg(long = "C", value_parser = rat_arg, default_value = "2")]
        c: Rat,
        #[arg(long = "N", value_parser = rat_arg, value_delimiter = ',', required = true)]
        n: Vec<Rat>,
        #[arg(long, value_parser = rat_arg, default_value = "1/8")]
        step: Rat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Grid points with `|x|/(2C) ≤ 𝒯f(x) ≤ |x|/C`.
    Band {
        #[command(flatten)]
        f: FnArg,
        #[arg(long = "C", value_parser = rat_arg, default_value = "2")]
        c: Rat,
        #[arg(long = "N", value_parser = rat_arg)]
        n: Rat,
        #[arg(long, value_parser = rat_arg, default_value = "1/8")]
        step: Rat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certified discontinuities of the maximal function.
    Discont {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an invariant suite; exit 2 on any violation.
    Check {
        #[arg(long, value_enum)]
        suite: SuiteName,
        #[command(flatten)]
        f: FnArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-case results as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a corpus function in the step-function file format.
    Corpus {
        #[arg(long)]
        id: String,
        /// Truncation level (f3, f5, f8, f9).
        #[arg(long = "K")]
        levels: Option<u32>,
        /// Divisor of f4.
        #[arg(long)]
        k: Option<u32>,
        /// First level of f3.
        #[arg(long)]
        n_min: Option<u32>,
        #[arg(long, value_parser = rat_arg)]
        eps: Option<Rat>,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG plot plus a sibling CSV.
    Plot {
        #[command(flatten)]
        f: FnArg,
        #[arg(long, value_enum, default_value_t = PlotKind::Line)]
        kind: PlotKind,
        #[arg(long = "N", value_parser = rat_arg, value_delimiter = ',', required = true)]
        n: Vec<Rat>,
        #[arg(long, value_parser = rat_arg, default_value = "1/8")]
        step: Rat,
        #[arg(long = "C", value_parser = rat_arg, default_value = "2")]
        c: Rat,
        #[arg(long, value_enum, default_value_t = Quantity::Frequency)]
        y: Quantity,
        #[arg(long)]
        out: PathBuf,
    },
}

/// What a subcommand produced: text for standard output and whether an
/// invariant failed.
struct Done {
    stdout: String,
    violated: bool,
}

impl Done {
    fn text(s: impl Into<String>) -> Self {
        Done {
            stdout: s.into(),
            violated: false,
        }
    }

    fn delivered(path: Option<&Path>, contents: String) -> Result<Self> {
        Ok(Done::text(
            output::deliver(path, contents)?.unwrap_or_default(),
        ))
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    1
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(done) => {
            let _ = write!(out, "{}", done.stdout);
            if done.violated {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn scan_table(report: &ScanReport) -> Table {
    let mut t = Table::new(&["x", "maximal", "frequency"]);
    for e in &report.entries {
        t.push(vec![
            e.x.to_string(),
            e.maximal.to_string(),
            e.frequency.to_string(),
        ]);
    }
    t.note("domain_bound", &report.domain_bound);
    t.note("grid_step", &report.grid_step);
    for (k, v) in &report.aggregates {
        t.note(k, v);
    }
    t
}

fn scan_series(report: &ScanReport, y: Quantity) -> Series {
    let label = match y {
        Quantity::Maximal => "maximal",
        Quantity::Frequency => "frequency",
    };
    Series {
        x_label: "x".into(),
        y_label: label.into(),
        points: report
            .entries
            .iter()
            .map(|e| {
                (
                    e.x.clone(),
                    if y == Quantity::Maximal {
                        e.maximal.clone()
                    } else {
                        e.frequency.clone()
                    },
                )
            })
            .collect(),
    }
}

fn density_outputs(f: &StepFn, c: &Rat, ns: &[Rat], step: &Rat) -> Result<(Table, Series)> {
    let series = level_density_series(f, c, ns, step)?;
    let mut t = Table::new(&["N", "count", "measure", "density"]);
    for r in &series {
        t.push(["count", "measure", "density"].iter().fold(
            vec![r.domain_bound.to_string()],
            |mut row, k| {
                row.push(r.aggregates[*k].to_string());
                row
            },
        ));
    }
    t.note("C", c);
    t.note("grid_step", step);
    t.note("non_increasing", densities_non_increasing(&series));
    let points = series
        .iter()
        .map(|r| (r.domain_bound.clone(), r.aggregates["density"].clone()))
        .collect();
    Ok((
        t,
        Series {
            x_label: "N".into(),
            y_label: "density".into(),
            points,
        },
    ))
}

fn require_svg_path(out: Option<&PathBuf>) -> Result<&PathBuf> {
    out.context("--format svg needs --out")
}

fn execute(cmd: Command) -> Result<Done> {
    match cmd {
        Command::Eval {
            f,
            x,
            aux,
            oracle,
            r_max,
            grid,
        } => {
            let f = f.load()?;
            let r = frequency(&f, &x);
            let mut s = format!(
                "maximal={}\nfrequency={}\nstatus={}\n",
                r.maximal,
                r.frequency,
                r.status.label()
            );
            if let Some(w) = r.status.witness() {
                s.push_str(&format!("witness={w}\n"));
            }
            if let Some((k, l)) = aux {
                s.push_str(&format!("aux_frequency={}\n", aux_frequency(&f, &x, k, l)));
            }
            if oracle {
                let r_max = r_max.unwrap_or_else(|| default_r_max(&f, &x));
                let o = oracle_eval(&f, &x, &r_max, grid)?;
                s.push_str(&format!(
                    "oracle_maximal={}\noracle_frequency={}\noracle_error_bound={}\noracle_r_max={}\noracle_grid_count={}\n",
                    o.approx_maximal, o.approx_frequency, o.error_bound, o.r_max, o.grid_count
                ));
            }
            Ok(Done::text(s))
        }
        Command::Profile { f, x, out } => {
            let p = build_profile(&f.load()?, &x);
            let mut t = Table::new(&["segment_index", "r_lo", "r_hi", "alpha", "beta"]);
            for (i, seg) in p.segments.iter().enumerate() {
                let (lo, hi) = p.segment_range(i);
                let hi = hi.map_or_else(|| "inf".to_string(), |h| h.to_string());
                t.push(vec![
                    i.to_string(),
                    lo.to_string(),
                    hi,
                    seg.alpha.to_string(),
                    seg.beta.to_string(),
                ]);
            }
            t.note("center", &p.center);
            t.note("local_limit", p.local_limit());
            Done::delivered(out.as_deref(), t.to_csv())
        }
        Command::Scan {
            f,
            n,
            step,
            out,
            format,
            y,
        } => {
            let report = scan(&f.load()?, &n, &step)?;
            let table = scan_table(&report);
            match format {
                Format::Csv => Done::delivered(out.as_deref(), table.to_csv()),
                Format::Svg => {
                    emit_plot(
                        &scan_series(&report, y),
                        &table,
                        require_svg_path(out.as_ref())?,
                        PlotKind::Line,
                    )?;
                    Ok(Done::text(""))
                }
            }
        }
        Command::Density {
            f,
            c,
            n,
            step,
            out,
            format,
        } => {
            let (table, series) = density_outputs(&f.load()?, &c, &n, &step)?;
            match format {
                Format::Csv => Done::delivered(out.as_deref(), table.to_csv()),
                Format::Svg => {
                    emit_plot(
                        &series,
                        &table,
                        require_svg_path(out.as_ref())?,
                        PlotKind::Density,
                    )?;
                    Ok(Done::text(""))
                }
            }
        }
        Command::Band { f, c, n, step, out } => {
            let report = band_extent(&f.load()?, &c, &n, &step)?;
            let (lo_div, hi_div) = (&c * Rat::from_integer(2.into()), c.clone());
            let mut t = Table::new(&["x", "maximal", "frequency"]);
            for e in &report.entries {
                let ax = num_traits::abs(e.x.clone());
                if e.frequency >= &ax / &lo_div && e.frequency <= &ax / &hi_div {
                    t.push(vec![
                        e.x.to_string(),
                        e.maximal.to_string(),
                        e.frequency.to_string(),
                    ]);
                }
            }
            t.note("C", &c);
            t.note("domain_bound", &report.domain_bound);
            t.note("grid_step", &report.grid_step);
            for (k, v) in &report.aggregates {
                t.note(k, v);
            }
            Done::delivered(out.as_deref(), t.to_csv())
        }
        Command::Discont { f, out } => {
            let certs = discontinuities(&f.load()?);
            let mut t = Table::new(&[
                "point",
                "maximal_at",
                "side_value",
                "jump_lower_bound",
                "high_side",
            ]);
            for c in &certs {
                let side = if c.high_side.sign() < 0 {
                    "left"
                } else {
                    "right"
                };
                t.push(vec![
                    c.point.to_string(),
                    c.maximal_at.to_string(),
                    c.side_value.to_string(),
                    c.jump_lower_bound.to_string(),
                    side.to_string(),
                ]);
            }
            t.note("count", certs.len());
            Done::delivered(out.as_deref(), t.to_csv())
        }
        Command::Check {
            suite,
            f,
            samples,
            seed,
            out,
        } => {
            let report = run_suite(suite, &f.load()?, samples, seed);
            let mut s = report.summary();
            s.push('\n');
            for c in report
                .cases
                .iter()
                .filter_map(|c| c.failure.as_ref().map(|why| (&c.at, why)))
            {
                s.push_str(&format!("violation at={} detail={}\n", c.0, c.1));
            }
            if let Some(path) = out {
                let mut t = Table::new(&["at", "ok"]);
                for c in &report.cases {
                    t.push(vec![c.at.to_string(), c.failure.is_none().to_string()]);
                }
                t.note("passed", report.passed());
                t.note("total", report.cases.len());
                t.note("seed", seed);
                output::deliver(Some(&path), t.to_csv())?;
            }
            Ok(Done {
                stdout: s,
                violated: !report.ok(),
            })
        }
        Command::Corpus {
            id,
            levels,
            k,
            n_min,
            eps,
            m_max,
            out,
        } => {
            let spec = CorpusSpec::from_id(
                &id,
                &Params {
                    levels,
                    k,
                    n_min,
                    eps,
                    m_max,
                },
            )?;
            let f = generate(&spec)?;
            Done::delivered(out.as_deref(), f.to_text())
        }
        Command::Plot {
            f,
            kind,
            n,
            step,
            c,
            y,
            out,
        } => {
            let f = f.load()?;
            let (series, table) = match kind {
                PlotKind::Line => {
                    let [n] = n.as_slice() else {
                        bail!("a line plot takes a single --N")
                    };
                    let report = scan(&f, n, &step)?;
                    (scan_series(&report, y), scan_table(&report))
                }
                PlotKind::Density => {
                    let (t, s) = density_outputs(&f, &c, &n, &step)?;
                    (s, t)
                }
            };
            emit_plot(&series, &table, &out, kind)?;
            Ok(Done::text(""))
        }
    }
}
