//! `clampte`: spectra, reference tables and property checks from the
//! command line.
//!
//! Exit codes: 0 success (all checks pass), 1 a check failed, 2 usage error,
//! 3 numerical failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clampte_core::dtn::{dtn_distance_to_static, gamma_n, gamma_small_k};
use clampte_core::geometry::PlanarCurve;
use clampte_core::oracle::{disk_dirichlet, disk_neumann, disk_te_roots, ellipse_lambda1};
use clampte_core::report::{SolverParams, SpectrumKind, SpectrumReport};
use clampte_core::tables::{
    compare_nearest, compare_positional, ellipse_table, format_comparisons, format_ellipse_table,
    format_monotonicity, monotonicity, ReferenceRow, DISK_ROWS, DISK_TOL, SHAPE_ROWS, SHAPE_TOL,
};
use clampte_core::Error;

#[derive(Parser)]
#[command(name = "clampte", version, about = "Clamped transmission, Dirichlet and Neumann eigenvalues of planar domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the first eigenvalues of a shape and write a report.
    Eigs {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Spectra to compute, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "de,ne,te")]
        types: Vec<String>,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check mu_j <= k_j^2 <= lambda_j for j = 1..count.
    Interlace {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Recompute a reference table and print the differences.
    Table {
        #[arg(value_enum)]
        which: TableKind,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Tabulate ||T_ik - T_0|| and the small-k behaviour of gamma_n.
    DtnCheck {
        /// Radius of the truncation circle.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Fourier truncation order N_f.
        #[arg(long, default_value_t = 40)]
        truncation: usize,
        /// Wavenumbers, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,0.1,0.01,0.001")]
        k_grid: Vec<f64>,
    },
    /// Separation-of-variables reference values.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Ellipse aspect ratio (for `ellipse`).
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
}

#[derive(Args)]
struct ShapeArgs {
    /// disk, disk:<r>, ellipse:<eps>, star, peanut, kite or fourier:<file>.
    #[arg(long, default_value = "disk")]
    shape: String,
    /// Number of values, counted with multiplicity.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=20))]
    count: u64,
}

#[derive(Args)]
struct SolverArgs {
    /// Boundary nodes (even).
    #[arg(long, default_value_t = 128)]
    nodes: usize,
    /// Search ceiling for the contour sweep.
    #[arg(long, default_value_t = 20.0)]
    kmax: f64,
    /// Imaginary half-height of each contour.
    #[arg(long, default_value_t = 0.25)]
    contour_height: f64,
    /// Seed of the contour probe matrix.
    #[arg(long, default_value_t = 20240601)]
    seed: u64,
}

impl SolverArgs {
    fn params(&self) -> SolverParams {
        SolverParams {
            nodes: self.nodes,
            kmax: self.kmax,
            contour_height: self.contour_height,
            seed: self.seed,
            ..SolverParams::default()
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    /// First transmission eigenvalue of ellipses against sqrt(lambda_1).
    Table1,
    /// Disk spectra.
    Table2,
    /// Star, peanut and kite spectra.
    Table4,
    /// Areas and the ordering of k_1.
    Monotonicity,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    De,
    Ne,
    Te,
    Ellipse,
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownShape(_) | Error::Invalid(_) | Error::Contour(_) | Error::Io(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eigs { shape, types, solver, output } => eigs(&shape, &types, &solver, &output),
        Command::Interlace { shape, solver } => interlace(&shape, &solver),
        Command::Table { which, solver } => table(which, &solver),
        Command::DtnCheck { radius, truncation, k_grid } => dtn_check(radius, truncation, &k_grid),
        Command::Oracle { kind, count, eps } => oracle(kind, count, eps),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            ExitCode::from(3)
        }
    }
}

fn build_report(shape: &ShapeArgs, kinds: &[SpectrumKind], solver: &SolverArgs) -> Result<SpectrumReport, Failure> {
    let curve = PlanarCurve::from_name(&shape.shape)?;
    let report = SpectrumReport::build(&shape.shape, &curve, kinds, shape.count as usize, &solver.params())?;
    for s in report.spectra() {
        for r in &s.rejected {
            eprintln!("note: {} candidate {:.8} rejected: {}", s.kind.label(), r.value, r.reason);
        }
    }
    Ok(report)
}

fn eigs(shape: &ShapeArgs, types: &[String], solver: &SolverArgs, output: &OutputArgs) -> Outcome {
    let kinds = types.iter().map(|t| SpectrumKind::parse(t)).collect::<Result<Vec<_>, _>>()?;
    let report = build_report(shape, &kinds, solver)?;
    let text = match output.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json()? + "\n",
    };
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    Ok(true)
}

fn interlace(shape: &ShapeArgs, solver: &SolverArgs) -> Outcome {
    let report = build_report(shape, &SpectrumKind::ALL, solver)?;
    let checks = &report.verdicts.interlacing;
    for c in checks {
        println!(
            "j={} mu={:.6} k^2={:.6} lambda={:.6} {}",
            c.j,
            c.mu,
            c.k_squared,
            c.lambda,
            if c.ok { "PASS" } else { "FAIL" }
        );
    }
    Ok(!checks.is_empty() && checks.iter().all(|c| c.ok))
}

fn compare_rows(rows: &[ReferenceRow], tol: f64, solver: &SolverArgs) -> Outcome {
    let params = solver.params();
    let mut all_ok = true;
    for shape in ["disk", "star", "peanut", "kite"] {
        let mine: Vec<&ReferenceRow> = rows.iter().filter(|r| r.shape == shape).collect();
        if mine.is_empty() {
            continue;
        }
        let curve = PlanarCurve::from_name(shape)?;
        for r in mine {
            // one extra value shows entries missing from the reference list
            let computed = clampte_core::report::compute_spectrum(&curve, r.kind, 6, &params)?.values();
            let label = format!("{shape} {}", r.kind.label());
            let positional = compare_positional(&label, &computed, &r.values, tol);
            print!("{}", format_comparisons(&positional));
            if !positional.iter().all(|c| c.ok) {
                let nearest = compare_nearest(&label, &computed, &r.values, tol);
                if nearest.iter().all(|c| c.ok) {
                    println!("{label}: every listed value is present in the computed spectrum {computed:.5?}");
                }
                all_ok = false;
            }
        }
    }
    Ok(all_ok)
}

fn table(which: TableKind, solver: &SolverArgs) -> Outcome {
    let params = solver.params();
    match which {
        TableKind::Table1 => {
            let rows = ellipse_table(&params)?;
            print!("{}", format_ellipse_table(&rows));
            Ok(rows.iter().all(|r| {
                r.bound_ok
                    && (r.k1 - r.reference_k1).abs() <= SHAPE_TOL
                    && (r.sqrt_lambda1 - r.reference_sqrt_lambda1).abs() <= DISK_TOL
            }))
        }
        TableKind::Table2 => compare_rows(&DISK_ROWS, DISK_TOL, solver),
        TableKind::Table4 => compare_rows(&SHAPE_ROWS, SHAPE_TOL, solver),
        TableKind::Monotonicity => {
            let m = monotonicity(&params)?;
            print!("{}", format_monotonicity(&m));
            Ok(m.ordering_ok && m.shapes.iter().all(|s| (s.area - s.reference).abs() <= 1e-3))
        }
    }
}

fn dtn_check(radius: f64, truncation: usize, grid: &[f64]) -> Outcome {
    let mut grid = grid.to_vec();
    grid.sort_by(|a, b| b.total_cmp(a));
    println!("k          ||T_ik - T_0||");
    let mut norms = Vec::new();
    for &k in &grid {
        let d = dtn_distance_to_static(k, radius, truncation)?;
        println!("{k:<10} {d:.6e}");
        norms.push((k, d));
    }
    let monotone = norms.windows(2).all(|w| w[1].1 <= w[0].1);
    let small = norms.iter().filter(|(k, _)| *k == 1e-3).all(|(_, d)| *d < 1e-2);
    println!("n   k       gamma_n         -k^2R/(2n)      rel err");
    let mut asymptotic_ok = true;
    for n in [2usize, 5, 10, 20, 40].into_iter().filter(|&n| n <= truncation) {
        let k = 1e-3;
        let g = gamma_n(n, k, radius)?;
        let a = gamma_small_k(n, k, radius);
        let rel = ((g - a) / a).abs();
        asymptotic_ok &= rel <= 0.1;
        println!("{n:<3} {k:<7} {g:<15.6e} {a:<15.6e} {rel:.3}");
    }
    println!("monotone decrease: {}", if monotone { "PASS" } else { "FAIL" });
    println!("norm < 1e-2 at k = 1e-3: {}", if small { "PASS" } else { "FAIL" });
    println!("small-k asymptotics within 10%: {}", if asymptotic_ok { "PASS" } else { "FAIL" });
    Ok(monotone && small && asymptotic_ok)
}

fn oracle(kind: OracleKind, count: usize, eps: f64) -> Outcome {
    let spectrum = match kind {
        OracleKind::De => disk_dirichlet(count)?,
        OracleKind::Ne => disk_neumann(count)?,
        OracleKind::Te => disk_te_roots(count)?,
        OracleKind::Ellipse => {
            let l = ellipse_lambda1(eps)?;
            println!("eps={eps} lambda1={l:.10} sqrt={:.10}", l.sqrt());
            return Ok(true);
        }
    };
    println!("value,order,multiplicity");
    for m in &spectrum.modes {
        println!("{:.12},{},{}", m.value, m.order, m.multiplicity);
    }
    Ok(true)
}
