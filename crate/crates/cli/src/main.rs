//! Command-line front end: sweeps, deviation analyses, equilibrium-length
//! scans, contour grids, and CI-data fits, emitted as CSV tables and
//! standalone SVG plots.

mod render;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use h2spin::ci_bridge::{
    alpha_over_r, expansion_coefficients, fit_log_linear, ingest_series, split_ascending_branch,
};
use h2spin::deviation::{analyze, residual};
use h2spin::hydrogen::{contour_grid, equilibrium_lengths, j_of_r};
use h2spin::measures::{concurrence_region_i_closed, entropy_region_i_closed};
use h2spin::spin_model::{classify_region, ground_state_closed};
use h2spin::{Denominator, MeasureKind, ModelParams, RegionTag, ScanKind};

#[derive(Parser)]
#[command(name = "h2spin", version, about = "Two-qubit hydrogen-molecule entanglement toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement and correlation energy over a coupling sweep.
    Sweep(Common),
    /// Optimal scaling parameters and residual-minimum locations.
    Alpha(Common),
    /// Residual profile of the deviation functional at its optimal scaling.
    Deviation(Common),
    /// Coupling curve and equilibrium internuclear distances.
    Hydrogen(Common),
    /// Minimized concurrence deviation over a (B, r) grid.
    Contour(ContourArgs),
    /// Rescaling and log-linear fit of an external (R, E_corr, S) series.
    Ci(CiArgs),
    /// Small-E expansion coefficients, or a log-linear fit of a data file.
    Fit(FitArgs),
}

#[derive(Args)]
struct Common {
    /// Anisotropy parameter.
    #[arg(long)]
    g: Option<f64>,
    /// Magnetic field in Rydberg.
    #[arg(long)]
    b_field: Option<f64>,
    /// Coupling window as LO:HI.
    #[arg(long)]
    window: Option<String>,
    #[arg(long, value_enum)]
    measure: Option<MeasureArg>,
    /// Number of grid points.
    #[arg(long)]
    points: Option<usize>,
    /// Output base path; `.csv`/`.svg` extensions are appended.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Flat key=value config file; explicit flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ContourArgs {
    #[command(flatten)]
    common: Common,
    /// Field range in Rydberg as LO:HI.
    #[arg(long)]
    b_range: Option<String>,
    /// Distance range in Bohr radii as LO:HI.
    #[arg(long)]
    r_range: Option<String>,
    /// Color-level window for the SVG as LO:HI.
    #[arg(long)]
    levels: Option<String>,
}

#[derive(Args)]
struct CiArgs {
    #[command(flatten)]
    common: Common,
    /// CSV file with header R_angstrom,E_corr,S_vN.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    denominator: Option<DenominatorArg>,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    common: Common,
    /// Optional CSV series to fit instead of the built-in closed form.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Entropy,
    Concurrence,
}

impl From<MeasureArg> for MeasureKind {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Entropy => MeasureKind::Entropy,
            MeasureArg::Concurrence => MeasureKind::Concurrence,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormatArg {
    Csv,
    Svg,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum DenominatorArg {
    Squared,
    Plain,
}

type CliResult<T> = Result<T, String>;

fn fail<T>(code: &str, message: impl std::fmt::Display) -> CliResult<T> {
    Err(format!("{code}: {message}"))
}

/// Flag values merged over the config file, with defaults applied.
struct Resolved {
    g: f64,
    b_field: f64,
    window: (f64, f64),
    measure: MeasureKind,
    points: usize,
    out: PathBuf,
    format: FormatArg,
    extra: HashMap<String, String>,
}

fn parse_pair(s: &str, what: &str) -> CliResult<(f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    let parse = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|e| format!("invalid_params: {what} `{s}`: {e}"))
    };
    match parts.as_slice() {
        [lo, hi] => {
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo >= hi {
                return fail("invalid_params", format!("{what} `{s}` must satisfy LO < HI"));
            }
            Ok((lo, hi))
        }
        _ => fail("invalid_params", format!("{what} `{s}` must be LO:HI")),
    }
}

fn read_config(path: &Path) -> CliResult<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("io_error: {}: {e}", path.display()))?;
    let mut map = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) => {
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
            None => {
                return fail(
                    "parse_error",
                    format!("{}: line {}: expected key=value", path.display(), i + 1),
                )
            }
        }
    }
    Ok(map)
}

impl Common {
    fn resolve(&self, default_out: &str) -> CliResult<Resolved> {
        let cfg = match &self.config {
            Some(path) => read_config(path)?,
            None => HashMap::new(),
        };
        fn pick<T, E: std::fmt::Display>(
            flag: Option<T>,
            cfg: &HashMap<String, String>,
            key: &str,
            parse: impl Fn(&str) -> Result<T, E>,
            default: T,
        ) -> CliResult<T> {
            if let Some(v) = flag {
                return Ok(v);
            }
            match cfg.get(key) {
                Some(raw) => {
                    parse(raw).map_err(|e| format!("invalid_params: config key {key}: {e}"))
                }
                None => Ok(default),
            }
        }
        let measure = pick(
            self.measure,
            &cfg,
            "measure",
            |s| MeasureArg::from_str(s, true),
            MeasureArg::Entropy,
        )?;
        let format = pick(
            self.format,
            &cfg,
            "format",
            |s| FormatArg::from_str(s, true),
            FormatArg::Both,
        )?;
        let window = match (&self.window, cfg.get("window")) {
            (Some(s), _) => parse_pair(s, "window")?,
            (None, Some(s)) => parse_pair(s, "window")?,
            (None, None) => (0.0, 1.0),
        };
        Ok(Resolved {
            g: pick(self.g, &cfg, "g", str::parse, 1.0)?,
            b_field: pick(self.b_field, &cfg, "b_field", str::parse, 0.5)?,
            window,
            measure: measure.into(),
            points: pick(self.points, &cfg, "points", str::parse, 101)?,
            out: pick(
                self.out.clone(),
                &cfg,
                "out",
                |s| Ok::<_, String>(PathBuf::from(s)),
                PathBuf::from(default_out),
            )?,
            format,
            extra: cfg,
        })
    }
}

impl Resolved {
    fn write_csv(&self, content: &str) -> CliResult<PathBuf> {
        let path = self.out.with_extension("csv");
        std::fs::write(&path, content)
            .map_err(|e| format!("io_error: {}: {e}", path.display()))?;
        Ok(path)
    }

    fn write_svg(&self, content: &str) -> CliResult<PathBuf> {
        let path = self.out.with_extension("svg");
        std::fs::write(&path, content)
            .map_err(|e| format!("io_error: {}: {e}", path.display()))?;
        Ok(path)
    }

    fn wants_csv(&self) -> bool {
        matches!(self.format, FormatArg::Csv | FormatArg::Both)
    }

    fn wants_svg(&self) -> bool {
        matches!(self.format, FormatArg::Svg | FormatArg::Both)
    }

    fn grid(&self) -> CliResult<Vec<f64>> {
        if self.points < 2 {
            return fail("invalid_params", "points must be at least 2");
        }
        let (lo, hi) = self.window;
        let n = self.points;
        Ok((0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect())
    }
}

/// (S, C, E_corr) for the ground state at (g, lambda), valid in both regions.
fn measures_at(g: f64, lambda: f64) -> CliResult<(f64, f64, f64)> {
    if lambda == 0.0 {
        return Ok((0.0, 0.0, 0.0));
    }
    let p = ModelParams::dimensionless(g, lambda).map_err(|e| e.to_string())?;
    let region = classify_region(&p).map_err(|e| e.to_string())?;
    let (energy, _, _) = ground_state_closed(&p).map_err(|e| e.to_string())?;
    let e_corr = -energy - 2.0;
    let (s, c) = match region {
        RegionTag::RegionII => (1.0, 1.0),
        RegionTag::RegionI | RegionTag::Boundary => (
            entropy_region_i_closed(g, lambda).map_err(|e| e.to_string())?,
            concurrence_region_i_closed(g, lambda).map_err(|e| e.to_string())?,
        ),
    };
    Ok((s, c, e_corr))
}

fn cmd_sweep(args: &Common) -> CliResult<()> {
    let r = args.resolve("sweep")?;
    let lambdas = r.grid()?;
    let mut entropy = Vec::with_capacity(lambdas.len());
    let mut conc = Vec::with_capacity(lambdas.len());
    let mut e_corr = Vec::with_capacity(lambdas.len());
    for &l in &lambdas {
        let (s, c, e) = measures_at(r.g, l)?;
        entropy.push(s);
        conc.push(c);
        e_corr.push(e);
    }
    if r.wants_csv() {
        let csv = render::csv_table(
            &["lambda", "S_vN", "C", "E_corr"],
            &[&lambdas, &entropy, &conc, &e_corr],
        );
        println!("wrote {}", r.write_csv(&csv)?.display());
    }
    if r.wants_svg() {
        let svg = render::svg_lines(
            &format!("Entanglement vs coupling (g = {})", r.g),
            &lambdas,
            &[("S_vN", &entropy), ("C", &conc)],
        );
        println!("wrote {}", r.write_svg(&svg)?.display());
    }
    Ok(())
}

fn cmd_alpha(args: &Common) -> CliResult<()> {
    let r = args.resolve("alpha")?;
    let s = analyze(MeasureKind::Entropy, r.g, r.window).map_err(|e| e.to_string())?;
    let c = analyze(MeasureKind::Concurrence, r.g, r.window).map_err(|e| e.to_string())?;
    let fmt_loc = |l: Option<f64>| match l {
        Some(v) => render::num(v),
        None => "monotone".into(),
    };
    println!("alpha_min      (entropy)     = {}  (reference magnitude 0.691217)", render::num(s.alpha));
    println!("alpha'_min     (concurrence) = {}  (reference magnitude 0.383249)", render::num(c.alpha));
    println!("lambda_S_min                 = {}  (reference 0.485)", fmt_loc(s.lambda_min()));
    println!("lambda_C_min                 = {}  (reference 0.371)", fmt_loc(c.lambda_min()));
    if args.out.is_some() && r.wants_csv() {
        let csv = render::csv_table(
            &["alpha_entropy", "alpha_concurrence", "lambda_S_min", "lambda_C_min"],
            &[
                &[s.alpha],
                &[c.alpha],
                &[s.lambda_min().unwrap_or(f64::NAN)],
                &[c.lambda_min().unwrap_or(f64::NAN)],
            ],
        );
        println!("wrote {}", r.write_csv(&csv)?.display());
    }
    Ok(())
}

fn cmd_deviation(args: &Common) -> CliResult<()> {
    let r = args.resolve("deviation")?;
    let result = analyze(r.measure, r.g, r.window).map_err(|e| e.to_string())?;
    let lambdas = r.grid()?;
    let deltas: Vec<f64> = lambdas
        .iter()
        .map(|&l| residual(r.measure, r.g, result.alpha, l))
        .collect();
    println!("alpha          = {}", render::num(result.alpha));
    match result.lambda_min() {
        Some(l) => println!("lambda_min     = {}", render::num(l)),
        None => println!("lambda_min     = monotone over window"),
    }
    println!("residual_min   = {}", render::num(result.residual_at_min));
    if r.wants_csv() {
        let csv = render::csv_table(&["lambda", "delta"], &[&lambdas, &deltas]);
        println!("wrote {}", r.write_csv(&csv)?.display());
    }
    if r.wants_svg() {
        let svg = render::svg_lines("Deviation residual", &lambdas, &[("delta", &deltas)]);
        println!("wrote {}", r.write_svg(&svg)?.display());
    }
    Ok(())
}

fn cmd_hydrogen(args: &Common) -> CliResult<()> {
    let r = args.resolve("hydrogen")?;
    let scan = equilibrium_lengths(r.measure, r.b_field).map_err(|e| e.to_string())?;
    let result = analyze(r.measure, 1.0, (0.0, 1.0)).map_err(|e| e.to_string())?;
    match scan.kind {
        ScanKind::TwoMinima => {
            let nearest = scan
                .roots
                .iter()
                .copied()
                .min_by(|a, b| (a - 2.0).abs().partial_cmp(&(b - 2.0).abs()).unwrap())
                .unwrap();
            println!(
                "equilibrium roots = {}, {}  (Bohr radii)",
                render::num(scan.roots[0]),
                render::num(scan.roots[1]),
            );
            println!(
                "nearest to experimental r = 2.0: {}",
                render::num(nearest)
            );
        }
        ScanKind::SingleAtJMax => {
            println!("single equilibrium at the coupling maximum r = {}", render::num(scan.roots[0]));
        }
        ScanKind::None => println!("no equilibrium root in range"),
    }
    // r-domain table over [0.01, 5] Bohr radii
    let n = r.points.max(2);
    let rs: Vec<f64> = (0..n)
        .map(|i| 0.01 + (5.0 - 0.01) * i as f64 / (n - 1) as f64)
        .collect();
    let mut js = Vec::with_capacity(n);
    let mut ls = Vec::with_capacity(n);
    let mut ds = Vec::with_capacity(n);
    for &rr in &rs {
        let j = j_of_r(rr).map_err(|e| e.to_string())?;
        let l = j / r.b_field;
        js.push(j);
        ls.push(l);
        ds.push(residual(r.measure, 1.0, result.alpha, l));
    }
    if r.wants_csv() {
        let csv = render::csv_table(&["r", "J_r", "lambda", "delta"], &[&rs, &js, &ls, &ds]);
        println!("wrote {}", r.write_csv(&csv)?.display());
    }
    if r.wants_svg() {
        let svg = render::svg_lines(
            &format!("Residual vs distance (B = {} Ry)", r.b_field),
            &rs,
            &[("delta", &ds), ("J_r", &js)],
        );
        println!("wrote {}", r.write_svg(&svg)?.display());
    }
    Ok(())
}

fn cmd_contour(args: &ContourArgs) -> CliResult<()> {
    let r = args.common.resolve("contour")?;
    let pair_opt = |flag: &Option<String>, key: &str, what: &str, default: (f64, f64)| {
        match (flag, r.extra.get(key)) {
            (Some(s), _) => parse_pair(s, what),
            (None, Some(s)) => parse_pair(s, what),
            (None, None) => Ok(default),
        }
    };
    let b_range = pair_opt(&args.b_range, "b_range", "b-range", (0.375, 0.8))?;
    let r_range = pair_opt(&args.r_range, "r_range", "r-range", (0.25, 4.0))?;
    let levels = pair_opt(&args.levels, "levels", "levels", (-0.038, 0.04))?;
    let n = r.points.min(201);
    let grid = contour_grid(b_range, r_range, n, n).map_err(|e| e.to_string())?;
    if r.wants_csv() {
        let mut csv = String::from("r\\B");
        for b in &grid.b_values {
            csv.push(',');
            csv.push_str(&render::num(*b));
        }
        csv.push('\n');
        for (j, rr) in grid.r_values.iter().enumerate() {
            csv.push_str(&render::num(*rr));
            for i in 0..grid.b_values.len() {
                csv.push(',');
                csv.push_str(&render::num(grid.at(j, i)));
            }
            csv.push('\n');
        }
        println!("wrote {}", r.write_csv(&csv)?.display());
    }
    if r.wants_svg() {
        let svg = render::svg_heatmap(
            "Minimized concurrence deviation",
            &grid.b_values,
            &grid.r_values,
            &grid.values,
            levels,
        );
        println!("wrote {}", r.write_svg(&svg)?.display());
    }
    Ok(())
}

fn cmd_ci(args: &CiArgs) -> CliResult<()> {
    let r = args.common.resolve("ci")?;
    let input = match (&args.input, r.extra.get("input")) {
        (Some(p), _) => p.clone(),
        (None, Some(s)) => PathBuf::from(s),
        (None, None) => return fail("invalid_params", "ci requires --input PATH"),
    };
    let denominator = match (args.denominator, r.extra.get("denominator")) {
        (Some(DenominatorArg::Squared), _) => Denominator::SquaredMeasure,
        (Some(DenominatorArg::Plain), _) => Denominator::PlainMeasure,
        (None, Some(s)) if s == "plain" => Denominator::PlainMeasure,
        (None, Some(s)) if s == "squared" => Denominator::SquaredMeasure,
        (None, Some(s)) => return fail("invalid_params", format!("denominator `{s}`")),
        (None, None) => Denominator::SquaredMeasure,
    };
    let series = ingest_series(&input).map_err(|e| e.to_string())?;
    let a_sq = alpha_over_r(&series, Denominator::SquaredMeasure).map_err(|e| e.to_string())?;
    let a_pl = alpha_over_r(&series, Denominator::PlainMeasure).map_err(|e| e.to_string())?;
    let branch = split_ascending_branch(&series);
    let fit = fit_log_linear(&branch).map_err(|e| e.to_string())?;
    let selected = match denominator {
        Denominator::SquaredMeasure => a_sq,
        Denominator::PlainMeasure => a_pl,
    };
    println!("samples               = {}", series.len());
    println!("alpha over R          = {}  (selected convention)", render::num(selected));
    println!("  squared denominator = {}", render::num(a_sq));
    println!("  plain denominator   = {}", render::num(a_pl));
    println!("ascending branch      = first {} of {} rows", branch.len(), series.len());
    println!("fit a_coef            = {}", render::num(fit.a_coef));
    println!("fit b_coef            = {}", render::num(fit.b_coef));
    println!("fit rss               = {}", render::num(fit.rss));
    if args.common.out.is_some() && r.wants_csv() {
        let (rs, es, ss): (Vec<f64>, Vec<f64>, Vec<f64>) = branch
            .rows()
            .iter()
            .map(|row| (row.r, row.e_corr, row.entropy))
            .fold((vec![], vec![], vec![]), |(mut a, mut b, mut c), (x, y, z)| {
                a.push(x);
                b.push(y);
                c.push(z);
                (a, b, c)
            });
        let fitted: Vec<f64> = es
            .iter()
            .map(|&e| fit.a_coef * e + fit.b_coef * e * e.ln())
            .collect();
        let csv = render::csv_table(
            &["R_angstrom", "E_corr", "S_vN", "S_fit"],
            &[&rs, &es, &ss, &fitted],
        );
        println!("wrote {}", r.write_csv(&csv)?.display());
    }
    Ok(())
}

fn cmd_fit(args: &FitArgs) -> CliResult<()> {
    let r = args.common.resolve("fit")?;
    match &args.input {
        Some(path) => {
            let series = ingest_series(path).map_err(|e| e.to_string())?;
            let fit = fit_log_linear(&series).map_err(|e| e.to_string())?;
            println!("a_coef = {}", render::num(fit.a_coef));
            println!("b_coef = {}", render::num(fit.b_coef));
            println!("rss    = {}", render::num(fit.rss));
        }
        None => {
            let (a, b) = expansion_coefficients();
            let b_exact = -1.0 / (4.0 * 2.0f64.ln());
            println!("fitted a_coef    = {}", render::num(a));
            println!("fitted b_coef    = {}", render::num(b));
            println!("exact  b_coef    = {}  (-1/(4 ln 2))", render::num(b_exact));
            println!(
                "published linear candidates {} and {} both disagree with the fit",
                render::num(0.5),
                render::num(0.25 * (1.0 + 1.0 / 2.0f64.ln())),
            );
        }
    }
    let _ = r;
    Ok(())
}

fn run() -> CliResult<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Sweep(a) => cmd_sweep(a),
        Command::Alpha(a) => cmd_alpha(a),
        Command::Deviation(a) => cmd_deviation(a),
        Command::Hydrogen(a) => cmd_hydrogen(a),
        Command::Contour(a) => cmd_contour(a),
        Command::Ci(a) => cmd_ci(a),
        Command::Fit(a) => cmd_fit(a),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(2)
        }
    }
}
