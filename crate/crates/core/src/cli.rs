//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::distribution::{class_moment_gap, moment_gap, psi_gap, DistReport};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::experiments::{figure, table, toeplitz_of, Target, FIGURE_POINTS};
use crate::grids::{exact_grid, match_mn, uniform_grid, MatchReport};
use crate::krylov::flip_solve;
use crate::linalg::{singular_values, symmetric_eigenvalues};
use crate::localize::{check_flipped_localization, check_singular_localization, symbol_bounds, toeplitz_singular_values};
use crate::matgen::{flipped, ToeplitzMatrix};
use crate::numeric::QuadOptions;
use crate::presets::Preset;
use crate::spectra::{split_eigendecompose, SpectralPairing};
use crate::symbol::{fourier_coeffs_with, parse_symbol_with, Extension, ParseOptions, SymbolSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "flipped-toeplitz", version, about = "Spectra of Toeplitz and flipped Toeplitz matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Symbol text, e.g. "2 + cos(t)" or "1 on [0,pi/2); t on [pi/2,pi]".
    #[arg(short = 's', long, global = true, conflicts_with = "preset")]
    pub symbol: Option<String>,
    /// Built-in symbol: e2, e2.5, e3 or bidiag.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Treat the symbol as even, defined on [0, π].
    #[arg(long, global = true, conflicts_with = "full")]
    pub even: bool,
    /// Treat the symbol as given on [-π, π] without extension.
    #[arg(long, global = true)]
    pub full: bool,
    /// Matrix orders, comma separated and strictly increasing.
    #[arg(long = "n", global = true, value_delimiter = ',', default_value = "16")]
    pub n: Vec<usize>,
    /// Fourier coefficient cutoff K (coefficients k = -K..K).
    #[arg(long = "K", global = true)]
    pub k: Option<usize>,
    /// Solver tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Output file, or directory for `reproduce` and `analyze`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Seed for randomized right-hand sides.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Run every sweep sequentially.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourier coefficients f_k.
    Coeffs,
    /// Eigenvalues of T and H, or singular values of T.
    Spectrum,
    /// Alternating-sign pairing of the eigenvalues of T and H.
    Pairing,
    /// Match eigenvalues to the uniform grid.
    Match,
    /// Recover the grid with f(x_i) = λ_i(T).
    ExactGrid,
    /// Localization verdicts for singular values and flipped eigenvalues.
    Localize,
    /// Moment and rearrangement distribution checks.
    Dist,
    /// Solve T x = b through the flipped symmetric system.
    Minres,
    /// Regenerate a table or figure of the worked examples.
    Reproduce {
        #[arg(value_parser = ["table1", "table2", "table3", "fig1", "fig2", "fig3", "all"])]
        target: String,
    },
    /// Run the full pipeline and write a report bundle.
    Analyze {
        #[arg(long)]
        exact_grid: bool,
        #[arg(long)]
        minres: bool,
    },
}

/// Validated run settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub sizes: Vec<usize>,
    pub k: Option<usize>,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub exec: Execution,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        if cli.n.is_empty() || cli.n[0] == 0 || cli.n.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(
                "--n must list strictly increasing positive integers".into(),
            ));
        }
        Ok(RunConfig {
            sizes: cli.n.clone(),
            k: cli.k,
            tol: cli.tol,
            out: cli.out.clone(),
            format: cli.format,
            seed: cli.seed,
            exec: if cli.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            },
        })
    }

    fn toeplitz(&self, spec: &SymbolSpec, n: usize) -> Result<ToeplitzMatrix> {
        match self.k {
            Some(k) => {
                let c = fourier_coeffs_with(spec, k, self.exec, QuadOptions::default())?;
                crate::matgen::toeplitz(&c, n)
            }
            None => toeplitz_of(spec, n, self.exec),
        }
    }
}

/// A flat table rendered as CSV or as a JSON array of objects.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Value>) {
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = self.header.join(",");
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(csv_cell).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> = self.header.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&rows).expect("json values");
                s.push('\n');
                s
            }
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().unwrap()),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Parses arguments and runs the command, writing primary output to `stdout`
/// unless `--out` is given. Returns the process exit code.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match run(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Violation(_) | Error::Stagnation(_) => EXIT_VIOLATION,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn resolve_symbol(cli: &Cli) -> Result<SymbolSpec> {
    let extension = if cli.even {
        Some(Extension::Even)
    } else if cli.full {
        Some(Extension::None)
    } else {
        None
    };
    match (&cli.symbol, &cli.preset) {
        (Some(text), None) => parse_symbol_with(text, ParseOptions { extension }),
        (None, Some(name)) => {
            let preset: Preset = name.parse()?;
            match extension {
                None => Ok(preset.symbol()),
                Some(_) => parse_symbol_with(preset.text(), ParseOptions { extension }),
            }
        }
        (None, None) => Err(Error::InvalidArgument("give a symbol with -s/--symbol or --preset".into())),
        (Some(_), Some(_)) => Err(Error::InvalidArgument("--symbol and --preset are exclusive".into())),
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let cfg = RunConfig::from_cli(cli)?;
    if let Command::Reproduce { target } = &cli.command {
        return reproduce(target, &cfg, stdout, stderr);
    }
    let spec = resolve_symbol(cli)?;
    let mut violations = 0usize;
    let output = match &cli.command {
        Command::Coeffs => coeffs(&spec, &cfg)?,
        Command::Spectrum => spectrum(&spec, &cfg)?,
        Command::Pairing => {
            let mut t = Table::new(&["n", "i", "lamT", "lamH", "class"]);
            for &n in &cfg.sizes {
                for r in pairing(&spec, &cfg, n)?.records {
                    t.push(vec![json!(n), json!(r.i), num(r.lam_t), num(r.lam_h), json!(r.class.as_str())]);
                }
            }
            t.render(cfg.format)
        }
        Command::Match | Command::ExactGrid => {
            let exact = matches!(cli.command, Command::ExactGrid);
            let mut t = Table::new(&["n", "i", "x", "fx", "lamT", "deviation"]);
            for &n in &cfg.sizes {
                let report = grid_report(&spec, &cfg, n, exact)?;
                let _ = writeln!(stderr, "n={n} M_n={:.4} m(G_n)={:.4}", report.m_n, report.grid.m);
                for r in &report.rows {
                    t.push(vec![json!(n), json!(r.i), num(r.x), num(r.fx), num(r.lam_t), num(r.deviation)]);
                }
            }
            t.render(cfg.format)
        }
        Command::Localize => {
            let (text, v) = localize(&spec, &cfg)?;
            violations += v;
            text
        }
        Command::Dist => {
            let mut buf = Vec::new();
            DistReport::write_csv_header(&mut buf).map_err(io_err)?;
            let mut all = Vec::new();
            for &n in &cfg.sizes {
                for r in dist(&spec, &cfg, n)? {
                    r.write_csv_rows(&mut buf).map_err(io_err)?;
                    all.push(r);
                }
            }
            match cfg.format {
                Format::Csv => String::from_utf8(buf).expect("utf8"),
                Format::Json => serde_json::to_string_pretty(&all).expect("json") + "\n",
            }
        }
        Command::Minres => {
            let mut t = Table::new(&["n", "k", "relres", "bound"]);
            for &n in &cfg.sizes {
                let trace = minres(&spec, &cfg, n)?;
                for (k, r) in trace.residuals.iter().enumerate() {
                    let b = trace.bound.as_ref().map_or(Value::Null, |b| num(b[k]));
                    t.push(vec![json!(n), json!(k), num(*r), b]);
                }
            }
            t.render(cfg.format)
        }
        Command::Analyze { exact_grid, minres } => {
            violations += analyze(&spec, &cfg, *exact_grid, *minres, stderr)?;
            String::new()
        }
        Command::Reproduce { .. } => unreachable!("handled above"),
    };
    if !matches!(cli.command, Command::Analyze { .. }) {
        emit(&cfg.out, &output, stdout)?;
    }
    Ok(if violations > 0 { EXIT_VIOLATION } else { EXIT_OK })
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("io: {e}"))
}

/// Writes `text` to `path` through a temporary sibling and a rename.
fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("partial");
    fs::write(&tmp, text).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text),
        None => stdout.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn coeffs(spec: &SymbolSpec, cfg: &RunConfig) -> Result<String> {
    let k = cfg.k.unwrap_or_else(|| cfg.sizes.last().copied().unwrap_or(1).saturating_sub(1));
    let c = fourier_coeffs_with(spec, k, cfg.exec, QuadOptions::default())?;
    let mut t = Table::new(&["k", "re", "im"]);
    for (k, v) in c.iter() {
        t.push(vec![json!(k), num(v.re), num(v.im)]);
    }
    Ok(t.render(cfg.format))
}

fn spectrum(spec: &SymbolSpec, cfg: &RunConfig) -> Result<String> {
    let mut t = Table::new(&["n", "i", "kind", "value"]);
    for &n in &cfg.sizes {
        let tm = cfg.toeplitz(spec, n)?;
        let mut lists: Vec<(&str, Vec<f64>)> = Vec::new();
        if tm.is_symmetric() {
            lists.push(("eigT", symmetric_eigenvalues(&tm.dense())?));
        }
        if tm.is_real() {
            lists.push(("eigH", symmetric_eigenvalues(flipped(&tm)?.dense())?));
            lists.push(("sigmaT", singular_values(&tm.dense())?));
        } else {
            lists.push(("sigmaT", toeplitz_singular_values(&tm)?));
        }
        for (kind, values) in lists {
            for (i, v) in values.iter().enumerate() {
                t.push(vec![json!(n), json!(i + 1), json!(kind), num(*v)]);
            }
        }
    }
    Ok(t.render(cfg.format))
}

fn pairing(spec: &SymbolSpec, cfg: &RunConfig, n: usize) -> Result<SpectralPairing> {
    split_eigendecompose(&cfg.toeplitz(spec, n)?, false, cfg.exec)
}

fn grid_report(spec: &SymbolSpec, cfg: &RunConfig, n: usize, exact: bool) -> Result<MatchReport> {
    let p = pairing(spec, cfg, n)?;
    if exact {
        Ok(exact_grid(&p, spec)?.1)
    } else {
        match_mn(&p, spec, &uniform_grid(n))
    }
}

fn localize(spec: &SymbolSpec, cfg: &RunConfig) -> Result<(String, usize)> {
    let bounds = symbol_bounds(spec)?;
    let mut reports = Vec::new();
    let mut violations = 0;
    for &n in &cfg.sizes {
        let t = cfg.toeplitz(spec, n)?;
        let sing = check_singular_localization(&toeplitz_singular_values(&t)?, &bounds);
        violations += usize::from(!sing.passed());
        let mut entry = json!({ "n": n, "singular": sing });
        if t.is_real() {
            let eigs = symmetric_eigenvalues(flipped(&t)?.dense())?;
            let fl = check_flipped_localization(&eigs, &bounds);
            violations += usize::from(!fl.passed());
            entry["flipped"] = serde_json::to_value(&fl).expect("json");
        }
        reports.push(entry);
    }
    Ok((serde_json::to_string_pretty(&reports).expect("json") + "\n", violations))
}

fn dist(spec: &SymbolSpec, cfg: &RunConfig, n: usize) -> Result<Vec<DistReport>> {
    let t = cfg.toeplitz(spec, n)?;
    let mut out = Vec::new();
    if t.is_symmetric() {
        let p = split_eigendecompose(&t, false, cfg.exec)?;
        out.push(moment_gap(&p.lam_t(), spec, 4)?);
        let (plus, minus) = class_moment_gap(&p, spec, 4)?;
        out.push(plus);
        out.push(minus);
        out.push(psi_gap(&p.lam_h(), spec)?);
    } else {
        return Err(Error::InvalidArgument(
            "distribution checks need a real even symbol".into(),
        ));
    }
    Ok(out)
}

fn minres(spec: &SymbolSpec, cfg: &RunConfig, n: usize) -> Result<crate::krylov::SolveTrace> {
    let t = cfg.toeplitz(spec, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let b: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let sol = flip_solve(&t, &b, cfg.tol)?;
    let bounds = symbol_bounds(spec)?;
    Ok(sol.trace.with_bound(bounds.d, bounds.big_m_absf))
}

fn analyze(spec: &SymbolSpec, cfg: &RunConfig, want_exact: bool, want_minres: bool, stderr: &mut dyn Write) -> Result<usize> {
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("report"));
    fs::create_dir_all(&dir).map_err(io_err)?;
    let bounds = symbol_bounds(spec)?;
    let mut violations = 0;
    for &n in &cfg.sizes {
        let t = cfg.toeplitz(spec, n)?;
        let sing = check_singular_localization(&toeplitz_singular_values(&t)?, &bounds);
        violations += sing.violations + usize::from(!sing.within_budget());
        let mut loc = json!({ "n": n, "singular": sing });

        if t.is_real() {
            let eigs = symmetric_eigenvalues(flipped(&t)?.dense())?;
            let fl = check_flipped_localization(&eigs, &bounds);
            violations += fl.violations + usize::from(!fl.within_budget());
            loc["flipped"] = serde_json::to_value(&fl).expect("json");
        }
        write_atomic(&dir.join(format!("localize_{n}.json")), &(serde_json::to_string_pretty(&loc).expect("json") + "\n"))?;

        if t.is_symmetric() {
            let p = split_eigendecompose(&t, false, cfg.exec)?;
            let mut buf = Vec::new();
            p.write_csv(&mut buf).map_err(io_err)?;
            write_atomic(&dir.join(format!("pairing_{n}.csv")), &String::from_utf8(buf).expect("utf8"))?;

            let mut buf = Vec::new();
            DistReport::write_csv_header(&mut buf).map_err(io_err)?;
            for r in dist(spec, cfg, n)? {
                r.write_csv_rows(&mut buf).map_err(io_err)?;
            }
            write_atomic(&dir.join(format!("dist_{n}.csv")), &String::from_utf8(buf).expect("utf8"))?;

            if want_exact {
                let (g, report) = exact_grid(&p, spec)?;
                let mut buf = Vec::new();
                report.write_csv(&mut buf).map_err(io_err)?;
                write_atomic(&dir.join(format!("exact_grid_{n}.csv")), &String::from_utf8(buf).expect("utf8"))?;
                write_atomic(&dir.join(format!("exact_grid_{n}.json")), &(report.summary_json() + "\n"))?;
                let _ = writeln!(stderr, "n={n} m(G_n)={:.4}", g.m);
            }
        }

        if want_minres {
            let trace = minres(spec, cfg, n)?;
            let mut buf = Vec::new();
            trace.write_csv(&mut buf).map_err(io_err)?;
            write_atomic(&dir.join(format!("minres_{n}.csv")), &String::from_utf8(buf).expect("utf8"))?;
            let _ = writeln!(stderr, "n={n} minres iterations={} relres={:.3e}", trace.iterations, trace.final_residual());
        }
    }
    let _ = writeln!(stderr, "violations: {violations}");
    Ok(violations)
}

fn reproduce(target: &str, cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let targets: Vec<Target> = if target == "all" {
        Target::ALL.to_vec()
    } else {
        Target::ALL.into_iter().filter(|t| t.name() == target).collect()
    };
    if targets.is_empty() {
        return Err(Error::InvalidArgument(format!("unknown target '{target}'")));
    }
    if targets.len() > 1 || cfg.out.as_ref().is_some_and(|p| p.is_dir()) {
        let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("reproduce"));
        fs::create_dir_all(&dir).map_err(io_err)?;
        for t in targets {
            let text = reproduce_one(t, cfg, stderr)?;
            let ext = if cfg.format == Format::Json { "json" } else { "csv" };
            write_atomic(&dir.join(format!("{}.{ext}", t.name())), &text)?;
        }
    } else {
        let text = reproduce_one(targets[0], cfg, stderr)?;
        emit(&cfg.out, &text, stdout)?;
    }
    Ok(EXIT_OK)
}

fn reproduce_one(target: Target, cfg: &RunConfig, stderr: &mut dyn Write) -> Result<String> {
    match table(target, cfg.exec) {
        Some(rows) => {
            let rows = rows?;
            let reference = target.reference_values().expect("tables carry published values");
            let mut t = Table::new(&["n", "value", "reference"]);
            let _ = writeln!(stderr, "{}: {:>6} {:>8} {:>8}", target.name(), "n", "value", "reference");
            for (r, p) in rows.iter().zip(reference) {
                let _ = writeln!(stderr, "{}: {:>6} {:>8.4} {:>8.4}", target.name(), r.n, r.value, p);
                t.push(vec![json!(r.n), num(r.value), num(*p)]);
            }
            Ok(t.render(cfg.format))
        }
        None => {
            let mut t = Table::new(&["theta", "f"]);
            for (x, y) in figure(&target.preset().symbol(), FIGURE_POINTS) {
                t.push(vec![num(x), num(y)]);
            }
            Ok(t.render(cfg.format))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["flipped-toeplitz"];
        full.extend_from_slice(args);
        let code = run_from(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn pairing_of_constant() {
        let (code, out, _) = run_args(&["pairing", "-s", "1", "--n", "4"]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "n,i,lamT,lamH,class");
        assert!(lines[2].contains("-1.0000000000000000e0,skew"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["pairing", "-s", "1 + cos(t"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["pairing", "-s", "1", "--n", "8,4"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["pairing"]).0, EXIT_USAGE);
    }

    #[test]
    fn json_format() {
        let (code, out, _) = run_args(&["coeffs", "-s", "2*cos(t)", "--K", "2", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 5);
        assert_eq!(v[1]["re"], 1.0);
    }
}
