//! Command-line interface.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use bloch_infogeo_core::falsifier::{
    self, evaluate_case, published_case, CaseSpec, SearchConfig, ViolationRecord, DEFAULT_MARGIN,
    DEFAULT_SCALE,
};
use bloch_infogeo_core::metric::{
    dominance_report, imputed_f, imputed_f_series, MetricModel, Normalization,
};
use bloch_infogeo_core::quadrature::{
    redundancy_constant, DensitySource, Quadrature, QuadratureSpec,
};
use bloch_infogeo_core::state::Spherical;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::config::load_spec;
use crate::error::{CliError, Result, EXIT_FAILED, EXIT_OK};
use crate::executor::RayonExecutor;
use crate::ids::{parse_likelihood, DensityId};
use crate::manifest::{ManifestBuilder, RunManifest};
use crate::reference;

#[derive(Debug, Parser)]
#[command(
    name = "bloch-infogeo",
    version,
    about = "Metrics, priors and monotonicity searches on the qubit state space"
)]
pub struct Cli {
    /// key=value file overriding the quadrature spec.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Worker threads (default: $BLOCH_INFOGEO_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radial and normal metric coefficients as CSV.
    Metric(MetricArgs),
    /// Relative entropy D(p || q) between two densities, as JSON.
    Divergence(DivergenceArgs),
    /// Radial marginal densities as CSV, or their modes as JSON.
    Marginal(MarginalArgs),
    /// Random search for monotonicity violations; JSONL records and a summary line.
    Falsify(FalsifyArgs),
    /// Regenerate the records of a falsify output and compare them bit for bit.
    Replay(ReplayArgs),
    /// Evaluate the published counterexample, a given case, or the records of a file.
    VerifyCase(VerifyCaseArgs),
    /// Minimax redundancy constant from a Fisher volume, as JSON.
    Redundancy(RedundancyArgs),
    /// Pointwise comparison of two metric tensors.
    Dominance(DominanceArgs),
    /// Run every published-value check and report pass/fail.
    ReproducePaper(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (default: stdout). Tabular outputs get a
    /// `<PATH>.manifest.json` sidecar.
    #[arg(long, short, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    /// Metric id: BH, MONOTONE:<f>, BACH_GUIASU, MODIFIED_BH.
    #[arg(long, default_value = "BH")]
    pub id: String,
    /// A single radius.
    #[arg(long, conflicts_with = "grid")]
    pub r: Option<f64>,
    /// Radii as start:stop:count (inclusive).
    #[arg(long, value_name = "A:B:N")]
    pub grid: Option<String>,
    /// Tabulate the imputed BH function f(t) and its linear series over the
    /// grid instead (grid values are t).
    #[arg(long)]
    pub imputed_f: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DivergenceArgs {
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub q: String,
    /// Update `p` with this likelihood before comparing.
    #[arg(long)]
    pub likelihood: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MarginalArgs {
    /// Density ids; repeat for several columns.
    #[arg(long, required = true, num_args = 1..)]
    pub density: Vec<String>,
    #[arg(long, value_name = "A:B:N", default_value = "0:0.99:100")]
    pub grid: String,
    /// Report the marginal's maximum inside LO:HI instead of a table.
    #[arg(long, value_name = "LO:HI")]
    pub mode: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FalsifyArgs {
    #[arg(long, default_value = "BH")]
    pub metric: String,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Only unital channels (u = 0).
    #[arg(long)]
    pub unital: bool,
    /// Half-width of the chart differentials.
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    pub scale: f64,
    /// Relative excess required for a violation.
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    pub margin: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// JSONL written by `falsify`.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyCaseArgs {
    #[arg(long, default_value = "BH")]
    pub metric: String,
    /// Re-evaluate every record of a `falsify` output instead.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["state", "differential", "u", "v"])]
    pub input: Option<PathBuf>,
    /// First state as r,theta,phi (default: the published case).
    #[arg(long, value_name = "R,THETA,PHI", requires_all = ["differential", "u", "v"])]
    pub state: Option<String>,
    /// Second state minus first, as dr,dtheta,dphi.
    #[arg(long, value_name = "DR,DTHETA,DPHI", allow_hyphen_values = true)]
    pub differential: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    pub margin: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RedundancyArgs {
    /// Metric whose volume is integrated.
    #[arg(long, required_unless_present = "volume", conflicts_with = "volume")]
    pub metric: Option<String>,
    /// Use this Fisher volume directly.
    #[arg(long)]
    pub volume: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub dimension: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NormalizationArg {
    AsGiven,
    FisherAdjusted,
    Quarter,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::AsGiven => Normalization::AsGiven,
            NormalizationArg::FisherAdjusted => Normalization::FisherAdjusted,
            NormalizationArg::Quarter => Normalization::Quarter,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct DominanceArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[arg(long, value_name = "A:B:N", default_value = "0:0.99:100")]
    pub grid: String,
    #[arg(long, value_enum, default_value = "as-given")]
    pub normalization: NormalizationArg,
    /// `csv` gives the points; `json` adds the sign bands.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Also write the full report as JSON here.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

/// Parses `start:stop:count` into `count` equally spaced values.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || CliError::Usage(format!("grid `{s}` is not start:stop:count"));
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 || !a.is_finite() || !b.is_finite() || (n == 1 && a != b) {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let step = (b - a) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
        .collect())
}

fn parse_triple(s: &str, what: &str) -> Result<[f64; 3]> {
    let bad = || CliError::Usage(format!("{what} `{s}` is not three comma-separated numbers"));
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    v.try_into().map_err(|_| bad())
}

fn parse_range(s: &str) -> Result<(f64, f64)> {
    let bad = || CliError::Usage(format!("range `{s}` is not lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_metric(s: &str) -> Result<MetricModel> {
    s.parse()
        .map_err(|e| CliError::Usage(format!("unknown metric `{s}`: {e}")))
}

/// Shared state of one invocation.
struct Context {
    spec: QuadratureSpec,
    exec: RayonExecutor,
}

impl Context {
    fn quadrature(&self) -> Result<Quadrature<RayonExecutor>> {
        Ok(Quadrature::new(self.spec, self.exec.clone())?)
    }

    fn manifest(&self, command: &str, config: serde_json::Value) -> ManifestBuilder {
        ManifestBuilder::new(command, config, self.exec.threads())
    }
}

fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::io(path.display().to_string(), e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(out: &Option<PathBuf>) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| {
        CliError::io(
            out.as_ref()
                .map_or("<stdout>".into(), |p| p.display().to_string()),
            e,
        )
    }
}

/// Writes a pretty JSON document.
fn write_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    let mut w = open_output(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w).and_then(|_| w.flush()).map_err(io_err(out))
}

/// Writes CSV rows, plus the manifest sidecar when writing to a file.
fn write_csv<T: Serialize>(
    out: &Option<PathBuf>,
    rows: &[T],
    manifest: &RunManifest,
) -> Result<()> {
    {
        let mut w = csv::Writer::from_writer(open_output(out)?);
        for row in rows {
            w.serialize(row)?;
        }
        w.flush().map_err(io_err(out))?;
    }
    if let Some(path) = out {
        write_json(&Some(sidecar(path)), manifest)?;
    }
    Ok(())
}

/// `<path>.manifest.json`.
pub fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

#[derive(Serialize)]
struct MetricRow {
    r: f64,
    radial: f64,
    normal: f64,
}

#[derive(Serialize)]
struct ImputedRow {
    t: f64,
    f: f64,
    series: f64,
    gap: f64,
}

fn cmd_metric(ctx: &Context, a: &MetricArgs) -> Result<u8> {
    let grid = match (&a.r, &a.grid) {
        (Some(r), None) => vec![*r],
        (None, Some(g)) => parse_grid(g)?,
        _ => return Err(CliError::Usage("metric needs --r or --grid".into())),
    };
    let manifest = ctx
        .manifest(
            "metric",
            json!({"id": a.id, "r": a.r, "grid": a.grid, "imputed_f": a.imputed_f}),
        )
        .finish();
    if a.imputed_f {
        if let Some(&t) = grid.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(CliError::Usage(format!("t = {t} is outside [0, ∞)")));
        }
        let rows: Vec<ImputedRow> = grid
            .iter()
            .map(|&t| {
                let (f, series) = (imputed_f(t), imputed_f_series(t));
                ImputedRow {
                    t,
                    f,
                    series,
                    gap: f - series,
                }
            })
            .collect();
        return write_csv(&a.output.out, &rows, &manifest).map(|_| EXIT_OK);
    }
    let metric = parse_metric(&a.id)?;
    let rows = grid
        .iter()
        .map(|&r| {
            metric.coefficients(r).map(|c| MetricRow {
                r,
                radial: c.radial,
                normal: c.normal,
            })
        })
        .collect::<bloch_infogeo_core::Result<Vec<_>>>()?;
    write_csv(&a.output.out, &rows, &manifest).map(|_| EXIT_OK)
}

fn cmd_divergence(ctx: &Context, a: &DivergenceArgs) -> Result<u8> {
    let mut p: DensityId = a.p.parse()?;
    if let Some(l) = &a.likelihood {
        p = p.updated(parse_likelihood(l)?)?;
    }
    let q: DensityId = a.q.parse()?;
    let builder = ctx
        .manifest(
            "divergence",
            json!({"p": a.p, "q": a.q, "likelihood": a.likelihood}),
        )
        .quadrature(ctx.spec);
    let quad = ctx.quadrature()?;
    let (pd, qd) = (p.build(&quad)?, q.build(&quad)?);
    let value = quad.relative_entropy(&pd, &qd)?;
    let doc = json!({
        "p": p.to_string(),
        "q": q.to_string(),
        "value": value,
        "spec": ctx.spec,
        "manifest": builder.finish(),
    });
    write_json(&a.output.out, &doc).map(|_| EXIT_OK)
}

fn cmd_marginal(ctx: &Context, a: &MarginalArgs) -> Result<u8> {
    let ids: Vec<DensityId> = a.density.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let builder = ctx
        .manifest(
            "marginal",
            json!({"density": a.density, "grid": a.grid, "mode": a.mode}),
        )
        .quadrature(ctx.spec);
    let quad = ctx.quadrature()?;
    let densities = ids
        .iter()
        .map(|id| id.build(&quad))
        .collect::<Result<Vec<_>>>()?;

    if let Some(range) = &a.mode {
        let (lo, hi) = parse_range(range)?;
        let modes = ids
            .iter()
            .zip(&densities)
            .map(|(id, d)| Ok(json!({"density": id.to_string(), "mode": quad.radial_marginal_mode(d, lo, hi)?})))
            .collect::<Result<Vec<_>>>()?;
        let doc = json!({"modes": modes, "spec": ctx.spec, "manifest": builder.finish()});
        return write_json(&a.output.out, &doc).map(|_| EXIT_OK);
    }

    let radii = parse_grid(&a.grid)?;
    let columns = densities
        .iter()
        .map(|d| quad.radial_marginal(d, &radii))
        .collect::<bloch_infogeo_core::Result<Vec<_>>>()?;
    let manifest = builder.finish();
    {
        let mut w = csv::Writer::from_writer(open_output(&a.output.out)?);
        let mut header = vec!["r".to_string()];
        header.extend(ids.iter().map(|id| id.to_string()));
        w.write_record(&header)?;
        for (i, r) in radii.iter().enumerate() {
            let mut row = vec![r.to_string()];
            row.extend(columns.iter().map(|c| c[i].1.to_string()));
            w.write_record(&row)?;
        }
        w.flush().map_err(io_err(&a.output.out))?;
    }
    if let Some(path) = &a.output.out {
        write_json(&Some(sidecar(path)), &manifest)?;
    }
    Ok(EXIT_OK)
}

/// Last line of a falsify stream.
#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a falsifier::SearchSummary,
    manifest: RunManifest,
}

fn cmd_falsify(ctx: &Context, a: &FalsifyArgs) -> Result<u8> {
    let cfg = SearchConfig {
        unital_only: a.unital,
        scale: a.scale,
        margin: a.margin,
        ..SearchConfig::new(parse_metric(&a.metric)?, a.trials, a.seed)
    };
    let builder = ctx
        .manifest(
            "falsify",
            json!({"metric": cfg.metric.to_string(), "trials": a.trials, "unital": a.unital,
                   "scale": a.scale, "margin": a.margin}),
        )
        .seed(a.seed);
    let outcome = falsifier::search(&cfg, &ctx.exec)?;
    let mut w = open_output(&a.output.out)?;
    for rec in &outcome.records {
        serde_json::to_writer(&mut w, rec)?;
        writeln!(w).map_err(io_err(&a.output.out))?;
    }
    let line = SummaryLine {
        summary: &outcome.summary,
        manifest: builder.finish(),
    };
    serde_json::to_writer(&mut w, &line)?;
    writeln!(w)
        .and_then(|_| w.flush())
        .map_err(io_err(&a.output.out))?;
    Ok(EXIT_OK)
}

/// Violation records of a falsify stream; summary lines are skipped.
pub fn read_records(path: &Path) -> Result<Vec<ViolationRecord>> {
    let file = File::open(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| CliError::io(path.display().to_string(), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(&line)?;
        if value.get("summary").is_some() {
            continue;
        }
        out.push(serde_json::from_value(value)?);
    }
    Ok(out)
}

fn cmd_replay(ctx: &Context, a: &ReplayArgs) -> Result<u8> {
    let records = read_records(&a.input)?;
    let builder = ctx.manifest("replay", json!({"input": a.input}));
    let mut mismatched = Vec::new();
    for rec in &records {
        let again = falsifier::replay(rec)?;
        let same = serde_json::to_string(&again)? == serde_json::to_string(rec)?;
        if !same {
            mismatched.push(rec.trial);
        }
    }
    let identical = mismatched.is_empty();
    let doc = json!({
        "records": records.len(),
        "identical": identical,
        "mismatched_trials": mismatched,
        "manifest": builder.finish(),
    });
    write_json(&a.output.out, &doc)?;
    Ok(if identical { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_verify_case(ctx: &Context, a: &VerifyCaseArgs) -> Result<u8> {
    let builder = ctx.manifest(
        "verify-case",
        json!({"metric": a.metric, "input": a.input, "state": a.state, "differential": a.differential,
               "u": a.u, "v": a.v, "margin": a.margin}),
    );
    let mut reports = Vec::new();
    if let Some(path) = &a.input {
        for rec in read_records(path)? {
            reports.push(falsifier::reverify(&rec)?);
        }
    } else {
        let metric = parse_metric(&a.metric)?;
        let case = match (&a.state, &a.differential, a.u, a.v) {
            (Some(s), Some(d), Some(u), Some(v)) => {
                let [r, theta, phi] = parse_triple(s, "state")?;
                CaseSpec {
                    state: Spherical::new(r, theta, phi),
                    differential: parse_triple(d, "differential")?,
                    u,
                    v,
                }
            }
            (None, None, None, None) => published_case(),
            _ => {
                return Err(CliError::Usage(
                    "give all of --state --differential --u --v, or none".into(),
                ))
            }
        };
        reports.push(evaluate_case(metric, &case)?);
    }
    let cases: Vec<_> = reports
        .iter()
        .map(|r| json!({"report": r, "violates": r.violates(a.margin)}))
        .collect();
    let doc = json!({"cases": cases, "manifest": builder.finish()});
    write_json(&a.output.out, &doc).map(|_| EXIT_OK)
}

fn cmd_redundancy(ctx: &Context, a: &RedundancyArgs) -> Result<u8> {
    let mut builder = ctx.manifest(
        "redundancy",
        json!({"metric": a.metric, "volume": a.volume, "dimension": a.dimension}),
    );
    let (metric, volume) = match (&a.metric, a.volume) {
        (Some(m), None) => {
            let metric = parse_metric(m)?;
            builder = builder.quadrature(ctx.spec);
            let v = ctx.quadrature()?.mass(&DensitySource::Volume(metric))?;
            (Some(metric.to_string()), v)
        }
        (None, Some(v)) => (None, v),
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --metric and --volume".into(),
            ))
        }
    };
    let constant = redundancy_constant(a.dimension, volume)?;
    let doc = json!({
        "metric": metric,
        "dimension": a.dimension,
        "volume": volume,
        "constant": constant,
        "manifest": builder.finish(),
    });
    write_json(&a.output.out, &doc).map(|_| EXIT_OK)
}

fn cmd_dominance(ctx: &Context, a: &DominanceArgs) -> Result<u8> {
    let (ma, mb) = (parse_metric(&a.a)?, parse_metric(&a.b)?);
    let radii = parse_grid(&a.grid)?;
    let report = dominance_report(ma, mb, &radii, a.normalization.into())?;
    let manifest = ctx
        .manifest(
            "dominance",
            json!({"a": ma.to_string(), "b": mb.to_string(), "grid": a.grid,
                   "normalization": Normalization::from(a.normalization)}),
        )
        .finish();
    match a.format {
        TableFormat::Csv => write_csv(&a.output.out, &report.points, &manifest)?,
        TableFormat::Json => write_json(
            &a.output.out,
            &json!({"a": ma.to_string(), "b": mb.to_string(), "dominates": report.dominates(),
                    "report": report, "manifest": manifest}),
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_reproduce(ctx: &Context, a: &ReproduceArgs) -> Result<u8> {
    let builder = ctx
        .manifest("reproduce-paper", json!({}))
        .quadrature(ctx.spec);
    let quad = ctx.quadrature()?;
    let checks = reference::reproduce(&quad)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    {
        let mut w = BufWriter::new(io::stdout().lock());
        let err = io_err(&None);
        for c in &checks {
            writeln!(w, "{}", c.line()).map_err(&err)?;
        }
        writeln!(
            w,
            "{} checks, {} passed, {failed} failed",
            checks.len(),
            checks.len() - failed
        )
        .map_err(&err)?;
        w.flush().map_err(&err)?;
    }
    if let Some(path) = &a.report {
        let doc = json!({"checks": checks, "failed": failed, "manifest": builder.finish()});
        write_json(&Some(path.clone()), &doc)?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}

/// Runs a parsed command line; returns the exit code.
pub fn run(cli: &Cli) -> Result<u8> {
    let base = QuadratureSpec::default();
    let spec = match &cli.config {
        Some(path) => load_spec(path, base)?,
        None => base,
    };
    let ctx = Context {
        spec,
        exec: RayonExecutor::from_env(cli.threads)?,
    };
    match &cli.command {
        Command::Metric(a) => cmd_metric(&ctx, a),
        Command::Divergence(a) => cmd_divergence(&ctx, a),
        Command::Marginal(a) => cmd_marginal(&ctx, a),
        Command::Falsify(a) => cmd_falsify(&ctx, a),
        Command::Replay(a) => cmd_replay(&ctx, a),
        Command::VerifyCase(a) => cmd_verify_case(&ctx, a),
        Command::Redundancy(a) => cmd_redundancy(&ctx, a),
        Command::Dominance(a) => cmd_dominance(&ctx, a),
        Command::ReproducePaper(a) => cmd_reproduce(&ctx, a),
    }
}
