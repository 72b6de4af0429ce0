//! The `eur` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use eur_core::apps::{common_randomness_upper_bound, eof_lower_bound, fano_inputs, witness};
use eur_core::bounds::bounds_report;
use eur_core::infoquant::{classical_correlation, OptimizerConfig};
use eur_core::{DensityMatrix, Error as CoreError, ProjectiveObservable};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Result, ToolError};
use crate::input::{load_state, parse_observable, parse_state, read_text, ObservableDoc, StateDoc};
use crate::render::{render, Format};
use crate::sweep::{self, ObservablePairDoc, Preset, SweepFamily, SweepSpec};

#[derive(Debug, Parser)]
#[command(
    name = "eur",
    version,
    about = "Entropic uncertainty bounds with quantum memory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every bound for one state and observable pair.
    Bounds,
    /// Bounds along a one-parameter family; one CSV per observable pair.
    Sweep,
    /// Classical correlation and discord.
    Discord,
    /// Entanglement witness, entanglement-of-formation and common-randomness bounds.
    Apps,
    /// Check every density-matrix invariant of a state.
    Validate,
}

#[derive(Debug, clap::Args)]
pub struct Options {
    /// State JSON file.
    #[arg(long, global = true, value_name = "FILE")]
    pub state: Option<PathBuf>,
    /// First observable: inline JSON, sigma_x|sigma_y|sigma_z, or a JSON file.
    #[arg(long = "x", global = true, value_name = "SPEC")]
    pub x: Option<String>,
    /// Second observable, same forms as --x.
    #[arg(long = "z", global = true, value_name = "SPEC")]
    pub z: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Run the correlation optimizer and fill bound_pati.
    #[arg(long, global = true)]
    pub with_discord: bool,
    #[arg(long, global = true, value_name = "N", default_value_t = OptimizerConfig::default().grid_theta)]
    pub grid_theta: usize,
    #[arg(long, global = true, value_name = "N", default_value_t = OptimizerConfig::default().grid_phi)]
    pub grid_phi: usize,
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    /// Sweep specification JSON file.
    #[arg(long, global = true, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Sweep family when neither --preset nor --spec is given.
    #[arg(long, global = true, value_name = "NAME")]
    pub family: Option<String>,
    #[arg(long, global = true, value_name = "P")]
    pub p_start: Option<f64>,
    #[arg(long, global = true, value_name = "P")]
    pub p_end: Option<f64>,
    #[arg(long, global = true, value_name = "STEP")]
    pub p_step: Option<f64>,
    /// Include the state as an explicit matrix in the JSON report.
    #[arg(long, global = true)]
    pub echo_state: bool,
}

impl Options {
    fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            grid_theta: self.grid_theta,
            grid_phi: self.grid_phi,
            ..OptimizerConfig::default()
        }
    }

    fn state(&self) -> Result<(StateDoc, DensityMatrix)> {
        let path = self
            .state
            .as_deref()
            .ok_or_else(|| ToolError::Usage("--state <FILE> is required".into()))?;
        load_state(path)
    }

    fn observable_docs(&self) -> Result<(ObservableDoc, ObservableDoc)> {
        let parse = |arg: &Option<String>, default: &str| {
            parse_observable(arg.as_deref().unwrap_or(default))
        };
        Ok((parse(&self.x, "sigma_x")?, parse(&self.z, "sigma_z")?))
    }

    fn observables(
        &self,
        rho: &DensityMatrix,
    ) -> Result<(ProjectiveObservable, ProjectiveObservable)> {
        let (x, z) = self.observable_docs()?;
        Ok((x.resolve(rho)?, z.resolve(rho)?))
    }
}

fn core_err(context: &Path) -> impl Fn(CoreError) -> ToolError + '_ {
    move |e| ToolError::invalid(context.display().to_string(), e)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => sweep::write_all_atomic(&[(path.to_path_buf(), text.to_string())]),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| ToolError::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let opts = &cli.opts;
    if opts.echo_state && !matches!(opts.format, None | Some(Format::Json)) {
        return Err(ToolError::Usage("--echo-state needs JSON output".into()));
    }
    match cli.command {
        Command::Bounds => bounds(opts),
        Command::Sweep => sweep_cmd(opts),
        Command::Discord => discord(opts),
        Command::Apps => apps(opts),
        Command::Validate => validate(opts),
    }
}

fn finish(opts: &Options, mut record: Value, doc_rho: Option<&DensityMatrix>) -> Result<()> {
    if let (true, Some(rho), Value::Object(m)) = (opts.echo_state, doc_rho, &mut record) {
        m.insert("state".into(), json!(StateDoc::from_density(rho)));
    }
    let format = opts.format.unwrap_or(Format::Json);
    emit(opts.out.as_deref(), &render(format, &[record]))
}

fn bounds(opts: &Options) -> Result<()> {
    let (_, rho) = opts.state()?;
    let path = opts.state.as_deref().unwrap();
    let (x, z) = opts.observables(&rho)?;
    let corr = if opts.with_discord {
        Some(classical_correlation(&rho, &opts.optimizer()).map_err(core_err(path))?)
    } else {
        None
    };
    let report = bounds_report(&rho, &x, &z, corr.as_ref()).map_err(core_err(path))?;
    finish(
        opts,
        serde_json::to_value(report).expect("reports serialize"),
        Some(&rho),
    )
}

fn discord(opts: &Options) -> Result<()> {
    let (_, rho) = opts.state()?;
    let path = opts.state.as_deref().unwrap();
    let report = classical_correlation(&rho, &opts.optimizer()).map_err(core_err(path))?;
    finish(
        opts,
        serde_json::to_value(report).expect("reports serialize"),
        Some(&rho),
    )
}

#[derive(Debug, Serialize)]
struct AppsReport {
    entangled_by_berta: bool,
    entangled_by_ours: bool,
    margin_berta: f64,
    margin_ours: f64,
    pe_x: f64,
    pe_z: f64,
    fano: f64,
    eof_lower: f64,
    eof_vacuous: bool,
    crand_upper: f64,
}

fn apps(opts: &Options) -> Result<()> {
    let (_, rho) = opts.state()?;
    let path = opts.state.as_deref().unwrap();
    let (x, z) = opts.observables(&rho)?;
    let err = core_err(path);
    let verdict = witness(&rho, &x, &z).map_err(&err)?;
    let fano = fano_inputs(&rho, &x, &z).map_err(&err)?;
    let eof = eof_lower_bound(&rho, &x, &z).map_err(&err)?;
    let report = AppsReport {
        entangled_by_berta: verdict.entangled_by_berta,
        entangled_by_ours: verdict.entangled_by_ours,
        margin_berta: verdict.margin_berta,
        margin_ours: verdict.margin_ours,
        pe_x: fano.pe_x,
        pe_z: fano.pe_z,
        fano: eof.fano,
        eof_lower: eof.value,
        eof_vacuous: eof.vacuous,
        crand_upper: common_randomness_upper_bound(&rho, &x, &z).map_err(&err)?,
    };
    finish(
        opts,
        serde_json::to_value(report).expect("reports serialize"),
        Some(&rho),
    )
}

fn validate(opts: &Options) -> Result<()> {
    let path = opts
        .state
        .as_deref()
        .ok_or_else(|| ToolError::Usage("--state <FILE> is required".into()))?;
    let context = path.display().to_string();
    let doc = parse_state(&read_text(path)?, &context)?;
    let report = doc.validate().map_err(core_err(path))?;
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| serde_json::to_value(c).expect("checks serialize"))
        .collect();
    let text = match opts.format.unwrap_or(Format::Json) {
        Format::Json => render(
            Format::Json,
            &[json!({"valid": report.is_valid(), "checks": checks})],
        ),
        other => render(other, &checks),
    };
    emit(opts.out.as_deref(), &text)?;
    match report.first_failure() {
        None => Ok(()),
        Some(failed) => Err(ToolError::invalid(
            context,
            CoreError::InvalidState {
                invariant: failed.invariant,
                residual: failed.residual,
            },
        )),
    }
}

/// Preset, spec file or `--family`, then any range and observable overrides.
pub fn sweep_spec(opts: &Options) -> Result<SweepSpec> {
    let sources = [
        opts.preset.is_some(),
        opts.spec.is_some(),
        opts.family.is_some(),
    ];
    if sources.iter().filter(|s| **s).count() != 1 {
        return Err(ToolError::Usage(
            "sweep needs exactly one of --preset, --spec or --family".into(),
        ));
    }
    let mut spec = if let Some(preset) = opts.preset {
        preset.spec()
    } else if let Some(path) = &opts.spec {
        serde_json::from_str(&read_text(path)?).map_err(|source| ToolError::Json {
            context: path.display().to_string(),
            source,
        })?
    } else {
        let name = opts.family.as_deref().unwrap();
        let family: SweepFamily = serde_json::from_value(json!(name)).map_err(|_| {
            ToolError::Usage(format!(
                "unknown sweep family {name:?} (expected werner, bell_diagonal_special or xstate)"
            ))
        })?;
        SweepSpec {
            family,
            p_start: 0.0,
            p_end: 1.0,
            p_step: 0.01,
            pairs: Vec::new(),
        }
    };
    spec.p_start = opts.p_start.unwrap_or(spec.p_start);
    spec.p_end = opts.p_end.unwrap_or(spec.p_end);
    spec.p_step = opts.p_step.unwrap_or(spec.p_step);
    if opts.x.is_some() || opts.z.is_some() || spec.pairs.is_empty() {
        let (x, z) = opts.observable_docs()?;
        spec.pairs = vec![ObservablePairDoc { x, z }];
    }
    spec.check()?;
    Ok(spec)
}

fn sweep_cmd(opts: &Options) -> Result<()> {
    let spec = sweep_spec(opts)?;
    let count = spec.pairs.len();
    if count > 1 && opts.out.is_none() {
        return Err(ToolError::Usage(format!(
            "{count} observable pairs need --out"
        )));
    }
    let cfg = opts.optimizer();
    let format = opts.format.unwrap_or(Format::Csv);
    let mut files = Vec::with_capacity(count);
    for (k, pair) in spec.pairs.iter().enumerate() {
        let rows = sweep::run_pair(&spec, pair, &cfg)?;
        let text = match format {
            Format::Csv => sweep::csv(&rows),
            other => render(other, &sweep::records(&spec, pair, &rows)),
        };
        files.push((
            opts.out
                .as_deref()
                .map(|o| sweep::pair_path(o, k + 1, count)),
            text,
        ));
    }
    match opts.out {
        Some(_) => sweep::write_all_atomic(
            &files
                .into_iter()
                .map(|(p, t)| (p.unwrap(), t))
                .collect::<Vec<_>>(),
        ),
        None => emit(None, &files[0].1),
    }
}
