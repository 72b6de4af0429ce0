//! One-parameter sweeps over the `p`-families and their CSV form.

use std::io::Write;
use std::path::{Path, PathBuf};

use eur_core::bounds::{bounds_report, BoundsReport};
use eur_core::infoquant::{classical_correlation, OptimizerConfig};
use eur_core::{PauliAxis, StateFamily};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Result, ToolError};
use crate::input::ObservableDoc;
use crate::render::fmt_num;

pub const CSV_HEADER: &str =
    "p,q_mu,s_cond,i_ab,i_xb,i_zb,delta,bound_berta,bound_pati,bound_ours,actual";

/// Upper limit on rows per pair.
pub const MAX_ROWS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepFamily {
    Werner,
    BellDiagonalSpecial,
    #[serde(rename = "xstate")]
    XState,
}

impl SweepFamily {
    pub fn at(self, p: f64) -> StateFamily {
        match self {
            SweepFamily::Werner => StateFamily::Werner(p),
            SweepFamily::BellDiagonalSpecial => StateFamily::BellDiagonalSpecial(p),
            SweepFamily::XState => StateFamily::XStateSpecial(p),
        }
    }

    pub fn name(self) -> &'static str {
        self.at(0.0).name()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservablePairDoc {
    pub x: ObservableDoc,
    pub z: ObservableDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub family: SweepFamily,
    pub p_start: f64,
    pub p_end: f64,
    pub p_step: f64,
    pub pairs: Vec<ObservablePairDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    Fig1a,
    Fig1b,
    Fig2,
}

impl Preset {
    pub fn spec(self) -> SweepSpec {
        let (family, x, z) = match self {
            // Bell-diagonal axes ranked by |r_i|
            Preset::Fig1a => (
                SweepFamily::BellDiagonalSpecial,
                ObservableDoc::RankedAxis(1),
                ObservableDoc::RankedAxis(2),
            ),
            Preset::Fig1b => (
                SweepFamily::BellDiagonalSpecial,
                ObservableDoc::RankedAxis(1),
                ObservableDoc::RankedAxis(3),
            ),
            Preset::Fig2 => (
                SweepFamily::XState,
                ObservableDoc::named(PauliAxis::X),
                ObservableDoc::named(PauliAxis::Z),
            ),
        };
        SweepSpec {
            family,
            p_start: 0.0,
            p_end: 1.0,
            p_step: 0.01,
            pairs: vec![ObservablePairDoc { x, z }],
        }
    }
}

impl SweepSpec {
    pub fn check(&self) -> Result<()> {
        let ok = 0.0 <= self.p_start && self.p_start <= self.p_end && self.p_end <= 1.0;
        if !ok {
            return Err(ToolError::Usage(format!(
                "sweep range must satisfy 0 <= p_start <= p_end <= 1, got [{}, {}]",
                self.p_start, self.p_end
            )));
        }
        if !(self.p_step > 0.0 && self.p_step.is_finite()) {
            return Err(ToolError::Usage(format!(
                "p_step must be positive, got {}",
                self.p_step
            )));
        }
        if (self.p_end - self.p_start) / self.p_step >= MAX_ROWS as f64 {
            return Err(ToolError::Usage(format!(
                "p_step {} gives too many rows",
                self.p_step
            )));
        }
        if self.pairs.is_empty() {
            return Err(ToolError::Usage(
                "sweep needs at least one observable pair".into(),
            ));
        }
        for pair in &self.pairs {
            pair.x.check()?;
            pair.z.check()?;
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        p_grid(self.p_start, self.p_end, self.p_step)
    }
}

/// `start + k·step` below `end`, then `end` itself.
///
/// A grid point within `1e-9·step` of `end` is replaced by `end`.
pub fn p_grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut k = 0usize;
    loop {
        let p = start + k as f64 * step;
        if p >= end - 1e-9 * step {
            break;
        }
        grid.push(p);
        k += 1;
    }
    grid.push(end);
    grid
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub report: BoundsReport,
}

/// Rows in ascending `p`; each row runs the correlation optimizer for `bound_pati`.
pub fn run_pair(
    spec: &SweepSpec,
    pair: &ObservablePairDoc,
    cfg: &OptimizerConfig,
) -> Result<Vec<SweepRow>> {
    spec.grid()
        .into_par_iter()
        .map(|p| {
            let context = || format!("{} p={}", spec.family.name(), fmt_num(p));
            let rho = spec
                .family
                .at(p)
                .build()
                .map_err(|e| ToolError::invalid(context(), e))?;
            let x = pair.x.resolve(&rho)?;
            let z = pair.z.resolve(&rho)?;
            let corr =
                classical_correlation(&rho, cfg).map_err(|e| ToolError::invalid(context(), e))?;
            let report = bounds_report(&rho, &x, &z, Some(&corr))
                .map_err(|e| ToolError::invalid(context(), e))?;
            Ok(SweepRow { p, report })
        })
        .collect()
}

pub fn csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let r = &row.report;
        let cells = [
            row.p,
            r.q_mu,
            r.s_cond,
            r.i_ab,
            r.i_xb,
            r.i_zb,
            r.delta,
            r.bound_berta,
            r.bound_pati.unwrap_or(f64::NAN),
            r.bound_ours,
            r.actual,
        ];
        let line: Vec<String> = cells.iter().map(|v| fmt_num(*v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Report objects with `family`, `p` and `observables` in front.
pub fn records(spec: &SweepSpec, pair: &ObservablePairDoc, rows: &[SweepRow]) -> Vec<Value> {
    rows.iter()
        .map(|row| {
            crate::render::with_leading(
                vec![
                    ("family", json!(spec.family.name())),
                    ("p", json!(row.p)),
                    ("observables", json!(pair)),
                ],
                serde_json::to_value(row.report).expect("reports serialize"),
            )
        })
        .collect()
}

/// Output path for pair `k` (1-based) of `count`: `dir/stem_k.ext` when there are several.
pub fn pair_path(out: &Path, k: usize, count: usize) -> PathBuf {
    if count == 1 {
        return out.to_path_buf();
    }
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}_{k}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{k}"),
    };
    out.with_file_name(name)
}

/// Writes every file to a temporary sibling first and renames only once all
/// writes succeeded.
pub fn write_all_atomic(files: &[(PathBuf, String)]) -> Result<()> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, contents) in files {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let write_err = |source| ToolError::Write {
            path: path.clone(),
            source,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(write_err)?;
        tmp.write_all(contents.as_bytes()).map_err(write_err)?;
        tmp.flush().map_err(write_err)?;
        staged.push((tmp, path));
    }
    for (tmp, path) in staged {
        tmp.persist(path).map_err(|e| ToolError::Write {
            path: path.clone(),
            source: e.error,
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_both_endpoints() {
        let g = p_grid(0.0, 1.0, 0.01);
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));

        assert_eq!(
            p_grid(0.0, 1.0, 0.3),
            vec![0.0, 0.3, 0.6, 0.8999999999999999, 1.0]
        );
        assert_eq!(p_grid(0.0, 1.0, 0.1).len(), 11);
        assert_eq!(p_grid(0.4, 0.4, 0.1), vec![0.4]);
        assert_eq!(p_grid(0.2, 0.3, 0.5), vec![0.2, 0.3]);
    }

    #[test]
    fn spec_checks() {
        let mut spec = Preset::Fig2.spec();
        assert!(spec.check().is_ok());
        spec.p_end = 1.5;
        assert!(spec.check().is_err());
        let mut spec = Preset::Fig2.spec();
        spec.p_step = 0.0;
        assert!(spec.check().is_err());
        spec.p_step = 0.1;
        spec.p_start = 0.8;
        spec.p_end = 0.2;
        assert!(spec.check().is_err());
        let mut spec = Preset::Fig2.spec();
        spec.pairs.clear();
        assert!(spec.check().is_err());
    }

    #[test]
    fn spec_document_round_trip() {
        let text = r#"{"family": "werner", "p_start": 0, "p_end": 1, "p_step": 0.5,
            "pairs": [{"x": {"named": "sigma_x"}, "z": {"ranked_axis": 3}}]}"#;
        let spec: SweepSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.family, SweepFamily::Werner);
        assert_eq!(spec.grid(), vec![0.0, 0.5, 1.0]);
        let back: SweepSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn pair_paths() {
        let out = Path::new("runs/fig.csv");
        assert_eq!(pair_path(out, 1, 1), PathBuf::from("runs/fig.csv"));
        assert_eq!(pair_path(out, 2, 3), PathBuf::from("runs/fig_2.csv"));
        assert_eq!(pair_path(Path::new("fig"), 1, 2), PathBuf::from("fig_1"));
    }

    #[test]
    fn fig2_endpoint_rows() {
        let spec = SweepSpec {
            p_step: 1.0,
            ..Preset::Fig2.spec()
        };
        let cfg = OptimizerConfig {
            grid_theta: 10,
            grid_phi: 20,
            refine_tol: 1e-6,
        };
        let rows = run_pair(&spec, &spec.pairs[0], &cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!((rows[0].report.bound_berta - 1.0).abs() < 1e-9);
        assert!(rows[1].report.bound_berta.abs() < 1e-9);
        assert!(rows[1].report.bound_ours.abs() < 1e-9);
        let text = csv(&rows);
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(text.lines().count(), 3);
        assert!(!text.contains('\r'));
    }
}
