//! JSON documents for states and observables.

use std::fs;
use std::path::Path;

use eur_core::measure::{observable_from_bloch, ranked_pauli_axis};
use eur_core::states::validate;
use eur_core::{
    BlochDirection, ComplexMatrix, DensityMatrix, PauliAxis, ProjectiveObservable, StateFamily,
};
use serde::{Deserialize, Serialize};

use crate::error::{Result, ToolError};

/// `{"family": {...}}` or `{"explicit": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StateDoc {
    Family(FamilyDoc),
    Explicit(ExplicitDoc),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyDoc {
    Werner {
        p: f64,
    },
    BellDiagonal {
        r: [f64; 3],
    },
    BellDiagonalSpecial {
        p: f64,
    },
    #[serde(rename = "xstate")]
    XState {
        p: f64,
    },
    PureSchmidt {
        lambda: Vec<f64>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitDoc {
    #[serde(rename = "dA")]
    pub da: usize,
    #[serde(rename = "dB")]
    pub db: usize,
    pub re: Vec<Vec<f64>>,
    /// Omitted means a real matrix.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub im: Vec<Vec<f64>>,
}

impl ExplicitDoc {
    fn matrix(&self) -> eur_core::Result<ComplexMatrix> {
        if self.im.is_empty() {
            let zeros: Vec<Vec<f64>> = self.re.iter().map(|r| vec![0.0; r.len()]).collect();
            ComplexMatrix::from_parts(&self.re, &zeros)
        } else {
            ComplexMatrix::from_parts(&self.re, &self.im)
        }
    }
}

impl StateDoc {
    pub fn family(&self) -> eur_core::Result<StateFamily> {
        Ok(match self {
            StateDoc::Family(f) => match f {
                FamilyDoc::Werner { p } => StateFamily::Werner(*p),
                FamilyDoc::BellDiagonal { r } => StateFamily::BellDiagonal(*r),
                FamilyDoc::BellDiagonalSpecial { p } => StateFamily::BellDiagonalSpecial(*p),
                FamilyDoc::XState { p } => StateFamily::XStateSpecial(*p),
                FamilyDoc::PureSchmidt { lambda } => StateFamily::PureSchmidt(lambda.clone()),
            },
            StateDoc::Explicit(e) => StateFamily::Explicit {
                mat: e.matrix()?,
                da: e.da,
                db: e.db,
            },
        })
    }

    pub fn build(&self) -> eur_core::Result<DensityMatrix> {
        self.family()?.build()
    }

    /// Checks every density-matrix invariant without stopping at the first failure.
    pub fn validate(&self) -> eur_core::Result<eur_core::states::ValidationReport> {
        let (m, da, db) = self.family()?.matrix()?;
        Ok(validate(&m, da, db))
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        let (da, db) = rho.dims();
        StateDoc::Explicit(ExplicitDoc {
            da,
            db,
            re: rho.matrix().real_rows(),
            im: rho.matrix().imag_rows(),
        })
    }
}

pub fn parse_state(text: &str, context: &str) -> Result<StateDoc> {
    serde_json::from_str(text).map_err(|source| ToolError::Json {
        context: context.to_string(),
        source,
    })
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| ToolError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_state(path: &Path) -> Result<(StateDoc, DensityMatrix)> {
    let context = path.display().to_string();
    let doc = parse_state(&read_text(path)?, &context)?;
    let rho = doc.build().map_err(|e| ToolError::invalid(context, e))?;
    Ok((doc, rho))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub im: Vec<Vec<f64>>,
}

/// An observable on `A`.
///
/// `ranked_axis: k` is the Pauli axis with the `k`-th largest `|⟨σ_i⊗σ_i⟩|`
/// of the state it is applied to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObservableDoc {
    Named(String),
    Bloch([f64; 3]),
    /// Each row of `re + i·im` is one basis vector.
    Basis(BasisDoc),
    RankedAxis(usize),
}

fn named_axis(name: &str) -> Option<PauliAxis> {
    PauliAxis::ALL.into_iter().find(|a| a.name() == name)
}

impl ObservableDoc {
    pub fn named(axis: PauliAxis) -> Self {
        ObservableDoc::Named(axis.name().to_string())
    }

    /// Surface checks that do not need a state.
    pub fn check(&self) -> Result<()> {
        match self {
            ObservableDoc::Named(n) if named_axis(n).is_none() => Err(ToolError::Usage(format!(
                "unknown observable {n:?} (expected sigma_x, sigma_y or sigma_z)"
            ))),
            ObservableDoc::RankedAxis(k) if !(1..=3).contains(k) => Err(ToolError::Usage(format!(
                "ranked_axis must be 1, 2 or 3, got {k}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn resolve(&self, rho: &DensityMatrix) -> Result<ProjectiveObservable> {
        self.check()?;
        let obs = match self {
            ObservableDoc::Named(n) => Ok(ProjectiveObservable::pauli(named_axis(n).unwrap())),
            ObservableDoc::Bloch(n) => BlochDirection::new(*n).map(observable_from_bloch),
            ObservableDoc::Basis(b) => {
                let im = if b.im.is_empty() {
                    b.re.iter().map(|r| vec![0.0; r.len()]).collect()
                } else {
                    b.im.clone()
                };
                if im.len() != b.re.len() || im.iter().zip(&b.re).any(|(i, r)| i.len() != r.len()) {
                    return Err(ToolError::Usage("basis re and im shapes differ".into()));
                }
                let vectors =
                    b.re.iter()
                        .zip(&im)
                        .map(|(r, i)| {
                            r.iter()
                                .zip(i)
                                .map(|(x, y)| eur_core::C64::new(*x, *y))
                                .collect()
                        })
                        .collect();
                ProjectiveObservable::new(vectors)
            }
            ObservableDoc::RankedAxis(k) => {
                ranked_pauli_axis(rho, *k).map(ProjectiveObservable::pauli)
            }
        };
        let obs = obs.map_err(|e| ToolError::invalid("observable", e))?;
        if obs.dim() != rho.dim_a() {
            return Err(ToolError::invalid(
                "observable",
                eur_core::Error::DimensionMismatch {
                    expected: rho.dim_a(),
                    found: obs.dim(),
                },
            ));
        }
        Ok(obs)
    }
}

/// Inline JSON, a bare Pauli name such as `sigma_x`, or a path to a JSON file.
pub fn parse_observable(arg: &str) -> Result<ObservableDoc> {
    let trimmed = arg.trim();
    let doc = if trimmed.starts_with('{') {
        serde_json::from_str(trimmed).map_err(|source| ToolError::Json {
            context: "observable".into(),
            source,
        })?
    } else if named_axis(trimmed).is_some() {
        ObservableDoc::Named(trimmed.to_string())
    } else if Path::new(trimmed).is_file() {
        let path = Path::new(trimmed);
        serde_json::from_str(&read_text(path)?).map_err(|source| ToolError::Json {
            context: path.display().to_string(),
            source,
        })?
    } else {
        return Err(ToolError::Usage(format!(
            "observable {trimmed:?} is neither JSON, a Pauli name nor a file"
        )));
    };
    doc.check()?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_documents() {
        let doc = parse_state(r#"{"family": {"name": "werner", "p": 0.5}}"#, "t").unwrap();
        assert_eq!(doc, StateDoc::Family(FamilyDoc::Werner { p: 0.5 }));
        let doc = parse_state(r#"{"family": {"name": "xstate", "p": 1}}"#, "t").unwrap();
        assert_eq!(doc.family().unwrap(), StateFamily::XStateSpecial(1.0));
        let doc = parse_state(
            r#"{"family": {"name": "bell_diagonal", "r": [0.5, 0.3, 0.1]}}"#,
            "t",
        )
        .unwrap();
        assert!(doc.build().is_ok());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        for bad in [
            "{",
            r#"{"family": {"name": "ghz", "p": 0.5}}"#,
            r#"{"family": {"name": "werner", "q": 0.5}}"#,
            r#"{"family": {"name": "werner", "p": 0.5, "extra": 1}}"#,
            r#"{"explicit": {"dA": 2, "re": [[1]]}}"#,
            r#"{"other": {}}"#,
        ] {
            assert!(
                matches!(parse_state(bad, "t"), Err(ToolError::Json { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn explicit_without_imaginary_part() {
        let doc = parse_state(
            r#"{"explicit": {"dA": 1, "dB": 2, "re": [[0.5, 0], [0, 0.5]]}}"#,
            "t",
        )
        .unwrap();
        let rho = doc.build().unwrap();
        assert_eq!(rho.dims(), (1, 2));
    }

    #[test]
    fn explicit_trace_violation_names_the_invariant() {
        let doc = parse_state(
            r#"{"explicit": {"dA": 2, "dB": 1, "re": [[1, 0], [0, 0.5]], "im": [[0, 0], [0, 0]]}}"#,
            "t",
        )
        .unwrap();
        let err = doc.build().unwrap_err();
        assert!(err.to_string().contains("trace"), "{err}");
        let report = doc.validate().unwrap();
        assert!(!report.is_valid());
    }

    #[test]
    fn observable_forms() {
        let rho = StateFamily::BellDiagonalSpecial(0.2).build().unwrap();
        let z = ProjectiveObservable::pauli(PauliAxis::Z);
        for arg in [
            "sigma_z",
            r#"{"named": "sigma_z"}"#,
            r#"{"bloch": [0, 0, 1]}"#,
            r#"{"basis": {"re": [[1, 0], [0, 1]]}}"#,
            r#"{"ranked_axis": 3}"#,
        ] {
            let obs = parse_observable(arg).unwrap().resolve(&rho).unwrap();
            let c = eur_core::measure::overlap_matrix(&obs, &z).unwrap();
            assert!(
                (c[0][0] - 1.0).abs() < 1e-12 && c[0][1].abs() < 1e-12,
                "{arg}"
            );
        }
        assert!(parse_observable("sigma_w").is_err());
        assert!(parse_observable(r#"{"ranked_axis": 4}"#).is_err());
        let bad = parse_observable(r#"{"bloch": [1, 1, 0]}"#).unwrap();
        assert!(bad.resolve(&rho).is_err());
    }
}
