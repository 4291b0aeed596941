//! Solve reports and their machine-readable form.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Point;
use crate::rational::{parse_rational, to_fraction_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfeasibleWitness {
    /// The center of this layer is infeasible, and so is every layer beyond it.
    CenterInfeasible(BigInt),
    /// Every layer in the sift range was tested without success.
    ExhaustedLayers,
    /// The fixed line `(a,…,a)` misses the LP feasible region.
    LineInfeasible,
    /// No feasible integer point inside the enumeration box.
    EmptyBox,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal {
        point: Point,
        value: Rational,
        layer: BigInt,
    },
    Infeasible(InfeasibleWitness),
    Unbounded,
    NotApplicable(String),
}

impl SolveStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SolveStatus::Optimal { .. } => "optimal",
            SolveStatus::Infeasible(_) => "infeasible",
            SolveStatus::Unbounded => "unbounded",
            SolveStatus::NotApplicable(_) => "not_applicable",
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            SolveStatus::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub layers_visited: usize,
    pub feasibility_checks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub stats: SolveStats,
    /// Applicability verdict, `"ok"`, `"assumed"` or the failed condition.
    pub applicability: String,
    pub notes: Vec<String>,
}

impl SolveReport {
    pub fn new(status: SolveStatus, applicability: impl Into<String>) -> Self {
        SolveReport {
            status,
            stats: SolveStats::default(),
            applicability: applicability.into(),
            notes: Vec::new(),
        }
    }

    /// Process exit code: 0 optimal, 2 infeasible, 3 unbounded, 4 not applicable.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            SolveStatus::Optimal { .. } => 0,
            SolveStatus::Infeasible(_) => 2,
            SolveStatus::Unbounded => 3,
            SolveStatus::NotApplicable(_) => 4,
        }
    }

    pub fn to_machine(&self) -> MachineReport {
        let (value, point, layer) = match &self.status {
            SolveStatus::Optimal {
                point,
                value,
                layer,
            } => (
                Some(to_fraction_string(value)),
                Some(point.0.iter().map(to_fraction_string).collect()),
                Some(layer.to_string()),
            ),
            _ => (None, None, None),
        };
        let witness = match &self.status {
            SolveStatus::Infeasible(w) => Some(match w {
                InfeasibleWitness::CenterInfeasible(k) => format!("center_infeasible:{k}"),
                InfeasibleWitness::ExhaustedLayers => "exhausted_layers".to_string(),
                InfeasibleWitness::LineInfeasible => "line_infeasible".to_string(),
                InfeasibleWitness::EmptyBox => "empty_box".to_string(),
            }),
            SolveStatus::NotApplicable(reason) => Some(reason.clone()),
            _ => None,
        };
        MachineReport {
            status: self.status.name().to_string(),
            value,
            point,
            layer,
            witness,
            layers_visited: self.stats.layers_visited,
            feasibility_checks: self.stats.feasibility_checks,
            applicability: self.applicability.clone(),
            notes: self.notes.clone(),
        }
    }

    pub fn from_machine(m: &MachineReport) -> Result<Self> {
        let bad = |msg: &str| Error::Report(msg.to_string());
        let status = match m.status.as_str() {
            "optimal" => {
                let value =
                    parse_rational(m.value.as_deref().ok_or_else(|| bad("missing value"))?)?;
                let point = m
                    .point
                    .as_ref()
                    .ok_or_else(|| bad("missing point"))?
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                let layer = m
                    .layer
                    .as_deref()
                    .ok_or_else(|| bad("missing layer"))?
                    .parse::<BigInt>()
                    .map_err(|_| bad("bad layer"))?;
                SolveStatus::Optimal {
                    point: Point(point),
                    value,
                    layer,
                }
            }
            "infeasible" => {
                let w = m.witness.as_deref().ok_or_else(|| bad("missing witness"))?;
                SolveStatus::Infeasible(match w {
                    "exhausted_layers" => InfeasibleWitness::ExhaustedLayers,
                    "line_infeasible" => InfeasibleWitness::LineInfeasible,
                    "empty_box" => InfeasibleWitness::EmptyBox,
                    other => {
                        let k = other
                            .strip_prefix("center_infeasible:")
                            .and_then(|k| k.parse::<BigInt>().ok())
                            .ok_or_else(|| bad("bad witness"))?;
                        InfeasibleWitness::CenterInfeasible(k)
                    }
                })
            }
            "unbounded" => SolveStatus::Unbounded,
            "not_applicable" => SolveStatus::NotApplicable(m.witness.clone().unwrap_or_default()),
            _ => return Err(bad("unknown status")),
        };
        Ok(SolveReport {
            status,
            stats: SolveStats {
                layers_visited: m.layers_visited,
                feasibility_checks: m.feasibility_checks,
            },
            applicability: m.applicability.clone(),
            notes: m.notes.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_machine()).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: MachineReport =
            serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))?;
        SolveReport::from_machine(&m)
    }
}

/// Serialized report. Every number is an exact `p/q` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineReport {
    pub status: String,
    #[serde(default)]
    pub value: Option<String>,
    #[serde(default)]
    pub point: Option<Vec<String>>,
    #[serde(default)]
    pub layer: Option<String>,
    #[serde(default)]
    pub witness: Option<String>,
    pub layers_visited: usize,
    #[serde(default)]
    pub feasibility_checks: usize,
    pub applicability: String,
    #[serde(default)]
    pub notes: Vec<String>,
}
