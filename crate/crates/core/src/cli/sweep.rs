//! Parameter sweeps over built-in operator families, written as CSV.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::RngCore;
use rayon::prelude::*;
use thiserror::Error;

use crate::entanglement::entanglement_report;
use crate::error::Error;
use crate::operators::{controlled_u, exp_swap, haar_unitary_with, stream_rng, ControlledUSpec};
use crate::rearrange::BipartiteOperator;

pub const CSV_HEADER: &str = "param,e_op,e_op_swapped,e_power";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `exp(-i t S12)` with `t` the swept parameter.
    ExpSwap,
    /// Controlled-U with Haar-random blocks, fresh per grid point.
    ControlledURandom,
    /// Haar-random `d² x d²` unitary, fresh per grid point.
    Haar,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::ExpSwap, Family::ControlledURandom, Family::Haar];

    pub fn name(self) -> &'static str {
        match self {
            Family::ExpSwap => "exp_swap",
            Family::ControlledURandom => "controlled_u_random",
            Family::Haar => "haar",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| SweepError::UnknownFamily(s.to_owned()))
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("unknown family {0:?}; valid families: exp_swap, controlled_u_random, haar")]
    UnknownFamily(String),
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Operator(#[from] Error),
    #[error("writing {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: Family,
    pub d: usize,
    pub param_start: f64,
    pub param_end: f64,
    pub steps: usize,
    /// Only used by the random families.
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.d < 2 {
            return Err(Error::LocalDimension(self.d).into());
        }
        if self.steps == 0 {
            return Err(SweepError::InvalidSpec("steps must be at least 1".into()));
        }
        if !self.param_start.is_finite() || !self.param_end.is_finite() {
            return Err(SweepError::InvalidSpec(
                "parameter bounds must be finite".into(),
            ));
        }
        if self.param_start > self.param_end {
            return Err(SweepError::InvalidSpec(format!(
                "param_start {} exceeds param_end {}",
                self.param_start, self.param_end
            )));
        }
        Ok(())
    }

    /// Evenly spaced grid including both endpoints; a single step yields
    /// `param_start` alone.
    pub fn grid(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.param_start];
        }
        let span = self.param_end - self.param_start;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.param_end
                } else {
                    self.param_start + span * (k as f64) / last
                }
            })
            .collect()
    }

    fn operator_at(&self, index: usize, param: f64) -> Result<BipartiteOperator, Error> {
        let d = self.d;
        match self.family {
            Family::ExpSwap => exp_swap(d, param),
            Family::ControlledURandom => {
                let seed = stream_rng(self.seed, index as u64).next_u64();
                Ok(controlled_u(&ControlledUSpec::random(d, seed)?))
            }
            Family::Haar => {
                let mut rng = stream_rng(self.seed, index as u64);
                BipartiteOperator::new(d, haar_unitary_with(d * d, &mut rng))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub e_op: f64,
    pub e_op_swapped: f64,
    pub e_power: f64,
}

pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;
    spec.grid()
        .into_par_iter()
        .enumerate()
        .map(|(index, param)| {
            let op = spec.operator_at(index, param)?;
            let report = entanglement_report(&op);
            let e_power = report.e_power.ok_or(Error::NotUnitary {
                defect: report.unitarity_defect,
                tol: crate::entanglement::UNITARITY_TOL,
            })?;
            Ok(SweepRow {
                param,
                e_op: report.e_op,
                e_op_swapped: report.e_op_swapped,
                e_power,
            })
        })
        .collect()
}

fn fmt_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text: header plus one LF-terminated row per grid point.
pub fn sweep_csv(spec: &SweepSpec) -> Result<String, SweepError> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in sweep_rows(spec)? {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_number(row.param),
            fmt_number(row.e_op),
            fmt_number(row.e_op_swapped),
            fmt_number(row.e_power)
        ));
    }
    Ok(out)
}

pub fn write_sweep(spec: &SweepSpec, path: &Path) -> Result<(), SweepError> {
    let csv = sweep_csv(spec)?;
    std::fs::write(path, csv).map_err(|source| SweepError::Io {
        path: path.display().to_string(),
        source,
    })
}
