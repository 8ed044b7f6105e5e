//! JSON description of a two-mode state.
//!
//! Exactly one of three keys is accepted:
//! `{"matrix": [[..4..], ..4 rows..]}`, `{"standard_form": {"a", "b", "c1", "c2"}}`
//! or `{"purity_params": {"mu_a", "mu_b", "mu", "beta"}}`.

use std::io::Read;

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::params::PurityParams;
use crate::gaussian::state::{CovarianceMatrix, StandardForm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateInput {
    Matrix(Matrix4<f64>),
    StandardForm { a: f64, b: f64, c1: f64, c2: f64 },
    PurityParams(PurityParams),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStandardForm {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<[[f64; 4]; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    standard_form: Option<RawStandardForm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    purity_params: Option<PurityParams>,
}

/// A validated state in both representations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedState {
    pub covariance: CovarianceMatrix,
    pub standard_form: StandardForm,
}

impl StateInput {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RawInput = serde_json::from_str(s)?;
        Self::from_raw(raw)
    }

    pub fn from_reader<R: Read>(r: R) -> Result<Self> {
        let raw: RawInput = serde_json::from_reader(r)?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawInput) -> Result<Self> {
        match (raw.matrix, raw.standard_form, raw.purity_params) {
            (Some(rows), None, None) => Ok(StateInput::Matrix(Matrix4::from_fn(|i, j| rows[i][j]))),
            (None, Some(f), None) => Ok(StateInput::StandardForm {
                a: f.a,
                b: f.b,
                c1: f.c1,
                c2: f.c2,
            }),
            (None, None, Some(p)) => Ok(StateInput::PurityParams(p)),
            _ => Err(Error::Parse(
                "expected exactly one of \"matrix\", \"standard_form\", \"purity_params\"".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        let raw = match *self {
            StateInput::Matrix(m) => RawInput {
                matrix: Some(std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))),
                ..Default::default()
            },
            StateInput::StandardForm { a, b, c1, c2 } => RawInput {
                standard_form: Some(RawStandardForm { a, b, c1, c2 }),
                ..Default::default()
            },
            StateInput::PurityParams(p) => RawInput {
                purity_params: Some(p),
                ..Default::default()
            },
        };
        serde_json::to_string(&raw).expect("state input serializes")
    }

    pub fn resolve(&self) -> Result<ResolvedState> {
        let standard_form = match *self {
            StateInput::Matrix(m) => {
                let covariance = CovarianceMatrix::new(m)?;
                let (standard_form, _) = covariance.reduce_to_standard_form()?;
                return Ok(ResolvedState {
                    covariance,
                    standard_form,
                });
            }
            StateInput::StandardForm { a, b, c1, c2 } => StandardForm::new(a, b, c1, c2)?,
            StateInput::PurityParams(p) => StandardForm::from_purity_params(&p)?,
        };
        Ok(ResolvedState {
            covariance: standard_form.expand(),
            standard_form,
        })
    }
}

impl From<StandardForm> for StateInput {
    fn from(sf: StandardForm) -> Self {
        StateInput::StandardForm {
            a: sf.a(),
            b: sf.b(),
            c1: sf.c1(),
            c2: sf.c2(),
        }
    }
}
