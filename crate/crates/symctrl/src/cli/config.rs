//! JSON run configuration: one UTF-8 document, complex matrices written as
//! nested arrays of `[re, im]` pairs.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::kalman::{CMatrix, TolerancePolicy};
use crate::observability::GramianMethod;
use crate::spectra::{BlockSpectrum, SpectralModel};
use crate::symbols::{
    diagonal_symbol, identity_symbol, scaled_bracket_symbol, CombineOp, ControlSystem,
    SymbolSequence,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Analyze,
    CostCurve,
    Synthesize,
    CheckInvariants,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: String,
    pub n: Option<usize>,
    pub l_max: Option<usize>,
    pub blocks: Option<Vec<AbstractBlockSpec>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractBlockSpec {
    pub eigenvalues: Vec<f64>,
    pub bracket: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OperatorASpec {
    /// `sign * diag(lambda^{s/2})` from the model spectrum.
    Diagonal {
        sign: f64,
        #[serde(default = "default_s")]
        s: f64,
    },
    Explicit { blocks: Vec<JsonMatrix> },
    /// First-order reduction of the second-order system driven by `inner`.
    Wave { inner: Box<OperatorASpec> },
    /// `i du/dt = Au + Bv` rewritten as `du/dt = -iAu - iBv`; the `-i`
    /// factor is applied to the control operator as well.
    Schrodinger { inner: Box<OperatorASpec> },
}

fn default_s() -> f64 {
    2.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OperatorBSpec {
    /// `C_B <xi>^kappa I`.
    Bracket { c_b: f64, kappa: f64 },
    Identity,
    Explicit { blocks: Vec<JsonMatrix> },
    /// `inner` everywhere except the listed blocks, which get zero.
    ZeroOn {
        blocks: Vec<usize>,
        inner: Box<OperatorBSpec>,
    },
}

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;
pub type JsonVector = Vec<[f64; 2]>;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSpec {
    pub rank_safety: Option<f64>,
    pub rank_absolute: Option<f64>,
    pub gramian_method: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailSpec {
    pub c_b: f64,
    pub kappa: f64,
    pub s: f64,
    pub r: u32,
    pub sandwich_c: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisSpec {
    /// Per-block initial coefficient vectors; zero when absent.
    pub initial: Option<Vec<JsonVector>>,
    /// Per-block target coefficient vectors; zero when absent.
    pub target: Option<Vec<JsonVector>>,
    #[serde(default = "default_grid")]
    pub grid: usize,
}

fn default_grid() -> usize {
    512
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub model: ModelSpec,
    pub operator_a: OperatorASpec,
    pub operator_b: OperatorBSpec,
    pub horizon: Option<f64>,
    pub horizons: Option<Vec<f64>>,
    pub l_max: Option<usize>,
    pub tolerances: Option<ToleranceSpec>,
    pub tail: Option<TailSpec>,
    pub synthesis: Option<SynthesisSpec>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn effective_l_max(&self) -> Result<usize> {
        self.l_max
            .or(self.model.l_max)
            .ok_or_else(|| Error::Config("l_max missing (set it at top level or in model)".into()))
    }

    pub fn effective_horizon(&self) -> Result<f64> {
        let t = self.horizon.unwrap_or(1.0);
        if !(t > 0.0) {
            return Err(Error::Config(format!("horizon must be positive, got {t}")));
        }
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if let Some(t) = self.horizon {
            if !(t > 0.0) || !t.is_finite() {
                problems.push(format!("horizon must be positive and finite, got {t}"));
            }
        }
        if let Some(hs) = &self.horizons {
            if hs.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
                problems.push("horizons must all be positive and finite".into());
            }
        }
        if self.l_max.is_none() && self.model.l_max.is_none() {
            problems.push("l_max missing (set it at top level or in model)".into());
        }
        match self.model.kind.as_str() {
            "torus" => {
                if self.model.n.is_none() {
                    problems.push("model.n required for kind \"torus\"".into());
                }
            }
            "su2-laplacian" | "su2-sublaplacian" => {}
            "abstract" => {
                if self.model.blocks.is_none() {
                    problems.push("model.blocks required for kind \"abstract\"".into());
                }
            }
            other => problems.push(format!("unknown model.kind {other:?}")),
        }
        if self.command == Command::CostCurve
            && self.horizons.as_ref().map(|h| h.is_empty()).unwrap_or(true)
        {
            problems.push("cost-curve needs a non-empty horizons list".into());
        }
        if let Some(tol) = &self.tolerances {
            if tol.rank_safety.is_some() && tol.rank_absolute.is_some() {
                problems.push("set rank_safety or rank_absolute, not both".into());
            }
            if let Some(m) = &tol.gramian_method {
                if m != "block-exp" && m != "quadrature" {
                    problems.push(format!(
                        "gramian_method must be \"block-exp\" or \"quadrature\", got {m:?}"
                    ));
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems.join("; ")))
        }
    }

    pub fn tolerance_policy(&self) -> TolerancePolicy {
        match &self.tolerances {
            Some(t) => {
                if let Some(abs) = t.rank_absolute {
                    TolerancePolicy::Absolute { tolerance: abs }
                } else if let Some(safety) = t.rank_safety {
                    TolerancePolicy::Relative { safety }
                } else {
                    TolerancePolicy::default()
                }
            }
            None => TolerancePolicy::default(),
        }
    }

    pub fn gramian_method(&self) -> GramianMethod {
        match self
            .tolerances
            .as_ref()
            .and_then(|t| t.gramian_method.as_deref())
        {
            Some("quadrature") => GramianMethod::Quadrature,
            _ => GramianMethod::BlockExp,
        }
    }

    pub fn spectral_model(&self) -> Result<SpectralModel> {
        Ok(match self.model.kind.as_str() {
            "torus" => SpectralModel::torus(
                self.model
                    .n
                    .ok_or_else(|| Error::Config("model.n required for kind \"torus\"".into()))?,
            ),
            "su2-laplacian" => SpectralModel::su2_laplacian(),
            "su2-sublaplacian" => SpectralModel::su2_sub_laplacian(),
            "abstract" => {
                let specs = self
                    .model
                    .blocks
                    .as_ref()
                    .ok_or_else(|| Error::Config("model.blocks required".into()))?;
                let blocks = specs
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let bracket = s.bracket.unwrap_or_else(|| {
                            (1.0 + s.eigenvalues.iter().cloned().fold(0.0, f64::max)).sqrt()
                        });
                        BlockSpectrum::new(i, s.eigenvalues.clone(), bracket)
                    })
                    .collect();
                SpectralModel::abstract_diagonal(blocks)
            }
            other => return Err(Error::Config(format!("unknown model.kind {other:?}"))),
        })
    }

    /// Materialize the configured system: spectrum -> symbols -> validated
    /// control system.
    pub fn build_system(&self) -> Result<ControlSystem> {
        let l_max = self.effective_l_max()?;
        let horizon = self.effective_horizon()?;
        let model = self.spectral_model()?;
        let blocks = crate::spectra::generate_blocks(&model, l_max)?;
        let sigma_b = build_operator_b(&self.operator_b, &blocks)?;
        let (sigma_a, sigma_b) = build_operator_a(&self.operator_a, &blocks, sigma_b)?;
        ControlSystem::new(sigma_a, sigma_b, horizon, self.model.kind.clone())
    }
}

pub fn json_to_matrix(m: &JsonMatrix) -> Result<CMatrix> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::Config("ragged matrix rows in config".into()));
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| {
        Complex64::new(m[i][j][0], m[i][j][1])
    }))
}

pub fn json_to_vector(v: &JsonVector) -> DVector<Complex64> {
    DVector::from_iterator(v.len(), v.iter().map(|p| Complex64::new(p[0], p[1])))
}

fn explicit_sequence(blocks: &[JsonMatrix], expected: usize) -> Result<SymbolSequence> {
    if blocks.len() != expected {
        return Err(Error::Config(format!(
            "explicit operator has {} blocks but the model generates {expected}",
            blocks.len()
        )));
    }
    let mats: Result<Vec<CMatrix>> = blocks.iter().map(json_to_matrix).collect();
    SymbolSequence::from_blocks(mats?)
}

fn build_operator_b(spec: &OperatorBSpec, blocks: &[BlockSpectrum]) -> Result<SymbolSequence> {
    match spec {
        OperatorBSpec::Bracket { c_b, kappa } => scaled_bracket_symbol(blocks, *c_b, *kappa),
        OperatorBSpec::Identity => identity_symbol(blocks),
        OperatorBSpec::Explicit { blocks: mats } => explicit_sequence(mats, blocks.len()),
        OperatorBSpec::ZeroOn {
            blocks: zeroed,
            inner,
        } => {
            if let Some(&bad) = zeroed.iter().find(|&&l| l >= blocks.len()) {
                return Err(Error::Config(format!(
                    "operator_b zeroes block {bad} but only blocks 0..={} exist",
                    blocks.len() - 1
                )));
            }
            let base = build_operator_b(inner, blocks)?;
            base.map(|l, m| {
                Ok(if zeroed.contains(&l) {
                    CMatrix::zeros(m.nrows(), m.ncols())
                } else {
                    m.clone()
                })
            })
        }
    }
}

/// Returns the state symbol together with the (possibly transformed) control
/// symbol: the wave reduction reshapes the control blocks and the
/// Schrodinger rewrite scales them by `-i`.
fn build_operator_a(
    spec: &OperatorASpec,
    blocks: &[BlockSpectrum],
    sigma_b: SymbolSequence,
) -> Result<(SymbolSequence, SymbolSequence)> {
    match spec {
        OperatorASpec::Diagonal { sign, s } => {
            let powered = crate::spectra::fractional_power(blocks, *s)?;
            Ok((diagonal_symbol(&powered, *sign)?, sigma_b))
        }
        OperatorASpec::Explicit { blocks: mats } => {
            Ok((explicit_sequence(mats, blocks.len())?, sigma_b))
        }
        OperatorASpec::Wave { inner } => {
            let (base_a, base_b) = build_operator_a(inner, blocks, sigma_b)?;
            let mut a2 = Vec::with_capacity(blocks.len());
            let mut b2 = Vec::with_capacity(blocks.len());
            for l in 0..=base_a.l_max() {
                let (wa, wb) = crate::kalman::wave_augment(base_a.block(l), base_b.block(l))?;
                a2.push(wa);
                b2.push(wb);
            }
            Ok((
                SymbolSequence::from_blocks(a2)?,
                SymbolSequence::from_blocks(b2)?,
            ))
        }
        OperatorASpec::Schrodinger { inner } => {
            let (base_a, base_b) = build_operator_a(inner, blocks, sigma_b)?;
            Ok((
                CombineOp::NegI.apply(&[base_a])?,
                CombineOp::NegI.apply(&[base_b])?,
            ))
        }
    }
}
