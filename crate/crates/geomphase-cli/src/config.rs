//! Sweep configuration: a single JSON document that fully determines every
//! number in the output files.

use geomphase::analytic::QGridSpec;
use geomphase::error_models::RescaleFactor;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Interaction regime of the gate being swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Continuous,
    Pulsed,
}

/// Output quantities requested per sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Fidelity,
    Purity,
    Qfunction,
}

/// Rescaling factor in config form: a positive integer or the string "inf".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NSpec {
    Finite(u64),
    Infinity,
}

impl NSpec {
    pub fn to_rescale(self) -> anyhow::Result<RescaleFactor> {
        match self {
            NSpec::Finite(n) => Ok(RescaleFactor::new_finite(n)?),
            NSpec::Infinity => Ok(RescaleFactor::Infinity),
        }
    }

    /// Column value used in CSV rows.
    pub fn label(&self) -> String {
        match self {
            NSpec::Finite(n) => n.to_string(),
            NSpec::Infinity => "inf".to_string(),
        }
    }
}

impl Serialize for NSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            NSpec::Finite(n) => s.serialize_u64(*n),
            NSpec::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for NSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(NSpec::Finite(n)),
            Raw::Text(s) if s == "inf" => Ok(NSpec::Infinity),
            Raw::Text(s) => Err(D::Error::custom(format!(
                "n_values entries must be positive integers or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// Uniform error grid: `count` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl ErrorRange {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + i as f64 * step).collect()
    }
}

/// Serde mirror of [`QGridSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QGridConfig {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub resolution: usize,
}

impl QGridConfig {
    pub fn to_spec(self) -> QGridSpec {
        QGridSpec {
            re_min: self.re_min,
            re_max: self.re_max,
            im_min: self.im_min,
            im_max: self.im_max,
            resolution: self.resolution,
        }
    }
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Fidelity, OutputKind::Purity]
}

fn default_tail_eps() -> f64 {
    1e-12
}

fn default_output_path() -> String {
    "sweep.csv".to_string()
}

/// Complete description of a sweep; the manifest embeds this verbatim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub regime: Regime,
    #[serde(default)]
    pub dissipative: bool,
    pub alpha: f64,
    /// Interaction strength: k (continuous) or λ (pulsed).
    pub strength: f64,
    #[serde(default)]
    pub n_pulses: Option<u64>,
    #[serde(default)]
    pub n_th: f64,
    #[serde(default)]
    pub gamma_ratio: f64,
    pub error_range: ErrorRange,
    pub n_values: Vec<NSpec>,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub qgrid: Option<QGridConfig>,
    #[serde(default = "default_tail_eps")]
    pub tail_eps: f64,
    #[serde(default = "default_output_path")]
    pub output_path: String,
}

impl SweepConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.regime == Regime::Pulsed && self.n_pulses.is_none() {
            anyhow::bail!("pulsed sweeps require n_pulses");
        }
        if self.error_range.count == 0 {
            anyhow::bail!("error_range.count must be positive");
        }
        if !(self.error_range.min <= self.error_range.max) {
            anyhow::bail!("error_range.min must not exceed error_range.max");
        }
        if self.n_values.is_empty() {
            anyhow::bail!("n_values must not be empty");
        }
        if self.dissipative && self.n_th != 0.0 {
            anyhow::bail!(
                "dissipative closed forms assume an initial mechanical vacuum; set n_th to 0"
            );
        }
        if self.outputs.contains(&OutputKind::Qfunction) && self.qgrid.is_none() {
            anyhow::bail!("qfunction output requires a qgrid spec");
        }
        Ok(())
    }
}

/// Built-in figure presets, also checked in under `presets/`.
pub fn preset(name: &str) -> Option<&'static str> {
    match name {
        "fig3" => Some(include_str!("../../../presets/fig3.json")),
        "fig4" => Some(include_str!("../../../presets/fig4.json")),
        "fig5" => Some(include_str!("../../../presets/fig5.json")),
        "fig6" => Some(include_str!("../../../presets/fig6.json")),
        _ => None,
    }
}

pub fn load_config(text: &str) -> anyhow::Result<SweepConfig> {
    let cfg: SweepConfig = serde_json::from_str(text)?;
    cfg.validate()?;
    Ok(cfg)
}
