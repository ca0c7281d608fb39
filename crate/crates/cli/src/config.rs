//! Run configuration: a flat JSON object whose fields can each be overridden
//! from the command line.

use std::path::Path;

use clap::Args;
use djspin::model::{DeviceLabel, KondoNormalization, ModelParams, Space};
use djspin::SpinQuantum;
use num_complex::Complex64;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub space: Space,
    pub initial: DeviceLabel,
    pub t_max: f64,
    pub steps: usize,
    pub bloch_pair: Option<(DeviceLabel, DeviceLabel)>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: ModelParams::isotropic(SpinQuantum::ONE, 0.0, 0.0, 0.0),
            space: Space::Effective,
            initial: DeviceLabel::down(2, 2),
            t_max: 100.0,
            steps: 1001,
            bloch_pair: None,
        }
    }
}

/// Command-line overrides. Each flag replaces the config field of the same name.
#[derive(Args, Clone, Debug, Default)]
pub struct ConfigArgs {
    /// JSON config file
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    #[arg(long = "s23", value_name = "1/2|1")]
    pub s23: Option<String>,
    #[arg(long = "j_h", allow_hyphen_values = true)]
    pub j_h: Option<String>,
    #[arg(long = "j_k2", allow_hyphen_values = true)]
    pub j_k2: Option<String>,
    #[arg(long = "j_k3", allow_hyphen_values = true)]
    pub j_k3: Option<String>,
    #[arg(long = "d", allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long = "t_hop_re", allow_hyphen_values = true)]
    pub t_hop_re: Option<String>,
    #[arg(long = "t_hop_im", allow_hyphen_values = true)]
    pub t_hop_im: Option<String>,
    #[arg(long = "space", value_name = "effective|full")]
    pub space: Option<String>,
    #[arg(long = "kondo_normalization", value_name = "matched|literal")]
    pub kondo_normalization: Option<String>,
    #[arg(long = "initial", allow_hyphen_values = true)]
    pub initial: Option<String>,
    #[arg(long = "t_max")]
    pub t_max: Option<String>,
    #[arg(long = "steps")]
    pub steps: Option<String>,
    /// Two labels separated by a comma: north,south
    #[arg(long = "bloch_pair", allow_hyphen_values = true)]
    pub bloch_pair: Option<String>,
}

const FIELDS: [&str; 13] = [
    "s23",
    "j_h",
    "j_k2",
    "j_k3",
    "d",
    "t_hop_re",
    "t_hop_im",
    "space",
    "kondo_normalization",
    "initial",
    "t_max",
    "steps",
    "bloch_pair",
];

impl ConfigArgs {
    pub fn resolve(&self) -> CliResult<RunConfig> {
        let mut doc = match &self.config {
            Some(path) => read_document(path)?,
            None => Map::new(),
        };
        let overrides = [
            ("s23", &self.s23),
            ("j_h", &self.j_h),
            ("j_k2", &self.j_k2),
            ("j_k3", &self.j_k3),
            ("d", &self.d),
            ("t_hop_re", &self.t_hop_re),
            ("t_hop_im", &self.t_hop_im),
            ("space", &self.space),
            ("kondo_normalization", &self.kondo_normalization),
            ("initial", &self.initial),
            ("t_max", &self.t_max),
            ("steps", &self.steps),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                doc.insert(key.into(), override_value(key, v)?);
            }
        }
        if let Some(pair) = &self.bloch_pair {
            let parts: Vec<Value> = pair
                .split(',')
                .map(|s| Value::String(s.trim().into()))
                .collect();
            doc.insert("bloch_pair".into(), Value::Array(parts));
        }
        from_document(&doc)
    }
}

fn read_document(path: &Path) -> CliResult<Map<String, Value>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(CliError::Config(format!(
            "{}: top level must be a JSON object",
            path.display()
        ))),
        Err(e) => Err(CliError::Config(format!("{}: {e}", path.display()))),
    }
}

/// Numbers on the command line become JSON numbers; everything else stays a string.
fn override_value(key: &str, raw: &str) -> CliResult<Value> {
    match key {
        "s23" | "space" | "kondo_normalization" | "initial" => Ok(Value::String(raw.into())),
        _ => serde_json::from_str::<Value>(raw)
            .ok()
            .filter(Value::is_number)
            .ok_or_else(|| {
                CliError::Config(format!("field `{key}`: expected a number, got `{raw}`"))
            }),
    }
}

fn number(doc: &Map<String, Value>, key: &str) -> CliResult<Option<f64>> {
    match doc.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_f64()
            .filter(|x| x.is_finite())
            .map(Some)
            .ok_or_else(|| {
                CliError::Config(format!("field `{key}`: expected a finite number, got {v}"))
            }),
    }
}

fn string<'a>(doc: &'a Map<String, Value>, key: &str) -> CliResult<Option<&'a str>> {
    match doc.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(v) => Err(CliError::Config(format!(
            "field `{key}`: expected a string, got {v}"
        ))),
    }
}

/// Labels are model-level inputs: a bad label is a model error (exit 3).
fn label(s: &str) -> CliResult<DeviceLabel> {
    Ok(s.parse::<DeviceLabel>()?)
}

pub fn from_document(doc: &Map<String, Value>) -> CliResult<RunConfig> {
    if let Some(unknown) = doc.keys().find(|k| !FIELDS.contains(&k.as_str())) {
        return Err(CliError::Config(format!("unknown field `{unknown}`")));
    }
    let mut cfg = RunConfig::default();
    let p = &mut cfg.params;
    if let Some(s) = string(doc, "s23")? {
        p.s23 = match s {
            "1/2" => SpinQuantum::HALF,
            "1" => SpinQuantum::ONE,
            _ => {
                return Err(CliError::Config(format!(
                    "field `s23`: expected \"1/2\" or \"1\", got \"{s}\""
                )))
            }
        };
        if p.s23 == SpinQuantum::HALF {
            cfg.initial = DeviceLabel::down(1, 1);
        }
    }
    for (key, slot) in [
        ("j_h", &mut p.j_h),
        ("j_k2", &mut p.j_k2),
        ("j_k3", &mut p.j_k3),
        ("d", &mut p.d_anis),
    ] {
        if let Some(x) = number(doc, key)? {
            *slot = x;
        }
    }
    let re = number(doc, "t_hop_re")?.unwrap_or(0.0);
    let im = number(doc, "t_hop_im")?.unwrap_or(0.0);
    p.t_hop = Complex64::new(re, im);

    let kappa = match string(doc, "kondo_normalization")? {
        None | Some("matched") => KondoNormalization::Matched,
        Some("literal") => KondoNormalization::Literal,
        Some(s) => {
            return Err(CliError::Config(format!(
                "field `kondo_normalization`: expected \"matched\" or \"literal\", got \"{s}\""
            )))
        }
    };
    cfg.space = match string(doc, "space")? {
        None | Some("effective") => Space::Effective,
        Some("full") => Space::Full(kappa),
        Some(s) => {
            return Err(CliError::Config(format!(
                "field `space`: expected \"effective\" or \"full\", got \"{s}\""
            )))
        }
    };
    if let Some(t) = number(doc, "t_max")? {
        if t <= 0.0 {
            return Err(CliError::Config(format!(
                "field `t_max`: must be positive, got {t}"
            )));
        }
        cfg.t_max = t;
    }
    if let Some(v) = doc.get("steps") {
        cfg.steps = v.as_u64().filter(|&n| n >= 2).ok_or_else(|| {
            CliError::Config(format!("field `steps`: expected an integer ≥ 2, got {v}"))
        })? as usize;
    }
    if let Some(s) = string(doc, "initial")? {
        cfg.initial = label(s)?;
    }
    if let Some(v) = doc.get("bloch_pair") {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .and_then(|a| Some((a[0].as_str()?, a[1].as_str()?)))
            .ok_or_else(|| {
                CliError::Config(format!(
                    "field `bloch_pair`: expected two label strings, got {v}"
                ))
            })?;
        cfg.bloch_pair = Some((label(pair.0)?, label(pair.1)?));
    }
    cfg.params.validate()?;
    // Reject labels outside this spin's basis up front.
    let reg = djspin::model::device_basis(cfg.params.s23)?;
    reg.index_of_device(&cfg.initial)?;
    if let Some((a, b)) = cfg.bloch_pair {
        reg.index_of_device(&a)?;
        reg.index_of_device(&b)?;
    }
    Ok(cfg)
}
