//! Scenario configuration: command-line flags and flat key=value files.

use std::path::PathBuf;

use ratemeta::analytics::{InterferenceModel, NetworkParams};
use ratemeta::sim::SchemeKind;

use crate::CliError;

/// Axis specification for the output CCDF grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self, CliError> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(CliError::Usage(format!(
                "grid bounds must be finite with min < max, got [{min}, {max}]"
            )));
        }
        if points < 2 {
            return Err(CliError::Usage(format!(
                "grid needs at least 2 points, got {points}"
            )));
        }
        Ok(GridSpec { min, max, points })
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points)
            .map(|i| self.min + (self.max - self.min) * i as f64 / (self.points - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
}

impl Preset {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "fig1" => Ok(Preset::Fig1),
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            other => Err(CliError::Usage(format!(
                "unknown preset '{other}' (expected fig1, fig2 or fig3)"
            ))),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub lambda: f64,
    pub alpha: f64,
    pub packet_bits: f64,
    pub delay_budget: f64,
    pub scheme: SchemeKind,
    pub model: InterferenceModel,
    pub realizations: usize,
    pub seed: u64,
    pub grid: Option<GridSpec>,
    pub out_dir: PathBuf,
    pub preset: Option<Preset>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            lambda: 1.0,
            alpha: 3.0,
            packet_bits: 75.0,
            delay_budget: 200.0,
            scheme: SchemeKind::Rateless,
            model: InterferenceModel::ConstantInterference,
            realizations: 5000,
            seed: 1,
            grid: None,
            out_dir: PathBuf::from("out"),
            preset: None,
        }
    }
}

impl ScenarioConfig {
    /// Network parameters implied by the scalar fields; range violations
    /// surface as usage errors.
    pub fn network_params(&self) -> Result<NetworkParams, CliError> {
        NetworkParams::with_unit_power(self.lambda, self.alpha, self.packet_bits, self.delay_budget)
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.network_params()?;
        if self.realizations < 100 {
            return Err(CliError::Usage(format!(
                "simulation runs need at least 100 realizations, got {}",
                self.realizations
            )));
        }
        Ok(())
    }

    /// Serializes to the flat key=value format accepted back by
    /// [`parse_config`].
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("lambda={}\n", self.lambda));
        s.push_str(&format!("alpha={}\n", self.alpha));
        s.push_str(&format!("K={}\n", self.packet_bits));
        s.push_str(&format!("N={}\n", self.delay_budget));
        s.push_str(&format!("scheme={}\n", self.scheme));
        s.push_str(&format!("model={}\n", self.model));
        s.push_str(&format!("realizations={}\n", self.realizations));
        s.push_str(&format!("seed={}\n", self.seed));
        if let Some(g) = &self.grid {
            s.push_str(&format!("grid_min={}\n", g.min));
            s.push_str(&format!("grid_max={}\n", g.max));
            s.push_str(&format!("grid_points={}\n", g.points));
        }
        s.push_str(&format!("out={}\n", self.out_dir.display()));
        if let Some(p) = &self.preset {
            s.push_str(&format!("preset={}\n", p.name()));
        }
        s
    }

    fn apply(&mut self, key: &str, value: &str, grid: &mut PartialGrid) -> Result<(), CliError> {
        let bad = |what: &str| CliError::Usage(format!("invalid value '{value}' for {what}"));
        match key {
            "lambda" => self.lambda = value.parse().map_err(|_| bad("lambda"))?,
            "alpha" => self.alpha = value.parse().map_err(|_| bad("alpha"))?,
            "K" => self.packet_bits = value.parse().map_err(|_| bad("K"))?,
            "N" => self.delay_budget = value.parse().map_err(|_| bad("N"))?,
            "scheme" => {
                self.scheme = match value {
                    "rateless" => SchemeKind::Rateless,
                    "fixed" => SchemeKind::FixedRate,
                    "amc" => SchemeKind::Amc,
                    _ => {
                        return Err(CliError::Usage(format!(
                            "unknown scheme '{value}' (expected rateless, fixed or amc)"
                        )))
                    }
                }
            }
            "model" => {
                self.model = match value {
                    "ci" => InterferenceModel::ConstantInterference,
                    "tvi" => InterferenceModel::TimeVaryingItm,
                    _ => {
                        return Err(CliError::Usage(format!(
                            "unknown model '{value}' (expected ci or tvi)"
                        )))
                    }
                }
            }
            "realizations" => self.realizations = value.parse().map_err(|_| bad("realizations"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "grid_min" => grid.min = Some(value.parse().map_err(|_| bad("grid_min"))?),
            "grid_max" => grid.max = Some(value.parse().map_err(|_| bad("grid_max"))?),
            "grid_points" => grid.points = Some(value.parse().map_err(|_| bad("grid_points"))?),
            "out" => self.out_dir = PathBuf::from(value),
            "preset" => self.preset = Some(Preset::parse(value)?),
            other => {
                return Err(CliError::Usage(format!("unknown configuration key '{other}'")));
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct PartialGrid {
    min: Option<f64>,
    max: Option<f64>,
    points: Option<usize>,
}

impl PartialGrid {
    fn resolve(self, into: &mut ScenarioConfig) -> Result<(), CliError> {
        match (self.min, self.max, self.points) {
            (None, None, None) => Ok(()),
            (min, max, points) => {
                let base = into.grid.unwrap_or(GridSpec {
                    min: 0.0,
                    max: into.packet_bits / 10.0,
                    points: 201,
                });
                into.grid = Some(GridSpec::new(
                    min.unwrap_or(base.min),
                    max.unwrap_or(base.max),
                    points.unwrap_or(base.points),
                )?);
                Ok(())
            }
        }
    }
}

/// Parses a flat key=value configuration file body.
pub fn parse_config_str(body: &str) -> Result<ScenarioConfig, CliError> {
    let mut config = ScenarioConfig::default();
    let mut grid = PartialGrid::default();
    for (lineno, raw) in body.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("line {}: expected key=value, got '{line}'", lineno + 1))
        })?;
        config.apply(key.trim(), value.trim(), &mut grid)?;
    }
    grid.resolve(&mut config)?;
    config.validate()?;
    Ok(config)
}

/// Parses command-line arguments (after the program name). A single
/// positional argument names a key=value config file; flags override it.
pub fn parse_config(args: &[String]) -> Result<ScenarioConfig, CliError> {
    let mut config = ScenarioConfig::default();
    let mut grid = PartialGrid::default();
    let mut config_file: Option<PathBuf> = None;
    let mut overrides: Vec<(String, String)> = Vec::new();

    let mut it = args.iter();
    while let Some(arg) = it.next() {
        if let Some(flag) = arg.strip_prefix("--") {
            let key = match flag {
                "lambda" | "alpha" | "K" | "N" | "scheme" | "model" | "realizations" | "seed"
                | "out" | "preset" => flag.to_string(),
                "grid-min" => "grid_min".to_string(),
                "grid-max" => "grid_max".to_string(),
                "grid-points" => "grid_points".to_string(),
                other => {
                    return Err(CliError::Usage(format!("unknown flag '--{other}'")));
                }
            };
            let value = it
                .next()
                .ok_or_else(|| CliError::Usage(format!("flag '--{flag}' expects a value")))?;
            overrides.push((key, value.clone()));
        } else if config_file.is_none() {
            config_file = Some(PathBuf::from(arg));
        } else {
            return Err(CliError::Usage(format!(
                "unexpected extra positional argument '{arg}'"
            )));
        }
    }

    if let Some(path) = config_file {
        let body = std::fs::read_to_string(&path).map_err(|e| {
            CliError::Usage(format!("cannot read config file {}: {e}", path.display()))
        })?;
        config = parse_config_str(&body)?;
    }
    for (key, value) in &overrides {
        config.apply(key, value, &mut grid)?;
    }
    grid.resolve(&mut config)?;
    config.validate()?;
    Ok(config)
}
