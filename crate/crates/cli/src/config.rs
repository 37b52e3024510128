//! Run configuration: HI defaults, strict `key = value` config files, and
//! command-line overrides (CLI > file > defaults).

use std::fmt;
use std::path::PathBuf;

use morsepack::morse::{MoleculeParams, SpatialGrid};
use morsepack::phasespace::MomentumGrid;
use morsepack::revival::Timescales;

use crate::CliError;

/// A requested time: absolute in atomic units, or a coprime fraction r/q of
/// the revival time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeSpec {
    Absolute(f64),
    Fraction(u32, u32),
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl TimeSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let r: u32 = num.trim().parse().map_err(|_| bad_time(text))?;
            let q: u32 = den.trim().parse().map_err(|_| bad_time(text))?;
            if q == 0 {
                return Err(bad_time(text));
            }
            if gcd(r, q) != 1 {
                return Err(CliError::Validation(format!(
                    "time fraction `{text}` is not in lowest terms"
                )));
            }
            Ok(TimeSpec::Fraction(r, q))
        } else {
            let t: f64 = text.parse().map_err(|_| bad_time(text))?;
            if !t.is_finite() || t < 0.0 {
                return Err(CliError::Validation(format!(
                    "time `{text}` must be finite and nonnegative"
                )));
            }
            Ok(TimeSpec::Absolute(t))
        }
    }

    /// Time in atomic units.
    pub fn resolve(&self, timescales: &Timescales) -> f64 {
        match self {
            TimeSpec::Absolute(t) => *t,
            TimeSpec::Fraction(r, q) => timescales.t_revival() * *r as f64 / *q as f64,
        }
    }

    /// Filesystem-safe label for output names.
    pub fn label(&self) -> String {
        match self {
            TimeSpec::Absolute(t) => format!("{t}"),
            TimeSpec::Fraction(r, q) => format!("{r}over{q}"),
        }
    }
}

impl fmt::Display for TimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeSpec::Absolute(t) => write!(f, "{t}"),
            TimeSpec::Fraction(r, q) => write!(f, "{r}/{q} T_rev"),
        }
    }
}

fn bad_time(text: &str) -> CliError {
    CliError::Validation(format!(
        "cannot parse time `{text}`: expected a nonnegative number or a fraction r/q"
    ))
}

/// Fully merged run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub dissociation: f64,
    pub beta: f64,
    pub reduced_mass: f64,
    pub r0: f64,
    pub alphas: Vec<f64>,
    pub times: Vec<TimeSpec>,
    pub grid_points: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub p_points: usize,
    pub p_max: f64,
    pub out: PathBuf,
    pub precision: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let hi = MoleculeParams::hydrogen_iodide();
        let grid = SpatialGrid::default_coherent();
        let p_axis = MomentumGrid::default_coherent();
        Self {
            dissociation: hi.dissociation(),
            beta: hi.beta(),
            reduced_mass: hi.reduced_mass(),
            r0: hi.r0(),
            alphas: vec![1.4],
            times: Vec::new(),
            grid_points: grid.len(),
            x_min: grid.x_min(),
            x_max: grid.x_max(),
            p_points: p_axis.len(),
            p_max: p_axis.p_max(),
            out: PathBuf::from("out"),
            precision: 12,
        }
    }
}

impl RunConfig {
    /// Applies a `key = value` config file. Unknown keys abort before any
    /// computation.
    pub fn apply_file(&mut self, text: &str, path: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Validation(format!(
                    "{path}:{}: expected `key = value`, got `{line}`",
                    lineno + 1
                ))
            })?;
            let key = key.trim();
            let value = value.trim();
            let parse_f64 = |what: &str| -> Result<f64, CliError> {
                value.parse::<f64>().map_err(|_| {
                    CliError::Validation(format!(
                        "{path}:{}: cannot parse `{value}` as a number for `{what}`",
                        lineno + 1
                    ))
                })
            };
            let parse_usize = |what: &str| -> Result<usize, CliError> {
                value.parse::<usize>().map_err(|_| {
                    CliError::Validation(format!(
                        "{path}:{}: cannot parse `{value}` as an integer for `{what}`",
                        lineno + 1
                    ))
                })
            };
            match key {
                "d" => self.dissociation = parse_f64("d")?,
                "beta" => self.beta = parse_f64("beta")?,
                "mu" => self.reduced_mass = parse_f64("mu")?,
                "r0" => self.r0 = parse_f64("r0")?,
                "alpha" => {
                    self.alphas = value
                        .split(',')
                        .map(|item| {
                            item.trim().parse::<f64>().map_err(|_| {
                                CliError::Validation(format!(
                                    "{path}:{}: cannot parse alpha `{}`",
                                    lineno + 1,
                                    item.trim()
                                ))
                            })
                        })
                        .collect::<Result<_, _>>()?;
                }
                "time" => {
                    self.times = value
                        .split(',')
                        .map(TimeSpec::parse)
                        .collect::<Result<_, _>>()?;
                }
                "grid_points" => self.grid_points = parse_usize("grid_points")?,
                "x_min" => self.x_min = parse_f64("x_min")?,
                "x_max" => self.x_max = parse_f64("x_max")?,
                "p_points" => self.p_points = parse_usize("p_points")?,
                "p_max" => self.p_max = parse_f64("p_max")?,
                "out" => self.out = PathBuf::from(value),
                "precision" => self.precision = parse_usize("precision")?,
                unknown => {
                    return Err(CliError::Validation(format!(
                        "{path}:{}: unknown configuration key `{unknown}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn molecule(&self) -> Result<MoleculeParams, CliError> {
        MoleculeParams::new(self.dissociation, self.beta, self.reduced_mass, self.r0)
            .map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn grid(&self) -> Result<SpatialGrid, CliError> {
        SpatialGrid::new(self.x_min, self.x_max, self.grid_points)
            .map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn momentum_grid(&self) -> Result<MomentumGrid, CliError> {
        MomentumGrid::symmetric(self.p_max, self.p_points)
            .map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.molecule()?;
        self.grid()?;
        self.momentum_grid()?;
        if self.alphas.is_empty() {
            return Err(CliError::Validation("at least one alpha is required".into()));
        }
        for &alpha in &self.alphas {
            if !alpha.is_finite() || alpha < 0.0 {
                return Err(CliError::Validation(format!(
                    "alpha must be finite and nonnegative, got {alpha}"
                )));
            }
        }
        if self.precision == 0 || self.precision > 17 {
            return Err(CliError::Validation(format!(
                "precision must be between 1 and 17 digits, got {}",
                self.precision
            )));
        }
        Ok(())
    }

    /// Times to use, falling back to the landmark fractions
    /// {0, 1/8, 1/4, 1/2} of T_rev when none were requested.
    pub fn times_or_default(&self) -> Vec<TimeSpec> {
        if self.times.is_empty() {
            vec![
                TimeSpec::Absolute(0.0),
                TimeSpec::Fraction(1, 8),
                TimeSpec::Fraction(1, 4),
                TimeSpec::Fraction(1, 2),
            ]
        } else {
            self.times.clone()
        }
    }
}
