//! Declarative scene configuration. One JSON document describes the
//! system, the potential, and every numeric schedule; unknown keys
//! are rejected so a typo cannot silently fall back to a default.

use crate::distribution::RadiusSchedule;
use crate::error::{Error, Result};
use crate::ifs::{BranchMap, IfsDefinition, IfsSpec};
use crate::symbolic::PotentialSpec;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BranchConfig {
    Affine { ratio: f64, offset: f64 },
    Moebius { a: f64, b: f64, c: f64, d: f64 },
}

impl BranchConfig {
    pub fn build(&self) -> Result<BranchMap> {
        match *self {
            BranchConfig::Affine { ratio, offset } => BranchMap::affine(ratio, offset),
            BranchConfig::Moebius { a, b, c, d } => BranchMap::moebius(a, b, c, d),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IfsConfig {
    pub branches: Vec<BranchConfig>,
    #[serde(default)]
    pub hull: Option<(f64, f64)>,
    #[serde(default)]
    pub osc: Option<(f64, f64)>,
}

impl IfsConfig {
    pub fn definition(&self) -> Result<IfsDefinition> {
        let branches = self
            .branches
            .iter()
            .map(BranchConfig::build)
            .collect::<Result<Vec<_>>>()?;
        Ok(IfsDefinition::new(branches, self.hull, self.osc))
    }

    pub fn build(&self) -> Result<IfsSpec> {
        self.definition()?.build()
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    SymbolLogWeights { weights: Vec<f64> },
    LocallyConstant { depth: usize, table: Vec<f64> },
    Geometric,
}

impl PotentialConfig {
    pub fn build(&self, ifs: &IfsSpec) -> Result<PotentialSpec> {
        match self {
            PotentialConfig::SymbolLogWeights { weights } => {
                PotentialSpec::symbol_log_weights(ifs.alphabet(), weights.clone())
            }
            PotentialConfig::LocallyConstant { depth, table } => {
                PotentialSpec::locally_constant(ifs.alphabet(), *depth, table.clone())
            }
            PotentialConfig::Geometric => Ok(PotentialSpec::geometric(ifs.clone())),
        }
    }
}

/// Uniform grid min, min+step, ..., max.
#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { min: -20.0, max: 20.0, step: 0.1 }
    }
}

impl GridConfig {
    pub fn materialize(&self) -> Result<Vec<f64>> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::invalid("grid step must be positive"));
        }
        if !(self.min <= self.max) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::invalid("grid needs finite min <= max"));
        }
        let count = ((self.max - self.min) / self.step + 0.5).floor() as usize + 1;
        if count > 100_000 {
            return Err(Error::invalid(format!("grid of {count} points is too large")));
        }
        Ok((0..count).map(|k| self.min + k as f64 * self.step).collect())
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DepthsConfig {
    #[serde(default)]
    pub pressure: Option<usize>,
    #[serde(default)]
    pub measure: Option<usize>,
    #[serde(default)]
    pub staircase: Option<usize>,
    #[serde(default)]
    pub coarse: Option<usize>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleConfig {
    pub r0: f64,
    pub rho: f64,
    pub count: usize,
    pub window: usize,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig { r0: 0.5, rho: 0.5, count: 20, window: 3 }
    }
}

impl ScheduleConfig {
    pub fn build(&self) -> Result<RadiusSchedule> {
        let s = RadiusSchedule {
            r0: self.r0,
            rho: self.rho,
            count: self.count,
            window: self.window,
        };
        s.validate()?;
        Ok(s)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub ifs: IfsConfig,
    #[serde(default)]
    pub ifs_g: Option<IfsConfig>,
    #[serde(default)]
    pub potential: Option<PotentialConfig>,
    #[serde(default)]
    pub beta_grid: Option<GridConfig>,
    #[serde(default)]
    pub depths: DepthsConfig,
    #[serde(default)]
    pub q_grid: Option<Vec<f64>>,
    #[serde(default)]
    pub radius_schedule: Option<ScheduleConfig>,
    #[serde(default)]
    pub out_dir: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl SceneConfig {
    pub fn from_json(raw: &str) -> Result<Self> {
        serde_json::from_str(raw)
            .map_err(|e| Error::Validation(format!("config parse: {e}")))
    }

    pub fn beta_values(&self) -> Result<Vec<f64>> {
        self.beta_grid.unwrap_or_default().materialize()
    }

    pub fn q_values(&self) -> Result<Vec<f64>> {
        let q = self
            .q_grid
            .clone()
            .unwrap_or_else(|| vec![-2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
        if q.is_empty() || q.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("q grid must be nonempty and finite"));
        }
        if q.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("q grid must be strictly increasing"));
        }
        Ok(q)
    }

    pub fn schedule(&self) -> Result<RadiusSchedule> {
        self.radius_schedule.unwrap_or_default().build()
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// The potential is required by every pipeline except validation
    /// and conjugacy.
    pub fn potential_for(&self, ifs: &IfsSpec) -> Result<PotentialSpec> {
        let p = self
            .potential
            .as_ref()
            .ok_or_else(|| Error::invalid("config needs a potential for this command"))?;
        p.build(ifs)
    }

    /// Depth of the locally constant tables fed to the pressure
    /// solver: the configured value, raised to any exact depth the
    /// potentials carry so exact data stays exact.
    pub fn pressure_depth(&self, phi: &PotentialSpec, psi: &PotentialSpec) -> usize {
        let base = self.depths.pressure.unwrap_or(6);
        base.max(phi.value_depth().unwrap_or(1))
            .max(psi.value_depth().unwrap_or(1))
    }

    pub fn measure_depth(&self, psi: &PotentialSpec) -> usize {
        self.depths
            .measure
            .unwrap_or_else(|| psi.value_depth().unwrap_or(4))
    }

    pub fn staircase_depth(&self) -> usize {
        self.depths.staircase.unwrap_or(10)
    }

    pub fn coarse_depth(&self) -> usize {
        self.depths.coarse.unwrap_or(10)
    }
}

/// Hex digest of the raw config bytes, stamped into every artifact so
/// outputs can be traced to their inputs.
pub fn config_digest(raw: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(raw.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}
