use std::path::{Path, PathBuf};

use ddm::{Method, Ordering, Profile, RigSpec, RunConfig, Stabilization};
use discretization::YClosure;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// Environment variable overriding `[output] dir`.
pub const OUT_DIR_ENV: &str = "HARNESS_OUT_DIR";

pub const TABLE_MACHS: [f64; 10] = [0.001, 0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8];

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub grid: GridConfig,
    pub physics: PhysicsConfig,
    pub decomposition: DecompositionConfig,
    pub algorithm: AlgorithmConfig,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    pub closure: ClosureName,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureName {
    Wall,
    AntiPeriodic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicsConfig {
    pub mach: Vec<f64>,
    pub mt: f64,
    pub profile: ProfileName,
    pub cfl: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ProfileName {
    Constant,
    #[value(name = "mt_cos")]
    MtCos,
    #[value(name = "mn_tanh")]
    MnTanh,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecompositionConfig {
    pub strips: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgorithmConfig {
    pub method: MethodName,
    pub stabilization: StabilizationName,
    pub ordering: OrderingName,
    pub tol: f64,
    pub max_iter: usize,
    pub divergence: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MethodName {
    Classical,
    New,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StabilizationName {
    None,
    Laplacian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingName {
    Jacobi,
    GaussSeidel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { nx: 80, ny: 20, lx: 4.0, ly: 1.0, closure: ClosureName::Wall }
    }
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        Self { mach: TABLE_MACHS.to_vec(), mt: 0.0, profile: ProfileName::Constant, cfl: 100.0 }
    }
}

impl Default for DecompositionConfig {
    fn default() -> Self {
        Self { strips: 2 }
    }
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        let r = RunConfig::default();
        Self {
            method: MethodName::Both,
            stabilization: StabilizationName::Laplacian,
            ordering: OrderingName::GaussSeidel,
            tol: r.tol,
            max_iter: r.max_iter,
            divergence: r.divergence,
            seed: r.seed,
        }
    }
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: PathBuf::from("out") }
    }
}

impl From<ClosureName> for YClosure {
    fn from(c: ClosureName) -> Self {
        match c {
            ClosureName::Wall => YClosure::Wall,
            ClosureName::AntiPeriodic => YClosure::AntiPeriodic,
        }
    }
}

impl From<StabilizationName> for Stabilization {
    fn from(s: StabilizationName) -> Self {
        match s {
            StabilizationName::None => Stabilization::None,
            StabilizationName::Laplacian => Stabilization::Laplacian,
        }
    }
}

impl From<OrderingName> for Ordering {
    fn from(o: OrderingName) -> Self {
        match o {
            OrderingName::Jacobi => Ordering::Jacobi,
            OrderingName::GaussSeidel => Ordering::GaussSeidel,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self, HarnessError> {
        let cfg: Self = toml::from_str(text).map_err(|source| HarnessError::ConfigFile { path: path.to_path_buf(), source })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml(&text, path)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        let g = &self.grid;
        if g.nx < 2 || g.ny < 2 {
            return bad(format!("grid needs at least 2x2 cells, got {}x{}", g.nx, g.ny));
        }
        if !(g.lx > 0.0 && g.ly > 0.0) {
            return bad(format!("domain extents must be positive, got {} x {}", g.lx, g.ly));
        }
        let p = &self.physics;
        if !(p.cfl > 0.0 && p.cfl.is_finite()) {
            return bad(format!("cfl must be positive, got {}", p.cfl));
        }
        if p.mach.is_empty() && p.profile != ProfileName::MnTanh {
            return bad("physics.mach is empty".into());
        }
        for &mn in &p.mach {
            if !(mn > 0.0) {
                return bad(format!("normal Mach number must be positive, got {mn}"));
            }
            let mt = match p.profile {
                ProfileName::Constant => p.mt.abs(),
                ProfileName::MtCos => 0.2,
                ProfileName::MnTanh => 0.0,
            };
            if mn * mn + mt * mt >= 1.0 {
                return bad(format!("state (Mn {mn}, Mt {mt}) is not subsonic"));
            }
        }
        let d = &self.decomposition;
        if d.strips == 0 || d.strips > g.nx {
            return bad(format!("cannot cut {} columns into {} strips", g.nx, d.strips));
        }
        let a = &self.algorithm;
        if !(a.tol > 0.0 && a.tol < 1.0) {
            return bad(format!("tol must lie in (0, 1), got {}", a.tol));
        }
        if a.max_iter == 0 {
            return bad("max_iter must be positive".into());
        }
        if !(a.divergence > 1.0) {
            return bad(format!("divergence factor must exceed 1, got {}", a.divergence));
        }
        Ok(())
    }

    pub fn rig_spec(&self) -> RigSpec {
        RigSpec { nx: self.grid.nx, ny: self.grid.ny, lx: self.grid.lx, ly: self.grid.ly, cfl: self.physics.cfl, closure: self.grid.closure.into() }
    }

    pub fn profile(&self, mn: f64) -> Profile {
        match self.physics.profile {
            ProfileName::Constant => Profile::Constant { mn, mt: self.physics.mt },
            ProfileName::MtCos => Profile::MtCos { mn },
            ProfileName::MnTanh => Profile::MnTanh,
        }
    }

    /// Mach values to sweep; the tanh profile has a single built-in state.
    pub fn machs(&self) -> Vec<f64> {
        match self.physics.profile {
            ProfileName::MnTanh => vec![Profile::MnTanh.mach_at(0.0).0],
            _ => self.physics.mach.clone(),
        }
    }

    pub fn run_config(&self) -> RunConfig {
        let a = &self.algorithm;
        RunConfig { tol: a.tol, max_iter: a.max_iter, divergence: a.divergence, seed: a.seed }
    }

    pub fn new_method(&self) -> Method {
        Method::New { stabilization: self.algorithm.stabilization.into(), ordering: self.algorithm.ordering.into() }
    }

    pub fn methods(&self) -> Vec<Method> {
        match self.algorithm.method {
            MethodName::Classical => vec![Method::Classical],
            MethodName::New => vec![self.new_method()],
            MethodName::Both => vec![Method::Classical, self.new_method()],
        }
    }

    /// `[output] dir`, replaced by the environment override when set.
    pub fn resolve_out_dir(&mut self) {
        if let Some(dir) = std::env::var_os(OUT_DIR_ENV) {
            if !dir.is_empty() {
                self.output.dir = PathBuf::from(dir);
            }
        }
    }
}
