//! TOML experiment configuration. Every field has a documented default so a
//! config file only needs the values it changes.

use std::path::{Path, PathBuf};

use pmshock_core::perturb::Bump;
use pmshock_core::{FluxSpec, NumericalFlux};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Profile,
    Evolve,
    Decay,
    Semigroup,
    Inequalities,
    Regularized,
    Report,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Profile => "profile",
            Kind::Evolve => "evolve",
            Kind::Decay => "decay",
            Kind::Semigroup => "semigroup",
            Kind::Inequalities => "inequalities",
            Kind::Regularized => "regularized",
            Kind::Report => "report",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub x_left: f64,
    pub x_right: f64,
    pub dx: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { x_left: -80.0, x_right: 20.0, dx: 0.1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    /// `φ_0 = amplitude · B′`: zero mass, `Φ_0 = amplitude · B`.
    Derivative,
    /// `φ_0 = amplitude · B`.
    Bump,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PerturbationSpec {
    pub shape: Shape,
    pub center: f64,
    pub half_width: f64,
    pub amplitude: f64,
    /// For `shape = "bump"`: rescale `amplitude` so that `∫ φ_0 = mass`.
    pub mass: Option<f64>,
}

impl Default for PerturbationSpec {
    fn default() -> Self {
        PerturbationSpec { shape: Shape::Derivative, center: -4.0, half_width: 2.0, amplitude: 0.05, mass: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSpec {
    pub t_end: f64,
    pub safety: f64,
    pub numerical_flux: NumericalFlux,
    /// Geometric record times `first_record * record_ratio^k`.
    pub first_record: f64,
    pub record_ratio: f64,
    pub fit_window: (f64, f64),
    pub ps: Vec<f64>,
    pub region_times: Vec<f64>,
    pub c1: f64,
    pub q: f64,
    /// Repeat the region study at `dx / 2` up to the last region time.
    pub region_refinement: bool,
    pub profile_tol: f64,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec {
            t_end: 200.0,
            safety: 0.9,
            numerical_flux: NumericalFlux::Godunov,
            first_record: 1.0,
            record_ratio: 1.1,
            fit_window: (1.0, 200.0),
            ps: vec![2.0, 4.0, 8.0],
            region_times: vec![1.0, 5.0, 20.0, 50.0],
            c1: 0.05,
            q: 4.0,
            region_refinement: true,
            profile_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SemigroupSpec {
    pub seeds: u64,
    pub ms: Vec<f64>,
    pub dxs: Vec<f64>,
    pub half_width: f64,
    pub t_end: f64,
}

impl Default for SemigroupSpec {
    fn default() -> Self {
        SemigroupSpec { seeds: 50, ms: vec![1.1, 1.25, 4.0 / 3.0], dxs: vec![0.05, 0.1], half_width: 15.0, t_end: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InequalitySpec {
    pub mus_ab: Vec<f64>,
    pub mus_pow: Vec<f64>,
    pub samples_small: usize,
    pub samples_large: usize,
    pub members: usize,
    /// Grid points per half extent of each family member (doubled for the check).
    pub points: usize,
    /// `(p, m)` pairs for the first interpolation inequality.
    pub interp_103a: Vec<(f64, f64)>,
    pub interp_402a: Vec<(f64, f64)>,
    pub lemma_alphas: Vec<f64>,
    pub gauge_n: f64,
    pub gauge_samples: usize,
}

impl Default for InequalitySpec {
    fn default() -> Self {
        InequalitySpec {
            mus_ab: vec![1.0, 1.5, 2.0, 3.0],
            mus_pow: vec![0.1, 0.5, 0.9, 1.0],
            samples_small: 10_000,
            samples_large: 100_000,
            members: 20,
            points: 400,
            interp_103a: vec![(2.0, 1.25), (4.0, 1.1), (8.0, 4.0 / 3.0)],
            interp_402a: vec![(4.0, 1.25), (3.0, 1.5), (8.0, 1.9)],
            lemma_alphas: vec![0.5, 1.0, 2.0],
            gauge_n: 1.0,
            gauge_samples: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RegularizedSpec {
    pub ns: Vec<u32>,
    pub big_m: f64,
    pub dx: f64,
    pub window: f64,
    pub half_width: f64,
    pub t_end: f64,
    /// Initial data `u_0 = B`.
    pub data: Bump,
}

impl Default for RegularizedSpec {
    fn default() -> Self {
        RegularizedSpec {
            ns: vec![10, 40, 160],
            big_m: 1.0,
            dx: 0.05,
            window: 4.0,
            half_width: 20.0,
            t_end: 1.0,
            data: Bump { center: 0.0, half_width: 2.0, amplitude: 1.0 },
        }
    }
}

fn default_flux() -> FluxSpec {
    FluxSpec::Burgers
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    /// Overridden by the subcommand when run from the command line.
    pub kind: Option<Kind>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub m: f64,
    pub u_minus: f64,
    #[serde(default = "default_flux")]
    pub flux: FluxSpec,
    pub grid: GridSpec,
    pub perturbation: PerturbationSpec,
    pub run: RunSpec,
    pub semigroup: SemigroupSpec,
    pub inequalities: InequalitySpec,
    pub regularized: RegularizedSpec,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            kind: None,
            seed: 2024,
            out: None,
            m: 4.0 / 3.0,
            u_minus: 1.0,
            flux: FluxSpec::Burgers,
            grid: GridSpec::default(),
            perturbation: PerturbationSpec::default(),
            run: RunSpec::default(),
            semigroup: SemigroupSpec::default(),
            inequalities: InequalitySpec::default(),
            regularized: RegularizedSpec::default(),
        }
    }
}

/// Command-line values that replace config entries wherever they apply.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub dx: Option<f64>,
    pub m: Option<f64>,
    pub t_end: Option<f64>,
}

fn positive(field: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::config(field, format!("must be positive and finite, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn kind(&self) -> Result<Kind> {
        self.kind.ok_or_else(|| CliError::config("kind", "no experiment kind given"))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(out) = &o.out {
            self.out = Some(out.clone());
        }
        if let Some(seed) = o.seed {
            self.seed = seed;
        }
        if let Some(dx) = o.dx {
            self.grid.dx = dx;
            self.semigroup.dxs = vec![dx];
            self.regularized.dx = dx;
        }
        if let Some(m) = o.m {
            self.m = m;
            self.semigroup.ms = vec![m];
        }
        if let Some(t) = o.t_end {
            self.run.t_end = t;
            self.semigroup.t_end = t;
            self.regularized.t_end = t;
        }
    }

    /// Field-level checks; numerical admissibility of the initial data is
    /// checked when the data is built.
    pub fn validate(&self) -> Result<()> {
        let kind = self.kind()?;
        let m_ok = match kind {
            Kind::Profile => (1.0..2.0).contains(&self.m),
            _ => self.m > 1.0 && self.m < 2.0,
        };
        if !m_ok {
            let range = if kind == Kind::Profile { "[1, 2)" } else { "(1, 2); m = 1 is for profile oracle runs only" };
            return Err(CliError::config("m", format!("{} outside {range}", self.m)));
        }
        positive("u_minus", self.u_minus)?;
        self.flux.validate(self.u_minus).map_err(|e| CliError::config("flux", e.to_string()))?;
        if !(self.grid.x_left < 0.0 && self.grid.x_right > 0.0) {
            return Err(CliError::config("grid", "x_left < 0 < x_right required"));
        }
        positive("grid.dx", self.grid.dx)?;
        positive("perturbation.half_width", self.perturbation.half_width)?;
        if !(self.perturbation.amplitude >= 0.0) {
            return Err(CliError::config("perturbation.amplitude", "must be non-negative"));
        }
        if self.perturbation.mass.is_some() && self.perturbation.shape != Shape::Bump {
            return Err(CliError::config("perturbation.mass", "only meaningful for shape = \"bump\""));
        }
        positive("run.t_end", self.run.t_end)?;
        if !(self.run.safety > 0.0 && self.run.safety <= 1.0) {
            return Err(CliError::config("run.safety", "must lie in (0, 1]"));
        }
        positive("run.first_record", self.run.first_record)?;
        if !(self.run.record_ratio > 1.0) {
            return Err(CliError::config("run.record_ratio", "must exceed 1"));
        }
        if let Some(p) = self.run.ps.iter().find(|&&p| !(p >= 2.0)) {
            return Err(CliError::config("run.ps", format!("norm index {p} below 2")));
        }
        if kind == Kind::Decay && self.perturbation.shape != Shape::Derivative {
            return Err(CliError::config("perturbation.shape", "decay runs need a zero-mass (derivative) perturbation"));
        }
        if kind == Kind::Semigroup {
            if self.semigroup.seeds == 0 {
                return Err(CliError::config("semigroup.seeds", "at least one seed"));
            }
            if let Some(m) = self.semigroup.ms.iter().find(|&&m| !(m > 1.0 && m < 2.0)) {
                return Err(CliError::config("semigroup.ms", format!("{m} outside (1, 2)")));
            }
            for &dx in &self.semigroup.dxs {
                positive("semigroup.dxs", dx)?;
            }
            positive("semigroup.t_end", self.semigroup.t_end)?;
        }
        if kind == Kind::Regularized {
            let r = &self.regularized;
            positive("regularized.dx", r.dx)?;
            positive("regularized.t_end", r.t_end)?;
            if r.big_m < r.data.amplitude {
                return Err(CliError::config("regularized.big_m", "must bound the data amplitude"));
            }
            if r.ns.iter().any(|&n| (n as f64) < r.window + 2.0) {
                return Err(CliError::config("regularized.ns", "every n must exceed window + 2"));
            }
        }
        if kind == Kind::Inequalities {
            let q = &self.inequalities;
            if q.samples_small == 0 || q.samples_small > q.samples_large {
                return Err(CliError::config("inequalities.samples_small", "need 0 < samples_small <= samples_large"));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, without the output directory.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.out = None;
        let bytes = serde_json::to_vec(&c).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| match self.kind {
            Some(Kind::Report) => PathBuf::from("out"),
            k => PathBuf::from("out").join(k.map_or("run", |k| k.name())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_takes_defaults() {
        let c = ExperimentConfig::from_toml("kind = \"decay\"").unwrap();
        assert_eq!(c.kind, Some(Kind::Decay));
        assert_eq!(c.grid, GridSpec::default());
        assert_eq!(c.flux, FluxSpec::Burgers);
        c.validate().unwrap();
    }

    #[test]
    fn sections_parse() {
        let text = r#"
kind = "profile"
m = 1.0
[flux]
kind = "quadratic"
coef = 2.0
[grid]
x_left = -30.0
x_right = 30.0
[run]
numerical_flux = "engquist-osher"
"#;
        let c = ExperimentConfig::from_toml(text).unwrap();
        assert_eq!(c.flux, FluxSpec::Quadratic { coef: 2.0 });
        assert_eq!(c.run.numerical_flux, NumericalFlux::EngquistOsher);
        assert_eq!(c.grid.dx, 0.1);
        c.validate().unwrap();
    }

    #[test]
    fn field_diagnostics() {
        let bad = |text: &str, field: &str| match ExperimentConfig::from_toml(text).and_then(|c| c.validate()) {
            Err(CliError::Config { field: f, .. }) => assert_eq!(f, field, "{text}"),
            other => panic!("{text}: {other:?}"),
        };
        bad("kind = \"decay\"\nm = 1.0", "m");
        bad("kind = \"evolve\"\nu_minus = -1.0", "u_minus");
        bad("kind = \"decay\"\n[perturbation]\nshape = \"bump\"", "perturbation.shape");
        bad("kind = \"evolve\"\n[grid]\ndx = 0.0", "grid.dx");
        bad("m = 1.2", "kind");
        assert!(matches!(ExperimentConfig::from_toml("kind = \"decay\"\nbogus = 1"), Err(CliError::Toml(_))));
    }

    #[test]
    fn overrides_reach_every_section() {
        let mut c = ExperimentConfig::default();
        c.apply(&Overrides { dx: Some(0.05), m: Some(1.2), t_end: Some(3.0), seed: Some(9), out: None });
        assert_eq!(c.semigroup.dxs, vec![0.05]);
        assert_eq!(c.semigroup.ms, vec![1.2]);
        assert_eq!(c.regularized.t_end, 3.0);
        assert_eq!(c.seed, 9);
    }

    #[test]
    fn hash_ignores_out_dir() {
        let a = ExperimentConfig::default();
        let mut b = a.clone();
        b.out = Some("elsewhere".into());
        assert_eq!(a.hash(), b.hash());
        b.m = 1.2;
        assert_ne!(a.hash(), b.hash());
    }
}
