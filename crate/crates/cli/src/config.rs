//! Experiment configuration: a JSON document whose keys double as flags.
//!
//! Every key is optional. Values from `--config <file>` are read first and
//! any flag given on the command line replaces the file value.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use majprop::algebra::format;
use majprop::hamiltonian::{build_hubbard_1d, build_hubbard_2d, greedy_color_partition};
use majprop::propagation::{MpConfig, TruncationMode, DEFAULT_TERM_CAP};
use majprop::states::{antiferromagnetic_hole_pattern, hole_density_observable, number_operator};
use majprop::{fermion, MajoranaPolynomial, MajoranaString, ProductState, QuarticHamiltonian, TrotterSchedule};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Hubbard1d,
    Hubbard2d,
    File,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// hubbard1d, hubbard2d or file.
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Chain length (1D) or side length (2D).
    #[arg(long)]
    pub size: Option<usize>,
    /// On-site interaction strengths, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub u: Option<Vec<f64>>,
    /// Close the 1D chain into a ring.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub periodic: Option<bool>,
    /// Hamiltonian JSON file for `model = file`.
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
    /// Snapshot times for fig1.
    #[arg(long, value_delimiter = ',')]
    pub times: Option<Vec<f64>>,
    /// Evolution horizon.
    #[arg(long = "t_max")]
    pub t_max: Option<f64>,
    #[arg(long = "delta_t")]
    pub delta_t: Option<f64>,
    /// Truncation degrees, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub ell: Option<Vec<usize>>,
    #[arg(long = "prune_eps")]
    pub prune_eps: Option<f64>,
    /// Pruning threshold of the untruncated fig1 reference.
    #[arg(long = "reference_prune_eps")]
    pub reference_prune_eps: Option<f64>,
    /// per_rotation or per_sweep.
    #[arg(long = "truncation_mode")]
    pub truncation_mode: Option<TruncationMode>,
    /// pair:<j>, number:<j>, hole:<site>, string:<hex> or file:<path>.
    #[arg(long)]
    pub observable: Option<String>,
    /// afm_hole or an occupation bitstring (mode 0 leftmost).
    #[arg(long)]
    pub state: Option<String>,
    /// Compare against the dense oracle when the system is small enough.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub oracle: Option<bool>,
    /// Grid points for the best-truncation error.
    #[arg(long = "eta_grid")]
    pub eta_grid: Option<usize>,
    #[arg(long = "term_cap")]
    pub term_cap: Option<usize>,
    /// Random seed for verify.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random observables drawn by the verify commutator suite.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    #[serde(skip_serializing)]
    pub output: Option<PathBuf>,
    /// Worker threads (0 = all cores). Does not change results.
    #[arg(long)]
    #[serde(skip_serializing)]
    pub threads: Option<usize>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident, $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::config(format!("invalid config: {e}")))
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// `self` with every value set in `flags` replaced.
    pub fn overlay(mut self, flags: &ExperimentConfig) -> Self {
        overlay!(
            self, flags, model, size, u, periodic, hamiltonian, times, t_max, delta_t, ell, prune_eps,
            reference_prune_eps, truncation_mode, observable, state, oracle, eta_grid, term_cap, seed, samples,
            output, threads
        );
        self
    }

    /// Compact JSON of the values that determine the results.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    fn reject<T>(&self, key: &str, value: &Option<T>, command: &str) -> CliResult<()> {
        if value.is_some() {
            return Err(CliError::config(format!("key `{key}` is not used by `{command}`")));
        }
        Ok(())
    }
}

fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(format!("{name} must be positive, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> CliResult<f64> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(format!("{name} must be nonnegative, got {v}")))
    }
}

/// A built Hamiltonian together with its lattice description.
#[derive(Clone, Debug)]
pub struct Model {
    pub kind: ModelKind,
    pub size: usize,
    pub u: f64,
    pub periodic: bool,
    pub source: Option<PathBuf>,
    pub n_sites: usize,
    pub hamiltonian: QuarticHamiltonian,
    pub schedule: TrotterSchedule,
}

impl Model {
    pub fn build(kind: ModelKind, size: usize, u: f64, periodic: bool, file: Option<&Path>) -> CliResult<Self> {
        let hamiltonian = match kind {
            ModelKind::Hubbard1d => build_hubbard_1d(size, u, periodic),
            ModelKind::Hubbard2d => build_hubbard_2d(size, u),
            ModelKind::File => {
                let path = file.ok_or_else(|| CliError::config("model `file` needs `hamiltonian`"))?;
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
                QuarticHamiltonian::from_json(&text)
            }
        }
        .map_err(|e| CliError::config(e.to_string()))?;
        let n_sites = match kind {
            ModelKind::Hubbard1d => size,
            ModelKind::Hubbard2d => size * size,
            ModelKind::File => hamiltonian.n_modes() / 4,
        };
        let schedule = greedy_color_partition(&hamiltonian);
        Ok(Self { kind, size, u, periodic, source: file.map(Path::to_path_buf), n_sites, hamiltonian, schedule })
    }

    pub fn n_modes(&self) -> usize {
        self.hamiltonian.n_modes()
    }

    fn describe(&self, map: &mut Map<String, Value>) {
        map.insert("model".into(), json!(self.kind));
        match self.kind {
            ModelKind::File => {
                map.insert("hamiltonian".into(), json!(self.source));
            }
            _ => {
                map.insert("size".into(), json!(self.size));
                map.insert("periodic".into(), json!(self.periodic));
            }
        }
    }
}

fn describe_mp(mp: &MpConfig, map: &mut Map<String, Value>) {
    map.insert("delta_t".into(), json!(mp.delta_t));
    map.insert("prune_eps".into(), json!(mp.prune_eps));
    map.insert("truncation_mode".into(), json!(mp.truncation_mode));
    map.insert("term_cap".into(), json!(mp.term_cap));
}

/// Parse an observable spec against a model.
pub fn parse_observable(spec: &str, model: &Model) -> CliResult<MajoranaPolynomial> {
    let n = model.n_modes();
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| CliError::config(format!("observable `{spec}` must look like kind:argument")))?;
    let index = || -> CliResult<usize> {
        arg.parse().map_err(|_| CliError::config(format!("observable `{spec}`: `{arg}` is not an index")))
    };
    let fermion_mode = |j: usize| -> CliResult<usize> {
        if 2 * j + 1 < n {
            Ok(j)
        } else {
            Err(CliError::config(format!("observable `{spec}`: mode {j} out of range for N={n}")))
        }
    };
    let one = Complex64::new(1.0, 0.0);
    match kind {
        "pair" => Ok(MajoranaPolynomial::monomial(n, fermion::pair_string(fermion_mode(index()?)?), one)),
        "number" => Ok(number_operator(fermion_mode(index()?)?, n)),
        "hole" => {
            if model.kind == ModelKind::File {
                return Err(CliError::config("hole observables need a lattice model"));
            }
            hole_density_observable(index()?, model.n_sites).map_err(|e| CliError::config(e.to_string()))
        }
        "string" => {
            let s = MajoranaString::from_hex(arg).map_err(|e| CliError::config(e.to_string()))?;
            MajoranaPolynomial::from_terms(n, [(s, one)]).map_err(|e| CliError::config(e.to_string()))
        }
        "file" => {
            let text = std::fs::read_to_string(arg)
                .map_err(|e| CliError::config(format!("cannot read {arg}: {e}")))?;
            let p = format::from_text(&text).map_err(|e| CliError::config(e.to_string()))?;
            if p.n_modes() != n {
                return Err(CliError::config(format!("observable has N={}, model has N={n}", p.n_modes())));
            }
            Ok(p)
        }
        _ => Err(CliError::config(format!("unknown observable kind `{kind}`"))),
    }
}

pub fn parse_state(spec: &str, model: &Model) -> CliResult<ProductState> {
    let state = if spec == "afm_hole" {
        if model.kind == ModelKind::File {
            return Err(CliError::config("afm_hole needs a lattice model"));
        }
        antiferromagnetic_hole_pattern(model.n_sites).map_err(|e| CliError::config(e.to_string()))?
    } else {
        spec.parse::<ProductState>().map_err(|e| CliError::config(e.to_string()))?
    };
    if state.n_majorana() != model.n_modes() {
        return Err(CliError::config(format!(
            "state has {} fermionic modes, model has {}",
            state.len(),
            model.n_modes() / 2
        )));
    }
    Ok(state)
}

/// Default observable for fig1: the pair string of the spin-up orbital on
/// site `⌈L/2⌉ - 1` (0-based).
pub fn default_fig1_observable(size: usize) -> String {
    format!("pair:{}", 2 * (size.div_ceil(2) - 1))
}

/// Row-major index of the central site; defined for odd site counts.
pub fn central_site(n_sites: usize) -> CliResult<usize> {
    if n_sites % 2 == 0 {
        return Err(CliError::config(format!("no central site on {n_sites} sites; use an odd size")));
    }
    Ok((n_sites - 1) / 2)
}

fn single_u(cfg: &ExperimentConfig, default: f64, command: &str) -> CliResult<f64> {
    match cfg.u.as_deref() {
        None => Ok(default),
        Some([u]) => Ok(*u),
        Some(_) => Err(CliError::config(format!("`{command}` takes exactly one value of `u`"))),
    }
}

fn mp_config(delta_t: f64, ell: usize, prune_eps: f64, mode: TruncationMode, term_cap: usize) -> MpConfig {
    let mut c = MpConfig::new(delta_t, ell);
    c.prune_eps = prune_eps;
    c.truncation_mode = mode;
    c.term_cap = term_cap;
    c
}

fn ell_list(cfg: &ExperimentConfig) -> CliResult<Vec<usize>> {
    let ell = cfg.ell.clone().unwrap_or_else(|| vec![4, 6, 8, 10]);
    if ell.is_empty() {
        return Err(CliError::config("`ell` must not be empty"));
    }
    Ok(ell)
}

#[derive(Clone, Debug)]
pub struct Fig1Settings {
    pub model: Model,
    pub observable_spec: String,
    pub observable: MajoranaPolynomial,
    pub times: Vec<f64>,
    pub ells: Vec<usize>,
    pub mp: MpConfig,
    pub reference_prune_eps: f64,
}

#[derive(Clone, Debug)]
pub struct Fig2Settings {
    pub models: Vec<Model>,
    pub observable_spec: String,
    pub state_spec: String,
    pub t_max: f64,
    pub ells: Vec<usize>,
    pub mp: MpConfig,
    pub oracle: bool,
}

#[derive(Clone, Debug)]
pub struct PropagateSettings {
    pub model: Model,
    pub observable_spec: String,
    pub observable: MajoranaPolynomial,
    pub t_max: f64,
    pub mp: MpConfig,
}

#[derive(Clone, Debug)]
pub struct VerifySettings {
    pub seed: u64,
    pub samples: usize,
    pub eta_grid: usize,
}

impl ExperimentConfig {
    pub fn fig1(&self) -> CliResult<Fig1Settings> {
        for (k, v) in [("t_max", self.t_max.is_some()), ("state", self.state.is_some())] {
            self.reject(k, &v.then_some(()), "fig1")?;
        }
        self.reject("oracle", &self.oracle, "fig1")?;
        self.reject("eta_grid", &self.eta_grid, "fig1")?;
        self.reject("seed", &self.seed, "fig1")?;
        self.reject("samples", &self.samples, "fig1")?;
        let kind = self.model.unwrap_or(ModelKind::Hubbard1d);
        if kind == ModelKind::Hubbard2d {
            return Err(CliError::config("fig1 runs on 1D models"));
        }
        let size = self.size.unwrap_or(6);
        let u = single_u(self, 1.0, "fig1")?;
        let model = Model::build(kind, size, u, self.periodic.unwrap_or(false), self.hamiltonian.as_deref())?;
        let spec = self.observable.clone().unwrap_or_else(|| default_fig1_observable(size));
        let observable = parse_observable(&spec, &model)?;
        let delta_t = positive("delta_t", self.delta_t.unwrap_or(0.01))?;
        let times = self.times.clone().unwrap_or_else(|| vec![0.2, 0.4]);
        if times.is_empty() {
            return Err(CliError::config("`times` must not be empty"));
        }
        for &t in &times {
            positive("times", t)?;
            let steps = t / delta_t;
            if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
                return Err(CliError::config(format!("time {t} is not a multiple of delta_t = {delta_t}")));
            }
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::config("`times` must be strictly increasing"));
        }
        let prune = nonnegative("prune_eps", self.prune_eps.unwrap_or(1e-12))?;
        let reference_prune_eps = nonnegative("reference_prune_eps", self.reference_prune_eps.unwrap_or(1e-12))?;
        let mp = mp_config(
            delta_t,
            0,
            prune,
            self.truncation_mode.unwrap_or_default(),
            self.term_cap.unwrap_or(DEFAULT_TERM_CAP),
        );
        Ok(Fig1Settings { model, observable_spec: spec, observable, times, ells: ell_list(self)?, mp, reference_prune_eps })
    }

    pub fn fig2(&self) -> CliResult<Fig2Settings> {
        self.reject("times", &self.times, "fig2")?;
        self.reject("reference_prune_eps", &self.reference_prune_eps, "fig2")?;
        self.reject("seed", &self.seed, "fig2")?;
        self.reject("samples", &self.samples, "fig2")?;
        self.reject("eta_grid", &self.eta_grid, "fig2")?;
        let kind = self.model.unwrap_or(ModelKind::Hubbard2d);
        if kind == ModelKind::File {
            return Err(CliError::config("fig2 runs on lattice models"));
        }
        let size = self.size.unwrap_or(3);
        let us = self.u.clone().unwrap_or_else(|| vec![0.0, 1.0]);
        if us.is_empty() {
            return Err(CliError::config("`u` must not be empty"));
        }
        let models = us
            .iter()
            .map(|&u| Model::build(kind, size, u, self.periodic.unwrap_or(false), None))
            .collect::<CliResult<Vec<_>>>()?;
        let centre = central_site(models[0].n_sites)?;
        let observable_spec = self.observable.clone().unwrap_or_else(|| format!("hole:{centre}"));
        let state_spec = self.state.clone().unwrap_or_else(|| "afm_hole".into());
        parse_observable(&observable_spec, &models[0])?;
        parse_state(&state_spec, &models[0])?;
        let mp = mp_config(
            positive("delta_t", self.delta_t.unwrap_or(0.02))?,
            0,
            nonnegative("prune_eps", self.prune_eps.unwrap_or(1e-5))?,
            self.truncation_mode.unwrap_or_default(),
            self.term_cap.unwrap_or(DEFAULT_TERM_CAP),
        );
        Ok(Fig2Settings {
            models,
            observable_spec,
            state_spec,
            t_max: nonnegative("t_max", self.t_max.unwrap_or(1.0))?,
            ells: ell_list(self)?,
            mp,
            oracle: self.oracle.unwrap_or(true),
        })
    }

    pub fn propagate(&self) -> CliResult<PropagateSettings> {
        self.reject("times", &self.times, "propagate")?;
        self.reject("seed", &self.seed, "propagate")?;
        self.reject("samples", &self.samples, "propagate")?;
        let kind = self.model.unwrap_or(ModelKind::Hubbard1d);
        let size = self.size.unwrap_or(3);
        let u = single_u(self, 1.0, "propagate")?;
        let model = Model::build(kind, size, u, self.periodic.unwrap_or(false), self.hamiltonian.as_deref())?;
        let spec = self.observable.clone().unwrap_or_else(|| default_fig1_observable(size));
        let observable = parse_observable(&spec, &model)?;
        let ell = match self.ell.as_deref() {
            None => model.n_modes(),
            Some([l]) => *l,
            Some(_) => return Err(CliError::config("`propagate` takes exactly one value of `ell`")),
        };
        let mp = mp_config(
            positive("delta_t", self.delta_t.unwrap_or(0.01))?,
            ell,
            nonnegative("prune_eps", self.prune_eps.unwrap_or(0.0))?,
            self.truncation_mode.unwrap_or_default(),
            self.term_cap.unwrap_or(DEFAULT_TERM_CAP),
        );
        Ok(PropagateSettings { model, observable_spec: spec, observable, t_max: nonnegative("t_max", self.t_max.unwrap_or(1.0))?, mp })
    }

    pub fn model_only(&self) -> CliResult<Model> {
        let kind = self.model.unwrap_or(ModelKind::Hubbard1d);
        let size = self.size.unwrap_or(3);
        let u = single_u(self, 1.0, "this command")?;
        Model::build(kind, size, u, self.periodic.unwrap_or(false), self.hamiltonian.as_deref())
    }

    pub fn verify(&self) -> CliResult<VerifySettings> {
        let unused = [
            ("model", self.model.is_some()),
            ("size", self.size.is_some()),
            ("u", self.u.is_some()),
            ("times", self.times.is_some()),
            ("ell", self.ell.is_some()),
            ("observable", self.observable.is_some()),
            ("state", self.state.is_some()),
        ];
        for (k, set) in unused {
            self.reject(k, &set.then_some(()), "verify")?;
        }
        let eta_grid = self.eta_grid.unwrap_or(64);
        if eta_grid < 2 {
            return Err(CliError::config("`eta_grid` must be at least 2"));
        }
        Ok(VerifySettings { seed: self.seed.unwrap_or(2024), samples: self.samples.unwrap_or(200), eta_grid })
    }
}

impl Fig1Settings {
    /// The values that determine the output, defaults filled in.
    pub fn echo(&self) -> String {
        let mut m = Map::new();
        self.model.describe(&mut m);
        m.insert("u".into(), json!([self.model.u]));
        m.insert("observable".into(), json!(self.observable_spec));
        m.insert("times".into(), json!(self.times));
        m.insert("ell".into(), json!(self.ells));
        describe_mp(&self.mp, &mut m);
        m.insert("reference_prune_eps".into(), json!(self.reference_prune_eps));
        Value::Object(m).to_string()
    }
}

impl Fig2Settings {
    pub fn echo(&self) -> String {
        let mut m = Map::new();
        self.models[0].describe(&mut m);
        m.insert("u".into(), json!(self.models.iter().map(|x| x.u).collect::<Vec<_>>()));
        m.insert("observable".into(), json!(self.observable_spec));
        m.insert("state".into(), json!(self.state_spec));
        m.insert("t_max".into(), json!(self.t_max));
        m.insert("ell".into(), json!(self.ells));
        describe_mp(&self.mp, &mut m);
        m.insert("oracle".into(), json!(self.oracle));
        Value::Object(m).to_string()
    }
}

impl PropagateSettings {
    pub fn echo(&self) -> String {
        let mut m = Map::new();
        self.model.describe(&mut m);
        m.insert("u".into(), json!([self.model.u]));
        m.insert("observable".into(), json!(self.observable_spec));
        m.insert("t_max".into(), json!(self.t_max));
        m.insert("ell".into(), json!([self.mp.ell]));
        describe_mp(&self.mp, &mut m);
        Value::Object(m).to_string()
    }
}
