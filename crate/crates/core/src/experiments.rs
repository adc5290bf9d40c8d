//! Monte-Carlo recall experiments.
//!
//! Each trial draws a fresh fundamental memory set, trains the configured model,
//! corrupts the first memory and iterates the network from the corrupted probe.
//! Trial `t` at noise-grid index `g` owns a private ChaCha8 stream seeded by
//! [`trial_seed`]`(seed, g, t)`, so serial and parallel sweeps agree bit for bit.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::models::{
    run, step, train_hebbian, train_projection, train_qrcnn, train_qrpnn, ActivationKernel,
    FundamentalMemorySet, NetworkState, TrainedMemory, UpdateMode, DEFAULT_EPSILON_P,
    DEFAULT_MAX_ITERS, DEFAULT_TOL,
};
use crate::quaternion::{max_distance, Quaternion};

pub const DEFAULT_SUCCESS_TOL: f64 = 1e-3;

/// `0.0, 0.1, ..., 1.0`.
pub fn default_noise_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Bipolar,
    Quaternion,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Self::Bipolar => "bipolar",
            Self::Quaternion => "quaternion",
        }
    }
}

impl FromStr for Domain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bipolar" => Ok(Self::Bipolar),
            "quaternion" => Ok(Self::Quaternion),
            other => Err(Error::InvalidParameter(format!("unknown domain '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelFamily {
    Identity,
    HighOrder,
    Potential,
    Exponential,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 4] = [
        KernelFamily::Identity,
        KernelFamily::HighOrder,
        KernelFamily::Potential,
        KernelFamily::Exponential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::HighOrder => "high-order",
            Self::Potential => "potential",
            Self::Exponential => "exponential",
        }
    }
}

/// Parameters for every kernel family; only the selected family's values are used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub q: f64,
    pub l: f64,
    pub epsilon_p: f64,
    pub alpha: f64,
}

impl KernelParams {
    pub fn build(&self, family: KernelFamily) -> Result<ActivationKernel> {
        match family {
            KernelFamily::Identity => Ok(ActivationKernel::Identity),
            KernelFamily::HighOrder => ActivationKernel::high_order(self.q),
            KernelFamily::Potential => ActivationKernel::potential(self.l, self.epsilon_p),
            KernelFamily::Exponential => ActivationKernel::exponential(self.alpha),
        }
    }
}

/// Which network to train, with its kernel when it has one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    QhnnHebbian,
    QhnnProjection,
    Qrcnn(ActivationKernel),
    Qrpnn(ActivationKernel),
}

impl ModelSpec {
    /// Parses names like `qhnn-hebbian` or `qrpnn-exponential`.
    pub fn parse(name: &str, params: &KernelParams) -> Result<Self> {
        match name {
            "qhnn-hebbian" => return Ok(Self::QhnnHebbian),
            "qhnn-projection" => return Ok(Self::QhnnProjection),
            _ => {}
        }
        let (arch, kernel) = name
            .split_once('-')
            .ok_or_else(|| Error::InvalidParameter(format!("unknown model '{name}'")))?;
        let family = KernelFamily::ALL
            .into_iter()
            .find(|f| f.name() == kernel)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown kernel in model '{name}'")))?;
        let kernel = params.build(family)?;
        match arch {
            "qrcnn" => Ok(Self::Qrcnn(kernel)),
            "qrpnn" => Ok(Self::Qrpnn(kernel)),
            _ => Err(Error::InvalidParameter(format!("unknown model '{name}'"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::QhnnHebbian => "qhnn-hebbian".into(),
            Self::QhnnProjection => "qhnn-projection".into(),
            Self::Qrcnn(k) => format!("qrcnn-{}", k.name()),
            Self::Qrpnn(k) => format!("qrpnn-{}", k.name()),
        }
    }

    pub fn kernel(&self) -> Option<ActivationKernel> {
        match self {
            Self::Qrcnn(k) | Self::Qrpnn(k) => Some(*k),
            _ => None,
        }
    }

    pub fn kernel_params(&self) -> String {
        self.kernel().map_or_else(|| "none".to_string(), |k| k.params())
    }

    pub fn train(&self, memories: &FundamentalMemorySet) -> Result<TrainedMemory> {
        match self {
            Self::QhnnHebbian => Ok(train_hebbian(memories)),
            Self::QhnnProjection => train_projection(memories),
            Self::Qrcnn(k) => train_qrcnn(memories, *k),
            Self::Qrpnn(k) => train_qrpnn(memories, *k),
        }
    }

    pub fn default_mode(&self) -> UpdateMode {
        match self {
            Self::QhnnHebbian | Self::QhnnProjection => UpdateMode::Asynchronous,
            _ => UpdateMode::Synchronous,
        }
    }

    /// Whether every stored memory is guaranteed to be a fixed point.
    pub fn stores_fixed_points(&self) -> bool {
        matches!(self, Self::QhnnProjection | Self::Qrpnn(_))
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The two reference experiments: bipolar vectors and quaternion vectors, both
/// with `n = 100`, `p = 36`, 100 trials and at most 1000 iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Example1,
    Example2,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Self::Example1 => "example1",
            Self::Example2 => "example2",
        }
    }

    pub fn domain(self) -> Domain {
        match self {
            Self::Example1 => Domain::Bipolar,
            Self::Example2 => Domain::Quaternion,
        }
    }

    pub fn kernel_params(self) -> KernelParams {
        match self {
            Self::Example1 => KernelParams {
                q: 5.0,
                l: 3.0,
                epsilon_p: DEFAULT_EPSILON_P,
                alpha: 4.0,
            },
            Self::Example2 => KernelParams {
                q: 20.0,
                l: 3.0,
                epsilon_p: DEFAULT_EPSILON_P,
                alpha: 14.0,
            },
        }
    }

    /// Hebbian and projection Hopfield networks plus every QRCNN and QRPNN kernel.
    pub fn models(self) -> Vec<ModelSpec> {
        let params = self.kernel_params();
        let mut models = vec![ModelSpec::QhnnHebbian, ModelSpec::QhnnProjection];
        for family in KernelFamily::ALL {
            let k = params.build(family).expect("preset parameters are valid");
            models.push(ModelSpec::Qrcnn(k));
            models.push(ModelSpec::Qrpnn(k));
        }
        models
    }

    pub fn config(self, model: ModelSpec, seed: u64) -> TrialConfig {
        TrialConfig {
            domain: self.domain(),
            n: 100,
            p: 36,
            model,
            noise_prob: 0.0,
            trials: 100,
            max_iters: DEFAULT_MAX_ITERS,
            tol: DEFAULT_TOL,
            seed,
            update_mode: None,
            success_tol: DEFAULT_SUCCESS_TOL,
        }
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example1" => Ok(Self::Example1),
            "example2" => Ok(Self::Example2),
            other => Err(Error::InvalidParameter(format!("unknown preset '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub domain: Domain,
    pub n: usize,
    pub p: usize,
    pub model: ModelSpec,
    /// Per-component corruption probability of the probe.
    pub noise_prob: f64,
    pub trials: usize,
    pub max_iters: usize,
    /// Convergence threshold on the max-component change between iterations.
    pub tol: f64,
    pub seed: u64,
    /// `None` selects the model's default mode.
    pub update_mode: Option<UpdateMode>,
    /// Max-component distance to `u^1` below which a trial counts as a recall.
    pub success_tol: f64,
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.p == 0 {
            return Err(Error::InvalidParameter("n and p must be >= 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be >= 1".into()));
        }
        check_probability(self.noise_prob)?;
        if self.tol.is_nan() || self.tol < 0.0 || self.success_tol.is_nan() || self.success_tol < 0.0 {
            return Err(Error::InvalidParameter("tolerances must be >= 0".into()));
        }
        if let Some(k) = self.model.kernel() {
            k.validate()?;
        }
        Ok(())
    }

    pub fn mode(&self) -> UpdateMode {
        self.update_mode.unwrap_or_else(|| self.model.default_mode())
    }
}

fn check_probability(pi: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&pi) {
        return Err(Error::InvalidParameter(format!("noise probability {pi} is outside [0, 1]")));
    }
    Ok(())
}

/// Independent `±1` components with equal probability.
pub fn random_bipolar_memories(n: usize, p: usize, rng: &mut impl Rng) -> Result<FundamentalMemorySet> {
    FundamentalMemorySet::new(
        (0..p)
            .map(|_| {
                (0..n)
                    .map(|_| Quaternion::real(if rng.random_bool(0.5) { 1.0 } else { -1.0 }))
                    .collect()
            })
            .collect(),
    )
}

pub fn random_quaternion_memories(n: usize, p: usize, rng: &mut impl Rng) -> Result<FundamentalMemorySet> {
    FundamentalMemorySet::new(
        (0..p).map(|_| (0..n).map(|_| rand_q(rng)).collect()).collect(),
    )
}

pub fn random_memories(domain: Domain, n: usize, p: usize, rng: &mut impl Rng) -> Result<FundamentalMemorySet> {
    match domain {
        Domain::Bipolar => random_bipolar_memories(n, p, rng),
        Domain::Quaternion => random_quaternion_memories(n, p, rng),
    }
}

/// `(cos phi + i sin phi)(cos psi + k sin psi)(cos theta + j sin theta)`.
pub fn rand_q_from_angles(phi: f64, psi: f64, theta: f64) -> Quaternion {
    let a = Quaternion::new(phi.cos(), phi.sin(), 0.0, 0.0);
    let b = Quaternion::new(psi.cos(), 0.0, 0.0, psi.sin());
    let c = Quaternion::new(theta.cos(), 0.0, theta.sin(), 0.0);
    a * b * c
}

/// Random unit quaternion with `phi ~ U[-pi, pi)`, `psi ~ U[-pi/4, pi/4]`, `theta ~ U[-pi/2, pi/2]`.
pub fn rand_q(rng: &mut impl Rng) -> Quaternion {
    let phi = rng.random_range(-PI..PI);
    let psi = rng.random_range(-FRAC_PI_4..=FRAC_PI_4);
    let theta = rng.random_range(-FRAC_PI_2..=FRAC_PI_2);
    rand_q_from_angles(phi, psi, theta)
}

/// Negates each component independently with probability `pi`.
pub fn inject_noise_bipolar(u: &[Quaternion], pi: f64, rng: &mut impl Rng) -> Result<Vec<Quaternion>> {
    check_probability(pi)?;
    if let Some(i) = u.iter().position(|q| !q.is_bipolar()) {
        return Err(Error::Domain(format!("component {i} is not bipolar")));
    }
    Ok(u.iter().map(|&q| if rng.random_bool(pi) { -q } else { q }).collect())
}

/// Replaces each component independently by [`rand_q`] with probability `pi`.
pub fn inject_noise_quaternion(u: &[Quaternion], pi: f64, rng: &mut impl Rng) -> Result<Vec<Quaternion>> {
    check_probability(pi)?;
    Ok(u.iter().map(|&q| if rng.random_bool(pi) { rand_q(rng) } else { q }).collect())
}

pub fn inject_noise(domain: Domain, u: &[Quaternion], pi: f64, rng: &mut impl Rng) -> Result<Vec<Quaternion>> {
    match domain {
        Domain::Bipolar => inject_noise_bipolar(u, pi, rng),
        Domain::Quaternion => inject_noise_quaternion(u, pi, rng),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub success: bool,
    pub iterations: usize,
    pub converged: bool,
    /// Max-component distance between the final state and `u^1`; infinite when training failed.
    pub final_distance: f64,
    /// Training hit a singular matrix; the trial counts as a failure.
    pub singular: bool,
}

/// One trial: fresh memories, training, noisy probe of `u^1`, iteration, comparison.
pub fn run_trial(config: &TrialConfig, rng: &mut impl Rng) -> Result<TrialOutcome> {
    config.validate()?;
    let memories = random_memories(config.domain, config.n, config.p, rng)?;
    let target = memories.get(0);
    let probe = inject_noise(config.domain, target, config.noise_prob, rng)?;
    let model = match config.model.train(&memories) {
        Ok(m) => m,
        Err(Error::SingularMatrix { .. }) => {
            return Ok(TrialOutcome {
                success: false,
                iterations: 0,
                converged: false,
                final_distance: f64::INFINITY,
                singular: true,
            })
        }
        Err(e) => return Err(e),
    };
    let outcome = run(
        &model,
        &NetworkState::new(probe)?,
        config.mode(),
        config.max_iters,
        config.tol,
    )?;
    let final_distance = max_distance(&outcome.state.x, target)?;
    Ok(TrialOutcome {
        success: final_distance <= config.success_tol,
        iterations: outcome.iterations,
        converged: outcome.converged,
        final_distance,
        singular: false,
    })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the private stream for one `(grid point, trial)` pair.
pub fn trial_seed(seed: u64, grid_index: usize, trial_index: usize) -> u64 {
    let h = splitmix64(seed);
    let h = splitmix64(h ^ grid_index as u64);
    splitmix64(h ^ (trial_index as u64).rotate_left(32))
}

pub fn trial_rng(seed: u64, grid_index: usize, trial_index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, grid_index, trial_index))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub noise_prob: f64,
    pub trials: usize,
    pub successes: usize,
    pub recall_probability: f64,
    pub mean_iterations: f64,
    pub converged: usize,
    pub singular: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub model: String,
    pub domain: Domain,
    pub n: usize,
    pub p: usize,
    pub kernel_params: String,
    pub update_mode: UpdateMode,
    pub seed: u64,
    /// Sorted by ascending noise probability.
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn total_trials(&self) -> usize {
        self.points.iter().map(|p| p.trials).sum()
    }

    pub fn total_converged(&self) -> usize {
        self.points.iter().map(|p| p.converged).sum()
    }

    pub fn total_singular(&self) -> usize {
        self.points.iter().map(|p| p.singular).sum()
    }
}

/// All trials of one grid point, in trial order.
pub fn run_point_trials(config: &TrialConfig, grid_index: usize) -> Result<Vec<TrialOutcome>> {
    config.validate()?;
    let one = |t: usize| run_trial(config, &mut trial_rng(config.seed, grid_index, t));
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..config.trials).into_par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..config.trials).map(one).collect()
    }
}

fn aggregate(noise_prob: f64, outcomes: &[TrialOutcome]) -> SweepPoint {
    let trials = outcomes.len();
    let successes = outcomes.iter().filter(|o| o.success).count();
    let iterations: usize = outcomes.iter().map(|o| o.iterations).sum();
    SweepPoint {
        noise_prob,
        trials,
        successes,
        recall_probability: successes as f64 / trials as f64,
        mean_iterations: iterations as f64 / trials as f64,
        converged: outcomes.iter().filter(|o| o.converged).count(),
        singular: outcomes.iter().filter(|o| o.singular).count(),
    }
}

/// Recall probability at every noise level of `grid`. The config's own
/// `noise_prob` is ignored. Points are returned sorted by noise level; the grid
/// index used for seeding is the position in the caller's grid.
pub fn run_sweep(config: &TrialConfig, grid: &[f64]) -> Result<SweepResult> {
    config.validate()?;
    for &pi in grid {
        check_probability(pi)?;
    }
    let mut points = grid
        .iter()
        .enumerate()
        .map(|(g, &pi)| {
            let cfg = TrialConfig { noise_prob: pi, ..config.clone() };
            Ok(aggregate(pi, &run_point_trials(&cfg, g)?))
        })
        .collect::<Result<Vec<_>>>()?;
    points.sort_by(|a, b| a.noise_prob.total_cmp(&b.noise_prob));
    Ok(SweepResult {
        model: config.model.name(),
        domain: config.domain,
        n: config.n,
        p: config.p,
        kernel_params: config.model.kernel_params(),
        update_mode: config.mode(),
        seed: config.seed,
        points,
    })
}

/// Trains on a random memory set drawn from `seed` and returns, for each stored
/// memory, the max-component distance moved by one step from that memory.
pub fn fixed_point_distances(config: &TrialConfig) -> Result<Vec<f64>> {
    config.validate()?;
    let mut rng = trial_rng(config.seed, 0, 0);
    let memories = random_memories(config.domain, config.n, config.p, &mut rng)?;
    let model = config.model.train(&memories)?;
    memories
        .iter()
        .map(|u| {
            let next = step(&model, &NetworkState::new(u.to_vec())?, config.mode())?;
            max_distance(&next.x, u)
        })
        .collect()
}

/// Distance to `u^1` after each iteration of a single noisy probe (index 0 is the probe itself).
pub fn recall_trace(config: &TrialConfig) -> Result<Vec<f64>> {
    config.validate()?;
    let mut rng = trial_rng(config.seed, 0, 0);
    let memories = random_memories(config.domain, config.n, config.p, &mut rng)?;
    let target = memories.get(0);
    let probe = inject_noise(config.domain, target, config.noise_prob, &mut rng)?;
    let model = config.model.train(&memories)?;
    let mut state = NetworkState::new(probe)?;
    let mut trace = vec![max_distance(&state.x, target)?];
    for _ in 0..config.max_iters {
        let next = step(&model, &state, config.mode())?;
        let change = max_distance(&next.x, &state.x)?;
        state = next;
        trace.push(max_distance(&state.x, target)?);
        if change <= config.tol {
            break;
        }
    }
    Ok(trace)
}
