use crate::error::{Error, Result};
use crate::linalg::{invert_quaternion, invert_real, QuaternionMatrix, RealMatrix};
use crate::quaternion::{
    inner, inner_re_unchecked, is_unit_vector, max_distance, Quaternion, DEFAULT_TOLERANCE,
};

use super::kernel::ActivationKernel;
use super::memory::FundamentalMemorySet;

pub const DEFAULT_MAX_ITERS: usize = 1000;
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpdateMode {
    /// Every neuron reads the same previous state.
    Synchronous,
    /// Neurons `1..n` in fixed cyclic order, each seeing the updates already made in the sweep.
    Asynchronous,
}

impl UpdateMode {
    pub fn name(self) -> &'static str {
        match self {
            Self::Synchronous => "synchronous",
            Self::Asynchronous => "asynchronous",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HopfieldRule {
    Hebbian,
    Projection,
    /// Weights supplied directly by the caller.
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    QhnnHebbian,
    QhnnProjection,
    QhnnCustom,
    Qrcnn,
    Qrpnn,
}

/// A trained associative memory, ready to be iterated.
#[derive(Debug, Clone, PartialEq)]
pub enum TrainedMemory {
    /// Continuous-valued quaternionic Hopfield network with an `n x n` weight matrix.
    Qhnn {
        rule: HopfieldRule,
        weights: QuaternionMatrix,
    },
    /// Recurrent correlation network: the memories and kernel are used verbatim.
    Qrcnn {
        memories: FundamentalMemorySet,
        kernel: ActivationKernel,
    },
    /// Recurrent projection network. `projected[xi][i] = sum_eta u_i^eta C^-1_{eta xi}`.
    Qrpnn {
        memories: FundamentalMemorySet,
        kernel: ActivationKernel,
        projected: Vec<Vec<Quaternion>>,
    },
}

impl TrainedMemory {
    /// Hopfield network from explicit weights. The weights must satisfy
    /// `w_ij = conj(w_ji)` and `w_ii` real and non-negative (within 1e-9).
    pub fn qhnn_from_weights(weights: QuaternionMatrix) -> Result<Self> {
        check_hermitian_nonneg_diag(&weights, DEFAULT_TOLERANCE)?;
        Ok(Self::Qhnn {
            rule: HopfieldRule::Custom,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        match self {
            Self::Qhnn { weights, .. } => weights.dim(),
            Self::Qrcnn { memories, .. } | Self::Qrpnn { memories, .. } => memories.n(),
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            Self::Qhnn { rule: HopfieldRule::Hebbian, .. } => ModelKind::QhnnHebbian,
            Self::Qhnn { rule: HopfieldRule::Projection, .. } => ModelKind::QhnnProjection,
            Self::Qhnn { rule: HopfieldRule::Custom, .. } => ModelKind::QhnnCustom,
            Self::Qrcnn { .. } => ModelKind::Qrcnn,
            Self::Qrpnn { .. } => ModelKind::Qrpnn,
        }
    }

    /// Asynchronous for Hopfield networks, synchronous for the two-layer networks.
    pub fn default_mode(&self) -> UpdateMode {
        match self {
            Self::Qhnn { .. } => UpdateMode::Asynchronous,
            _ => UpdateMode::Synchronous,
        }
    }

    pub fn weights(&self) -> Option<&QuaternionMatrix> {
        match self {
            Self::Qhnn { weights, .. } => Some(weights),
            _ => None,
        }
    }

    pub fn memories(&self) -> Option<&FundamentalMemorySet> {
        match self {
            Self::Qhnn { .. } => None,
            Self::Qrcnn { memories, .. } | Self::Qrpnn { memories, .. } => Some(memories),
        }
    }

    pub fn kernel(&self) -> Option<ActivationKernel> {
        match self {
            Self::Qhnn { .. } => None,
            Self::Qrcnn { kernel, .. } | Self::Qrpnn { kernel, .. } => Some(*kernel),
        }
    }
}

fn check_hermitian_nonneg_diag(w: &QuaternionMatrix, tol: f64) -> Result<()> {
    let n = w.dim();
    for i in 0..n {
        let d = w[(i, i)];
        if d.ve().iter().any(|c| c.abs() > tol) || d.re() < -tol {
            return Err(Error::InvalidParameter(format!(
                "w[{i}][{i}] = {d} is not a non-negative real"
            )));
        }
        for j in (i + 1)..n {
            if !w[(i, j)].approx_eq(w[(j, i)].conj(), tol) {
                return Err(Error::InvalidParameter(format!(
                    "w[{i}][{j}] != conj(w[{j}][{i}])"
                )));
            }
        }
    }
    Ok(())
}

/// Correlation (Hebbian) rule: `w_ij = (1/n) sum_xi u_i^xi conj(u_j^xi)`.
pub fn train_hebbian(memories: &FundamentalMemorySet) -> TrainedMemory {
    let n = memories.n();
    let scale = 1.0 / n as f64;
    let weights = QuaternionMatrix::from_fn(n, |i, j| {
        memories
            .iter()
            .fold(Quaternion::ZERO, |acc, u| acc + u[i] * u[j].conj())
            .scale(scale)
    });
    TrainedMemory::Qhnn {
        rule: HopfieldRule::Hebbian,
        weights,
    }
}

/// Projection rule:
/// `w_ij = (1/n) sum_eta sum_xi u_i^eta c^-1_{eta xi} conj(u_j^xi)` with
/// `c_{eta xi} = (1/n) <u^xi, u^eta>` inverted over the quaternions.
pub fn train_projection(memories: &FundamentalMemorySet) -> Result<TrainedMemory> {
    let n = memories.n();
    let p = memories.p();
    let scale = 1.0 / n as f64;
    let mut gram = QuaternionMatrix::zeros(p);
    for eta in 0..p {
        for xi in 0..p {
            gram[(eta, xi)] = inner(memories.get(xi), memories.get(eta))?.scale(scale);
        }
    }
    let gram_inv = invert_quaternion(&gram)?;

    // left[i][xi] = sum_eta u_i^eta c^-1_{eta xi}
    let left: Vec<Vec<Quaternion>> = (0..n)
        .map(|i| {
            (0..p)
                .map(|xi| {
                    (0..p).fold(Quaternion::ZERO, |acc, eta| {
                        acc + memories.get(eta)[i] * gram_inv[(eta, xi)]
                    })
                })
                .collect()
        })
        .collect();
    let weights = QuaternionMatrix::from_fn(n, |i, j| {
        (0..p)
            .fold(Quaternion::ZERO, |acc, xi| {
                acc + left[i][xi] * memories.get(xi)[j].conj()
            })
            .scale(scale)
    });
    Ok(TrainedMemory::Qhnn {
        rule: HopfieldRule::Projection,
        weights,
    })
}

pub fn train_qrcnn(memories: &FundamentalMemorySet, kernel: ActivationKernel) -> Result<TrainedMemory> {
    Ok(TrainedMemory::Qrcnn {
        memories: memories.clone(),
        kernel: kernel.validate()?,
    })
}

/// Builds the real kernel matrix `c_{eta xi} = f(Re<u^xi, u^eta>/n)`, inverts it,
/// and stores the projected memories `v^xi`.
pub fn train_qrpnn(memories: &FundamentalMemorySet, kernel: ActivationKernel) -> Result<TrainedMemory> {
    let kernel = kernel.validate()?;
    let n = memories.n();
    let p = memories.p();
    let inv_n = 1.0 / n as f64;
    let c = RealMatrix::from_fn(p, |eta, xi| {
        kernel.eval(inner_re_unchecked(memories.get(xi), memories.get(eta)) * inv_n)
    });
    let c_inv = invert_real(&c)?;
    let projected = (0..p)
        .map(|xi| {
            (0..n)
                .map(|i| {
                    (0..p).fold(Quaternion::ZERO, |acc, eta| {
                        acc + memories.get(eta)[i].scale(c_inv[(eta, xi)])
                    })
                })
                .collect()
        })
        .collect();
    Ok(TrainedMemory::Qrpnn {
        memories: memories.clone(),
        kernel,
        projected,
    })
}

/// State of the network at iteration `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkState {
    pub x: Vec<Quaternion>,
    pub t: usize,
}

impl NetworkState {
    /// Initial state; every component must be a unit quaternion (within 1e-9).
    pub fn new(x: Vec<Quaternion>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::InvalidParameter("state must have length >= 1".into()));
        }
        if !is_unit_vector(&x, DEFAULT_TOLERANCE) {
            return Err(Error::Domain("state components must be unit quaternions".into()));
        }
        Ok(Self { x, t: 0 })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// `w_xi = f(Re<x, u^xi>/n)` for every stored memory.
pub fn kernel_weights(
    state: &NetworkState,
    memories: &FundamentalMemorySet,
    kernel: ActivationKernel,
) -> Result<Vec<f64>> {
    check_len(memories.n(), state.len())?;
    let inv_n = 1.0 / memories.n() as f64;
    Ok(memories
        .iter()
        .map(|u| kernel.eval(inner_re_unchecked(&state.x, u) * inv_n))
        .collect())
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::LengthMismatch { expected, found });
    }
    Ok(())
}

/// `sigma(a)` when `0 < |a| < inf`, otherwise the previous value.
#[inline]
fn activate(potential: Quaternion, previous: Quaternion) -> Quaternion {
    potential.sigma().unwrap_or(previous)
}

/// One iteration: a full synchronous update, or one asynchronous sweep over all neurons.
pub fn step(model: &TrainedMemory, state: &NetworkState, mode: UpdateMode) -> Result<NetworkState> {
    check_len(model.n(), state.len())?;
    let x = match (model, mode) {
        (TrainedMemory::Qhnn { weights, .. }, UpdateMode::Synchronous) => (0..weights.dim())
            .map(|i| activate(hopfield_potential(weights.row(i), &state.x), state.x[i]))
            .collect(),
        (TrainedMemory::Qhnn { weights, .. }, UpdateMode::Asynchronous) => {
            let mut x = state.x.clone();
            for i in 0..x.len() {
                let a = hopfield_potential(weights.row(i), &x);
                x[i] = activate(a, x[i]);
            }
            x
        }
        (TrainedMemory::Qrcnn { memories, kernel }, mode) => {
            two_layer_step(memories, *kernel, memories_as_rows(memories), &state.x, mode)
        }
        (TrainedMemory::Qrpnn { memories, kernel, projected }, mode) => {
            let rows: Vec<&[Quaternion]> = projected.iter().map(Vec::as_slice).collect();
            two_layer_step(memories, *kernel, rows, &state.x, mode)
        }
    };
    Ok(NetworkState { x, t: state.t + 1 })
}

fn memories_as_rows(memories: &FundamentalMemorySet) -> Vec<&[Quaternion]> {
    memories.iter().collect()
}

#[inline]
fn hopfield_potential(row: &[Quaternion], x: &[Quaternion]) -> Quaternion {
    row.iter().zip(x).fold(Quaternion::ZERO, |acc, (&w, &xj)| acc + w * xj)
}

/// Potential `a_i = sum_xi w_xi out_i^xi`, where `out` is either the stored or the projected memories.
fn two_layer_step(
    memories: &FundamentalMemorySet,
    kernel: ActivationKernel,
    outputs: Vec<&[Quaternion]>,
    x: &[Quaternion],
    mode: UpdateMode,
) -> Vec<Quaternion> {
    let n = memories.n();
    let inv_n = 1.0 / n as f64;
    let mut correlations: Vec<f64> = memories.iter().map(|u| inner_re_unchecked(x, u)).collect();
    let mut weights: Vec<f64> = correlations.iter().map(|&c| kernel.eval(c * inv_n)).collect();

    let potential = |weights: &[f64], i: usize| {
        weights
            .iter()
            .zip(&outputs)
            .fold(Quaternion::ZERO, |acc, (&w, out)| acc + out[i].scale(w))
    };

    match mode {
        UpdateMode::Synchronous => (0..n).map(|i| activate(potential(&weights, i), x[i])).collect(),
        UpdateMode::Asynchronous => {
            let mut x = x.to_vec();
            for i in 0..n {
                let new = activate(potential(&weights, i), x[i]);
                if new != x[i] {
                    let delta = new - x[i];
                    for ((c, w), u) in correlations.iter_mut().zip(weights.iter_mut()).zip(memories.iter()) {
                        let ui = u[i];
                        *c += delta.q0 * ui.q0 + delta.q1 * ui.q1 + delta.q2 * ui.q2 + delta.q3 * ui.q3;
                        *w = kernel.eval(*c * inv_n);
                    }
                    x[i] = new;
                }
            }
            x
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub state: NetworkState,
    pub iterations: usize,
    pub converged: bool,
}

/// Iterates [`step`] until the max-component change between successive states is
/// at most `tol`, or `max_iters` iterations have been performed.
pub fn run(
    model: &TrainedMemory,
    initial: &NetworkState,
    mode: UpdateMode,
    max_iters: usize,
    tol: f64,
) -> Result<RunOutcome> {
    if max_iters == 0 {
        return Err(Error::InvalidParameter("max_iters must be >= 1".into()));
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidParameter(format!("tol must be >= 0, got {tol}")));
    }
    let mut state = initial.clone();
    for iteration in 1..=max_iters {
        let next = step(model, &state, mode)?;
        let change = max_distance(&next.x, &state.x)?;
        state = next;
        if change <= tol {
            return Ok(RunOutcome {
                state,
                iterations: iteration,
                converged: true,
            });
        }
    }
    Ok(RunOutcome {
        state,
        iterations: max_iters,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::max_distance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = Quaternion;

    fn random_unit(rng: &mut impl Rng) -> Q {
        Q::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
        .sigma()
        .unwrap()
    }

    fn random_memories(rng: &mut impl Rng, n: usize, p: usize) -> FundamentalMemorySet {
        FundamentalMemorySet::new(
            (0..p).map(|_| (0..n).map(|_| random_unit(rng)).collect()).collect(),
        )
        .unwrap()
    }

    fn all_kernels() -> [ActivationKernel; 4] {
        [
            ActivationKernel::Identity,
            ActivationKernel::high_order(20.0).unwrap(),
            ActivationKernel::potential(3.0, 1e-5).unwrap(),
            ActivationKernel::exponential(14.0).unwrap(),
        ]
    }

    fn assert_weight_symmetry(w: &QuaternionMatrix) {
        check_hermitian_nonneg_diag(w, 1e-9).unwrap();
    }

    #[test]
    fn hebbian_single_bipolar_memory() {
        let m = FundamentalMemorySet::from_bipolar(&[vec![1.0, 1.0]]).unwrap();
        let w = train_hebbian(&m);
        let expected = QuaternionMatrix::from_fn(2, |_, _| Q::real(0.5));
        assert_eq!(w.weights().unwrap(), &expected);
        assert_eq!(w.kind(), ModelKind::QhnnHebbian);
    }

    #[test]
    fn hebbian_diagonal_and_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_memories(&mut rng, 12, 5);
        let model = train_hebbian(&m);
        let w = model.weights().unwrap();
        for i in 0..12 {
            assert!(w[(i, i)].approx_eq(Q::real(5.0 / 12.0), 1e-12));
        }
        assert_weight_symmetry(w);
    }

    #[test]
    fn projection_single_memory_equals_hebbian() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_memories(&mut rng, 8, 1);
        let hebb = train_hebbian(&m);
        let proj = train_projection(&m).unwrap();
        assert!(hebb.weights().unwrap().max_abs_diff(proj.weights().unwrap()) <= 1e-12);
    }

    #[test]
    fn projection_reproduces_memories() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_memories(&mut rng, 20, 8);
        let model = train_projection(&m).unwrap();
        let w = model.weights().unwrap();
        assert_weight_symmetry(w);
        for u in m.iter() {
            for i in 0..m.n() {
                let a = hopfield_potential(w.row(i), u);
                assert!(a.approx_eq(u[i], 1e-6));
            }
        }
    }

    #[test]
    fn duplicate_memories_are_singular() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u: Vec<Q> = (0..10).map(|_| random_unit(&mut rng)).collect();
        let m = FundamentalMemorySet::new(vec![u.clone(), u]).unwrap();
        assert!(matches!(train_projection(&m), Err(Error::SingularMatrix { .. })));
        for k in all_kernels() {
            assert!(matches!(train_qrpnn(&m, k), Err(Error::SingularMatrix { .. })), "{k}");
        }
    }

    #[test]
    fn qrpnn_single_memory_scales_by_kernel_at_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_memories(&mut rng, 6, 1);
        for k in all_kernels() {
            let model = train_qrpnn(&m, k).unwrap();
            let TrainedMemory::Qrpnn { projected, .. } = &model else { unreachable!() };
            let f1 = k.eval(1.0);
            for (v, u) in projected[0].iter().zip(m.get(0)) {
                assert!(v.approx_eq(u.scale(1.0 / f1), 1e-12 / f1.min(1.0)));
            }
        }
    }

    #[test]
    fn qrcnn_stores_memories_verbatim() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let m = random_memories(&mut rng, 7, 3);
        let model = train_qrcnn(&m, ActivationKernel::exponential(4.0).unwrap()).unwrap();
        assert_eq!(model.memories().unwrap(), &m);
        assert_eq!(model.n(), 7);
        assert!(train_qrcnn(&m, ActivationKernel::HighOrder { q: 0.5 }).is_err());
    }

    #[test]
    fn kernel_weight_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = random_memories(&mut rng, 9, 2);
        let state = NetworkState::new(m.get(0).to_vec()).unwrap();
        let w = kernel_weights(&state, &m, ActivationKernel::exponential(4.0).unwrap()).unwrap();
        assert!((w[0] - 4f64.exp()).abs() < 1e-12);

        let bip = FundamentalMemorySet::from_bipolar(&[vec![1.0, 1.0, 1.0, 1.0]]).unwrap();
        let orth = NetworkState::new([1.0, -1.0, 1.0, -1.0].map(Q::real).to_vec()).unwrap();
        assert_eq!(kernel_weights(&orth, &bip, ActivationKernel::Identity).unwrap(), vec![0.0]);
        let ho = ActivationKernel::high_order(5.0).unwrap();
        assert_eq!(kernel_weights(&orth, &bip, ho).unwrap(), vec![1.0]);

        let short = NetworkState::new(vec![Q::ONE]).unwrap();
        assert!(kernel_weights(&short, &bip, ho).is_err());
    }

    #[test]
    fn stored_memories_are_fixed_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = random_memories(&mut rng, 30, 10);
        let mut models = vec![train_projection(&m).unwrap()];
        models.extend(all_kernels().into_iter().map(|k| train_qrpnn(&m, k).unwrap()));
        for model in &models {
            for mode in [UpdateMode::Synchronous, UpdateMode::Asynchronous] {
                for u in m.iter() {
                    let s = NetworkState::new(u.to_vec()).unwrap();
                    let next = step(model, &s, mode).unwrap();
                    assert!(max_distance(&next.x, u).unwrap() <= 1e-6, "{:?} {mode:?}", model.kind());
                    let out = run(model, &s, mode, DEFAULT_MAX_ITERS, DEFAULT_TOL).unwrap();
                    assert!(out.converged);
                    assert_eq!(out.iterations, 1);
                }
            }
        }
    }

    #[test]
    fn zero_potential_keeps_state() {
        let model = TrainedMemory::qhnn_from_weights(QuaternionMatrix::zeros(3)).unwrap();
        let s = NetworkState::new(vec![Q::I, Q::J, Q::new(0.5, 0.5, 0.5, 0.5)]).unwrap();
        for mode in [UpdateMode::Synchronous, UpdateMode::Asynchronous] {
            let next = step(&model, &s, mode).unwrap();
            assert_eq!(next.x, s.x);
            assert_eq!(next.t, 1);
        }
    }

    #[test]
    fn custom_weights_must_satisfy_symmetry() {
        let mut w = QuaternionMatrix::zeros(2);
        w[(0, 1)] = Q::I;
        assert!(TrainedMemory::qhnn_from_weights(w.clone()).is_err());
        w[(1, 0)] = -Q::I;
        assert!(TrainedMemory::qhnn_from_weights(w.clone()).is_ok());
        w[(0, 0)] = Q::real(-1.0);
        assert!(TrainedMemory::qhnn_from_weights(w).is_err());
    }

    #[test]
    fn step_rejects_wrong_length() {
        let m = FundamentalMemorySet::from_bipolar(&[vec![1.0, -1.0, 1.0]]).unwrap();
        let model = train_hebbian(&m);
        let s = NetworkState::new(vec![Q::ONE]).unwrap();
        assert!(matches!(
            step(&model, &s, UpdateMode::Synchronous),
            Err(Error::LengthMismatch { expected: 3, found: 1 })
        ));
    }

    #[test]
    fn run_rejects_bad_limits() {
        let m = FundamentalMemorySet::from_bipolar(&[vec![1.0, -1.0]]).unwrap();
        let model = train_hebbian(&m);
        let s = NetworkState::new(m.get(0).to_vec()).unwrap();
        assert!(run(&model, &s, UpdateMode::Synchronous, 0, 1e-6).is_err());
        assert!(run(&model, &s, UpdateMode::Synchronous, 10, -1.0).is_err());
        assert!(run(&model, &s, UpdateMode::Synchronous, 10, f64::NAN).is_err());
    }

    /// Searches symmetric zero-diagonal weights in {-1, 0, 1} on n = 2, 3 and bipolar
    /// states for a synchronous period-two orbit.
    fn find_two_cycle() -> Option<(QuaternionMatrix, Vec<Q>)> {
        for n in 2..=3usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
            for code in 0..3usize.pow(pairs.len() as u32) {
                let mut w = vec![vec![0.0; n]; n];
                let mut c = code;
                for &(i, j) in &pairs {
                    let v = (c % 3) as f64 - 1.0;
                    c /= 3;
                    w[i][j] = v;
                    w[j][i] = v;
                }
                for bits in 0..(1usize << n) {
                    let x: Vec<f64> = (0..n).map(|i| if bits >> i & 1 == 1 { 1.0 } else { -1.0 }).collect();
                    let sync = |x: &[f64]| -> Vec<f64> {
                        (0..n)
                            .map(|i| {
                                let a: f64 = (0..n).map(|j| w[i][j] * x[j]).sum();
                                if a > 0.0 { 1.0 } else if a < 0.0 { -1.0 } else { x[i] }
                            })
                            .collect()
                    };
                    let y = sync(&x);
                    if y != x && sync(&y) == x {
                        let m = QuaternionMatrix::from_fn(n, |i, j| Q::real(w[i][j]));
                        return Some((m, x.into_iter().map(Q::real).collect()));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn synchronous_two_cycle_never_converges() {
        let (w, x0) = find_two_cycle().expect("a two-cycle exists for n <= 3");
        let model = TrainedMemory::qhnn_from_weights(w).unwrap();
        let s = NetworkState::new(x0.clone()).unwrap();
        let out = run(&model, &s, UpdateMode::Synchronous, DEFAULT_MAX_ITERS, 0.0).unwrap();
        assert!(!out.converged);
        assert_eq!(out.iterations, DEFAULT_MAX_ITERS);
        // Even number of steps returns to the start.
        assert_eq!(out.state.x, x0);
        let out = run(&model, &s, UpdateMode::Asynchronous, DEFAULT_MAX_ITERS, 0.0).unwrap();
        assert!(out.converged);
    }

    #[test]
    fn positive_scaling_of_weights_is_invisible() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_memories(&mut rng, 10, 4);
        let model = train_hebbian(&m);
        let w = model.weights().unwrap();
        let scaled = TrainedMemory::qhnn_from_weights(QuaternionMatrix::from_fn(10, |i, j| w[(i, j)].scale(7.5))).unwrap();
        let s = NetworkState::new((0..10).map(|_| random_unit(&mut rng)).collect()).unwrap();
        for mode in [UpdateMode::Synchronous, UpdateMode::Asynchronous] {
            let a = step(&model, &s, mode).unwrap();
            let b = step(&scaled, &s, mode).unwrap();
            assert!(max_distance(&a.x, &b.x).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn asynchronous_incremental_matches_recomputed_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let m = random_memories(&mut rng, 15, 4);
        let kernel = ActivationKernel::exponential(4.0).unwrap();
        let model = train_qrcnn(&m, kernel).unwrap();
        let s = NetworkState::new((0..15).map(|_| random_unit(&mut rng)).collect()).unwrap();
        let fast = step(&model, &s, UpdateMode::Asynchronous).unwrap();

        let mut x = s.x.clone();
        for i in 0..15 {
            let st = NetworkState { x: x.clone(), t: 0 };
            let w = kernel_weights(&st, &m, kernel).unwrap();
            let a = m.iter().zip(&w).fold(Q::ZERO, |acc, (u, &wx)| acc + u[i].scale(wx));
            x[i] = activate(a, x[i]);
        }
        assert!(max_distance(&fast.x, &x).unwrap() <= 1e-12);
    }
}
