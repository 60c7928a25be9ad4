//! Time-domain integration of the full nonlinear transport dynamics.
//!
//! Each node carries `(u, v)` and the velocities `(du, dv)`; transport has
//! inertia, so the second-order system is integrated in first-order form
//! with the classical fixed-step RK4 scheme:
//!
//! ```text
//! d(u)/dt  = du
//! d(du)/dt = (f(u, v) + D_u (L u) - du) / tau_u      (per node, same for v)
//! ```
//!
//! [`perturbation_experiment`] seeds a small zero-mean perturbation of the
//! homogeneous equilibrium, integrates, and fits the exponential rate of the
//! deviation norm, which is the time-domain counterpart of the dominant
//! dispersion growth rate.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dispersion::TransportParams;
use crate::math;
use crate::models::{JacobianEntries, ReactionModel};
use crate::network::DirectedLaplacian;

/// State magnitude past which the trajectory is declared blown up.
pub const BLOWUP_NORM: f64 = 1e12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("time step must be positive and finite, got {dt}")]
    InvalidStep { dt: f64 },
    #[error("step count must be at least 1")]
    NoSteps,
    #[error("sampling stride must be at least 1")]
    InvalidStride,
    #[error("state has {len} nodes but the network has {n}")]
    DimensionMismatch { n: usize, len: usize },
    #[error("state entries must be finite")]
    NonFiniteState,
    #[error("perturbation amplitude must be positive and finite, got {amplitude}")]
    InvalidAmplitude { amplitude: f64 },
    #[error("growth experiments need at least 2 nodes")]
    TooFewNodes,
    #[error("horizon leaves fewer than {min} usable samples for the rate fit")]
    HorizonTooShort { min: usize },
}

/// Per-node fields plus velocities at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub du: Vec<f64>,
    pub dv: Vec<f64>,
    pub time: f64,
}

impl SimState {
    /// Every node at the given point, velocities zero, time zero.
    pub fn homogeneous(n: usize, point: (f64, f64)) -> Self {
        SimState {
            u: vec![point.0; n],
            v: vec![point.1; n],
            du: vec![0.0; n],
            dv: vec![0.0; n],
            time: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    fn validate(&self, n: usize) -> Result<(), SimError> {
        for field in [&self.u, &self.v, &self.du, &self.dv] {
            if field.len() != n {
                return Err(SimError::DimensionMismatch {
                    n,
                    len: field.len(),
                });
            }
            if field.iter().any(|x| !x.is_finite()) {
                return Err(SimError::NonFiniteState);
            }
        }
        if !self.time.is_finite() {
            return Err(SimError::NonFiniteState);
        }
        Ok(())
    }

    /// Euclidean distance of the `(u, v)` fields from the homogeneous point,
    /// velocities excluded.
    pub fn deviation_norm(&self, point: (f64, f64)) -> f64 {
        let mut acc = 0.0;
        for &x in &self.u {
            let d = x - point.0;
            acc += d * d;
        }
        for &x in &self.v {
            let d = x - point.1;
            acc += d * d;
        }
        math::sqrt(acc)
    }

    fn flatten(&self) -> Vec<f64> {
        let n = self.n();
        let mut y = Vec::with_capacity(4 * n);
        y.extend_from_slice(&self.u);
        y.extend_from_slice(&self.v);
        y.extend_from_slice(&self.du);
        y.extend_from_slice(&self.dv);
        y
    }

    fn unflatten(n: usize, y: &[f64], time: f64) -> SimState {
        SimState {
            u: y[..n].to_vec(),
            v: y[n..2 * n].to_vec(),
            du: y[2 * n..3 * n].to_vec(),
            dv: y[3 * n..4 * n].to_vec(),
            time,
        }
    }
}

/// Sampled trajectory. `blew_up` marks early termination because the state
/// norm passed [`BLOWUP_NORM`] or stopped being finite; the offending state
/// is the last sample. Blow-up counts as instability evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<SimState>,
    pub blew_up: bool,
}

impl Trajectory {
    pub fn last(&self) -> &SimState {
        self.states
            .last()
            .expect("trajectory holds the initial state")
    }
}

struct Rhs<'a> {
    model: &'a ReactionModel,
    t: &'a TransportParams,
    l: &'a DirectedLaplacian,
    n: usize,
    lu: Vec<f64>,
    lv: Vec<f64>,
}

impl Rhs<'_> {
    fn eval(&mut self, y: &[f64], out: &mut [f64]) {
        let n = self.n;
        let (u, rest) = y.split_at(n);
        let (v, rest) = rest.split_at(n);
        let (du, dv) = rest.split_at(n);
        self.l.apply(u, &mut self.lu);
        self.l.apply(v, &mut self.lv);
        let inv_tu = 1.0 / self.t.tau_u;
        let inv_tv = 1.0 / self.t.tau_v;
        for i in 0..n {
            out[i] = du[i];
            out[n + i] = dv[i];
            out[2 * n + i] = (self.model.f(u[i], v[i]) + self.t.d_u * self.lu[i] - du[i]) * inv_tu;
            out[3 * n + i] = (self.model.g(u[i], v[i]) + self.t.d_v * self.lv[i] - dv[i]) * inv_tv;
        }
    }
}

/// Conservative RK4 step suggestion from the stiffest rates in play: the
/// inertial damping `1/tau` and the wave frequency bound
/// `sqrt((reaction + diffusion strength) / tau)`.
pub fn suggested_dt(j: &JacobianEntries, t: &TransportParams, l: &DirectedLaplacian) -> f64 {
    let reaction = (j.f_u.abs() + j.f_v.abs()).max(j.g_u.abs() + j.g_v.abs());
    let diffusion = 2.0 * l.max_diagonal_magnitude() * t.d_u.max(t.d_v);
    let tau_min = t.tau_u.min(t.tau_v);
    let omega = math::sqrt((reaction + diffusion) / tau_min);
    let rate = (1.0 / tau_min).max(omega);
    (0.2 / rate).min(0.02)
}

/// Integrates `steps` RK4 steps of size `dt` from `init`, sampling the
/// initial state, every `sample_every`-th step and the final step.
pub fn integrate(
    model: &ReactionModel,
    t: &TransportParams,
    l: &DirectedLaplacian,
    init: &SimState,
    dt: f64,
    steps: usize,
    sample_every: usize,
) -> Result<Trajectory, SimError> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(SimError::InvalidStep { dt });
    }
    if steps == 0 {
        return Err(SimError::NoSteps);
    }
    if sample_every == 0 {
        return Err(SimError::InvalidStride);
    }
    let n = l.n();
    init.validate(n)?;

    let mut y = init.flatten();
    let dim = 4 * n;
    let mut rhs = Rhs {
        model,
        t,
        l,
        n,
        lu: vec![0.0; n],
        lv: vec![0.0; n],
    };
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut stage = vec![0.0; dim];

    let mut states = Vec::new();
    states.push(init.clone());
    let mut blew_up = false;

    for step in 1..=steps {
        rhs.eval(&y, &mut k1);
        for i in 0..dim {
            stage[i] = y[i] + 0.5 * dt * k1[i];
        }
        rhs.eval(&stage, &mut k2);
        for i in 0..dim {
            stage[i] = y[i] + 0.5 * dt * k2[i];
        }
        rhs.eval(&stage, &mut k3);
        for i in 0..dim {
            stage[i] = y[i] + dt * k3[i];
        }
        rhs.eval(&stage, &mut k4);
        for i in 0..dim {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let time = init.time + (step as f64) * dt;

        let mut worst = 0.0f64;
        let mut finite = true;
        for &x in &y {
            if !x.is_finite() {
                finite = false;
                break;
            }
            worst = worst.max(x.abs());
        }
        if !finite || worst > BLOWUP_NORM {
            states.push(SimState::unflatten(n, &y, time));
            blew_up = true;
            break;
        }
        if step % sample_every == 0 || step == steps {
            states.push(SimState::unflatten(n, &y, time));
        }
    }

    Ok(Trajectory { states, blew_up })
}

/// Exponential rate fitted to a perturbation's deviation norm.
///
/// `stable` is the time-domain verdict: the deviation decayed and nothing
/// blew up. `blew_up` is flagged separately so a blow-up (state norm past
/// [`BLOWUP_NORM`]) is distinguishable from a merely growing fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthEstimate {
    pub rate: f64,
    /// Time span actually used by the least-squares fit.
    pub fit_window: (f64, f64),
    /// RMS residual of the log-deviation fit.
    pub residual: f64,
    pub stable: bool,
    pub blew_up: bool,
}

/// The seeded initial condition of a growth experiment: the homogeneous
/// equilibrium plus a zero-mean uniform perturbation of the given amplitude
/// on both fields, velocities at rest.
pub fn perturbed_state(
    model: &ReactionModel,
    n: usize,
    amplitude: f64,
    seed: u64,
) -> Result<SimState, SimError> {
    if !amplitude.is_finite() || amplitude <= 0.0 {
        return Err(SimError::InvalidAmplitude { amplitude });
    }
    if n < 2 {
        return Err(SimError::TooFewNodes);
    }
    let mut init = SimState::homogeneous(n, model.equilibrium());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fill = |field: &mut [f64]| {
        let mut mean = 0.0;
        let mut delta = vec![0.0; field.len()];
        for d in delta.iter_mut() {
            *d = amplitude * (2.0 * rng.gen::<f64>() - 1.0);
            mean += *d;
        }
        mean /= field.len() as f64;
        for (x, d) in field.iter_mut().zip(delta.iter()) {
            *x += d - mean;
        }
    };
    fill(&mut init.u);
    fill(&mut init.v);
    Ok(init)
}

/// Perturbs the model's homogeneous equilibrium via [`perturbed_state`],
/// integrates to `horizon` and least-squares fits `ln ||deviation||` over
/// the window after an initial transient (first 20% of the covered time).
///
/// Samples below the rounding floor of the deviation norm are excluded so a
/// fully decayed tail cannot bias the slope.
pub fn perturbation_experiment(
    model: &ReactionModel,
    t: &TransportParams,
    l: &DirectedLaplacian,
    amplitude: f64,
    seed: u64,
    dt: f64,
    horizon: f64,
) -> Result<GrowthEstimate, SimError> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(SimError::InvalidStep { dt });
    }
    let n = l.n();
    let steps = (horizon / dt) as usize;
    if steps < 50 {
        return Err(SimError::HorizonTooShort { min: 10 });
    }

    let equilibrium = model.equilibrium();
    let init = perturbed_state(model, n, amplitude, seed)?;

    let sample_every = (steps / 512).max(1);
    let traj = integrate(model, t, l, &init, dt, steps, sample_every)?;

    let scale = 1.0 + equilibrium.0.abs().max(equilibrium.1.abs());
    let floor = 1e-12 * scale * math::sqrt(2.0 * n as f64);
    let t_last = traj.last().time;
    let t_start = 0.2 * t_last;

    let mut ts = Vec::new();
    let mut logs = Vec::new();
    for s in &traj.states {
        let d = s.deviation_norm(equilibrium);
        if s.time >= t_start && d.is_finite() && d > floor {
            ts.push(s.time);
            logs.push(math::ln(d));
        }
    }
    let min_points = 10;
    if ts.len() < min_points {
        // Fast decay or early blow-up: fall back to the full covered window.
        ts.clear();
        logs.clear();
        for s in &traj.states {
            let d = s.deviation_norm(equilibrium);
            if d.is_finite() && d > floor {
                ts.push(s.time);
                logs.push(math::ln(d));
            }
        }
    }
    if ts.len() < 2 {
        return Err(SimError::HorizonTooShort { min: 2 });
    }

    let m = ts.len() as f64;
    let t_mean = ts.iter().sum::<f64>() / m;
    let l_mean = logs.iter().sum::<f64>() / m;
    let mut num = 0.0;
    let mut den = 0.0;
    for (ti, li) in ts.iter().zip(logs.iter()) {
        num += (ti - t_mean) * (li - l_mean);
        den += (ti - t_mean) * (ti - t_mean);
    }
    let rate = num / den;
    let mut ss = 0.0;
    for (ti, li) in ts.iter().zip(logs.iter()) {
        let fit = l_mean + rate * (ti - t_mean);
        ss += (li - fit) * (li - fit);
    }
    let residual = math::sqrt(ss / m);

    Ok(GrowthEstimate {
        rate,
        fit_window: (ts[0], ts[ts.len() - 1]),
        residual,
        stable: !traj.blew_up && rate < 0.0,
        blew_up: traj.blew_up,
    })
}
