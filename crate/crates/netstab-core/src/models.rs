//! Two-species reaction kinetics, their equilibria and Jacobians.

use alloc::boxed::Box;
use core::fmt;

use crate::math;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("parameters must be finite with b > 0 and c > 0")]
    InvalidParams,
    #[error("initial guess must be finite")]
    InvalidGuess,
    #[error("singular kinetics Jacobian at ({u}, {v})")]
    SingularJacobian { u: f64, v: f64 },
    #[error("equilibrium search stalled at ({u}, {v}), residual {residual:e} after {iterations} iterations")]
    NoEquilibrium {
        u: f64,
        v: f64,
        residual: f64,
        iterations: usize,
    },
}

/// Kinetics Jacobian evaluated at an equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianEntries {
    pub f_u: f64,
    pub f_v: f64,
    pub g_u: f64,
    pub g_v: f64,
}

impl JacobianEntries {
    pub fn trace(&self) -> f64 {
        self.f_u + self.g_v
    }

    pub fn det(&self) -> f64 {
        self.f_u * self.g_v - self.f_v * self.g_u
    }
}

/// The isolated (transport-free) system is linearly stable iff the Jacobian
/// has negative trace and positive determinant.
pub fn isolated_stability(j: &JacobianEntries) -> bool {
    j.trace() < 0.0 && j.det() > 0.0
}

pub type KineticFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// A two-species reaction model pinned at one equilibrium.
///
/// Holds the kinetics `(f, g)`, the equilibrium `(u*, v*)` they vanish at,
/// and the Jacobian there. The kinetics evaluate anywhere; the Jacobian is
/// only meaningful at the stored equilibrium.
pub struct ReactionModel {
    f: Box<KineticFn>,
    g: Box<KineticFn>,
    equilibrium: (f64, f64),
    jacobian: JacobianEntries,
}

impl fmt::Debug for ReactionModel {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("ReactionModel")
            .field("equilibrium", &self.equilibrium)
            .field("jacobian", &self.jacobian)
            .finish_non_exhaustive()
    }
}

impl ReactionModel {
    pub fn f(&self, u: f64, v: f64) -> f64 {
        (self.f)(u, v)
    }

    pub fn g(&self, u: f64, v: f64) -> f64 {
        (self.g)(u, v)
    }

    pub fn equilibrium(&self) -> (f64, f64) {
        self.equilibrium
    }

    pub fn jacobian(&self) -> JacobianEntries {
        self.jacobian
    }
}

/// Brusselator parameters; both must be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrusselatorParams {
    pub b: f64,
    pub c: f64,
}

impl BrusselatorParams {
    pub fn new(b: f64, c: f64) -> Result<Self, ModelError> {
        if !b.is_finite() || !c.is_finite() || b <= 0.0 || c <= 0.0 {
            return Err(ModelError::InvalidParams);
        }
        Ok(BrusselatorParams { b, c })
    }
}

/// Brusselator kinetics f = 1 - (b+1) u + c u^2 v, g = b u - c u^2 v.
///
/// Equilibrium (1, b/c); Jacobian there is [[b-1, c], [-b, -c]], so the
/// isolated system is stable exactly when b < 1 + c.
pub fn brusselator(params: &BrusselatorParams) -> ReactionModel {
    let (b, c) = (params.b, params.c);
    ReactionModel {
        f: Box::new(move |u, v| 1.0 - (b + 1.0) * u + c * u * u * v),
        g: Box::new(move |u, v| b * u - c * u * u * v),
        equilibrium: (1.0, b / c),
        jacobian: JacobianEntries {
            f_u: b - 1.0,
            f_v: c,
            g_u: -b,
            g_v: -c,
        },
    }
}

fn fd_jacobian(
    f: &dyn Fn(f64, f64) -> f64,
    g: &dyn Fn(f64, f64) -> f64,
    u: f64,
    v: f64,
) -> JacobianEntries {
    let hu = 1e-6 * (1.0 + u.abs());
    let hv = 1e-6 * (1.0 + v.abs());
    JacobianEntries {
        f_u: (f(u + hu, v) - f(u - hu, v)) / (2.0 * hu),
        f_v: (f(u, v + hv) - f(u, v - hv)) / (2.0 * hv),
        g_u: (g(u + hu, v) - g(u - hu, v)) / (2.0 * hu),
        g_v: (g(u, v + hv) - g(u, v - hv)) / (2.0 * hv),
    }
}

/// Builds a model from arbitrary kinetics by locating an equilibrium with a
/// damped Newton search from `guess` (residual tolerance 1e-10, at most 100
/// iterations) and differencing the Jacobian there (central differences,
/// step 1e-6 times the coordinate scale).
pub fn generic_model<F, G>(f: F, g: G, guess: (f64, f64)) -> Result<ReactionModel, ModelError>
where
    F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    G: Fn(f64, f64) -> f64 + Send + Sync + 'static,
{
    if !guess.0.is_finite() || !guess.1.is_finite() {
        return Err(ModelError::InvalidGuess);
    }
    const TOL: f64 = 1e-10;
    const MAX_ITER: usize = 100;

    let norm = |a: f64, b: f64| math::sqrt(a * a + b * b);
    let (mut u, mut v) = guess;
    let mut residual = norm(f(u, v), g(u, v));
    for _ in 0..MAX_ITER {
        let (ru, rv) = (f(u, v), g(u, v));
        residual = norm(ru, rv);
        if residual <= TOL {
            let jacobian = fd_jacobian(&f, &g, u, v);
            return Ok(ReactionModel {
                f: Box::new(f),
                g: Box::new(g),
                equilibrium: (u, v),
                jacobian,
            });
        }
        let j = fd_jacobian(&f, &g, u, v);
        let det = j.det();
        if !det.is_finite() || det.abs() < 1e-300 {
            return Err(ModelError::SingularJacobian { u, v });
        }
        let du = -(j.g_v * ru - j.f_v * rv) / det;
        let dv = -(-j.g_u * ru + j.f_u * rv) / det;

        // Backtrack until the residual actually shrinks.
        let mut alpha = 1.0;
        loop {
            let (tu, tv) = (u + alpha * du, v + alpha * dv);
            let trial = norm(f(tu, tv), g(tu, tv));
            if trial.is_finite() && trial <= (1.0 - 0.5 * alpha) * residual {
                u = tu;
                v = tv;
                break;
            }
            alpha *= 0.5;
            if alpha < 1e-4 {
                u += alpha * du;
                v += alpha * dv;
                break;
            }
        }
    }
    Err(ModelError::NoEquilibrium {
        u,
        v,
        residual,
        iterations: MAX_ITER,
    })
}
