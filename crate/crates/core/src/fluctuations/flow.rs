//! Flow matrices `A(theta) = dx/da`, `B(theta) = dx/db` of the linearized
//! equation of motion and the Jacobi-commutator construction built on them.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;

use super::Side;
use crate::error::{domain, Error, Result};
use crate::numeric::linalg::checked_inverse;
use crate::numeric::ode::{integrate, OdeOptions};
use crate::paths::{check_theta, check_time, Trajectory};
use crate::potential::Potential;

type Hessian = Arc<dyn Fn(f64) -> DMatrix<f64> + Send + Sync>;

#[derive(Debug, Clone, Copy)]
pub struct FlowOptions {
    /// Number of stored nodes on `[0, Theta]` (including both ends).
    pub nodes: usize,
    pub ode: OdeOptions,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self {
            nodes: 65,
            ode: OdeOptions::tol(1e-12, 1e-12),
        }
    }
}

/// `A`, `B` and their derivatives at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub da: DMatrix<f64>,
    pub db: DMatrix<f64>,
}

impl FlowState {
    fn from_vec(d: usize, y: &[f64]) -> Self {
        let n = d * d;
        let m = |k: usize| DMatrix::from_column_slice(d, d, &y[k * n..(k + 1) * n]);
        Self {
            a: m(0),
            b: m(1),
            da: m(2),
            db: m(3),
        }
    }

    fn to_vec(&self) -> Vec<f64> {
        [&self.a, &self.b, &self.da, &self.db]
            .iter()
            .flat_map(|m| m.as_slice().iter().copied())
            .collect()
    }
}

/// Solutions of `x'' = H(theta) x` with `A(0) = 1, A'(0) = 0, B(0) = 0, B'(0) = 1`,
/// stored on a uniform node grid and integrated from the nearest node on demand.
#[derive(Clone)]
pub struct FlowMatrices {
    dim: usize,
    period: f64,
    nodes: Vec<f64>,
    states: Vec<Vec<f64>>,
    hessian: Hessian,
    ode: OdeOptions,
}

impl std::fmt::Debug for FlowMatrices {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlowMatrices")
            .field("dim", &self.dim)
            .field("period", &self.period)
            .field("nodes", &self.nodes.len())
            .finish()
    }
}

pub fn flow_matrices<P, T>(potential: P, trajectory: T) -> Result<FlowMatrices>
where
    P: Potential + Send + Sync + 'static,
    T: Trajectory + Send + Sync + 'static,
{
    flow_matrices_with(potential, trajectory, &FlowOptions::default())
}

pub fn flow_matrices_with<P, T>(potential: P, trajectory: T, opts: &FlowOptions) -> Result<FlowMatrices>
where
    P: Potential + Send + Sync + 'static,
    T: Trajectory + Send + Sync + 'static,
{
    let dim = trajectory.dim();
    let period = trajectory.period();
    let hessian: Hessian = Arc::new(move |theta| potential.hessian(&trajectory.position(theta)));
    FlowMatrices::from_hessian(dim, period, hessian, opts)
}

impl FlowMatrices {
    /// Flow of `x'' = H(theta) x` for a prescribed Hessian along the path.
    pub fn from_hessian(dim: usize, period: f64, hessian: Hessian, opts: &FlowOptions) -> Result<Self> {
        check_theta(period)?;
        if dim == 0 {
            return Err(domain("dimension must be >= 1"));
        }
        if opts.nodes < 2 {
            return Err(domain("at least two flow nodes are required"));
        }
        let identity = DMatrix::identity(dim, dim);
        let zero = DMatrix::zeros(dim, dim);
        let start = FlowState {
            a: identity.clone(),
            b: zero.clone(),
            da: zero,
            db: identity,
        }
        .to_vec();
        let mut flow = Self {
            dim,
            period,
            nodes: (0..opts.nodes)
                .map(|i| if i + 1 == opts.nodes { period } else { period * i as f64 / (opts.nodes - 1) as f64 })
                .collect(),
            states: vec![start],
            hessian,
            ode: opts.ode,
        };
        for i in 1..flow.nodes.len() {
            let y = flow.advance(flow.nodes[i - 1], &flow.states[i - 1], flow.nodes[i])?;
            flow.states.push(y);
        }
        Ok(flow)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Hessian of the potential along the path.
    pub fn hessian(&self, theta: f64) -> DMatrix<f64> {
        (self.hessian)(theta)
    }

    fn advance(&self, t0: f64, y0: &[f64], t1: f64) -> Result<Vec<f64>> {
        let d = self.dim;
        let n = d * d;
        let rhs = |t: f64, y: &[f64], dy: &mut [f64]| {
            let h = (self.hessian)(t);
            dy[..2 * n].copy_from_slice(&y[2 * n..]);
            for (block, out) in [(0usize, 2usize), (1, 3)] {
                let x = DMatrix::from_column_slice(d, d, &y[block * n..(block + 1) * n]);
                let hx = &h * x;
                dy[out * n..(out + 1) * n].copy_from_slice(hx.as_slice());
            }
        };
        integrate(rhs, t0, y0, t1, &self.ode)
    }

    pub fn at(&self, theta: f64) -> Result<FlowState> {
        check_time(theta, self.period)?;
        let h = self.period / (self.nodes.len() - 1) as f64;
        let i = ((theta / h).round() as usize).min(self.nodes.len() - 1);
        let y = if self.nodes[i] == theta {
            self.states[i].clone()
        } else {
            self.advance(self.nodes[i], &self.states[i], theta)?
        };
        Ok(FlowState::from_vec(self.dim, &y))
    }
}

/// `J(theta, theta')`: solves the fluctuation equation in `theta` with
/// `J(theta', theta') = 0` and `dJ/dtheta = -1` there.
pub fn jacobi_commutator(flow: &FlowMatrices, theta: f64, theta_p: f64) -> Result<DMatrix<f64>> {
    let x = flow.at(theta)?;
    commutator_from(flow, &x.a, &x.b, theta_p)
}

/// `dJ(theta, theta') / dtheta`.
pub fn jacobi_commutator_dtheta(flow: &FlowMatrices, theta: f64, theta_p: f64) -> Result<DMatrix<f64>> {
    let x = flow.at(theta)?;
    commutator_from(flow, &x.da, &x.db, theta_p)
}

fn commutator_from(flow: &FlowMatrices, a: &DMatrix<f64>, b: &DMatrix<f64>, theta_p: f64) -> Result<DMatrix<f64>> {
    check_time(theta_p, flow.period)?;
    if theta_p == 0.0 {
        // Limit of the general expression, using A(0) = 1, B(0) = 0, B'(0) = 1.
        return Ok(-b);
    }
    let y = flow.at(theta_p)?;
    let a_inv = checked_inverse(&y.a, "A(theta')")?;
    let b_inv = checked_inverse(&y.b, "B(theta')")?;
    let left = a * &a_inv - b * &b_inv;
    let right = &y.da * &a_inv - &y.db * &b_inv;
    let right_inv = checked_inverse(&right, "A'A^-1 - B'B^-1")?;
    Ok(-(left * right_inv))
}

/// The matrix Green's function with Dirichlet conditions at `0` and `Theta`.
#[derive(Debug, Clone)]
pub struct GeneralGreen {
    flow: FlowMatrices,
    /// `M(0, Theta) = -J(Theta, 0)^-1`
    m_0t: DMatrix<f64>,
    /// `M(Theta, 0) = -J(0, Theta)^-1`
    m_t0: DMatrix<f64>,
}

impl GeneralGreen {
    pub fn new(flow: FlowMatrices) -> Result<Self> {
        let big = flow.period;
        let m_0t = -checked_inverse(&jacobi_commutator(&flow, big, 0.0)?, "J(Theta, 0)")?;
        let m_t0 = -checked_inverse(&jacobi_commutator(&flow, 0.0, big)?, "J(0, Theta)")?;
        Ok(Self { flow, m_0t, m_t0 })
    }

    pub fn flow(&self) -> &FlowMatrices {
        &self.flow
    }

    /// `J(theta,0) M(0,Theta) J(Theta,theta')`, the branch used for `theta <= theta'`.
    pub fn lower(&self, theta: f64, theta_p: f64) -> Result<DMatrix<f64>> {
        let big = self.flow.period;
        Ok(jacobi_commutator(&self.flow, theta, 0.0)? * &self.m_0t * jacobi_commutator(&self.flow, big, theta_p)?)
    }

    /// `J(theta,Theta) M(Theta,0) J(0,theta')`; the Green's function is minus
    /// this for `theta > theta'`.
    pub fn upper(&self, theta: f64, theta_p: f64) -> Result<DMatrix<f64>> {
        let big = self.flow.period;
        Ok(jacobi_commutator(&self.flow, theta, big)? * &self.m_t0 * jacobi_commutator(&self.flow, 0.0, theta_p)?)
    }

    pub fn value(&self, theta: f64, theta_p: f64) -> Result<DMatrix<f64>> {
        if theta <= theta_p {
            self.lower(theta, theta_p)
        } else {
            Ok(-self.upper(theta, theta_p)?)
        }
    }

    pub fn dtheta(&self, theta: f64, theta_p: f64, side: Side) -> Result<DMatrix<f64>> {
        let big = self.flow.period;
        let below = theta < theta_p || (theta == theta_p && side == Side::Below);
        if below {
            Ok(jacobi_commutator_dtheta(&self.flow, theta, 0.0)?
                * &self.m_0t
                * jacobi_commutator(&self.flow, big, theta_p)?)
        } else {
            Ok(-(jacobi_commutator_dtheta(&self.flow, theta, big)?
                * &self.m_t0
                * jacobi_commutator(&self.flow, 0.0, theta_p)?))
        }
    }
}

pub fn green_general(flow: &FlowMatrices, theta: f64, theta_p: f64) -> Result<DMatrix<f64>> {
    GeneralGreen::new(flow.clone())?.value(theta, theta_p)
}

pub fn green_general_dtheta(flow: &FlowMatrices, theta: f64, theta_p: f64, side: Side) -> Result<DMatrix<f64>> {
    GeneralGreen::new(flow.clone())?.dtheta(theta, theta_p, side)
}

/// `(2 pi)^D det[-J(Theta, 0)]`.
pub fn det_general(flow: &FlowMatrices) -> Result<f64> {
    let j = jacobi_commutator(flow, flow.period, 0.0)?;
    let determinant = (-j).lu().determinant();
    let value = (2.0 * PI).powi(flow.dim as i32) * determinant;
    if !(value > 0.0) {
        return Err(Error::ConjugatePoint { determinant: value });
    }
    Ok(value)
}
