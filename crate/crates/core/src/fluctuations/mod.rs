//! Fluctuation determinants and Green's functions of the quadratic
//! fluctuation operator `-d^2/dtheta^2 + V''(x_c(theta))`.
//!
//! Two routes are provided: closed forms built on canonical solution pairs
//! for radial paths of central potentials, and a general construction from
//! the flow matrices `A = dx/da`, `B = dx/db` for arbitrary trajectories.

mod central;
mod flow;
mod table;

pub use central::{
    det_from_pair, det_harmonic, det_longitudinal, det_transverse, green_central, green_central_dtheta, omega_kernel,
    CentralGreen, OmegaKernel,
};
pub use flow::{
    det_general, flow_matrices, flow_matrices_with, green_general, green_general_dtheta, jacobi_commutator,
    jacobi_commutator_dtheta, FlowMatrices, FlowOptions, FlowState, GeneralGreen,
};
pub use table::{wick_moment, GreenFunction, GreenTable, DEFAULT_GREEN_NODES};

/// Which one-sided limit to take at `theta = theta'`, where the first
/// derivative of a Green's function jumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    Above,
}
