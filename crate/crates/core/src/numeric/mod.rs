//! Numerical building blocks shared by the physics modules.

pub mod hermite;
pub mod linalg;
pub mod ode;
pub mod quadrature;
pub mod roots;
