//! Tabulated Green's functions and Gaussian (Wick) moments.

use std::sync::Arc;

use nalgebra::DMatrix;

use super::{CentralGreen, GeneralGreen};
use crate::error::{domain, Result};
use crate::paths::{check_time, CanonicalPair};

pub const DEFAULT_GREEN_NODES: usize = 64;

/// A Dirichlet Green's function `G_ij(theta, theta')` on `[0, Theta]`.
pub trait GreenFunction: Send + Sync {
    fn dim(&self) -> usize;
    fn period(&self) -> f64;
    fn matrix(&self, theta: f64, theta_p: f64) -> Result<DMatrix<f64>>;
}

impl<P: CanonicalPair + Send + Sync> GreenFunction for CentralGreen<P> {
    fn dim(&self) -> usize {
        1
    }

    fn period(&self) -> f64 {
        CentralGreen::period(self)
    }

    fn matrix(&self, theta: f64, theta_p: f64) -> Result<DMatrix<f64>> {
        Ok(DMatrix::from_element(1, 1, self.value(theta, theta_p)?))
    }
}

impl GreenFunction for GeneralGreen {
    fn dim(&self) -> usize {
        self.flow().dim()
    }

    fn period(&self) -> f64 {
        self.flow().period()
    }

    fn matrix(&self, theta: f64, theta_p: f64) -> Result<DMatrix<f64>> {
        self.value(theta, theta_p)
    }
}

/// Samples of a Green's function on a uniform grid, falling back to exact
/// evaluation off the grid.
#[derive(Clone)]
pub struct GreenTable {
    source: Arc<dyn GreenFunction>,
    grid: Vec<f64>,
    values: Vec<DMatrix<f64>>,
}

impl std::fmt::Debug for GreenTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GreenTable").field("grid", &self.grid.len()).finish()
    }
}

impl GreenTable {
    pub fn new(source: Arc<dyn GreenFunction>) -> Result<Self> {
        Self::with_nodes(source, DEFAULT_GREEN_NODES)
    }

    pub fn with_nodes(source: Arc<dyn GreenFunction>, nodes: usize) -> Result<Self> {
        if nodes < 2 {
            return Err(domain("a Green's function table needs at least two nodes"));
        }
        let big = source.period();
        let grid: Vec<f64> = (0..nodes)
            .map(|i| if i + 1 == nodes { big } else { big * i as f64 / (nodes - 1) as f64 })
            .collect();
        let d = source.dim();
        let mut values = vec![DMatrix::zeros(d, d); nodes * nodes];
        for i in 0..nodes {
            for j in i..nodes {
                let g = source.matrix(grid[i], grid[j])?;
                values[j * nodes + i] = g.transpose();
                values[i * nodes + j] = g;
            }
        }
        Ok(Self { source, grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    fn node(&self, theta: f64) -> Option<usize> {
        let n = self.grid.len();
        let x = theta / self.grid[n - 1] * (n - 1) as f64;
        let i = x.round();
        (i >= 0.0 && (i as usize) < n && self.grid[i as usize] == theta).then_some(i as usize)
    }

    /// `G_ij(theta, theta')`.
    pub fn get(&self, i: usize, theta: f64, j: usize, theta_p: f64) -> Result<f64> {
        let d = self.dim();
        if i >= d || j >= d {
            return Err(domain(format!("channel index out of range for dimension {d}")));
        }
        let big = self.grid[self.grid.len() - 1];
        check_time(theta, big)?;
        check_time(theta_p, big)?;
        match (self.node(theta), self.node(theta_p)) {
            (Some(a), Some(b)) => Ok(self.values[a * self.grid.len() + b][(i, j)]),
            _ => Ok(self.source.matrix(theta, theta_p)?[(i, j)]),
        }
    }
}

/// `<x_i1(theta_1) ... x_ik(theta_k)>` of the Gaussian fluctuations, the sum
/// over all pairings of products of Green's functions (unnormalized by the
/// determinant prefactor).
pub fn wick_moment(green: &GreenTable, legs: &[(usize, f64)]) -> Result<f64> {
    if legs.len() % 2 == 1 {
        return Ok(0.0);
    }
    let mut rest: Vec<(usize, f64)> = legs.to_vec();
    pairings(green, &mut rest)
}

fn pairings(green: &GreenTable, legs: &mut Vec<(usize, f64)>) -> Result<f64> {
    if legs.is_empty() {
        return Ok(1.0);
    }
    let (i, t) = legs[0];
    let mut total = 0.0;
    for k in 1..legs.len() {
        let (j, s) = legs[k];
        let g = green.get(i, t, j, s)?;
        let mut remaining: Vec<(usize, f64)> = legs[1..].to_vec();
        remaining.remove(k - 1);
        total += g * pairings(green, &mut remaining)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::HarmonicPair;

    fn harmonic_table() -> GreenTable {
        GreenTable::new(Arc::new(CentralGreen::new(HarmonicPair { theta: 2.0 }).unwrap())).unwrap()
    }

    #[test]
    fn table_matches_source_on_and_off_grid() {
        let t = harmonic_table();
        let exact = |a: f64, b: f64| {
            let (lo, hi) = (a.min(b), a.max(b));
            lo.sinh() * (2.0 - hi).sinh() / 2f64.sinh()
        };
        let g = t.grid().to_vec();
        assert_eq!(g.len(), DEFAULT_GREEN_NODES);
        for (a, b) in [(g[3], g[40]), (g[63], g[1]), (0.123, 1.7)] {
            assert!((t.get(0, a, 0, b).unwrap() - exact(a, b)).abs() < 1e-14);
            assert_eq!(t.get(0, a, 0, b).unwrap(), t.get(0, b, 0, a).unwrap());
        }
        assert_eq!(t.get(0, 0.0, 0, 1.0).unwrap(), 0.0);
        assert!(t.get(1, 0.5, 0, 0.5).is_err());
    }

    #[test]
    fn wick_small_orders() {
        let t = harmonic_table();
        assert_eq!(wick_moment(&t, &[(0, 0.5)]).unwrap(), 0.0);
        assert_eq!(wick_moment(&t, &[]).unwrap(), 1.0);
        let g = t.get(0, 0.4, 0, 1.3).unwrap();
        assert_eq!(wick_moment(&t, &[(0, 0.4), (0, 1.3)]).unwrap(), g);
        let g0 = t.get(0, 0.7, 0, 0.7).unwrap();
        let m4 = wick_moment(&t, &[(0, 0.7); 4]).unwrap();
        assert!((m4 - 3.0 * g0 * g0).abs() < 1e-15);
        let m6 = wick_moment(&t, &[(0, 0.7); 6]).unwrap();
        assert!((m6 - 15.0 * g0.powi(3)).abs() < 1e-14);
    }
}
