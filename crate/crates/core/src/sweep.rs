//! Monotonicity-threshold map over initial population and measurement interval.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{down_state_threshold, eta_threshold};

pub const DEFAULT_ETA_CAP: f64 = 1e3;

/// Which state of X is recorded at every measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MeasuredState {
    #[default]
    Up,
    Down,
}

/// Rectangular grid over `p_up` and `x = 2ετ/π`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub p_range: (f64, f64),
    pub x_range: (f64, f64),
    pub n_p: usize,
    pub n_x: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            p_range: (0.1, 0.9),
            x_range: (0.1, 0.9),
            n_p: 33,
            n_x: 33,
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if n == 1 {
        lo
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        let (p_lo, p_hi) = self.p_range;
        let (x_lo, x_hi) = self.x_range;
        if !(p_lo <= p_hi && x_lo <= x_hi) {
            return Err(Error::InvalidParameter(
                "grid ranges must be ordered".into(),
            ));
        }
        if !(p_lo > 0.0 && p_hi < 1.0) {
            return Err(Error::InvalidParameter(
                "p_up range must lie in (0, 1)".into(),
            ));
        }
        if !(x_lo.is_finite() && x_hi.is_finite()) {
            return Err(Error::InvalidParameter("x range must be finite".into()));
        }
        if self.n_p == 0 || self.n_x == 0 {
            return Err(Error::InvalidParameter(
                "grid needs at least one point per axis".into(),
            ));
        }
        Ok(())
    }

    pub fn p(&self, i: usize) -> f64 {
        linspace(self.p_range.0, self.p_range.1, self.n_p, i)
    }

    pub fn x(&self, j: usize) -> f64 {
        linspace(self.x_range.0, self.x_range.1, self.n_x, j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub p_up: f64,
    /// `2ετ/π`.
    pub two_eps_tau_over_pi: f64,
    /// η clamped to the plot cap.
    pub eta: f64,
    pub eta_raw: f64,
    /// Purity grows monotonically from the first measurement (`η < 1`).
    pub monotonic: bool,
}

impl SweepCell {
    pub fn eps_tau(&self) -> f64 {
        self.two_eps_tau_over_pi * FRAC_PI_2
    }
}

pub fn sweep_cell(p_up: f64, x: f64, measured: MeasuredState, eta_cap: f64) -> Result<SweepCell> {
    let eps_tau = x * FRAC_PI_2;
    let eta_raw = match measured {
        MeasuredState::Up => eta_threshold(p_up, eps_tau)?,
        MeasuredState::Down => down_state_threshold(p_up, eps_tau)?,
    };
    Ok(SweepCell {
        p_up,
        two_eps_tau_over_pi: x,
        eta: eta_raw.min(eta_cap),
        eta_raw,
        monotonic: eta_raw < 1.0,
    })
}

/// Evaluates every grid cell in parallel; rows come back `p_up`-major.
pub fn eta_map(grid: &Grid, measured: MeasuredState, eta_cap: f64) -> Result<Vec<SweepCell>> {
    grid.validate()?;
    (0..grid.n_p * grid.n_x)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / grid.n_x, idx % grid.n_x);
            sweep_cell(grid.p(i), grid.x(j), measured, eta_cap)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_layout() {
        let grid = Grid {
            n_p: 3,
            n_x: 2,
            ..Grid::default()
        };
        let cells = eta_map(&grid, MeasuredState::Up, DEFAULT_ETA_CAP).unwrap();
        assert_eq!(cells.len(), 6);
        assert_eq!((cells[0].p_up, cells[0].two_eps_tau_over_pi), (0.1, 0.1));
        assert_eq!((cells[1].p_up, cells[1].two_eps_tau_over_pi), (0.1, 0.9));
        assert_eq!(cells[2].p_up, 0.5);
        assert!(cells[2..4].iter().all(|c| c.eta == 0.5));
        assert!(cells[4..].iter().all(|c| c.monotonic));
    }

    #[test]
    fn cap_keeps_raw_value() {
        let cell = sweep_cell(0.1, 0.01, MeasuredState::Up, 5.0).unwrap();
        assert_eq!(cell.eta, 5.0);
        assert!(cell.eta_raw > 5.0);
        assert!(!cell.monotonic);
    }

    #[test]
    fn down_measurement_mirrors_population() {
        let up = sweep_cell(0.8, 0.3, MeasuredState::Up, DEFAULT_ETA_CAP).unwrap();
        let down = sweep_cell(0.8, 0.3, MeasuredState::Down, DEFAULT_ETA_CAP).unwrap();
        assert!(up.monotonic);
        assert!(!down.monotonic);
    }

    #[test]
    fn invalid_grids() {
        let bad = Grid {
            p_range: (0.9, 0.1),
            ..Grid::default()
        };
        assert!(eta_map(&bad, MeasuredState::Up, 10.0).is_err());
        let empty = Grid {
            n_p: 0,
            ..Grid::default()
        };
        assert!(empty.validate().is_err());
    }
}
