//! Output equivalence: under a constant input `u` and zero initial state,
//! the system output equals `psi * u * F(t)` where `F` is the cdf of the
//! normalized phase-type distribution.
//!
//! Inputs are restricted to constant levels. A time-varying input would need
//! a convolution with the density, which is not modelled here.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matnum::dot;
use crate::phtype::{cph_cdf, dph_cdf, PhaseType};
use crate::possys::{simulate_continuous, simulate_discrete, Kind, Realization};
use crate::xform::TransformResult;

/// Relative tolerance for [`EquivalenceReport::passed`].
pub const EQUIVALENCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub grid: Vec<f64>,
    pub y_system: Vec<f64>,
    pub y_ph: Vec<f64>,
    pub max_abs_err: f64,
    pub psi: f64,
}

impl EquivalenceReport {
    /// Acceptance threshold `1e-8 * (1 + max |y_system|)`.
    pub fn threshold(&self) -> f64 {
        let peak = self.y_system.iter().fold(0.0f64, |m, y| m.max(y.abs()));
        EQUIVALENCE_TOL * (1.0 + peak)
    }

    pub fn passed(&self) -> bool {
        self.max_abs_err <= self.threshold()
    }
}

fn check_grid(kind: Kind, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(&neg) = grid.iter().find(|&&g| g < 0.0 || g.is_nan()) {
        return Err(Error::NegativeTime(neg));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("grid must be strictly increasing"));
    }
    if kind == Kind::Discrete && grid.iter().any(|g| libm::floor(*g) != *g) {
        return Err(Error::InvalidArgument("discrete grid must hold integer steps"));
    }
    Ok(())
}

fn cdf_on_grid(ph: &PhaseType, grid: &[f64]) -> Result<Vec<f64>> {
    grid.iter()
        .map(|&g| match ph {
            PhaseType::Continuous(d) => cph_cdf(d, g),
            PhaseType::Discrete(d) => dph_cdf(d, g as u64),
        })
        .collect()
}

/// `psi * u * F(g)` for every grid point.
pub fn y_ph(tr: &TransformResult, u_level: f64, grid: &[f64]) -> Result<Vec<f64>> {
    check_grid(tr.kind(), grid)?;
    let scale = tr.psi * u_level;
    Ok(cdf_on_grid(&tr.ph, grid)?.into_iter().map(|f| scale * f).collect())
}

/// The point-mass forms for `0 < psi < 1`, using the cdf `F_X` of the
/// distribution with initial vector `alpha~` (mass `1 - psi` at zero):
/// continuous `(F_X - (1 - psi)) / f_X(0) * u`, discrete `(F_X - (1 - psi)) * u`.
pub fn y_ph_deficit_variants(tr: &TransformResult, u_level: f64, grid: &[f64]) -> Result<Vec<f64>> {
    if !(tr.psi > 0.0 && tr.psi < 1.0) {
        return Err(Error::PsiOutOfRange(tr.psi));
    }
    check_grid(tr.kind(), grid)?;
    let raw = tr.raw_distribution()?;
    let divisor = match raw {
        PhaseType::Continuous(ref d) => {
            let f0 = dot(&tr.alpha_raw, d.exit());
            if f0 <= 1e-14 {
                return Err(Error::ZeroDensityAtOrigin);
            }
            f0
        }
        PhaseType::Discrete(_) => 1.0,
    };
    let point_mass = 1.0 - tr.psi;
    Ok(cdf_on_grid(&raw, grid)?
        .into_iter()
        .map(|f| (f - point_mass) / divisor * u_level)
        .collect())
}

/// Simulates `r` from rest under the constant input and compares against [`y_ph`].
pub fn verify_equivalence(
    r: &Realization,
    tr: &TransformResult,
    u_level: f64,
    grid: &[f64],
) -> Result<EquivalenceReport> {
    if r.kind() != tr.kind() {
        return Err(Error::WrongKind {
            expected: tr.kind().as_str(),
        });
    }
    check_grid(r.kind(), grid)?;
    let x0 = vec![0.0; r.order()];
    let y_system = match r.kind() {
        Kind::Continuous => simulate_continuous(r, u_level, &x0, grid)?.outputs,
        Kind::Discrete => {
            let last = grid[grid.len() - 1] as usize;
            let traj = simulate_discrete(r, &vec![u_level; last], &x0)?;
            grid.iter().map(|&k| traj.outputs[k as usize]).collect()
        }
    };
    let y_ph = y_ph(tr, u_level, grid)?;
    let max_abs_err = y_system
        .iter()
        .zip(&y_ph)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    Ok(EquivalenceReport {
        grid: grid.to_vec(),
        y_system,
        y_ph,
        max_abs_err,
        psi: tr.psi,
    })
}
