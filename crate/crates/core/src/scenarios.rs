//! Builders for the three worked examples.

use alloc::format;
use alloc::vec;

use crate::error::{Error, Result};
use crate::matnum::Matrix;
use crate::possys::{Kind, Realization};

/// Yearly rates of a three-grade course. Dropout in grade `i` is
/// `1 - promote[i] - fail[i]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudentRates {
    pub promote: [f64; 3],
    pub fail: [f64; 3],
}

impl Default for StudentRates {
    fn default() -> Self {
        StudentRates {
            promote: [0.6, 0.8, 0.9],
            fail: [0.2, 0.15, 0.08],
        }
    }
}

/// Monthly fractions of a supplier -> producer -> retailer chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupplyRates {
    pub discard: [f64; 2],
    pub ship: [f64; 2],
    pub return_rate: f64,
    pub sell: f64,
}

impl Default for SupplyRates {
    fn default() -> Self {
        SupplyRates {
            discard: [0.15, 0.08],
            ship: [0.6, 0.8],
            return_rate: 0.05,
            sell: 0.8,
        }
    }
}

fn unit_interval(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidRates(format!("{name} = {x} is outside [0, 1]")))
    }
}

fn at_most_one(name: &str, sum: f64) -> Result<()> {
    if sum <= 1.0 + 1e-12 {
        Ok(())
    } else {
        Err(Error::InvalidRates(format!("{name} = {sum} exceeds 1")))
    }
}

impl StudentRates {
    pub fn validate(&self) -> Result<()> {
        for i in 0..3 {
            unit_interval(&format!("xi{}", i + 1), self.promote[i])?;
            unit_interval(&format!("beta{}", i + 1), self.fail[i])?;
            at_most_one(&format!("xi{0} + beta{0}", i + 1), self.promote[i] + self.fail[i])?;
        }
        Ok(())
    }

    /// Sets a rate by name (`xi1..xi3`, `beta1..beta3`).
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = match key {
            "xi1" => &mut self.promote[0],
            "xi2" => &mut self.promote[1],
            "xi3" => &mut self.promote[2],
            "beta1" => &mut self.fail[0],
            "beta2" => &mut self.fail[1],
            "beta3" => &mut self.fail[2],
            _ => return Err(Error::InvalidRates(format!("unknown student rate '{key}'"))),
        };
        *slot = value;
        Ok(())
    }
}

impl SupplyRates {
    pub fn validate(&self) -> Result<()> {
        for i in 0..2 {
            unit_interval(&format!("delta{}", i + 1), self.discard[i])?;
            unit_interval(&format!("xi{}", i + 1), self.ship[i])?;
            at_most_one(&format!("xi{0} + delta{0}", i + 1), self.ship[i] + self.discard[i])?;
        }
        unit_interval("beta3", self.return_rate)?;
        unit_interval("gamma3", self.sell)?;
        at_most_one("beta3 + gamma3", self.return_rate + self.sell)
    }

    /// Sets a rate by name (`delta1`, `delta2`, `xi1`, `xi2`, `beta3`, `gamma3`).
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = match key {
            "delta1" => &mut self.discard[0],
            "delta2" => &mut self.discard[1],
            "xi1" => &mut self.ship[0],
            "xi2" => &mut self.ship[1],
            "beta3" => &mut self.return_rate,
            "gamma3" => &mut self.sell,
            _ => return Err(Error::InvalidRates(format!("unknown supply-chain rate '{key}'"))),
        };
        *slot = value;
        Ok(())
    }
}

/// Enrolment per grade: `A = [[b1,0,0],[x1,b2,0],[0,x2,b3]]`, `B = e1`,
/// `C = (0, 0, x3)`; the output counts graduates.
pub fn student_dynamics(r: &StudentRates) -> Result<Realization> {
    r.validate()?;
    let [x1, x2, x3] = r.promote;
    let [b1, b2, b3] = r.fail;
    let a = Matrix::from_rows(&[[b1, 0.0, 0.0], [x1, b2, 0.0], [0.0, x2, b3]])?;
    Realization::new(Kind::Discrete, a, vec![1.0, 0.0, 0.0], vec![0.0, 0.0, x3])
}

/// Stock per stage. The retailer keeps `1 - beta3 - gamma3` of its stock,
/// returns `beta3` to the producer and sells `gamma3`.
pub fn supply_chain(r: &SupplyRates) -> Result<Realization> {
    r.validate()?;
    let [d1, d2] = r.discard;
    let [x1, x2] = r.ship;
    let (b3, g3) = (r.return_rate, r.sell);
    let a = Matrix::from_rows(&[
        [1.0 - x1 - d1, 0.0, 0.0],
        [x1, 1.0 - x2 - d2, b3],
        [0.0, x2, 1.0 - b3 - g3],
    ])?;
    Realization::new(Kind::Discrete, a, vec![1.0, 0.0, 0.0], vec![0.0, 0.0, g3])
}

/// Third-order continuous system with `B = (1, 1, 1)` and `C = e1`.
///
/// The `A[1][2]` coupling is 1: this is the only value consistent with the
/// published null vector `nu ∝ (1.5, 2, 1, 1)` and the transformed `T~`.
pub fn continuous_example() -> Realization {
    let a = Matrix::from_rows(&[[-2.0, 1.0, 0.0], [0.0, -1.0, 1.0], [0.0, 0.0, -1.0]]).expect("static matrix");
    Realization::new(Kind::Continuous, a, vec![1.0, 1.0, 1.0], vec![1.0, 0.0, 0.0]).expect("static realization")
}
