//! Positive single-input single-output LTI realizations `(A, B, C)`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matnum::{dot, mat_exp, solve_linear, Lu, Matrix};

/// Entries at or above `-CLAMP_TOL` count as nonnegative and are clamped to zero.
pub const CLAMP_TOL: f64 = 1e-9;
/// Threshold for structural zeros in the excitability graph.
pub const STRUCTURAL_ZERO: f64 = 1e-12;
/// Stability margin on the Perron root.
pub const STABILITY_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Continuous,
    Discrete,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Continuous => "continuous",
            Kind::Discrete => "discrete",
        }
    }
}

/// A positive SISO realization: `A` is Metzler (continuous) or nonnegative
/// (discrete), and `B`, `C` are nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    kind: Kind,
    a: Matrix,
    b: Vec<f64>,
    c: Vec<f64>,
}

/// Sampled states and outputs of a simulated system.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub outputs: Vec<f64>,
}

fn clamp_nonneg(xs: &mut [f64], what: &'static str) -> Result<()> {
    for x in xs {
        if *x < 0.0 {
            if *x < -CLAMP_TOL {
                return Err(Error::NotNonnegative { what });
            }
            *x = 0.0;
        }
    }
    Ok(())
}

impl Realization {
    pub fn new(kind: Kind, a: Matrix, b: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        let n = a.ensure_square()?;
        for v in [&b, &c] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        let (mut a, mut b, mut c) = (a, b, c);
        clamp_nonneg(&mut b, "B")?;
        clamp_nonneg(&mut c, "C")?;
        for i in 0..n {
            for j in 0..n {
                let x = a[(i, j)];
                if x >= 0.0 || (kind == Kind::Continuous && i == j) {
                    continue;
                }
                if x < -CLAMP_TOL {
                    return Err(match kind {
                        Kind::Continuous => Error::NotMetzler,
                        Kind::Discrete => Error::NotNonnegative { what: "A" },
                    });
                }
                a[(i, j)] = 0.0;
            }
        }
        Ok(Realization { kind, a, b, c })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// `C A^(k-1) B` for discrete systems, `C e^(A k) B` for continuous ones.
    pub fn markov_parameter(&self, k: f64) -> Result<f64> {
        match self.kind {
            Kind::Discrete => {
                let pk = crate::matnum::mat_pow(&self.a, (k as u64).saturating_sub(1))?;
                Ok(dot(&self.c, &pk.mul_vec(&self.b)?))
            }
            Kind::Continuous => {
                let e = mat_exp(&self.a.scale(k))?;
                Ok(dot(&self.c, &e.mul_vec(&self.b)?))
            }
        }
    }
}

/// Every off-diagonal entry is nonnegative (up to `1e-12`).
pub fn is_metzler(a: &Matrix) -> bool {
    if !a.is_square() {
        return false;
    }
    let n = a.rows();
    (0..n).all(|i| (0..n).all(|j| i == j || a[(i, j)] >= -STRUCTURAL_ZERO))
}

pub fn is_nonnegative(a: &Matrix) -> bool {
    a.as_slice().iter().all(|&x| x >= -STRUCTURAL_ZERO)
}

/// Every state is reachable from the input in the graph with edges
/// `input -> i` when `B_i != 0` and `j -> i` when `A_ij != 0`.
pub fn is_excitable(a: &Matrix, b: &[f64]) -> bool {
    let n = b.len();
    if !a.is_square() || a.rows() != n {
        return false;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for (i, &bi) in b.iter().enumerate() {
        if bi > STRUCTURAL_ZERO {
            seen[i] = true;
            queue.push_back(i);
        }
    }
    while let Some(j) = queue.pop_front() {
        for i in 0..n {
            if !seen[i] && a[(i, j)].abs() > STRUCTURAL_ZERO {
                seen[i] = true;
                queue.push_back(i);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Perron root test on a nonnegative or Metzler matrix.
///
/// Uses the M-matrix characterization instead of iterating for the root:
/// with `M = margin_point * I - A` (a Z-matrix), the Perron root of `A` is
/// below `margin_point` iff `M` is nonsingular and `M^-1 1 > 0`.
fn perron_root_below(a: &Matrix, margin_point: f64) -> bool {
    let m = a.scale(-1.0).shift(margin_point);
    let Ok(lu) = Lu::factor(&m) else {
        return false;
    };
    match lu.solve(&vec![1.0; a.rows()]) {
        Ok(x) => x.iter().all(|&v| v > 0.0),
        Err(_) => false,
    }
}

/// Continuous: Perron root of `A` below `-1e-12`. Discrete: below `1 - 1e-12`.
pub fn is_stable(r: &Realization) -> bool {
    is_stable_matrix(r.kind, &r.a)
}

pub fn is_stable_matrix(kind: Kind, a: &Matrix) -> bool {
    match kind {
        Kind::Continuous => perron_root_below(a, -STABILITY_MARGIN),
        Kind::Discrete => perron_root_below(a, 1.0 - STABILITY_MARGIN),
    }
}

/// Perron root of a Metzler matrix, by power iteration on `A + eta I` with
/// `eta = 1 + max_i sum_j |A_ij|`.
pub fn perron_root(a: &Matrix, tol: f64, max_iter: usize) -> Result<f64> {
    let eta = 1.0 + a.norm_inf();
    let (lambda, _) = crate::matnum::dominant_eigenpair(&a.shift(eta), tol, max_iter)?;
    Ok(lambda - eta)
}

/// `x(k+1) = A x(k) + B u(k)`, `y(k) = C x(k)` for `k = 0..=inputs.len()`.
pub fn simulate_discrete(r: &Realization, inputs: &[f64], x0: &[f64]) -> Result<Trajectory> {
    if r.kind != Kind::Discrete {
        return Err(Error::WrongKind { expected: "discrete" });
    }
    let n = r.order();
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x0.len(),
        });
    }
    let steps = inputs.len();
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut outputs = Vec::with_capacity(steps + 1);
    let mut x = x0.to_vec();
    for k in 0..=steps {
        times.push(k as f64);
        outputs.push(dot(&r.c, &x));
        let next = match inputs.get(k) {
            Some(&u) => {
                let mut next = r.a.mul_vec(&x)?;
                for (xi, bi) in next.iter_mut().zip(&r.b) {
                    *xi += bi * u;
                }
                Some(next)
            }
            None => None,
        };
        states.push(core::mem::take(&mut x));
        if let Some(next) = next {
            x = next;
        }
    }
    Ok(Trajectory { times, states, outputs })
}

/// Step response under a constant input:
/// `x(t) = e^(At) x0 + A^-1 (e^(At) - I) B u`.
pub fn simulate_continuous(r: &Realization, u: f64, x0: &[f64], grid: &[f64]) -> Result<Trajectory> {
    if r.kind != Kind::Continuous {
        return Err(Error::WrongKind { expected: "continuous" });
    }
    let n = r.order();
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x0.len(),
        });
    }
    if grid.is_empty() {
        return Err(Error::Empty);
    }
    if grid[0] < 0.0 {
        return Err(Error::NegativeTime(grid[0]));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidDistribution(
            "time grid must be strictly increasing".into(),
        ));
    }
    let lu = Lu::factor(&r.a)?;
    let bu: Vec<f64> = r.b.iter().map(|b| b * u).collect();
    let mut states = Vec::with_capacity(grid.len());
    let mut outputs = Vec::with_capacity(grid.len());
    for &t in grid {
        let e = mat_exp(&r.a.scale(t))?;
        let mut x = e.mul_vec(x0)?;
        let forced = e.mul_vec(&bu)?;
        let rhs: Vec<f64> = forced.iter().zip(&bu).map(|(f, b)| f - b).collect();
        let particular = lu.solve(&rhs)?;
        for (xi, p) in x.iter_mut().zip(particular) {
            *xi += p;
        }
        outputs.push(dot(&r.c, &x));
        states.push(x);
    }
    Ok(Trajectory {
        times: grid.to_vec(),
        states,
        outputs,
    })
}

/// Steady-state output under a constant input (`-C A^-1 B u` or `C (I-A)^-1 B u`).
pub fn steady_state_output(r: &Realization, u: f64) -> Result<f64> {
    let x = match r.kind {
        Kind::Continuous => solve_linear(&r.a, &r.b)?.into_iter().map(|v| -v).collect(),
        Kind::Discrete => {
            let m = r.a.scale(-1.0).shift(1.0);
            solve_linear(&m, &r.b)?
        }
    };
    Ok(dot(&r.c, &x) * u)
}
