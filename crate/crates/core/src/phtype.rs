//! Continuous (CPH) and discrete (DPH) phase-type distributions.
//!
//! The probability of starting in the absorbing state is kept as an explicit
//! `deficit` instead of an extra phase, so `T` always has order `n`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::matnum::{dot, mat_exp, mat_pow, solve_linear, Lu, Matrix};
use crate::possys::{is_stable_matrix, Kind};

/// Tolerance for row-sum and total-mass identities.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Raw probabilities within this distance of `[0, 1]` are clamped; further out is an error.
pub const PROB_WINDOW: f64 = 1e-10;

/// `CPH(alpha, T)` with exit rates `t = -T 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContPH {
    alpha: Vec<f64>,
    t_mat: Matrix,
    exit: Vec<f64>,
    deficit: f64,
}

/// `DPH(alpha, T)` with exit probabilities `t = (I - T) 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscPH {
    alpha: Vec<f64>,
    t_mat: Matrix,
    exit: Vec<f64>,
    deficit: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PhaseType {
    Continuous(ContPH),
    Discrete(DiscPH),
}

/// Absorption times drawn from one seed.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub values: Vec<f64>,
    pub seed: u64,
    pub mean: f64,
    pub variance: f64,
}

fn check_alpha(alpha: &mut [f64], n: usize) -> Result<f64> {
    if alpha.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: alpha.len(),
        });
    }
    for a in alpha.iter_mut() {
        if !a.is_finite() {
            return Err(Error::NonFinite);
        }
        if *a < 0.0 {
            if *a < -PROB_WINDOW {
                return Err(Error::InvalidDistribution(format!("negative initial weight {a}")));
            }
            *a = 0.0;
        }
    }
    let mass: f64 = alpha.iter().sum();
    if mass > 1.0 + IDENTITY_TOL {
        return Err(Error::InvalidDistribution(format!("initial weights sum to {mass} > 1")));
    }
    Ok((1.0 - mass).max(0.0))
}

fn check_exit(exit: &mut [f64], n: usize) -> Result<()> {
    if exit.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: exit.len(),
        });
    }
    for e in exit.iter_mut() {
        if !e.is_finite() {
            return Err(Error::NonFinite);
        }
        if *e < 0.0 {
            if *e < -PROB_WINDOW {
                return Err(Error::InvalidDistribution(format!("negative exit entry {e}")));
            }
            *e = 0.0;
        }
    }
    Ok(())
}

/// Accepts a raw probability only inside the sanity window, then clamps it.
pub fn clamp_probability(p: f64) -> Result<f64> {
    if !(-PROB_WINDOW..=1.0 + PROB_WINDOW).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    Ok(p.clamp(0.0, 1.0))
}

impl ContPH {
    pub fn new(alpha: Vec<f64>, t_mat: Matrix, exit: Vec<f64>) -> Result<Self> {
        let n = t_mat.ensure_square()?;
        let (mut alpha, mut exit) = (alpha, exit);
        let deficit = check_alpha(&mut alpha, n)?;
        check_exit(&mut exit, n)?;
        for i in 0..n {
            if t_mat[(i, i)] >= 0.0 {
                return Err(Error::InvalidDistribution(format!("T[{i},{i}] must be negative")));
            }
            for j in 0..n {
                if i != j && t_mat[(i, j)] < -PROB_WINDOW {
                    return Err(Error::InvalidDistribution("T must be Metzler".into()));
                }
            }
        }
        let tol = IDENTITY_TOL * t_mat.norm_inf().max(1.0);
        let residual = t_mat
            .row_sums()
            .iter()
            .zip(&exit)
            .fold(0.0f64, |m, (r, e)| m.max((r + e).abs()));
        if residual > tol {
            return Err(Error::ExitIdentity { residual });
        }
        if !is_stable_matrix(Kind::Continuous, &t_mat) {
            return Err(Error::InvalidDistribution("absorption is not certain".into()));
        }
        Ok(ContPH {
            alpha,
            t_mat,
            exit,
            deficit,
        })
    }

    /// Builds the exit vector as `-T 1`.
    pub fn from_subgenerator(alpha: Vec<f64>, t_mat: Matrix) -> Result<Self> {
        let exit = t_mat.row_sums().into_iter().map(|s| -s).collect();
        ContPH::new(alpha, t_mat, exit)
    }

    /// Exponential distribution with the given rate.
    pub fn exponential(rate: f64) -> Result<Self> {
        ContPH::new(vec![1.0], Matrix::diag(&[-rate]), vec![rate])
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }
    pub fn sub_generator(&self) -> &Matrix {
        &self.t_mat
    }
    pub fn exit(&self) -> &[f64] {
        &self.exit
    }
    pub fn deficit(&self) -> f64 {
        self.deficit
    }
    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    /// Full generator `[[T, t], [0, 0]]`.
    pub fn generator(&self) -> Matrix {
        let n = self.order();
        let mut g = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.t_mat[(i, j)];
            }
            g[(i, n)] = self.exit[i];
        }
        g
    }
}

impl DiscPH {
    pub fn new(alpha: Vec<f64>, t_mat: Matrix, exit: Vec<f64>) -> Result<Self> {
        let n = t_mat.ensure_square()?;
        let (mut alpha, mut exit, mut t_mat) = (alpha, exit, t_mat);
        let deficit = check_alpha(&mut alpha, n)?;
        check_exit(&mut exit, n)?;
        for i in 0..n {
            for j in 0..n {
                let x = t_mat[(i, j)];
                if x < 0.0 {
                    if x < -PROB_WINDOW {
                        return Err(Error::InvalidDistribution("T must be nonnegative".into()));
                    }
                    t_mat[(i, j)] = 0.0;
                }
            }
        }
        for (i, (r, e)) in t_mat.row_sums().iter().zip(&exit).enumerate() {
            let residual = (r + e - 1.0).abs();
            if residual > IDENTITY_TOL {
                return Err(Error::InvalidDistribution(format!(
                    "row {i} of [T | t] sums to {} instead of 1",
                    r + e
                )));
            }
        }
        if !is_stable_matrix(Kind::Discrete, &t_mat) {
            return Err(Error::InvalidDistribution(
                "I - T is not invertible with a nonnegative inverse".into(),
            ));
        }
        Ok(DiscPH {
            alpha,
            t_mat,
            exit,
            deficit,
        })
    }

    /// Builds the exit vector as `(I - T) 1`.
    pub fn from_substochastic(alpha: Vec<f64>, t_mat: Matrix) -> Result<Self> {
        let exit = t_mat.row_sums().into_iter().map(|s| 1.0 - s).collect();
        DiscPH::new(alpha, t_mat, exit)
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }
    pub fn sub_stochastic(&self) -> &Matrix {
        &self.t_mat
    }
    pub fn exit(&self) -> &[f64] {
        &self.exit
    }
    pub fn deficit(&self) -> f64 {
        self.deficit
    }
    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    /// One-step transition matrix `[[T, t], [0, 1]]`.
    pub fn transition_matrix(&self) -> Matrix {
        let n = self.order();
        let mut p = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = self.t_mat[(i, j)];
            }
            p[(i, n)] = self.exit[i];
        }
        p[(n, n)] = 1.0;
        p
    }
}

impl PhaseType {
    pub fn kind(&self) -> Kind {
        match self {
            PhaseType::Continuous(_) => Kind::Continuous,
            PhaseType::Discrete(_) => Kind::Discrete,
        }
    }

    pub fn alpha(&self) -> &[f64] {
        match self {
            PhaseType::Continuous(d) => d.alpha(),
            PhaseType::Discrete(d) => d.alpha(),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        match self {
            PhaseType::Continuous(d) => d.sub_generator(),
            PhaseType::Discrete(d) => d.sub_stochastic(),
        }
    }

    pub fn exit(&self) -> &[f64] {
        match self {
            PhaseType::Continuous(d) => d.exit(),
            PhaseType::Discrete(d) => d.exit(),
        }
    }

    pub fn deficit(&self) -> f64 {
        match self {
            PhaseType::Continuous(d) => d.deficit(),
            PhaseType::Discrete(d) => d.deficit(),
        }
    }

    /// cdf at `x`; discrete distributions are evaluated at `floor(x)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        match self {
            PhaseType::Continuous(d) => cph_cdf(d, x),
            PhaseType::Discrete(d) => {
                if x < 0.0 {
                    return Err(Error::NegativeTime(x));
                }
                dph_cdf(d, libm::floor(x) as u64)
            }
        }
    }

    pub fn mean(&self) -> Result<f64> {
        ph_mean(self)
    }
}

impl From<ContPH> for PhaseType {
    fn from(d: ContPH) -> Self {
        PhaseType::Continuous(d)
    }
}

impl From<DiscPH> for PhaseType {
    fn from(d: DiscPH) -> Self {
        PhaseType::Discrete(d)
    }
}

fn check_time(x: f64) -> Result<()> {
    if x < 0.0 || x.is_nan() {
        Err(Error::NegativeTime(x))
    } else {
        Ok(())
    }
}

/// Density `alpha e^(T x) t`.
pub fn cph_pdf(d: &ContPH, x: f64) -> Result<f64> {
    check_time(x)?;
    let e = mat_exp(&d.t_mat.scale(x))?;
    let f = dot(&e.vec_mul(&d.alpha)?, &d.exit);
    if f < -PROB_WINDOW {
        return Err(Error::ProbabilityOutOfRange(f));
    }
    Ok(f.max(0.0))
}

/// `1 - alpha e^(T x) 1`.
pub fn cph_cdf(d: &ContPH, x: f64) -> Result<f64> {
    check_time(x)?;
    let e = mat_exp(&d.t_mat.scale(x))?;
    let survival: f64 = e.vec_mul(&d.alpha)?.iter().sum();
    clamp_probability(1.0 - survival)
}

/// Laplace-Stieltjes transform `alpha (sI - T)^-1 t` for `s > 0`.
pub fn cph_lst(d: &ContPH, s: f64) -> Result<f64> {
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::InvalidArgument("transform variable must be positive"));
    }
    let m = d.t_mat.scale(-1.0).shift(s);
    let x = solve_linear(&m, &d.exit)?;
    Ok(dot(&d.alpha, &x))
}

fn clamp_stochastic(p: &mut Matrix) {
    let (r, c) = (p.rows(), p.cols());
    for i in 0..r {
        for j in 0..c {
            let v = p[(i, j)];
            if (-1e-12..0.0).contains(&v) {
                p[(i, j)] = 0.0;
            } else if v > 1.0 && v <= 1.0 + 1e-12 {
                p[(i, j)] = 1.0;
            }
        }
    }
}

/// Transition matrix `e^(Lambda s)` of the absorbing chain, of order `n + 1`.
pub fn cph_tpm(d: &ContPH, s: f64) -> Result<Matrix> {
    check_time(s)?;
    let mut p = mat_exp(&d.generator().scale(s))?;
    clamp_stochastic(&mut p);
    Ok(p)
}

/// `k`-step transition matrix of the absorbing chain, of order `n + 1`.
pub fn dph_tpm(d: &DiscPH, k: u64) -> Result<Matrix> {
    let mut p = mat_pow(&d.transition_matrix(), k)?;
    clamp_stochastic(&mut p);
    Ok(p)
}

/// `deficit` at `k = 0`, `alpha T^(k-1) t` for `k >= 1`.
pub fn dph_pmf(d: &DiscPH, k: u64) -> Result<f64> {
    if k == 0 {
        return Ok(d.deficit);
    }
    let p = mat_pow(&d.t_mat, k - 1)?;
    clamp_probability(dot(&p.vec_mul(&d.alpha)?, &d.exit))
}

/// `1 - alpha T^k 1`.
pub fn dph_cdf(d: &DiscPH, k: u64) -> Result<f64> {
    let p = mat_pow(&d.t_mat, k)?;
    let survival: f64 = p.vec_mul(&d.alpha)?.iter().sum();
    clamp_probability(1.0 - survival)
}

/// Expected absorption time; the deficit mass contributes time zero.
pub fn ph_mean(d: &PhaseType) -> Result<f64> {
    let n = d.alpha().len();
    let ones = vec![1.0; n];
    match d {
        PhaseType::Continuous(c) => Ok(-dot(&c.alpha, &solve_linear(&c.t_mat, &ones)?)),
        PhaseType::Discrete(c) => {
            let m = c.t_mat.scale(-1.0).shift(1.0);
            Ok(dot(&c.alpha, &solve_linear(&m, &ones)?))
        }
    }
}

/// Variance of the absorption time.
pub fn ph_variance(d: &PhaseType) -> Result<f64> {
    let n = d.alpha().len();
    let ones = vec![1.0; n];
    let mean = ph_mean(d)?;
    let second = match d {
        PhaseType::Continuous(c) => {
            // E[X^2] = 2 alpha T^-2 1
            let lu = Lu::factor(&c.t_mat)?;
            let once = lu.solve(&ones)?;
            2.0 * dot(&c.alpha, &lu.solve(&once)?)
        }
        PhaseType::Discrete(c) => {
            // E[X(X-1)] = 2 alpha T (I-T)^-2 1
            let lu = Lu::factor(&c.t_mat.scale(-1.0).shift(1.0))?;
            let once = lu.solve(&ones)?;
            let twice = lu.solve(&once)?;
            2.0 * dot(&c.alpha, &c.t_mat.mul_vec(&twice)?) + mean
        }
    };
    Ok((second - mean * mean).max(0.0))
}

/// Seed of the substream used for sample `index`.
///
/// Substreams are independent of scheduling: sample `i` always comes from
/// `Xoshiro256PlusPlus::seed_from_u64(seed + i * 0x9E37_79B9_7F4A_7C15)`
/// (wrapping), whose SplitMix64 seeding decorrelates neighbouring indices.
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn uniform(rng: &mut Xoshiro256PlusPlus) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Index drawn proportionally to `weights`; `weights.len()` if the draw
/// falls past the last bucket (numerical slack).
fn categorical(rng: &mut Xoshiro256PlusPlus, weights: impl Iterator<Item = f64> + Clone) -> usize {
    let total: f64 = weights.clone().sum();
    let target = uniform(rng) * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, w) in weights.enumerate() {
        if w > 0.0 {
            last_positive = i;
        }
        acc += w;
        if target < acc {
            return i;
        }
    }
    last_positive
}

/// One absorption time from substream `index` of `seed`.
pub fn sample_one(d: &PhaseType, seed: u64, index: u64) -> f64 {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(substream_seed(seed, index));
    let alpha = d.alpha();
    let n = alpha.len();
    let start = alpha.iter().copied().chain(core::iter::once(d.deficit()));
    let mut state = categorical(&mut rng, start);
    let mut time = 0.0;
    match d {
        PhaseType::Discrete(c) => {
            while state < n {
                time += 1.0;
                let row = c
                    .t_mat
                    .row(state)
                    .iter()
                    .copied()
                    .chain(core::iter::once(c.exit[state]));
                state = categorical(&mut rng, row);
            }
        }
        PhaseType::Continuous(c) => {
            while state < n {
                let rate = -c.t_mat[(state, state)];
                time += -libm::log(1.0 - uniform(&mut rng)) / rate;
                let from = state;
                let row = c
                    .t_mat
                    .row(from)
                    .iter()
                    .enumerate()
                    .map(move |(j, &v)| if j == from { 0.0 } else { v })
                    .chain(core::iter::once(c.exit[from]));
                state = categorical(&mut rng, row);
            }
        }
    }
    time
}

/// Summary statistics of a sample: arithmetic mean and unbiased variance.
pub fn summarize(values: Vec<f64>, seed: u64) -> SampleSet {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = if values.len() > 1 {
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    SampleSet {
        values,
        seed,
        mean,
        variance,
    }
}

/// Simulates `count` absorption times of the underlying chain.
pub fn ph_sample(d: &PhaseType, count: usize, seed: u64) -> Result<SampleSet> {
    if count == 0 {
        return Err(Error::InvalidCount);
    }
    let values = (0..count as u64).map(|i| sample_one(d, seed, i)).collect();
    Ok(summarize(values, seed))
}
