//! Transforms of excitable, stable positive realizations into phase-type
//! representations by a positive diagonal similarity.
//!
//! Continuous time: with `Delta = [[A, B], [0, 0]]` and a positive null vector
//! `nu` of `Delta`, `U = diag(nu_1..nu_n) / nu_(n+1)` gives
//! `alpha~ = C U`, `T~ = U^-1 A U`, `t~ = U^-1 B = -T~ 1`.
//!
//! Discrete time: with `z = (I - A)^-1 B > 0` and `M = diag(z)`,
//! `alpha~ = C M`, `T~ = M^-1 A M`, `t~ = M^-1 B = (I - T~) 1`.
//!
//! In both cases `psi = sum(alpha~)` and the distribution carries `alpha~ / psi`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matnum::{dominant_eigenpair, norm_inf, solve_linear, Matrix, DEFAULT_EIG_TOL};
use crate::phtype::{ContPH, DiscPH, PhaseType};
use crate::possys::{is_excitable, is_metzler, is_nonnegative, is_stable, Kind, Realization};

/// Agreement required between the null vector and the power-iteration cross-check.
pub const CROSS_CHECK_TOL: f64 = 1e-8;
pub const EXIT_IDENTITY_TOL: f64 = 1e-9;
const CROSS_CHECK_MAX_ITER: usize = 200_000;

/// The diagonal scaling that maps the realization onto the PH representation.
#[derive(Debug, Clone, PartialEq)]
pub enum Similarity {
    Continuous {
        /// Shift used for the power-iteration cross-check.
        eta: f64,
        /// `(v, 1)` with `A v = -B`.
        nu: Vec<f64>,
        /// Diagonal of `U`.
        u: Vec<f64>,
    },
    Discrete {
        z: Vec<f64>,
        /// Diagonal of `M` (equal to `z`).
        m: Vec<f64>,
    },
}

impl Similarity {
    /// The diagonal of `U` or `M`.
    pub fn diagonal(&self) -> &[f64] {
        match self {
            Similarity::Continuous { u, .. } => u,
            Similarity::Discrete { m, .. } => m,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult {
    pub similarity: Similarity,
    /// `alpha~`, which may sum to something other than one.
    pub alpha_raw: Vec<f64>,
    pub psi: f64,
    /// The distribution built from `alpha~ / psi`.
    pub ph: PhaseType,
    /// `max_i |t~_i + (T~ 1)_i|` (continuous) or `max_i |(T~ 1)_i + t~_i - 1|` (discrete).
    pub exit_identity_residual: f64,
}

impl TransformResult {
    pub fn kind(&self) -> Kind {
        self.ph.kind()
    }

    pub fn alpha_star(&self) -> &[f64] {
        self.ph.alpha()
    }

    /// The distribution with the unnormalized `alpha~` as initial vector and
    /// point mass `1 - psi` at zero. Only defined for `psi <= 1`.
    pub fn raw_distribution(&self) -> Result<PhaseType> {
        if self.psi > 1.0 + crate::phtype::IDENTITY_TOL {
            return Err(Error::PsiOutOfRange(self.psi));
        }
        let alpha = self.alpha_raw.clone();
        let t = self.ph.matrix().clone();
        let exit = self.ph.exit().to_vec();
        Ok(match self.ph {
            PhaseType::Continuous(_) => ContPH::new(alpha, t, exit)?.into(),
            PhaseType::Discrete(_) => DiscPH::new(alpha, t, exit)?.into(),
        })
    }
}

/// `[[A, B], [0, 0]]`.
pub fn augment(a: &Matrix, b: &[f64]) -> Result<Matrix> {
    let n = a.ensure_square()?;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut d = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            d[(i, j)] = a[(i, j)];
        }
        d[(i, n)] = b[i];
    }
    Ok(d)
}

/// Default shift: one plus the largest absolute row sum, so `Delta + eta I`
/// is nonnegative with a positive diagonal.
pub fn default_eta(delta: &Matrix) -> f64 {
    1.0 + delta.norm_inf()
}

/// Perron vector of `Delta + eta I` by power iteration, rescaled so that its
/// last entry is one.
pub fn perron_null_vector(delta: &Matrix, eta: f64) -> Result<Vec<f64>> {
    let (_, v) = dominant_eigenpair(&delta.shift(eta), DEFAULT_EIG_TOL, CROSS_CHECK_MAX_ITER)?;
    let last = v[v.len() - 1];
    if last <= 0.0 {
        return Err(Error::NonpositiveNu {
            index: v.len() - 1,
            value: last,
        });
    }
    Ok(v.iter().map(|x| x / last).collect())
}

/// `(alpha~ / psi, psi)`.
pub fn normalize_alpha(alpha_raw: &[f64]) -> Result<(Vec<f64>, f64)> {
    if let Some(&neg) = alpha_raw.iter().find(|&&a| a < -1e-12) {
        return Err(Error::InvalidDistribution(alloc::format!(
            "negative initial weight {neg}"
        )));
    }
    let psi: f64 = alpha_raw.iter().sum();
    if psi <= 1e-14 {
        return Err(Error::ZeroMass);
    }
    Ok((alpha_raw.iter().map(|a| a.max(0.0) / psi).collect(), psi))
}

/// Diagonal of `U = diag(nu_1..nu_n) / nu_(n+1)`; depends only on ratios.
pub fn scaling_from_nu(nu: &[f64]) -> Vec<f64> {
    let (last, head) = nu.split_last().expect("nu has n + 1 >= 2 entries");
    head.iter().map(|x| x / last).collect()
}

/// `(D^-1 A D, D^-1 B, C D)` for a positive diagonal `D`, returned as
/// `(T~, t~, alpha~)`.
pub fn diagonal_similarity(r: &Realization, d: &[f64]) -> (Matrix, Vec<f64>, Vec<f64>) {
    let n = d.len();
    let a = r.a();
    let mut t = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            t[(i, j)] = a[(i, j)] * d[j] / d[i];
        }
    }
    let exit = r.b().iter().zip(d).map(|(b, di)| b / di).collect();
    let alpha = r.c().iter().zip(d).map(|(c, di)| c * di).collect();
    (t, exit, alpha)
}

/// Continuous realization to CPH.
pub fn cont_to_cph(r: &Realization) -> Result<TransformResult> {
    cont_to_cph_with_eta(r, None)
}

/// As [`cont_to_cph`], with an explicit shift for the eigenvector cross-check.
pub fn cont_to_cph_with_eta(r: &Realization, eta: Option<f64>) -> Result<TransformResult> {
    if r.kind() != Kind::Continuous {
        return Err(Error::WrongKind { expected: "continuous" });
    }
    if !is_metzler(r.a()) {
        return Err(Error::NotMetzler);
    }
    if !is_excitable(r.a(), r.b()) {
        return Err(Error::NotExcitable);
    }
    if !is_stable(r) {
        return Err(Error::NotStable);
    }

    // Delta nu = 0 with nu_(n+1) = 1 reduces to A v = -B.
    let neg_b: Vec<f64> = r.b().iter().map(|b| -b).collect();
    let v = solve_linear(r.a(), &neg_b)?;
    if let Some((index, &value)) = v.iter().enumerate().find(|(_, &x)| x <= 0.0) {
        return Err(Error::NonpositiveNu { index, value });
    }
    let mut nu = v.clone();
    nu.push(1.0);

    let delta = augment(r.a(), r.b())?;
    let eta = eta.unwrap_or_else(|| default_eta(&delta));
    let check = perron_null_vector(&delta, eta)?;
    let deviation = nu
        .iter()
        .zip(&check)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs() / x.abs().max(1.0)));
    if deviation > CROSS_CHECK_TOL {
        return Err(Error::EigenvectorMismatch { deviation });
    }

    let u = scaling_from_nu(&nu);
    let (t_mat, exit, alpha_raw) = diagonal_similarity(r, &u);
    let residual = norm_inf(
        &t_mat
            .row_sums()
            .iter()
            .zip(&exit)
            .map(|(s, e)| s + e)
            .collect::<Vec<_>>(),
    );
    if residual > EXIT_IDENTITY_TOL * t_mat.norm_inf().max(1.0) {
        return Err(Error::ExitIdentity { residual });
    }
    let (alpha_star, psi) = normalize_alpha(&alpha_raw)?;
    let ph = ContPH::new(alpha_star, t_mat, exit)?;
    Ok(TransformResult {
        similarity: Similarity::Continuous { eta, nu, u },
        alpha_raw,
        psi,
        ph: ph.into(),
        exit_identity_residual: residual,
    })
}

/// Discrete realization to DPH.
pub fn disc_to_dph(r: &Realization) -> Result<TransformResult> {
    if r.kind() != Kind::Discrete {
        return Err(Error::WrongKind { expected: "discrete" });
    }
    if !is_nonnegative(r.a()) {
        return Err(Error::NotNonnegative { what: "A" });
    }
    if !is_excitable(r.a(), r.b()) {
        return Err(Error::NotExcitable);
    }
    if !is_stable(r) {
        return Err(Error::NotStable);
    }
    let i_minus_a = r.a().scale(-1.0).shift(1.0);
    let z = solve_linear(&i_minus_a, r.b())?;
    if let Some((index, &value)) = z.iter().enumerate().find(|(_, &x)| x <= 1e-12) {
        return Err(Error::NonpositiveZ { index, value });
    }
    let (t_mat, exit, alpha_raw) = diagonal_similarity(r, &z);
    if alpha_raw.iter().any(|&a| a < 0.0) {
        return Err(Error::NotNonnegative { what: "alpha~" });
    }
    let residual = norm_inf(
        &t_mat
            .row_sums()
            .iter()
            .zip(&exit)
            .map(|(s, e)| s + e - 1.0)
            .collect::<Vec<_>>(),
    );
    if residual > EXIT_IDENTITY_TOL {
        return Err(Error::ExitIdentity { residual });
    }
    let (alpha_star, psi) = normalize_alpha(&alpha_raw)?;
    let ph = DiscPH::new(alpha_star, t_mat, exit)?;
    Ok(TransformResult {
        similarity: Similarity::Discrete { m: z.clone(), z },
        alpha_raw,
        psi,
        ph: ph.into(),
        exit_identity_residual: residual,
    })
}

/// Dispatches on the realization kind.
pub fn transform(r: &Realization) -> Result<TransformResult> {
    match r.kind() {
        Kind::Continuous => cont_to_cph(r),
        Kind::Discrete => disc_to_dph(r),
    }
}
