//! Feasibility and coupling design for perfect state transfer between
//! antipodal vertices.
//!
//! Transfer at time `t0` with phase `theta` requires, for every eigenvalue
//! `x_k`,
//!
//! ```text
//! -2 t0 sum_m J_m P_m(x_k) = theta + pi [s_k = -1]   (mod 2 pi)
//! ```
//!
//! with `s_k = P_d(x_k) = +-1`. Writing `u_m = 2 t0 J_m` and fixing a branch
//! integer `l_k` per eigenvalue turns this into the linear system
//! `P u = -(theta + pi [s_k = -1] + 2 pi l_k)`.

use std::f64::consts::PI;

use nalgebra::DVector;

use crate::scheme::SchemeParameters;
use crate::spectra::SpectralData;

/// `||P_d(x_k)| - 1|` above this makes PST infeasible.
pub const MODULUS_TOLERANCE: f64 = 1e-8;
/// Solutions emitted by the solver have residual at most this.
pub const SOLUTION_TOLERANCE: f64 = 1e-10;
/// `|J_m| t0` below this counts as a vanishing coupling when ranking.
pub const ZERO_COUPLING: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PstError {
    #[error("not antipodal: the last stratum has kappa_d = {kappa_d} vertices")]
    NotAntipodal { kappa_d: u64 },
    #[error("|P_d(x_{k})| = {modulus} is not 1 (x_{k} = {x})")]
    ModulusMismatch { k: usize, x: f64, modulus: f64 },
    #[error("the eigenmatrix P is singular")]
    Singular,
    #[error("expected {expected} values, got {found}")]
    Length { expected: usize, found: usize },
    #[error("t0 must be positive, got {0}")]
    NonPositiveTime(f64),
}

/// Sign pattern `s_k = sign P_d(x_k)` of a feasible scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct Feasibility {
    pub s: Vec<i8>,
    /// `|P_d(x_k)|`.
    pub moduli: Vec<f64>,
    /// Last column of `(P^T)^{-1}`, equal to `gamma_k P_d(x_k)`.
    pub last_column: Vec<f64>,
}

/// Checks `kappa_d = 1` and `|P_d(x_k)| = 1` for every `k`.
pub fn feasibility(
    spec: &SpectralData,
    params: &SchemeParameters,
) -> Result<Feasibility, PstError> {
    let d = params.diameter();
    if params.kappa[d] != 1 {
        return Err(PstError::NotAntipodal {
            kappa_d: params.kappa[d],
        });
    }
    let n = spec.len();
    let pt_inv = spec
        .pmat
        .transpose()
        .lu()
        .try_inverse()
        .ok_or(PstError::Singular)?;
    let last_column = (0..n).map(|k| pt_inv[(k, d)]).collect();

    let mut s = Vec::with_capacity(n);
    let mut moduli = Vec::with_capacity(n);
    for k in 0..n {
        let value = spec.pmat[(k, d)];
        let modulus = value.abs();
        if (modulus - 1.0).abs() > MODULUS_TOLERANCE {
            return Err(PstError::ModulusMismatch {
                k,
                x: spec.x[k],
                modulus,
            });
        }
        s.push(if value > 0.0 { 1 } else { -1 });
        moduli.push(modulus);
    }
    Ok(Feasibility {
        s,
        moduli,
        last_column,
    })
}

/// Moduli `|P_d(x_k)|` regardless of feasibility, for diagnostics.
pub fn modulus_table(spec: &SpectralData) -> Vec<(f64, f64)> {
    let d = spec.diameter();
    (0..spec.len())
        .map(|k| (spec.x[k], spec.pmat[(k, d)]))
        .collect()
}

/// Coupling constants achieving transfer, with the branch data that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingSolution {
    pub theta: f64,
    pub t0: f64,
    pub j: Vec<f64>,
    pub l: Vec<i64>,
    pub s: Vec<i8>,
    /// Max phase deviation from the transfer conditions, radians.
    pub residual: f64,
}

impl CouplingSolution {
    /// Number of couplings with `|J_m| t0 < ZERO_COUPLING`.
    pub fn zero_count(&self) -> usize {
        self.j
            .iter()
            .filter(|&&j| (j * self.t0).abs() < ZERO_COUPLING)
            .count()
    }

    /// `max_m |J_m| t0`.
    pub fn max_strength(&self) -> f64 {
        self.j
            .iter()
            .map(|j| (j * self.t0).abs())
            .fold(0.0, f64::max)
    }
}

fn target_phase(theta: f64, s: i8) -> f64 {
    if s < 0 {
        theta + PI
    } else {
        theta
    }
}

/// Solves `P u = -(theta + pi [s_k = -1] + 2 pi l_k)` for `u_m = 2 t0 J_m`.
pub fn phase_coefficients(
    spec: &SpectralData,
    s: &[i8],
    theta: f64,
    l: &[i64],
) -> Result<Vec<f64>, PstError> {
    let n = spec.len();
    for found in [s.len(), l.len()] {
        if found != n {
            return Err(PstError::Length { expected: n, found });
        }
    }
    let rhs = DVector::from_fn(n, |k, _| {
        -(target_phase(theta, s[k]) + 2.0 * PI * l[k] as f64)
    });
    let lu = spec.pmat.clone().lu();
    let u = lu.solve(&rhs).ok_or(PstError::Singular)?;
    Ok(u.iter().copied().collect())
}

/// Couplings for one branch choice `l`.
pub fn solve_couplings(
    spec: &SpectralData,
    s: &[i8],
    theta: f64,
    t0: f64,
    l: &[i64],
) -> Result<CouplingSolution, PstError> {
    if t0 <= 0.0 || t0.is_nan() {
        return Err(PstError::NonPositiveTime(t0));
    }
    let u = phase_coefficients(spec, s, theta, l)?;
    let j: Vec<f64> = u.iter().map(|u| u / (2.0 * t0)).collect();
    let residual = check_solution(spec, s, &j, theta, t0)?.max;
    Ok(CouplingSolution {
        theta,
        t0,
        j,
        l: l.to_vec(),
        s: s.to_vec(),
        residual,
    })
}

fn ranking_key(sol: &CouplingSolution) -> (std::cmp::Reverse<usize>, i64) {
    // quantized so that rounding noise cannot reorder equal strengths
    (
        std::cmp::Reverse(sol.zero_count()),
        (sol.max_strength() * 1e9).round() as i64,
    )
}

/// Enumerates `l` in `[-depth, depth]^{d+1}` with `l_0 = 0` and ranks the
/// solutions: most vanishing couplings first, then smallest `max |J_m| t0`,
/// then lexicographic `l`.
pub fn search_branches(
    spec: &SpectralData,
    s: &[i8],
    theta: f64,
    t0: f64,
    depth: u32,
) -> Result<Vec<CouplingSolution>, PstError> {
    let n = spec.len();
    let depth = depth as i64;
    let width = (2 * depth + 1) as usize;
    let combos = width.pow((n - 1) as u32);

    let mut out = Vec::with_capacity(combos);
    let mut l = vec![0i64; n];
    for idx in 0..combos {
        let mut rest = idx;
        for slot in l.iter_mut().skip(1) {
            *slot = (rest % width) as i64 - depth;
            rest /= width;
        }
        let sol = solve_couplings(spec, s, theta, t0, &l)?;
        if sol.residual <= SOLUTION_TOLERANCE {
            out.push(sol);
        }
    }
    out.sort_by(|a, b| {
        ranking_key(a)
            .cmp(&ranking_key(b))
            .then_with(|| a.l.cmp(&b.l))
    });
    Ok(out)
}

/// Per-eigenvalue phase deviations of a coupling vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub per_k: Vec<f64>,
    pub max: f64,
}

/// Distance of `x` from `2 pi Z`, using the representative in `(-pi, pi]`.
pub fn wrap_distance(x: f64) -> f64 {
    wrap_phase(x).abs()
}

/// Representative of `x` modulo `2 pi` in `(-pi, pi]`.
pub fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Evaluates `-2 t0 sum_m J_m P_m(x_k) - theta - pi [s_k = -1]` modulo `2 pi`.
pub fn check_solution(
    spec: &SpectralData,
    s: &[i8],
    j: &[f64],
    theta: f64,
    t0: f64,
) -> Result<ResidualReport, PstError> {
    let n = spec.len();
    for found in [s.len(), j.len()] {
        if found != n {
            return Err(PstError::Length { expected: n, found });
        }
    }
    let jv = DVector::from_column_slice(j);
    let energies: DVector<f64> = &spec.pmat * jv;
    let per_k: Vec<f64> = (0..n)
        .map(|k| wrap_distance(-2.0 * t0 * energies[k] - target_phase(theta, s[k])))
        .collect();
    let max = per_k.iter().copied().fold(0.0, f64::max);
    Ok(ResidualReport { per_k, max })
}

/// `P^{-1}` applied to an arbitrary vector; exposed for tests of linearity.
pub fn solve_with_p(spec: &SpectralData, rhs: &[f64]) -> Option<Vec<f64>> {
    let lu = spec.pmat.clone().lu();
    lu.solve(&DVector::from_column_slice(rhs))
        .map(|u| u.iter().copied().collect())
}
