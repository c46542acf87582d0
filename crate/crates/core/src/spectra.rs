//! Spectral distribution of the adjacency operator restricted to the stratum
//! space: eigenvalues, Gauss quadrature weights, multiplicities, the
//! eigenmatrices `P`, `Q` and the Stieltjes function.
//!
//! The primary path diagonalizes the Jacobi matrix: its eigenvalues are the
//! nodes and the squared first components of its unit eigenvectors are the
//! weights. Residues of `Q_d^(1) / Q_{d+1}` and a Sturm bisection for the roots
//! of `Q_{d+1}` serve as independent cross-checks.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::scheme::{PolynomialSystem, Scheme, SchemeParameters};
use crate::tridiag::{NoConvergence, SymTridiagonal};

/// Maximum allowed disagreement between the two weight computations.
pub const WEIGHT_TOLERANCE: f64 = 1e-10;
/// Eigenvalues closer than this are treated as a numerical failure.
pub const MIN_EIGENVALUE_GAP: f64 = 1e-9;
/// Tolerance for `Q[j][i] kappa_j = m_i P[i][j]`.
pub const DUALITY_TOLERANCE: f64 = 1e-9;
/// Tolerance between Jacobi eigenvalues and bisected roots of `Q_{d+1}`.
pub const ROOT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectraError {
    #[error(transparent)]
    NoConvergence(#[from] NoConvergence),
    #[error("weight gamma_{k}: eigenvector route {eigenvector:e} vs residue route {residue:e}")]
    WeightMismatch {
        k: usize,
        eigenvector: f64,
        residue: f64,
    },
    #[error("eigenvalues {k} and {next} are only {gap:e} apart")]
    EigenvalueCollision { k: usize, next: usize, gap: f64 },
    #[error("eigenvalue x_{k} = {x} differs from root {root} of Q_(d+1)")]
    RootMismatch { k: usize, x: f64, root: f64 },
    #[error("largest eigenvalue {found} differs from the degree {degree}")]
    LeadingEigenvalue { found: f64, degree: u64 },
    #[error("eigenmatrix P is singular")]
    SingularEigenmatrix,
    #[error("duality Q[{j}][{i}] kappa_{j} = m_{i} P[{i}][{j}] violated by {error:e}")]
    Duality { i: usize, j: usize, error: f64 },
    #[error("z = {z} lies within {distance:e} of eigenvalue x_{k}")]
    PoleProximity {
        z: Complex64,
        k: usize,
        distance: f64,
    },
}

/// Builds the Jacobi matrix: diagonal `alpha_0..alpha_d`, off-diagonal
/// `sqrt(omega_1)..sqrt(omega_d)`.
pub fn jacobi_matrix(params: &SchemeParameters) -> SymTridiagonal {
    let d = params.diameter();
    SymTridiagonal::new(
        params.alpha.iter().map(|&a| a as f64).collect(),
        (1..=d).map(|k| params.beta(k)).collect(),
    )
}

/// Spectral data of a scheme, eigenvalues in descending order with `x[0] = kappa`.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub x: Vec<f64>,
    /// Gauss weights `gamma_k`, summing to one.
    pub gamma: Vec<f64>,
    /// Multiplicities `m_k = v gamma_k`.
    pub m: Vec<f64>,
    /// `pmat[(k, i)] = P_i(x_k)`.
    pub pmat: DMatrix<f64>,
    /// Dual eigenmatrix, `pmat * qmat = v I`.
    pub qmat: DMatrix<f64>,
}

impl SpectralData {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn diameter(&self) -> usize {
        self.x.len() - 1
    }
}

/// Node/weight pairs without eigenmatrices.
#[derive(Clone, Debug)]
struct Quadrature {
    x: Vec<f64>,
    gamma: Vec<f64>,
}

fn gauss_quadrature(
    params: &SchemeParameters,
    polys: &PolynomialSystem,
) -> Result<Quadrature, SpectraError> {
    let t = jacobi_matrix(params);
    let eig = t.eigen()?;
    let n = eig.values.len();

    // descending order
    let order: Vec<usize> = (0..n).rev().collect();
    let x: Vec<f64> = order.iter().map(|&k| eig.values[k]).collect();
    let gamma: Vec<f64> = order.iter().map(|&k| eig.vectors[(0, k)].powi(2)).collect();

    for k in 0..n.saturating_sub(1) {
        let gap = x[k] - x[k + 1];
        if gap < MIN_EIGENVALUE_GAP {
            return Err(SpectraError::EigenvalueCollision {
                k,
                next: k + 1,
                gap,
            });
        }
    }

    let residues = residue_weights(polys, &x);
    for (k, (&a, &b)) in gamma.iter().zip(&residues).enumerate() {
        if (a - b).abs() > WEIGHT_TOLERANCE {
            return Err(SpectraError::WeightMismatch {
                k,
                eigenvector: a,
                residue: b,
            });
        }
    }

    let roots = q_roots_by_bisection(params);
    for (k, (&xk, &r)) in x.iter().zip(&roots).enumerate() {
        if (xk - r).abs() > ROOT_TOLERANCE * xk.abs().max(1.0) {
            return Err(SpectraError::RootMismatch { k, x: xk, root: r });
        }
    }

    let degree = params.array.degree();
    if (x[0] - degree as f64).abs() > MIN_EIGENVALUE_GAP {
        return Err(SpectraError::LeadingEigenvalue {
            found: x[0],
            degree,
        });
    }
    Ok(Quadrature { x, gamma })
}

/// Residues of the Stieltjes function, `gamma_k = Q_d^(1)(x_k) / Q'_{d+1}(x_k)`.
pub fn residue_weights(polys: &PolynomialSystem, x: &[f64]) -> Vec<f64> {
    let (num, den) = polys.stieltjes_parts();
    let dden = den.derivative();
    x.iter().map(|&xk| num.eval(xk) / dden.eval(xk)).collect()
}

/// Value of `Q_k(x)` for `k = 0..=d+1` by the three-term recurrence.
fn q_sequence(params: &SchemeParameters, x: f64) -> Vec<f64> {
    let d = params.diameter();
    let mut q = vec![1.0, x - params.alpha[0] as f64];
    for k in 1..=d {
        let next = (x - params.alpha[k] as f64) * q[k] - params.omega(k) as f64 * q[k - 1];
        q.push(next);
    }
    q
}

/// Roots of `Q_{d+1}` in descending order, found by bisection on the
/// intervals delimited by the roots of `Q_d` (interlacing), recursively from
/// `Q_1`. Polynomials are evaluated through the recurrence.
pub fn q_roots_by_bisection(params: &SchemeParameters) -> Vec<f64> {
    let d = params.diameter();
    // Gershgorin bound for the Jacobi matrix
    let bound = (0..=d)
        .map(|i| {
            let mut r = params.alpha[i] as f64;
            if i >= 1 {
                r += params.beta(i);
            }
            if i < d {
                r += params.beta(i + 1);
            }
            r
        })
        .fold(0.0, f64::max)
        + 1.0;

    // ascending roots of Q_k, starting from Q_1
    let mut roots = vec![params.alpha[0] as f64];
    for k in 2..=d + 1 {
        let mut edges = Vec::with_capacity(roots.len() + 2);
        edges.push(-bound);
        edges.extend(roots.iter().copied());
        edges.push(bound);
        roots = edges
            .windows(2)
            .map(|w| bisect(|x| q_sequence(params, x)[k], w[0], w[1]))
            .collect();
    }
    roots.reverse();
    roots
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvalues, weights, multiplicities and eigenmatrices.
pub fn compute_spectrum(
    params: &SchemeParameters,
    polys: &PolynomialSystem,
) -> Result<SpectralData, SpectraError> {
    let Quadrature { x, gamma } = gauss_quadrature(params, polys)?;
    let v = params.v as f64;
    let m = gamma.iter().map(|g| v * g).collect();
    let mut spec = SpectralData {
        x,
        gamma,
        m,
        pmat: DMatrix::zeros(0, 0),
        qmat: DMatrix::zeros(0, 0),
    };
    eigenmatrices(&mut spec, polys, params)?;
    Ok(spec)
}

/// Fills `pmat` and `qmat`. `Q` comes from `Q^T = v (P^T)^{-1}` by a pivoted
/// solve and is checked against `Q[j][i] kappa_j = m_i P[i][j]`.
pub fn eigenmatrices(
    spec: &mut SpectralData,
    polys: &PolynomialSystem,
    params: &SchemeParameters,
) -> Result<(), SpectraError> {
    let n = spec.x.len();
    let pmat = DMatrix::from_fn(n, n, |k, i| polys.p[i].eval(spec.x[k]));
    let v = params.v as f64;
    let rhs = DMatrix::<f64>::identity(n, n) * v;
    let qt = pmat
        .transpose()
        .lu()
        .solve(&rhs)
        .ok_or(SpectraError::SingularEigenmatrix)?;
    let qmat = qt.transpose();

    for j in 0..n {
        for i in 0..n {
            let lhs = qmat[(j, i)] * params.kappa[j] as f64;
            let rhs = spec.m[i] * pmat[(i, j)];
            let error = (lhs - rhs).abs();
            if error > DUALITY_TOLERANCE * rhs.abs().max(1.0) {
                return Err(SpectraError::Duality { i, j, error });
            }
        }
    }
    spec.pmat = pmat;
    spec.qmat = qmat;
    Ok(())
}

/// Stieltjes function as the partial fraction `sum_k gamma_k / (z - x_k)`.
pub fn stieltjes(spec: &SpectralData, z: Complex64) -> Result<Complex64, SpectraError> {
    let mut g = Complex64::new(0.0, 0.0);
    for (k, (&xk, &gk)) in spec.x.iter().zip(&spec.gamma).enumerate() {
        let distance = (z - xk).norm();
        if distance <= 1e-8 {
            return Err(SpectraError::PoleProximity { z, k, distance });
        }
        g += gk / (z - xk);
    }
    Ok(g)
}

/// Stieltjes function as the finite continued fraction in `alpha`, `omega`.
pub fn stieltjes_continued_fraction(params: &SchemeParameters, z: Complex64) -> Complex64 {
    let d = params.diameter();
    let mut t = z - params.alpha[d] as f64;
    for k in (1..=d).rev() {
        t = z - params.alpha[k - 1] as f64 - params.omega(k) as f64 / t;
    }
    1.0 / t
}

/// Stieltjes function as the ratio `Q_d^(1)(z) / Q_{d+1}(z)`.
pub fn stieltjes_rational(polys: &PolynomialSystem, z: Complex64) -> Complex64 {
    let (num, den) = polys.stieltjes_parts();
    num.eval_complex(z) / den.eval_complex(z)
}

/// Scheme plus spectral data; the common input of the solver and the engines.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub scheme: Scheme,
    pub spectrum: SpectralData,
}

impl Analysis {
    pub fn new(arr: &crate::scheme::IntersectionArray) -> Result<Self, SpectraError> {
        let scheme = Scheme::new(arr);
        let spectrum = compute_spectrum(&scheme.params, &scheme.polys)?;
        Ok(Self { scheme, spectrum })
    }

    pub fn params(&self) -> &SchemeParameters {
        &self.scheme.params
    }

    pub fn polys(&self) -> &PolynomialSystem {
        &self.scheme.polys
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{cycle_array, hypercube_array, IntersectionArray};

    fn analyze(s: &str) -> Analysis {
        Analysis::new(&s.parse::<IntersectionArray>().unwrap()).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn jacobi_matrix_examples() {
        let s = Scheme::new(&cycle_array(2));
        let t = jacobi_matrix(&s.params);
        assert_eq!(t.diag, vec![0.0; 3]);
        assert_close(&t.off, &[2f64.sqrt(), 2f64.sqrt()], 0.0);

        let s = Scheme::new(&"5,2,1;1,2,5".parse().unwrap());
        let t = jacobi_matrix(&s.params);
        assert_eq!(t.diag, vec![0.0, 2.0, 2.0, 0.0]);
        assert_close(&t.off, &[5f64.sqrt(), 2.0, 5f64.sqrt()], 0.0);

        let t = jacobi_matrix(&Scheme::new(&"1;1".parse().unwrap()).params);
        assert_eq!((t.diag, t.off), (vec![0.0, 0.0], vec![1.0]));
    }

    #[test]
    fn icosahedron_spectrum() {
        let a = analyze("5,2,1;1,2,5");
        let r5 = 5f64.sqrt();
        assert_close(&a.spectrum.x, &[5.0, r5, -1.0, -r5], 1e-12);
        assert_close(
            &a.spectrum.gamma,
            &[1.0 / 12.0, 0.25, 5.0 / 12.0, 0.25],
            1e-12,
        );
        assert_close(&a.spectrum.m, &[1.0, 3.0, 5.0, 3.0], 1e-10);
    }

    #[test]
    fn hexagon_and_cube_spectra() {
        let c6 = Analysis::new(&cycle_array(3)).unwrap();
        assert_close(&c6.spectrum.x, &[2.0, 1.0, -1.0, -2.0], 1e-12);
        assert_close(
            &c6.spectrum.gamma,
            &[1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
            1e-12,
        );

        let h3 = Analysis::new(&hypercube_array(3)).unwrap();
        assert_close(&h3.spectrum.x, &[3.0, 1.0, -1.0, -3.0], 1e-12);
        assert_close(&h3.spectrum.gamma, &[0.125, 0.375, 0.375, 0.125], 1e-12);
    }

    #[test]
    fn cube_is_self_dual() {
        let h3 = Analysis::new(&hypercube_array(3)).unwrap();
        let diff = (&h3.spectrum.pmat - &h3.spectrum.qmat).abs().max();
        assert!(diff < 1e-10);
    }

    #[test]
    fn square_eigenmatrix_squares_to_four() {
        let c4 = Analysis::new(&cycle_array(2)).unwrap();
        let pt = c4.spectrum.pmat.transpose();
        let err = (&pt * &pt - DMatrix::identity(3, 3) * 4.0).abs().max();
        assert!(err < 1e-12);
    }

    #[test]
    fn first_row_is_valencies() {
        for s in ["5,2,1;1,2,5", "3,2,2,1,1;1,1,2,2,3", "16,9,4,1;1,4,9,16"] {
            let a = analyze(s);
            for (i, &k) in a.params().kappa.iter().enumerate() {
                assert!((a.spectrum.pmat[(0, i)] - k as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn stieltjes_examples() {
        let ico = analyze("5,2,1;1,2,5");
        let z = Complex64::new(10.0, 0.0);
        let want = 560.0 / 5225.0;
        assert!((stieltjes(&ico.spectrum, z).unwrap().re - want).abs() < 1e-14);
        assert!((stieltjes_continued_fraction(ico.params(), z).re - want).abs() < 1e-14);
        assert!((stieltjes_rational(ico.polys(), z).re - want).abs() < 1e-14);

        let k2 = analyze("1;1");
        let g = stieltjes(&k2.spectrum, Complex64::new(2.0, 0.0)).unwrap();
        assert!((g.re - 2.0 / 3.0).abs() < 1e-15);

        let des = analyze("3,2,2,1,1;1,1,2,2,3");
        let z = Complex64::new(0.0, 4.0);
        let a = stieltjes(&des.spectrum, z).unwrap();
        let b = stieltjes_continued_fraction(des.params(), z);
        assert!((a - b).norm() <= 1e-10 * a.norm());
    }

    #[test]
    fn stieltjes_rejects_poles() {
        let ico = analyze("5,2,1;1,2,5");
        let err = stieltjes(&ico.spectrum, Complex64::new(-1.0 + 1e-10, 0.0)).unwrap_err();
        assert!(matches!(err, SpectraError::PoleProximity { k: 2, .. }));
    }

    #[test]
    fn bisection_matches_jacobi() {
        let a = analyze("4,3,3,2,2,1,1;1,1,2,2,3,3,4");
        let roots = q_roots_by_bisection(a.params());
        assert_close(&roots, &a.spectrum.x, 1e-12);
    }
}
