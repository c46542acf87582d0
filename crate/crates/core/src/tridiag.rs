//! Symmetric tridiagonal eigensolver (implicit QL with Wilkinson shifts).

use nalgebra::DMatrix;

/// Real symmetric tridiagonal matrix given by its diagonal and off-diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    /// `off[k]` couples rows `k` and `k + 1`.
    pub off: Vec<f64>,
}

/// Eigenvalues in ascending order; column `k` of `vectors` is the unit
/// eigenvector for `values[k]`.
#[derive(Clone, Debug)]
pub struct TridiagonalEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("QL iteration did not converge for eigenvalue {index} after {iterations} sweeps")]
pub struct NoConvergence {
    pub index: usize,
    pub iterations: usize,
}

const MAX_SWEEPS: usize = 60;

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len().max(1));
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for (k, &e) in self.off.iter().enumerate() {
            m[(k, k + 1)] = e;
            m[(k + 1, k)] = e;
        }
        m
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        let d: f64 = self.diag.iter().map(|x| x * x).sum();
        let e: f64 = self.off.iter().map(|x| x * x).sum();
        (d + 2.0 * e).sqrt()
    }

    /// `T u` for a dense vector.
    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * u[i];
                if i > 0 {
                    y += self.off[i - 1] * u[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * u[i + 1];
                }
                y
            })
            .collect()
    }

    /// Full eigendecomposition.
    pub fn eigen(&self) -> Result<TridiagonalEigen, NoConvergence> {
        let n = self.dim();
        let mut d = self.diag.clone();
        // e[i] couples i and i+1; e[n-1] is scratch
        let mut e = self.off.clone();
        e.push(0.0);
        let mut z = DMatrix::<f64>::identity(n, n);

        for l in 0..n {
            let mut iter = 0;
            loop {
                // find small subdiagonal element
                let mut m = l;
                while m + 1 < n {
                    let dd = d[m].abs() + d[m + 1].abs();
                    if e[m].abs() <= f64::EPSILON * dd {
                        break;
                    }
                    m += 1;
                }
                if m == l {
                    break;
                }
                iter += 1;
                if iter > MAX_SWEEPS {
                    return Err(NoConvergence {
                        index: l,
                        iterations: iter,
                    });
                }
                // Wilkinson shift from the leading 2x2 block
                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = g.hypot(1.0);
                g = d[m] - d[l] + e[l] / (g + r.copysign(g));
                let mut s = 1.0;
                let mut c = 1.0;
                let mut p = 0.0;
                let mut i = m;
                let mut deflated = false;
                while i > l {
                    i -= 1;
                    let f = s * e[i];
                    let b = c * e[i];
                    r = f.hypot(g);
                    e[i + 1] = r;
                    if r == 0.0 {
                        // underflow: recover and restart this eigenvalue
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for k in 0..n {
                        let zk1 = z[(k, i + 1)];
                        let zk = z[(k, i)];
                        z[(k, i + 1)] = s * zk + c * zk1;
                        z[(k, i)] = c * zk - s * zk1;
                    }
                }
                if deflated {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
        let values = order.iter().map(|&k| d[k]).collect();
        let vectors = DMatrix::from_fn(n, n, |r, c| z[(r, order[c])]);
        Ok(TridiagonalEigen { values, vectors })
    }
}

impl TridiagonalEigen {
    /// `max_k ||T u_k - x_k u_k||`.
    pub fn max_residual(&self, t: &SymTridiagonal) -> f64 {
        (0..self.values.len())
            .map(|k| {
                let u: Vec<f64> = self.vectors.column(k).iter().copied().collect();
                let tu = t.apply(&u);
                tu.iter()
                    .zip(&u)
                    .map(|(a, b)| (a - self.values[k] * b).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_by_two() {
        let t = SymTridiagonal::new(vec![0.0, 0.0], vec![1.0]);
        let eig = t.eigen().unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
        assert!((eig.vectors[(0, 1)].abs() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn single_entry() {
        let t = SymTridiagonal::new(vec![3.5], vec![]);
        let eig = t.eigen().unwrap();
        assert_eq!(eig.values, vec![3.5]);
    }

    #[test]
    fn path_graph_spectrum() {
        // eigenvalues of the path P_n are 2 cos(k pi / (n + 1))
        let n = 9;
        let t = SymTridiagonal::new(vec![0.0; n], vec![1.0; n - 1]);
        let eig = t.eigen().unwrap();
        let mut want: Vec<f64> = (1..=n)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect();
        want.sort_by(f64::total_cmp);
        for (a, b) in eig.values.iter().zip(&want) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn contract_holds(
            diag in prop::collection::vec(-20.0f64..20.0, 1..14),
            seed in prop::collection::vec(0.01f64..20.0, 13),
        ) {
            let n = diag.len();
            let off = seed[..n - 1].to_vec();
            let t = SymTridiagonal::new(diag, off);
            let eig = t.eigen().unwrap();
            prop_assert!(eig.max_residual(&t) <= 1e-12 * t.norm().max(1.0));
            let gram = eig.vectors.transpose() * &eig.vectors;
            let err = (gram - DMatrix::identity(n, n)).abs().max();
            prop_assert!(err < 1e-12);
            prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));

            // independent dense solver
            let mut reference: Vec<f64> =
                nalgebra::SymmetricEigen::new(t.to_dense()).eigenvalues.iter().copied().collect();
            reference.sort_by(f64::total_cmp);
            for (a, b) in eig.values.iter().zip(&reference) {
                prop_assert!((a - b).abs() <= 1e-11 * t.norm().max(1.0));
            }
        }
    }
}
