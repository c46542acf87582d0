//! Single-excitation Hamiltonians, time evolution and transfer fidelities.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graphs::{stratum_vectors, DistancePartition, LabeledGraph, StratumBasis};
use crate::pst::wrap_phase;
use crate::scheme::SchemeParameters;
use crate::spectra::{jacobi_matrix, SpectralData};

/// Largest pairwise disagreement between engines before a report is refused.
pub const ENGINE_TOLERANCE: f64 = 1e-8;
/// `|f_d(t0)|` at or above `1 - FIDELITY_TOLERANCE` certifies transfer.
pub const FIDELITY_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_ORACLE_LIMIT: usize = 14;
const CONSERVATION_SAMPLES: usize = 16;
const CONSERVATION_SEED: u64 = 0x5eed_5a17;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DynamicsError {
    #[error("expected {expected} couplings, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("graph diameter {graph} does not match scheme diameter {scheme}")]
    DiameterMismatch { graph: usize, scheme: usize },
    #[error("spin oracle limited to {limit} vertices, graph has {n}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("total spin is not conserved: basis state {state:#b} leaks")]
    NotConserved { state: u64 },
    #[error("engines disagree: {first} vs {second} differ by {deviation:e}")]
    Inconsistent {
        first: &'static str,
        second: &'static str,
        deviation: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonianForm {
    Full,
    Quotient,
}

/// Hamiltonian restricted to the single-excitation subspace.
#[derive(Clone, Debug)]
pub struct SingleExcitationHamiltonian {
    pub matrix: DMatrix<f64>,
    /// Global energy shift `(N - 4)/2 * sum_m J_m kappa_m`.
    pub constant: f64,
    pub form: HamiltonianForm,
    /// Stratum vectors for the full form; `None` means the coordinate basis.
    pub strata: Option<StratumBasis>,
}

/// `f_i(t) = <phi_i| exp(-iHt) |phi_0>`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeVector {
    pub f: Vec<Complex64>,
    pub t: f64,
}

impl AmplitudeVector {
    pub fn norm_sqr(&self) -> f64 {
        self.f.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn last(&self) -> Complex64 {
        *self.f.last().expect("at least one stratum")
    }
}

fn check_len(j: &[f64], expected: usize) -> Result<(), DynamicsError> {
    if j.len() != expected {
        return Err(DynamicsError::Dimension {
            expected,
            found: j.len(),
        });
    }
    Ok(())
}

/// `(N - 4)/2 * sum_m J_m kappa_m`.
pub fn energy_shift(n: u64, kappa: &[u64], j: &[f64]) -> f64 {
    let s: f64 = j.iter().zip(kappa).map(|(jm, &k)| jm * k as f64).sum();
    (n as f64 - 4.0) / 2.0 * s
}

/// `P_m(T)` for `m = 0..=d` by the matrix form of the three-term recurrence.
pub fn polynomial_matrices(params: &SchemeParameters) -> Vec<DMatrix<f64>> {
    let d = params.diameter();
    let t = jacobi_matrix(params).to_dense();
    let id = DMatrix::identity(d + 1, d + 1);
    let arr = &params.array;
    let mut out = vec![id.clone()];
    if d >= 1 {
        out.push(t.clone());
    }
    for i in 1..d {
        let next = (&t * &out[i] - &out[i] * arr.a(i) as f64 - &out[i - 1] * arr.b(i - 1) as f64)
            / arr.c(i + 1) as f64;
        out.push(next);
    }
    out
}

/// `2 sum_m J_m P_m(T) + c I` on the stratum space.
pub fn quotient_hamiltonian(
    params: &SchemeParameters,
    j: &[f64],
) -> Result<SingleExcitationHamiltonian, DynamicsError> {
    let d = params.diameter();
    check_len(j, d + 1)?;
    let constant = energy_shift(params.v, &params.kappa, j);
    let mut h = DMatrix::identity(d + 1, d + 1) * constant;
    for (jm, pm) in j.iter().zip(polynomial_matrices(params)) {
        h += pm * (2.0 * jm);
    }
    Ok(SingleExcitationHamiltonian {
        matrix: h,
        constant,
        form: HamiltonianForm::Quotient,
        strata: None,
    })
}

/// `2 sum_m J_m A_m + c I` on the vertex space.
pub fn full_hamiltonian(
    dp: &DistancePartition,
    j: &[f64],
) -> Result<SingleExcitationHamiltonian, DynamicsError> {
    check_len(j, dp.amats.len())?;
    let n = dp.dist.len();
    let kappa: Vec<u64> = dp.class_sizes().iter().map(|&k| k as u64).collect();
    let constant = energy_shift(n as u64, &kappa, j);
    let mut h = DMatrix::identity(n, n) * constant;
    for (jm, am) in j.iter().zip(&dp.amats) {
        h += am * (2.0 * jm);
    }
    Ok(SingleExcitationHamiltonian {
        matrix: h,
        constant,
        form: HamiltonianForm::Full,
        strata: Some(stratum_vectors(dp)),
    })
}

/// Outcome of the spin-operator construction.
#[derive(Clone, Debug)]
pub struct SpinOracle {
    pub block: SingleExcitationHamiltonian,
    /// Basis states on which `[S^z_tot, H]` was applied and found to vanish.
    pub conservation_checked: Vec<u64>,
}

/// Sparse state with doubled integer coefficients, one per distance class.
type SparseState = BTreeMap<u64, Vec<i64>>;

struct SpinHamiltonian {
    n: usize,
    /// Unordered pairs `(i, j)`, `i < j`, grouped by distance.
    pairs: Vec<Vec<(usize, usize)>>,
}

impl SpinHamiltonian {
    fn new(dp: &DistancePartition) -> Self {
        let n = dp.dist.len();
        let pairs = dp
            .amats
            .iter()
            .enumerate()
            .map(|(m, a)| {
                if m == 0 {
                    return Vec::new();
                }
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        if a[(i, j)] == 1.0 {
                            out.push((i, j));
                        }
                    }
                }
                out
            })
            .collect();
        Self { n, pairs }
    }

    /// Applies the exchange Hamiltonian to a basis state (bit set = spin down).
    ///
    /// On a pair, `sigma_i . sigma_j` fixes aligned spins and sends
    /// `|..up_i..down_j..>` to `-|..> + 2|swapped>`. The distance-0 term is
    /// read as half a sum over ordered self-pairs, each acting as `2P_ii - I = I`.
    fn apply(&self, state: u64) -> SparseState {
        let classes = self.pairs.len();
        let mut out = SparseState::new();
        let mut add = |s: u64, m: usize, c: i64| {
            out.entry(s).or_insert_with(|| vec![0; classes])[m] += c;
        };
        add(state, 0, self.n as i64);
        for (m, pairs) in self.pairs.iter().enumerate() {
            for &(i, j) in pairs {
                let bi = (state >> i) & 1;
                let bj = (state >> j) & 1;
                if bi == bj {
                    add(state, m, 2);
                } else {
                    add(state, m, -2);
                    add(state ^ (1 << i) ^ (1 << j), m, 4);
                }
            }
        }
        out
    }

    /// Twice the total `S^z` (up minus down).
    fn sz2(&self, state: u64) -> i64 {
        self.n as i64 - 2 * state.count_ones() as i64
    }

    /// Whether `[S^z, H] |state>` vanishes identically in every coupling.
    fn conserves(&self, state: u64) -> bool {
        let base = self.sz2(state);
        self.apply(state)
            .iter()
            .all(|(&s, coef)| coef.iter().all(|&c| c == 0) || self.sz2(s) == base)
    }
}

/// Builds `sum_m J_m sum_{pairs at distance m} sigma_i . sigma_j` as a sparse
/// operator and extracts the block on single-down-spin states.
pub fn spin_oracle(
    dp: &DistancePartition,
    j: &[f64],
    limit: usize,
) -> Result<SpinOracle, DynamicsError> {
    let n = dp.dist.len();
    if n > limit || n > 63 {
        return Err(DynamicsError::TooManyVertices { n, limit });
    }
    check_len(j, dp.amats.len())?;
    let op = SpinHamiltonian::new(dp);

    let mut rng = ChaCha8Rng::seed_from_u64(CONSERVATION_SEED);
    let mask = (1u64 << n) - 1;
    let mut checked = Vec::with_capacity(CONSERVATION_SAMPLES);
    for _ in 0..CONSERVATION_SAMPLES {
        let state = rng.random::<u64>() & mask;
        if !op.conserves(state) {
            return Err(DynamicsError::NotConserved { state });
        }
        checked.push(state);
    }

    let mut block = DMatrix::zeros(n, n);
    for l in 0..n {
        for (s, coef) in op.apply(1 << l) {
            let k = s.trailing_zeros() as usize;
            if s.count_ones() != 1 {
                return Err(DynamicsError::NotConserved { state: 1 << l });
            }
            let value: f64 = coef.iter().zip(j).map(|(&c, jm)| c as f64 * jm).sum();
            block[(k, l)] += value / 2.0;
        }
    }
    let kappa: Vec<u64> = dp.class_sizes().iter().map(|&k| k as u64).collect();
    Ok(SpinOracle {
        block: SingleExcitationHamiltonian {
            matrix: block,
            constant: energy_shift(n as u64, &kappa, j),
            form: HamiltonianForm::Full,
            strata: Some(stratum_vectors(dp)),
        },
        conservation_checked: checked,
    })
}

/// Cached spectral decomposition for repeated evolution.
#[derive(Clone, Debug)]
pub struct Propagator {
    energies: Vec<f64>,
    /// `weights[i][k] = <phi_i|u_k><u_k|phi_0>`.
    weights: Vec<Vec<f64>>,
}

impl Propagator {
    pub fn new(h: &SingleExcitationHamiltonian) -> Self {
        let eig = SymmetricEigen::new(h.matrix.clone());
        let basis = match &h.strata {
            Some(s) => s.matrix(),
            None => DMatrix::identity(h.matrix.nrows(), h.matrix.nrows()),
        };
        // stratum components of each eigenvector
        let proj = basis.transpose() * &eig.eigenvectors;
        let weights = (0..proj.nrows())
            .map(|i| {
                (0..proj.ncols())
                    .map(|k| proj[(i, k)] * proj[(0, k)])
                    .collect()
            })
            .collect();
        Self {
            energies: eig.eigenvalues.iter().copied().collect(),
            weights,
        }
    }

    pub fn amplitudes(&self, t: f64) -> AmplitudeVector {
        let phases: Vec<Complex64> = self
            .energies
            .iter()
            .map(|&e| Complex64::from_polar(1.0, -e * t))
            .collect();
        let f = self
            .weights
            .iter()
            .map(|w| w.iter().zip(&phases).map(|(&wk, &p)| p * wk).sum())
            .collect();
        AmplitudeVector { f, t }
    }
}

/// Amplitudes on the strata by spectral decomposition of `H`.
pub fn evolve(h: &SingleExcitationHamiltonian, t: f64) -> AmplitudeVector {
    Propagator::new(h).amplitudes(t)
}

/// Closed-form amplitude
/// `e^{-ict} kappa_i^{-1/2} sum_k gamma_k P_i(x_k) exp(-2it sum_m J_m P_m(x_k))`.
pub fn amplitude_quadrature(
    spec: &SpectralData,
    params: &SchemeParameters,
    j: &[f64],
    i: usize,
    t: f64,
) -> Result<Complex64, DynamicsError> {
    let d = spec.diameter();
    check_len(j, d + 1)?;
    if i > d {
        return Err(DynamicsError::Dimension {
            expected: d + 1,
            found: i + 1,
        });
    }
    let c = energy_shift(params.v, &params.kappa, j);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..=d {
        let energy: f64 = (0..=d).map(|m| j[m] * spec.pmat[(k, m)]).sum();
        sum += Complex64::from_polar(spec.gamma[k] * spec.pmat[(k, i)], -2.0 * t * energy);
    }
    Ok(sum * Complex64::from_polar(1.0 / (params.kappa[i] as f64).sqrt(), -c * t))
}

pub fn amplitudes_quadrature(
    spec: &SpectralData,
    params: &SchemeParameters,
    j: &[f64],
    t: f64,
) -> Result<AmplitudeVector, DynamicsError> {
    let f = (0..=spec.diameter())
        .map(|i| amplitude_quadrature(spec, params, j, i, t))
        .collect::<Result<_, _>>()?;
    Ok(AmplitudeVector { f, t })
}

/// Everything the engines need; the graph is optional.
pub struct EngineInputs<'a> {
    pub params: &'a SchemeParameters,
    pub spec: &'a SpectralData,
    pub graph: Option<(&'a LabeledGraph, &'a DistancePartition)>,
    pub oracle_limit: usize,
}

#[derive(Clone, Debug)]
pub struct EngineResult {
    pub engine: &'static str,
    pub f_d: Complex64,
    pub norm_sqr: f64,
}

#[derive(Clone, Debug)]
pub struct FidelityReport {
    pub theta: f64,
    pub t0: f64,
    pub engines: Vec<EngineResult>,
    /// `|f_d(t0)|` from the quadrature engine.
    pub fidelity: f64,
    pub arg_f_d: f64,
    pub constant: f64,
    /// `arg f_d + c t0` wrapped to `(-pi, pi]`; equals `theta` under transfer.
    pub theta_recovered: f64,
    pub max_deviation: f64,
    pub certified: bool,
}

pub fn fidelity_report(
    inputs: &EngineInputs,
    j: &[f64],
    theta: f64,
    t0: f64,
) -> Result<FidelityReport, DynamicsError> {
    let params = inputs.params;
    let d = params.diameter();
    check_len(j, d + 1)?;

    let mut runs = Vec::new();
    let quad = amplitudes_quadrature(inputs.spec, params, j, t0)?;
    runs.push(("quadrature", quad));
    let hq = quotient_hamiltonian(params, j)?;
    runs.push(("quotient", evolve(&hq, t0)));
    if let Some((g, dp)) = inputs.graph {
        if dp.diameter() != d {
            return Err(DynamicsError::DiameterMismatch {
                graph: dp.diameter(),
                scheme: d,
            });
        }
        runs.push(("full", evolve(&full_hamiltonian(dp, j)?, t0)));
        if g.n() <= inputs.oracle_limit {
            let oracle = spin_oracle(dp, j, inputs.oracle_limit)?;
            runs.push(("spin-oracle", evolve(&oracle.block, t0)));
        }
    }

    let mut max_deviation: f64 = 0.0;
    for a in 0..runs.len() {
        for b in a + 1..runs.len() {
            let dev = runs[a]
                .1
                .f
                .iter()
                .zip(&runs[b].1.f)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            if dev > ENGINE_TOLERANCE {
                return Err(DynamicsError::Inconsistent {
                    first: runs[a].0,
                    second: runs[b].0,
                    deviation: dev,
                });
            }
            max_deviation = max_deviation.max(dev);
        }
    }

    let f_d = runs[0].1.last();
    let constant = hq.constant;
    let fidelity = f_d.norm();
    Ok(FidelityReport {
        theta,
        t0,
        engines: runs
            .iter()
            .map(|(engine, amp)| EngineResult {
                engine,
                f_d: amp.last(),
                norm_sqr: amp.norm_sqr(),
            })
            .collect(),
        fidelity,
        arg_f_d: f_d.arg(),
        constant,
        theta_recovered: wrap_phase(f_d.arg() + constant * t0),
        max_deviation,
        certified: fidelity >= 1.0 - FIDELITY_TOLERANCE,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSample {
    pub t: f64,
    pub f_d: Complex64,
    pub f_0: Complex64,
}

/// `t_i = t_max * i / (samples - 1)`; a single sample is `t = 0`.
pub fn sample_times(t_max: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..samples)
            .map(|i| t_max * i as f64 / (samples - 1) as f64)
            .collect(),
    }
}

/// Evaluates `f_d` and `f_0` at each time, spreading samples over threads.
pub fn sweep(h: &SingleExcitationHamiltonian, times: &[f64]) -> Vec<SweepSample> {
    let prop = Propagator::new(h);
    let sample = |&t: &f64| {
        let amp = prop.amplitudes(t);
        SweepSample {
            t,
            f_d: amp.last(),
            f_0: amp.f[0],
        }
    };
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(times.len().div_ceil(64).max(1));
    if workers <= 1 {
        return times.iter().map(sample).collect();
    }
    let chunk = times.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = times
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(sample).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    })
}

/// `|| H_a - H_b ||_max`.
pub fn max_entry_difference(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_cycle, build_hypercube, distance_partition, ingest_edge_list};
    use crate::scheme::{cycle_array, hypercube_array};
    use crate::spectra::Analysis;
    use std::f64::consts::PI;

    fn dense_evolution(h: &DMatrix<f64>, start: usize, t: f64) -> Vec<Complex64> {
        // independent route: exp of the complex matrix by Taylor series with squaring
        let n = h.nrows();
        let scale = (h.abs().max() * t.abs() * n as f64).max(1.0).log2().ceil() as i32 + 4;
        let step = t / 2f64.powi(scale);
        let a = h.map(|x| Complex64::new(0.0, -x * step));
        let mut term = DMatrix::<Complex64>::identity(n, n);
        let mut u = term.clone();
        for k in 1..30 {
            term = &term * &a / Complex64::new(k as f64, 0.0);
            u += &term;
        }
        for _ in 0..scale {
            u = &u * &u;
        }
        u.column(start).iter().copied().collect()
    }

    #[test]
    fn identity_coupling_is_scalar() {
        let an = Analysis::new(&cycle_array(3)).unwrap();
        let n = an.params().v as f64;
        let h = quotient_hamiltonian(an.params(), &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let want = DMatrix::identity(4, 4) * (2.0 + (n - 4.0) / 2.0);
        assert!(max_entry_difference(&h.matrix, &want) < 1e-14);
    }

    #[test]
    fn c4_eigenphases() {
        let an = Analysis::new(&cycle_array(2)).unwrap();
        let h = quotient_hamiltonian(an.params(), &[-PI / 4.0, 0.0, PI / 4.0]).unwrap();
        assert_eq!(h.constant, 0.0);
        let mut e: Vec<f64> = SymmetricEigen::new(h.matrix)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        e.sort_by(f64::total_cmp);
        let want = [-PI, 0.0, 0.0];
        for (a, b) in e.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{e:?}");
        }
    }

    #[test]
    fn c4_full_is_weighted_square() {
        let g = build_cycle(2);
        let dp = distance_partition(&g, 0).unwrap();
        let h = full_hamiltonian(&dp, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(h.matrix, g.adjacency_matrix() * 2.0);
    }

    #[test]
    fn hypercube_full_commutes_with_distance_matrices() {
        let g = build_hypercube(3);
        let dp = distance_partition(&g, 0).unwrap();
        let h = full_hamiltonian(&dp, &[0.3, -1.1, 0.7, 2.0]).unwrap();
        for a in &dp.amats {
            assert!(max_entry_difference(&(&h.matrix * a), &(a * &h.matrix)) < 1e-12);
        }
    }

    #[test]
    fn compression_matches_quotient() {
        let g = build_hypercube(4);
        let dp = distance_partition(&g, 5).unwrap();
        let an = Analysis::new(&hypercube_array(4)).unwrap();
        let j = [0.2, -0.4, 1.3, 0.0, 0.9];
        let hf = full_hamiltonian(&dp, &j).unwrap();
        let hq = quotient_hamiltonian(an.params(), &j).unwrap();
        let compressed = stratum_vectors(&dp).compress(&hf.matrix);
        assert!(max_entry_difference(&compressed, &hq.matrix) < 1e-10);
        assert!((hf.constant - hq.constant).abs() < 1e-12);
    }

    #[test]
    fn oracle_single_edge() {
        let (g, _) = ingest_edge_list("0 1\n").unwrap();
        let dp = distance_partition(&g, 0).unwrap();
        let oracle = spin_oracle(&dp, &[0.0, 1.0], DEFAULT_ORACLE_LIMIT).unwrap();
        let b = &oracle.block.matrix;
        assert_eq!(b[(0, 1)], 2.0);
        assert_eq!(b[(1, 0)], 2.0);
        // (N - 4)/2 * kappa_1 with N = 2
        assert_eq!(b[(0, 0)], -1.0);
        assert_eq!(oracle.conservation_checked.len(), CONSERVATION_SAMPLES);
    }

    #[test]
    fn oracle_matches_full_form() {
        let j = [0.37, -1.25, 0.5, 2.0];
        for g in [build_cycle(2), build_cycle(3), build_hypercube(3)] {
            let dp = distance_partition(&g, 0).unwrap();
            let j = &j[..dp.amats.len()];
            let oracle = spin_oracle(&dp, j, DEFAULT_ORACLE_LIMIT).unwrap();
            let full = full_hamiltonian(&dp, j).unwrap();
            assert!(max_entry_difference(&oracle.block.matrix, &full.matrix) <= 1e-12);
        }
    }

    #[test]
    fn oracle_limit() {
        let g = build_hypercube(4);
        let dp = distance_partition(&g, 0).unwrap();
        assert_eq!(
            spin_oracle(&dp, &[0.0; 5], 14).unwrap_err(),
            DynamicsError::TooManyVertices { n: 16, limit: 14 }
        );
    }

    #[test]
    fn conservation_on_small_states() {
        let g = build_cycle(2);
        let op = SpinHamiltonian::new(&distance_partition(&g, 0).unwrap());
        assert!((0..16).all(|s| op.conserves(s)));
    }

    #[test]
    fn evolution_at_zero_and_against_series() {
        let an = Analysis::new(&hypercube_array(3)).unwrap();
        let j = [0.4, -0.3, 0.8, 0.1];
        let h = quotient_hamiltonian(an.params(), &j).unwrap();
        let f0 = evolve(&h, 0.0);
        assert!((f0.f[0] - 1.0).norm() < 1e-14);
        assert!(f0.f[1..].iter().all(|z| z.norm() < 1e-14));

        let t = 1.7;
        let series = dense_evolution(&h.matrix, 0, t);
        let spectral = evolve(&h, t);
        for (a, b) in series.iter().zip(&spectral.f) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn printed_transfers() {
        let c4 = Analysis::new(&cycle_array(2)).unwrap();
        let h = quotient_hamiltonian(c4.params(), &[-PI / 4.0, 0.0, PI / 4.0]).unwrap();
        assert!((evolve(&h, 1.0).f[2].norm() - 1.0).abs() < 1e-10);

        let h3 = Analysis::new(&hypercube_array(3)).unwrap();
        let j = [-3.0 * PI / 4.0, PI / 4.0, 0.0, 0.0];
        let h = quotient_hamiltonian(h3.params(), &j).unwrap();
        assert!((evolve(&h, 1.0).f[3].norm() - 1.0).abs() < 1e-10);
        // the excitation returns after twice the transfer time
        assert!((evolve(&h, 2.0).f[0].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn quadrature_matches_quotient() {
        let an = Analysis::new(&"5,2,1;1,2,5".parse().unwrap()).unwrap();
        let j = [0.3, -0.2, 0.9, 0.45];
        let h = quotient_hamiltonian(an.params(), &j).unwrap();
        let total: f64 = an.spectrum.gamma.iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
        let z = amplitude_quadrature(&an.spectrum, an.params(), &j, 0, 0.0).unwrap();
        assert!((z - 1.0).norm() < 1e-13);
        for t in [0.1, 0.77, 2.5, 9.0] {
            let q = amplitudes_quadrature(&an.spectrum, an.params(), &j, t).unwrap();
            let e = evolve(&h, t);
            for (a, b) in q.f.iter().zip(&e.f) {
                assert!((a - b).norm() < 1e-10);
            }
            assert!((q.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn shift_invariance() {
        let an = Analysis::new(&cycle_array(4)).unwrap();
        let j = [0.1, 0.5, -0.7, 0.2, 0.4];
        let mut shifted = j;
        shifted[0] += 0.37;
        for t in [0.3, 1.9] {
            let a = amplitudes_quadrature(&an.spectrum, an.params(), &j, t).unwrap();
            let b = amplitudes_quadrature(&an.spectrum, an.params(), &shifted, t).unwrap();
            for (x, y) in a.f.iter().zip(&b.f) {
                assert!((x.norm() - y.norm()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn report_for_c4() {
        let an = Analysis::new(&cycle_array(2)).unwrap();
        let g = build_cycle(2);
        let dp = distance_partition(&g, 0).unwrap();
        let inputs = EngineInputs {
            params: an.params(),
            spec: &an.spectrum,
            graph: Some((&g, &dp)),
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        };
        let r = fidelity_report(&inputs, &[-PI / 4.0, 0.0, PI / 4.0], 0.0, 1.0).unwrap();
        assert_eq!(r.engines.len(), 4);
        assert!(r.certified);
        assert!(r.max_deviation <= 1e-10);
        assert!(r.theta_recovered.abs() < 1e-10);

        let r = fidelity_report(&inputs, &[0.3, 0.2, 0.1], 0.0, 1.0).unwrap();
        assert!(!r.certified);
    }

    #[test]
    fn sweep_is_schedule_independent() {
        let an = Analysis::new(&cycle_array(3)).unwrap();
        let h = quotient_hamiltonian(an.params(), &[0.1, 0.2, 0.3, 0.4]).unwrap();
        let times = sample_times(5.0, 1000);
        let par = sweep(&h, &times);
        let prop = Propagator::new(&h);
        for (s, &t) in par.iter().zip(&times) {
            let amp = prop.amplitudes(t);
            assert_eq!(s.f_d, amp.last());
            assert_eq!(s.t, t);
        }
        assert_eq!(sample_times(3.0, 1), vec![0.0]);
        assert_eq!(sample_times(3.0, 4), vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn full_engine_on_unlisted_base() {
        let g = build_cycle(3);
        let dp = distance_partition(&g, 2).unwrap();
        let h = full_hamiltonian(&dp, &[0.2, 0.5, -0.3, 0.8]).unwrap();
        let psi = dense_evolution(&h.matrix, 2, 0.9);
        let amp = evolve(&h, 0.9);
        let phi3 = &stratum_vectors(&dp).phi[3];
        let proj: Complex64 = psi.iter().zip(phi3.iter()).map(|(a, &b)| a * b).sum();
        assert!((proj - amp.last()).norm() < 1e-10);
    }
}
