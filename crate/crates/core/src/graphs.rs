//! Explicit graphs: constructions, edge-list ingestion, distance partitions,
//! distance-regularity detection and stratum bases.

use std::collections::{BTreeSet, VecDeque};

use nalgebra::{DMatrix, DVector};

use crate::scheme::{IntersectionArray, SchemeError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("edge list is empty")]
    Empty,
    #[error("graph is disconnected: vertex {unreachable} cannot be reached from vertex 0")]
    Disconnected { unreachable: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error(
        "not distance-regular: from base {base}, vertex {vertex} at distance {distance} has \
         (c, a, b) = {observed:?} but {expected:?} was seen before"
    )]
    NotDistanceRegular {
        base: usize,
        vertex: usize,
        distance: usize,
        observed: (usize, usize, usize),
        expected: (usize, usize, usize),
    },
    #[error("not distance-regular: eccentricity of vertex {base} is {found}, expected {expected}")]
    Eccentricity {
        base: usize,
        found: usize,
        expected: usize,
    },
    #[error("detected array is invalid: {0}")]
    Array(#[from] SchemeError),
}

/// Simple connected undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    adjacency: Vec<Vec<usize>>,
    pub name: Option<String>,
}

/// Non-fatal issues found while building a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphWarning {
    DuplicateEdge { line: usize, u: usize, v: usize },
}

impl LabeledGraph {
    /// Builds from an edge list on `n` vertices. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let (g, _) = Self::from_edges_reporting(n, edges.iter().map(|&(u, v)| (0, u, v)))?;
        Ok(g)
    }

    fn from_edges_reporting(
        n: usize,
        edges: impl Iterator<Item = (usize, usize, usize)>,
    ) -> Result<(Self, Vec<GraphWarning>), GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut sets = vec![BTreeSet::new(); n];
        let mut warnings = Vec::new();
        for (line, u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            if !sets[u].insert(v) {
                warnings.push(GraphWarning::DuplicateEdge { line, u, v });
            }
            sets[v].insert(u);
        }
        let g = Self {
            adjacency: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            name: None,
        };
        let dist = g.bfs(0);
        if let Some(unreachable) = dist.iter().position(Option::is_none) {
            return Err(GraphError::Disconnected { unreachable });
        }
        Ok((g, warnings))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adjacency.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut a = DMatrix::zeros(n, n);
        for (u, nb) in self.adjacency.iter().enumerate() {
            for &v in nb {
                a[(u, v)] = 1.0;
            }
        }
        a
    }

    fn bfs(&self, base: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[base] = Some(0);
        let mut queue = VecDeque::from([base]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS distances from `base`; the graph is connected so all are finite.
    pub fn distances_from(&self, base: usize) -> Vec<usize> {
        self.bfs(base)
            .into_iter()
            .map(|d| d.unwrap_or(usize::MAX))
            .collect()
    }

    /// All-pairs distance table.
    pub fn distance_table(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|u| self.distances_from(u)).collect()
    }

    /// Renders as an edge-list file.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("# {name}\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// The even cycle `C_{2m}`.
pub fn build_cycle(m: usize) -> LabeledGraph {
    assert!(m >= 2, "C_2m needs m >= 2");
    let n = 2 * m;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    LabeledGraph::from_edges(n, &edges)
        .expect("cycle is connected")
        .with_name(format!("cycle:{m}"))
}

/// The hypercube `H(d,2)`; vertex labels are the binary values of the bitstrings.
pub fn build_hypercube(d: usize) -> LabeledGraph {
    assert!((1..=20).contains(&d));
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    LabeledGraph::from_edges(n, &edges)
        .expect("hypercube is connected")
        .with_name(format!("cube:{d}"))
}

/// Parses `u v` lines with 0-based labels; `#` starts a comment.
/// The vertex count is one more than the largest label.
pub fn ingest_edge_list(text: &str) -> Result<(LabeledGraph, Vec<GraphWarning>), GraphError> {
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(GraphError::Parse {
                line,
                message: format!("expected two vertex labels, found {:?}", content),
            });
        }
        let parse = |t: &str| {
            t.parse::<usize>().map_err(|_| GraphError::Parse {
                line,
                message: format!("invalid vertex label {t:?}"),
            })
        };
        edges.push((line, parse(fields[0])?, parse(fields[1])?));
    }
    let n = edges
        .iter()
        .map(|&(_, u, v)| u.max(v) + 1)
        .max()
        .ok_or(GraphError::Empty)?;
    LabeledGraph::from_edges_reporting(n, edges.into_iter())
}

/// Distance classes around a base vertex and the distance matrices of the graph.
#[derive(Clone, Debug)]
pub struct DistancePartition {
    pub base: usize,
    pub dist: Vec<usize>,
    /// `classes[i]` lists the vertices at distance `i` from `base`.
    pub classes: Vec<Vec<usize>>,
    /// `amats[i][(u, v)] = 1` iff `dist(u, v) = i`.
    pub amats: Vec<DMatrix<f64>>,
}

impl DistancePartition {
    pub fn diameter(&self) -> usize {
        self.amats.len() - 1
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

pub fn distance_partition(g: &LabeledGraph, base: usize) -> Result<DistancePartition, GraphError> {
    let n = g.n();
    if base >= n {
        return Err(GraphError::VertexOutOfRange { vertex: base, n });
    }
    let table = g.distance_table();
    let diameter = table.iter().flatten().copied().max().unwrap_or(0);
    let mut amats = vec![DMatrix::zeros(n, n); diameter + 1];
    for (u, row) in table.iter().enumerate() {
        for (v, &duv) in row.iter().enumerate() {
            amats[duv][(u, v)] = 1.0;
        }
    }
    let dist = table[base].clone();
    let ecc = dist.iter().copied().max().unwrap_or(0);
    let mut classes = vec![Vec::new(); ecc + 1];
    for (v, &dv) in dist.iter().enumerate() {
        classes[dv].push(v);
    }
    Ok(DistancePartition {
        base,
        dist,
        classes,
        amats,
    })
}

/// Exhaustive check over every base vertex; returns the intersection array.
pub fn check_distance_regular(g: &LabeledGraph) -> Result<IntersectionArray, GraphError> {
    let table = g.distance_table();
    let diameter = table.iter().flatten().copied().max().unwrap_or(0);
    // (c_i, a_i, b_i) as first observed
    let mut seen: Vec<Option<(usize, usize, usize)>> = vec![None; diameter + 1];

    for (base, dist) in table.iter().enumerate() {
        for (w, &i) in dist.iter().enumerate() {
            let mut counts = (0, 0, 0);
            for &x in g.neighbors(w) {
                match dist[x] {
                    dx if dx + 1 == i => counts.0 += 1,
                    dx if dx == i => counts.1 += 1,
                    _ => counts.2 += 1,
                }
            }
            match seen[i] {
                None => seen[i] = Some(counts),
                Some(expected) if expected != counts => {
                    return Err(GraphError::NotDistanceRegular {
                        base,
                        vertex: w,
                        distance: i,
                        observed: counts,
                        expected,
                    })
                }
                Some(_) => {}
            }
        }
        let ecc = dist.iter().copied().max().unwrap_or(0);
        if ecc != diameter {
            return Err(GraphError::Eccentricity {
                base,
                found: ecc,
                expected: diameter,
            });
        }
    }

    let counts: Vec<(usize, usize, usize)> = seen.into_iter().flatten().collect();
    let b = counts[..diameter].iter().map(|c| c.2 as u64).collect();
    let c = counts[1..].iter().map(|c| c.0 as u64).collect();
    Ok(IntersectionArray::new(b, c)?)
}

/// Unit vectors `phi_i = kappa_i^{-1/2} sum_{v in class i} e_v`.
#[derive(Clone, Debug)]
pub struct StratumBasis {
    pub phi: Vec<DVector<f64>>,
}

impl StratumBasis {
    /// `n x (d+1)` matrix with the `phi_i` as columns.
    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_columns(&self.phi)
    }

    /// `<phi_i | M | phi_j>`.
    pub fn compress(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let b = self.matrix();
        b.transpose() * m * b
    }
}

pub fn stratum_vectors(dp: &DistancePartition) -> StratumBasis {
    let n = dp.dist.len();
    let phi = dp
        .classes
        .iter()
        .map(|class| {
            let w = 1.0 / (class.len() as f64).sqrt();
            let mut v = DVector::zeros(n);
            for &u in class {
                v[u] = w;
            }
            v
        })
        .collect();
    StratumBasis { phi }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PETERSEN: &str = include_str!("../data/graphs/petersen.edges");

    #[test]
    fn cycles() {
        let c4 = build_cycle(2);
        assert_eq!(c4.n(), 4);
        assert!((0..4).all(|v| c4.degree(v) == 2));
        let dp = distance_partition(&c4, 0).unwrap();
        // A_2 = S^2 pairs 0 with 2
        assert_eq!(dp.amats[2][(0, 2)], 1.0);
        assert_eq!(dp.amats[2].sum(), 4.0);

        let c6 = build_cycle(3);
        for base in 0..6 {
            assert_eq!(
                distance_partition(&c6, base).unwrap().class_sizes(),
                vec![1, 2, 2, 1]
            );
        }
    }

    #[test]
    fn cycle_distance_matrices_are_shift_sums() {
        let m = 4;
        let n = 2 * m;
        let g = build_cycle(m);
        let dp = distance_partition(&g, 0).unwrap();
        let shift = DMatrix::from_fn(n, n, |r, c| if c == (r + 1) % n { 1.0 } else { 0.0 });
        let pow = |k: usize| (0..k).fold(DMatrix::identity(n, n), |acc, _| &acc * &shift);
        for i in 1..m {
            assert_eq!(dp.amats[i], pow(i) + pow(n - i));
        }
        assert_eq!(dp.amats[m], pow(m));
    }

    #[test]
    fn hypercubes() {
        let h3 = build_hypercube(3);
        assert_eq!((h3.n(), h3.edge_count()), (8, 12));
        assert_eq!(
            distance_partition(&h3, 0).unwrap().class_sizes(),
            vec![1, 3, 3, 1]
        );
        let h4 = build_hypercube(4);
        assert_eq!(
            distance_partition(&h4, 0).unwrap().class_sizes(),
            vec![1, 4, 6, 4, 1]
        );
        let h1 = build_hypercube(1);
        assert_eq!(h1.edges(), vec![(0, 1)]);
    }

    #[test]
    fn ingest_examples() {
        let (k3, warnings) = ingest_edge_list("0 1\n1 2\n2 0").unwrap();
        assert_eq!((k3.n(), k3.edge_count()), (3, 3));
        assert!(warnings.is_empty());
        assert_eq!(
            distance_partition(&k3, 0).unwrap().class_sizes(),
            vec![1, 2]
        );

        let (p, _) = ingest_edge_list(PETERSEN).unwrap();
        assert_eq!((p.n(), p.edge_count()), (10, 15));

        assert!(matches!(
            ingest_edge_list("0 1\n2 3"),
            Err(GraphError::Disconnected { .. })
        ));
    }

    #[test]
    fn ingest_errors_and_warnings() {
        assert_eq!(
            ingest_edge_list("0 1\n1 1\n"),
            Err(GraphError::SelfLoop { line: 2, vertex: 1 })
        );
        assert!(matches!(
            ingest_edge_list("# header\n0 1\n1 x\n"),
            Err(GraphError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            ingest_edge_list("0 1 2\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert_eq!(ingest_edge_list("# nothing\n"), Err(GraphError::Empty));
        let (g, warnings) = ingest_edge_list("0 1\n1 0 # again\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(
            warnings,
            vec![GraphWarning::DuplicateEdge {
                line: 2,
                u: 1,
                v: 0
            }]
        );
    }

    #[test]
    fn detector() {
        let (p, _) = ingest_edge_list(PETERSEN).unwrap();
        assert_eq!(check_distance_regular(&p).unwrap().to_string(), "{3,2;1,1}");
        assert_eq!(
            check_distance_regular(&build_hypercube(3))
                .unwrap()
                .to_string(),
            "{3,2,1;1,2,3}"
        );
        let (path, _) = ingest_edge_list("0 1\n1 2\n").unwrap();
        // seen from the middle, an end vertex has no neighbour further out
        assert_eq!(
            check_distance_regular(&path).unwrap_err(),
            GraphError::NotDistanceRegular {
                base: 1,
                vertex: 0,
                distance: 1,
                observed: (1, 0, 0),
                expected: (1, 0, 1),
            }
        );
    }

    #[test]
    fn stratum_basis() {
        let c4 = build_cycle(2);
        let basis = stratum_vectors(&distance_partition(&c4, 0).unwrap());
        let r = 0.5f64.sqrt();
        assert!(
            (&basis.phi[1] - DVector::from_vec(vec![0.0, r, 0.0, r]))
                .abs()
                .max()
                < 1e-15
        );

        let h3 = build_hypercube(3);
        let dp = distance_partition(&h3, 0).unwrap();
        let basis = stratum_vectors(&dp);
        let mut e111 = DVector::zeros(8);
        e111[7] = 1.0;
        assert_eq!(basis.phi[3], e111);
        let gram = basis.matrix().transpose() * basis.matrix();
        assert!((gram - DMatrix::identity(4, 4)).abs().max() < 1e-15);
        for (i, a) in dp.amats.iter().enumerate() {
            let lhs = a * &basis.phi[0];
            let rhs = &basis.phi[i] * (dp.classes[i].len() as f64).sqrt();
            assert!((lhs - rhs).abs().max() < 1e-12);
        }
    }
}
