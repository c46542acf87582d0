//! Named intersection arrays with the data printed alongside them, plus the
//! parametric cycle and hypercube families.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;

use crate::format::g15;
use crate::graphs::{build_cycle, build_hypercube, GraphError, LabeledGraph};
use crate::pst::{check_solution, feasibility, PstError};
use crate::scheme::{
    cycle_array, hypercube_array, IntersectionArray, SchemeError, SchemeParameters,
};
use crate::spectra::SpectralData;

/// Environment variable naming a catalog file that replaces the built-in one.
pub const CATALOG_ENV: &str = "PSTNET_CATALOG";
/// Printed-vs-computed differences at or above this are reported.
pub const PRINTED_TOLERANCE: f64 = 1e-9;
/// Generated graphs larger than this are left without an edge list.
pub const MAX_GENERATED_VERTICES: usize = 512;
const MAX_CYCLE_M: usize = 500;
const MAX_CUBE_D: usize = 20;

static EMBEDDED: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("catalog file {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("malformed catalog: {0}")]
    Json(String),
    #[error("entry {name}: {source}")]
    Array { name: String, source: SchemeError },
    #[error("entry {name}: {source}")]
    Graph { name: String, source: GraphError },
    #[error("entry {name}: invalid number {text:?}")]
    Number { name: String, text: String },
    #[error("generator {0:?} is out of range")]
    Generator(String),
}

/// `a + b sqrt(r)` with rational `a`, `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Surd {
    pub a: Rational64,
    pub b: Rational64,
    pub r: u64,
}

impl Surd {
    pub fn rational(a: Rational64) -> Self {
        Self {
            a,
            b: Rational64::zero(),
            r: 0,
        }
    }

    pub fn value(&self) -> f64 {
        ratio_f64(self.a) + ratio_f64(self.b) * (self.r as f64).sqrt()
    }
}

fn ratio_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let has_root = !self.b.is_zero() && self.r != 0;
        if !has_root {
            return write!(f, "{}", self.a);
        }
        let root = |b: Rational64| {
            if b.is_one() {
                format!("sqrt({})", self.r)
            } else {
                format!("{b}*sqrt({})", self.r)
            }
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{}", root(self.b.abs()));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}", self.a, sign, root(self.b.abs()))
    }
}

/// One atom of a printed spectral distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct PrintedAtom {
    pub x: f64,
    pub weight: f64,
    pub x_label: String,
    pub weight_label: String,
}

/// `J_m t0 = pi * pi_part + theta * theta_part`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coupling {
    pub pi_part: Surd,
    pub theta_part: Rational64,
}

impl Coupling {
    pub fn value(&self, theta: f64, t0: f64) -> f64 {
        (PI * self.pi_part.value() + theta * ratio_f64(self.theta_part)) / t0
    }
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.theta_part.is_zero() {
            write!(f, "({})*pi/t0", self.pi_part)
        } else {
            write!(
                f,
                "(({})*pi + ({})*theta)/t0",
                self.pi_part, self.theta_part
            )
        }
    }
}

/// Printed statement `t0 = pi_part * pi / J_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimeRelation {
    pub index: usize,
    pub pi_part: Rational64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrintedSolution {
    pub couplings: Vec<Coupling>,
    pub time_relation: Option<TimeRelation>,
}

impl PrintedSolution {
    pub fn evaluate(&self, theta: f64, t0: f64) -> Vec<f64> {
        self.couplings.iter().map(|c| c.value(theta, t0)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErratumKind {
    /// The printed transfer-time line disagrees with the printed couplings.
    T0Relation,
    /// A printed coupling violates the phase equations; a corrected value is known.
    CouplingMisprint,
    /// A coupling is absent from the printed list.
    MissingCoupling,
}

impl fmt::Display for ErratumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::T0Relation => "t0_relation",
            Self::CouplingMisprint => "coupling_misprint",
            Self::MissingCoupling => "missing_coupling",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Erratum {
    pub kind: ErratumKind,
    pub index: Option<usize>,
    pub corrected: Option<Surd>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct PrintedData {
    pub spectrum: Vec<PrintedAtom>,
    pub solutions: Vec<PrintedSolution>,
    pub errata: Vec<Erratum>,
}

impl PrintedData {
    pub fn erratum(&self, kind: ErratumKind) -> Option<&Erratum> {
        self.errata.iter().find(|e| e.kind == kind)
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub title: String,
    pub array: IntersectionArray,
    pub graph: Option<LabeledGraph>,
    pub printed: Option<PrintedData>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    title: String,
    array: String,
    #[serde(default)]
    edges: Option<Vec<(usize, usize)>>,
    #[serde(default)]
    printed: Option<RawPrinted>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrinted {
    spectrum: Vec<RawAtom>,
    #[serde(default)]
    solutions: Vec<RawSolution>,
    #[serde(default)]
    errata: Vec<RawErratum>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAtom {
    x: RawSurd,
    w: String,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSurd {
    #[serde(default)]
    a: Option<String>,
    #[serde(default)]
    b: Option<String>,
    #[serde(default)]
    r: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolution {
    couplings: Vec<RawCoupling>,
    #[serde(default)]
    t0_relation: Option<RawRelation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoupling {
    pi: RawSurd,
    #[serde(default)]
    theta: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    index: usize,
    pi: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawErratum {
    kind: ErratumKind,
    #[serde(default)]
    index: Option<usize>,
    #[serde(default)]
    corrected: Option<RawSurd>,
    note: String,
}

struct Converter<'a> {
    name: &'a str,
}

impl Converter<'_> {
    fn number(&self, text: &str) -> Result<Rational64, CatalogError> {
        text.trim().parse().map_err(|_| CatalogError::Number {
            name: self.name.to_string(),
            text: text.to_string(),
        })
    }

    fn optional(&self, text: &Option<String>) -> Result<Rational64, CatalogError> {
        text.as_deref()
            .map_or(Ok(Rational64::zero()), |t| self.number(t))
    }

    fn surd(&self, raw: &RawSurd) -> Result<Surd, CatalogError> {
        Ok(Surd {
            a: self.optional(&raw.a)?,
            b: self.optional(&raw.b)?,
            r: raw.r.unwrap_or(0),
        })
    }

    fn printed(&self, raw: &RawPrinted) -> Result<PrintedData, CatalogError> {
        let spectrum = raw
            .spectrum
            .iter()
            .map(|atom| {
                let x = self.surd(&atom.x)?;
                let w = self.number(&atom.w)?;
                Ok(PrintedAtom {
                    x: x.value(),
                    weight: ratio_f64(w),
                    x_label: x.to_string(),
                    weight_label: atom.w.clone(),
                })
            })
            .collect::<Result<_, CatalogError>>()?;
        let solutions = raw
            .solutions
            .iter()
            .map(|sol| {
                let couplings = sol
                    .couplings
                    .iter()
                    .map(|c| {
                        Ok(Coupling {
                            pi_part: self.surd(&c.pi)?,
                            theta_part: self.optional(&c.theta)?,
                        })
                    })
                    .collect::<Result<_, CatalogError>>()?;
                let time_relation = sol
                    .t0_relation
                    .as_ref()
                    .map(|r| {
                        Ok::<_, CatalogError>(TimeRelation {
                            index: r.index,
                            pi_part: self.number(&r.pi)?,
                        })
                    })
                    .transpose()?;
                Ok(PrintedSolution {
                    couplings,
                    time_relation,
                })
            })
            .collect::<Result<_, CatalogError>>()?;
        let errata = raw
            .errata
            .iter()
            .map(|e| {
                Ok(Erratum {
                    kind: e.kind,
                    index: e.index,
                    corrected: e.corrected.as_ref().map(|s| self.surd(s)).transpose()?,
                    note: e.note.clone(),
                })
            })
            .collect::<Result<_, CatalogError>>()?;
        Ok(PrintedData {
            spectrum,
            solutions,
            errata,
        })
    }

    fn entry(&self, raw: &RawEntry) -> Result<CatalogEntry, CatalogError> {
        let array: IntersectionArray = raw.array.parse().map_err(|source| CatalogError::Array {
            name: raw.name.clone(),
            source,
        })?;
        let graph = raw
            .edges
            .as_ref()
            .map(|edges| {
                let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
                LabeledGraph::from_edges(n, edges).map(|g| g.with_name(raw.name.clone()))
            })
            .transpose()
            .map_err(|source| CatalogError::Graph {
                name: raw.name.clone(),
                source,
            })?;
        Ok(CatalogEntry {
            name: raw.name.clone(),
            title: raw.title.clone(),
            array,
            graph,
            printed: raw.printed.as_ref().map(|p| self.printed(p)).transpose()?,
        })
    }
}

/// Ordered collection of named entries.
#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

/// Parametric families recognised by [`Catalog::get`].
pub const GENERATORS: [(&str, &str); 2] = [
    ("cycle:<m>", "even cycle C_2m, m >= 2"),
    ("cube:<d>", "hypercube H(d,2), d >= 1"),
];

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let raw: RawCatalog =
            serde_json::from_str(text).map_err(|e| CatalogError::Json(e.to_string()))?;
        let entries = raw
            .entries
            .iter()
            .map(|e| Converter { name: &e.name }.entry(e))
            .collect::<Result<_, _>>()?;
        Ok(Self { entries })
    }

    pub fn embedded() -> Self {
        Self::from_json(EMBEDDED).expect("built-in catalog is valid")
    }

    pub fn from_path(path: &Path) -> Result<Self, CatalogError> {
        let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    /// The file named by `PSTNET_CATALOG` if set, otherwise the built-in catalog.
    pub fn load() -> Result<Self, CatalogError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) if !path.is_empty() => Self::from_path(Path::new(&path)),
            _ => Ok(Self::embedded()),
        }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Looks up a named entry or instantiates a generator such as `cube:3`.
    pub fn get(&self, name: &str) -> Result<CatalogEntry, CatalogError> {
        if let Some(e) = self.entries.iter().find(|e| e.name == name) {
            return Ok(e.clone());
        }
        let (family, arg) = name
            .split_once(':')
            .ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
        let n: usize = arg
            .trim()
            .parse()
            .map_err(|_| CatalogError::Generator(name.to_string()))?;
        match family {
            "cycle" if (2..=MAX_CYCLE_M).contains(&n) => Ok(cycle_entry(n)),
            "cube" if (1..=MAX_CUBE_D).contains(&n) => Ok(cube_entry(n)),
            "cycle" | "cube" => Err(CatalogError::Generator(name.to_string())),
            _ => Err(CatalogError::UnknownName(name.to_string())),
        }
    }
}

fn coupling(pi_part: (i64, i64), theta_part: (i64, i64)) -> Coupling {
    Coupling {
        pi_part: Surd::rational(Rational64::new(pi_part.0, pi_part.1)),
        theta_part: Rational64::new(theta_part.0, theta_part.1),
    }
}

fn cycle_entry(m: usize) -> CatalogEntry {
    let n = 2 * m;
    let spectrum = (0..=m)
        .map(|i| {
            let w = if i == 0 || i == m { (1, 2 * m) } else { (1, m) };
            PrintedAtom {
                x: 2.0 * (2.0 * PI * i as f64 / n as f64).cos(),
                weight: w.0 as f64 / w.1 as f64,
                x_label: format!("2*cos(2*pi*{i}/{n})"),
                weight_label: format!("{}/{}", w.0, w.1),
            }
        })
        .collect();
    let solutions = if m == 2 {
        vec![
            PrintedSolution {
                couplings: vec![
                    coupling((-1, 4), (-1, 2)),
                    coupling((0, 1), (0, 1)),
                    coupling((1, 4), (0, 1)),
                ],
                time_relation: Some(TimeRelation {
                    index: 2,
                    pi_part: Rational64::new(1, 4),
                }),
            },
            PrintedSolution {
                couplings: vec![
                    coupling((-1, 2), (-1, 2)),
                    coupling((1, 4), (0, 1)),
                    coupling((0, 1), (0, 1)),
                ],
                time_relation: Some(TimeRelation {
                    index: 1,
                    pi_part: Rational64::new(1, 4),
                }),
            },
        ]
    } else {
        Vec::new()
    };
    CatalogEntry {
        name: format!("cycle:{m}"),
        title: format!("Cycle C_{n}"),
        array: cycle_array(m),
        graph: (n <= MAX_GENERATED_VERTICES).then(|| build_cycle(m)),
        printed: Some(PrintedData {
            spectrum,
            solutions,
            errata: Vec::new(),
        }),
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn cube_entry(d: usize) -> CatalogEntry {
    let total = 1u64 << d;
    let spectrum = (0..=d)
        .map(|l| {
            let w = Rational64::new(binomial(d, l) as i64, total as i64);
            PrintedAtom {
                x: 2.0 * l as f64 - d as f64,
                weight: ratio_f64(w),
                x_label: format!("{}", 2 * l as i64 - d as i64),
                weight_label: w.to_string(),
            }
        })
        .collect();
    let solutions = if d == 3 {
        vec![PrintedSolution {
            couplings: vec![
                coupling((-3, 4), (-1, 2)),
                coupling((1, 4), (0, 1)),
                coupling((0, 1), (0, 1)),
                coupling((0, 1), (0, 1)),
            ],
            time_relation: Some(TimeRelation {
                index: 1,
                pi_part: Rational64::new(1, 4),
            }),
        }]
    } else {
        Vec::new()
    };
    CatalogEntry {
        name: format!("cube:{d}"),
        title: format!("Hypercube H({d},2)"),
        array: hypercube_array(d),
        graph: (total as usize <= MAX_GENERATED_VERTICES).then(|| build_hypercube(d)),
        printed: Some(PrintedData {
            spectrum,
            solutions,
            errata: Vec::new(),
        }),
    }
}

/// Printed spectral atoms matched to computed eigenvalues by value.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumCheck {
    /// `(printed index, computed index)` pairs, in descending eigenvalue order.
    pub matching: Vec<(usize, usize)>,
    pub max_x_deviation: f64,
    pub max_weight_deviation: f64,
    pub count_mismatch: bool,
}

impl SpectrumCheck {
    pub fn max_deviation(&self) -> f64 {
        self.max_x_deviation.max(self.max_weight_deviation)
    }

    pub fn passes(&self) -> bool {
        !self.count_mismatch && self.max_deviation() < PRINTED_TOLERANCE
    }
}

pub fn compare_spectrum(printed: &[PrintedAtom], spec: &SpectralData) -> SpectrumCheck {
    let mut order: Vec<usize> = (0..printed.len()).collect();
    order.sort_by(|&a, &b| printed[b].x.total_cmp(&printed[a].x));
    let mut check = SpectrumCheck {
        matching: Vec::new(),
        max_x_deviation: 0.0,
        max_weight_deviation: 0.0,
        count_mismatch: printed.len() != spec.len(),
    };
    // computed values are already descending
    for (k, &p) in order.iter().enumerate().take(spec.len()) {
        check.max_x_deviation = check.max_x_deviation.max((printed[p].x - spec.x[k]).abs());
        check.max_weight_deviation = check
            .max_weight_deviation
            .max((printed[p].weight - spec.gamma[k]).abs());
        check.matching.push((p, k));
    }
    check
}

/// Value of a coupling left out of a printed list, found from the phase
/// equation at `x_0` (where `P_index(x_0) = kappa_index`) and confirmed on all others.
pub fn complete_missing_coupling(
    spec: &SpectralData,
    s: &[i8],
    partial: &[f64],
    index: usize,
    theta: f64,
    t0: f64,
) -> Result<Option<(f64, f64)>, PstError> {
    let kappa = spec.pmat[(0, index)];
    let known: f64 = partial
        .iter()
        .enumerate()
        .map(|(m, j)| j * spec.pmat[(0, if m < index { m } else { m + 1 })])
        .sum();
    let target = if s[0] < 0 { theta + PI } else { theta };
    let span = (4.0 * kappa).ceil() as i64;
    let mut best: Option<(f64, f64)> = None;
    for n in -span..=span {
        let j = ((-target - 2.0 * PI * n as f64) / (2.0 * t0) - known) / kappa;
        let mut full = partial.to_vec();
        full.insert(index, j);
        let residual = check_solution(spec, s, &full, theta, t0)?.max;
        let better = match best {
            None => true,
            Some((bj, br)) => {
                residual < br - PRINTED_TOLERANCE
                    || (residual <= br + PRINTED_TOLERANCE && j.abs() < bj.abs())
            }
        };
        if better {
            best = Some((j, residual));
        }
    }
    Ok(best.filter(|&(_, r)| r < PRINTED_TOLERANCE))
}

/// Result of evaluating one printed coupling set at a given `theta`, `t0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionCheck {
    pub solution: usize,
    pub theta: f64,
    pub t0: f64,
    pub printed: Vec<f64>,
    /// `None` when the printed list is too short to evaluate.
    pub printed_residual: Option<f64>,
    /// Couplings after applying registered corrections or completions.
    pub corrected: Option<Vec<f64>>,
    pub corrected_residual: Option<f64>,
    /// `t0` implied by the printed time relation.
    pub implied_t0: Option<f64>,
}

impl SolutionCheck {
    pub fn printed_passes(&self) -> bool {
        self.printed_residual
            .is_some_and(|r| r <= PRINTED_TOLERANCE)
    }
}

pub fn check_printed_solutions(
    entry: &CatalogEntry,
    params: &SchemeParameters,
    spec: &SpectralData,
    theta: f64,
    t0: f64,
) -> Result<Vec<SolutionCheck>, PstError> {
    let Some(printed) = &entry.printed else {
        return Ok(Vec::new());
    };
    let s = feasibility(spec, params)?.s;
    let n = spec.len();
    let mut out = Vec::new();
    for (idx, sol) in printed.solutions.iter().enumerate() {
        let values = sol.evaluate(theta, t0);
        let printed_residual = if values.len() == n {
            Some(check_solution(spec, &s, &values, theta, t0)?.max)
        } else {
            None
        };
        let mut corrected = None;
        for e in &printed.errata {
            match (e.kind, e.index, e.corrected) {
                (ErratumKind::CouplingMisprint, Some(m), Some(value)) if m < values.len() => {
                    let mut fixed = corrected.clone().unwrap_or_else(|| values.clone());
                    fixed[m] = PI * value.value() / t0;
                    corrected = Some(fixed);
                }
                (ErratumKind::MissingCoupling, Some(m), _) if values.len() + 1 == n && m < n => {
                    if let Some((j, _)) =
                        complete_missing_coupling(spec, &s, &values, m, theta, t0)?
                    {
                        let mut full = values.clone();
                        full.insert(m, j);
                        corrected = Some(full);
                    }
                }
                _ => {}
            }
        }
        let corrected_residual = corrected
            .as_ref()
            .map(|c| check_solution(spec, &s, c, theta, t0).map(|r| r.max))
            .transpose()?;
        let implied_t0 = sol.time_relation.and_then(|rel| {
            values
                .get(rel.index)
                .map(|&j| PI * ratio_f64(rel.pi_part) / j)
        });
        out.push(SolutionCheck {
            solution: idx,
            theta,
            t0,
            printed: values,
            printed_residual,
            corrected,
            corrected_residual,
            implied_t0,
        });
    }
    Ok(out)
}

/// One line of the printed-vs-computed comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonLine {
    pub erratum: bool,
    /// Registered erratum kind covering this mismatch, if any.
    pub known: Option<ErratumKind>,
    pub text: String,
}

impl fmt::Display for ComparisonLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.erratum {
            return write!(f, "ok: {}", self.text);
        }
        match self.known {
            Some(kind) => write!(f, "ERRATUM [{kind}]: {}", self.text),
            None => write!(f, "ERRATUM [unregistered]: {}", self.text),
        }
    }
}

/// Compares everything printed for an entry with computed data at `theta`, `t0`.
pub fn compare_printed(
    entry: &CatalogEntry,
    params: &SchemeParameters,
    spec: &SpectralData,
    theta: f64,
    t0: f64,
) -> Result<Vec<ComparisonLine>, PstError> {
    let Some(printed) = &entry.printed else {
        return Ok(Vec::new());
    };
    let mut lines = Vec::new();
    let sc = compare_spectrum(&printed.spectrum, spec);
    lines.push(ComparisonLine {
        erratum: !sc.passes(),
        known: None,
        text: if sc.count_mismatch {
            format!(
                "spectrum has {} printed atoms, {} computed",
                printed.spectrum.len(),
                spec.len()
            )
        } else {
            format!(
                "spectrum max deviation {} (eigenvalues {}, weights {})",
                g15(sc.max_deviation()),
                g15(sc.max_x_deviation),
                g15(sc.max_weight_deviation)
            )
        },
    });

    for check in check_printed_solutions(entry, params, spec, theta, t0)? {
        let label = format!("solution {} at theta={}", check.solution + 1, g15(theta));
        match check.printed_residual {
            Some(r) if r <= PRINTED_TOLERANCE => lines.push(ComparisonLine {
                erratum: false,
                known: None,
                text: format!("{label}: printed couplings residual {}", g15(r)),
            }),
            Some(r) => {
                let known = printed
                    .erratum(ErratumKind::CouplingMisprint)
                    .map(|e| e.kind);
                lines.push(ComparisonLine {
                    erratum: true,
                    known,
                    text: format!(
                        "{label}: printed couplings violate the phase equations (residual {}){}",
                        g15(r),
                        corrected_note(&check)
                    ),
                });
            }
            None => {
                let known = printed
                    .erratum(ErratumKind::MissingCoupling)
                    .map(|e| e.kind);
                lines.push(ComparisonLine {
                    erratum: true,
                    known,
                    text: format!(
                        "{label}: {} couplings printed, {} required{}",
                        check.printed.len(),
                        spec.len(),
                        corrected_note(&check)
                    ),
                });
            }
        }
        if let Some(implied) = check.implied_t0 {
            let dev = (implied - t0).abs();
            let erratum = dev.is_nan() || dev >= PRINTED_TOLERANCE;
            lines.push(ComparisonLine {
                erratum,
                known: if erratum {
                    printed.erratum(ErratumKind::T0Relation).map(|e| e.kind)
                } else {
                    None
                },
                text: format!(
                    "{label}: printed transfer-time relation gives t0 = {} for t0 = {}",
                    g15(implied),
                    g15(t0)
                ),
            });
        }
    }
    Ok(lines)
}

fn corrected_note(check: &SolutionCheck) -> String {
    match (&check.corrected, check.corrected_residual) {
        (Some(j), Some(r)) => {
            let values: Vec<String> = j
                .iter()
                .map(|&v| crate::format::angle(v * check.t0, true))
                .collect();
            format!(
                "; corrected J*t0 = ({}) residual {}",
                values.join(", "),
                g15(r)
            )
        }
        _ => String::new(),
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name, self.array)
    }
}
