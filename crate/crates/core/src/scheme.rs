//! Intersection arrays of P-polynomial association schemes and the scalar and
//! polynomial data derived from them.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;

use crate::poly::{rat, RationalPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemeError {
    #[error("malformed intersection array {0:?}: expected \"b0,b1,...;c1,c2,...\"")]
    Parse(String),
    #[error("intersection array is empty")]
    Empty,
    #[error("b has {b} entries but c has {c}; both must have length d")]
    LengthMismatch { b: usize, c: usize },
    #[error("entry {which}[{index}] = 0; all intersection numbers must be >= 1")]
    NonPositive { which: &'static str, index: usize },
    #[error("c_1 = {0}, but c_1 = 1 is required")]
    FirstCNotOne(u64),
    #[error(
        "kappa_{i} = kappa_{prev} * b_{prev} / c_{i} = {numerator}/{denominator} is not an integer"
    )]
    NonIntegerValency {
        i: usize,
        prev: usize,
        numerator: u128,
        denominator: u64,
    },
    #[error("a_{i} = kappa - b_{i} - c_{i} = {value} is negative")]
    NegativeA { i: usize, value: i128 },
    #[error("valency kappa_{0} overflows u64")]
    Overflow(usize),
}

/// Validated intersection array `{b_0, ..., b_{d-1}; c_1, ..., c_d}`.
///
/// The boundary values `c_0 = 0` and `b_d = 0` are never stored; use
/// [`b`](Self::b) and [`c`](Self::c), which supply them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
}

impl IntersectionArray {
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self, SchemeError> {
        if b.is_empty() && c.is_empty() {
            return Err(SchemeError::Empty);
        }
        if b.len() != c.len() {
            return Err(SchemeError::LengthMismatch {
                b: b.len(),
                c: c.len(),
            });
        }
        if let Some(i) = b.iter().position(|&x| x == 0) {
            return Err(SchemeError::NonPositive {
                which: "b",
                index: i,
            });
        }
        if let Some(i) = c.iter().position(|&x| x == 0) {
            return Err(SchemeError::NonPositive {
                which: "c",
                index: i + 1,
            });
        }
        if c[0] != 1 {
            return Err(SchemeError::FirstCNotOne(c[0]));
        }
        let arr = Self { b, c };
        // kappa_{i-1} b_{i-1} = kappa_i c_i
        arr.valencies()?;
        let k = arr.degree() as i128;
        for i in 1..=arr.diameter() {
            let a = k - arr.b(i) as i128 - arr.c(i) as i128;
            if a < 0 {
                return Err(SchemeError::NegativeA { i, value: a });
            }
        }
        Ok(arr)
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    /// `kappa = b_0`.
    pub fn degree(&self) -> u64 {
        self.b[0]
    }

    /// `b_i` for `0 <= i <= d`, with `b_d = 0`.
    pub fn b(&self, i: usize) -> u64 {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i` for `0 <= i <= d`, with `c_0 = 0`.
    pub fn c(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// `a_i = kappa - b_i - c_i`; `a_0 = 0`.
    pub fn a(&self, i: usize) -> u64 {
        self.degree() - self.b(i) - self.c(i)
    }

    pub fn b_list(&self) -> &[u64] {
        &self.b
    }

    pub fn c_list(&self) -> &[u64] {
        &self.c
    }

    fn valencies(&self) -> Result<Vec<u64>, SchemeError> {
        let mut kappa = vec![1u64];
        for i in 1..=self.diameter() {
            let num = kappa[i - 1] as u128 * self.b(i - 1) as u128;
            let den = self.c(i);
            if !num.is_multiple_of(den as u128) {
                return Err(SchemeError::NonIntegerValency {
                    i,
                    prev: i - 1,
                    numerator: num,
                    denominator: den,
                });
            }
            let k = u64::try_from(num / den as u128).map_err(|_| SchemeError::Overflow(i))?;
            kappa.push(k);
        }
        Ok(kappa)
    }
}

/// Validate raw `b`/`c` lists.
pub fn validate_intersection_array(b: &[u64], c: &[u64]) -> Result<IntersectionArray, SchemeError> {
    IntersectionArray::new(b.to_vec(), c.to_vec())
}

impl FromStr for IntersectionArray {
    type Err = SchemeError;

    /// Parses `"b0,b1,...;c1,c2,..."`; whitespace and enclosing braces are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(&compact);
        let (bs, cs) = body
            .split_once(';')
            .ok_or_else(|| SchemeError::Parse(s.to_string()))?;
        let parse = |part: &str| -> Result<Vec<u64>, SchemeError> {
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| SchemeError::Parse(s.to_string()))
                })
                .collect()
        };
        IntersectionArray::new(parse(bs)?, parse(cs)?)
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// Valencies and Jacobi (quantum decomposition) parameters of a scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeParameters {
    pub array: IntersectionArray,
    /// Stratum sizes `kappa_0..kappa_d`.
    pub kappa: Vec<u64>,
    /// `a_0..a_d`.
    pub a: Vec<u64>,
    /// Jacobi diagonal `alpha_0..alpha_d`; equal to `a`.
    pub alpha: Vec<u64>,
    /// `omega_1..omega_d` stored at indices `0..d`; see [`omega`](Self::omega).
    pub omega: Vec<u64>,
    /// Vertex count.
    pub v: u64,
    /// `kappa_d = 1`.
    pub antipodal: bool,
}

impl SchemeParameters {
    pub fn diameter(&self) -> usize {
        self.array.diameter()
    }

    /// `omega_k = b_{k-1} c_k` for `1 <= k <= d`.
    pub fn omega(&self, k: usize) -> u64 {
        self.omega[k - 1]
    }

    /// `beta_k = sqrt(omega_k)`.
    pub fn beta(&self, k: usize) -> f64 {
        (self.omega(k) as f64).sqrt()
    }
}

pub fn derive_parameters(arr: &IntersectionArray) -> SchemeParameters {
    let d = arr.diameter();
    let kappa = arr
        .valencies()
        .expect("validated array has integral valencies");
    let a: Vec<u64> = (0..=d).map(|i| arr.a(i)).collect();
    let omega = (1..=d).map(|k| arr.b(k - 1) * arr.c(k)).collect();
    let v = kappa.iter().sum();
    SchemeParameters {
        array: arr.clone(),
        antipodal: kappa[d] == 1,
        alpha: a.clone(),
        a,
        kappa,
        omega,
        v,
    }
}

/// Exact polynomial data of a scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialSystem {
    /// Distance polynomials `P_0..P_d` with `A_i = P_i(A)`.
    pub p: Vec<RationalPoly>,
    /// Monic orthogonal polynomials `Q_0..Q_{d+1}`.
    pub q: Vec<RationalPoly>,
    /// Associated polynomials `Q_0^(1)..Q_d^(1)`.
    pub q1: Vec<RationalPoly>,
}

impl PolynomialSystem {
    /// Numerator and denominator of the Stieltjes function, `Q_d^(1) / Q_{d+1}`.
    pub fn stieltjes_parts(&self) -> (&RationalPoly, &RationalPoly) {
        (&self.q1[self.q1.len() - 1], &self.q[self.q.len() - 1])
    }
}

pub fn build_polynomials(params: &SchemeParameters) -> PolynomialSystem {
    let arr = &params.array;
    let d = arr.diameter();

    // c_{i+1} P_{i+1} = (x - a_i) P_i - b_{i-1} P_{i-1}
    let mut p = vec![RationalPoly::one(), RationalPoly::x()];
    for i in 1..d {
        let next =
            &p[i].mul_linear(&rat(arr.a(i) as i64)) - &p[i - 1].scale(&rat(arr.b(i - 1) as i64));
        p.push(next.scale(&(BigRational::one() / rat(arr.c(i + 1) as i64))));
    }
    p.truncate(d + 1);

    let alpha = |k: usize| rat(params.alpha[k] as i64);
    let omega = |k: usize| rat(params.omega(k) as i64);

    // Q_{k+1} = (x - alpha_k) Q_k - omega_k Q_{k-1}
    let mut q = vec![
        RationalPoly::one(),
        RationalPoly::one().mul_linear(&alpha(0)),
    ];
    for k in 1..=d {
        let next = &q[k].mul_linear(&alpha(k)) - &q[k - 1].scale(&omega(k));
        q.push(next);
    }

    // Q^(1)_{k+1} = (x - alpha_{k+1}) Q^(1)_k - omega_{k+1} Q^(1)_{k-1}
    let mut q1 = vec![RationalPoly::one()];
    if d >= 1 {
        q1.push(RationalPoly::one().mul_linear(&alpha(1)));
    }
    for k in 1..d {
        let next = &q1[k].mul_linear(&alpha(k + 1)) - &q1[k - 1].scale(&omega(k + 1));
        q1.push(next);
    }

    PolynomialSystem { p, q, q1 }
}

/// Horner evaluation of a rational polynomial at a real point.
pub fn evaluate_polynomial(poly: &RationalPoly, x: f64) -> f64 {
    poly.eval(x)
}

/// Exact evaluation at a rational point.
pub fn evaluate_polynomial_exact(poly: &RationalPoly, x: &BigRational) -> BigRational {
    poly.eval_exact(x)
}

/// Every intermediate of the pipeline from one array.
#[derive(Clone, Debug)]
pub struct Scheme {
    pub params: SchemeParameters,
    pub polys: PolynomialSystem,
}

impl Scheme {
    pub fn new(arr: &IntersectionArray) -> Self {
        let params = derive_parameters(arr);
        let polys = build_polynomials(&params);
        Self { params, polys }
    }
}

/// `{2,1,...,1;1,...,1,2}`, the array of the cycle `C_{2m}`.
pub fn cycle_array(m: usize) -> IntersectionArray {
    assert!(m >= 2, "C_2m needs m >= 2");
    let mut b = vec![1u64; m];
    b[0] = 2;
    let mut c = vec![1u64; m];
    c[m - 1] = 2;
    IntersectionArray::new(b, c).expect("cycle array is valid")
}

/// `b_i = d - i`, `c_i = i`: the binary Hamming scheme `H(d,2)`.
pub fn hypercube_array(d: usize) -> IntersectionArray {
    assert!(d >= 1);
    let b = (0..d).map(|i| (d - i) as u64).collect();
    let c = (1..=d).map(|i| i as u64).collect();
    IntersectionArray::new(b, c).expect("hypercube array is valid")
}
