//! Univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial over `Q`, coefficients stored lowest degree first.
///
/// The coefficient vector is kept trimmed: the last entry is nonzero unless the
/// polynomial is identically zero, in which case the vector is empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// Build from integer coefficients divided by a common denominator,
    /// e.g. `from_ints(&[10, -5, -4, 1], 10)` is `(x^3 - 4x^2 - 5x + 10)/10`.
    pub fn from_ints(coeffs: &[i64], denominator: i64) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| ratio(c, denominator)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `(x - a) * self`.
    pub fn mul_linear(&self, a: &BigRational) -> Self {
        &self.shift() - &self.scale(a)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Exact Horner evaluation.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in `f64`; coefficients are rounded once.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// `sum |c_k| |x|^k`, the natural scale for the rounding error of [`eval`](Self::eval).
    pub fn eval_scale(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x.abs() + to_f64(c).abs())
    }

    /// Horner evaluation at a complex point.
    pub fn eval_complex(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, c| {
                acc * z + to_f64(c)
            })
    }

    /// Least common multiple of all coefficient denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

pub fn to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Renders as `(x^3 - 4x^2 - 5x + 10)/10`: integer numerator over the common
/// denominator, highest degree first.
impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let den = self.common_denominator();
        let mut body = String::new();
        let mut terms = 0usize;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let scaled = (c * BigRational::from_integer(den.clone())).to_integer();
            let mag = scaled.abs();
            if terms == 0 {
                if scaled.is_negative() {
                    body.push('-');
                }
            } else if scaled.is_negative() {
                body.push_str(" - ");
            } else {
                body.push_str(" + ");
            }
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                body.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => body.push('x'),
                _ => body.push_str(&format!("x^{k}")),
            }
            terms += 1;
        }
        if den.is_one() {
            write!(f, "{body}")
        } else if terms == 1 {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_reports_degree() {
        let p = RationalPoly::from_ints(&[1, 2, 0, 0], 1);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(RationalPoly::from_ints(&[0, 0], 1).degree(), None);
    }

    #[test]
    fn arithmetic_is_exact() {
        // (x - 1)(x + 1) = x^2 - 1
        let a = RationalPoly::from_ints(&[-1, 1], 1);
        let b = RationalPoly::from_ints(&[1, 1], 1);
        assert_eq!(&a * &b, RationalPoly::from_ints(&[-1, 0, 1], 1));
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(a.mul_linear(&rat(-1)), &a * &b);
    }

    #[test]
    fn derivative_and_eval() {
        let p = RationalPoly::from_ints(&[10, -5, -4, 1], 10);
        assert_eq!(p.derivative(), RationalPoly::from_ints(&[-5, -8, 3], 10));
        assert_eq!(p.eval_exact(&rat(5)), rat(1));
        assert!((p.eval(5.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn display_matches_printed_form() {
        let p = RationalPoly::from_ints(&[10, -5, -4, 1], 10);
        assert_eq!(p.to_string(), "(x^3 - 4x^2 - 5x + 10)/10");
        assert_eq!(RationalPoly::x().to_string(), "x");
        assert_eq!(
            RationalPoly::from_ints(&[-2, 0, 1], 2).to_string(),
            "(x^2 - 2)/2"
        );
        assert_eq!(RationalPoly::from_ints(&[0, 0, 1], 2).to_string(), "x^2/2");
    }
}
