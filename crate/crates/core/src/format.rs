//! Deterministic text formatting for reports and CSV files.

use std::f64::consts::PI;

use num_integer::Integer;

/// Largest denominator tried when recognising multiples of pi.
pub const MAX_PI_DENOMINATOR: i64 = 420;
pub const PI_MATCH_TOLERANCE: f64 = 1e-9;

/// C's `%.15g`, except that negative zero prints as `0`.
pub fn g15(x: f64) -> String {
    const P: i32 = 15;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let fixed = format!("{:.*}", (P - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `(p, q)` in lowest terms with `|x - p pi / q| <= 1e-9`, smallest `q` first.
pub fn pi_fraction(x: f64) -> Option<(i64, i64)> {
    (1..=MAX_PI_DENOMINATOR).find_map(|q| {
        let p = (x * q as f64 / PI).round();
        if (x - p * PI / q as f64).abs() <= PI_MATCH_TOLERANCE {
            let p = p as i64;
            let g = p.gcd(&q).max(1);
            Some((p / g, q / g))
        } else {
            None
        }
    })
}

/// Renders `p pi / q` as `0`, `pi`, `-3*pi/4`, ...
pub fn pi_string(p: i64, q: i64) -> String {
    let num = match p {
        0 => return "0".into(),
        1 => "pi".to_string(),
        -1 => "-pi".to_string(),
        _ => format!("{p}*pi"),
    };
    if q == 1 {
        num
    } else {
        format!("{num}/{q}")
    }
}

/// Angle in radians, or as a multiple of pi when requested and recognised.
pub fn angle(x: f64, as_pi: bool) -> String {
    if as_pi {
        if let Some((p, q)) = pi_fraction(x) {
            return pi_string(p, q);
        }
    }
    g15(x)
}

pub fn join(values: impl IntoIterator<Item = String>, sep: &str) -> String {
    values.into_iter().collect::<Vec<_>>().join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf() {
        let cases = [
            (1.0, "1"),
            (0.1, "0.1"),
            (PI, "3.14159265358979"),
            (-PI / 4.0, "-0.785398163397448"),
            (1e-5, "1e-05"),
            (1.25e-4, "0.000125"),
            (123456789012345.0, "123456789012345"),
            (1234567890123456.0, "1.23456789012346e+15"),
            (2.0f64.sqrt() * 1e20, "1.4142135623731e+20"),
            (0.0, "0"),
            (9.999999999999999e14, "1e+15"),
        ];
        for (x, want) in cases {
            assert_eq!(g15(x), want, "{x:e}");
        }
    }

    #[test]
    fn pi_multiples() {
        assert_eq!(pi_fraction(-3.0 * PI / 4.0), Some((-3, 4)));
        assert_eq!(pi_fraction(0.0), Some((0, 1)));
        assert_eq!(pi_fraction(PI * 17.0 / 420.0), Some((17, 420)));
        assert_eq!(pi_fraction(PI / 1740.0 + 1.0), None);
        assert_eq!(angle(-PI / 4.0, true), "-pi/4");
        assert_eq!(angle(PI, true), "pi");
        assert_eq!(angle(6.0 * PI / 5.0, true), "6*pi/5");
        assert_eq!(angle(0.3, true), "0.3");
        assert_eq!(angle(-PI / 4.0, false), "-0.785398163397448");
    }
}
