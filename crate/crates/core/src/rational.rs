//! Exact rational scalars and their textual forms.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

/// Exact rational number. All weights, heights and distances use this type.
pub type Rational = Ratio<i128>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n as i128, d as i128)
}

pub fn half(r: Rational) -> Rational {
    r / Rational::from_integer(2)
}

/// Parses a decimal string (`-12`, `3.25`, `1e-3`, `.5`) or a fraction
/// (`7/2`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: i128 = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let exp: i32 = s[i + 1..].parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            (&s[..i], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(format!("no digits in {s:?}"));
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(format!("not a decimal number: {s:?}"));
    }
    if whole.len() + frac.len() > 30 || exponent.unsigned_abs() > 30 {
        return Err(format!("number out of range: {s:?}"));
    }
    let mut numer: i128 = format!("{whole}{frac}").parse().unwrap_or(0);
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac.len() as i32;
    let pow = 10i128.pow(scale.unsigned_abs());
    Ok(if scale >= 0 { Rational::from_integer(numer * pow) } else { Rational::new(numer, pow) })
}

/// Rounds `r` to `digits` decimal places (half away from zero) and prints it
/// with exactly that many digits after the point.
pub fn format_fixed(r: &Rational, digits: usize) -> String {
    let scale = 10i128.pow(digits as u32);
    let scaled = (r * Rational::from_integer(scale)).round().to_integer();
    let sign = if scaled < 0 { "-" } else { "" };
    let (q, rem) = scaled.abs().div_rem(&scale);
    if digits == 0 {
        format!("{sign}{q}")
    } else {
        format!("{sign}{q}.{rem:0width$}", width = digits)
    }
}

/// Shortest decimal form: exact when the expansion terminates within
/// `max_digits` places, otherwise rounded to `max_digits` with trailing
/// zeros trimmed.
pub fn format_decimal(r: &Rational, max_digits: usize) -> String {
    let s = format_fixed(r, max_digits);
    if !s.contains('.') {
        return s;
    }
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Exact `p/q` form, or the rounded decimal form when `decimal` is set.
pub fn display(r: &Rational, decimal: Option<usize>) -> String {
    match decimal {
        Some(k) => format_fixed(r, k),
        None => r.to_string(),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational("-3.25").unwrap(), ratio(-13, 4));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), int(250));
        assert_eq!(parse_rational("7/2").unwrap(), ratio(7, 2));
        assert_eq!(parse_rational("0.1").unwrap() * int(3), ratio(3, 10));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1.2.3", "-", "1/0", "1e", "nan", "1,5"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats() {
        assert_eq!(format_fixed(&ratio(539, 6), 1), "89.8");
        assert_eq!(format_fixed(&ratio(1010, 7), 1), "144.3");
        assert_eq!(format_fixed(&ratio(-1, 2), 0), "-1");
        assert_eq!(format_fixed(&ratio(-1, 20), 1), "-0.1");
        assert_eq!(format_decimal(&ratio(5, 2), 6), "2.5");
        assert_eq!(format_decimal(&int(4), 6), "4");
        assert_eq!(format_decimal(&ratio(1, 3), 4), "0.3333");
        assert_eq!(display(&ratio(7, 2), None), "7/2");
        assert_eq!(display(&int(-1), None), "-1");
    }
}
