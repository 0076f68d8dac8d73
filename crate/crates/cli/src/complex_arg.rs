//! Parsing of point arguments: `a`, `bi`, `a+bi`, `a-bi`, optionally
//! parenthesized. Decimal literals only.

use num_complex::Complex64;

fn decimal(text: &str) -> Result<f64, String> {
    let ok = !text.is_empty()
        && text.chars().all(|ch| ch.is_ascii_digit() || matches!(ch, '.' | 'e' | 'E' | '+' | '-'))
        && text.chars().any(|ch| ch.is_ascii_digit());
    if !ok {
        return Err(format!("invalid decimal {text:?}"));
    }
    text.parse::<f64>().map_err(|_| format!("invalid decimal {text:?}"))
}

fn imaginary(text: &str) -> Result<f64, String> {
    match text {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => decimal(text),
    }
}

pub fn parse_complex(input: &str) -> Result<Complex64, String> {
    let compact: String = input.chars().filter(|ch| !ch.is_whitespace()).collect();
    let body = match compact.strip_prefix('(') {
        Some(rest) => rest.strip_suffix(')').ok_or_else(|| format!("unbalanced parentheses in {input:?}"))?,
        None => compact.as_str(),
    };
    if body.is_empty() {
        return Err("empty complex number".into());
    }
    let Some(coeff) = body.strip_suffix('i') else {
        return Ok(Complex64::new(decimal(body)?, 0.0));
    };
    // split before the last sign that is not a leading sign or part of an exponent
    let bytes = coeff.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(decimal(&coeff[..k])?, imaginary(&coeff[k..])?)),
        None => Ok(Complex64::new(0.0, imaginary(coeff)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_complex("4").unwrap(), z(4.0, 0.0));
        assert_eq!(parse_complex("-3").unwrap(), z(-3.0, 0.0));
        assert_eq!(parse_complex("0.5+2i").unwrap(), z(0.5, 2.0));
        assert_eq!(parse_complex("(0.5 - 2i)").unwrap(), z(0.5, -2.0));
        assert_eq!(parse_complex("-i").unwrap(), z(0.0, -1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), z(0.0, 2.5));
        assert_eq!(parse_complex("1e-3+1e+2i").unwrap(), z(1e-3, 100.0));
        assert_eq!(parse_complex("-1.5e-2-i").unwrap(), z(-0.015, -1.0));
    }

    #[test]
    fn rejected_forms() {
        for bad in ["", "()", "(1+i", "inf", "nan", "1+2j", "0x10", "1+2i+3i", "abc"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }
}
