//! Parsing of complex amplitude lists such as
//! `0.7071067811865476+0j,0,0,0.7071067811865476-0j`.
//!
//! Each entry is `re`, `imj`, or `re±imj`; whitespace around entries is
//! ignored. The two-qubit list is in basis order `|00⟩, |01⟩, |10⟩, |11⟩`.

use qecgate_core::{Complex64, ComplexVector};

use crate::CliError;

fn invalid(s: &str) -> CliError {
    CliError::Invalid(format!("cannot parse complex number '{s}' (expected re+imj)"))
}

fn parse_real(s: &str, whole: &str) -> Result<f64, CliError> {
    let s = s.trim();
    let v: f64 = match s {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => s.parse().map_err(|_| invalid(whole))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(whole))
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(invalid(s));
    }
    let Some(body) = t.strip_suffix(['j', 'i']) else {
        let re: f64 = t.parse().map_err(|_| invalid(s))?;
        return if re.is_finite() {
            Ok(Complex64::new(re, 0.0))
        } else {
            Err(invalid(s))
        };
    };
    // split before the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re: f64 = body[..i].parse().map_err(|_| invalid(s))?;
            if !re.is_finite() {
                return Err(invalid(s));
            }
            Ok(Complex64::new(re, parse_real(&body[i..], s)?))
        }
        None => Ok(Complex64::new(0.0, parse_real(body, s)?)),
    }
}

/// Parses a comma-separated amplitude list.
pub fn parse_amplitudes(s: &str) -> Result<ComplexVector, CliError> {
    let entries = s.split(',').map(parse_complex).collect::<Result<Vec<_>, _>>()?;
    Ok(ComplexVector::new(entries))
}

/// Parses exactly four amplitudes for a two-qubit state.
pub fn parse_two_qubit(s: &str) -> Result<ComplexVector, CliError> {
    let v = parse_amplitudes(s)?;
    if v.dim() != 4 {
        return Err(CliError::Invalid(format!(
            "expected 4 amplitudes (|00>,|01>,|10>,|11>), got {}",
            v.dim()
        )));
    }
    Ok(v)
}

/// Formats as `re+imj` with full round-trip precision.
pub fn format_complex(z: Complex64) -> String {
    // adding +0.0 turns -0.0 into 0.0
    let z = Complex64::new(z.re + 0.0, z.im + 0.0);
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", z.re, sign, z.im.abs())
}
