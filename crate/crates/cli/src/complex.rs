//! Complex literals: `a`, `bi`, `a+bi`, `a-bi`, with `i` alone meaning `1i`.

use num_complex::Complex64;

fn real(text: &str, whole: &str) -> Result<f64, String> {
    let v: f64 = text
        .parse()
        .map_err(|_| format!("cannot read {whole:?} as a number (expected a, bi or a+bi)"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{whole:?} is not finite"))
    }
}

fn imag(text: &str, whole: &str) -> Result<f64, String> {
    match text {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        t => real(t, whole),
    }
}

/// Finds the sign that separates the real and imaginary parts, skipping a
/// leading sign and exponent signs.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
}

pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    match t.strip_suffix('i') {
        None => Ok(Complex64::new(real(t, text)?, 0.0)),
        Some(body) => match split_point(body) {
            Some(p) => Ok(Complex64::new(real(&body[..p], text)?, imag(&body[p..], text)?)),
            None => Ok(Complex64::new(0.0, imag(body, text)?)),
        },
    }
}

/// Shortest round-trip rendering in the same syntax.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
