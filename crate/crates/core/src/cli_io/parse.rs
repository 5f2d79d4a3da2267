//! Text forms accepted on the command line.

use num_complex::Complex64;

use crate::error::{HurzetaError, Result};

fn usage(msg: String) -> HurzetaError {
    HurzetaError::Usage(msg)
}

fn float(s: &str, whole: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| usage(format!("cannot parse {s:?} in {whole:?} as a number")))?;
    if !v.is_finite() {
        return Err(usage(format!("non-finite value in {whole:?}")));
    }
    Ok(v)
}

/// Parses `re`, `re,im`, `re+imi`, `re-imi`, `imi` and `i`.
pub fn parse_complex(raw: &str) -> Result<Complex64> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(usage("empty complex value".into()));
    }
    if let Some((re, im)) = s.split_once(',') {
        return Ok(Complex64::new(float(re, raw)?, float(im, raw)?));
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(Complex64::new(float(&s, raw)?, 0.0));
    };
    // split at the last sign that is not an exponent sign or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| (bytes[p] == b'+' || bytes[p] == b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => float(t, raw),
        }
    };
    match split {
        Some(p) => Ok(Complex64::new(float(&body[..p], raw)?, imag(&body[p..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// `start:stop:count` (inclusive, evenly spaced) or a single real value.
pub fn parse_real_grid(raw: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = raw.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![float(single, raw)?]),
        [start, stop, count] => {
            let (a, b) = (float(start, raw)?, float(stop, raw)?);
            let n: usize = count
                .trim()
                .parse()
                .map_err(|_| usage(format!("grid count in {raw:?} must be a positive integer")))?;
            match n {
                0 => Err(usage(format!("grid {raw:?} has zero points"))),
                1 => Ok(vec![a]),
                _ => Ok((0..n)
                    .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                    .collect()),
            }
        }
        _ => Err(usage(format!(
            "expected a value or start:stop:count, got {raw:?}"
        ))),
    }
}

/// A complex value or a real `start:stop:count` grid.
pub fn parse_complex_points(raw: &str) -> Result<Vec<Complex64>> {
    if raw.contains(':') {
        Ok(parse_real_grid(raw)?
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect())
    } else {
        Ok(vec![parse_complex(raw)?])
    }
}

/// `;`-separated list where each entry is a complex value or a real grid.
pub fn parse_complex_list(raw: &str) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    for item in raw.split(';').filter(|s| !s.trim().is_empty()) {
        out.extend(parse_complex_points(item)?);
    }
    if out.is_empty() {
        return Err(usage(format!("empty list {raw:?}")));
    }
    Ok(out)
}

/// `n`, `a:b` (inclusive) or `a,b,c`.
pub fn parse_int_range(raw: &str) -> Result<Vec<u32>> {
    let int = |s: &str| -> Result<u32> {
        s.trim()
            .parse()
            .map_err(|_| usage(format!("cannot parse {s:?} in {raw:?} as a non-negative integer")))
    };
    let out: Vec<u32> = if let Some((a, b)) = raw.split_once(':') {
        let (a, b) = (int(a)?, int(b)?);
        if a > b {
            return Err(usage(format!("empty range {raw:?}")));
        }
        (a..=b).collect()
    } else {
        raw.split(',').map(int).collect::<Result<_>>()?
    };
    if out.is_empty() {
        return Err(usage(format!("empty range {raw:?}")));
    }
    Ok(out)
}
