//! Coefficient files and float formatting for CSV output.
//!
//! A coefficient file holds one value per line as a decimal literal, an
//! exact `p/q` rational or a hex-float. Everything after `#` is a comment and
//! blank lines are skipped.

use crate::bigreal::{format_hex_float, parse_rational, BigReal};
use crate::error::{Error, Result};

pub fn parse_coefficients(text: &str) -> Result<Vec<BigReal>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v = parse_rational(line).map_err(|message| Error::Parse { line: i + 1, message })?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(Error::Parse { line: 0, message: "no coefficients".into() });
    }
    Ok(out)
}

/// Writes exact values back in the `p/q` syntax accepted above.
pub fn format_coefficients(values: &[BigReal]) -> String {
    let mut s = String::new();
    for v in values {
        if v.is_integer() {
            s.push_str(&v.numer().to_string());
        } else {
            s.push_str(&format!("{}/{}", v.numer(), v.denom()));
        }
        s.push('\n');
    }
    s
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FloatFormat {
    /// Shortest decimal that reads back to the same double.
    #[default]
    Shortest,
    Hex,
}

impl std::str::FromStr for FloatFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shortest" | "decimal" => Ok(FloatFormat::Shortest),
            "hex" => Ok(FloatFormat::Hex),
            _ => Err(Error::InvalidSeries(format!("unknown float format '{s}'"))),
        }
    }
}

impl FloatFormat {
    pub fn format(self, x: f64) -> String {
        match self {
            FloatFormat::Shortest if x.is_nan() => "nan".into(),
            FloatFormat::Shortest if x.is_infinite() => {
                if x > 0.0 { "inf".into() } else { "-inf".into() }
            }
            FloatFormat::Shortest => format!("{x:?}"),
            FloatFormat::Hex => format_hex_float(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::{parse_hex_float, rational_from_f64};

    #[test]
    fn parses_all_syntaxes() {
        let text = "# header\n1\n\n-1/3  # exact\n2.5e-1\n0x1.8p+1\n";
        let v = parse_coefficients(text).unwrap();
        assert_eq!(
            v,
            vec![
                BigReal::from_integer(1.into()),
                BigReal::new((-1).into(), 3.into()),
                BigReal::new(1.into(), 4.into()),
                BigReal::from_integer(3.into()),
            ]
        );
        assert_eq!(parse_coefficients(&format_coefficients(&v)).unwrap(), v);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_coefficients("1\n2\nthree\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_coefficients("# nothing\n").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for x in [0.1, -1.0 / 3.0, 5e-324, 1e300, -0.0] {
            let s = FloatFormat::Shortest.format(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
            let h = FloatFormat::Hex.format(x);
            assert_eq!(parse_hex_float(&h).unwrap().to_bits(), x.to_bits());
            assert_eq!(parse_rational(&h).unwrap(), rational_from_f64(x));
        }
    }
}
