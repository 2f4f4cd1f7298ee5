//! Matrix and polynomial file formats.
//!
//! Matrix files: a header line `n <dim>` followed by n rows of n
//! whitespace-separated complex literals. Polynomial files: a header
//! `n <dim> m <degree>` followed by m matrix bodies, coefficients in
//! ascending order. Complex literals are `a`, `a+bi`, `a-bi`, `bi` or `i`
//! (optional real part, optional signed imaginary part with a mandatory
//! trailing `i`), chosen so fixture files stay hand-editable.

use num_complex::Complex64;
use thiserror::Error;

use numrange::linalg::ComplexMatrix;
use numrange::poly::MatrixPolynomial;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("empty input")]
    Empty,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses one complex literal.
pub fn parse_complex(token: &str) -> Result<Complex64, String> {
    let s = token.trim();
    if s.is_empty() {
        return Err("empty literal".into());
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Split an optional real part from the imaginary coefficient: find
        // the last sign that is neither leading nor part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let b = bytes[idx];
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        let (real_part, imag_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if real_part.is_empty() {
            0.0
        } else {
            real_part
                .parse::<f64>()
                .map_err(|_| format!("bad real part in '{s}'"))?
        };
        let im = match imag_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other
                .parse::<f64>()
                .map_err(|_| format!("bad imaginary part in '{s}'"))?,
        };
        Ok(Complex64::new(re, im))
    } else {
        let re = s
            .parse::<f64>()
            .map_err(|_| format!("bad real literal '{s}'"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Shortest round-trip rendering of one complex entry.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn parse_header_fields(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn parse_matrix_body<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    n: usize,
) -> Result<ComplexMatrix, ParseError> {
    let mut data = Vec::with_capacity(n * n);
    let mut rows_read = 0;
    while rows_read < n {
        let Some((lineno, raw)) = lines.next() else {
            return Err(syntax(0, format!("expected {n} rows, found {rows_read}")));
        };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != n {
            return Err(syntax(
                lineno,
                format!("row has {} entries, expected {n}", tokens.len()),
            ));
        }
        for t in tokens {
            data.push(parse_complex(t).map_err(|m| syntax(lineno, m))?);
        }
        rows_read += 1;
    }
    ComplexMatrix::new(n, n, data).map_err(|e| syntax(0, format!("invalid matrix: {e}")))
}

/// Parses a matrix file.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#'));
    let (lineno, header) = lines.next().ok_or(ParseError::Empty)?;
    let fields = parse_header_fields(header);
    if fields.len() != 2 || fields[0] != "n" {
        return Err(syntax(lineno, "expected header 'n <dim>'"));
    }
    let n: usize = fields[1]
        .parse()
        .map_err(|_| syntax(lineno, "bad dimension"))?;
    if n == 0 {
        return Err(syntax(lineno, "dimension must be positive"));
    }
    let matrix = parse_matrix_body(&mut lines, n)?;
    if let Some((lineno, _)) = lines.next() {
        return Err(syntax(lineno, "trailing content after matrix rows"));
    }
    Ok(matrix)
}

/// Serializes a matrix in the file format; `parse_matrix` round-trips it.
pub fn serialize_matrix(a: &ComplexMatrix) -> String {
    let n = a.dim();
    let mut out = format!("n {n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format_complex(a.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a polynomial file.
pub fn parse_poly(text: &str) -> Result<MatrixPolynomial, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#'));
    let (lineno, header) = lines.next().ok_or(ParseError::Empty)?;
    let fields = parse_header_fields(header);
    if fields.len() != 4 || fields[0] != "n" || fields[2] != "m" {
        return Err(syntax(lineno, "expected header 'n <dim> m <degree>'"));
    }
    let n: usize = fields[1]
        .parse()
        .map_err(|_| syntax(lineno, "bad dimension"))?;
    let degree: usize = fields[3]
        .parse()
        .map_err(|_| syntax(lineno, "bad degree"))?;
    if n == 0 || degree == 0 {
        return Err(syntax(lineno, "dimension and degree must be positive"));
    }
    let mut coefficients = Vec::with_capacity(degree);
    for _ in 0..degree {
        coefficients.push(parse_matrix_body(&mut lines, n)?);
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(syntax(lineno, "trailing content after coefficient blocks"));
    }
    MatrixPolynomial::new(coefficients).map_err(|e| syntax(0, format!("invalid polynomial: {e}")))
}

/// Serializes a polynomial in the file format.
pub fn serialize_poly(l: &MatrixPolynomial) -> String {
    let (n, m) = (l.dimension(), l.degree());
    let mut out = format!("n {n} m {m}\n");
    for j in 0..m {
        let a = l.coefficient(j);
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|c| format_complex(a.get(i, c))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literal_forms() {
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), Complex64::new(-2.5, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(parse_complex("3i").unwrap(), Complex64::new(0.0, 3.0));
        assert_eq!(parse_complex("-3i").unwrap(), Complex64::new(0.0, -3.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(
            parse_complex("1e-3+2.5e-2i").unwrap(),
            Complex64::new(1e-3, 2.5e-2)
        );
        assert!(parse_complex("").is_err());
        assert!(parse_complex("2+").is_err());
        assert!(parse_complex("j5").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let text = "n 2\n0 1+2i\n-3i 4.25\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.get(0, 1), Complex64::new(1.0, 2.0));
        assert_eq!(serialize_matrix(&m), text);
    }

    #[test]
    fn fixture_round_trips_exactly() {
        for name in numrange::fixtures::FIXTURE_NAMES {
            let a = numrange::fixtures::by_name(name).unwrap();
            let text = serialize_matrix(&a);
            let parsed = parse_matrix(&text).unwrap();
            assert!(parsed.approx_eq(&a, 0.0), "fixture {name}");
        }
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(parse_matrix("n 2\n1 2 3\n4 5\n").is_err());
        assert!(parse_matrix("n 2\n1 2\n").is_err());
        assert!(parse_matrix("n 2\n1 2\n3 4\n5 6\n").is_err());
    }

    #[test]
    fn poly_round_trip() {
        let text = "n 2 m 2\n0 3\n1 0\n0 0\n0 0\n";
        let l = parse_poly(text).unwrap();
        assert_eq!(l.dimension(), 2);
        assert_eq!(l.degree(), 2);
        assert_eq!(l.coefficient(0).get(0, 1), Complex64::new(3.0, 0.0));
        assert_eq!(serialize_poly(&l), text);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# demo\nn 2\n\n1 0\n# middle\n0 1\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.get(1, 1), Complex64::new(1.0, 0.0));
    }
}
