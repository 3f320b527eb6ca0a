//! Received-word files.
//!
//! ```text
//! m n k
//! r_0 r_1 ... r_{n-1}
//! eta_0 eta_1 ... eta_{n-1}     (optional)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct ReceivedFile {
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub symbols: Vec<u32>,
    pub reliabilities: Option<Vec<f64>>,
}

#[derive(Debug, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn fields<T: std::str::FromStr>(line: usize, text: &str, what: &str) -> Result<Vec<T>, ParseError> {
    text.split_whitespace()
        .enumerate()
        .map(|(i, tok)| tok.parse().map_err(|_| err(line, format!("{what} #{}: cannot parse {tok:?}", i + 1))))
        .collect()
}

pub fn parse(text: &str) -> Result<ReceivedFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, header) = lines.next().ok_or_else(|| err(1, "empty input, expected \"m n k\""))?;
    let h: Vec<usize> = fields(ln, header, "header field")?;
    let [m, n, k] = h[..] else {
        return Err(err(ln, format!("expected 3 header fields \"m n k\", got {}", h.len())));
    };
    if !(2..=16).contains(&m) {
        return Err(err(ln, format!("field degree m = {m} outside 2..=16")));
    }
    if k == 0 || k > n || n >= 1 << m {
        return Err(err(ln, format!("need 0 < k <= n < 2^m, got n = {n}, k = {k}")));
    }

    let (ln, body) = lines.next().ok_or_else(|| err(ln + 1, format!("missing received word of {n} symbols")))?;
    let symbols: Vec<u32> = fields(ln, body, "symbol")?;
    if symbols.len() != n {
        return Err(err(ln, format!("expected {n} symbols, got {}", symbols.len())));
    }
    if let Some(pos) = symbols.iter().position(|&s| s >= 1 << m) {
        return Err(err(ln, format!("symbol #{} = {} not below 2^{m}", pos + 1, symbols[pos])));
    }

    let reliabilities = match lines.next() {
        None => None,
        Some((ln, body)) => {
            let eta: Vec<f64> = fields(ln, body, "reliability")?;
            if eta.len() != n {
                return Err(err(ln, format!("expected {n} reliabilities, got {}", eta.len())));
            }
            if let Some(pos) = eta.iter().position(|v| v.is_nan()) {
                return Err(err(ln, format!("reliability #{} is NaN", pos + 1)));
            }
            Some(eta)
        }
    };
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "unexpected extra line"));
    }
    Ok(ReceivedFile { m: m as u32, n, k, symbols, reliabilities })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_hard_and_soft() {
        let f = parse("2 3 1\n1 2 3\n").unwrap();
        assert_eq!((f.m, f.n, f.k), (2, 3, 1));
        assert_eq!(f.symbols, vec![1, 2, 3]);
        assert!(f.reliabilities.is_none());

        let f = parse("# comment\n2 3 1\n\n1 2 3\n0.5 1 2e3\n").unwrap();
        assert_eq!(f.reliabilities, Some(vec![0.5, 1.0, 2000.0]));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse("").unwrap_err().line, 1);
        assert_eq!(parse("2 3\n").unwrap_err().line, 1);
        assert_eq!(parse("2 4 1\n").unwrap_err().line, 1);
        assert_eq!(parse("2 3 1\n").unwrap_err().line, 2);
        assert_eq!(parse("2 3 1\n\n1 2 x\n").unwrap_err().line, 3);
        assert_eq!(parse("2 3 1\n1 2 4\n").unwrap_err().line, 2);
        assert_eq!(parse("2 3 1\n1 2 3\n1 2\n").unwrap_err().line, 3);
        assert_eq!(parse("2 3 1\n1 2 3\n1 2 3\n9\n").unwrap_err().line, 4);
        let e = parse("2 3 1\n1 two 3\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: symbol #2: cannot parse \"two\"");
    }
}
