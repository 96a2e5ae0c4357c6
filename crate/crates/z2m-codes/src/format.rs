//! The on-disk code file format.
//!
//! UTF-8 text: header lines `m <int>`, `n <int>`, `rows <int>`, then one
//! generator row per line of space-separated components. `#` starts a
//! comment; blank lines are ignored. Files round-trip through
//! [`crate::lincode::canonicalize`].

use crate::lincode::{canonicalize, LinearCode};
use crate::zring::{RingParams, RingVector};
use crate::{Error, Result};

pub fn parse_code_str(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut header = |key: &str| -> Result<(usize, u64)> {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("missing `{key}` header"),
        })?;
        let mut parts = line.split_whitespace();
        let (word, value) = (parts.next(), parts.next());
        if word != Some(key) || parts.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `{key} <int>`, found {line:?}"),
            });
        }
        let value = value
            .and_then(|v| v.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `{key} <int>`, found {line:?}"),
            })?;
        Ok((line_no, value))
    };

    let (m_line, m) = header("m")?;
    let (n_line, n) = header("n")?;
    let (_, rows) = header("rows")?;

    let params = RingParams::new(m as u32).map_err(|e| Error::Parse {
        line: m_line,
        message: e.to_string(),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: n_line,
            message: "code length must be >= 1".into(),
        });
    }

    let mut generators = Vec::with_capacity(rows as usize);
    for _ in 0..rows {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("expected {rows} generator rows, file ended early"),
        })?;
        let comps = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad component {tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<i64>>>()?;
        if comps.len() != n as usize {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {n} components, found {}", comps.len()),
            });
        }
        generators.push(RingVector::new(params, comps)?);
    }
    if let Some((line_no, line)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            message: format!("unexpected trailing content {line:?}"),
        });
    }
    canonicalize(params, n as usize, &generators)
}

pub fn parse_code_file(path: impl AsRef<std::path::Path>) -> Result<LinearCode> {
    parse_code_str(&std::fs::read_to_string(path)?)
}

/// Serializes the canonical generator matrix.
pub fn write_code_str(code: &LinearCode) -> String {
    let mut out = String::new();
    out.push_str(&format!("m {}\n", code.params().m()));
    out.push_str(&format!("n {}\n", code.length()));
    out.push_str(&format!("rows {}\n", code.generators().len()));
    for row in code.generators() {
        let comps: Vec<String> = row.components().iter().map(|c| c.to_string()).collect();
        out.push_str(&comps.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_code_file(code: &LinearCode, path: impl AsRef<std::path::Path>) -> Result<()> {
    std::fs::write(path, write_code_str(code))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let text = "# a seed\nm 2\nn 4\nrows 3\n1 1 1 1\n0 2 0 2\n0 0 2 2\n";
        let code = parse_code_str(text).unwrap();
        assert_eq!(code.params().m(), 2);
        assert_eq!(code.length(), 4);
        assert_eq!(code.size(), 16);

        let written = write_code_str(&code);
        let reparsed = parse_code_str(&written).unwrap();
        assert_eq!(code, reparsed);
        assert_eq!(written, write_code_str(&reparsed));
    }

    #[test]
    fn parse_errors_name_lines() {
        let err = parse_code_str("x 2\nn 2\nrows 0\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error {other:?}"),
        }

        let err = parse_code_str("m 2\nn 2\nrows 1\n1 2 3\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn zero_row_file_is_zero_code() {
        let code = parse_code_str("m 1\nn 3\nrows 0\n").unwrap();
        assert_eq!(code.size(), 1);
        assert_eq!(code.generators().len(), 0);
    }
}
