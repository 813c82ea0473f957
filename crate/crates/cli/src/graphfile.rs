//! The `BSG 1` text format: a header `BSG 1 <n_left> <n_right>` followed by
//! one `0`/`1` row per left vertex, every line ending in a single `\n`.

use std::fmt;

use satkit::BipartiteGraph;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl fmt::Display) -> ParseError {
    ParseError { line, column, message: message.to_string() }
}

pub fn emit(g: &BipartiteGraph) -> String {
    let mut out = format!("BSG 1 {} {}\n", g.n_left(), g.n_right());
    for u in 0..g.n_left() {
        out.extend((0..g.n_right()).map(|v| if g.has_edge(u, v) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

fn parse_size(field: &str, line: usize, column: usize, what: &str) -> Result<usize, ParseError> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(line, column, format!("expected {what} as a decimal integer, found {field:?}")));
    }
    field
        .parse()
        .map_err(|_| err(line, column, format!("{what} {field} is too large")))
}

/// Strict parser; every rejection names the 1-based line and column.
pub fn parse(text: &str) -> Result<BipartiteGraph, ParseError> {
    if text.is_empty() {
        return Err(err(1, 1, "empty input, expected header \"BSG 1 <n_left> <n_right>\""));
    }
    let mut lines: Vec<&str> = text.split('\n').collect();
    // A well-formed file ends with '\n', leaving one empty tail piece.
    let tail = lines.pop().unwrap_or_default();
    if !tail.is_empty() {
        let line = lines.len() + 1;
        return Err(err(line, tail.len() + 1, "missing newline at end of line"));
    }

    let header = lines[0];
    if let Some(pos) = header.find('\r') {
        return Err(err(1, pos + 1, "carriage return not allowed"));
    }
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 4 {
        return Err(err(1, 1, format!("header must be \"BSG 1 <n_left> <n_right>\", found {header:?}")));
    }
    if fields[0] != "BSG" {
        return Err(err(1, 1, format!("expected magic \"BSG\", found {:?}", fields[0])));
    }
    if fields[1] != "1" {
        return Err(err(1, 5, format!("unsupported format version {:?}", fields[1])));
    }
    let col_nl = 7;
    let n_left = parse_size(fields[2], 1, col_nl, "n_left")?;
    let n_right = parse_size(fields[3], 1, col_nl + fields[2].len() + 1, "n_right")?;

    let rows = &lines[1..];
    if rows.len() < n_left {
        return Err(err(rows.len() + 2, 1, format!("expected {n_left} rows, found {}", rows.len())));
    }
    if rows.len() > n_left {
        let line = n_left + 2;
        let what = if rows[n_left].is_empty() { "trailing blank line" } else { "extra row" };
        return Err(err(line, 1, format!("{what} after {n_left} rows")));
    }
    let mut edges = Vec::new();
    for (u, row) in rows.iter().enumerate() {
        let line = u + 2;
        for (v, b) in row.bytes().enumerate() {
            match b {
                b'1' if v < n_right => edges.push((u, v)),
                b'0' if v < n_right => {}
                b'0' | b'1' => {
                    return Err(err(line, v + 1, format!("row longer than n_right = {n_right}")));
                }
                _ => {
                    return Err(err(line, v + 1, format!("unexpected character {:?}, expected '0' or '1'", b as char)));
                }
            }
        }
        if row.len() < n_right {
            return Err(err(line, row.len() + 1, format!("row has {} entries, expected {n_right}", row.len())));
        }
    }
    Ok(BipartiteGraph::build(n_left, n_right, &edges).expect("indices checked against header"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_small() {
        let g = BipartiteGraph::build(2, 3, &[(0, 0), (1, 2)]).unwrap();
        let text = emit(&g);
        assert_eq!(text, "BSG 1 2 3\n100\n001\n");
        assert_eq!(parse(&text).unwrap(), g);
        assert_eq!(parse("BSG 1 0 0\n").unwrap(), BipartiteGraph::empty(0, 0));
    }

    #[test]
    fn diagnostics_point_at_the_problem() {
        let e = parse("BSG 1 2 2\n10\n1x\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 2));
        let e = parse("BSG 1 2 2\n10\n1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 2));
        let e = parse("BSG 1 2 2\n10\n100\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        let e = parse("BSG 1 2 2\n10\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse("BSG 1 1 2\n10\n\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("blank"));
        let e = parse("BSG 1 1 2\n10").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse("BSG 2 1 2\n10\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse("BSG 1 x 2\n10\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
        let e = parse("BSG 1 1 2\r\n10\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse("").is_err());
    }
}
