//! Sample files: a header line `a=<real> m=<int>` followed by `m + 1`
//! lines holding one sample each. Lines starting with `#` and blank lines
//! are skipped.

use std::fmt::Write as _;

use gbquad::{format_float, EquispacedGrid, GridFunction};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("missing header line `a=<real> m=<int>`")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Header { line: usize, msg: String },
    #[error("line {line}: `{text}` is not a finite number")]
    BadValue { line: usize, text: String },
    #[error("expected {expected} samples, found {found}")]
    Count { expected: usize, found: usize },
    #[error("{0}")]
    Grid(#[from] gbquad::Error),
}

fn parse_header(line_no: usize, line: &str) -> Result<(f64, usize), ParseError> {
    let err = |msg: &str| ParseError::Header {
        line: line_no,
        msg: msg.to_string(),
    };
    let mut a = None;
    let mut m = None;
    for token in line.split_whitespace() {
        match token.split_once('=') {
            Some(("a", v)) => a = Some(v.parse::<f64>().map_err(|_| err("bad value for a"))?),
            Some(("m", v)) => m = Some(v.parse::<usize>().map_err(|_| err("bad value for m"))?),
            _ => return Err(err(&format!("unexpected token `{token}`"))),
        }
    }
    match (a, m) {
        (Some(a), Some(m)) => Ok((a, m)),
        _ => Err(err("header needs both a= and m=")),
    }
}

pub fn parse(text: &str) -> Result<GridFunction, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (a, m) = parse_header(line_no, header)?;
    let grid = EquispacedGrid::new(m, a)?;
    let mut values = Vec::with_capacity(m + 1);
    for (line, text) in lines {
        let v: f64 = text.parse().map_err(|_| ParseError::BadValue {
            line,
            text: text.to_string(),
        })?;
        if !v.is_finite() {
            return Err(ParseError::BadValue {
                line,
                text: text.to_string(),
            });
        }
        values.push(v);
    }
    if values.len() != m + 1 {
        return Err(ParseError::Count {
            expected: m + 1,
            found: values.len(),
        });
    }
    Ok(GridFunction::new(grid, values)?)
}

pub fn render(fs: &GridFunction) -> String {
    let g = fs.grid();
    let mut out = format!("a={} m={}\n", format_float(g.half_width()), g.degree());
    for v in fs.values() {
        writeln!(out, "{}", format_float(*v)).unwrap();
    }
    out
}
