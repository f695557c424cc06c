use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReadOptions {
    /// Round real-valued weights to the nearest integer instead of rejecting
    /// them.
    pub quantize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Pattern,
    Integer,
    Real,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<(Field, bool)> {
    let tokens: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" {
        return Err(parse_err(
            line_no,
            "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'",
        ));
    }
    if tokens[1] != "matrix" {
        return Err(parse_err(line_no, format!("unsupported object '{}'", tokens[1])));
    }
    if tokens[2] != "coordinate" {
        return Err(parse_err(
            line_no,
            format!("unsupported format '{}', only coordinate is read", tokens[2]),
        ));
    }
    let field = match tokens[3].as_str() {
        "pattern" => Field::Pattern,
        "integer" => Field::Integer,
        "real" | "double" => Field::Real,
        other => return Err(parse_err(line_no, format!("unsupported field '{other}'"))),
    };
    let symmetric = match tokens[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(parse_err(line_no, format!("unsupported symmetry '{other}'"))),
    };
    Ok((field, symmetric))
}

fn parse_index(token: &str, line: usize, n: usize) -> Result<usize> {
    let idx: usize = token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid index '{token}'")))?;
    if idx == 0 || idx > n {
        return Err(parse_err(line, format!("index {idx} outside 1..={n}")));
    }
    Ok(idx - 1)
}

fn parse_weight(token: Option<&str>, field: Field, line: usize, opts: ReadOptions) -> Result<u64> {
    let token = token.ok_or_else(|| parse_err(line, "missing value"))?;
    match field {
        Field::Pattern => unreachable!(),
        Field::Integer => {
            let v: i64 = token
                .parse()
                .map_err(|_| parse_err(line, format!("invalid integer '{token}'")))?;
            u64::try_from(v).map_err(|_| parse_err(line, format!("negative weight {v}")))
        }
        Field::Real => {
            let v: f64 = token
                .parse()
                .map_err(|_| parse_err(line, format!("invalid real '{token}'")))?;
            if !opts.quantize {
                return Err(parse_err(line, "real-valued weights need quantization to be enabled"));
            }
            if !v.is_finite() || v < -0.5 {
                return Err(parse_err(
                    line,
                    format!("weight {v} cannot be quantized to a nonnegative integer"),
                ));
            }
            Ok(v.round() as u64)
        }
    }
}

/// Parses a coordinate Matrix Market stream. Symmetric storage is expanded,
/// explicit zeros are dropped and duplicates are summed.
pub fn parse_matrix_market<R: BufRead>(reader: R, opts: ReadOptions) -> Result<SparseMatrix> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (first_no, first) = match lines.next() {
        Some((no, line)) => (no, line.map_err(|e| parse_err(no, e.to_string()))?),
        None => return Err(parse_err(1, "empty input")),
    };
    let (field, symmetric) = parse_header(first_no, &first)?;

    let mut size: Option<(usize, usize)> = None;
    let mut entries = Vec::new();
    let mut seen = 0usize;
    let mut last_line = first_no;
    for (no, line) in lines {
        let line = line.map_err(|e| parse_err(no, e.to_string()))?;
        last_line = no;
        let text = line.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        let mut tokens = text.split_whitespace();
        let Some((n, nnz)) = size else {
            let dims: Vec<&str> = tokens.collect();
            if dims.len() != 3 {
                return Err(parse_err(no, "expected size line 'rows cols entries'"));
            }
            let parse = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(no, format!("invalid size '{t}'")))
            };
            let (rows, cols, nnz) = (parse(dims[0])?, parse(dims[1])?, parse(dims[2])?);
            if rows != cols {
                return Err(parse_err(
                    no,
                    format!("matrix is {rows} x {cols}, only square matrices are supported"),
                ));
            }
            if rows == 0 {
                return Err(parse_err(no, "matrix dimension is 0"));
            }
            size = Some((rows, nnz));
            entries.reserve(if symmetric { 2 * nnz } else { nnz });
            continue;
        };
        if seen == nnz {
            return Err(parse_err(no, format!("more than the declared {nnz} entries")));
        }
        let (Some(r), Some(c)) = (tokens.next(), tokens.next()) else {
            return Err(parse_err(no, "expected 'row col [value]'"));
        };
        let (r, c) = (parse_index(r, no, n)?, parse_index(c, no, n)?);
        let w = if field == Field::Pattern {
            1
        } else {
            parse_weight(tokens.next(), field, no, opts)?
        };
        if tokens.next().is_some() {
            return Err(parse_err(no, "trailing tokens after entry"));
        }
        seen += 1;
        if w == 0 {
            continue;
        }
        entries.push((r, c, w));
        if symmetric && r != c {
            entries.push((c, r, w));
        }
    }
    let Some((n, nnz)) = size else {
        return Err(parse_err(last_line, "missing size line"));
    };
    if seen != nnz {
        return Err(parse_err(last_line, format!("declared {nnz} entries but found {seen}")));
    }
    SparseMatrix::from_entries(n, entries)
}

pub fn read_matrix_market(path: impl AsRef<Path>, opts: ReadOptions) -> Result<SparseMatrix> {
    let file = File::open(path)?;
    parse_matrix_market(BufReader::new(file), opts)
}

/// Writes `a` as a general coordinate file, `pattern` when every weight is 1
/// and `integer` otherwise.
pub fn write_matrix_market<W: Write>(a: &SparseMatrix, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    let unit = a.is_unit_weight();
    let field = if unit { "pattern" } else { "integer" };
    writeln!(w, "%%MatrixMarket matrix coordinate {field} general")?;
    writeln!(w, "{} {} {}", a.n(), a.n(), a.nnz())?;
    for (i, j, v) in a.entries() {
        if unit {
            writeln!(w, "{} {}", i + 1, j + 1)?;
        } else {
            writeln!(w, "{} {} {v}", i + 1, j + 1)?;
        }
    }
    w.flush()?;
    Ok(())
}
