//! CSV ingestion: strict comma-separated files with a mandatory header row,
//! double-quote escaping, no dialect sniffing. Selected cells must parse as
//! finite numbers; anything else is rejected with its location rather than
//! imputed.

use std::path::Path;

use betatrace_core::{Matrix, Vector};

use crate::error::CliError;

/// Which columns to use: `x_column` is a header name or zero-based index;
/// `y_columns` is an explicit list, or `None` for "all remaining numeric
/// columns".
#[derive(Debug, Clone)]
pub struct ColumnSpec {
    pub x_column: String,
    pub y_columns: Option<Vec<String>>,
}

/// A loaded dataset: the predictor, the response block, and their names.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub x: Vector,
    pub y: Matrix,
    pub x_name: String,
    pub y_names: Vec<String>,
}

impl Dataset {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn k(&self) -> usize {
        self.y.cols()
    }
}

/// Resolves a column token against the header: an exact name match wins,
/// otherwise the token is read as a zero-based index.
fn resolve_column(headers: &[String], token: &str) -> Result<usize, CliError> {
    if let Some(idx) = headers.iter().position(|h| h == token) {
        return Ok(idx);
    }
    if let Ok(idx) = token.parse::<usize>() {
        if idx < headers.len() {
            return Ok(idx);
        }
    }
    Err(CliError::MissingColumn(token.to_string()))
}

fn parse_cell(raw: &str) -> Option<f64> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return None;
    }
    match trimmed.parse::<f64>() {
        Ok(v) if v.is_finite() => Some(v),
        _ => None,
    }
}

/// Loads `path` and materializes the selection described by `spec`.
pub fn load_csv(path: &Path, spec: &ColumnSpec) -> Result<Dataset, CliError> {
    // literal x/y overlap is detectable before touching the file
    if let Some(y) = &spec.y_columns {
        if y.iter().any(|c| c == &spec.x_column) {
            return Err(CliError::ColumnOverlap(spec.x_column.clone()));
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .delimiter(b',')
        .quote(b'"')
        .flexible(false)
        .trim(csv::Trim::None)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => CliError::Io {
                path: path.to_path_buf(),
                source: std::io::Error::other(e.to_string()),
            },
            _ => CliError::Malformed {
                line: 1,
                detail: e.to_string(),
            },
        })?;

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Malformed {
            line: 1,
            detail: e.to_string(),
        })?
        .iter()
        .map(|h| h.to_string())
        .collect();

    let x_idx = resolve_column(&headers, &spec.x_column)?;

    // resolved selection, checked before any data row is read
    enum Selection {
        Explicit(Vec<usize>),
        AllRemaining(Vec<usize>),
    }
    let selection = match &spec.y_columns {
        Some(tokens) => {
            let mut indices = Vec::with_capacity(tokens.len());
            for token in tokens {
                let idx = resolve_column(&headers, token)?;
                if idx == x_idx {
                    return Err(CliError::ColumnOverlap(token.clone()));
                }
                if indices.contains(&idx) {
                    return Err(CliError::DuplicateColumn(token.clone()));
                }
                indices.push(idx);
            }
            if indices.is_empty() {
                return Err(CliError::EmptySelection);
            }
            Selection::Explicit(indices)
        }
        None => Selection::AllRemaining((0..headers.len()).filter(|&i| i != x_idx).collect()),
    };

    let mut x_values: Vec<f64> = Vec::new();
    // per-candidate column values; in sentinel mode a parse failure marks
    // the column non-numeric instead of failing the load
    let candidate_indices: &[usize] = match &selection {
        Selection::Explicit(idx) | Selection::AllRemaining(idx) => idx,
    };
    let strict = matches!(selection, Selection::Explicit(_));
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); candidate_indices.len()];
    let mut numeric: Vec<bool> = vec![true; candidate_indices.len()];

    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .map(|p| p.line())
                .unwrap_or(0);
            CliError::Malformed {
                line,
                detail: e.to_string(),
            }
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);

        let x_raw = record.get(x_idx).unwrap_or("");
        let x_val = parse_cell(x_raw).ok_or_else(|| CliError::Parse {
            line,
            column: headers[x_idx].clone(),
        })?;
        x_values.push(x_val);

        for (slot, &col_idx) in candidate_indices.iter().enumerate() {
            let raw = record.get(col_idx).unwrap_or("");
            match parse_cell(raw) {
                Some(v) => columns[slot].push(v),
                None if strict => {
                    return Err(CliError::Parse {
                        line,
                        column: headers[col_idx].clone(),
                    })
                }
                None => numeric[slot] = false,
            }
        }
    }

    let kept: Vec<usize> = (0..candidate_indices.len())
        .filter(|&slot| numeric[slot])
        .collect();
    if kept.is_empty() {
        return Err(CliError::EmptySelection);
    }

    let n = x_values.len();
    let k = kept.len();
    if n < k + 2 {
        return Err(CliError::TooFewRows { n, k });
    }

    let y_names: Vec<String> = kept
        .iter()
        .map(|&slot| headers[candidate_indices[slot]].clone())
        .collect();
    let mut y_data = Vec::with_capacity(n * k);
    #[allow(clippy::needless_range_loop)] // row-major gather across column buffers
    for row in 0..n {
        for &slot in &kept {
            y_data.push(columns[slot][row]);
        }
    }

    let x = Vector::new(x_values).map_err(|e| CliError::Numerical(e.to_string()))?;
    let y = Matrix::new(n, k, y_data).map_err(|e| CliError::Numerical(e.to_string()))?;

    Ok(Dataset {
        name: path.display().to_string(),
        x,
        y,
        x_name: headers[x_idx].clone(),
        y_names,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    fn spec(x: &str, y: Option<&[&str]>) -> ColumnSpec {
        ColumnSpec {
            x_column: x.to_string(),
            y_columns: y.map(|list| list.iter().map(|s| s.to_string()).collect()),
        }
    }

    #[test]
    fn happy_path_with_sentinel_selection() {
        let f = write_temp("dose,a,b\n1,2,3\n2,3,4\n3,5,1\n4,2,2\n");
        let d = load_csv(f.path(), &spec("dose", None)).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.k(), 2);
        assert_eq!(d.x_name, "dose");
        assert_eq!(d.y_names, vec!["a", "b"]);
        assert_eq!(d.x.as_slice(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(d.y.get(2, 1), 1.0);
    }

    #[test]
    fn x_by_index_and_explicit_y() {
        let f = write_temp("u,v,w\n1,2,3\n2,1,4\n0,5,1\n4,0,2\n");
        let d = load_csv(f.path(), &spec("1", Some(&["w", "u"]))).unwrap();
        assert_eq!(d.x_name, "v");
        assert_eq!(d.y_names, vec!["w", "u"]);
    }

    #[test]
    fn overlap_detected_before_reading_data() {
        // the file does not even exist; the literal overlap fires first
        let missing = std::path::Path::new("/nonexistent/overlap.csv");
        let err = load_csv(missing, &spec("dose", Some(&["a", "dose"]))).unwrap_err();
        assert!(matches!(err, CliError::ColumnOverlap(_)));
    }

    #[test]
    fn resolved_overlap_detected_after_header() {
        // "0" resolves to the same column as "dose"
        let f = write_temp("dose,a\n1,2\n2,3\n3,4\n4,5\n");
        let err = load_csv(f.path(), &spec("dose", Some(&["0"]))).unwrap_err();
        assert!(matches!(err, CliError::ColumnOverlap(_)));
    }

    #[test]
    fn non_numeric_cell_in_explicit_selection_is_located() {
        let f = write_temp("x,a\n1,2\n2,3\n3,NA\n4,5\n");
        match load_csv(f.path(), &spec("x", Some(&["a"]))).unwrap_err() {
            CliError::Parse { line, column } => {
                assert_eq!(line, 4);
                assert_eq!(column, "a");
            }
            other => panic!("expected Parse, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_cells_are_rejected() {
        let f = write_temp("x,a\n1,2\n2,inf\n3,4\n4,5\n");
        assert!(matches!(
            load_csv(f.path(), &spec("x", Some(&["a"]))).unwrap_err(),
            CliError::Parse { line: 3, .. }
        ));
    }

    #[test]
    fn sentinel_drops_non_numeric_columns() {
        let f = write_temp("x,label,a\n1,red,2\n2,blue,3\n3,red,4\n4,blue,5\n");
        let d = load_csv(f.path(), &spec("x", None)).unwrap();
        assert_eq!(d.y_names, vec!["a"]);
    }

    #[test]
    fn sentinel_with_no_numeric_remainder_is_empty_selection() {
        let f = write_temp("x,label\n1,red\n2,blue\n3,red\n4,blue\n");
        assert!(matches!(
            load_csv(f.path(), &spec("x", None)).unwrap_err(),
            CliError::EmptySelection
        ));
    }

    #[test]
    fn too_few_rows_at_ingestion() {
        // n = 3 rows with k = 2 responses: n = k + 1
        let f = write_temp("x,a,b\n1,2,3\n2,3,4\n3,4,5\n");
        assert!(matches!(
            load_csv(f.path(), &spec("x", None)).unwrap_err(),
            CliError::TooFewRows { n: 3, k: 2 }
        ));
    }

    #[test]
    fn missing_column_and_missing_file() {
        let f = write_temp("x,a\n1,2\n2,3\n3,4\n4,5\n");
        assert!(matches!(
            load_csv(f.path(), &spec("nope", None)).unwrap_err(),
            CliError::MissingColumn(_)
        ));
        let missing = std::path::Path::new("/nonexistent/data.csv");
        assert!(matches!(
            load_csv(missing, &spec("x", None)).unwrap_err(),
            CliError::Io { .. }
        ));
    }

    #[test]
    fn ragged_row_is_malformed() {
        let f = write_temp("x,a\n1,2\n2\n3,4\n4,5\n");
        assert!(matches!(
            load_csv(f.path(), &spec("x", None)).unwrap_err(),
            CliError::Malformed { .. }
        ));
    }

    #[test]
    fn quoted_cells_parse() {
        let f = write_temp("x,a\n\"1.5\",2\n2,\"3e0\"\n3,4\n4,5\n");
        let d = load_csv(f.path(), &spec("x", None)).unwrap();
        assert_eq!(d.x[0], 1.5);
        assert_eq!(d.y.get(1, 0), 3.0);
    }
}
