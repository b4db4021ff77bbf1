//! Sparse parity-check matrices in alist layout.
//!
//! ```text
//! N M
//! max_col_weight max_row_weight
//! col weights (N)
//! row weights (M)
//! N lines of 1-based row indices
//! M lines of 1-based column indices
//! ```
//!
//! Index lines are written without zero padding; zeros are skipped on read.

use thiserror::Error;

use crate::f2linalg::BitMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlistError {
    #[error("alist line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("column and row index lists disagree at ({row}, {col})")]
    Inconsistent { row: usize, col: usize },
}

fn join(items: impl IntoIterator<Item = usize>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Writes an `M × N` matrix (rows are checks, columns are bits).
#[must_use]
pub fn write_alist(h: &BitMatrix) -> String {
    let t = h.transpose();
    let col_weights = h.column_weights();
    let row_weights: Vec<usize> = (0..h.rows()).map(|r| h.row_weight(r)).collect();
    let mut lines = vec![
        format!("{} {}", h.cols(), h.rows()),
        format!(
            "{} {}",
            col_weights.iter().max().copied().unwrap_or(0),
            row_weights.iter().max().copied().unwrap_or(0)
        ),
        join(col_weights),
        join(row_weights),
    ];
    lines.extend((0..h.cols()).map(|c| join(t.row_ones(c).map(|r| r + 1))));
    lines.extend((0..h.rows()).map(|r| join(h.row_ones(r).map(|c| c + 1))));
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

fn numbers(line: &str, at: usize) -> Result<Vec<usize>, AlistError> {
    line.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| AlistError::Malformed {
                line: at + 1,
                reason: format!("'{t}' is not a nonnegative integer"),
            })
        })
        .collect()
}

/// Parses an alist document back into the `M × N` matrix.
///
/// # Errors
///
/// Fails on missing lines, bad counts, out-of-range indices, or row and column
/// lists that describe different matrices.
pub fn read_alist(text: &str) -> Result<BitMatrix, AlistError> {
    let lines: Vec<&str> = text.lines().collect();
    let get = |i: usize| -> Result<Vec<usize>, AlistError> {
        let line = lines.get(i).ok_or(AlistError::Malformed {
            line: i + 1,
            reason: "unexpected end of input".into(),
        })?;
        numbers(line, i)
    };
    let head = get(0)?;
    let [n, m] = head[..] else {
        return Err(AlistError::Malformed {
            line: 1,
            reason: "expected 'N M'".into(),
        });
    };
    let col_weights = get(2)?;
    let row_weights = get(3)?;
    if col_weights.len() != n || row_weights.len() != m {
        return Err(AlistError::Malformed {
            line: 3,
            reason: format!("expected {n} column and {m} row weights"),
        });
    }
    let mut by_col = Vec::new();
    for (c, &weight) in col_weights.iter().enumerate() {
        let idx: Vec<usize> = get(4 + c)?.into_iter().filter(|&x| x != 0).collect();
        if idx.len() != weight || idx.iter().any(|&r| r > m) {
            return Err(AlistError::Malformed {
                line: 5 + c,
                reason: format!("column {} does not match its weight {weight}", c + 1),
            });
        }
        by_col.extend(idx.into_iter().map(|r| (r - 1, c)));
    }
    let h = BitMatrix::from_entries(m, n, by_col);
    for (r, &weight) in row_weights.iter().enumerate() {
        let idx: Vec<usize> = get(4 + n + r)?.into_iter().filter(|&x| x != 0).collect();
        if idx.len() != weight || idx.iter().any(|&c| c > n) {
            return Err(AlistError::Malformed {
                line: 5 + n + r,
                reason: format!("row {} does not match its weight {weight}", r + 1),
            });
        }
        for c in idx {
            if !h.get(r, c - 1) {
                return Err(AlistError::Inconsistent { row: r, col: c - 1 });
            }
        }
        if h.row_weight(r) != weight {
            return Err(AlistError::Inconsistent { row: r, col: 0 });
        }
    }
    Ok(h)
}
