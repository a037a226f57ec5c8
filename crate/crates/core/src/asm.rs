//! Alternating sign matrices and two independent enumeration oracles.
//!
//! The oracles deliberately avoid the poset code: [`enumerate_asms_exhaustive`]
//! filters every grid over `{-1, 0, 1}`, and [`AsmBacktrack`] builds matrices
//! row by row from alternating sequences while keeping running column sums in
//! `{0, 1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seq::{self, enumerate_alternating, is_alternating_slice};

pub const MAX_EXHAUSTIVE_ORDER: usize = 3;
pub const MAX_BACKTRACK_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsmError {
    #[error("matrix is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NonSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row},{col}) is {value}, expected one of -1, 0, 1")]
    BadEntry { row: usize, col: usize, value: i64 },
    #[error("row {0} is not alternating")]
    RowNotAlternating(usize),
    #[error("column {0} is not alternating")]
    ColumnNotAlternating(usize),
    #[error("line {line}, token {token}: cannot parse {found:?}")]
    Parse {
        line: usize,
        token: usize,
        found: String,
    },
    #[error("invalid JSON matrix: {0}")]
    Json(String),
    #[error("order {n} outside supported range 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
}

/// Square matrix over `{-1, 0, 1}` whose rows and columns are all alternating.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

impl Asm {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry in row `i`, column `j`, both 1-based.
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Row `i`, 1-based.
    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    /// Column `j`, 1-based, top to bottom.
    pub fn column(&self, j: usize) -> Vec<i8> {
        (1..=self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<i8>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn identity(n: usize) -> Asm {
        assert!(n >= 1);
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Asm { n, entries }
    }

    pub fn transpose(&self) -> Asm {
        let n = self.n;
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Asm { n, entries }
    }

    pub fn is_permutation_matrix(&self) -> bool {
        self.entries.iter().all(|&e| e >= 0)
    }

    /// Builds from rows that the caller has already verified.
    pub(crate) fn from_rows_unchecked(rows: &[Vec<i8>]) -> Asm {
        let n = rows.len();
        Asm {
            n,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&AsmJson {
            n: self.n,
            rows: self
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(i64::from).collect())
                .collect(),
        })
        .expect("matrix serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct AsmJson {
    n: usize,
    rows: Vec<Vec<i64>>,
}

/// Checks shape, then entries, then rows top to bottom, then columns left to
/// right, reporting the first failure found.
pub fn validate_asm(grid: &[Vec<i64>]) -> Result<Asm, AsmError> {
    let n = grid.len();
    if n == 0 {
        return Err(AsmError::Empty);
    }
    for (i, row) in grid.iter().enumerate() {
        if row.len() != n {
            return Err(AsmError::NonSquare {
                row: i + 1,
                len: row.len(),
                expected: n,
            });
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in grid.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if !(-1..=1).contains(&v) {
                return Err(AsmError::BadEntry {
                    row: i + 1,
                    col: j + 1,
                    value: v,
                });
            }
            entries.push(v as i8);
        }
    }
    let asm = Asm { n, entries };
    for i in 1..=n {
        if !is_alternating_slice(asm.row(i)) {
            return Err(AsmError::RowNotAlternating(i));
        }
    }
    for j in 1..=n {
        if !is_alternating_slice(&asm.column(j)) {
            return Err(AsmError::ColumnNotAlternating(j));
        }
    }
    Ok(asm)
}

/// Validates an already-built `Asm` again, for use on matrices produced by
/// other code paths.
pub fn revalidate(a: &Asm) -> Result<(), AsmError> {
    let grid: Vec<Vec<i64>> = a
        .rows()
        .map(|r| r.iter().map(|&e| e as i64).collect())
        .collect();
    validate_asm(&grid).map(|_| ())
}

/// Filters all `3^(n^2)` grids. Row-major lexicographic order, `-1 < 0 < 1`.
pub fn enumerate_asms_exhaustive(n: usize) -> Result<Vec<Asm>, AsmError> {
    if n == 0 || n > MAX_EXHAUSTIVE_ORDER {
        return Err(AsmError::OrderOutOfRange {
            n,
            max: MAX_EXHAUSTIVE_ORDER,
        });
    }
    let cells = n * n;
    let total = 3usize.pow(cells as u32);
    let mut out = Vec::new();
    let mut grid = vec![vec![0i64; n]; n];
    for code in 0..total {
        let mut c = code;
        // the last cell is the least significant digit
        for cell in (0..cells).rev() {
            grid[cell / n][cell % n] = (c % 3) as i64 - 1;
            c /= 3;
        }
        if let Ok(a) = validate_asm(&grid) {
            out.push(a);
        }
    }
    Ok(out)
}

/// Row-by-row backtracking enumeration, lexicographic by row tuples.
pub fn enumerate_asms_backtrack(n: usize) -> Result<AsmBacktrack, AsmError> {
    if n == 0 || n > MAX_BACKTRACK_ORDER {
        return Err(AsmError::OrderOutOfRange {
            n,
            max: MAX_BACKTRACK_ORDER,
        });
    }
    let rows = enumerate_alternating(n)
        .expect("order within alternating enumeration range")
        .into_iter()
        .map(|a| a.into_inner())
        .collect();
    Ok(AsmBacktrack {
        n,
        rows,
        cursor: vec![0],
        placed: Vec::with_capacity(n),
        col_sums: vec![0; n],
    })
}

/// Streaming iterator returned by [`enumerate_asms_backtrack`].
#[derive(Debug, Clone)]
pub struct AsmBacktrack {
    n: usize,
    rows: Vec<Vec<i8>>,
    cursor: Vec<usize>,
    placed: Vec<usize>,
    col_sums: Vec<i8>,
}

impl AsmBacktrack {
    fn add_row(&mut self, idx: usize, sign: i8) {
        for (s, &e) in self.col_sums.iter_mut().zip(&self.rows[idx]) {
            *s += sign * e;
        }
    }

    fn fits(&self, idx: usize) -> bool {
        self.col_sums
            .iter()
            .zip(&self.rows[idx])
            .all(|(&s, &e)| matches!(s + e, 0 | 1))
    }
}

impl Iterator for AsmBacktrack {
    type Item = Asm;

    fn next(&mut self) -> Option<Asm> {
        loop {
            let depth = self.cursor.len().checked_sub(1)?;
            let candidate = self.cursor[depth];
            if candidate == self.rows.len() {
                self.cursor.pop();
                if let Some(idx) = self.placed.pop() {
                    self.add_row(idx, -1);
                }
                continue;
            }
            self.cursor[depth] += 1;
            if !self.fits(candidate) {
                continue;
            }
            self.add_row(candidate, 1);
            self.placed.push(candidate);
            if self.placed.len() < self.n {
                self.cursor.push(0);
                continue;
            }
            let complete = self.col_sums.iter().all(|&s| s == 1);
            let found = complete.then(|| {
                let rows: Vec<Vec<i64>> = self
                    .placed
                    .iter()
                    .map(|&i| self.rows[i].iter().map(|&e| e as i64).collect())
                    .collect();
                validate_asm(&rows)
            });
            self.placed.pop();
            self.add_row(candidate, -1);
            match found {
                Some(Ok(a)) => return Some(a),
                Some(Err(e)) => panic!("backtracking produced an invalid matrix: {e}"),
                None => continue,
            }
        }
    }
}

/// Parses either the whitespace text form (one row per line) or the JSON
/// form `{"n": .., "rows": [[..], ..]}`.
pub fn parse_asm(text: &str) -> Result<Asm, AsmError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let parsed: AsmJson =
            serde_json::from_str(trimmed).map_err(|e| AsmError::Json(e.to_string()))?;
        if parsed.rows.len() != parsed.n {
            return Err(AsmError::Json(format!(
                "n is {} but {} rows given",
                parsed.n,
                parsed.rows.len()
            )));
        }
        return validate_asm(&parsed.rows);
    }
    let mut grid = Vec::new();
    for (li, line) in trimmed.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(ti, tok)| {
                seq::parse_sign_token(tok)
                    .map(i64::from)
                    .ok_or_else(|| AsmError::Parse {
                        line: li + 1,
                        token: ti + 1,
                        found: tok.to_string(),
                    })
            })
            .collect::<Result<Vec<i64>, _>>()?;
        grid.push(row);
    }
    validate_asm(&grid)
}

/// One line per row, entries separated by single spaces, no trailing newline.
pub fn serialize_asm(a: &Asm) -> String {
    a.rows().map(seq::to_numeric).collect::<Vec<_>>().join("\n")
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_asm(self))
    }
}

impl FromStr for Asm {
    type Err = AsmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_asm(s)
    }
}
