//! Young tableaux with distinct positive entries and Schensted row insertion.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A cell coordinate `(row, col)`, both 1-based; `(1, 1)` is the top-left cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// How row insertion locates the entry to bump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BumpSearch {
    /// Binary search within the (sorted) row.
    #[default]
    Binary,
    /// Left-to-right scan; kept as an oracle for the binary variant.
    Linear,
}

impl BumpSearch {
    /// Index of the smallest entry of `row` larger than `x`, or `row.len()`.
    #[inline]
    pub(crate) fn find(self, row: &[usize], x: usize) -> usize {
        match self {
            BumpSearch::Binary => row.partition_point(|&y| y < x),
            BumpSearch::Linear => row.iter().position(|&y| y > x).unwrap_or(row.len()),
        }
    }
}

/// Rows of strictly increasing entries, strictly increasing down columns,
/// with weakly decreasing row lengths.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Validates the row/column/shape/distinctness invariants.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let report = validate_tableau(&rows);
        if !report.is_valid() {
            return Err(Error::InvalidTableau(report.to_string()));
        }
        Ok(Tableau { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        Tableau { rows }
    }

    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::from_rows_unchecked(self.rows.iter().map(Vec::len).collect())
    }

    pub fn get(&self, cell: Cell) -> Option<usize> {
        self.rows.get(cell.row.checked_sub(1)?)?.get(cell.col.checked_sub(1)?).copied()
    }

    /// Cell holding `value`, if present.
    pub fn find(&self, value: usize) -> Option<Cell> {
        self.rows.iter().enumerate().find_map(|(i, row)| {
            row.iter().position(|&v| v == value).map(|j| Cell::new(i + 1, j + 1))
        })
    }

    /// Entries are exactly `{1..size}`.
    pub fn is_standard(&self) -> bool {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        for &v in self.rows.iter().flatten() {
            if v == 0 || v > n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Schensted row insertion `T ← x`. Returns the new tableau together with
    /// the cell that was created.
    pub fn row_insert(&self, x: usize) -> Result<(Tableau, Cell)> {
        self.row_insert_with(x, BumpSearch::Binary)
    }

    pub fn row_insert_with(&self, x: usize, search: BumpSearch) -> Result<(Tableau, Cell)> {
        if x == 0 {
            return Err(Error::InvalidTableau("entries must be positive".into()));
        }
        if self.rows.iter().flatten().any(|&v| v == x) {
            return Err(Error::DuplicateEntry(x));
        }
        let mut out = self.clone();
        let cell = insert_in_place(&mut out.rows, x, search);
        Ok((out, cell))
    }
}

/// Row insertion on raw rows; `x` must be distinct from every entry.
pub(crate) fn insert_in_place(rows: &mut Vec<Vec<usize>>, mut x: usize, search: BumpSearch) -> Cell {
    for (i, row) in rows.iter_mut().enumerate() {
        let j = search.find(row, x);
        if j == row.len() {
            row.push(x);
            return Cell::new(i + 1, j + 1);
        }
        x = std::mem::replace(&mut row[j], x);
    }
    rows.push(vec![x]);
    Cell::new(rows.len(), 1)
}

impl TryFrom<Vec<Vec<usize>>> for Tableau {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Tableau::new(rows)
    }
}

impl From<Tableau> for Vec<Vec<usize>> {
    fn from(t: Tableau) -> Self {
        t.rows
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau{:?}", self.rows)
    }
}

impl fmt::Display for Tableau {
    /// Right-aligned grid, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            f.write_str(&line.join(" "))?;
        }
        Ok(())
    }
}

/// An insertion tableau `p` and a recording tableau `q` of equal shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableauPair {
    pub p: Tableau,
    pub q: Tableau,
}

impl TableauPair {
    pub fn shape(&self) -> Partition {
        self.p.shape()
    }
}

/// One violated tableau invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyRow { row: usize },
    NonPositiveEntry { cell: Cell },
    RowNotIncreasing { cell: Cell },
    ColumnNotIncreasing { cell: Cell },
    ShapeNotPartition { row: usize },
    DuplicateEntry { value: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyRow { row } => write!(f, "row {row} is empty"),
            Violation::NonPositiveEntry { cell } => {
                write!(f, "entry at ({}, {}) is not positive", cell.row, cell.col)
            }
            Violation::RowNotIncreasing { cell } => write!(
                f,
                "row {} not strictly increasing at column {}",
                cell.row, cell.col
            ),
            Violation::ColumnNotIncreasing { cell } => write!(
                f,
                "column {} not strictly increasing at row {}",
                cell.col, cell.row
            ),
            Violation::ShapeNotPartition { row } => {
                write!(f, "row lengths not weakly decreasing at row {row}")
            }
            Violation::DuplicateEntry { value } => write!(f, "duplicate entry {value}"),
        }
    }
}

/// Outcome of [`validate_tableau`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
    /// Entries are exactly `{1..n}` where `n` is the number of cells.
    pub standard: bool,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_standard_tableau(&self) -> bool {
        self.is_valid() && self.standard
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let msgs: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&msgs.join("; "))
    }
}

/// Lists every violated invariant of an arbitrary row structure.
pub fn validate_tableau(rows: &[Vec<usize>]) -> ValidityReport {
    let mut violations = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if row.is_empty() {
            violations.push(Violation::EmptyRow { row: i + 1 });
        }
        if i > 0 && row.len() > rows[i - 1].len() {
            violations.push(Violation::ShapeNotPartition { row: i + 1 });
        }
        for (j, &v) in row.iter().enumerate() {
            let cell = Cell::new(i + 1, j + 1);
            if v == 0 {
                violations.push(Violation::NonPositiveEntry { cell });
            }
            if j > 0 && row[j - 1] >= v {
                violations.push(Violation::RowNotIncreasing { cell });
            }
            if i > 0 {
                if let Some(&above) = rows[i - 1].get(j) {
                    if above >= v {
                        violations.push(Violation::ColumnNotIncreasing { cell });
                    }
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut dups = BTreeSet::new();
    for &v in rows.iter().flatten() {
        if !seen.insert(v) {
            dups.insert(v);
        }
    }
    violations.extend(dups.into_iter().map(|value| Violation::DuplicateEntry { value }));
    let n = rows.iter().map(Vec::len).sum::<usize>();
    let standard = seen.len() == n && seen.iter().copied().eq(1..=n);
    ValidityReport { violations, standard }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[usize]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn insert_without_bumping() {
        let (out, cell) = t(&[&[1, 2, 4, 7], &[3, 6], &[5]]).row_insert(8).unwrap();
        assert_eq!(out, t(&[&[1, 2, 4, 7, 8], &[3, 6], &[5]]));
        assert_eq!(cell, Cell::new(1, 5));
    }

    #[test]
    fn insert_creates_new_row() {
        let (out, cell) = t(&[&[2]]).row_insert(1).unwrap();
        assert_eq!(out, t(&[&[1], &[2]]));
        assert_eq!(cell, Cell::new(2, 1));
    }

    #[test]
    fn insert_bumps_into_second_row() {
        // 2 bumps 4 from row 1; 4 lands at the end of row 2.
        let base = t(&[&[1, 4], &[3]]);
        for search in [BumpSearch::Binary, BumpSearch::Linear] {
            let (out, cell) = base.row_insert_with(2, search).unwrap();
            assert_eq!(out, t(&[&[1, 2], &[3, 4]]));
            assert_eq!(cell, Cell::new(2, 2));
        }
        // input untouched
        assert_eq!(base, t(&[&[1, 4], &[3]]));
    }

    #[test]
    fn insert_rejects_duplicates() {
        assert_eq!(
            t(&[&[1, 3], &[2]]).row_insert(2),
            Err(Error::DuplicateEntry(2))
        );
    }

    #[test]
    fn validity_reports() {
        let ok = validate_tableau(&[vec![1, 2, 4, 7], vec![3, 6], vec![5]]);
        assert!(ok.is_standard_tableau());
        assert_eq!(t(&[&[1, 2, 4, 7], &[3, 6], &[5]]).shape().parts(), &[4, 2, 1]);

        let dup = validate_tableau(&[vec![1, 3], vec![2, 2]]);
        assert!(dup.violations.contains(&Violation::DuplicateEntry { value: 2 }));

        let shape = validate_tableau(&[vec![1], vec![2, 3]]);
        assert!(shape.violations.contains(&Violation::ShapeNotPartition { row: 2 }));

        let col = validate_tableau(&[vec![2, 3], vec![1]]);
        assert!(col
            .violations
            .contains(&Violation::ColumnNotIncreasing { cell: Cell::new(2, 1) }));
        let col = validate_tableau(&[vec![1, 3], vec![2, 3]]);
        assert!(col
            .violations
            .contains(&Violation::ColumnNotIncreasing { cell: Cell::new(2, 2) }));

        let gap = validate_tableau(&[vec![1, 3]]);
        assert!(gap.is_valid());
        assert!(!gap.standard);
    }

    #[test]
    fn display_is_a_grid() {
        assert_eq!(t(&[&[1, 2, 10], &[3]]).to_string(), " 1  2 10\n 3");
    }
}
