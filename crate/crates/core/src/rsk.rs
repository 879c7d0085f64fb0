//! The Robinson–Schensted correspondence `π ↔ (P, Q)` and its inverse.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::tableau::{insert_in_place, validate_tableau, BumpSearch, Tableau, TableauPair};

/// Insertion tableau `P` (insert `π_1, ..., π_n` in order) and recording
/// tableau `Q` (label `i` on the cell created at step `i`).
pub fn rsk(pi: &Permutation) -> TableauPair {
    rsk_with(pi, BumpSearch::Binary)
}

pub fn rsk_with(pi: &Permutation, search: BumpSearch) -> TableauPair {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &x) in pi.values().iter().enumerate() {
        let cell = insert_in_place(&mut p, x, search);
        if cell.row > q.len() {
            q.push(Vec::new());
        }
        q[cell.row - 1].push(step + 1);
    }
    TableauPair {
        p: Tableau::from_rows_unchecked(p),
        q: Tableau::from_rows_unchecked(q),
    }
}

/// `λ(π)`, the common shape of `P` and `Q`. Skips building `Q`.
pub fn shape(pi: &Permutation) -> Partition {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &x in pi.values() {
        insert_in_place(&mut rows, x, BumpSearch::Binary);
    }
    Partition::from_rows_unchecked(rows.iter().map(Vec::len).collect())
}

/// Reverse bumping, removing labels of `Q` in decreasing order.
pub fn inverse_rsk(pair: &TableauPair) -> Result<Permutation> {
    let p_report = validate_tableau(pair.p.rows());
    let q_report = validate_tableau(pair.q.rows());
    if !p_report.is_valid() {
        return Err(Error::InvalidTableau(format!("insertion tableau: {p_report}")));
    }
    if !q_report.is_valid() {
        return Err(Error::InvalidTableau(format!("recording tableau: {q_report}")));
    }
    if pair.p.shape() != pair.q.shape() {
        return Err(Error::InvalidTableau(format!(
            "shapes differ: {} vs {}",
            pair.p.shape(),
            pair.q.shape()
        )));
    }
    if !q_report.standard {
        return Err(Error::InvalidTableau("recording tableau is not standard".into()));
    }
    if !p_report.standard {
        return Err(Error::InvalidTableau(
            "insertion tableau entries are not exactly 1..n".into(),
        ));
    }

    let n = pair.p.size();
    let mut p = pair.p.rows().to_vec();
    let mut q = pair.q.rows().to_vec();
    let mut values = vec![0; n];
    for label in (1..=n).rev() {
        // In a standard tableau the largest label sits at the end of its row.
        let row = q
            .iter()
            .position(|r| r.last() == Some(&label))
            .expect("largest label of a standard tableau is a corner");
        q[row].pop();
        let mut x = p[row].pop().expect("equal shapes");
        if q[row].is_empty() {
            q.pop();
            p.pop();
        }
        for r in (0..row).rev() {
            let j = p[r].partition_point(|&y| y < x) - 1;
            x = std::mem::replace(&mut p[r][j], x);
        }
        values[label - 1] = x;
    }
    Permutation::new(values)
}

/// Length of the longest increasing subsequence, by patience sorting.
pub fn longest_increasing_subsequence(values: &[usize]) -> usize {
    let mut tops: Vec<usize> = Vec::new();
    for &v in values {
        let j = tops.partition_point(|&t| t < v);
        if j == tops.len() {
            tops.push(v);
        } else {
            tops[j] = v;
        }
    }
    tops.len()
}
