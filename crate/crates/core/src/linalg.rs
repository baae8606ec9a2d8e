//! Exact nullspace computation.
//!
//! Rows are stored sparsely and scaled to primitive integer vectors before
//! elimination. Elimination is fraction-free: a row is reduced against a
//! pivot row by cross-multiplication, then divided by its content, so no
//! rational arithmetic happens inside the loop.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// A sparse matrix with exact rational entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    /// Builds from dense rows; every row must have `cols` entries.
    pub fn from_dense(cols: usize, dense: &[Vec<Rational>]) -> Self {
        let mut m = SparseMatrix::new(cols);
        for row in dense {
            assert_eq!(row.len(), cols, "ragged dense row");
            m.push_row(row.iter().cloned().enumerate());
        }
        m
    }

    /// Appends a row given as `(column, value)` pairs; duplicates are summed.
    pub fn push_row<I: IntoIterator<Item = (usize, Rational)>>(&mut self, entries: I) {
        let mut row = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            *row.entry(c).or_insert_with(Rational::zero) += v;
        }
        row.retain(|_, v| !v.is_zero());
        self.rows.push(row);
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.rows[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    /// `self * v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.rows.iter().map(|row| row.iter().fold(Rational::zero(), |acc, (&c, x)| acc + x * &v[c])).collect()
    }
}

type IntRow = BTreeMap<usize, BigInt>;

fn primitive_int_row(row: &BTreeMap<usize, Rational>) -> IntRow {
    let lcm = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: IntRow = row.iter().map(|(&c, v)| (c, v.numer() * (&lcm / v.denom()))).collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut IntRow) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// `row <- p * row - f * pivot_row` where `p` is the pivot entry and `f` is
/// `row[col]`; clears `row[col]`.
fn eliminate(row: &mut IntRow, pivot_row: &IntRow, col: usize) {
    let Some(f) = row.get(&col).cloned() else {
        return;
    };
    let p = &pivot_row[&col];
    let g = f.gcd(p);
    let (p, f) = (p / &g, &f / &g);
    for v in row.values_mut() {
        *v *= &p;
    }
    for (&c, v) in pivot_row {
        let e = row.entry(c).or_insert_with(BigInt::zero);
        *e -= &f * v;
        if e.is_zero() {
            row.remove(&c);
        }
    }
    remove_content(row);
}

/// Reduced echelon form as `(pivot column, row)` pairs, in pivot order.
///
/// Columns are scanned left to right. Among the remaining rows with a
/// nonzero entry in the column, the shortest one is the pivot (ties go to
/// the earliest row). The reduced form is unique, so this choice only
/// affects cost, never the result. Back-substitution runs once at the end.
fn echelon(m: &SparseMatrix) -> Vec<(usize, IntRow)> {
    let mut pending: Vec<IntRow> = m.rows.iter().map(primitive_int_row).filter(|r| !r.is_empty()).collect();
    let mut pivots: Vec<(usize, IntRow)> = Vec::new();

    for col in 0..m.cols {
        if pending.is_empty() {
            break;
        }
        let Some(idx) = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| r.contains_key(&col))
            .min_by_key(|(i, r)| (r.len(), *i))
            .map(|(i, _)| i)
        else {
            continue;
        };
        let mut pivot = pending.remove(idx);
        if pivot[&col].is_negative() {
            for v in pivot.values_mut() {
                *v = -&*v;
            }
        }
        for row in pending.iter_mut() {
            eliminate(row, &pivot, col);
        }
        pending.retain(|r| !r.is_empty());
        pivots.push((col, pivot));
    }

    // clear each pivot column from the rows above it
    for i in (1..pivots.len()).rev() {
        let (above, rest) = pivots.split_at_mut(i);
        let (col, pivot) = &rest[0];
        for (_, row) in above.iter_mut() {
            eliminate(row, pivot, *col);
        }
    }
    pivots
}

pub fn rank(m: &SparseMatrix) -> usize {
    echelon(m).len()
}

/// A basis of `{ v : m * v = 0 }`.
///
/// One vector per free column `f`, with `v[f] = 1`, zeros on the other free
/// columns, and pivot entries solved from the reduced rows. The basis has
/// `cols - rank` elements and is fully determined by the column order.
pub fn kernel(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let pivots = echelon(m);
    let mut is_pivot = vec![false; m.cols];
    for (c, _) in &pivots {
        is_pivot[*c] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (c, row) in &pivots {
                if let Some(x) = row.get(&f) {
                    v[*c] = -Rational::new(x.clone(), row[c].clone());
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let d: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        SparseMatrix::from_dense(cols, &d)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(kernel(&m).is_empty());
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn zero_matrix_gives_unit_vectors() {
        let m = dense(&[&[0, 0, 0, 0], &[0, 0, 0, 0]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 4);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, rat(i64::from(i == j)));
            }
        }
        // no rows at all
        assert_eq!(kernel(&SparseMatrix::new(2)).len(), 2);
    }

    #[test]
    fn single_row() {
        let k = kernel(&dense(&[&[2, 2]]));
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
        // up to scaling this is (1, -1)
    }

    #[test]
    fn rational_entries() {
        let half = Rational::new(1.into(), 2.into());
        let mut m = SparseMatrix::new(3);
        m.push_row([(0, half.clone()), (1, rat(1))]);
        m.push_row([(1, rat(3)), (2, -half)]);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn dependent_rows() {
        let m = dense(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0], &[1, 3, 4, 4]]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn duplicate_entries_are_summed() {
        let mut m = SparseMatrix::new(2);
        m.push_row([(0, rat(1)), (0, rat(-1)), (1, rat(0))]);
        assert_eq!(m.get(0, 0), rat(0));
        assert_eq!(kernel(&m).len(), 2);
    }
}
