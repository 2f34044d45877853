//! Dense Gaussian elimination over exact scalars.

use crate::scalars::{FieldSpec, Scalar};

/// Reduces `rows` in place to reduced row echelon form, choosing pivots
/// among the columns in `pivot_cols` in the given priority order. Rows
/// without a pivot are dropped. Returns the pivot column of each remaining
/// row.
pub(crate) fn rref(rows: &mut Vec<Vec<Scalar>>, pivot_cols: &[usize]) -> Vec<usize> {
    let pivots = rref_keep(rows, pivot_cols);
    rows.truncate(pivots.len());
    pivots
}

/// Like [`rref`], but keeps the rows without a pivot after the pivot rows;
/// they vanish on every column of `pivot_cols`.
pub(crate) fn rref_keep(rows: &mut [Vec<Scalar>], pivot_cols: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for &c in pivot_cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][c].inv().expect("nonzero pivot");
        for x in rows[next].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == next || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..rows[i].len() {
                if !rows[next][j].is_zero() {
                    let d = &factor * &rows[next][j];
                    rows[i][j] = &rows[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<Scalar>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let cols: Vec<usize> = (0..first.len()).collect();
    let mut m = rows.to_vec();
    rref(&mut m, &cols).len()
}

/// All solutions of `a x = b` as `x0 + span(basis)`, or `None` when
/// inconsistent.
pub(crate) fn affine_solutions(
    a: &[Vec<Scalar>],
    b: &[Scalar],
    ncols: usize,
    field: &FieldSpec,
) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let cols: Vec<usize> = (0..ncols).collect();
    let pivots = rref_keep(&mut m, &cols);
    if m[pivots.len()..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x0 = vec![field.zero(); ncols];
    for (row, &pc) in m.iter().zip(&pivots) {
        x0[pc] = row[ncols].clone();
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    Some((x0, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::rational(n, 1)
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        let f = FieldSpec::Rationals;
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let (x0, basis) = affine_solutions(&a, &[q(3), q(1)], 2, &f).unwrap();
        assert_eq!((x0, basis.len()), (vec![q(2), q(1)], 0));
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert_eq!(rank(&a), 1);
        assert!(affine_solutions(&a, &[q(1), q(3)], 2, &f).is_none());
        let (x0, basis) = affine_solutions(&a, &[q(1), q(2)], 2, &f).unwrap();
        assert_eq!(x0, vec![q(1), q(0)]);
        assert_eq!(basis, vec![vec![q(-1), q(1)]]);
    }
}
