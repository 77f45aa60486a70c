//! Dense linear algebra over a finite field.

use super::field::{Field, FqElem};

pub type Matrix = Vec<Vec<FqElem>>;

/// Row-reduces in place and returns the pivot columns.
pub fn rref(field: &Field, m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(r) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, r);
        let inv = field.inv(m[row][col]).expect("pivot is nonzero");
        for x in m[row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let c = m[r][col];
                for j in 0..m[r].len() {
                    let v = field.mul(c, m[row][j]);
                    m[r][j] = field.sub(m[r][j], v);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace(field: &Field, m: &Matrix, ncols: usize) -> Vec<Vec<FqElem>> {
    let mut a = m.clone();
    let pivots = rref(field, &mut a, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![FqElem::ZERO; ncols];
            v[free] = FqElem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(a[r][free]);
            }
            v
        })
        .collect()
}

/// Unique solution of the square system `m x = b`, if `m` is invertible.
pub fn solve(field: &Field, m: &Matrix, b: &[FqElem]) -> Option<Vec<FqElem>> {
    let n = b.len();
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(field, &mut aug, n);
    (pivots.len() == n).then(|| aug.iter().map(|r| r[n]).collect())
}

pub fn determinant(field: &Field, m: &Matrix) -> FqElem {
    let n = m.len();
    let mut a = m.clone();
    let mut det = FqElem::ONE;
    for col in 0..n {
        let Some(r) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return FqElem::ZERO;
        };
        if r != col {
            a.swap(r, col);
            det = field.neg(det);
        }
        det = field.mul(det, a[col][col]);
        let inv = field.inv(a[col][col]).expect("pivot is nonzero");
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest {
            let c = field.mul(row[col], inv);
            for (x, &p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = field.sub(*x, field.mul(c, p));
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let f5 = Field::of_order(5).unwrap();
        let e = |n: i64| f5.from_int(n);
        let m = vec![vec![e(1), e(2), e(3), e(4)], vec![e(0), e(1), e(1), e(2)]];
        let ns = nullspace(&f5, &m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let s = row
                    .iter()
                    .zip(v)
                    .fold(FqElem::ZERO, |acc, (&a, &b)| f5.add(acc, f5.mul(a, b)));
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn solve_and_determinant() {
        let f7 = Field::of_order(7).unwrap();
        let e = |n: i64| f7.from_int(n);
        let m = vec![vec![e(1), e(1)], vec![e(1), e(2)]];
        assert_eq!(determinant(&f7, &m), e(1));
        assert_eq!(solve(&f7, &m, &[e(3), e(5)]).unwrap(), vec![e(1), e(2)]);
        let sing = vec![vec![e(1), e(2)], vec![e(2), e(4)]];
        assert_eq!(determinant(&f7, &sing), e(0));
        assert!(solve(&f7, &sing, &[e(1), e(1)]).is_none());
    }
}
