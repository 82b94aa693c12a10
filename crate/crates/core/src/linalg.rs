//! Exact rational linear algebra on small dense matrices.

use num_traits::{One, Zero};

use crate::number::Rational;

pub type Vector = Vec<Rational>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : rows·x = 0}`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Orthogonal complement of the span of `basis` in ℚ^d.
pub fn orthogonal_complement(basis: &[Vector], d: usize) -> Vec<Vector> {
    if basis.is_empty() {
        return (0..d).map(|i| unit(d, i)).collect();
    }
    nullspace(basis, d)
}

pub fn unit(d: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vector], v: &[Rational]) -> bool {
    let d = v.len();
    let r = rank(basis, d);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank(&ext, d) == r
}

/// One solution of `A·x = b` (A given by rows), if any.
pub fn solve(a: &[Vector], b: &[Rational], ncols: usize) -> Option<Vector> {
    let mut aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[i][ncols].clone();
    }
    Some(x)
}
