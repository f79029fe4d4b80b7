//! Small exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::intmat::{primitive, IVec};

pub(crate) type QVec = Vec<BigRational>;

pub(crate) fn to_q(v: &[BigInt]) -> QVec {
    v.iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect()
}

/// Clears denominators and returns the primitive integer vector on the same ray.
pub(crate) fn clear_denominators(v: &[BigRational]) -> IVec {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IVec = v
        .iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    primitive(ints)
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(mat: &mut [QVec], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == mat.len() {
            break;
        }
        let Some(p) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                let row_r = mat[r].clone();
                for (x, y) in mat[i].iter_mut().zip(&row_r) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[IVec], ncols: usize) -> usize {
    let mut mat: Vec<QVec> = rows.iter().map(|r| to_q(r)).collect();
    rref(&mut mat, ncols).len()
}

/// Inverse of a square integer matrix, or `None` if singular.
pub(crate) fn inverse(rows: &[IVec]) -> Option<Vec<QVec>> {
    let n = rows.len();
    let mut aug: Vec<QVec> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = to_q(r);
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`,
/// scaled to a primitive integer vector.
pub(crate) fn project_out(v: &[BigInt], basis: &[IVec]) -> IVec {
    if basis.is_empty() {
        return primitive(v.to_vec());
    }
    let n = v.len();
    // Gram–Schmidt on the basis, then subtract components
    let mut ortho: Vec<QVec> = Vec::new();
    for b in basis {
        let mut w = to_q(b);
        for o in &ortho {
            let c = qdot(&w, o) / qdot(o, o);
            for (x, y) in w.iter_mut().zip(o) {
                *x -= &c * y;
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            ortho.push(w);
        }
    }
    let mut w = to_q(v);
    for o in &ortho {
        let c = qdot(&w, o) / qdot(o, o);
        for (x, y) in w.iter_mut().zip(o) {
            *x -= &c * y;
        }
    }
    debug_assert_eq!(w.len(), n);
    clear_denominators(&w)
}

fn qdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `x * M` for a row vector `x` and a matrix given by rows.
pub(crate) fn row_times(x: &[BigRational], m: &[QVec]) -> QVec {
    let ncols = m.first().map_or(0, |r| r.len());
    (0..ncols)
        .map(|j| x.iter().zip(m).map(|(a, row)| a * &row[j]).sum())
        .collect()
}
