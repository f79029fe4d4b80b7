//! Integer row-vector arithmetic: Hermite and Smith normal forms, kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type IVec = Vec<BigInt>;

#[cfg(test)]
pub(crate) fn ivec(v: &[i64]) -> IVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub(crate) fn zero_vec(n: usize) -> IVec {
    vec![BigInt::zero(); n]
}

pub(crate) fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn neg(a: &[BigInt]) -> IVec {
    a.iter().map(|x| -x).collect()
}

/// `a * x + b * y`, componentwise.
pub(crate) fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> IVec {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub(crate) fn primitive(mut v: IVec) -> IVec {
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

pub(crate) fn identity(n: usize) -> Vec<IVec> {
    (0..n)
        .map(|i| {
            let mut row = zero_vec(n);
            row[i] = BigInt::one();
            row
        })
        .collect()
}

pub(crate) fn transpose(rows: &[IVec], ncols: usize) -> Vec<IVec> {
    (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Row-style Hermite normal form `U * A = [H; 0]`.
///
/// Pivots are positive and entries above a pivot are reduced into
/// `[0, pivot)`. `transform` is the unimodular `U`; its rows past `rank`
/// span the integer left kernel of `A`.
#[derive(Debug, Clone)]
pub(crate) struct Hnf {
    pub rows: Vec<IVec>,
    pub pivots: Vec<usize>,
    pub transform: Vec<IVec>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub(crate) fn hnf(a: &[IVec], ncols: usize) -> Hnf {
    let m = a.len();
    let mut mat: Vec<IVec> = a.to_vec();
    let mut u = identity(m);
    let mut pivots = Vec::new();
    let mut r = 0usize;

    for col in 0..ncols {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero entry at or below row r
            let best = (r..m)
                .filter(|&i| !mat[i][col].is_zero())
                .min_by(|&i, &j| mat[i][col].abs().cmp(&mat[j][col].abs()));
            let Some(best) = best else { break };
            mat.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in (r + 1)..m {
                if mat[i][col].is_zero() {
                    continue;
                }
                let q = mat[i][col].div_floor(&mat[r][col]);
                let (mr, ur) = (mat[r].clone(), u[r].clone());
                sub_multiple(&mut mat[i], &mr, &q);
                sub_multiple(&mut u[i], &ur, &q);
                if !mat[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if mat[r][col].is_zero() {
            continue;
        }
        if mat[r][col].is_negative() {
            mat[r] = neg(&mat[r]);
            u[r] = neg(&u[r]);
        }
        for i in 0..r {
            let q = mat[i][col].div_floor(&mat[r][col]);
            if !q.is_zero() {
                let (mr, ur) = (mat[r].clone(), u[r].clone());
                sub_multiple(&mut mat[i], &mr, &q);
                sub_multiple(&mut u[i], &ur, &q);
            }
        }
        pivots.push(col);
        r += 1;
    }
    mat.truncate(r);
    Hnf {
        rows: mat,
        pivots,
        transform: u,
    }
}

fn sub_multiple(target: &mut IVec, row: &[BigInt], q: &BigInt) {
    for (t, x) in target.iter_mut().zip(row) {
        *t -= q * x;
    }
}

/// Basis of the integer left kernel `{c : c * A = 0}`.
pub(crate) fn left_kernel(a: &[IVec], ncols: usize) -> Vec<IVec> {
    let h = hnf(a, ncols);
    let r = h.rank();
    h.transform[r..].to_vec()
}

/// Basis of the integer right kernel `{x : A * x = 0}` in `Z^ncols`.
pub(crate) fn right_kernel(a: &[IVec], ncols: usize) -> Vec<IVec> {
    if a.is_empty() {
        return identity(ncols);
    }
    left_kernel(&transpose(a, ncols), a.len())
}

/// Basis of `span_Q(rows) ∩ Z^n`, in Hermite normal form.
pub(crate) fn saturation(rows: &[IVec], n: usize) -> Vec<IVec> {
    let complement = right_kernel(rows, n);
    let sat = right_kernel(&complement, n);
    hnf(&sat, n).rows
}

/// Elementary divisors (nonzero diagonal of the Smith normal form), each
/// dividing the next.
pub(crate) fn elementary_divisors(a: &[IVec], ncols: usize) -> Vec<BigInt> {
    let mut mat: Vec<IVec> = a.to_vec();
    let mut width = ncols;
    loop {
        let h = hnf(&mat, width);
        let t = transpose(&h.rows, width);
        width = h.rows.len();
        mat = t;
        if is_diagonal(&mat) {
            break;
        }
    }
    let mut diag: Vec<BigInt> = (0..mat.len().min(width))
        .map(|i| mat[i][i].abs())
        .filter(|d| !d.is_zero())
        .collect();
    // enforce the divisibility chain
    for i in 0..diag.len() {
        for j in (i + 1)..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

fn is_diagonal(mat: &[IVec]) -> bool {
    mat.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}
