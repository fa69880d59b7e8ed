//! Exact row reduction over the rationals.

use num_traits::{One, Zero};

use super::rat::{dot, Rat, RVec};

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[RVec], ncols: usize) -> (Vec<RVec>, Vec<usize>) {
    let mut m: Vec<RVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_of(vectors: &[RVec]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => rref(vectors, v.len()).0.len(),
    }
}

/// One solution of `M x = b` (rows of `M` are equations), or `None` if inconsistent.
pub fn solve_linear(m: &[RVec], b: &[Rat], ncols: usize) -> Option<RVec> {
    let aug: Vec<RVec> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, piv) = rref(&aug, ncols + 1);
    if piv.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &c) in red.iter().zip(&piv) {
        x[c] = row[ncols].clone();
    }
    Some(x)
}

/// Basis of `{x : M x = 0}`.
pub fn kernel(m: &[RVec], ncols: usize) -> Vec<RVec> {
    let (red, piv) = rref(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &p) in red.iter().zip(&piv) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn det(m: &[RVec]) -> Rat {
    let n = m.len();
    let mut a: Vec<RVec> = m.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            let (top, bot) = a.split_at_mut(i);
            for (x, y) in bot[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// `A Bᵀ` for row-vector lists.
pub fn gram(a: &[RVec], b: &[RVec]) -> Vec<RVec> {
    a.iter().map(|x| b.iter().map(|y| dot(x, y)).collect()).collect()
}

pub fn gram_det(a: &[RVec]) -> Rat {
    if a.is_empty() {
        return Rat::one();
    }
    det(&gram(a, a))
}

pub fn inverse(m: &[RVec]) -> Option<Vec<RVec>> {
    let n = m.len();
    let aug: Vec<RVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (red, piv) = rref(&aug, 2 * n);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn transpose(m: &[RVec], ncols: usize) -> Vec<RVec> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[RVec], v: &[Rat]) -> RVec {
    m.iter().map(|r| dot(r, v)).collect()
}

/// Combination `Σ cᵢ rowsᵢ`.
pub fn combine(coeffs: &[Rat], rows: &[RVec], ncols: usize) -> RVec {
    let mut out = vec![Rat::zero(); ncols];
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(r) {
            *o += c * x;
        }
    }
    out
}
