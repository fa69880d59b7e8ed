//! Exact feasibility of `A x = b, x ≥ 0` by phase-one simplex with Bland's rule.

use num_traits::{Signed, Zero};

use super::rat::{Rat, RVec};

/// Returns a nonnegative solution of `A x = b` if one exists.
pub fn feasible_point(a: &[RVec], b: &[Rat], nvars: usize) -> Option<RVec> {
    let m = a.len();
    if m == 0 {
        return Some(vec![Rat::zero(); nvars]);
    }
    let width = nvars + m + 1;
    let rhs = nvars + m;
    let mut t: Vec<RVec> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            let flip = bi.is_negative();
            let mut r = vec![Rat::zero(); width];
            for (j, x) in row.iter().enumerate() {
                r[j] = if flip { -x.clone() } else { x.clone() };
            }
            r[nvars + i] = Rat::from_integer(1.into());
            r[rhs] = if flip { -bi.clone() } else { bi.clone() };
            r
        })
        .collect();
    let mut basis: Vec<usize> = (nvars..nvars + m).collect();
    // reduced costs of the phase-one objective Σ artificials
    let mut cost = vec![Rat::zero(); width];
    for row in &t {
        for j in 0..nvars {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }
    loop {
        let Some(enter) = (0..nvars + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // unbounded is impossible for phase one (objective bounded below by 0)
        let (r, _) = leave?;
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, y) in cost.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        basis[r] = enter;
    }
    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); nvars];
    for (i, &bj) in basis.iter().enumerate() {
        if bj < nvars {
            x[bj] = t[i][rhs].clone();
        }
    }
    Some(x)
}

/// Whether `point` lies in `cone(generators) + span(lineality)`.
pub fn cone_contains(generators: &[RVec], lineality: &[RVec], point: &[Rat]) -> bool {
    let dim = point.len();
    let cols: Vec<RVec> = generators
        .iter()
        .cloned()
        .chain(lineality.iter().cloned())
        .chain(lineality.iter().map(|l| l.iter().map(|x| -x.clone()).collect()))
        .collect();
    if cols.is_empty() {
        return point.iter().all(Zero::is_zero);
    }
    let a: Vec<RVec> = (0..dim).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    feasible_point(&a, point, cols.len()).is_some()
}
