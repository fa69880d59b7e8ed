//! Double description: extreme rays and lineality of `{x : A x ≥ 0}`.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::exactnum::linalg::{inverse, kernel, rref};
use crate::exactnum::rat::{dot, primitive, Rat, RVec};

#[derive(Clone, Debug, Default)]
pub struct RayDescription {
    /// Extreme rays, orthogonal to the lineality space, primitive integral.
    pub rays: Vec<RVec>,
    /// Basis of the lineality space.
    pub lineality: Vec<RVec>,
}

struct Ray {
    y: RVec,
    zeros: FixedBitSet,
}

/// Extreme rays of the cone `{x ∈ ℝ^dim : aᵢ·x ≥ 0}`.
pub fn extreme_rays(constraints: &[RVec], dim: usize) -> RayDescription {
    let lineality = kernel(constraints, dim);
    // coordinates on the orthogonal complement of the lineality space
    let (basis, _) = rref(constraints, dim);
    let d = basis.len();
    if d == 0 {
        return RayDescription {
            rays: Vec::new(),
            lineality,
        };
    }
    let reduced: Vec<RVec> = constraints
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let m = reduced.len();

    // greedy choice of d independent rows for the initial simplicial cone
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut echelon: Vec<RVec> = Vec::new();
    for (i, row) in reduced.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(row.clone());
        let (r, _) = rref(&trial, d);
        if r.len() > echelon.len() {
            echelon = r;
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    let start: Vec<RVec> = chosen.iter().map(|&i| reduced[i].clone()).collect();
    let inv = inverse(&start).expect("independent rows");
    let mut processed = FixedBitSet::with_capacity(m);
    for &i in &chosen {
        processed.insert(i);
    }
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let y: RVec = (0..d).map(|r| inv[r][j].clone()).collect();
            let mut zeros = FixedBitSet::with_capacity(m);
            for (k, &i) in chosen.iter().enumerate() {
                if k != j {
                    zeros.insert(i);
                }
            }
            Ray { y: primitive(&y), zeros }
        })
        .collect();

    for i in 0..m {
        if processed.contains(i) {
            continue;
        }
        let a = &reduced[i];
        let vals: Vec<Rat> = rays.iter().map(|r| dot(a, &r.y)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        if !neg.is_empty() {
            for &p in &pos {
                for &n in &neg {
                    let mut common = rays[p].zeros.clone();
                    common.intersect_with(&rays[n].zeros);
                    if common.count_ones(..) + 2 < d {
                        continue;
                    }
                    let adjacent = rays.iter().enumerate().all(|(k, r)| k == p || k == n || !common.is_subset(&r.zeros));
                    if !adjacent {
                        continue;
                    }
                    let y: RVec = rays[n]
                        .y
                        .iter()
                        .zip(&rays[p].y)
                        .map(|(yn, yp)| &vals[p] * yn - &vals[n] * yp)
                        .collect();
                    let mut zeros = common;
                    zeros.insert(i);
                    next.push(Ray { y: primitive(&y), zeros });
                }
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                r.zeros.insert(i);
            }
            kept.push(r);
        }
        kept.extend(next);
        rays = kept;
        processed.insert(i);
    }

    let mut out: Vec<RVec> = rays
        .into_iter()
        .map(|r| {
            let mut x = vec![Rat::zero(); dim];
            for (c, b) in r.y.iter().zip(&basis) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += c * bi;
                }
            }
            primitive(&x)
        })
        .collect();
    out.sort();
    out.dedup();
    RayDescription { rays: out, lineality }
}
