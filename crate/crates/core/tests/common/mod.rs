//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn f(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}

/// Random point with small rational coordinates (denominators up to 3).
pub fn rand_point(r: &mut ChaCha8Rng, m: usize, bound: i64) -> Vec<Q> {
    (0..m)
        .map(|_| qf(r.random_range(-bound * 3..=bound * 3), r.random_range(1..=3)))
        .collect()
}

pub fn rand_int_point(r: &mut ChaCha8Rng, m: usize, bound: i64) -> Vec<Q> {
    (0..m).map(|_| q(r.random_range(-bound..=bound))).collect()
}

fn cross(o: &[Q], a: &[Q], b: &[Q]) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Andrew's monotone chain; counter-clockwise, collinear points dropped.
pub fn hull2(points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<Vec<Q>> = Vec::new();
    for x in &p {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], x).is_positive() {
            lower.pop();
        }
        lower.push(x.clone());
    }
    let mut upper: Vec<Vec<Q>> = Vec::new();
    for x in p.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], x).is_positive() {
            upper.pop();
        }
        upper.push(x.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Shoelace area of a convex polygon given counter-clockwise.
pub fn shoelace(poly: &[Vec<Q>]) -> Q {
    if poly.len() < 3 {
        return Q::zero();
    }
    let mut s = Q::zero();
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        s += &a[0] * &b[1] - &a[1] * &b[0];
    }
    s / q(2)
}

pub fn perimeter(poly: &[Vec<Q>]) -> f64 {
    if poly.len() == 2 {
        let d: Vec<f64> = (0..2).map(|k| f(&poly[1][k]) - f(&poly[0][k])).collect();
        return 2.0 * d[0].hypot(d[1]);
    }
    (0..poly.len())
        .map(|i| {
            let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
            (f(&b[0]) - f(&a[0])).hypot(f(&b[1]) - f(&a[1]))
        })
        .sum()
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cross3(a: &[Q], b: &[Q]) -> Vec<Q> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Volume of the convex hull of points in ℝ³ by brute-force facet search:
/// `vol = Σ_F (1/3)·h_F·area(F)` with `h_F` measured from the centroid.
pub fn volume3(points: &[Vec<Q>]) -> Q {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    let c: Vec<Q> = (0..3).map(|k| p.iter().map(|x| x[k].clone()).sum::<Q>() / q(p.len() as i64)).collect();
    let mut seen: Vec<(Vec<Q>, Q)> = Vec::new();
    let mut total = Q::zero();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            for k in j + 1..p.len() {
                let mut n = cross3(&sub(&p[j], &p[i]), &sub(&p[k], &p[i]));
                if n.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut off = dot(&n, &p[i]);
                if dot(&n, &c) > off {
                    n = n.iter().map(|x| -x).collect();
                    off = -off;
                }
                if p.iter().any(|x| dot(&n, x) > off) {
                    continue;
                }
                // normalize so the plane is recorded once
                let lead = n.iter().find(|x| !x.is_zero()).unwrap().abs();
                let key: Vec<Q> = n.iter().map(|x| x / &lead).collect();
                let key_off = &off / &lead;
                if seen.iter().any(|(k2, o2)| *k2 == key && *o2 == key_off) {
                    continue;
                }
                seen.push((key, key_off));
                // area of the facet: project along the largest normal coordinate
                let on: Vec<Vec<Q>> = p.iter().filter(|x| dot(&n, x) == off).cloned().collect();
                let axis = (0..3).max_by(|&a, &b| n[a].abs().cmp(&n[b].abs())).unwrap();
                let keep: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
                let proj: Vec<Vec<Q>> = on.iter().map(|x| keep.iter().map(|&a| x[a].clone()).collect()).collect();
                let area_proj = shoelace(&hull2(&proj)).abs();
                // pyramid volume = (1/3)·|n·(x − c)|/|n|·area, with area = area_proj·|n|/|n_axis|
                let h = (&off - dot(&n, &c)).abs();
                total += h * area_proj / n[axis].abs() / q(3);
            }
        }
    }
    total
}

/// Exact kernel of a rational matrix by Gauss–Jordan elimination.
pub fn nullspace(mat: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut a = mat.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Q::zero(); ncols];
            v[fc] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][fc].clone();
            }
            v
        })
        .collect()
}

/// One line of the acceptance report.
pub fn report(id: usize, name: &str, pass: bool, detail: &str, secs: f64, budget: f64) -> bool {
    let ok = pass && secs <= budget;
    println!(
        "[{}] criterion {id}: {name}: {detail} ({secs:.2}s, budget {budget}s)",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}
