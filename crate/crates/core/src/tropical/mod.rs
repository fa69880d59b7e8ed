//! Weighted fans, their addition, factorization and stable intersection.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::linalg::det;
use crate::exactnum::lp::cone_contains;
use crate::exactnum::rat::{binomial, dot, neg, Rat, RVec};
use crate::exactnum::radical::Radical;
use crate::exactnum::subspace::Subspace;
use crate::polytope::ops::intrinsic_coordinate_volume;
use crate::polytope::{Cone, Polytope};

/// A cone of a weighted fan. The weight is measured in the coordinates of the
/// canonical basis of the complement of `V_K` (inside the fan's space).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedCone {
    pub cone: Cone,
    pub weight: Rat,
}

/// A finite collection of `k`-dimensional weighted cones in a subspace of ℝ^m.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedFan {
    ambient: usize,
    space: Subspace,
    dim: usize,
    cones: Vec<WeightedCone>,
}

fn cone_key(c: &Cone) -> (Vec<RVec>, Vec<RVec>) {
    (c.lineality().basis().to_vec(), c.rays().to_vec())
}

impl WeightedFan {
    /// Fan in ℝ^m from `(cone, weight)` pairs, kept as given.
    pub fn new(ambient: usize, dim: usize, cones: Vec<(Cone, Rat)>) -> Result<WeightedFan> {
        Self::in_space(Subspace::full(ambient), dim, cones)
    }

    /// Fan living in the subspace `space` of ℝ^m.
    pub fn in_space(space: Subspace, dim: usize, cones: Vec<(Cone, Rat)>) -> Result<WeightedFan> {
        let ambient = space.ambient();
        let mut out = Vec::with_capacity(cones.len());
        for (cone, weight) in cones {
            if cone.ambient() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: cone.ambient(),
                });
            }
            if cone.dim() != dim {
                return Err(Error::FanDimMismatch(dim, cone.dim()));
            }
            if !space.contains_subspace(cone.span()) {
                return Err(Error::SpaceMismatch(space.dim(), cone.span().dim()));
            }
            out.push(WeightedCone { cone, weight });
        }
        Ok(WeightedFan {
            ambient,
            space,
            dim,
            cones: out,
        })
    }

    pub fn empty(ambient: usize, dim: usize) -> WeightedFan {
        WeightedFan {
            ambient,
            space: Subspace::full(ambient),
            dim,
            cones: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cones(&self) -> &[WeightedCone] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Canonical basis of the complement of `V_K` inside the fan's space.
    pub fn weight_frame(&self, cone: &Cone) -> Subspace {
        cone.span().orthogonal_complement().intersection(&self.space)
    }

    /// Weight of the `i`-th cone under the induced Euclidean normalization.
    pub fn euclidean_weight(&self, i: usize) -> Radical {
        let c = &self.cones[i];
        Radical::new(c.weight.clone(), &self.weight_frame(&c.cone).gram_det())
    }

    /// Total weight carried by the zero cone (dimension-0 fans).
    pub fn zero_cone_weight(&self) -> Rat {
        self.cones.iter().filter(|c| c.cone.is_zero()).map(|c| c.weight.clone()).sum()
    }

    pub fn neg(&self) -> WeightedFan {
        self.scale(&Rat::from_integer(BigInt::from(-1)))
    }

    pub fn scale(&self, s: &Rat) -> WeightedFan {
        let mut out = self.clone();
        for c in &mut out.cones {
            c.weight *= s;
        }
        out
    }

    /// Common refinement of overlapping cones with weights summed on equal
    /// cells and zero cells dropped. Two fans are equivalent exactly when
    /// their canonical forms agree.
    pub fn canonical(&self) -> WeightedFan {
        let mut groups: Vec<(Subspace, Vec<&WeightedCone>)> = Vec::new();
        for c in &self.cones {
            match groups.iter_mut().find(|(s, _)| s == c.cone.span()) {
                Some((_, v)) => v.push(c),
                None => groups.push((c.cone.span().clone(), vec![c])),
            }
        }
        let mut cells: Vec<WeightedCone> = Vec::new();
        for (span, members) in groups {
            let mut hyperplanes: Vec<RVec> = members.iter().flat_map(|c| c.cone.facets().iter().cloned()).collect();
            hyperplanes.sort();
            hyperplanes.dedup();
            let eqs = span.orthogonal_complement().basis().to_vec();
            let mut acc: HashMap<Cone, Rat> = HashMap::new();
            for c in members {
                let mut pieces = vec![c.cone.clone()];
                for a in &hyperplanes {
                    pieces = pieces.into_iter().flat_map(|p| split(&p, a, &eqs, self.dim)).collect();
                }
                for p in pieces {
                    *acc.entry(p).or_insert_with(Rat::zero) += &c.weight;
                }
            }
            cells.extend(
                acc.into_iter()
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(cone, weight)| WeightedCone { cone, weight }),
            );
        }
        cells.sort_by(|a, b| cone_key(&a.cone).cmp(&cone_key(&b.cone)));
        WeightedFan {
            ambient: self.ambient,
            space: self.space.clone(),
            dim: self.dim,
            cones: cells,
        }
    }

    /// Indicator fan of the support (weight 1 on every nonzero cell).
    pub fn support(&self) -> WeightedFan {
        let mut c = self.canonical();
        for w in &mut c.cones {
            w.weight = Rat::from_integer(1.into());
        }
        // overlaps of cells with opposite-sign pieces were already summed
        c
    }
}

/// Pieces of `c` on both sides of the hyperplane `a·x = 0` (full-dimensional
/// pieces only).
fn split(c: &Cone, a: &RVec, eqs: &[RVec], dim: usize) -> Vec<Cone> {
    let lin_ok = c.lineality().basis().iter().all(|l| dot(a, l).is_zero());
    if lin_ok {
        let signs: Vec<Rat> = c.rays().iter().map(|r| dot(a, r)).collect();
        if signs.iter().all(|s| !s.is_negative()) || signs.iter().all(|s| !s.is_positive()) {
            return vec![c.clone()];
        }
    }
    let mut out = Vec::with_capacity(2);
    for side in [a.clone(), neg(a)] {
        let mut ineq = c.facets().to_vec();
        ineq.push(side);
        let piece = Cone::from_inequalities(c.ambient(), &ineq, eqs);
        if piece.dim() == dim {
            out.push(piece);
        }
    }
    out
}

fn check_compatible(a: &WeightedFan, b: &WeightedFan) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch {
            expected: a.ambient,
            found: b.ambient,
        });
    }
    if a.space != b.space {
        return Err(Error::SpaceMismatch(a.space.dim(), b.space.dim()));
    }
    Ok(())
}

/// Sum of two `k`-dimensional weighted fans, in canonical form.
pub fn fan_add(a: &WeightedFan, b: &WeightedFan) -> Result<WeightedFan> {
    check_compatible(a, b)?;
    if a.dim != b.dim {
        return Err(Error::FanDimMismatch(a.dim, b.dim));
    }
    let mut all = a.clone();
    all.cones.extend(b.cones.iter().cloned());
    Ok(all.canonical())
}

/// Whether the two fans carry the same weights on every common cell.
pub fn fan_equivalent(a: &WeightedFan, b: &WeightedFan) -> Result<bool> {
    Ok(fan_add(a, &b.neg())?.is_empty())
}

/// Dual `k`-skeleton of `p`: dual cones of its `(m−k)`-faces weighted by the
/// faces' volumes.
pub fn dual_fan(p: &Polytope, k: usize) -> Result<WeightedFan> {
    let m = p.ambient();
    if k > m {
        return Err(Error::OutOfRange {
            what: "fan dimension",
            value: k as i64,
            lo: 0,
            hi: m as i64,
        });
    }
    if p.dim() < m - k {
        return Ok(WeightedFan::empty(m, k));
    }
    let cones = p
        .faces(m - k)?
        .into_iter()
        .map(|f| {
            let w = intrinsic_coordinate_volume(&f.polytope());
            (f.dual_cone, w)
        })
        .collect();
    WeightedFan::new(m, k, cones)
}

fn face_spans(f: &WeightedFan) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = Vec::new();
    for c in &f.cones {
        for s in c.cone.face_spans() {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Whether `e` avoids `V_F + V_G` for every pair of faces whose spans do not
/// fill the ambient space.
pub fn is_admissible(a: &WeightedFan, b: &WeightedFan, e: &[Rat]) -> bool {
    let sa = face_spans(a);
    let sb = face_spans(b);
    let m = a.ambient;
    for x in &sa {
        for y in &sb {
            let s = x.sum(y);
            if s.dim() < m && s.contains(e) {
                return false;
            }
        }
    }
    true
}

/// A rational point admissible for the pair of fans, deterministic in `seed`.
pub fn admissible_point(a: &WeightedFan, b: &WeightedFan, seed: u64) -> RVec {
    let m = a.ambient;
    let sa = face_spans(a);
    let sb = face_spans(b);
    let mut bad: Vec<Subspace> = Vec::new();
    for x in &sa {
        for y in &sb {
            let s = x.sum(y);
            if s.dim() < m && !bad.contains(&s) {
                bad.push(s);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound: i64 = 7;
    loop {
        for _ in 0..16 {
            let e: RVec = (0..m).map(|_| Rat::from_integer(rng.random_range(-bound..=bound).into())).collect();
            if bad.iter().all(|s| !s.contains(&e)) {
                return e;
            }
        }
        bound = bound.saturating_mul(10);
    }
}

/// The `e`-intersection `K ∩ᵉ L` of two fans in ℝ^m.
pub fn e_intersection(a: &WeightedFan, b: &WeightedFan, e: &[Rat]) -> Result<WeightedFan> {
    check_compatible(a, b)?;
    let m = a.ambient;
    if !a.space.is_full() {
        return Err(Error::SpaceMismatch(m, a.space.dim()));
    }
    if e.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: e.len(),
        });
    }
    let (p, q) = (a.dim, b.dim);
    if p + q < m {
        return Ok(WeightedFan::empty(m, 0));
    }
    if !is_admissible(a, b, e) {
        return Err(Error::Inadmissible);
    }
    let d = p + q - m;
    let norm = Rat::from_integer(binomial(m - d, m - p));
    let mut cells: Vec<(Cone, Rat)> = Vec::new();
    for kc in &a.cones {
        for lc in &b.cones {
            let (k, l) = (&kc.cone, &lc.cone);
            if k.span().sum(l.span()).dim() < m {
                continue;
            }
            let meet = k.intersection(l);
            if meet.dim() != d {
                continue;
            }
            let x = meet.relative_interior_point();
            // e must lie in T_x L − T_x K = L − K + ℝx
            let mut gens: Vec<RVec> = l.rays().to_vec();
            gens.extend(k.rays().iter().map(|r| neg(r)));
            let mut lin: Vec<RVec> = l.lineality().basis().to_vec();
            lin.extend(k.lineality().basis().iter().cloned());
            if x.iter().any(|v| !v.is_zero()) {
                lin.push(x);
            }
            if !cone_contains(&gens, &lin, e) {
                continue;
            }
            let w = meet.span().orthogonal_complement();
            let mut rows: Vec<RVec> = Vec::with_capacity(m - d);
            for v in k.span().orthogonal_complement().basis().iter().chain(l.span().orthogonal_complement().basis()) {
                rows.push(w.coordinates(v).expect("complements lie in the meet's complement"));
            }
            let factor = det(&rows).abs();
            let weight = &kc.weight * &lc.weight * factor / &norm;
            if !weight.is_zero() {
                cells.push((meet, weight));
            }
        }
    }
    Ok(WeightedFan::new(m, d, cells)?.canonical())
}

/// Stable intersection: the `e`-intersection at an admissible point, checked
/// against two further admissible points.
pub fn stable_product(a: &WeightedFan, b: &WeightedFan) -> Result<WeightedFan> {
    let first = e_intersection(a, b, &admissible_point(a, b, 0))?;
    for seed in [1u64, 2] {
        let other = e_intersection(a, b, &admissible_point(a, b, seed))?;
        if other.dim != first.dim || !fan_equivalent(&first, &other)? {
            return Err(Error::Unstable);
        }
    }
    Ok(first)
}

/// `U`-factorization: cones containing the anchor, projected to `U^⊥`.
pub fn factorize(fan: &WeightedFan, anchor: &Cone, u: &Subspace) -> Result<WeightedFan> {
    if !anchor.span().contains_subspace(u) {
        return Err(Error::NotInAnchorSpan);
    }
    let target = fan.space.intersection(&u.orthogonal_complement());
    let dim = fan.dim - u.dim().min(fan.dim);
    let mut cells = Vec::new();
    for c in &fan.cones {
        if !c.cone.contains_cone(anchor) {
            continue;
        }
        let img = c.cone.project(&target);
        if img.dim() == dim {
            cells.push((img, c.weight.clone()));
        }
    }
    WeightedFan::in_space(target, dim, cells)
}
