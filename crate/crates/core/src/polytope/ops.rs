//! Minkowski sums, volumes, mixed volumes and ranks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::hull::{Face, FaceRecord, Polytope};
use crate::error::{Error, Result};
use crate::exactnum::linalg::det;
use crate::exactnum::rat::{add, binomial, dot, factorial, sub, Rat, RVec};
use crate::exactnum::radical::Radical;
use crate::exactnum::subspace::Subspace;

fn check_ambient(ps: &[Polytope]) -> Result<usize> {
    let Some(first) = ps.first() else {
        return Err(Error::EmptyInput("no polytopes given"));
    };
    let m = first.ambient();
    if let Some(p) = ps.iter().find(|p| p.ambient() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: p.ambient(),
        });
    }
    Ok(m)
}

/// Minkowski sum of a nonempty list of polytopes.
pub fn minkowski_sum(ps: &[Polytope]) -> Result<Polytope> {
    let m = check_ambient(ps)?;
    let mut acc = ps[0].clone();
    for p in &ps[1..] {
        let mut pts = Vec::with_capacity(acc.vertices().len() * p.vertices().len());
        for a in acc.vertices() {
            for b in p.vertices() {
                pts.push(add(a, b));
            }
        }
        acc = Polytope::hull(&pts)?;
    }
    debug_assert_eq!(acc.ambient(), m);
    Ok(acc)
}

/// Nonnegative integer combination `Σ kᵢ Pᵢ`.
pub fn minkowski_combination(ps: &[Polytope], ks: &[usize]) -> Result<Polytope> {
    let m = check_ambient(ps)?;
    let mut terms: Vec<Polytope> = Vec::new();
    for (p, &k) in ps.iter().zip(ks) {
        if k > 0 {
            terms.push(p.scale(&Rat::from_integer(BigInt::from(k))));
        }
    }
    if terms.is_empty() {
        return Ok(Polytope::point(vec![Rat::zero(); m]));
    }
    minkowski_sum(&terms)
}

/// Faces `Λᵢ ⊂ Δᵢ` whose Minkowski sum is the face `f` of `ΣΔᵢ`.
pub fn face_summands(ps: &[Polytope], f: &Face) -> Result<Vec<Face>> {
    let sum = minkowski_sum(ps)?;
    let rec = sum.find_face(&f.vertices).ok_or(Error::NotAFace)?.clone();
    let face = sum.make_face(&rec);
    let w = face.dual_cone.relative_interior_point();
    let parts: Vec<Polytope> = ps.iter().map(|p| p.argmax_face(&w)).collect();
    if minkowski_sum(&parts)? != face.polytope() {
        return Err(Error::NotAFace);
    }
    ps.iter()
        .zip(&parts)
        .map(|(p, part)| {
            let r = p.find_face(part.vertices()).ok_or(Error::NotAFace)?;
            Ok(p.make_face(r))
        })
        .collect()
}

/// Coordinate volume of a full-dimensional hull in ℝᵏ given by points; 0 if
/// the points do not span.
pub(crate) fn coordinate_volume(points: &[RVec], k: usize) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let Ok(p) = Polytope::hull(points) else {
        return Rat::zero();
    };
    if p.dim() < k {
        return Rat::zero();
    }
    intrinsic_coordinate_volume(&p)
}

/// Volume of `p` measured in the coordinates of the canonical basis of its
/// tangent space (pulling triangulation over the face lattice).
pub(crate) fn intrinsic_coordinate_volume(p: &Polytope) -> Rat {
    let lat = p.lattice();
    let d = lat.dim;
    if d == 0 {
        return Rat::one();
    }
    let coords: Vec<RVec> = p
        .vertices()
        .iter()
        .map(|v| lat.tangent.coordinates(&sub(v, &p.vertices()[0])).expect("vertex in affine hull"))
        .collect();
    let top = &lat.by_dim[d][0];
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    triangulate(lat, top, &mut Vec::new(), &mut simplices);
    let mut total = Rat::zero();
    for s in simplices {
        let rows: Vec<RVec> = s[1..].iter().map(|&i| sub(&coords[i], &coords[s[0]])).collect();
        total += det(&rows).abs();
    }
    total / Rat::from_integer(factorial(d))
}

fn triangulate(lat: &super::hull::FaceLattice, face: &FaceRecord, apexes: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if face.dim == 0 {
        let mut s = apexes.clone();
        s.push(face.vertex_ids[0]);
        out.push(s);
        return;
    }
    let apex = face.vertex_ids[0];
    apexes.push(apex);
    for sub in &lat.by_dim[face.dim - 1] {
        if !sub.vertex_ids.contains(&apex) && sub.vertex_ids.iter().all(|v| face.vertex_ids.contains(v)) {
            triangulate(lat, sub, apexes, out);
        }
    }
    apexes.pop();
}

/// Intrinsic `dim P`-volume, exact as `r·√s`.
pub fn volume(p: &Polytope) -> Radical {
    let r = intrinsic_coordinate_volume(p);
    Radical::new(r, &p.tangent().gram_det())
}

/// Sum of the tangent spaces of the polytopes.
pub fn common_tangent(ps: &[Polytope]) -> Subspace {
    let m = ps.first().map_or(0, Polytope::ambient);
    ps.iter().fold(Subspace::zero(m), |acc, p| acc.sum(&p.tangent()))
}

/// Mixed volume of `k` polytopes whose tangent spaces lie in `space`
/// (`dim space = k`), measured in coordinates of the canonical basis of `space`.
pub fn mixed_volume_in(ps: &[Polytope], space: &Subspace) -> Result<Rat> {
    let k = ps.len();
    if space.dim() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: space.dim(),
        });
    }
    if k == 0 {
        return Ok(Rat::one());
    }
    // translate each polytope into the space and group equal ones
    let mut groups: BTreeMap<Vec<RVec>, usize> = BTreeMap::new();
    for p in ps {
        let base = &p.vertices()[0];
        let mut pts = Vec::with_capacity(p.vertices().len());
        for v in p.vertices() {
            pts.push(space.coordinates(&sub(v, base)).ok_or(Error::SpaceMismatch(space.dim(), p.dim()))?);
        }
        pts.sort();
        *groups.entry(pts).or_insert(0) += 1;
    }
    let shapes: Vec<(Vec<RVec>, usize)> = groups.into_iter().collect();
    if shapes.iter().any(|(s, _)| s.len() == 1) {
        // a point summand makes the mixed volume vanish
        return Ok(Rat::zero());
    }
    let mut total = Rat::zero();
    let mut a = vec![0usize; shapes.len()];
    loop {
        // next multi-index in the box Π [0, mᵢ]
        let mut i = 0;
        while i < a.len() && a[i] == shapes[i].1 {
            a[i] = 0;
            i += 1;
        }
        if i == a.len() {
            break;
        }
        a[i] += 1;
        let used: usize = a.iter().sum();
        let mut weight = BigInt::one();
        for (ai, (_, mi)) in a.iter().zip(&shapes) {
            weight *= binomial(*mi, *ai);
        }
        if (k - used) % 2 == 1 {
            weight = -weight;
        }
        let pts = scaled_sum_points(&shapes, &a, k);
        total += Rat::from_integer(weight) * coordinate_volume(&pts, k);
    }
    Ok(total / Rat::from_integer(factorial(k)))
}

fn scaled_sum_points(shapes: &[(Vec<RVec>, usize)], a: &[usize], k: usize) -> Vec<RVec> {
    let mut pts: Vec<RVec> = vec![vec![Rat::zero(); k]];
    for ((verts, _), &ai) in shapes.iter().zip(a) {
        if ai == 0 {
            continue;
        }
        let s = Rat::from_integer(BigInt::from(ai));
        let mut next = Vec::with_capacity(pts.len() * verts.len());
        for p in &pts {
            for v in verts {
                next.push(p.iter().zip(v).map(|(x, y)| x + &s * y).collect::<RVec>());
            }
        }
        next.sort();
        next.dedup();
        pts = Polytope::hull(&next).map(|h| h.vertices().to_vec()).unwrap_or(next);
    }
    pts
}

/// Mixed volume of `k` polytopes living (up to translation) in a common
/// `k`-dimensional subspace; 0 when their tangent spaces span less.
pub fn mixed_volume(ps: &[Polytope]) -> Result<Radical> {
    check_ambient(ps)?;
    let k = ps.len();
    let t = common_tangent(ps);
    if t.dim() < k {
        return Ok(Radical::zero());
    }
    if t.dim() > k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: t.dim(),
        });
    }
    let r = mixed_volume_in(ps, &t)?;
    Ok(Radical::new(r, &t.gram_det()))
}

/// `max_{x∈P} ⟨v, x⟩`.
pub fn support_function(p: &Polytope, v: &[Rat]) -> Rat {
    p.vertices().iter().map(|x| dot(v, x)).max().expect("nonempty polytope")
}

fn min_over_subsets(ps: &[Polytope], dim_of: impl Fn(&Subspace) -> usize) -> i64 {
    let tangents: Vec<Subspace> = ps.iter().map(Polytope::tangent).collect();
    let m = ps.first().map_or(0, Polytope::ambient);
    let mut best = i64::MAX;
    for mask in 1u64..(1u64 << ps.len()) {
        let mut s = Subspace::zero(m);
        for (i, t) in tangents.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s = s.sum(t);
            }
        }
        best = best.min(dim_of(&s) as i64 - mask.count_ones() as i64);
    }
    best
}

/// `min_S dim(Σ_{i∈S} Δᵢ) − |S|` over nonempty subsets.
pub fn rank(ps: &[Polytope]) -> Result<i64> {
    check_ambient(ps)?;
    Ok(min_over_subsets(ps, Subspace::dim))
}

/// Same minimum with complex affine dimension of the sums in ℂⁿ.
pub fn complex_rank(ps: &[Polytope]) -> Result<i64> {
    let m = check_ambient(ps)?;
    if m % 2 != 0 {
        return Err(Error::Invalid(format!("ambient dimension {m} is odd")));
    }
    Ok(min_over_subsets(ps, Subspace::complex_hull_dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::{int, rat, rvec};

    fn seg(a: &[i64], b: &[i64]) -> Polytope {
        Polytope::hull(&[rvec(a), rvec(b)]).unwrap()
    }

    fn square() -> Polytope {
        Polytope::hull(&[rvec(&[0, 0]), rvec(&[1, 0]), rvec(&[0, 1]), rvec(&[1, 1])]).unwrap()
    }

    #[test]
    fn sums() {
        assert_eq!(minkowski_sum(&[seg(&[0, 0], &[1, 0]), seg(&[0, 0], &[0, 1])]).unwrap(), square());
        let p = Polytope::point(rvec(&[2, 3]));
        assert_eq!(minkowski_sum(&[square(), p]).unwrap(), square().translate(&rvec(&[2, 3])));
        let t = Polytope::hull(&[rvec(&[0, 0]), rvec(&[1, 0]), rvec(&[0, 1])]).unwrap();
        assert_eq!(minkowski_sum(&[t.clone(), t.clone()]).unwrap(), t.scale(&int(2)));
        assert!(minkowski_sum(&[square(), Polytope::point(rvec(&[1]))]).is_err());
    }

    #[test]
    fn square_summands() {
        let parts = [seg(&[0, 0], &[1, 0]), seg(&[0, 0], &[0, 1])];
        let sq = minkowski_sum(&parts).unwrap();
        let top = sq.faces(1).unwrap().into_iter().find(|f| f.vertices == vec![rvec(&[0, 1]), rvec(&[1, 1])]).unwrap();
        let s = face_summands(&parts, &top).unwrap();
        assert_eq!(s[0].dim, 1);
        assert_eq!(s[1].vertices, vec![rvec(&[0, 1])]);
        let corner = sq.faces(0).unwrap().into_iter().find(|f| f.vertices == vec![rvec(&[1, 1])]).unwrap();
        let s = face_summands(&parts, &corner).unwrap();
        assert_eq!(s[0].vertices, vec![rvec(&[1, 0])]);
        assert_eq!(s[1].vertices, vec![rvec(&[0, 1])]);
        let bogus = square().faces(1).unwrap().remove(0);
        let shifted = [parts[0].translate(&rvec(&[5, 5])), parts[1].clone()];
        assert!(matches!(face_summands(&shifted, &bogus), Err(Error::NotAFace)));
    }

    #[test]
    fn volumes() {
        assert_eq!(volume(&square()), Radical::rational(int(1)));
        assert_eq!(volume(&seg(&[0, 0], &[3, 4])), Radical::rational(int(5)));
        assert_eq!(volume(&Polytope::point(rvec(&[1, 1]))), Radical::rational(int(1)));
        let diag = seg(&[0, 0], &[1, 1]);
        assert_eq!(volume(&diag), Radical::sqrt(&int(2)));
        let t = Polytope::hull(&[rvec(&[0, 0, 0]), rvec(&[1, 0, 0]), rvec(&[0, 1, 0]), rvec(&[0, 0, 1])]).unwrap();
        assert_eq!(volume(&t), Radical::rational(rat(1, 6)));
    }

    #[test]
    fn mixed_volumes() {
        let a = seg(&[0, 0], &[1, 0]);
        let b = seg(&[0, 0], &[0, 1]);
        assert_eq!(mixed_volume(&[a.clone(), b]).unwrap(), Radical::rational(rat(1, 2)));
        assert_eq!(mixed_volume(&[square(), square()]).unwrap(), Radical::rational(int(1)));
        assert!(mixed_volume(&[a.clone(), seg(&[0, 0], &[2, 0])]).unwrap().is_zero());
        assert!(mixed_volume(&[square()]).is_err());
    }

    #[test]
    fn support_values() {
        assert_eq!(support_function(&square(), &rvec(&[1, 1])), int(2));
        assert_eq!(support_function(&square(), &rvec(&[0, 0])), int(0));
        assert_eq!(support_function(&seg(&[0, 0], &[2, 3]), &rvec(&[1, -1])), int(0));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[seg(&[0, 0], &[1, 0]), seg(&[0, 0], &[0, 1])]).unwrap(), 0);
        assert_eq!(rank(&[seg(&[0, 0], &[1, 0]), seg(&[0, 0], &[2, 0])]).unwrap(), -1);
        assert_eq!(rank(&[square(), seg(&[0, 0], &[1, 0])]).unwrap(), 0);
        let x = seg(&[0, 0, 0, 0], &[1, 0, 0, 0]);
        let ix = seg(&[0, 0, 0, 0], &[0, 1, 0, 0]);
        let y = seg(&[0, 0, 0, 0], &[0, 0, 1, 0]);
        assert_eq!(complex_rank(&[x.clone(), ix]).unwrap(), -1);
        assert_eq!(complex_rank(&[x, y]).unwrap(), 0);
        assert_eq!(complex_rank(&[Polytope::point(rvec(&[0, 0]))]).unwrap(), -1);
    }
}
