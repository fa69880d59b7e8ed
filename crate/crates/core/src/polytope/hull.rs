//! Canonical vertex-form polytopes, hulls and face lattices.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use super::cone::Cone;
use super::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::exactnum::linalg::rank_of;
use crate::exactnum::rat::{dot, neg, sub, Rat, RVec};
use crate::exactnum::subspace::Subspace;

/// A rational convex polytope given by its sorted, minimal vertex list.
#[derive(Clone)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<RVec>,
    lattice: OnceLock<Arc<FaceLattice>>,
}

impl std::fmt::Debug for Polytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vs: Vec<Vec<String>> = self.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        f.debug_struct("Polytope").field("ambient", &self.ambient).field("vertices", &vs).finish()
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl std::hash::Hash for Polytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.vertices.hash(state);
    }
}

impl PartialOrd for Polytope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polytope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, &self.vertices).cmp(&(other.ambient, &other.vertices))
    }
}

/// Facet data in ambient coordinates.
#[derive(Clone, Debug)]
pub struct Facet {
    pub vertex_ids: Vec<usize>,
    /// Outer normal lying in the tangent space of the polytope.
    pub normal: RVec,
}

#[derive(Clone, Debug)]
pub(crate) struct FaceRecord {
    pub vertex_ids: Vec<usize>,
    pub facet_ids: Vec<usize>,
    pub dim: usize,
}

/// Combinatorial structure of a polytope, computed once.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub(crate) dim: usize,
    pub(crate) tangent: Subspace,
    pub(crate) facets: Vec<Facet>,
    /// faces grouped by dimension
    pub(crate) by_dim: Vec<Vec<FaceRecord>>,
}

/// A face of a polytope together with its tangent space and dual cone.
#[derive(Clone, Debug)]
pub struct Face {
    pub vertex_ids: Vec<usize>,
    pub vertices: Vec<RVec>,
    pub dim: usize,
    /// `T_Λ`: the linear space parallel to the affine hull of the face.
    pub tangent: Subspace,
    /// `K_Λ`: functionals maximized on the whole face.
    pub dual_cone: Cone,
}

impl Face {
    pub fn polytope(&self) -> Polytope {
        Polytope::from_vertices_unchecked(self.vertices[0].len(), self.vertices.clone())
    }
}

struct HullData {
    vertex_ids: Vec<usize>,
    tangent: Subspace,
    /// facets as (tight point ids, normal in intrinsic coordinates)
    facets: Vec<(Vec<usize>, RVec)>,
}

/// Intrinsic hull computation on deduplicated points.
fn hull_data(points: &[RVec]) -> HullData {
    let m = points[0].len();
    let base = &points[0];
    let dirs: Vec<RVec> = points.iter().map(|p| sub(p, base)).collect();
    let tangent = Subspace::span(m, &dirs);
    let d = tangent.dim();
    if d == 0 {
        return HullData {
            vertex_ids: vec![0],
            tangent,
            facets: Vec::new(),
        };
    }
    let coords: Vec<RVec> = dirs.iter().map(|v| tangent.coordinates(v).expect("in tangent space")).collect();
    // facets a·c ≤ b are the extreme rays of {(a, b) : b − a·cᵢ ≥ 0}
    let rows: Vec<RVec> = coords
        .iter()
        .map(|c| {
            let mut r = neg(c);
            r.push(Rat::from_integer(1.into()));
            r
        })
        .collect();
    let desc = extreme_rays(&rows, d + 1);
    debug_assert!(desc.lineality.is_empty());
    let facets: Vec<(Vec<usize>, RVec)> = desc
        .rays
        .iter()
        .filter(|ray| ray[..d].iter().any(|x| !x.is_zero()))
        .map(|ray| {
            let a = &ray[..d];
            let b = &ray[d];
            let tight: Vec<usize> = (0..points.len()).filter(|&i| &dot(a, &coords[i]) == b).collect();
            (tight, a.to_vec())
        })
        .collect();
    let vertex_ids: Vec<usize> = (0..points.len())
        .filter(|&i| {
            let normals: Vec<RVec> = facets.iter().filter(|(t, _)| t.contains(&i)).map(|(_, a)| a.clone()).collect();
            rank_of(&normals) == d
        })
        .collect();
    HullData {
        vertex_ids,
        tangent,
        facets,
    }
}

impl Polytope {
    /// Convex hull of a nonempty point list.
    pub fn hull(points: &[RVec]) -> Result<Polytope> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyInput("hull needs at least one point"));
        };
        let m = first.len();
        if let Some(bad) = points.iter().find(|p| p.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.len(),
            });
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() == 1 {
            return Ok(Self::from_vertices_unchecked(m, pts));
        }
        let data = hull_data(&pts);
        let vertices: Vec<RVec> = data.vertex_ids.iter().map(|&i| pts[i].clone()).collect();
        Ok(Self::from_vertices_unchecked(m, vertices))
    }

    pub(crate) fn from_vertices_unchecked(ambient: usize, mut vertices: Vec<RVec>) -> Polytope {
        vertices.sort();
        vertices.dedup();
        Polytope {
            ambient,
            vertices,
            lattice: OnceLock::new(),
        }
    }

    pub fn point(p: RVec) -> Polytope {
        Self::from_vertices_unchecked(p.len(), vec![p])
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[RVec] {
        &self.vertices
    }

    pub fn lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| Arc::new(self.compute_lattice()))
    }

    /// Real affine dimension.
    pub fn dim(&self) -> usize {
        self.tangent().dim()
    }

    /// Linear space parallel to the affine hull.
    pub fn tangent(&self) -> Subspace {
        if self.lattice.get().is_some() {
            return self.lattice().tangent.clone();
        }
        let dirs: Vec<RVec> = self.vertices.iter().map(|v| sub(v, &self.vertices[0])).collect();
        Subspace::span(self.ambient, &dirs)
    }

    pub fn facets(&self) -> &[Facet] {
        &self.lattice().facets
    }

    fn compute_lattice(&self) -> FaceLattice {
        let n = self.vertices.len();
        let data = hull_data(&self.vertices);
        let d = data.tangent.dim();
        debug_assert_eq!(data.vertex_ids.len(), n);
        let tangent = data.tangent.clone();
        let facets: Vec<Facet> = data
            .facets
            .iter()
            .map(|(tight, a)| {
                let normal = ambient_functional(&tangent, a);
                Facet {
                    vertex_ids: tight.clone(),
                    normal: crate::exactnum::rat::primitive(&normal),
                }
            })
            .collect();
        let mut by_dim: Vec<Vec<FaceRecord>> = vec![Vec::new(); d + 1];
        let all: Vec<usize> = (0..n).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(all.clone());
        let mut queue = vec![all];
        let facet_sets: Vec<HashSet<usize>> = facets.iter().map(|f| f.vertex_ids.iter().copied().collect()).collect();
        while let Some(face) = queue.pop() {
            for fs in &facet_sets {
                let inter: Vec<usize> = face.iter().copied().filter(|i| fs.contains(i)).collect();
                if !inter.is_empty() && seen.insert(inter.clone()) {
                    queue.push(inter);
                }
            }
        }
        for ids in seen {
            let facet_ids: Vec<usize> = (0..facets.len())
                .filter(|&f| ids.iter().all(|i| facet_sets[f].contains(i)))
                .collect();
            let dirs: Vec<RVec> = ids.iter().map(|&i| sub(&self.vertices[i], &self.vertices[ids[0]])).collect();
            let dim = rank_of(&dirs);
            by_dim[dim].push(FaceRecord {
                vertex_ids: ids,
                facet_ids,
                dim,
            });
        }
        for level in &mut by_dim {
            level.sort_by(|a, b| a.vertex_ids.cmp(&b.vertex_ids));
        }
        FaceLattice {
            dim: d,
            tangent,
            facets,
            by_dim,
        }
    }

    /// All `d`-dimensional faces with tangent spaces and dual cones.
    pub fn faces(&self, d: usize) -> Result<Vec<Face>> {
        let lat = self.lattice();
        if d > lat.dim {
            return Err(Error::OutOfRange {
                what: "face dimension",
                value: d as i64,
                lo: 0,
                hi: lat.dim as i64,
            });
        }
        Ok(lat.by_dim[d].iter().map(|rec| self.make_face(rec)).collect())
    }

    pub(crate) fn make_face(&self, rec: &FaceRecord) -> Face {
        let lat = self.lattice();
        let vertices: Vec<RVec> = rec.vertex_ids.iter().map(|&i| self.vertices[i].clone()).collect();
        let dirs: Vec<RVec> = vertices.iter().map(|v| sub(v, &vertices[0])).collect();
        let tangent = Subspace::span(self.ambient, &dirs);
        let normals: Vec<RVec> = rec.facet_ids.iter().map(|&f| lat.facets[f].normal.clone()).collect();
        let lineality = lat.tangent.orthogonal_complement();
        let dual_cone = Cone::from_generators(self.ambient, &normals, lineality.basis());
        Face {
            vertex_ids: rec.vertex_ids.clone(),
            vertices,
            dim: rec.dim,
            tangent,
            dual_cone,
        }
    }

    /// Number of faces per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.lattice().by_dim.iter().map(Vec::len).collect()
    }

    /// Face maximizing the functional `w`.
    pub fn argmax_face(&self, w: &[Rat]) -> Polytope {
        let vals: Vec<Rat> = self.vertices.iter().map(|v| dot(w, v)).collect();
        let best = vals.iter().max().expect("nonempty").clone();
        let vs: Vec<RVec> = self
            .vertices
            .iter()
            .zip(&vals)
            .filter(|(_, x)| **x == best)
            .map(|(v, _)| v.clone())
            .collect();
        Polytope::from_vertices_unchecked(self.ambient, vs)
    }

    /// Index of the face with exactly this vertex set, if any.
    pub(crate) fn find_face(&self, vertices: &[RVec]) -> Option<&FaceRecord> {
        let index: HashMap<&RVec, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut ids: Vec<usize> = vertices.iter().map(|v| index.get(v).copied()).collect::<Option<_>>()?;
        ids.sort();
        ids.dedup();
        let dirs: Vec<RVec> = ids.iter().map(|&i| sub(&self.vertices[i], &self.vertices[ids[0]])).collect();
        let d = rank_of(&dirs);
        self.lattice().by_dim.get(d)?.iter().find(|r| r.vertex_ids == ids)
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn translate(&self, t: &[Rat]) -> Polytope {
        let vs = self.vertices.iter().map(|v| crate::exactnum::rat::add(v, t)).collect();
        Polytope::from_vertices_unchecked(self.ambient, vs)
    }

    /// Dilation by a nonnegative rational.
    pub fn scale(&self, s: &Rat) -> Polytope {
        assert!(*s >= Rat::zero(), "dilation factor must be nonnegative");
        if s.is_zero() {
            return Polytope::point(vec![Rat::zero(); self.ambient]);
        }
        let vs = self.vertices.iter().map(|v| crate::exactnum::rat::scale(v, s)).collect();
        Polytope::from_vertices_unchecked(self.ambient, vs)
    }

    /// Translate so that the lexicographically smallest vertex is the origin.
    pub fn normalized(&self) -> Polytope {
        let t = neg(&self.vertices[0]);
        self.translate(&t)
    }

    /// Image under the linear map whose rows are given.
    pub fn linear_image(&self, rows: &[RVec]) -> Result<Polytope> {
        if let Some(r) = rows.iter().find(|r| r.len() != self.ambient) {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: r.len(),
            });
        }
        let pts: Vec<RVec> = self
            .vertices
            .iter()
            .map(|v| rows.iter().map(|r| dot(r, v)).collect())
            .collect();
        if rows.is_empty() {
            return Ok(Polytope::point(Vec::new()));
        }
        Polytope::hull(&pts)
    }

    /// Whether `x` lies in the polytope (exact LP feasibility).
    pub fn contains_point(&self, x: &[Rat]) -> bool {
        let n = self.vertices.len();
        let mut a: Vec<RVec> = (0..self.ambient).map(|i| self.vertices.iter().map(|v| v[i].clone()).collect()).collect();
        a.push(vec![Rat::from_integer(1.into()); n]);
        let mut b = x.to_vec();
        b.push(Rat::from_integer(1.into()));
        crate::exactnum::lp::feasible_point(&a, &b, n).is_some()
    }
}

/// The vector `n` in `tangent` with `n·bᵢ`-pairing reproducing the coordinate
/// functional `a` on the canonical basis `bᵢ`.
fn ambient_functional(tangent: &Subspace, a: &[Rat]) -> RVec {
    // n = Σ cⱼ bⱼ with Σ cⱼ (bⱼ·bᵢ) = aᵢ
    let g = crate::exactnum::linalg::gram(tangent.basis(), tangent.basis());
    let c = crate::exactnum::linalg::solve_linear(&g, a, tangent.dim()).expect("Gram matrix is invertible");
    crate::exactnum::linalg::combine(&c, tangent.basis(), tangent.ambient())
}
