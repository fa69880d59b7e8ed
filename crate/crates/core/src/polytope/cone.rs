//! Rational polyhedral cones in both representations.

use std::collections::{BTreeSet, HashSet};

use num_traits::{Signed, Zero};

use super::dd::extreme_rays;
use crate::exactnum::rat::{dot, neg, primitive, to_f64, Rat, RVec};
use crate::exactnum::subspace::Subspace;

/// A convex polyhedral cone, canonicalized: rays are primitive, orthogonal to
/// the lineality space and sorted; facet normals likewise.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient: usize,
    rays: Vec<RVec>,
    lineality: Subspace,
    span: Subspace,
    /// Facet inequalities `a·x ≥ 0`, each `a` lying in `span`.
    facets: Vec<RVec>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.lineality == other.lineality && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl std::hash::Hash for Cone {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.lineality.hash(state);
        self.rays.hash(state);
    }
}

impl Cone {
    /// Cone generated by `generators` plus the linear span of `lineality`.
    pub fn from_generators(ambient: usize, generators: &[RVec], lineality: &[RVec]) -> Cone {
        // facets are the extreme rays of the dual cone
        let mut dual_rows: Vec<RVec> = generators.to_vec();
        for l in lineality {
            dual_rows.push(l.clone());
            dual_rows.push(neg(l));
        }
        if dual_rows.is_empty() {
            return Cone::zero(ambient);
        }
        let dual = extreme_rays(&dual_rows, ambient);
        Self::from_h(ambient, dual.rays, &dual.lineality)
    }

    /// Cone `{x : aᵢ·x ≥ 0, e_j·x = 0}`.
    pub fn from_inequalities(ambient: usize, inequalities: &[RVec], equations: &[RVec]) -> Cone {
        let mut rows = inequalities.to_vec();
        for e in equations {
            rows.push(e.clone());
            rows.push(neg(e));
        }
        if rows.is_empty() {
            return Cone::full(ambient);
        }
        let prim = extreme_rays(&rows, ambient);
        Self::from_generators(ambient, &prim.rays, &prim.lineality)
    }

    fn from_h(ambient: usize, facets_raw: Vec<RVec>, equations: &[RVec]) -> Cone {
        let mut rows = facets_raw.clone();
        for e in equations {
            rows.push(e.clone());
            rows.push(neg(e));
        }
        let prim = if rows.is_empty() {
            super::dd::RayDescription {
                rays: Vec::new(),
                lineality: (0..ambient).map(|i| crate::exactnum::rat::unit(ambient, i)).collect(),
            }
        } else {
            extreme_rays(&rows, ambient)
        };
        let lineality = Subspace::span(ambient, &prim.lineality);
        let mut span_vecs = prim.rays.clone();
        span_vecs.extend(prim.lineality.iter().cloned());
        let span = Subspace::span(ambient, &span_vecs);
        // facet normals projected into the span, primitive, with redundant ones dropped
        let mut facets: Vec<RVec> = facets_raw
            .iter()
            .map(|a| primitive(&span.project(a)))
            .filter(|a| !a.iter().all(Zero::is_zero))
            .collect();
        facets.sort();
        facets.dedup();
        Cone {
            ambient,
            rays: prim.rays,
            lineality,
            span,
            facets,
        }
    }

    pub fn zero(ambient: usize) -> Cone {
        Cone {
            ambient,
            rays: Vec::new(),
            lineality: Subspace::zero(ambient),
            span: Subspace::zero(ambient),
            facets: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Cone {
        Cone {
            ambient,
            rays: Vec::new(),
            lineality: Subspace::full(ambient),
            span: Subspace::full(ambient),
            facets: Vec::new(),
        }
    }

    /// The linear subspace as a cone.
    pub fn from_subspace(s: &Subspace) -> Cone {
        Cone {
            ambient: s.ambient(),
            rays: Vec::new(),
            lineality: s.clone(),
            span: s.clone(),
            facets: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn rays(&self) -> &[RVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &Subspace {
        &self.lineality
    }

    /// `V_K`, the linear span of the cone.
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn facets(&self) -> &[RVec] {
        &self.facets
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_zero()
    }

    /// All generators: rays plus `±` lineality basis vectors.
    pub fn generators(&self) -> Vec<RVec> {
        let mut g = self.rays.clone();
        for l in self.lineality.basis() {
            g.push(l.clone());
            g.push(neg(l));
        }
        g
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.span.contains(x) && self.facets.iter().all(|a| !dot(a, x).is_negative())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn facets_f64(&self) -> Vec<Vec<f64>> {
        self.facets.iter().map(|a| a.iter().map(to_f64).collect()).collect()
    }

    /// A point in the relative interior.
    pub fn relative_interior_point(&self) -> RVec {
        let mut p = vec![Rat::zero(); self.ambient];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        let mut ineq = self.facets.clone();
        ineq.extend(other.facets.iter().cloned());
        let mut eqs = self.span.orthogonal_complement().basis().to_vec();
        eqs.extend(other.span.orthogonal_complement().basis().iter().cloned());
        Cone::from_inequalities(self.ambient, &ineq, &eqs)
    }

    /// Image under orthogonal projection onto `target`.
    pub fn project(&self, target: &Subspace) -> Cone {
        let rays: Vec<RVec> = self.rays.iter().map(|r| target.project(r)).collect();
        let lin: Vec<RVec> = self.lineality.basis().iter().map(|l| target.project(l)).collect();
        Cone::from_generators(self.ambient, &rays, &lin)
    }

    /// Linear spans of all nonempty faces (including the cone itself).
    pub fn face_spans(&self) -> Vec<Subspace> {
        let lin = self.lineality.basis().to_vec();
        let span_of = |ids: &BTreeSet<usize>| {
            let mut v: Vec<RVec> = ids.iter().map(|&i| self.rays[i].clone()).collect();
            v.extend(lin.iter().cloned());
            Subspace::span(self.ambient, &v)
        };
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|a| (0..self.rays.len()).filter(|&i| dot(a, &self.rays[i]).is_zero()).collect())
            .collect();
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        let mut queue = vec![all.clone()];
        seen.insert(all);
        while let Some(f) = queue.pop() {
            for g in &facet_sets {
                let i: BTreeSet<usize> = f.intersection(g).copied().collect();
                if seen.insert(i.clone()) {
                    queue.push(i);
                }
            }
        }
        let mut spans: Vec<Subspace> = seen.iter().map(span_of).collect();
        spans.sort_by_key(|s| (s.dim(), s.basis().to_vec()));
        spans.dedup();
        spans
    }
}
