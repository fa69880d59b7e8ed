//! Linear subspaces of ℝ^m, points of ℂⁿ* and the angle between subspaces.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{det, gram, gram_det, inverse, kernel, mat_vec, rank_of, rref};
use super::rat::{dot, is_zero, to_f64, Rat, RVec};
use crate::error::{Error, Result};

/// A point of ℂⁿ* stored as `(Re z₁, Im z₁, …, Re zₙ, Im zₙ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussianVector {
    #[serde(with = "super::rat::serde_rat_vec")]
    coords: RVec,
}

impl GaussianVector {
    pub fn new(coords: RVec) -> Result<Self> {
        if coords.len() % 2 != 0 {
            return Err(Error::Invalid(format!(
                "a complex vector needs an even number of real coordinates, got {}",
                coords.len()
            )));
        }
        Ok(GaussianVector { coords })
    }

    pub fn from_parts(re: &[Rat], im: &[Rat]) -> Self {
        let coords = re.iter().zip(im).flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        GaussianVector { coords }
    }

    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> RVec {
        self.coords
    }

    pub fn re(&self, j: usize) -> &Rat {
        &self.coords[2 * j]
    }

    pub fn im(&self, j: usize) -> &Rat {
        &self.coords[2 * j + 1]
    }

    pub fn is_real(&self) -> bool {
        (0..self.n()).all(|j| self.im(j).is_zero())
    }

    /// Multiplication by `i`: `(x, y) ↦ (−y, x)` in every complex coordinate.
    pub fn complex_rotate(&self) -> GaussianVector {
        GaussianVector {
            coords: complex_rotate(&self.coords),
        }
    }
}

/// Multiplication by `i` on a raw `2n`-vector.
pub fn complex_rotate(v: &[Rat]) -> RVec {
    assert!(v.len() % 2 == 0, "complex rotation needs an even dimension");
    v.chunks(2).flat_map(|c| [-c[1].clone(), c[0].clone()]).collect()
}

/// A linear subspace, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<RVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Builds a subspace from a basis that must be linearly independent.
    pub fn new(ambient: usize, basis: Vec<RVec>) -> Result<Self> {
        for b in &basis {
            if b.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: b.len(),
                });
            }
        }
        if rank_of(&basis) != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Self::span(ambient, &basis))
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: &[RVec]) -> Self {
        let nonzero: Vec<RVec> = vectors.iter().filter(|v| !is_zero(v)).cloned().collect();
        let (basis, pivots) = rref(&nonzero, ambient);
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| super::rat::unit(ambient, i)).collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical (reduced echelon) basis.
    pub fn basis(&self) -> &[RVec] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rat]) -> Option<RVec> {
        let c: RVec = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = super::linalg::combine(&c, &self.basis, self.ambient);
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        let k = kernel(&self.basis, self.ambient);
        Subspace::span(self.ambient, &k)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &v)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &[Rat]) -> RVec {
        if self.basis.is_empty() {
            return vec![Rat::zero(); self.ambient];
        }
        let g = gram(&self.basis, &self.basis);
        let ginv = inverse(&g).expect("canonical basis is independent");
        let bv = mat_vec(&self.basis, v);
        let c = mat_vec(&ginv, &bv);
        super::linalg::combine(&c, &self.basis, self.ambient)
    }

    /// Gram determinant of the canonical basis: the squared volume of its unit cell.
    pub fn gram_det(&self) -> Rat {
        gram_det(&self.basis)
    }

    pub fn complex_rotate(&self) -> Subspace {
        let rot: Vec<RVec> = self.basis.iter().map(|b| complex_rotate(b)).collect();
        Subspace::span(self.ambient, &rot)
    }

    /// Complex dimension of the smallest complex subspace containing this one.
    pub fn complex_hull_dim(&self) -> usize {
        self.sum(&self.complex_rotate()).dim() / 2
    }

    /// Orthonormal basis in floating point (Gram–Schmidt on the canonical basis).
    pub fn orthonormal_f64(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for b in &self.basis {
            let mut v: Vec<f64> = b.iter().map(to_f64).collect();
            for _ in 0..2 {
                for q in &out {
                    let d: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
                    for (x, y) in v.iter_mut().zip(q) {
                        *x -= d * y;
                    }
                }
            }
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            out.push(v.iter().map(|x| x / n).collect());
        }
        out
    }
}

/// Exact squared cosine between equidimensional subspaces:
/// `det(G_AB)² / (det G_AA · det G_BB)`.
pub fn subspace_cosine_squared(a: &Subspace, b: &Subspace) -> Result<Rat> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch {
            expected: a.ambient,
            found: b.ambient,
        });
    }
    if a.dim() == 0 {
        return Ok(Rat::one());
    }
    let gab = det(&gram(&a.basis, &b.basis));
    Ok(&gab * &gab / (a.gram_det() * b.gram_det()))
}

/// Volume distortion factor of the orthogonal projection between two
/// `k`-dimensional subspaces, in `[0, 1]`.
pub fn subspace_cosine(a: &Subspace, b: &Subspace) -> Result<f64> {
    let c2 = subspace_cosine_squared(a, b)?;
    Ok(to_f64(&c2).sqrt().min(1.0))
}

/// Unsigned volume of the parallelepiped spanned by `vectors` inside their span.
pub fn parallelepiped_volume_squared(vectors: &[RVec]) -> Rat {
    gram_det(vectors).abs()
}

/// Checks `⟨aᵢ, bⱼ⟩ = δᵢⱼ`.
pub fn are_dual_bases(a: &[RVec], b: &[RVec]) -> bool {
    a.len() == b.len()
        && a.iter().enumerate().all(|(i, x)| {
            b.iter()
                .enumerate()
                .all(|(j, y)| dot(x, y) == if i == j { Rat::one() } else { Rat::zero() })
        })
}

/// Given a basis `a` of an `n`-dimensional subspace `A` and an `n`-dimensional
/// subspace `B` paired non-degenerately with `A`, returns the basis of `B`
/// dual to `a`.
pub fn dual_basis_in(a: &[RVec], b: &Subspace) -> Option<Vec<RVec>> {
    let n = a.len();
    if b.dim() != n {
        return None;
    }
    // pairing matrix P_ij = ⟨aᵢ, b_j⟩; dual vectors are rows of (P⁻¹)ᵀ B
    let p = gram(a, b.basis());
    let pinv = inverse(&p)?;
    Some(
        (0..n)
            .map(|i| {
                let coeffs: RVec = (0..n).map(|j| pinv[j][i].clone()).collect();
                super::linalg::combine(&coeffs, b.basis(), b.ambient())
            })
            .collect(),
    )
}
