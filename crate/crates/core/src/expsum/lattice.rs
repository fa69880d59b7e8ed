//! Zero sets `{e^{⟨z,λⱼ⟩} = aⱼ}` as lattice translates and their density.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{exact_tag, ExpScale};
use crate::error::{Error, Result};
use crate::exactnum::linalg::{gram_det, rank_of, solve_linear};
use crate::exactnum::rat::{dot, fmt_rat, to_f64, Rat, RVec};
use crate::exactnum::radical::{Radical, SurdSum};
use crate::exactnum::subspace::{subspace_cosine_squared, GaussianVector, Subspace};

/// `v` with `Re⟨z, λ⟩ = z·v` for the bilinear pairing `⟨z, λ⟩ = Σ z_k λ_k`.
fn re_pairing(l: &GaussianVector) -> RVec {
    (0..l.n()).flat_map(|k| [l.re(k).clone(), -l.im(k).clone()]).collect()
}

/// `v` with `Im⟨z, λ⟩ = z·v`.
fn im_pairing(l: &GaussianVector) -> RVec {
    (0..l.n()).flat_map(|k| [l.im(k).clone(), l.re(k).clone()]).collect()
}

fn fmt_complex_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v
        .chunks(2)
        .map(|c| match (c[0].is_zero(), c[1].is_zero()) {
            (_, true) => fmt_rat(&c[0]),
            (true, false) => format!("{}i", fmt_rat(&c[1])),
            _ => format!("{}+{}i", fmt_rat(&c[0]), fmt_rat(&c[1])),
        })
        .collect();
    format!("({})", parts.join(", "))
}

/// Characters `λ₁, …, λₙ`, the real subspace `L = {Re⟨z,λⱼ⟩ = 0}` and the
/// dual basis `μ` of `L` with `⟨μ_q, λ_p⟩ = i·δ_pq` (for the unscaled `λ`).
#[derive(Clone, Debug)]
pub struct LatticeSpec {
    pub n: usize,
    pub scale: ExpScale,
    pub lambdas: Vec<GaussianVector>,
    pub l: Subspace,
    pub mus: Vec<GaussianVector>,
}

impl LatticeSpec {
    /// Generators `2π μ_q / s` of the period lattice, where `s` is the scale.
    pub fn generators_f64(&self) -> Vec<Vec<num_complex::Complex64>> {
        let f = std::f64::consts::TAU / self.scale.to_f64();
        self.mus
            .iter()
            .map(|m| (0..self.n).map(|k| num_complex::Complex64::new(to_f64(m.re(k)) * f, to_f64(m.im(k)) * f)).collect())
            .collect()
    }

    /// Exact check that `⟨μ_q, λ_p⟩ = i·δ_pq`, so `e^{⟨s, λ_p⟩} = 1` on every
    /// lattice generator `s`.
    pub fn verify(&self) -> bool {
        self.mus.iter().enumerate().all(|(q, mu)| {
            self.lambdas.iter().enumerate().all(|(p, lam)| {
                let re = dot(mu.coords(), &re_pairing(lam));
                let im = dot(mu.coords(), &im_pairing(lam));
                re.is_zero() && im == if p == q { Rat::one() } else { Rat::zero() }
            })
        })
    }
}

/// Build the lattice data for the characters `λ` (each multiplied by `scale`).
pub fn lattice_from_characters(lambdas: &[GaussianVector], scale: ExpScale) -> Result<LatticeSpec> {
    let Some(first) = lambdas.first() else {
        return Err(Error::EmptyInput("no characters given"));
    };
    let n = first.n();
    if lambdas.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: lambdas.len(),
        });
    }
    if let Some(l) = lambdas.iter().find(|l| l.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: l.n(),
        });
    }
    let re_rows: Vec<RVec> = lambdas.iter().map(re_pairing).collect();
    if rank_of(&re_rows) < n {
        return Err(Error::DependentBasis);
    }
    let l = Subspace::span(2 * n, &re_rows).orthogonal_complement();
    let complex_part = l.intersection(&l.complex_rotate());
    if !complex_part.is_zero() {
        return Err(Error::ComplexDegenerate(format!(
            "L contains the complex line through {}",
            fmt_complex_vec(&complex_part.basis()[0])
        )));
    }
    let im_rows: Vec<RVec> = lambdas.iter().map(im_pairing).collect();
    let a: Vec<RVec> = im_rows.iter().map(|p| l.basis().iter().map(|b| dot(b, p)).collect()).collect();
    let mut mus = Vec::with_capacity(n);
    for q in 0..n {
        let e: RVec = (0..n).map(|p| if p == q { Rat::one() } else { Rat::zero() }).collect();
        let c = solve_linear(&a, &e, n).ok_or(Error::DependentBasis)?;
        let mu = crate::exactnum::linalg::combine(&c, l.basis(), 2 * n);
        mus.push(GaussianVector::new(mu)?);
    }
    let spec = LatticeSpec {
        n,
        scale,
        lambdas: lambdas.to_vec(),
        l,
        mus,
    };
    debug_assert!(spec.verify());
    Ok(spec)
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeDensity {
    pub value: f64,
    pub exact: String,
    /// `cos²(L^⊥, iL)`.
    pub cos_squared: String,
    /// Squared `n`-volume of the parallelepiped on the unscaled `λ`.
    pub volume_squared: String,
}

/// `cos(L^⊥, iL)·vol_n(Π(λ))/(2π)ⁿ`.
pub fn lattice_density(spec: &LatticeSpec) -> Result<LatticeDensity> {
    let c2 = subspace_cosine_squared(&spec.l.orthogonal_complement(), &spec.l.complex_rotate())?;
    let pts: Vec<RVec> = spec.lambdas.iter().map(|l| l.coords().to_vec()).collect();
    let v2 = gram_det(&pts);
    let num = SurdSum::from_radical(&Radical::new(Rat::one(), &(&c2 * &v2)));
    let n = spec.n as i64;
    let power = if spec.scale == ExpScale::TwoPi { 0 } else { n };
    let value = num.to_f64() * (spec.scale.to_f64() / std::f64::consts::TAU).powi(spec.n as i32);
    Ok(LatticeDensity {
        value,
        exact: exact_tag(&num, power),
        cos_squared: fmt_rat(&c2),
        volume_squared: fmt_rat(&v2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::{int, rvec};

    fn g(v: &[i64]) -> GaussianVector {
        GaussianVector::new(rvec(v)).unwrap()
    }

    #[test]
    fn one_dimensional_lattices() {
        let s = lattice_from_characters(&[g(&[0, 1])], ExpScale::TwoPi).unwrap();
        assert!(s.verify());
        let d = lattice_density(&s).unwrap();
        assert!((d.value - 1.0).abs() < 1e-12);
        assert_eq!(d.exact, "1");
        let gens = s.generators_f64();
        assert!((gens[0][0].norm() - 1.0).abs() < 1e-12);

        let s = lattice_from_characters(&[g(&[1, 0])], ExpScale::One).unwrap();
        assert_eq!(s.l, Subspace::span(2, &[rvec(&[0, 1])]));
        assert_eq!(s.mus[0].coords(), &[int(0), int(1)]);
        let d = lattice_density(&s).unwrap();
        assert!((d.value - 1.0 / std::f64::consts::TAU).abs() < 1e-12);
        assert_eq!(d.exact, "1/(2π)");
    }

    #[test]
    fn degenerate_characters() {
        let e = lattice_from_characters(&[g(&[1, 0, 0, 0]), g(&[0, 1, 0, 0])], ExpScale::One).unwrap_err();
        match e {
            Error::ComplexDegenerate(msg) => assert!(msg.contains("(0, 1)"), "{msg}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            lattice_from_characters(&[g(&[1, 0, 0, 0]), g(&[2, 0, 0, 0])], ExpScale::One),
            Err(Error::DependentBasis)
        ));
    }

    #[test]
    fn two_dimensional_dual_basis() {
        let s = lattice_from_characters(&[g(&[1, 2, 0, 1]), g(&[0, 1, 3, -1])], ExpScale::One).unwrap();
        assert!(s.verify());
        assert!(lattice_density(&s).unwrap().value > 0.0);
    }
}
