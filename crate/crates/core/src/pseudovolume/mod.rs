//! Exterior angles, the complex cosine coefficient and (mixed) pseudovolumes.

mod angle;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use angle::{exterior_angle, AngleEstimate, AngleMethod, SamplingConfig, DEFAULT_SAMPLES};

use crate::error::{Error, Result};
use crate::exactnum::rat::{binomial, factorial, fmt_rat, to_f64, Rat, RVec};
use crate::exactnum::radical::{Radical, SurdSum};
use crate::exactnum::subspace::{subspace_cosine_squared, Subspace};
use crate::polytope::{complex_rank, minkowski_combination, minkowski_sum, mixed_volume_in, Cone, Polytope};

/// Exact squared cosine `cos²(T^⊥, iT)` for an `n`-dimensional `T ⊂ ℂⁿ`.
pub fn c_coefficient_squared(t: &Subspace) -> Result<Rat> {
    if t.ambient() % 2 != 0 || 2 * t.dim() != t.ambient() {
        return Err(Error::DimensionMismatch {
            expected: t.ambient() / 2,
            found: t.dim(),
        });
    }
    subspace_cosine_squared(&t.orthogonal_complement(), &t.complex_rotate())
}

/// `c(T) = cos(T^⊥, iT)`.
pub fn c_coefficient(t: &Subspace) -> Result<f64> {
    Ok(to_f64(&c_coefficient_squared(t)?).sqrt())
}

/// One `n`-face of the (sum) polytope and its contribution.
#[derive(Clone, Debug, Serialize)]
pub struct Term {
    /// Vertex indices of the face in the polytope whose faces are summed over.
    pub face: Vec<usize>,
    pub c: f64,
    #[serde(serialize_with = "ser_rat")]
    pub c_squared: Rat,
    /// `None` when the term vanishes before the angle is needed.
    pub angle: Option<AngleEstimate>,
    pub mixed_volume: Radical,
    pub contribution: f64,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

/// A (mixed) pseudovolume with its term breakdown.
#[derive(Clone, Debug, Serialize)]
pub struct PseudoVolumeResult {
    pub n: usize,
    pub value: f64,
    /// One standard error of the Monte Carlo angle estimates, propagated
    /// through the sum; 0 when every angle is exact.
    pub error_bound: f64,
    /// Closed form `(Σ c·A·vol)/(2π)ⁿ` when every ingredient is exact.
    pub exact: Option<String>,
    #[serde(skip)]
    pub exact_numerator: Option<SurdSum>,
    pub terms: Vec<Term>,
}

impl PseudoVolumeResult {
    fn zero(n: usize) -> Self {
        PseudoVolumeResult {
            n,
            value: 0.0,
            error_bound: 0.0,
            exact: Some("0".into()),
            exact_numerator: Some(SurdSum::zero()),
            terms: Vec::new(),
        }
    }

    /// `value · (2π)ⁿ`.
    pub fn scaled(&self) -> f64 {
        self.value * std::f64::consts::TAU.powi(self.n as i32)
    }
}

/// Human-readable closed form of `num · (2π)^(−power)`.
pub fn exact_tag(num: &SurdSum, power: i64) -> String {
    if num.is_zero() {
        return "0".into();
    }
    if power == 0 {
        return num.to_string();
    }
    let den = if power == 1 { "2π".to_string() } else { format!("(2π)^{power}") };
    if let Some(r) = num.as_rational() {
        if power == 1 {
            let h = r / Rat::from_integer(BigInt::from(2));
            let (p, q) = (h.numer(), h.denom());
            return if q.is_one() { format!("{p}/π") } else { format!("{p}/({q}π)") };
        }
        let (p, q) = (r.numer(), r.denom());
        if q.is_one() {
            return format!("{p}/{den}");
        }
        return format!("{p}/({q}·{den})");
    }
    if power == 1 {
        format!("({num})/(2π)")
    } else {
        format!("({num})/{den}")
    }
}

struct Candidate {
    face: Vec<usize>,
    tangent: Subspace,
    dual_cone: Cone,
    summands: Vec<Polytope>,
}

fn evaluate(n: usize, cands: Vec<Candidate>, cfg: &SamplingConfig) -> Result<PseudoVolumeResult> {
    let scale = std::f64::consts::TAU.powi(n as i32);
    let terms: Vec<(Term, Option<Radical>, f64)> = cands
        .into_par_iter()
        .map(|cand| -> Result<(Term, Option<Radical>, f64)> {
            let c2 = c_coefficient_squared(&cand.tangent)?;
            let c = Radical::sqrt(&c2);
            let zero_term = |mv: Radical| Term {
                face: cand.face.clone(),
                c: c.to_f64(),
                c_squared: c2.clone(),
                angle: None,
                mixed_volume: mv,
                contribution: 0.0,
            };
            if c2.is_zero() {
                return Ok((zero_term(Radical::zero()), Some(Radical::zero()), 0.0));
            }
            let mv_coord = mixed_volume_in(&cand.summands, &cand.tangent)?;
            let mv = Radical::new(mv_coord, &cand.tangent.gram_det());
            if mv.is_zero() {
                return Ok((zero_term(mv), Some(Radical::zero()), 0.0));
            }
            let a = exterior_angle(&cand.dual_cone, cfg)?;
            let weight = c.to_f64() * mv.to_f64() / scale;
            let exact = a.rational.as_ref().map(|r| c.mul(&mv).mul_rat(r));
            let err = weight * a.std_error;
            let contribution = weight * a.value;
            Ok((
                Term {
                    face: cand.face,
                    c: c.to_f64(),
                    c_squared: c2,
                    angle: Some(a),
                    mixed_volume: mv,
                    contribution,
                },
                exact,
                err,
            ))
        })
        .collect::<Result<_>>()?;
    let mut num = Some(SurdSum::zero());
    let mut value = 0.0;
    let mut var = 0.0;
    let mut out = Vec::with_capacity(terms.len());
    for (t, ex, err) in terms {
        value += t.contribution;
        var += err * err;
        num = match (num, ex) {
            (Some(mut s), Some(r)) => {
                s.add_radical(&r);
                Some(s)
            }
            _ => None,
        };
        out.push(t);
    }
    Ok(PseudoVolumeResult {
        n,
        value,
        error_bound: var.sqrt(),
        exact: num.as_ref().map(|s| exact_tag(s, n as i64)),
        exact_numerator: num,
        terms: out,
    })
}

fn half_dim(ambient: usize) -> Result<usize> {
    if ambient % 2 != 0 {
        return Err(Error::Invalid(format!("ambient dimension {ambient} is odd")));
    }
    Ok(ambient / 2)
}

/// `𝔭(Δ) = (2π)⁻ⁿ Σ c(Λ) A(Λ) vol_n(Λ)` over the `n`-faces of `Δ ⊂ ℂⁿ`.
pub fn pseudovolume(p: &Polytope, cfg: &SamplingConfig) -> Result<PseudoVolumeResult> {
    let n = half_dim(p.ambient())?;
    if p.dim() < n {
        return Ok(PseudoVolumeResult::zero(n));
    }
    let cands = p
        .faces(n)?
        .into_iter()
        .map(|f| {
            let fp = f.polytope();
            Candidate {
                face: f.vertex_ids,
                tangent: f.tangent,
                dual_cone: f.dual_cone,
                summands: vec![fp; n],
            }
        })
        .collect();
    evaluate(n, cands, cfg)
}

fn check_family(ps: &[Polytope]) -> Result<usize> {
    let Some(first) = ps.first() else {
        return Err(Error::EmptyInput("no polytopes given"));
    };
    let n = half_dim(first.ambient())?;
    if ps.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: ps.len(),
        });
    }
    if let Some(p) = ps.iter().find(|p| p.ambient() != first.ambient()) {
        return Err(Error::DimensionMismatch {
            expected: first.ambient(),
            found: p.ambient(),
        });
    }
    Ok(n)
}

/// Mixed pseudovolume: sum over the `n`-faces `Λ = ΣΛᵢ` of `ΣΔᵢ` of
/// `c(Λ) A(Λ) vol_n(Λ₁, …, Λₙ) / (2π)ⁿ`.
pub fn mixed_pseudovolume(ps: &[Polytope], cfg: &SamplingConfig) -> Result<PseudoVolumeResult> {
    let n = check_family(ps)?;
    let sum = minkowski_sum(ps)?;
    if sum.dim() < n {
        return Ok(PseudoVolumeResult::zero(n));
    }
    let mut cands = Vec::new();
    for f in sum.faces(n)? {
        let w = f.dual_cone.relative_interior_point();
        let summands: Vec<Polytope> = ps.iter().map(|p| p.argmax_face(&w)).collect();
        debug_assert_eq!(minkowski_sum(&summands)?, f.polytope());
        cands.push(Candidate {
            face: f.vertex_ids,
            tangent: f.tangent,
            dual_cone: f.dual_cone,
            summands,
        });
    }
    evaluate(n, cands, cfg)
}

/// Mixed pseudovolume by polarization of the pseudovolume:
/// `(1/n!) Σ_{S≠∅} (−1)^{n−|S|} 𝔭(Σ_{i∈S} Δᵢ)`, grouping equal arguments.
pub fn mixed_pseudovolume_polarized(ps: &[Polytope], cfg: &SamplingConfig) -> Result<PseudoVolumeResult> {
    let n = check_family(ps)?;
    let mut groups: Vec<(Polytope, usize)> = Vec::new();
    for p in ps {
        let q = p.normalized();
        match groups.iter_mut().find(|(g, _)| *g == q) {
            Some((_, k)) => *k += 1,
            None => groups.push((q, 1)),
        }
    }
    let shapes: Vec<Polytope> = groups.iter().map(|(g, _)| g.clone()).collect();
    let mut value = 0.0;
    let mut var = 0.0;
    let mut num = Some(SurdSum::zero());
    let mut a = vec![0usize; groups.len()];
    loop {
        let mut i = 0;
        while i < a.len() && a[i] == groups[i].1 {
            a[i] = 0;
            i += 1;
        }
        if i == a.len() {
            break;
        }
        a[i] += 1;
        let used: usize = a.iter().sum();
        let mut w = num_bigint::BigInt::from(1);
        for (ai, (_, mi)) in a.iter().zip(&groups) {
            w *= binomial(*mi, *ai);
        }
        if (n - used) % 2 == 1 {
            w = -w;
        }
        let coeff = Rat::new(w, factorial(n));
        let r = pseudovolume(&minkowski_combination(&shapes, &a)?, cfg)?;
        let cf = to_f64(&coeff);
        value += cf * r.value;
        var += (cf * r.error_bound).powi(2);
        num = match (num, r.exact_numerator) {
            (Some(mut s), Some(t)) => {
                s.add(&t.mul_rat(&coeff));
                Some(s)
            }
            _ => None,
        };
    }
    Ok(PseudoVolumeResult {
        n,
        value,
        error_bound: var.sqrt(),
        exact: num.as_ref().map(|s| exact_tag(s, n as i64)),
        exact_numerator: num,
        terms: Vec::new(),
    })
}

/// Exact vanishing test: the mixed pseudovolume is zero iff the complex rank
/// of the family is negative.
pub fn pseudovolume_vanishes(ps: &[Polytope]) -> Result<bool> {
    check_family(ps)?;
    Ok(complex_rank(ps)? < 0)
}

/// Convenience for building polytopes in ℂⁿ from complex vertex lists.
pub fn complex_polytope(points: &[Vec<(Rat, Rat)>]) -> Result<Polytope> {
    let pts: Vec<RVec> = points
        .iter()
        .map(|p| p.iter().flat_map(|(re, im)| [re.clone(), im.clone()]).collect())
        .collect();
    Polytope::hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::{int, rvec};

    fn cfg() -> SamplingConfig {
        SamplingConfig::default()
    }

    fn seg(a: &[i64], b: &[i64]) -> Polytope {
        Polytope::hull(&[rvec(a), rvec(b)]).unwrap()
    }

    #[test]
    fn c_examples() {
        let real = Subspace::span(4, &[rvec(&[1, 0, 0, 0]), rvec(&[0, 0, 1, 0])]);
        assert_eq!(c_coefficient(&real).unwrap(), 1.0);
        let line = Subspace::span(4, &[rvec(&[1, 0, 0, 0]), rvec(&[0, 1, 0, 0])]);
        assert_eq!(c_coefficient(&line).unwrap(), 0.0);
        let mixed = Subspace::span(4, &[rvec(&[1, 0, 0, 0]), rvec(&[0, 0, 0, 1])]);
        assert_eq!(c_coefficient(&mixed).unwrap(), 1.0);
        assert!(c_coefficient(&Subspace::span(4, &[rvec(&[1, 0, 0, 0])])).is_err());
    }

    #[test]
    fn triangle_in_c1() {
        let t = Polytope::hull(&[rvec(&[0, 0]), rvec(&[1, 0]), rvec(&[0, 1])]).unwrap();
        let r = pseudovolume(&t, &cfg()).unwrap();
        let expect = (2.0 + 2f64.sqrt()) / (4.0 * std::f64::consts::PI);
        assert!((r.value - expect).abs() < 1e-12);
        assert_eq!(r.error_bound, 0.0);
        let num = r.exact_numerator.unwrap();
        let mut want = SurdSum::from_radical(&Radical::rational(int(1)));
        want.add_radical(&Radical::new(crate::exactnum::rat::rat(1, 2), &int(2)));
        assert_eq!(num, want);
        let m = mixed_pseudovolume(&[t.clone()], &cfg()).unwrap();
        assert!((m.value - expect).abs() < 1e-12);
    }

    #[test]
    fn real_square_and_point() {
        let sq = Polytope::hull(&[rvec(&[0, 0, 0, 0]), rvec(&[1, 0, 0, 0]), rvec(&[0, 0, 1, 0]), rvec(&[1, 0, 1, 0])]).unwrap();
        let r = pseudovolume(&sq, &cfg()).unwrap();
        assert!((r.scaled() - 1.0).abs() < 1e-12);
        assert_eq!(r.exact_numerator.unwrap().as_rational(), Some(int(1)));
        let p = Polytope::point(rvec(&[0, 0, 0, 0]));
        assert_eq!(pseudovolume(&p, &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn segment_in_c1() {
        let s = seg(&[0, 0], &[3, 4]);
        let r = mixed_pseudovolume(&[s], &cfg()).unwrap();
        assert!((r.value - 5.0 / std::f64::consts::TAU).abs() < 1e-12);
    }

    #[test]
    fn complex_degenerate_pair_vanishes() {
        let x = seg(&[0, 0, 0, 0], &[1, 0, 0, 0]);
        let ix = seg(&[0, 0, 0, 0], &[0, 1, 0, 0]);
        let r = mixed_pseudovolume(&[x.clone(), ix.clone()], &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(pseudovolume_vanishes(&[x.clone(), ix]).unwrap());
        let y = seg(&[0, 0, 0, 0], &[0, 0, 1, 0]);
        assert!(!pseudovolume_vanishes(&[x.clone(), y.clone()]).unwrap());
        let r = mixed_pseudovolume(&[x.clone(), y.clone()], &cfg()).unwrap();
        assert!((r.scaled() - 0.5).abs() < 1e-12, "{r:?}");
        let p = mixed_pseudovolume_polarized(&[x.clone(), y], &cfg()).unwrap();
        assert!((p.scaled() - 0.5).abs() < 1e-9, "{p:?}");
        assert!(pseudovolume_vanishes(&[x, Polytope::point(rvec(&[0, 0, 0, 0]))]).unwrap());
    }

    #[test]
    fn arity_checked() {
        let x = seg(&[0, 0, 0, 0], &[1, 0, 0, 0]);
        assert!(matches!(mixed_pseudovolume(&[x], &cfg()), Err(Error::ArityMismatch { .. })));
    }
}
