//! Exterior angles of polyhedral cones.

use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::rat::{dot, norm2, rat, to_f64, Rat};
use crate::exactnum::subspace::Subspace;
use crate::polytope::Cone;

pub const DEFAULT_SAMPLES: usize = 200_000;

/// Monte Carlo settings for angles of cones of dimension three and more.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleMethod {
    Exact,
    MonteCarlo,
}

/// Normalized solid angle of a cone inside its linear span.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleEstimate {
    pub value: f64,
    pub method: AngleMethod,
    pub std_error: f64,
    pub samples: usize,
    /// The value as a rational number when it is one.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rat")]
    pub rational: Option<Rat>,
}

mod opt_rat {
    use super::Rat;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&crate::exactnum::rat::fmt_rat(r)),
            None => s.serialize_none(),
        }
    }
}

impl AngleEstimate {
    fn exact(r: Rat) -> Self {
        AngleEstimate {
            value: to_f64(&r),
            method: AngleMethod::Exact,
            std_error: 0.0,
            samples: 0,
            rational: Some(r),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.method == AngleMethod::Exact
    }
}

/// Angle `θ/(2π)` between two rays, rational for the angles whose cosine is
/// one of 0, ±1/2, ±√2/2, ±√3/2, ±1.
fn planar(r1: &[Rat], r2: &[Rat]) -> AngleEstimate {
    let d = dot(r1, r2);
    let cos2 = &d * &d / (norm2(r1) * norm2(r2));
    let positive = !d.is_negative();
    let table: [(Rat, Rat, Rat); 5] = [
        (rat(0, 1), rat(1, 4), rat(1, 4)),
        (rat(1, 4), rat(1, 6), rat(1, 3)),
        (rat(1, 2), rat(1, 8), rat(3, 8)),
        (rat(3, 4), rat(1, 12), rat(5, 12)),
        (rat(1, 1), rat(0, 1), rat(1, 2)),
    ];
    for (c2, acute, obtuse) in table {
        if cos2 == c2 {
            return AngleEstimate::exact(if positive { acute } else { obtuse });
        }
    }
    let cos = to_f64(&cos2).sqrt() * if positive { 1.0 } else { -1.0 };
    AngleEstimate {
        value: cos.clamp(-1.0, 1.0).acos() / std::f64::consts::TAU,
        method: AngleMethod::Exact,
        std_error: 0.0,
        samples: 0,
        rational: None,
    }
}

/// Per-cone seed: the configured seed mixed with an FNV-1a hash of the
/// canonical generators, stable across platforms and toolchains.
fn cone_seed(k: &Cone, seed: u64) -> u64 {
    let mut text = String::new();
    for r in k.rays() {
        for x in r {
            text.push_str(&x.to_string());
            text.push(',');
        }
        text.push(';');
    }
    text.push('|');
    for b in k.lineality().basis() {
        for x in b {
            text.push_str(&x.to_string());
            text.push(',');
        }
        text.push(';');
    }
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in text.bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ seed
}

/// Exterior angle of `k`: its solid angle inside `V_K`, with the full angle
/// equal to 1. The lineality space factors out, so only the pointed part is
/// measured.
pub fn exterior_angle(k: &Cone, cfg: &SamplingConfig) -> Result<AngleEstimate> {
    if k.is_zero() {
        return Err(Error::ZeroCone);
    }
    let rays = k.rays();
    let pointed = Subspace::span(k.ambient(), rays);
    match pointed.dim() {
        0 => return Ok(AngleEstimate::exact(rat(1, 1))),
        1 => return Ok(AngleEstimate::exact(rat(1, 2))),
        2 => {
            debug_assert_eq!(rays.len(), 2);
            return Ok(planar(&rays[0], &rays[1]));
        }
        _ => {}
    }
    if cfg.samples == 0 {
        return Err(Error::Invalid("angle sampling needs at least one sample".into()));
    }
    let basis = pointed.orthonormal_f64();
    let facets = k.facets_f64();
    // facet normals restricted to the orthonormal frame of the pointed part
    let local: Vec<Vec<f64>> = facets
        .iter()
        .map(|a| basis.iter().map(|q| q.iter().zip(a).map(|(x, y)| x * y).sum()).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cone_seed(k, cfg.seed));
    let e = basis.len();
    let mut g = vec![0.0f64; e];
    let mut hits = 0usize;
    for _ in 0..cfg.samples {
        for x in g.iter_mut() {
            *x = StandardNormal.sample(&mut rng);
        }
        if local.iter().all(|a| a.iter().zip(&g).map(|(x, y)| x * y).sum::<f64>() >= 0.0) {
            hits += 1;
        }
    }
    let n = cfg.samples as f64;
    let p = hits as f64 / n;
    Ok(AngleEstimate {
        value: p,
        method: AngleMethod::MonteCarlo,
        std_error: (p * (1.0 - p) / n).sqrt(),
        samples: cfg.samples,
        rational: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::rvec;

    #[test]
    fn quadrant_line_and_octant() {
        let cfg = SamplingConfig::default();
        let q = Cone::from_generators(2, &[rvec(&[1, 0]), rvec(&[0, 1])], &[]);
        assert_eq!(exterior_angle(&q, &cfg).unwrap().rational, Some(rat(1, 4)));
        let line = Cone::from_generators(2, &[], &[rvec(&[1, 1])]);
        assert_eq!(exterior_angle(&line, &cfg).unwrap().rational, Some(rat(1, 1)));
        let ray = Cone::from_generators(3, &[rvec(&[1, 2, 0])], &[rvec(&[0, 0, 1])]);
        assert_eq!(exterior_angle(&ray, &cfg).unwrap().rational, Some(rat(1, 2)));
        let oct = Cone::from_generators(3, &[rvec(&[1, 0, 0]), rvec(&[0, 1, 0]), rvec(&[0, 0, 1])], &[]);
        let a = exterior_angle(&oct, &cfg).unwrap();
        assert_eq!(a.method, AngleMethod::MonteCarlo);
        assert!((a.value - 0.125).abs() < 3.0 * a.std_error, "{a:?}");
        assert!(matches!(exterior_angle(&Cone::zero(2), &cfg), Err(Error::ZeroCone)));
    }

    #[test]
    fn planar_angles() {
        let cfg = SamplingConfig::default();
        let c = Cone::from_generators(2, &[rvec(&[1, 0]), rvec(&[1, 1])], &[]);
        assert_eq!(exterior_angle(&c, &cfg).unwrap().rational, Some(rat(1, 8)));
        let c = Cone::from_generators(2, &[rvec(&[1, 0]), rvec(&[-1, 1])], &[]);
        assert_eq!(exterior_angle(&c, &cfg).unwrap().rational, Some(rat(3, 8)));
        let c = Cone::from_generators(2, &[rvec(&[1, 0]), rvec(&[1, 2])], &[]);
        let a = exterior_angle(&c, &cfg).unwrap();
        assert!((a.value - 2f64.atan() / std::f64::consts::TAU).abs() < 1e-12);
    }

    #[test]
    fn seeding_is_deterministic() {
        let cfg = SamplingConfig { samples: 1000, seed: 7 };
        let k = Cone::from_generators(3, &[rvec(&[1, 0, 0]), rvec(&[1, 1, 0]), rvec(&[0, 1, 3])], &[]);
        assert_eq!(exterior_angle(&k, &cfg).unwrap(), exterior_angle(&k, &cfg).unwrap());
    }
}
