//! Counting zeros of a one-variable exponential sum in a disk by the
//! argument principle.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::ExpSum;
use crate::error::{Error, Result};

/// Settings for the contour integral.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuadratureConfig {
    /// Target absolute error of the winding number.
    pub tol: f64,
    /// Give up on a radius after this many panels.
    pub max_panels: usize,
    /// Number of perturbed radii tried after the requested one.
    pub max_retries: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tol: 1e-3,
            max_panels: 1 << 21,
            max_retries: 6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroCount {
    pub count: i64,
    pub requested_radius: f64,
    /// Radius actually integrated over (perturbed when zeros sit on the circle).
    pub radius: f64,
    /// Unrounded winding number.
    pub raw: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

// 7-point Gauss / 15-point Kronrod nodes and weights on [−1, 1]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

enum Panel {
    Done { start: f64, value: f64, err: f64 },
    Split(f64, f64),
    ZeroOnContour,
}

/// `z f'(z)/f(z)` at `z = R e^{iθ}`, or `None` when `f` nearly vanishes.
/// The imaginary part is integrated too: a zero on the circle leaves the real
/// part smooth but makes the imaginary part blow up.
fn integrand(f: &ExpSum, r: f64, theta: f64) -> Option<Complex64> {
    let z = Complex64::from_polar(r, theta);
    let (v, dv, size) = f.eval_scaled_1d(z);
    if v.norm() <= 1e-12 * size {
        return None;
    }
    Some(z * dv / v)
}

fn gauss_kronrod(f: &ExpSum, r: f64, a: f64, b: f64) -> Option<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = integrand(f, r, c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = integrand(f, r, c - x)? + integrand(f, r, c + x)?;
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Some((k.re * h, (k - g).norm() * h))
}

enum Stop {
    OnContour,
    Budget,
}

fn winding(f: &ExpSum, r: f64, cfg: &QuadratureConfig) -> std::result::Result<(f64, f64, usize), Stop> {
    let tau = std::f64::consts::TAU;
    let spread: f64 = f
        .terms()
        .iter()
        .map(|t| {
            let re = crate::exactnum::rat::to_f64(t.exponent.re(0));
            let im = crate::exactnum::rat::to_f64(t.exponent.im(0));
            (re * re + im * im).sqrt()
        })
        .sum::<f64>()
        * f.scale().to_f64();
    let initial = ((4.0 * r * spread).ceil() as usize).max(32).min((cfg.max_panels / 4).max(1));
    let mut pending: Vec<(f64, f64)> = (0..initial)
        .map(|i| (tau * i as f64 / initial as f64, tau * (i + 1) as f64 / initial as f64))
        .collect();
    let mut done: Vec<(f64, f64, f64)> = Vec::new();
    let mut total_panels = 0usize;
    while !pending.is_empty() {
        total_panels += pending.len();
        if total_panels > cfg.max_panels {
            return Err(Stop::Budget);
        }
        let results: Vec<Panel> = pending
            .par_iter()
            .map(|&(a, b)| match gauss_kronrod(f, r, a, b) {
                None => Panel::ZeroOnContour,
                Some((value, err)) => {
                    if err <= cfg.tol * (b - a) {
                        Panel::Done { start: a, value, err }
                    } else if b - a < 1e-8 {
                        Panel::ZeroOnContour
                    } else {
                        Panel::Split(a, b)
                    }
                }
            })
            .collect();
        pending = Vec::new();
        for p in results {
            match p {
                Panel::ZeroOnContour => return Err(Stop::OnContour),
                Panel::Done { start, value, err } => done.push((start, value, err)),
                Panel::Split(a, b) => {
                    let m = 0.5 * (a + b);
                    pending.push((a, m));
                    pending.push((m, b));
                }
            }
        }
    }
    done.sort_by(|x, y| x.0.total_cmp(&y.0));
    let value: f64 = done.iter().map(|d| d.1).sum::<f64>() / tau;
    let err: f64 = done.iter().map(|d| d.2).sum::<f64>() / tau;
    Ok((value, err, total_panels))
}

/// Number of zeros of `f` (with multiplicity) in the open disk `|z| < R`.
pub fn count_zeros_disk(f: &ExpSum, radius: f64, cfg: &QuadratureConfig) -> Result<ZeroCount> {
    if f.n() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.n(),
        });
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Invalid(format!("radius must be positive, got {radius}")));
    }
    let offsets = [0.0, 1.0e-3, -1.7e-3, 2.9e-3, -4.3e-3, 6.1e-3, -8.9e-3, 1.3e-2];
    let mut last_failure = String::from("zero on the contour");
    for (attempt, off) in offsets.iter().enumerate().take(cfg.max_retries + 1) {
        let r = radius * (1.0 + off);
        let (raw, err, panels) = match winding(f, r, cfg) {
            Ok(w) => w,
            Err(Stop::OnContour) => {
                last_failure = format!("zero on or near the contour at radius {r}");
                continue;
            }
            Err(Stop::Budget) => {
                return Err(Error::Certification(format!(
                    "quadrature needs more than {} panels at radius {r}",
                    cfg.max_panels
                )))
            }
        };
        let count = raw.round();
        if (raw - count).abs() < 0.25 && err < 0.25 {
            return Ok(ZeroCount {
                count: count as i64,
                requested_radius: radius,
                radius: r,
                raw,
                error_estimate: err,
                panels,
            });
        }
        last_failure = format!("winding number {raw} (error {err}) not certified at radius {r}, attempt {attempt}");
    }
    Err(Error::Certification(last_failure))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_zero_sets() {
        let cfg = QuadratureConfig::default();
        let f = ExpSum::parse("exp((2*pi*i)*z) - 1", None).unwrap();
        assert_eq!(count_zeros_disk(&f, 10.5, &cfg).unwrap().count, 21);
        let on = count_zeros_disk(&f, 40.0, &cfg).unwrap();
        assert_ne!(on.radius, 40.0);
        assert!((on.count - 81).abs() <= 2);
        let g = ExpSum::parse("exp(z) - 1", None).unwrap();
        assert_eq!(count_zeros_disk(&g, 20.0, &cfg).unwrap().count, 7);
        let p = ExpSum::parse("1 + 0*exp(z) + 3", None);
        assert!(p.is_err());
        let c = ExpSum::parse("2", None).unwrap();
        assert_eq!(count_zeros_disk(&c, 5.0, &cfg).unwrap().count, 0);
    }
}
