//! Exponential sums, Newton polytopes and the intersection index, with
//! numeric oracles (zero counting, lattice densities) to check it against.

mod lattice;
mod parse;
mod zeros;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use lattice::{lattice_density, lattice_from_characters, LatticeDensity, LatticeSpec};
pub use zeros::{count_zeros_disk, QuadratureConfig, ZeroCount};

use crate::error::{Error, Result};
use crate::exactnum::rat::{factorial, fmt_rat, to_f64, Rat, RVec};
use crate::exactnum::subspace::GaussianVector;
use crate::polytope::{complex_rank, Polytope};
pub use crate::pseudovolume::exact_tag;
use crate::pseudovolume::{mixed_pseudovolume, PseudoVolumeResult, SamplingConfig};

/// Complex rational number.
pub type CRat = num_complex::Complex<Rat>;

/// Global factor multiplying every exponent of a sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ExpScale {
    #[default]
    One,
    /// Exponents are `2π` times the stored rational functionals.
    TwoPi,
}

impl ExpScale {
    pub fn to_f64(self) -> f64 {
        match self {
            ExpScale::One => 1.0,
            ExpScale::TwoPi => std::f64::consts::TAU,
        }
    }
}

/// `coeff · e^{λ(z)}` with `λ(z) = scale·Σ λ_k z_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpTerm {
    pub coeff: CRat,
    /// `λ` as a point of ℂⁿ* in `(Re λ₁, Im λ₁, …)` coordinates.
    pub exponent: GaussianVector,
}

/// A finite sum `Σ c_λ e^{λ(z)}` on ℂⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSum {
    n: usize,
    scale: ExpScale,
    terms: Vec<ExpTerm>,
}

fn gaussian(coords: &[CRat]) -> GaussianVector {
    let re: RVec = coords.iter().map(|c| c.re.clone()).collect();
    let im: RVec = coords.iter().map(|c| c.im.clone()).collect();
    GaussianVector::from_parts(&re, &im)
}

impl ExpSum {
    /// Canonical sum: equal exponents merged, sorted by exponent; a zero
    /// coefficient (given or produced by merging) is an error.
    pub fn new(n: usize, scale: ExpScale, terms: Vec<ExpTerm>) -> Result<ExpSum> {
        let mut merged: Vec<ExpTerm> = Vec::new();
        for (i, t) in terms.into_iter().enumerate() {
            if t.exponent.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: t.exponent.n(),
                });
            }
            if t.coeff.is_zero() {
                return Err(Error::ZeroCoefficient(i));
            }
            match merged.iter_mut().find(|m| m.exponent == t.exponent) {
                Some(m) => m.coeff = &m.coeff + &t.coeff,
                None => merged.push(t),
            }
        }
        if let Some(i) = merged.iter().position(|t| t.coeff.is_zero()) {
            return Err(Error::ZeroCoefficient(i));
        }
        if merged.is_empty() {
            return Err(Error::EmptyInput("an exponential sum needs a term"));
        }
        merged.sort_by(|a, b| a.exponent.cmp(&b.exponent));
        let scale = if merged.iter().all(|t| t.exponent.coords().iter().all(Zero::is_zero)) {
            ExpScale::One
        } else {
            scale
        };
        Ok(ExpSum { n, scale, terms: merged })
    }

    /// Parse the text syntax; `n` defaults to the largest variable index.
    pub fn parse(text: &str, n: Option<usize>) -> Result<ExpSum> {
        let p = parse::parse_text(text, n)?;
        let terms = p
            .terms
            .into_iter()
            .map(|(coeff, coords, _)| ExpTerm {
                coeff,
                exponent: gaussian(&coords),
            })
            .collect();
        ExpSum::new(p.n, p.scale, terms)
    }

    /// Parse the JSON form `{"terms": [{"coeff": [re, im], "exp": [[re, im], …]}]}`
    /// with an optional `"scale": "two_pi"`.
    pub fn from_json(value: &serde_json::Value) -> Result<ExpSum> {
        let doc: JsonSum = serde_json::from_value(value.clone()).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        let n = doc.n.or_else(|| doc.terms.first().map(|t| t.exp.len())).unwrap_or(1);
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            let coeff = CRat::new(t.coeff[0].clone().into_rat()?, t.coeff[1].clone().into_rat()?);
            let mut coords = Vec::with_capacity(t.exp.len());
            for [re, im] in t.exp {
                coords.push(CRat::new(re.into_rat()?, im.into_rat()?));
            }
            terms.push(ExpTerm {
                coeff,
                exponent: gaussian(&coords),
            });
        }
        ExpSum::new(n, doc.scale.unwrap_or_default(), terms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|t| {
                let exp: Vec<[String; 2]> = (0..self.n)
                    .map(|j| [fmt_rat(t.exponent.re(j)), fmt_rat(t.exponent.im(j))])
                    .collect();
                serde_json::json!({
                    "coeff": [fmt_rat(&t.coeff.re), fmt_rat(&t.coeff.im)],
                    "exp": exp,
                })
            })
            .collect();
        serde_json::json!({ "n": self.n, "scale": self.scale, "terms": terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> ExpScale {
        self.scale
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    /// Newton polytope of the stored (unscaled) exponents; the true Newton
    /// polytope is this one dilated by [`ExpSum::scale`].
    pub fn newton_polytope(&self) -> Polytope {
        let pts: Vec<RVec> = self.terms.iter().map(|t| t.exponent.coords().to_vec()).collect();
        Polytope::hull(&pts).expect("nonempty sum")
    }

    /// Whether every exponent is a real functional.
    pub fn is_quasi_algebraic(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_real())
    }

    /// `e^{μ(z)}·f`: every exponent shifted by `μ` (given in the sum's scale).
    pub fn shift(&self, mu: &GaussianVector) -> Result<ExpSum> {
        let terms = self
            .terms
            .iter()
            .map(|t| ExpTerm {
                coeff: t.coeff.clone(),
                exponent: GaussianVector::new(crate::exactnum::rat::add(t.exponent.coords(), mu.coords())).expect("even length"),
            })
            .collect();
        ExpSum::new(self.n, self.scale, terms)
    }

    /// `z ↦ f(t z)` for a rational `t`.
    pub fn dilate(&self, t: &Rat) -> Result<ExpSum> {
        let terms = self
            .terms
            .iter()
            .map(|s| ExpTerm {
                coeff: s.coeff.clone(),
                exponent: GaussianVector::new(crate::exactnum::rat::scale(s.exponent.coords(), t)).expect("even length"),
            })
            .collect();
        ExpSum::new(self.n, self.scale, terms)
    }

    /// Numeric evaluation of `f` and `∂f/∂z₁` (one variable), each divided
    /// by `e^M` where `M` is the largest real part among the exponents.
    pub(crate) fn eval_scaled_1d(&self, z: Complex64) -> (Complex64, Complex64, f64) {
        let s = self.scale.to_f64();
        let parts: Vec<(Complex64, Complex64, Complex64)> = self
            .terms
            .iter()
            .map(|t| {
                let lam = Complex64::new(to_f64(t.exponent.re(0)), to_f64(t.exponent.im(0))) * s;
                let c = Complex64::new(to_f64(&t.coeff.re), to_f64(&t.coeff.im));
                (c, lam, lam * z)
            })
            .collect();
        let m = parts.iter().map(|(_, _, e)| e.re).fold(f64::NEG_INFINITY, f64::max);
        let mut f = Complex64::zero();
        let mut df = Complex64::zero();
        let mut size = 0.0;
        for (c, lam, e) in parts {
            let v = c * (e - m).exp();
            f += v;
            df += v * lam;
            size += v.norm();
        }
        (f, df, size)
    }
}

#[derive(Deserialize)]
struct JsonSum {
    n: Option<usize>,
    scale: Option<ExpScale>,
    terms: Vec<JsonTerm>,
}

#[derive(Deserialize)]
struct JsonTerm {
    coeff: [crate::exactnum::rat::serde_rat::StrOrNum; 2],
    exp: Vec<[crate::exactnum::rat::serde_rat::StrOrNum; 2]>,
}

/// Newton polytope class of a hypersurface `{f = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceClass {
    pub newton: Polytope,
    pub scale: ExpScale,
}

impl HypersurfaceClass {
    pub fn of(f: &ExpSum) -> HypersurfaceClass {
        HypersurfaceClass {
            newton: f.newton_polytope(),
            scale: f.scale(),
        }
    }
}

/// Intersection index of `n` hypersurfaces: `n!·𝔭(Δ₁, …, Δₙ)`.
#[derive(Clone, Debug, Serialize)]
pub struct IndexResult {
    pub value: f64,
    pub error_bound: f64,
    /// Closed form when every angle was exact, e.g. `1/(2π)`.
    pub exact: Option<String>,
    pub complex_rank: i64,
    pub vanishes: bool,
    pub mixed_pseudovolume: PseudoVolumeResult,
}

/// `n!·𝔭` of the given classes, accounting for `2π` exponent scales.
pub fn weak_density(classes: &[HypersurfaceClass], cfg: &SamplingConfig) -> Result<IndexResult> {
    let Some(first) = classes.first() else {
        return Err(Error::EmptyInput("no hypersurfaces given"));
    };
    let n = first.newton.ambient() / 2;
    if classes.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: classes.len(),
        });
    }
    let polys: Vec<Polytope> = classes.iter().map(|c| c.newton.clone()).collect();
    let rank = complex_rank(&polys)?;
    let mp = mixed_pseudovolume(&polys, cfg)?;
    let twopi_count = classes.iter().filter(|c| c.scale == ExpScale::TwoPi).count() as i32;
    let nfact = Rat::from_integer(factorial(n));
    let factor = to_f64(&nfact) * std::f64::consts::TAU.powi(twopi_count);
    let exact = mp
        .exact_numerator
        .as_ref()
        .map(|s| exact_tag(&s.mul_rat(&nfact), n as i64 - twopi_count as i64));
    Ok(IndexResult {
        value: mp.value * factor,
        error_bound: mp.error_bound * factor,
        exact,
        complex_rank: rank,
        vanishes: rank < 0,
        mixed_pseudovolume: mp,
    })
}

/// Intersection index of the hypersurfaces `{fᵢ = 0}` in ℂⁿ.
pub fn intersection_index(fs: &[ExpSum], cfg: &SamplingConfig) -> Result<IndexResult> {
    let Some(first) = fs.first() else {
        return Err(Error::EmptyInput("no exponential sums given"));
    };
    let n = first.n();
    if let Some(f) = fs.iter().find(|f| f.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.n(),
        });
    }
    if fs.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: fs.len(),
        });
    }
    let classes: Vec<HypersurfaceClass> = fs.iter().map(HypersurfaceClass::of).collect();
    weak_density(&classes, cfg)
}
