//! The graded algebra on virtual polytopes and its volume and pseudovolume
//! pairings.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rat::{binomial, factorial, fmt_rat, norm2, to_f64, Rat, RVec};
use crate::exactnum::radical::{Radical, SurdSum};
use crate::exactnum::subspace::Subspace;
use crate::polytope::{minkowski_sum, mixed_volume, mixed_volume_in, support_function, Polytope};
use crate::pseudovolume::{exact_tag, mixed_pseudovolume, SamplingConfig};
use crate::tropical::WeightedFan;

/// Formal difference `plus − minus` of translation classes of polytopes.
#[derive(Clone, Debug)]
pub struct VirtualPolytope {
    plus: Polytope,
    minus: Polytope,
}

impl PartialEq for VirtualPolytope {
    fn eq(&self, other: &Self) -> bool {
        if self.plus == other.plus && self.minus == other.minus {
            return true;
        }
        if self.ambient() != other.ambient() {
            return false;
        }
        // cancellation law: P − Q = P′ − Q′ ⟺ P + Q′ = P′ + Q
        let l = minkowski_sum(&[self.plus.clone(), other.minus.clone()]).expect("same ambient");
        let r = minkowski_sum(&[other.plus.clone(), self.minus.clone()]).expect("same ambient");
        l.normalized() == r.normalized()
    }
}

impl VirtualPolytope {
    pub fn new(plus: &Polytope, minus: &Polytope) -> Result<VirtualPolytope> {
        if plus.ambient() != minus.ambient() {
            return Err(Error::DimensionMismatch {
                expected: plus.ambient(),
                found: minus.ambient(),
            });
        }
        if plus.normalized() == minus.normalized() {
            return Ok(Self::zero(plus.ambient()));
        }
        Ok(VirtualPolytope {
            plus: plus.normalized(),
            minus: minus.normalized(),
        })
    }

    pub fn from_polytope(p: &Polytope) -> VirtualPolytope {
        let origin = Polytope::point(vec![Rat::zero(); p.ambient()]);
        VirtualPolytope {
            plus: p.normalized(),
            minus: origin,
        }
    }

    pub fn zero(ambient: usize) -> VirtualPolytope {
        let origin = Polytope::point(vec![Rat::zero(); ambient]);
        VirtualPolytope {
            plus: origin.clone(),
            minus: origin,
        }
    }

    pub fn ambient(&self) -> usize {
        self.plus.ambient()
    }

    pub fn plus(&self) -> &Polytope {
        &self.plus
    }

    pub fn minus(&self) -> &Polytope {
        &self.minus
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_point() && self.minus.is_point() || self.plus == self.minus
    }

    pub fn is_actual(&self) -> bool {
        self.minus.is_point()
    }

    pub fn add(&self, other: &VirtualPolytope) -> Result<VirtualPolytope> {
        VirtualPolytope::new(
            &minkowski_sum(&[self.plus.clone(), other.plus.clone()])?,
            &minkowski_sum(&[self.minus.clone(), other.minus.clone()])?,
        )
    }

    pub fn neg(&self) -> VirtualPolytope {
        VirtualPolytope {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// `k·(P − Q) = kP − kQ` for a nonnegative integer `k`.
    pub fn times(&self, k: usize) -> VirtualPolytope {
        if k == 0 {
            return Self::zero(self.ambient());
        }
        let s = Rat::from_integer(BigInt::from(k));
        VirtualPolytope {
            plus: self.plus.scale(&s),
            minus: self.minus.scale(&s),
        }
    }

    /// Split off a positive dilation factor: `self = t·B` with `B` in a fixed
    /// scale, so that `(tB)^k` can be stored as `t^k·B^k`.
    fn dilation_normal_form(&self) -> (Rat, VirtualPolytope) {
        let reference = if self.plus.is_point() { &self.minus } else { &self.plus };
        let Some(t) = reference.vertices().iter().flatten().find(|x| !x.is_zero()).map(|x| x.abs()) else {
            return (Rat::one(), self.clone());
        };
        let inv = Rat::one() / &t;
        let base = VirtualPolytope {
            plus: self.plus.scale(&inv),
            minus: self.minus.scale(&inv),
        };
        (t, base)
    }

    pub fn linear_image(&self, rows: &[RVec]) -> Result<VirtualPolytope> {
        VirtualPolytope::new(&self.plus.linear_image(rows)?, &self.minus.linear_image(rows)?)
    }
}

/// `coeff · base^power`.
#[derive(Clone, Debug, PartialEq)]
pub struct RingTerm {
    pub coeff: Rat,
    pub base: VirtualPolytope,
    pub power: usize,
}

/// An element of the polytope algebra as a combination of pure powers.
#[derive(Clone, Debug, PartialEq)]
pub struct RingElement {
    ambient: usize,
    terms: Vec<RingTerm>,
}

/// Coefficients of `(1/k!)·Σ_{a≠0} (−1)^{k−|a|} Π C(mᵢ, aᵢ) (Σ aᵢXᵢ)^k` for a
/// multiset of factors with multiplicities `mᵢ`, `k = Σ mᵢ`.
fn polarization(factors: &[(VirtualPolytope, usize)]) -> Result<Vec<(Rat, VirtualPolytope)>> {
    let k: usize = factors.iter().map(|(_, m)| m).sum();
    let ambient = factors[0].0.ambient();
    let kf = factorial(k);
    let mut out = Vec::new();
    let mut a = vec![0usize; factors.len()];
    loop {
        let mut i = 0;
        while i < a.len() && a[i] == factors[i].1 {
            a[i] = 0;
            i += 1;
        }
        if i == a.len() {
            break;
        }
        a[i] += 1;
        let used: usize = a.iter().sum();
        let mut w = BigInt::one();
        for (ai, (_, mi)) in a.iter().zip(factors) {
            w *= binomial(*mi, *ai);
        }
        if (k - used) % 2 == 1 {
            w = -w;
        }
        let mut base = VirtualPolytope::zero(ambient);
        for (ai, (x, _)) in a.iter().zip(factors) {
            if *ai > 0 {
                base = base.add(&x.times(*ai))?;
            }
        }
        out.push((Rat::new(w, kf.clone()), base));
    }
    Ok(out)
}

fn group(factors: &[VirtualPolytope]) -> Vec<(VirtualPolytope, usize)> {
    let mut groups: Vec<(VirtualPolytope, usize)> = Vec::new();
    for f in factors {
        match groups.iter_mut().find(|(g, _)| g == f) {
            Some((_, m)) => *m += 1,
            None => groups.push((f.clone(), 1)),
        }
    }
    groups
}

impl RingElement {
    pub fn zero(ambient: usize) -> RingElement {
        RingElement {
            ambient,
            terms: Vec::new(),
        }
    }

    pub fn constant(ambient: usize, c: Rat) -> RingElement {
        Self::from_terms(
            ambient,
            vec![RingTerm {
                coeff: c,
                base: VirtualPolytope::zero(ambient),
                power: 0,
            }],
        )
    }

    /// `c · base^power`.
    pub fn power(base: &VirtualPolytope, power: usize, c: Rat) -> RingElement {
        Self::from_terms(
            base.ambient(),
            vec![RingTerm {
                coeff: c,
                base: base.clone(),
                power,
            }],
        )
    }

    /// The degree-one element of a polytope.
    pub fn from_polytope(p: &Polytope) -> RingElement {
        Self::power(&VirtualPolytope::from_polytope(p), 1, Rat::one())
    }

    /// Build from raw terms, merging equal pure powers and dropping zeros.
    pub fn from_terms(ambient: usize, raw: Vec<RingTerm>) -> RingElement {
        let mut terms: Vec<RingTerm> = Vec::new();
        for mut t in raw {
            if t.power == 0 {
                t.base = VirtualPolytope::zero(ambient);
            } else if t.base.is_zero() {
                continue;
            } else {
                let (f, base) = t.base.dilation_normal_form();
                t.coeff *= num_traits::pow(f, t.power);
                t.base = base;
            }
            match terms.iter_mut().find(|s| s.power == t.power && s.base == t.base) {
                Some(s) => s.coeff += t.coeff,
                None => terms.push(t),
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        RingElement { ambient, terms }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn terms(&self) -> &[RingTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms; `None` for the zero element.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>> {
        let Some(first) = self.terms.first() else {
            return Ok(None);
        };
        if self.terms.iter().any(|t| t.power != first.power) {
            return Err(Error::NotHomogeneous);
        }
        Ok(Some(first.power))
    }

    pub fn component(&self, k: usize) -> RingElement {
        RingElement {
            ambient: self.ambient,
            terms: self.terms.iter().filter(|t| t.power == k).cloned().collect(),
        }
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::SpaceMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        let mut raw = self.terms.clone();
        raw.extend(other.terms.iter().cloned());
        Ok(Self::from_terms(self.ambient, raw))
    }

    pub fn scale(&self, s: &Rat) -> RingElement {
        let raw = self
            .terms
            .iter()
            .map(|t| RingTerm {
                coeff: &t.coeff * s,
                ..t.clone()
            })
            .collect();
        Self::from_terms(self.ambient, raw)
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.add(&other.scale(&-Rat::one()))
    }
}

/// `Δ₁·…·Δ_k` as a combination of pure `k`-th powers.
pub fn polarize(monomial: &[VirtualPolytope]) -> Result<RingElement> {
    let Some(first) = monomial.first() else {
        return Err(Error::EmptyInput("monomial needs at least one factor"));
    };
    let ambient = first.ambient();
    if let Some(f) = monomial.iter().find(|f| f.ambient() != ambient) {
        return Err(Error::SpaceMismatch(ambient, f.ambient()));
    }
    let k = monomial.len();
    let raw = polarization(&group(monomial))?
        .into_iter()
        .map(|(coeff, base)| RingTerm { coeff, base, power: k })
        .collect();
    Ok(RingElement::from_terms(ambient, raw))
}

/// Product in the algebra, re-expressed through pure powers.
pub fn ring_multiply(x: &RingElement, y: &RingElement) -> Result<RingElement> {
    x.check(y)?;
    let mut raw = Vec::new();
    for s in &x.terms {
        for t in &y.terms {
            let c = &s.coeff * &t.coeff;
            if s.power == 0 || t.power == 0 {
                let (base, power) = if s.power == 0 { (&t.base, t.power) } else { (&s.base, s.power) };
                raw.push(RingTerm {
                    coeff: c,
                    base: base.clone(),
                    power,
                });
                continue;
            }
            let factors = if s.base == t.base {
                vec![(s.base.clone(), s.power + t.power)]
            } else {
                vec![(s.base.clone(), s.power), (t.base.clone(), t.power)]
            };
            for (w, base) in polarization(&factors)? {
                raw.push(RingTerm {
                    coeff: &c * w,
                    base,
                    power: s.power + t.power,
                });
            }
        }
    }
    Ok(RingElement::from_terms(x.ambient, raw))
}

/// Image under the linear map with the given rows.
pub fn pushforward(rows: &[RVec], x: &RingElement) -> Result<RingElement> {
    let target = rows.len();
    let mut raw = Vec::with_capacity(x.terms.len());
    for t in &x.terms {
        raw.push(RingTerm {
            coeff: t.coeff.clone(),
            base: t.base.linear_image(rows)?,
            power: t.power,
        });
    }
    Ok(RingElement::from_terms(target, raw))
}

/// Which valuation a pairing uses.
#[derive(Clone, Copy, Debug)]
pub enum Measure {
    Volume,
    Pseudovolume(SamplingConfig),
}

/// Value of a pairing with its Monte Carlo error.
#[derive(Clone, Debug, serde::Serialize)]
pub struct PairingValue {
    pub value: f64,
    #[serde(serialize_with = "ser_opt_rat")]
    pub exact: Option<Rat>,
    /// Closed form of pseudovolume pairings when every angle is exact.
    pub exact_text: Option<String>,
    pub error_bound: f64,
}

fn ser_opt_rat<S: serde::Serializer>(r: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&fmt_rat(r)),
        None => s.serialize_none(),
    }
}

fn repeat(p: &Polytope, q: &Polytope, a: usize, b: usize) -> Vec<Polytope> {
    let mut v = vec![p.clone(); a];
    v.extend(std::iter::repeat_n(q.clone(), b));
    v
}

/// `I_ν`: the valuation applied to the top-degree component.
pub fn eval_i(measure: Measure, x: &RingElement) -> Result<PairingValue> {
    match measure {
        Measure::Volume => {
            let m = x.ambient;
            let mut exact = SurdSum::zero();
            for t in x.terms.iter().filter(|t| t.power == m) {
                let (p, q) = (&t.base.plus, &t.base.minus);
                let top = if q.is_point() { 0 } else { m };
                for j in 0..=top {
                    let mv = mixed_volume(&repeat(p, q, m - j, j))?;
                    let mut c = &t.coeff * Rat::from_integer(binomial(m, j));
                    if j % 2 == 1 {
                        c = -c;
                    }
                    exact.add_radical(&mv.mul_rat(&c));
                }
            }
            let value = exact.to_f64();
            let exact_rat = exact.as_rational();
            Ok(PairingValue {
                value,
                exact_text: Some(exact.to_string()),
                exact: exact_rat,
                error_bound: 0.0,
            })
        }
        Measure::Pseudovolume(cfg) => {
            if x.ambient % 2 != 0 {
                return Err(Error::Invalid(format!("ambient dimension {} is odd", x.ambient)));
            }
            let n = x.ambient / 2;
            let mut value = 0.0;
            let mut err = 0.0;
            let mut num = Some(SurdSum::zero());
            for t in x.terms.iter().filter(|t| t.power == n) {
                let (p, q) = (&t.base.plus, &t.base.minus);
                let top = if q.is_point() { 0 } else { n };
                for j in 0..=top {
                    let r = mixed_pseudovolume(&repeat(p, q, n - j, j), &cfg)?;
                    let mut c = &t.coeff * Rat::from_integer(binomial(n, j));
                    if j % 2 == 1 {
                        c = -c;
                    }
                    let cf = to_f64(&c);
                    value += cf * r.value;
                    // the same cone is sampled identically in every term, so
                    // errors are added linearly
                    err += cf.abs() * r.error_bound;
                    num = match (num, r.exact_numerator) {
                        (Some(mut s), Some(e)) => {
                            s.add(&e.mul_rat(&c));
                            Some(s)
                        }
                        _ => None,
                    };
                }
            }
            let exact_text = num.as_ref().map(|s| exact_tag(s, n as i64));
            let exact = num.as_ref().and_then(|s| s.is_zero().then(Rat::zero));
            Ok(PairingValue {
                value,
                exact,
                exact_text,
                error_bound: err,
            })
        }
    }
}

/// `L_ν(x, y) = I_ν(x·y)`.
pub fn eval_l(measure: Measure, x: &RingElement, y: &RingElement) -> Result<PairingValue> {
    eval_i(measure, &ring_multiply(x, y)?)
}

/// Weighted fan of the mixed monomial `P^a Q^b`.
fn monomial_fan_cells(p: &Polytope, q: &Polytope, a: usize, b: usize) -> Result<Vec<(crate::polytope::Cone, Rat)>> {
    let j = a + b;
    let sum = match (a, b) {
        (_, 0) => p.clone(),
        (0, _) => q.clone(),
        _ => minkowski_sum(&[p.clone(), q.clone()])?,
    };
    if sum.dim() < j {
        return Ok(Vec::new());
    }
    let mut cells = Vec::new();
    for f in sum.faces(j)? {
        let w = f.dual_cone.relative_interior_point();
        let parts = repeat(&p.argmax_face(&w), &q.argmax_face(&w), a, b);
        let weight = mixed_volume_in(&parts, &f.tangent)?;
        if !weight.is_zero() {
            cells.push((f.dual_cone, weight));
        }
    }
    Ok(cells)
}

/// Unrefined weighted fan of a homogeneous element: each pure power
/// contributes the dual skeleton of its base, weighted by face volumes.
pub fn weighted_fan_of_raw(x: &RingElement) -> Result<WeightedFan> {
    let m = x.ambient;
    let Some(j) = x.homogeneous_degree()? else {
        return Ok(WeightedFan::empty(m, 0));
    };
    if j > m {
        return Ok(WeightedFan::empty(m, 0));
    }
    let mut cells = Vec::new();
    for t in &x.terms {
        let (p, q) = (&t.base.plus, &t.base.minus);
        let top = if q.is_point() { 0 } else { j };
        for i in 0..=top {
            let mut c = &t.coeff * Rat::from_integer(binomial(j, i));
            if i % 2 == 1 {
                c = -c;
            }
            for (cone, w) in monomial_fan_cells(p, q, j - i, i)? {
                cells.push((cone, w * &c));
            }
        }
    }
    WeightedFan::new(m, m - j, cells)
}

/// Weighted fan of a homogeneous element in canonical (refined, pruned) form.
pub fn weighted_fan_of(x: &RingElement) -> Result<WeightedFan> {
    Ok(weighted_fan_of_raw(x)?.canonical())
}

/// Membership in the kernel of the volume pairing: every weight of the
/// element's fan vanishes.
pub fn in_jvol(x: &RingElement) -> Result<bool> {
    Ok(weighted_fan_of(x)?.is_empty())
}

/// Both sides of the support-function expansion for `Υ·𝔘`, `deg 𝔘 = m − 1`:
/// `m!·vol(Υ·𝔘)` and `Σ_v h_Υ(v/|v|)·(m−1)!·vol_{m−1}(π_v 𝔘)`.
pub fn support_expansion(upsilon: &Polytope, u: &RingElement) -> Result<(Rat, SurdSum)> {
    let m = u.ambient;
    if upsilon.ambient() != m {
        return Err(Error::SpaceMismatch(m, upsilon.ambient()));
    }
    match u.homogeneous_degree()? {
        Some(d) if d + 1 == m => {}
        None => return Ok((Rat::zero(), SurdSum::zero())),
        Some(d) => {
            return Err(Error::DimensionMismatch {
                expected: m - 1,
                found: d,
            })
        }
    }
    let prod = ring_multiply(&RingElement::from_polytope(upsilon), u)?;
    let lhs = eval_i(Measure::Volume, &prod)?
        .exact
        .ok_or_else(|| Error::Invalid("volume pairing is not rational".into()))?
        * Rat::from_integer(factorial(m));

    let mut normals: Vec<RVec> = Vec::new();
    let mut push = |v: RVec| {
        let v = crate::exactnum::rat::primitive(&v);
        if !normals.contains(&v) {
            normals.push(v);
        }
    };
    for t in &u.terms {
        let (p, q) = (&t.base.plus, &t.base.minus);
        for s in [p.clone(), q.clone(), minkowski_sum(&[p.clone(), q.clone()])?] {
            if s.dim() == m {
                for f in s.facets() {
                    push(f.normal.clone());
                }
            } else if s.dim() + 1 == m {
                let n = s.tangent().orthogonal_complement().basis()[0].clone();
                push(crate::exactnum::rat::neg(&n));
                push(n);
            }
        }
    }
    let fm1 = Rat::from_integer(factorial(m - 1));
    let mut rhs = SurdSum::zero();
    for v in &normals {
        let h = support_function(upsilon, v);
        if h.is_zero() {
            continue;
        }
        let hyper = Subspace::span(m, std::slice::from_ref(v)).orthogonal_complement();
        let mut coord = Rat::zero();
        for t in &u.terms {
            let (p, q) = (t.base.plus.argmax_face(v), t.base.minus.argmax_face(v));
            let top = if q.is_point() { 0 } else { m - 1 };
            for j in 0..=top {
                let mv = mixed_volume_in(&repeat(&p, &q, m - 1 - j, j), &hyper)?;
                let mut c = &t.coeff * Rat::from_integer(binomial(m - 1, j));
                if j % 2 == 1 {
                    c = -c;
                }
                coord += c * mv;
            }
        }
        if coord.is_zero() {
            continue;
        }
        let vol = Radical::new(coord * &fm1, &hyper.gram_det());
        let hv = Radical::new(h, &(Rat::one() / norm2(v)));
        rhs.add_radical(&vol.mul(&hv));
    }
    Ok((lhs, rhs))
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

    fn v(p: &Polytope) -> VirtualPolytope {
        VirtualPolytope::from_polytope(p)
    }

    #[test]
    fn virtual_cancellation() {
        let a = square();
        let b = seg(&[0, 0], &[1, 0]);
        let s = minkowski_sum(&[a.clone(), b.clone()]).unwrap();
        let x = VirtualPolytope::new(&s, &b).unwrap();
        assert_eq!(x, v(&a));
        assert!(VirtualPolytope::new(&a, &a.translate(&rvec(&[1, 2]))).unwrap().is_zero());
    }

    #[test]
    fn polarization_examples() {
        let a = v(&seg(&[0, 0], &[1, 0]));
        let b = v(&seg(&[0, 0], &[0, 1]));
        let p1 = polarize(&[a.clone()]).unwrap();
        assert_eq!(p1, RingElement::power(&a, 1, int(1)));
        assert_eq!(polarize(&[a.clone(), a.clone()]).unwrap(), RingElement::power(&a, 2, int(1)));
        let ab = polarize(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(ab.terms().len(), 3);
        assert_eq!(eval_i(Measure::Volume, &ab).unwrap().exact, Some(rat(1, 2)));
    }

    #[test]
    fn products_and_pairings() {
        let sq = RingElement::from_polytope(&square());
        let sq2 = ring_multiply(&sq, &sq).unwrap();
        assert_eq!(sq2, RingElement::power(&v(&square()), 2, int(1)));
        assert_eq!(eval_i(Measure::Volume, &sq2).unwrap().exact, Some(int(1)));
        assert_eq!(eval_i(Measure::Volume, &sq).unwrap().exact, Some(int(0)));
        let a = RingElement::from_polytope(&seg(&[0, 0], &[1, 0]));
        let b = RingElement::from_polytope(&seg(&[0, 0], &[0, 1]));
        let l = eval_l(Measure::Volume, &a, &b).unwrap();
        assert_eq!(l.exact, Some(rat(1, 2)));
        assert_eq!(eval_l(Measure::Volume, &b, &a).unwrap().exact, l.exact);
        let cfg = SamplingConfig::default();
        let p = eval_i(Measure::Pseudovolume(cfg), &sq).unwrap();
        assert!((p.value - 1.0 / std::f64::consts::PI).abs() < 1e-12);
        let x = RingElement::from_polytope(&seg(&[0, 0, 0, 0], &[1, 0, 0, 0]));
        let ix = RingElement::from_polytope(&seg(&[0, 0, 0, 0], &[0, 1, 0, 0]));
        assert_eq!(eval_l(Measure::Pseudovolume(cfg), &x, &ix).unwrap().value, 0.0);
        let c = RingElement::constant(2, int(3));
        assert_eq!(ring_multiply(&c, &sq).unwrap(), sq.scale(&int(3)));
    }

    #[test]
    fn fans_of_elements() {
        let sq = RingElement::from_polytope(&square());
        let f = weighted_fan_of(&sq).unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.cones().len(), 4);
        assert!(f.cones().iter().all(|c| c.weight == int(1)));
        let moved = RingElement::from_polytope(&square().translate(&rvec(&[2, 5])));
        assert!(in_jvol(&sq.sub(&moved).unwrap()).unwrap());
        assert!(!in_jvol(&sq).unwrap());
        let a = v(&seg(&[0, 0], &[1, 0]));
        let b = v(&seg(&[0, 0], &[0, 1]));
        let f = weighted_fan_of(&polarize(&[a, b]).unwrap()).unwrap();
        assert_eq!(f.dim(), 0);
        assert_eq!(f.zero_cone_weight(), rat(1, 2));
        let mixed = RingElement::from_terms(2, vec![RingTerm { coeff: int(1), base: VirtualPolytope::zero(2), power: 1 }]);
        assert!(mixed.is_zero());
        let nh = sq.add(&RingElement::constant(2, int(1))).unwrap();
        assert!(matches!(weighted_fan_of(&nh), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn pushforward_projection() {
        let sq = RingElement::from_polytope(&square());
        let id = vec![rvec(&[1, 0]), rvec(&[0, 1])];
        assert_eq!(pushforward(&id, &sq).unwrap(), sq);
        let pr = vec![rvec(&[1, 0])];
        let img = pushforward(&pr, &sq).unwrap();
        assert_eq!(img, RingElement::from_polytope(&Polytope::hull(&[rvec(&[0]), rvec(&[1])]).unwrap()));
    }

    #[test]
    fn support_expansion_small() {
        let tri = Polytope::hull(&[rvec(&[0, 0]), rvec(&[2, 0]), rvec(&[0, 1])]).unwrap();
        let u = RingElement::from_polytope(&square()).sub(&RingElement::from_polytope(&tri).scale(&rat(1, 3))).unwrap();
        let (lhs, rhs) = support_expansion(&tri, &u).unwrap();
        assert_eq!(rhs.as_rational(), Some(lhs));
    }
}
