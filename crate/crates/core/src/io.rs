//! JSON file formats for polytopes, weighted fans and ring elements.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::rat::{fmt_rat, serde_rat, serde_rat_rows, zeros, Rat, RVec};
use crate::exactnum::subspace::Subspace;
use crate::polytope::{Cone, Polytope};
use crate::polytope_ring::{RingElement, RingTerm, VirtualPolytope};
use crate::tropical::WeightedFan;

fn decode<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Invalid(format!("bad {what}: {e}")))
}

#[derive(Deserialize, Serialize)]
struct PolytopeJson {
    ambient_dim: usize,
    #[serde(with = "serde_rat_rows")]
    vertices: Vec<RVec>,
}

pub fn polytope_from_json(v: &Value) -> Result<Polytope> {
    let p: PolytopeJson = decode(v, "polytope")?;
    if let Some(bad) = p.vertices.iter().find(|x| x.len() != p.ambient_dim) {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim,
            found: bad.len(),
        });
    }
    Polytope::hull(&p.vertices)
}

/// Vertex form, vertices sorted.
pub fn polytope_to_json(p: &Polytope) -> Value {
    serde_json::to_value(PolytopeJson {
        ambient_dim: p.ambient(),
        vertices: p.vertices().to_vec(),
    })
    .expect("serializable")
}

/// A list of polytopes: a JSON array, `{"polytopes": [...]}`, or one polytope.
pub fn polytopes_from_json(v: &Value) -> Result<Vec<Polytope>> {
    match v {
        Value::Array(items) => items.iter().map(polytope_from_json).collect(),
        Value::Object(map) if map.contains_key("polytopes") => polytopes_from_json(&map["polytopes"]),
        _ => Ok(vec![polytope_from_json(v)?]),
    }
}

#[derive(Deserialize, Serialize)]
struct ConeJson {
    #[serde(with = "serde_rat_rows")]
    generators: Vec<RVec>,
    #[serde(with = "serde_rat_rows", default, skip_serializing_if = "Vec::is_empty")]
    lineality: Vec<RVec>,
    #[serde(with = "serde_rat")]
    weight: Rat,
}

#[derive(Deserialize)]
struct FanJson {
    ambient_dim: usize,
    dim: usize,
    #[serde(with = "serde_rat_rows", default)]
    space: Vec<RVec>,
    cones: Vec<ConeJson>,
}

/// Weights are read relative to the canonical basis of each cone's
/// orthogonal complement (the Euclidean volume when that basis is orthonormal).
pub fn fan_from_json(v: &Value) -> Result<WeightedFan> {
    let f: FanJson = decode(v, "fan")?;
    let m = f.ambient_dim;
    let check = |rows: &[RVec]| match rows.iter().find(|r| r.len() != m) {
        Some(r) => Err(Error::DimensionMismatch {
            expected: m,
            found: r.len(),
        }),
        None => Ok(()),
    };
    check(&f.space)?;
    let space = if f.space.is_empty() {
        Subspace::full(m)
    } else {
        Subspace::span(m, &f.space)
    };
    let mut cones = Vec::with_capacity(f.cones.len());
    for c in f.cones {
        check(&c.generators)?;
        check(&c.lineality)?;
        cones.push((Cone::from_generators(m, &c.generators, &c.lineality), c.weight));
    }
    WeightedFan::in_space(space, f.dim, cones)
}

pub fn fan_to_json(f: &WeightedFan) -> Value {
    let cones: Vec<Value> = f
        .cones()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v = serde_json::to_value(ConeJson {
                generators: c.cone.rays().to_vec(),
                lineality: c.cone.lineality().basis().to_vec(),
                weight: c.weight.clone(),
            })
            .expect("serializable");
            let e = f.euclidean_weight(i);
            v["weight_euclidean"] = json!(e.to_string());
            v["weight_euclidean_f64"] = json!(e.to_f64());
            v
        })
        .collect();
    let mut out = json!({
        "ambient_dim": f.ambient(),
        "dim": f.dim(),
        "cones": cones,
    });
    if !f.space().is_full() {
        let rows: Vec<Vec<String>> = f.space().basis().iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
        out["space"] = json!(rows);
    }
    out
}

#[derive(Deserialize)]
struct SpaceJson {
    ambient_dim: usize,
}

#[derive(Deserialize)]
struct TermJson {
    degree: usize,
    #[serde(with = "serde_rat")]
    coeff: Rat,
    plus: Option<Value>,
    minus: Option<Value>,
}

#[derive(Deserialize)]
struct RingJson {
    space: SpaceJson,
    terms: Vec<TermJson>,
}

/// Each term is `coeff · (plus − minus)^degree`; a missing polytope is the origin.
pub fn ring_element_from_json(v: &Value) -> Result<RingElement> {
    let r: RingJson = decode(v, "ring element")?;
    let m = r.space.ambient_dim;
    let load = |p: &Option<Value>| -> Result<Polytope> {
        match p {
            None => Ok(Polytope::point(zeros(m))),
            Some(v) => {
                let p = polytope_from_json(v)?;
                if p.ambient() != m {
                    return Err(Error::DimensionMismatch {
                        expected: m,
                        found: p.ambient(),
                    });
                }
                Ok(p)
            }
        }
    };
    let mut terms = Vec::with_capacity(r.terms.len());
    for t in &r.terms {
        terms.push(RingTerm {
            coeff: t.coeff.clone(),
            base: VirtualPolytope::new(&load(&t.plus)?, &load(&t.minus)?)?,
            power: t.degree,
        });
    }
    Ok(RingElement::from_terms(m, terms))
}

pub fn ring_element_to_json(x: &RingElement) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .iter()
        .map(|t| {
            json!({
                "degree": t.power,
                "coeff": fmt_rat(&t.coeff),
                "plus": polytope_to_json(t.base.plus()),
                "minus": polytope_to_json(t.base.minus()),
            })
        })
        .collect();
    json!({"space": {"ambient_dim": x.ambient()}, "terms": terms})
}
