//! JSON schemas for jobs and results. Coefficients travel as strings to
//! stay exact; exponents and ray coordinates as integer arrays.

use serde::{Deserialize, Serialize};

use crate::cones::{Cone, Fan};
use crate::field::FieldSpec;
use crate::lattice::{Int, LatVec};
use crate::polynomials::Polynomial;
use crate::toric::{ToricIdealSpec, ToricPolynomial, ToricRing};

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TermDoc {
    pub coeff: String,
    pub exponent: Vec<i64>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FanDoc {
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct JobDocument {
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub sigma: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub ideal: Option<Vec<Vec<TermDoc>>>,
    #[serde(default)]
    pub weight: Option<Vec<i64>>,
    #[serde(default)]
    pub fan: Option<FanDoc>,
    #[serde(default)]
    pub section: Option<Vec<i64>>,
}

pub fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = s.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| format!("bad prime in field spec '{}'", s))?;
        return FieldSpec::prime(p);
    }
    Err(format!("unknown field spec '{}' (expected Q or Fp:<p>)", s))
}

pub fn latvec_to_doc(v: &LatVec) -> Vec<i64> {
    v.0.iter()
        .map(|x| i64::try_from(x).expect("coordinate fits in i64"))
        .collect()
}

pub fn int_to_doc(x: &Int) -> i64 {
    i64::try_from(x).expect("value fits in i64")
}

pub fn sigma_from_doc(doc: &JobDocument) -> Result<Cone, String> {
    let rays = doc
        .sigma
        .as_ref()
        .ok_or("document is missing 'sigma'")?;
    if rays.is_empty() {
        return Err("'sigma' must list at least one ray".into());
    }
    let n = rays[0].len();
    if rays.iter().any(|r| r.len() != n) {
        return Err("'sigma' rays have mixed lengths".into());
    }
    let vs: Vec<LatVec> = rays.iter().map(|r| LatVec::from_i64(r)).collect();
    Cone::from_rays(n, &vs)
}

pub fn ring_from_doc(doc: &JobDocument, field: FieldSpec) -> Result<ToricRing, String> {
    ToricRing::new(sigma_from_doc(doc)?, field)
}

pub fn ideal_from_doc(
    doc: &JobDocument,
    ring: &ToricRing,
) -> Result<ToricIdealSpec, String> {
    let gens = doc.ideal.as_ref().ok_or("document is missing 'ideal'")?;
    let field = ring.field();
    let mut out = Vec::new();
    for g in gens {
        let mut terms = Vec::new();
        for t in g {
            let c = field.parse(&t.coeff)?;
            terms.push((LatVec::from_i64(&t.exponent), c));
        }
        out.push(ring.element(&terms)?);
    }
    ToricIdealSpec::new(out)
}

pub fn toric_poly_to_doc(f: &ToricPolynomial) -> Vec<TermDoc> {
    f.terms()
        .map(|(a, c)| TermDoc {
            coeff: f.field().format(c),
            exponent: latvec_to_doc(a),
        })
        .collect()
}

pub fn poly_to_doc(f: &Polynomial) -> Vec<TermDoc> {
    f.terms()
        .map(|(m, c)| TermDoc {
            coeff: f.field.format(c),
            exponent: m.0.clone(),
        })
        .collect()
}

pub fn fan_to_doc(fan: &Fan) -> FanDoc {
    let rays = fan.rays();
    let maximal_cones = fan
        .maximal_cones()
        .iter()
        .map(|c| {
            c.rays()
                .iter()
                .map(|r| rays.iter().position(|x| x == r).expect("ray indexed"))
                .collect()
        })
        .collect();
    FanDoc {
        rays: rays.iter().map(latvec_to_doc).collect(),
        maximal_cones,
    }
}

pub fn fan_from_doc(doc: &FanDoc) -> Result<Fan, String> {
    if doc.rays.is_empty() {
        return Err("fan document has no rays".into());
    }
    let n = doc.rays[0].len();
    let rays: Vec<LatVec> = doc.rays.iter().map(|r| LatVec::from_i64(r)).collect();
    let mut maximal = Vec::new();
    for idx in &doc.maximal_cones {
        let cs: Vec<LatVec> = idx
            .iter()
            .map(|&i| {
                rays.get(i)
                    .cloned()
                    .ok_or_else(|| format!("ray index {} out of range", i))
            })
            .collect::<Result<_, String>>()?;
        maximal.push(Cone::from_rays(n, &cs)?);
    }
    // support: the hull of everything listed
    let support = Cone::from_rays(n, &rays)?;
    Ok(Fan::from_maximal(support, maximal))
}
