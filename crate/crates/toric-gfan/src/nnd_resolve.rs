//! Newton non-degeneracy certification and the toric embedded
//! resolution pipeline: regular refinement of the restricted Groebner
//! fan, monomial charts, exceptional multiplicities, strict transforms
//! and normal-crossing verification.

use std::fmt;

use crate::cones::{Cone, Fan, Location};
use crate::field::FieldSpec;
use crate::gfan::{restricted_groebner_fan, GroebnerFanRestricted};
use crate::lattice::{subsets_of_size, Int, LatVec};
use crate::parallel::map_maybe_par;
use crate::polynomials::{Ideal, Monomial, Polynomial};
use crate::toric::{ToricIdealSpec, ToricRing};

#[derive(Debug, Clone)]
pub enum NndError {
    /// Violated hypothesis of the definitions (reported separately from
    /// internal failures so callers can exit differently).
    Precondition(String),
    Internal(String),
}

impl fmt::Display for NndError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NndError::Precondition(s) => write!(f, "precondition: {}", s),
            NndError::Internal(s) => write!(f, "{}", s),
        }
    }
}

impl From<String> for NndError {
    fn from(s: String) -> Self {
        NndError::Internal(s)
    }
}

#[derive(Clone)]
pub struct NndWitness {
    pub cone: Cone,
    pub representative: LatVec,
    pub initial_ideal: ToricIdealSpec,
    pub smooth_on_torus: bool,
}

#[derive(Clone)]
pub struct NndReport {
    pub verdict: bool,
    pub witnesses: Vec<NndWitness>,
    pub failing_cone: Option<Cone>,
}

#[derive(Clone)]
pub struct ResolutionChart {
    /// Smooth maximal cone with ray basis u^1..u^n in canonical order;
    /// chart variable z_k corresponds to u^k.
    pub cone: Cone,
    /// Pullbacks of the generators under x^alpha -> prod z_k^{u^k.alpha}.
    pub pullbacks: Vec<Polynomial>,
    /// Per generator, the vector (nu_{u^1}(f), ..., nu_{u^n}(f)).
    pub exceptional_mults: Vec<Vec<Int>>,
    /// (pullback ideal) : (z1...zn)^infinity.
    pub strict_transform: Ideal,
    /// Indices k whose divisor z_k = 0 is exceptional (u^k is not a ray
    /// of sigma).
    pub exceptional: Vec<usize>,
    pub snc_verdict: bool,
}

pub struct ResolutionOutput {
    /// The smooth refinement Sigma of the restricted Groebner fan.
    pub fan: Fan,
    pub charts: Vec<ResolutionChart>,
    /// Maximal cones of the Groebner fan, in canonical order.
    pub groebner_cones: Vec<Cone>,
    /// For every cone of Sigma, the index into `groebner_cones` of a
    /// containing Groebner cone.
    pub compatibility: Vec<(Cone, usize)>,
}

/// Determinant of a square polynomial matrix by Laplace expansion.
fn poly_det(m: &[Vec<Polynomial>], field: FieldSpec, num_vars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(field, num_vars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(field, num_vars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(k, p)| if k != j { Some(p.clone()) } else { None })
                    .collect()
            })
            .collect();
        let cof = m[0][j].mul(&poly_det(&minor, field, num_vars));
        if j % 2 == 0 {
            acc = acc.add(&cof);
        } else {
            acc = acc.sub(&cof);
        }
    }
    acc
}

/// All c x c minors of the Jacobian of `gens`, optionally with extra
/// unit rows for the coordinates in `coords`.
fn jacobian_minors(
    gens: &[Polynomial],
    coords: &[usize],
    c: usize,
    field: FieldSpec,
    num_vars: usize,
) -> Vec<Polynomial> {
    let mut rows: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| (0..num_vars).map(|i| g.partial_derivative(i)).collect())
        .collect();
    for &k in coords {
        let mut row = vec![Polynomial::zero(field, num_vars); num_vars];
        row[k] = Polynomial::one(field, num_vars);
        rows.push(row);
    }
    let mut out = Vec::new();
    if c == 0 {
        out.push(Polynomial::one(field, num_vars));
        return out;
    }
    if rows.len() < c || num_vars < c {
        return out;
    }
    for ri in subsets_of_size(rows.len(), c) {
        for ci in subsets_of_size(num_vars, c) {
            let sub: Vec<Vec<Polynomial>> = ri
                .iter()
                .map(|&i| ci.iter().map(|&j| rows[i][j].clone()).collect())
                .collect();
            let d = poly_det(&sub, field, num_vars);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// Whether V(I) has no singular point on the torus (K*)^s: saturate away
/// the coordinate hyperplanes, then run the Jacobian criterion at the
/// computed codimension and saturate the singular scheme again.
pub fn smooth_on_torus(ideal: &Ideal) -> bool {
    let s = ideal.num_vars;
    let all = Monomial(vec![1; s]);
    let torus_part = ideal.saturate(&all);
    if torus_part.is_unit() {
        return true;
    }
    let c = (s as i64 - torus_part.krull_dimension()) as usize;
    let gens: Vec<Polynomial> = torus_part.groebner_basis().to_vec();
    let minors = jacobian_minors(&gens, &[], c, ideal.field, s);
    let sing = torus_part.sum(&Ideal::new(ideal.field, s, minors));
    sing.saturate(&all).is_unit()
}

fn check_vanishes_at_origin(spec: &ToricIdealSpec, ring: &ToricRing) -> Result<(), NndError> {
    let origin = LatVec::zero(ring.rank());
    for g in &spec.generators {
        if !g.field().is_zero(&g.coeff(&origin)) {
            return Err(NndError::Precondition(
                "generator does not vanish at the closed orbit O".into(),
            ));
        }
    }
    Ok(())
}

fn is_nnd_with_fan(
    ring: &ToricRing,
    spec: &ToricIdealSpec,
    gfan: &GroebnerFanRestricted,
) -> Result<NndReport, NndError> {
    check_vanishes_at_origin(spec, ring)?;
    let lifted = ring.lift_ideal(spec)?;
    let cones = gfan.fan().all_cones();
    let results: Vec<Result<NndWitness, String>> = map_maybe_par(cones, |cone| {
        let v = if cone.is_zero_cone() {
            LatVec::zero(ring.rank())
        } else {
            cone.relative_interior_point()?
        };
        let omega = ring.phi(&v)?;
        let init = lifted.initial_ideal(&omega.0)?;
        let smooth = smooth_on_torus(&init);
        let generators = init
            .groebner_basis()
            .iter()
            .map(|g| ring.psi_apply(g))
            .filter(|f| !f.is_zero())
            .collect();
        Ok(NndWitness {
            cone,
            representative: v,
            initial_ideal: ToricIdealSpec { generators },
            smooth_on_torus: smooth,
        })
    });
    let mut witnesses = Vec::new();
    for r in results {
        witnesses.push(r?);
    }
    let failing_cone = witnesses
        .iter()
        .find(|w| !w.smooth_on_torus)
        .map(|w| w.cone.clone());
    Ok(NndReport {
        verdict: failing_cone.is_none(),
        witnesses,
        failing_cone,
    })
}

/// Def 1.2 check: every cone of the restricted Groebner fan (all
/// dimensions, the zero face included) must give an initial ideal whose
/// variety is smooth on the torus.
pub fn is_nnd(ring: &ToricRing, spec: &ToricIdealSpec) -> Result<NndReport, NndError> {
    let gfan = restricted_groebner_fan(ring, spec)?;
    is_nnd_with_fan(ring, spec, &gfan)
}

/// Builds the chart of a smooth maximal cone: pullbacks, exceptional
/// multiplicities, strict transform and the SNC certificate.
pub fn chart_transform(
    ring: &ToricRing,
    cone: &Cone,
    spec: &ToricIdealSpec,
) -> Result<ResolutionChart, String> {
    let n = ring.rank();
    if !cone.is_full_dimensional() || !cone.is_smooth() {
        return Err("chart_transform: cone must be a smooth maximal cone".into());
    }
    let rays = cone.rays().to_vec();
    let field = ring.field();
    let mut pullbacks = Vec::new();
    let mut exceptional_mults = Vec::new();
    for f in &spec.generators {
        let mut p = Polynomial::zero(field, n);
        for (alpha, coeff) in f.terms() {
            let exps: Vec<i64> = rays
                .iter()
                .map(|u| i64::try_from(&u.dot(alpha)).expect("small chart exponent"))
                .collect();
            p.add_term(Monomial(exps), coeff.clone());
        }
        pullbacks.push(p);
        let mults: Vec<Int> = rays
            .iter()
            .map(|u| ring.nu(u, f).map(|m| m.expect("nonzero generator")))
            .collect::<Result<_, String>>()?;
        exceptional_mults.push(mults);
    }
    let strict_transform =
        Ideal::new(field, n, pullbacks.clone()).saturate(&Monomial(vec![1; n]));
    let sigma_rays: Vec<&LatVec> = ring.sigma().rays().iter().collect();
    let exceptional: Vec<usize> = (0..n)
        .filter(|&k| !sigma_rays.contains(&&rays[k]))
        .collect();
    let mut chart = ResolutionChart {
        cone: cone.clone(),
        pullbacks,
        exceptional_mults,
        strict_transform,
        exceptional,
        snc_verdict: false,
    };
    chart.snc_verdict = verify_snc(&chart);
    Ok(chart)
}

/// Whether the strict transform is smooth and meets every exceptional
/// stratum of its chart transversally.
pub fn verify_snc(chart: &ResolutionChart) -> bool {
    let s = &chart.strict_transform;
    if s.is_unit() {
        return true;
    }
    let field = s.field;
    let n = s.num_vars;
    let gens: Vec<Polynomial> = s.groebner_basis().to_vec();
    let c = (n as i64 - s.krull_dimension()) as usize;

    // (a) smoothness of the strict transform everywhere in the chart
    let sing = s.sum(&Ideal::new(field, n, jacobian_minors(&gens, &[], c, field, n)));
    if !sing.is_unit() {
        return false;
    }

    // (b) transversality with every exceptional stratum
    for size in 1..=chart.exceptional.len() {
        for idx in subsets_of_size(chart.exceptional.len(), size) {
            let e: Vec<usize> = idx.iter().map(|&i| chart.exceptional[i]).collect();
            let mut stratum_gens = gens.clone();
            for &k in &e {
                stratum_gens.push(Polynomial::var(field, n, k));
            }
            let stratum = Ideal::new(field, n, stratum_gens);
            if stratum.is_unit() {
                continue;
            }
            let r = c + e.len();
            let minors = jacobian_minors(&gens, &e, r, field, n);
            let sing = stratum.sum(&Ideal::new(field, n, minors));
            // deeper strata are checked with their own subset
            let deeper: Vec<i64> = (0..n)
                .map(|k| {
                    if chart.exceptional.contains(&k) && !e.contains(&k) {
                        1
                    } else {
                        0
                    }
                })
                .collect();
            let cleared = if deeper.iter().any(|&x| x > 0) {
                sing.saturate(&Monomial(deeper))
            } else {
                sing
            };
            if !cleared.is_unit() {
                return false;
            }
        }
    }
    true
}

/// Thm 1.3 pipeline: certify NND, regularize the restricted Groebner
/// fan, and emit one monomial chart per smooth maximal cone.
pub fn resolve(
    ring: &ToricRing,
    spec: &ToricIdealSpec,
    override_nnd: bool,
) -> Result<ResolutionOutput, NndError> {
    let gfan = restricted_groebner_fan(ring, spec)?;
    let report = is_nnd_with_fan(ring, spec, &gfan)?;
    if !report.verdict && !override_nnd {
        return Err(NndError::Precondition(format!(
            "ideal is not Newton non-degenerate; failing cone rays {:?}",
            report.failing_cone.map(|c| c.rays().to_vec())
        )));
    }
    let fan = gfan.fan().regularize();
    let charts_res: Vec<Result<ResolutionChart, String>> = map_maybe_par(
        fan.maximal_cones().to_vec(),
        |cone| chart_transform(ring, &cone, spec),
    );
    let mut charts = Vec::new();
    for c in charts_res {
        charts.push(c?);
    }
    let groebner_cones: Vec<Cone> = gfan.fan().maximal_cones().to_vec();
    let mut compatibility = Vec::new();
    for cone in fan.all_cones() {
        let idx = groebner_cones
            .iter()
            .position(|g| {
                cone.rays()
                    .iter()
                    .all(|r| g.contains(r) != Location::Outside)
            })
            .ok_or_else(|| {
                NndError::Internal("refined cone escapes the Groebner fan".into())
            })?;
        compatibility.push((cone, idx));
    }
    Ok(ResolutionOutput {
        fan,
        charts,
        groebner_cones,
        compatibility,
    })
}
