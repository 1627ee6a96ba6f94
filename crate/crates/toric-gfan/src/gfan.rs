//! Groebner cones in weight space and the Groebner fan of an ideal of
//! R_sigma restricted to sigma, computed by wall crossing with symbolic
//! perturbation.

use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use crate::cones::{Cone, Fan, Location};
use crate::lattice::{Int, LatVec};
use crate::polynomials::Ideal;
use crate::toric::{ToricIdealSpec, ToricRing};

/// A reduced Groebner basis with each element split into its
/// weight-minimal (marked) part and its tail.
#[derive(Clone)]
pub struct MarkedGB {
    num_vars: usize,
    pairs: Vec<(crate::polynomials::Polynomial, crate::polynomials::Polynomial)>,
}

impl MarkedGB {
    pub fn new(ideal: &Ideal, tiers: &[Vec<Int>]) -> MarkedGB {
        MarkedGB {
            num_vars: ideal.num_vars,
            pairs: ideal.weighted_marked_basis(tiers),
        }
    }

    pub fn pairs(
        &self,
    ) -> &[(crate::polynomials::Polynomial, crate::polynomials::Polynomial)] {
        &self.pairs
    }

    /// The ideal generated by the marked parts.
    pub fn initial_ideal(&self, field: crate::field::FieldSpec) -> Ideal {
        Ideal::new(
            field,
            self.num_vars,
            self.pairs.iter().map(|(init, _)| init.clone()).collect(),
        )
    }

    /// The closed cone of weights under which every marked part stays
    /// minimal: `{w >= 0 : w.a <= w.b}` over marked exponents a and
    /// trailing exponents b.
    pub fn cone(&self) -> Cone {
        let s = self.num_vars;
        let mut ineqs: Vec<LatVec> = (0..s)
            .map(|i| {
                let mut v = vec![Int::zero(); s];
                v[i] = Int::from(1);
                LatVec(v)
            })
            .collect();
        for (init, tail) in &self.pairs {
            for (a, _) in init.terms() {
                for (b, _) in tail.terms() {
                    let diff: Vec<Int> = a
                        .0
                        .iter()
                        .zip(&b.0)
                        .map(|(ai, bi)| Int::from(bi - ai))
                        .collect();
                    ineqs.push(LatVec(diff));
                }
            }
        }
        Cone::from_halfspaces(s, &[], &ineqs).expect("groebner cone inside the orthant")
    }
}

/// The Groebner cone of (J, w): closure of the set of nonnegative
/// weights with the same initial ideal as w.
pub fn groebner_cone(ideal: &Ideal, w: &[Int]) -> Result<Cone, String> {
    if w.iter().any(|x| x < &Int::zero()) {
        return Err("groebner_cone: negative weight entries".into());
    }
    Ok(MarkedGB::new(ideal, &[w.to_vec()]).cone())
}

#[derive(Clone)]
pub struct ConePayload {
    /// In_v(J_spec) as an ideal of R_sigma.
    pub initial_ideal: ToricIdealSpec,
    /// In_omega(J) on the K[y] side.
    pub lifted_initial: Ideal,
    /// The marked basis certifying the class.
    pub marked_gb: MarkedGB,
}

/// The Groebner fan of an ideal of R_sigma restricted to sigma, with the
/// class data attached to each maximal cone.
pub struct GroebnerFanRestricted {
    fan: Fan,
    payloads: BTreeMap<Cone, ConePayload>,
}

impl GroebnerFanRestricted {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn payload(&self, cone: &Cone) -> Option<&ConePayload> {
        self.payloads.get(cone)
    }

    pub fn payloads(&self) -> impl Iterator<Item = (&Cone, &ConePayload)> {
        self.payloads.iter()
    }
}

/// Perturbation tiers in weight space for the lattice chain
/// `v0 + eps v1 + eps^2 v2 + ...` in N.
fn omega_tiers(ring: &ToricRing, chain: &[LatVec]) -> Vec<Vec<Int>> {
    let mt = ring.mmatrix().transpose();
    chain.iter().map(|v| mt.mul_vec(v).0).collect()
}

/// A chain making any interior base point fully generic: the standard
/// basis of N appended as lower-order tiers.
fn generic_tail(n: usize) -> Vec<LatVec> {
    (0..n)
        .map(|i| {
            let mut v = vec![Int::zero(); n];
            v[i] = Int::from(1);
            LatVec(v)
        })
        .collect()
}

fn class_at(
    ring: &ToricRing,
    lifted: &Ideal,
    chain: &[LatVec],
) -> Result<(Cone, ConePayload), String> {
    let tiers = omega_tiers(ring, chain);
    let mgb = MarkedGB::new(lifted, &tiers);
    let cone = ring.phi_pullback(&mgb.cone())?;
    let lifted_initial = mgb.initial_ideal(ring.field());
    let generators = lifted_initial
        .groebner_basis()
        .iter()
        .map(|g| ring.psi_apply(g))
        .filter(|f| !f.is_zero())
        .collect();
    Ok((
        cone,
        ConePayload {
            initial_ideal: ToricIdealSpec { generators },
            lifted_initial,
            marked_gb: mgb,
        },
    ))
}

/// Theorem 1.1 object: the subdivision of sigma into closures of
/// equivalence classes of weight vectors, traversed wall by wall.
pub fn restricted_groebner_fan(
    ring: &ToricRing,
    spec: &ToricIdealSpec,
) -> Result<GroebnerFanRestricted, String> {
    let sigma = ring.sigma().clone();
    if !sigma.is_full_dimensional() {
        return Err("restricted_groebner_fan: sigma must be full-dimensional".into());
    }
    let n = ring.rank();
    let lifted = ring.lift_ideal(spec)?;
    let tail = generic_tail(n);

    let mut start_chain = vec![sigma.relative_interior_point()?];
    start_chain.extend(tail.iter().cloned());
    let (first, first_payload) = class_at(ring, &lifted, &start_chain)?;

    let mut payloads: BTreeMap<Cone, ConePayload> = BTreeMap::new();
    let mut queue: VecDeque<Cone> = VecDeque::new();
    payloads.insert(first.clone(), first_payload);
    queue.push_back(first);

    while let Some(cone) = queue.pop_front() {
        for facet in cone.facets() {
            let p = facet.relative_interior_point()?;
            if sigma.contains(&p) != Location::RelativeInterior {
                continue; // wall on the boundary of sigma
            }
            let outward = cone
                .facet_normals()
                .into_iter()
                .find(|a| a.dot(&p).is_zero())
                .ok_or("wall without a defining facet normal")?
                .neg();
            let mut chain = vec![p, outward];
            chain.extend(tail.iter().cloned());
            let (neighbor, payload) = class_at(ring, &lifted, &chain)?;
            if let std::collections::btree_map::Entry::Vacant(e) =
                payloads.entry(neighbor.clone())
            {
                e.insert(payload);
                queue.push_back(neighbor);
            }
        }
    }

    // Marked-basis cones can subdivide a class (the marking changes
    // while In_v(J_spec) does not); merge cones with equal initial
    // ideals into the class closure, which Thm 1.1 guarantees is a cone.
    let cones: Vec<Cone> = payloads.keys().cloned().collect();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, c) in cones.iter().enumerate() {
        let pi = &payloads[c];
        let mut found = None;
        for (gi, members) in groups.iter().enumerate() {
            let rep = &payloads[&cones[members[0]]];
            if ring.same_toric_ideal(&pi.initial_ideal, &rep.initial_ideal)? {
                found = Some(gi);
                break;
            }
        }
        match found {
            Some(gi) => groups[gi].push(i),
            None => groups.push(vec![i]),
        }
    }
    let mut merged: BTreeMap<Cone, ConePayload> = BTreeMap::new();
    for members in &groups {
        let mut rays: Vec<LatVec> = Vec::new();
        for &i in members {
            rays.extend(cones[i].rays().iter().cloned());
        }
        let hull = Cone::from_rays(n, &rays)?;
        let payload = payloads[&cones[members[0]]].clone();
        merged.insert(hull, payload);
    }
    let maximal: Vec<Cone> = merged.keys().cloned().collect();
    let fan = Fan::from_maximal(sigma, maximal);
    fan.check()?;
    Ok(GroebnerFanRestricted {
        fan,
        payloads: merged,
    })
}

/// Whether v1 ~ v2, i.e. In_{v1}(J_spec) = In_{v2}(J_spec).
pub fn same_class(
    ring: &ToricRing,
    spec: &ToricIdealSpec,
    v1: &LatVec,
    v2: &LatVec,
) -> Result<bool, String> {
    let a = ring.toric_initial_ideal(spec, v1)?;
    let b = ring.toric_initial_ideal(spec, v2)?;
    ring.same_toric_ideal(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::polynomials::{Monomial, Polynomial};

    fn lv(v: &[i64]) -> LatVec {
        LatVec::from_i64(v)
    }

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|x| Int::from(*x)).collect()
    }

    fn a1_ring() -> ToricRing {
        let sigma = Cone::from_rays_i64(2, &[&[0, 1], &[2, -1]]).unwrap();
        ToricRing::new(sigma, FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn groebner_cone_single_monomial() {
        let q = FieldSpec::Rationals;
        let j = Ideal::new(q, 3, vec![Polynomial::var(q, 3, 0)]);
        let c = groebner_cone(&j, &iv(&[1, 1, 1])).unwrap();
        let orthant =
            Cone::from_rays_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(c, orthant);
    }

    fn a1_lifted() -> Ideal {
        let q = FieldSpec::Rationals;
        let lin = Polynomial::var(q, 3, 0).add(&Polynomial::var(q, 3, 2));
        let mut bin = Polynomial::zero(q, 3);
        bin.add_term(Monomial(vec![1, 0, 1]), q.one());
        bin.add_term(Monomial(vec![0, 2, 0]), q.from_int(-1));
        Ideal::new(q, 3, vec![lin, bin])
    }

    #[test]
    fn groebner_cone_a1() {
        let j = a1_lifted();
        let nonneg: Vec<LatVec> = (0..3)
            .map(|i| {
                let mut v = vec![0i64; 3];
                v[i] = 1;
                lv(&v)
            })
            .collect();
        let c = groebner_cone(&j, &iv(&[0, 1, 2])).unwrap();
        let mut ineqs = nonneg.clone();
        ineqs.push(lv(&[-1, 0, 1]));
        ineqs.push(lv(&[0, -1, 1]));
        assert_eq!(c, Cone::from_halfspaces(3, &[], &ineqs).unwrap());
        assert_ne!(c.contains(&lv(&[0, 1, 2])), Location::Outside);

        let c2 = groebner_cone(&j, &iv(&[2, 1, 0])).unwrap();
        let mut ineqs2 = nonneg;
        ineqs2.push(lv(&[1, 0, -1]));
        ineqs2.push(lv(&[1, -1, 0]));
        assert_eq!(c2, Cone::from_halfspaces(3, &[], &ineqs2).unwrap());

        // interior points of the cone share the initial ideal
        let p = c.relative_interior_point().unwrap();
        let at_p = j.initial_ideal(&p.0).unwrap();
        let at_w = j.initial_ideal(&iv(&[0, 1, 2])).unwrap();
        assert!(at_p.equals(&at_w));
    }

    #[test]
    fn fan_of_monomial_ideal_is_trivial() {
        let r = a1_ring();
        let m = r.element_i64(&[(&[1, 1], 1)]).unwrap();
        let g = restricted_groebner_fan(&r, &ToricIdealSpec::new(vec![m]).unwrap()).unwrap();
        assert_eq!(g.fan().maximal_cones(), &[r.sigma().clone()]);
    }

    #[test]
    fn fan_of_a1_example() {
        let r = a1_ring();
        let f = r.element_i64(&[(&[1, 0], 1), (&[1, 2], 1)]).unwrap();
        let spec = ToricIdealSpec::new(vec![f]).unwrap();
        let g = restricted_groebner_fan(&r, &spec).unwrap();
        let expected = vec![
            Cone::from_rays_i64(2, &[&[0, 1], &[1, 0]]).unwrap(),
            Cone::from_rays_i64(2, &[&[1, 0], &[2, -1]]).unwrap(),
        ];
        let mut got = g.fan().maximal_cones().to_vec();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);

        // payloads match pointwise recomputation and are pairwise distinct
        for (cone, payload) in g.payloads() {
            let p = cone.relative_interior_point().unwrap();
            let direct = r.toric_initial_ideal(&spec, &p).unwrap();
            assert!(r.same_toric_ideal(&direct, &payload.initial_ideal).unwrap());
        }
        let pl: Vec<&ConePayload> = g.payloads().map(|(_, p)| p).collect();
        assert!(!r
            .same_toric_ideal(&pl[0].initial_ideal, &pl[1].initial_ideal)
            .unwrap());
    }

    #[test]
    fn fan_with_middle_term() {
        let r = a1_ring();
        let f = r
            .element_i64(&[(&[1, 0], 1), (&[1, 1], 1), (&[1, 2], 1)])
            .unwrap();
        let g =
            restricted_groebner_fan(&r, &ToricIdealSpec::new(vec![f]).unwrap()).unwrap();
        let mut got = g.fan().maximal_cones().to_vec();
        got.sort();
        let mut want = vec![
            Cone::from_rays_i64(2, &[&[0, 1], &[1, 0]]).unwrap(),
            Cone::from_rays_i64(2, &[&[1, 0], &[2, -1]]).unwrap(),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn same_class_examples() {
        let r = a1_ring();
        let f = r.element_i64(&[(&[1, 0], 1), (&[1, 2], 1)]).unwrap();
        let spec = ToricIdealSpec::new(vec![f]).unwrap();
        assert!(same_class(&r, &spec, &lv(&[0, 1]), &lv(&[0, 1])).unwrap());
        assert!(same_class(&r, &spec, &lv(&[0, 1]), &lv(&[1, 1])).unwrap());
        assert!(!same_class(&r, &spec, &lv(&[0, 1]), &lv(&[2, -1])).unwrap());
    }

    #[test]
    fn sampling_consistency() {
        let r = a1_ring();
        let f = r.element_i64(&[(&[1, 0], 1), (&[1, 2], 1)]).unwrap();
        let spec = ToricIdealSpec::new(vec![f]).unwrap();
        let g = restricted_groebner_fan(&r, &spec).unwrap();
        for v in [[0i64, 1], [1, 2], [1, 0], [3, 0], [2, -1], [3, -1], [5, 1]] {
            let v = lv(&v);
            let home = g.fan().cone_containing(&v).unwrap();
            let p = home.relative_interior_point().unwrap();
            let at_v = r.toric_initial_ideal(&spec, &v).unwrap();
            let at_p = r.toric_initial_ideal(&spec, &p).unwrap();
            assert!(r.same_toric_ideal(&at_v, &at_p).unwrap(), "v = {:?}", v);
        }
    }

    #[test]
    fn orthant_plane_curve_fan() {
        // sigma = first orthant, J = (x + y^2): tie locus v1 = 2 v2
        let sigma = Cone::from_rays_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let r = ToricRing::new(sigma, FieldSpec::Rationals).unwrap();
        let f = r.element_i64(&[(&[1, 0], 1), (&[0, 2], 1)]).unwrap();
        let g =
            restricted_groebner_fan(&r, &ToricIdealSpec::new(vec![f]).unwrap()).unwrap();
        let mut got = g.fan().maximal_cones().to_vec();
        got.sort();
        let mut want = vec![
            Cone::from_rays_i64(2, &[&[1, 0], &[2, 1]]).unwrap(),
            Cone::from_rays_i64(2, &[&[2, 1], &[0, 1]]).unwrap(),
        ];
        want.sort();
        assert_eq!(got, want);
    }
}
