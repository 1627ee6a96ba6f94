//! Independent oracles for the computed initial ideals and fans: a
//! degree-truncated brute-force toric-side initial ideal, an exhaustive
//! hyperplane-arrangement fan, and saturation property checks.

mod common;

use common::*;
use rand::Rng;
use toric_gfan::field::FieldSpec;
use toric_gfan::gfan::restricted_groebner_fan;
use toric_gfan::polynomials::{Ideal, Monomial, Polynomial};
use toric_gfan::toric::ToricIdealSpec;

#[test]
fn truncated_initial_ideal_oracle_a1() {
    let ring = a1_ring(FieldSpec::Rationals);
    let lam = grading_functional(&ring).unwrap();
    let d = trunc_degree();
    let f = ring.element_i64(&[(&[1, 0], 1), (&[1, 2], 1)]).unwrap();
    let spec = ToricIdealSpec::new(vec![f]).unwrap();
    for v in [[0i64, 1], [1, 0], [2, -1], [1, 1], [3, -1], [0, 0]] {
        check_initial_against_oracle(&ring, &spec, &lv(&v), &lam, d);
    }
}

#[test]
fn truncated_initial_ideal_oracle_random() {
    let mut r = rng(41);
    let d = trunc_degree();
    for ring in catalog(FieldSpec::Rationals) {
        let lam = grading_functional(&ring).unwrap();
        for _ in 0..5 {
            let spec = random_ideal(&mut r, &ring, 2);
            for _ in 0..6 {
                let v = random_sigma_point(&mut r, &ring, 8);
                check_initial_against_oracle(&ring, &spec, &v, &lam, d);
            }
        }
    }
}

#[test]
fn arrangement_oracle_instances() {
    let q = FieldSpec::Rationals;

    let ring = a1_ring(q);
    let f = ring.element_i64(&[(&[1, 0], 1), (&[1, 2], 1)]).unwrap();
    check_fan_against_arrangement(&ring, &ToricIdealSpec::new(vec![f]).unwrap());

    let f2 = ring
        .element_i64(&[(&[1, 0], 1), (&[1, 1], 1), (&[1, 2], 1)])
        .unwrap();
    check_fan_against_arrangement(&ring, &ToricIdealSpec::new(vec![f2]).unwrap());

    let orth = orthant_ring(q);
    let g1 = orth.element_i64(&[(&[1, 0], 1), (&[0, 1], 1)]).unwrap();
    check_fan_against_arrangement(&orth, &ToricIdealSpec::new(vec![g1]).unwrap());

    // three maximal cones: min(3a, a+b, 3b)
    let g2 = orth
        .element_i64(&[(&[3, 0], 1), (&[1, 1], 1), (&[0, 3], 1)])
        .unwrap();
    let spec2 = ToricIdealSpec::new(vec![g2]).unwrap();
    let fan2 = restricted_groebner_fan(&orth, &spec2).unwrap();
    assert_eq!(fan2.fan().maximal_cones().len(), 3);
    check_fan_against_arrangement(&orth, &spec2);

    // two generators; In_v = (x, y) everywhere, so the fan is trivial
    let g3 = orth.element_i64(&[(&[2, 0], 1), (&[0, 1], 1)]).unwrap();
    let g4 = orth.element_i64(&[(&[1, 0], 1), (&[0, 2], 1)]).unwrap();
    let spec3 = ToricIdealSpec::new(vec![g3, g4]).unwrap();
    let fan3 = restricted_groebner_fan(&orth, &spec3).unwrap();
    assert_eq!(fan3.fan().maximal_cones(), &[orth.sigma().clone()]);
    check_fan_against_arrangement(&orth, &spec3);
}

#[test]
fn arrangement_oracle_random() {
    let mut r = rng(97);
    for ring in catalog(FieldSpec::Rationals) {
        for _ in 0..3 {
            let spec = random_ideal(&mut r, &ring, 2);
            check_fan_against_arrangement(&ring, &spec);
        }
    }
}

/// Saturation: containment, multiplier absorption, idempotence.
#[test]
fn saturation_properties() {
    let q = FieldSpec::Rationals;
    let mut r = rng(7);
    for _ in 0..10 {
        let s = 3usize;
        let mut gens = Vec::new();
        for _ in 0..r.gen_range(1..=2usize) {
            let mut g = Polynomial::zero(q, s);
            for _ in 0..r.gen_range(1..=3usize) {
                let m = Monomial(vec![
                    r.gen_range(0..=2i64),
                    r.gen_range(0..=2i64),
                    r.gen_range(0..=2i64),
                ]);
                g.add_term(m, q.from_int(r.gen_range(-2..=2i64)));
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(q, s, gens);
        let m = Monomial(vec![1, 1, 0]);
        let sat = ideal.saturate(&m);
        // I subset I : m^inf
        for g in ideal.generators() {
            assert!(sat.contains(g));
        }
        // each new generator re-enters I after multiplying by m^k
        for g in sat.generators() {
            let mut h = g.clone();
            let mut absorbed = ideal.contains(&h);
            for _ in 0..6 {
                if absorbed {
                    break;
                }
                h = h.mul_term(&m, &q.one());
                absorbed = ideal.contains(&h);
            }
            assert!(absorbed, "saturation generator never absorbed");
        }
        // idempotence
        assert!(sat.saturate(&m).equals(&sat));
    }
}
