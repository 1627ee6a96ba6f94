//! Shared helpers for the integration suites: catalog rings, seeded
//! randomness, exact linear algebra over the coefficient field, and the
//! degree-truncated brute-force initial-ideal oracle.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_gfan::cones::{Cone, Location};
use toric_gfan::field::{Coeff, FieldSpec};
use toric_gfan::lattice::{Int, LatVec};
use toric_gfan::toric::{ToricIdealSpec, ToricPolynomial, ToricRing};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn lv(v: &[i64]) -> LatVec {
    LatVec::from_i64(v)
}

pub fn orthant_ring(field: FieldSpec) -> ToricRing {
    let sigma = Cone::from_rays_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
    ToricRing::new(sigma, field).unwrap()
}

pub fn a1_ring(field: FieldSpec) -> ToricRing {
    let sigma = Cone::from_rays_i64(2, &[&[0, 1], &[2, -1]]).unwrap();
    ToricRing::new(sigma, field).unwrap()
}

/// sigma dual to cone((1,0),(1,3)).
pub fn cubic_ring(field: FieldSpec) -> ToricRing {
    let sigma = Cone::from_rays_i64(2, &[&[0, 1], &[3, -1]]).unwrap();
    ToricRing::new(sigma, field).unwrap()
}

pub fn catalog(field: FieldSpec) -> Vec<ToricRing> {
    vec![orthant_ring(field), a1_ring(field), cubic_ring(field)]
}

/// Random lattice point of sigma with coordinates bounded by `bound`:
/// a nonnegative integer combination of the rays, rejected if too big.
pub fn random_sigma_point(r: &mut ChaCha8Rng, ring: &ToricRing, bound: i64) -> LatVec {
    loop {
        let mut v = LatVec::zero(ring.rank());
        for ray in ring.sigma().rays() {
            let k = r.gen_range(0..=3i64);
            v = v.add(&ray.scale(&Int::from(k)));
        }
        if v.0.iter().all(|c| c.abs() <= BigInt::from(bound)) {
            return v;
        }
    }
}

/// Random element of sigma_dual ∩ M as a short sum of Hilbert elements.
pub fn random_dual_point(r: &mut ChaCha8Rng, ring: &ToricRing, len: usize) -> LatVec {
    let mut v = LatVec::zero(ring.rank());
    for _ in 0..len {
        let i = r.gen_range(0..ring.hilbert().len());
        v = v.add(&ring.hilbert()[i]);
    }
    v
}

/// Random nonzero ring element with small support and coefficients.
pub fn random_element(r: &mut ChaCha8Rng, ring: &ToricRing, max_terms: usize) -> ToricPolynomial {
    let field = ring.field();
    loop {
        let t = r.gen_range(1..=max_terms);
        let mut terms = Vec::new();
        for _ in 0..t {
            let len = r.gen_range(0..=3usize);
            let e = random_dual_point(r, ring, len);
            let c = loop {
                let c = field.from_int(r.gen_range(-3..=3i64));
                if !field.is_zero(&c) {
                    break c;
                }
            };
            terms.push((e, c));
        }
        let f = ring.element(&terms).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random ideal spec whose generators vanish at the closed orbit.
pub fn random_ideal(r: &mut ChaCha8Rng, ring: &ToricRing, max_gens: usize) -> ToricIdealSpec {
    let g = r.gen_range(1..=max_gens);
    let mut gens = Vec::new();
    let origin = LatVec::zero(ring.rank());
    for _ in 0..g {
        loop {
            let f = random_element(r, ring, 3);
            if ring.field().is_zero(&f.coeff(&origin)) {
                gens.push(f);
                break;
            }
        }
    }
    ToricIdealSpec::new(gens).unwrap()
}

/// Plain rational Gaussian solve of a (possibly rectangular) system.
pub fn solve_rational(
    a: &[Vec<BigRational>],
    b: &[BigRational],
) -> Option<Vec<BigRational>> {
    let rows = a.len();
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for pc in 0..cols {
        let Some(sel) = (pr..rows).find(|&i| !m[i][pc].is_zero()) else {
            continue;
        };
        m.swap(pr, sel);
        let inv = m[pr][pc].clone();
        for x in m[pr].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != pr && !m[i][pc].is_zero() {
                let f = m[i][pc].clone();
                for j in 0..=cols {
                    let val = &m[i][j] - &f * &m[pr][j];
                    m[i][j] = val;
                }
            }
        }
        pivots.push(pc);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    // consistency
    for i in pr..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][cols].clone();
    }
    Some(x)
}

/// A strictly positive integer functional lambda with lambda.alpha = 1
/// for every Hilbert element alpha, when one exists.
pub fn grading_functional(ring: &ToricRing) -> Option<LatVec> {
    let a: Vec<Vec<BigRational>> = ring
        .hilbert()
        .iter()
        .map(|h| h.0.iter().map(|c| BigRational::from(c.clone())).collect())
        .collect();
    let b = vec![BigRational::one(); a.len()];
    let x = solve_rational(&a, &b)?;
    if x.iter().any(|c| !c.is_integer()) {
        return None;
    }
    let lam = LatVec(x.iter().map(|c| c.to_integer()).collect());
    // verify (solve_rational ignores inconsistent overdetermined parts
    // only via the consistency check, but double-check here)
    for h in ring.hilbert() {
        if lam.dot(h) != Int::from(1) {
            return None;
        }
    }
    Some(lam)
}

pub fn degree(lam: &LatVec, f: &ToricPolynomial) -> Int {
    f.terms()
        .map(|(a, _)| lam.dot(a))
        .max()
        .expect("nonzero element")
}

/// All monomial exponents of sigma_dual ∩ M of lambda-degree <= d.
pub fn monomials_up_to(ring: &ToricRing, lam: &LatVec, d: i64) -> Vec<LatVec> {
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier = vec![LatVec::zero(ring.rank())];
    seen.insert(frontier[0].clone());
    while let Some(v) = frontier.pop() {
        for h in ring.hilbert() {
            let w = v.add(h);
            if lam.dot(&w) <= Int::from(d) && seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// Reduced row echelon form of a list of ring elements, with columns
/// (exponents) ordered ascending by (v-weight, exponent); pass None for
/// plain exponent order. Returns nonzero echelon rows.
pub fn reduced_rows(
    field: FieldSpec,
    polys: &[ToricPolynomial],
    v: Option<&LatVec>,
) -> Vec<ToricPolynomial> {
    let mut cols: Vec<LatVec> = std::collections::BTreeSet::from_iter(
        polys.iter().flat_map(|p| p.support()),
    )
    .into_iter()
    .collect();
    cols.sort_by_key(|a| {
        (
            v.map(|w| w.dot(a)).unwrap_or_else(Int::zero),
            a.clone(),
        )
    });
    let ncols = cols.len();
    let idx: std::collections::BTreeMap<LatVec, usize> = cols
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let mut m: Vec<Vec<Coeff>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![field.zero(); ncols];
            for (a, c) in p.terms() {
                row[idx[a]] = c.clone();
            }
            row
        })
        .collect();
    let rows = m.len();
    let mut pr = 0;
    for pc in 0..ncols {
        let Some(sel) = (pr..rows).find(|&i| !field.is_zero(&m[i][pc])) else {
            continue;
        };
        m.swap(pr, sel);
        let inv = field.inv(&m[pr][pc]);
        for x in m[pr].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows {
            if i != pr && !field.is_zero(&m[i][pc]) {
                let f = m[i][pc].clone();
                for j in 0..ncols {
                    let sub = field.mul(&f, &m[pr][j]);
                    m[i][j] = field.sub(&m[i][j], &sub);
                }
            }
        }
        pr += 1;
        if pr == rows {
            break;
        }
    }
    m.truncate(pr);
    m.into_iter()
        .map(|row| {
            let mut p = ToricPolynomial::zero(field);
            for (j, c) in row.into_iter().enumerate() {
                if !field.is_zero(&c) {
                    p.add_term(cols[j].clone(), c);
                }
            }
            p
        })
        .collect()
}

/// Whether f lies in the span of the echelon rows.
pub fn in_span(field: FieldSpec, f: &ToricPolynomial, rows: &[ToricPolynomial], v: Option<&LatVec>) -> bool {
    let mut all = rows.to_vec();
    all.push(f.clone());
    reduced_rows(field, &all, v).len() == reduced_rows(field, rows, v).len()
}

/// Truncation bound for the brute-force oracle, overridable through the
/// environment.
pub fn trunc_degree() -> i64 {
    std::env::var("TORIC_GFAN_TRUNC_DEGREE")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(6)
}

/// Degree-truncated brute-force toric initial ideal: spans all monomial
/// multiples of the generators up to lambda-degree d, row reduces under
/// the (v-weight, exponent) order, and takes the initial form of each
/// echelon row.
pub fn brute_initial_forms(
    ring: &ToricRing,
    spec: &ToricIdealSpec,
    v: &LatVec,
    lam: &LatVec,
    d: i64,
) -> Vec<ToricPolynomial> {
    let field = ring.field();
    let mut products = Vec::new();
    for g in &spec.generators {
        let gd = i64::try_from(&degree(lam, g)).unwrap();
        for beta in monomials_up_to(ring, lam, d - gd) {
            let mono = ring
                .element(&[(beta, field.one())])
                .expect("monomial in sigma_dual");
            products.push(mono.mul(g));
        }
    }
    let rows = reduced_rows(field, &products, Some(v));
    let initials: Vec<ToricPolynomial> = rows
        .iter()
        .map(|r| ring.initial_form(v, r).unwrap())
        .collect();
    reduced_rows(field, &initials, Some(v))
}

/// Compares toric_initial_ideal with the brute-force truncated oracle at
/// one weight vector; the span check escalates the truncation bound a
/// little because the element realizing a low-degree initial may itself
/// have higher degree.
pub fn check_initial_against_oracle(
    ring: &ToricRing,
    spec: &ToricIdealSpec,
    v: &LatVec,
    lam: &LatVec,
    d: i64,
) {
    let computed = ring.toric_initial_ideal(spec, v).unwrap();
    let lifted_in = ring.lift_ideal(&computed).unwrap();
    let oracle = brute_initial_forms(ring, spec, v, lam, d);

    for f in &oracle {
        let h = ring.naive_lift(f).unwrap();
        assert!(
            lifted_in.contains(&h),
            "oracle initial form {:?} missing from computed ideal at v={:?}",
            f,
            v
        );
    }
    let slack = 2;
    for f in &computed.generators {
        if degree(lam, f) > Int::from(d - slack) {
            continue;
        }
        let mut found = in_span(ring.field(), f, &oracle, Some(v));
        let mut dd = d;
        while !found && dd < d + 4 {
            dd += 2;
            let deeper = brute_initial_forms(ring, spec, v, lam, dd);
            found = in_span(ring.field(), f, &deeper, Some(v));
        }
        assert!(
            found,
            "computed generator {:?} outside oracle span at v={:?} (degree {})",
            f, v, dd
        );
    }
}

fn push_tie_normals(
    ring: &ToricRing,
    support: &[&toric_gfan::polynomials::Monomial],
    normals: &mut Vec<LatVec>,
) {
    for i in 0..support.len() {
        for j in i + 1..support.len() {
            let diff: Vec<i64> = support[i]
                .0
                .iter()
                .zip(&support[j].0)
                .map(|(a, b)| a - b)
                .collect();
            let gamma = LatVec::from_i64(&diff);
            let h = ring.mmatrix().mul_vec(&gamma);
            if h.is_zero() {
                continue;
            }
            let h = h.primitive();
            let hn = h.neg();
            if !normals.contains(&h) && !normals.contains(&hn) {
                normals.push(h);
            }
        }
    }
}

/// Splits sigma along the weight-tie hyperplanes of the lifted
/// generators' supports and of the marked bases, giving
/// full-dimensional cells on which the initial ideal is constant and
/// which refine the computed fan.
pub fn arrangement_cells(
    ring: &ToricRing,
    spec: &ToricIdealSpec,
    g: &toric_gfan::gfan::GroebnerFanRestricted,
) -> Vec<Cone> {
    let lifted = ring.lift_ideal(spec).unwrap();
    let mut normals: Vec<LatVec> = Vec::new();
    for f in lifted.generators() {
        let support: Vec<&toric_gfan::polynomials::Monomial> =
            f.terms().map(|(m, _)| m).collect();
        push_tie_normals(ring, &support, &mut normals);
    }
    for (_, payload) in g.payloads() {
        for (marked, tail) in payload.marked_gb.pairs() {
            let support: Vec<&toric_gfan::polynomials::Monomial> = marked
                .terms()
                .chain(tail.terms())
                .map(|(m, _)| m)
                .collect();
            push_tie_normals(ring, &support, &mut normals);
        }
    }
    let n = ring.rank();
    let dim = ring.sigma().dim();
    let mut cells = vec![ring.sigma().clone()];
    for h in &normals {
        let mut next = Vec::new();
        for cell in cells {
            for side in [h.clone(), h.neg()] {
                let mut ineqs = cell.facet_normals();
                ineqs.push(side);
                let piece =
                    Cone::from_halfspaces(n, &cell.equations(), &ineqs).unwrap();
                if piece.dim() == dim {
                    next.push(piece);
                }
            }
        }
        next.sort();
        next.dedup();
        cells = next;
    }
    cells
}

/// The wall-crossing fan must agree with the exhaustive arrangement: two
/// adjacent cells share a computed maximal cone exactly when their
/// classes agree, and every cell agrees with its computed cone.
pub fn check_fan_against_arrangement(ring: &ToricRing, spec: &ToricIdealSpec) {
    use toric_gfan::gfan::{restricted_groebner_fan, same_class};
    let g = restricted_groebner_fan(ring, spec).unwrap();
    let cells = arrangement_cells(ring, spec, &g);
    let home = |cell: &Cone| -> usize {
        g.fan()
            .maximal_cones()
            .iter()
            .position(|k| {
                cell.rays()
                    .iter()
                    .all(|r| k.contains(r) != Location::Outside)
            })
            .expect("cell inside some computed cone")
    };
    for (i, a) in cells.iter().enumerate() {
        let pa = a.relative_interior_point().unwrap();
        let ka = home(a);
        let rep = g.fan().maximal_cones()[ka]
            .relative_interior_point()
            .unwrap();
        assert!(
            same_class(ring, spec, &pa, &rep).unwrap(),
            "cell disagrees with its computed cone"
        );
        for b in cells.iter().skip(i + 1) {
            let shared = a.intersect(b).unwrap();
            if shared.dim() + 1 != a.dim() {
                continue; // not adjacent through a wall
            }
            let pb = b.relative_interior_point().unwrap();
            let same_cone = ka == home(b);
            let same_cls = same_class(ring, spec, &pa, &pb).unwrap();
            assert_eq!(
                same_cone, same_cls,
                "wall structure disagrees with the arrangement oracle"
            );
        }
    }
}

/// Is omega in phi(sigma)? Solved exactly through M^T v = omega.
pub fn in_phi_sigma(ring: &ToricRing, omega: &[i64]) -> bool {
    let mt = ring.mmatrix().transpose();
    let a: Vec<Vec<BigRational>> = (0..mt.rows)
        .map(|i| {
            mt.row(i)
                .0
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect()
        })
        .collect();
    let b: Vec<BigRational> = omega
        .iter()
        .map(|&x| BigRational::from(BigInt::from(x)))
        .collect();
    let Some(x) = solve_rational(&a, &b) else {
        return false;
    };
    if x.iter().any(|c| !c.is_integer()) {
        return false;
    }
    let v = LatVec(x.iter().map(|c| c.to_integer()).collect());
    if ring.mmatrix().transpose().mul_vec(&v).0
        != omega.iter().map(|&x| Int::from(x)).collect::<Vec<_>>()
    {
        return false;
    }
    ring.sigma().contains(&v) != Location::Outside
}
