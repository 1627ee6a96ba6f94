//! Hilbert bases by triangulate-then-enumerate, and the triangulation /
//! fundamental-parallelepiped helpers shared with the regularization
//! loop.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Cone, Location};
use crate::lattice::{Int, IntMatrix, LatVec};

/// Triangulates a cone into simplicial subcones spanned by existing rays
/// (pulling triangulation in the canonical ray order).
pub fn triangulate(cone: &Cone) -> Vec<Vec<LatVec>> {
    let d = cone.dim();
    if d == 0 {
        return vec![];
    }
    if cone.rays().len() == d {
        return vec![cone.rays().to_vec()];
    }
    let apex = cone.rays()[0].clone();
    let mut out = Vec::new();
    for a in cone.facet_normals() {
        if a.dot(&apex).is_zero() {
            continue; // facet contains the apex
        }
        let sub: Vec<LatVec> = cone
            .rays()
            .iter()
            .filter(|r| a.dot(r).is_zero())
            .cloned()
            .collect();
        let facet = Cone::from_rays(cone.ambient_rank(), &sub).expect("facet of pointed cone");
        for mut simplex in triangulate(&facet) {
            simplex.push(apex.clone());
            simplex.sort();
            out.push(simplex);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Lattice points of the half-open fundamental parallelepiped
/// `{ sum t_i g_i : 0 <= t_i < 1 }` of linearly independent generators,
/// excluding the origin. Each point is returned with its coefficient
/// vector.
pub fn parallelepiped_points(gens: &[LatVec]) -> Vec<(LatVec, Vec<BigRational>)> {
    assert!(!gens.is_empty());
    let n = gens[0].len();
    let mut lo = vec![Int::zero(); n];
    let mut hi = vec![Int::zero(); n];
    for g in gens {
        for k in 0..n {
            if g.0[k].is_negative() {
                lo[k] += &g.0[k];
            } else {
                hi[k] += &g.0[k];
            }
        }
    }
    let gmat = IntMatrix::from_cols(gens);
    let mut out = Vec::new();
    let mut cur = vec![Int::zero(); n];
    enumerate_box(&lo, &hi, 0, &mut cur, &mut |point: &[Int]| {
        let v = LatVec(point.to_vec());
        if v.is_zero() {
            return;
        }
        if let Some((x, den)) = crate::lattice::solve_scaled(&gmat, &v) {
            // consistency: the solve can succeed only approximately for
            // points off the span; verify exactly
            if gmat.mul_vec(&x) != v.scale(&den) {
                return;
            }
            let coeffs: Vec<BigRational> = x
                .0
                .iter()
                .map(|xi| BigRational::new(xi.clone(), den.clone()))
                .collect();
            if coeffs
                .iter()
                .all(|t| !t.is_negative() && *t < BigRational::one())
            {
                out.push((v, coeffs));
            }
        }
    });
    out
}

fn enumerate_box(
    lo: &[Int],
    hi: &[Int],
    k: usize,
    cur: &mut Vec<Int>,
    f: &mut impl FnMut(&[Int]),
) {
    if k == lo.len() {
        f(cur);
        return;
    }
    let mut v = lo[k].clone();
    while v <= hi[k] {
        cur[k] = v.clone();
        enumerate_box(lo, hi, k + 1, cur, f);
        v += 1;
    }
}

/// The unique minimal generating set of the semigroup `c ∩ Z^n`, for a
/// strongly convex full-dimensional cone, in canonical (sorted) order.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<LatVec>, String> {
    if !c.is_full_dimensional() {
        return Err("hilbert_basis: cone must be full-dimensional".into());
    }
    // candidate generators: rays plus parallelepiped points of each
    // simplicial piece
    let mut cands: BTreeSet<LatVec> = c.rays().iter().cloned().collect();
    for simplex in triangulate(c) {
        for (p, _) in parallelepiped_points(&simplex) {
            cands.insert(p);
        }
    }
    // strictly positive grading: sum of facet normals
    let mut grade = LatVec::zero(c.ambient_rank());
    for a in c.facet_normals() {
        grade = grade.add(&a);
    }
    let mut sorted: Vec<LatVec> = cands.into_iter().collect();
    sorted.sort_by_key(|v| (grade.dot(v), v.clone()));
    let mut kept: Vec<LatVec> = Vec::new();
    for v in sorted {
        let mut memo = BTreeMap::new();
        if !representable(&v, &kept, c, &grade, &mut memo) {
            kept.push(v);
        }
    }
    kept.sort();
    Ok(kept)
}

/// Can `v` be written as a nonnegative integer combination of `gens`
/// (with at least one summand)?
fn representable(
    v: &LatVec,
    gens: &[LatVec],
    cone: &Cone,
    grade: &LatVec,
    memo: &mut BTreeMap<LatVec, bool>,
) -> bool {
    if let Some(&r) = memo.get(v) {
        return r;
    }
    let mut ok = false;
    for g in gens {
        if grade.dot(g) > grade.dot(v) {
            continue;
        }
        let rest = v.sub(g);
        if rest.is_zero() {
            ok = true;
            break;
        }
        if cone.contains(&rest) == Location::Outside {
            continue;
        }
        if representable(&rest, gens, cone, grade, memo) {
            ok = true;
            break;
        }
    }
    memo.insert(v.clone(), ok);
    ok
}
