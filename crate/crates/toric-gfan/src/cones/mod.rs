//! Rational polyhedral cones and fans: dual cones, Hilbert bases,
//! membership, smoothness, refinement and desingularizing subdivision.
//!
//! Dimensions are tiny here, so V- and H-representations are converted
//! by direct enumeration of tight constraint subsets rather than an
//! incremental double-description method.

mod fan;
mod hilbert;

pub use fan::Fan;
pub use hilbert::hilbert_basis;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::lattice::{
    cone_index, kernel_basis, solve_scaled, subsets_of_size, Int, IntMatrix, LatVec,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Location {
    Outside,
    Boundary,
    RelativeInterior,
}

/// A strongly convex rational polyhedral cone in canonical form: the
/// primitive extreme rays, sorted, so structural equality is equality of
/// cones.
#[derive(Clone)]
pub struct Cone {
    ambient: usize,
    rays: Vec<LatVec>,
    derived: OnceLock<Derived>,
}

#[derive(Clone)]
struct Derived {
    /// Basis of the orthogonal complement of the linear span.
    equations: Vec<LatVec>,
    /// Saturated lattice basis of the linear span.
    span_basis: Vec<LatVec>,
    /// Facet normals as ambient vectors; irredundant.
    normals: Vec<LatVec>,
    dim: usize,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rays == other.rays
    }
}
impl Eq for Cone {}
impl std::hash::Hash for Cone {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.rays.hash(state);
    }
}
impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cone {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, &self.rays).cmp(&(other.ambient, &other.rays))
    }
}
impl std::fmt::Debug for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cone{:?}", self.rays)
    }
}

impl Cone {
    /// Canonicalizes an arbitrary generator list: primitive rays,
    /// redundant generators removed, sorted. Rejects non-pointed input.
    pub fn from_rays(ambient: usize, gens: &[LatVec]) -> Result<Cone, String> {
        let mut prim: Vec<LatVec> = gens
            .iter()
            .filter(|v| !v.is_zero())
            .map(|v| {
                assert_eq!(v.len(), ambient, "ray arity mismatch");
                v.primitive()
            })
            .collect();
        prim.sort();
        prim.dedup();
        if prim.is_empty() {
            return Ok(Cone::zero(ambient));
        }
        let derived = derive(ambient, &prim)?;
        // extreme rays of {u : N u >= 0} in span coordinates
        let coords: Vec<LatVec> = prim
            .iter()
            .map(|r| span_coords(&derived.span_basis, r))
            .collect();
        let normal_coords: Vec<LatVec> = derived
            .normals
            .iter()
            .map(|a| project_functional(&derived.span_basis, a))
            .collect();
        let d = derived.dim;
        let ray_coords = extreme_rays(d, &normal_coords)?;
        let mut rays: Vec<LatVec> = ray_coords
            .iter()
            .map(|u| from_span_coords(&derived.span_basis, u).primitive())
            .collect();
        rays.sort();
        // sanity: extreme rays are among the primitive generators
        debug_assert!(rays.iter().all(|r| prim.contains(r)),
            "extreme ray not among generators: {:?} vs {:?}", rays, prim);
        let _ = coords;
        let cone = Cone {
            ambient,
            rays,
            derived: OnceLock::new(),
        };
        let _ = cone.derived.set(derived);
        Ok(cone)
    }

    pub fn from_rays_i64(ambient: usize, gens: &[&[i64]]) -> Result<Cone, String> {
        let vs: Vec<LatVec> = gens.iter().map(|g| LatVec::from_i64(g)).collect();
        Self::from_rays(ambient, &vs)
    }

    /// The cone `{x : e.x = 0 for e in equations, a.x >= 0 for a in
    /// inequalities}`. Rejects non-pointed results.
    pub fn from_halfspaces(
        ambient: usize,
        equations: &[LatVec],
        inequalities: &[LatVec],
    ) -> Result<Cone, String> {
        let span = if equations.is_empty() {
            (0..ambient)
                .map(|i| {
                    let mut v = vec![Int::zero(); ambient];
                    v[i] = Int::from(1);
                    LatVec(v)
                })
                .collect::<Vec<_>>()
        } else {
            kernel_basis(&IntMatrix::from_rows(equations))
        };
        let d = span.len();
        if d == 0 {
            return Ok(Cone::zero(ambient));
        }
        let ineq_coords: Vec<LatVec> = inequalities
            .iter()
            .map(|a| project_functional(&span, a))
            .collect();
        let ray_coords = extreme_rays(d, &ineq_coords)?;
        let rays: Vec<LatVec> = ray_coords
            .iter()
            .map(|u| from_span_coords(&span, u).primitive())
            .collect();
        Cone::from_rays(ambient, &rays)
    }

    pub fn zero(ambient: usize) -> Cone {
        Cone {
            ambient,
            rays: vec![],
            derived: OnceLock::new(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[LatVec] {
        &self.rays
    }

    pub fn is_zero_cone(&self) -> bool {
        self.rays.is_empty()
    }

    fn derived(&self) -> &Derived {
        self.derived
            .get_or_init(|| derive(self.ambient, &self.rays).expect("canonical cone is pointed"))
    }

    pub fn dim(&self) -> usize {
        if self.rays.is_empty() {
            0
        } else {
            self.derived().dim
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Defining equations (span complement basis).
    pub fn equations(&self) -> Vec<LatVec> {
        if self.rays.is_empty() {
            return (0..self.ambient)
                .map(|i| {
                    let mut v = vec![Int::zero(); self.ambient];
                    v[i] = Int::from(1);
                    LatVec(v)
                })
                .collect();
        }
        self.derived().equations.clone()
    }

    /// Irredundant facet normals as ambient vectors (valid together with
    /// the equations).
    pub fn facet_normals(&self) -> Vec<LatVec> {
        if self.rays.is_empty() {
            return vec![];
        }
        self.derived().normals.clone()
    }

    pub fn contains(&self, v: &LatVec) -> Location {
        assert_eq!(v.len(), self.ambient, "ambient rank mismatch");
        if v.is_zero() {
            return if self.rays.is_empty() {
                Location::RelativeInterior
            } else {
                Location::Boundary
            };
        }
        if self.rays.is_empty() {
            return Location::Outside;
        }
        let d = self.derived();
        for e in &d.equations {
            if !e.dot(v).is_zero() {
                return Location::Outside;
            }
        }
        let mut on_boundary = false;
        for a in &d.normals {
            let s = a.dot(v);
            if s.is_negative() {
                return Location::Outside;
            }
            if s.is_zero() {
                on_boundary = true;
            }
        }
        if on_boundary {
            Location::Boundary
        } else {
            Location::RelativeInterior
        }
    }

    /// Sum of the primitive ray generators; lies in the relative interior.
    pub fn relative_interior_point(&self) -> Result<LatVec, String> {
        if self.rays.is_empty() {
            return Err("relative interior point of the zero cone".into());
        }
        let mut s = LatVec::zero(self.ambient);
        for r in &self.rays {
            s = s.add(r);
        }
        Ok(s)
    }

    /// Smooth: linearly independent rays forming part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        if self.rays.is_empty() {
            return true;
        }
        match cone_index(&self.rays) {
            Ok(idx) => idx == Int::from(1),
            Err(_) => false,
        }
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.is_empty() || IntMatrix::from_rows(&self.rays).rank() == self.rays.len()
    }

    /// Dual cone of a full-dimensional cone.
    pub fn dual(&self) -> Result<Cone, String> {
        if !self.is_full_dimensional() {
            return Err("dual_cone: input not full-dimensional".into());
        }
        Cone::from_rays(self.ambient, &self.derived().normals)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, String> {
        assert_eq!(self.ambient, other.ambient);
        let mut eqs = self.equations();
        eqs.extend(other.equations());
        let mut ineqs = self.facet_normals();
        ineqs.extend(other.facet_normals());
        Cone::from_halfspaces(self.ambient, &eqs, &ineqs)
    }

    /// Facets: codimension-1 faces.
    pub fn facets(&self) -> Vec<Cone> {
        let d = match self.dim() {
            0 => return vec![],
            d => d,
        };
        let mut out = Vec::new();
        for a in self.facet_normals() {
            let sub: Vec<LatVec> = self
                .rays
                .iter()
                .filter(|r| a.dot(r).is_zero())
                .cloned()
                .collect();
            let f = Cone::from_rays(self.ambient, &sub).expect("face of pointed cone");
            debug_assert_eq!(f.dim(), d - 1);
            out.push(f);
        }
        out.sort();
        out.dedup();
        out
    }

    /// All faces including the cone itself and the zero cone.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut frontier = vec![self.clone()];
        while let Some(c) = frontier.pop() {
            if seen.contains(&c) {
                continue;
            }
            frontier.extend(c.facets());
            seen.insert(c);
        }
        seen.insert(Cone::zero(self.ambient));
        seen.into_iter().collect()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        other.faces().contains(self)
    }

    /// Expresses `v` in the cone as nonnegative rational coefficients of
    /// the rays (only valid for simplicial cones).
    pub fn simplicial_coefficients(&self, v: &LatVec) -> Option<Vec<num_rational::BigRational>> {
        if !self.is_simplicial() {
            return None;
        }
        let g = IntMatrix::from_cols(&self.rays);
        let (x, den) = solve_scaled(&g, v)?;
        use num_rational::BigRational;
        Some(
            x.0.iter()
                .map(|xi| BigRational::new(xi.clone(), den.clone()))
                .collect(),
        )
    }
}

fn derive(ambient: usize, rays: &[LatVec]) -> Result<Derived, String> {
    let equations = kernel_basis(&IntMatrix::from_rows(rays));
    let span_basis = if equations.is_empty() {
        (0..ambient)
            .map(|i| {
                let mut v = vec![Int::zero(); ambient];
                v[i] = Int::from(1);
                LatVec(v)
            })
            .collect::<Vec<_>>()
    } else {
        kernel_basis(&IntMatrix::from_rows(&equations))
    };
    let d = span_basis.len();
    let coords: Vec<LatVec> = rays.iter().map(|r| span_coords(&span_basis, r)).collect();
    let normal_coords = extreme_rays(d, &coords)
        .map_err(|_| "cone is not strongly convex".to_string())?;
    // pointedness: normals span the coordinate space
    if !normal_coords.is_empty() {
        let rank = IntMatrix::from_rows(&normal_coords).rank();
        if rank != d {
            return Err("cone is not strongly convex".into());
        }
    } else if d > 0 {
        return Err("cone is not strongly convex".into());
    }
    let normals: Vec<LatVec> = normal_coords
        .iter()
        .map(|u| lift_functional(&span_basis, u))
        .collect();
    Ok(Derived {
        equations,
        span_basis,
        normals,
        dim: d,
    })
}

/// Coordinates of `v` in the (saturated) span basis. Panics if `v` is
/// outside the span or non-integral in it.
fn span_coords(basis: &[LatVec], v: &LatVec) -> LatVec {
    let b = IntMatrix::from_cols(basis);
    let (x, den) = solve_scaled(&b, v).expect("vector outside span");
    assert!(den == Int::from(1), "vector not in the saturated span lattice");
    x
}

fn from_span_coords(basis: &[LatVec], u: &LatVec) -> LatVec {
    let mut v = LatVec::zero(basis[0].len());
    for (c, b) in u.0.iter().zip(basis) {
        v = v.add(&b.scale(c));
    }
    v
}

/// Restriction of an ambient functional `a` to span coordinates:
/// `(a . b_1, ..., a . b_d)`.
fn project_functional(basis: &[LatVec], a: &LatVec) -> LatVec {
    LatVec(basis.iter().map(|b| a.dot(b)).collect())
}

/// An ambient functional restricting to `u` on the span: solves
/// `B a = u` and clears denominators (positive scale only).
fn lift_functional(basis: &[LatVec], u: &LatVec) -> LatVec {
    let b = IntMatrix::from_rows(basis);
    let (a, _den) = solve_scaled(&b, u).expect("span basis has full row rank");
    a.primitive()
}

/// Extreme rays of `{u in R^d : A u >= 0}` by enumeration of tight
/// subsets of rank d-1. Errors when the cone is not pointed.
fn extreme_rays(d: usize, ineqs: &[LatVec]) -> Result<Vec<LatVec>, String> {
    if d == 0 {
        return Ok(vec![]);
    }
    if ineqs.is_empty() || IntMatrix::from_rows(ineqs).rank() != d {
        return Err("halfspace system is not pointed".into());
    }
    let mut out: BTreeSet<LatVec> = BTreeSet::new();
    for subset in subsets_of_size(ineqs.len(), d - 1) {
        let rows: Vec<LatVec> = subset.iter().map(|&i| ineqs[i].clone()).collect();
        let kern = if rows.is_empty() {
            debug_assert_eq!(d, 1);
            vec![LatVec(vec![Int::from(1)])]
        } else {
            kernel_basis(&IntMatrix::from_rows(&rows))
        };
        if kern.len() != 1 {
            continue;
        }
        let k = kern[0].primitive();
        for cand in [k.clone(), k.neg()] {
            if ineqs.iter().all(|a| !a.dot(&cand).is_negative()) {
                out.insert(cand);
                break;
            }
        }
    }
    Ok(out.into_iter().collect())
}
