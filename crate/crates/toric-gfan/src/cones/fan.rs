//! Fans as face-closed cone collections subdividing a support cone,
//! plus common refinement and the desingularizing subdivision loop.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::hilbert::{parallelepiped_points, triangulate};
use super::{Cone, Location};
use crate::lattice::{cone_index, Int, LatVec};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fan {
    ambient: usize,
    support: Cone,
    maximal: Vec<Cone>,
}

impl Fan {
    pub fn from_maximal(support: Cone, maximal: Vec<Cone>) -> Fan {
        let ambient = support.ambient_rank();
        let mut maximal: Vec<Cone> = maximal;
        maximal.sort();
        maximal.dedup();
        Fan {
            ambient,
            support,
            maximal,
        }
    }

    /// The trivial subdivision {sigma and its faces}.
    pub fn trivial(support: Cone) -> Fan {
        let m = vec![support.clone()];
        Fan::from_maximal(support, m)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn support(&self) -> &Cone {
        &self.support
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    /// All cones of the fan (face closure of the maximal cones), sorted.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut set: BTreeSet<Cone> = BTreeSet::new();
        for c in &self.maximal {
            for f in c.faces() {
                set.insert(f);
            }
        }
        set.into_iter().collect()
    }

    pub fn rays(&self) -> Vec<LatVec> {
        let mut set: BTreeSet<LatVec> = BTreeSet::new();
        for c in &self.maximal {
            for r in c.rays() {
                set.insert(r.clone());
            }
        }
        set.into_iter().collect()
    }

    /// The maximal (or face) cone whose relative interior contains `v`,
    /// if any.
    pub fn cone_containing(&self, v: &LatVec) -> Option<Cone> {
        self.all_cones()
            .into_iter()
            .find(|c| c.contains(v) == Location::RelativeInterior)
    }

    /// Full fan axioms: face closure, pairwise intersections are common
    /// faces, maximal cones cover the support (checked by the wall
    /// property: every facet of a maximal cone is shared by exactly one
    /// other maximal cone unless it lies on the support boundary).
    pub fn check(&self) -> Result<(), String> {
        let dim = self.support.dim();
        for c in &self.maximal {
            for r in c.rays() {
                if self.support.contains(r) == Location::Outside {
                    return Err(format!("cone ray {:?} outside the support", r));
                }
            }
            if c.dim() != dim {
                return Err(format!("maximal cone {:?} is not full-dimensional", c));
            }
        }
        let all = self.all_cones();
        for (i, a) in all.iter().enumerate() {
            for b in all.iter().skip(i + 1) {
                let inter = a
                    .intersect(b)
                    .map_err(|e| format!("bad intersection: {}", e))?;
                if !inter.is_face_of(a) || !inter.is_face_of(b) {
                    return Err(format!(
                        "intersection of {:?} and {:?} is not a common face",
                        a, b
                    ));
                }
            }
        }
        // wall property for covering
        for c in &self.maximal {
            for w in c.facets() {
                let p = w
                    .relative_interior_point()
                    .map_err(|e| format!("wall without interior: {}", e))?;
                let on_boundary = self.support.contains(&p) == Location::Boundary;
                let sharers = self
                    .maximal
                    .iter()
                    .filter(|m| *m != c && w.is_face_of(m))
                    .count();
                if on_boundary && sharers != 0 {
                    return Err(format!("boundary wall {:?} shared {} times", w, sharers));
                }
                if !on_boundary && sharers != 1 {
                    return Err(format!(
                        "interior wall {:?} shared {} times (expected 1)",
                        w, sharers
                    ));
                }
            }
        }
        Ok(())
    }

    /// Common refinement of two subdivisions of the same support.
    pub fn common_refinement(&self, other: &Fan) -> Result<Fan, String> {
        if self.ambient != other.ambient {
            return Err("common_refinement: ambient rank mismatch".into());
        }
        if self.support != other.support {
            return Err("common_refinement: supports differ".into());
        }
        let dim = self.support.dim();
        let mut maximal = Vec::new();
        for a in &self.maximal {
            for b in &other.maximal {
                let c = a.intersect(b)?;
                if c.dim() == dim {
                    maximal.push(c);
                }
            }
        }
        Ok(Fan::from_maximal(self.support.clone(), maximal))
    }

    /// Stellar subdivision at the primitive ray `rho`: every cone whose
    /// relative interior or boundary contains `rho` is split. Assumes all
    /// maximal cones simplicial.
    pub fn stellar_subdivide(&self, rho: &LatVec) -> Fan {
        let mut maximal = Vec::new();
        for c in &self.maximal {
            if c.contains(rho) == Location::Outside {
                maximal.push(c.clone());
                continue;
            }
            let coeffs = c
                .simplicial_coefficients(rho)
                .expect("stellar subdivision requires simplicial cones");
            for (i, t) in coeffs.iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                let mut rays: Vec<LatVec> = c.rays().to_vec();
                rays[i] = rho.clone();
                maximal.push(Cone::from_rays(self.ambient, &rays).expect("stellar piece"));
            }
        }
        Fan::from_maximal(self.support.clone(), maximal)
    }

    /// Triangulates every maximal cone using only existing rays.
    pub fn triangulated(&self) -> Fan {
        let mut maximal = Vec::new();
        for c in &self.maximal {
            for simplex in triangulate(c) {
                maximal.push(Cone::from_rays(self.ambient, &simplex).expect("simplex"));
            }
        }
        Fan::from_maximal(self.support.clone(), maximal)
    }

    /// Refines the fan until every cone is smooth. Input rays are kept;
    /// new rays are primitive fundamental-parallelepiped points chosen by
    /// minimal coefficient sum.
    pub fn regularize(&self) -> Fan {
        let mut fan = self.triangulated();
        loop {
            // the non-smooth cone with smallest (index, rays)
            let mut worst: Option<(Int, Cone)> = None;
            for c in &fan.maximal {
                let idx = cone_index(c.rays()).expect("simplicial cone");
                if idx == Int::from(1) {
                    continue;
                }
                let better = match &worst {
                    None => true,
                    Some((wi, wc)) => (idx.clone(), c) < (wi.clone(), wc),
                };
                if better {
                    worst = Some((idx, c.clone()));
                }
            }
            let Some((_, cone)) = worst else {
                return fan;
            };
            let rho = subdivision_point(&cone);
            fan = fan.stellar_subdivide(&rho);
        }
    }
}

/// The fundamental-parallelepiped lattice point with minimal coefficient
/// sum (ties: lexicographically smallest point), made primitive.
fn subdivision_point(cone: &Cone) -> LatVec {
    let pts = parallelepiped_points(cone.rays());
    let best = pts
        .iter()
        .min_by_key(|(p, coeffs)| {
            let s: BigRational = coeffs.iter().sum();
            (s, p.clone())
        })
        .expect("non-smooth simplicial cone has interior parallelepiped points");
    best.0.primitive()
}
