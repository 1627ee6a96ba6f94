//! The semigroup ring R_sigma = K[sigma_dual ∩ M], the surjection Psi
//! from K[y1..ys] and the weight map phi, toric ideals, ideal lifting,
//! toric initial ideals and max-weight lifts.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use crate::cones::{hilbert_basis, Cone, Location};
use crate::field::{Coeff, FieldSpec};
use crate::lattice::{Int, IntMatrix, LatVec};
use crate::polynomials::{Ideal, Monomial, Polynomial};

#[derive(Clone)]
pub struct ToricRing {
    sigma: Cone,
    sigma_dual: Cone,
    hilbert: Vec<LatVec>,
    mmatrix: IntMatrix,
    field: FieldSpec,
    toric_ideal: OnceLock<Ideal>,
}

/// Element of R_sigma: finitely many terms a_alpha x^alpha with
/// exponents in sigma_dual ∩ M.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ToricPolynomial {
    field: FieldSpec,
    terms: BTreeMap<LatVec, Coeff>,
}

/// An ideal of R_sigma given by a finite generator list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ToricIdealSpec {
    pub generators: Vec<ToricPolynomial>,
}

impl ToricPolynomial {
    pub fn zero(field: FieldSpec) -> Self {
        ToricPolynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatVec, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<LatVec> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, alpha: &LatVec) -> Coeff {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, alpha: LatVec, c: Coeff) {
        let cur = match self.terms.remove(&alpha) {
            Some(old) => self.field.add(&old, &c),
            None => c,
        };
        if !self.field.is_zero(&cur) {
            self.terms.insert(alpha, cur);
        }
    }

    pub fn add(&self, other: &ToricPolynomial) -> ToricPolynomial {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> ToricPolynomial {
        let mut out = ToricPolynomial::zero(self.field);
        for (a, c) in &self.terms {
            out.terms.insert(a.clone(), self.field.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &ToricPolynomial) -> ToricPolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ToricPolynomial) -> ToricPolynomial {
        let mut out = ToricPolynomial::zero(self.field);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.add(b), self.field.mul(c, d));
            }
        }
        out
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

impl ToricRing {
    pub fn new(sigma: Cone, field: FieldSpec) -> Result<ToricRing, String> {
        if !sigma.is_full_dimensional() {
            return Err("toric ring: sigma must be full-dimensional".into());
        }
        let sigma_dual = sigma.dual()?;
        let hilbert = hilbert_basis(&sigma_dual)?;
        let mmatrix = IntMatrix::from_cols(&hilbert);
        Ok(ToricRing {
            sigma,
            sigma_dual,
            hilbert,
            mmatrix,
            field,
            toric_ideal: OnceLock::new(),
        })
    }

    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    pub fn sigma_dual(&self) -> &Cone {
        &self.sigma_dual
    }

    pub fn hilbert(&self) -> &[LatVec] {
        &self.hilbert
    }

    pub fn mmatrix(&self) -> &IntMatrix {
        &self.mmatrix
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Rank of N and M.
    pub fn rank(&self) -> usize {
        self.sigma.ambient_rank()
    }

    /// Number s of ambient polynomial variables.
    pub fn num_vars(&self) -> usize {
        self.hilbert.len()
    }

    /// Builds an element of R_sigma, checking every exponent lies in
    /// sigma_dual ∩ M.
    pub fn element(
        &self,
        terms: &[(LatVec, Coeff)],
    ) -> Result<ToricPolynomial, String> {
        let mut f = ToricPolynomial::zero(self.field);
        for (alpha, c) in terms {
            if alpha.len() != self.rank() {
                return Err("exponent rank mismatch".into());
            }
            if self.sigma_dual.contains(alpha) == Location::Outside {
                return Err(format!("exponent {:?} outside sigma_dual", alpha));
            }
            f.add_term(alpha.clone(), c.clone());
        }
        Ok(f)
    }

    pub fn element_i64(&self, terms: &[(&[i64], i64)]) -> Result<ToricPolynomial, String> {
        let pairs: Vec<(LatVec, Coeff)> = terms
            .iter()
            .map(|(a, c)| (LatVec::from_i64(a), self.field.from_int(*c)))
            .collect();
        self.element(&pairs)
    }

    fn check_in_sigma(&self, v: &LatVec) -> Result<(), String> {
        if v.len() != self.rank() {
            return Err("weight vector rank mismatch".into());
        }
        if self.sigma.contains(v) == Location::Outside {
            return Err(format!("weight {:?} outside sigma", v));
        }
        Ok(())
    }

    /// The valuation nu_v(f) = min of v.alpha over Supp(f); None encodes
    /// +infinity for f = 0.
    pub fn nu(&self, v: &LatVec, f: &ToricPolynomial) -> Result<Option<Int>, String> {
        self.check_in_sigma(v)?;
        Ok(f.terms.keys().map(|a| v.dot(a)).min())
    }

    /// The sum of terms of f attaining nu_v(f).
    pub fn initial_form(
        &self,
        v: &LatVec,
        f: &ToricPolynomial,
    ) -> Result<ToricPolynomial, String> {
        let m = match self.nu(v, f)? {
            Some(m) => m,
            None => return Ok(ToricPolynomial::zero(self.field)),
        };
        let mut out = ToricPolynomial::zero(self.field);
        for (a, c) in &f.terms {
            if v.dot(a) == m {
                out.terms.insert(a.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// phi(v) = (v.alpha^1, ..., v.alpha^s); nonnegative for v in sigma.
    pub fn phi(&self, v: &LatVec) -> Result<LatVec, String> {
        self.check_in_sigma(v)?;
        Ok(self.mmatrix.transpose().mul_vec(v))
    }

    /// `{v in sigma : phi(v) in c}` for a cone c in weight space Z^s.
    pub fn phi_pullback(&self, c: &Cone) -> Result<Cone, String> {
        if c.ambient_rank() != self.num_vars() {
            return Err("phi_pullback: cone lives in the wrong space".into());
        }
        // a . (M^T v) = (M a) . v, so functionals pull back through M
        let eqs: Vec<LatVec> = c
            .equations()
            .iter()
            .map(|e| self.mmatrix.mul_vec(e))
            .collect();
        let mut ineqs: Vec<LatVec> = c
            .facet_normals()
            .iter()
            .map(|a| self.mmatrix.mul_vec(a))
            .collect();
        ineqs.extend(self.sigma.facet_normals());
        Cone::from_halfspaces(self.rank(), &eqs, &ineqs)
    }

    /// Psi(y^gamma) = x^{M gamma}, extended K-linearly; like terms may
    /// cancel.
    pub fn psi_apply(&self, h: &Polynomial) -> ToricPolynomial {
        let mut out = ToricPolynomial::zero(self.field);
        for (gamma, c) in h.terms() {
            assert_eq!(gamma.num_vars(), self.num_vars(), "wrong ambient ring");
            let g = LatVec::from_i64(&gamma.0);
            out.add_term(self.mmatrix.mul_vec(&g), c.clone());
        }
        out
    }

    /// The defining ideal I_sigma = Ker(Psi) of the affine toric variety:
    /// lattice-kernel binomials saturated by the product of the
    /// variables.
    pub fn toric_ideal(&self) -> &Ideal {
        self.toric_ideal.get_or_init(|| {
            let s = self.num_vars();
            let mut gens = Vec::new();
            for k in crate::lattice::kernel_basis(&self.mmatrix) {
                let mut plus = vec![0i64; s];
                let mut minus = vec![0i64; s];
                for (i, ki) in k.0.iter().enumerate() {
                    let v = i64::try_from(ki).expect("small kernel entry");
                    if v > 0 {
                        plus[i] = v;
                    } else {
                        minus[i] = -v;
                    }
                }
                let mut g = Polynomial::zero(self.field, s);
                g.add_term(Monomial(plus), self.field.one());
                g.add_term(Monomial(minus), self.field.from_int(-1));
                gens.push(g);
            }
            if gens.is_empty() {
                return Ideal::zero(self.field, s);
            }
            Ideal::new(self.field, s, gens).saturate(&Monomial(vec![1; s]))
        })
    }

    /// A nonnegative gamma with M gamma = beta, i.e. a monomial preimage
    /// of x^beta under Psi. Exists whenever beta lies in sigma_dual ∩ M.
    pub fn lift_exponent(&self, beta: &LatVec) -> Result<Monomial, String> {
        if self.sigma_dual.contains(beta) == Location::Outside {
            return Err(format!("exponent {:?} outside sigma_dual", beta));
        }
        let mut counts = vec![0i64; self.num_vars()];
        let mut failed = BTreeSet::new();
        if self.lift_search(beta, &mut counts, &mut failed) {
            Ok(Monomial(counts))
        } else {
            Err(format!(
                "internal: {:?} not representable in the Hilbert-basis semigroup",
                beta
            ))
        }
    }

    fn lift_search(
        &self,
        beta: &LatVec,
        counts: &mut Vec<i64>,
        failed: &mut BTreeSet<LatVec>,
    ) -> bool {
        if beta.is_zero() {
            return true;
        }
        if failed.contains(beta) {
            return false;
        }
        for (i, alpha) in self.hilbert.iter().enumerate() {
            let rest = beta.sub(alpha);
            if self.sigma_dual.contains(&rest) == Location::Outside {
                continue;
            }
            counts[i] += 1;
            if self.lift_search(&rest, counts, failed) {
                return true;
            }
            counts[i] -= 1;
        }
        failed.insert(beta.clone());
        false
    }

    /// A term-by-term preimage of f under Psi.
    pub fn naive_lift(&self, f: &ToricPolynomial) -> Result<Polynomial, String> {
        let mut h = Polynomial::zero(self.field, self.num_vars());
        for (alpha, c) in &f.terms {
            h.add_term(self.lift_exponent(alpha)?, c.clone());
        }
        Ok(h)
    }

    /// The full preimage J = Psi^{-1}(J_spec) = (lifted generators) +
    /// I_sigma.
    pub fn lift_ideal(&self, spec: &ToricIdealSpec) -> Result<Ideal, String> {
        let mut gens: Vec<Polynomial> = Vec::new();
        for f in &spec.generators {
            gens.push(self.naive_lift(f)?);
        }
        gens.extend(self.toric_ideal().generators().iter().cloned());
        Ok(Ideal::new(self.field, self.num_vars(), gens))
    }

    /// In_v(J_spec) computed as Psi(In_omega(J)) with omega = phi(v).
    pub fn toric_initial_ideal(
        &self,
        spec: &ToricIdealSpec,
        v: &LatVec,
    ) -> Result<ToricIdealSpec, String> {
        let omega = self.phi(v)?;
        let lifted = self.lift_ideal(spec)?;
        let init = lifted.initial_ideal(&omega.0)?;
        let generators: Vec<ToricPolynomial> = init
            .groebner_basis()
            .iter()
            .map(|g| self.psi_apply(g))
            .filter(|f| !f.is_zero())
            .collect();
        Ok(ToricIdealSpec { generators })
    }

    /// Whether two generator lists define the same ideal of R_sigma,
    /// decided on the K[y] side.
    pub fn same_toric_ideal(
        &self,
        a: &ToricIdealSpec,
        b: &ToricIdealSpec,
    ) -> Result<bool, String> {
        Ok(self.lift_ideal(a)?.equals(&self.lift_ideal(b)?))
    }

    /// Improves a given lift h of f until nu_omega(h) = nu_v(Psi(h)):
    /// while Psi(in_omega(h)) = 0, replace h by h - in_omega(h).
    pub fn max_weight_lift_from(
        &self,
        mut h: Polynomial,
        v: &LatVec,
    ) -> Result<Polynomial, String> {
        let omega = self.phi(v)?;
        let tiers = [omega.0];
        loop {
            let inw = h.min_weight_part(&tiers);
            if inw.is_zero() || !self.psi_apply(&inw).is_zero() {
                return Ok(h);
            }
            h = h.sub(&inw);
        }
    }

    /// A lift h of f with nu_omega(h) = nu_v(f), the maximum over the
    /// fiber Psi^{-1}(f).
    pub fn max_weight_lift(
        &self,
        f: &ToricPolynomial,
        v: &LatVec,
    ) -> Result<Polynomial, String> {
        if f.is_zero() {
            return Err("max_weight_lift: f must be nonzero".into());
        }
        self.max_weight_lift_from(self.naive_lift(f)?, v)
    }

    /// Tropical membership: does in_w(I) avoid all monomials?
    pub fn trop_membership(&self, ideal: &Ideal, w: &[Int]) -> Result<bool, String> {
        let init = ideal.initial_ideal(w)?;
        let sat = init.saturate(&Monomial(vec![1; self.num_vars()]));
        Ok(!sat.is_unit())
    }
}

impl ToricIdealSpec {
    pub fn new(generators: Vec<ToricPolynomial>) -> Result<ToricIdealSpec, String> {
        if generators.iter().any(|g| g.is_zero()) {
            return Err("toric ideal spec: generators must be nonzero".into());
        }
        Ok(ToricIdealSpec { generators })
    }

    pub fn trivial() -> ToricIdealSpec {
        ToricIdealSpec { generators: vec![] }
    }

    pub fn is_monomial_generated(&self) -> bool {
        self.generators.iter().all(|g| g.is_monomial())
    }
}
