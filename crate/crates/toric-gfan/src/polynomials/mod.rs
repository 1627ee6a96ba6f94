//! Exact multivariate polynomials over Q and F_p, monomial orders, a
//! Buchberger engine and weight-vector initial ideals (min convention).

mod buchberger;
mod ideal;

pub use buchberger::{buchberger, normal_form};
pub use ideal::Ideal;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::field::{Coeff, FieldSpec};
use crate::lattice::Int;

/// Exponent vector of a monomial; entries are nonnegative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn weight(&self, w: &[Int]) -> Int {
        assert_eq!(w.len(), self.0.len(), "weight length mismatch");
        self.0
            .iter()
            .zip(w)
            .map(|(&e, wi)| wi * BigInt::from(e))
            .sum()
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "y{}", i + 1)?;
            } else {
                write!(f, "y{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Term orders. `Greater` means "more leading".
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Order {
    /// Graded reverse lexicographic with y1 > ... > ys. Global.
    Grevlex,
    /// Minimal weight leads, tier by tier, grevlex breaking remaining
    /// ties. Not global; use only on homogeneous input.
    MinWeight(Vec<Vec<Int>>),
    /// Product order eliminating the last `k` variables: any monomial
    /// involving them beats any monomial that does not. Global.
    EliminateLast(usize),
}

impl Order {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            Order::Grevlex => grevlex_cmp(a, b),
            Order::MinWeight(tiers) => {
                for w in tiers {
                    let (wa, wb) = (a.weight(w), b.weight(w));
                    match wa.cmp(&wb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
                grevlex_cmp(a, b)
            }
            Order::EliminateLast(k) => {
                let n = a.num_vars();
                let da: i64 = a.0[n - k..].iter().sum();
                let db: i64 = b.0[n - k..].iter().sum();
                da.cmp(&db).then_with(|| grevlex_cmp(a, b))
            }
        }
    }
}

fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.0.len()).rev() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

/// A polynomial in K[y_1..y_s]; terms map exponent vectors to nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub field: FieldSpec,
    pub num_vars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, num_vars: usize) -> Self {
        Polynomial {
            field,
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, num_vars: usize, c: Coeff) -> Self {
        let mut p = Self::zero(field, num_vars);
        p.add_term(Monomial::one(num_vars), c);
        p
    }

    pub fn one(field: FieldSpec, num_vars: usize) -> Self {
        let one = field.one();
        Self::constant(field, num_vars, one)
    }

    pub fn var(field: FieldSpec, num_vars: usize, i: usize) -> Self {
        let mut p = Self::zero(field, num_vars);
        p.add_term(Monomial::var(num_vars, i), field.one());
        p
    }

    pub fn monomial(field: FieldSpec, m: Monomial) -> Self {
        let n = m.num_vars();
        let mut p = Self::zero(field, n);
        p.add_term(m, field.one());
        p
    }

    pub fn from_terms<I>(field: FieldSpec, num_vars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut p = Self::zero(field, num_vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        assert_eq!(m.num_vars(), self.num_vars, "term arity mismatch");
        assert!(m.0.iter().all(|&e| e >= 0), "negative exponent");
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Monomial::one(self.num_vars))
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading(&self, order: &Order) -> Option<(&Monomial, &Coeff)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), self.field.neg(c));
        }
        p
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.field;
        Polynomial {
            field: f,
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let mut p = Polynomial::zero(self.field, self.num_vars);
        for (mm, cc) in &self.terms {
            p.add_term(mm.mul(m), self.field.mul(cc, c));
        }
        p
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(&Monomial::one(self.num_vars), c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero(self.field, self.num_vars);
        for (m, c) in &other.terms {
            for (mm, cc) in &self.terms {
                p.add_term(mm.mul(m), self.field.mul(cc, c));
            }
        }
        p
    }

    /// Divides out the leading coefficient w.r.t. `order`.
    pub fn monic(&self, order: &Order) -> Polynomial {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c)),
        }
    }

    /// d/dy_i, with exponents mapped into the coefficient field.
    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let mut p = Polynomial::zero(self.field, self.num_vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            p.add_term(m2, self.field.mul(c, &self.field.from_int(e)));
        }
        p
    }

    /// Appends fresh variables (exponent 0) at the end.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        let n = self.num_vars + extra;
        Polynomial {
            field: self.field,
            num_vars: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.extend(std::iter::repeat(0).take(extra));
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Homogenizes with a fresh last variable to the max total degree.
    pub fn homogenize(&self) -> Polynomial {
        let d = self.total_degree();
        let n = self.num_vars + 1;
        Polynomial {
            field: self.field,
            num_vars: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.push(d - m.total_degree());
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Sets the last variable to 1 and drops it, collecting like terms.
    pub fn dehomogenize(&self) -> Polynomial {
        let n = self.num_vars - 1;
        let mut p = Polynomial::zero(self.field, n);
        for (m, c) in &self.terms {
            p.add_term(Monomial(m.0[..n].to_vec()), c.clone());
        }
        p
    }

    /// Divides every term by the largest common power of the last variable.
    pub fn strip_last_var_power(&self) -> Polynomial {
        let n = self.num_vars;
        let k = self.terms.keys().map(|m| m.0[n - 1]).min().unwrap_or(0);
        if k == 0 {
            return self.clone();
        }
        Polynomial {
            field: self.field,
            num_vars: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[n - 1] -= k;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Sum of terms attaining the lexicographically minimal weight tuple.
    pub fn min_weight_part(&self, tiers: &[Vec<Int>]) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let key = |m: &Monomial| -> Vec<Int> { tiers.iter().map(|w| m.weight(w)).collect() };
        let min = self.terms.keys().map(&key).min().unwrap();
        Polynomial {
            field: self.field,
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| key(m) == min)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The minimal weight tuple over the support (None for 0).
    pub fn min_weight(&self, tiers: &[Vec<Int>]) -> Option<Vec<Int>> {
        self.terms
            .keys()
            .map(|m| tiers.iter().map(|w| m.weight(w)).collect::<Vec<_>>())
            .min()
    }

    /// Evaluates at a point given as field elements.
    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.num_vars);
        let f = self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = f.mul(&t, &point[i]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.field.format(c);
            if m.is_one() {
                write!(f, "{}", cs)?;
            } else if cs == "1" {
                write!(f, "{:?}", m)?;
            } else {
                write!(f, "{}*{:?}", cs, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn mono(e: &[i64]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        // y1 > y2 > y3; y1*y3 vs y2^2: same degree, last differing index 2:
        // y1y3 has exponent 1 there, y2^2 has 0 => y2^2 is larger in grevlex.
        let o = Order::Grevlex;
        assert_eq!(o.cmp(&mono(&[0, 2, 0]), &mono(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[2, 0, 0]), &mono(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn min_weight_order_leads_with_small_weight() {
        let w = vec![vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)]];
        let o = Order::MinWeight(w);
        // weight 0 beats weight 2
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 0, 1])), Ordering::Greater);
        // tie on weight 1 falls back to grevlex
        assert_eq!(o.cmp(&mono(&[0, 1, 0]), &mono(&[2, 1, 0])), Ordering::Less);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let f = q();
        let y1 = Polynomial::var(f, 2, 0);
        let y2 = Polynomial::var(f, 2, 1);
        let p = y1.add(&y2).mul(&y1.sub(&y2)); // y1^2 - y2^2
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&mono(&[2, 0])), f.from_int(1));
        assert_eq!(p.coeff(&mono(&[0, 2])), f.from_int(-1));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn homogenize_roundtrip() {
        let f = q();
        let mut p = Polynomial::zero(f, 2);
        p.add_term(mono(&[2, 0]), f.from_int(1));
        p.add_term(mono(&[0, 1]), f.from_int(3));
        let h = p.homogenize();
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize(), p);
    }

    #[test]
    fn min_weight_part_min_convention() {
        let f = q();
        let mut p = Polynomial::zero(f, 3);
        p.add_term(mono(&[1, 0, 0]), f.from_int(1));
        p.add_term(mono(&[0, 0, 1]), f.from_int(1));
        let w = vec![vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)]];
        let init = p.min_weight_part(&w);
        assert_eq!(init.num_terms(), 1);
        assert_eq!(init.coeff(&mono(&[1, 0, 0])), f.from_int(1));
        // zero weight selects everything
        let w0 = vec![vec![BigInt::from(0); 3]];
        assert_eq!(p.min_weight_part(&w0), p);
    }

    #[test]
    fn derivative_char_p() {
        let f = FieldSpec::prime(2).unwrap();
        let mut p = Polynomial::zero(f, 1);
        p.add_term(mono(&[2]), f.from_int(1));
        assert!(p.partial_derivative(0).is_zero());
    }
}
