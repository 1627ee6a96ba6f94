//! Ideals of K[y]: canonical reduced bases, weight-vector initial ideals
//! via homogenization, saturation, dimension.

use std::sync::OnceLock;

use num_traits::Signed;

use super::{buchberger, normal_form, Monomial, Order, Polynomial};
use crate::field::FieldSpec;
use crate::lattice::Int;

#[derive(Clone)]
pub struct Ideal {
    pub field: FieldSpec,
    pub num_vars: usize,
    gens: Vec<Polynomial>,
    gb_grevlex: OnceLock<Vec<Polynomial>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}
impl Eq for Ideal {}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal{:?}", self.gens)
    }
}

impl Ideal {
    pub fn new(field: FieldSpec, num_vars: usize, gens: Vec<Polynomial>) -> Self {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert_eq!(g.num_vars, num_vars, "generator arity mismatch");
            assert_eq!(g.field, field, "generator field mismatch");
        }
        Ideal {
            field,
            num_vars,
            gens,
            gb_grevlex: OnceLock::new(),
        }
    }

    pub fn zero(field: FieldSpec, num_vars: usize) -> Self {
        Self::new(field, num_vars, vec![])
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The canonical reduced Groebner basis w.r.t. the fixed grevlex order.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb_grevlex
            .get_or_init(|| buchberger(&self.gens, &Order::Grevlex))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.groebner_basis().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner_basis();
        gb.len() == 1 && gb[0].leading(&Order::Grevlex).unwrap().0.is_one()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self.groebner_basis(), &Order::Grevlex).is_zero()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self.groebner_basis(), &Order::Grevlex)
    }

    /// Structural equality of canonical reduced bases.
    pub fn equals(&self, other: &Ideal) -> bool {
        assert_eq!(self.num_vars, other.num_vars, "ideal_equal: ring mismatch");
        assert_eq!(self.field, other.field, "ideal_equal: field mismatch");
        self.groebner_basis() == other.groebner_basis()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.field, self.num_vars, gens)
    }

    /// in_w(I) for a single nonnegative weight vector (min convention).
    pub fn initial_ideal(&self, w: &[Int]) -> Result<Ideal, String> {
        if w.iter().any(|x| x.is_negative()) {
            return Err("initial_ideal: negative weight entries".into());
        }
        Ok(self.initial_ideal_tiers(&[w.to_vec()]))
    }

    /// in_{w_k}(...(in_{w_1}(I))...) for a lexicographic chain of weight
    /// tiers, computed through the homogenization pipeline. Tiers after
    /// the first may have entries of any sign.
    pub fn initial_ideal_tiers(&self, tiers: &[Vec<Int>]) -> Ideal {
        Ideal::new(
            self.field,
            self.num_vars,
            self.weighted_marked_basis(tiers)
                .into_iter()
                .map(|(init, _)| init)
                .collect(),
        )
    }

    /// The reduced basis of the homogenized-saturated ideal w.r.t. the
    /// min-weight order, returned dehomogenized and split into
    /// (initial part, tail) per element.
    pub fn weighted_marked_basis(&self, tiers: &[Vec<Int>]) -> Vec<(Polynomial, Polynomial)> {
        for t in tiers {
            assert_eq!(t.len(), self.num_vars, "weight arity mismatch");
        }
        let hsat = self.homogenization_basis();
        let ext: Vec<Vec<Int>> = tiers
            .iter()
            .map(|t| {
                let mut e = t.clone();
                e.push(Int::from(0));
                e
            })
            .collect();
        let gb = buchberger(&hsat, &Order::MinWeight(ext.clone()));
        gb.iter()
            .map(|g| {
                let init = g.min_weight_part(&ext).dehomogenize();
                let tail = g.dehomogenize().sub(&init);
                (init, tail)
            })
            .collect()
    }

    /// Grevlex basis of the homogenization of this ideal (saturated by
    /// the homogenizing variable via the reverse-lex trick).
    fn homogenization_basis(&self) -> Vec<Polynomial> {
        let h: Vec<Polynomial> = self.gens.iter().map(|g| g.homogenize()).collect();
        let gb = buchberger(&h, &Order::Grevlex);
        gb.iter().map(|g| g.strip_last_var_power()).collect()
    }

    /// I : m^infinity.
    pub fn saturate(&self, m: &Monomial) -> Ideal {
        assert_eq!(m.num_vars(), self.num_vars);
        if self.gens.is_empty() {
            return self.clone();
        }
        let f = self.field;
        let s = self.num_vars;
        // adjoin z and the relation 1 - z*m, then eliminate z
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.extend_vars(1)).collect();
        let mut rel = Polynomial::one(f, s + 1);
        let mut zm = m.0.clone();
        zm.push(1);
        rel.add_term(Monomial(zm), f.neg(&f.one()));
        gens.push(rel);
        let gb = buchberger(&gens, &Order::EliminateLast(1));
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| {
                let (lm, _) = g.leading(&Order::EliminateLast(1)).unwrap();
                lm.0[s] == 0
            })
            .map(|g| {
                Polynomial::from_terms(
                    f,
                    s,
                    g.terms().map(|(mm, c)| (Monomial(mm.0[..s].to_vec()), c.clone())),
                )
            })
            .collect();
        Ideal::new(f, s, kept)
    }

    /// Dimension of V(I) in A^s: the maximal size of a variable subset
    /// meeting no leading monomial of the reduced basis. -1 for the unit
    /// ideal.
    pub fn krull_dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let leads: Vec<Monomial> = self
            .groebner_basis()
            .iter()
            .map(|g| g.leading(&Order::Grevlex).unwrap().0.clone())
            .collect();
        let s = self.num_vars;
        let mut best = 0usize;
        for mask in 0..(1u64 << s) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let independent = leads.iter().all(|m| {
                // m supported entirely inside the subset?
                !(0..s).all(|i| m.0[i] == 0 || (mask >> i) & 1 == 1)
            });
            if independent {
                best = size;
            }
        }
        best as i64
    }
}
