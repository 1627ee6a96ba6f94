//! Exact coefficient fields: the rationals and prime fields F_p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, String> {
        if !is_prime(p) {
            return Err(format!("{} is not prime", p));
        }
        Ok(FieldSpec::PrimeField(p))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A scalar in one of the supported fields. Which variant is valid is
/// dictated by the ambient `FieldSpec`; mixing is a logic error.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Coeff {
    Rat(BigRational),
    Mod(u64),
}

impl FieldSpec {
    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::zero()),
            FieldSpec::PrimeField(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::one()),
            FieldSpec::PrimeField(_) => Coeff::Mod(1),
        }
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Coeff::Mod(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::from(n.clone())),
            FieldSpec::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                let mut r = n % &p_big;
                if r.is_negative() {
                    r += &p_big;
                }
                Coeff::Mod(u64::try_from(r).unwrap())
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Mod(m) => *m == 0,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (FieldSpec::PrimeField(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod((x + y) % p)
            }
            _ => panic!("field/coefficient mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (FieldSpec::PrimeField(p), Coeff::Mod(x)) => Coeff::Mod((p - x) % p),
            _ => panic!("field/coefficient mismatch"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (FieldSpec::PrimeField(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("field/coefficient mismatch"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (FieldSpec::Rationals, Coeff::Rat(x)) => Coeff::Rat(x.recip()),
            (FieldSpec::PrimeField(p), Coeff::Mod(x)) => Coeff::Mod(mod_inv(*x, *p)),
            _ => panic!("field/coefficient mismatch"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// Parses "3", "-2", "3/7" style literals.
    pub fn parse(&self, s: &str) -> Result<Coeff, String> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt, String> {
            t.parse::<BigInt>().map_err(|e| format!("bad integer {:?}: {}", t, e))
        };
        match s.split_once('/') {
            None => Ok(self.from_bigint(&parse_int(s)?)),
            Some((num, den)) => {
                let n = parse_int(num)?;
                let d = parse_int(den)?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                let nc = self.from_bigint(&n);
                let dc = self.from_bigint(&d);
                if self.is_zero(&dc) {
                    return Err(format!("denominator {} vanishes in this field", d));
                }
                Ok(self.div(&nc, &dc))
            }
        }
    }

    pub fn format(&self, a: &Coeff) -> String {
        match a {
            Coeff::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Mod(m) => m.to_string(),
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(p as i128) as u64
}
