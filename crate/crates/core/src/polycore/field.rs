use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Characteristic used when a prime field is requested without an explicit prime.
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// Exact coefficient field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

/// A field element. Prime-field values are canonical representatives in `[0, p)`;
/// rationals are always reduced with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Fp(u32),
    Q(BigRational),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::MalformedInput(format!("{p} is not a prime")));
        }
        if p > 1 << 31 {
            return Err(Error::UnsupportedField(format!("prime {p} too large")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::zero()),
            Field::Prime(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::one()),
            Field::Prime(_) => Coeff::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::Fp(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::Fp(r.to_u32().expect("residue fits"))
            }
        }
    }

    /// `num / den` as a field element; fails on a zero denominator (or one divisible by p).
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        let d = self.from_bigint(den);
        if self.is_zero(&d) {
            return Err(Error::MalformedInput(
                "division by zero in coefficient".into(),
            ));
        }
        Ok(self.div(&self.from_bigint(num), &d))
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Fp(v) => *v == 0,
            Coeff::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Fp(v) => *v == 1,
            Coeff::Q(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                let s = *x as u64 + *y as u64;
                let p = *p as u64;
                Coeff::Fp(if s >= p { s - p } else { s } as u32)
            }
            (Field::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            _ => panic!("coefficient does not belong to field {self:?}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Prime(p), Coeff::Fp(x)) => Coeff::Fp(if *x == 0 { 0 } else { p - x }),
            (Field::Rationals, Coeff::Q(x)) => Coeff::Q(-x),
            _ => panic!("coefficient does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (Field::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            _ => panic!("coefficient does not belong to field {self:?}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Prime(p), Coeff::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                Coeff::Fp(inv_mod(*x, *p))
            }
            (Field::Rationals, Coeff::Q(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coeff::Q(x.recip())
            }
            _ => panic!("coefficient does not belong to field {self:?}"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Coeff, mut e: u64) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Canonical text. Prime-field elements print in the symmetric range
    /// `(-p/2, p/2]` so that `p - 1` reads as `-1`.
    pub fn format(&self, a: &Coeff) -> String {
        match (self, a) {
            (Field::Prime(p), Coeff::Fp(x)) => {
                if *x as u64 * 2 > *p as u64 {
                    format!("-{}", p - x)
                } else {
                    x.to_string()
                }
            }
            (_, Coeff::Q(q)) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            _ => panic!("coefficient does not belong to field {self:?}"),
        }
    }

    /// True if the canonical text of `a` starts with a minus sign.
    pub fn is_negative(&self, a: &Coeff) -> bool {
        match (self, a) {
            (Field::Prime(p), Coeff::Fp(x)) => *x as u64 * 2 > *p as u64,
            (_, Coeff::Q(q)) => q.is_negative(),
            _ => false,
        }
    }

    pub fn as_u32(&self, a: &Coeff) -> Option<u32> {
        match a {
            Coeff::Fp(x) => Some(*x),
            Coeff::Q(_) => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "qq"),
            Field::Prime(p) => write!(f, "zp({p})"),
        }
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rationals;
        let c = q.from_ratio(&BigInt::from(2), &BigInt::from(4)).unwrap();
        assert_eq!(q.format(&c), "1/2");
        let c = q.from_ratio(&BigInt::from(3), &BigInt::from(-6)).unwrap();
        assert_eq!(q.format(&c), "-1/2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        let six = f.mul(&f.from_i64(3), &f.from_i64(2));
        assert!(f.is_one(&six));
        assert_eq!(f.inv(&f.from_i64(2)), Coeff::Fp(3));
        assert_eq!(f.format(&f.from_i64(-1)), "-1");
        assert!(Field::prime(6).is_err());
    }

    #[test]
    fn inverse_mod_large_prime() {
        let p = DEFAULT_CHARACTERISTIC;
        for a in [1u32, 2, 17, 31999, 32002] {
            assert_eq!((a as u64 * inv_mod(a, p) as u64) % p as u64, 1);
        }
    }
}
