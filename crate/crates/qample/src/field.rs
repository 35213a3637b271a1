//! Field abstraction for the exact linear algebra: big rationals, and
//! prime fields GF(p) with p up to 61 bits.
//!
//! Certification runs over GF(CERT_PRIME) by default.  Ranks over GF(p)
//! are at most the rational ranks, so kernel (hence Tor / homology)
//! dimensions computed mod p dominate the rational ones; a "everything
//! vanishes" verdict over GF(p) is therefore already sound over the
//! rationals, while a failure triggers a rational confirmation pass.

use num::{BigInt, BigRational, One, Signed, Zero};

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Self;
    fn neg(&self) -> Self;
}

/// Mersenne prime 2^61 - 1, the default certification field.
pub const CERT_PRIME: u64 = (1u64 << 61) - 1;

/// Element of GF(p); the modulus travels with the value so the same type
/// serves both the certification prime and small characteristics.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gf {
    pub v: u64,
    pub p: u64,
}

impl Gf {
    pub fn new(v: i64, p: u64) -> Self {
        let m = v.rem_euclid(p as i64) as u64;
        Gf { v: m, p }
    }
    pub fn from_u64(v: u64, p: u64) -> Self {
        Gf { v: v % p, p }
    }
    pub fn from_bigint(v: &BigInt, p: u64) -> Self {
        let m = v % BigInt::from(p);
        let m = if m.is_negative() { m + BigInt::from(p) } else { m };
        let digits = m.to_u64_digits().1;
        Gf { v: digits.first().copied().unwrap_or(0), p }
    }
    fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
        let mut acc: u64 = 1;
        base %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = ((acc as u128 * base as u128) % p as u128) as u64;
            }
            base = ((base as u128 * base as u128) % p as u128) as u64;
            e >>= 1;
        }
        acc
    }
}

impl Field for Gf {
    fn zero_like(&self) -> Self {
        Gf { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Gf { v: 1 % self.p, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v as u128 + rhs.v as u128;
        Gf { v: (s % self.p as u128) as u64, p: self.p }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v as u128 + (self.p - rhs.v) as u128;
        Gf { v: (s % self.p as u128) as u64, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Gf { v: ((self.v as u128 * rhs.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        Gf { v: Gf::powmod(self.v, self.p - 2, self.p), p: self.p }
    }
    fn neg(&self) -> Self {
        Gf { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

/// Big rational wrapper implementing [`Field`].
#[derive(Clone, PartialEq, Debug)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_i64(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
    pub fn from_bigint(v: &BigInt) -> Self {
        Rat(BigRational::from_integer(v.clone()))
    }
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat(BigRational::zero())
    }
    fn one_like(&self) -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }
    fn inv(&self) -> Self {
        Rat(self.0.recip())
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }
}

/// Label naming the field a verdict was computed over.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum FieldLabel {
    Rational,
    Prime(u64),
}

impl std::fmt::Display for FieldLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldLabel::Rational => write!(f, "QQ"),
            FieldLabel::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf_inverse_round_trips() {
        for p in [2u64, 3, 5, CERT_PRIME] {
            for v in 1..20i64 {
                let x = Gf::new(v, p);
                if x.is_zero() {
                    continue;
                }
                assert_eq!(x.mul(&x.inv()).v, 1 % p);
            }
        }
    }

    #[test]
    fn gf_negative_reduction() {
        assert_eq!(Gf::new(-1, 5).v, 4);
        assert_eq!(Gf::from_bigint(&BigInt::from(-7), 5).v, 3);
    }
}
