//! Elements of the p-local integers Z_(p).
//!
//! A [`PLocal`] is an exact rational whose reduced denominator is prime to p.
//! Ring operations never leave Z_(p), so they need no prime; operations that
//! can (division, valuation, residues) take the [`Prime`] explicitly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An odd rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p.is_multiple_of(2) {
            return Err(Error::EvenPrime(p));
        }
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// p^k as a big integer.
    pub fn pow(self, k: u32) -> BigInt {
        num_traits::pow(self.big(), k as usize)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A p-adic valuation; `Inf` is the valuation of zero and sorts last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Val {
    Fin(u32),
    Inf,
}

impl Val {
    pub fn finite(self) -> Option<u32> {
        match self {
            Val::Fin(v) => Some(v),
            Val::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        self == Val::Inf
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Fin(v) => write!(f, "{v}"),
            Val::Inf => write!(f, "inf"),
        }
    }
}

/// Valuation of a nonzero integer; `Inf` for zero.
pub fn int_valuation(n: &BigInt, p: Prime) -> Val {
    if n.is_zero() {
        return Val::Inf;
    }
    let pb = p.big();
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Val::Fin(v);
        }
        n = q;
        v += 1;
    }
}

/// An element of Z_(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLocal(BigRational);

impl PLocal {
    pub fn zero() -> Self {
        PLocal(BigRational::zero())
    }

    pub fn one() -> Self {
        PLocal(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        PLocal(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        PLocal(BigRational::from_integer(n))
    }

    /// Builds num/den, rejecting zero denominators and denominators divisible by p.
    pub fn new(num: BigInt, den: BigInt, p: Prime) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let r = BigRational::new(num, den);
        if (r.denom() % p.big()).is_zero() {
            return Err(Error::NotPIntegral);
        }
        Ok(PLocal(r))
    }

    pub fn from_ratio(num: i64, den: i64, p: Prime) -> Result<Self> {
        Self::new(BigInt::from(num), BigInt::from(den), p)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn valuation(&self, p: Prime) -> Val {
        int_valuation(self.0.numer(), p)
    }

    pub fn is_unit(&self, p: Prime) -> bool {
        self.valuation(p) == Val::Fin(0)
    }

    /// Quotient in Z_(p); fails when it would need p in the denominator.
    pub fn checked_div(&self, other: &PLocal, p: Prime) -> Result<PLocal> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(PLocal::zero());
        }
        if self.valuation(p) < other.valuation(p) {
            return Err(Error::DivisionByNonUnit);
        }
        Ok(PLocal(&self.0 / &other.0))
    }

    pub fn inverse(&self, p: Prime) -> Result<PLocal> {
        PLocal::one().checked_div(self, p)
    }

    /// Writes a nonzero s as u·p^v and returns (v, u).
    pub fn split_unit(&self, p: Prime) -> Option<(u32, PLocal)> {
        let v = self.valuation(p).finite()?;
        let num = self.0.numer() / p.pow(v);
        Some((v, PLocal(BigRational::new(num, self.0.denom().clone()))))
    }

    /// Image in Z/p^k, as the representative in [0, p^k).
    pub fn mod_pk(&self, p: Prime, k: u32) -> BigInt {
        let m = p.pow(k);
        if k == 0 {
            return BigInt::zero();
        }
        let den = self.0.denom().mod_floor(&m);
        let inv = den.modinv(&m).expect("denominator is a unit modulo p^k by invariant");
        (self.0.numer() * inv).mod_floor(&m)
    }

    /// Residue in F_p.
    pub fn residue(&self, p: Prime) -> u64 {
        self.mod_pk(p, 1).to_u64().expect("residue fits in u64")
    }

    /// Canonical representative of the class of self modulo p^k, in [0, p^k).
    pub fn reduce_mod_pk(&self, p: Prime, k: u32) -> PLocal {
        PLocal::from_bigint(self.mod_pk(p, k))
    }

    pub fn pow(&self, e: u32) -> PLocal {
        PLocal(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
}

impl From<i64> for PLocal {
    fn from(n: i64) -> Self {
        PLocal::from_int(n)
    }
}

impl From<BigInt> for PLocal {
    fn from(n: BigInt) -> Self {
        PLocal::from_bigint(n)
    }
}

impl PartialOrd for PLocal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PLocal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for PLocal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&PLocal> for &PLocal {
            type Output = PLocal;
            fn $m(self, rhs: &PLocal) -> PLocal {
                PLocal((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<PLocal> for PLocal {
            type Output = PLocal;
            fn $m(self, rhs: PLocal) -> PLocal {
                PLocal(self.0.$m(rhs.0))
            }
        }
        impl $tr<&PLocal> for PLocal {
            type Output = PLocal;
            fn $m(self, rhs: &PLocal) -> PLocal {
                PLocal(self.0.$m(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl AddAssign<&PLocal> for PLocal {
    fn add_assign(&mut self, rhs: &PLocal) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&PLocal> for PLocal {
    fn sub_assign(&mut self, rhs: &PLocal) {
        self.0 -= &rhs.0;
    }
}

impl Neg for PLocal {
    type Output = PLocal;
    fn neg(self) -> PLocal {
        PLocal(-self.0)
    }
}

impl Neg for &PLocal {
    type Output = PLocal;
    fn neg(self) -> PLocal {
        PLocal(-&self.0)
    }
}

/// Converts a slice of integers into a vector of scalars.
pub fn vector(v: &[i64]) -> Vec<PLocal> {
    v.iter().map(|&x| PLocal::from_int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> Prime {
        Prime::new(5).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let p = p5();
        assert_eq!(PLocal::from_int(50).valuation(p), Val::Fin(2));
        assert_eq!(PLocal::zero().valuation(p), Val::Inf);
        assert_eq!(PLocal::from_ratio(3, 4, p).unwrap().valuation(p), Val::Fin(0));
        assert_eq!(PLocal::from_ratio(-375, 7, p).unwrap().valuation(p), Val::Fin(3));
    }

    #[test]
    fn primes_are_validated() {
        assert!(matches!(Prime::new(4), Err(Error::EvenPrime(4))));
        assert!(matches!(Prime::new(2), Err(Error::EvenPrime(2))));
        assert!(matches!(Prime::new(9), Err(Error::NotPrime(9))));
        assert!(matches!(Prime::new(1), Err(Error::NotPrime(1))));
        assert_eq!(Prime::new(13).unwrap().get(), 13);
    }

    #[test]
    fn denominators_divisible_by_p_are_rejected() {
        let p = p5();
        assert!(matches!(PLocal::from_ratio(1, 10, p), Err(Error::NotPIntegral)));
        // 10/5 reduces to 2 before the check.
        assert_eq!(PLocal::from_ratio(10, 5, p).unwrap(), PLocal::from_int(2));
    }

    #[test]
    fn division_stays_in_the_ring() {
        let p = p5();
        let five = PLocal::from_int(5);
        let ten = PLocal::from_int(10);
        assert_eq!(ten.checked_div(&five, p).unwrap(), PLocal::from_int(2));
        assert!(matches!(PLocal::one().checked_div(&five, p), Err(Error::DivisionByNonUnit)));
        assert!(matches!(PLocal::one().checked_div(&PLocal::zero(), p), Err(Error::DivisionByZero)));
        let q = PLocal::from_int(4).checked_div(&PLocal::from_int(3), p).unwrap();
        assert_eq!(q.to_string(), "4/3");
    }

    #[test]
    fn residues() {
        let p = p5();
        // 4/3 = 3 mod 5 since 3*3 = 9 = 4.
        assert_eq!(PLocal::from_ratio(4, 3, p).unwrap().residue(p), 3);
        assert_eq!(PLocal::from_int(-1).residue(p), 4);
        assert_eq!(PLocal::from_int(-1).mod_pk(p, 2), BigInt::from(24));
    }

    #[test]
    fn split_unit_roundtrip() {
        let p = p5();
        let s = PLocal::from_ratio(-150, 7, p).unwrap();
        let (v, u) = s.split_unit(p).unwrap();
        assert_eq!(v, 2);
        assert!(u.is_unit(p));
        assert_eq!(&u * &PLocal::from_int(25), s);
        assert!(PLocal::zero().split_unit(p).is_none());
    }
}
