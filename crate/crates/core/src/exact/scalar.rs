//! Coefficient rings: the integers, the 2-local rationals and the field with two elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Tag naming the coefficient ring of a presentation or polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingTag {
    Integers,
    TwoLocal,
    F2,
}

/// Common interface of the scalar rings used by the polynomial layer.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    const TAG: RingTag;

    fn from_int(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }

    /// Exact quotient when `other` is a unit of the ring.
    fn try_div(&self, other: &Self) -> Option<Self>;

    /// Integers with the same image, used when matrices are handed to the integer kernel.
    /// Returns the numerator after scaling by `scale`, which the caller guarantees clears
    /// every denominator.
    fn numerator_scaled(&self, scale: &BigInt) -> BigInt;

    /// A denominator that must be cleared to obtain an integer (1 for integer rings).
    fn denominator(&self) -> BigInt;
}

impl Coeff for BigInt {
    const TAG: RingTag = RingTag::Integers;

    fn from_int(n: &BigInt) -> Self {
        n.clone()
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }

    fn numerator_scaled(&self, scale: &BigInt) -> BigInt {
        self * scale
    }

    fn denominator(&self) -> BigInt {
        BigInt::one()
    }
}

/// A rational number with odd denominator: an element of the localization of Z at 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoLocal(BigRational);

impl TwoLocal {
    /// Builds `num / den`, rejecting denominators divisible by two.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::EvenDenominator(format!("{num}/0")));
        }
        let r = BigRational::new(num, den);
        Self::from_rational(r)
    }

    pub fn from_rational(r: BigRational) -> Result<Self, Error> {
        if r.denom().is_even() {
            return Err(Error::EvenDenominator(r.to_string()));
        }
        Ok(TwoLocal(r))
    }

    /// `n / d` for small literals; panics on an even denominator.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::new(BigInt::from(n), BigInt::from(d)).expect("odd denominator")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// 2-adic valuation of the numerator; `None` for zero.
    pub fn valuation(&self) -> Option<u64> {
        if self.0.is_zero() {
            None
        } else {
            self.0.numer().magnitude().trailing_zeros()
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Image in the residue field F2.
    pub fn reduce(&self) -> F2 {
        F2(self.0.numer().is_odd())
    }
}

impl fmt::Debug for TwoLocal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for TwoLocal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Zero for TwoLocal {
    fn zero() -> Self {
        TwoLocal(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for TwoLocal {
    fn one() -> Self {
        TwoLocal(BigRational::one())
    }
}

impl Add for TwoLocal {
    type Output = TwoLocal;
    fn add(self, rhs: Self) -> Self {
        TwoLocal(self.0 + rhs.0)
    }
}

impl Sub for TwoLocal {
    type Output = TwoLocal;
    fn sub(self, rhs: Self) -> Self {
        TwoLocal(self.0 - rhs.0)
    }
}

impl Mul for TwoLocal {
    type Output = TwoLocal;
    fn mul(self, rhs: Self) -> Self {
        TwoLocal(self.0 * rhs.0)
    }
}

impl Neg for TwoLocal {
    type Output = TwoLocal;
    fn neg(self) -> Self {
        TwoLocal(-self.0)
    }
}

impl Coeff for TwoLocal {
    const TAG: RingTag = RingTag::TwoLocal;

    fn from_int(n: &BigInt) -> Self {
        TwoLocal(BigRational::from_integer(n.clone()))
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        if !other.is_unit() {
            return None;
        }
        Some(TwoLocal(&self.0 / &other.0))
    }

    fn numerator_scaled(&self, scale: &BigInt) -> BigInt {
        let r = &self.0 * BigRational::from_integer(scale.clone());
        debug_assert!(r.is_integer());
        r.to_integer()
    }

    fn denominator(&self) -> BigInt {
        self.0.denom().clone()
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct F2(pub bool);

impl fmt::Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2(true)
    }
}

impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: Self) -> Self {
        F2(self.0 ^ rhs.0)
    }
}

impl Sub for F2 {
    type Output = F2;
    fn sub(self, rhs: Self) -> Self {
        F2(self.0 ^ rhs.0)
    }
}

impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: Self) -> Self {
        F2(self.0 & rhs.0)
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> Self {
        self
    }
}

impl Coeff for F2 {
    const TAG: RingTag = RingTag::F2;

    fn from_int(n: &BigInt) -> Self {
        F2(n.is_odd())
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        other.0.then_some(*self)
    }

    fn numerator_scaled(&self, _scale: &BigInt) -> BigInt {
        BigInt::from(u8::from(self.0))
    }

    fn denominator(&self) -> BigInt {
        BigInt::one()
    }
}

/// 2-adic valuation of a nonzero integer.
pub fn two_adic_valuation(n: &BigInt) -> Option<u64> {
    if n.is_zero() {
        None
    } else {
        n.magnitude().trailing_zeros()
    }
}

/// The 2-primary part `2^v` of a nonzero integer.
pub fn two_part(n: &BigInt) -> BigInt {
    match two_adic_valuation(n) {
        Some(v) => BigInt::one() << v,
        None => BigInt::zero(),
    }
}

/// Least common multiple of the denominators of a list of 2-local scalars (always odd).
pub fn common_denominator<'a, I: IntoIterator<Item = &'a TwoLocal>>(items: I) -> BigInt {
    items
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_denominator_is_rejected() {
        assert!(TwoLocal::new(BigInt::from(1), BigInt::from(2)).is_err());
        assert!(TwoLocal::new(BigInt::from(3), BigInt::from(6)).is_err());
        let x = TwoLocal::new(BigInt::from(1), BigInt::from(4)).unwrap_err();
        assert!(matches!(x, Error::EvenDenominator(_)));
        // 4/6 reduces to 2/3
        assert_eq!(TwoLocal::new(BigInt::from(4), BigInt::from(6)).unwrap(), TwoLocal::frac(2, 3));
    }

    #[test]
    fn reduced_form_is_kept() {
        let x = TwoLocal::new(BigInt::from(6), BigInt::from(9)).unwrap();
        assert_eq!(x.numer(), &BigInt::from(2));
        assert_eq!(x.denom(), &BigInt::from(3));
        assert_eq!(x.valuation(), Some(1));
        assert!(!x.is_unit());
    }

    #[test]
    fn division_only_by_units() {
        let third = TwoLocal::frac(1, 3);
        assert_eq!(TwoLocal::one().try_div(&TwoLocal::from_i64(3)), Some(third));
        assert_eq!(TwoLocal::one().try_div(&TwoLocal::from_i64(2)), None);
        assert_eq!(F2(true).try_div(&F2(false)), None);
        assert_eq!(BigInt::from(6).try_div(&BigInt::from(4)), None);
    }

    #[test]
    fn residue_map() {
        assert_eq!(TwoLocal::frac(5, 3).reduce(), F2(true));
        assert_eq!(TwoLocal::frac(4, 9).reduce(), F2(false));
    }
}
