//! Exact digit-level arithmetic.
//!
//! Everything in this module works on finite digit lists so that interval
//! membership of a concatenation tail can be decided without ever rounding.
//! A [`DigitString`] is a known prefix `0.d1 d2 ... dp` of some real number,
//! an [`ExactEndpoint`] is a terminating fraction in `[0, 1]`, and
//! [`compare_prefix`] answers whether every real number starting with the
//! prefix lies below or above an endpoint.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MIN_BASE: u32 = 2;
pub const MAX_BASE: u32 = 36;

pub(crate) fn check_base(base: u32) -> Result<()> {
    if (MIN_BASE..=MAX_BASE).contains(&base) {
        Ok(())
    } else {
        Err(Error::BaseOutOfRange(base))
    }
}

fn check_digits(digits: &[u8], base: u32) -> Result<()> {
    match digits.iter().find(|&&d| u32::from(d) >= base) {
        Some(&digit) => Err(Error::InvalidDigit { digit, base }),
        None => Ok(()),
    }
}

fn digit_char(d: u8) -> char {
    char::from_digit(u32::from(d), MAX_BASE).expect("digit below 36")
}

/// A finite base-`b` digit prefix, most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    base: u32,
    digits: Vec<u8>,
}

impl DigitString {
    pub fn new(base: u32, digits: Vec<u8>) -> Result<Self> {
        check_base(base)?;
        check_digits(&digits, base)?;
        Ok(Self { base, digits })
    }

    pub fn empty(base: u32) -> Result<Self> {
        Self::new(base, Vec::new())
    }

    /// Caller guarantees validity.
    pub(crate) fn from_raw(base: u32, digits: Vec<u8>) -> Self {
        debug_assert!(check_base(base).is_ok() && check_digits(&digits, base).is_ok());
        Self { base, digits }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_prefix_of(&self, other: &DigitString) -> bool {
        self.base == other.base && other.digits.starts_with(&self.digits)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{}", digit_char(d))?;
        }
        Ok(())
    }
}

/// Base-`base` expansion of `n`, most significant digit first.
pub fn int_to_digits(n: &BigUint, base: u32) -> Result<DigitString> {
    check_base(base)?;
    if n.is_zero() {
        return Err(Error::ZeroNotAllowed);
    }
    Ok(DigitString::from_raw(base, n.to_radix_be(base)))
}

/// Inverse of [`int_to_digits`]; the empty string maps to zero.
pub fn digits_to_int(digits: &DigitString) -> BigUint {
    if digits.is_empty() {
        return BigUint::zero();
    }
    BigUint::from_radix_be(&digits.digits, digits.base).expect("digits validated at construction")
}

/// Number of base-`base` digits of `n`, i.e. `floor(log_base n) + 1`.
///
/// The float estimate from the bit length is only a starting guess; the
/// answer is settled by comparing against exact powers of the base.
pub fn digit_length(n: &BigUint, base: u32) -> Result<u64> {
    check_base(base)?;
    if n.is_zero() {
        return Err(Error::ZeroNotAllowed);
    }
    if let Some(small) = n.to_u128() {
        return Ok(u64::from(digit_length_u128(small, base)));
    }
    let bits = n.bits();
    let estimate = ((bits - 1) as f64 * std::f64::consts::LN_2 / f64::from(base).ln()) as u64;
    // estimate ~ floor(log_base n); nudge until base^(len-1) <= n < base^len.
    let mut len = estimate.max(1);
    let big_base = BigUint::from(base);
    let mut lower = big_base.pow(len as u32 - 1);
    while &lower > n {
        len -= 1;
        lower /= base;
    }
    let mut upper = &lower * &big_base;
    while &upper <= n {
        len += 1;
        lower = upper;
        upper = &lower * &big_base;
    }
    Ok(len)
}

pub(crate) fn digit_length_u128(n: u128, base: u32) -> u32 {
    debug_assert!(n > 0);
    let base = u128::from(base);
    let mut len = 1;
    let mut power = base;
    while power <= n {
        len += 1;
        match power.checked_mul(base) {
            Some(p) => power = p,
            None => break,
        }
    }
    len
}

/// A terminating base-`b` fraction in `[0, 1]`, kept in canonical form.
///
/// Canonical form means no trailing zero digits, so `0.10` and `0.1` are the
/// same value and compare equal structurally. Zero is the empty digit list;
/// the value one is a separate flag carrying no digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactEndpoint {
    base: u32,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Fraction(Vec<u8>),
    One,
}

impl ExactEndpoint {
    pub fn zero(base: u32) -> Result<Self> {
        Self::from_digits(base, Vec::new())
    }

    pub fn one(base: u32) -> Result<Self> {
        check_base(base)?;
        Ok(Self { base, repr: Repr::One })
    }

    /// `0.d1 d2 ... dm`; trailing zeros are stripped.
    pub fn from_digits(base: u32, mut digits: Vec<u8>) -> Result<Self> {
        check_base(base)?;
        check_digits(&digits, base)?;
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(Self { base, repr: Repr::Fraction(digits) })
    }

    /// Parses `"0"`, `"1"`, `"0.d1d2..."`, `"1.000"` or `".d1d2..."` in the
    /// given base. Digits above 9 use the letters `a..z`.
    pub fn parse_in_base(text: &str, base: u32) -> Result<Self> {
        check_base(base)?;
        let invalid = || Error::InvalidEndpoint(text.to_string());
        let s = text.trim();
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(invalid());
        }
        let frac = frac_part
            .chars()
            .map(|c| c.to_digit(base).map(|d| d as u8).ok_or_else(invalid))
            .collect::<Result<Vec<u8>>>()?;
        match int_part {
            "" | "0" => Self::from_digits(base, frac),
            "1" if frac.iter().all(|&d| d == 0) => Self::one(base),
            _ => Err(invalid()),
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn is_one(&self) -> bool {
        matches!(self.repr, Repr::One)
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Fraction(d) if d.is_empty())
    }

    /// Fraction digits; empty for both zero and one.
    pub fn digits(&self) -> &[u8] {
        match &self.repr {
            Repr::Fraction(d) => d,
            Repr::One => &[],
        }
    }

    /// The value as `numerator / base^len`.
    pub fn to_ratio(&self) -> (BigUint, BigUint) {
        match &self.repr {
            Repr::One => (BigUint::one(), BigUint::one()),
            Repr::Fraction(d) => {
                let denom = BigUint::from(self.base).pow(d.len() as u32);
                let numer = if d.is_empty() {
                    BigUint::zero()
                } else {
                    BigUint::from_radix_be(d, self.base).expect("validated digits")
                };
                (numer, denom)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.repr {
            Repr::One => 1.0,
            Repr::Fraction(d) => {
                let b = f64::from(self.base);
                d.iter().rev().fold(0.0, |acc, &digit| (acc + f64::from(digit)) / b)
            }
        }
    }

    /// Exact comparison; fails only when the bases differ.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        if self.base != other.base {
            return Err(Error::BaseMismatch { left: self.base, right: other.base });
        }
        // With no trailing zeros, a proper prefix is strictly smaller, so
        // lexicographic order on the digit lists is numeric order.
        Ok(match (&self.repr, &other.repr) {
            (Repr::One, Repr::One) => Ordering::Equal,
            (Repr::One, _) => Ordering::Greater,
            (_, Repr::One) => Ordering::Less,
            (Repr::Fraction(a), Repr::Fraction(b)) => a.cmp(b),
        })
    }
}

impl PartialOrd for ExactEndpoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl FromStr for ExactEndpoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in_base(s, 10)
    }
}

impl fmt::Display for ExactEndpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::One => f.write_str("1"),
            Repr::Fraction(d) if d.is_empty() => f.write_str("0"),
            Repr::Fraction(d) => {
                f.write_str("0.")?;
                d.iter().try_for_each(|&x| write!(f, "{}", digit_char(x)))
            }
        }
    }
}

/// `[lo, hi)` with exact endpoints of a common base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfOpenInterval {
    lo: ExactEndpoint,
    hi: ExactEndpoint,
}

impl HalfOpenInterval {
    pub fn new(lo: ExactEndpoint, hi: ExactEndpoint) -> Result<Self> {
        if lo.cmp_exact(&hi)? != Ordering::Less {
            return Err(Error::EmptyInterval);
        }
        Ok(Self { lo, hi })
    }

    /// Convenience for decimal strings, e.g. `parse_decimal("0.1", "0.2")`.
    pub fn parse_decimal(lo: &str, hi: &str) -> Result<Self> {
        Self::new(lo.parse()?, hi.parse()?)
    }

    /// `[c/b, (c+1)/b)`: the reals whose first digit is `c`.
    pub fn leading_digit_cell(base: u32, c: u8) -> Result<Self> {
        check_base(base)?;
        if u32::from(c) >= base {
            return Err(Error::InvalidDigit { digit: c, base });
        }
        let lo = ExactEndpoint::from_digits(base, vec![c])?;
        let hi = if u32::from(c) + 1 == base {
            ExactEndpoint::one(base)?
        } else {
            ExactEndpoint::from_digits(base, vec![c + 1])?
        };
        Self::new(lo, hi)
    }

    pub fn lo(&self) -> &ExactEndpoint {
        &self.lo
    }

    pub fn hi(&self) -> &ExactEndpoint {
        &self.hi
    }

    pub fn base(&self) -> u32 {
        self.lo.base
    }

    /// Length `hi - lo` as a float.
    pub fn width(&self) -> f64 {
        self.hi.to_f64() - self.lo.to_f64()
    }
}

impl fmt::Display for HalfOpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// Outcome of comparing a partially known real against an endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrefixOrdering {
    DefinitelyLess,
    DefinitelyGreaterOrEqual,
    Undecided,
}

/// Compares the real `0.p1 p2 ... pk ?...` against `e`.
///
/// The unknown tail ranges over proper expansions, so the prefix pins the
/// value to `[0.p, 0.p + b^-k)`. The answer is `Undecided` exactly when `e`
/// lies strictly inside that range, which happens when the prefix matches
/// the leading digits of `e` and `e` has further nonzero digits.
pub fn compare_prefix(prefix: &DigitString, e: &ExactEndpoint) -> Result<PrefixOrdering> {
    if prefix.base != e.base {
        return Err(Error::BaseMismatch { left: prefix.base, right: e.base });
    }
    let e_digits = match &e.repr {
        Repr::One => return Ok(PrefixOrdering::DefinitelyLess),
        Repr::Fraction(d) => d,
    };
    Ok(compare_digits(&prefix.digits, e_digits))
}

pub(crate) fn compare_digits(prefix: &[u8], e_digits: &[u8]) -> PrefixOrdering {
    for (i, &p) in prefix.iter().enumerate() {
        let ed = e_digits.get(i).copied().unwrap_or(0);
        match p.cmp(&ed) {
            Ordering::Less => return PrefixOrdering::DefinitelyLess,
            Ordering::Greater => return PrefixOrdering::DefinitelyGreaterOrEqual,
            Ordering::Equal => {}
        }
    }
    if e_digits.len() > prefix.len() {
        PrefixOrdering::Undecided
    } else {
        PrefixOrdering::DefinitelyGreaterOrEqual
    }
}
