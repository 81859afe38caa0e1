//! Concatenation-tail sequence families.
//!
//! A tail `x_n = 0.a_n a_{n+1} a_{n+2} ...` is never materialised; it is a
//! restartable digit iterator ([`TailDigits`]) that expands one term at a
//! time, so counting over millions of indices stays allocation-light.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{check_base, digit_length_u128, DigitString};

/// Largest certification bound we are willing to walk down from.
const MAX_CERTIFICATION_BOUND: u64 = 10_000_000;

/// Integer polynomial `c_0 + c_1 n + ... + c_d n^d` with `d >= 1`, `c_d >= 1`.
///
/// Construction certifies `n_min`: the least `n >= 1` such that `f(m) >= 1`
/// and `f(m + 1) > f(m)` for every `m >= n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
    n_min: u64,
}

impl IntPoly {
    /// Coefficients are constant-term first. Trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        if !coeffs.last().unwrap().is_positive() {
            return Err(Error::InvalidPolynomial("leading coefficient must be positive".into()));
        }
        let mut poly = Self { coeffs, n_min: 1 };
        poly.n_min = poly.certify()?;
        Ok(poly)
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parses comma-separated coefficients, constant term first: `"0,0,1"` is `n^2`.
    pub fn parse_coeffs(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidPolynomial(format!("bad coefficient {:?}", c.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    /// `c_{d-1}`.
    pub fn subleading(&self) -> &BigInt {
        &self.coeffs[self.coeffs.len() - 2]
    }

    pub fn n_min(&self) -> u64 {
        self.n_min
    }

    /// Horner evaluation at a non-negative integer.
    pub fn eval(&self, n: u64) -> BigInt {
        if let Some(v) = self.eval_i128(n) {
            return BigInt::from(v);
        }
        let x = BigInt::from(n);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// Horner evaluation in `i128`, `None` on overflow.
    pub(crate) fn eval_i128(&self, n: u64) -> Option<i128> {
        let x = i128::from(n);
        self.coeffs.iter().rev().try_fold(0i128, |acc, c| acc.checked_mul(x)?.checked_add(c.to_i128()?))
    }

    fn eval_cmp_one(&self, n: u64) -> bool {
        match self.eval_i128(n) {
            Some(v) => v >= 1,
            None => self.eval(n) >= BigInt::one(),
        }
    }

    fn increasing_at(&self, n: u64) -> bool {
        match (self.eval_i128(n), self.eval_i128(n + 1)) {
            (Some(a), Some(b)) => b > a,
            _ => self.eval(n + 1) > self.eval(n),
        }
    }

    fn certify(&self) -> Result<u64> {
        // Past (sum |c_i|) * d / c_d the leading term's forward difference
        // dominates every lower-order one, so f is strictly increasing there.
        let d = BigInt::from(self.degree());
        let abs_sum: BigInt = self.coeffs.iter().map(|c| c.abs()).sum();
        let bound = (abs_sum * d + self.leading() - 1u32) / self.leading();
        let bound = bound
            .to_u64()
            .filter(|&b| b <= MAX_CERTIFICATION_BOUND)
            .ok_or_else(|| Error::InvalidPolynomial(format!("monotonicity bound exceeds {MAX_CERTIFICATION_BOUND}")))?;
        let start = bound + 1;

        // First index >= start where f >= 1, by galloping then bisection.
        let mut n0 = start;
        if !self.eval_cmp_one(n0) {
            let mut lo = n0;
            let mut step = 1u64;
            let mut hi = lo.checked_add(step).ok_or(Error::IndexOverflow)?;
            while !self.eval_cmp_one(hi) {
                lo = hi;
                step = step.checked_mul(2).ok_or(Error::IndexOverflow)?;
                hi = lo.checked_add(step).ok_or(Error::IndexOverflow)?;
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if self.eval_cmp_one(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            n0 = hi;
        }
        while n0 > 1 && self.eval_cmp_one(n0 - 1) && self.increasing_at(n0 - 1) {
            n0 -= 1;
        }
        Ok(n0)
    }

    fn check_domain(&self, n: u64) -> Result<()> {
        if n < self.n_min {
            Err(Error::BelowDomain { n, n_min: self.n_min })
        } else {
            Ok(())
        }
    }

    /// `f(n)` as a positive integer, for `n >= n_min`.
    pub fn eval_positive(&self, n: u64) -> Result<BigUint> {
        self.check_domain(n)?;
        let (sign, mag) = self.eval(n).into_parts();
        debug_assert_eq!(sign, Sign::Plus);
        Ok(mag)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coef}n")?,
                _ => write!(f, "{coef}n^{i}")?,
            }
        }
        Ok(())
    }
}

/// Which integers get concatenated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TailKind {
    /// `a_n = n`.
    Champernowne,
    /// `a_n = k n`.
    Multiple(u64),
    /// `a_n = f(n)`.
    Poly(IntPoly),
}

/// A sequence family `x_n = 0.a_n a_{n+1} ...` written in a fixed base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TailSpec {
    kind: TailKind,
    base: u32,
}

impl TailSpec {
    pub fn new(kind: TailKind, base: u32) -> Result<Self> {
        check_base(base)?;
        if let TailKind::Multiple(0) = kind {
            return Err(Error::Domain("multiple-of-k tail needs k >= 1".into()));
        }
        Ok(Self { kind, base })
    }

    pub fn champernowne() -> Self {
        Self { kind: TailKind::Champernowne, base: 10 }
    }

    pub fn multiple(k: u64) -> Result<Self> {
        Self::new(TailKind::Multiple(k), 10)
    }

    pub fn poly(poly: IntPoly) -> Self {
        Self { kind: TailKind::Poly(poly), base: 10 }
    }

    pub fn kind(&self) -> &TailKind {
        &self.kind
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Scans and limit constants are defined for base 10 only.
    pub fn require_decimal(&self, context: &'static str) -> Result<()> {
        if self.base == 10 {
            Ok(())
        } else {
            Err(Error::RequiresDecimal(context))
        }
    }

    /// First valid index: 1, or the polynomial's certified `n_min`.
    pub fn first_index(&self) -> u64 {
        match &self.kind {
            TailKind::Poly(p) => p.n_min(),
            _ => 1,
        }
    }

    fn index(&self, n: u64, offset: u64) -> Result<u64> {
        let n_min = self.first_index();
        if n < n_min {
            return Err(Error::BelowDomain { n, n_min });
        }
        n.checked_add(offset).ok_or(Error::IndexOverflow)
    }

    /// `a_{n + offset}`.
    pub fn term(&self, n: u64, offset: u64) -> Result<BigUint> {
        let idx = self.index(n, offset)?;
        Ok(self.term_at(idx))
    }

    fn term_at(&self, idx: u64) -> BigUint {
        if let Some(small) = self.term_u128(idx) {
            return BigUint::from(small);
        }
        match &self.kind {
            TailKind::Champernowne => BigUint::from(idx),
            TailKind::Multiple(k) => BigUint::from(*k) * idx,
            TailKind::Poly(p) => p.eval_positive(idx).expect("index checked against n_min"),
        }
    }

    /// Fast path for terms that fit in `u128`. Caller guarantees the domain.
    pub(crate) fn term_u128(&self, idx: u64) -> Option<u128> {
        match &self.kind {
            TailKind::Champernowne => Some(u128::from(idx)),
            TailKind::Multiple(k) => Some(u128::from(*k) * u128::from(idx)),
            TailKind::Poly(p) => p.eval_i128(idx).and_then(|v| u128::try_from(v).ok()),
        }
    }

    /// Lazy digit stream of `x_n`.
    pub fn digits(&self, n: u64) -> Result<TailDigits<'_>> {
        let next = self.index(n, 0)?;
        Ok(TailDigits { spec: self, next, buf: Vec::new(), pos: 0, terms_used: 0 })
    }

    /// The first `p` digits of `x_n`.
    pub fn prefix(&self, n: u64, p: usize) -> Result<DigitString> {
        if p == 0 {
            return Err(Error::Domain("digit count must be at least 1".into()));
        }
        let digits = self.digits(n)?.take(p).collect();
        Ok(DigitString::from_raw(self.base, digits))
    }

    /// `x_n` rounded to a float from its first 17 digits.
    pub fn value_f64(&self, n: u64) -> Result<f64> {
        let b = f64::from(self.base);
        let head: Vec<u8> = self.digits(n)?.take(17).collect();
        Ok(head.iter().rev().fold(0.0, |acc, &d| (acc + f64::from(d)) / b))
    }
}

impl fmt::Display for TailSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TailKind::Champernowne => write!(f, "champernowne")?,
            TailKind::Multiple(k) => write!(f, "multiple(k={k})")?,
            TailKind::Poly(p) => write!(f, "poly({p})")?,
        }
        if self.base != 10 {
            write!(f, " base {}", self.base)?;
        }
        Ok(())
    }
}

/// Infinite digit iterator over a concatenation tail.
#[derive(Debug, Clone)]
pub struct TailDigits<'a> {
    spec: &'a TailSpec,
    next: u64,
    buf: Vec<u8>,
    pos: usize,
    terms_used: u64,
}

impl TailDigits<'_> {
    /// How many terms have been expanded so far.
    pub fn terms_used(&self) -> u64 {
        self.terms_used
    }

    fn refill(&mut self) {
        let base = self.spec.base;
        self.buf.clear();
        match self.spec.term_u128(self.next) {
            Some(mut v) => {
                let len = digit_length_u128(v, base) as usize;
                self.buf.resize(len, 0);
                for slot in self.buf.iter_mut().rev() {
                    *slot = (v % u128::from(base)) as u8;
                    v /= u128::from(base);
                }
            }
            None => self.buf = self.spec.term_at(self.next).to_radix_be(base),
        }
        self.pos = 0;
        self.terms_used += 1;
        // Saturating: the stream is conceptually infinite, but no caller can
        // consume 2^64 terms.
        self.next = self.next.saturating_add(1);
    }
}

impl Iterator for TailDigits<'_> {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if self.pos == self.buf.len() {
            self.refill();
        }
        let d = self.buf[self.pos];
        self.pos += 1;
        Some(d)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (usize::MAX, None)
    }
}

/// `a_{n + offset}` for the given family.
pub fn term(spec: &TailSpec, n: u64, offset: u64) -> Result<BigUint> {
    spec.term(n, offset)
}

/// The first `p` digits of `x_n`.
pub fn tail_digits(spec: &TailSpec, n: u64, p: usize) -> Result<DigitString> {
    spec.prefix(n, p)
}

/// Exact evaluation of `poly` at `n`.
pub fn poly_eval(poly: &IntPoly, n: u64) -> BigInt {
    poly.eval(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits_of(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    fn square() -> IntPoly {
        IntPoly::from_i64(&[0, 0, 1]).unwrap()
    }

    #[test]
    fn term_examples() {
        assert_eq!(term(&TailSpec::champernowne(), 20, 0).unwrap(), BigUint::from(20u32));
        assert_eq!(term(&TailSpec::multiple(3).unwrap(), 5, 2).unwrap(), BigUint::from(21u32));
        assert_eq!(term(&TailSpec::poly(square()), 4, 1).unwrap(), BigUint::from(25u32));
    }

    #[test]
    fn term_domain_errors() {
        assert_eq!(term(&TailSpec::champernowne(), 0, 0), Err(Error::BelowDomain { n: 0, n_min: 1 }));
        let shifted = TailSpec::poly(IntPoly::from_i64(&[-30, 0, 1]).unwrap());
        assert_eq!(shifted.first_index(), 6);
        assert!(matches!(shifted.term(5, 0), Err(Error::BelowDomain { n: 5, n_min: 6 })));
        assert_eq!(shifted.term(5, 1).unwrap_err(), Error::BelowDomain { n: 5, n_min: 6 });
        assert_eq!(shifted.term(6, 0).unwrap(), BigUint::from(6u32));
        assert_eq!(term(&TailSpec::champernowne(), u64::MAX, 1), Err(Error::IndexOverflow));
        assert!(TailSpec::multiple(0).is_err());
    }

    #[test]
    fn huge_terms_use_big_arithmetic() {
        let spec = TailSpec::multiple(u64::MAX).unwrap();
        let expect = BigUint::from(u64::MAX) * BigUint::from(u64::MAX);
        assert_eq!(spec.term(u64::MAX, 0).unwrap(), expect);
        let cube = TailSpec::poly(IntPoly::from_i64(&[0, 0, 0, 1]).unwrap());
        let n = 10u64.pow(15);
        assert_eq!(cube.term(n, 0).unwrap(), BigUint::from(10u32).pow(45));
        let digits = cube.prefix(n, 50).unwrap();
        assert_eq!(digits.digits()[0], 1);
        assert!(digits.digits()[1..46].iter().all(|&d| d == 0));
        assert_eq!(digits.digits()[46], 1);
    }

    #[test]
    fn tail_digit_examples() {
        let champ = TailSpec::champernowne();
        assert_eq!(tail_digits(&champ, 20, 12).unwrap().digits(), &digits_of("202122232425")[..]);
        assert_eq!(tail_digits(&champ, 1, 10).unwrap().digits(), &digits_of("1234567891")[..]);
        let sq = TailSpec::poly(square());
        assert_eq!(tail_digits(&sq, 1, 9).unwrap().digits(), &digits_of("149162536")[..]);
        assert!(tail_digits(&champ, 1, 0).is_err());
    }

    #[test]
    fn stream_is_lazy() {
        let champ = TailSpec::champernowne();
        let mut it = champ.digits(98).unwrap();
        let head: Vec<u8> = it.by_ref().take(5).collect();
        assert_eq!(head, vec![9, 8, 9, 9, 1]);
        assert_eq!(it.terms_used(), 3);
    }

    #[test]
    fn other_bases() {
        let bin = TailSpec::new(TailKind::Champernowne, 2).unwrap();
        // 1 10 11 100
        assert_eq!(bin.prefix(1, 8).unwrap().digits(), &[1, 1, 0, 1, 1, 1, 0, 0]);
        let hex = TailSpec::new(TailKind::Multiple(16), 16).unwrap();
        assert_eq!(hex.prefix(15, 5).unwrap().to_string(), "f0100");
        assert!(hex.require_decimal("scan").is_err());
    }

    #[test]
    fn value_f64_matches_prefix() {
        let v = TailSpec::champernowne().value_f64(20).unwrap();
        assert!((v - 0.2021222324252627).abs() < 1e-15);
    }

    #[test]
    fn poly_eval_examples() {
        assert_eq!(poly_eval(&square(), 12), BigInt::from(144));
        assert_eq!(poly_eval(&IntPoly::from_i64(&[1, 0, 0, 2]).unwrap(), 10), BigInt::from(2001));
        assert_eq!(poly_eval(&IntPoly::from_i64(&[0, 1]).unwrap(), 7), BigInt::from(7));
    }

    #[test]
    fn poly_eval_beyond_i128() {
        let p = IntPoly::from_i64(&[5, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        let n = 10u64.pow(9);
        assert_eq!(p.eval(n), BigInt::from(10u32).pow(117) + 5);
    }

    #[test]
    fn poly_validation() {
        assert!(IntPoly::from_i64(&[5]).is_err());
        assert!(IntPoly::from_i64(&[5, 0, 0]).is_err());
        assert!(IntPoly::from_i64(&[0, -1]).is_err());
        assert!(IntPoly::parse_coeffs("0, 0, 1").is_ok());
        assert!(IntPoly::parse_coeffs("0,x,1").is_err());
        assert_eq!(IntPoly::from_i64(&[0, 0, 1, 0]).unwrap().degree(), 2);
        let huge = IntPoly::new(vec![BigInt::from(10).pow(30), BigInt::from(1)]);
        assert!(huge.is_err());
    }

    #[test]
    fn n_min_certification() {
        // n^2 - 10n + 30 dips to 5 at n = 5 and increases from there on.
        let p = IntPoly::from_i64(&[30, -10, 1]).unwrap();
        assert_eq!(p.n_min(), 5);
        // n - 100 first reaches 1 at n = 101.
        let p = IntPoly::from_i64(&[-100, 1]).unwrap();
        assert_eq!(p.n_min(), 101);
        assert_eq!(square().n_min(), 1);
        assert_eq!(IntPoly::from_i64(&[1, 0, 0, 2]).unwrap().n_min(), 1);
        // Brute-force check of the certificate over a long window.
        for coeffs in [[30, -10, 1], [-7, 3, 1], [100, -40, 2], [0, 0, 1]] {
            let p = IntPoly::from_i64(&coeffs).unwrap();
            let n_min = p.n_min();
            for m in n_min..n_min + 5000 {
                assert!(p.eval(m) >= BigInt::one());
                assert!(p.eval(m + 1) > p.eval(m));
            }
            if n_min > 1 {
                let m = n_min - 1;
                assert!(p.eval(m) < BigInt::one() || p.eval(m + 1) <= p.eval(m));
            }
        }
    }

    #[test]
    fn poly_display() {
        assert_eq!(IntPoly::from_i64(&[1, 0, 0, 2]).unwrap().to_string(), "2n^3 + 1");
        assert_eq!(IntPoly::from_i64(&[30, -10, 1]).unwrap().to_string(), "n^2 - 10n + 30");
    }
}
