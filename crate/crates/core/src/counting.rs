//! Interval membership of tail values and the counting function
//! `A([a, b); N; (x_n))`.

use std::borrow::Borrow;
use std::ops::Range;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{
    check_base, compare_digits, digit_length, DigitString, ExactEndpoint, HalfOpenInterval, PrefixOrdering,
};
use crate::seqgen::TailSpec;

const CHUNK: u64 = 1 << 15;

/// Result of [`count_a`]: `count` of the indices `first_index .. first_index + n`
/// whose tail value falls in `interval`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountResult {
    pub interval: HalfOpenInterval,
    pub n: u64,
    pub first_index: u64,
    pub count: u64,
    pub ratio: f64,
    pub digits_consulted_max: usize,
}

/// How membership is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Leading-digit shortcut when both endpoints have at most one digit,
    /// digit streaming otherwise.
    #[default]
    Auto,
    /// Always stream digits and compare against both endpoints.
    DigitStream,
}

/// First base-`base` digit of `m`.
pub fn leading_digit(m: &BigUint, base: u32) -> Result<u8> {
    check_base(base)?;
    if m.is_zero() {
        return Err(Error::ZeroNotAllowed);
    }
    if let Some(small) = m.to_u128() {
        return Ok(leading_digit_u128(small, base));
    }
    let len = digit_length(m, base)?;
    let lead = m / BigUint::from(base).pow((len - 1) as u32);
    Ok(lead.to_u8().expect("quotient below base"))
}

pub(crate) fn leading_digit_u128(m: u128, base: u32) -> u8 {
    debug_assert!(m > 0);
    if let Ok(mut v) = u64::try_from(m) {
        let b = u64::from(base);
        while v >= b {
            v /= b;
        }
        return v as u8;
    }
    let b = u128::from(base);
    let mut v = m;
    while v >= b {
        v /= b;
    }
    v as u8
}

/// Default digit budget for [`in_interval`]: `4 * len(a_n) + 16`.
pub fn default_max_digits(spec: &TailSpec, n: u64) -> Result<usize> {
    let len = match spec.term_u128_checked(n)? {
        Some(v) => crate::exactnum::digit_length_u128(v, spec.base()) as u64,
        None => digit_length(&spec.term(n, 0)?, spec.base())?,
    };
    Ok(4 * len as usize + 16)
}

impl TailSpec {
    fn term_u128_checked(&self, n: u64) -> Result<Option<u128>> {
        if n < self.first_index() {
            return Err(Error::BelowDomain { n, n_min: self.first_index() });
        }
        Ok(self.term_u128(n))
    }
}

fn check_bases(spec: &TailSpec, interval: &HalfOpenInterval) -> Result<()> {
    if spec.base() != interval.base() {
        return Err(Error::BaseMismatch { left: spec.base(), right: interval.base() });
    }
    Ok(())
}

/// Whether `lo <= x_n < hi`, deciding from as few digits of `x_n` as possible.
pub fn in_interval(spec: &TailSpec, n: u64, interval: &HalfOpenInterval, max_digits: usize) -> Result<bool> {
    check_bases(spec, interval)?;
    if max_digits == 0 {
        return Err(Error::Domain("max_digits must be at least 1".into()));
    }
    stream_membership(spec, n, interval, max_digits).map(|(inside, _)| inside)
}

fn endpoint_digits(e: &ExactEndpoint) -> Option<&[u8]> {
    if e.is_one() {
        None
    } else {
        Some(e.digits())
    }
}

/// Returns membership and the number of digits examined.
fn stream_membership(spec: &TailSpec, n: u64, interval: &HalfOpenInterval, max_digits: usize) -> Result<(bool, usize)> {
    let lo = endpoint_digits(interval.lo());
    let hi = endpoint_digits(interval.hi());
    let decide = |prefix: &[u8], e: Option<&[u8]>| match e {
        None => PrefixOrdering::DefinitelyLess,
        Some(d) => compare_digits(prefix, d),
    };

    let mut stream = spec.digits(n)?;
    let mut prefix = Vec::new();
    let mut lo_state = decide(&prefix, lo);
    let mut hi_state = decide(&prefix, hi);
    loop {
        match (lo_state, hi_state) {
            (PrefixOrdering::DefinitelyLess, _) | (_, PrefixOrdering::DefinitelyGreaterOrEqual) => {
                return Ok((false, prefix.len()));
            }
            (PrefixOrdering::DefinitelyGreaterOrEqual, PrefixOrdering::DefinitelyLess) => {
                return Ok((true, prefix.len()));
            }
            _ => {}
        }
        if prefix.len() >= max_digits {
            return Err(Error::Undecided { n, prefix: DigitString::from_raw(spec.base(), prefix) });
        }
        prefix.push(stream.next().expect("tail streams are infinite"));
        if lo_state == PrefixOrdering::Undecided {
            lo_state = decide(&prefix, lo);
        }
        if hi_state == PrefixOrdering::Undecided {
            hi_state = decide(&prefix, hi);
        }
    }
}

/// `[lo_digit, hi_digit)` when the interval is a union of leading-digit cells.
fn leading_digit_window(interval: &HalfOpenInterval) -> Option<(u8, u32)> {
    let single = |e: &ExactEndpoint| e.digits().len() <= 1;
    if !single(interval.lo()) || !single(interval.hi()) {
        return None;
    }
    let lo = interval.lo().digits().first().copied().unwrap_or(0);
    let hi = if interval.hi().is_one() {
        interval.base()
    } else {
        u32::from(interval.hi().digits().first().copied().unwrap_or(0))
    };
    Some((lo, hi))
}

/// Counts members among the indices in `range`, returning `(count, max digits consulted)`.
pub fn count_range(
    spec: &TailSpec,
    interval: &HalfOpenInterval,
    range: Range<u64>,
    strategy: Strategy,
) -> Result<(u64, usize)> {
    check_bases(spec, interval)?;
    if range.start < spec.first_index() {
        return Err(Error::BelowDomain { n: range.start, n_min: spec.first_index() });
    }
    let window = match strategy {
        Strategy::Auto => leading_digit_window(interval),
        Strategy::DigitStream => None,
    };
    let base = spec.base();
    let mut count = 0u64;
    let mut consulted = 0usize;
    for n in range {
        let inside = match window {
            Some((lo, hi)) => {
                let lead = match spec.term_u128(n) {
                    Some(v) => leading_digit_u128(v, base),
                    None => leading_digit(&spec.term(n, 0)?, base)?,
                };
                consulted = consulted.max(1);
                lo <= lead && u32::from(lead) < hi
            }
            None => {
                let budget = default_max_digits(spec, n)?;
                let (inside, used) = stream_membership(spec, n, interval, budget)?;
                consulted = consulted.max(used);
                inside
            }
        };
        count += u64::from(inside);
    }
    Ok((count, consulted))
}

/// `A(I; N; (x_n))` with the default strategy.
pub fn count_a(spec: &TailSpec, interval: &HalfOpenInterval, n: u64) -> Result<CountResult> {
    count_a_with(spec, interval, n, Strategy::Auto)
}

/// `A(I; N; (x_n))` over the indices `first_index .. first_index + n`.
///
/// Chunks run on the rayon pool; the result does not depend on how they are
/// scheduled, and an error reports the lowest failing chunk.
pub fn count_a_with(spec: &TailSpec, interval: &HalfOpenInterval, n: u64, strategy: Strategy) -> Result<CountResult> {
    check_bases(spec, interval)?;
    if n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let first = spec.first_index();
    let end = first.checked_add(n).ok_or(Error::IndexOverflow)?;
    let chunks = n.div_ceil(CHUNK);
    let partials: Vec<Result<(u64, usize)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = first + c * CHUNK;
            let hi = (lo + CHUNK).min(end);
            count_range(spec, interval, lo..hi, strategy)
        })
        .collect();
    let (count, digits_consulted_max) =
        partials.into_iter().try_fold((0u64, 0usize), |(acc, dig), part| part.map(|(c, d)| (acc + c, dig.max(d))))?;
    Ok(CountResult {
        interval: interval.clone(),
        n,
        first_index: first,
        count,
        ratio: count as f64 / n as f64,
        digits_consulted_max,
    })
}

/// Leading-digit tallies for digits `1 ..= base - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    base: u32,
    counts: Vec<u64>,
}

impl Census {
    pub fn base(&self) -> u32 {
        self.base
    }

    /// Tally for each digit `1 ..= base - 1`, in order.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, digit: u8) -> u64 {
        match digit {
            0 => 0,
            d => self.counts.get(usize::from(d) - 1).copied().unwrap_or(0),
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let total = self.total() as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }
}

/// Counts leading digits over a finite, non-empty stream of positive integers.
pub fn census<I>(terms: I, base: u32) -> Result<Census>
where
    I: IntoIterator,
    I::Item: Borrow<BigUint>,
{
    check_base(base)?;
    let mut counts = vec![0u64; base as usize - 1];
    let mut seen = false;
    for t in terms {
        let d = leading_digit(t.borrow(), base)?;
        counts[usize::from(d) - 1] += 1;
        seen = true;
    }
    if !seen {
        return Err(Error::EmptyInput);
    }
    Ok(Census { base, counts })
}
