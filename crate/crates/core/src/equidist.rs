//! Distribution diagnostics: discrepancy, exponential sums and leading-digit
//! (Benford) statistics.

use std::borrow::Borrow;
use std::f64::consts::{LN_2, TAU};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::counting::census;
use crate::error::{Error, Result};
use crate::exactnum::{check_base, digit_length, ExactEndpoint};
use crate::seqgen::{IntPoly, TailSpec};

/// Largest `f64` strictly below 1.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Decimal digits kept in the mantissa when taking `log10` of a big integer.
const MANTISSA_DIGITS: u64 = 18;

/// A finite list of reals in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    values: Vec<f64>,
}

impl PointSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|v| !(0.0..1.0).contains(*v)) {
            return Err(Error::PointOutOfRange(bad));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn sorted(&self) -> Result<Vec<f64>> {
        if self.values.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        Ok(v)
    }
}

/// `{k alpha mod 1 : k = 1..=n}`.
pub fn rotation_points(alpha: f64, n: usize) -> PointSet {
    let values = (1..=n)
        .map(|k| {
            let v = (k as f64 * alpha).rem_euclid(1.0);
            if v >= 1.0 {
                0.0
            } else {
                v
            }
        })
        .collect();
    PointSet { values }
}

/// Tail values `x_n` (to float precision) for the first `count` indices.
pub fn tail_points(spec: &TailSpec, count: u64) -> Result<PointSet> {
    let first = spec.first_index();
    let end = first.checked_add(count).ok_or(Error::IndexOverflow)?;
    let values = (first..end).map(|n| spec.value_f64(n)).collect::<Result<Vec<_>>>()?;
    PointSet::new(values)
}

/// Which discrepancy to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiscrepancyKind {
    /// Intervals anchored at the left end, `D*_N`.
    #[default]
    Star,
    /// All subintervals, `D_N`.
    Extreme,
}

/// `D*_N = max_i max(i/N - v_(i), v_(i) - (i-1)/N)` over the sorted points.
pub fn star_discrepancy(points: &PointSet) -> Result<f64> {
    let sorted = points.sorted()?;
    let n = sorted.len() as f64;
    Ok(sorted.iter().enumerate().fold(0.0f64, |acc, (i, &v)| {
        let above = (i + 1) as f64 / n - v;
        let below = v - i as f64 / n;
        acc.max(above).max(below)
    }))
}

/// `D_N = 1/N + max_i (i/N - v_(i)) - min_i (i/N - v_(i))`.
pub fn extreme_discrepancy(points: &PointSet) -> Result<f64> {
    let sorted = points.sorted()?;
    let n = sorted.len() as f64;
    let (lo, hi) = sorted.iter().enumerate().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (i, &v)| {
        let gap = (i + 1) as f64 / n - v;
        (lo.min(gap), hi.max(gap))
    });
    Ok(1.0 / n + hi - lo)
}

/// Deviation from uniform distribution over `[alpha, beta)` using the star
/// discrepancy of the affinely rescaled points.
pub fn ud_deviation(points: &PointSet, alpha: &ExactEndpoint, beta: &ExactEndpoint) -> Result<f64> {
    ud_deviation_with(points, alpha, beta, DiscrepancyKind::Star)
}

pub fn ud_deviation_with(
    points: &PointSet,
    alpha: &ExactEndpoint,
    beta: &ExactEndpoint,
    kind: DiscrepancyKind,
) -> Result<f64> {
    if alpha.cmp_exact(beta)? != std::cmp::Ordering::Less {
        return Err(Error::EmptyInterval);
    }
    let (a, b) = (alpha.to_f64(), beta.to_f64());
    let width = b - a;
    let rescaled = points
        .values
        .iter()
        .map(|&v| {
            if v < a || v >= b {
                return Err(Error::PointOutsideInterval { value: v, alpha: a, beta: b });
            }
            Ok(((v - a) / width).min(BELOW_ONE))
        })
        .collect::<Result<Vec<_>>>()?;
    let rescaled = PointSet { values: rescaled };
    match kind {
        DiscrepancyKind::Star => star_discrepancy(&rescaled),
        DiscrepancyKind::Extreme => extreme_discrepancy(&rescaled),
    }
}

/// `|(1/N) sum_n exp(2 pi i h v_n)|`.
pub fn weyl_sum(points: &PointSet, h: i64) -> Result<f64> {
    if h == 0 {
        return Err(Error::ZeroFrequency);
    }
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (re, im) = points.values.iter().fold((0.0, 0.0), |(re, im), &v| {
        let phase = TAU * (h as f64 * v).rem_euclid(1.0);
        (re + phase.cos(), im + phase.sin())
    });
    Ok(re.hypot(im) / points.len() as f64)
}

/// `{log10 m}` for a positive integer.
///
/// Uses the digit count for the integer part and the leading
/// `MANTISSA_DIGITS` digits for the fraction, so big terms never pass
/// through a float. The mantissa of `c * 10^k` is exactly `c` scaled, so
/// exact powers of ten come out as `0.0` rather than `0.999...`.
pub fn log10_fract(m: &BigUint) -> Result<f64> {
    if m.is_zero() {
        return Err(Error::ZeroNotAllowed);
    }
    let len = digit_length(m, 10)?;
    let (mantissa, mant_len) = if len > MANTISSA_DIGITS {
        let cut = BigUint::from(10u32).pow((len - MANTISSA_DIGITS) as u32);
        ((m / cut).to_u64().expect("18 digits fit in u64"), MANTISSA_DIGITS)
    } else {
        (m.to_u64().expect("at most 18 digits"), len)
    };
    // 10^(mant_len - 1) <= 10^17 is exact in f64.
    let scale = 10f64.powi(mant_len as i32 - 1);
    let frac = (mantissa as f64 / scale).log10();
    Ok(frac.clamp(0.0, BELOW_ONE))
}

/// `{log10 a_i}` for each term.
pub fn log_fracparts<I>(terms: I) -> Result<PointSet>
where
    I: IntoIterator,
    I::Item: Borrow<BigUint>,
{
    let values = terms.into_iter().map(|t| log10_fract(t.borrow())).collect::<Result<Vec<_>>>()?;
    Ok(PointSet { values })
}

/// `log10(1 + 1/c)` for `c = 1..=9`.
pub fn benford_frequencies() -> [f64; 9] {
    std::array::from_fn(|i| (1.0 + 1.0 / (i + 1) as f64).log10())
}

/// Observed leading-digit frequencies against Benford's law.
#[derive(Debug, Clone, PartialEq)]
pub struct BenfordReport {
    pub n: u64,
    pub digit_counts: [u64; 9],
    pub digit_freq: [f64; 9],
    pub benford_freq: [f64; 9],
    pub max_abs_gap: f64,
    /// Star discrepancy of `{log10 a_i}`; zero in the limit iff the
    /// sequence is strongly Benford.
    pub log_discrepancy: f64,
}

pub fn benford_report<I>(terms: I) -> Result<BenfordReport>
where
    I: IntoIterator,
    I::Item: Borrow<BigUint>,
{
    let terms: Vec<I::Item> = terms.into_iter().collect();
    let tally = census(terms.iter().map(|t| t.borrow()), 10)?;
    let n = tally.total();
    let digit_counts: [u64; 9] = tally.counts().try_into().expect("base 10 has nine leading digits");
    let freq = tally.frequencies();
    let digit_freq: [f64; 9] = freq.try_into().expect("nine frequencies");
    let benford_freq = benford_frequencies();
    let max_abs_gap = digit_freq.iter().zip(&benford_freq).map(|(o, e)| (o - e).abs()).fold(0.0, f64::max);
    let log_discrepancy = star_discrepancy(&log_fracparts(terms.iter().map(|t| t.borrow()))?)?;
    Ok(BenfordReport { n, digit_counts, digit_freq, benford_freq, max_abs_gap, log_discrepancy })
}

fn ln_big(m: &BigUint) -> f64 {
    match m.to_u128() {
        Some(v) => (v as f64).ln(),
        None => {
            let shift = m.bits() - 64;
            let top = (m >> shift).to_u64().expect("64 bits");
            (top as f64).ln() + shift as f64 * LN_2
        }
    }
}

fn check_log_args(poly: &IntPoly, n: u64, base: u32) -> Result<BigUint> {
    check_base(base)?;
    if n < 2 {
        return Err(Error::Domain("n must be at least 2 (log_b 1 = 0)".into()));
    }
    poly.eval_positive(n)
}

/// `log_b f(n) / log_b n`, which tends to the degree `d`.
pub fn poly_log_ratio(poly: &IntPoly, n: u64, base: u32) -> Result<f64> {
    let f = check_log_args(poly, n, base)?;
    Ok(ln_big(&f) / (n as f64).ln())
}

/// `log_b f(n) - d log_b n`, which tends to `log_b c_d`.
pub fn poly_log_excess(poly: &IntPoly, n: u64, base: u32) -> Result<f64> {
    let f = check_log_args(poly, n, base)?;
    let d = f64::from(poly.degree());
    Ok((ln_big(&f) - d * (n as f64).ln()) / f64::from(base).ln())
}
