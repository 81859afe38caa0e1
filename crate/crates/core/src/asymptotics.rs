//! Main terms of the leading-digit counts, the polynomial floor inverse,
//! subsequence scans and the limiting ratio constants.
//!
//! Counts are exact integers throughout; the closed-form main terms and
//! limits are evaluated in floating point and only ever used to form
//! residuals and tolerances.

use std::f64::consts::{LN_10, LN_2};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::counting::count_a;
use crate::error::{Error, Result};
use crate::exactnum::HalfOpenInterval;
use crate::seqgen::{IntPoly, TailKind, TailSpec};

/// `log 2 / (2 log 10)`, the limit of `y_d` as `d` grows.
pub const Y_LIMIT: f64 = LN_2 / (2.0 * LN_10);

/// Density `(0.2 - 0.1) / (1 - 0.1)` that `[0.1, 0.2)` would get under
/// uniform distribution over `[0.1, 1)`.
pub const BASELINE_DENSITY: f64 = 1.0 / 9.0;

/// `sum_{i=0}^{J} floor(10^i / k)`.
pub fn lemma1_main_term(k: u64, j: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let k = BigUint::from(k);
    let mut power = BigUint::one();
    let mut total = BigUint::zero();
    for _ in 0..=j {
        total += &power / &k;
        power *= 10u32;
    }
    Ok(total)
}

/// One point of a subsequence scan: exponent `j` and sample size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScanPoint {
    pub j: u32,
    pub n: u64,
}

/// `n_j = floor(2 * 10^j / k)` for every `j <= j_max` with `2 * 10^j > k`.
pub fn subsequence_points_linear(k: u64, j_max: u32) -> Result<Vec<ScanPoint>> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let k_big = BigUint::from(k);
    let mut points = Vec::new();
    let mut twice_power = BigUint::from(2u32);
    for j in 0..=j_max {
        if twice_power > k_big {
            let n = (&twice_power / &k_big).to_u64().ok_or(Error::IndexOverflow)?;
            points.push(ScanPoint { j, n });
        }
        twice_power *= 10u32;
    }
    if points.is_empty() {
        return Err(Error::EmptySubsequence { k, j_max });
    }
    Ok(points)
}

/// The unique `n >= n_min` with `f(n) <= m < f(n + 1)`.
pub fn poly_floor_inverse(poly: &IntPoly, m: &BigUint) -> Result<u64> {
    let m = BigInt::from(m.clone());
    let mut lo = poly.n_min();
    if poly.eval(lo) > m {
        return Err(Error::BelowRange);
    }
    let mut step = 1u64;
    let mut hi = lo.checked_add(step).ok_or(Error::IndexOverflow)?;
    while poly.eval(hi) <= m {
        lo = hi;
        step = step.checked_mul(2).ok_or(Error::IndexOverflow)?;
        hi = lo.checked_add(step).ok_or(Error::IndexOverflow)?;
    }
    // f(lo) <= m < f(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if poly.eval(mid) <= m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `g(m) - (m / c_d)^(1/d)` where `g` is [`poly_floor_inverse`].
pub fn inverse_epsilon(poly: &IntPoly, m: &BigUint) -> Result<f64> {
    let g = poly_floor_inverse(poly, m)?;
    let scaled = m.to_f64().unwrap_or(f64::INFINITY) / poly.leading().to_f64().unwrap_or(f64::INFINITY);
    let root = match poly.degree() {
        1 => scaled,
        2 => scaled.sqrt(),
        3 => scaled.cbrt(),
        d => scaled.powf(1.0 / f64::from(d)),
    };
    Ok(g as f64 - root)
}

/// `((2^{1/d} - 1) / c_d^{1/d}) * sum_{i=1}^{J} 10^{i/d}`.
pub fn lemma2_main_term(poly: &IntPoly, j: u32) -> Result<f64> {
    if j == 0 {
        return Err(Error::Domain("J must be at least 1".into()));
    }
    let inv_d = 1.0 / f64::from(poly.degree());
    let c = poly.leading().to_f64().unwrap_or(f64::INFINITY);
    let factor = (inv_d * LN_2).exp_m1() / c.powf(inv_d);
    let sum: f64 = (1..=j).map(|i| (f64::from(i) * inv_d * LN_10).exp()).sum();
    Ok(factor * sum)
}

/// Scan points `N_J` for a polynomial tail, `1 <= J <= j_max`.
///
/// `N_J` counts the indices `n_min ..= g(2 * 10^J)`, so for polynomials with
/// `n_min = 1` it is exactly the floor inverse.
pub fn subsequence_points_poly(poly: &IntPoly, j_max: u32) -> Result<Vec<ScanPoint>> {
    let mut points = Vec::new();
    for j in 1..=j_max {
        let m = BigUint::from(2u32) * BigUint::from(10u32).pow(j);
        match poly_floor_inverse(poly, &m) {
            Ok(g) => points.push(ScanPoint { j, n: g - poly.n_min() + 1 }),
            Err(Error::BelowRange) => continue,
            Err(e) => return Err(e),
        }
    }
    if points.is_empty() {
        return Err(Error::Domain(format!("no J <= {j_max} with 2*10^J >= f(n_min)")));
    }
    Ok(points)
}

/// Limiting ratios for degree `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitConstants {
    pub d: u32,
    /// `y_d = 5^{1/d}(2^{1/d} - 1) / (2(10^{1/d} - 1))`.
    pub paper_lower_bound: f64,
    /// `2 y_d`, the value the subsequence ratios actually approach.
    pub scan_limit: f64,
    pub baseline_density: f64,
}

fn y(d: u32) -> f64 {
    let x = 1.0 / f64::from(d);
    (x * 5f64.ln()).exp() * (x * LN_2).exp_m1() / (2.0 * (x * LN_10).exp_m1())
}

pub fn limit_constants(d: u32) -> Result<LimitConstants> {
    if d == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    let lower = y(d);
    Ok(LimitConstants { d, paper_lower_bound: lower, scan_limit: 2.0 * lower, baseline_density: BASELINE_DENSITY })
}

/// `[y_1, ..., y_{d_max}]`.
pub fn y_sequence(d_max: u32) -> Result<Vec<f64>> {
    if d_max == 0 {
        return Err(Error::Domain("d_max must be at least 1".into()));
    }
    Ok((1..=d_max).map(y).collect())
}

/// Which main term a scan compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    Linear { k: u64 },
    Poly { degree: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub j: u32,
    pub n: u64,
    pub count: u64,
    pub ratio: f64,
    pub main_term: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioScanReport {
    pub kind: ScanKind,
    pub first_index: u64,
    pub records: Vec<ScanRecord>,
    pub target_constant: f64,
    pub constants: LimitConstants,
}

impl RatioScanReport {
    pub fn last(&self) -> &ScanRecord {
        self.records.last().expect("scan reports are non-empty")
    }
}

/// Counts at each scan point and compares with the closed-form main term.
pub fn ratio_scan(spec: &TailSpec, interval: &HalfOpenInterval, points: &[ScanPoint]) -> Result<RatioScanReport> {
    spec.require_decimal("ratio scan")?;
    if points.is_empty() || points.windows(2).any(|w| w[0].n >= w[1].n) {
        return Err(Error::InvalidScanPoints);
    }
    let (kind, constants) = match spec.kind() {
        TailKind::Champernowne => (ScanKind::Linear { k: 1 }, limit_constants(1)?),
        TailKind::Multiple(k) => (ScanKind::Linear { k: *k }, limit_constants(1)?),
        TailKind::Poly(p) => (ScanKind::Poly { degree: p.degree() }, limit_constants(p.degree())?),
    };
    let records = points
        .iter()
        .map(|pt| {
            let result = count_a(spec, interval, pt.n)?;
            let main_term = match (kind, spec.kind()) {
                (ScanKind::Linear { k }, _) => lemma1_main_term(k, pt.j)?.to_f64().unwrap_or(f64::INFINITY),
                (_, TailKind::Poly(p)) => lemma2_main_term(p, pt.j)?,
                _ => unreachable!(),
            };
            Ok(ScanRecord {
                j: pt.j,
                n: pt.n,
                count: result.count,
                ratio: result.ratio,
                main_term,
                residual: result.count as f64 - main_term,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatioScanReport {
        kind,
        first_index: spec.first_index(),
        records,
        target_constant: constants.scan_limit,
        constants,
    })
}
