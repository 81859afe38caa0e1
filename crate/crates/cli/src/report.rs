use std::fs;
use std::path::Path;

use concat_equidist::asymptotics::{BASELINE_DENSITY, Y_LIMIT};
use concat_equidist::equidist::{extreme_discrepancy, tail_points};
use concat_equidist::{
    benford_report, count_a, limit_constants, log_fracparts, ratio_scan, star_discrepancy, subsequence_points_linear,
    subsequence_points_poly, weyl_sum, ExactEndpoint, HalfOpenInterval, IntPoly, PointSet, TailKind, TailSpec,
};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::args::{
    BenfordArgs, CountArgs, DiscrepancyArgs, Generator, IntervalArgs, Kind, LimitsArgs, ScanArgs, SpecArgs, TailArgs,
};
use crate::CliError;

pub const MAX_N: u64 = 10_000_000;
pub const MAX_JMAX: u32 = 6;
pub const MAX_BIG_JMAX: u32 = 8;
/// 2^n for n up to this bound already needs ~25 MB of digits.
pub const MAX_POW2_N: u64 = 20_000;

/// Rounds to 12 significant digits, the precision of every float we print.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub sequence: String,
    pub interval: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub count: u64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub j: u32,
    #[serde(rename = "N")]
    pub n: u64,
    pub count: u64,
    pub ratio: f64,
    pub main_term: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanTable {
    pub sequence: String,
    pub target_constant: f64,
    pub y_d: f64,
    pub baseline_density: f64,
    pub rows: Vec<ScanRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyRow {
    pub source: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub star: f64,
    pub extreme: f64,
    pub h: i64,
    pub weyl: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenfordRow {
    pub digit: u8,
    pub count: u64,
    pub freq: f64,
    pub benford: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenfordTable {
    pub source: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub max_abs_gap: f64,
    pub log_discrepancy: f64,
    pub rows: Vec<BenfordRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitsRow {
    pub d: u32,
    pub y_d: f64,
    pub scan_limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitsTable {
    pub baseline_density: f64,
    pub y_limit: f64,
    pub rows: Vec<LimitsRow>,
}

/// Result of one command, ready to render.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Tail(String),
    Count(CountRow),
    Scan(ScanTable),
    Discrepancy(DiscrepancyRow),
    Benford(BenfordTable),
    Limits(LimitsTable),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_cap(name: &str, value: u64, cap: u64, uncapped: bool) -> Result<(), CliError> {
    if value > cap && !uncapped {
        return Err(usage(format!("{name} = {value} exceeds the cap {cap}; pass --unsafe-uncapped to override")));
    }
    Ok(())
}

fn parse_poly(coeffs: Option<&str>, context: &str) -> Result<IntPoly, CliError> {
    let text = coeffs.ok_or_else(|| usage(format!("{context} requires --coeffs")))?;
    IntPoly::parse_coeffs(text).map_err(|e| usage(e.to_string()))
}

pub fn build_spec(args: &SpecArgs) -> Result<TailSpec, CliError> {
    if args.k.is_some() && args.kind != Kind::Mult {
        return Err(usage("--k only applies to --kind mult"));
    }
    if args.coeffs.is_some() && args.kind != Kind::Poly {
        return Err(usage("--coeffs only applies to --kind poly"));
    }
    let kind = match args.kind {
        Kind::Champ => TailKind::Champernowne,
        Kind::Mult => TailKind::Multiple(args.k.ok_or_else(|| usage("--kind mult requires --k"))?),
        Kind::Poly => TailKind::Poly(parse_poly(args.coeffs.as_deref(), "--kind poly")?),
    };
    TailSpec::new(kind, args.base).map_err(|e| usage(e.to_string()))
}

pub fn build_interval(args: &IntervalArgs, base: u32) -> Result<HalfOpenInterval, CliError> {
    let lo = ExactEndpoint::parse_in_base(&args.lo, base).map_err(|e| usage(e.to_string()))?;
    let hi = ExactEndpoint::parse_in_base(&args.hi, base).map_err(|e| usage(e.to_string()))?;
    HalfOpenInterval::new(lo, hi).map_err(|e| usage(e.to_string()))
}

pub fn tail(args: &TailArgs) -> Result<Report, CliError> {
    let spec = build_spec(&args.spec)?;
    let prefix = spec.prefix(args.n, args.digits)?;
    Ok(Report::Tail(format!("0.{prefix}")))
}

pub fn count(args: &CountArgs, uncapped: bool) -> Result<Report, CliError> {
    let spec = build_spec(&args.spec)?;
    let interval = build_interval(&args.interval, spec.base())?;
    check_cap("N", args.n_terms, MAX_N, uncapped)?;
    let result = count_a(&spec, &interval, args.n_terms)?;
    Ok(Report::Count(CountRow {
        sequence: spec.to_string(),
        interval: interval.to_string(),
        n: result.n,
        count: result.count,
        ratio: round12(result.ratio),
    }))
}

pub fn scan(args: &ScanArgs, uncapped: bool) -> Result<Report, CliError> {
    let spec = build_spec(&args.spec)?;
    let interval = build_interval(&args.interval, spec.base())?;
    let points = match spec.kind() {
        TailKind::Poly(p) => {
            if args.jmax.is_some() {
                return Err(usage("--kind poly takes --Jmax, not --jmax"));
            }
            let j_max = args.big_jmax.unwrap_or(MAX_BIG_JMAX);
            check_cap("Jmax", j_max.into(), MAX_BIG_JMAX.into(), uncapped)?;
            subsequence_points_poly(p, j_max)?
        }
        linear => {
            if args.big_jmax.is_some() {
                return Err(usage("linear kinds take --jmax, not --Jmax"));
            }
            let k = match linear {
                TailKind::Multiple(k) => *k,
                _ => 1,
            };
            let j_max = args.jmax.unwrap_or(MAX_JMAX);
            check_cap("jmax", j_max.into(), MAX_JMAX.into(), uncapped)?;
            subsequence_points_linear(k, j_max)?
        }
    };
    let report = ratio_scan(&spec, &interval, &points)?;
    let rows = report
        .records
        .iter()
        .map(|r| ScanRow {
            j: r.j,
            n: r.n,
            count: r.count,
            ratio: round12(r.ratio),
            main_term: round12(r.main_term),
            residual: round12(r.residual),
        })
        .collect();
    Ok(Report::Scan(ScanTable {
        sequence: spec.to_string(),
        target_constant: round12(report.target_constant),
        y_d: round12(report.constants.paper_lower_bound),
        baseline_density: round12(report.constants.baseline_density),
        rows,
    }))
}

/// Reads newline-delimited positive integers, skipping blank lines.
pub fn read_integers(path: &Path) -> Result<Vec<BigUint>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::ReadInput { path: path.to_owned(), source })?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| CliError::BadLine { path: path.to_owned(), line: i + 1, msg: format!("{msg}: {line:?}") };
        if !line.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("not a decimal integer"));
        }
        let v: BigUint = line.parse().map_err(|_| bad("not a decimal integer"))?;
        if v == BigUint::ZERO {
            return Err(bad("expected a positive integer"));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(concat_equidist::Error::EmptyInput.into());
    }
    Ok(values)
}

fn generate(gen: Generator, n: u64, coeffs: Option<&str>, uncapped: bool) -> Result<(String, Vec<BigUint>), CliError> {
    if coeffs.is_some() && gen != Generator::Poly {
        return Err(usage("--coeffs only applies to --gen poly"));
    }
    if n == 0 {
        return Err(concat_equidist::Error::EmptyInput.into());
    }
    match gen {
        Generator::Naturals => {
            check_cap("N", n, MAX_N, uncapped)?;
            Ok(("naturals".into(), (1..=n).map(BigUint::from).collect()))
        }
        Generator::Pow2 => {
            check_cap("N", n, MAX_POW2_N, uncapped)?;
            let mut v = BigUint::from(1u32);
            let terms = (0..n)
                .map(|_| {
                    v <<= 1;
                    v.clone()
                })
                .collect();
            Ok(("pow2".into(), terms))
        }
        Generator::Poly => {
            check_cap("N", n, MAX_N, uncapped)?;
            let p = parse_poly(coeffs, "--gen poly")?;
            let start = p.n_min();
            let end = start.checked_add(n).ok_or(concat_equidist::Error::IndexOverflow)?;
            let terms = (start..end).map(|m| p.eval_positive(m)).collect::<Result<Vec<_>, _>>()?;
            Ok((format!("poly({p})"), terms))
        }
    }
}

fn source_terms(
    gen: Option<Generator>,
    file: Option<&Path>,
    n: u64,
    coeffs: Option<&str>,
    uncapped: bool,
) -> Result<(String, Vec<BigUint>), CliError> {
    match (file, gen) {
        (Some(path), _) => Ok((path.display().to_string(), read_integers(path)?)),
        (None, Some(gen)) => generate(gen, n, coeffs, uncapped),
        (None, None) => Err(usage("need --gen or --file")),
    }
}

fn discrepancy_row(source: String, points: &PointSet, h: i64) -> Result<DiscrepancyRow, CliError> {
    Ok(DiscrepancyRow {
        source,
        n: points.len() as u64,
        star: round12(star_discrepancy(points)?),
        extreme: round12(extreme_discrepancy(points)?),
        h,
        weyl: round12(weyl_sum(points, h)?),
    })
}

pub fn discrepancy(args: &DiscrepancyArgs, uncapped: bool) -> Result<Report, CliError> {
    if args.gen.is_none() && args.file.is_none() {
        let spec = build_spec(&args.spec)?;
        check_cap("N", args.n_terms, MAX_N, uncapped)?;
        if args.n_terms == 0 {
            return Err(concat_equidist::Error::EmptyInput.into());
        }
        let points = tail_points(&spec, args.n_terms)?;
        return Ok(Report::Discrepancy(discrepancy_row(format!("tails {spec}"), &points, args.h)?));
    }
    if args.spec.kind != Kind::Champ || args.spec.k.is_some() || args.spec.base != 10 {
        return Err(usage("--kind, --k and --base only apply to tail discrepancy"));
    }
    let (source, terms) =
        source_terms(args.gen, args.file.as_deref(), args.n_terms, args.spec.coeffs.as_deref(), uncapped)?;
    let points = log_fracparts(&terms)?;
    Ok(Report::Discrepancy(discrepancy_row(format!("log10 {source}"), &points, args.h)?))
}

pub fn benford(args: &BenfordArgs, uncapped: bool) -> Result<Report, CliError> {
    let (source, terms) = source_terms(args.gen, args.file.as_deref(), args.n_terms, args.coeffs.as_deref(), uncapped)?;
    let r = benford_report(&terms)?;
    let rows = (0..9)
        .map(|i| BenfordRow {
            digit: i as u8 + 1,
            count: r.digit_counts[i],
            freq: round12(r.digit_freq[i]),
            benford: round12(r.benford_freq[i]),
            gap: round12(r.digit_freq[i] - r.benford_freq[i]),
        })
        .collect();
    Ok(Report::Benford(BenfordTable {
        source,
        n: r.n,
        max_abs_gap: round12(r.max_abs_gap),
        log_discrepancy: round12(r.log_discrepancy),
        rows,
    }))
}

pub fn limits(args: &LimitsArgs) -> Result<Report, CliError> {
    if args.dmax == 0 {
        return Err(usage("--dmax must be at least 1"));
    }
    let rows = (1..=args.dmax)
        .map(|d| {
            let c = limit_constants(d)?;
            Ok(LimitsRow { d, y_d: round12(c.paper_lower_bound), scan_limit: round12(c.scan_limit) })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Report::Limits(LimitsTable { baseline_density: round12(BASELINE_DENSITY), y_limit: round12(Y_LIMIT), rows }))
}
