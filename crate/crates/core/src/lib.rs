//! Exact leading-digit counting for concatenation-tail sequences.
//!
//! A concatenation tail is the real number `x_n = 0.a_n a_{n+1} a_{n+2} ...`
//! obtained by writing the integers `a_n, a_{n+1}, ...` one after another.
//! The crate builds three families of them (`a_n = n`, `a_n = k n` and
//! `a_n = f(n)` for an integer polynomial `f`), counts how many of the first
//! `N` tails land in an interval, and measures how far those counts are
//! from uniform distribution.
//!
//! ```
//! use concat_equidist::{count_a, HalfOpenInterval, TailSpec};
//!
//! let cell = HalfOpenInterval::parse_decimal("0.1", "0.2").unwrap();
//! let result = count_a(&TailSpec::champernowne(), &cell, 20).unwrap();
//! assert_eq!(result.count, 11);
//! ```

pub mod asymptotics;
pub mod counting;
pub mod equidist;
pub mod error;
pub mod exactnum;
pub mod seqgen;

pub use asymptotics::{
    inverse_epsilon, lemma1_main_term, lemma2_main_term, limit_constants, poly_floor_inverse, ratio_scan,
    subsequence_points_linear, subsequence_points_poly, y_sequence, LimitConstants, RatioScanReport, ScanKind,
    ScanPoint, ScanRecord,
};
pub use counting::{
    census, count_a, count_a_with, count_range, in_interval, leading_digit, Census, CountResult, Strategy,
};
pub use equidist::{
    benford_report, log_fracparts, poly_log_ratio, star_discrepancy, ud_deviation, weyl_sum, BenfordReport, PointSet,
};
pub use error::{Error, Result};
pub use exactnum::{
    compare_prefix, digit_length, int_to_digits, DigitString, ExactEndpoint, HalfOpenInterval, PrefixOrdering,
};
pub use seqgen::{poly_eval, tail_digits, term, IntPoly, TailKind, TailSpec};
