//! Algorithm parameters and their derivation.
//!
//! All logarithms are base 2. The quantity written `log n` in the constant
//! formulas is the integer `lg n = ceil(log2 n)`, which keeps the radius
//! scalars and the interval geometry integral.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParamsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Constants taken literally from the analysis.
    PaperExact,
    /// User-scaled constants that exercise deep recursion on small graphs.
    Practical,
}

/// Which distance scales `j` the sequential drivers iterate over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ScaleRange {
    /// Unweighted: `[ceil(lg n / 2), lg n]`. Weighted: `[-1, ceil(log2(nW))]`.
    #[default]
    Auto,
    /// Unweighted: `[1, lg n]`. Weighted: same as `Auto`.
    Full,
    /// Inclusive explicit range.
    Explicit { lo: i64, hi: i64 },
}

impl ScaleRange {
    pub fn resolve_unweighted(self, n: usize) -> (i64, i64) {
        let lg = lg(n) as i64;
        match self {
            ScaleRange::Auto => ((lg + 1) / 2, lg),
            ScaleRange::Full => (1, lg),
            ScaleRange::Explicit { lo, hi } => (lo, hi),
        }
    }

    pub fn resolve_weighted(self, n: usize, max_weight: f64) -> (i64, i64) {
        match self {
            ScaleRange::Auto | ScaleRange::Full => {
                let top = (n as f64 * max_weight.max(1.0)).log2().ceil() as i64;
                (-1, top.max(-1))
            }
            ScaleRange::Explicit { lo, hi } => (lo, hi),
        }
    }
}

impl fmt::Display for ScaleRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleRange::Auto => f.write_str("auto"),
            ScaleRange::Full => f.write_str("full"),
            ScaleRange::Explicit { lo, hi } => write!(f, "{lo}:{hi}"),
        }
    }
}

impl FromStr for ScaleRange {
    type Err = ParamsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(ScaleRange::Auto),
            "full" => Ok(ScaleRange::Full),
            _ => {
                let bad = || ParamsError::invalid("scale-range", format!("expected auto, full or lo:hi, got {s:?}"));
                let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
                let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
                let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                Ok(ScaleRange::Explicit { lo, hi })
            }
        }
    }
}

impl From<ScaleRange> for String {
    fn from(s: ScaleRange) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for ScaleRange {
    type Error = ParamsError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Constants supplied directly in practical mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PracticalConstants {
    /// `L`: vertices with level at most `r + L` shortcut at level `r`.
    pub shortcut_depth: u32,
    /// `k^c`; the recursion is seeded with `D = 2^j / k^c`.
    pub k_pow_c: f64,
    pub rho_min: u64,
    pub rho_max: u64,
    pub interval_width: u64,
    pub interval_count: u64,
    pub repetitions: u32,
}

impl Default for PracticalConstants {
    fn default() -> Self {
        Self {
            shortcut_depth: 0,
            k_pow_c: 8.0,
            rho_min: 3,
            rho_max: 8,
            interval_width: 2,
            interval_count: 2,
            repetitions: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ModeConfig {
    PaperExact,
    Practical(PracticalConstants),
}

/// Fully derived parameter set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    /// `ceil(log2 n)`, the `log n` of every constant formula.
    pub log_n: u32,
    pub k: u32,
    pub lambda: u32,
    /// `L`.
    pub shortcut_depth: u32,
    /// `k^c`.
    pub k_pow_c: f64,
    pub epsilon: f64,
    pub repetitions: u32,
    pub interval_count: u64,
    pub interval_width: u64,
    pub rho_min: u64,
    pub rho_max: u64,
    /// `ceil(log_k n)`.
    pub max_level: u32,
    pub mode: Mode,
    pub scale_range: ScaleRange,
}

/// `ceil(log2 n)`, at least 1.
pub fn lg(n: usize) -> u32 {
    (usize::BITS - n.saturating_sub(1).leading_zeros()).max(1)
}

/// `ceil(x)` ignoring floating-point noise just above an integer.
fn ceil_tolerant(x: f64) -> f64 {
    (x - 1e-9).ceil()
}

/// `ceil(log_k n)`.
pub fn log_ceil(n: usize, k: u32) -> u32 {
    let mut levels = 0u32;
    let mut reach = 1u128;
    while reach < n as u128 {
        reach *= k as u128;
        levels += 1;
    }
    levels
}

/// Derives the parameter set for an `n`-vertex graph.
///
/// In paper-exact mode:
/// `rho_min = 16 λ² k² lg² n − 1`, `rho_max = 32 λ² k² lg² n`,
/// `interval_count = 4 λ² k lg² n`, `interval_width = 4k`,
/// `L = ceil(15 − 2 log_k ε)`, `k^c = λ^L k^{(L−1)/2} / (32 lg³ n)`,
/// `repetitions = λ lg n`.
pub fn derive_params(
    n: usize,
    epsilon: f64,
    k: u32,
    lambda: u32,
    mode: &ModeConfig,
) -> Result<Params, ParamsError> {
    if n < 2 {
        return Err(ParamsError::invalid("n", format!("need at least 2 vertices, got {n}")));
    }
    // Practical mode never reads ε, so exact (ε = 0) verification is allowed.
    let epsilon_ok = match mode {
        ModeConfig::PaperExact => epsilon > 0.0,
        ModeConfig::Practical(_) => epsilon >= 0.0,
    };
    if !epsilon_ok || !epsilon.is_finite() {
        return Err(ParamsError::invalid("epsilon", format!("out of range: {epsilon}")));
    }
    if k < 2 {
        return Err(ParamsError::invalid("k", format!("must be at least 2, got {k}")));
    }
    if lambda < 1 {
        return Err(ParamsError::invalid("lambda", "must be at least 1"));
    }
    let log_n = lg(n);
    let max_level = log_ceil(n, k);
    let params = match *mode {
        ModeConfig::PaperExact => {
            if lambda < 8 {
                return Err(ParamsError::invalid(
                    "lambda",
                    format!("paper-exact mode requires lambda >= 8, got {lambda}"),
                ));
            }
            let (l, kk, lg_n) = (lambda as u64, k as u64, log_n as u64);
            let shortcut_depth = ceil_tolerant(15.0 - 2.0 * epsilon.ln() / (k as f64).ln()).max(0.0) as u32;
            let k_pow_c = (lambda as f64).powi(shortcut_depth as i32)
                * (k as f64).powf((shortcut_depth as f64 - 1.0) / 2.0)
                / (32.0 * (log_n as f64).powi(3));
            Params {
                n,
                log_n,
                k,
                lambda,
                shortcut_depth,
                k_pow_c,
                epsilon,
                repetitions: lambda * log_n,
                interval_count: 4 * l * l * kk * lg_n * lg_n,
                interval_width: 4 * kk,
                rho_min: 16 * l * l * kk * kk * lg_n * lg_n - 1,
                rho_max: 32 * l * l * kk * kk * lg_n * lg_n,
                max_level,
                mode: Mode::PaperExact,
                scale_range: ScaleRange::Auto,
            }
        }
        ModeConfig::Practical(c) => Params {
            n,
            log_n,
            k,
            lambda,
            shortcut_depth: c.shortcut_depth,
            k_pow_c: c.k_pow_c,
            epsilon,
            repetitions: c.repetitions,
            interval_count: c.interval_count,
            interval_width: c.interval_width,
            rho_min: c.rho_min,
            rho_max: c.rho_max,
            max_level,
            mode: Mode::Practical,
            scale_range: ScaleRange::Auto,
        },
    };
    params.validate()?;
    Ok(params)
}

impl Params {
    /// Checks the structural invariants shared by both modes.
    pub fn validate(&self) -> Result<(), ParamsError> {
        if !(self.rho_min > 1 && self.rho_max > self.rho_min) {
            return Err(ParamsError::invalid(
                "rho",
                format!("need rho_max > rho_min > 1, got rho_min={} rho_max={}", self.rho_min, self.rho_max),
            ));
        }
        if self.interval_width < 2 {
            return Err(ParamsError::invalid("interval_width", "must be at least 2"));
        }
        if self.interval_count < 1 {
            return Err(ParamsError::invalid("interval_count", "must be at least 1"));
        }
        let span = self.rho_max - self.rho_min - 1;
        if self.interval_count.checked_mul(self.interval_width) != Some(span) {
            return Err(ParamsError::invalid(
                "interval_count",
                format!(
                    "{} subintervals of width {} do not span [{}, {})",
                    self.interval_count,
                    self.interval_width,
                    self.rho_min + 1,
                    self.rho_max
                ),
            ));
        }
        if !(self.k_pow_c > 0.0) || !self.k_pow_c.is_finite() {
            return Err(ParamsError::invalid("k_pow_c", "must be positive and finite"));
        }
        if self.repetitions < 1 {
            return Err(ParamsError::invalid("repetitions", "must be at least 1"));
        }
        Ok(())
    }

    pub fn with_scale_range(mut self, scale_range: ScaleRange) -> Self {
        self.scale_range = scale_range;
        self
    }

    /// Smallest candidate scalar, `rho_min + 1`.
    pub fn interval_start(&self) -> u64 {
        self.rho_min + 1
    }

    /// Candidate scalars of subinterval `sigma` (1-based).
    pub fn subinterval(&self, sigma: u64) -> Range<u64> {
        debug_assert!((1..=self.interval_count).contains(&sigma));
        let lo = self.interval_start() + self.interval_width * (sigma - 1);
        lo..lo + self.interval_width
    }

    /// Probability `min(1, λ k^{i+1} lg n / n)` that a vertex not yet
    /// assigned takes level `i`; exactly 1 at `max_level`.
    pub fn level_probability(&self, i: u32) -> f64 {
        if i >= self.max_level {
            return 1.0;
        }
        let p = self.lambda as f64 * (self.k as f64).powi(i as i32 + 1) * self.log_n as f64 / self.n as f64;
        p.min(1.0)
    }

    /// `D_r = D / (λ^r k^{r/2})`.
    pub fn base_distance(&self, d: f64, level: u32) -> f64 {
        d / ((self.lambda as f64).powi(level as i32) * (self.k as f64).powf(level as f64 / 2.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lg_is_ceiling_log2() {
        assert_eq!(lg(2), 1);
        assert_eq!(lg(3), 2);
        assert_eq!(lg(1024), 10);
        assert_eq!(lg(1025), 11);
    }

    #[test]
    fn paper_exact_rho_max() {
        let p = derive_params(1024, 1.0, 2, 8, &ModeConfig::PaperExact).unwrap();
        assert_eq!(p.rho_max, 32 * 64 * 4 * 100);
        assert_eq!(p.rho_max, 819_200);
        assert_eq!(p.rho_min, 409_599);
        assert_eq!(p.interval_count, 4 * 64 * 2 * 100);
        assert_eq!(p.interval_width, 8);
        assert_eq!(p.repetitions, 80);
        assert_eq!(p.max_level, 10);
    }

    #[test]
    fn paper_exact_shortcut_depth() {
        let p = derive_params(1024, 1.0, 2, 8, &ModeConfig::PaperExact).unwrap();
        assert_eq!(p.shortcut_depth, 15);
        let expected = 8f64.powi(15) * 2f64.powf(7.0) / (32.0 * 1000.0);
        assert_eq!(p.k_pow_c, expected);
        let q = derive_params(1024, 0.25, 2, 8, &ModeConfig::PaperExact).unwrap();
        assert_eq!(q.shortcut_depth, 19);
    }

    #[test]
    fn paper_exact_intervals_span() {
        for (n, k) in [(100, 2), (1000, 3), (5000, 4)] {
            let p = derive_params(n, 0.5, k, 8, &ModeConfig::PaperExact).unwrap();
            let last = p.subinterval(p.interval_count);
            assert_eq!(p.subinterval(1).start, p.rho_min + 1);
            assert_eq!(last.end, p.rho_max);
        }
    }

    #[test]
    fn practical_example_spans_four_to_eight() {
        let c = PracticalConstants {
            rho_min: 3,
            rho_max: 8,
            interval_width: 2,
            interval_count: 2,
            ..Default::default()
        };
        let p = derive_params(64, 1.0, 2, 1, &ModeConfig::Practical(c)).unwrap();
        assert_eq!(p.subinterval(1), 4..6);
        assert_eq!(p.subinterval(2), 6..8);
    }

    #[test]
    fn practical_rejects_bad_constants() {
        let bad_order = PracticalConstants {
            rho_min: 8,
            rho_max: 3,
            ..Default::default()
        };
        assert!(derive_params(64, 1.0, 2, 1, &ModeConfig::Practical(bad_order)).is_err());
        let bad_span = PracticalConstants {
            interval_count: 3,
            ..Default::default()
        };
        assert!(derive_params(64, 1.0, 2, 1, &ModeConfig::Practical(bad_span)).is_err());
        let narrow = PracticalConstants {
            rho_min: 3,
            rho_max: 8,
            interval_width: 1,
            interval_count: 4,
            ..Default::default()
        };
        assert!(derive_params(64, 1.0, 2, 1, &ModeConfig::Practical(narrow)).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        let pe = ModeConfig::PaperExact;
        assert!(derive_params(1, 1.0, 2, 8, &pe).is_err());
        assert!(derive_params(10, 0.0, 2, 8, &pe).is_err());
        assert!(derive_params(10, 1.0, 1, 8, &pe).is_err());
        assert!(derive_params(10, 1.0, 2, 4, &pe).is_err());
    }

    #[test]
    fn level_probability_clamps() {
        let p = derive_params(16, 1.0, 2, 8, &ModeConfig::PaperExact).unwrap();
        assert_eq!(p.level_probability(0), 1.0);
        let c = PracticalConstants::default();
        let q = derive_params(1 << 20, 1.0, 2, 1, &ModeConfig::Practical(c)).unwrap();
        assert_eq!(q.level_probability(0), 2.0 * 20.0 / (1u64 << 20) as f64);
        assert_eq!(q.level_probability(q.max_level), 1.0);
    }

    #[test]
    fn scale_range_parsing() {
        assert_eq!("auto".parse::<ScaleRange>().unwrap(), ScaleRange::Auto);
        assert_eq!("-1:4".parse::<ScaleRange>().unwrap(), ScaleRange::Explicit { lo: -1, hi: 4 });
        assert!("4:1".parse::<ScaleRange>().is_err());
        assert_eq!(ScaleRange::Auto.resolve_unweighted(1024), (5, 10));
        assert_eq!(ScaleRange::Full.resolve_unweighted(1024), (1, 10));
        assert_eq!(ScaleRange::Auto.resolve_weighted(50, 100.0), (-1, 13));
    }
}
