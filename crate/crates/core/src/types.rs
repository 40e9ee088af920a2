//! Value types shared by every module.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::{Error, Result, FLOAT_TOLERANCE};

/// A single detector reading, `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Outcome(i8);

impl Outcome {
    pub const PLUS: Outcome = Outcome(1);
    pub const MINUS: Outcome = Outcome(-1);

    pub fn new(value: i64) -> Result<Self> {
        match value {
            1 => Ok(Self::PLUS),
            -1 => Ok(Self::MINUS),
            other => Err(Error::InvalidOutcome(other)),
        }
    }

    pub fn from_bool(plus: bool) -> Self {
        if plus {
            Self::PLUS
        } else {
            Self::MINUS
        }
    }

    #[inline]
    pub fn value(self) -> i64 {
        self.0 as i64
    }

    #[inline]
    pub fn is_plus(self) -> bool {
        self.0 > 0
    }
}

impl TryFrom<i64> for Outcome {
    type Error = Error;

    fn try_from(value: i64) -> Result<Self> {
        Outcome::new(value)
    }
}

impl Neg for Outcome {
    type Output = Outcome;

    fn neg(self) -> Outcome {
        Outcome(-self.0)
    }
}

impl Mul for Outcome {
    type Output = i64;

    #[inline]
    fn mul(self, rhs: Outcome) -> i64 {
        self.value() * rhs.value()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_plus() { "+1" } else { "-1" })
    }
}

/// One aligned trial at settings `a`, `b` and `b'` (`bp`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TrialTriple {
    pub a: Outcome,
    pub b: Outcome,
    pub bp: Outcome,
}

impl TrialTriple {
    pub fn new(a: Outcome, b: Outcome, bp: Outcome) -> Self {
        Self { a, b, bp }
    }

    /// Enumerates all eight sign assignments in a fixed order.
    pub fn all() -> impl Iterator<Item = TrialTriple> {
        (0u8..8).map(|bits| {
            TrialTriple::new(
                Outcome::from_bool(bits & 4 == 0),
                Outcome::from_bool(bits & 2 == 0),
                Outcome::from_bool(bits & 1 == 0),
            )
        })
    }
}

/// One aligned trial at four settings `a`, `a'`, `b`, `b'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TrialQuad {
    pub a: Outcome,
    pub ap: Outcome,
    pub b: Outcome,
    pub bp: Outcome,
}

impl TrialQuad {
    pub fn new(a: Outcome, ap: Outcome, b: Outcome, bp: Outcome) -> Self {
        Self { a, ap, b, bp }
    }

    pub fn all() -> impl Iterator<Item = TrialQuad> {
        (0u8..16).map(|bits| {
            TrialQuad::new(
                Outcome::from_bool(bits & 8 == 0),
                Outcome::from_bool(bits & 4 == 0),
                Outcome::from_bool(bits & 2 == 0),
                Outcome::from_bool(bits & 1 == 0),
            )
        })
    }
}

/// A nonempty sequence of aligned triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataSetTriple {
    trials: Vec<TrialTriple>,
}

impl DataSetTriple {
    pub fn new(trials: Vec<TrialTriple>) -> Result<Self> {
        if trials.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { trials })
    }

    pub fn trials(&self) -> &[TrialTriple] {
        &self.trials
    }

    pub fn n(&self) -> usize {
        self.trials.len()
    }

    pub fn into_trials(self) -> Vec<TrialTriple> {
        self.trials
    }

    pub fn column_a(&self) -> Vec<Outcome> {
        self.trials.iter().map(|t| t.a).collect()
    }

    pub fn column_b(&self) -> Vec<Outcome> {
        self.trials.iter().map(|t| t.b).collect()
    }

    pub fn column_bp(&self) -> Vec<Outcome> {
        self.trials.iter().map(|t| t.bp).collect()
    }
}

/// Which angle scaling the probabilities use.
///
/// `Spin` halves the setting difference inside the trigonometric functions;
/// `Optical` uses it directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AngleConvention {
    Spin,
    Optical,
}

impl fmt::Display for AngleConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AngleConvention::Spin => "spin",
            AngleConvention::Optical => "optical",
        })
    }
}

/// Detector settings in radians. Angles are not reduced modulo 2π.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleConfig {
    pub a: f64,
    pub b: f64,
    pub bp: f64,
    pub convention: AngleConvention,
}

impl AngleConfig {
    pub fn new(a: f64, b: f64, bp: f64, convention: AngleConvention) -> Result<Self> {
        for (name, value) in [("a", a), ("b", b), ("bp", bp)] {
            if !value.is_finite() {
                return Err(Error::NonFiniteAngle { name, value });
            }
        }
        Ok(Self { a, b, bp, convention })
    }

    pub fn spin(a: f64, b: f64, bp: f64) -> Self {
        Self { a, b, bp, convention: AngleConvention::Spin }
    }

    pub fn from_degrees(a: f64, b: f64, bp: f64, convention: AngleConvention) -> Result<Self> {
        let r = PI / 180.0;
        Self::new(a * r, b * r, bp * r, convention)
    }
}

/// The four outcome probabilities at a pair of settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointProbabilities {
    pub pp: f64,
    pub pm: f64,
    pub mp: f64,
    pub mm: f64,
}

impl JointProbabilities {
    /// Validates range and normalization.
    pub fn new(pp: f64, pm: f64, mp: f64, mm: f64) -> Result<Self> {
        for (name, value) in [("pp", pp), ("pm", pm), ("mp", mp), ("mm", mm)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { name, value });
            }
        }
        let sum = pp + pm + mp + mm;
        if (sum - 1.0).abs() > FLOAT_TOLERANCE {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { pp, pm, mp, mm })
    }

    pub fn total(&self) -> f64 {
        self.pp + self.pm + self.mp + self.mm
    }

    /// `P++ = P--` and `P+- = P-+`, as required for a perfectly entangled pair.
    pub fn is_entangled_symmetric(&self, tol: f64) -> bool {
        (self.pp - self.mm).abs() <= tol && (self.pm - self.mp).abs() <= tol
    }

    /// Expectation of the product of the two outcomes.
    pub fn correlation(&self) -> f64 {
        self.pp + self.mm - self.pm - self.mp
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InequalityKind {
    /// Three-data-set Bell inequality.
    #[serde(rename = "DATA_BELL_3")]
    DataBell3,
    /// Four-data-set identity `|S| <= 2`.
    #[serde(rename = "DATA_BELL_4")]
    DataBell4,
    /// Bell inequality on correlation functions.
    CorrBell,
    Wigner,
}

impl fmt::Display for InequalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InequalityKind::DataBell3 => "DATA_BELL_3",
            InequalityKind::DataBell4 => "DATA_BELL_4",
            InequalityKind::CorrBell => "CORR_BELL",
            InequalityKind::Wigner => "WIGNER",
        })
    }
}

/// How the third pair of an analytic inequality is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TheoryMode {
    /// Third pair from the conditional construction on the shared `a` outcome.
    Paper,
    /// Third pair given the same functional form as the first two.
    Naive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    Paper,
    Naive,
    ExactData,
}

impl From<TheoryMode> for Mode {
    fn from(m: TheoryMode) -> Self {
        match m {
            TheoryMode::Paper => Mode::Paper,
            TheoryMode::Naive => Mode::Naive,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Paper => "PAPER",
            Mode::Naive => "NAIVE",
            Mode::ExactData => "EXACT_DATA",
        })
    }
}

/// Exact form of a data-level margin: every quantity is scaled by the trial count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaledMargin {
    pub lhs: i64,
    pub rhs: i64,
    pub n: i64,
}

impl ScaledMargin {
    pub fn margin(&self) -> i64 {
        self.rhs - self.lhs
    }
}

/// Result of evaluating one inequality. `margin = rhs - lhs`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub mode: Mode,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub tolerance: f64,
    #[serde(skip)]
    pub exact: Option<ScaledMargin>,
}

impl InequalityReport {
    pub fn from_float(kind: InequalityKind, mode: Mode, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let margin = rhs - lhs;
        Self {
            kind,
            mode,
            lhs,
            rhs,
            margin,
            satisfied: margin >= -tolerance,
            tolerance,
            exact: None,
        }
    }

    /// Builds an exact report; `satisfied` is decided on the integers.
    pub fn from_exact(kind: InequalityKind, scaled: ScaledMargin) -> Self {
        let n = scaled.n as f64;
        Self {
            kind,
            mode: Mode::ExactData,
            lhs: scaled.lhs as f64 / n,
            rhs: scaled.rhs as f64 / n,
            margin: scaled.margin() as f64 / n,
            satisfied: scaled.margin() >= 0,
            tolerance: 0.0,
            exact: Some(scaled),
        }
    }
}

/// One point of a Monte Carlo convergence study.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub n_samples: u64,
    pub estimate: f64,
    pub analytic: f64,
    pub abs_error: f64,
    pub std_error: f64,
    pub seed: u64,
}

impl ConvergenceRecord {
    pub fn new(n_samples: u64, estimate: f64, analytic: f64, seed: u64) -> Self {
        Self {
            n_samples,
            estimate,
            analytic,
            abs_error: (estimate - analytic).abs(),
            std_error: std_error(estimate, n_samples),
            seed,
        }
    }
}

/// Standard error of a `±1` product mean with sample mean `estimate`.
pub fn std_error(estimate: f64, n: u64) -> f64 {
    ((1.0 - estimate * estimate).max(0.0) / n as f64).sqrt()
}
