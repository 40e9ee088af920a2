//! Closed-form entangled-pair probabilities, correlations and inequality margins.
//!
//! With `k` the convention factor (½ for spin, 1 for optical) and `Δ = y − x`:
//!
//! * `P++ = P−− = ½ sin²(kΔ)`, `P+− = P−+ = ½ cos²(kΔ)`, so `C = −cos(2kΔ)`.
//! * Conditioning both B-side detectors on the shared A-side outcome gives the
//!   third-pair correlation `C(b, b') = cos(2k(b − a)) · cos(2k(b' − a))`.

use crate::types::{
    AngleConfig, AngleConvention, InequalityKind, InequalityReport, JointProbabilities, Outcome,
    TheoryMode,
};
use crate::FLOAT_TOLERANCE;

pub fn half_angle_factor(convention: AngleConvention) -> f64 {
    match convention {
        AngleConvention::Spin => 0.5,
        AngleConvention::Optical => 1.0,
    }
}

/// `(sin², cos²)` of `k (y − x)`.
fn sin2_cos2(x: f64, y: f64, convention: AngleConvention) -> (f64, f64) {
    let (s, c) = (half_angle_factor(convention) * (y - x)).sin_cos();
    (s * s, c * c)
}

pub fn joint_probability(x: f64, y: f64, convention: AngleConvention) -> JointProbabilities {
    let (s2, c2) = sin2_cos2(x, y, convention);
    let same = 0.5 * s2;
    let diff = 0.5 * c2;
    JointProbabilities { pp: same, pm: diff, mp: diff, mm: same }
}

/// `4 P++ − 1 = −cos(2k(y − x))`.
pub fn bell_correlation(x: f64, y: f64, convention: AngleConvention) -> f64 {
    -(2.0 * half_angle_factor(convention) * (y - x)).cos()
}

/// Probability that the B-side detector at `setting` reads `+1`, given the
/// A-side outcome at `a_setting`. The joint probabilities divided by
/// `P±(a) = ½`.
pub fn conditional_plus_probability(
    setting: f64,
    a_setting: f64,
    a_outcome: Outcome,
    convention: AngleConvention,
) -> f64 {
    let (s2, c2) = sin2_cos2(a_setting, setting, convention);
    if a_outcome.is_plus() {
        s2
    } else {
        c2
    }
}

/// `(P++(b,b'), P+−(b,b'))` built from the conditionals on the `a` outcome.
/// Their sum is exactly ½.
pub fn third_pair_probabilities(cfg: &AngleConfig) -> (f64, f64) {
    let (sb, cb) = sin2_cos2(cfg.a, cfg.b, cfg.convention);
    let (sbp, cbp) = sin2_cos2(cfg.a, cfg.bp, cfg.convention);
    let ppp = 0.5 * (sb * sbp + cb * cbp);
    let ppm = 0.5 * (sb * cbp + cb * sbp);
    (ppp, ppm)
}

pub fn third_correlation(cfg: &AngleConfig) -> f64 {
    let k2 = 2.0 * half_angle_factor(cfg.convention);
    (k2 * (cfg.b - cfg.a)).cos() * (k2 * (cfg.bp - cfg.a)).cos()
}

/// `|C(a,b) − C(a,b')| ≤ 1 − C3(b,b')`.
///
/// In paper mode `C3` is [`third_correlation`]. In naive mode `b'` is moved
/// to the opposite side and the third pair is given the same `−cos` form as
/// the first two, i.e. `rhs = 1 + C(b, b')`.
pub fn bell_margin(cfg: &AngleConfig, mode: TheoryMode) -> InequalityReport {
    let conv = cfg.convention;
    let lhs = (bell_correlation(cfg.a, cfg.b, conv) - bell_correlation(cfg.a, cfg.bp, conv)).abs();
    let rhs = match mode {
        TheoryMode::Paper => 1.0 - third_correlation(cfg),
        TheoryMode::Naive => 1.0 + bell_correlation(cfg.b, cfg.bp, conv),
    };
    InequalityReport::from_float(InequalityKind::CorrBell, mode.into(), lhs, rhs, FLOAT_TOLERANCE)
}

/// `P++(a,b) − P++(a,b') ≤ P++(b,a')` with `a'` the A-side twin of `b'`.
pub fn wigner_margin(cfg: &AngleConfig, mode: TheoryMode) -> InequalityReport {
    let conv = cfg.convention;
    let lhs = joint_probability(cfg.a, cfg.b, conv).pp - joint_probability(cfg.a, cfg.bp, conv).pp;
    let rhs = match mode {
        // a' reading +1 is b' reading −1, so P++(b, a') is the conditional P+−(b, b').
        TheoryMode::Paper => third_pair_probabilities(cfg).1,
        TheoryMode::Naive => joint_probability(cfg.b, cfg.bp, conv).pp,
    };
    InequalityReport::from_float(InequalityKind::Wigner, mode.into(), lhs, rhs, FLOAT_TOLERANCE)
}

/// `2 sin²(k(a − b')) cos²(k(a − b))`, which equals twice the paper-mode
/// Wigner margin and is manifestly nonnegative.
pub fn wigner_slack(cfg: &AngleConfig) -> f64 {
    let (s_bp, _) = sin2_cos2(cfg.bp, cfg.a, cfg.convention);
    let (_, c_b) = sin2_cos2(cfg.b, cfg.a, cfg.convention);
    2.0 * s_bp * c_b
}
