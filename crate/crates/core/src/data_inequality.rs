//! Data-level Bell inequalities in exact integer arithmetic.
//!
//! For any aligned `±1` sequences `a`, `b`, `b'` of length `N`,
//!
//! ```text
//! |Σ a_i b_i − Σ a_i b'_i| ≤ N − Σ b_i b'_i
//! ```
//!
//! holds identically. All margins here are computed on the integer sums,
//! scaled by `N`, so equality cases (e.g. `b = b'`) are decided exactly.

use crate::exec::Executor;
use crate::types::{
    DataSetTriple, InequalityKind, InequalityReport, Outcome, ScaledMargin, TrialQuad, TrialTriple,
};
use crate::{Error, Result};

/// `Σ x_i y_i / N` kept as an exact fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactCorrelation {
    pub numerator: i64,
    pub denominator: u64,
}

impl ExactCorrelation {
    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

pub fn cross_correlation(xs: &[Outcome], ys: &[Outcome]) -> Result<ExactCorrelation> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch { left: xs.len(), right: ys.len() });
    }
    if xs.is_empty() {
        return Err(Error::Empty);
    }
    let numerator = xs.iter().zip(ys).map(|(&x, &y)| x * y).sum();
    Ok(ExactCorrelation { numerator, denominator: xs.len() as u64 })
}

/// Checks `a·b − a·b' = a·(b − b')` for one trial. Always true; kept as an
/// executable witness of the per-trial step the inequality is built from.
pub fn per_trial_identity(t: TrialTriple) -> bool {
    let (a, b, bp) = (t.a.value(), t.b.value(), t.bp.value());
    a * b - a * bp == a * (b - bp)
}

/// Raw product sums over a triple data set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TripleSums {
    pub n: i64,
    pub ab: i64,
    pub abp: i64,
    pub bbp: i64,
}

impl TripleSums {
    pub fn of(trials: &[TrialTriple]) -> Self {
        trials.iter().fold(Self::default(), |mut s, t| {
            s.n += 1;
            s.ab += t.a * t.b;
            s.abp += t.a * t.bp;
            s.bbp += t.b * t.bp;
            s
        })
    }

    fn merge(self, o: Self) -> Self {
        Self { n: self.n + o.n, ab: self.ab + o.ab, abp: self.abp + o.abp, bbp: self.bbp + o.bbp }
    }

    /// Chunked sums; integer addition makes the result independent of the executor.
    pub fn of_with(trials: &[TrialTriple], exec: &Executor) -> Self {
        const CHUNK: usize = 1 << 16;
        let chunks = trials.len().div_ceil(CHUNK);
        exec.map_fold(
            chunks,
            |i| Self::of(&trials[i * CHUNK..((i + 1) * CHUNK).min(trials.len())]),
            Self::default(),
            Self::merge,
        )
    }

    pub fn correlation_ab(&self) -> f64 {
        self.ab as f64 / self.n as f64
    }

    pub fn correlation_abp(&self) -> f64 {
        self.abp as f64 / self.n as f64
    }

    pub fn correlation_bbp(&self) -> f64 {
        self.bbp as f64 / self.n as f64
    }

    /// `|Σab − Σab'|` against `N − Σbb'`.
    pub fn bell_3(&self) -> ScaledMargin {
        ScaledMargin { lhs: (self.ab - self.abp).abs(), rhs: self.n - self.bbp, n: self.n }
    }

    /// Same inequality after substituting `a'_i = −b'_i`: the right side
    /// becomes `N + Σ b_i a'_i`.
    pub fn bell_3_flipped(&self) -> ScaledMargin {
        let b_ap = -self.bbp;
        ScaledMargin { lhs: (self.ab - self.abp).abs(), rhs: self.n + b_ap, n: self.n }
    }
}

pub fn data_bell_margin_3(d: &DataSetTriple) -> InequalityReport {
    InequalityReport::from_exact(InequalityKind::DataBell3, TripleSums::of(d.trials()).bell_3())
}

/// [`data_bell_margin_3`] with the sums split over an executor.
pub fn data_bell_margin_3_with(d: &DataSetTriple, exec: &Executor) -> InequalityReport {
    InequalityReport::from_exact(
        InequalityKind::DataBell3,
        TripleSums::of_with(d.trials(), exec).bell_3(),
    )
}

/// Evaluates the inequality with the opposite-side variable `a' = −b'` made
/// explicit. The margin always equals that of [`data_bell_margin_3`].
pub fn data_bell_margin_3_flipped(d: &DataSetTriple) -> InequalityReport {
    let trials = d.trials();
    let ap: Vec<Outcome> = trials.iter().map(|t| -t.bp).collect();
    let n = trials.len() as i64;
    let ab: i64 = trials.iter().map(|t| t.a * t.b).sum();
    let abp: i64 = trials.iter().map(|t| t.a * t.bp).sum();
    let b_ap: i64 = trials.iter().zip(&ap).map(|(t, &x)| t.b * x).sum();
    InequalityReport::from_exact(
        InequalityKind::DataBell3,
        ScaledMargin { lhs: (ab - abp).abs(), rhs: n + b_ap, n },
    )
}

/// Per-trial CHSH bracket `a b + a b' + a' b − a' b'`, always `±2`.
pub fn chsh_bracket(q: TrialQuad) -> i64 {
    q.a * q.b + q.a * q.bp + q.ap * q.b - q.ap * q.bp
}

/// `|Σ S_i| / N ≤ 2` over four cross-correlated data sets.
pub fn data_bell_margin_4(quads: &[TrialQuad]) -> Result<InequalityReport> {
    if quads.is_empty() {
        return Err(Error::Empty);
    }
    let n = quads.len() as i64;
    let s: i64 = quads.iter().map(|&q| chsh_bracket(q)).sum();
    Ok(InequalityReport::from_exact(
        InequalityKind::DataBell4,
        ScaledMargin { lhs: s.abs(), rhs: 2 * n, n },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: Outcome = Outcome::PLUS;
    const M: Outcome = Outcome::MINUS;

    fn ds(trials: &[(Outcome, Outcome, Outcome)]) -> DataSetTriple {
        DataSetTriple::new(trials.iter().map(|&(a, b, bp)| TrialTriple::new(a, b, bp)).collect())
            .unwrap()
    }

    fn outcomes(v: &[i64]) -> Vec<Outcome> {
        v.iter().map(|&x| Outcome::new(x).unwrap()).collect()
    }

    // Independent oracle: evaluates the intermediate bound
    // |Σ a_i b_i (1 − b_i b'_i)| ≤ Σ |1 − b_i b'_i| term by term.
    fn oracle_scaled(trials: &[TrialTriple]) -> (i64, i64) {
        let mut lhs = 0i64;
        let mut rhs = 0i64;
        for t in trials {
            let (a, b, bp) = (t.a.value(), t.b.value(), t.bp.value());
            lhs += a * b * (1 - b * bp);
            rhs += (1 - b * bp).abs();
        }
        (lhs.abs(), rhs)
    }

    #[test]
    fn cross_correlation_examples() {
        let c = cross_correlation(&outcomes(&[1, 1, 1, 1]), &outcomes(&[1, 1, 1, 1])).unwrap();
        assert_eq!((c.numerator, c.denominator), (4, 4));
        assert_eq!(c.value(), 1.0);

        let c = cross_correlation(&outcomes(&[1, -1, 1, -1]), &outcomes(&[1, -1, -1, 1])).unwrap();
        assert_eq!((c.numerator, c.denominator), (0, 4));

        let c = cross_correlation(&outcomes(&[1, 1, -1]), &outcomes(&[1, -1, -1])).unwrap();
        assert_eq!((c.numerator, c.denominator), (1, 3));
    }

    #[test]
    fn cross_correlation_errors() {
        assert!(matches!(
            cross_correlation(&outcomes(&[1, 1]), &outcomes(&[1])),
            Err(Error::LengthMismatch { left: 2, right: 1 })
        ));
        assert!(matches!(cross_correlation(&[], &[]), Err(Error::Empty)));
    }

    #[test]
    fn per_trial_identity_all_signs() {
        assert!(per_trial_identity(TrialTriple::new(P, P, P)));
        let t = TrialTriple::new(P, P, M);
        assert_eq!(t.a * t.b - t.a * t.bp, 2);
        assert!(per_trial_identity(t));
        assert!(TrialTriple::all().all(per_trial_identity));
    }

    #[test]
    fn margin_3_examples() {
        let r = data_bell_margin_3(&ds(&[(P, P, P); 4]));
        assert_eq!((r.lhs, r.rhs, r.margin), (0.0, 0.0, 0.0));
        assert!(r.satisfied);
        assert_eq!(r.tolerance, 0.0);
        assert_eq!(r.mode, crate::Mode::ExactData);

        let r = data_bell_margin_3(&ds(&[(P, P, M), (P, M, P)]));
        assert_eq!((r.lhs, r.rhs, r.margin), (0.0, 2.0, 2.0));
        assert_eq!(r.exact, Some(ScaledMargin { lhs: 0, rhs: 4, n: 2 }));
    }

    #[test]
    fn margin_3_flipped_examples() {
        let r = data_bell_margin_3_flipped(&ds(&[(P, P, P); 4]));
        assert_eq!((r.rhs, r.margin), (0.0, 0.0));
        let r = data_bell_margin_3_flipped(&ds(&[(P, P, M), (P, M, P)]));
        assert_eq!((r.rhs, r.margin), (2.0, 2.0));
    }

    #[test]
    fn margin_3_exhaustive_small_n() {
        // all 8^N data sets for N <= 4, checked against the term-by-term oracle
        let mut count = 0;
        for n in 1..=4u32 {
            for code in 0..8usize.pow(n) {
                let trials: Vec<TrialTriple> = (0..n)
                    .map(|i| TrialTriple::all().nth((code >> (3 * i)) & 7).unwrap())
                    .collect();
                let (olhs, orhs) = oracle_scaled(&trials);
                assert!(olhs <= orhs);
                let d = DataSetTriple::new(trials).unwrap();
                let r = data_bell_margin_3(&d);
                let exact = r.exact.unwrap();
                assert_eq!((exact.lhs, exact.rhs), (olhs, orhs));
                assert!(r.satisfied && r.margin >= 0.0);
                assert_eq!(r.margin, data_bell_margin_3_flipped(&d).margin);
                count += 1;
            }
        }
        assert_eq!(count, 8 + 64 + 512 + 4096);
    }

    #[test]
    fn margin_4_examples() {
        let r = data_bell_margin_4(&[TrialQuad::new(P, P, P, P)]).unwrap();
        assert_eq!((r.lhs, r.margin), (2.0, 0.0));
        assert_eq!(chsh_bracket(TrialQuad::new(P, P, P, M)), 2);
        let r = data_bell_margin_4(&[TrialQuad::new(P, P, P, M)]).unwrap();
        assert_eq!(r.margin, 0.0);
        assert!(matches!(data_bell_margin_4(&[]), Err(Error::Empty)));
    }

    #[test]
    fn chsh_bracket_is_plus_or_minus_two() {
        for q in TrialQuad::all() {
            assert_eq!(chsh_bracket(q).abs(), 2, "{q:?}");
        }
    }

    #[test]
    fn margin_4_exhaustive_small_n() {
        let quads: Vec<TrialQuad> = TrialQuad::all().collect();
        for n in 1..=3u32 {
            for code in 0..16usize.pow(n) {
                let set: Vec<TrialQuad> = (0..n).map(|i| quads[(code >> (4 * i)) & 15]).collect();
                let r = data_bell_margin_4(&set).unwrap();
                assert!(r.satisfied && r.exact.unwrap().margin() >= 0);
            }
        }
    }

    #[test]
    fn chunked_sums_match() {
        let trials: Vec<TrialTriple> =
            (0..200_003usize).map(|i| TrialTriple::all().nth((i * 7 + i / 3) % 8).unwrap()).collect();
        let seq = TripleSums::of(&trials);
        assert_eq!(seq, TripleSums::of_with(&trials, &Executor::with_threads(4)));
        let d = DataSetTriple::new(trials).unwrap();
        assert_eq!(data_bell_margin_3(&d), data_bell_margin_3_with(&d, &Executor::with_threads(3)));
    }

    fn outcome() -> impl Strategy<Value = Outcome> {
        any::<bool>().prop_map(Outcome::from_bool)
    }

    fn triple() -> impl Strategy<Value = TrialTriple> {
        (outcome(), outcome(), outcome()).prop_map(|(a, b, bp)| TrialTriple::new(a, b, bp))
    }

    proptest! {
        #[test]
        fn identity_holds_for_any_data(trials in prop::collection::vec(triple(), 1..400)) {
            let d = DataSetTriple::new(trials).unwrap();
            let r = data_bell_margin_3(&d);
            prop_assert!(r.satisfied);
            prop_assert!(r.exact.unwrap().margin() >= 0);
            prop_assert_eq!(r.exact, data_bell_margin_3_flipped(&d).exact);
        }

        #[test]
        fn cross_correlation_symmetric(pairs in prop::collection::vec((outcome(), outcome()), 1..200)) {
            let (xs, ys): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
            let xy = cross_correlation(&xs, &ys).unwrap();
            prop_assert_eq!(xy, cross_correlation(&ys, &xs).unwrap());
            prop_assert!(xy.numerator.unsigned_abs() <= xy.denominator);
            prop_assert_eq!(cross_correlation(&xs, &xs).unwrap().value(), 1.0);
            let neg: Vec<_> = xs.iter().map(|&x| -x).collect();
            prop_assert_eq!(cross_correlation(&xs, &neg).unwrap().value(), -1.0);
        }

        #[test]
        fn four_set_identity_holds(quads in prop::collection::vec(
            (outcome(), outcome(), outcome(), outcome()).prop_map(|(a, ap, b, bp)| TrialQuad::new(a, ap, b, bp)),
            1..300,
        )) {
            prop_assert!(data_bell_margin_4(&quads).unwrap().satisfied);
        }
    }
}
