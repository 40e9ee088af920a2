//! Uniform angle-grid evaluation of the analytic inequality margins.
//!
//! The grid is `resolution³` points `2π i / resolution` over `[0, 2π)³`,
//! evaluated one `a`-slice at a time. Slices run in parallel; minima, argmin
//! and counts are folded in slice order, ties resolved to the lowest grid
//! index, so results do not depend on the executor.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::analytic::{bell_margin, wigner_margin};
use crate::exec::Executor;
use crate::types::{AngleConfig, AngleConvention, InequalityKind, InequalityReport, Mode, TheoryMode};
use crate::{Error, Result};

/// Margins below this count as violations in a census.
pub const VIOLATION_THRESHOLD: f64 = -1e-9;

/// Which analytic inequality a sweep evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    Bell,
    Wigner,
}

impl SweepKind {
    pub fn evaluate(self, cfg: &AngleConfig, mode: TheoryMode) -> InequalityReport {
        match self {
            SweepKind::Bell => bell_margin(cfg, mode),
            SweepKind::Wigner => wigner_margin(cfg, mode),
        }
    }

    pub fn inequality(self) -> InequalityKind {
        match self {
            SweepKind::Bell => InequalityKind::CorrBell,
            SweepKind::Wigner => InequalityKind::Wigner,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub a: f64,
    pub b: f64,
    pub bp: f64,
    pub kind: InequalityKind,
    pub mode: Mode,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub kind: InequalityKind,
    pub mode: Mode,
    pub convention: AngleConvention,
    pub resolution: usize,
    pub points: u64,
    pub min_margin: f64,
    pub argmin: AngleConfig,
    /// Points with margin below [`VIOLATION_THRESHOLD`].
    pub violations: u64,
}

#[derive(Clone, Copy, Debug)]
struct SliceStats {
    min_margin: f64,
    argmin: (usize, usize, usize),
    violations: u64,
}

pub fn grid_angle(i: usize, resolution: usize) -> f64 {
    TAU * i as f64 / resolution as f64
}

struct Grid {
    resolution: usize,
    convention: AngleConvention,
    kind: SweepKind,
    mode: TheoryMode,
}

impl Grid {
    fn config(&self, i: usize, j: usize, l: usize) -> AngleConfig {
        let r = self.resolution;
        AngleConfig {
            a: grid_angle(i, r),
            b: grid_angle(j, r),
            bp: grid_angle(l, r),
            convention: self.convention,
        }
    }

    fn slice(&self, i: usize, mut emit: Option<&mut Vec<SweepRecord>>) -> SliceStats {
        let mut stats = SliceStats { min_margin: f64::INFINITY, argmin: (i, 0, 0), violations: 0 };
        for j in 0..self.resolution {
            for l in 0..self.resolution {
                let cfg = self.config(i, j, l);
                let r = self.kind.evaluate(&cfg, self.mode);
                if r.margin < stats.min_margin {
                    stats.min_margin = r.margin;
                    stats.argmin = (i, j, l);
                }
                if r.margin < VIOLATION_THRESHOLD {
                    stats.violations += 1;
                }
                if let Some(out) = emit.as_deref_mut() {
                    out.push(SweepRecord {
                        a: cfg.a,
                        b: cfg.b,
                        bp: cfg.bp,
                        kind: r.kind,
                        mode: r.mode,
                        lhs: r.lhs,
                        rhs: r.rhs,
                        margin: r.margin,
                    });
                }
            }
        }
        stats
    }

    fn summarize(&self, slices: impl IntoIterator<Item = SliceStats>) -> SweepSummary {
        let mut min_margin = f64::INFINITY;
        let mut argmin = (0, 0, 0);
        let mut violations = 0;
        for s in slices {
            if s.min_margin < min_margin {
                min_margin = s.min_margin;
                argmin = s.argmin;
            }
            violations += s.violations;
        }
        SweepSummary {
            kind: self.kind.inequality(),
            mode: self.mode.into(),
            convention: self.convention,
            resolution: self.resolution,
            points: (self.resolution as u64).pow(3),
            min_margin,
            argmin: self.config(argmin.0, argmin.1, argmin.2),
            violations,
        }
    }
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution < 2 {
        return Err(Error::Resolution(resolution));
    }
    Ok(())
}

/// Minimum margin, its location and the violation count over the grid.
pub fn grid_sweep(
    resolution: usize,
    convention: AngleConvention,
    kind: SweepKind,
    mode: TheoryMode,
    exec: &Executor,
) -> Result<SweepSummary> {
    check_resolution(resolution)?;
    let grid = Grid { resolution, convention, kind, mode };
    let slices = exec.map_indexed(resolution, |i| grid.slice(i, None));
    Ok(grid.summarize(slices))
}

/// Like [`grid_sweep`], additionally passing every record to `sink` in grid
/// order (`a` slowest, `b'` fastest). At most one batch of slices is
/// buffered at a time.
pub fn grid_sweep_streaming<F>(
    resolution: usize,
    convention: AngleConvention,
    kind: SweepKind,
    mode: TheoryMode,
    exec: &Executor,
    mut sink: F,
) -> Result<SweepSummary>
where
    F: FnMut(&SweepRecord) -> std::io::Result<()>,
{
    check_resolution(resolution)?;
    let grid = Grid { resolution, convention, kind, mode };
    let batch = exec.threads().max(1);
    let mut all = Vec::with_capacity(resolution);
    for start in (0..resolution).step_by(batch) {
        let end = (start + batch).min(resolution);
        let parts = exec.map_indexed(end - start, |off| {
            let mut records = Vec::with_capacity(resolution * resolution);
            let stats = grid.slice(start + off, Some(&mut records));
            (stats, records)
        });
        for (stats, records) in parts {
            for r in &records {
                sink(r).map_err(|source| Error::Io { path: "<sweep output>".into(), source })?;
            }
            all.push(stats);
        }
    }
    Ok(grid.summarize(all))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusEntry {
    pub kind: InequalityKind,
    pub mode: Mode,
    pub violations: u64,
    pub min_margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationCensus {
    pub resolution: usize,
    pub convention: AngleConvention,
    pub entries: Vec<CensusEntry>,
}

impl ViolationCensus {
    pub fn count(&self, kind: SweepKind, mode: TheoryMode) -> u64 {
        self.entries
            .iter()
            .find(|e| e.kind == kind.inequality() && e.mode == Mode::from(mode))
            .map_or(0, |e| e.violations)
    }
}

/// Violation counts for every kind × mode combination.
pub fn violation_census(resolution: usize, convention: AngleConvention, exec: &Executor) -> Result<ViolationCensus> {
    let mut entries = Vec::with_capacity(4);
    for kind in [SweepKind::Bell, SweepKind::Wigner] {
        for mode in [TheoryMode::Paper, TheoryMode::Naive] {
            let s = grid_sweep(resolution, convention, kind, mode, exec)?;
            entries.push(CensusEntry {
                kind: s.kind,
                mode: s.mode,
                violations: s.violations,
                min_margin: s.min_margin,
            });
        }
    }
    Ok(ViolationCensus { resolution, convention, entries })
}
