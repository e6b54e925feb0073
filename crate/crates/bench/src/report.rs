//! Benchmark reports and their JSON / CSV serialization.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use ccd_core::Verdict;

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub feasible: u64,
    pub infeasible: u64,
    pub indeterminable: u64,
}

impl VerdictCounts {
    pub fn record(&mut self, v: &Verdict) {
        match v {
            Verdict::Feasible => self.feasible += 1,
            Verdict::Infeasible { .. } => self.infeasible += 1,
            Verdict::Indeterminable => self.indeterminable += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.feasible + self.infeasible + self.indeterminable
    }

    pub fn fractions(&self) -> VerdictFractions {
        let n = self.total();
        if n == 0 {
            return VerdictFractions::default();
        }
        let n = n as f64;
        VerdictFractions {
            feasible: self.feasible as f64 / n,
            infeasible: self.infeasible as f64 / n,
            indeterminable: self.indeterminable as f64 / n,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct VerdictFractions {
    pub feasible: f64,
    pub infeasible: f64,
    pub indeterminable: f64,
}

/// Summary of a set of durations, in microseconds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct TimingStats {
    pub samples: usize,
    pub mean_us: f64,
    pub p50_us: f64,
    pub p99_us: f64,
}

impl TimingStats {
    /// Nearest-rank percentiles; sorts `samples` in place.
    pub fn from_samples(samples: &mut [f64]) -> Self {
        if samples.is_empty() {
            return Self::default();
        }
        samples.sort_by(f64::total_cmp);
        let n = samples.len();
        let rank = |p: f64| samples[((p * n as f64).ceil() as usize).clamp(1, n) - 1];
        Self {
            samples: n,
            mean_us: samples.iter().sum::<f64>() / n as f64,
            p50_us: rank(0.50),
            p99_us: rank(0.99),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Timing {
    pub generation: TimingStats,
    pub input_feasibility: TimingStats,
    pub collision: TimingStats,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BenchReport {
    pub benchmark: String,
    pub trials: u64,
    pub seed: u64,
    pub counts: VerdictCounts,
    pub fractions: VerdictFractions,
    pub timing: Timing,
    /// Benchmark-specific extras.
    pub metrics: BTreeMap<String, f64>,
}

impl BenchReport {
    pub fn new(
        benchmark: &str,
        trials: u64,
        seed: u64,
        counts: VerdictCounts,
        timing: Timing,
    ) -> Self {
        Self {
            benchmark: benchmark.to_owned(),
            trials,
            seed,
            counts,
            fractions: counts.fractions(),
            timing,
            metrics: BTreeMap::new(),
        }
    }

    pub fn metric(&mut self, name: &str, value: f64) {
        self.metrics.insert(name.to_owned(), value);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    /// `metric,value` rows, one per scalar.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<(String, f64)> = vec![
            ("trials".into(), self.trials as f64),
            ("seed".into(), self.seed as f64),
            ("count.feasible".into(), self.counts.feasible as f64),
            ("count.infeasible".into(), self.counts.infeasible as f64),
            (
                "count.indeterminable".into(),
                self.counts.indeterminable as f64,
            ),
            ("fraction.feasible".into(), self.fractions.feasible),
            ("fraction.infeasible".into(), self.fractions.infeasible),
            (
                "fraction.indeterminable".into(),
                self.fractions.indeterminable,
            ),
        ];
        for (stage, t) in [
            ("generation", &self.timing.generation),
            ("input_feasibility", &self.timing.input_feasibility),
            ("collision", &self.timing.collision),
        ] {
            rows.push((format!("timing.{stage}.mean_us"), t.mean_us));
            rows.push((format!("timing.{stage}.p50_us"), t.p50_us));
            rows.push((format!("timing.{stage}.p99_us"), t.p99_us));
        }
        rows.extend(
            self.metrics
                .iter()
                .map(|(k, v)| (format!("metric.{k}"), *v)),
        );

        let mut out = format!("benchmark,{}\nmetric,value\n", self.benchmark);
        for (k, v) in rows {
            writeln!(out, "{k},{v}").unwrap();
        }
        out
    }

    /// Writes CSV when the extension is `.csv`, JSON otherwise.
    pub fn write(&self, path: &Path) -> Result<()> {
        let text = if path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
        {
            self.to_csv()
        } else {
            self.to_json()
        };
        fs::write(path, text).map_err(|source| BenchError::Io {
            path: path.to_owned(),
            source,
        })
    }
}
