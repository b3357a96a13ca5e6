//! Sweep rows, summaries, and CSV/JSON emission.
//!
//! CSV columns are fixed:
//! `trial,dim,alpha,seed,lhs,rhs,margin,inequality-id,T,s,epsilon-kernel`
//! with floats at 17 significant digits, `inf`/`nan` spelled literally, and
//! `nan` standing in for fields a row has no value for. Identity-type rows
//! (`ns-identity`, `exp-moment`, `tanh-squared`, `saturation`) fail when
//! `|margin|` exceeds the tolerance; bound-type rows fail when `margin`
//! drops below minus the tolerance. The runtime appears only in the summary,
//! so report bytes are reproducible for a fixed config and seed.

use std::collections::BTreeMap;
use std::io::Write;

use anyhow::{Context, Result};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::config::SweepConfig;
use crate::fmt::exact17;

pub const CSV_HEADER: &str = "trial,dim,alpha,seed,lhs,rhs,margin,inequality-id,T,s,epsilon-kernel";

/// One checked inequality instance.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub trial: usize,
    pub dim: usize,
    pub alpha: f64,
    pub seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub inequality: &'static str,
    pub t: f64,
    pub s: f64,
    pub epsilon_kernel: f64,
}

/// Identity-type rows assert two-sided agreement instead of a one-sided bound.
pub fn is_identity(inequality: &str) -> bool {
    matches!(inequality, "ns-identity" | "exp-moment" | "tanh-squared" | "saturation")
}

pub fn row_fails(row: &SweepRow, tolerance: f64) -> bool {
    if is_identity(row.inequality) {
        !(row.margin.abs() <= tolerance)
    } else {
        row.margin < -tolerance
    }
}

/// Margin for identity rows: matched infinities agree exactly.
pub fn identity_margin(lhs: f64, rhs: f64) -> f64 {
    if lhs.is_infinite() && rhs.is_infinite() && lhs.signum() == rhs.signum() {
        0.0
    } else {
        lhs - rhs
    }
}

impl SweepRow {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.trial,
            self.dim,
            exact17(self.alpha),
            self.seed,
            exact17(self.lhs),
            exact17(self.rhs),
            exact17(self.margin),
            self.inequality,
            exact17(self.t),
            exact17(self.s),
            exact17(self.epsilon_kernel),
        )
    }
}

// JSON keeps the CSV conventions: non-finite floats appear as the strings
// "inf", "-inf", "nan" rather than null.
struct JsonNum(f64);

impl Serialize for JsonNum {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            serializer.serialize_f64(self.0)
        } else {
            serializer.serialize_str(&exact17(self.0))
        }
    }
}

impl Serialize for SweepRow {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("SweepRow", 11)?;
        state.serialize_field("trial", &self.trial)?;
        state.serialize_field("dim", &self.dim)?;
        state.serialize_field("alpha", &JsonNum(self.alpha))?;
        state.serialize_field("seed", &self.seed)?;
        state.serialize_field("lhs", &JsonNum(self.lhs))?;
        state.serialize_field("rhs", &JsonNum(self.rhs))?;
        state.serialize_field("margin", &JsonNum(self.margin))?;
        state.serialize_field("inequality-id", &self.inequality)?;
        state.serialize_field("T", &JsonNum(self.t))?;
        state.serialize_field("s", &JsonNum(self.s))?;
        state.serialize_field("epsilon-kernel", &JsonNum(self.epsilon_kernel))?;
        state.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalitySummary {
    pub rows: usize,
    /// Smallest margin seen; `+inf` if every margin was infinite.
    pub min_margin: f64,
    /// Largest `|margin|` over rows with a finite margin.
    pub max_abs_margin: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub which: String,
    pub config: SweepConfig,
    pub rows: usize,
    pub inequalities: BTreeMap<String, InequalitySummary>,
    pub failure_count: usize,
    pub runtime_ms: u128,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn build(
        which: String,
        config: &SweepConfig,
        rows: Vec<SweepRow>,
        runtime_ms: u128,
    ) -> Self {
        let mut inequalities: BTreeMap<String, InequalitySummary> = BTreeMap::new();
        let mut failure_count = 0;
        for row in &rows {
            let entry = inequalities
                .entry(row.inequality.to_string())
                .or_insert(InequalitySummary {
                    rows: 0,
                    min_margin: f64::INFINITY,
                    max_abs_margin: 0.0,
                    failures: 0,
                });
            entry.rows += 1;
            entry.min_margin = entry.min_margin.min(row.margin);
            if row.margin.is_finite() {
                entry.max_abs_margin = entry.max_abs_margin.max(row.margin.abs());
            }
            if row_fails(row, config.tolerance) {
                entry.failures += 1;
                failure_count += 1;
            }
        }
        let summary = SweepSummary {
            which,
            config: config.clone(),
            rows: rows.len(),
            inequalities,
            failure_count,
            runtime_ms,
        };
        Self { rows, summary }
    }

    pub fn min_margin(&self, inequality: &str) -> f64 {
        self.summary
            .inequalities
            .get(inequality)
            .map(|s| s.min_margin)
            .unwrap_or(f64::INFINITY)
    }

    pub fn max_abs_margin(&self, inequality: &str) -> f64 {
        self.summary
            .inequalities
            .get(inequality)
            .map(|s| s.max_abs_margin)
            .unwrap_or(0.0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Full<'a> {
            summary: &'a SweepSummary,
            rows: &'a [SweepRow],
        }
        Ok(serde_json::to_string_pretty(&Full { summary: &self.summary, rows: &self.rows })?)
    }

    pub fn summary_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.summary)?)
    }

    /// Writes the report in the requested format plus the summary sidecar
    /// `<path>.summary.json`.
    pub fn write_files(&self, path: &std::path::Path, format: Format) -> Result<()> {
        let body = match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json()?,
        };
        let mut file = std::fs::File::create(path)
            .with_context(|| format!("cannot create {}", path.display()))?;
        file.write_all(body.as_bytes())?;
        let sidecar = sidecar_path(path);
        std::fs::write(&sidecar, self.summary_json()?)
            .with_context(|| format!("cannot write {}", sidecar.display()))?;
        Ok(())
    }
}

pub fn sidecar_path(path: &std::path::Path) -> std::path::PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(".summary.json");
    std::path::PathBuf::from(name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}
