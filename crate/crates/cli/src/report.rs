//! Report records and the three output formats.
//!
//! Every run emits a single record carrying the command name, the echoed
//! parameters, and the numeric results, so any figure in a report can be
//! reproduced from the report alone. JSON mirrors the library's field names;
//! CSV emits one row per checkpoint; text is a human-readable summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use primescan::constraints::{DedekindReport, DensityReport, GpruSweep};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {:?} (expected json, csv, or text)", other)),
        }
    }
}

/// One pair listing from the Sophie Germain scan.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GermainPair {
    pub p: u64,
    pub q: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupSummary {
    pub model: String,
    pub degree: u32,
    pub order: u64,
    pub classes: Vec<ClassRow>,
    pub derangement_proportion: String,
    pub burnside_average_fixed_points: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_stabilizer: Option<OrbitCheck>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClassRow {
    pub cycle_type: String,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OrbitCheck {
    pub point: u32,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolySummary {
    pub poly: String,
    pub degree: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_mod: Option<FactorRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resultant: Option<ResultantRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FactorRow {
    pub p: u64,
    pub squarefree: bool,
    pub degrees: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResultantRow {
    pub with: String,
    pub value: String,
}

/// The single record a run emits.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportRecord {
    pub command: String,
    pub version: String,
    /// Full parameter echo, so the run is reproducible from its own output.
    pub parameters: BTreeMap<String, String>,
    pub warnings: Vec<String>,
    pub verdicts: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dedekind: Option<DedekindReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gpru: Option<GpruSweep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub germain_pairs: Option<Vec<GermainPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<PolySummary>,
}

impl ReportRecord {
    pub fn new(command: &str) -> ReportRecord {
        ReportRecord {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: BTreeMap::new(),
            warnings: Vec::new(),
            verdicts: BTreeMap::new(),
            density: None,
            dedekind: None,
            gpru: None,
            germain_pairs: None,
            members: None,
            group: None,
            poly: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable record");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        if let Some(d) = &self.density {
            let predicted = d.predicted_f64().map(|v| v.to_string()).unwrap_or_default();
            out.push_str("bound,prime_count,excluded_count,member_count,empirical_ratio,predicted\n");
            for c in &d.checkpoints {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    c.bound, c.prime_count, c.excluded_count, c.member_count, c.empirical_ratio,
                    predicted
                );
            }
        } else if let Some(d) = &self.dedekind {
            out.push_str("cycle_type,observed,empirical,predicted\n");
            for row in &d.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    row.cycle_type, row.observed, row.empirical, row.predicted
                );
            }
            let _ = writeln!(out, "linf,,{},", d.linf);
        } else if let Some(g) = &self.gpru {
            out.push_str("bound,primes_checked,pairs_checked,passed\n");
            let _ = writeln!(
                out,
                "{},{},{},{}",
                g.bound,
                g.primes_checked,
                g.pairs_checked,
                g.passed()
            );
        } else if let Some(g) = &self.group {
            out.push_str("cycle_type,count\n");
            for row in &g.classes {
                let _ = writeln!(out, "{},{}", row.cycle_type, row.count);
            }
        } else {
            out.push_str("key,value\n");
            for (k, v) in &self.parameters {
                let _ = writeln!(out, "{},{}", k, v);
            }
        }
        out
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (v{})", self.command, self.version);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {}: {}", k, v);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {}", w);
        }
        if let Some(d) = &self.density {
            let _ = writeln!(
                out,
                "primes <= {}: {} ({} excluded), members {}",
                d.bound, d.prime_count, d.excluded_count, d.member_count
            );
            match (&d.predicted, d.predicted_f64()) {
                (Some(r), Some(f)) => {
                    let _ = writeln!(
                        out,
                        "empirical ratio {} vs predicted {} ({:.6})",
                        d.empirical_ratio, r, f
                    );
                }
                _ => {
                    let _ = writeln!(out, "empirical ratio {}", d.empirical_ratio);
                }
            }
            for c in &d.checkpoints {
                let _ = writeln!(
                    out,
                    "  at {}: members {} of {} unexcluded, ratio {}",
                    c.bound,
                    c.member_count,
                    c.prime_count - c.excluded_count,
                    c.empirical_ratio
                );
            }
        }
        if let Some(d) = &self.dedekind {
            let _ = writeln!(
                out,
                "primes <= {}: {} unramified, {} excluded",
                d.bound, d.unramified_count, d.excluded_count
            );
            for row in &d.rows {
                let _ = writeln!(
                    out,
                    "  type {:<12} observed {:<8} empirical {:.6} predicted {:.6}",
                    row.cycle_type, row.observed, row.empirical, row.predicted
                );
            }
            let _ = writeln!(out, "Linf distance {:.6}", d.linf);
        }
        if let Some(g) = &self.gpru {
            let _ = writeln!(
                out,
                "checked {} pairs over {} odd primes up to {}",
                g.pairs_checked, g.primes_checked, g.bound
            );
            match &g.counterexample {
                None => {
                    let _ = writeln!(out, "0 counterexamples");
                }
                Some(w) => {
                    let _ = writeln!(
                        out,
                        "counterexample: p={} b={} value={} coprime={} primitive={}",
                        w.p, w.b, w.value, w.coprime, w.primitive
                    );
                }
            }
        }
        if let Some(pairs) = &self.germain_pairs {
            for pair in pairs {
                let _ = writeln!(out, "({}, {})", pair.p, pair.q);
            }
        }
        if let Some(members) = &self.members {
            let rendered: Vec<String> = members.iter().map(|m| m.to_string()).collect();
            let _ = writeln!(out, "members: {}", rendered.join(" "));
        }
        if let Some(g) = &self.group {
            let _ = writeln!(out, "{}: order {}", g.model, g.order);
            for row in &g.classes {
                let _ = writeln!(out, "  type {:<12} count {}", row.cycle_type, row.count);
            }
            let _ = writeln!(out, "derangement proportion {}", g.derangement_proportion);
            let _ = writeln!(
                out,
                "Burnside average fixed points {}",
                g.burnside_average_fixed_points
            );
            if let Some(oc) = &g.orbit_stabilizer {
                let _ = writeln!(
                    out,
                    "orbit-stabilizer at point {}: {}",
                    oc.point,
                    if oc.holds { "holds" } else { "violated" }
                );
            }
        }
        if let Some(p) = &self.poly {
            let _ = writeln!(out, "poly {} (degree {})", p.poly, p.degree);
            if let Some(d) = &p.discriminant {
                let _ = writeln!(out, "discriminant {}", d);
            }
            if let Some(fr) = &p.factor_mod {
                let degrees: Vec<String> = fr.degrees.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(
                    out,
                    "mod {}: squarefree {}, factor degrees [{}]",
                    fr.p,
                    fr.squarefree,
                    degrees.join(", ")
                );
            }
            if let Some(r) = &p.resultant {
                let _ = writeln!(out, "resultant with {}: {}", r.with, r.value);
            }
        }
        for (k, v) in &self.verdicts {
            let _ = writeln!(out, "{}: {}", k, v);
        }
        out
    }
}
