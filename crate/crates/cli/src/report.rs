use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use simons_core::algebra::{Certificate, PinchSweep};
use simons_core::identities::Spread;
use simons_core::GapReport;

use crate::config::{Format, RunConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralEntry {
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeReport {
    pub invariants: BTreeMap<String, Spread>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integrals: Option<BTreeMap<String, IntegralEntry>>,
    /// Checks that failed, in catalog order.
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapSection {
    #[serde(flatten)]
    pub report: GapReport,
    pub checks: BTreeMap<String, bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraSection {
    pub identities: Vec<Certificate>,
    pub pinch: PinchSweep,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub per_degree: BTreeMap<String, DegreeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSection>,
    pub pass: bool,
}

impl RunReport {
    /// Name of the first failing check: degrees in order, then gap, then algebra.
    pub fn first_failure(&self) -> Option<String> {
        for (s, d) in &self.per_degree {
            if let Some(name) = d.failures.first() {
                return Some(format!("s={s} {name}"));
            }
        }
        if let Some(g) = &self.gap {
            if let Some((name, _)) = g.checks.iter().find(|(_, ok)| !**ok) {
                return Some(format!("gap {name}"));
            }
        }
        if let Some(a) = &self.algebra {
            if let Some(c) = a.identities.iter().find(|c| !c.holds) {
                return Some(format!("algebra {}", c.name));
            }
            if !a.pass {
                return Some("algebra PINCH".into());
            }
        }
        None
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut row = |section: &str, degree: &str, name: &str, value: String, reference: String, pass: String| {
            w.write_record([section, degree, name, &value, &reference, &pass]).expect("in-memory write");
        };
        row("section", "degree", "name", "value".into(), "reference".into(), "pass".into());
        for (s, d) in &self.per_degree {
            for (name, sp) in &d.invariants {
                row("invariant", s, name, sp.mean.to_string(), String::new(), String::new());
            }
            if let (Some(res), Some(tol)) = (&d.residuals, &d.tolerances) {
                for (name, v) in res {
                    let t = tol[name];
                    row("residual", s, name, v.to_string(), t.to_string(), (*v < t).to_string());
                }
            }
            for (name, e) in d.integrals.iter().flatten() {
                row("integral", s, name, e.lhs.to_string(), e.rhs.to_string(), e.pass.to_string());
            }
        }
        if let Some(g) = &self.gap {
            let r = &g.report;
            row("gap", "", "s_star", r.s_star.to_string(), String::new(), String::new());
            row("gap", "", "f_max", r.f_max.to_string(), String::new(), String::new());
            row("gap", "", "forbidden_lo", r.forbidden[0].to_string(), String::new(), String::new());
            row("gap", "", "forbidden_hi", r.forbidden[1].to_string(), String::new(), String::new());
            row("gap", "", "f(5/3)", r.endpoints.at_five_thirds.clone(), "0".into(), String::new());
            row("gap", "", "f(9/5)", r.endpoints.at_nine_fifths.clone(), "0".into(), String::new());
            for (name, ok) in &g.checks {
                row("gap", "", name, String::new(), String::new(), ok.to_string());
            }
        }
        if let Some(a) = &self.algebra {
            for c in &a.identities {
                row("algebra", "", &c.name, c.holds.to_string(), "true".into(), c.holds.to_string());
            }
            row("algebra", "", "pinch_max_lhs", a.pinch.max_lhs.to_string(), "1e-12".into(), (a.pinch.max_lhs <= 1e-12).to_string());
            row("algebra", "", "pinch_equality_exact", a.pinch.equality_exact.to_string(), "true".into(), a.pinch.equality_exact.to_string());
        }
        row("overall", "", "pass", self.pass.to_string(), String::new(), self.pass.to_string());
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
    }

    fn to_text(&self) -> String {
        let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
        let mut out = String::new();
        let _ = writeln!(out, "simons-verify {} ({})", self.version, self.command);
        for (s, d) in &self.per_degree {
            let _ = writeln!(out, "\ndegree {s}: {}", verdict(d.pass));
            for key in ["S", "K", "B1", "B2", "B3"] {
                if let Some(sp) = d.invariants.get(key) {
                    let _ = writeln!(out, "  {key:<12} {:>+.12e}  (spread {:.2e})", sp.mean, sp.max - sp.min);
                }
            }
            if let (Some(res), Some(tol)) = (&d.residuals, &d.tolerances) {
                for (name, v) in res {
                    let t = tol[name];
                    let _ = writeln!(out, "  {name:<12} {v:.3e}  tol {t:.0e}  {}", verdict(*v < t));
                }
            }
            for (name, e) in d.integrals.iter().flatten() {
                let _ = writeln!(
                    out,
                    "  {name:<12} lhs {:+.12e}  rhs {:+.12e}  {}",
                    e.lhs,
                    e.rhs,
                    verdict(e.pass)
                );
            }
        }
        if let Some(g) = &self.gap {
            let r = &g.report;
            let _ = writeln!(out, "\ngap: {}", verdict(g.pass));
            let _ = writeln!(out, "  s_star     {:.8}", r.s_star);
            let _ = writeln!(out, "  f_max      {:.8}", r.f_max);
            let _ = writeln!(out, "  forbidden  ({:.5}, {:.5})", r.forbidden[0], r.forbidden[1]);
            let _ = writeln!(out, "  f(5/3) = {}, f(9/5) = {}", r.endpoints.at_five_thirds, r.endpoints.at_nine_fifths);
        }
        if let Some(a) = &self.algebra {
            let _ = writeln!(out, "\nalgebra: {}", verdict(a.pass));
            for c in &a.identities {
                let _ = writeln!(out, "  {:<10} {}", c.name, c.holds);
            }
            let _ = writeln!(
                out,
                "  pinch      max lhs {:.3e} over {} pairs, equality exact: {}",
                a.pinch.max_lhs, a.pinch.samples, a.pinch.equality_exact
            );
        }
        let _ = writeln!(out, "\noverall: {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::{execute, Command};

    fn report() -> RunReport {
        let cfg = RunConfig { degree: vec![1], samples: 3, pinch_samples: 10, ..RunConfig::default() };
        execute(Command::Verify, &cfg, None).unwrap()
    }

    #[test]
    fn renders_every_format() {
        let r = report();
        let json: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        for key in ["version", "config", "per_degree", "pass"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        let csv = r.render(Format::Csv);
        let mut reader = csv::Reader::from_reader(csv.as_bytes());
        let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert!(records.iter().all(|r| r.len() == 6));
        assert!(records.iter().any(|r| &r[2] == "<a,b>"));
        assert!(r.render(Format::Text).ends_with("overall: PASS\n"));
    }

    #[test]
    fn first_failure_prefers_degrees() {
        let mut r = report();
        assert_eq!(r.first_failure(), None);
        r.per_degree.get_mut("1").unwrap().failures.push("CODAZZI".into());
        assert_eq!(r.first_failure().as_deref(), Some("s=1 CODAZZI"));
    }
}
