//! Machine-readable run reports: every residual carries its tolerance and a
//! tag naming the claim it checks, so report rows are self-describing.

use crate::numeric::fnv1a_hex;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// identifier of the quantitative claim being verified,
    /// e.g. "volume=p*tau0*tau1"
    pub claim: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn residual(
        name: impl Into<String>,
        claim: impl Into<String>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Check {
            name: name.into(),
            claim: claim.into(),
            value: residual,
            expected: None,
            residual,
            tolerance,
            pass: residual.abs() < tolerance,
        }
    }

    pub fn against(
        name: impl Into<String>,
        claim: impl Into<String>,
        value: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        let residual = (value - expected).abs();
        Check {
            name: name.into(),
            claim: claim.into(),
            value,
            expected: Some(expected),
            residual,
            tolerance,
            pass: residual < tolerance,
        }
    }

    pub fn relative(
        name: impl Into<String>,
        claim: impl Into<String>,
        value: f64,
        expected: f64,
        rel_tolerance: f64,
    ) -> Self {
        let residual = (value - expected).abs() / expected.abs().max(1e-300);
        Check {
            name: name.into(),
            claim: claim.into(),
            value,
            expected: Some(expected),
            residual,
            tolerance: rel_tolerance,
            pass: residual < rel_tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
    pub wall_ms: f64,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: &str, seed: Option<u64>) -> Self {
        Report {
            command: command.into(),
            inputs_digest: fnv1a_hex(inputs),
            seed,
            pass: true,
            checks: Vec::new(),
            data: serde_json::Value::Null,
            wall_ms: 0.0,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Check table as CSV rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,claim,value,expected,residual,tolerance,pass\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                c.name,
                c.claim,
                c.value,
                c.expected.map_or(String::new(), |e| e.to_string()),
                c.residual,
                c.tolerance,
                c.pass
            ));
        }
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}  (inputs {})\n", self.command, self.inputs_digest);
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {:<38} residual {:>12.4e}  tol {:>8.1e}  ({})\n",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.residual,
                c.tolerance,
                c.claim,
            ));
        }
        out.push_str(&format!(
            "  => {} in {:.1} ms\n",
            if self.pass { "pass" } else { "FAIL" },
            self.wall_ms
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_aggregates_pass_flag() {
        let mut r = Report::new("demo", "x", None);
        r.push(Check::residual("a", "claim-a", 1e-12, 1e-10));
        assert!(r.pass);
        r.push(Check::against("b", "claim-b", 2.0, 1.0, 1e-10));
        assert!(!r.pass);
        assert!(r.to_json().contains("claim-a"));
        assert!(r.to_csv().lines().count() == 3);
    }

    #[test]
    fn digest_is_stable() {
        let a = Report::new("demo", "same-input", None);
        let b = Report::new("demo", "same-input", None);
        assert_eq!(a.inputs_digest, b.inputs_digest);
        let c = Report::new("demo", "other-input", None);
        assert_ne!(a.inputs_digest, c.inputs_digest);
    }
}
