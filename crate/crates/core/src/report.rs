//! Scenario reports serialized as JSON.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The computation stopped at a resource limit; nothing is claimed.
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScenarioReport {
    pub scenario: String,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub payload: BTreeMap<String, String>,
    pub runtime_ms: u64,
}

impl ScenarioReport {
    /// `digest_input` is the presentation text plus flags; the scenario name
    /// is hashed along with it.
    pub fn new(scenario: &str, digest_input: &str) -> Self {
        ScenarioReport {
            scenario: scenario.to_string(),
            input_digest: crate::digest(format!("{scenario}\n{digest_input}").as_bytes()),
            seed: None,
            verdicts: BTreeMap::new(),
            payload: BTreeMap::new(),
            runtime_ms: 0,
        }
    }

    pub fn verdict(&mut self, name: &str, v: Verdict) -> &mut Self {
        self.verdicts.insert(name.to_string(), v);
        self
    }

    pub fn check(&mut self, name: &str, ok: bool) -> &mut Self {
        self.verdict(name, Verdict::from_bool(ok))
    }

    /// Record an inconclusive verdict together with its reason.
    pub fn inconclusive(&mut self, name: &str, reason: impl fmt::Display) -> &mut Self {
        self.verdict(name, Verdict::Inconclusive);
        self.put(&format!("{name}.reason"), reason)
    }

    pub fn put(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.payload.insert(key.to_string(), value.to_string());
        self
    }

    /// Fail beats inconclusive beats pass.
    pub fn overall(&self) -> Verdict {
        let vs = self.verdicts.values();
        if vs.clone().any(|v| *v == Verdict::Fail) {
            Verdict::Fail
        } else if vs.clone().any(|v| *v == Verdict::Inconclusive) {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Exit status for a set of reports: 0 pass, 1 fail, 3 inconclusive.
pub fn exit_code<'a>(reports: impl IntoIterator<Item = &'a ScenarioReport>) -> i32 {
    let mut code = 0;
    for r in reports {
        match r.overall() {
            Verdict::Fail => return 1,
            Verdict::Inconclusive => code = 3,
            Verdict::Pass => {}
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = ScenarioReport::new("demo", "x");
        r.check("ok", true).put("order", 4);
        let json = r.to_json();
        assert!(json.starts_with(r#"{"scenario":"demo","inputDigest":""#));
        assert!(json.contains(r#""verdicts":{"ok":"pass"},"payload":{"order":"4"},"runtimeMs":0"#));
        assert!(!json.contains("seed"));
    }

    #[test]
    fn aggregation() {
        let mut a = ScenarioReport::new("a", "");
        a.inconclusive("enumeration", "coset limit");
        assert_eq!(a.overall(), Verdict::Inconclusive);
        assert_eq!(exit_code([&a]), 3);
        let mut b = ScenarioReport::new("b", "");
        b.check("x", false);
        assert_eq!(exit_code([&a, &b]), 1);
        assert_eq!(exit_code([]), 0);
    }
}
