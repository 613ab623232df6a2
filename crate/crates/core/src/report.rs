//! Machine-readable report model shared by the command-line tools.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Where a numeric claim comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Construction,
    Search,
    Bound,
    Lp,
    VerifiedFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub claim: String,
    pub source: Source,
}

impl Provenance {
    pub fn new(claim: impl Into<String>, source: Source) -> Self {
        Provenance {
            claim: claim.into(),
            source,
        }
    }
}

/// Output of one command: echoed inputs, a command-specific payload, and a
/// provenance entry for every numeric claim in the payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub provenance: Vec<Provenance>,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Value) -> Self {
        Report {
            command: command.into(),
            inputs,
            results: Value::Null,
            provenance: Vec::new(),
        }
    }

    pub fn claim(&mut self, claim: impl Into<String>, source: Source) -> &mut Self {
        self.provenance.push(Provenance::new(claim, source));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn report_round_trips() {
        let mut r = Report::new("bound", json!({"k": 13, "t": 6}));
        r.results = json!({"rao": "378"});
        r.claim("rao = 378", Source::Bound).claim("lp = 1024", Source::Lp);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"source\":\"lp\""));
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let file: Provenance = serde_json::from_str(r#"{"claim":"x","source":"verified-file"}"#).unwrap();
        assert_eq!(file.source, Source::VerifiedFile);
    }
}
