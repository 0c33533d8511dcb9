use std::collections::BTreeMap;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

/// Where a failing identity went wrong: the sub-check, the probe, and the
/// full nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub generator: String,
    pub residual: String,
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// The outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: String,
    pub chart: String,
    pub status: Status,
    pub reason: Option<String>,
    pub seeds: BTreeMap<String, u64>,
    pub worst_residual: Option<Failure>,
    pub millis: u64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn skipped(&self) -> bool {
        self.status == Status::Skip
    }
}

// Skipped reports carry `"skip": true` in place of the `"pass"` flag.
impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("id", &self.id)?;
        map.serialize_entry("chart", &self.chart)?;
        match self.status {
            Status::Pass => map.serialize_entry("pass", &true)?,
            Status::Fail => map.serialize_entry("pass", &false)?,
            Status::Skip => map.serialize_entry("skip", &true)?,
        }
        if let Some(reason) = &self.reason {
            map.serialize_entry("reason", reason)?;
        }
        map.serialize_entry("seeds", &self.seeds)?;
        if let Some(w) = &self.worst_residual {
            map.serialize_entry("worst_residual", w)?;
        }
        map.serialize_entry("millis", &self.millis)?;
        map.end()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn of(reports: &[IdentityReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skip => s.skip += 1,
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(status: Status) -> IdentityReport {
        IdentityReport {
            id: "X".into(),
            chart: "standard:1".into(),
            status,
            reason: None,
            seeds: BTreeMap::from([("master".to_string(), 1)]),
            worst_residual: None,
            millis: 3,
        }
    }

    #[test]
    fn status_keys() {
        let pass = serde_json::to_value(report(Status::Pass)).unwrap();
        assert_eq!(pass["pass"], true);
        assert!(pass.get("skip").is_none());
        let skip = serde_json::to_value(report(Status::Skip)).unwrap();
        assert_eq!(skip["skip"], true);
        assert!(skip.get("pass").is_none());
        assert!(skip.get("worst_residual").is_none());
    }

    #[test]
    fn summary_counts() {
        let s = Summary::of(&[report(Status::Pass), report(Status::Fail), report(Status::Skip), report(Status::Pass)]);
        assert_eq!(s, Summary { pass: 2, fail: 1, skip: 1 });
    }
}
