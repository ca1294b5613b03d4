use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::conjecture::{Conjecture, Status};
use crate::HarnessError;

/// One line of a verification report.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub conjecture: Conjecture,
    pub n: usize,
    pub m: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<usize>>,
    pub lambda: Vec<usize>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Report {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[Report]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Holds => s.holds += 1,
                Status::Fails => s.fails += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    pub fn all_hold(&self) -> bool {
        self.fails == 0
    }
}

/// Writes one JSON object per line.
pub fn emit_report(reports: &[Report], path: &Path) -> Result<(), HarnessError> {
    let io = |source| HarnessError::Io { path: path.to_path_buf(), source };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    for r in reports {
        writeln!(w, "{}", r.to_line()).map_err(io)?;
    }
    w.flush().map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample(status: Status) -> Report {
        Report {
            conjecture: Conjecture::Bounds,
            n: 3,
            m: vec![0, 0, 1],
            gamma: None,
            lambda: vec![2, 1],
            status,
            detail: None,
            witness: (status == Status::Fails).then(|| json!({ "strong": 2 })),
        }
    }

    #[test]
    fn empty_report_is_empty_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.jsonl");
        emit_report(&[], &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "");
    }

    #[test]
    fn single_line_with_stable_fields() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/out.jsonl");
        emit_report(&[sample(Status::Holds)], &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "{\"conjecture\":\"bounds\",\"n\":3,\"m\":[0,0,1],\"lambda\":[2,1],\"status\":\"holds\"}\n");
        let back: Report = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(back, sample(Status::Holds));
    }

    #[test]
    fn summary_counts() {
        let s = Summary::of(&[sample(Status::Holds), sample(Status::Fails), sample(Status::Skipped)]);
        assert_eq!(s, Summary { holds: 1, fails: 1, skipped: 1 });
        assert!(!s.all_hold());
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        std::fs::write(&blocker, "x").unwrap();
        let err = emit_report(&[], &blocker.join("out.jsonl")).unwrap_err();
        assert!(err.to_string().contains("file"));
    }
}
