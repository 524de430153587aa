//! Plain-text run reports.
//!
//! ```text
//! clawnet-report v1
//! command hamilton circle --family dr2.fam --depth 8
//! seed 7
//! check PASS interior-degree depth=8 | 37 interior vertices have degree 2
//! output certificate written to dr2.cert
//! timings
//! build 3
//! ```
//!
//! Everything above `timings` is deterministic for a fixed command and seed.

use std::fmt;

use crate::error::{Error, Result};

const HEADER: &str = "clawnet-report v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub name: String,
    pub depth: Option<usize>,
    pub passed: bool,
    /// What was seen: a witness for failures, a short summary otherwise.
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunReport {
    pub command: Vec<String>,
    pub seed: u64,
    pub entries: Vec<ReportEntry>,
    pub output: Vec<String>,
    /// Milliseconds per phase, excluded from the deterministic body.
    pub timings: Vec<(String, u64)>,
}

impl RunReport {
    pub fn check(
        &mut self,
        name: impl Into<String>,
        depth: Option<usize>,
        passed: bool,
        detail: impl Into<String>,
    ) {
        let detail = detail.into();
        // a failure always says something
        let detail = if !passed && detail.trim().is_empty() {
            "failed".to_string()
        } else {
            detail
        };
        self.entries.push(ReportEntry {
            name: name.into(),
            depth,
            passed,
            detail,
        });
    }

    /// A failed entry classified by the error kind.
    pub fn error(&mut self, name: impl Into<String>, depth: Option<usize>, e: &Error) {
        self.check(name, depth, false, format!("[{}] {e}", e.kind()));
    }

    pub fn output(&mut self, line: impl Into<String>) {
        self.output.push(line.into());
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    /// The report without its timings section.
    pub fn body(&self) -> String {
        let text = self.to_string();
        match text.find("\ntimings\n") {
            Some(i) => text[..=i].to_string(),
            None => text,
        }
    }

    pub fn parse(text: &str) -> Result<RunReport> {
        let mut lines = text.lines();
        if lines.next() != Some(HEADER) {
            return Err(Error::input(format!("report must start with `{HEADER}`")));
        }
        let mut r = RunReport::default();
        let mut in_timings = false;
        for line in lines {
            let bad = || Error::input(format!("bad report line {line:?}"));
            if in_timings {
                let (name, ms) = line.rsplit_once(' ').ok_or_else(bad)?;
                r.timings
                    .push((name.to_string(), ms.parse().map_err(|_| bad())?));
                continue;
            }
            if line == "timings" {
                in_timings = true;
            } else if let Some(rest) = line.strip_prefix("command") {
                r.command = rest.split_whitespace().map(str::to_string).collect();
            } else if let Some(rest) = line.strip_prefix("seed ") {
                r.seed = rest.parse().map_err(|_| bad())?;
            } else if let Some(rest) = line.strip_prefix("check ") {
                let (head, detail) = rest.split_once(" | ").ok_or_else(bad)?;
                let mut parts = head.split(' ');
                let passed = match parts.next() {
                    Some("PASS") => true,
                    Some("FAIL") => false,
                    _ => return Err(bad()),
                };
                let name = parts.next().ok_or_else(bad)?.to_string();
                let depth = match parts.next().and_then(|d| d.strip_prefix("depth=")) {
                    Some("-") => None,
                    Some(d) => Some(d.parse().map_err(|_| bad())?),
                    None => return Err(bad()),
                };
                r.entries.push(ReportEntry {
                    name,
                    depth,
                    passed,
                    detail: detail.to_string(),
                });
            } else if let Some(rest) = line.strip_prefix("output ") {
                r.output.push(rest.to_string());
            } else {
                return Err(bad());
            }
        }
        Ok(r)
    }
}

/// Names are single tokens; details and outputs are single lines.
fn token(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join("_")
}

fn one_line(s: &str) -> String {
    s.lines().collect::<Vec<_>>().join(" / ")
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER}")?;
        let cmd: Vec<String> = self.command.iter().map(|c| token(c)).collect();
        writeln!(f, "command {}", cmd.join(" "))?;
        writeln!(f, "seed {}", self.seed)?;
        for e in &self.entries {
            let depth = e.depth.map_or("-".to_string(), |d| d.to_string());
            let status = if e.passed { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "check {status} {} depth={depth} | {}",
                token(&e.name),
                one_line(&e.detail)
            )?;
        }
        for o in &self.output {
            writeln!(f, "output {}", one_line(o))?;
        }
        writeln!(f, "timings")?;
        for (name, ms) in &self.timings {
            writeln!(f, "{} {ms}", token(name))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let mut r = RunReport {
            command: vec!["detect".into(), "--pattern".into(), "net".into()],
            seed: 3,
            ..Default::default()
        };
        r.check("net-match", None, true, "net 0 1 2 3 4 5");
        r.check("shepherd", Some(4), false, "");
        r.error(
            "circle",
            Some(8),
            &Error::precondition("graph is not 2-connected"),
        );
        r.output("match net 0 1 2 3 4 5");
        r.timings.push(("detect".into(), 12));
        let text = r.to_string();
        let back = RunReport::parse(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_string(), text);
        assert!(!back.all_passed());
        assert!(back.body().ends_with("output match net 0 1 2 3 4 5\n"));
        assert_eq!(r.entries[1].detail, "failed");
    }

    #[test]
    fn rejects_foreign_text() {
        assert!(RunReport::parse("hello\n").is_err());
        assert!(RunReport::parse("clawnet-report v1\ncheck MAYBE x depth=- | y\n").is_err());
    }
}
