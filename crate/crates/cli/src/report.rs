use std::path::Path;

use anyhow::Context;
use lisa::isv::{CheckReport, Verdict};
use serde_json::{json, Value};

pub const SCHEMA: &str = "lisa/1";

/// How one section of a report came out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
    /// A failure the input declared in advance.
    ExpectedFail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::ExpectedFail => "fail (expected)",
        }
    }

    pub fn ok(self) -> bool {
        self != Status::Fail
    }

    pub fn of(passed: bool) -> Status {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Compares an outcome with a declared expectation, if any.
    pub fn against(passed: bool, expected: Option<bool>) -> Status {
        match (passed, expected) {
            (false, Some(false)) => Status::ExpectedFail,
            (true, Some(false)) => Status::Fail,
            (p, _) => Status::of(p),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Section {
    pub name: String,
    pub status: Status,
    pub body: Value,
    /// Extra lines for the text rendering.
    pub notes: Vec<String>,
}

impl Section {
    pub fn new(name: impl Into<String>, status: Status, body: Value) -> Section {
        Section { name: name.into(), status, body, notes: Vec::new() }
    }

    pub fn check(name: impl Into<String>, r: &CheckReport) -> Section {
        let mut s = Section::new(name, Status::of(r.passed()), r.to_json());
        for f in r.failures() {
            s.notes.push(format!("{} fails", f.axiom));
        }
        let skipped: Vec<_> = r.results.iter().filter(|a| a.verdict == Verdict::Skipped).map(|a| a.axiom.clone()).collect();
        if !skipped.is_empty() {
            s.notes.push(format!("skipped: {}", skipped.join(", ")));
        }
        s
    }

    pub fn skip(name: impl Into<String>, reason: &str) -> Section {
        let mut s = Section::new(name, Status::Skip, json!({ "reason": reason }));
        s.notes.push(reason.to_string());
        s
    }

    pub fn note(mut self, line: impl Into<String>) -> Section {
        self.notes.push(line.into());
        self
    }
}

pub struct Report {
    pub command: String,
    pub config: Value,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Report {
        Report { command: command.to_string(), config, sections: Vec::new() }
    }

    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn ok(&self) -> bool {
        self.sections.iter().all(|s| s.status.ok())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "config": self.config,
            "status": if self.ok() { "pass" } else { "fail" },
            "sections": self.sections.iter().map(|s| json!({
                "name": s.name,
                "status": s.status.name(),
                "report": s.body,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(&format!("{}: {}\n", s.name, s.status.name()));
            for n in &s.notes {
                out.push_str(&format!("  {n}\n"));
            }
        }
        out.push_str(&format!("overall: {}\n", if self.ok() { "pass" } else { "fail" }));
        out
    }

    pub fn emit(&self, json_stdout: bool, out: Option<&Path>) -> anyhow::Result<()> {
        let v = self.to_json();
        if let Some(path) = out {
            std::fs::write(path, serde_json::to_string_pretty(&v)? + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
        }
        if json_stdout {
            println!("{}", serde_json::to_string_pretty(&v)?);
        } else {
            print!("{}", self.to_text());
        }
        Ok(())
    }
}
