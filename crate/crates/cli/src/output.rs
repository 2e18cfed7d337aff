use std::process::ExitCode;

use latpoly::families::Diagnostic;
use latpoly::Error;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    ConstructionFailure,
    ResourceCap,
    InvalidInput,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::ConstructionFailure => "construction-failure",
            Status::ResourceCap => "resource-cap",
            Status::InvalidInput => "invalid-input",
        }
    }

    pub fn exit_code(self) -> ExitCode {
        ExitCode::from(match self {
            Status::Ok => 0,
            Status::InvalidInput => 2,
            Status::ConstructionFailure => 3,
            Status::ResourceCap => 4,
        })
    }
}

/// A named assertion outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub tag: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(tag: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { tag: tag.into(), passed, detail: detail.into() }
    }
}

impl From<&Diagnostic> for Check {
    fn from(d: &Diagnostic) -> Self {
        let detail = if d.hard { d.detail.clone() } else { format!("{} (advisory)", d.detail) };
        Check { tag: d.tag.to_string(), passed: d.passed, detail }
    }
}

pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<Check>,
}

impl CommandResult {
    pub fn ok(payload: Value, diagnostics: Vec<Check>) -> Self {
        CommandResult { status: Status::Ok, payload, diagnostics }
    }

    pub fn invalid_usage(message: String, usage: String) -> Self {
        CommandResult { status: Status::InvalidInput, payload: json!({ "error": message, "usage": usage }), diagnostics: vec![] }
    }

    /// A construction failure carries the violated equation tag as its first
    /// diagnostic; `earlier` are the checks that passed before it.
    pub fn from_error(e: Error, earlier: Vec<Check>, partial: Option<Value>) -> Self {
        let status = match &e {
            Error::ConstructionFailure { .. } | Error::CensusDisagreement(_) => Status::ConstructionFailure,
            Error::ResourceCap { .. } => Status::ResourceCap,
            _ => Status::InvalidInput,
        };
        let mut payload = json!({ "error": e.to_string() });
        let mut diagnostics = Vec::new();
        if let Error::ConstructionFailure { equation, detail } = &e {
            payload["equation"] = json!(equation);
            diagnostics.push(Check::new(*equation, false, detail.clone()));
        }
        diagnostics.extend(earlier);
        if let Some(p) = partial {
            payload["partial"] = p;
        }
        CommandResult { status, payload, diagnostics }
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "status": self.status.name(),
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        });
        serde_json::to_string(&v).expect("JSON values always serialize")
    }
}
