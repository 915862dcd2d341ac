use serde_json::{json, Value};

/// A failure reported with exit code 2 and a JSON body on stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { kind: "usage".into(), message: msg.into() }
    }

    pub fn io(msg: impl Into<String>) -> Self {
        CliError { kind: "io".into(), message: msg.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message }, "schema": crate::json::SCHEMA })
    }
}

impl From<mconvex::Error> for CliError {
    fn from(e: mconvex::Error) -> Self {
        CliError { kind: e.kind().into(), message: e.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError { kind: "parse".into(), message: e.to_string() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}
