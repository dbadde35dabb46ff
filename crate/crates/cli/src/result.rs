use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Error => 2,
            Status::Unknown => 3,
        }
    }
}

/// `status = ok` only when every step listed in `trace` passed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub trace: Vec<String>,
}

impl CommandResult {
    pub fn ok(payload: Value, trace: Vec<String>) -> Self {
        CommandResult {
            status: Status::Ok,
            payload,
            trace,
        }
    }

    pub fn unknown(payload: Value, trace: Vec<String>) -> Self {
        CommandResult {
            status: Status::Unknown,
            payload,
            trace,
        }
    }

    pub fn error(message: impl Into<String>) -> Self {
        CommandResult {
            status: Status::Error,
            payload: json!({ "error": message.into() }),
            trace: Vec::new(),
        }
    }
}
