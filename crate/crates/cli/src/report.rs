//! JSON report envelope. Every `--json` report carries the same meta block
//! (tool, version, command, parameters, runtime) followed by a
//! command-specific payload; field order is fixed by the struct layout, so
//! identical runs produce identical bytes apart from the runtime fields.

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub params: Value,
    pub runtime_ms: u64,
}

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub meta: Meta,
    #[serde(flatten)]
    pub payload: T,
}

pub fn print_json<T: Serialize>(command: &str, params: Value, runtime_ms: u64, payload: T) {
    let envelope = Envelope {
        meta: Meta {
            tool: "permkit",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            params,
            runtime_ms,
        },
        payload,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&envelope).expect("reports serialize")
    );
}
