//! Shared helpers for machine-readable reports.

use serde::Serialize;

/// Version of every JSON report produced by this crate.
pub const SCHEMA: u32 = 1;

/// Pretty JSON with a trailing newline; key order follows struct field order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
