//! JSON schemas shipped in `docs/`, compiled once and applied on load.

use jsonschema::JSONSchema;
use serde_json::Value;

pub const PAIR_SCHEMA: &str = include_str!("../../../docs/pair.schema.json");
pub const REALIZE_SCHEMA: &str = include_str!("../../../docs/realize.schema.json");

/// A schema violation located by its JSON pointer into the instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemaViolation {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for SchemaViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let path = if self.path.is_empty() { "/" } else { &self.path };
        write!(f, "schema violation at {path}: {}", self.message)
    }
}

/// Validate `instance` and report the first error, if any. `prefix` is
/// prepended to the pointer when the instance is nested in a larger document.
pub fn validate(schema_text: &str, instance: &Value, prefix: &str) -> Result<(), SchemaViolation> {
    let schema: Value = serde_json::from_str(schema_text).expect("shipped schema is valid JSON");
    let compiled = JSONSchema::compile(&schema).expect("shipped schema compiles");
    let result = compiled.validate(instance);
    match result {
        Ok(()) => Ok(()),
        Err(mut errors) => {
            let first = errors.next().expect("a failed validation yields at least one error");
            Err(SchemaViolation { path: format!("{prefix}{}", first.instance_path), message: first.to_string() })
        }
    }
}
