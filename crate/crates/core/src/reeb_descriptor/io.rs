use std::fs;
use std::path::Path;

use super::{DescriptorError, ReebDescriptor};

/// Parses a descriptor document. Schema violations (unknown fields, bad class
/// ids, wrong types) report the line and column where they were detected.
pub fn parse(text: &str) -> Result<ReebDescriptor, DescriptorError> {
    serde_json::from_str(text).map_err(|e| DescriptorError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn to_json(d: &ReebDescriptor) -> String {
    serde_json::to_string_pretty(d).expect("descriptor serializes")
}

pub fn load(path: impl AsRef<Path>) -> Result<ReebDescriptor, DescriptorError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| DescriptorError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse(&text)
}

pub fn save(d: &ReebDescriptor, path: impl AsRef<Path>) -> Result<(), DescriptorError> {
    let path = path.as_ref();
    fs::write(path, to_json(d) + "\n").map_err(|e| DescriptorError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
