use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::market::Instance;

/// Reads and validates an instance config.
pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let text = fs::read_to_string(path.as_ref())?;
    parse_instance(&text)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    toml::from_str(text).map_err(|e| {
        // validation failures surface through serde as custom messages
        let msg = e.message();
        let serde_kind = ["invalid type", "invalid value", "invalid length"]
            .iter()
            .any(|p| msg.starts_with(p));
        match msg.strip_prefix("invalid ").and_then(|m| m.split_once(": ")) {
            Some((path, message)) if !serde_kind => Error::Validation {
                path: path.to_string(),
                message: message.to_string(),
            },
            _ => Error::Parse(e.to_string()),
        }
    })
}

/// Canonical text form of an instance; loading it gives the instance back.
pub fn to_config_string(inst: &Instance) -> Result<String> {
    toml::to_string(inst).map_err(|e| Error::Parse(e.to_string()))
}

pub fn save_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_config_string(inst)?)?;
    Ok(())
}
