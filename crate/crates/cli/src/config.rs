use std::path::Path;

use optomech_core::Config;

use crate::error::{CliError, Result};

/// Load `path` (or the bundled reference set) and apply `key=value`
/// overrides in order.
pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Config> {
    let mut config = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            Config::from_json(&text)?
        }
        None => Config::reference(),
    };
    for item in overrides {
        let (key, value) = parse_override(item)?;
        config.set(key, value)?;
    }
    // re-validate after overrides
    config.system_params()?;
    config.drive()?;
    Ok(config)
}

pub fn parse_override(item: &str) -> Result<(&str, f64)> {
    let (key, value) = item
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("expected key=value, got `{item}`")))?;
    let key = key.trim();
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("`{key}`: `{value}` is not a number")))?;
    Ok((key, value))
}
