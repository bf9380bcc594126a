//! Flat `key = value` configuration files.
//!
//! Each key names a long flag of the chosen subcommand (`cross_check` and
//! `cross-check` are the same key). Values are spliced into the argument
//! list only when the flag is absent from the command line, so explicit
//! flags always win. Keys the subcommand does not know are ignored, which
//! lets one file serve several subcommands.

use std::ffi::OsString;
use std::path::Path;

use clap::{ArgAction, Command};

use crate::error::{CliError, CliResult};

pub fn parse(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::usage(format!(
                "config line {}: expected `key = value`, found `{line}`",
                lineno + 1
            )));
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim().trim_matches('"').to_string();
        if key.is_empty() {
            return Err(CliError::usage(format!("config line {}: empty key", lineno + 1)));
        }
        entries.push((key, value));
    }
    Ok(entries)
}

/// Locate `--config` in the raw arguments without running the full parser.
pub fn find_config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

fn flag_present(args: &[OsString], long: &str) -> bool {
    let exact = format!("--{long}");
    let prefixed = format!("--{long}=");
    args.iter().any(|a| {
        let s = a.to_string_lossy();
        s == exact || s.starts_with(&prefixed)
    })
}

/// Insert config-derived flags right after the subcommand token.
pub fn inject(args: Vec<OsString>, cli: &Command, path: &Path) -> CliResult<Vec<OsString>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let entries = parse(&text)?;

    let Some((pos, sub)) = args
        .iter()
        .enumerate()
        .skip(1)
        .find_map(|(i, a)| cli.find_subcommand(a.to_string_lossy().as_ref()).map(|c| (i, c)))
    else {
        return Ok(args);
    };

    let mut extra: Vec<OsString> = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            continue;
        }
        let Some(arg) = sub.get_arguments().find(|a| a.get_long() == Some(key.as_str())) else {
            continue;
        };
        if flag_present(&args[pos + 1..], &key) {
            continue;
        }
        match arg.get_action() {
            ArgAction::SetTrue => match value.as_str() {
                "true" | "yes" | "1" => extra.push(format!("--{key}").into()),
                "false" | "no" | "0" => {}
                other => {
                    return Err(CliError::usage(format!(
                        "config key `{key}` expects true or false, found `{other}`"
                    )))
                }
            },
            _ => extra.push(format!("--{key}={value}").into()),
        }
    }

    let mut out = args;
    out.splice(pos + 1..pos + 1, extra);
    Ok(out)
}
