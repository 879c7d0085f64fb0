//! `--config` files: a TOML table whose keys are long flag names. Top-level
//! keys apply to any subcommand that accepts them; a `[subcommand]` table
//! applies to that subcommand only and overrides top-level keys. Values are
//! appended to the argument list only for flags that were not given.

use std::collections::BTreeMap;
use std::fs;

use clap::Command;
use toml::{Table, Value};

use crate::CliError;

fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter().skip(1);
    while let Some(arg) = it.next() {
        if arg == "--config" {
            return it.next().cloned();
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            return Some(path.to_string());
        }
    }
    None
}

fn given_flags(argv: &[String]) -> Vec<String> {
    argv.iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect()
}

fn render_value(key: &str, value: &Value) -> Result<Option<String>, CliError> {
    let bad = || CliError::Validation(format!("config key `{key}` has an unsupported value"));
    Ok(match value {
        Value::String(s) => Some(s.clone()),
        Value::Integer(i) => Some(i.to_string()),
        Value::Float(f) => Some(f.to_string()),
        Value::Boolean(_) => None,
        Value::Array(items) => {
            let parts: Result<Vec<String>, CliError> = items
                .iter()
                .map(|v| match v {
                    Value::Integer(i) => Ok(i.to_string()),
                    Value::String(s) => Ok(s.clone()),
                    _ => Err(bad()),
                })
                .collect();
            Some(parts?.join(" "))
        }
        _ => return Err(bad()),
    })
}

/// Returns `argv` extended with the values from the `--config` file, if any.
pub fn merge_config(argv: Vec<String>, cli: &Command) -> Result<Vec<String>, CliError> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::Validation(format!("cannot read config `{path}`: {e}")))?;
    let table: Table = text
        .parse()
        .map_err(|e| CliError::Validation(format!("config `{path}` is not valid TOML: {e}")))?;

    let Some(sub) = argv
        .iter()
        .skip(1)
        .find_map(|a| cli.find_subcommand(a).filter(|_| !a.starts_with('-')))
    else {
        return Ok(argv);
    };
    let globals: Vec<String> = cli
        .get_arguments()
        .filter_map(|a| a.get_long().map(str::to_string))
        .collect();
    let accepts = |key: &str| {
        key != "config"
            && (globals.iter().any(|g| g == key) || sub.get_arguments().any(|a| a.get_long() == Some(key)))
    };
    let known_anywhere = |key: &str| {
        accepts(key)
            || cli
                .get_subcommands()
                .any(|s| s.get_arguments().any(|a| a.get_long() == Some(key)))
    };

    let mut chosen: BTreeMap<String, Value> = BTreeMap::new();
    for (key, value) in &table {
        match value {
            Value::Table(section) => {
                if cli.find_subcommand(key).is_none() {
                    return Err(CliError::Validation(format!("config section `[{key}]` is not a subcommand")));
                }
                if key != sub.get_name() {
                    continue;
                }
                for (k, v) in section {
                    if !accepts(k) {
                        return Err(CliError::Validation(format!("config key `{key}.{k}` is not a flag of `{key}`")));
                    }
                    chosen.insert(k.clone(), v.clone());
                }
            }
            _ if !known_anywhere(key) => {
                return Err(CliError::Validation(format!("config key `{key}` is not a known flag")));
            }
            _ if accepts(key) => {
                chosen.entry(key.clone()).or_insert_with(|| value.clone());
            }
            _ => {}
        }
    }

    let given = given_flags(&argv);
    let mut out = argv;
    for (key, value) in chosen {
        if given.contains(&key) {
            continue;
        }
        match (render_value(&key, &value)?, &value) {
            (Some(v), _) => {
                out.push(format!("--{key}"));
                out.push(v);
            }
            (None, Value::Boolean(true)) => out.push(format!("--{key}")),
            (None, _) => {}
        }
    }
    Ok(out)
}
