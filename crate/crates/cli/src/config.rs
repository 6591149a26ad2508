//! Flat `key = value` config files, merged into argv before clap sees it.
//!
//! Config entries are spliced in directly after the subcommand, so any flag
//! given on the command line comes later and overrides them.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use clap::Command;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("config line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("config key `{key}` is not an option of `{command}`")]
    UnknownKey { key: String, command: String },
    #[error("--config needs a path")]
    MissingPath,
}

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(ConfigError::Syntax { line: i + 1 });
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

/// Removes `--config PATH` from argv and splices the file's entries in.
pub fn merge_config(cmd: &Command, args: Vec<OsString>) -> Result<Vec<OsString>, ConfigError> {
    let mut rest = Vec::with_capacity(args.len());
    let mut config = None;
    let mut iter = args.into_iter();
    while let Some(a) = iter.next() {
        match a.to_str() {
            Some("--config") => config = Some(iter.next().ok_or(ConfigError::MissingPath)?),
            Some(s) if s.starts_with("--config=") => config = Some(OsString::from(&s["--config=".len()..])),
            _ => rest.push(a),
        }
    }
    let Some(path) = config else {
        return Ok(rest);
    };
    let mut entries = read_config(Path::new(&path))?;

    // Position just past the subcommand path, taking `command` from the file
    // when argv names none.
    let mut at = 1;
    let mut current = cmd.clone();
    let mut names = Vec::new();
    loop {
        let next = rest.get(at).and_then(|a| a.to_str()).map(str::to_string);
        match next.and_then(|n| current.find_subcommand(&n).cloned()) {
            Some(sub) => {
                names.push(sub.get_name().to_string());
                current = sub;
                at += 1;
            }
            None => break,
        }
    }
    if names.is_empty() {
        if let Some(idx) = entries.iter().position(|(k, _)| k == "command") {
            let (_, value) = entries.remove(idx);
            for word in value.split_whitespace() {
                match current.find_subcommand(word).cloned() {
                    Some(sub) => {
                        rest.insert(at, OsString::from(word));
                        names.push(word.to_string());
                        current = sub;
                        at += 1;
                    }
                    None => {
                        return Err(ConfigError::UnknownKey {
                            key: format!("command = {value}"),
                            command: "mollify".into(),
                        })
                    }
                }
            }
        }
    }
    entries.retain(|(k, _)| k != "command");

    let mut spliced = Vec::new();
    for (key, value) in entries {
        let arg = current.get_arguments().find(|a| a.get_long() == Some(key.as_str()));
        let Some(arg) = arg else {
            return Err(ConfigError::UnknownKey {
                key,
                command: names.join(" "),
            });
        };
        if matches!(arg.get_action(), clap::ArgAction::SetTrue) {
            if matches!(value.as_str(), "true" | "1" | "yes") {
                spliced.push(OsString::from(format!("--{key}")));
            }
        } else {
            spliced.push(OsString::from(format!("--{key}={value}")));
        }
    }
    rest.splice(at..at, spliced);
    Ok(rest)
}

/// Lets a later occurrence of a flag replace an earlier one, recursively.
pub fn allow_overrides(cmd: Command) -> Command {
    let names: Vec<String> = cmd.get_subcommands().map(|s| s.get_name().to_string()).collect();
    let mut cmd = cmd.args_override_self(true);
    for name in names {
        cmd = cmd.mut_subcommand(name, allow_overrides);
    }
    cmd
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_flat_pairs() {
        let e = parse_config("# c\nT = 1000\n\ntheta=0.3 # trailing\nno_cache = true\n").unwrap();
        assert_eq!(
            e,
            vec![
                ("T".into(), "1000".into()),
                ("theta".into(), "0.3".into()),
                ("no-cache".into(), "true".into())
            ]
        );
        assert!(matches!(parse_config("T 1000"), Err(ConfigError::Syntax { line: 1 })));
    }

    #[test]
    fn flags_come_after_config_entries() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "command = moments\nT = 500\ntheta = 0.2\n").unwrap();
        let cmd = allow_overrides(crate::args::Cli::command());
        let argv = merge_config(&cmd, os(&["mollify", "--config", path.to_str().unwrap(), "--theta", "0.4"])).unwrap();
        assert_eq!(argv, os(&["mollify", "moments", "--T=500", "--theta=0.2", "--theta", "0.4"]));
        let m = cmd.try_get_matches_from(argv).unwrap();
        let (_, sub) = m.subcommand().unwrap();
        assert_eq!(sub.get_one::<f64>("theta"), Some(&0.4));
    }

    #[test]
    fn unknown_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "theta = 0.2\n").unwrap();
        let cmd = allow_overrides(crate::args::Cli::command());
        let r = merge_config(&cmd, os(&["mollify", "verify-vaughan", "--config", path.to_str().unwrap()]));
        assert!(matches!(r, Err(ConfigError::UnknownKey { .. })));
    }
}
