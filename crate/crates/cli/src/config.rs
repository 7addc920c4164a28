//! `--config PATH` support: a plain `key = value` file whose entries are
//! spliced in front of the command-line flags, so later flags override them.

use std::ffi::OsString;
use std::fs;

use clap::CommandFactory;

use crate::args::Cli;

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// underscores in keys are accepted in place of dashes.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() {
            return Err(format!("config line {}: empty key", lineno + 1));
        }
        entries.push((key, value.trim().to_string()));
    }
    Ok(entries)
}

fn take_config_path(args: &mut Vec<OsString>) -> Result<Option<OsString>, String> {
    let mut path = None;
    let mut i = 1;
    while i < args.len() {
        let arg = args[i].to_string_lossy().into_owned();
        if arg == "--" {
            break;
        }
        if arg == "--config" {
            if i + 1 >= args.len() {
                return Err("--config requires a path".into());
            }
            path = Some(args.remove(i + 1));
            args.remove(i);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(OsString::from(p));
            args.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(path)
}

/// Returns `args` with the config file entries inserted right after the
/// subcommand name. Keys that the chosen subcommand does not take are skipped
/// when another subcommand takes them, so one file can serve several commands.
pub fn expand(mut args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = take_config_path(&mut args)? else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config {}: {e}", path.to_string_lossy()))?;
    let entries = parse(&text)?;

    let Some(pos) = args
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|p| p + 1)
    else {
        return Ok(args);
    };
    let cmd = Cli::command();
    let name = args[pos].to_string_lossy().into_owned();
    let Some(sub) = cmd.find_subcommand(&name) else {
        return Ok(args);
    };
    let takes = |c: &clap::Command, key: &str| c.get_arguments().any(|a| a.get_long() == Some(key));

    let mut injected = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            return Err("config files cannot include other config files".into());
        }
        if takes(sub, &key) {
            injected.push(OsString::from(format!("--{key}={value}")));
        } else if !cmd.get_subcommands().any(|c| takes(c, &key)) {
            return Err(format!("unknown config key `{key}`"));
        }
    }
    args.splice(pos + 1..pos + 1, injected);
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parse_skips_comments_and_normalises_keys() {
        let e = parse("# header\n\nb = 2\nmax_depth=9  # inline\n").unwrap();
        assert_eq!(e, vec![("b".into(), "2".into()), ("max-depth".into(), "9".into())]);
        assert!(parse("b 2").is_err());
    }

    #[test]
    fn entries_precede_command_line_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q.cfg");
        fs::write(&path, "b = -1.5\nthreads = 4\nformat = json\n").unwrap();
        let args = os(&["quadzero", "--config", path.to_str().unwrap(), "radius", "--b", "2"]);
        let out = expand(args).unwrap();
        // threads and format belong to other subcommands and are skipped
        assert_eq!(out, os(&["quadzero", "radius", "--b=-1.5", "--b", "2"]));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q.cfg");
        fs::write(&path, "bogus = 1\n").unwrap();
        let arg = format!("--config={}", path.display());
        assert!(expand(os(&["quadzero", "radius", &arg])).is_err());
    }
}
