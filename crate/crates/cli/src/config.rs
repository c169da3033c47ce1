//! Optional `key=value` configuration file. Keys mirror the long flags:
//! `model`, `r`, `s`, `kmax`, `bounds`, `eval`, `format` (`json` or
//! `text`), `trace`. Blank lines and `#` comments are ignored.

use std::collections::BTreeMap;
use std::path::Path;

use clap::ValueEnum;
use qlie_core::{Error, Result};

use crate::{Cli, ModelName};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub model: ModelName,
    pub r: Option<String>,
    pub s: Option<String>,
    pub kmax: Option<usize>,
    pub bounds: Option<String>,
    pub eval: Option<String>,
    pub json: bool,
    pub trace: bool,
}

fn bad(line: usize, message: String) -> Error {
    Error::Parse {
        position: line,
        message,
    }
}

pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(0, format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad(i + 1, format!("config line {} is not key=value", i + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(bad(0, format!("config `{key}` expects true or false"))),
    }
}

impl Settings {
    /// Config file values first, then command-line flags on top.
    pub fn resolve(cli: &Cli) -> Result<Settings> {
        let file = match &cli.config {
            Some(p) => read_config(p)?,
            None => BTreeMap::new(),
        };
        let mut s = Settings {
            model: ModelName::Uqrs,
            r: None,
            s: None,
            kmax: None,
            bounds: None,
            eval: None,
            json: false,
            trace: false,
        };
        for (k, v) in &file {
            match k.as_str() {
                "model" => {
                    s.model = ModelName::from_str(v, false)
                        .map_err(|_| bad(0, format!("unknown model `{v}`")))?
                }
                "r" => s.r = Some(v.clone()),
                "s" => s.s = Some(v.clone()),
                "kmax" => {
                    s.kmax = Some(
                        v.parse()
                            .map_err(|_| bad(0, format!("kmax `{v}` is not an integer")))?,
                    )
                }
                "bounds" => s.bounds = Some(v.clone()),
                "eval" => s.eval = Some(v.clone()),
                "format" => {
                    s.json = match v.as_str() {
                        "json" => true,
                        "text" => false,
                        _ => return Err(bad(0, format!("unknown format `{v}`"))),
                    }
                }
                "trace" => s.trace = parse_bool(k, v)?,
                other => return Err(bad(0, format!("unknown config key `{other}`"))),
            }
        }
        if let Some(m) = cli.model {
            s.model = m;
        }
        s.r = cli.r.clone().or(s.r);
        s.s = cli.s.clone().or(s.s);
        s.kmax = cli.kmax.or(s.kmax);
        s.bounds = cli.bounds.clone().or(s.bounds);
        s.eval = cli.eval.clone().or(s.eval);
        if cli.json {
            s.json = true;
        }
        if cli.text {
            s.json = false;
        }
        s.trace |= cli.trace;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("qlie-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("qlie.conf");
        std::fs::write(&path, "# defaults\nmodel = uq_r0\nkmax=3\nformat=json\n").unwrap();
        let p = path.to_str().unwrap();

        let cli = Cli::parse_from(["qlie", "--config", p, "normalize", "A"]);
        let s = Settings::resolve(&cli).unwrap();
        assert_eq!((s.model, s.kmax, s.json), (ModelName::UqR0, Some(3), true));

        let cli = Cli::parse_from([
            "qlie",
            "--config",
            p,
            "--model",
            "uq_0s",
            "--kmax",
            "5",
            "--text",
            "normalize",
            "A",
        ]);
        let s = Settings::resolve(&cli).unwrap();
        assert_eq!((s.model, s.kmax, s.json), (ModelName::Uq0s, Some(5), false));
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_config("model uqrs").is_err());
        assert_eq!(parse_config("a=1 # note\n\n").unwrap()["a"], "1");
    }
}
