use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use relvp::equilibria::Equilibrium;
use relvp::spectral::Interaction;

use crate::CliError;

/// Effective key/value configuration: flags over config file over defaults.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    match key.trim() {
        "P" | "p" => "support".to_string(),
        k => k.to_ascii_lowercase().replace('_', "-"),
    }
}

fn unquote(v: &str) -> &str {
    let v = v.trim();
    v.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(v)
}

impl Settings {
    /// Resolves `allowed` keys, each with an optional default.
    pub fn resolve(
        allowed: &[(&str, Option<&str>)],
        config: Option<&Path>,
        flags: Vec<(&str, Option<String>)>,
    ) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (k, d) in allowed {
            if let Some(d) = d {
                values.insert(k.to_string(), d.to_string());
            }
        }
        let known = |k: &str| allowed.iter().any(|(a, _)| *a == k);
        if let Some(path) = config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            for (n, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key = value", path.display(), n + 1)))?;
                let k = normalize(k);
                if !known(&k) {
                    return Err(CliError::Usage(format!("{}:{}: unknown key '{k}'", path.display(), n + 1)));
                }
                values.insert(k, unquote(v).to_string());
            }
        }
        for (k, v) in flags {
            if let Some(v) = v {
                values.insert(k.to_string(), v);
            }
        }
        Ok(Settings { values })
    }

    pub fn insert(&mut self, key: &str, value: impl Display) {
        self.values.insert(key.to_string(), value.to_string());
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &String)> {
        self.values.iter()
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn opt<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("invalid value for {key}: '{v}'"))),
        }
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.opt(key)?.ok_or_else(|| CliError::Usage(format!("missing required setting '{key}'")))
    }

    pub fn positive(&self, key: &str) -> Result<f64, CliError> {
        let x: f64 = self.get(key)?;
        if x > 0.0 && x.is_finite() {
            Ok(x)
        } else {
            Err(CliError::Usage(format!("{key} must be positive, got {x}")))
        }
    }

    pub fn count(&self, key: &str) -> Result<usize, CliError> {
        let n: usize = self.get(key)?;
        if n == 0 {
            return Err(CliError::Usage(format!("{key} must be at least 1")));
        }
        Ok(n)
    }

    pub fn interaction(&self) -> Result<Interaction, CliError> {
        let s: i32 = self.get("sigma")?;
        Interaction::from_sign(s).map_err(|_| CliError::Usage(format!("sigma must be +1 or -1, got {s}")))
    }

    pub fn equilibrium(&self) -> Result<Equilibrium, CliError> {
        let usage = |e: relvp::Error| CliError::Usage(e.to_string());
        match self.raw("equilibrium").unwrap_or("juttner") {
            "juttner" => Equilibrium::juttner(self.positive("theta")?).map_err(usage),
            "compact" => Equilibrium::compact(self.positive("support")?).map_err(usage),
            other => Err(CliError::Usage(format!("unknown equilibrium '{other}' (juttner or compact)"))),
        }
    }
}
