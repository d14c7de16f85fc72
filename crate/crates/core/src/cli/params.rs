use std::collections::BTreeMap;
use std::path::Path;

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};

/// `key=value` arguments of one command, with the accepted keys fixed up
/// front so unknown keys are rejected before any numerics run.
#[derive(Debug, Clone, Default)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn parse(args: &[String], allowed: &[&str]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for arg in args {
            let (k, v) = arg
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{arg}'")))?;
            let k = k.trim();
            if !allowed.contains(&k) {
                return Err(Error::Parse(format!(
                    "unknown parameter '{k}' (accepted: {})",
                    allowed.join(", ")
                )));
            }
            if values.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("parameter '{k}' given twice")));
            }
        }
        Ok(Self { values })
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn f64_opt(&self, key: &str) -> Result<Option<f64>> {
        self.values
            .get(key)
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::Parse(format!("{key} = '{v}' is not a finite number")))
            })
            .transpose()
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        self.f64_opt(key)?
            .ok_or_else(|| Error::Parse(format!("missing parameter {key}=<number>")))
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.f64_opt(key)?.unwrap_or(default))
    }

    pub fn u32_opt(&self, key: &str) -> Result<Option<u32>> {
        self.values
            .get(key)
            .map(|v| {
                v.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("{key} = '{v}' is not a non-negative integer")))
            })
            .transpose()
    }

    pub fn u32(&self, key: &str) -> Result<u32> {
        self.u32_opt(key)?
            .ok_or_else(|| Error::Parse(format!("missing parameter {key}=<integer>")))
    }

    pub fn u32_or(&self, key: &str, default: u32) -> Result<u32> {
        Ok(self.u32_opt(key)?.unwrap_or(default))
    }
}

/// Applies a `key = value` defaults file to `cfg`. Blank lines and `#`
/// comments are ignored; unknown keys are errors.
pub fn apply_config_text(cfg: &mut QuadratureConfig, text: &str, origin: &str) -> Result<()> {
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("{origin}:{}: expected key = value", no + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        let bad = || Error::Parse(format!("{origin}:{}: bad value '{v}' for {k}", no + 1));
        match k {
            "abs_tol" => cfg.abs_tol = v.parse().map_err(|_| bad())?,
            "max_nodes" => cfg.max_nodes = v.parse().map_err(|_| bad())?,
            "rotation_angle" => cfg.rotation_angle = Some(v.parse().map_err(|_| bad())?),
            "truncation_radius" => cfg.truncation_radius = Some(v.parse().map_err(|_| bad())?),
            _ => return Err(Error::Parse(format!("{origin}:{}: unknown key '{k}'", no + 1))),
        }
    }
    Ok(())
}

pub fn load_config_file(cfg: &mut QuadratureConfig, path: &Path) -> Result<()> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", path.display())))?;
    apply_config_text(cfg, &text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_value_parsing() {
        let args: Vec<String> = ["m=3", "x=1.5"].iter().map(|s| s.to_string()).collect();
        let p = Params::parse(&args, &["m", "x", "y"]).unwrap();
        assert_eq!(p.u32("m").unwrap(), 3);
        assert_eq!(p.f64("x").unwrap(), 1.5);
        assert!(p.f64("y").is_err());
        assert_eq!(p.f64_or("y", 2.0).unwrap(), 2.0);
        assert!(Params::parse(&["z=1".into()], &["m"]).is_err());
        assert!(Params::parse(&["m".into()], &["m"]).is_err());
        assert!(Params::parse(&["m=1".into(), "m=2".into()], &["m"]).is_err());
        let p = Params::parse(&["x=nan".into()], &["x"]).unwrap();
        assert!(p.f64("x").is_err());
    }

    #[test]
    fn config_text() {
        let mut c = QuadratureConfig::default();
        apply_config_text(&mut c, "# defaults\nabs_tol = 1e-9\n\nmax_nodes=5000 # cap\n", "t").unwrap();
        assert_eq!(c.abs_tol, 1e-9);
        assert_eq!(c.max_nodes, 5000);
        assert!(apply_config_text(&mut c, "speed = 3", "t").is_err());
        assert!(apply_config_text(&mut c, "abs_tol = fast", "t").is_err());
    }
}
