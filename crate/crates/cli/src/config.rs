//! Resolved run configuration with a key=value serialization that mirrors
//! the command-line flags. A config file provides defaults; explicit flags
//! win. `serialize(parse(text))` is semantically identical to `text`.

use std::collections::BTreeMap;

use smoothness_lab::error::{Error, Result};
use smoothness_lab::numerics::space::{PExp, Regime, WeightedSpace};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub f: String,
    pub r: usize,
    pub delta: f64,
    pub deltas: Vec<f64>,
    pub n: usize,
    pub n_max: usize,
    pub p: String,
    pub alpha: f64,
    pub quad_order: usize,
    pub t_grid: usize,
    pub x_res: usize,
    pub search_degree: usize,
    pub grid: usize,
    pub projection_degree: usize,
    pub seed: u64,
    pub t: f64,
    pub x: f64,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: String::new(),
            f: "const:1".into(),
            r: 1,
            delta: 0.5,
            deltas: vec![0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5],
            n: 1,
            n_max: 16,
            p: "2".into(),
            alpha: 1.0,
            quad_order: 64,
            t_grid: 12,
            x_res: 256,
            search_degree: 32,
            grid: 2048,
            projection_degree: 768,
            seed: 20240101,
            t: 0.5,
            x: 0.0,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn space(&self) -> Result<WeightedSpace> {
        Ok(WeightedSpace::new(PExp::parse(&self.p)?, self.alpha))
    }

    /// Validate (p, alpha) against the regime the command needs; the error
    /// names the violated bound.
    pub fn validate_space(&self) -> Result<WeightedSpace> {
        let space = self.space()?;
        match self.command.as_str() {
            "modulus" | "kfunc" | "verify-equivalence" | "verify-jackson" => {
                space.validate(Regime::DirectInverse)?
            }
            "bestapprox" => space.validate_norm()?,
            _ => {}
        }
        Ok(space)
    }

    /// key=value serialization, one pair per line, keys sorted.
    pub fn to_key_values(&self) -> String {
        let mut map: BTreeMap<&str, String> = BTreeMap::new();
        map.insert("command", self.command.clone());
        map.insert("f", self.f.clone());
        map.insert("r", self.r.to_string());
        map.insert("delta", format!("{:e}", self.delta));
        map.insert(
            "deltas",
            self.deltas
                .iter()
                .map(|d| format!("{d:e}"))
                .collect::<Vec<_>>()
                .join(","),
        );
        map.insert("n", self.n.to_string());
        map.insert("n_max", self.n_max.to_string());
        map.insert("p", self.p.clone());
        map.insert("alpha", format!("{:e}", self.alpha));
        map.insert("quad_order", self.quad_order.to_string());
        map.insert("t_grid", self.t_grid.to_string());
        map.insert("x_res", self.x_res.to_string());
        map.insert("search_degree", self.search_degree.to_string());
        map.insert("grid", self.grid.to_string());
        map.insert("projection_degree", self.projection_degree.to_string());
        map.insert("seed", self.seed.to_string());
        map.insert("t", format!("{:e}", self.t));
        map.insert("x", format!("{:e}", self.x));
        if let Some(out) = &self.out {
            map.insert("out", out.clone());
        }
        let mut s = String::new();
        for (k, v) in map {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        }
        s
    }

    /// Parse key=value text over the defaults.
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        cfg.apply_key_values(text)?;
        Ok(cfg)
    }

    pub fn apply_key_values(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("config line {} is not key=value", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::InvalidArgument(format!("bad {what} value '{value}'"));
        match key {
            "command" => self.command = value.to_string(),
            "f" => self.f = value.to_string(),
            "r" => self.r = value.parse().map_err(|_| bad("r"))?,
            "delta" => self.delta = value.parse().map_err(|_| bad("delta"))?,
            "deltas" => {
                let parsed: std::result::Result<Vec<f64>, _> =
                    value.split(',').map(|v| v.trim().parse()).collect();
                self.deltas = parsed.map_err(|_| bad("deltas"))?;
            }
            "n" => self.n = value.parse().map_err(|_| bad("n"))?,
            "n_max" => self.n_max = value.parse().map_err(|_| bad("n_max"))?,
            "p" => self.p = value.to_string(),
            "alpha" => self.alpha = value.parse().map_err(|_| bad("alpha"))?,
            "quad_order" => self.quad_order = value.parse().map_err(|_| bad("quad_order"))?,
            "t_grid" => self.t_grid = value.parse().map_err(|_| bad("t_grid"))?,
            "x_res" => self.x_res = value.parse().map_err(|_| bad("x_res"))?,
            "search_degree" => {
                self.search_degree = value.parse().map_err(|_| bad("search_degree"))?
            }
            "grid" => self.grid = value.parse().map_err(|_| bad("grid"))?,
            "projection_degree" => {
                self.projection_degree = value.parse().map_err(|_| bad("projection_degree"))?
            }
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "t" => self.t = value.parse().map_err(|_| bad("t"))?,
            "x" => self.x = value.parse().map_err(|_| bad("x"))?,
            "out" => self.out = Some(value.to_string()),
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown config key '{other}'"
                )))
            }
        }
        Ok(())
    }
}
