use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

/// Every recognised key with its help line. Each one is also a `--key` flag.
pub const KEYS: &[(&str, &str)] = &[
    ("nu_plus", "Poisson ratio of the upper half-space"),
    ("mu_plus", "shear modulus of the upper half-space"),
    ("nu_minus", "Poisson ratio of the lower half-space"),
    ("mu_minus", "shear modulus of the lower half-space"),
    ("nu_both", "sweep: common Poisson ratio (overrides nu_plus/nu_minus)"),
    ("eta_min", "sweep: smallest contrast eta"),
    ("eta_max", "sweep: largest contrast eta"),
    ("eta_steps", "sweep: number of eta points"),
    ("xi_min", "weightfn: first xi"),
    ("xi_max", "weightfn: last xi"),
    ("xi_steps", "weightfn: number of xi points"),
    ("sign_lambda", "weightfn: sign of lambda (+1 or -1)"),
    ("j", "weightfn: weight function 1, 2 or 3 (default all)"),
    ("k", "kernel: SIF index 1..3"),
    ("p", "kernel: force index 1..3"),
    ("x", "kernel: distance behind the front (negative)"),
    ("t_min", "kernel: first offset along the front"),
    ("t_max", "kernel: last offset along the front"),
    ("t_steps", "kernel: number of offsets"),
    ("profile_path", "perturb: two-column file x3, delta_phi"),
    ("length", "perturb: period of the profile (default N times the spacing)"),
    ("K_re", "perturb: Re K"),
    ("K_im", "perturb: Im K"),
    ("K3", "perturb: K_III"),
    ("dKda_re", "perturb: Re dK/da"),
    ("dKda_im", "perturb: Im dK/da"),
    ("dK3da", "perturb: dK_III/da"),
    ("delta", "perturb: amplitude multiplying the profile"),
    ("tol_epsilon", "verify: epsilon formulas agreement"),
    ("tol_quarter_pi", "verify: pi/4 identity"),
    ("tol_factorization", "verify: factorization residual"),
    ("tol_wh_equation", "verify: weight-function equation residual"),
    ("tol_conditions", "verify: analyticity conditions"),
    ("tol_coupling", "verify: A B = I"),
    ("tol_identities", "verify: closed-form identities and eps = 0 limits"),
    ("tol_inversion", "verify: relative gamma inversion error"),
    ("output_path", "write output here instead of stdout"),
    ("format", "csv or json"),
];

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn known(key: &str) -> bool {
    KEYS.iter().any(|(k, _)| *k == key)
}

fn unquote(v: &str) -> &str {
    let v = v.trim();
    for q in ['"', '\''] {
        if v.len() >= 2 && v.starts_with(q) && v.ends_with(q) {
            return &v[1..v.len() - 1];
        }
    }
    v
}

impl RunConfig {
    pub fn parse_str(text: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(ConfigError(format!("line {}: expected `key = value`", n + 1)));
            };
            let k = k.trim();
            if !known(k) {
                return Err(ConfigError(format!("line {}: unknown key `{k}`", n + 1)));
            }
            values.insert(k.to_string(), unquote(v).to_string());
        }
        Ok(RunConfig { values })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    /// Flags win over file values.
    pub fn set(&mut self, key: &str, value: &str) {
        self.values.insert(key.to_string(), unquote(value).to_string());
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn f64(&self, key: &str) -> Result<f64, ConfigError> {
        let v = self.values.get(key).ok_or_else(|| ConfigError(format!("missing required key `{key}`")))?;
        let x: f64 = v.parse().map_err(|_| ConfigError(format!("`{key}`: `{v}` is not a number")))?;
        if !x.is_finite() {
            return Err(ConfigError(format!("`{key}` must be finite")));
        }
        Ok(x)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        if self.has(key) {
            self.f64(key)
        } else {
            Ok(default)
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, ConfigError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| ConfigError(format!("`{key}`: `{v}` is not a non-negative integer"))),
        }
    }

    pub fn index(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        if !self.has(key) {
            return Ok(None);
        }
        match self.usize_or(key, 0)? {
            i @ 1..=3 => Ok(Some(i)),
            i => Err(ConfigError(format!("`{key}` must be 1, 2 or 3, got {i}"))),
        }
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.values.get(key).map(PathBuf::from)
    }

    pub fn format_or(&self, default: Format) -> Result<Format, ConfigError> {
        match self.values.get("format").map(String::as_str) {
            None => Ok(default),
            Some("csv") => Ok(Format::Csv),
            Some("json") => Ok(Format::Json),
            Some(v) => Err(ConfigError(format!("`format` must be csv or json, got `{v}`"))),
        }
    }
}
