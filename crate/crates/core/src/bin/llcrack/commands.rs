use crate::config::{ConfigError, Format, RunConfig};
use crate::{verify, Failure};
use llcrack::bimaterial::{derive_constants, BimaterialConstants, MaterialPair};
use llcrack::ll_constants::{asymptotic_constants, exact_constants, sweep, sweep_csv, CONSTANT_NAMES};
use llcrack::sif_perturbation::{perturb_front, FrontBaseline, KernelSettings, WeightKernel};
use llcrack::weight_functions::{asymptotic_eval, exact_eval, Expansion, WeightIndex};
use llcrack::wiener_hopf::KernelContext;
use num_complex::Complex64;
use serde_json::{Map, Value};
use std::fmt::Write as _;
use std::io::Write;

pub fn run(command: &str, cfg: &RunConfig) -> Result<(), Failure> {
    match command {
        "constants" => constants(cfg),
        "sweep" => sweep_cmd(cfg),
        "verify" => verify::run(cfg),
        "perturb" => perturb(cfg),
        "weightfn" => weightfn(cfg),
        "kernel" => kernel(cfg),
        other => Err(ConfigError(format!("unknown command `{other}`")).into()),
    }
}

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn emit(cfg: &RunConfig, body: &str) -> Result<(), Failure> {
    match cfg.path("output_path") {
        Some(p) => std::fs::write(p, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

pub fn material(cfg: &RunConfig) -> Result<BimaterialConstants, Failure> {
    let pair = MaterialPair::new(cfg.f64("nu_plus")?, cfg.f64("mu_plus")?, cfg.f64("nu_minus")?, cfg.f64("mu_minus")?)
        .map_err(|e| ConfigError(e.to_string()))?;
    Ok(derive_constants(&pair)?)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

fn json_string(map: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("finite values serialize");
    s.push('\n');
    s
}

fn put(map: &mut Map<String, Value>, key: &str, x: f64) {
    // JSON has no NaN; such entries become null
    map.insert(key.to_string(), serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number));
}

fn constants(cfg: &RunConfig) -> Result<(), Failure> {
    let c = material(cfg)?;
    let ex = exact_constants(&c);
    let asy = asymptotic_constants(c.epsilon, c.nu_composite);
    let mut m = Map::new();
    for (k, v) in [("b", c.b), ("d", c.d), ("e", c.e), ("epsilon", c.epsilon), ("d_star", c.d_star), ("e_star", c.e_star)] {
        put(&mut m, k, v);
    }
    put(&mut m, "nu_composite", c.nu_composite);
    put(&mut m, "eta", c.eta);
    m.insert("swapped".into(), Value::Bool(c.pair.swapped));
    for (n, (x, y)) in CONSTANT_NAMES.iter().zip(ex.as_array().iter().zip(asy.as_array())) {
        if *n == "gamma" {
            put(&mut m, "gamma", x.re);
            put(&mut m, "gamma_asym", y.re);
        } else {
            put(&mut m, &format!("{n}_re"), x.re);
            put(&mut m, &format!("{n}_im"), x.im);
            put(&mut m, &format!("{n}_re_asym"), y.re);
            put(&mut m, &format!("{n}_im_asym"), y.im);
        }
    }
    emit(cfg, &json_string(m))
}

fn sweep_cmd(cfg: &RunConfig) -> Result<(), Failure> {
    let (np, nm) = if cfg.has("nu_both") {
        let v = cfg.f64("nu_both")?;
        (v, v)
    } else {
        (cfg.f64("nu_plus")?, cfg.f64("nu_minus")?)
    };
    let lo = cfg.f64_or("eta_min", -0.9)?;
    let hi = cfg.f64_or("eta_max", 0.9)?;
    let n = cfg.usize_or("eta_steps", 37)?;
    if !(lo > -1.0 && hi < 1.0 && lo <= hi) {
        return Err(ConfigError(format!("eta range [{lo}, {hi}] must lie inside (-1, 1)")).into());
    }
    let records = sweep(np, nm, &linspace(lo, hi, n)).map_err(|e| match e {
        llcrack::error::Error::InvalidMaterial(m) => Failure::Config(ConfigError(m)),
        e => Failure::Compute(e),
    })?;
    match cfg.format_or(Format::Csv)? {
        Format::Csv => emit(cfg, &sweep_csv(&records)),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&records).expect("serializable");
            s.push('\n');
            emit(cfg, &s)
        }
    }
}

fn read_profile(cfg: &RunConfig) -> Result<(Vec<f64>, Vec<f64>), Failure> {
    let path = cfg.path("profile_path").ok_or_else(|| ConfigError("missing required key `profile_path`".into()))?;
    let text = std::fs::read_to_string(&path)
        .map_err(|e| ConfigError(format!("cannot read profile {}: {e}", path.display())))?;
    let (mut x, mut f) = (Vec::new(), Vec::new());
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let parsed: Option<Vec<f64>> = cols.iter().map(|s| s.parse().ok()).collect();
        match parsed.as_deref() {
            Some([a, b]) => {
                x.push(*a);
                f.push(*b);
            }
            // a non-numeric first line is a header
            None if x.is_empty() => continue,
            _ => return Err(ConfigError(format!("profile line {}: expected two numbers", n + 1)).into()),
        }
    }
    Ok((x, f))
}

fn perturb(cfg: &RunConfig) -> Result<(), Failure> {
    let c = material(cfg)?;
    let (x, f) = read_profile(cfg)?;
    let n = f.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(ConfigError(format!("profile has {n} samples; a power of two is required")).into());
    }
    let h = (x[n - 1] - x[0]) / (n - 1) as f64;
    if !(h > 0.0) || x.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0)) {
        return Err(ConfigError("profile x3 values must be uniformly increasing".into()).into());
    }
    let length = cfg.f64_or("length", h * n as f64)?;
    let baseline = FrontBaseline {
        k: Complex64::new(cfg.f64("K_re")?, cfg.f64_or("K_im", 0.0)?),
        k_iii: cfg.f64_or("K3", 0.0)?,
        dk_da: Complex64::new(cfg.f64_or("dKda_re", 0.0)?, cfg.f64_or("dKda_im", 0.0)?),
        dkiii_da: cfg.f64_or("dK3da", 0.0)?,
        delta: cfg.f64_or("delta", 1.0)?,
    };
    let out = perturb_front(&f, length, &baseline, &exact_constants(&c), &c)?;
    let mut s = String::from("x3,dK1,dK2,dK3\n");
    for i in 0..n {
        let _ = writeln!(s, "{},{},{},{}", num(x[i]), num(out.dk[i].re), num(out.dk[i].im), num(out.dk_iii[i]));
    }
    emit(cfg, &s)
}

const COMPONENTS: [&str; 6] = ["u1", "u2", "u3", "s12", "s22", "s32"];

fn weightfn(cfg: &RunConfig) -> Result<(), Failure> {
    let c = material(cfg)?;
    let ctx = KernelContext::new(&c)?;
    let s = cfg.f64_or("sign_lambda", 1.0)?;
    if s != 1.0 && s != -1.0 {
        return Err(ConfigError("`sign_lambda` must be 1 or -1".into()).into());
    }
    let grid = linspace(cfg.f64_or("xi_min", 0.1)?, cfg.f64_or("xi_max", 10.0)?, cfg.usize_or("xi_steps", 100)?);
    let js: Vec<usize> = match cfg.index("j")? {
        Some(j) => vec![j],
        None => vec![1, 2, 3],
    };
    let mut out = String::from("j,xi");
    for suffix in ["", "_asym"] {
        for n in COMPONENTS {
            let _ = write!(out, ",{n}_re{suffix},{n}_im{suffix}");
        }
    }
    out.push('\n');
    for &j in &js {
        let w = WeightIndex::from_number(j)?;
        for &xi in &grid {
            let ex = exact_eval(w, xi, s, &ctx)?.as_array();
            // the expansion is for large positive ξ only
            let asy = if xi > 0.0 {
                asymptotic_eval(w, xi, s, &ctx, Expansion::Corrected).as_array()
            } else {
                [Complex64::new(f64::NAN, f64::NAN); 6]
            };
            let _ = write!(out, "{j},{}", num(xi));
            for v in ex.iter().chain(&asy) {
                let _ = write!(out, ",{},{}", num(v.re), num(v.im));
            }
            out.push('\n');
        }
    }
    emit(cfg, &out)
}

fn kernel(cfg: &RunConfig) -> Result<(), Failure> {
    let c = material(cfg)?;
    let ctx = KernelContext::new(&c)?;
    let k = cfg.index("k")?.ok_or_else(|| ConfigError("missing required key `k`".into()))?;
    let p = cfg.index("p")?.ok_or_else(|| ConfigError("missing required key `p`".into()))?;
    let x = cfg.f64_or("x", -1.0)?;
    if x >= 0.0 {
        return Err(ConfigError("`x` must be negative".into()).into());
    }
    let ts = linspace(cfg.f64_or("t_min", -2.0)?, cfg.f64_or("t_max", 2.0)?, cfg.usize_or("t_steps", 9)?);
    let wk = WeightKernel::new(&ctx, &KernelSettings::default())?;
    let mut out = String::from("x,t,h_re,h_im\n");
    for t in ts {
        let h = wk.h(k - 1, p - 1, x, t)?;
        let _ = writeln!(out, "{},{},{},{}", num(x), num(t), num(h.re), num(h.im));
    }
    emit(cfg, &out)
}
