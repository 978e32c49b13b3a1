//! Batch driver behind the `jkon` binary: evaluate any exposed operation on
//! a parameter/point grid, run the verification suites, and emit CSV or JSON
//! tables.
//!
//! Configuration comes from a flat key=value file plus `--set key=value`
//! overrides; overrides win. Identical configurations produce byte-identical
//! output files. Grid rows that hit a domain error are reported in their
//! status column instead of aborting the batch.

use crate::error::{Error, Result};
use crate::jkml::{jkml_eval, jkml_tail_bound, JkmlArgs};
use crate::jkpoly::{biorthogonality_matrix, jacobi_l2_norm, jk_poly, q_poly, JkPolyForm};
use crate::params::{ParamSet, TruncationPolicy};
use crate::quadrature::{gauss_jacobi_rule, gauss_laguerre_rule};
use crate::special::{
    bessel_poly, gamma_fn, jacobi_poly, konhauser_y, konhauser_z, laguerre_poly, JacobiForm,
};
use crate::verify::run_suites;
use crate::xi::{laplace_jkml_closed, xi_power_image, XiSpec};
use serde::Serialize;
use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Everything one batch run needs. Built from a config file with flag
/// overrides applied on top.
#[derive(Debug, Clone, Serialize)]
pub struct JobConfig {
    pub target: String,
    pub alpha: f64,
    pub beta: f64,
    pub kappa: u32,
    pub gamma1: f64,
    pub gamma2: f64,
    pub degree: usize,
    pub form: String,
    pub nmax: usize,
    pub w1: f64,
    pub w2: f64,
    pub mu: f64,
    pub zeta: f64,
    pub bessel_a: f64,
    pub bessel_b: f64,
    pub grid: Vec<(f64, f64)>,
    pub max_s: usize,
    pub max_r: usize,
    pub abs_tol: f64,
    pub tail_window: usize,
    pub quad_nodes: usize,
    pub output_format: OutputFormat,
    pub output_path: Option<String>,
    pub seed: u64,
    pub tolerance_overrides: HashMap<String, f64>,
}

impl Default for JobConfig {
    fn default() -> Self {
        Self {
            target: String::new(),
            alpha: 0.5,
            beta: 0.5,
            kappa: 1,
            gamma1: 0.0,
            gamma2: 1.0,
            degree: 0,
            form: "jac".into(),
            nmax: 3,
            w1: 0.5,
            w2: 0.5,
            mu: 0.5,
            zeta: 0.5,
            bessel_a: 2.0,
            bessel_b: 1.0,
            grid: Vec::new(),
            max_s: 200,
            max_r: 200,
            abs_tol: 1e-14,
            tail_window: 3,
            quad_nodes: 24,
            output_format: OutputFormat::Csv,
            output_path: None,
            seed: 42,
            tolerance_overrides: HashMap::new(),
        }
    }
}

fn parse_grid(value: &str) -> Result<Vec<(f64, f64)>> {
    let mut grid = Vec::new();
    for pair in value.split(';') {
        let pair = pair.trim();
        if pair.is_empty() {
            continue;
        }
        let mut it = pair.split(',');
        let x: f64 = it
            .next()
            .ok_or_else(|| Error::Config(format!("bad grid pair '{pair}'")))?
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad grid number in '{pair}'")))?;
        let y: f64 = it
            .next()
            .unwrap_or("0")
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad grid number in '{pair}'")))?;
        grid.push((x, y));
    }
    Ok(grid)
}

fn parse_range(value: &str) -> Result<Vec<f64>> {
    // start:stop:count, inclusive ends
    let parts: Vec<&str> = value.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("range '{value}' is not start:stop:count")));
    }
    let start: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad range start in '{value}'")))?;
    let stop: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad range stop in '{value}'")))?;
    let count: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad range count in '{value}'")))?;
    if count == 0 {
        return Err(Error::Config("range count must be positive".into()));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

impl JobConfig {
    /// Parse the flat key=value file. Later keys win over earlier ones;
    /// `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::default();
        let mut xrange: Option<Vec<f64>> = None;
        let mut yrange: Option<Vec<f64>> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "xrange" => xrange = Some(parse_range(value)?),
                "yrange" => yrange = Some(parse_range(value)?),
                _ => cfg.set(key, value)?,
            }
        }
        if cfg.grid.is_empty() {
            if let Some(xs) = xrange {
                let ys = yrange.unwrap_or_else(|| vec![0.0]);
                for &x in &xs {
                    for &y in &ys {
                        cfg.grid.push((x, y));
                    }
                }
            }
        }
        Ok(cfg)
    }

    /// Apply one key=value setting; used both by the file parser and by
    /// `--set` flag overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Config(format!("bad value '{what}' for key"));
        match key {
            "target" => self.target = value.to_string(),
            "alpha" => self.alpha = value.parse().map_err(|_| bad(value))?,
            "beta" => self.beta = value.parse().map_err(|_| bad(value))?,
            "kappa" => self.kappa = value.parse().map_err(|_| bad(value))?,
            "gamma1" => self.gamma1 = value.parse().map_err(|_| bad(value))?,
            "gamma2" => self.gamma2 = value.parse().map_err(|_| bad(value))?,
            "n" | "degree" => self.degree = value.parse().map_err(|_| bad(value))?,
            "form" => self.form = value.to_string(),
            "nmax" => self.nmax = value.parse().map_err(|_| bad(value))?,
            "w1" => self.w1 = value.parse().map_err(|_| bad(value))?,
            "w2" => self.w2 = value.parse().map_err(|_| bad(value))?,
            "mu" => self.mu = value.parse().map_err(|_| bad(value))?,
            "zeta" => self.zeta = value.parse().map_err(|_| bad(value))?,
            "bessel_a" => self.bessel_a = value.parse().map_err(|_| bad(value))?,
            "bessel_b" => self.bessel_b = value.parse().map_err(|_| bad(value))?,
            "grid" => self.grid = parse_grid(value)?,
            "max_s" => self.max_s = value.parse().map_err(|_| bad(value))?,
            "max_r" => self.max_r = value.parse().map_err(|_| bad(value))?,
            "abs_tol" => self.abs_tol = value.parse().map_err(|_| bad(value))?,
            "tail_window" => self.tail_window = value.parse().map_err(|_| bad(value))?,
            "quad_nodes" | "nodes" => self.quad_nodes = value.parse().map_err(|_| bad(value))?,
            "format" => {
                self.output_format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(Error::Config(format!("unknown format '{value}'"))),
                }
            }
            "out" => self.output_path = Some(value.to_string()),
            "seed" => self.seed = value.parse().map_err(|_| bad(value))?,
            _ => {
                if let Some(suite) = key.strip_prefix("tol.") {
                    let v: f64 = value.parse().map_err(|_| bad(value))?;
                    self.tolerance_overrides.insert(suite.to_string(), v);
                } else {
                    return Err(Error::Config(format!("unknown config key '{key}'")));
                }
            }
        }
        Ok(())
    }

    pub fn params(&self) -> Result<ParamSet> {
        ParamSet::new(self.alpha, self.beta, self.kappa, self.gamma1, self.gamma2)
    }

    pub fn policy(&self) -> TruncationPolicy {
        TruncationPolicy {
            max_s: self.max_s,
            max_r: self.max_r,
            abs_tol: self.abs_tol,
            tail_window: self.tail_window,
        }
    }

    fn jk_form(&self) -> Result<JkPolyForm> {
        Ok(match self.form.as_str() {
            "jac" => JkPolyForm::ExplicitJac,
            "jac2" => JkPolyForm::ExplicitJac2,
            "jac3" => JkPolyForm::ExplicitJac3,
            "jac4" => JkPolyForm::ExplicitJac4,
            "z" => JkPolyForm::ZForm,
            "kdf" => JkPolyForm::KdfForm,
            "ml" => JkPolyForm::MlForm,
            other => return Err(Error::Config(format!("unknown jk_poly form '{other}'"))),
        })
    }
}

#[derive(Debug, Clone)]
struct Row {
    x: f64,
    y: f64,
    value: Option<f64>,
    abs_error_estimate: f64,
    terms_used: usize,
    status: String,
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Names accepted by `--target`.
pub const TARGETS: [&str; 13] = [
    "gamma",
    "jacobi",
    "laguerre",
    "konhauser_z",
    "konhauser_y",
    "bessel",
    "jk_poly",
    "q_poly",
    "jkml",
    "jkml_tail_bound",
    "xi_power_image",
    "laplace_jkml",
    "biorthogonality_matrix",
];

fn evaluate_point(cfg: &JobConfig, x: f64, y: f64) -> Result<(f64, f64, usize)> {
    let policy = cfg.policy();
    match cfg.target.as_str() {
        "gamma" => Ok((gamma_fn(x)?, 0.0, 1)),
        "jacobi" => Ok((
            jacobi_poly(cfg.degree, cfg.alpha, cfg.beta, x, JacobiForm::F1)?,
            0.0,
            cfg.degree + 1,
        )),
        "laguerre" => Ok((laguerre_poly(cfg.degree, cfg.alpha, x), 0.0, cfg.degree + 1)),
        "konhauser_z" => Ok((
            konhauser_z(cfg.degree, cfg.beta, cfg.kappa, x),
            0.0,
            cfg.degree + 1,
        )),
        "konhauser_y" => Ok((
            konhauser_y(cfg.degree, cfg.beta, cfg.kappa, x),
            0.0,
            cfg.degree + 1,
        )),
        "bessel" => Ok((
            bessel_poly(cfg.degree, cfg.bessel_a, cfg.bessel_b, x)?,
            0.0,
            cfg.degree + 1,
        )),
        "jk_poly" => {
            let p = cfg.params()?;
            Ok((
                jk_poly(cfg.degree, &p, x, y, cfg.jk_form()?)?,
                0.0,
                (cfg.degree + 1) * (cfg.degree + 2) / 2,
            ))
        }
        "q_poly" => {
            let p = cfg.params()?;
            Ok((q_poly(cfg.degree, &p, x, y)?, 0.0, cfg.degree + 1))
        }
        "jkml" => {
            let args = JkmlArgs::new(cfg.alpha, cfg.beta, cfg.kappa, cfg.gamma1, cfg.gamma2, x, y)?;
            let r = jkml_eval(&args, &policy)?;
            if !r.converged {
                return Err(Error::NonConvergence {
                    terms: r.terms_used,
                    last_block: r.abs_error_estimate,
                });
            }
            Ok((r.value, r.abs_error_estimate, r.terms_used))
        }
        "jkml_tail_bound" => {
            let args = JkmlArgs::new(cfg.alpha, cfg.beta, cfg.kappa, cfg.gamma1, cfg.gamma2, x, y)?;
            let b = jkml_tail_bound(&args, cfg.max_s, cfg.max_r)?;
            Ok((b, 0.0, 0))
        }
        "xi_power_image" => {
            let spec = XiSpec::new(cfg.params()?, cfg.w1, cfg.w2, 0.0, 0.0)?;
            Ok((
                xi_power_image(&spec, cfg.mu, cfg.zeta, x, y, &policy)?,
                0.0,
                0,
            ))
        }
        "laplace_jkml" => {
            let p = cfg.params()?;
            Ok((laplace_jkml_closed(&p, cfg.w1, cfg.w2, x, y)?, 0.0, 0))
        }
        other => Err(Error::UnknownTarget(other.to_string())),
    }
}

#[derive(Serialize)]
struct Meta<'a> {
    version: &'static str,
    command: &'a str,
    config: &'a JobConfig,
}

fn emit<W: Write + ?Sized>(
    w: &mut W,
    cfg: &JobConfig,
    command: &str,
    header: &[&str],
    rows: Vec<Vec<String>>,
) -> Result<()> {
    match cfg.output_format {
        OutputFormat::Csv => {
            writeln!(w, "{}", header.join(","))?;
            for row in rows {
                writeln!(w, "{}", row.join(","))?;
            }
        }
        OutputFormat::Json => {
            let rows_json: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut obj = serde_json::Map::new();
                    for (k, v) in header.iter().zip(r) {
                        // numbers stay numbers where they parse
                        let val = v
                            .parse::<f64>()
                            .ok()
                            .and_then(serde_json::Number::from_f64)
                            .map(serde_json::Value::Number)
                            .unwrap_or_else(|| serde_json::Value::String(v.clone()));
                        obj.insert((*k).to_string(), val);
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            let doc = serde_json::json!({
                "meta": Meta { version: env!("CARGO_PKG_VERSION"), command, config: cfg },
                "rows": rows_json,
            });
            writeln!(w, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
        }
    }
    Ok(())
}

fn with_output<F: FnOnce(&mut dyn Write) -> Result<()>>(cfg: &JobConfig, body: F) -> Result<()> {
    match &cfg.output_path {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            let mut buf = std::io::BufWriter::new(file);
            body(&mut buf)?;
            buf.flush()?;
            Ok(())
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)
        }
    }
}

/// `jkon eval` / `jkon table`: one row per grid point (or matrix entry),
/// deterministic ordering, domain errors flagged per row.
pub fn run_eval(cfg: &JobConfig, command: &str) -> i32 {
    if !TARGETS.contains(&cfg.target.as_str()) {
        eprintln!("unknown target: {}", cfg.target);
        return EXIT_USAGE;
    }
    if cfg.target == "biorthogonality_matrix" {
        return run_matrix_table(cfg, command);
    }
    if cfg.grid.is_empty() {
        eprintln!("eval needs a nonempty grid (grid=... or xrange=/yrange=)");
        return EXIT_USAGE;
    }
    let mut rows = Vec::new();
    for &(x, y) in &cfg.grid {
        let row = match evaluate_point(cfg, x, y) {
            Ok((v, e, t)) => Row {
                x,
                y,
                value: Some(v),
                abs_error_estimate: e,
                terms_used: t,
                status: "ok".into(),
            },
            Err(Error::UnknownTarget(t)) => {
                eprintln!("unknown target: {t}");
                return EXIT_USAGE;
            }
            Err(e) => Row {
                x,
                y,
                value: None,
                abs_error_estimate: 0.0,
                terms_used: 0,
                status: format!("error: {e}").replace(',', ";"),
            },
        };
        rows.push(row);
    }
    let header = ["x", "y", "value", "abs_error_estimate", "terms_used", "status"];
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                fmt17(r.x),
                fmt17(r.y),
                r.value.map(fmt17).unwrap_or_default(),
                fmt17(r.abs_error_estimate),
                r.terms_used.to_string(),
                r.status.clone(),
            ]
        })
        .collect();
    match with_output(cfg, |w| emit(w, cfg, command, &header, table)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("i/o failure: {e}");
            EXIT_IO
        }
    }
}

fn run_matrix_table(cfg: &JobConfig, command: &str) -> i32 {
    let inner = || -> Result<Vec<Vec<String>>> {
        let p = cfg.params()?;
        let rx = gauss_jacobi_rule(cfg.nmax + 2, cfg.alpha, cfg.beta)?;
        let ny = (cfg.kappa as usize * cfg.nmax + cfg.nmax + 1).div_ceil(2) + 1;
        let ry = gauss_laguerre_rule(ny, cfg.beta)?;
        let m = biorthogonality_matrix(cfg.nmax, &p, &rx, &ry)?;
        let mut rows = Vec::new();
        for n in 0..=cfg.nmax {
            for mm in 0..=cfg.nmax {
                let expected = if n == mm {
                    jacobi_l2_norm(n, cfg.alpha, cfg.beta)?
                } else {
                    0.0
                };
                rows.push(vec![
                    n.to_string(),
                    mm.to_string(),
                    fmt17(m[n][mm]),
                    fmt17(expected),
                    "ok".into(),
                ]);
            }
        }
        Ok(rows)
    };
    match inner() {
        Ok(rows) => {
            let header = ["n", "m", "value", "expected_diagonal", "status"];
            match with_output(cfg, |w| emit(w, cfg, command, &header, rows)) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("i/o failure: {e}");
                    EXIT_IO
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// `jkon verify`: run the certification suites and report one line each.
/// Exit 0 only when every suite passes at its tolerance.
pub fn run_verify(cfg: &JobConfig, suite: Option<&str>) -> i32 {
    if let Some(name) = suite {
        if !crate::verify::SUITE_NAMES.contains(&name) {
            eprintln!(
                "unknown suite '{name}'; known suites: {}",
                crate::verify::SUITE_NAMES.join(", ")
            );
            return EXIT_USAGE;
        }
    }
    let reports = match run_suites(cfg.seed, &cfg.tolerance_overrides, suite) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verification run failed to execute: {e}");
            return EXIT_IO;
        }
    };
    let mut all_pass = true;
    for r in &reports {
        println!("{}", r.line());
        println!("    {}", r.detail);
        all_pass &= r.pass;
    }
    if let Some(path) = &cfg.output_path {
        #[derive(Serialize)]
        struct ReportRow<'a> {
            name: &'a str,
            max_dev: f64,
            tol: f64,
            pass: bool,
            detail: &'a str,
        }
        let doc = serde_json::json!({
            "meta": { "version": env!("CARGO_PKG_VERSION"), "seed": cfg.seed },
            "suites": reports.iter().map(|r| ReportRow {
                name: r.name, max_dev: r.max_dev, tol: r.tol, pass: r.pass, detail: &r.detail
            }).collect::<Vec<_>>(),
        });
        if let Err(e) = std::fs::write(path, serde_json::to_string_pretty(&doc).unwrap()) {
            eprintln!("i/o failure: {e}");
            return EXIT_IO;
        }
    }
    if all_pass {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_roundtrip_and_overrides() {
        let dir = std::env::temp_dir().join("jkon_cfg_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("a.conf");
        std::fs::write(
            &path,
            "target = jkml\nalpha=1.5\nbeta = 0.75\nkappa=2\ngamma1=0.8\ngamma2=1.2\n\
             grid = 0.3,0.7; 0.1,0.2\ntol.ml_bridge = 1e-30\n# comment\n",
        )
        .unwrap();
        let mut cfg = JobConfig::from_file(&path).unwrap();
        assert_eq!(cfg.target, "jkml");
        assert_eq!(cfg.grid.len(), 2);
        assert_eq!(cfg.tolerance_overrides["ml_bridge"], 1e-30);
        cfg.set("alpha", "2.0").unwrap();
        assert_eq!(cfg.alpha, 2.0);
        assert!(cfg.set("no_such_key", "1").is_err());
    }

    #[test]
    fn range_grid_outer_product() {
        let dir = std::env::temp_dir().join("jkon_cfg_test2");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("b.conf");
        std::fs::write(&path, "target=gamma\nxrange=1:3:3\nyrange=0:1:2\n").unwrap();
        let cfg = JobConfig::from_file(&path).unwrap();
        assert_eq!(cfg.grid.len(), 6);
        assert_eq!(cfg.grid[0], (1.0, 0.0));
        assert_eq!(cfg.grid[5], (3.0, 1.0));
    }

    #[test]
    fn eval_rows_flag_domain_errors() {
        let mut cfg = JobConfig {
            target: "gamma".into(),
            grid: vec![(5.0, 0.0), (-3.0, 0.0)],
            ..Default::default()
        };
        let dir = std::env::temp_dir().join("jkon_cfg_test3");
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("rows.csv");
        cfg.output_path = Some(out.to_string_lossy().into_owned());
        assert_eq!(run_eval(&cfg, "eval"), EXIT_OK);
        let text = std::fs::read_to_string(&out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("x,y,value"));
        let v: f64 = lines[1].split(',').nth(2).unwrap().parse().unwrap();
        assert!((v - 24.0).abs() < 1e-12, "Gamma(5) row was {v}");
        assert!(lines[2].contains("error: gamma pole"));
    }

    #[test]
    fn unknown_target_is_usage_error() {
        let cfg = JobConfig {
            target: "nope".into(),
            grid: vec![(1.0, 1.0)],
            ..Default::default()
        };
        assert_eq!(run_eval(&cfg, "eval"), EXIT_USAGE);
    }

    #[test]
    fn json_output_has_meta_and_rows() {
        let dir = std::env::temp_dir().join("jkon_cfg_test5");
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("rows.json");
        let cfg = JobConfig {
            target: "laguerre".into(),
            degree: 2,
            alpha: 0.0,
            grid: vec![(3.0, 0.0)],
            output_format: OutputFormat::Json,
            output_path: Some(out.to_string_lossy().into_owned()),
            ..Default::default()
        };
        assert_eq!(run_eval(&cfg, "eval"), EXIT_OK);
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(doc["meta"]["config"]["target"], "laguerre");
        // L_2^0(3) = 1 - 2*3 + 9/2 = -0.5
        let v = doc["rows"][0]["value"].as_f64().unwrap();
        assert!((v + 0.5).abs() < 1e-13);
        assert_eq!(doc["rows"][0]["status"], "ok");
    }

    #[test]
    fn deterministic_output_bytes() {
        let dir = std::env::temp_dir().join("jkon_cfg_test4");
        std::fs::create_dir_all(&dir).unwrap();
        let mut cfg = JobConfig {
            target: "jkml".into(),
            alpha: 1.5,
            beta: 0.75,
            kappa: 2,
            gamma1: 0.8,
            gamma2: 1.2,
            grid: vec![(0.3, 0.7), (0.1, 0.4)],
            ..Default::default()
        };
        let out1 = dir.join("one.csv");
        let out2 = dir.join("two.csv");
        cfg.output_path = Some(out1.to_string_lossy().into_owned());
        assert_eq!(run_eval(&cfg, "eval"), EXIT_OK);
        cfg.output_path = Some(out2.to_string_lossy().into_owned());
        assert_eq!(run_eval(&cfg, "eval"), EXIT_OK);
        assert_eq!(
            std::fs::read(&out1).unwrap(),
            std::fs::read(&out2).unwrap()
        );
    }
}
