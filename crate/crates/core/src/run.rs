//! Run configurations, dispatch of the batch commands, and report rendering.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cache::{sha256_hex, Cache};
use crate::centralizer::{centralizer_basis, check_reduction_surjectivity, weyr_pattern};
use crate::characters::{verify_extension, ExtensionMode};
use crate::chartable::FiniteGroup;
use crate::clifford::{clifford_from_table, compare_rings, counts_json, direct_distribution, CountOptions};
use crate::error::{Error, Result};
use crate::group::sl_elements;
use crate::matrix::Mat;
use crate::orbits::enumerate_orbits;
use crate::ring::{Field, FieldSpec, Fq, LocalRing, RingKind};
use crate::splitting::{e12, lift_order_search, verify_power_formula};
use crate::stabilizer::coset_stabilizer;
use crate::weyr::{example_7x7, read_weyr_form, weyr_decompose, WeyrBlock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Weyr,
    Centralizer,
    Stabilizer,
    Orbits,
    CharDegrees,
    ExtensionCheck,
    CountIrreps,
    Compare,
    Splitting,
    Reproduce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Everything that determines a run's report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub p: u32,
    pub f: u32,
    /// Defining polynomial, constant term first; the default modulus when absent.
    pub modulus: Option<Vec<u32>>,
    /// Ring kinds; empty means both.
    pub kinds: Vec<RingKind>,
    pub budget_elements: u64,
    /// Largest splitting field considered for Weyr forms.
    pub max_field_size: u64,
    pub workers: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub samples: usize,
    /// Force the sampled extension check.
    pub sampled: bool,
    /// Direct enumeration instead of Clifford assembly for `count-irreps`.
    pub direct: bool,
    /// Input matrix in the `row;row` text form, or `example7`.
    pub matrix: Option<String>,
    /// Generators for `char-degrees`.
    pub generators: Vec<String>,
    /// Primes overriding the automatic choice in `char-degrees`.
    pub primes: Vec<u64>,
    pub with_generators: bool,
    /// Restrict `reproduce` to the fast rows.
    pub quick: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            n: 2,
            p: 2,
            f: 1,
            modulus: None,
            kinds: Vec::new(),
            budget_elements: 1 << 22,
            max_field_size: 1 << 12,
            workers: None,
            cache_dir: None,
            format: Format::Json,
            seed: 0,
            samples: 200,
            sampled: false,
            direct: false,
            matrix: None,
            generators: Vec::new(),
            primes: Vec::new(),
            with_generators: false,
            quick: false,
        }
    }

    pub fn field(&self) -> Result<Field> {
        match &self.modulus {
            Some(m) => Field::new(FieldSpec { p: self.p, f: self.f, modulus: m.clone() }),
            None => Field::gf(self.p, self.f),
        }
    }

    pub fn kinds(&self) -> Vec<RingKind> {
        if self.kinds.is_empty() {
            RingKind::ALL.to_vec()
        } else {
            self.kinds.clone()
        }
    }

    /// First requested kind, `witt2` by default.
    pub fn kind(&self) -> RingKind {
        self.kinds.first().copied().unwrap_or(RingKind::Witt2)
    }

    /// SHA-256 of the canonical JSON of the configuration.
    pub fn input_hash(&self) -> String {
        sha256_hex(serde_json::to_string(self).expect("serialisable").as_bytes())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if self.n < 2 && !matches!(self.command, Command::Weyr | Command::Centralizer | Command::Stabilizer | Command::CharDegrees) {
            return Err(Error::InvalidArgument("n must be at least 2".into()));
        }
        self.field().map(|_| ())
    }

    fn cache(&self) -> Result<Cache> {
        match &self.cache_dir {
            Some(d) => Cache::new(d),
            None => Ok(Cache::disabled()),
        }
    }

    fn matrix(&self, field: &Field) -> Result<Mat<Fq>> {
        let text = self.matrix.as_deref().ok_or_else(|| Error::InvalidArgument("--matrix is required".into()))?;
        if text.trim() == "example7" {
            return Ok(example_7x7(field));
        }
        Mat::parse(field, text)
    }
}

/// Sizes the global worker pool; call before any parallel work.
pub fn set_workers(n: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidArgument(format!("cannot set worker count: {e}")))
}

/// A finished run: the report, its rendering, and the process exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub rendered: String,
    pub exit_code: i32,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DISCREPANCY: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidField(_) | Error::Parse(_) | Error::InvalidArgument(_) | Error::Shape(_) => EXIT_CONFIG,
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Discrepancy(_) => EXIT_DISCREPANCY,
        Error::NotUnit | Error::Failed(_) => EXIT_FAILED,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match exit_code(e) {
        EXIT_CONFIG => "config",
        EXIT_BUDGET => "budget",
        EXIT_DISCREPANCY => "discrepancy",
        _ => "failure",
    }
}

/// Runs a configuration. Errors become a report with the matching exit code.
pub fn run(config: &RunConfig) -> Outcome {
    let wrap = |body: Value, code: i32| {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(config.command));
        obj.insert("config".into(), serde_json::to_value(config).expect("serialisable"));
        obj.insert("input_hash".into(), json!(config.input_hash()));
        obj.insert("exit_code".into(), json!(code));
        match body {
            Value::Object(m) => obj.extend(m),
            other => {
                obj.insert("result".into(), other);
            }
        }
        Value::Object(obj)
    };
    match dispatch(config) {
        Ok((body, csv, ok)) => {
            let code = if ok { EXIT_OK } else { EXIT_DISCREPANCY };
            let report = wrap(body, code);
            let rendered = match (config.format, csv) {
                (Format::Csv, Some(c)) => c,
                (Format::Csv, None) => {
                    let e = Error::InvalidArgument(format!("csv output is not available for {:?}", config.command));
                    let report = wrap(json!({"error": {"kind": error_kind(&e), "message": e.to_string()}}), EXIT_CONFIG);
                    return Outcome { rendered: pretty(&report), report, exit_code: EXIT_CONFIG };
                }
                (Format::Json, _) => pretty(&report),
            };
            Outcome { report, rendered, exit_code: code }
        }
        Err(e) => {
            let code = exit_code(&e);
            let report = wrap(json!({"error": {"kind": error_kind(&e), "message": e.to_string()}}), code);
            Outcome { rendered: pretty(&report), report, exit_code: code }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn opts(config: &RunConfig) -> CountOptions {
    let mode = if config.sampled {
        ExtensionMode::Sampled { samples: config.samples, seed: config.seed }
    } else {
        ExtensionMode::Auto { samples: config.samples, seed: config.seed }
    };
    CountOptions { cap: config.budget_elements, extension: mode }
}

type Dispatched = (Value, Option<String>, bool);

fn dispatch(config: &RunConfig) -> Result<Dispatched> {
    config.validate()?;
    let field = config.field()?;
    let cap = config.budget_elements;
    match config.command {
        Command::Weyr => {
            let x = config.matrix(&field)?;
            let dec = weyr_decompose(&field, &x, config.max_field_size)?;
            let mut v = dec.to_json();
            v["x"] = x.to_json(&field);
            Ok((v, None, true))
        }
        Command::Centralizer => {
            let x = config.matrix(&field)?;
            let alg = centralizer_basis(&field, &x);
            let mut v = json!({
                "x": x.to_json(&field),
                "dimension": alg.rank(),
                "basis": alg.basis().iter().map(|b| b.to_json(&field)).collect::<Vec<_>>(),
            });
            if let Some(blocks) = read_weyr_form(&field, &x) {
                if blocks.len() == 1 {
                    let wb = WeyrBlock { eigenvalue: blocks[0].0, partition: blocks[0].1.clone() };
                    v["pattern"] = serde_json::to_value(weyr_pattern(&[wb])?).expect("serialisable");
                }
            }
            let mut ok = true;
            let mut surj = Map::new();
            for kind in config.kinds() {
                let r = check_reduction_surjectivity(&field, &x, kind, cap)?;
                ok &= r.holds;
                surj.insert(kind.to_string(), serde_json::to_value(&r).expect("serialisable"));
            }
            v["surjectivity"] = Value::Object(surj);
            Ok((v, None, ok))
        }
        Command::Stabilizer => {
            let x = config.matrix(&field)?;
            let data = coset_stabilizer(&field, &x, cap, config.max_field_size)?;
            Ok((data.to_json(&field), None, true))
        }
        Command::Orbits => {
            let table = enumerate_orbits(&field, config.n, cap, cap)?;
            let mut csv = String::from("rep,size,stabilizer_order\n");
            for o in &table.orbits {
                csv.push_str(&format!("\"{}\",{},{}\n", o.rep.format(&field), o.size, table.group_order / o.size));
            }
            Ok((json!({"orbits": table.to_json(config.with_generators)}), Some(csv), true))
        }
        Command::CharDegrees => {
            let primes = (!config.primes.is_empty()).then_some(config.primes.as_slice());
            let report = if !config.generators.is_empty() {
                let gens = config.generators.iter().map(|g| Mat::parse(&field, g)).collect::<Result<Vec<_>>>()?;
                let n = gens[0].n();
                FiniteGroup::from_generators(&field, n, &gens, cap)?.character_degrees(cap, primes)?
            } else if config.kinds.len() == 1 {
                let ring = LocalRing::new(field.clone(), config.kinds[0]);
                FiniteGroup::from_elements(&ring, sl_elements(&ring, config.n, cap)?, 1 << 16)?.character_degrees(cap, primes)?
            } else {
                FiniteGroup::from_elements(&field, sl_elements(&field, config.n, cap)?, 1 << 16)?.character_degrees(cap, primes)?
            };
            let d = &report.distribution;
            let degrees: Map<String, Value> = d.counts.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let mut csv = String::from("dim,count\n");
            for (k, c) in &d.counts {
                csv.push_str(&format!("{k},{c}\n"));
            }
            let v = json!({
                "order": d.group_order,
                "classes": report.classes,
                "degrees": degrees,
                "exponent": report.exponent,
                "primes": report.primes,
            });
            Ok((v, Some(csv), true))
        }
        Command::ExtensionCheck => {
            let table = enumerate_orbits(&field, config.n, cap, cap)?;
            let mode = opts(config).extension;
            let mut rows = Vec::new();
            let mut csv = String::from("kind,rep,extends,mode\n");
            let mut ok = true;
            for kind in config.kinds() {
                for o in &table.orbits {
                    let v = verify_extension(&field, kind, &o.rep, &o.stab_gens, mode, cap)?;
                    ok &= v.extends;
                    csv.push_str(&format!("{kind},\"{}\",{},{}\n", o.rep.format(&field), v.extends, json!(v.mode).as_str().unwrap_or("")));
                    rows.push(json!({
                        "kind": kind,
                        "rep": o.rep.to_json(&field),
                        "extends": v.extends,
                        "mode": v.mode,
                        "checked": v.checked,
                    }));
                }
            }
            Ok((json!({"results": rows}), Some(csv), ok))
        }
        Command::CountIrreps => {
            let cache = config.cache()?;
            let kind = config.kind();
            let report = if config.direct {
                direct_distribution(&field, config.n, kind, cap, &cache)?
            } else {
                let table = enumerate_orbits(&field, config.n, cap, cap)?;
                clifford_from_table(&table, kind, &opts(config), &cache)?
            };
            Ok((report.to_json(), Some(report.to_csv()), report.check_invariants()))
        }
        Command::Compare => {
            let cache = config.cache()?;
            let cmp = compare_rings(&field, config.n, &opts(config), cap, &cache)?;
            let mut csv = String::from("kind,method,dim,count\n");
            for r in cmp.clifford.iter().chain(&cmp.direct) {
                for (d, c) in &r.total.counts {
                    csv.push_str(&format!("{},{},{d},{c}\n", r.kind, json!(r.method).as_str().unwrap_or("")));
                }
            }
            let mut v = cmp.to_json();
            v["counts"] = counts_json(&cmp.clifford[0].total);
            Ok((v, Some(csv), cmp.equal))
        }
        Command::Splitting => {
            let kind = config.kind();
            let ring = LocalRing::new(field.clone(), kind);
            let res = lift_order_search(&field, kind, &e12(&field, config.n), cap, config.samples, config.seed)?;
            let mut v = res.to_json(&ring);
            let witt = kind == RingKind::Witt2;
            let mut ok = true;
            if witt && (field.p() >= 5 || (config.n, field.p()) == (2, 2)) {
                ok &= res.found.is_none();
            }
            if kind == RingKind::Dual {
                ok &= res.found.is_some();
            }
            if witt && field.p() >= 5 {
                let pf = verify_power_formula(&field, config.n, cap, config.samples, config.seed)?;
                ok &= pf.power_holds && pf.commutator_holds;
                v["power_formula"] = serde_json::to_value(&pf).expect("serialisable");
            }
            Ok((v, None, ok))
        }
        Command::Reproduce => {
            let rows = crate::reproduce::reproduce_all(config.quick)?;
            let ok = rows.iter().all(|r| r.passed);
            let table = crate::reproduce::render_table(&rows);
            Ok((json!({"rows": rows, "passed": ok}), Some(table), ok))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyr_and_compare_reports() {
        let mut c = RunConfig::new(Command::Weyr);
        c.p = 3;
        c.matrix = Some("example7".into());
        let out = run(&c);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.report["blocks"][0]["partition"], json!([3, 2, 2]));
        let mut c = RunConfig::new(Command::Compare);
        c.n = 2;
        let out = run(&c);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.rendered, run(&c).rendered);
        let mut c = RunConfig::new(Command::Splitting);
        c.p = 5;
        let out = run(&c);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.report["found"], json!(false));
    }

    #[test]
    fn error_exit_codes() {
        let mut c = RunConfig::new(Command::Orbits);
        c.p = 4;
        assert_eq!(run(&c).exit_code, EXIT_CONFIG);
        let mut c = RunConfig::new(Command::Orbits);
        c.n = 3;
        c.p = 3;
        c.budget_elements = 100;
        let out = run(&c);
        assert_eq!(out.exit_code, EXIT_BUDGET);
        assert_eq!(out.report["error"]["kind"], "budget");
        let mut c = RunConfig::new(Command::Weyr);
        c.format = Format::Csv;
        c.matrix = Some("0,1;0,0".into());
        assert_eq!(run(&c).exit_code, EXIT_CONFIG);
    }
}
