use serde_json::{json, Value};
use std::fmt;
use std::io::Write;
use std::path::Path;

use toricmld::exactmath::parse_rat;
use toricmld::mfs::family_r;
use toricmld::witness::WitnessReport;
use toricmld::{
    check_eps_delta, example_family, find_witness, generic_fiber, mld, mld_bruteforce,
    sweep_family, validate, Error, MldMethod, MldResult, Rat, ToricMfs, ToricVariety,
    DEFAULT_GUARD,
};

use crate::instance::{self, mfs_json, rat_str, vector_json, CsvRow, Instance, LoadError};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_VIOLATED: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PreconditionFailed(_) => EXIT_PRECONDITION,
            _ => EXIT_USAGE,
        };
        Self::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(EXIT_USAGE, e.to_string())
    }
}

pub type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    instance::parse(&text).map_err(|e| match e {
        LoadError::Syntax(s) => Failure::new(EXIT_USAGE, format!("{}: parse error {s}", path.display())),
        LoadError::Invalid(e) => Failure::new(EXIT_USAGE, format!("{}: invalid instance: {e}", path.display())),
    })
}

fn load_mfs(path: &Path) -> Result<ToricMfs, Failure> {
    match load(path)? {
        Instance::Mfs(m) => Ok(m),
        Instance::Toric(_) => Err(Failure::new(
            EXIT_USAGE,
            format!("{}: expected an instance of kind \"mfs\"", path.display()),
        )),
    }
}

fn load_valid_mfs(path: &Path) -> Result<ToricMfs, Failure> {
    let mfs = load_mfs(path)?;
    let report = validate(&mfs);
    if !report.overall {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("{}: validation failed: {}", path.display(), report.failed().join(", ")),
        ));
    }
    Ok(mfs)
}

fn vec_text(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(rat_str).collect();
    format!("({})", parts.join(", "))
}

fn guard() -> Result<u64, Failure> {
    match std::env::var("TORICMLD_GUARD") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::new(EXIT_USAGE, format!("TORICMLD_GUARD={s:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_GUARD),
    }
}

struct Computed {
    label: Option<&'static str>,
    result: MldResult,
    oracle: Option<MldResult>,
}

fn compute(label: Option<&'static str>, x: &ToricVariety, brute: bool) -> Result<Computed, Failure> {
    let result = mld(x)?;
    let oracle = if brute {
        Some(mld_bruteforce(x, &Rat::from_integer(1.into()), guard()?)?)
    } else {
        None
    };
    Ok(Computed { label, result, oracle })
}

fn result_json(c: &Computed) -> Value {
    let method = match c.result.method {
        MldMethod::Parallelepiped => "parallelepiped",
        MldMethod::BruteForce => "bruteforce",
    };
    let mut v = json!({
        "value": rat_str(&c.result.value),
        "witness": vector_json(&c.result.witness),
        "cone_index": c.result.cone_index,
        "method": method,
    });
    if let Some(o) = &c.oracle {
        v["oracle"] = json!({
            "value": rat_str(&o.value),
            "witness": vector_json(&o.witness),
            "cone_index": o.cone_index,
            "agrees": o.agrees_with(&c.result),
        });
    }
    v
}

pub fn cmd_mld(path: &Path, brute: bool, as_json: bool) -> Outcome {
    let computed = match load(path)? {
        Instance::Toric(x) => vec![compute(None, &x, brute)?],
        Instance::Mfs(mfs) => vec![compute(Some("X"), mfs.x(), brute)?, compute(Some("Y"), mfs.y(), brute)?],
    };
    if as_json {
        let doc = match computed.as_slice() {
            [c] if c.label.is_none() => result_json(c),
            _ => Value::Object(
                computed
                    .iter()
                    .map(|c| (c.label.unwrap_or("X").to_string(), result_json(c)))
                    .collect(),
            ),
        };
        println!("{}", serde_json::to_string_pretty(&doc).expect("json values serialize"));
    } else {
        for c in &computed {
            let name = c.label.map(|l| format!("mld({l})")).unwrap_or_else(|| "mld".into());
            println!("{name} = {}", rat_str(&c.result.value));
            println!("witness = {}", vec_text(&c.result.witness));
            println!("cone = {}", c.result.cone_index);
            if let Some(o) = &c.oracle {
                println!("oracle = {}", if o.agrees_with(&c.result) { "agrees" } else { "MISMATCH" });
            }
        }
    }
    for c in &computed {
        if let Some(o) = &c.oracle {
            if !o.agrees_with(&c.result) {
                return Err(Failure::new(
                    EXIT_MISMATCH,
                    format!(
                        "oracle mismatch: parallelepiped {} at {} (cone {}), brute force {} at {} (cone {})",
                        c.result.value,
                        vec_text(&c.result.witness),
                        c.result.cone_index,
                        o.value,
                        vec_text(&o.witness),
                        o.cone_index
                    ),
                ));
            }
        }
    }
    Ok(())
}

pub fn cmd_validate(path: &Path) -> Outcome {
    let mfs = load_mfs(path)?;
    let report = validate(&mfs);
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("{status}  {:width$}  {}", c.name, c.detail);
    }
    if report.overall {
        println!("valid");
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_USAGE,
            format!("validation failed: {}", report.failed().join(", ")),
        ))
    }
}

pub fn cmd_family(l: i64, emit_json: bool) -> Outcome {
    let mfs = example_family(l)?;
    if emit_json {
        println!("{}", serde_json::to_string_pretty(&mfs_json(&mfs)).expect("json values serialize"));
        return Ok(());
    }
    let r = family_r(l)?;
    let fiber = generic_fiber(&mfs)?;
    println!("l = {l}");
    println!("r = {r}");
    for (k, ray) in mfs.x().fan().rays().iter().enumerate() {
        println!("ray {k} = {}", vec_text(ray));
    }
    println!("max cones = {}", mfs.x().fan().cones().len());
    println!("fiber barycentric = {}", vec_text(&fiber.barycentric_of_origin));
    println!("mld_X = {}", rat_str(&mld(mfs.x())?.value));
    println!("mld_Y = {}", rat_str(&mld(mfs.y())?.value));
    Ok(())
}

pub fn cmd_sweep(l_min: i64, l_max: i64, out: Option<&Path>) -> Outcome {
    if l_min > l_max {
        return Err(Failure::new(EXIT_USAGE, format!("l_min = {l_min} exceeds l_max = {l_max}")));
    }
    let rows = sweep_family(l_min, l_max)?;
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(
            std::fs::File::create(p)
                .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", p.display())))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    for row in &rows {
        writer
            .serialize(CsvRow {
                l: row.l,
                r: row.r,
                mld_x: rat_str(&row.mld_x),
                mld_y: rat_str(&row.mld_y),
                ratio_y_over_x4: format!("{:.6}", row.ratio),
                slope_running: row.slope_running.map(|s| format!("{s:.6}")).unwrap_or_default(),
            })
            .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
        if !row.bound_check {
            eprintln!("warning: l = {}: mld_X = {} is below 0.9/(2l)", row.l, row.mld_x);
        }
    }
    writer.flush()?;
    Ok(())
}

/// Re-derives every claim of the report from the space itself.
fn audit(mfs: &ToricMfs, report: &WitnessReport) -> Result<(), String> {
    let x = mfs.x();
    if report.q.iter().all(|c| c == &Rat::from_integer(0.into())) {
        return Err("Q is zero".into());
    }
    if !x.lattice().contains(&report.q).map_err(|e| e.to_string())? {
        return Err("Q is not in N_X".into());
    }
    if mfs.apply_f(&report.q).iter().any(|c| c < &Rat::from_integer(0.into())) {
        return Err("F(Q) has a negative coordinate".into());
    }
    let cone = &x.fan().cones()[report.cone_index];
    if !cone.contains(&report.q).map_err(|e| e.to_string())? {
        return Err("Q is not in the reported cone".into());
    }
    let ld = x.log_discrepancy(&report.q).map_err(|e| e.to_string())?;
    if ld.value() != Some(&report.ld_q) {
        return Err("recomputed log discrepancy of Q differs".into());
    }
    Ok(())
}

pub fn cmd_witness(path: &Path, delta: &str) -> Outcome {
    let mfs = load_valid_mfs(path)?;
    let delta = if delta == "auto" {
        mld(mfs.y())?.value
    } else {
        parse_rat(delta).map_err(|e| Failure::new(EXIT_USAGE, format!("--delta: {e}")))?
    };
    let report = find_witness(&mfs, &delta)?;
    audit(&mfs, &report).map_err(|e| Failure::new(EXIT_MISMATCH, format!("witness audit failed: {e}")))?;
    println!("delta = {}", rat_str(&report.delta));
    println!("A = {}", vec_text(&report.a));
    println!("P = {}", vec_text(&report.p));
    println!("t = {}", report.t);
    println!("pair = ({}, {})", report.pair.0, report.pair.1);
    println!("Q = {}", vec_text(&report.q));
    println!("Qbar = {}", vec_text(&report.q_bar));
    println!("cone = {}", report.cone_index);
    println!("ld(Q) = {}", rat_str(&report.ld_q));
    println!(
        "bound = {}·({})^(1/{})  (approx {:.6})",
        rat_str(&report.bound.coefficient),
        rat_str(&report.bound.radicand),
        report.bound.root,
        report.bound.approx()
    );
    println!("bound_satisfied = {}", report.bound_satisfied);
    Ok(())
}

pub fn cmd_check(path: &Path) -> Outcome {
    let mfs = load_valid_mfs(path)?;
    let cert = check_eps_delta(&mfs)?;
    let k = cert.exponent as usize;
    let lhs = cert.mld_x.value.pow(k as i32);
    let rhs = cert.coefficient.pow(k as i32) * &cert.mld_y.value;
    println!("mld(X) = {}  witness {}", rat_str(&cert.mld_x.value), vec_text(&cert.mld_x.witness));
    println!("mld(Y) = {}  witness {}", rat_str(&cert.mld_y.value), vec_text(&cert.mld_y.witness));
    println!("C = {}, exponent = {}", rat_str(&cert.coefficient), k);
    let rel = if cert.holds { "<=" } else { ">" };
    println!("mld(X)^{k} = {} {rel} C^{k}·mld(Y) = {}", rat_str(&lhs), rat_str(&rhs));
    if cert.holds {
        println!("holds");
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_VIOLATED,
            "INEQUALITY VIOLATED: mld(X)^(m+1) exceeds C^(m+1)·mld(Y). This is a counterexample or a bug.",
        ))
    }
}
