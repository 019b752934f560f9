//! JSON instance files.
//!
//! Rationals are strings `"p/q"`; plain JSON integers are accepted wherever
//! a rational is expected. Errors carry the JSON path of the offending value.

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt;

use toricmld::exactmath::parse_rat;
use toricmld::mfs::projection;
use toricmld::{make_mfs, Error, Fan, Lattice, Rat, ToricMfs, ToricVariety};

#[derive(Clone, Debug)]
struct JsonRat(Rat);

impl<'de> Deserialize<'de> for JsonRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rat::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rat::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonRat, E> {
                parse_rat(v).map(JsonRat).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

fn unwrap_rows(rows: Vec<Vec<JsonRat>>) -> Vec<Vec<Rat>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|x| x.0).collect())
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ToricFile {
    dim: usize,
    #[serde(default)]
    lattice_generators: Vec<Vec<JsonRat>>,
    rays: Vec<Vec<JsonRat>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MfsFile {
    m: usize,
    n: usize,
    fiber_rays: Option<Vec<Vec<i64>>>,
    base_multiples: Option<Vec<i64>>,
    #[serde(default)]
    extra_generators: Vec<Vec<JsonRat>>,
    #[serde(default)]
    lattice_generators: Vec<Vec<JsonRat>>,
    rays: Option<Vec<Vec<JsonRat>>>,
    max_cones: Option<Vec<Vec<usize>>>,
    base_lattice_generators: Option<Vec<Vec<JsonRat>>>,
}

#[derive(Clone, Debug)]
pub enum Instance {
    Toric(ToricVariety),
    Mfs(ToricMfs),
}

#[derive(Debug)]
pub enum LoadError {
    /// Malformed document, with the JSON path when known.
    Syntax(String),
    /// Well-formed document describing an invalid object.
    Invalid(Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Self::Syntax(s) => write!(f, "{s}"),
            Self::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        Self::Invalid(e)
    }
}

fn typed<T: for<'de> Deserialize<'de>>(value: Value) -> Result<T, LoadError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        LoadError::Syntax(format!("at {path}: {}", e.into_inner()))
    })
}

pub fn parse(text: &str) -> Result<Instance, LoadError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let mut value: Value = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| {
            let path = e.path().to_string();
            LoadError::Syntax(format!("at {path}: {}", e.into_inner()))
        })?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| LoadError::Syntax("at .: expected a JSON object".into()))?;
    let kind = obj
        .remove("kind")
        .ok_or_else(|| LoadError::Syntax("at .: missing field `kind`".into()))?;
    match kind.as_str() {
        Some("toric") => parse_toric(typed(value)?).map(Instance::Toric),
        Some("mfs") => parse_mfs(typed(value)?).map(Instance::Mfs),
        _ => Err(LoadError::Syntax(format!(
            "at kind: expected \"toric\" or \"mfs\", found {kind}"
        ))),
    }
}

fn parse_toric(file: ToricFile) -> Result<ToricVariety, LoadError> {
    let lattice = Lattice::from_generators(file.dim, &unwrap_rows(file.lattice_generators))?;
    let fan = Fan::new(file.dim, unwrap_rows(file.rays), file.max_cones)?;
    Ok(ToricVariety::new(lattice, fan)?)
}

fn unit_rays(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rat::from_integer(i64::from(i == j).into()))
                .collect()
        })
        .collect()
}

fn parse_mfs(file: MfsFile) -> Result<ToricMfs, LoadError> {
    let (m, n) = (file.m, file.n);
    let constructor = file.fiber_rays.is_some() || file.base_multiples.is_some();
    let explicit = file.rays.is_some() || file.max_cones.is_some();
    match (constructor, explicit) {
        (true, false) => {
            if !file.lattice_generators.is_empty() || file.base_lattice_generators.is_some() {
                return Err(LoadError::Syntax(
                    "at .: constructor form takes extra_generators only".into(),
                ));
            }
            let fiber = file
                .fiber_rays
                .ok_or_else(|| LoadError::Syntax("at .: missing field `fiber_rays`".into()))?;
            let base = file
                .base_multiples
                .ok_or_else(|| LoadError::Syntax("at .: missing field `base_multiples`".into()))?;
            Ok(make_mfs(m, n, &fiber, &base, &unwrap_rows(file.extra_generators))?)
        }
        (false, true) => {
            if !file.extra_generators.is_empty() {
                return Err(LoadError::Syntax(
                    "at .: explicit form takes lattice_generators, not extra_generators".into(),
                ));
            }
            let rays = file
                .rays
                .ok_or_else(|| LoadError::Syntax("at .: missing field `rays`".into()))?;
            let cones = file
                .max_cones
                .ok_or_else(|| LoadError::Syntax("at .: missing field `max_cones`".into()))?;
            let d = m + n;
            let lattice = Lattice::from_generators(d, &unwrap_rows(file.lattice_generators))?;
            let x = ToricVariety::new_unchecked(lattice, Fan::new(d, unwrap_rows(rays), cones)?);
            let base_gens = match file.base_lattice_generators {
                Some(rows) => unwrap_rows(rows),
                None => (0..d)
                    .map(|i| x.lattice().basis().row(i)[m..].to_vec())
                    .collect(),
            };
            let y = ToricVariety::affine(Lattice::from_generators(n, &base_gens)?, &unit_rays(n))?;
            Ok(ToricMfs::new_unchecked(m, n, x, y, projection(m, n))?)
        }
        (true, true) => Err(LoadError::Syntax(
            "at .: mixes the constructor form (fiber_rays, base_multiples) with the explicit form (rays, max_cones)".into(),
        )),
        (false, false) => Err(LoadError::Syntax(
            "at .: expected fiber_rays and base_multiples, or rays and max_cones".into(),
        )),
    }
}

pub fn rat_str(x: &Rat) -> String {
    x.to_string()
}

fn rows_json(rows: &[Vec<Rat>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(rat_str(x))).collect()))
            .collect(),
    )
}

fn cones_json(fan: &Fan) -> Value {
    json!(fan
        .cones()
        .iter()
        .map(|c| c.ray_indices().to_vec())
        .collect::<Vec<_>>())
}

pub fn vector_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(rat_str(x))).collect())
}

#[cfg(test)]
pub fn toric_json(x: &ToricVariety) -> Value {
    json!({
        "kind": "toric",
        "dim": x.dim(),
        "lattice_generators": rows_json(&x.lattice().basis().row_vecs()),
        "rays": rows_json(x.fan().rays()),
        "max_cones": cones_json(x.fan()),
    })
}

/// Explicit form with canonical lattice bases.
pub fn mfs_json(mfs: &ToricMfs) -> Value {
    json!({
        "kind": "mfs",
        "m": mfs.m(),
        "n": mfs.n(),
        "lattice_generators": rows_json(&mfs.x().lattice().basis().row_vecs()),
        "rays": rows_json(mfs.x().fan().rays()),
        "max_cones": cones_json(mfs.x().fan()),
        "base_lattice_generators": rows_json(&mfs.y().lattice().basis().row_vecs()),
    })
}

#[derive(Serialize)]
pub struct CsvRow {
    pub l: i64,
    pub r: i64,
    #[serde(rename = "mld_X")]
    pub mld_x: String,
    #[serde(rename = "mld_Y")]
    pub mld_y: String,
    pub ratio_y_over_x4: String,
    pub slope_running: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use toricmld::example_family;

    #[test]
    fn family_round_trip() {
        for l in 2..=4 {
            let mfs = example_family(l).unwrap();
            let text = mfs_json(&mfs).to_string();
            match parse(&text).unwrap() {
                Instance::Mfs(back) => assert_eq!(back, mfs),
                Instance::Toric(_) => panic!("wrong kind"),
            }
        }
    }

    #[test]
    fn toric_round_trip() {
        let x = toricmld::cyclic_quotient(17, &[1, 1]).unwrap();
        match parse(&toric_json(&x).to_string()).unwrap() {
            Instance::Toric(back) => assert_eq!(back, x),
            Instance::Mfs(_) => panic!("wrong kind"),
        }
    }

    #[test]
    fn errors_carry_paths() {
        let text = r#"{"kind":"toric","dim":2,"lattice_generators":[["1/17","x"]],"rays":[[1,0],[0,1]],"max_cones":[[0,1]]}"#;
        let err = parse(text).unwrap_err().to_string();
        assert!(err.contains("lattice_generators[0][1]"), "{err}");
        let err = parse(r#"{"kind":"toric","dim":2,"rays":[[1,0]],"max_cones":[[0]],"extra":1}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("extra"), "{err}");
        assert!(matches!(parse("[1,2"), Err(LoadError::Syntax(_))));
        assert!(matches!(parse(r#"{"kind":"cone"}"#), Err(LoadError::Syntax(_))));
    }

    #[test]
    fn constructor_form() {
        let text = r#"{"kind":"mfs","m":2,"n":2,"fiber_rays":[[1,0],[-1,1],[-1,-1]],"base_multiples":[1,1],"extra_generators":[["2/17","4/17","1/17","1/17"]]}"#;
        match parse(text).unwrap() {
            Instance::Mfs(mfs) => assert_eq!(mfs, example_family(2).unwrap()),
            Instance::Toric(_) => panic!("wrong kind"),
        }
    }
}
