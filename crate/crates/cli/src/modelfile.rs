//! TOML model files.
//!
//! ```toml
//! name = "plane"
//! truncation_cap = 6
//!
//! [lie_algebra]
//! builtin = "u1"            # or: dim = 3, constants = [[1, 2, 3, 1], ...]
//!
//! [[generators]]
//! name = "x1"
//! degree = 0
//!
//! [[rewrites]]
//! lhs = "x1^3"
//! rhs = "0"
//!
//! [action]
//! d = { x1 = "dx1" }
//! iota = [{ dx1 = "-x2" }]
//! lie = [{ x1 = "-x2" }]
//! ```
//!
//! Optional sections: `connection`, `family`, `superconnection`, `index`.
//! Structure constants `[a, b, c, v]` set `f^a_{bc} = v`, indices 1-based.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use equichern::gca::{parse_element, DerivationSpec, GeneratorTable, GradedElement, RewriteSystem, Rule, Scalar};
use equichern::harness::{FamilyModel, Fiber};
use equichern::lie::LieAlgebraData;
use equichern::matrix::MatrixForm;
use equichern::model::{build_weil, tensor_model, GdgaModel};
use equichern::models::time_parameter;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: Option<String>,
    pub truncation_cap: Option<u32>,
    pub lie_algebra: LieSection,
    pub generators: Vec<GeneratorDecl>,
    #[serde(default)]
    pub rewrites: Vec<RewriteDecl>,
    pub priority: Option<Vec<String>>,
    #[serde(default)]
    pub action: ActionSection,
    pub connection: Option<ConnectionSection>,
    pub family: Option<FamilySection>,
    pub superconnection: Option<SuperSection>,
    pub index: Option<IndexSection>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSection {
    pub builtin: Option<String>,
    pub dim: Option<usize>,
    #[serde(default)]
    pub constants: Vec<(usize, usize, usize, Value)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDecl {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RewriteDecl {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSection {
    #[serde(default)]
    pub d: BTreeMap<String, String>,
    #[serde(default)]
    pub iota: Vec<BTreeMap<String, String>>,
    #[serde(default)]
    pub lie: Vec<BTreeMap<String, String>>,
}

/// Entries are parsed in `W(g) ⊗ X`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionSection {
    pub weil_cap: Option<u32>,
    pub a: Vec<Vec<String>>,
    pub tau: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySection {
    pub fiber: String,
    pub nu: String,
    #[serde(default = "zero_text")]
    pub k: String,
    #[serde(default = "zero_text")]
    pub t: String,
}

/// Entries are parsed in `X ⊗ {rt, rti}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperSection {
    pub parity: Vec<bool>,
    pub matrix: Vec<Vec<String>>,
}

/// Entries are parsed in the family model `X`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexSection {
    pub omega: Vec<Vec<String>>,
    pub twist: Vec<Vec<String>>,
    pub oracle: String,
}

fn zero_text() -> String {
    "0".into()
}

/// A parsed model file with every section resolved against its model.
#[derive(Debug)]
pub struct LoadedModel {
    pub file: ModelFile,
    pub model: GdgaModel,
}

fn semantic(context: impl Into<String>) -> impl FnOnce(equichern::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Model { context, source }
}

pub fn parse_scalar(v: &Value) -> Result<Scalar, CliError> {
    match v {
        Value::Int(n) => Ok(Scalar::from_int(*n)),
        Value::Text(s) => {
            let t = GeneratorTable::new(Vec::<(String, u32)>::new()).map_err(semantic("scalar"))?;
            let x = parse_element(&t, s).map_err(semantic(format!("scalar `{s}`")))?;
            Ok(x.constant_term())
        }
    }
}

pub fn lie_algebra(s: &LieSection) -> Result<LieAlgebraData, CliError> {
    if let Some(name) = &s.builtin {
        if s.dim.is_some() || !s.constants.is_empty() {
            return Err(CliError::Input("lie_algebra: `builtin` excludes `dim` and `constants`".into()));
        }
        return LieAlgebraData::builtin(name).ok_or_else(|| CliError::Input(format!("unknown Lie algebra `{name}`")));
    }
    let dim = s.dim.ok_or_else(|| CliError::Input("lie_algebra needs `builtin` or `dim`".into()))?;
    let mut entries = Vec::new();
    for (a, b, c, v) in &s.constants {
        if *a == 0 || *b == 0 || *c == 0 {
            return Err(CliError::Input(format!("structure constant ({a}, {b}, {c}): indices are 1-based")));
        }
        entries.push((a - 1, b - 1, c - 1, parse_scalar(v)?));
    }
    LieAlgebraData::new("file", dim, entries).map_err(semantic("lie_algebra"))
}

pub fn load(path: &Path) -> Result<LoadedModel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<LoadedModel, CliError> {
    let file: ModelFile = toml::from_str(text).map_err(|e| CliError::Toml(e.to_string()))?;
    let g = lie_algebra(&file.lie_algebra)?;
    let t = GeneratorTable::new(file.generators.iter().map(|d| (d.name.clone(), d.degree))).map_err(semantic("generators"))?;
    let elem = |ctx: &str, s: &str| parse_element(&t, s).map_err(semantic(format!("{ctx} `{s}`")));

    let mut rules = Vec::new();
    for (i, r) in file.rewrites.iter().enumerate() {
        let lhs = elem(&format!("rewrites[{i}].lhs"), &r.lhs)?;
        let mut terms = lhs.terms();
        let mono = match (terms.next(), terms.next()) {
            (Some((m, c)), None) if c.is_one() => m.clone(),
            _ => return Err(CliError::Input(format!("rewrites[{i}].lhs `{}` must be a single monomial", r.lhs))),
        };
        rules.push(Rule { lhs: mono, rhs: elem(&format!("rewrites[{i}].rhs"), &r.rhs)? });
    }
    let priority = match &file.priority {
        None => None,
        Some(names) => Some(
            names
                .iter()
                .map(|n| t.lookup(n).map_err(semantic("priority")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let rewrite = RewriteSystem::new(&t, rules, priority).map_err(semantic("rewrites"))?;

    let derivation = |name: String, degree: i32, map: &BTreeMap<String, String>| -> Result<DerivationSpec, CliError> {
        let mut images = vec![GradedElement::zero(&t); t.len()];
        for (k, v) in map {
            let i = t.lookup(k).map_err(semantic(format!("action.{name}")))?;
            images[i] = elem(&format!("action.{name}.{k}"), v)?;
        }
        DerivationSpec::new(name.clone(), &t, degree, images).map_err(semantic(format!("action.{name}")))
    };
    let d = derivation("d".into(), 1, &file.action.d)?;
    let n = g.dim();
    let per_index = |kind: &str, maps: &[BTreeMap<String, String>], degree: i32| -> Result<Vec<DerivationSpec>, CliError> {
        if !maps.is_empty() && maps.len() != n {
            return Err(CliError::Input(format!("action.{kind} needs {n} entries, got {}", maps.len())));
        }
        (0..n)
            .map(|a| {
                let empty = BTreeMap::new();
                derivation(format!("{kind}{}", a + 1), degree, maps.get(a).unwrap_or(&empty))
            })
            .collect()
    };
    let iota = per_index("iota", &file.action.iota, -1)?;
    let lie = per_index("lie", &file.action.lie, 0)?;
    let name = file.name.clone().unwrap_or_else(|| "file".into());
    let model = GdgaModel::new(name, rewrite, g, d, iota, lie).map_err(semantic("model"))?.with_cap(file.truncation_cap);
    Ok(LoadedModel { file, model })
}

pub fn matrix(m: &GdgaModel, ctx: &str, rows: &[Vec<String>], parity: Option<Vec<bool>>) -> Result<MatrixForm, CliError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input(format!("{ctx}: matrix must be square")));
    }
    let mut out = match parity {
        Some(p) => {
            if p.len() != n {
                return Err(CliError::Input(format!("{ctx}: parity has length {}, matrix is {n}×{n}", p.len())));
            }
            MatrixForm::graded_zeros(m, p)
        }
        None => MatrixForm::zeros(m, n),
    };
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            out.set(i, j, m.parse(s).map_err(semantic(format!("{ctx}[{i}][{j}] `{s}`")))?);
        }
    }
    Ok(out)
}

impl LoadedModel {
    fn weil_product(&self, cap: Option<u32>) -> Result<GdgaModel, CliError> {
        let cap = cap.or(self.file.truncation_cap).unwrap_or(8);
        let w = build_weil(self.model.lie_algebra(), Some(cap)).map_err(semantic("weil"))?;
        Ok(tensor_model(&w, &self.model).map_err(semantic("weil"))?.with_cap(Some(cap)))
    }

    pub fn connection(&self) -> Result<equichern::connection::ConnectionDataG, CliError> {
        let c = self.file.connection.as_ref().ok_or_else(|| CliError::Input("model file has no [connection]".into()))?;
        let m = self.weil_product(c.weil_cap)?;
        let a = matrix(&m, "connection.a", &c.a, None)?;
        let tau = c
            .tau
            .iter()
            .enumerate()
            .map(|(k, rows)| matrix(&m, &format!("connection.tau[{k}]"), rows, None))
            .collect::<Result<Vec<_>, _>>()?;
        equichern::connection::ConnectionDataG::new(m, a, tau).map_err(semantic("connection"))
    }

    pub fn family(&self) -> Result<FamilyModel, CliError> {
        let f = self.file.family.as_ref().ok_or_else(|| CliError::Input("model file has no [family]".into()))?;
        let fiber = match f.fiber.as_str() {
            "sphere" => Fiber::Sphere,
            "torus" => Fiber::Torus,
            other => return Err(CliError::Input(format!("family.fiber `{other}` (expected sphere or torus)"))),
        };
        let m = &self.model;
        let p = |ctx: &str, s: &str| m.parse(s).map_err(semantic(format!("family.{ctx} `{s}`")));
        FamilyModel::new(self.model.name(), m.clone(), fiber, p("nu", &f.nu)?, p("k", &f.k)?, p("t", &f.t)?)
            .map_err(semantic("family"))
    }

    pub fn superconnection(&self) -> Result<equichern::superconn::SuperconnectionModel, CliError> {
        let s = self.file.superconnection.as_ref().ok_or_else(|| CliError::Input("model file has no [superconnection]".into()))?;
        let tp = time_parameter(self.model.lie_algebra()).map_err(semantic("superconnection"))?;
        let m = tensor_model(&self.model, &tp).map_err(semantic("superconnection"))?.with_cap(self.model.cap());
        let b = matrix(&m, "superconnection.matrix", &s.matrix, Some(s.parity.clone()))?;
        equichern::superconn::SuperconnectionModel::new(m, b, true).map_err(semantic("superconnection"))
    }

    pub fn index(&self) -> Result<(MatrixForm, MatrixForm, GradedElement), CliError> {
        let s = self.file.index.as_ref().ok_or_else(|| CliError::Input("model file has no [index]".into()))?;
        let m = &self.model;
        let omega = matrix(m, "index.omega", &s.omega, None)?;
        let twist = matrix(m, "index.twist", &s.twist, None)?;
        let oracle = m.parse(&s.oracle).map_err(semantic(format!("index.oracle `{}`", s.oracle)))?;
        Ok((omega, twist, oracle))
    }
}
