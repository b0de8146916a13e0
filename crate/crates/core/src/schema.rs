//! JSON files for algebras and modules.
//!
//! An algebra is either a bound quiver or a multiplication table:
//!
//! ```json
//! {"kind": "quiver", "p": 2, "vertices": ["1", "2"],
//!  "arrows": [{"name": "a", "source": "1", "target": "2"}],
//!  "relations": []}
//! ```
//!
//! A module names its algebra (a path relative to the module file, or an
//! inline object), a side, and the action: arrow blocks plus vertex
//! dimensions for quiver algebras, or one matrix per basis element for
//! table algebras.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Quiver, Relation};
use crate::error::SchemaError;
use crate::field::Fp;
use crate::matrix::FpMatrix;
use crate::module::{Module, Side};

fn default_bound() -> usize {
    32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: i64,
    /// Arrow names in traversal order.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraSpec {
    Quiver {
        p: u32,
        vertices: Vec<String>,
        arrows: Vec<ArrowSpec>,
        #[serde(default)]
        relations: Vec<Vec<TermSpec>>,
        #[serde(default = "default_bound")]
        length_bound: usize,
    },
    Table {
        p: u32,
        basis: Vec<String>,
        unit: Vec<i64>,
        /// `products[i][j]` holds the coordinates of `b_i b_j`.
        products: Vec<Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        idempotents: Option<Vec<Vec<i64>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(Box<AlgebraSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub algebra: AlgebraRef,
    pub side: Side,
    /// Vertex dimensions (quiver algebras); missing vertices have dimension 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<BTreeMap<String, usize>>,
    /// Module dimension (table algebras).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Arrow name or basis label to matrix, as a list of rows.
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, file: &str) -> Result<T, SchemaError> {
    serde_json::from_str(text).map_err(|e| {
        let (line, column, msg) = (e.line(), e.column(), e.to_string());
        let msg = msg.rsplit_once(" at line ").map(|(m, _)| m.to_string()).unwrap_or(msg);
        match e.classify() {
            serde_json::error::Category::Data => SchemaError::Schema {
                file: file.to_string(),
                line,
                column,
                msg,
            },
            _ => SchemaError::Syntax {
                file: file.to_string(),
                line,
                column,
                msg,
            },
        }
    })
}

fn read(path: &Path) -> Result<String, SchemaError> {
    std::fs::read_to_string(path).map_err(|source| SchemaError::Io {
        file: path.display().to_string(),
        source,
    })
}

fn field_err(file: &str, field: impl Into<String>, msg: impl Into<String>) -> SchemaError {
    SchemaError::Field {
        file: file.to_string(),
        field: field.into(),
        msg: msg.into(),
    }
}

pub fn parse_algebra(text: &str, file: &str) -> Result<Arc<Algebra>, SchemaError> {
    let spec: AlgebraSpec = parse(text, file)?;
    build_algebra(&spec, file)
}

pub fn load_algebra(path: &Path) -> Result<Arc<Algebra>, SchemaError> {
    parse_algebra(&read(path)?, &path.display().to_string())
}

pub fn build_algebra(spec: &AlgebraSpec, file: &str) -> Result<Arc<Algebra>, SchemaError> {
    let alg_err = |source| SchemaError::Algebra {
        file: file.to_string(),
        source,
    };
    match spec {
        AlgebraSpec::Quiver {
            p,
            vertices,
            arrows,
            relations,
            length_bound,
        } => {
            let f = Fp::new(*p).map_err(|e| field_err(file, "p", e.to_string()))?;
            let arrows: Vec<(String, String, String)> = arrows
                .iter()
                .map(|a| (a.name.clone(), a.source.clone(), a.target.clone()))
                .collect();
            let q = Quiver::new(vertices.clone(), &arrows).map_err(alg_err)?;
            let rels = relations
                .iter()
                .map(|r| Relation::new(r.iter().map(|t| (t.coeff, t.path.clone())).collect()))
                .collect();
            Ok(Arc::new(Algebra::from_quiver(q, rels, f, *length_bound).map_err(alg_err)?))
        }
        AlgebraSpec::Table {
            p,
            basis,
            unit,
            products,
            idempotents,
        } => {
            let f = Fp::new(*p).map_err(|e| field_err(file, "p", e.to_string()))?;
            let a = Algebra::from_table(f, basis.clone(), products, unit, idempotents.as_deref()).map_err(alg_err)?;
            Ok(Arc::new(a))
        }
    }
}

fn matrix(f: Fp, rows: usize, cols: usize, data: &[Vec<i64>], file: &str, field: &str) -> Result<FpMatrix, SchemaError> {
    let shape_ok = if rows == 0 {
        data.is_empty()
    } else {
        data.len() == rows && data.iter().all(|r| r.len() == cols)
    };
    if !shape_ok {
        let got_cols = data.first().map_or(0, |r| r.len());
        return Err(field_err(
            file,
            field,
            format!("expected a {rows}x{cols} matrix, got {}x{got_cols}", data.len()),
        ));
    }
    Ok(FpMatrix::from_rows(f, cols, data))
}

pub fn parse_module(text: &str, file: &str, base_dir: &Path) -> Result<Module, SchemaError> {
    let spec: ModuleSpec = parse(text, file)?;
    build_module(&spec, file, base_dir)
}

pub fn load_module(path: &Path) -> Result<Module, SchemaError> {
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    parse_module(&read(path)?, &path.display().to_string(), &dir)
}

pub fn build_module(spec: &ModuleSpec, file: &str, base_dir: &Path) -> Result<Module, SchemaError> {
    let base = match &spec.algebra {
        AlgebraRef::Path(p) => load_algebra(&base_dir.join(p))?,
        AlgebraRef::Inline(a) => build_algebra(a, file)?,
    };
    build_module_over(spec, base, file)
}

/// Builds the module of `spec` over an already loaded `base`, ignoring `spec.algebra`.
pub fn build_module_over(spec: &ModuleSpec, base: Arc<Algebra>, file: &str) -> Result<Module, SchemaError> {
    let f = base.field();
    let mod_err = |source| SchemaError::Module {
        file: file.to_string(),
        source,
    };
    if let Some(pres) = base.presentation() {
        let q = &pres.quiver;
        if spec.dim.is_some() {
            return Err(field_err(file, "dim", "quiver modules give `dims` per vertex instead"));
        }
        let given = spec.dims.clone().unwrap_or_default();
        let mut dims = vec![0; q.vertices().len()];
        for (v, d) in &given {
            let i = q
                .vertex_index(v)
                .ok_or_else(|| field_err(file, format!("dims.{v}"), "unknown vertex"))?;
            dims[i] = *d;
        }
        let mut blocks = vec![None; q.arrows().len()];
        for (name, data) in &spec.action {
            let ai = q
                .arrow_index(name)
                .ok_or_else(|| field_err(file, format!("action.{name}"), "unknown arrow"))?;
            let arrow = &q.arrows()[ai];
            let (r, c) = match spec.side {
                Side::Left => (arrow.target, arrow.source),
                Side::Right => (arrow.source, arrow.target),
            };
            blocks[ai] = Some(matrix(f, dims[r], dims[c], data, file, &format!("action.{name}"))?);
        }
        Module::from_quiver_data(base, spec.side, &dims, &blocks).map_err(mod_err)
    } else {
        if spec.dims.is_some() {
            return Err(field_err(file, "dims", "table algebras take `dim` instead"));
        }
        let n = spec.dim.ok_or_else(|| field_err(file, "dim", "missing"))?;
        for key in spec.action.keys() {
            if !base.labels().contains(key) {
                return Err(field_err(file, format!("action.{key}"), "unknown basis element"));
            }
        }
        let mut action = Vec::with_capacity(base.dim());
        for label in base.labels() {
            let data = spec
                .action
                .get(label)
                .ok_or_else(|| field_err(file, format!("action.{label}"), "missing"))?;
            action.push(matrix(f, n, n, data, file, &format!("action.{label}"))?);
        }
        Module::new(base, spec.side, action).map_err(mod_err)
    }
}

fn ints(v: &[u32]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

fn rows(m: &FpMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&x| x as i64).collect()).collect()
}

pub fn algebra_spec(a: &Algebra) -> AlgebraSpec {
    if let Some(pres) = a.presentation() {
        let q = &pres.quiver;
        let name = |v: usize| q.vertices()[v].clone();
        AlgebraSpec::Quiver {
            p: a.p(),
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|ar| ArrowSpec {
                    name: ar.name.clone(),
                    source: name(ar.source),
                    target: name(ar.target),
                })
                .collect(),
            relations: pres
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| TermSpec {
                            coeff: *c,
                            path: path.clone(),
                        })
                        .collect()
                })
                .collect(),
            length_bound: pres.length_bound,
        }
    } else {
        let d = a.dim();
        AlgebraSpec::Table {
            p: a.p(),
            basis: a.labels().to_vec(),
            unit: ints(a.unit()),
            products: (0..d)
                .map(|i| (0..d).map(|j| ints(a.product(i, j))).collect())
                .collect(),
            idempotents: Some(a.idempotents().iter().map(|e| ints(e)).collect()),
        }
    }
}

/// The module as a self-contained spec with its algebra inline.
pub fn module_spec(m: &Module) -> ModuleSpec {
    let base = m.base();
    let algebra = AlgebraRef::Inline(Box::new(algebra_spec(base)));
    if let Some((dims, blocks)) = m.quiver_data() {
        let q = &base.presentation().expect("quiver data implies a presentation").quiver;
        let dims_map = q.vertices().iter().cloned().zip(dims).collect();
        let action = q
            .arrows()
            .iter()
            .zip(&blocks)
            .filter(|(_, b)| !b.is_zero())
            .map(|(a, b)| (a.name.clone(), rows(b)))
            .collect();
        ModuleSpec {
            algebra,
            side: m.side(),
            dims: Some(dims_map),
            dim: None,
            action,
        }
    } else {
        ModuleSpec {
            algebra,
            side: m.side(),
            dims: None,
            dim: Some(m.dim()),
            action: base.labels().iter().cloned().zip(m.action().iter().map(rows)).collect(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("specs serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = r#"{
  "kind": "quiver",
  "p": 3,
  "vertices": ["1", "2"],
  "arrows": [{"name": "a", "source": "1", "target": "2"}]
}"#;

    #[test]
    fn quiver_module_round_trip() {
        let text = format!(
            r#"{{"algebra": {A2}, "side": "left", "dims": {{"1": 1, "2": 1}}, "action": {{"a": [[1]]}}}}"#
        );
        let m = parse_module(&text, "p1.json", Path::new(".")).unwrap();
        assert_eq!(m.dim(), 2);
        let again = parse_module(&to_json(&module_spec(&m)), "again.json", Path::new(".")).unwrap();
        assert_eq!(again.dim_vector(), m.dim_vector());
        assert!(crate::module::in_add(&again.relabel(m.base().clone(), Side::Left).unwrap(), &m).unwrap());
    }

    #[test]
    fn table_round_trip() {
        let a = parse_algebra(A2, "a2.json").unwrap();
        let e = crate::module::end_algebra(&Module::regular(a, Side::Left)).unwrap();
        let spec = algebra_spec(&e.algebra);
        let back = build_algebra(&spec, "end.json").unwrap();
        assert!(crate::algebra::same_algebra(&back, &e.algebra));
        let m = module_spec(&e.module);
        let mb = build_module(&m, "m.json", Path::new(".")).unwrap();
        assert_eq!(mb.action(), e.module.action());
    }

    #[test]
    fn diagnostics() {
        match parse_algebra("{\n  \"kind\": \"quiver\",\n  \"p\": 3,\n", "bad.json") {
            Err(SchemaError::Syntax { line, .. }) => assert!(line >= 3),
            other => panic!("{other:?}"),
        }
        match parse_algebra("{\"kind\": \"quiver\", \"vertices\": [], \"arrows\": []}", "x.json") {
            Err(SchemaError::Schema { msg, .. }) => assert!(msg.contains("missing field `p`"), "{msg}"),
            other => panic!("{other:?}"),
        }
        match parse_algebra("{\"kind\": \"quiver\", \"p\": 4, \"vertices\": [], \"arrows\": []}", "x.json") {
            Err(SchemaError::Field { field, .. }) => assert_eq!(field, "p"),
            other => panic!("{other:?}"),
        }
        let text = format!(r#"{{"algebra": {A2}, "side": "left", "dims": {{"1": 1, "2": 1}}, "action": {{"a": [[1, 0]]}}}}"#);
        match parse_module(&text, "m.json", Path::new(".")) {
            Err(SchemaError::Field { field, .. }) => assert_eq!(field, "action.a"),
            other => panic!("{other:?}"),
        }
        let text = format!(r#"{{"algebra": {A2}, "side": "left", "dims": {{"3": 1}}}}"#);
        assert!(matches!(parse_module(&text, "m.json", Path::new(".")), Err(SchemaError::Field { .. })));
    }
}
