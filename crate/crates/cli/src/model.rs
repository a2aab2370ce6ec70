//! Model files (JSON, format version 1).
//!
//! ```json
//! { "version": 1,
//!   "network": {
//!     "signals": ["V", {"name": "x", "dim": 2}],
//!     "components": [
//!       { "name": "A", "signals": ["V"], "rows": [[[0, 1]]] } ] } }
//! ```
//!
//! or `"svar": { "X": [[poly, ...], ...], "Q": [[poly, ...], ...],
//! "outputs": [...], "inputs": [...] }`. A polynomial is an array of
//! coefficients in ascending powers of the shift; a coefficient is a JSON
//! integer or a string `"num/den"`. Floats are rejected.
//!
//! A component listing `signals` only gives columns for those blocks; the
//! others are zero-filled. A file may also carry a `permutation` record
//! (written by `svar`), which is informational.

use std::fmt;

use behavnet::{
    ColumnPermutation, Network, Poly, PolyMatrix, Rational, SignalBlock, SignalSpace, SvarModel,
};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{schema, CliError, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub network: Option<NetworkJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svar: Option<SvarJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<PermutationJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkJson {
    pub signals: Vec<SignalJson>,
    pub components: Vec<ComponentJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged, expecting = "a signal name or {\"name\": ..., \"dim\": ...}")]
pub enum SignalJson {
    Scalar(String),
    Block { name: String, dim: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signals: Option<Vec<String>>,
    pub rows: Vec<Vec<PolyJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SvarJson {
    #[serde(rename = "X")]
    pub x: Vec<Vec<PolyJson>>,
    #[serde(rename = "Q", default)]
    pub q: Vec<Vec<PolyJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<String>>,
}

/// Where the SVAR signals sit in the network: position `k` of `(y, u)` is
/// network column `order[k]` (0-based), named `columns[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationJson {
    pub order: Vec<usize>,
    pub columns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyJson(pub Vec<Coeff>);

/// Exact coefficient: JSON integer or `"num/den"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coeff(pub Rational);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Ok(v) = self.0.to_string().parse::<i64>() {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;

        impl Visitor<'_> for CoeffVisitor {
            type Value = Coeff;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"num/den\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coeff, E> {
                Ok(Coeff(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coeff, E> {
                Ok(Coeff(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Coeff, E> {
                Err(E::custom(format!(
                    "floating-point coefficient {v} is not allowed, write it as \"num/den\""
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coeff, E> {
                parse_rational(v).map(Coeff).map_err(E::custom)
            }
        }

        d.deserialize_any(CoeffVisitor)
    }
}

/// `"n"` or `"n/d"` with integer `n`, nonzero `d`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    t.parse::<Rational>()
        .map_err(|_| format!("invalid rational `{text}` (expected an integer or \"num/den\")"))
}

impl PolyJson {
    fn to_poly(&self) -> Poly {
        Poly::new(self.0.iter().map(|c| c.0.clone()).collect())
    }

    fn from_poly(p: &Poly) -> Self {
        PolyJson(p.coeffs().iter().cloned().map(Coeff).collect())
    }
}

/// A parsed model file.
#[derive(Debug, Clone)]
pub enum Model {
    Network(Network),
    Svar(SvarModel),
}

impl Model {
    /// The network view; SVAR models become one component per equation.
    pub fn to_network(&self) -> Network {
        match self {
            Model::Network(n) => n.clone(),
            Model::Svar(m) => m.to_network(),
        }
    }
}

pub fn parse_model(text: &str) -> Result<Model> {
    let file: ModelFile = serde_json::from_str(text)?;
    if file.version != FORMAT_VERSION {
        return Err(schema(format!(
            "unsupported format version {} (expected {FORMAT_VERSION})",
            file.version
        )));
    }
    match (file.network, file.svar) {
        (Some(n), None) => network_from_json(&n).map(Model::Network),
        (None, Some(s)) => svar_from_json(&s).map(Model::Svar),
        _ => Err(schema("exactly one of `network` and `svar` must be given")),
    }
}

fn matrix_from_rows(rows: &[Vec<PolyJson>], cols: usize, what: &str) -> Result<PolyMatrix> {
    let mut polys = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(schema(format!(
                "{what}, row {}: expected {cols} entries, found {}",
                i + 1,
                row.len()
            )));
        }
        polys.push(row.iter().map(PolyJson::to_poly).collect());
    }
    PolyMatrix::from_rows(cols, polys).map_err(|e| schema(format!("{what}: {e}")))
}

fn network_from_json(doc: &NetworkJson) -> Result<Network> {
    let blocks = doc
        .signals
        .iter()
        .map(|s| match s {
            SignalJson::Scalar(name) => SignalBlock::new(name.clone(), 1),
            SignalJson::Block { name, dim } => SignalBlock::new(name.clone(), *dim),
        })
        .collect();
    let space = SignalSpace::new(blocks).map_err(|e| schema(format!("signals: {e}")))?;
    if doc.components.is_empty() {
        return Err(schema("network has no components"));
    }
    let mut components = Vec::with_capacity(doc.components.len());
    for (ci, comp) in doc.components.iter().enumerate() {
        let name = comp.name.clone().unwrap_or_else(|| format!("Σ{}", ci + 1));
        let what = format!("component `{name}`");
        let cols: Vec<usize> = match &comp.signals {
            None => (0..space.q()).collect(),
            Some(names) => {
                let mut cols = Vec::new();
                for (k, n) in names.iter().enumerate() {
                    if names[..k].contains(n) {
                        return Err(schema(format!("{what}: signal `{n}` listed twice")));
                    }
                    let b = space
                        .block_index(n)
                        .ok_or_else(|| schema(format!("{what}: unknown signal `{n}`")))?;
                    cols.extend(space.block_columns(b));
                }
                cols
            }
        };
        let local = matrix_from_rows(&comp.rows, cols.len(), &what)?;
        let mut full = PolyMatrix::zeros(local.rows(), space.q());
        for i in 0..local.rows() {
            for (k, &c) in cols.iter().enumerate() {
                full.set(i, c, local.get(i, k).clone());
            }
        }
        components.push((name, full));
    }
    Network::new(space, components).map_err(|e| schema(e.to_string()))
}

fn svar_from_json(doc: &SvarJson) -> Result<SvarModel> {
    let n = doc.x.len();
    let x = matrix_from_rows(&doc.x, n, "X")?;
    let q = if doc.q.is_empty() {
        PolyMatrix::zeros(n, 0)
    } else {
        if doc.q.len() != n {
            return Err(schema(format!(
                "Q: expected {n} rows, found {}",
                doc.q.len()
            )));
        }
        matrix_from_rows(&doc.q, doc.q[0].len(), "Q")?
    };
    let model = SvarModel::validate(x, q).map_err(|e| match e {
        behavnet::Error::NotSquare { .. } | behavnet::Error::DimensionMismatch { .. } => {
            schema(e.to_string())
        }
        other => CliError::Hypothesis(other),
    })?;
    if doc.outputs.is_none() && doc.inputs.is_none() {
        return Ok(model);
    }
    let outputs = doc
        .outputs
        .clone()
        .unwrap_or_else(|| model.output_names().to_vec());
    let inputs = doc
        .inputs
        .clone()
        .unwrap_or_else(|| model.input_names().to_vec());
    model
        .with_names(outputs, inputs)
        .map_err(|e| schema(format!("svar names: {e}")))
}

fn rows_of(m: &PolyMatrix) -> Vec<Vec<PolyJson>> {
    m.iter_rows()
        .map(|row| row.iter().map(PolyJson::from_poly).collect())
        .collect()
}

pub fn network_to_file(net: &Network, perm: Option<PermutationJson>) -> ModelFile {
    let signals = net
        .space()
        .blocks()
        .iter()
        .map(|b| match b.dim {
            1 => SignalJson::Scalar(b.name.clone()),
            dim => SignalJson::Block {
                name: b.name.clone(),
                dim,
            },
        })
        .collect();
    let components = net
        .components()
        .iter()
        .map(|c| ComponentJson {
            name: Some(c.name.clone()),
            signals: None,
            rows: rows_of(c.kernel.r()),
        })
        .collect();
    ModelFile {
        version: FORMAT_VERSION,
        network: Some(NetworkJson {
            signals,
            components,
        }),
        svar: None,
        permutation: perm,
    }
}

pub fn svar_to_file(model: &SvarModel, perm: Option<PermutationJson>) -> ModelFile {
    ModelFile {
        version: FORMAT_VERSION,
        network: None,
        svar: Some(SvarJson {
            x: rows_of(model.x()),
            q: rows_of(model.q()),
            outputs: Some(model.output_names().to_vec()),
            inputs: Some(model.input_names().to_vec()),
        }),
        permutation: perm,
    }
}

pub fn permutation_record(perm: &ColumnPermutation, space: &SignalSpace) -> PermutationJson {
    let names = space.column_names();
    PermutationJson {
        order: perm.order.clone(),
        columns: perm.order.iter().map(|&c| names[c].clone()).collect(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json(file: &ModelFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("model files always serialize");
    s.push('\n');
    s
}
