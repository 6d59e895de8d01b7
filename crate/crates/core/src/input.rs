//! The JSON input document: an algebra together with one module over it.
//!
//! ```json
//! {
//!   "p": 2,
//!   "vertices": ["1", "2"],
//!   "arrows": [{ "name": "a", "from": "1", "to": "2" }],
//!   "relations": [[{ "coeff": 1, "path": ["a", "b"] }]],
//!   "module": { "dims": { "1": 1, "2": 1 }, "maps": { "a": [[1]] } }
//! }
//! ```
//!
//! Matrices are row-major with shape `dims[to] x dims[from]`. Vertices
//! missing from `dims` have dimension zero; arrows missing from `maps` act
//! by zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{BoundQuiverAlgebra, Module};

/// Vertex labels may be written as JSON strings or integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Text(String),
    Number(i64),
}

impl Label {
    pub fn as_string(&self) -> String {
        match self {
            Label::Text(s) => s.clone(),
            Label::Number(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub from: Label,
    pub to: Label,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub p: u32,
    pub vertices: Vec<Label>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<Vec<TermDoc>>,
    #[serde(default)]
    pub module: ModuleDoc,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn algebra(&self) -> Result<BoundQuiverAlgebra> {
        BoundQuiverAlgebra::new(
            self.p,
            self.vertices.iter().map(Label::as_string).collect(),
            self.arrows
                .iter()
                .map(|a| (a.name.clone(), a.from.as_string(), a.to.as_string()))
                .collect(),
            self.relations
                .iter()
                .map(|rel| rel.iter().map(|t| (t.coeff, t.path.clone())).collect())
                .collect(),
        )
    }

    /// Builds the module over a (separately validated) algebra.
    pub fn module_over(&self, algebra: Arc<BoundQuiverAlgebra>) -> Result<Module> {
        for label in self.module.dims.keys() {
            if algebra.vertex_index(label).is_none() {
                return Err(Error::InvalidModule(format!("dims: unknown vertex `{label}`")));
            }
        }
        for name in self.module.maps.keys() {
            if algebra.arrow_index(name).is_none() {
                return Err(Error::InvalidModule(format!("maps: unknown arrow `{name}`")));
            }
        }
        let dims: Vec<usize> = algebra
            .vertices()
            .iter()
            .map(|v| self.module.dims.get(v).copied().unwrap_or(0))
            .collect();
        let maps = algebra
            .arrows()
            .iter()
            .map(|a| {
                self.module
                    .maps
                    .get(&a.name)
                    .cloned()
                    .unwrap_or_else(|| vec![vec![0; dims[a.source]]; dims[a.target]])
            })
            .collect();
        Module::from_integer_maps(algebra, dims, maps)
    }

    pub fn build(&self) -> Result<Module> {
        let algebra = Arc::new(self.algebra()?);
        self.module_over(algebra)
    }
}

/// Parses a document and builds its module.
pub fn load_module(text: &str) -> Result<Module> {
    Document::parse(text)?.build()
}
