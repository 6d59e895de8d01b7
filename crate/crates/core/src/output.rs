//! JSON documents written by the command-line tool. Mathematical values are
//! exact decimal strings (`"3"`, `"-1/2"`); ids, counts and dimensions are
//! plain integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mtf::{MTFFan, PathCatalog, TFClassData};
use crate::oracle::FanVerification;
use crate::polyhedra::{Cone, Polytope, Q, Z};
use crate::quiver::DimVector;
use crate::report::Report;
use crate::stability::StabilityVector;

fn zs(v: &[Z]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn dims(d: &DimVector) -> Vec<String> {
    d.as_slice().iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub id: usize,
    pub dim: usize,
    pub vertex_ids: Vec<usize>,
    pub children: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub n: usize,
    pub vertices: Vec<Vec<String>>,
    pub faces: Vec<FaceJson>,
}

impl PolytopeJson {
    pub fn new(p: &Polytope) -> Self {
        Self {
            n: p.ambient_dim(),
            vertices: p.vertices().iter().map(|v| qs(v)).collect(),
            faces: p
                .faces()
                .iter()
                .enumerate()
                .map(|(id, f)| FaceJson {
                    id,
                    dim: f.dim,
                    vertex_ids: f.vertex_ids.clone(),
                    children: f.children.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub dim: usize,
    pub lineality: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
    pub equalities: Vec<Vec<String>>,
    pub inequalities: Vec<Vec<String>>,
}

impl ConeJson {
    pub fn new(c: &Cone) -> Self {
        let rows = |m: &[Vec<Z>]| m.iter().map(|r| zs(r)).collect();
        Self {
            dim: c.dim(),
            lineality: rows(c.lineality()),
            rays: rows(c.rays()),
            equalities: rows(c.equalities()),
            inequalities: rows(c.inequalities()),
        }
    }

    /// Rebuilds the cone from its inequality description, and checks that
    /// the generator description gives the same canonical cone.
    pub fn to_cone(&self, n: usize) -> Result<Cone> {
        let parse = |rows: &[Vec<String>]| -> Result<Vec<Vec<Q>>> {
            rows.iter()
                .map(|r| {
                    if r.len() != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            got: r.len(),
                        });
                    }
                    r.iter()
                        .map(|x| {
                            x.parse::<Q>().map_err(|_| Error::Parse {
                                line: 0,
                                column: 0,
                                message: format!("`{x}` is not a rational number"),
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let from_h = Cone::from_h(n, &parse(&self.equalities)?, &parse(&self.inequalities)?);
        let from_v = Cone::from_v(n, &parse(&self.lineality)?, &parse(&self.rays)?);
        if from_h != from_v {
            return Err(Error::Inconsistent("cone descriptions disagree".into()));
        }
        Ok(from_h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub t: Vec<String>,
    pub tbar: Vec<String>,
    pub w: Vec<String>,
    pub f: Vec<String>,
    pub fbar: Vec<String>,
    pub supp: Vec<Vec<String>>,
}

impl ClassJson {
    pub fn new(d: &TFClassData) -> Self {
        Self {
            t: dims(&d.t_dim()),
            tbar: dims(&d.tbar_dim()),
            w: dims(&d.w_dim()),
            f: dims(&d.f_dim()),
            fbar: dims(&d.fbar_dim()),
            supp: d.supp_dims().iter().map(dims).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanConeJson {
    pub id: usize,
    #[serde(flatten)]
    pub cone: ConeJson,
    pub newton_face_id: usize,
    /// Ids of the cones that are faces of this one.
    pub faces: Vec<usize>,
    pub witness: Vec<String>,
    pub class: ClassJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub n: usize,
    pub p: u32,
    pub module_dims: Vec<usize>,
    pub cones: Vec<FanConeJson>,
}

impl FanJson {
    pub fn new(fan: &MTFFan) -> Self {
        Self {
            n: fan.n(),
            p: fan.module().field().p(),
            module_dims: fan.module().dims().to_vec(),
            cones: (0..fan.len())
                .map(|i| FanConeJson {
                    id: i,
                    cone: ConeJson::new(fan.cone(i)),
                    newton_face_id: i,
                    faces: fan.fan().faces_of(i).to_vec(),
                    witness: qs(fan.data(i).witness.as_slice()),
                    class: ClassJson::new(fan.data(i)),
                })
                .collect(),
        }
    }

    pub fn cones(&self) -> Result<Vec<Cone>> {
        self.cones.iter().map(|c| c.cone.to_cone(self.n)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallJson {
    pub n: usize,
    pub cone_id: usize,
    pub cone: ConeJson,
    /// Ids of the fan cones that are faces of the wall.
    pub faces: Vec<usize>,
}

impl WallJson {
    pub fn new(fan: &MTFFan) -> Result<Self> {
        Ok(Self {
            n: fan.n(),
            cone_id: fan.wall_cone_id()?,
            cone: ConeJson::new(&fan.wall_cone()?),
            faces: fan.wall_faces()?,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyJson {
    pub theta: Vec<String>,
    pub cone_id: usize,
    pub cone: ConeJson,
    pub class: ClassJson,
    pub on_wall: Option<bool>,
    pub report: Report,
}

impl ClassifyJson {
    pub fn new(fan: &MTFFan, theta: &StabilityVector, report: Report) -> Result<Self> {
        let id = fan.locate(theta)?;
        let on_wall = match fan.wall_cone() {
            Ok(w) => Some(w.contains(theta.as_slice())),
            Err(Error::ZeroModule) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            theta: qs(theta.as_slice()),
            cone_id: id,
            cone: ConeJson::new(fan.cone(id)),
            class: ClassJson::new(fan.data(id)),
            on_wall,
            report,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyJson {
    pub ok: bool,
    pub bound: i64,
    pub seed: u64,
    pub samples: usize,
    pub classes_observed: usize,
    pub pairs_checked: usize,
    pub sampling: Report,
    pub structure: Report,
    pub dim_formula: Report,
}

impl VerifyJson {
    pub fn new(bound: i64, seed: u64, v: FanVerification, structure: Report, dim_formula: Report) -> Self {
        Self {
            ok: v.report.is_ok() && structure.is_ok() && dim_formula.is_ok(),
            bound,
            seed,
            samples: v.samples,
            classes_observed: v.classes_observed,
            pairs_checked: v.pairs_checked,
            sampling: v.report,
            structure,
            dim_formula,
        }
    }

    pub fn violation_count(&self) -> usize {
        self.sampling.violations.len() + self.structure.violations.len() + self.dim_formula.violations.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PathJson {
    pub cones: Vec<usize>,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathsJson {
    pub sides_agree: bool,
    pub paths: Vec<PathJson>,
    /// Indices into `paths` of the paths that cannot be extended.
    pub maximal: Vec<usize>,
}

impl PathsJson {
    pub fn new(fan: &MTFFan, cat: &PathCatalog) -> Self {
        let p = fan.polytope();
        Self {
            sides_agree: cat.sides_agree,
            paths: cat
                .sigma_paths
                .iter()
                .zip(&cat.newton_paths)
                .map(|(s, v)| PathJson {
                    cones: s.clone(),
                    vertices: v.iter().map(|&i| qs(&p.vertices()[i])).collect(),
                })
                .collect(),
            maximal: cat.maximal.clone(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
