//! The fan of a module: the normal fan of its Newton polytope, with every
//! cone decorated by the torsion data of the module at its interior points.

use std::collections::BTreeSet;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyhedra::linalg::{add, scale, z_to_q};
use crate::polyhedra::{normal_fan, vertex_order, Cone, Face, GeneralizedFan, NormalFan, Polytope, VertexOrder, Q};
use crate::quiver::{DimVector, Module, Submodule};
use crate::stability::{
    canonical_sequences_in, supp_dims, supp_factors_between, t_set_in, values, StabilityVector, SuppFactor, TSet,
};
use crate::sublattice::{enumerate_submodules_with, newton_polytope_of, EnumLimits, SubmoduleSet};

pub const DEFAULT_SEED: u64 = 7;

/// Torsion data attached to one cone.
#[derive(Clone, Debug)]
pub struct TFClassData {
    pub cone_id: usize,
    /// Vertex ids of the corresponding Newton face.
    pub newton_face: Vec<usize>,
    pub witness: StabilityVector,
    pub t: Submodule,
    pub tbar: Submodule,
    pub t_index: usize,
    pub tbar_index: usize,
    pub w: Module,
    pub f: Module,
    pub fbar: Module,
    pub t_set: TSet,
    pub supp: Vec<SuppFactor>,
}

impl TFClassData {
    pub fn t_dim(&self) -> DimVector {
        self.t.dim_vector()
    }

    pub fn tbar_dim(&self) -> DimVector {
        self.tbar.dim_vector()
    }

    pub fn w_dim(&self) -> DimVector {
        self.w.dim_vector()
    }

    pub fn f_dim(&self) -> DimVector {
        self.f.dim_vector()
    }

    pub fn fbar_dim(&self) -> DimVector {
        self.fbar.dim_vector()
    }

    /// Sorted dimension vectors of the stable factors of `w`.
    pub fn supp_dims(&self) -> Vec<DimVector> {
        supp_dims(&self.supp)
    }

    /// Rank of the span of the support dimension vectors.
    pub fn supp_rank(&self) -> usize {
        let rows: Vec<Vec<Q>> = self
            .supp
            .iter()
            .map(|s| s.dim.as_slice().iter().map(|&x| Q::from_integer(x.into())).collect())
            .collect();
        crate::polyhedra::linalg::rank(&rows, self.w.n())
    }
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub limits: EnumLimits,
    pub seed: u64,
    /// Extra random interior points per cone at which the class data is re-checked.
    pub samples_per_cone: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            limits: EnumLimits::default(),
            seed: DEFAULT_SEED,
            samples_per_cone: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MTFFan {
    module: Module,
    subs: SubmoduleSet,
    normal: NormalFan,
    data: Vec<TFClassData>,
    wall: Option<Cone>,
}

/// The sign of a facet of a maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetSign {
    /// Cone id of the facet.
    pub facet: usize,
    /// Cone id of the other maximal cone through the facet.
    pub neighbour: usize,
    pub plus: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FacetPartition {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

/// Increasing paths of maximal cones and their Newton-vertex images.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathCatalog {
    /// Cone-id sequences, including the length-zero ones.
    pub sigma_paths: Vec<Vec<usize>>,
    /// Vertex-id sequences, aligned with `sigma_paths`.
    pub newton_paths: Vec<Vec<usize>>,
    /// Indices into the path lists of the paths that cannot be extended at
    /// either end.
    pub maximal: Vec<usize>,
    /// Whether the increasing Newton paths enumerated on the polytope side
    /// are exactly the images of the increasing cone paths.
    pub sides_agree: bool,
}

pub fn build_mtf_fan(m: &Module) -> Result<MTFFan> {
    build_mtf_fan_with(m, &BuildOptions::default())
}

pub fn build_mtf_fan_with(m: &Module, options: &BuildOptions) -> Result<MTFFan> {
    let subs = enumerate_submodules_with(m, options.limits)?;
    let _ = subs.below(0);
    let polytope = newton_polytope_of(&subs)?;
    let normal = normal_fan(&polytope);
    let data = (0..normal.fan.len())
        .into_par_iter()
        .map(|i| {
            let cone = normal.cone(i);
            let witness = StabilityVector::new(cone.relative_interior_point());
            let data = class_data_at(&subs, &polytope, i, witness)?;
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            for _ in 0..options.samples_per_cone {
                let theta = StabilityVector::new(random_interior_point(cone, &mut rng));
                let other = class_data_at(&subs, &polytope, i, theta.clone())?;
                if other.t_set != data.t_set
                    || other.t_index != data.t_index
                    || other.tbar_index != data.tbar_index
                    || other.supp_dims() != data.supp_dims()
                {
                    return Err(Error::Inconsistent(format!(
                        "class data of cone {i} differs at {} and {theta}",
                        data.witness
                    )));
                }
            }
            Ok(data)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut fan = MTFFan {
        module: m.clone(),
        subs,
        normal,
        data,
        wall: None,
    };
    if !m.is_zero() {
        fan.wall = Some(fan.compute_wall()?);
    }
    Ok(fan)
}

fn class_data_at(subs: &SubmoduleSet, polytope: &Polytope, cone_id: usize, witness: StabilityVector) -> Result<TFClassData> {
    let cs = canonical_sequences_in(&witness, subs)?;
    let t_set = t_set_in(&witness, subs, cs.t_index);
    let supp = supp_factors_between(&witness, subs, cs.t_index, cs.tbar_index)?;
    Ok(TFClassData {
        cone_id,
        newton_face: polytope.face(cone_id).vertex_ids.clone(),
        witness,
        t: cs.t,
        tbar: cs.tbar,
        t_index: cs.t_index,
        tbar_index: cs.tbar_index,
        w: cs.w,
        f: cs.f,
        fbar: cs.fbar,
        t_set,
        supp,
    })
}

/// A positive combination of all rays plus an arbitrary lineality vector.
pub fn random_interior_point(cone: &Cone, rng: &mut impl Rng) -> Vec<Q> {
    let mut x = vec![Q::zero(); cone.ambient_dim()];
    for r in cone.rays() {
        let c = Q::new(rng.gen_range(1..=6).into(), rng.gen_range(1..=3).into());
        x = add(&x, &scale(&z_to_q(r), &c));
    }
    for l in cone.lineality() {
        let c = Q::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=3).into());
        x = add(&x, &scale(&z_to_q(l), &c));
    }
    x
}

impl MTFFan {
    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn n(&self) -> usize {
        self.module.n()
    }

    pub fn submodules(&self) -> &SubmoduleSet {
        &self.subs
    }

    pub fn polytope(&self) -> &Polytope {
        &self.normal.polytope
    }

    pub fn fan(&self) -> &GeneralizedFan {
        &self.normal.fan
    }

    pub fn cone(&self, i: usize) -> &Cone {
        self.normal.cone(i)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self, i: usize) -> &TFClassData {
        &self.data[i]
    }

    pub fn all_data(&self) -> &[TFClassData] {
        &self.data
    }

    pub fn newton_face(&self, i: usize) -> &Face {
        self.polytope().face(i)
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.cone(i).dim() == self.n()
    }

    /// Id of the cone whose relative interior contains `theta`.
    pub fn locate(&self, theta: &StabilityVector) -> Result<usize> {
        if theta.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: theta.len(),
            });
        }
        Ok(self.normal.locate(theta.as_slice()))
    }

    pub fn class_of(&self, theta: &StabilityVector) -> Result<(&Cone, &TFClassData)> {
        let i = self.locate(theta)?;
        Ok((self.cone(i), &self.data[i]))
    }

    fn vertex_of(&self, sub: usize) -> usize {
        let d: Vec<Q> = self.subs.dim_vector(sub).as_slice().iter().map(|&x| Q::from_integer(x.into())).collect();
        self.polytope().vertex_index(&d).expect("the zero and full submodules give vertices")
    }

    /// Id of the smallest Newton face containing `0` and `[M]`; its cone is
    /// the wall.
    pub fn wall_cone_id(&self) -> Result<usize> {
        if self.module.is_zero() {
            return Err(Error::ZeroModule);
        }
        let v0 = self.vertex_of(self.subs.zero_index());
        let vm = self.vertex_of(self.subs.full_index());
        Ok(self.polytope().smallest_face_containing(&[v0, vm]))
    }

    /// The wall, as the intersection of the maximal cones at the vertices
    /// `0` and `[M]`; checked against the cone of the smallest face through
    /// both.
    pub fn wall_cone(&self) -> Result<Cone> {
        self.wall.clone().ok_or(Error::ZeroModule)
    }

    fn compute_wall(&self) -> Result<Cone> {
        let id = self.wall_cone_id()?;
        let p = self.polytope();
        let lower = self.cone(p.vertex_face_id(self.vertex_of(self.subs.zero_index())));
        let upper = self.cone(p.vertex_face_id(self.vertex_of(self.subs.full_index())));
        let wall = lower.intersection(upper);
        if &wall != self.cone(id) {
            return Err(Error::Inconsistent("wall differs from the cone of the smallest face".into()));
        }
        Ok(wall)
    }

    /// The span of the dual basis vectors of the vertices where `M` vanishes;
    /// checked against the intersection of all cones and the cone at `0`.
    pub fn smallest_cone(&self) -> Result<Cone> {
        let n = self.n();
        let basis: Vec<Vec<Q>> = (0..n)
            .filter(|&i| self.module.dims()[i] == 0)
            .map(|i| {
                let mut e = vec![Q::zero(); n];
                e[i] = Q::from_integer(1.into());
                e
            })
            .collect();
        let cone = Cone::subspace(n, &basis);
        let at_zero = self.cone(self.locate(&StabilityVector::zero(n))?);
        if &cone != at_zero || cone != self.fan().common_intersection() {
            return Err(Error::Inconsistent("smallest cone routes disagree".into()));
        }
        Ok(cone)
    }

    fn require_maximal(&self, sigma: usize) -> Result<()> {
        if sigma >= self.len() || !self.is_maximal(sigma) {
            return Err(Error::NotMaximal(sigma));
        }
        Ok(())
    }

    /// Signs of the facets of a maximal cone, by comparing Newton vertices.
    /// Each sign is re-derived from the torsion class at the facet witness.
    pub fn facet_signs(&self, sigma: usize) -> Result<Vec<FacetSign>> {
        self.require_maximal(sigma)?;
        let p = self.polytope();
        let v = self.newton_face(sigma).vertex_ids[0];
        let mut signs = Vec::new();
        for &tau in self.fan().faces_of(sigma) {
            if self.cone(tau).dim() + 1 != self.n() {
                continue;
            }
            let edge = &self.newton_face(tau).vertex_ids;
            let w = *edge
                .iter()
                .find(|&&u| u != v)
                .ok_or_else(|| Error::Inconsistent(format!("facet {tau} is not dual to an edge")))?;
            let plus = match vertex_order(&p.vertices()[v], &p.vertices()[w]) {
                VertexOrder::Greater => true,
                VertexOrder::Less => false,
                _ => {
                    return Err(Error::Inconsistent(format!(
                        "edge {edge:?} joins incomparable vertices"
                    )))
                }
            };
            if plus != self.facet_is_plus_by_torsion(sigma, tau) {
                return Err(Error::Inconsistent(format!(
                    "facet {tau} of cone {sigma}: vertex order and torsion test disagree"
                )));
            }
            signs.push(FacetSign {
                facet: tau,
                neighbour: p.vertex_face_id(w),
                plus,
            });
        }
        Ok(signs)
    }

    /// Whether `t_σ` fails to be torsion at the witness of `τ`: some nonzero
    /// quotient of it has `θ = 0`.
    pub fn facet_is_plus_by_torsion(&self, sigma: usize, tau: usize) -> bool {
        let theta = &self.data[tau].witness;
        let vals = values(theta, &self.subs);
        let t = self.data[sigma].t_index;
        self.subs.below(t).iter().any(|&l| vals[l] >= vals[t])
    }

    pub fn facet_partition(&self, sigma: usize) -> Result<FacetPartition> {
        let mut part = FacetPartition::default();
        for s in self.facet_signs(sigma)? {
            if s.plus {
                part.plus.push(s.facet);
            } else {
                part.minus.push(s.facet);
            }
        }
        Ok(part)
    }

    /// The facets making up the positive and negative parts of the boundary.
    pub fn boundary_regions(&self, sigma: usize) -> Result<(Vec<Cone>, Vec<Cone>)> {
        let part = self.facet_partition(sigma)?;
        let cones = |ids: &[usize]| ids.iter().map(|&i| self.cone(i).clone()).collect();
        Ok((cones(&part.plus), cones(&part.minus)))
    }

    /// All increasing paths of maximal cones, with the matching Newton
    /// paths.
    pub fn fan_paths(&self) -> Result<PathCatalog> {
        let maximal = self.fan().maximal();
        let n = self.n();
        // Cone side: adjacency through shared facets, oriented by the
        // torsion test on both sides.
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (a, &s) in maximal.iter().enumerate() {
            for &t in &maximal[a + 1..] {
                let meet = self.cone(s).intersection(self.cone(t));
                if meet.dim() + 1 != n {
                    continue;
                }
                let tau = self
                    .fan()
                    .index_of(&meet)
                    .ok_or_else(|| Error::Inconsistent("shared facet is not a cone of the fan".into()))?;
                let (s_plus, t_plus) = (self.facet_is_plus_by_torsion(s, tau), self.facet_is_plus_by_torsion(t, tau));
                match (s_plus, t_plus) {
                    (false, true) => up[s].push(t),
                    (true, false) => up[t].push(s),
                    _ => {
                        return Err(Error::Inconsistent(format!(
                            "facet {tau} has the same sign on both sides"
                        )))
                    }
                }
            }
        }
        let sigma_paths = increasing_paths(&maximal, &up, maximal.len())?;
        let vertex = |c: usize| self.newton_face(c).vertex_ids[0];
        let newton_paths: Vec<Vec<usize>> = sigma_paths.iter().map(|p| p.iter().map(|&c| vertex(c)).collect()).collect();

        // Polytope side: edges oriented by the coordinatewise order.
        let p = self.polytope();
        let nv = p.vertices().len();
        let mut vup: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for face in p.faces().iter().filter(|f| f.dim == 1) {
            let (a, b) = (face.vertex_ids[0], face.vertex_ids[1]);
            match vertex_order(&p.vertices()[a], &p.vertices()[b]) {
                VertexOrder::Less => vup[a].push(b),
                VertexOrder::Greater => vup[b].push(a),
                _ => {}
            }
        }
        let direct: BTreeSet<Vec<usize>> = increasing_paths(&(0..nv).collect::<Vec<_>>(), &vup, nv)?.into_iter().collect();
        let mapped: BTreeSet<Vec<usize>> = newton_paths.iter().cloned().collect();

        let has_pred: BTreeSet<usize> = up.iter().flatten().copied().collect();
        let maximal_ids = (0..sigma_paths.len())
            .filter(|&i| {
                let path = &sigma_paths[i];
                up[*path.last().expect("nonempty path")].is_empty() && !has_pred.contains(&path[0])
            })
            .collect();
        Ok(PathCatalog {
            sides_agree: direct == mapped && mapped.len() == newton_paths.len(),
            sigma_paths,
            newton_paths,
            maximal: maximal_ids,
        })
    }

    /// Whether `σ'` is cut out of `σ` by the vanishing of `θ` on the support
    /// of the class of `σ'`.
    pub fn face_restriction_check(&self, sigma: usize, sigma_prime: usize) -> Result<bool> {
        if sigma >= self.len() || sigma_prime >= self.len() || !self.fan().faces_of(sigma).contains(&sigma_prime) {
            return Err(Error::NotAFace);
        }
        let cone = self.cone(sigma);
        let mut eqs = cone.equalities_q();
        eqs.extend(
            self.data[sigma_prime]
                .supp
                .iter()
                .map(|s| s.dim.as_slice().iter().map(|&x| Q::from_integer(x.into())).collect()),
        );
        let cut = Cone::from_h(self.n(), &eqs, &cone.inequalities_q());
        Ok(&cut == self.cone(sigma_prime))
    }

    /// Cone ids of the faces of the wall.
    pub fn wall_faces(&self) -> Result<Vec<usize>> {
        let id = self.wall_cone_id()?;
        Ok(self.fan().faces_of(id).to_vec())
    }
}

/// Depth-first enumeration of the paths following `up`, starting anywhere
/// in `starts`. Paths never revisit a node, so `bound` nodes suffice.
fn increasing_paths(starts: &[usize], up: &[Vec<usize>], bound: usize) -> Result<Vec<Vec<usize>>> {
    const MAX_PATHS: usize = 1_000_000;
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = starts.iter().rev().map(|&s| vec![s]).collect();
    while let Some(path) = stack.pop() {
        let last = *path.last().expect("nonempty path");
        if path.len() < bound {
            for &next in up[last].iter().rev() {
                let mut longer = path.clone();
                longer.push(next);
                stack.push(longer);
            }
        }
        out.push(path);
        if out.len() > MAX_PATHS {
            return Err(Error::ResourceLimit(format!("more than {MAX_PATHS} increasing paths")));
        }
    }
    Ok(out)
}
