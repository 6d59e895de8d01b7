use std::collections::{BTreeSet, HashMap};

use num::{One, Zero};

use super::cone::Cone;
use super::dd;
use super::linalg::{add, canonical_subspace, dot, null_space, rank, sub, Q, Z};
use crate::error::{Error, Result};

/// A face of a polytope, identified by the polytope vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertex_ids: Vec<usize>,
    pub dim: usize,
    /// Rows `(c0, c1, ..., cn)` of the affine equations `c0 + c·x = 0`
    /// cutting out the affine hull, in canonical echelon form.
    pub affine_hull: Vec<Vec<Z>>,
    /// Faces of dimension `dim - 1` contained in this face.
    pub children: Vec<usize>,
}

/// Coordinatewise comparison of two points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

pub fn vertex_order(u: &[Q], v: &[Q]) -> VertexOrder {
    assert_eq!(u.len(), v.len(), "vertex_order on points of different length");
    let le = u.iter().zip(v).all(|(a, b)| a <= b);
    let ge = u.iter().zip(v).all(|(a, b)| a >= b);
    match (le, ge) {
        (true, true) => VertexOrder::Equal,
        (true, false) => VertexOrder::Less,
        (false, true) => VertexOrder::Greater,
        (false, false) => VertexOrder::Incomparable,
    }
}

/// A convex polytope with its full face lattice.
///
/// Faces are sorted by `(dim, vertex_ids)`, so the vertices come first and
/// the polytope itself is the last face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    n: usize,
    vertices: Vec<Vec<Q>>,
    faces: Vec<Face>,
    facets: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

fn homogenize(p: &[Q]) -> Vec<Q> {
    let mut h = Vec::with_capacity(p.len() + 1);
    h.push(Q::one());
    h.extend_from_slice(p);
    h
}

fn affine_dim(points: &[&Vec<Q>], n: usize) -> usize {
    let rows: Vec<Vec<Q>> = points.iter().map(|p| homogenize(p)).collect();
    rank(&rows, n + 1).saturating_sub(1)
}

/// Point sets that share a supporting facet: returns the incidence sets of
/// all facets of `conv(points)`.
fn facet_incidences(points: &[Vec<Q>], n: usize) -> Vec<BTreeSet<usize>> {
    let hom: Vec<Vec<Q>> = points.iter().map(|p| homogenize(p)).collect();
    // Facet inequalities b + a·x >= 0 are the extreme rays of the dual cone.
    let dual = dd::generators(n + 1, &[], &hom);
    let mut out: Vec<BTreeSet<usize>> = dual
        .rays
        .iter()
        .map(|y| {
            hom.iter()
                .enumerate()
                .filter(|(_, h)| dot(y, h).is_zero())
                .map(|(i, _)| i)
                .collect::<BTreeSet<usize>>()
        })
        .filter(|s| !s.is_empty())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Convex hull of a finite point set, with extreme vertices only and the
/// complete face lattice.
pub fn convex_hull(points: &[Vec<Q>], n: usize) -> Result<Polytope> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
    }
    let distinct: Vec<Vec<Q>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let all_refs: Vec<&Vec<Q>> = distinct.iter().collect();
    let d = affine_dim(&all_refs, n);

    // A point is a vertex iff the facets through it meet only in it.
    let vertices: Vec<Vec<Q>> = if d == 0 {
        distinct.clone()
    } else {
        let inc = facet_incidences(&distinct, n);
        (0..distinct.len())
            .filter(|&i| {
                let mut common: Option<BTreeSet<usize>> = None;
                for f in inc.iter().filter(|f| f.contains(&i)) {
                    common = Some(match common {
                        None => f.clone(),
                        Some(c) => c.intersection(f).copied().collect(),
                    });
                }
                common.is_some_and(|c| c.len() == 1)
            })
            .map(|i| distinct[i].clone())
            .collect()
    };
    Ok(Polytope::from_vertices(vertices, n, d))
}

impl Polytope {
    fn from_vertices(vertices: Vec<Vec<Q>>, n: usize, d: usize) -> Self {
        let all: BTreeSet<usize> = (0..vertices.len()).collect();
        let mut face_sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        face_sets.insert(all.clone());
        let mut facet_sets: Vec<BTreeSet<usize>> = Vec::new();
        if d > 0 {
            facet_sets = facet_incidences(&vertices, n);
            let mut frontier: Vec<BTreeSet<usize>> = facet_sets.clone();
            for f in &facet_sets {
                face_sets.insert(f.clone());
            }
            while let Some(face) = frontier.pop() {
                for f in &facet_sets {
                    let meet: BTreeSet<usize> = face.intersection(f).copied().collect();
                    if !meet.is_empty() && face_sets.insert(meet.clone()) {
                        frontier.push(meet);
                    }
                }
            }
        }

        let mut faces: Vec<Face> = face_sets
            .into_iter()
            .map(|s| {
                let ids: Vec<usize> = s.into_iter().collect();
                let pts: Vec<&Vec<Q>> = ids.iter().map(|&i| &vertices[i]).collect();
                let hom: Vec<Vec<Q>> = pts.iter().map(|p| homogenize(p)).collect();
                Face {
                    dim: affine_dim(&pts, n),
                    affine_hull: canonical_subspace(&null_space(&hom, n + 1), n + 1),
                    vertex_ids: ids,
                    children: Vec::new(),
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertex_ids).cmp(&(b.dim, &b.vertex_ids)));
        let index: HashMap<Vec<usize>, usize> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertex_ids.clone(), i))
            .collect();
        let children: Vec<Vec<usize>> = faces
            .iter()
            .map(|f| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| {
                        g.dim + 1 == f.dim && g.vertex_ids.iter().all(|v| f.vertex_ids.contains(v))
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        for (f, c) in faces.iter_mut().zip(children) {
            f.children = c;
        }
        let mut facets: Vec<usize> = facet_sets
            .iter()
            .map(|s| index[&s.iter().copied().collect::<Vec<_>>()])
            .collect();
        facets.sort();
        Polytope {
            n,
            vertices,
            faces,
            facets,
            index,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.faces.last().map_or(0, |f| f.dim)
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// Face ids of the facets (faces of codimension one in the polytope).
    pub fn facets(&self) -> &[usize] {
        &self.facets
    }

    /// Id of the face with exactly this (sorted) vertex set.
    pub fn face_id(&self, vertex_ids: &[usize]) -> Option<usize> {
        self.index.get(vertex_ids).copied()
    }

    pub fn whole_face_id(&self) -> usize {
        self.faces.len() - 1
    }

    /// Id of the face `{v}` for a vertex index.
    pub fn vertex_face_id(&self, v: usize) -> usize {
        self.index[&vec![v]]
    }

    pub fn vertex_index(&self, point: &[Q]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == point)
    }

    /// Ids of the vertices adjacent to vertex `v` (joined by an edge).
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.faces
            .iter()
            .filter(|f| f.dim == 1 && f.vertex_ids.contains(&v))
            .flat_map(|f| f.vertex_ids.iter().copied().filter(|&u| u != v))
            .collect()
    }

    /// The face on which `theta` attains its maximum.
    pub fn max_face(&self, theta: &[Q]) -> usize {
        assert_eq!(theta.len(), self.n);
        let values: Vec<Q> = self.vertices.iter().map(|v| dot(theta, v)).collect();
        let best = values.iter().max().expect("nonempty polytope").clone();
        let ids: Vec<usize> = (0..values.len()).filter(|&i| values[i] == best).collect();
        self.face_id(&ids).expect("argmax set of a linear functional is a face")
    }

    /// The normal cone `{θ : F ⊆ P_θ}` of a face.
    pub fn normal_cone(&self, face_id: usize) -> Result<Cone> {
        let face = self.faces.get(face_id).ok_or(Error::NotAFace)?;
        Ok(self.normal_cone_of_vertices(&face.vertex_ids))
    }

    /// Normal cone of the face with the given vertex set; errors if the set
    /// is not a face.
    pub fn normal_cone_of(&self, vertex_ids: &[usize]) -> Result<Cone> {
        let mut ids = vertex_ids.to_vec();
        ids.sort();
        ids.dedup();
        self.face_id(&ids).ok_or(Error::NotAFace)?;
        Ok(self.normal_cone_of_vertices(&ids))
    }

    fn normal_cone_of_vertices(&self, ids: &[usize]) -> Cone {
        let base = &self.vertices[ids[0]];
        let eqs: Vec<Vec<Q>> = ids[1..].iter().map(|&i| sub(&self.vertices[i], base)).collect();
        let ineqs: Vec<Vec<Q>> = (0..self.vertices.len())
            .filter(|i| !ids.contains(i))
            .map(|i| sub(base, &self.vertices[i]))
            .collect();
        Cone::from_h(self.n, &eqs, &ineqs)
    }

    /// Smallest face containing all the given vertices.
    pub fn smallest_face_containing(&self, vertex_ids: &[usize]) -> usize {
        self.faces
            .iter()
            .position(|f| vertex_ids.iter().all(|v| f.vertex_ids.contains(v)))
            .expect("the polytope contains every vertex")
    }

    /// The unique vertex of a face below every other vertex of that face,
    /// if it exists.
    pub fn face_min(&self, face_id: usize) -> Option<usize> {
        let ids = &self.faces[face_id].vertex_ids;
        ids.iter().copied().find(|&u| {
            ids.iter().all(|&w| {
                matches!(
                    vertex_order(&self.vertices[u], &self.vertices[w]),
                    VertexOrder::Less | VertexOrder::Equal
                )
            })
        })
    }

    pub fn face_max(&self, face_id: usize) -> Option<usize> {
        let ids = &self.faces[face_id].vertex_ids;
        ids.iter().copied().find(|&u| {
            ids.iter().all(|&w| {
                matches!(
                    vertex_order(&self.vertices[u], &self.vertices[w]),
                    VertexOrder::Greater | VertexOrder::Equal
                )
            })
        })
    }

    /// `{v * c}`: the polytope scaled about the origin.
    pub fn scaled(&self, c: &Q) -> Result<Polytope> {
        let pts: Vec<Vec<Q>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * c).collect())
            .collect();
        convex_hull(&pts, self.n)
    }
}

pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.n != q.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            got: q.n,
        });
    }
    let sums: Vec<Vec<Q>> = p
        .vertices
        .iter()
        .flat_map(|u| q.vertices.iter().map(move |v| add(u, v)))
        .collect();
    convex_hull(&sums, p.n)
}
