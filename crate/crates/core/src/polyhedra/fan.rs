use std::collections::HashMap;

use itertools::Itertools;

use super::cone::Cone;
use super::linalg::{q, Q};
use super::polytope::Polytope;
use crate::report::Report;

/// A finite set of cones together with the face relation between them.
/// Cones may carry lineality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedFan {
    n: usize,
    cones: Vec<Cone>,
    /// `faces_of[i]` lists the indices `j` with cone `j` a face of cone `i`.
    faces_of: Vec<Vec<usize>>,
    index: HashMap<Cone, usize>,
}

impl GeneralizedFan {
    /// Builds a fan from cones, computing the face relation geometrically.
    /// Nothing is validated; see [`validate_generalized_fan`].
    pub fn new(n: usize, cones: Vec<Cone>) -> Self {
        let faces_of = cones
            .iter()
            .map(|c| {
                cones
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.is_face_of(c))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Self::with_incidence(n, cones, faces_of)
    }

    fn with_incidence(n: usize, cones: Vec<Cone>, faces_of: Vec<Vec<usize>>) -> Self {
        let index = cones.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Self {
            n,
            cones,
            faces_of,
            index,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces_of[i]
    }

    pub fn index_of(&self, cone: &Cone) -> Option<usize> {
        self.index.get(cone).copied()
    }

    /// Indices of the cones of full dimension.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| self.cones[i].dim() == self.n)
            .collect()
    }

    /// Indices of the cones of the given dimension.
    pub fn of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| self.cones[i].dim() == d)
            .collect()
    }

    /// Intersection of all cones.
    pub fn common_intersection(&self) -> Cone {
        self.cones
            .iter()
            .skip(1)
            .fold(self.cones[0].clone(), |acc, c| acc.intersection(c))
    }
}

/// The normal generalized fan of a polytope. Cone `i` is the normal cone
/// of face `i`, so the face/cone bijection is the identity on indices.
#[derive(Clone, Debug)]
pub struct NormalFan {
    pub polytope: Polytope,
    pub fan: GeneralizedFan,
}

pub fn normal_fan(polytope: &Polytope) -> NormalFan {
    let faces = polytope.faces();
    let cones: Vec<Cone> = (0..faces.len())
        .map(|i| polytope.normal_cone(i).expect("face id in range"))
        .collect();
    // σ_G is a face of σ_F iff F ⊆ G.
    let faces_of = faces
        .iter()
        .map(|f| {
            faces
                .iter()
                .enumerate()
                .filter(|(_, g)| f.vertex_ids.iter().all(|v| g.vertex_ids.contains(v)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    NormalFan {
        polytope: polytope.clone(),
        fan: GeneralizedFan::with_incidence(polytope.ambient_dim(), cones, faces_of),
    }
}

impl NormalFan {
    /// Index of the smallest cone containing `theta`; `theta` lies in its
    /// relative interior.
    pub fn locate(&self, theta: &[Q]) -> usize {
        self.polytope.max_face(theta)
    }

    pub fn cone(&self, i: usize) -> &Cone {
        self.fan.cone(i)
    }
}

/// Integer grid points of `[-bound, bound]^n`.
pub fn grid_points(n: usize, bound: i64) -> Vec<Vec<Q>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..n)
        .map(|_| -bound..=bound)
        .multi_cartesian_product()
        .map(|p| p.into_iter().map(q).collect())
        .collect()
}

/// Checks the generalized-fan axioms: every face of a member is a member,
/// pairwise intersections are common faces, and the stored face relation
/// matches geometry. With `completeness_bound`, also checks that grid points
/// are covered and that every facet of a full-dimensional cone is shared
/// with exactly one other full-dimensional cone.
pub fn validate_generalized_fan(fan: &GeneralizedFan, completeness_bound: Option<i64>) -> Report {
    let mut report = Report::new();
    let cones = fan.cones();
    for (i, c) in cones.iter().enumerate() {
        for face in c.faces() {
            report.check("face-closure", fan.index_of(&face).is_some(), || {
                format!("cone {i}: face {face:?} is not in the fan")
            });
        }
    }
    for (i, j) in (0..cones.len()).tuple_combinations() {
        let meet = cones[i].intersection(&cones[j]);
        report.check(
            "intersection-is-common-face",
            meet.is_face_of(&cones[i]) && meet.is_face_of(&cones[j]),
            || format!("cones {i} and {j} meet in {meet:?}, not a common face"),
        );
    }
    for (i, c) in cones.iter().enumerate() {
        for (j, d) in cones.iter().enumerate() {
            let stored = fan.faces_of(i).contains(&j);
            report.check("incidence", stored == d.is_face_of(c), || {
                format!("stored face relation between {i} and {j} is wrong")
            });
        }
    }
    if let Some(bound) = completeness_bound {
        for x in grid_points(fan.ambient_dim(), bound) {
            report.check("completeness-sample", cones.iter().any(|c| c.contains(&x)), || {
                format!("point {x:?} lies in no cone")
            });
        }
        let maximal = fan.maximal();
        report.check("completeness-maximal", !maximal.is_empty(), || {
            "no full-dimensional cone".to_string()
        });
        for &i in &maximal {
            for facet in cones[i].facets() {
                let partners = maximal
                    .iter()
                    .filter(|&&j| j != i && facet.is_face_of(&cones[j]))
                    .count();
                report.check("facet-pairing", partners == 1, || {
                    format!("facet {facet:?} of cone {i} has {partners} neighbours")
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::linalg::qs;
    use crate::polyhedra::polytope::convex_hull;

    fn triangle() -> Polytope {
        convex_hull(&[qs(&[0, 0]), qs(&[0, 1]), qs(&[1, 1])], 2).unwrap()
    }

    #[test]
    fn triangle_fan() {
        let nf = normal_fan(&triangle());
        assert_eq!(nf.fan.len(), 7);
        assert_eq!(nf.fan.maximal().len(), 3);
        assert_eq!(nf.fan.of_dim(1).len(), 3);
        assert_eq!(nf.fan.of_dim(0).len(), 1);
        let r = validate_generalized_fan(&nf.fan, Some(3));
        assert!(r.is_ok(), "{:?}", r.violations);
        assert_eq!(nf.fan.common_intersection(), Cone::origin(2));
    }

    #[test]
    fn point_fan_is_whole_space() {
        let p = convex_hull(&[qs(&[0, 0])], 2).unwrap();
        let nf = normal_fan(&p);
        assert_eq!(nf.fan.len(), 1);
        assert_eq!(nf.fan.cone(0), &Cone::whole_space(2));
        assert!(validate_generalized_fan(&nf.fan, Some(2)).is_ok());
    }

    #[test]
    fn locate_examples() {
        let p = triangle();
        let nf = normal_fan(&p);
        let top = p.vertex_index(&qs(&[1, 1])).unwrap();
        assert_eq!(nf.locate(&qs(&[2, 1])), p.vertex_face_id(top));
        assert_eq!(nf.locate(&qs(&[0, 0])), p.whole_face_id());
        let ray = nf.cone(nf.locate(&qs(&[1, -1])));
        assert_eq!(ray, &Cone::from_v(2, &[], &[qs(&[1, -1])]));
    }

    #[test]
    fn missing_face_detected() {
        let nf = normal_fan(&triangle());
        let cones: Vec<Cone> = nf
            .fan
            .cones()
            .iter()
            .filter(|c| c.dim() > 0)
            .cloned()
            .collect();
        let broken = GeneralizedFan::new(2, cones);
        let r = validate_generalized_fan(&broken, None);
        assert!(r.has_violation("face-closure"));
    }

    #[test]
    fn overlapping_cones_detected() {
        let a = Cone::from_v(2, &[], &[qs(&[1, 0]), qs(&[0, 1])]);
        let b = Cone::from_v(2, &[], &[qs(&[1, 1]), qs(&[-1, 1])]);
        let mut cones = a.faces();
        cones.extend(b.faces());
        cones.sort();
        cones.dedup();
        let r = validate_generalized_fan(&GeneralizedFan::new(2, cones), None);
        assert!(r.has_violation("intersection-is-common-face"));
        assert!(!r.has_violation("face-closure"));
    }

    #[test]
    fn grid_size() {
        assert_eq!(grid_points(2, 1).len(), 9);
        assert_eq!(grid_points(3, 3).len(), 343);
    }
}
