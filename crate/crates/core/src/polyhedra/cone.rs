use std::collections::BTreeSet;
use std::fmt;

use num::{Signed, Zero};

use super::dd;
use super::linalg::{
    canonical_subspace, dot, dot_zq, primitive, project_out, q, z_to_q, Q, Z,
};

/// A rational polyhedral cone, possibly with a nontrivial lineality space.
///
/// Both representations are kept in canonical form, so equal cones compare
/// equal field by field:
/// - `equalities` and `lineality` are echelon bases scaled to primitive
///   integer rows;
/// - `inequalities` are the facet normals, orthogonally projected onto the
///   linear span of the cone, primitive and sorted;
/// - `rays` are the extreme rays modulo lineality, orthogonally projected
///   onto the complement of the lineality space, primitive and sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    n: usize,
    equalities: Vec<Vec<Z>>,
    inequalities: Vec<Vec<Z>>,
    lineality: Vec<Vec<Z>>,
    rays: Vec<Vec<Z>>,
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Vec<Vec<Z>>| {
            v.iter()
                .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "Cone(dim {} in R^{}; lin [{}]; rays [{}])",
            self.dim(),
            self.n,
            show(&self.lineality),
            show(&self.rays)
        )
    }
}

impl Cone {
    /// The cone `{x : e·x = 0, a·x >= 0}`.
    pub fn from_h(n: usize, equalities: &[Vec<Q>], inequalities: &[Vec<Q>]) -> Self {
        let g = dd::generators(n, equalities, inequalities);
        Self::from_generators(n, &g.lineality, &g.rays)
    }

    /// The cone spanned by a lineality basis and ray generators; redundant
    /// generators are allowed.
    pub fn from_v(n: usize, lineality: &[Vec<Q>], rays: &[Vec<Q>]) -> Self {
        Self::from_generators(n, lineality, rays)
    }

    pub fn whole_space(n: usize) -> Self {
        Self::from_h(n, &[], &[])
    }

    pub fn origin(n: usize) -> Self {
        let eqs: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| q((i == j) as i64)).collect())
            .collect();
        Self::from_h(n, &eqs, &[])
    }

    /// The linear subspace spanned by `basis`.
    pub fn subspace(n: usize, basis: &[Vec<Q>]) -> Self {
        Self::from_v(n, basis, &[])
    }

    fn from_generators(n: usize, lineality: &[Vec<Q>], rays: &[Vec<Q>]) -> Self {
        // Facets of the cone are the extreme rays of its dual.
        let dual = dd::generators(n, lineality, rays);
        let equalities = canonical_subspace(&dual.lineality, n);
        let eq_q: Vec<Vec<Q>> = equalities.iter().map(|e| z_to_q(e)).collect();
        let inequalities: BTreeSet<Vec<Z>> = dual
            .rays
            .iter()
            .map(|a| primitive(&project_out(a, &eq_q)))
            .collect();
        let inequalities: Vec<Vec<Z>> = inequalities.into_iter().collect();
        let ineq_q: Vec<Vec<Q>> = inequalities.iter().map(|a| z_to_q(a)).collect();

        // Recover the irredundant generators from the facet description.
        let primal = dd::generators(n, &eq_q, &ineq_q);
        let lin = canonical_subspace(&primal.lineality, n);
        let lin_q: Vec<Vec<Q>> = lin.iter().map(|l| z_to_q(l)).collect();
        let rays: BTreeSet<Vec<Z>> = primal
            .rays
            .iter()
            .map(|r| primitive(&project_out(r, &lin_q)))
            .collect();
        Cone {
            n,
            equalities,
            inequalities,
            lineality: lin,
            rays: rays.into_iter().collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - self.equalities.len()
    }

    pub fn equalities(&self) -> &[Vec<Z>] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Vec<Z>] {
        &self.inequalities
    }

    pub fn lineality(&self) -> &[Vec<Z>] {
        &self.lineality
    }

    pub fn rays(&self) -> &[Vec<Z>] {
        &self.rays
    }

    pub fn is_linear_subspace(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn equalities_q(&self) -> Vec<Vec<Q>> {
        self.equalities.iter().map(|e| z_to_q(e)).collect()
    }

    pub fn inequalities_q(&self) -> Vec<Vec<Q>> {
        self.inequalities.iter().map(|e| z_to_q(e)).collect()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.equalities.iter().all(|e| dot_zq(e, x).is_zero())
            && self.inequalities.iter().all(|a| !dot_zq(a, x).is_negative())
    }

    pub fn contains_in_relative_interior(&self, x: &[Q]) -> bool {
        self.equalities.iter().all(|e| dot_zq(e, x).is_zero())
            && self.inequalities.iter().all(|a| dot_zq(a, x).is_positive())
    }

    /// A point in the relative interior: the sum of the extreme rays, or the
    /// origin for a linear subspace.
    pub fn relative_interior_point(&self) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.n];
        for r in &self.rays {
            for (xi, ri) in x.iter_mut().zip(r) {
                *xi += Q::from_integer(ri.clone());
            }
        }
        x
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        let mut eqs = self.equalities_q();
        eqs.extend(other.equalities_q());
        let mut ineqs = self.inequalities_q();
        ineqs.extend(other.inequalities_q());
        Cone::from_h(self.n, &eqs, &ineqs)
    }

    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.contains(&z_to_q(r)))
            && self.lineality.iter().all(|l| {
                let lq = z_to_q(l);
                let neg: Vec<Q> = lq.iter().map(|x| -x).collect();
                other.contains(&lq) && other.contains(&neg)
            })
    }

    /// The smallest face of `self` containing `x` (which must lie in `self`).
    pub fn smallest_face_containing(&self, x: &[Q]) -> Cone {
        debug_assert!(self.contains(x));
        let mut eqs = self.equalities_q();
        let mut ineqs = Vec::new();
        for a in &self.inequalities {
            let aq = z_to_q(a);
            if dot(&aq, x).is_zero() {
                eqs.push(aq);
            } else {
                ineqs.push(aq);
            }
        }
        Cone::from_h(self.n, &eqs, &ineqs)
    }

    /// True iff `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.n == other.n
            && self.is_subset_of(other)
            && other.smallest_face_containing(&self.relative_interior_point()) == *self
    }

    /// The face `self ∩ {a·x = 0}` for a valid inequality `a`.
    pub fn face_cut_by(&self, a: &[Z]) -> Cone {
        let mut eqs = self.equalities_q();
        eqs.push(z_to_q(a));
        Cone::from_h(self.n, &eqs, &self.inequalities_q())
    }

    /// All faces, including `self`, sorted canonically.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        seen.insert(self.clone());
        while let Some(face) = stack.pop() {
            for a in &self.inequalities {
                let on_hyperplane = face
                    .rays
                    .iter()
                    .all(|r| dot_zq(a, &z_to_q(r)).is_zero());
                if on_hyperplane {
                    continue;
                }
                let sub = face.face_cut_by(a);
                if seen.insert(sub.clone()) {
                    stack.push(sub);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn facets(&self) -> Vec<Cone> {
        self.faces()
            .into_iter()
            .filter(|f| f.dim() + 1 == self.dim())
            .collect()
    }

    /// True iff the H- and V-descriptions agree on each other's data.
    pub fn representations_agree(&self) -> bool {
        let gens_ok = self.rays.iter().all(|r| self.contains(&z_to_q(r)))
            && self.lineality.iter().all(|l| {
                let lq = z_to_q(l);
                self.equalities.iter().all(|e| dot_zq(e, &lq).is_zero())
                    && self.inequalities.iter().all(|a| dot_zq(a, &lq).is_zero())
            });
        // Each facet normal must be tight on at least dim-1-lin independent rays.
        let facets_ok = self.inequalities.iter().all(|a| {
            self.rays.iter().any(|r| dot_zq(a, &z_to_q(r)).is_positive())
        });
        let dim_ok = self.lineality.len() + super::linalg::rank(
            &self.rays.iter().map(|r| z_to_q(r)).collect::<Vec<_>>(),
            self.n,
        ) == self.dim();
        gens_ok && facets_ok && dim_ok
    }
}
