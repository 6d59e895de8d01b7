//! Bound quiver algebras over a prime field and their finite-dimensional
//! representations.
//!
//! Conventions:
//! - an arrow `a: u -> v` acts by a `dims[v] x dims[u]` matrix on column
//!   vectors, and subrepresentations are mapped forward along arrows;
//! - a relation path `(a1, ..., al)` traverses `a1` first, so its composite
//!   is `M_al * ... * M_a1`.

use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fp, FpMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: u32,
    /// Arrow indices, first traversed first.
    pub path: Vec<usize>,
}

/// A path algebra of a finite quiver modulo admissible relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiverAlgebra {
    field: Fp,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Vec<RelationTerm>>,
}

/// Unvalidated relation term: coefficient and a path of arrow names.
pub type RawTerm = (i64, Vec<String>);

impl BoundQuiverAlgebra {
    /// Validates and builds an algebra. The vertex order fixes the basis
    /// order of the Grothendieck group.
    pub fn new(
        p: u32,
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<Vec<RawTerm>>,
    ) -> Result<Self> {
        let field = Fp::new(p)
            .ok_or_else(|| Error::InvalidAlgebra(format!("field size {p} is not a supported prime")))?;
        if vertices.is_empty() {
            return Err(Error::InvalidAlgebra("no vertices".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidAlgebra(format!("duplicate vertex `{v}`")));
            }
        }
        let vertex_index = |label: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::InvalidAlgebra(format!("unknown vertex `{label}`")))
        };
        let mut built_arrows: Vec<Arrow> = Vec::with_capacity(arrows.len());
        for (name, from, to) in arrows {
            if built_arrows.iter().any(|a| a.name == name) {
                return Err(Error::InvalidAlgebra(format!("duplicate arrow `{name}`")));
            }
            built_arrows.push(Arrow {
                source: vertex_index(&from)?,
                target: vertex_index(&to)?,
                name,
            });
        }

        let mut built_relations = Vec::with_capacity(relations.len());
        for (ri, rel) in relations.into_iter().enumerate() {
            if rel.is_empty() {
                return Err(Error::InvalidAlgebra(format!("relation {ri} is empty")));
            }
            let mut endpoints: Option<(usize, usize)> = None;
            let mut terms = Vec::with_capacity(rel.len());
            for (coeff, path) in rel {
                if path.len() < 2 {
                    return Err(Error::InvalidAlgebra(format!(
                        "relation {ri}: path {path:?} has length < 2 (not admissible)"
                    )));
                }
                let mut idx = Vec::with_capacity(path.len());
                for name in &path {
                    let a = built_arrows
                        .iter()
                        .position(|a| &a.name == name)
                        .ok_or_else(|| Error::InvalidAlgebra(format!("unknown arrow `{name}`")))?;
                    idx.push(a);
                }
                if idx
                    .windows(2)
                    .any(|w| built_arrows[w[0]].target != built_arrows[w[1]].source)
                {
                    return Err(Error::NonComposablePath { relation: ri, path });
                }
                let ends = (
                    built_arrows[idx[0]].source,
                    built_arrows[*idx.last().unwrap()].target,
                );
                match endpoints {
                    None => endpoints = Some(ends),
                    Some(e) if e != ends => return Err(Error::MixedEndpoints { relation: ri }),
                    _ => {}
                }
                terms.push(RelationTerm {
                    coeff: field.reduce(coeff),
                    path: idx,
                });
            }
            built_relations.push(terms);
        }

        Ok(Self {
            field,
            vertices,
            arrows: built_arrows,
            relations: built_relations,
        })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    /// Number of vertices, i.e. the rank of the Grothendieck group.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Vec<RelationTerm>] {
        &self.relations
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }
}

/// Class of a module in the Grothendieck group, in the basis of simples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A finite-dimensional representation of a bound quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    algebra: Arc<BoundQuiverAlgebra>,
    dims: Vec<usize>,
    maps: Vec<FpMatrix>,
}

impl Module {
    /// Builds a module, checking matrix shapes, residues and relations.
    pub fn new(algebra: Arc<BoundQuiverAlgebra>, dims: Vec<usize>, maps: Vec<FpMatrix>) -> Result<Self> {
        if dims.len() != algebra.n() {
            return Err(Error::InvalidModule(format!(
                "expected {} vertex dimensions, got {}",
                algebra.n(),
                dims.len()
            )));
        }
        if maps.len() != algebra.arrows().len() {
            return Err(Error::InvalidModule(format!(
                "expected {} arrow maps, got {}",
                algebra.arrows().len(),
                maps.len()
            )));
        }
        let p = algebra.field().p();
        for (arrow, m) in algebra.arrows().iter().zip(&maps) {
            let (er, ec) = (dims[arrow.target], dims[arrow.source]);
            if (m.rows(), m.cols()) != (er, ec) {
                return Err(Error::ShapeMismatch {
                    arrow: arrow.name.clone(),
                    expected_rows: er,
                    expected_cols: ec,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            if m.data().iter().any(|&x| x >= p) {
                return Err(Error::InvalidModule(format!(
                    "arrow `{}` has entries not reduced mod {p}",
                    arrow.name
                )));
            }
        }
        let module = Self { algebra, dims, maps };
        if let Some(ri) = module.first_failed_relation() {
            return Err(Error::RelationNotSatisfied(ri));
        }
        Ok(module)
    }

    /// Builds a module from integer matrices, reducing entries mod p.
    pub fn from_integer_maps(
        algebra: Arc<BoundQuiverAlgebra>,
        dims: Vec<usize>,
        maps: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        let f = algebra.field();
        let mut built = Vec::with_capacity(maps.len());
        for (ai, rows) in maps.into_iter().enumerate() {
            let arrow = algebra.arrows().get(ai).ok_or_else(|| {
                Error::InvalidModule(format!("more maps than arrows ({ai})"))
            })?;
            let (er, ec) = (
                dims.get(arrow.target).copied().unwrap_or(0),
                dims.get(arrow.source).copied().unwrap_or(0),
            );
            // A matrix with zero rows carries no column count; take it from dims.
            let cols = rows.first().map_or(ec, Vec::len);
            if rows.iter().any(|r| r.len() != cols) || rows.len() != er || cols != ec {
                return Err(Error::ShapeMismatch {
                    arrow: arrow.name.clone(),
                    expected_rows: er,
                    expected_cols: ec,
                    rows: rows.len(),
                    cols,
                });
            }
            let reduced: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| f.reduce(x)).collect())
                .collect();
            built.push(FpMatrix::from_rows(cols, &reduced));
        }
        Self::new(algebra, dims, built)
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra>) -> Self {
        let n = algebra.n();
        let maps = algebra.arrows().iter().map(|_| FpMatrix::zeros(0, 0)).collect();
        Self {
            algebra,
            dims: vec![0; n],
            maps,
        }
    }

    /// The simple module at vertex `i` (1-based).
    pub fn simple(algebra: Arc<BoundQuiverAlgebra>, i: usize) -> Result<Self> {
        let n = algebra.n();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let mut dims = vec![0; n];
        dims[i - 1] = 1;
        let maps = algebra
            .arrows()
            .iter()
            .map(|a| FpMatrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Self::new(algebra, dims, maps)
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Fp {
        self.algebra.field()
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    /// Composite matrix of a path, first arrow applied first.
    pub fn path_matrix(&self, path: &[usize]) -> FpMatrix {
        let f = self.field();
        let first = &self.algebra.arrows()[path[0]];
        let mut acc = FpMatrix::identity(self.dims[first.source]);
        for &a in path {
            acc = self.maps[a].mul(&acc, f);
        }
        acc
    }

    fn first_failed_relation(&self) -> Option<usize> {
        let f = self.field();
        self.algebra.relations().iter().position(|rel| {
            let first = &rel[0];
            let src = self.algebra.arrows()[first.path[0]].source;
            let tgt = self.algebra.arrows()[*first.path.last().unwrap()].target;
            let mut sum = FpMatrix::zeros(self.dims[tgt], self.dims[src]);
            for term in rel {
                sum = sum.add_scaled(&self.path_matrix(&term.path), term.coeff, f);
            }
            !sum.is_zero()
        })
    }

    /// True iff every relation acts as zero.
    pub fn satisfies_relations(&self) -> bool {
        self.first_failed_relation().is_none()
    }

    /// Direct sum with block-diagonal arrow maps. Both modules must share the algebra.
    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        if self.algebra != other.algebra {
            return Err(Error::InvalidModule("direct sum over different algebras".into()));
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .algebra
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, arrow)| {
                let (a, b) = (&self.maps[ai], &other.maps[ai]);
                let mut m = FpMatrix::zeros(dims[arrow.target], dims[arrow.source]);
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        m.set(r, c, a.get(r, c));
                    }
                }
                let (ro, co) = (self.dims[arrow.target], self.dims[arrow.source]);
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m.set(ro + r, co + c, b.get(r, c));
                    }
                }
                m
            })
            .collect();
        Module::new(self.algebra.clone(), dims, maps)
    }

    /// The quotient `self / sub`, on the coordinates complementary to the
    /// pivots of the submodule's echelon basis.
    pub fn quotient(&self, sub: &Submodule) -> Result<Module> {
        sub.check_in(self)?;
        let f = self.field();
        let pivots: Vec<Vec<usize>> = sub.bases.iter().map(pivot_columns).collect();
        let complement: Vec<Vec<usize>> = self
            .dims
            .iter()
            .zip(&pivots)
            .map(|(&d, piv)| (0..d).filter(|c| !piv.contains(c)).collect())
            .collect();
        let dims: Vec<usize> = complement.iter().map(Vec::len).collect();
        let maps = self
            .algebra
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, arrow)| {
                let (u, v) = (arrow.source, arrow.target);
                let mut m = FpMatrix::zeros(dims[v], dims[u]);
                for (j, &cu) in complement[u].iter().enumerate() {
                    let mut e = vec![0u32; self.dims[u]];
                    e[cu] = 1;
                    let img = reduce_by(&sub.bases[v], &pivots[v], self.maps[ai].apply(&e, f), f);
                    for (i, &cv) in complement[v].iter().enumerate() {
                        m.set(i, j, img[cv]);
                    }
                }
                m
            })
            .collect();
        let q = Module::new(self.algebra.clone(), dims, maps)?;
        debug_assert!(q.satisfies_relations());
        Ok(q)
    }

    /// The submodule viewed as a module in its own right, in the coordinates
    /// of its echelon basis.
    pub fn restrict(&self, sub: &Submodule) -> Result<Module> {
        sub.check_in(self)?;
        let f = self.field();
        let pivots: Vec<Vec<usize>> = sub.bases.iter().map(pivot_columns).collect();
        let dims: Vec<usize> = sub.bases.iter().map(FpMatrix::rows).collect();
        let maps = self
            .algebra
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, arrow)| {
                let (u, v) = (arrow.source, arrow.target);
                let mut m = FpMatrix::zeros(dims[v], dims[u]);
                for j in 0..dims[u] {
                    let img = self.maps[ai].apply(sub.bases[u].row(j), f);
                    for (i, &pc) in pivots[v].iter().enumerate() {
                        m.set(i, j, img[pc]);
                    }
                }
                m
            })
            .collect();
        Module::new(self.algebra.clone(), dims, maps)
    }

    /// The subquotient `upper / lower` for submodules `lower ⊆ upper`.
    pub fn subquotient(&self, lower: &Submodule, upper: &Submodule) -> Result<Module> {
        lower.check_in(self)?;
        upper.check_in(self)?;
        for (v, (l, u)) in lower.bases.iter().zip(&upper.bases).enumerate() {
            if !row_space_contains(u, l, self.field()) {
                return Err(Error::InclusionFailure(self.algebra.vertices()[v].clone()));
            }
        }
        let restricted = self.restrict(upper)?;
        let f = self.field();
        let bases = lower
            .bases
            .iter()
            .zip(&upper.bases)
            .map(|(l, u)| {
                let piv = pivot_columns(u);
                let rows: Vec<Vec<u32>> = (0..l.rows())
                    .map(|r| piv.iter().map(|&c| l.get(r, c)).collect())
                    .collect();
                FpMatrix::from_rows(u.rows(), &rows).rref(f).0
            })
            .collect();
        restricted.quotient(&Submodule { bases })
    }
}

/// An arrow-stable family of subspaces, one per vertex, each stored as a
/// basis in reduced row-echelon form. Equal subspace families have equal
/// values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    bases: Vec<FpMatrix>,
}

impl Submodule {
    /// Validates shapes and arrow stability; bases need not be reduced.
    pub fn new(module: &Module, bases: Vec<FpMatrix>) -> Result<Self> {
        if bases.len() != module.n() {
            return Err(Error::InvalidModule("wrong number of vertex subspaces".into()));
        }
        let f = module.field();
        let bases: Vec<FpMatrix> = bases.into_iter().map(|b| b.rref(f).0).collect();
        let sub = Self { bases };
        sub.check_in(module)?;
        Ok(sub)
    }

    pub fn zero(module: &Module) -> Self {
        Self {
            bases: module.dims().iter().map(|&d| FpMatrix::zeros(0, d)).collect(),
        }
    }

    pub fn full(module: &Module) -> Self {
        Self {
            bases: module.dims().iter().map(|&d| FpMatrix::identity(d)).collect(),
        }
    }

    /// Smallest submodule containing the given per-vertex vectors.
    pub fn generated_by(module: &Module, generators: &[(usize, Vec<u32>)]) -> Self {
        let f = module.field();
        let mut rows: Vec<Vec<Vec<u32>>> = vec![Vec::new(); module.n()];
        let mut queue: Vec<(usize, Vec<u32>)> = generators.to_vec();
        let mut bases: Vec<FpMatrix> = module.dims().iter().map(|&d| FpMatrix::zeros(0, d)).collect();
        while let Some((v, x)) = queue.pop() {
            let piv = pivot_columns(&bases[v]);
            let reduced = reduce_by(&bases[v], &piv, x.clone(), f);
            if reduced.iter().all(|&c| c == 0) {
                continue;
            }
            rows[v].push(x.clone());
            bases[v] = FpMatrix::from_rows(module.dims()[v], &rows[v]).rref(f).0;
            for (ai, arrow) in module.algebra().arrows().iter().enumerate() {
                if arrow.source == v {
                    queue.push((arrow.target, module.maps()[ai].apply(&x, f)));
                }
            }
        }
        Self { bases }
    }

    pub fn bases(&self) -> &[FpMatrix] {
        &self.bases
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.bases.iter().map(|b| b.rows() as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.bases.iter().map(FpMatrix::rows).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Subspace inclusion `self ⊆ other` at every vertex.
    pub fn is_contained_in(&self, other: &Submodule, f: Fp) -> bool {
        self.bases
            .iter()
            .zip(&other.bases)
            .all(|(a, b)| a.rows() <= b.rows() && row_space_contains(b, a, f))
    }

    pub fn sum(&self, other: &Submodule, f: Fp) -> Submodule {
        Submodule {
            bases: self
                .bases
                .iter()
                .zip(&other.bases)
                .map(|(a, b)| a.vstack(b).rref(f).0)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Submodule, f: Fp) -> Submodule {
        Submodule {
            bases: self
                .bases
                .iter()
                .zip(&other.bases)
                .map(|(a, b)| subspace_intersection(a, b, f))
                .collect(),
        }
    }

    /// Canonical flattened form: per vertex the rank followed by the entries.
    pub fn canonical_key(&self) -> Vec<u32> {
        let mut key = Vec::new();
        for b in &self.bases {
            key.push(b.rows() as u32);
            key.extend_from_slice(b.data());
        }
        key
    }

    pub(crate) fn check_in(&self, module: &Module) -> Result<()> {
        if self.bases.len() != module.n() {
            return Err(Error::InvalidModule("submodule of a different module".into()));
        }
        for (b, &d) in self.bases.iter().zip(module.dims()) {
            if b.cols() != d {
                return Err(Error::InvalidModule("submodule basis has wrong width".into()));
            }
        }
        let f = module.field();
        for (ai, arrow) in module.algebra().arrows().iter().enumerate() {
            let src = &self.bases[arrow.source];
            let tgt = &self.bases[arrow.target];
            let piv = pivot_columns(tgt);
            for r in 0..src.rows() {
                let img = module.maps()[ai].apply(src.row(r), f);
                if reduce_by(tgt, &piv, img, f).iter().any(|&x| x != 0) {
                    return Err(Error::NotArrowStable(arrow.name.clone()));
                }
            }
        }
        Ok(())
    }
}

/// Pivot column of each row of a matrix in reduced row-echelon form.
pub(crate) fn pivot_columns(rref: &FpMatrix) -> Vec<usize> {
    (0..rref.rows())
        .map(|r| {
            rref.row(r)
                .iter()
                .position(|&x| x != 0)
                .expect("zero row in echelon basis")
        })
        .collect()
}

/// Reduces `x` modulo the row space of an echelon basis, clearing pivots.
pub(crate) fn reduce_by(rref: &FpMatrix, pivots: &[usize], mut x: Vec<u32>, f: Fp) -> Vec<u32> {
    for (r, &pc) in pivots.iter().enumerate() {
        let c = x[pc];
        if c != 0 {
            for (j, xj) in x.iter_mut().enumerate() {
                *xj = f.sub(*xj, f.mul(c, rref.get(r, j)));
            }
        }
    }
    x
}

fn row_space_contains(big: &FpMatrix, small: &FpMatrix, f: Fp) -> bool {
    let piv = pivot_columns(big);
    (0..small.rows()).all(|r| {
        reduce_by(big, &piv, small.row(r).to_vec(), f)
            .iter()
            .all(|&x| x == 0)
    })
}

fn subspace_intersection(a: &FpMatrix, b: &FpMatrix, f: Fp) -> FpMatrix {
    let d = a.cols();
    if a.rows() == 0 || b.rows() == 0 {
        return FpMatrix::zeros(0, d);
    }
    // x = c·A lies in rowspace(B) iff it is annihilated by B's orthogonal complement.
    let b_perp = b.null_space(f);
    if b_perp.rows() == 0 {
        return a.clone();
    }
    let coeffs = b_perp.mul(&a.transpose(), f).null_space(f);
    coeffs.mul(a, f).rref(f).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn a2() -> Arc<BoundQuiverAlgebra> {
        presets::a2_algebra()
    }

    #[test]
    fn non_composable_relation_is_rejected() {
        let err = BoundQuiverAlgebra::new(
            2,
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
            vec![vec![(1, vec!["a".into(), "a".into()])]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonComposablePath { relation: 0, .. }));
    }

    #[test]
    fn algebra_validation_errors() {
        let v = || vec!["1".to_string(), "2".to_string()];
        assert!(matches!(
            BoundQuiverAlgebra::new(4, v(), vec![], vec![]),
            Err(Error::InvalidAlgebra(_))
        ));
        assert!(matches!(
            BoundQuiverAlgebra::new(2, v(), vec![("a".into(), "1".into(), "3".into())], vec![]),
            Err(Error::InvalidAlgebra(_))
        ));
        let arrows = vec![
            ("a".into(), "1".into(), "2".into()),
            ("b".into(), "2".into(), "1".into()),
            ("c".into(), "1".into(), "2".into()),
        ];
        // ab: 1 -> 1 and bc... ab is 1->2->1, ba is 2->1->2.
        let mixed = vec![vec![(1, vec!["a".into(), "b".into()]), (1, vec!["b".into(), "a".into()])]];
        assert!(matches!(
            BoundQuiverAlgebra::new(2, v(), arrows, mixed),
            Err(Error::MixedEndpoints { relation: 0 })
        ));
    }

    #[test]
    fn simple_modules() {
        assert_eq!(Module::simple(a2(), 1).unwrap().dims(), &[1, 0]);
        assert_eq!(Module::simple(a2(), 2).unwrap().dims(), &[0, 1]);
        assert!(matches!(
            Module::simple(a2(), 3),
            Err(Error::IndexOutOfRange { index: 3, max: 2 })
        ));
        let sq = presets::square_algebra();
        assert_eq!(Module::simple(sq, 4).unwrap().dims(), &[0, 0, 0, 1]);
    }

    #[test]
    fn shape_mismatch() {
        let err = Module::from_integer_maps(a2(), vec![1, 1], vec![vec![vec![1], vec![0]]]).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
    }

    #[test]
    fn nakayama_relations_hold() {
        let m = presets::nakayama2_121();
        assert!(m.satisfies_relations());
        assert_eq!(m.dim_vector(), DimVector(vec![2, 1]));
        // Composites of aba and bab are zero, but ab alone is not.
        assert!(!m.path_matrix(&[0, 1]).is_zero());
        assert!(m.path_matrix(&[0, 1, 0]).is_zero());
        assert!(m.path_matrix(&[1, 0, 1]).is_zero());
    }

    #[test]
    fn relation_violation_is_reported() {
        let alg = presets::nakayama2_algebra();
        // a = [1], b = [1] on (1,1): aba = 1 != 0.
        let err = Module::from_integer_maps(alg, vec![1, 1], vec![vec![vec![1]], vec![vec![1]]]).unwrap_err();
        assert!(matches!(err, Error::RelationNotSatisfied(0)));
    }

    #[test]
    fn quotient_of_p1_by_socle() {
        let m = presets::a2_p1();
        let f = m.field();
        let s2 = Submodule::generated_by(&m, &[(1, vec![1])]);
        assert_eq!(s2.dim_vector(), DimVector(vec![0, 1]));
        let q = m.quotient(&s2).unwrap();
        assert_eq!(q.dims(), &[1, 0]);
        assert!(q.maps()[0].is_zero());
        assert_eq!(m.quotient(&Submodule::zero(&m)).unwrap().dims(), m.dims());
        assert!(m.quotient(&Submodule::full(&m)).unwrap().is_zero());
        // The top does not generate a proper submodule.
        let top = Submodule::generated_by(&m, &[(0, vec![1])]);
        assert_eq!(top, Submodule::full(&m));
        assert!(s2.is_contained_in(&top, f));
    }

    #[test]
    fn non_stable_family_rejected() {
        let m = presets::a2_p1();
        let bases = vec![FpMatrix::identity(1), FpMatrix::zeros(0, 1)];
        assert!(matches!(Submodule::new(&m, bases), Err(Error::NotArrowStable(_))));
    }

    #[test]
    fn subquotients() {
        let m = presets::a2_p1();
        let s2 = Submodule::generated_by(&m, &[(1, vec![1])]);
        let full = Submodule::full(&m);
        let zero = Submodule::zero(&m);
        assert_eq!(m.subquotient(&s2, &full).unwrap().dims(), &[1, 0]);
        assert_eq!(m.subquotient(&zero, &full).unwrap(), m);
        assert!(m.subquotient(&s2, &s2).unwrap().is_zero());
        assert!(matches!(m.subquotient(&full, &s2), Err(Error::InclusionFailure(_))));
    }

    #[test]
    fn direct_sum_dims() {
        let p1 = presets::a2_p1();
        let s1 = presets::a2_s1();
        let sum = p1.direct_sum(&s1).unwrap();
        assert_eq!(sum.dims(), &[2, 1]);
        assert!(sum.satisfies_relations());
    }

    #[test]
    fn intersection_and_sum() {
        let m = presets::a2_p1().direct_sum(&presets::a2_s1()).unwrap();
        let f = m.field();
        let x = Submodule::generated_by(&m, &[(0, vec![1, 0])]);
        let y = Submodule::generated_by(&m, &[(0, vec![1, 1])]);
        assert_eq!(x.dim_vector(), DimVector(vec![1, 1]));
        assert_eq!(y.dim_vector(), DimVector(vec![1, 1]));
        let meet = x.intersection(&y, f);
        assert_eq!(meet.dim_vector(), DimVector(vec![0, 1]));
        assert_eq!(x.sum(&y, f), Submodule::full(&m));
    }
}
