//! King stability on a single module: semistability, the canonical
//! sequences of the two semistable torsion pairs, stable composition
//! factors, and the set `t(θ, M)`. Everything here is computed straight from
//! the enumerated submodule lattice.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polyhedra::Q;
use crate::quiver::{DimVector, Module, Submodule};
use crate::report::Report;
use crate::sublattice::{enumerate_submodules, SubmoduleSet};

/// A linear form on the Grothendieck group, in the basis dual to the simples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StabilityVector(pub Vec<Q>);

impl StabilityVector {
    pub fn new(coords: Vec<Q>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![Q::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Q] {
        &self.0
    }

    pub fn evaluate(&self, d: &DimVector) -> Result<Q> {
        evaluate(self, d)
    }

    fn at(&self, d: &DimVector) -> Q {
        self.0
            .iter()
            .zip(d.as_slice())
            .map(|(a, &x)| a * Q::from_integer(x.into()))
            .sum()
    }
}

impl FromStr for StabilityVector {
    type Err = Error;

    /// Comma-separated rationals such as `1,-1/2,0`.
    fn from_str(s: &str) -> Result<Self> {
        let mut coords = Vec::new();
        let mut column = 1;
        for part in s.split(',') {
            let q = Q::from_str(part.trim()).map_err(|_| Error::Parse {
                line: 1,
                column,
                message: format!("`{}` is not a rational number", part.trim()),
            })?;
            coords.push(q);
            column += part.len() + 1;
        }
        Ok(Self(coords))
    }
}

impl fmt::Display for StabilityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn evaluate(theta: &StabilityVector, d: &DimVector) -> Result<Q> {
    if theta.len() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: d.len(),
            got: theta.len(),
        });
    }
    Ok(theta.at(d))
}

fn check_len(theta: &StabilityVector, m: &Module) -> Result<()> {
    if theta.len() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            got: theta.len(),
        });
    }
    Ok(())
}

/// Values of `θ` on every submodule of the set, by index.
pub fn values(theta: &StabilityVector, set: &SubmoduleSet) -> Vec<Q> {
    set.dim_vectors().iter().map(|d| theta.at(d)).collect()
}

/// `θ(X) = 0` and `θ(L) ≤ 0` for every submodule `L`.
pub fn is_semistable(theta: &StabilityVector, x: &Module) -> Result<bool> {
    check_len(theta, x)?;
    Ok(is_semistable_in(theta, &enumerate_submodules(x)?))
}

pub fn is_semistable_in(theta: &StabilityVector, set: &SubmoduleSet) -> bool {
    let vals = values(theta, set);
    vals[set.full_index()].is_zero() && vals.iter().all(|v| !v.is_positive())
}

/// `θ(X) = 0` and `θ(L) < 0` for every submodule `0 ≠ L ⊊ X`.
pub fn is_stable(theta: &StabilityVector, x: &Module) -> Result<bool> {
    check_len(theta, x)?;
    if x.is_zero() {
        return Err(Error::ZeroModule);
    }
    let set = enumerate_submodules(x)?;
    let vals = values(theta, &set);
    let (zero, full) = (set.zero_index(), set.full_index());
    Ok(vals[full].is_zero()
        && (0..set.len())
            .filter(|&i| i != zero && i != full)
            .all(|i| vals[i].is_negative()))
}

/// The two canonical sequences of a module at `θ`:
/// `0 → t → M → f̄ → 0` and `0 → t̄ → M → f → 0`, with `w = t̄ / t`.
#[derive(Clone, Debug)]
pub struct CanonicalSequenceData {
    pub t: Submodule,
    pub tbar: Submodule,
    pub t_index: usize,
    pub tbar_index: usize,
    pub w: Module,
    pub f: Module,
    pub fbar: Module,
}

impl CanonicalSequenceData {
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

    /// Re-checks the defining properties on the pieces themselves, each
    /// enumerated afresh: `t` is torsion, `f` is torsion-free, `w` is
    /// semistable, and dimensions add up.
    pub fn verify(&self, theta: &StabilityVector, m: &Module) -> Result<Report> {
        let mut report = Report::new();
        let t_mod = m.restrict(&self.t)?;
        let t_set = enumerate_submodules(&t_mod)?;
        let tv = values(theta, &t_set);
        let top = tv[t_set.full_index()].clone();
        report.check(
            "t-torsion",
            (0..t_set.len())
                .filter(|&i| i != t_set.full_index())
                .all(|i| tv[i] < top),
            || "a nonzero quotient of t has θ ≤ 0".into(),
        );
        let f_set = enumerate_submodules(&self.f)?;
        let fv = values(theta, &f_set);
        report.check(
            "f-torsion-free",
            (0..f_set.len())
                .filter(|&i| i != f_set.zero_index())
                .all(|i| fv[i].is_negative()),
            || "a nonzero submodule of f has θ ≥ 0".into(),
        );
        report.check("w-semistable", is_semistable(theta, &self.w)?, || {
            "w is not semistable".into()
        });
        let md = m.dim_vector();
        report.check(
            "dim-additivity",
            &(&self.t_dim() + &self.w_dim()) + &self.f_dim() == md
                && &self.t_dim() + &self.fbar_dim() == md
                && &self.tbar_dim() + &self.f_dim() == md,
            || "dimension vectors do not add up".into(),
        );
        Ok(report)
    }
}

/// The unique inclusion-maximal index among `candidates`.
fn unique_maximal(set: &SubmoduleSet, candidates: &[usize]) -> Result<usize> {
    let maximal: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&i| !candidates.iter().any(|&j| j != i && set.is_contained(i, j)))
        .collect();
    match maximal.as_slice() {
        [only] => Ok(*only),
        _ => Err(Error::Inconsistent("no unique maximal submodule".into())),
    }
}

pub fn canonical_sequences(theta: &StabilityVector, m: &Module) -> Result<CanonicalSequenceData> {
    check_len(theta, m)?;
    canonical_sequences_in(theta, &enumerate_submodules(m)?)
}

/// `t` is the largest submodule all of whose nonzero quotients have `θ > 0`;
/// `t̄` the largest one whose quotients all have `θ ≥ 0`.
pub fn canonical_sequences_in(theta: &StabilityVector, set: &SubmoduleSet) -> Result<CanonicalSequenceData> {
    let m = set.module();
    let vals = values(theta, set);
    let strict: Vec<usize> = (0..set.len())
        .filter(|&l| set.below(l).iter().all(|&k| vals[k] < vals[l]))
        .collect();
    let weak: Vec<usize> = (0..set.len())
        .filter(|&l| set.below(l).iter().all(|&k| vals[k] <= vals[l]))
        .collect();
    let t_index = unique_maximal(set, &strict)?;
    let tbar_index = unique_maximal(set, &weak)?;
    if !set.is_contained(t_index, tbar_index) {
        return Err(Error::Inconsistent("no unique maximal submodule".into()));
    }
    let t = set.get(t_index).clone();
    let tbar = set.get(tbar_index).clone();
    Ok(CanonicalSequenceData {
        w: m.subquotient(&t, &tbar)?,
        f: m.quotient(&tbar)?,
        fbar: m.quotient(&t)?,
        t,
        tbar,
        t_index,
        tbar_index,
    })
}

/// A stable composition factor inside the semistable subcategory.
#[derive(Clone, Debug)]
pub struct SuppFactor {
    pub module: Module,
    pub dim: DimVector,
}

/// A composition series of a semistable module inside the semistable
/// subcategory. At each step the canonically least minimal semistable
/// submodule above the previous term is taken.
pub fn supp_factors(theta: &StabilityVector, x: &Module) -> Result<Vec<SuppFactor>> {
    check_len(theta, x)?;
    let set = enumerate_submodules(x)?;
    if !is_semistable_in(theta, &set) {
        return Err(Error::NotSemistable);
    }
    supp_chain(theta, &set, set.zero_index(), set.full_index())
}

/// Stable factors of `upper / lower`, which must be semistable, computed in
/// the ambient lattice.
pub fn supp_factors_between(
    theta: &StabilityVector,
    set: &SubmoduleSet,
    lower: usize,
    upper: usize,
) -> Result<Vec<SuppFactor>> {
    if !set.is_contained(lower, upper) {
        return Err(Error::InclusionFailure("lower bound is not below upper bound".into()));
    }
    let vals = values(theta, set);
    let base = &vals[lower];
    let semistable = vals[upper] == *base
        && set
            .interval(lower, upper)
            .iter()
            .all(|&k| vals[k] <= *base);
    if !semistable {
        return Err(Error::NotSemistable);
    }
    supp_chain(theta, set, lower, upper)
}

fn supp_chain(theta: &StabilityVector, set: &SubmoduleSet, lower: usize, upper: usize) -> Result<Vec<SuppFactor>> {
    let vals = values(theta, set);
    let level = vals[lower].clone();
    let interval = set.interval(lower, upper);
    let m = set.module();
    let mut factors = Vec::new();
    let mut current = lower;
    while current != upper {
        let above: Vec<usize> = interval
            .iter()
            .copied()
            .filter(|&k| k != current && set.is_contained(current, k) && vals[k] == level)
            .collect();
        let next = above
            .iter()
            .copied()
            .find(|&k| !above.iter().any(|&j| j != k && set.is_contained(j, k)))
            .ok_or_else(|| Error::Inconsistent("no semistable step in the interval".into()))?;
        let module = m.subquotient(set.get(current), set.get(next))?;
        factors.push(SuppFactor {
            dim: module.dim_vector(),
            module,
        });
        current = next;
    }
    Ok(factors)
}

/// Dimension vectors of the factors, sorted.
pub fn supp_dims(factors: &[SuppFactor]) -> Vec<DimVector> {
    let mut dims: Vec<DimVector> = factors.iter().map(|f| f.dim.clone()).collect();
    dims.sort();
    dims
}

/// Indices of the submodules in `t(θ, M)`.
pub type TSet = BTreeSet<usize>;

/// All `L ⊇ t` with `L / t` semistable.
pub fn t_set(theta: &StabilityVector, m: &Module) -> Result<TSet> {
    check_len(theta, m)?;
    let set = enumerate_submodules(m)?;
    let data = canonical_sequences_in(theta, &set)?;
    Ok(t_set_in(theta, &set, data.t_index))
}

pub fn t_set_in(theta: &StabilityVector, set: &SubmoduleSet, t_index: usize) -> TSet {
    let vals = values(theta, set);
    let level = &vals[t_index];
    (0..set.len())
        .filter(|&l| {
            set.is_contained(t_index, l)
                && vals[l] == *level
                && set.interval(t_index, l).iter().all(|&k| vals[k] <= *level)
        })
        .collect()
}

/// Equivalence by equality of `t(θ, M)` and `t(η, M)`.
pub fn is_m_tf_equivalent(theta: &StabilityVector, eta: &StabilityVector, set: &SubmoduleSet) -> Result<bool> {
    let a = canonical_sequences_in(theta, set)?;
    let b = canonical_sequences_in(eta, set)?;
    Ok(t_set_in(theta, set, a.t_index) == t_set_in(eta, set, b.t_index))
}

/// What the definition of equivalence compares: the canonical sequences and
/// the semistable submodules of the middle term, the latter indexed in the
/// middle term's own enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefinitionKey {
    pub t: Submodule,
    pub tbar: Submodule,
    pub w_semistable: BTreeSet<usize>,
}

pub fn definition_key(theta: &StabilityVector, set: &SubmoduleSet) -> Result<DefinitionKey> {
    let data = canonical_sequences_in(theta, set)?;
    let w_set = enumerate_submodules(&data.w)?;
    Ok(DefinitionKey {
        w_semistable: semistable_submodules(theta, &w_set),
        t: data.t,
        tbar: data.tbar,
    })
}

/// Equivalence by the definition: equal canonical sequences, and the
/// semistable submodules of the two middle terms agree. The middle term is
/// enumerated on its own.
pub fn is_m_tf_equivalent_by_definition(
    theta: &StabilityVector,
    eta: &StabilityVector,
    set: &SubmoduleSet,
) -> Result<bool> {
    let a = canonical_sequences_in(theta, set)?;
    let b = canonical_sequences_in(eta, set)?;
    if a.t != b.t || a.tbar != b.tbar || a.w != b.w || a.f != b.f || a.fbar != b.fbar {
        return Ok(false);
    }
    let w_set = enumerate_submodules(&a.w)?;
    Ok(semistable_submodules(theta, &w_set) == semistable_submodules(eta, &w_set))
}

/// Submodules `N` of the set's module with `N` semistable.
fn semistable_submodules(theta: &StabilityVector, set: &SubmoduleSet) -> BTreeSet<usize> {
    let vals = values(theta, set);
    (0..set.len())
        .filter(|&l| vals[l].is_zero() && set.below(l).iter().all(|&k| !vals[k].is_positive()))
        .collect()
}

/// Whether `θ` lies in the closure of the class of `η`.
pub fn in_class_closure(theta: &StabilityVector, eta: &StabilityVector, set: &SubmoduleSet) -> Result<bool> {
    let a = canonical_sequences_in(theta, set)?;
    let b = canonical_sequences_in(eta, set)?;
    Ok(t_set_in(eta, set, b.t_index).is_subset(&t_set_in(theta, set, a.t_index)))
}

/// Whether `θ` lies on the wall of `M`, i.e. `M` is `θ`-semistable.
pub fn wall_membership(theta: &StabilityVector, m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    is_semistable(theta, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn sv(x: &[i64]) -> StabilityVector {
        StabilityVector::from_ints(x)
    }

    fn dv(x: &[i64]) -> DimVector {
        DimVector(x.to_vec())
    }

    #[test]
    fn evaluation() {
        assert_eq!(evaluate(&sv(&[0, 1]), &dv(&[1, 1])).unwrap(), Q::from_integer(1.into()));
        assert!(evaluate(&sv(&[1, -1]), &dv(&[1, 1])).unwrap().is_zero());
        assert_eq!(evaluate(&sv(&[0, 1, 0]), &dv(&[4, 7, 2])).unwrap(), Q::from_integer(7.into()));
        assert!(matches!(
            evaluate(&sv(&[1]), &dv(&[1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn parse_vector() {
        let v: StabilityVector = "1, -1/2,0".parse().unwrap();
        assert_eq!(v.0[1], Q::new((-1).into(), 2.into()));
        assert_eq!(v.to_string(), "(1,-1/2,0)");
        assert!(matches!("1,x".parse::<StabilityVector>(), Err(Error::Parse { column: 3, .. })));
    }

    #[test]
    fn semistability_a2() {
        let m = presets::a2_p1();
        assert!(is_semistable(&sv(&[1, -1]), &m).unwrap());
        assert!(!is_semistable(&sv(&[0, 1]), &m).unwrap());
        assert!(is_semistable(&sv(&[0, 0]), &m).unwrap());
        assert!(is_stable(&sv(&[1, -1]), &m).unwrap());
        assert!(!is_stable(&sv(&[0, 0]), &m).unwrap());
        let s1 = presets::a2_s1();
        assert!(!is_stable(&sv(&[0, 1]), &s1.direct_sum(&s1).unwrap()).unwrap());
        assert!(matches!(
            is_stable(&sv(&[0, 0]), &Module::zero(presets::a2_algebra())),
            Err(Error::ZeroModule)
        ));
    }

    #[test]
    fn square_stable() {
        let m = presets::square_lambda();
        assert!(is_stable(&sv(&[2, 0, 0, -2]), &m).unwrap());
        // on an extreme ray of the wall the module is semistable with three stable factors
        let ray = sv(&[1, -1, 0, 0]);
        assert!(is_semistable(&ray, &m).unwrap());
        assert!(!is_stable(&ray, &m).unwrap());
        assert_eq!(supp_factors(&ray, &m).unwrap().len(), 3);
    }

    #[test]
    fn canonical_a2() {
        let m = presets::a2_p1();
        let cases = [
            (sv(&[0, 1]), [0, 1], [1, 0], [0, 0]),
            (sv(&[-1, 0]), [0, 0], [0, 1], [1, 0]),
            (sv(&[0, 0]), [0, 0], [1, 1], [0, 0]),
        ];
        for (theta, t, w, f) in cases {
            let data = canonical_sequences(&theta, &m).unwrap();
            assert_eq!(data.t_dim(), dv(&t), "{theta}");
            assert_eq!(data.w_dim(), dv(&w), "{theta}");
            assert_eq!(data.f_dim(), dv(&f), "{theta}");
            assert!(data.verify(&theta, &m).unwrap().is_ok());
        }
    }

    #[test]
    fn supp_a2() {
        let m = presets::a2_p1();
        let dims = supp_dims(&supp_factors(&sv(&[0, 0]), &m).unwrap());
        assert_eq!(dims, vec![dv(&[0, 1]), dv(&[1, 0])]);
        let dims = supp_dims(&supp_factors(&sv(&[1, -1]), &m).unwrap());
        assert_eq!(dims, vec![dv(&[1, 1])]);
        let zero = Module::zero(presets::a2_algebra());
        assert!(supp_factors(&sv(&[3, 1]), &zero).unwrap().is_empty());
        assert!(matches!(supp_factors(&sv(&[0, 1]), &m), Err(Error::NotSemistable)));
        for factor in supp_factors(&sv(&[0, 0]), &m).unwrap() {
            assert!(is_stable(&sv(&[0, 0]), &factor.module).unwrap());
        }
    }

    #[test]
    fn supp_between_matches_direct() {
        let m = presets::nakayama2_121();
        let set = enumerate_submodules(&m).unwrap();
        for theta in [sv(&[0, 0]), sv(&[1, -1]), sv(&[1, -2]), sv(&[0, 1])] {
            let data = canonical_sequences_in(&theta, &set).unwrap();
            let a = supp_dims(&supp_factors_between(&theta, &set, data.t_index, data.tbar_index).unwrap());
            let b = supp_dims(&supp_factors(&theta, &data.w).unwrap());
            assert_eq!(a, b, "{theta}");
        }
    }

    #[test]
    fn t_sets() {
        let m = presets::a2_p1();
        let set = enumerate_submodules(&m).unwrap();
        let t = t_set(&sv(&[1, -1]), &m).unwrap();
        let expected: TSet = [set.zero_index(), set.full_index()].into_iter().collect();
        assert_eq!(t, expected);
        assert_eq!(t_set(&sv(&[2, 1]), &m).unwrap(), [set.full_index()].into_iter().collect());
        assert_eq!(t_set(&sv(&[0, 0]), &m).unwrap().len(), 3);
    }

    #[test]
    fn equivalence_routes() {
        let m = presets::a2_p1();
        let set = enumerate_submodules(&m).unwrap();
        let pairs = [
            (sv(&[0, 0]), sv(&[1, -1]), false),
            (sv(&[1, 1]), sv(&[1, 1]), true),
            (sv(&[2, 1]), sv(&[1, 3]), true),
            (sv(&[0, 1]), sv(&[0, 5]), true),
            (sv(&[0, 1]), sv(&[1, 1]), false),
        ];
        for (a, b, expected) in pairs {
            assert_eq!(is_m_tf_equivalent(&a, &b, &set).unwrap(), expected, "{a} {b}");
            assert_eq!(is_m_tf_equivalent_by_definition(&a, &b, &set).unwrap(), expected, "{a} {b}");
        }
    }

    #[test]
    fn closure() {
        let set = enumerate_submodules(&presets::a2_p1()).unwrap();
        assert!(in_class_closure(&sv(&[0, 0]), &sv(&[1, -1]), &set).unwrap());
        assert!(!in_class_closure(&sv(&[1, -1]), &sv(&[0, 0]), &set).unwrap());
        assert!(in_class_closure(&sv(&[2, 1]), &sv(&[2, 1]), &set).unwrap());
    }

    #[test]
    fn wall() {
        let m = presets::a2_p1();
        assert!(wall_membership(&sv(&[1, -1]), &m).unwrap());
        assert!(!wall_membership(&sv(&[1, 0]), &m).unwrap());
        assert!(wall_membership(&StabilityVector::zero(4), &presets::square_lambda()).unwrap());
        assert!(wall_membership(&sv(&[1, 0, 0, -1]), &presets::square_lambda()).unwrap());
        assert!(matches!(
            wall_membership(&sv(&[0, 0]), &Module::zero(presets::a2_algebra())),
            Err(Error::ZeroModule)
        ));
    }
}
