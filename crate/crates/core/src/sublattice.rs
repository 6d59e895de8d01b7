//! Enumeration of the submodule lattice of a module over a prime field.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyhedra::{convex_hull, Polytope, Q};
use crate::quiver::{DimVector, Module, Submodule};

/// Resource guards for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    /// Upper bound on `p^(total dimension)`.
    pub max_vectors: u64,
    pub max_submodules: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        Self {
            max_vectors: 1 << 14,
            max_submodules: 200_000,
        }
    }
}

/// All submodules of a module, sorted by their canonical key.
#[derive(Clone, Debug)]
pub struct SubmoduleSet {
    module: Module,
    subs: Vec<Submodule>,
    dims: Vec<DimVector>,
    index: HashMap<Submodule, usize>,
    below: OnceLock<Vec<Vec<usize>>>,
}

impl SubmoduleSet {
    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn submodules(&self) -> &[Submodule] {
        &self.subs
    }

    pub fn get(&self, i: usize) -> &Submodule {
        &self.subs[i]
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn dim_vector(&self, i: usize) -> &DimVector {
        &self.dims[i]
    }

    pub fn dim_vectors(&self) -> &[DimVector] {
        &self.dims
    }

    pub fn index_of(&self, sub: &Submodule) -> Option<usize> {
        self.index.get(sub).copied()
    }

    pub fn zero_index(&self) -> usize {
        self.index[&Submodule::zero(&self.module)]
    }

    pub fn full_index(&self) -> usize {
        self.index[&Submodule::full(&self.module)]
    }

    /// Indices of the submodules strictly contained in submodule `i`, ascending.
    pub fn below(&self, i: usize) -> &[usize] {
        &self.below.get_or_init(|| {
            let f = self.module.field();
            (0..self.subs.len())
                .into_par_iter()
                .map(|i| {
                    (0..self.subs.len())
                        .filter(|&j| {
                            j != i
                                && self.subs[j].total_dim() < self.subs[i].total_dim()
                                && self.subs[j].is_contained_in(&self.subs[i], f)
                        })
                        .collect()
                })
                .collect()
        })[i]
    }

    /// Whether submodule `i` is contained in submodule `j`.
    pub fn is_contained(&self, i: usize, j: usize) -> bool {
        i == j || self.below(j).binary_search(&i).is_ok()
    }

    /// Indices of the submodules `L` with `lower ⊆ L ⊆ upper`.
    pub fn interval(&self, lower: usize, upper: usize) -> Vec<usize> {
        (0..self.subs.len())
            .filter(|&k| self.is_contained(lower, k) && self.is_contained(k, upper))
            .collect()
    }
}

pub fn enumerate_submodules(module: &Module) -> Result<SubmoduleSet> {
    enumerate_submodules_with(module, EnumLimits::default())
}

/// Cyclic submodules of all vectors at all vertices, closed under sums.
pub fn enumerate_submodules_with(module: &Module, limits: EnumLimits) -> Result<SubmoduleSet> {
    let p = module.field().p() as u64;
    let total = module.total_dim() as u32;
    match p.checked_pow(total) {
        Some(count) if count <= limits.max_vectors => {}
        _ => {
            return Err(Error::ResourceLimit(format!(
                "{p}^{total} vectors exceed the enumeration bound {}",
                limits.max_vectors
            )))
        }
    }
    let f = module.field();
    let generators: Vec<(usize, Vec<u32>)> = module
        .dims()
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| normalized_vectors(module.field().p(), d).map(move |x| (v, x)))
        .collect();
    let cyclic: Vec<Submodule> = generators
        .par_iter()
        .map(|g| Submodule::generated_by(module, std::slice::from_ref(g)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut seen: HashSet<Submodule> = cyclic.iter().cloned().collect();
    seen.insert(Submodule::zero(module));
    let mut frontier: Vec<Submodule> = cyclic.clone();
    while !frontier.is_empty() {
        let sums: BTreeSet<Submodule> = frontier
            .par_iter()
            .flat_map_iter(|x| cyclic.iter().map(move |c| x.sum(c, f)))
            .collect();
        frontier = sums.into_iter().filter(|s| seen.insert(s.clone())).collect();
        if seen.len() > limits.max_submodules {
            return Err(Error::ResourceLimit(format!(
                "more than {} submodules",
                limits.max_submodules
            )));
        }
    }

    let mut subs: Vec<Submodule> = seen.into_iter().collect();
    subs.sort_by_cached_key(Submodule::canonical_key);
    let dims = subs.iter().map(Submodule::dim_vector).collect();
    let index = subs.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    Ok(SubmoduleSet {
        module: module.clone(),
        subs,
        dims,
        index,
        below: OnceLock::new(),
    })
}

/// Nonzero vectors of `F_p^d` whose first nonzero entry is 1.
fn normalized_vectors(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d as u32);
    (1..count).filter_map(move |mut k| {
        let mut x = vec![0u32; d];
        for xi in x.iter_mut().rev() {
            *xi = (k % p as u64) as u32;
            k /= p as u64;
        }
        (x.iter().find(|&&c| c != 0) == Some(&1)).then_some(x)
    })
}

pub fn submodule_dim_vectors(module: &Module) -> Result<BTreeSet<DimVector>> {
    Ok(enumerate_submodules(module)?.dim_vectors().iter().cloned().collect())
}

/// Convex hull of the dimension vectors of all submodules.
pub fn newton_polytope(module: &Module) -> Result<Polytope> {
    newton_polytope_of(&enumerate_submodules(module)?)
}

pub fn newton_polytope_of(set: &SubmoduleSet) -> Result<Polytope> {
    let points: BTreeSet<&DimVector> = set.dim_vectors().iter().collect();
    let points: Vec<Vec<Q>> = points
        .into_iter()
        .map(|d| d.as_slice().iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect();
    convex_hull(&points, set.module().n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::linalg::qs;
    use crate::presets;

    fn dims(m: &Module) -> Vec<Vec<i64>> {
        submodule_dim_vectors(m).unwrap().into_iter().map(|d| d.0).collect()
    }

    #[test]
    fn a2_projective() {
        let set = enumerate_submodules(&presets::a2_p1()).unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(dims(&presets::a2_p1()), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(set.interval(set.zero_index(), set.full_index()).len(), 3);
    }

    #[test]
    fn nakayama() {
        assert_eq!(
            dims(&presets::nakayama2_121()),
            vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 1]]
        );
    }

    #[test]
    fn square() {
        assert_eq!(
            dims(&presets::square_lambda()),
            vec![
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 1],
                vec![0, 1, 0, 1],
                vec![0, 1, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn semisimple_sum() {
        let s1 = presets::a2_s1();
        let m = s1.direct_sum(&s1).unwrap();
        assert_eq!(dims(&m), vec![vec![0, 0], vec![1, 0], vec![2, 0]]);
        // the projective line over F_2 has three points
        assert_eq!(enumerate_submodules(&m).unwrap().len(), 5);
    }

    #[test]
    fn zero_module() {
        let m = Module::zero(presets::a2_algebra());
        let set = enumerate_submodules(&m).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.zero_index(), set.full_index());
        assert_eq!(newton_polytope(&m).unwrap().vertices(), &[qs(&[0, 0])]);
    }

    #[test]
    fn sorted_and_closed() {
        let m = presets::nakayama2_121();
        let set = enumerate_submodules(&m).unwrap();
        let keys: Vec<_> = set.submodules().iter().map(Submodule::canonical_key).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let f = m.field();
        for a in set.submodules() {
            for b in set.submodules() {
                assert!(set.index_of(&a.sum(b, f)).is_some());
                assert!(set.index_of(&a.intersection(b, f)).is_some());
            }
        }
    }

    #[test]
    fn resource_bound() {
        let s1 = presets::a2_s1();
        let mut m = s1.clone();
        for _ in 0..14 {
            m = m.direct_sum(&s1).unwrap();
        }
        assert!(matches!(enumerate_submodules(&m), Err(Error::ResourceLimit(_))));
        let tight = EnumLimits {
            max_vectors: 1 << 14,
            max_submodules: 2,
        };
        assert!(matches!(
            enumerate_submodules_with(&presets::nakayama2_121(), tight),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn newton_quadrilateral() {
        let p = newton_polytope(&presets::nakayama2_121()).unwrap();
        let mut v = p.vertices().to_vec();
        v.sort();
        assert_eq!(v, vec![qs(&[0, 0]), qs(&[1, 0]), qs(&[1, 1]), qs(&[2, 1])]);
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn normalized_vector_count() {
        assert_eq!(normalized_vectors(3, 2).count(), 4);
        assert_eq!(normalized_vectors(2, 3).count(), 7);
        assert_eq!(normalized_vectors(5, 0).count(), 0);
    }
}
