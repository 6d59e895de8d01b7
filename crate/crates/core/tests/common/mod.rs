//! Independent reference computations used by the integration tests. Nothing
//! here calls the enumeration, hull or stability code of the library.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use num::rational::Ratio;
use num::{One, Signed, Zero};

use mtf_core::quiver::BoundQuiverAlgebra;
use mtf_core::Module;

pub type R = Ratio<i64>;

/// A subspace of F_p^d stored as its full set of vectors.
pub type VecSet = BTreeSet<Vec<u32>>;

/// A submodule as one vector set per vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BruteSub {
    pub spaces: Vec<VecSet>,
}

impl BruteSub {
    pub fn dims(&self, p: u32) -> Vec<i64> {
        self.spaces.iter().map(|s| log_p(s.len(), p)).collect()
    }

    pub fn contains(&self, other: &BruteSub) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| b.is_subset(a))
    }
}

fn log_p(mut size: usize, p: u32) -> i64 {
    let mut k = 0;
    while size > 1 {
        assert_eq!(size % p as usize, 0);
        size /= p as usize;
        k += 1;
    }
    k
}

fn span_with(p: u32, space: &VecSet, v: &[u32]) -> VecSet {
    let mut out = space.clone();
    for c in 1..p {
        for w in space {
            out.insert(w.iter().zip(v).map(|(a, b)| (a + c * b) % p).collect());
        }
    }
    out
}

/// Every subspace of F_p^d, found by repeatedly adjoining vectors.
pub fn all_subspaces(p: u32, d: usize) -> Vec<VecSet> {
    let zero: VecSet = [vec![0; d]].into_iter().collect();
    let vectors: Vec<Vec<u32>> = (0..(p as usize).pow(d as u32))
        .map(|mut x| {
            (0..d)
                .map(|_| {
                    let c = (x % p as usize) as u32;
                    x /= p as usize;
                    c
                })
                .collect()
        })
        .collect();
    let mut seen: BTreeSet<VecSet> = [zero.clone()].into_iter().collect();
    let mut frontier = vec![zero];
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if !s.contains(v) {
                let t = span_with(p, &s, v);
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn apply(m: &Module, arrow: usize, v: &[u32]) -> Vec<u32> {
    let p = m.field().p();
    let a = &m.maps()[arrow];
    (0..a.rows())
        .map(|r| (0..a.cols()).map(|c| a.get(r, c) * v[c]).sum::<u32>() % p)
        .collect()
}

/// All submodules: every tuple of subspaces stable under every arrow.
pub fn brute_submodules(m: &Module) -> Vec<BruteSub> {
    let p = m.field().p();
    let per_vertex: Vec<Vec<VecSet>> = m.dims().iter().map(|&d| all_subspaces(p, d)).collect();
    let arrows = m.algebra().arrows().to_vec();
    let mut out = Vec::new();
    let mut choice = vec![0usize; m.n()];
    loop {
        let spaces: Vec<VecSet> = choice.iter().enumerate().map(|(i, &c)| per_vertex[i][c].clone()).collect();
        let stable = arrows.iter().enumerate().all(|(ai, a)| {
            spaces[a.source]
                .iter()
                .all(|v| spaces[a.target].contains(&apply(m, ai, v)))
        });
        if stable {
            out.push(BruteSub { spaces });
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < per_vertex[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

pub fn brute_dim_vectors(m: &Module) -> BTreeSet<Vec<i64>> {
    let p = m.field().p();
    brute_submodules(m).iter().map(|s| s.dims(p)).collect()
}

pub fn dot(theta: &[R], d: &[i64]) -> R {
    theta.iter().zip(d).map(|(t, &x)| *t * R::from_integer(x)).sum()
}

/// The smallest and the largest submodule maximizing `theta`, as dimension
/// vectors. Maximizers of a modular function form a sublattice, so both
/// exist; they are found by intersecting and by taking the largest.
pub fn brute_torsion(m: &Module, theta: &[R]) -> (Vec<i64>, Vec<i64>) {
    let p = m.field().p();
    let subs = brute_submodules(m);
    let best = subs.iter().map(|s| dot(theta, &s.dims(p))).max().unwrap();
    let maximizers: Vec<&BruteSub> = subs.iter().filter(|s| dot(theta, &s.dims(p)) == best).collect();
    let mut smallest = maximizers[0].clone();
    for s in &maximizers[1..] {
        for (a, b) in smallest.spaces.iter_mut().zip(&s.spaces) {
            *a = a.intersection(b).cloned().collect();
        }
    }
    assert!(maximizers.iter().any(|s| **s == smallest), "maximizers not closed under meets");
    let largest = maximizers
        .iter()
        .max_by_key(|s| s.dims(p).iter().sum::<i64>())
        .unwrap();
    assert!(maximizers.iter().all(|s| largest.contains(s)), "maximizers not closed under joins");
    (smallest.dims(p), largest.dims(p))
}

/// Solves `a x = b` exactly. Returns `None` unless the solution is unique.
fn solve_unique(a: &[Vec<R>], b: &[R]) -> Option<Vec<R>> {
    let rows = a.len();
    let cols = a[0].len();
    let mut m: Vec<Vec<R>> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([*x]).collect()).collect();
    let mut pivot_row = 0;
    for c in 0..cols {
        let r = (pivot_row..rows).find(|&r| !m[r][c].is_zero())?;
        m.swap(pivot_row, r);
        let inv = m[pivot_row][c].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][c].is_zero() {
                let f = m[r][c];
                let pivot = m[pivot_row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| m[c][cols]).collect())
}

/// Whether `v` is a convex combination of at most `n + 1` of `others`.
pub fn in_hull(v: &[i64], others: &[Vec<i64>]) -> bool {
    let n = v.len();
    for k in 1..=(n + 1).min(others.len()) {
        for subset in itertools::Itertools::combinations(others.iter(), k) {
            let mut a: Vec<Vec<R>> = (0..n)
                .map(|i| subset.iter().map(|p| R::from_integer(p[i])).collect())
                .collect();
            a.push(vec![R::one(); k]);
            let mut b: Vec<R> = v.iter().map(|&x| R::from_integer(x)).collect();
            b.push(R::one());
            if let Some(l) = solve_unique(&a, &b) {
                if l.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Vertices of the convex hull of a finite point set, by a Carathéodory
/// test for each point, cross-checked with a separating integer direction.
pub fn hull_vertices(points: &BTreeSet<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    let pts: Vec<Vec<i64>> = points.iter().cloned().collect();
    let n = pts.first().map_or(0, Vec::len);
    let grid: Vec<Vec<i64>> = itertools::Itertools::multi_cartesian_product((0..n).map(|_| -4i64..=4)).collect();
    let mut out = BTreeSet::new();
    for (i, v) in pts.iter().enumerate() {
        let others: Vec<Vec<i64>> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        let vertex = !in_hull(v, &others);
        let score = |theta: &[i64], p: &[i64]| -> i64 { theta.iter().zip(p).map(|(a, b)| a * b).sum() };
        let separated = grid
            .iter()
            .any(|t| others.iter().all(|p| score(t, p) < score(t, v)));
        if vertex {
            assert!(separated || n == 0, "no separating direction found for {v:?}");
            out.insert(v.clone());
        } else {
            assert!(!separated, "{v:?} is separated but lies in the hull");
        }
    }
    out
}

/// Small path algebras without relations used for random modules.
pub fn algebra(kind: usize, p: u32) -> Arc<BoundQuiverAlgebra> {
    let s = |x: &str| x.to_string();
    let arrows: Vec<(String, String, String)> = match kind {
        0 => vec![(s("a"), s("1"), s("2"))],
        1 => vec![(s("a"), s("1"), s("2")), (s("b"), s("1"), s("2"))],
        _ => vec![(s("a"), s("1"), s("2")), (s("b"), s("3"), s("2"))],
    };
    let vertices = if kind < 2 { vec![s("1"), s("2")] } else { vec![s("1"), s("2"), s("3")] };
    Arc::new(BoundQuiverAlgebra::new(p, vertices, arrows, vec![]).unwrap())
}

/// A module over `algebra(kind, p)` with the given dimensions, filling the
/// arrow matrices from `entries` cyclically.
pub fn module(kind: usize, p: u32, dims: &[usize], entries: &[u32]) -> Module {
    let alg = algebra(kind, p);
    let dims = dims[..alg.n()].to_vec();
    let mut it = entries.iter().cycle();
    let maps = alg
        .arrows()
        .iter()
        .map(|a| {
            (0..dims[a.target])
                .map(|_| (0..dims[a.source]).map(|_| *it.next().unwrap() as i64).collect())
                .collect()
        })
        .collect();
    Module::from_integer_maps(alg, dims, maps).unwrap()
}

pub fn to_r(x: &[i64]) -> Vec<R> {
    x.iter().map(|&c| R::from_integer(c)).collect()
}
