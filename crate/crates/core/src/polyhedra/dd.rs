//! Double description: from `{x : E x = 0, A x >= 0}` to a lineality basis
//! plus extreme rays.
//!
//! The cone is first restricted to the null space of `E`, then split into
//! its lineality space and a pointed part living in the row space of the
//! restricted inequality matrix. The pointed part is built by incremental
//! insertion of constraints starting from a simplicial cone, with the
//! combinatorial adjacency test on zero sets.

use num::{Signed, Zero};

use super::linalg::{dot, inverse, null_space, primitive, rank, rref, z_to_q, Q};

#[derive(Clone, Debug, Default)]
pub struct Generators {
    pub lineality: Vec<Vec<Q>>,
    pub rays: Vec<Vec<Q>>,
}

pub fn generators(n: usize, eqs: &[Vec<Q>], ineqs: &[Vec<Q>]) -> Generators {
    let subspace = null_space(eqs, n);
    let k = subspace.len();
    if k == 0 {
        return Generators::default();
    }
    let lift = |y: &[Q]| -> Vec<Q> {
        let mut x = vec![Q::zero(); n];
        for (yi, basis) in y.iter().zip(&subspace) {
            if yi.is_zero() {
                continue;
            }
            for (xj, bj) in x.iter_mut().zip(basis) {
                *xj += yi * bj;
            }
        }
        x
    };

    let restricted: Vec<Vec<Q>> = ineqs
        .iter()
        .map(|a| subspace.iter().map(|b| dot(a, b)).collect::<Vec<Q>>())
        .filter(|r: &Vec<Q>| r.iter().any(|x| !x.is_zero()))
        .collect();

    let lineality = null_space(&restricted, k).iter().map(|y| lift(y)).collect();

    let (row_basis, _) = rref(&restricted, k);
    let d = row_basis.len();
    if d == 0 {
        return Generators {
            lineality,
            rays: Vec::new(),
        };
    }
    let constraints: Vec<Vec<Q>> = restricted
        .iter()
        .map(|a| row_basis.iter().map(|w| dot(a, w)).collect())
        .collect();
    let rays = pointed(&constraints, d)
        .into_iter()
        .map(|z| {
            let mut y = vec![Q::zero(); k];
            for (zi, w) in z.iter().zip(&row_basis) {
                for (yj, wj) in y.iter_mut().zip(w) {
                    *yj += zi * wj;
                }
            }
            let x = lift(&y);
            z_to_q(&primitive(&x))
        })
        .collect();
    Generators { lineality, rays }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(m: usize) -> Self {
        Bits(vec![0; m.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<Q>,
    zeros: Bits,
}

/// Extreme rays of `{z : C z >= 0}` where `C` has full column rank `d`.
fn pointed(c: &[Vec<Q>], d: usize) -> Vec<Vec<Q>> {
    let m = c.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut chosen_rows: Vec<Vec<Q>> = Vec::with_capacity(d);
    for (i, row) in c.iter().enumerate() {
        if chosen.len() == d {
            break;
        }
        chosen_rows.push(row.clone());
        if rank(&chosen_rows, d) == chosen_rows.len() {
            chosen.push(i);
        } else {
            chosen_rows.pop();
        }
    }
    assert_eq!(chosen.len(), d, "constraint matrix must have full column rank");
    let inv = inverse(&chosen_rows).expect("independent rows");

    let mut rays: Vec<Ray> = (0..d)
        .map(|i| {
            let v: Vec<Q> = (0..d).map(|r| inv[r][i].clone()).collect();
            let mut zeros = Bits::new(m);
            for (j, &ci) in chosen.iter().enumerate() {
                if j != i {
                    zeros.set(ci);
                }
            }
            Ray {
                v: z_to_q(&primitive(&v)),
                zeros,
            }
        })
        .collect();

    for (j, row) in c.iter().enumerate() {
        if chosen.contains(&j) {
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            if v.is_zero() {
                rays[i].zeros.set(j);
            } else if v.is_positive() {
                pos.push(i);
            } else {
                neg.push(i);
            }
        }
        if neg.is_empty() {
            continue;
        }
        let mut created = Vec::new();
        for &p in &pos {
            for &qi in &neg {
                let common = rays[p].zeros.and(&rays[qi].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(r, ray)| r != p && r != qi && common.subset_of(&ray.zeros));
                if blocked {
                    continue;
                }
                let v: Vec<Q> = rays[qi]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xq, xp)| &vals[p] * xq - &vals[qi] * xp)
                    .collect();
                let mut zeros = common;
                zeros.set(j);
                created.push(Ray {
                    v: z_to_q(&primitive(&v)),
                    zeros,
                });
            }
        }
        let negatives: Vec<bool> = (0..rays.len()).map(|i| neg.contains(&i)).collect();
        let mut kept: Vec<Ray> = rays
            .into_iter()
            .zip(negatives)
            .filter_map(|(r, is_neg)| (!is_neg).then_some(r))
            .collect();
        kept.extend(created);
        rays = kept;
    }
    rays.into_iter().map(|r| r.v).collect()
}
