//! Exact linear algebra over `Q` on plain row vectors.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(Z::from(num), Z::from(den))
}

pub fn qs(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn z_to_q(v: &[Z]) -> Vec<Q> {
    v.iter().map(|x| Q::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_zq(a: &[Z], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Q::zero(), |acc, (x, y)| acc + y * Q::from_integer(x.clone()))
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Reduced row-echelon form (zero rows dropped) and pivot columns.
pub fn rref(rows: &[Vec<Q>], ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..ncols {
        if lead == m.len() {
            break;
        }
        let Some(pr) = (lead..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(lead, pr);
        let inv = m[lead][c].recip();
        for x in m[lead].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[lead].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != lead && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * p;
                }
            }
        }
        pivots.push(c);
        lead += 1;
    }
    m.truncate(lead);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : r·x = 0 for every row r}`.
pub fn null_space(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = rref(rows, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![Q::zero(); ncols];
            v[fc] = Q::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[i][fc].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Scales a rational vector to the primitive integer vector pointing the
/// same way. The zero vector maps to zero.
pub fn primitive(v: &[Q]) -> Vec<Z> {
    let lcm = v.iter().fold(Z::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Z> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(Z::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Canonical basis of a subspace: echelon rows scaled to primitive integers.
pub fn canonical_subspace(basis: &[Vec<Q>], ncols: usize) -> Vec<Vec<Z>> {
    rref(basis, ncols).0.iter().map(|r| primitive(r)).collect()
}

/// Pairwise-orthogonal basis spanning the same subspace.
pub fn orthogonal_basis(basis: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = Vec::new();
    for b in basis {
        let r = project_onto_complement_orth(b, &out);
        if !is_zero(&r) {
            out.push(r);
        }
    }
    out
}

fn project_onto_complement_orth(v: &[Q], orth: &[Vec<Q>]) -> Vec<Q> {
    let mut r = v.to_vec();
    for o in orth {
        let c = dot(&r, o) / dot(o, o);
        r = sub(&r, &scale(o, &c));
    }
    r
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
pub fn project_out(v: &[Q], basis: &[Vec<Q>]) -> Vec<Q> {
    project_onto_complement_orth(v, &orthogonal_basis(basis))
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_scaling() {
        assert_eq!(
            primitive(&[q_frac(1, 2), q_frac(-3, 4), q(0)]),
            vec![Z::from(2), Z::from(-3), Z::from(0)]
        );
        assert_eq!(primitive(&qs(&[4, 6])), vec![Z::from(2), Z::from(3)]);
        assert_eq!(primitive(&qs(&[0, 0])), vec![Z::from(0), Z::from(0)]);
    }

    #[test]
    fn null_space_dimension() {
        let rows = vec![qs(&[1, 1, 1])];
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(dot(&rows[0], &v).is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![qs(&[2, 1]), qs(&[1, 1])];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![qs(&[1, -1]), qs(&[-1, 2])]);
        assert!(inverse(&[qs(&[1, 2]), qs(&[2, 4])]).is_none());
    }

    #[test]
    fn projection_is_orthogonal() {
        let basis = vec![qs(&[1, 1, 0])];
        let p = project_out(&qs(&[1, 0, 0]), &basis);
        assert_eq!(p, vec![q_frac(1, 2), q_frac(-1, 2), q(0)]);
    }
}
