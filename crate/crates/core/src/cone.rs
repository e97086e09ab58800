//! Extreme rays of `{x : a.x >= 0 for every row a}` by double description.
//!
//! Everything is exact integer arithmetic; rays are kept primitive. Rows are
//! inserted in lexicographic order after an initial simplicial cone spanned
//! by the first linearly independent rows, and two rays are combined only if
//! they are adjacent by the combinatorial test.

use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<i128>,
    zeros: Vec<u64>,
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn make_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn popcount(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

/// Primitive extreme rays of the pointed cone `{x : rows . x >= 0}`, sorted.
pub fn extreme_rays(rows: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let Some(first) = rows.first() else {
        return Err(Error::NonPointedCone);
    };
    let dim = first.len();
    let mut rows: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    rows.sort();
    rows.dedup();
    if linalg::rank(&rows) < dim {
        return Err(Error::NonPointedCone);
    }
    // Greedy choice of an initial basis among the sorted rows.
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<i64>> = basis.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if linalg::rank(&trial) == trial.len() {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    let b_rows: Vec<Vec<i64>> = basis.iter().map(|&j| rows[j].clone()).collect();
    let inv = linalg::inverse(&b_rows).ok_or(Error::NonPointedCone)?;
    let words = rows.len().div_ceil(64);
    let big: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    // Column j of the inverse meets basis row j positively and the others in zero.
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col: Vec<_> = (0..dim).map(|i| inv[i][j]).collect();
            let v: Vec<i128> = linalg::primitive(&col).into_iter().map(|x| x as i128).collect();
            let mut zeros = alloc::vec![0u64; words];
            for (k, &b) in basis.iter().enumerate() {
                if k != j {
                    bit(&mut zeros, b);
                }
            }
            Ray { v, zeros }
        })
        .collect();
    for i in 0..rows.len() {
        if basis.contains(&i) {
            continue;
        }
        let a = &big[i];
        let vals: Vec<i128> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, &val) in rays.iter().zip(&vals) {
            if val >= 0 {
                let mut r = r.clone();
                if val == 0 {
                    bit(&mut r.zeros, i);
                }
                next.push(r);
            }
        }
        for (p, &vp) in rays.iter().zip(&vals) {
            if vp <= 0 {
                continue;
            }
            for (n, &vn) in rays.iter().zip(&vals) {
                if vn >= 0 {
                    continue;
                }
                let common: Vec<u64> = p.zeros.iter().zip(&n.zeros).map(|(x, y)| x & y).collect();
                if popcount(&common) + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().all(|r| {
                    core::ptr::eq(r, p) || core::ptr::eq(r, n) || !subset(&common, &r.zeros)
                });
                if !adjacent {
                    continue;
                }
                let mut v: Vec<i128> = p
                    .v
                    .iter()
                    .zip(&n.v)
                    .map(|(x, y)| vp * y - vn * x)
                    .collect();
                make_primitive(&mut v);
                let mut zeros = common;
                bit(&mut zeros, i);
                next.push(Ray { v, zeros });
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<i64>> = rays
        .into_iter()
        .map(|r| r.v.into_iter().map(|x| x as i64).collect())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn orthant() {
        let rays = extreme_rays(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(rays, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn square_cone() {
        // x >= |y|, x >= |z| has the four rays (1, +-1, +-1).
        let rows = vec![vec![1, 1, 0], vec![1, -1, 0], vec![1, 0, 1], vec![1, 0, -1]];
        let rays = extreme_rays(&rows).unwrap();
        assert_eq!(
            rays,
            vec![vec![1, -1, -1], vec![1, -1, 1], vec![1, 1, -1], vec![1, 1, 1]]
        );
    }

    #[test]
    fn redundant_rows_are_harmless() {
        let rows = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 0]];
        assert_eq!(extreme_rays(&rows).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn rank_one() {
        assert_eq!(extreme_rays(&[vec![3]]).unwrap(), vec![vec![1]]);
    }

    #[test]
    fn lineality_is_rejected() {
        assert!(matches!(
            extreme_rays(&[vec![1, 0, 0], vec![0, 1, 0]]),
            Err(Error::NonPointedCone)
        ));
    }
}
