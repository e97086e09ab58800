//! Small exact linear algebra over `Q`, sized for Picard lattices.

use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub(crate) type Q = Ratio<i128>;

/// Row-reduces `m` in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect())
        .collect()
}

pub(crate) fn rank(rows: &[Vec<i64>]) -> usize {
    row_reduce(&mut to_q(rows)).len()
}

/// Determinant of a square integer matrix.
pub(crate) fn det(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut m = to_q(rows);
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for i in c + 1..n {
            let f = m[i][c] / m[c][c];
            for j in c..n {
                let t = m[c][j] * f;
                m[i][j] -= t;
            }
        }
    }
    d.to_integer()
}

/// Solves `sum_j x_j cols[j] = target`; `None` unless a unique solution exists.
pub(crate) fn solve(cols: &[Vec<i64>], target: &[i64]) -> Option<Vec<Q>> {
    let n = cols.len();
    let rows = target.len();
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Q> = cols.iter().map(|c| Q::from_integer(c[i] as i128)).collect();
            r.push(Q::from_integer(target[i] as i128));
            r
        })
        .collect();
    let pivots = row_reduce(&mut m);
    if pivots.len() != n || pivots.iter().any(|&p| p == n) {
        return None;
    }
    if m[n..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| m[i][n]).collect())
}

/// Integer solution of `sum_j x_j cols[j] = target`, if one exists uniquely.
pub(crate) fn solve_integral(cols: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    solve(cols, target)?
        .into_iter()
        .map(|q| q.is_integer().then(|| q.to_integer() as i64))
        .collect()
}

/// Inverse of a square integer matrix.
pub(crate) fn inverse(rows: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = rows.len();
    let mut m: Vec<Vec<Q>> = to_q(rows)
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut m);
    if pivots.len() != n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Scales a rational vector to the primitive integer vector on its ray.
pub(crate) fn primitive(v: &[Q]) -> Vec<i64> {
    let l = v.iter().fold(1i128, |acc, q| acc.lcm(q.denom()));
    let ints: Vec<i128> = v.iter().map(|q| (q * l).to_integer()).collect();
    primitive_int(&ints)
}

pub(crate) fn primitive_int(v: &[i128]) -> Vec<i64> {
    let g = v.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g == 0 {
        return v.iter().map(|&x| x as i64).collect();
    }
    v.iter().map(|x| (x / g.abs()) as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn determinant_and_rank() {
        let m = vec![vec![2, 1], vec![1, 1]];
        assert_eq!(det(&m), 1);
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn solving() {
        let cols = vec![vec![1, 0, 0], vec![1, 1, 0]];
        assert_eq!(solve_integral(&cols, &[3, 2, 0]), Some(vec![1, 2]));
        assert_eq!(solve_integral(&cols, &[3, 2, 1]), None);
        let cols = vec![vec![2]];
        assert_eq!(solve_integral(&cols, &[3]), None);
    }

    #[test]
    fn inverting() {
        let inv = inverse(&[vec![2, 1], vec![1, 1]]).unwrap();
        let want = [[1, -1], [-1, 2]];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(inv[i][j], Q::from_integer(want[i][j]));
            }
        }
        assert!(inverse(&[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn primitive_vectors() {
        let v = [Q::new(1, 2), Q::new(-3, 4)];
        assert_eq!(primitive(&v), vec![2, -3]);
        assert_eq!(primitive_int(&[0, 0]), vec![0, 0]);
    }
}
