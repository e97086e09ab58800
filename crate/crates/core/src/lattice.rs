//! The odd unimodular lattice `Z^{1,n}` with form `diag(1, -1, ..., -1)`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivClass(pub Vec<i64>);

impl DivClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        DivClass(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        DivClass(alloc::vec![0; rank])
    }

    /// The basis vector `e_i`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = alloc::vec![0; rank];
        v[i] = 1;
        DivClass(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> DivClass {
        DivClass(self.0.iter().map(|&c| k * c).collect())
    }

    pub fn add_scaled(&mut self, k: i64, other: &DivClass) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += k * b;
        }
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, rhs: &DivClass) -> DivClass {
        DivClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, rhs: &DivClass) -> DivClass {
        DivClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass(self.0.iter().map(|a| -a).collect())
    }
}

/// Renders as `(a,b,c)`.
impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicLattice {
    canonical: DivClass,
    chi_structure: i64,
}

impl PicLattice {
    pub fn new(canonical: DivClass) -> Result<Self> {
        if canonical.rank() == 0 {
            return Err(Error::Validation("lattice of rank 0".into()));
        }
        Ok(PicLattice {
            canonical,
            chi_structure: 1,
        })
    }

    pub fn rank(&self) -> usize {
        self.canonical.rank()
    }

    pub fn canonical(&self) -> &DivClass {
        &self.canonical
    }

    pub fn chi_structure(&self) -> i64 {
        self.chi_structure
    }

    fn check(&self, a: &DivClass) -> Result<()> {
        if a.rank() != self.rank() {
            return Err(Error::LengthMismatch {
                expected: self.rank(),
                found: a.rank(),
            });
        }
        Ok(())
    }

    pub fn intersect(&self, a: &DivClass, b: &DivClass) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(form(&a.0, &b.0))
    }

    /// Riemann-Roch: `chi(D) = chi(O) + D.(D-K)/2`.
    pub fn euler_char(&self, d: &DivClass) -> Result<i64> {
        self.check(d)?;
        let v = form(&d.0, &(d - &self.canonical).0);
        if v % 2 != 0 {
            return Err(Error::Parity { class: d.0.clone() });
        }
        Ok(self.chi_structure + v / 2)
    }

    pub fn is_root(&self, a: &DivClass) -> bool {
        a.rank() == self.rank() && form(&a.0, &a.0) == -2 && form(&a.0, &self.canonical.0) == 0
    }

    /// All `a` with `a^2 = -2` and `a.K = 0`, sorted.
    pub fn roots(&self) -> Result<Vec<DivClass>> {
        if self.rank() < 2 {
            return Ok(Vec::new());
        }
        self.classes_with(-2, 0)
    }

    /// `r_a(L) = L + (L.a) a`.
    pub fn reflect(&self, root: &DivClass, l: &DivClass) -> Result<DivClass> {
        self.check(l)?;
        if !self.is_root(root) {
            return Err(Error::NotARoot {
                class: root.0.clone(),
            });
        }
        let mut out = l.clone();
        out.add_scaled(form(&l.0, &root.0), root);
        Ok(out)
    }

    /// All classes `x` with `x^2 = square` and `x.K = degree`, sorted.
    ///
    /// Requires `K = (k0, c, ..., c)` with `k0^2 > n c^2`, which makes the set
    /// finite: Cauchy-Schwarz on the last `n` coordinates bounds `x_0`.
    pub fn classes_with(&self, square: i64, degree: i64) -> Result<Vec<DivClass>> {
        let k = &self.canonical.0;
        let n = k.len() - 1;
        let k0 = k[0];
        let c = if n == 0 { 1 } else { -k[1] };
        if k[1..].iter().any(|&x| x != -c) || c == 0 || k0 * k0 <= (n as i64) * c * c {
            return Err(Error::Validation(alloc::format!(
                "cannot bound classes for canonical {}",
                self.canonical
            )));
        }
        // x.K = k0 x0 + c sum(x_i) = degree, sum(x_i^2) = x0^2 - square.
        let lead = k0 * k0 - (n as i64) * c * c;
        let q = |x0: i64| -> i64 {
            let s = k0 * x0 - degree;
            s * s - (n as i64) * c * c * (x0 * x0 - square)
        };
        let vertex = (k0 * degree).div_euclid(lead);
        // The real minimum of q lies in [vertex, vertex + 1].
        let mut lo = vertex;
        while q(lo - 1) <= 0 {
            lo -= 1;
        }
        let mut hi = vertex + 1;
        while q(hi + 1) <= 0 {
            hi += 1;
        }
        let mut out = Vec::new();
        for x0 in lo..=hi {
            if q(x0) <= 0 {
                let rest = x0 * x0 - square;
                let num = degree - k0 * x0;
                if rest >= 0 && num % c == 0 {
                    let sum = num / c;
                    let mut buf = alloc::vec![0i64; n];
                    fixed_sum_squares(&mut buf, 0, sum, rest, &mut |tail| {
                        let mut v = Vec::with_capacity(n + 1);
                        v.push(x0);
                        v.extend_from_slice(tail);
                        out.push(DivClass(v));
                    });
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// `a_0 b_0 - sum_{i >= 1} a_i b_i`.
#[inline]
pub(crate) fn form(a: &[i64], b: &[i64]) -> i64 {
    let mut s = a[0] * b[0];
    for i in 1..a.len() {
        s -= a[i] * b[i];
    }
    s
}

fn isqrt(v: i64) -> i64 {
    let mut r = 0i64;
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// Visits every vector filling `buf[pos..]` with the given sum and sum of squares.
fn fixed_sum_squares(buf: &mut [i64], pos: usize, sum: i64, squares: i64, emit: &mut dyn FnMut(&[i64])) {
    let left = (buf.len() - pos) as i64;
    if left == 0 {
        if sum == 0 && squares == 0 {
            emit(buf);
        }
        return;
    }
    // Remaining entries need sum^2 <= left * squares.
    if sum * sum > left * squares {
        return;
    }
    let b = isqrt(squares);
    for v in -b..=b {
        buf[pos] = v;
        fixed_sum_squares(buf, pos + 1, sum - v, squares - v * v, emit);
    }
    buf[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn dp6() -> PicLattice {
        PicLattice::new(DivClass(vec![-3, 1, 1, 1])).unwrap()
    }

    fn brute(lat: &PicLattice, square: i64, degree: i64, bound: i64) -> Vec<DivClass> {
        let r = lat.rank();
        let mut out = Vec::new();
        let mut v = vec![-bound; r];
        loop {
            let d = DivClass(v.clone());
            if lat.intersect(&d, &d).unwrap() == square
                && lat.intersect(&d, lat.canonical()).unwrap() == degree
            {
                out.push(d);
            }
            let mut i = 0;
            loop {
                if i == r {
                    out.sort();
                    return out;
                }
                v[i] += 1;
                if v[i] <= bound {
                    break;
                }
                v[i] = -bound;
                i += 1;
            }
        }
    }

    #[test]
    fn form_values() {
        let lat = dp6();
        let e0 = DivClass::basis(4, 0);
        let e1 = DivClass::basis(4, 1);
        assert_eq!(lat.intersect(&e0, &e0).unwrap(), 1);
        assert_eq!(lat.intersect(&e1, &e1).unwrap(), -1);
        let k = lat.canonical().clone();
        assert_eq!(lat.intersect(&k, &k).unwrap(), 6);
        let a = DivClass(vec![1, -1, 0, 0]);
        assert_eq!(lat.intersect(&a, &DivClass(vec![3, -1, -1, -1])).unwrap(), 2);
        assert!(lat.intersect(&a, &DivClass(vec![1])).is_err());
    }

    #[test]
    fn riemann_roch() {
        let lat = dp6();
        assert_eq!(lat.euler_char(&DivClass::zero(4)).unwrap(), 1);
        let x = PicLattice::new(DivClass(vec![3, -1, -1, -1])).unwrap();
        assert_eq!(x.euler_char(&DivClass(vec![6, -2, -2, -2])).unwrap(), 7);
        assert_eq!(x.euler_char(&DivClass(vec![1, -1, 0, 0])).unwrap(), 0);
    }

    #[test]
    fn roots_of_dp6() {
        let lat = dp6();
        let roots = lat.roots().unwrap();
        assert_eq!(roots.len(), 8);
        assert!(roots.contains(&DivClass(vec![0, 1, -1, 0])));
        assert_eq!(roots, brute(&lat, -2, 0, 4));
        for r in &roots {
            assert!(roots.contains(&-r));
        }
    }

    #[test]
    fn exceptional_classes_match_brute_force() {
        let lat = dp6();
        assert_eq!(lat.classes_with(-1, -1).unwrap().len(), 6);
        assert_eq!(lat.classes_with(-1, -1).unwrap(), brute(&lat, -1, -1, 4));
        let dp4 = PicLattice::new(DivClass(vec![-3, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(dp4.classes_with(-1, -1).unwrap().len(), 16);
        assert_eq!(dp4.roots().unwrap().len(), 40);
        assert_eq!(dp4.classes_with(0, -2).unwrap(), brute(&dp4, 0, -2, 3));
    }

    #[test]
    fn rank_one() {
        let p2 = PicLattice::new(DivClass(vec![-3])).unwrap();
        assert!(p2.roots().unwrap().is_empty());
        assert!(p2.classes_with(-1, -1).unwrap().is_empty());
        assert_eq!(p2.classes_with(1, -3).unwrap(), vec![DivClass(vec![1])]);
    }

    #[test]
    fn reflections() {
        let lat = dp6();
        let a = DivClass(vec![0, 1, -1, 0]);
        let e1 = DivClass::basis(4, 1);
        assert_eq!(lat.reflect(&a, &e1).unwrap(), DivClass::basis(4, 2));
        for r in lat.roots().unwrap() {
            assert_eq!(&lat.reflect(&r, lat.canonical()).unwrap(), lat.canonical());
            let l = DivClass(vec![2, -1, 3, 0]);
            let once = lat.reflect(&r, &l).unwrap();
            assert_eq!(lat.reflect(&r, &once).unwrap(), l);
        }
        assert!(matches!(lat.reflect(&e1, &e1), Err(Error::NotARoot { .. })));
    }
}
