//! Finite abelian groups `Z/n_1 x ... x Z/n_r` with a positional split
//! `G~ = G + T`, their elements and characters.
//!
//! Elements and characters share the coefficient representation. A character
//! with coefficients `c` sends the generator `g_j` to `exp(2 pi i c_j / n_j)`,
//! so the pairing of `c` with an element `x` is `sum_j c_j x_j / n_j` in `Q/Z`.
//! All iteration is in lexicographic order of coefficients.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    orders: Vec<u32>,
    g_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coeffs: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    coeffs: Vec<u32>,
}

impl GroupElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl Character {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Renders as `[a,b,c]`.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.coeffs)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.coeffs)
    }
}

fn write_bracketed(f: &mut fmt::Formatter<'_>, coeffs: &[u32]) -> fmt::Result {
    f.write_str("[")?;
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str("]")
}

impl FinAbGroup {
    pub fn new(orders: Vec<u32>, g_rank: usize) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(alloc::format!(
                "cyclic factor of order {bad}"
            )));
        }
        if g_rank > orders.len() {
            return Err(Error::InvalidGroup(alloc::format!(
                "split index {g_rank} exceeds {} factors",
                orders.len()
            )));
        }
        Ok(FinAbGroup { orders, g_rank })
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn g_rank(&self) -> usize {
        self.g_rank
    }

    /// Least common multiple of the factor orders (1 for the trivial group).
    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1u32, |acc, &n| acc.lcm(&n))
    }

    pub fn cardinality(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    /// The `G` block as a group of its own (no split).
    pub fn g_part(&self) -> FinAbGroup {
        FinAbGroup {
            orders: self.orders[..self.g_rank].to_vec(),
            g_rank: self.g_rank,
        }
    }

    /// The `T` block as a group of its own (no split).
    pub fn t_part(&self) -> FinAbGroup {
        let orders = self.orders[self.g_rank..].to_vec();
        let g_rank = orders.len();
        FinAbGroup { orders, g_rank }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.orders.len() {
            return Err(Error::LengthMismatch {
                expected: self.orders.len(),
                found: len,
            });
        }
        Ok(())
    }

    fn reduce(&self, coeffs: &[i64]) -> Result<Vec<u32>> {
        self.check_len(coeffs.len())?;
        Ok(coeffs
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u32)
            .collect())
    }

    /// Builds an element, reducing each coordinate modulo its order.
    pub fn element(&self, coeffs: &[i64]) -> Result<GroupElement> {
        Ok(GroupElement {
            coeffs: self.reduce(coeffs)?,
        })
    }

    pub fn character(&self, coeffs: &[i64]) -> Result<Character> {
        Ok(Character {
            coeffs: self.reduce(coeffs)?,
        })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coeffs: alloc::vec![0; self.rank()],
        }
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            coeffs: alloc::vec![0; self.rank()],
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coeffs.len() == self.rank() && x.coeffs.iter().zip(&self.orders).all(|(&c, &n)| c < n)
    }

    /// Position of a coefficient vector in the lexicographic enumeration.
    pub fn index_of(&self, coeffs: &[u32]) -> usize {
        coeffs
            .iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    fn coeffs_at(&self, mut index: usize) -> Vec<u32> {
        let mut out = alloc::vec![0u32; self.rank()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        out
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        GroupElement {
            coeffs: self.coeffs_at(index),
        }
    }

    pub fn character_at(&self, index: usize) -> Character {
        Character {
            coeffs: self.coeffs_at(index),
        }
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.cardinality()).map(move |i| self.element_at(i))
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.cardinality()).map(move |i| self.character_at(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coeffs: add_mod(&a.coeffs, &b.coeffs, &self.orders),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| (n - c) % n)
                .collect(),
        }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| (k * c as i64).rem_euclid(n as i64) as u32)
                .collect(),
        }
    }

    pub fn add_characters(&self, a: &Character, b: &Character) -> Character {
        Character {
            coeffs: add_mod(&a.coeffs, &b.coeffs, &self.orders),
        }
    }

    pub fn neg_character(&self, a: &Character) -> Character {
        Character {
            coeffs: a
                .coeffs
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| (n - c) % n)
                .collect(),
        }
    }

    /// Least `m >= 1` with `m x = 0`.
    pub fn element_order(&self, x: &GroupElement) -> Result<u32> {
        self.check_len(x.coeffs.len())?;
        Ok(order_of(&x.coeffs, &self.orders))
    }

    pub fn character_order(&self, x: &Character) -> Result<u32> {
        self.check_len(x.coeffs.len())?;
        Ok(order_of(&x.coeffs, &self.orders))
    }

    /// The pairing `chi(g)` as a fraction `num / exponent` in `[0, 1)`.
    pub fn pairing(&self, chi: &Character, g: &GroupElement) -> Result<(u64, u64)> {
        self.check_len(chi.coeffs.len())?;
        self.check_len(g.coeffs.len())?;
        let e = self.exponent() as u64;
        let num = chi
            .coeffs
            .iter()
            .zip(&g.coeffs)
            .zip(&self.orders)
            .map(|((&c, &x), &n)| (c as u64 * x as u64 % n as u64) * (e / n as u64))
            .sum::<u64>()
            % e;
        Ok((num, e))
    }

    /// Returns `k` in `[0, ord(g) - 1]` with `chi(g) = exp(2 pi i k / ord(g))`.
    pub fn char_eval(&self, chi: &Character, g: &GroupElement) -> Result<u32> {
        let (num, e) = self.pairing(chi, g)?;
        let n = order_of(&g.coeffs, &self.orders) as u64;
        debug_assert_eq!(num * n % e, 0);
        Ok((num * n / e % n) as u32)
    }

    /// Concatenates a `G*` character and a `T*` character into `G~*`.
    pub fn join_character(&self, g_part: &Character, t_part: &GroupElement) -> Result<Character> {
        if g_part.coeffs.len() != self.g_rank {
            return Err(Error::LengthMismatch {
                expected: self.g_rank,
                found: g_part.coeffs.len(),
            });
        }
        if t_part.coeffs.len() != self.rank() - self.g_rank {
            return Err(Error::LengthMismatch {
                expected: self.rank() - self.g_rank,
                found: t_part.coeffs.len(),
            });
        }
        let mut coeffs = g_part.coeffs.clone();
        coeffs.extend_from_slice(&t_part.coeffs);
        Ok(Character { coeffs })
    }

    /// Projection of an element onto its `G` block.
    pub fn project_g(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            coeffs: x.coeffs[..self.g_rank].to_vec(),
        }
    }
}

fn add_mod(a: &[u32], b: &[u32], orders: &[u32]) -> Vec<u32> {
    a.iter()
        .zip(b)
        .zip(orders)
        .map(|((&x, &y), &n)| (x + y) % n)
        .collect()
}

fn order_of(coeffs: &[u32], orders: &[u32]) -> u32 {
    coeffs
        .iter()
        .zip(orders)
        .fold(1u32, |acc, (&c, &n)| acc.lcm(&(n / c.gcd(&n))))
}

/// Addition and negation tables for a small group, indexed lexicographically.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    group: FinAbGroup,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl CayleyTable {
    pub fn new(group: &FinAbGroup) -> Self {
        let size = group.cardinality();
        let elems: Vec<GroupElement> = group.elements().collect();
        let mut add = Vec::with_capacity(size * size);
        for a in &elems {
            for b in &elems {
                add.push(group.index_of(&group.add(a, b).coeffs) as u32);
            }
        }
        let neg = elems
            .iter()
            .map(|a| group.index_of(&group.neg(a).coeffs) as u32)
            .collect();
        CayleyTable {
            group: group.clone(),
            size,
            add,
            neg,
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn index(&self, x: &GroupElement) -> usize {
        self.group.index_of(&x.coeffs)
    }

    pub fn element(&self, index: usize) -> GroupElement {
        self.group.element_at(index)
    }
}

/// A subset of a finite group, stored as a bitset over lexicographic indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    len: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        ElementSet {
            len,
            words: alloc::vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    /// `{x + t : x in self}`.
    pub fn translate(&self, t: usize, table: &CayleyTable) -> ElementSet {
        let mut out = ElementSet::empty(self.len);
        for x in self.iter() {
            out.insert(table.add(x, t));
        }
        out
    }

    /// `{t - x : x in self}`.
    pub fn reflect_about(&self, t: usize, table: &CayleyTable) -> ElementSet {
        let mut out = ElementSet::empty(self.len);
        for x in self.iter() {
            out.insert(table.sub(t, x));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn kulikov() -> FinAbGroup {
        FinAbGroup::new(vec![3; 5], 2).unwrap()
    }

    #[test]
    fn orders() {
        let g = kulikov();
        assert_eq!(g.element_order(&g.identity()).unwrap(), 1);
        let g1 = g.element(&[1, 0, 0, 0, 0]).unwrap();
        assert_eq!(g.element_order(&g1).unwrap(), 3);
        let z2z4 = FinAbGroup::new(vec![2, 4], 2).unwrap();
        assert_eq!(z2z4.element_order(&z2z4.element(&[1, 2]).unwrap()).unwrap(), 2);
        assert_eq!(z2z4.element_order(&z2z4.element(&[1, 1]).unwrap()).unwrap(), 4);
        assert_eq!(z2z4.exponent(), 4);
    }

    #[test]
    fn order_length_mismatch() {
        let g = kulikov();
        let other = FinAbGroup::new(vec![3, 3], 2).unwrap();
        let x = other.identity();
        assert!(matches!(
            g.element_order(&x),
            Err(Error::LengthMismatch { expected: 5, found: 2 })
        ));
    }

    #[test]
    fn evaluation_against_known_values() {
        let g = kulikov();
        let tau = g.t_part().element(&[1, 0, 2]).unwrap();
        let chi = g
            .join_character(&g.g_part().character(&[1, 0]).unwrap(), &tau)
            .unwrap();
        let psi1 = g.element(&[1, 0, 0, 0, 0]).unwrap();
        assert_eq!(g.char_eval(&chi, &psi1).unwrap(), 1);
        let chi22 = g
            .join_character(&g.g_part().character(&[2, 2]).unwrap(), &tau)
            .unwrap();
        let psi2 = g.element(&[1, 0, 1, 0, 0]).unwrap();
        assert_eq!(g.char_eval(&chi22, &psi2).unwrap(), 0);
        assert_eq!(g.char_eval(&g.trivial_character(), &psi2).unwrap(), 0);
    }

    #[test]
    fn eval_rescales_to_element_order() {
        // (1,1) in Z/2 x Z/4 evaluated by the character (0,1): 1/4.
        let g = FinAbGroup::new(vec![2, 4], 2).unwrap();
        let chi = g.character(&[0, 1]).unwrap();
        assert_eq!(g.char_eval(&chi, &g.element(&[1, 1]).unwrap()).unwrap(), 1);
        // (0,2) has order 2; chi(0,2) = 2/4 = 1/2.
        assert_eq!(g.char_eval(&chi, &g.element(&[0, 2]).unwrap()).unwrap(), 1);
    }

    #[test]
    fn invalid_groups() {
        assert!(FinAbGroup::new(vec![1, 3], 0).is_err());
        assert!(FinAbGroup::new(vec![3, 3], 3).is_err());
    }

    #[test]
    fn lexicographic_indices_round_trip() {
        let g = FinAbGroup::new(vec![2, 3, 4], 1).unwrap();
        for (i, x) in g.elements().enumerate() {
            assert_eq!(g.index_of(x.coeffs()), i);
        }
        let xs: Vec<_> = g.elements().collect();
        let mut sorted = xs.clone();
        sorted.sort();
        assert_eq!(xs, sorted);
    }

    #[test]
    fn display_brackets() {
        let t = FinAbGroup::new(vec![3, 3, 3], 0).unwrap();
        assert_eq!(alloc::format!("{}", t.element(&[1, 0, 2]).unwrap()), "[1,0,2]");
    }

    #[test]
    fn cayley_table_matches_group_ops() {
        let g = FinAbGroup::new(vec![2, 3], 0).unwrap();
        let table = CayleyTable::new(&g);
        for a in 0..6 {
            for b in 0..6 {
                let s = g.add(&g.element_at(a), &g.element_at(b));
                assert_eq!(table.add(a, b), g.index_of(s.coeffs()));
            }
            assert_eq!(table.add(a, table.neg(a)), 0);
        }
    }
}
