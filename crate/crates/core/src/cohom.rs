//! Cohomology of line bundles on `X`, acyclic sets, and Ext between line bundles.

use alloc::vec::Vec;
use core::ops::Add;

use crate::cover::LineBundleX;
use crate::effective::TorsionImages;
use crate::error::{Error, Result};
use crate::groups::{ElementSet, GroupElement};
use crate::lattice::DivClass;
use crate::surface::Surface;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CohomDims {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
}

impl CohomDims {
    pub const ZERO: CohomDims = CohomDims { h0: 0, h1: 0, h2: 0 };

    pub fn new(h0: u64, h1: u64, h2: u64) -> Self {
        CohomDims { h0, h1, h2 }
    }

    pub fn euler(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn get(&self, k: usize) -> u64 {
        match k {
            0 => self.h0,
            1 => self.h1,
            2 => self.h2,
            _ => 0,
        }
    }

    /// Least `k` with a nonzero group, if any.
    pub fn min_degree(&self) -> Option<usize> {
        (0..3).find(|&k| self.get(k) > 0)
    }

    pub fn reversed(&self) -> Self {
        CohomDims::new(self.h2, self.h1, self.h0)
    }
}

impl Add for CohomDims {
    type Output = CohomDims;
    fn add(self, o: CohomDims) -> CohomDims {
        CohomDims::new(self.h0 + o.h0, self.h1 + o.h1, self.h2 + o.h2)
    }
}

/// Method for computing acyclic sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AcyclicMethod {
    /// Exclude twists with sections, and twists whose Serre dual has sections,
    /// both read off the torsion images of the effective semigroup.
    Semigroup,
    /// Compute the cohomology of every twist.
    Pushforward,
}

/// `h^p(L) = sum_chi h^p(M_chi)`.
pub fn cohomology_x(s: &Surface, l: &LineBundleX) -> Result<CohomDims> {
    let mut total = CohomDims::ZERO;
    for m in s.pushforward_bundle(l)? {
        let (h0, h1, h2) = s.y().cohomology(&m)?;
        total = total + CohomDims::new(h0, h1, h2);
    }
    Ok(total)
}

/// `A(d) = { tau in T : O_X(d) (x) tau is acyclic }` as indices into `T`.
pub fn acyclic_set_indices(
    s: &Surface,
    d: &DivClass,
    method: AcyclicMethod,
    memo: &mut TorsionImages,
) -> Result<ElementSet> {
    let x = s.x()?;
    let table = x.semigroup().torsion_table();
    let size = table.size();
    if x.lattice().euler_char(d)? != 0 {
        return Ok(ElementSet::empty(size));
    }
    match method {
        AcyclicMethod::Semigroup => {
            let k = x.canonical();
            let kappa = table.index(&k.torsion);
            let mut out = ElementSet::full(size);
            out.difference_with(&x.semigroup().torsion_image_set(d, memo));
            // h^2(d + tau) = h^0(K - d - tau): excluded when kappa - tau is a twist of K - d.
            let dual = x
                .semigroup()
                .torsion_image_set(&(&k.multidegree - d), memo);
            out.difference_with(&dual.reflect_about(kappa, table));
            Ok(out)
        }
        AcyclicMethod::Pushforward => {
            let mut out = ElementSet::empty(size);
            for t in 0..size {
                let l = LineBundleX::new(d.clone(), table.element(t));
                if cohomology_x(s, &l)?.is_zero() {
                    out.insert(t);
                }
            }
            Ok(out)
        }
    }
}

/// `A(d)`, sorted.
pub fn acyclic_set(s: &Surface, d: &DivClass, method: AcyclicMethod) -> Result<Vec<GroupElement>> {
    let set = acyclic_set_indices(s, d, method, &mut TorsionImages::new())?;
    let table = s.torsion_table()?;
    Ok(set.iter().map(|i| table.element(i)).collect())
}

/// Both methods, failing if they disagree.
pub fn acyclic_set_checked(s: &Surface, d: &DivClass) -> Result<Vec<GroupElement>> {
    let a = acyclic_set(s, d, AcyclicMethod::Semigroup)?;
    let b = acyclic_set(s, d, AcyclicMethod::Pushforward)?;
    if a != b {
        return Err(Error::MethodDisagreement(alloc::format!(
            "acyclic set of {d}: {} twists by the semigroup, {} by pushforward",
            a.len(),
            b.len()
        )));
    }
    Ok(a)
}

/// `dim Ext^k(A, B) = h^k(B - A)`.
pub fn ext_groups(s: &Surface, a: &LineBundleX, b: &LineBundleX) -> Result<CohomDims> {
    cohomology_x(s, &s.sub(b, a))
}

/// Ext dimensions among a sequence `E_0, ..., E_{n-1}` extended by
/// `E_{n+i} = E_i (-K_X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    n: usize,
    entries: Vec<CohomDims>,
}

impl ExtTable {
    /// A table from explicit entries over the extended sequence, row by row.
    pub fn from_entries(n: usize, entries: Vec<CohomDims>) -> Result<Self> {
        if entries.len() != 4 * n * n {
            return Err(Error::LengthMismatch {
                expected: 4 * n * n,
                found: entries.len(),
            });
        }
        Ok(ExtTable { n, entries })
    }

    /// Length of the collection (the table covers `2n` objects).
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `Ext^*(E_i, E_j)` for `0 <= i, j < 2n`.
    pub fn get(&self, i: usize, j: usize) -> CohomDims {
        self.entries[i * 2 * self.n + j]
    }

    /// Staircase layout: row `i` lists `Ext^*(E_i, E_{i+j})`
    /// for `j = 0, ..., n - 1`.
    pub fn zigzag(&self) -> Vec<Vec<CohomDims>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, i + j)).collect())
            .collect()
    }
}

/// The sequence extended by its anticanonical twists.
pub fn extend_anticanonically(s: &Surface, e: &[LineBundleX]) -> Result<Vec<LineBundleX>> {
    let k = s.x()?.canonical().clone();
    let mut out = e.to_vec();
    out.extend(e.iter().map(|b| s.sub(b, &k)));
    Ok(out)
}

pub fn ext_table(s: &Surface, e: &[LineBundleX]) -> Result<ExtTable> {
    let full = extend_anticanonically(s, e)?;
    let mut entries = Vec::with_capacity(full.len() * full.len());
    for a in &full {
        for b in &full {
            entries.push(ext_groups(s, a, b)?);
        }
    }
    ExtTable::from_entries(e.len(), entries)
}
