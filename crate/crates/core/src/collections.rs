//! Exceptional collections of line bundles on `X`.
//!
//! A numerical collection `Lambda_0, ..., Lambda_n` on `Y` lifts to
//! `L_i = -Lambda_i` on `X`, and the twisted sequence `L_i (x) tau_i` with
//! `tau_0 = 0` is exceptional exactly when every backwards difference is
//! acyclic. The search below enumerates all such twists.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::cohom::{acyclic_set_indices, ext_groups, AcyclicMethod, ExtTable};
use crate::cover::LineBundleX;
use crate::effective::TorsionImages;
use crate::error::{Error, Result};
use crate::groups::{CayleyTable, ElementSet, GroupElement};
use crate::lattice::{form, DivClass, PicLattice};
use crate::surface::Surface;

/// `L_i = -Lambda_i` under the isometry `Pic Y -> Pic X / Tors` (identity on coordinates).
pub fn lift_numerical(lambda: &[DivClass]) -> Vec<DivClass> {
    lambda.iter().map(|l| -l).collect()
}

/// True when `chi(L_i - L_j) = 0` for all `i < j`, i.e. `L_j^{-1} (x) L_i` is numerically acyclic.
pub fn is_numerically_exceptional(lat_x: &PicLattice, l: &[DivClass]) -> Result<bool> {
    for j in 1..l.len() {
        for i in 0..j {
            if lat_x.euler_char(&(&l[i] - &l[j]))? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The acyclic sets needed to twist a numerical collection, ready for search.
#[derive(Clone, Debug)]
pub struct TwistSearch {
    len: usize,
    table: CayleyTable,
    // acyclic[(i, j)] = A(L_i - L_j) for i < j.
    acyclic: BTreeMap<(usize, usize), ElementSet>,
}

impl TwistSearch {
    pub fn new(s: &Surface, l: &[DivClass], method: AcyclicMethod) -> Result<Self> {
        let x = s.x()?;
        let mut memo = TorsionImages::new();
        let mut acyclic = BTreeMap::new();
        for j in 1..l.len() {
            for i in 0..j {
                let d = &l[i] - &l[j];
                acyclic.insert((i, j), acyclic_set_indices(s, &d, method, &mut memo)?);
            }
        }
        Ok(TwistSearch {
            len: l.len(),
            table: x.semigroup().torsion_table().clone(),
            acyclic,
        })
    }

    /// Candidates for `tau_1`: those with `-tau_1` in `A(L_0 - L_1)`.
    pub fn first_candidates(&self) -> Vec<usize> {
        if self.len < 2 {
            return Vec::new();
        }
        (0..self.table.size())
            .filter(|&t| self.acyclic[&(0, 1)].contains(self.table.neg(t)))
            .collect()
    }

    /// All solutions `(tau_1, ..., tau_n)` with the given `tau_1`, as index tuples.
    pub fn search_from(&self, first: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if self.len < 2 {
            return out;
        }
        let mut taus = alloc::vec![first];
        if self.acyclic[&(0, 1)].contains(self.table.neg(first)) {
            self.extend(&mut taus, &mut out);
        }
        out
    }

    fn extend(&self, taus: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let j = taus.len() + 1;
        if j == self.len {
            out.push(taus.clone());
            return;
        }
        for t in 0..self.table.size() {
            if !self.acyclic[&(0, j)].contains(self.table.neg(t)) {
                continue;
            }
            if (1..j).all(|i| self.acyclic[&(i, j)].contains(self.table.sub(taus[i - 1], t))) {
                taus.push(t);
                self.extend(taus, out);
                taus.pop();
            }
        }
    }

    /// Every solution, in lexicographic order of the index tuples.
    pub fn all(&self) -> Vec<Vec<usize>> {
        if self.len < 2 {
            return alloc::vec![Vec::new()];
        }
        (0..self.table.size()).flat_map(|t| self.search_from(t)).collect()
    }

    pub fn to_elements(&self, taus: &[usize]) -> Vec<GroupElement> {
        taus.iter().map(|&t| self.table.element(t)).collect()
    }
}

/// All twists `(tau_1, ..., tau_n)` making `(L_0, L_1 tau_1, ..., L_n tau_n)` exceptional.
pub fn enumerate_twists(s: &Surface, l: &[DivClass]) -> Result<Vec<Vec<GroupElement>>> {
    let search = TwistSearch::new(s, l, AcyclicMethod::Semigroup)?;
    Ok(search.all().iter().map(|t| search.to_elements(t)).collect())
}

/// The collection `E_0 = L_0, E_i = L_i (x) tau_i`, normalised so that `E_0 = O_X`.
pub fn twisted_collection(s: &Surface, l: &[DivClass], taus: &[GroupElement]) -> Result<Vec<LineBundleX>> {
    if taus.len() + 1 != l.len() {
        return Err(Error::LengthMismatch {
            expected: l.len().saturating_sub(1),
            found: taus.len(),
        });
    }
    let mut out = Vec::with_capacity(l.len());
    out.push(LineBundleX::new(l[0].clone(), s.torsion_group().identity()));
    for (li, t) in l[1..].iter().zip(taus) {
        out.push(LineBundleX::new(li.clone(), t.clone()));
    }
    Ok(normalise(s, &out))
}

/// Twists the whole collection by `E_0^{-1}`.
pub fn normalise(s: &Surface, e: &[LineBundleX]) -> Vec<LineBundleX> {
    match e.first() {
        None => Vec::new(),
        Some(e0) => {
            let e0 = e0.clone();
            e.iter().map(|b| s.sub(b, &e0)).collect()
        }
    }
}

/// Direct check of the definition: `Ext^*(E_j, E_i) = 0` for `j > i` and
/// `Ext^*(E_i, E_i) = C` (automatic for line bundles with `p_g = q = 0`).
pub fn is_exceptional(s: &Surface, e: &[LineBundleX]) -> Result<bool> {
    for j in 0..e.len() {
        if ext_groups(s, &e[j], &e[j])? != crate::cohom::CohomDims::new(1, 0, 0) {
            return Ok(false);
        }
        for i in 0..j {
            if !ext_groups(s, &e[j], &e[i])?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DihedralOp {
    /// `(E_1, ..., E_n, E_0(-K_X))`, renormalised.
    Rotate,
    /// `(E_n^{-1}, ..., E_0^{-1})`, renormalised.
    Invert,
}

pub fn dihedral_act(s: &Surface, e: &[LineBundleX], op: DihedralOp) -> Result<Vec<LineBundleX>> {
    if e.is_empty() {
        return Ok(Vec::new());
    }
    let out: Vec<LineBundleX> = match op {
        DihedralOp::Rotate => {
            let k = s.x()?.canonical().clone();
            let mut v: Vec<LineBundleX> = e[1..].to_vec();
            v.push(s.sub(&e[0], &k));
            v
        }
        DihedralOp::Invert => e.iter().rev().map(|b| s.neg(b)).collect(),
    };
    Ok(normalise(s, &out))
}

/// Closure of a numerical collection under the reflections in all roots of `Pic Y`.
pub fn weyl_orbit(lat: &PicLattice, lambda: &[DivClass], cap: usize) -> Result<Vec<Vec<DivClass>>> {
    let roots = lat.roots()?;
    let mut seen: BTreeSet<Vec<DivClass>> = BTreeSet::new();
    seen.insert(lambda.to_vec());
    let mut frontier = alloc::vec![lambda.to_vec()];
    while let Some(c) = frontier.pop() {
        for r in &roots {
            let next = c
                .iter()
                .map(|x| lat.reflect(r, x))
                .collect::<Result<Vec<_>>>()?;
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::OrbitCap { cap });
                }
                frontier.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// Result of the pseudoheight computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pseudoheight {
    /// `None` when no chain has finite degree.
    pub value: Option<i64>,
    /// Every chain `a_0 < ... < a_p` attaining the minimum.
    pub chains: Vec<Vec<usize>>,
    /// `E_i . K_X >= E_j . K_X` for `i < j` over the extended sequence, which forces `ph >= 3`.
    pub lower_bound_hypothesis: bool,
    /// The height, known only when the pseudoheight is 4.
    pub height: Option<i64>,
}

/// `e(F, F') = min { k : Ext^k(F, F') != 0 }`, `None` if all vanish.
pub fn ext_degree(table: &ExtTable, i: usize, j: usize) -> Option<i64> {
    table.get(i, j).min_degree().map(|k| k as i64)
}

pub fn pseudoheight(table: &ExtTable, lat_x: &PicLattice, extended: &[LineBundleX]) -> Result<Pseudoheight> {
    let n = table.len();
    let mut best: Option<i64> = None;
    let mut chains = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let chain: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut total = 0i64;
        let mut finite = true;
        for w in chain.windows(2) {
            match ext_degree(table, w[0], w[1]) {
                Some(e) => total += e,
                None => finite = false,
            }
        }
        let last = *chain.last().expect("nonempty chain");
        match ext_degree(table, last, n + chain[0]) {
            Some(e) => total += e,
            None => finite = false,
        }
        if !finite {
            continue;
        }
        let value = total - (chain.len() as i64 - 1) + 2;
        match best {
            Some(b) if value > b => {}
            Some(b) if value == b => chains.push(chain),
            _ => {
                best = Some(value);
                chains = alloc::vec![chain];
            }
        }
    }
    chains.sort();
    let k = lat_x.canonical();
    let degrees = extended
        .iter()
        .map(|e| {
            lat_x.intersect(&e.multidegree, k)?;
            Ok(form(&e.multidegree.0, &k.0))
        })
        .collect::<Result<Vec<i64>>>()?;
    let lower_bound_hypothesis = degrees.windows(2).all(|w| w[0] >= w[1]);
    Ok(Pseudoheight {
        value: best,
        chains,
        lower_bound_hypothesis,
        height: (best == Some(4)).then_some(4),
    })
}

/// Outcome of the degree argument for formality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formality {
    /// The degree argument applies: every higher product vanishes.
    pub formal: bool,
    /// Pairs `(i, j)`, `i != j`, with `Hom(E_i, E_j) != 0`.
    pub hom_witnesses: Vec<(usize, usize)>,
    /// Composable pairs of degree-one arrows `i -> j -> k`.
    pub composable: Vec<((usize, usize), (usize, usize))>,
}

/// Sufficient check: no off-diagonal `Hom` and no two composable `Ext^1`.
/// A `false` result means the argument does not apply, not that the algebra is non-formal.
pub fn formality_check(table: &ExtTable) -> Formality {
    let n = table.len();
    let mut out = Formality::default();
    for i in 0..n {
        for j in 0..n {
            if i != j && table.get(i, j).h0 > 0 {
                out.hom_witnesses.push((i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || table.get(i, j).h1 == 0 {
                continue;
            }
            for k in 0..n {
                if k != j && table.get(j, k).h1 > 0 {
                    out.composable.push(((i, j), (j, k)));
                }
            }
        }
    }
    out.formal = out.hom_witnesses.is_empty() && out.composable.is_empty();
    out
}
