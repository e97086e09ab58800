//! The semigroup of effective divisors on `X`.
//!
//! Every effective line bundle is a sum of generators (reduced pullbacks of
//! branch components and pulled-back unramified curves). The graded piece in
//! multidegree `d` is enumerated using an ample functional, which is positive
//! on every generator; its image under the torsion homomorphism `t` decides
//! effectivity.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cone;
use crate::cover::{CoverData, LineBundleX};
use crate::delpezzo::SurfaceY;
use crate::error::{Error, Result};
use crate::groups::{CayleyTable, ElementSet, FinAbGroup, GroupElement};
use crate::lattice::{form, DivClass};

/// How to decide effectivity of a line bundle on `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EffectivityMode {
    /// Membership of the torsion twist in the torsion image of the multidegree.
    Semigroup,
    /// `h^0 > 0` computed through the pushforward to `Y`.
    Pushforward,
    /// Both, failing on disagreement.
    Both,
}

#[derive(Clone, Debug)]
pub struct EffSemigroup {
    generators: Vec<(String, LineBundleX)>,
    ample: DivClass,
    table: CayleyTable,
    degrees: Vec<i64>,
    twists: Vec<usize>,
}

/// Memo of torsion images keyed by multidegree.
#[derive(Clone, Debug, Default)]
pub struct TorsionImages {
    memo: BTreeMap<Vec<i64>, ElementSet>,
}

impl TorsionImages {
    pub fn new() -> Self {
        Self::default()
    }
}

impl EffSemigroup {
    pub fn new(
        generators: Vec<(String, LineBundleX)>,
        ample: DivClass,
        torsion: &FinAbGroup,
    ) -> Result<Self> {
        let mut degrees = Vec::with_capacity(generators.len());
        let mut twists = Vec::with_capacity(generators.len());
        for (name, g) in &generators {
            if g.multidegree.rank() != ample.rank() {
                return Err(Error::LengthMismatch {
                    expected: ample.rank(),
                    found: g.multidegree.rank(),
                });
            }
            if !torsion.contains(&g.torsion) {
                return Err(Error::Validation(alloc::format!(
                    "twist of generator {name} is not an element of T"
                )));
            }
            let a = form(&ample.0, &g.multidegree.0);
            if a < 1 {
                return Err(Error::Validation(alloc::format!(
                    "ample class {ample} is not positive on generator {name}"
                )));
            }
            degrees.push(a);
            twists.push(torsion.index_of(g.torsion.coeffs()));
        }
        Ok(EffSemigroup {
            generators,
            ample,
            table: CayleyTable::new(torsion),
            degrees,
            twists,
        })
    }

    pub fn generators(&self) -> &[(String, LineBundleX)] {
        &self.generators
    }

    pub fn ample(&self) -> &DivClass {
        &self.ample
    }

    pub fn torsion_table(&self) -> &CayleyTable {
        &self.table
    }

    /// All coefficient vectors `c >= 0` with `sum c_i gen_i = d`, lexicographically sorted.
    pub fn decompositions(&self, d: &DivClass) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut coeffs = alloc::vec![0u64; self.generators.len()];
        self.decompose_from(0, d.clone(), &mut coeffs, &mut out);
        out.sort();
        out
    }

    fn decompose_from(&self, i: usize, rest: DivClass, coeffs: &mut [u64], out: &mut Vec<Vec<u64>>) {
        if rest.is_zero() {
            out.push(coeffs.to_vec());
            return;
        }
        if i == self.generators.len() {
            return;
        }
        let budget = form(&self.ample.0, &rest.0);
        if budget <= 0 {
            return;
        }
        let g = &self.generators[i].1.multidegree;
        let mut r = rest;
        let mut c = 0u64;
        loop {
            coeffs[i] = c;
            self.decompose_from(i + 1, r.clone(), coeffs, out);
            c += 1;
            if c as i64 * self.degrees[i] > budget {
                break;
            }
            r.add_scaled(-1, g);
        }
        coeffs[i] = 0;
    }

    /// `t(E_d)` as a set of indices into `T`.
    pub fn torsion_image_set(&self, d: &DivClass, memo: &mut TorsionImages) -> ElementSet {
        if let Some(s) = memo.memo.get(&d.0) {
            return s.clone();
        }
        let size = self.table.size();
        let out = if d.is_zero() {
            let mut s = ElementSet::empty(size);
            s.insert(0);
            s
        } else if form(&self.ample.0, &d.0) <= 0 {
            ElementSet::empty(size)
        } else {
            let mut s = ElementSet::empty(size);
            for (i, (_, g)) in self.generators.iter().enumerate() {
                let sub = self.torsion_image_set(&(d - &g.multidegree), memo);
                s.union_with(&sub.translate(self.twists[i], &self.table));
            }
            s
        };
        memo.memo.insert(d.0.clone(), out.clone());
        out
    }

    /// `t(E_d)`, sorted.
    pub fn torsion_image(&self, d: &DivClass) -> Vec<GroupElement> {
        let set = self.torsion_image_set(d, &mut TorsionImages::new());
        set.iter().map(|i| self.table.element(i)).collect()
    }

    pub fn contains(&self, l: &LineBundleX, memo: &mut TorsionImages) -> bool {
        self.torsion_image_set(&l.multidegree, memo)
            .contains(self.table.index(&l.torsion))
    }

    /// Primitive extreme rays of `P = {D : D.g >= 0 for every generator g}`.
    pub fn cone_extreme_rays(&self) -> Result<Vec<DivClass>> {
        // D.g = sum_j D_j (J g)_j with J = diag(1, -1, ..., -1).
        let normals: Vec<Vec<i64>> = self
            .generators
            .iter()
            .map(|(_, g)| {
                g.multidegree
                    .0
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| if j == 0 { x } else { -x })
                    .collect()
            })
            .collect();
        let rays = cone::extreme_rays(&normals)?;
        Ok(rays.into_iter().map(DivClass).collect())
    }
}

/// Decides whether `L` has a section.
pub fn is_effective_x(
    cov: &CoverData,
    y: &SurfaceY,
    s: &EffSemigroup,
    l: &LineBundleX,
    mode: EffectivityMode,
    memo: &mut TorsionImages,
) -> Result<bool> {
    cov.check_torsion(&l.torsion)?;
    let by_pushforward = || -> Result<bool> {
        let expr = cov.expr_for_multidegree(&l.multidegree)?;
        let t = s.table.index(&l.torsion);
        Ok(cov.h0_dense(y, &expr, s.table.neg(t))? > 0)
    };
    match mode {
        EffectivityMode::Semigroup => Ok(s.contains(l, memo)),
        EffectivityMode::Pushforward => by_pushforward(),
        EffectivityMode::Both => {
            let a = s.contains(l, memo);
            let b = by_pushforward()?;
            if a != b {
                return Err(Error::MethodDisagreement(alloc::format!(
                    "effectivity of {l}: semigroup says {a}, pushforward says {b}"
                )));
            }
            Ok(a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn toy() -> EffSemigroup {
        // Two generators e0 and e0 - e1 on Z^{1,1}, twisted by 0 and 1 in Z/2.
        let t = FinAbGroup::new(vec![2], 1).unwrap();
        let gens = vec![
            ("H".into(), LineBundleX::new(DivClass(vec![1, 0]), t.element(&[0]).unwrap())),
            ("F".into(), LineBundleX::new(DivClass(vec![1, -1]), t.element(&[1]).unwrap())),
        ];
        EffSemigroup::new(gens, DivClass(vec![2, -1]), &t).unwrap()
    }

    #[test]
    fn decompositions_small() {
        let s = toy();
        assert_eq!(s.decompositions(&DivClass(vec![0, 0])), vec![vec![0, 0]]);
        assert_eq!(s.decompositions(&DivClass(vec![2, -1])), vec![vec![1, 1]]);
        assert!(s.decompositions(&DivClass(vec![0, 1])).is_empty());
    }

    #[test]
    fn torsion_images() {
        let s = toy();
        assert_eq!(s.torsion_image(&DivClass(vec![0, 0])).len(), 1);
        let img = s.torsion_image(&DivClass(vec![2, -1]));
        assert_eq!(img.len(), 1);
        assert_eq!(img[0].coeffs(), &[1]);
        assert!(s.torsion_image(&DivClass(vec![-1, 0])).is_empty());
    }

    #[test]
    fn cone_rays() {
        let s = toy();
        // D.(1,0) >= 0 and D.(1,-1) >= 0: D0 >= 0, D0 + D1 >= 0.
        let rays = s.cone_extreme_rays().unwrap();
        assert_eq!(rays, vec![DivClass(vec![0, 1]), DivClass(vec![1, -1])]);
    }
}
