//! A validated surface: the cover, the del Pezzo base, and (when the cover
//! admits the lattice isometry) the derived data on `X`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::cover::{CoverData, DenseExpr, DivisorExprX, LineBundleX};
use crate::delpezzo::SurfaceY;
use crate::effective::EffSemigroup;
use crate::error::{Error, Result};
use crate::groups::{CayleyTable, FinAbGroup, GroupElement};
use crate::lattice::{DivClass, PicLattice};

/// Data on `X` in basis coordinates.
#[derive(Clone, Debug)]
pub struct XData {
    lattice: PicLattice,
    canonical: LineBundleX,
    semigroup: EffSemigroup,
}

impl XData {
    /// `Pic X / Tors` with the canonical multidegree of `X`.
    pub fn lattice(&self) -> &PicLattice {
        &self.lattice
    }

    pub fn canonical(&self) -> &LineBundleX {
        &self.canonical
    }

    pub fn semigroup(&self) -> &EffSemigroup {
        &self.semigroup
    }
}

#[derive(Clone, Debug)]
pub struct Surface {
    name: String,
    cover: CoverData,
    y: SurfaceY,
    x: Option<XData>,
}

impl Surface {
    /// A surface known only as a cover (no isometry `Pic Y -> Pic X / Tors`).
    pub fn cover_only(name: &str, cover: CoverData, y: SurfaceY) -> Self {
        Surface {
            name: name.into(),
            cover,
            y,
            x: None,
        }
    }

    /// Builds the data on `X`: the canonical bundle, and the coordinates of every
    /// generator of the effective semigroup.
    pub fn new(
        name: &str,
        cover: CoverData,
        y: SurfaceY,
        generators: &[(String, DivisorExprX)],
    ) -> Result<Self> {
        if !cover.has_isometry() {
            return Err(Error::NoLatticeIsometry);
        }
        if y.lattice() != cover.lattice_y() {
            return Err(Error::Validation("cover and base disagree on Pic Y".into()));
        }
        let canonical = cover.canonical_x(&y)?;
        let lattice = PicLattice::new(canonical.multidegree.clone())?;
        let gens = generators
            .iter()
            .map(|(n, e)| Ok((n.clone(), cover.coordinates_of(&y, e)?)))
            .collect::<Result<Vec<_>>>()?;
        let ample = cover
            .multidegree_of_y_class(y.ample())
            .ok_or(Error::NotInLattice {
                class: y.ample().0.clone(),
            })?;
        let semigroup = EffSemigroup::new(gens, ample, cover.torsion_group())?;
        Ok(Surface {
            name: name.into(),
            cover,
            y,
            x: Some(XData {
                lattice,
                canonical,
                semigroup,
            }),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cover(&self) -> &CoverData {
        &self.cover
    }

    pub fn y(&self) -> &SurfaceY {
        &self.y
    }

    pub fn x(&self) -> Result<&XData> {
        self.x.as_ref().ok_or(Error::NoLatticeIsometry)
    }

    pub fn torsion_group(&self) -> &FinAbGroup {
        self.cover.torsion_group()
    }

    pub fn torsion_table(&self) -> Result<&CayleyTable> {
        Ok(self.x()?.semigroup.torsion_table())
    }

    pub fn rank(&self) -> usize {
        self.cover.lattice_y().rank()
    }

    /// The trivial bundle `O_X`.
    pub fn trivial_bundle(&self) -> LineBundleX {
        LineBundleX::new(DivClass::zero(self.rank()), self.torsion_group().identity())
    }

    pub fn bundle(&self, multidegree: &[i64], torsion: &[i64]) -> Result<LineBundleX> {
        if multidegree.len() != self.rank() {
            return Err(Error::LengthMismatch {
                expected: self.rank(),
                found: multidegree.len(),
            });
        }
        Ok(LineBundleX::new(
            DivClass(multidegree.to_vec()),
            self.torsion_group().element(torsion)?,
        ))
    }

    pub fn add(&self, a: &LineBundleX, b: &LineBundleX) -> LineBundleX {
        LineBundleX::new(
            &a.multidegree + &b.multidegree,
            self.torsion_group().add(&a.torsion, &b.torsion),
        )
    }

    pub fn sub(&self, a: &LineBundleX, b: &LineBundleX) -> LineBundleX {
        LineBundleX::new(
            &a.multidegree - &b.multidegree,
            self.torsion_group().sub(&a.torsion, &b.torsion),
        )
    }

    pub fn neg(&self, a: &LineBundleX) -> LineBundleX {
        LineBundleX::new(-&a.multidegree, self.torsion_group().neg(&a.torsion))
    }

    /// Divisor expression and twist index with `phi_* O_X(expr - tau) = phi_* L`.
    pub fn pushforward_args(&self, l: &LineBundleX) -> Result<(DenseExpr, usize)> {
        self.cover.check_torsion(&l.torsion)?;
        let expr = self.cover.expr_for_multidegree(&l.multidegree)?;
        let neg = self.torsion_group().index_of(self.torsion_group().neg(&l.torsion).coeffs());
        Ok((expr, neg))
    }

    /// `phi_* L` as one class on `Y` per character of `G`.
    pub fn pushforward_bundle(&self, l: &LineBundleX) -> Result<Vec<DivClass>> {
        let (expr, tau) = self.pushforward_args(l)?;
        Ok(self.cover.pushforward_dense(&expr, tau))
    }

    /// Elements of `T` in lexicographic order.
    pub fn torsion_elements(&self) -> Vec<GroupElement> {
        self.torsion_group().elements().collect()
    }
}
