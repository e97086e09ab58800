//! Cohomology of divisor classes on a (weak) del Pezzo surface.
//!
//! `h^0` is computed by peeling off negative curves that meet the class
//! negatively until the class is nef or leaves the effective half-space of
//! the ample functional. For nef classes `h^1 = h^2 = 0`, so `h^0 = chi`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{form, DivClass, PicLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceY {
    lattice: PicLattice,
    neg_curves: Vec<DivClass>,
    ample: DivClass,
}

/// The irreducible negative curves of a weak del Pezzo surface whose
/// effective `(-2)`-classes are `effective_roots`.
pub fn negative_curves(lat: &PicLattice, effective_roots: &[DivClass]) -> Result<Vec<DivClass>> {
    for r in effective_roots {
        if !lat.is_root(r) {
            return Err(Error::NotARoot { class: r.0.clone() });
        }
        if effective_roots.contains(&-r) {
            return Err(Error::Validation(alloc::format!(
                "both {r} and its negative are declared effective"
            )));
        }
    }
    let mut out: Vec<DivClass> = effective_roots.to_vec();
    if lat.rank() > 1 {
        for c in lat.classes_with(-1, -1)? {
            if effective_roots.iter().all(|r| form(&c.0, &r.0) >= 0) {
                out.push(c);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

impl SurfaceY {
    pub fn new(lattice: PicLattice, neg_curves: Vec<DivClass>, ample: DivClass) -> Result<Self> {
        if ample.rank() != lattice.rank() || form(&ample.0, &ample.0) <= 0 {
            return Err(Error::Validation(alloc::format!(
                "ample class {ample} has non-positive square"
            )));
        }
        let k = lattice.canonical().clone();
        for c in &neg_curves {
            lattice.intersect(c, c)?;
            let (sq, deg) = (form(&c.0, &c.0), form(&c.0, &k.0));
            if !matches!((sq, deg), (-1, -1) | (-2, 0)) {
                return Err(Error::Validation(alloc::format!(
                    "{c} is neither a (-1)- nor a (-2)-class"
                )));
            }
            if form(&ample.0, &c.0) < 1 {
                return Err(Error::Validation(alloc::format!(
                    "ample class {ample} is not positive on {c}"
                )));
            }
        }
        let mut neg_curves = neg_curves;
        neg_curves.sort();
        Ok(SurfaceY {
            lattice,
            neg_curves,
            ample,
        })
    }

    pub fn lattice(&self) -> &PicLattice {
        &self.lattice
    }

    pub fn neg_curves(&self) -> &[DivClass] {
        &self.neg_curves
    }

    pub fn ample(&self) -> &DivClass {
        &self.ample
    }

    /// `h^0(D)`, reducing by the lexicographically first negative curve each step.
    pub fn h0(&self, d: &DivClass) -> Result<u64> {
        let order: Vec<usize> = (0..self.neg_curves.len()).collect();
        self.h0_with_order(d, &order)
    }

    /// `h^0(D)`, trying negative curves in the given order at each step.
    pub fn h0_with_order(&self, d: &DivClass, order: &[usize]) -> Result<u64> {
        if d.rank() != self.lattice.rank() {
            return Err(Error::LengthMismatch {
                expected: self.lattice.rank(),
                found: d.rank(),
            });
        }
        let mut d = d.clone();
        loop {
            if form(&self.ample.0, &d.0) < 0 {
                return Ok(0);
            }
            match order
                .iter()
                .map(|&i| &self.neg_curves[i])
                .find(|c| form(&d.0, &c.0) < 0)
            {
                Some(c) => d.add_scaled(-1, c),
                None => {
                    let chi = self.lattice.euler_char(&d)?;
                    if chi < 0 {
                        return Err(Error::NegativeH1 {
                            class: d.0,
                            h0: 0,
                            h2: 0,
                            chi,
                        });
                    }
                    return Ok(chi as u64);
                }
            }
        }
    }

    /// `(h^0, h^1, h^2)` of `O_Y(D)`.
    pub fn cohomology(&self, d: &DivClass) -> Result<(u64, u64, u64)> {
        let h0 = self.h0(d)?;
        let h2 = self.h0(&(self.lattice.canonical() - d))?;
        let chi = self.lattice.euler_char(d)?;
        let h1 = h0 as i64 + h2 as i64 - chi;
        if h1 < 0 {
            return Err(Error::NegativeH1 {
                class: d.0.clone(),
                h0,
                h2,
                chi,
            });
        }
        Ok((h0, h1 as u64, h2))
    }
}
