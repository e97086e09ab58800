//! Abelian covers `X -> Y` and the pushforward of line bundles along them.
//!
//! A cover is given by branch components `Delta_i` with classes on `Y` and
//! values `Psi(Delta_i)` in `G~ = G + T`, plus optional unramified curves
//! whose pullback is recorded in full. Divisors on `X` are integer
//! combinations of reduced pullbacks `D_i` and of pulled-back unramified
//! curves; `pushforward` decomposes `phi_* O_X(D - tau)` into one line bundle
//! on `Y` per character of `G`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::delpezzo::SurfaceY;
use crate::error::{Error, Result};
use crate::groups::{Character, FinAbGroup, GroupElement};
use crate::lattice::{form, DivClass, PicLattice};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchComponent {
    pub name: String,
    pub class: DivClass,
    pub psi: GroupElement,
}

/// A curve on `Y` over which the cover is unramified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedCurve {
    pub name: String,
    pub class: DivClass,
}

/// A divisor on `X`: coefficients of reduced pullbacks of branch components
/// and of full pullbacks of unramified curves, keyed by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorExprX {
    pub branch: BTreeMap<String, i64>,
    pub unramified: BTreeMap<String, i64>,
}

impl DivisorExprX {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, coeff: i64) -> Self {
        *self.branch.entry(name.into()).or_insert(0) += coeff;
        self
    }

    pub fn with_unramified(mut self, name: &str, coeff: i64) -> Self {
        *self.unramified.entry(name.into()).or_insert(0) += coeff;
        self
    }
}

/// A divisor expression resolved against a cover: one slot per branch
/// component and per unramified curve, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseExpr {
    pub branch: Vec<i64>,
    pub unramified: Vec<i64>,
}

impl DenseExpr {
    pub fn zero(branches: usize, unramified: usize) -> Self {
        DenseExpr {
            branch: alloc::vec![0; branches],
            unramified: alloc::vec![0; unramified],
        }
    }

    pub fn add_scaled(&mut self, k: i64, other: &DenseExpr) {
        for (a, b) in self.branch.iter_mut().zip(&other.branch) {
            *a += k * b;
        }
        for (a, b) in self.unramified.iter_mut().zip(&other.unramified) {
            *a += k * b;
        }
    }
}

/// A line bundle on `X` in coordinates: `O_X(sum d_j e_j)` twisted by a torsion element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineBundleX {
    pub multidegree: DivClass,
    pub torsion: GroupElement,
}

impl LineBundleX {
    pub fn new(multidegree: DivClass, torsion: GroupElement) -> Self {
        LineBundleX {
            multidegree,
            torsion,
        }
    }
}

/// Renders as `(d0,...,dn)[t1,...,tk]`.
impl fmt::Display for LineBundleX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.multidegree, self.torsion)
    }
}

#[derive(Clone, Debug)]
pub struct CoverData {
    group: FinAbGroup,
    t_group: FinAbGroup,
    lattice_y: PicLattice,
    branches: Vec<BranchComponent>,
    unramified: Vec<UnramifiedCurve>,
    basis_x: Vec<(String, DivisorExprX)>,
    // Derived tables.
    inertia: Vec<u32>,
    evals: Vec<u32>,
    sheaves: Vec<DivClass>,
    scale: Option<i64>,
    basis_dense: Vec<DenseExpr>,
    basis_cols: Vec<Vec<i64>>,
}

impl CoverData {
    pub fn new(
        group: FinAbGroup,
        lattice_y: PicLattice,
        branches: Vec<BranchComponent>,
        unramified: Vec<UnramifiedCurve>,
        basis_x: Vec<(String, DivisorExprX)>,
    ) -> Result<Self> {
        let rank = lattice_y.rank();
        let mut names: Vec<&str> = Vec::new();
        let mut inertia = Vec::with_capacity(branches.len());
        for b in &branches {
            check_class(&b.class, rank, &b.name)?;
            if !group.contains(&b.psi) {
                return Err(Error::Validation(alloc::format!(
                    "Psi({}) = {} is not an element of the group",
                    b.name,
                    b.psi
                )));
            }
            let n = group.element_order(&b.psi)?;
            let g_order = group.g_part().element_order(&group.project_g(&b.psi))?;
            if n < 2 {
                return Err(Error::Validation(alloc::format!(
                    "branch component {} has trivial Psi",
                    b.name
                )));
            }
            if n != g_order {
                return Err(Error::Validation(alloc::format!(
                    "Psi({}) has order {n} but its image in G has order {g_order}",
                    b.name
                )));
            }
            inertia.push(n);
            names.push(&b.name);
        }
        for u in &unramified {
            check_class(&u.class, rank, &u.name)?;
            names.push(&u.name);
        }
        let mut sorted = names.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(alloc::format!("duplicate component name {}", w[0])));
        }
        let t_group = group.t_part();
        let mut cov = CoverData {
            group,
            t_group,
            lattice_y,
            branches,
            unramified,
            basis_x,
            inertia,
            evals: Vec::new(),
            sheaves: Vec::new(),
            scale: None,
            basis_dense: Vec::new(),
            basis_cols: Vec::new(),
        };
        cov.check_spanning()?;
        cov.tabulate()?;
        cov.setup_basis()?;
        Ok(cov)
    }

    fn check_spanning(&self) -> Result<()> {
        let rank = self.lattice_y.rank();
        let rows: Vec<Vec<i64>> = self.branches.iter().map(|b| b.class.0.clone()).collect();
        if linalg::rank(&rows) < rank || maximal_minor_gcd(&rows, rank) != 1 {
            return Err(Error::Validation(
                "branch classes do not span the Picard lattice of Y over Z".into(),
            ));
        }
        Ok(())
    }

    fn tabulate(&mut self) -> Result<()> {
        let size = self.group.cardinality();
        let nb = self.branches.len();
        let exponent = self.group.exponent() as i64;
        let mut evals = Vec::with_capacity(size * nb);
        let mut sheaves = Vec::with_capacity(size);
        for c in 0..size {
            let chi = self.group.character_at(c);
            let mut total = DivClass::zero(self.lattice_y.rank());
            for (b, &n) in self.branches.iter().zip(&self.inertia) {
                let k = self.group.char_eval(&chi, &b.psi)?;
                evals.push(k);
                // k / n_i, measured in units of 1 / exponent.
                total.add_scaled(k as i64 * (exponent / n as i64), &b.class);
            }
            if total.0.iter().any(|x| x % exponent != 0) {
                return Err(Error::NonIntegralCharacterSheaf {
                    character: chi.coeffs().to_vec(),
                });
            }
            sheaves.push(DivClass(total.0.iter().map(|x| x / exponent).collect()));
        }
        self.evals = evals;
        self.sheaves = sheaves;
        Ok(())
    }

    fn setup_basis(&mut self) -> Result<()> {
        if self.basis_x.is_empty() {
            return Ok(());
        }
        let rank = self.lattice_y.rank();
        if self.basis_x.len() != rank {
            return Err(Error::Validation(alloc::format!(
                "basis of Pic X has {} elements, expected {rank}",
                self.basis_x.len()
            )));
        }
        let degree = self.group.g_part().cardinality() as i64;
        let m = (1..=degree).find(|m| m * m == degree).ok_or(Error::NoLatticeIsometry)?;
        if self.inertia.iter().any(|&n| m % n as i64 != 0) {
            return Err(Error::NoLatticeIsometry);
        }
        self.scale = Some(m);
        let dense: Vec<DenseExpr> = self
            .basis_x
            .iter()
            .map(|(_, e)| self.resolve(e))
            .collect::<Result<_>>()?;
        let cols: Vec<Vec<i64>> = dense.iter().map(|e| self.x_class_dense(e).0).collect();
        for i in 0..rank {
            for j in 0..rank {
                let want = match (i, j) {
                    _ if i != j => 0,
                    (0, 0) => 1,
                    _ => -1,
                };
                let got = form(&cols[i], &cols[j]);
                if got != want {
                    return Err(Error::Validation(alloc::format!(
                        "basis Gram matrix entry ({i},{j}) is {got}, expected {want}"
                    )));
                }
            }
        }
        self.basis_dense = dense;
        self.basis_cols = cols;
        Ok(())
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// The torsion block `T` as a group of its own.
    pub fn torsion_group(&self) -> &FinAbGroup {
        &self.t_group
    }

    pub fn lattice_y(&self) -> &PicLattice {
        &self.lattice_y
    }

    pub fn branches(&self) -> &[BranchComponent] {
        &self.branches
    }

    pub fn unramified(&self) -> &[UnramifiedCurve] {
        &self.unramified
    }

    pub fn basis_x(&self) -> &[(String, DivisorExprX)] {
        &self.basis_x
    }

    /// Order `n_i` of `Psi(Delta_i)` for each branch component.
    pub fn inertia(&self) -> &[u32] {
        &self.inertia
    }

    /// `sqrt |G|` when the cover admits the lattice isometry.
    pub fn scale(&self) -> Option<i64> {
        self.scale
    }

    pub fn has_isometry(&self) -> bool {
        !self.basis_dense.is_empty()
    }

    /// Number of characters of `G`, i.e. of summands in every pushforward.
    pub fn degree(&self) -> usize {
        self.group.g_part().cardinality()
    }

    pub fn branch_index(&self, name: &str) -> Option<usize> {
        self.branches.iter().position(|b| b.name == name)
    }

    pub fn unramified_index(&self, name: &str) -> Option<usize> {
        self.unramified.iter().position(|u| u.name == name)
    }

    /// Resolves names against the cover. A name found under `branch` that is
    /// an unramified curve (or vice versa) is an error.
    pub fn resolve(&self, expr: &DivisorExprX) -> Result<DenseExpr> {
        let mut out = DenseExpr::zero(self.branches.len(), self.unramified.len());
        for (name, &k) in &expr.branch {
            let i = self
                .branch_index(name)
                .ok_or_else(|| Error::UnknownComponent(name.clone()))?;
            out.branch[i] += k;
        }
        for (name, &k) in &expr.unramified {
            let i = self
                .unramified_index(name)
                .ok_or_else(|| Error::UnknownComponent(name.clone()))?;
            out.unramified[i] += k;
        }
        Ok(out)
    }

    pub fn character_sheaf(&self, chi: &Character) -> Result<DivClass> {
        if chi.coeffs().len() != self.group.rank() {
            return Err(Error::LengthMismatch {
                expected: self.group.rank(),
                found: chi.coeffs().len(),
            });
        }
        Ok(self.sheaves[self.group.index_of(chi.coeffs())].clone())
    }

    /// `Psi` of an exceptional curve: the sum over the branch components through the point.
    pub fn blowup_image(&self, through: &[&str]) -> Result<GroupElement> {
        let mut acc = self.group.identity();
        for name in through {
            let i = self
                .branch_index(name)
                .ok_or_else(|| Error::UnknownComponent((*name).into()))?;
            acc = self.group.add(&acc, &self.branches[i].psi);
        }
        Ok(acc)
    }

    /// Class on `Y` of `sum k_i Delta_i + sum c_u U`.
    pub fn y_class_dense(&self, expr: &DenseExpr) -> DivClass {
        let mut out = DivClass::zero(self.lattice_y.rank());
        for (k, b) in expr.branch.iter().zip(&self.branches) {
            out.add_scaled(*k, &b.class);
        }
        for (c, u) in expr.unramified.iter().zip(&self.unramified) {
            out.add_scaled(*c, &u.class);
        }
        out
    }

    /// The numerical class of the divisor on `X`, written in `Y`-coordinates
    /// scaled by `sqrt |G|` so that the form on `Pic Y` computes intersections on `X`.
    pub fn x_class(&self, expr: &DenseExpr) -> Result<DivClass> {
        self.scale.ok_or(Error::NoLatticeIsometry)?;
        Ok(self.x_class_dense(expr))
    }

    fn x_class_dense(&self, expr: &DenseExpr) -> DivClass {
        let m = self.scale.unwrap_or(1);
        let mut out = DivClass::zero(self.lattice_y.rank());
        for ((k, b), &n) in expr.branch.iter().zip(&self.branches).zip(&self.inertia) {
            out.add_scaled(*k * (m / n as i64), &b.class);
        }
        for (c, u) in expr.unramified.iter().zip(&self.unramified) {
            out.add_scaled(*c * m, &u.class);
        }
        out
    }

    /// Multidegree of a divisor on `X` in the chosen basis of `Pic X / Tors`.
    pub fn multidegree(&self, expr: &DenseExpr) -> Result<DivClass> {
        if !self.has_isometry() {
            return Err(Error::NoLatticeIsometry);
        }
        let v = self.x_class_dense(expr);
        linalg::solve_integral(&self.basis_cols, &v.0)
            .map(DivClass)
            .ok_or(Error::NotInLattice { class: v.0 })
    }

    /// Basis coordinates of a class given in `Y`-coordinates, i.e. the
    /// multidegree of a divisor whose pullback class is proportional to it.
    pub fn multidegree_of_y_class(&self, c: &DivClass) -> Option<DivClass> {
        if !self.has_isometry() {
            return None;
        }
        linalg::solve_integral(&self.basis_cols, &c.0).map(DivClass)
    }

    /// `sum_j d_j (basis expression j)`.
    pub fn expr_for_multidegree(&self, d: &DivClass) -> Result<DenseExpr> {
        if !self.has_isometry() {
            return Err(Error::NoLatticeIsometry);
        }
        if d.rank() != self.basis_dense.len() {
            return Err(Error::LengthMismatch {
                expected: self.basis_dense.len(),
                found: d.rank(),
            });
        }
        let mut out = DenseExpr::zero(self.branches.len(), self.unramified.len());
        for (&dj, e) in d.0.iter().zip(&self.basis_dense) {
            out.add_scaled(dj, e);
        }
        Ok(out)
    }

    pub fn check_torsion(&self, tau: &GroupElement) -> Result<()> {
        if tau.coeffs().len() != self.t_group.rank() {
            return Err(Error::LengthMismatch {
                expected: self.t_group.rank(),
                found: tau.coeffs().len(),
            });
        }
        if !self.t_group.contains(tau) {
            return Err(Error::Validation(alloc::format!("{tau} is not an element of T")));
        }
        Ok(())
    }

    /// `phi_* O_X(D - tau)` as one class per character of `G`, in lexicographic order.
    pub fn pushforward(&self, expr: &DivisorExprX, tau: &GroupElement) -> Result<Vec<DivClass>> {
        self.check_torsion(tau)?;
        let dense = self.resolve(expr)?;
        Ok(self.pushforward_dense(&dense, self.t_group.index_of(tau.coeffs())))
    }

    /// As [`pushforward`](Self::pushforward), with `tau` given by its index in `T`.
    pub fn pushforward_dense(&self, expr: &DenseExpr, tau: usize) -> Vec<DivClass> {
        let t_size = self.t_group.cardinality();
        let nb = self.branches.len();
        (0..self.degree())
            .map(|g| {
                let c = g * t_size + tau;
                let mut m = -&self.sheaves[c];
                let evals = &self.evals[c * nb..(c + 1) * nb];
                for (i, b) in self.branches.iter().enumerate() {
                    let n = self.inertia[i] as i64;
                    let k = expr.branch[i];
                    let (p, kbar) = (k.div_euclid(n), k.rem_euclid(n));
                    let mut mult = p;
                    if kbar > 0 && n - kbar <= evals[i] as i64 {
                        mult += 1;
                    }
                    if mult != 0 {
                        m.add_scaled(mult, &b.class);
                    }
                }
                for (c, u) in expr.unramified.iter().zip(&self.unramified) {
                    if *c != 0 {
                        m.add_scaled(*c, &u.class);
                    }
                }
                m
            })
            .collect()
    }

    /// `h^0(X, O_X(D - tau))`, summed over the pushforward.
    pub fn h0_dense(&self, y: &SurfaceY, expr: &DenseExpr, tau: usize) -> Result<u64> {
        let mut total = 0;
        for m in self.pushforward_dense(expr, tau) {
            total += y.h0(&m)?;
        }
        Ok(total)
    }

    /// Coordinates `(d, t)` of `O_X(D)`: the multidegree of `D` and the unique
    /// torsion twist making `D - sum d_j e_j - t` effective.
    pub fn coordinates_of(&self, y: &SurfaceY, expr: &DivisorExprX) -> Result<LineBundleX> {
        let dense = self.resolve(expr)?;
        self.coordinates_of_dense(y, &dense)
    }

    pub fn coordinates_of_dense(&self, y: &SurfaceY, expr: &DenseExpr) -> Result<LineBundleX> {
        let d = self.multidegree(expr)?;
        let mut residual = expr.clone();
        residual.add_scaled(-1, &self.expr_for_multidegree(&d)?);
        let mut found = Vec::new();
        for t in 0..self.t_group.cardinality() {
            if self.h0_dense(y, &residual, t)? > 0 {
                found.push(t);
            }
        }
        match found.as_slice() {
            [t] => Ok(LineBundleX::new(d, self.t_group.element_at(*t))),
            _ => Err(Error::TorsionNotUnique {
                candidates: found.len(),
            }),
        }
    }

    /// The expression `phi^* K_Y + sum (n_i - 1) D_i` of the canonical divisor of `X`.
    pub fn canonical_expr(&self) -> Result<DenseExpr> {
        if !self.has_isometry() {
            return Err(Error::NoLatticeIsometry);
        }
        // Full pullbacks of the Y-divisors underlying the basis expressions.
        let pulled: Vec<DenseExpr> = self
            .basis_dense
            .iter()
            .map(|e| DenseExpr {
                branch: e
                    .branch
                    .iter()
                    .zip(&self.inertia)
                    .map(|(k, &n)| k * n as i64)
                    .collect(),
                unramified: e.unramified.clone(),
            })
            .collect();
        let cols: Vec<Vec<i64>> = self
            .basis_dense
            .iter()
            .map(|e| self.y_class_dense(e).0)
            .collect();
        let k = self.lattice_y.canonical();
        let c = linalg::solve_integral(&cols, &k.0).ok_or(Error::NotInLattice { class: k.0.clone() })?;
        let mut out = DenseExpr::zero(self.branches.len(), self.unramified.len());
        for (cj, p) in c.iter().zip(&pulled) {
            out.add_scaled(*cj, p);
        }
        for (slot, &n) in out.branch.iter_mut().zip(&self.inertia) {
            *slot += n as i64 - 1;
        }
        Ok(out)
    }

    pub fn canonical_x(&self, y: &SurfaceY) -> Result<LineBundleX> {
        let k = self.canonical_expr()?;
        self.coordinates_of_dense(y, &k)
    }
}

fn check_class(class: &DivClass, rank: usize, name: &str) -> Result<()> {
    if class.rank() != rank {
        return Err(Error::Validation(alloc::format!(
            "class of {name} has length {}, expected {rank}",
            class.rank()
        )));
    }
    Ok(())
}

/// gcd of all `k x k` minors of the matrix with the given rows.
fn maximal_minor_gcd(rows: &[Vec<i64>], k: usize) -> i128 {
    use num_integer::Integer;
    let mut g = 0i128;
    let mut pick = Vec::with_capacity(k);
    fn walk(rows: &[Vec<i64>], k: usize, start: usize, pick: &mut Vec<usize>, g: &mut i128) {
        if *g == 1 {
            return;
        }
        if pick.len() == k {
            let m: Vec<Vec<i64>> = pick.iter().map(|&i| rows[i].clone()).collect();
            *g = g.gcd(&linalg::det(&m));
            return;
        }
        for i in start..rows.len() {
            pick.push(i);
            walk(rows, k, i + 1, pick, g);
            pick.pop();
        }
    }
    walk(rows, k, 0, &mut pick, &mut g);
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn campedelli() -> CoverData {
        let group = FinAbGroup::new(vec![2; 6], 3).unwrap();
        let psi: [[i64; 6]; 7] = [
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [1, 1, 0, 1, 0, 0],
            [1, 0, 1, 0, 1, 0],
            [0, 1, 1, 0, 0, 1],
            [1, 1, 1, 1, 1, 1],
        ];
        let branches = psi
            .iter()
            .enumerate()
            .map(|(i, p)| BranchComponent {
                name: alloc::format!("D{}", i + 1),
                class: DivClass(vec![1]),
                psi: group.element(p).unwrap(),
            })
            .collect();
        let lat = PicLattice::new(DivClass(vec![-3])).unwrap();
        CoverData::new(group, lat, branches, vec![], vec![]).unwrap()
    }

    #[test]
    fn trivial_character_sheaf() {
        let cov = campedelli();
        let zero = cov.group().trivial_character();
        assert!(cov.character_sheaf(&zero).unwrap().is_zero());
    }

    #[test]
    fn campedelli_sheaves() {
        let cov = campedelli();
        let chi = cov.group().character(&[1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(cov.character_sheaf(&chi).unwrap(), DivClass(vec![2]));
        let zero_t = cov.torsion_group().identity();
        for chi in cov.group().g_part().characters().filter(|c| !c.is_trivial()) {
            let full = cov.group().join_character(&chi, &zero_t).unwrap();
            assert_eq!(cov.character_sheaf(&full).unwrap(), DivClass(vec![2]));
        }
    }

    #[test]
    fn campedelli_pushforward() {
        let cov = campedelli();
        let expr = DivisorExprX::new().with("D1", 1);
        let mut want = vec![DivClass(vec![0])];
        want.extend(core::iter::repeat(DivClass(vec![-1])).take(4));
        want.extend(core::iter::repeat(DivClass(vec![-2])).take(3));
        for tau in [[0, 0, 0], [1, 0, 0]] {
            let t = cov.torsion_group().element(&tau).unwrap();
            let mut got = cov.pushforward(&expr, &t).unwrap();
            got.sort_by(|a, b| b.cmp(a));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn structure_sheaf_pushforward() {
        let cov = campedelli();
        let zero = cov.torsion_group().identity();
        let got = cov.pushforward(&DivisorExprX::new(), &zero).unwrap();
        let want: Vec<DivClass> = cov
            .group()
            .g_part()
            .characters()
            .map(|c| {
                let full = cov.group().join_character(&c, &zero).unwrap();
                -&cov.character_sheaf(&full).unwrap()
            })
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn rejects_bad_data() {
        let cov = campedelli();
        let t = cov.torsion_group().identity();
        assert!(matches!(
            cov.pushforward(&DivisorExprX::new().with("Q", 1), &t),
            Err(Error::UnknownComponent(_))
        ));
        assert!(cov.pushforward(&DivisorExprX::new(), &cov.group().identity()).is_err());
        assert!(matches!(
            cov.multidegree(&DenseExpr::zero(7, 0)),
            Err(Error::NoLatticeIsometry)
        ));
        assert!(cov.blowup_image(&[]).unwrap().is_zero());
    }
}
