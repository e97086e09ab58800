//! Loading and validating surfaces, and the registry of bundled and
//! user-supplied `.surface` files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use fakedp_core::delpezzo::negative_curves;
use fakedp_core::{
    BranchComponent, CoverData, DivClass, DivisorExprX, FinAbGroup, LineBundleX, PicLattice, Surface,
    SurfaceY, UnramifiedCurve,
};
use thiserror::Error;

use crate::doc::{SurfaceDoc, SCHEMA};
use crate::parse::parse_expr;

const BUNDLED: [(&str, &str); 7] = [
    ("burniat3", include_str!("../surfaces/burniat3.surface")),
    ("burniat4", include_str!("../surfaces/burniat4.surface")),
    ("burniat4n", include_str!("../surfaces/burniat4n.surface")),
    ("burniat5", include_str!("../surfaces/burniat5.surface")),
    ("burniat6", include_str!("../surfaces/burniat6.surface")),
    ("campedelli", include_str!("../surfaces/campedelli.surface")),
    ("kulikov", include_str!("../surfaces/kulikov.surface")),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoadError {
    #[error("{file}: {msg}")]
    Syntax { file: String, msg: String },
    #[error("surface `{surface}` is a template: {msg}")]
    Template { surface: String, msg: String },
    #[error("surface `{surface}`, {item}: {msg}")]
    Invalid { surface: String, item: String, msg: String },
}

/// A validated surface together with the document it came from.
#[derive(Clone, Debug)]
pub struct LoadedSurface {
    pub doc: SurfaceDoc,
    pub surface: Surface,
}

impl LoadedSurface {
    /// Divisor expression from `(name, coefficient)` terms, sorting names into
    /// branch and unramified slots.
    pub fn expr(&self, terms: &[(String, i64)]) -> Result<DivisorExprX, fakedp_core::Error> {
        expr_for(self.surface.cover(), terms)
    }

    pub fn numerical_preset(&self, name: &str) -> Option<Vec<DivClass>> {
        self.doc
            .presets
            .numerical
            .get(name)
            .map(|v| v.iter().map(|c| DivClass(c.clone())).collect())
    }
}

fn expr_for(cov: &CoverData, terms: &[(String, i64)]) -> Result<DivisorExprX, fakedp_core::Error> {
    let mut e = DivisorExprX::new();
    for (n, k) in terms {
        if cov.branch_index(n).is_some() {
            e = e.with(n, *k);
        } else if cov.unramified_index(n).is_some() {
            e = e.with_unramified(n, *k);
        } else {
            return Err(fakedp_core::Error::UnknownComponent(n.clone()));
        }
    }
    Ok(e)
}

/// Validates a document and derives the data on `X`, cross-checking every
/// declared coordinate against its recomputation.
pub fn load_surface(doc: &SurfaceDoc) -> Result<LoadedSurface, LoadError> {
    let invalid = |item: &str, msg: String| LoadError::Invalid {
        surface: doc.name.clone(),
        item: item.to_string(),
        msg,
    };
    if doc.schema != SCHEMA {
        return Err(invalid("schema", format!("unsupported schema {}, expected {SCHEMA}", doc.schema)));
    }
    if doc.template {
        return Err(LoadError::Template {
            surface: doc.name.clone(),
            msg: doc.metadata.notes.clone(),
        });
    }
    let check_len = |item: &str, v: &[i64], n: usize| {
        if v.len() == n {
            Ok(())
        } else {
            Err(invalid(item, format!("has {} entries, expected {n}", v.len())))
        }
    };
    check_len("canonical_y", &doc.canonical_y, doc.rank)?;
    check_len("ample_y", &doc.ample_y, doc.rank)?;
    let group = FinAbGroup::new(doc.group.orders.clone(), doc.group.g_rank)
        .map_err(|e| invalid("group", e.to_string()))?;
    let lat = PicLattice::new(DivClass(doc.canonical_y.clone())).map_err(|e| invalid("canonical_y", e.to_string()))?;

    let mut branches = Vec::with_capacity(doc.branches.len());
    for b in &doc.branches {
        let item = format!("branch {}", b.name);
        check_len(&item, &b.class, doc.rank)?;
        check_len(&item, &b.psi, group.rank())?;
        branches.push(BranchComponent {
            name: b.name.clone(),
            class: DivClass(b.class.clone()),
            psi: group.element(&b.psi).map_err(|e| invalid(&item, e.to_string()))?,
        });
    }
    let mut unramified = Vec::with_capacity(doc.unramified.len());
    for u in &doc.unramified {
        let item = format!("unramified curve {}", u.name);
        check_len(&item, &u.class, doc.rank)?;
        let c = DivClass(u.class.clone());
        if lat.intersect(&c, &c) != Ok(-1) || lat.intersect(lat.canonical(), &c) != Ok(-1) {
            return Err(invalid(&item, "is not a (-1)-class".into()));
        }
        unramified.push(UnramifiedCurve { name: u.name.clone(), class: c });
    }

    for r in &doc.relations {
        let item = format!("relation {r}");
        let terms = parse_expr(r).map_err(|e| invalid(&item, e.to_string()))?;
        let mut acc = group.identity();
        for (n, k) in &terms {
            let b = branches
                .iter()
                .find(|b| &b.name == n)
                .ok_or_else(|| invalid(&item, format!("unknown branch component `{n}`")))?;
            acc = group.add(&acc, &group.scale(*k, &b.psi));
        }
        if !acc.is_zero() {
            return Err(invalid(&item, format!("inertia images sum to {acc}, not 0")));
        }
    }

    // Basis expressions resolve against the component names declared above.
    let names_only = CoverData::new(group.clone(), lat.clone(), branches.clone(), unramified.clone(), vec![])
        .map_err(|e| invalid("branches", e.to_string()))?;
    let mut basis = Vec::with_capacity(doc.basis_x.len());
    for b in &doc.basis_x {
        let item = format!("basis element {}", b.name);
        let terms = parse_expr(&b.expr).map_err(|e| invalid(&item, e.to_string()))?;
        basis.push((b.name.clone(), expr_for(&names_only, &terms).map_err(|e| invalid(&item, e.to_string()))?));
    }
    let cover = CoverData::new(group, lat.clone(), branches, unramified, basis)
        .map_err(|e| invalid("basis_x", e.to_string()))?;

    let roots: Vec<DivClass> = doc.effective_roots.iter().map(|r| DivClass(r.clone())).collect();
    let neg = negative_curves(&lat, &roots).map_err(|e| invalid("effective_roots", e.to_string()))?;
    let y = SurfaceY::new(lat, neg, DivClass(doc.ample_y.clone())).map_err(|e| invalid("ample_y", e.to_string()))?;

    let surface = if doc.basis_x.is_empty() {
        if !doc.generators.is_empty() || !doc.declared.coordinates.is_empty() || doc.declared.canonical_x.is_some() {
            return Err(invalid(
                "basis_x",
                "generators and declared coordinates need a basis of Pic X / Tors".into(),
            ));
        }
        Surface::cover_only(&doc.name, cover, y)
    } else {
        let mut gens = Vec::with_capacity(doc.generators.len());
        for g in &doc.generators {
            let e = expr_for(&cover, &[(g.clone(), 1)]).map_err(|e| invalid("generators", e.to_string()))?;
            gens.push((g.clone(), e));
        }
        Surface::new(&doc.name, cover, y, &gens).map_err(|e| invalid("surface", e.to_string()))?
    };

    let loaded = LoadedSurface { doc: doc.clone(), surface };
    cross_check(&loaded).map_err(|(item, msg)| invalid(&item, msg))?;
    Ok(loaded)
}

fn cross_check(l: &LoadedSurface) -> Result<(), (String, String)> {
    let s = &l.surface;
    let declared_bundle = |item: &str, d: &[i64], t: &[i64]| {
        s.bundle(d, t).map_err(|e| (item.to_string(), e.to_string()))
    };
    for c in &l.doc.declared.coordinates {
        let item = format!("declared coordinates of {}", c.name);
        let want = declared_bundle(&item, &c.multidegree, &c.torsion)?;
        let e = l.expr(&[(c.name.clone(), 1)]).map_err(|e| (item.clone(), e.to_string()))?;
        let got = s.cover().coordinates_of(s.y(), &e).map_err(|e| (item.clone(), e.to_string()))?;
        if got != want {
            return Err((item, format!("declared {want}, computed {got}")));
        }
    }
    if let Some(k) = &l.doc.declared.canonical_x {
        let item = "declared canonical_x";
        let want = declared_bundle(item, &k.multidegree, &k.torsion)?;
        let got: &LineBundleX = s.x().map_err(|e| (item.to_string(), e.to_string()))?.canonical();
        if *got != want {
            return Err((item.to_string(), format!("declared {want}, computed {got}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum Origin {
    Bundled,
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub origin: Origin,
    pub doc: Option<SurfaceDoc>,
    pub loaded: Result<LoadedSurface, LoadError>,
}

/// Every known surface, loaded once; later sources override earlier ones by name.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    entries: BTreeMap<String, Entry>,
}

impl Registry {
    pub fn bundled() -> Self {
        let mut r = Registry::default();
        for (name, text) in BUNDLED {
            r.insert_text(name, text, Origin::Bundled);
        }
        r
    }

    /// The bundled surfaces plus every `*.surface` file in `dir`.
    pub fn with_path(dir: &Path) -> std::io::Result<Self> {
        let mut r = Registry::bundled();
        let mut files: Vec<PathBuf> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "surface"))
            .collect();
        files.sort();
        for p in files {
            let text = fs::read_to_string(&p)?;
            let stem = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            r.insert_text(&stem, &text, Origin::File(p.clone()));
        }
        Ok(r)
    }

    fn insert_text(&mut self, fallback: &str, text: &str, origin: Origin) {
        let file = match &origin {
            Origin::Bundled => format!("{fallback}.surface"),
            Origin::File(p) => p.display().to_string(),
        };
        match SurfaceDoc::from_json(text) {
            Ok(doc) => {
                let loaded = load_surface(&doc);
                self.entries.insert(doc.name.clone(), Entry { origin, doc: Some(doc), loaded });
            }
            Err(e) => {
                let loaded = Err(LoadError::Syntax { file, msg: e.to_string() });
                self.entries.insert(fallback.to_string(), Entry { origin, doc: None, loaded });
            }
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.get(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &Entry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(name: &str) -> SurfaceDoc {
        let text = BUNDLED.iter().find(|(n, _)| *n == name).unwrap().1;
        SurfaceDoc::from_json(text).unwrap()
    }

    #[test]
    fn bundled_surfaces_load() {
        let r = Registry::bundled();
        for name in ["campedelli", "kulikov", "burniat4", "burniat4n"] {
            assert!(r.entry(name).unwrap().loaded.is_ok(), "{name}");
        }
        for name in ["burniat3", "burniat5", "burniat6"] {
            assert!(matches!(r.entry(name).unwrap().loaded, Err(LoadError::Template { .. })));
        }
    }

    #[test]
    fn round_trip_is_canonical() {
        for (name, _) in BUNDLED {
            let d = doc(name);
            let again = SurfaceDoc::from_json(&d.to_canonical_json()).unwrap();
            assert_eq!(again, d);
            assert_eq!(again.to_canonical_json(), d.to_canonical_json());
        }
    }

    #[test]
    fn declared_mismatch_is_rejected() {
        let mut d = doc("kulikov");
        d.declared.coordinates[1].torsion = vec![0, 0, 0];
        let err = load_surface(&d).unwrap_err();
        assert!(err.to_string().contains("D2"), "{err}");
    }

    #[test]
    fn non_unimodular_basis_is_rejected() {
        let mut d = doc("kulikov");
        d.basis_x[1].expr = "2E1".into();
        assert!(matches!(load_surface(&d), Err(LoadError::Invalid { .. })));
    }

    #[test]
    fn broken_relation_is_rejected() {
        let mut d = doc("burniat4n");
        d.relations.push("A0+A1".into());
        let err = load_surface(&d).unwrap_err();
        assert!(err.to_string().contains("A0+A1"), "{err}");
    }
}
