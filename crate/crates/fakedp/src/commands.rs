//! Command implementations. Each returns a table for humans and a JSON value
//! with sorted keys; both are independent of the thread count.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fakedp_core::cohom::{acyclic_set, acyclic_set_checked, cohomology_x, ext_table, extend_anticanonically};
use fakedp_core::collections::{
    formality_check, lift_numerical, pseudoheight, twisted_collection, weyl_orbit, TwistSearch,
    DEFAULT_ORBIT_CAP,
};
use fakedp_core::effective::{is_effective_x, EffectivityMode, TorsionImages};
use fakedp_core::{AcyclicMethod, CohomDims, DivClass, GroupElement, LineBundleX, Surface};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cli::{Command, Method, SurfacesCmd};
use crate::error::CliError;
use crate::parse::{parse_class_list, parse_collection, parse_expr, parse_ints, CollectionSpec};
use crate::registry::{LoadError, LoadedSurface, Origin, Registry};
use crate::verify;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl CommandResult {
    fn ok(text: String, json: Value) -> Self {
        CommandResult { code: 0, text, json }
    }

    /// The output selected by `--json`, newline terminated.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = String::new();
            write_json(&mut s, &self.json, 0);
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// Canonical layout: sorted keys, two-space indent, scalar arrays on one line.
pub fn write_json(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_json(out, val, indent + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (k, val) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(out, val, indent + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

pub struct Context {
    pub registry: Registry,
    pub pool: rayon::ThreadPool,
}

impl Context {
    pub fn new(registry: Registry, jobs: Option<usize>) -> Result<Self, CliError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.unwrap_or(0))
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Context { registry, pool })
    }

    pub fn surface(&self, name: &str) -> Result<&LoadedSurface, CliError> {
        let entry = self
            .registry
            .entry(name)
            .ok_or_else(|| CliError::Usage(format!("unknown surface `{name}`")))?;
        entry.loaded.as_ref().map_err(|e| CliError::Load(e.clone()))
    }
}

pub fn run(ctx: &Context, cmd: &Command) -> Result<CommandResult, CliError> {
    match cmd {
        Command::Surfaces { action } => match action {
            SurfacesCmd::List => Ok(surfaces_list(ctx)),
            SurfacesCmd::Show { name } => surfaces_show(ctx.surface(name)?),
        },
        Command::Pushforward { surface, divisor, torsion } => pushforward(ctx.surface(surface)?, divisor, torsion),
        Command::Cohom { surface, degree, torsion } => {
            let l = ctx.surface(surface)?;
            let b = bundle(&l.surface, degree, torsion)?;
            let h = cohomology_x(&l.surface, &b)?;
            let text = format!("{b}\nh0 = {}\nh1 = {}\nh2 = {}\nchi = {}\n", h.h0, h.h1, h.h2, h.euler());
            Ok(CommandResult::ok(text, json!({"bundle": bundle_json(&b), "h": dims_json(&h)})))
        }
        Command::Acyclic { surface, degree, method } => {
            let s = &ctx.surface(surface)?.surface;
            let d = DivClass(parse_ints(degree)?);
            let set = match method {
                Method::Semigroup => acyclic_set(s, &d, AcyclicMethod::Semigroup)?,
                Method::Pushforward => acyclic_set(s, &d, AcyclicMethod::Pushforward)?,
                Method::Both => acyclic_set_checked(s, &d)?,
            };
            let mut text = format!("A{d}: {} of {} twists\n", set.len(), s.torsion_group().cardinality());
            for t in &set {
                writeln!(text, "  {t}").unwrap();
            }
            Ok(CommandResult::ok(
                text,
                json!({"multidegree": d.0, "acyclic": set.iter().map(elem_json).collect::<Vec<_>>()}),
            ))
        }
        Command::Effective { surface, degree, torsion, mode } => {
            let s = &ctx.surface(surface)?.surface;
            let b = bundle(s, degree, torsion)?;
            let mode = match mode {
                Method::Semigroup => EffectivityMode::Semigroup,
                Method::Pushforward => EffectivityMode::Pushforward,
                Method::Both => EffectivityMode::Both,
            };
            let x = s.x()?;
            let eff = is_effective_x(s.cover(), s.y(), x.semigroup(), &b, mode, &mut TorsionImages::new())?;
            let text = format!("{b}: {}\n", if eff { "effective" } else { "not effective" });
            Ok(CommandResult::ok(text, json!({"bundle": bundle_json(&b), "effective": eff})))
        }
        Command::Decomp { surface, degree } => decomp(&ctx.surface(surface)?.surface, degree),
        Command::Cone { surface } => {
            let s = &ctx.surface(surface)?.surface;
            let mut rays = s.x()?.semigroup().cone_extreme_rays()?;
            rays.sort();
            let mut text = format!("{} extreme rays\n", rays.len());
            for r in &rays {
                writeln!(text, "  {r}").unwrap();
            }
            Ok(CommandResult::ok(text, json!({"rays": rays.iter().map(|r| r.0.clone()).collect::<Vec<_>>()})))
        }
        Command::Enumerate { surface, numerical } => {
            let l = ctx.surface(surface)?;
            let lambda = numerical_spec(l, numerical)?;
            let tuples = enumerate(ctx, &l.surface, &lambda)?;
            let mut text = format!("{} exceptional twist tuples\n", tuples.len());
            for t in &tuples {
                writeln!(text, "  {}", join(t)).unwrap();
            }
            let rows: Vec<Vec<Value>> = tuples.iter().map(|t| t.iter().map(elem_json).collect()).collect();
            Ok(CommandResult::ok(
                text,
                json!({"numerical": lambda.iter().map(|c| c.0.clone()).collect::<Vec<_>>(), "twists": rows}),
            ))
        }
        Command::ExtTable { surface, collection } => {
            let l = ctx.surface(surface)?;
            let e = collection_spec(ctx, l, collection)?;
            let table = ext_table(&l.surface, &e)?;
            let rows = table.zigzag();
            let mut text = collection_text(&e);
            text.push_str("Ext^*(E_i, E_{i+j}) as h0,h1,h2; row i, column j\n");
            for (i, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|h| format!("{},{},{}", h.h0, h.h1, h.h2)).collect();
                writeln!(text, "  {i}: {}", cells.join("  ")).unwrap();
            }
            let json_rows: Vec<Vec<Value>> = rows.iter().map(|r| r.iter().map(dims_json).collect()).collect();
            Ok(CommandResult::ok(
                text,
                json!({"collection": e.iter().map(bundle_json).collect::<Vec<_>>(), "zigzag": json_rows}),
            ))
        }
        Command::Pseudoheight { surface, collection } => {
            let l = ctx.surface(surface)?;
            let s = &l.surface;
            let e = collection_spec(ctx, l, collection)?;
            let table = ext_table(s, &e)?;
            let ext = extend_anticanonically(s, &e)?;
            let ph = pseudoheight(&table, s.x()?.lattice(), &ext)?;
            let mut text = collection_text(&e);
            match ph.value {
                Some(v) => writeln!(text, "pseudoheight = {v}").unwrap(),
                None => writeln!(text, "pseudoheight = infinite").unwrap(),
            }
            for c in &ph.chains {
                let names: Vec<String> = c.iter().map(|i| format!("E{i}")).collect();
                writeln!(text, "  chain {}", names.join(" -> ")).unwrap();
            }
            writeln!(text, "ordered by K-degree: {}", ph.lower_bound_hypothesis).unwrap();
            match ph.height {
                Some(h) => writeln!(text, "height = {h}").unwrap(),
                None => writeln!(text, "height: not determined (pseudoheight is a lower bound)").unwrap(),
            }
            Ok(CommandResult::ok(
                text,
                json!({
                    "collection": e.iter().map(bundle_json).collect::<Vec<_>>(),
                    "pseudoheight": ph.value,
                    "chains": ph.chains,
                    "lower_bound_hypothesis": ph.lower_bound_hypothesis,
                    "height": ph.height,
                }),
            ))
        }
        Command::Formality { surface, collection } => {
            let l = ctx.surface(surface)?;
            let e = collection_spec(ctx, l, collection)?;
            let f = formality_check(&ext_table(&l.surface, &e)?);
            let mut text = collection_text(&e);
            writeln!(text, "formal by degree: {}", f.formal).unwrap();
            for (i, j) in &f.hom_witnesses {
                writeln!(text, "  Hom(E{i}, E{j}) != 0").unwrap();
            }
            for ((i, j), (_, k)) in &f.composable {
                writeln!(text, "  Ext^1 arrows E{i} -> E{j} -> E{k}").unwrap();
            }
            Ok(CommandResult::ok(
                text,
                json!({
                    "collection": e.iter().map(bundle_json).collect::<Vec<_>>(),
                    "formal": f.formal,
                    "hom_witnesses": f.hom_witnesses,
                    "composable": f.composable,
                }),
            ))
        }
        Command::WeylOrbit { surface, numerical, counts } => {
            let l = ctx.surface(surface)?;
            let lambda = numerical_spec(l, numerical)?;
            let orbit = weyl_orbit(l.surface.y().lattice(), &lambda, DEFAULT_ORBIT_CAP)?;
            let tallies: Option<Vec<usize>> = if *counts {
                let r: Result<Vec<usize>, CliError> = ctx.pool.install(|| {
                    orbit
                        .par_iter()
                        .map(|lam| Ok(enumerate_serial(&l.surface, lam)?.len()))
                        .collect()
                });
                Some(r?)
            } else {
                None
            };
            let mut text = format!("orbit of {} numerical collections\n", orbit.len());
            for (k, lam) in orbit.iter().enumerate() {
                let classes: Vec<String> = lam.iter().map(|c| c.to_string()).collect();
                match &tallies {
                    Some(t) => writeln!(text, "  {} : {}", classes.join(" "), t[k]).unwrap(),
                    None => writeln!(text, "  {}", classes.join(" ")).unwrap(),
                }
            }
            let mut obj = BTreeMap::new();
            obj.insert(
                "orbit",
                json!(orbit.iter().map(|lam| lam.iter().map(|c| c.0.clone()).collect::<Vec<_>>()).collect::<Vec<_>>()),
            );
            if let Some(t) = &tallies {
                let distinct: std::collections::BTreeSet<usize> = t.iter().copied().collect();
                writeln!(text, "distinct counts: {}", distinct.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")).unwrap();
                obj.insert("counts", json!(t));
                obj.insert("distinct_counts", json!(distinct));
            }
            Ok(CommandResult::ok(text, json!(obj)))
        }
        Command::Verify { suite: _, filter } => Ok(verify::run(ctx, filter.as_deref())),
    }
}

fn surfaces_list(ctx: &Context) -> CommandResult {
    let mut text = String::new();
    let mut rows = Vec::new();
    writeln!(text, "{:<12} {:>3} {:>5} {:>5}  status", "name", "K^2", "|G|", "|T|").unwrap();
    for (name, entry) in ctx.registry.entries() {
        let (status, detail) = match &entry.loaded {
            Ok(l) if l.surface.x().is_ok() => ("ok", String::new()),
            Ok(_) => ("cover-only", "no lattice isometry".to_string()),
            Err(LoadError::Template { .. }) => ("template", String::new()),
            Err(e) => ("invalid", e.to_string()),
        };
        let doc = entry.doc.as_ref();
        let k2 = doc.and_then(|d| d.metadata.k2);
        let (g, t) = match &entry.loaded {
            Ok(l) => (
                Some(l.surface.cover().degree()),
                Some(l.surface.torsion_group().cardinality()),
            ),
            Err(_) => (None, None),
        };
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        let shown = if detail.is_empty() { status.to_string() } else { format!("{status}: {detail}") };
        writeln!(
            text,
            "{:<12} {:>3} {:>5} {:>5}  {}",
            name,
            k2.map_or("-".to_string(), |k| k.to_string()),
            opt(g),
            opt(t),
            shown
        )
        .unwrap();
        let origin = match &entry.origin {
            Origin::Bundled => "bundled".to_string(),
            Origin::File(p) => p.display().to_string(),
        };
        rows.push(json!({
            "name": name, "k2": k2, "group_order": g, "torsion_order": t,
            "status": status, "detail": detail, "origin": origin,
        }));
    }
    CommandResult::ok(text, json!({"surfaces": rows}))
}

fn surfaces_show(l: &LoadedSurface) -> Result<CommandResult, CliError> {
    let s = &l.surface;
    let cov = s.cover();
    let g = cov.group();
    let mut text = String::new();
    writeln!(text, "surface {}", s.name()).unwrap();
    if let Some(k2) = l.doc.metadata.k2 {
        writeln!(text, "K^2 = {k2}").unwrap();
    }
    writeln!(text, "group orders {:?}, G = first {} factors", g.orders(), g.g_rank()).unwrap();
    writeln!(text, "K_Y = {}", s.y().lattice().canonical()).unwrap();
    writeln!(text, "branch components:").unwrap();
    let mut branches = Vec::new();
    for (b, n) in cov.branches().iter().zip(cov.inertia()) {
        writeln!(text, "  {:<4} {}  Psi = {}  n = {}", b.name, b.class, b.psi, n).unwrap();
        branches.push(json!({"name": b.name, "class": b.class.0, "psi": elem_json(&b.psi), "inertia": n}));
    }
    let mut unram = Vec::new();
    for u in cov.unramified() {
        writeln!(text, "  {:<4} {}  unramified", u.name, u.class).unwrap();
        unram.push(json!({"name": u.name, "class": u.class.0}));
    }
    let mut out = BTreeMap::new();
    out.insert("name", json!(s.name()));
    out.insert("orders", json!(g.orders()));
    out.insert("g_rank", json!(g.g_rank()));
    out.insert("canonical_y", json!(s.y().lattice().canonical().0));
    out.insert("branches", json!(branches));
    out.insert("unramified", json!(unram));
    out.insert("negative_curves", json!(s.y().neg_curves().iter().map(|c| c.0.clone()).collect::<Vec<_>>()));
    match s.x() {
        Ok(x) => {
            writeln!(text, "K_X = {}", x.canonical()).unwrap();
            writeln!(text, "generators of the effective semigroup:").unwrap();
            let mut gens = Vec::new();
            for (n, b) in x.semigroup().generators() {
                writeln!(text, "  O_X({n}) = O_X{b}").unwrap();
                gens.push(json!({"name": n, "bundle": bundle_json(b)}));
            }
            out.insert("canonical_x", bundle_json(x.canonical()));
            out.insert("generators", json!(gens));
        }
        Err(_) => {
            writeln!(text, "no lattice isometry Pic Y -> Pic X / Tors: cover computations only").unwrap();
        }
    }
    if !l.doc.metadata.notes.is_empty() {
        writeln!(text, "notes: {}", l.doc.metadata.notes).unwrap();
    }
    Ok(CommandResult::ok(text, json!(out)))
}

fn pushforward(l: &LoadedSurface, divisor: &str, torsion: &str) -> Result<CommandResult, CliError> {
    let s = &l.surface;
    let e = l.expr(&parse_expr(divisor)?)?;
    let tau = s.torsion_group().element(&parse_ints(torsion)?)?;
    let classes = s.cover().pushforward(&e, &tau)?;
    let chars: Vec<_> = s.cover().group().g_part().characters().collect();
    let mut text = format!("phi_* O_X({divisor}) (x) {tau}\n");
    let mut rows = Vec::new();
    for (chi, c) in chars.iter().zip(&classes) {
        writeln!(text, "  chi = {chi}: {}", sheaf(c)).unwrap();
        rows.push(json!({"character": chi.coeffs(), "class": c.0}));
    }
    let mut tally: BTreeMap<&DivClass, usize> = BTreeMap::new();
    for c in &classes {
        *tally.entry(c).or_default() += 1;
    }
    // Largest class first, as sums are usually written.
    let summary: Vec<String> = tally
        .iter()
        .rev()
        .map(|(c, k)| if *k == 1 { sheaf(c) } else { format!("{k}*{}", sheaf(c)) })
        .collect();
    writeln!(text, "  total: {}", summary.join(" + ")).unwrap();
    Ok(CommandResult::ok(text, json!({"torsion": elem_json(&tau), "summands": rows})))
}

fn decomp(s: &Surface, degree: &str) -> Result<CommandResult, CliError> {
    let d = DivClass(parse_ints(degree)?);
    let sg = s.x()?.semigroup();
    if d.rank() != s.rank() {
        return Err(CliError::Usage(format!("multidegree needs {} entries", s.rank())));
    }
    let decs = sg.decompositions(&d);
    let grp = s.torsion_group();
    let mut text = format!("{} decompositions of {d}\n", decs.len());
    let mut rows = Vec::new();
    for c in &decs {
        let mut parts = Vec::new();
        let mut t = grp.identity();
        for (k, (name, g)) in c.iter().zip(sg.generators()) {
            if *k > 0 {
                parts.push(if *k == 1 { name.clone() } else { format!("{k}{name}") });
                t = grp.add(&t, &grp.scale(*k as i64, &g.torsion));
            }
        }
        let label = if parts.is_empty() { "0".to_string() } else { parts.join("+") };
        writeln!(text, "  {label}  {t}").unwrap();
        rows.push(json!({"terms": label, "coefficients": c, "torsion": elem_json(&t)}));
    }
    let image = sg.torsion_image(&d);
    writeln!(text, "torsion image: {}", join(&image)).unwrap();
    Ok(CommandResult::ok(
        text,
        json!({"multidegree": d.0, "decompositions": rows, "torsion_image": image.iter().map(elem_json).collect::<Vec<_>>()}),
    ))
}

/// Every exceptional twist tuple, sorted, with the search split over `tau_1`.
pub fn enumerate(ctx: &Context, s: &Surface, lambda: &[DivClass]) -> Result<Vec<Vec<GroupElement>>, CliError> {
    let l = lift_numerical(lambda);
    let search = TwistSearch::new(s, &l, AcyclicMethod::Semigroup)?;
    let firsts = search.first_candidates();
    let parts: Vec<Vec<Vec<usize>>> =
        ctx.pool.install(|| firsts.par_iter().map(|&t| search.search_from(t)).collect());
    let mut out: Vec<Vec<GroupElement>> = parts.concat().iter().map(|t| search.to_elements(t)).collect();
    out.sort();
    Ok(out)
}

fn enumerate_serial(s: &Surface, lambda: &[DivClass]) -> Result<Vec<Vec<GroupElement>>, CliError> {
    let l = lift_numerical(lambda);
    let search = TwistSearch::new(s, &l, AcyclicMethod::Semigroup)?;
    Ok(search.all().iter().map(|t| search.to_elements(t)).collect())
}

pub fn numerical_spec(l: &LoadedSurface, spec: &str) -> Result<Vec<DivClass>, CliError> {
    if let Some(p) = l.numerical_preset(spec) {
        return Ok(p);
    }
    if !spec.contains(',') && !spec.contains(';') {
        return Err(CliError::Usage(format!(
            "surface `{}` has no numerical preset `{spec}`",
            l.doc.name
        )));
    }
    let classes = parse_class_list(spec)?;
    if let Some(c) = classes.iter().find(|c| c.len() != l.surface.rank()) {
        return Err(CliError::Usage(format!("class {c:?} needs {} entries", l.surface.rank())));
    }
    Ok(classes.into_iter().map(DivClass).collect())
}

pub fn collection_spec(ctx: &Context, l: &LoadedSurface, spec: &str) -> Result<Vec<LineBundleX>, CliError> {
    let s = &l.surface;
    match parse_collection(spec)? {
        CollectionSpec::Enumerated { numerical, index } => {
            let lambda = numerical_spec(l, &numerical)?;
            let tuples = enumerate(ctx, s, &lambda)?;
            let taus = index
                .checked_sub(1)
                .and_then(|i| tuples.get(i))
                .ok_or_else(|| CliError::Usage(format!("`{numerical}` has {} twist tuples; #{index} is out of range", tuples.len())))?;
            Ok(twisted_collection(s, &lift_numerical(&lambda), taus)?)
        }
        CollectionSpec::Explicit(items) => items
            .iter()
            .map(|(d, t)| {
                if d.len() != s.rank() {
                    return Err(CliError::Usage(format!("multidegree {d:?} needs {} entries", s.rank())));
                }
                Ok(s.bundle(d, t)?)
            })
            .collect(),
    }
}

fn bundle(s: &Surface, degree: &str, torsion: &str) -> Result<LineBundleX, CliError> {
    let d = parse_ints(degree)?;
    if d.len() != s.rank() {
        return Err(CliError::Usage(format!("multidegree needs {} entries", s.rank())));
    }
    let t = parse_ints(torsion)?;
    let t = if t.is_empty() { vec![0; s.torsion_group().rank()] } else { t };
    Ok(s.bundle(&d, &t)?)
}

fn collection_text(e: &[LineBundleX]) -> String {
    let mut text = String::new();
    for (i, b) in e.iter().enumerate() {
        writeln!(text, "E{i} = O_X{b}").unwrap();
    }
    text
}

fn sheaf(c: &DivClass) -> String {
    if c.is_zero() {
        "O".to_string()
    } else if c.rank() == 1 {
        format!("O({})", c.0[0])
    } else {
        format!("O{c}")
    }
}

fn join(ts: &[GroupElement]) -> String {
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn elem_json(t: &GroupElement) -> Value {
    json!(t.coeffs())
}

pub fn bundle_json(b: &LineBundleX) -> Value {
    json!({"multidegree": b.multidegree.0, "torsion": b.torsion.coeffs()})
}

pub fn dims_json(h: &CohomDims) -> Value {
    json!([h.h0, h.h1, h.h2])
}
