//! The reproduction suite: each check recomputes a published table or value
//! from the bundled surfaces and compares it with the transcribed expectation.

use std::collections::BTreeSet;
use std::fmt::{Debug, Write as _};

use fakedp_core::cohom::{acyclic_set, ext_table, extend_anticanonically};
use fakedp_core::collections::{formality_check, is_exceptional, lift_numerical, pseudoheight, twisted_collection, weyl_orbit, DEFAULT_ORBIT_CAP};
use fakedp_core::effective::{is_effective_x, EffectivityMode, TorsionImages};
use fakedp_core::{AcyclicMethod, CohomDims, DivClass, GroupElement, LineBundleX, Surface};
use rayon::prelude::*;
use serde_json::json;

use crate::commands::{enumerate, CommandResult, Context};

type Check = fn(&Context) -> Result<String, String>;

pub const CHECKS: [(&str, Check); 11] = [
    ("campedelli-pushforward", campedelli_pushforward),
    ("kulikov-pushforward", kulikov_pushforward),
    ("kulikov-coordinates", kulikov_coordinates),
    ("kulikov-acyclic-sets", kulikov_acyclic_sets),
    ("kulikov-twists", kulikov_twists),
    ("kulikov-ext-table", kulikov_ext_table),
    ("kulikov-pseudoheight", kulikov_pseudoheight),
    ("kulikov-weyl-orbit", kulikov_weyl_orbit),
    ("burniat4-coordinates", burniat_coordinates),
    ("burniat4n-cone", burniat_cone),
    ("burniat4n-effectivity", burniat_effectivity),
];

/// Runs the checks whose names contain `filter`, in parallel, reporting in suite order.
pub fn run(ctx: &Context, filter: Option<&str>) -> CommandResult {
    let selected: Vec<&(&str, Check)> = CHECKS
        .iter()
        .filter(|(n, _)| filter.is_none_or(|f| n.contains(f)))
        .collect();
    let results: Vec<(&str, Result<String, String>)> =
        ctx.pool.install(|| selected.par_iter().map(|(n, f)| (*n, f(ctx))).collect());
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = 0;
    for (name, r) in &results {
        let (status, detail) = match r {
            Ok(s) => ("PASS", s.as_str()),
            Err(s) => {
                failed += 1;
                ("FAIL", s.as_str())
            }
        };
        writeln!(text, "{status} {name}: {}", detail.lines().next().unwrap_or("")).unwrap();
        for extra in detail.lines().skip(1) {
            writeln!(text, "    {extra}").unwrap();
        }
        rows.push(json!({"name": name, "status": status, "detail": detail}));
    }
    writeln!(text, "{} passed, {failed} failed", results.len() - failed).unwrap();
    CommandResult {
        code: if failed > 0 { 1 } else { 0 },
        text,
        json: json!({"suite": "paper", "passed": results.len() - failed, "failed": failed, "checks": rows}),
    }
}

fn surface<'a>(ctx: &'a Context, name: &str) -> Result<&'a Surface, String> {
    ctx.surface(name).map(|l| &l.surface).map_err(|e| e.to_string())
}

fn same<T: Debug + PartialEq>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what} differs\n- expected {want:?}\n+ computed {got:?}"))
    }
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn elem(s: &Surface, t: &[i64]) -> Result<GroupElement, String> {
    s.torsion_group().element(t).map_err(err)
}

fn classes(rows: &[&[i64]]) -> Vec<DivClass> {
    rows.iter().map(|r| DivClass(r.to_vec())).collect()
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn campedelli_pushforward(ctx: &Context) -> Result<String, String> {
    let l = ctx.surface("campedelli").map_err(err)?;
    let s = &l.surface;
    let e = l.expr(&[("D1".into(), 1)]).map_err(err)?;
    let want = sorted(classes(&[&[0], &[-1], &[-1], &[-1], &[-1], &[-2], &[-2], &[-2]]));
    for t in [[0, 0, 0], [1, 0, 0]] {
        let got = sorted(s.cover().pushforward(&e, &elem(s, &t)?).map_err(err)?);
        same(&format!("phi_* O(D1) (x) {t:?}"), got, want.clone())?;
    }
    Ok("O + 4*O(-1) + 3*O(-2) with and without the twist".into())
}

fn kulikov_pushforward(ctx: &Context) -> Result<String, String> {
    let l = ctx.surface("kulikov").map_err(err)?;
    let s = &l.surface;
    let terms = [("D1", -1), ("D2", 1), ("E1", 1), ("E2", -1)].map(|(n, k)| (n.to_string(), k));
    let e = l.expr(&terms).map_err(err)?;
    let got = s.cover().pushforward(&e, &elem(s, &[1, 0, 2])?).map_err(err)?;
    let want = classes(&[
        &[-3, 1, 2, 1],
        &[-3, 1, 1, 2],
        &[-3, 2, 1, 1],
        &[0, 0, 0, 0],
        &[-1, 0, 0, 0],
        &[-2, 0, 0, 0],
        &[-2, 0, 1, 1],
        &[-2, 1, 1, 0],
        &[-2, 1, 0, 1],
    ]);
    same("M_chi", &got, &want)?;
    let trivial: Vec<usize> = (0..got.len()).filter(|&i| got[i].is_zero()).collect();
    same("characters with M_chi = O_Y", trivial, vec![3])?;
    Ok("nine summands; M_(1,0) = O_Y".into())
}

fn kulikov_coordinates(ctx: &Context) -> Result<String, String> {
    let l = ctx.surface("kulikov").map_err(err)?;
    let s = &l.surface;
    let rows: [(&str, [i64; 4], [i64; 3]); 6] = [
        ("D1", [1, 0, -1, -1], [0, 0, 0]),
        ("D2", [1, -1, 0, -1], [1, 0, 2]),
        ("D3", [1, -1, -1, 0], [2, 0, 2]),
        ("D4", [1, -1, 0, 0], [2, 1, 2]),
        ("D5", [1, 0, -1, 0], [2, 1, 0]),
        ("D6", [1, 0, 0, -1], [2, 1, 1]),
    ];
    for (n, d, t) in rows {
        let e = l.expr(&[(n.to_string(), 1)]).map_err(err)?;
        let got = s.cover().coordinates_of(s.y(), &e).map_err(err)?;
        same(&format!("O_X({n})"), got, s.bundle(&d, &t).map_err(err)?)?;
    }
    let k = s.x().map_err(err)?.canonical().clone();
    same("K_X", k, s.bundle(&[3, -1, -1, -1], &[0, 0, 2]).map_err(err)?)?;
    Ok("six components and K_X = (3,-1,-1,-1)[0,0,2]".into())
}

/// `A(L_j^{-1} (x) L_i)` for the default numerical collection, keyed by `(i, j)`.
const KULIKOV_ACYCLIC: [((usize, usize), &[[i64; 3]]); 15] = [
    ((0, 1), &[[0,0,0],[0,1,0],[1,1,0],[2,1,0],[2,2,0],[1,0,1],[2,0,1],[0,1,1],[1,1,1],[0,2,1],[2,2,1],[0,1,2],[1,1,2],[0,2,2]]),
    ((0, 2), &[[0,1,0],[1,1,0],[2,2,0],[2,0,1],[0,1,1],[1,1,1],[2,1,1],[1,2,1],[2,2,1],[0,0,2],[1,0,2],[0,1,2],[1,1,2],[1,2,2]]),
    ((0, 3), &[[0,1,0],[1,1,0],[1,0,1],[0,1,1],[1,1,1],[0,2,1],[1,2,1],[0,0,2],[2,0,2],[0,1,2],[1,1,2],[2,1,2],[0,2,2],[1,2,2]]),
    ((0, 4), &[[0,0,0],[0,1,0],[2,1,0],[0,2,0],[2,2,0],[1,0,1],[2,0,1],[0,1,1],[1,1,1],[2,1,1],[0,2,1],[2,2,1],[1,1,2],[0,2,2],[2,2,2]]),
    ((0, 5), &[[0,1,0],[1,1,0],[2,2,0],[1,0,1],[2,0,1],[0,1,1],[1,1,1],[0,2,1],[1,2,1],[2,2,1],[0,0,2],[0,1,2],[1,1,2],[0,2,2],[1,2,2]]),
    ((1, 2), &[[1,0,0],[2,0,0],[2,1,0],[0,1,1],[0,1,2],[2,1,2],[0,2,2]]),
    ((1, 3), &[[0,0,0],[1,0,0],[2,0,0],[1,1,0],[2,1,0],[2,2,0],[1,1,2],[2,1,2],[2,2,2]]),
    ((1, 4), &[[0,1,0],[1,1,0],[0,1,1],[1,1,1],[1,2,1],[0,0,2],[1,0,2],[2,0,2],[0,1,2],[1,1,2],[1,2,2]]),
    ((1, 5), &[[1,0,0],[2,0,0],[1,1,0],[2,1,0],[2,2,0],[0,1,1],[0,0,2],[0,1,2],[1,1,2],[2,1,2],[0,2,2],[2,2,2]]),
    ((2, 3), &[[1,0,1],[1,1,1],[2,1,1],[2,0,2],[1,1,2],[2,1,2],[1,2,2]]),
    ((2, 4), &[[0,0,0],[0,1,0],[1,1,0],[1,0,1],[0,1,1],[1,1,1],[0,2,1],[2,0,2],[0,1,2],[1,1,2],[0,2,2]]),
    ((2, 5), &[[0,1,0],[1,0,1],[0,1,1],[1,1,1],[2,1,1],[0,2,1],[0,0,2],[2,0,2],[1,1,2],[2,1,2],[0,2,2],[1,2,2]]),
    ((3, 4), &[[0,0,0],[0,1,0],[1,1,0],[2,2,0],[2,0,1],[0,1,1],[1,1,1],[2,2,1],[1,0,2],[0,1,2],[1,1,2]]),
    ((3, 5), &[[0,1,0],[1,1,0],[2,1,0],[2,2,0],[2,0,1],[1,1,1],[2,1,1],[1,2,1],[0,0,2],[1,0,2],[0,1,2],[1,2,2]]),
    ((4, 5), &[[1,0,0],[2,0,0],[1,1,0],[2,2,0],[0,0,2],[0,1,2],[2,1,2],[2,2,2]]),
];

fn kulikov_lambda(ctx: &Context) -> Result<Vec<DivClass>, String> {
    ctx.surface("kulikov")
        .map_err(err)?
        .numerical_preset("default")
        .ok_or_else(|| "kulikov has no `default` numerical preset".to_string())
}

fn kulikov_acyclic_sets(ctx: &Context) -> Result<String, String> {
    let s = surface(ctx, "kulikov")?;
    let l = lift_numerical(&kulikov_lambda(ctx)?);
    for ((i, j), want) in KULIKOV_ACYCLIC {
        let d = &l[i] - &l[j];
        let want: BTreeSet<GroupElement> = want.iter().map(|t| elem(s, t)).collect::<Result<_, _>>()?;
        for method in [AcyclicMethod::Semigroup, AcyclicMethod::Pushforward] {
            let got: BTreeSet<GroupElement> = acyclic_set(s, &d, method).map_err(err)?.into_iter().collect();
            same(&format!("A(L{j}^-1 L{i}) by {method:?}"), &got, &want)?;
        }
    }
    Ok("15 acyclic sets, both methods".into())
}

const ROWS: [[[i64; 3]; 5]; 9] = [
    [[0, 0, 0], [0, 2, 2], [2, 2, 1], [2, 2, 1], [0, 0, 1]],
    [[2, 2, 0], [2, 1, 2], [0, 0, 1], [1, 1, 1], [2, 2, 1]],
    [[2, 2, 1], [2, 1, 2], [0, 0, 1], [1, 1, 1], [2, 0, 2]],
    [[2, 2, 0], [2, 0, 1], [0, 2, 0], [2, 2, 1], [2, 1, 2]],
    [[1, 1, 0], [1, 0, 2], [2, 2, 0], [1, 1, 1], [2, 2, 1]],
    [[1, 1, 0], [1, 0, 2], [0, 0, 1], [1, 1, 1], [2, 2, 1]],
    [[1, 1, 0], [1, 0, 2], [2, 2, 1], [1, 1, 1], [0, 0, 1]],
    [[2, 0, 2], [2, 2, 0], [0, 1, 2], [1, 1, 1], [2, 2, 1]],
    [[2, 0, 2], [2, 2, 1], [0, 1, 2], [1, 1, 1], [1, 0, 2]],
];

fn kulikov_twists(ctx: &Context) -> Result<String, String> {
    let s = surface(ctx, "kulikov")?;
    let got: BTreeSet<Vec<GroupElement>> = enumerate(ctx, s, &kulikov_lambda(ctx)?).map_err(err)?.into_iter().collect();
    let want: BTreeSet<Vec<GroupElement>> = ROWS
        .iter()
        .map(|r| r.iter().map(|t| elem(s, t)).collect())
        .collect::<Result<_, _>>()?;
    same("exceptional twist tuples", got, want)?;
    Ok("nine twist tuples".into())
}

fn quasiphantom_collection(ctx: &Context, s: &Surface) -> Result<Vec<LineBundleX>, String> {
    let taus: Vec<GroupElement> = ROWS[1].iter().map(|t| elem(s, t)).collect::<Result<_, _>>()?;
    twisted_collection(s, &lift_numerical(&kulikov_lambda(ctx)?), &taus).map_err(err)
}

fn kulikov_ext_table(ctx: &Context) -> Result<String, String> {
    let s = surface(ctx, "kulikov")?;
    let e = quasiphantom_collection(ctx, s)?;
    if !is_exceptional(s, &e).map_err(err)? {
        return Err("collection is not exceptional".into());
    }
    let table = ext_table(s, &e).map_err(err)?;
    let z = CohomDims::ZERO;
    let c = CohomDims::new;
    let want = vec![
        vec![c(1, 0, 0), c(0, 0, 2), c(0, 0, 2), c(0, 0, 2), c(0, 0, 3), c(0, 0, 3)],
        vec![c(1, 0, 0), z, z, c(0, 2, 3), c(0, 1, 2), c(0, 0, 4)],
        vec![c(1, 0, 0), z, c(0, 0, 1), c(0, 0, 1), c(0, 0, 4), c(0, 0, 6)],
        vec![c(1, 0, 0), c(0, 0, 1), c(0, 0, 1), c(0, 0, 4), c(0, 0, 6), c(0, 0, 6)],
        vec![c(1, 0, 0), z, c(0, 0, 3), c(0, 0, 5), c(0, 0, 5), c(0, 0, 5)],
        vec![c(1, 0, 0), c(0, 0, 3), c(0, 0, 5), c(0, 0, 5), c(0, 0, 5), c(0, 0, 6)],
    ];
    same("Ext table", table.zigzag(), want)?;
    let n = e.len();
    let ext1: Vec<(usize, usize, u64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .map(|(i, j)| (i, j, table.get(i, j).h1))
        .filter(|&(_, _, h)| h > 0)
        .collect();
    same("nonzero Ext^1 within the collection", ext1, vec![(1, 4, 2), (1, 5, 1)])?;
    Ok("36 entries; Ext^1 only at (E1,E4) and (E1,E5)".into())
}

fn kulikov_pseudoheight(ctx: &Context) -> Result<String, String> {
    let s = surface(ctx, "kulikov")?;
    let e = quasiphantom_collection(ctx, s)?;
    let table = ext_table(s, &e).map_err(err)?;
    let ext = extend_anticanonically(s, &e).map_err(err)?;
    let ph = pseudoheight(&table, s.x().map_err(err)?.lattice(), &ext).map_err(err)?;
    same("pseudoheight", ph.value, Some(4))?;
    if !ph.chains.contains(&vec![1, 4]) {
        return Err(format!("chain (E1,E4) is not minimal; minimal chains {:?}", ph.chains));
    }
    same("formal", formality_check(&table).formal, true)?;
    Ok("pseudoheight 4 via (E1,E4); formal".into())
}

fn kulikov_weyl_orbit(ctx: &Context) -> Result<String, String> {
    let s = surface(ctx, "kulikov")?;
    let orbit = weyl_orbit(s.y().lattice(), &kulikov_lambda(ctx)?, DEFAULT_ORBIT_CAP).map_err(err)?;
    let mut counts = BTreeSet::new();
    for lam in &orbit {
        counts.insert(enumerate(ctx, s, lam).map_err(err)?.len());
    }
    same("twist counts over the orbit", counts, BTreeSet::from([9, 14, 18, 24]))?;
    Ok(format!("{} orbit elements; counts 9, 14, 18, 24", orbit.len()))
}

fn burniat_coordinates(ctx: &Context) -> Result<String, String> {
    let table: [(&str, [i64; 6], [i64; 4]); 9] = [
        ("A0", [1, -1, -1, 0, 0, 0], [1, 1, 0, 0]),
        ("A1", [1, -1, 0, 0, -1, 0], [1, 0, 0, 0]),
        ("A2", [1, -1, 0, 0, 0, -1], [0, 1, 1, 0]),
        ("B0", [1, 0, -1, -1, 0, 0], [0, 0, 1, 1]),
        ("B1", [1, 0, -1, 0, -1, 0], [0, 0, 1, 0]),
        ("B2", [1, 0, -1, 0, 0, -1], [0, 0, 1, 1]),
        ("C0", [1, -1, 0, -1, 0, 0], [0, 0, 0, 0]),
        ("C1", [1, 0, 0, -1, 0, -1], [0, 0, 1, 0]),
        ("C2", [1, 0, 0, -1, -1, 0], [0, 0, 0, 0]),
    ];
    let nodal: [(&str, [i64; 6], [i64; 4]); 2] = [
        ("A1", [1, -1, 0, 0, -1, -1], [1, 0, 1, 0]),
        ("A2", [1, -1, 0, 0, 0, 0], [0, 1, 0, 0]),
    ];
    for name in ["burniat4", "burniat4n"] {
        let l = ctx.surface(name).map_err(err)?;
        let s = &l.surface;
        for (n, d, t) in table {
            let (d, t) = match nodal.iter().find(|r| name == "burniat4n" && r.0 == n) {
                Some(r) => (r.1, r.2),
                None => (d, t),
            };
            let e = l.expr(&[(n.to_string(), 1)]).map_err(err)?;
            let got = s.cover().coordinates_of(s.y(), &e).map_err(err)?;
            same(&format!("{name}: O_X({n})"), got, s.bundle(&d, &t).map_err(err)?)?;
        }
        let k = s.x().map_err(err)?.canonical().clone();
        same(&format!("{name}: K_X"), k, s.bundle(&[3, -1, -1, -1, -1, -1], &[0, 0, 1, 0]).map_err(err)?)?;
    }
    Ok("both coordinate tables; K_X = (3,-1,-1,-1,-1,-1)[0,0,1,0]".into())
}

fn burniat_cone(ctx: &Context) -> Result<String, String> {
    let s = surface(ctx, "burniat4n")?;
    let got: BTreeSet<DivClass> = s.x().map_err(err)?.semigroup().cone_extreme_rays().map_err(err)?.into_iter().collect();
    let e = |i: usize| DivClass::basis(6, i);
    let h0 = e(0);
    let mut want = BTreeSet::from([h0.clone()]);
    for i in 1..=5 {
        want.insert(&h0 - &e(i));
    }
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        (0u32..32).filter(|m| m.count_ones() as usize == k).map(|m| (1..=5).filter(|i| m >> (i - 1) & 1 == 1).collect()).collect()
    };
    for set in subsets(3).into_iter().chain(subsets(4)) {
        if [1, 4, 5].iter().all(|i| set.contains(i)) {
            continue;
        }
        let mut c = h0.scale(2);
        for &i in &set {
            c = &c - &e(i);
        }
        want.insert(c);
    }
    for g in [[3, -1, -2, -1, -1, -1], [3, -1, -1, -2, -1, -1], [3, -1, -2, 0, -1, -1], [3, -1, 0, -2, -1, -1]] {
        want.insert(DivClass(g.to_vec()));
    }
    same("extreme rays", got, want)?;
    Ok("22 extreme rays".into())
}

fn burniat_effectivity(ctx: &Context) -> Result<String, String> {
    let s = surface(ctx, "burniat4n")?;
    let x = s.x().map_err(err)?;
    let sg = x.semigroup();
    let k_a1 = DivClass(vec![4, -2, -1, -1, -2, -2]);
    let image: BTreeSet<GroupElement> = sg.torsion_image(&k_a1).into_iter().collect();
    let mut rest: BTreeSet<GroupElement> = s.torsion_elements().into_iter().collect();
    rest.remove(&elem(s, &[1, 0, 0, 0])?);
    same("t(E(4,-2,-1,-1,-2,-2))", image, rest)?;

    let mut memo = TorsionImages::new();
    let cases: [([i64; 6], [i64; 4], [&[i64]; 4]); 2] = [
        ([4, -2, -1, -1, -2, -2], [1, 0, 0, 0], [&[0, -1, 1, 0, 0, 0], &[0, 0, -1, 1, 0, 0], &[-2, 0, 1, 1, 0, 0], &[1, 0, 0, -1, -1, -1]]),
        ([2, -2, 0, 0, 0, 0], [0, 0, 0, 1], [&[0, -1, 0, 0, 0, 1], &[-2, 1, 1, 1, 1, 1], &[-1, -1, 1, 1, 1, 0], &[-2, 0, 1, 1, 1, 1]]),
    ];
    for (d, t, want) in cases {
        let b = s.bundle(&d, &t).map_err(err)?;
        let got = sorted(s.pushforward_bundle(&b).map_err(err)?);
        same(&format!("phi_* O_X{b}"), got, sorted(classes(&want)))?;
        let eff = is_effective_x(s.cover(), s.y(), sg, &b, EffectivityMode::Both, &mut memo).map_err(err)?;
        same(&format!("effectivity of {b}"), eff, false)?;
    }

    let k = x.canonical();
    let mut shifts: Vec<DivClass> = sg
        .generators()
        .iter()
        .filter(|(n, _)| s.cover().branch_index(n).is_some())
        .map(|(_, g)| g.multidegree.clone())
        .collect();
    // Half pullbacks of the unramified curves.
    for h in [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 1]] {
        shifts.push(DivClass(h.to_vec()));
    }
    let exception = s.bundle(&[4, -2, -1, -1, -2, -2], &[1, 0, 0, 0]).map_err(err)?;
    let mut non_effective = Vec::new();
    for d in &shifts {
        for t in s.torsion_elements() {
            let b = LineBundleX::new(&k.multidegree + d, t);
            if !is_effective_x(s.cover(), s.y(), sg, &b, EffectivityMode::Both, &mut memo).map_err(err)? {
                non_effective.push(b);
            }
        }
    }
    same("non-effective K_X + gamma", non_effective, vec![exception])?;
    Ok(format!("only K_X + A1 fails among {} bundles K_X + gamma", shifts.len() * 16))
}
