//! One PASS/FAIL line per acceptance criterion. Criteria 1-11 are published
//! values, checked by the reproduction suite; 12 runs the property suites
//! against independent oracles; 13 compares CLI output across thread counts.

use std::collections::BTreeMap;
use std::process::Command;

use fakedp::verify::CHECKS;
use fakedp::{Context, Registry};
use fakedp_core::cohom::cohomology_x;
use fakedp_core::effective::{is_effective_x, EffectivityMode, TorsionImages};
use fakedp_core::{
    BranchComponent, CoverData, DivClass, DivisorExprX, FinAbGroup, LineBundleX, PicLattice, Surface,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ctx: &Context, name: &str) -> Outcome {
    let (_, f) = CHECKS.iter().find(|(n, _)| *n == name).expect("check exists");
    f(ctx)
}

fn surfaces(ctx: &Context) -> Vec<&Surface> {
    ["kulikov", "burniat4", "burniat4n"]
        .iter()
        .map(|n| &ctx.surface(n).expect("bundled surface loads").surface)
        .collect()
}

fn dot(a: &DivClass, b: &DivClass) -> i64 {
    a.0.iter()
        .zip(&b.0)
        .enumerate()
        .map(|(i, (p, q))| if i == 0 { p * q } else { -p * q })
        .sum()
}

/// Riemann-Roch with `chi(O) = 1`, computed from the intersection form directly.
fn rr(k: &DivClass, d: &DivClass) -> i64 {
    1 + (dot(d, d) - dot(k, d)) / 2
}

fn random_bundle(s: &Surface, rng: &mut ChaCha8Rng) -> LineBundleX {
    let d = DivClass((0..s.rank()).map(|_| rng.gen_range(-4..=4)).collect());
    let t = s.torsion_group().element_at(rng.gen_range(0..s.torsion_group().cardinality()));
    LineBundleX::new(d, t)
}

fn chi_additivity(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    for s in surfaces(ctx) {
        let k_y = s.y().lattice().canonical();
        let k_x = &s.x().map_err(|e| e.to_string())?.canonical().multidegree;
        for _ in 0..1000 {
            let l = random_bundle(s, rng);
            let sum: i64 = s.pushforward_bundle(&l).map_err(|e| e.to_string())?.iter().map(|m| rr(k_y, m)).sum();
            if sum != rr(k_x, &l.multidegree) {
                return Err(format!("{}: {l}", s.name()));
            }
        }
    }
    Ok("3000 bundles".into())
}

fn serre_duality(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    for s in surfaces(ctx) {
        let k = s.x().map_err(|e| e.to_string())?.canonical().clone();
        for _ in 0..200 {
            let l = random_bundle(s, rng);
            let a = cohomology_x(s, &l).map_err(|e| e.to_string())?;
            let b = cohomology_x(s, &s.sub(&k, &l)).map_err(|e| e.to_string())?;
            if a != b.reversed() {
                return Err(format!("{}: {l} has {a:?}, dual {b:?}", s.name()));
            }
        }
    }
    Ok("600 bundles".into())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Lines in the plane, cyclic group `Z/n`; the pushforward of `k L0` against
/// the closed form with `S = {n-k, ..., n-1}`.
fn cyclic_oracle(rng: &mut ChaCha8Rng) -> Outcome {
    let mut tried = 0;
    while tried < 300 {
        let n: u32 = rng.gen_range(2..=7);
        let units: Vec<u32> = (1..n).filter(|u| gcd(*u, n) == 1).collect();
        let unit = *units.choose(rng).unwrap();
        let mut psi: Vec<u32> = vec![unit];
        for _ in 0..rng.gen_range(1..5) {
            psi.push(rng.gen_range(1..n));
        }
        let last = (n - psi.iter().sum::<u32>() % n) % n;
        if last == 0 {
            continue;
        }
        psi.push(last);
        tried += 1;
        let group = FinAbGroup::new(vec![n], 1).map_err(|e| e.to_string())?;
        let branches = psi
            .iter()
            .enumerate()
            .map(|(j, &p)| BranchComponent {
                name: format!("L{j}"),
                class: DivClass(vec![1]),
                psi: group.element(&[p as i64]).unwrap(),
            })
            .collect();
        let lat = PicLattice::new(DivClass(vec![-3])).unwrap();
        let cover = CoverData::new(group, lat, branches, vec![], vec![]).map_err(|e| e.to_string())?;
        let k = rng.gen_range(0..n) as i64;
        let tau = FinAbGroup::new(vec![], 0).unwrap().identity();
        let got = cover.pushforward(&DivisorExprX::new().with("L0", k), &tau).map_err(|e| e.to_string())?;
        for (i, m) in got.iter().enumerate() {
            let sheaf: u32 = psi.iter().map(|&p| (i as u32 * p) % n).sum::<u32>() / n;
            let restricted = (i as u32 * unit) % n;
            let in_s = k > 0 && restricted >= n - k as u32;
            if m.0 != vec![-(sheaf as i64) + in_s as i64] {
                return Err(format!("n={n}, psi={psi:?}, k={k}, character {i}: got {m}"));
            }
        }
    }
    Ok("300 cyclic covers".into())
}

fn canonical_pushforward(ctx: &Context) -> Outcome {
    for s in surfaces(ctx) {
        let g = s.cover().group();
        let gp = g.g_part();
        let t0 = s.torsion_group().identity();
        let ky = s.y().lattice().canonical();
        let mut want: Vec<DivClass> = gp
            .characters()
            .map(|c| &s.cover().character_sheaf(&g.join_character(&gp.neg_character(&c), &t0).unwrap()).unwrap() + ky)
            .collect();
        want.sort();
        let mut got = s.pushforward_bundle(s.x().unwrap().canonical()).map_err(|e| e.to_string())?;
        got.sort();
        if got != want {
            return Err(format!("{}: {got:?} != {want:?}", s.name()));
        }
    }
    Ok("3 surfaces".into())
}

fn effectivity_exhaustive(ctx: &Context) -> Outcome {
    const BOUND: i64 = 6;
    let mut total = 0usize;
    for s in surfaces(ctx) {
        let x = s.x().map_err(|e| e.to_string())?;
        let rank = s.rank();
        let ample = x.semigroup().ample().clone();
        let mut memo = TorsionImages::new();
        // Nef pullbacks e0 and e0 - e_i bound effective classes below.
        let mut tail = vec![0i64; rank - 1];
        for d0 in 0..=BOUND {
            tail.iter_mut().for_each(|t| *t = -d0);
            loop {
                let mut d = vec![d0];
                d.extend_from_slice(&tail);
                let d = DivClass(d);
                if (0..=BOUND).contains(&dot(&ample, &d)) {
                    for t in s.torsion_elements() {
                        let l = LineBundleX::new(d.clone(), t);
                        is_effective_x(s.cover(), s.y(), x.semigroup(), &l, EffectivityMode::Both, &mut memo)
                            .map_err(|e| format!("{}: {e}", s.name()))?;
                        total += 1;
                    }
                }
                match tail.iter().position(|&t| t < BOUND) {
                    Some(j) => {
                        tail[j] += 1;
                        tail[..j].iter_mut().for_each(|t| *t = -d0);
                    }
                    None => break,
                }
            }
        }
    }
    Ok(format!("{total} bundles agree"))
}

fn h0_order_invariance(ctx: &Context, rng: &mut ChaCha8Rng) -> Outcome {
    for s in surfaces(ctx) {
        let y = s.y();
        let mut order: Vec<usize> = (0..y.neg_curves().len()).collect();
        for _ in 0..500 {
            let d = DivClass((0..s.rank()).map(|_| rng.gen_range(-5..=5)).collect());
            order.shuffle(rng);
            let a = y.h0(&d).map_err(|e| e.to_string())?;
            let b = y.h0_with_order(&d, &order).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("{}: h0{d} = {a} vs {b} with order {order:?}", s.name()));
            }
        }
    }
    Ok("1500 classes".into())
}

fn properties(ctx: &Context) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let parts: [(&str, Outcome); 6] = [
        ("a", chi_additivity(ctx, &mut rng)),
        ("b", serre_duality(ctx, &mut rng)),
        ("c", cyclic_oracle(&mut rng)),
        ("d", canonical_pushforward(ctx)),
        ("e", effectivity_exhaustive(ctx)),
        ("f", h0_order_invariance(ctx, &mut rng)),
    ];
    let mut summary = Vec::new();
    for (tag, r) in parts {
        match r {
            Ok(s) => summary.push(format!("({tag}) {s}")),
            Err(e) => return Err(format!("({tag}) {e}")),
        }
    }
    Ok(summary.join("; "))
}

fn determinism() -> Outcome {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_fakedp"))
            .args(["--json", "verify", "--suite", "paper", "--jobs", jobs])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run("1")?, run("8")?);
    if !a.status.success() {
        return Err(format!("verify exited with {}", a.status));
    }
    if a.stdout != b.stdout {
        return Err("--jobs 1 and --jobs 8 outputs differ".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn burniat_load(ctx: &Context) -> Outcome {
    // Loading already cross-checked every declared coordinate; the suite re-derives them.
    for name in ["burniat4", "burniat4n"] {
        let l = ctx.surface(name).map_err(|e| e.to_string())?;
        if l.doc.declared.coordinates.len() != 9 || l.doc.declared.canonical_x.is_none() {
            return Err(format!("{name} does not declare the full coordinate table"));
        }
    }
    check(ctx, "burniat4-coordinates")
}

#[test]
fn acceptance() {
    let ctx = Context::new(Registry::bundled(), None).unwrap();
    let criteria: Vec<(u32, &str, Outcome)> = vec![
        (1, "Campedelli pushforwards", check(&ctx, "campedelli-pushforward")),
        (2, "Kulikov pushforward table", check(&ctx, "kulikov-pushforward")),
        (3, "Kulikov coordinates and canonical class", check(&ctx, "kulikov-coordinates")),
        (4, "Kulikov acyclic sets by both methods", check(&ctx, "kulikov-acyclic-sets")),
        (5, "Kulikov exceptional twists", check(&ctx, "kulikov-twists")),
        (6, "Kulikov Ext table", check(&ctx, "kulikov-ext-table")),
        (7, "Pseudoheight and formality", check(&ctx, "kulikov-pseudoheight")),
        (8, "Weyl orbit counts", check(&ctx, "kulikov-weyl-orbit")),
        (9, "Burniat coordinate tables", burniat_load(&ctx)),
        (10, "Nodal Burniat cone", check(&ctx, "burniat4n-cone")),
        (11, "Nodal Burniat effectivity", check(&ctx, "burniat4n-effectivity")),
        (12, "Property suites", properties(&ctx)),
        (13, "Determinism across thread counts", determinism()),
    ];
    let mut failed = BTreeMap::new();
    for (n, name, r) in &criteria {
        match r {
            Ok(s) => println!("PASS {n:>2} {name}: {s}"),
            Err(e) => {
                println!("FAIL {n:>2} {name}: {e}");
                failed.insert(*n, e.clone());
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed.keys().collect::<Vec<_>>());
}
