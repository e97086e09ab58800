#![allow(dead_code)]

use fakedp_core::delpezzo::negative_curves;
use fakedp_core::{
    BranchComponent, CoverData, DivClass, DivisorExprX, FinAbGroup, PicLattice, Surface, SurfaceY,
    UnramifiedCurve,
};

pub fn class(c: &[i64]) -> DivClass {
    DivClass(c.to_vec())
}

pub fn expr(terms: &[(&str, i64)]) -> DivisorExprX {
    terms.iter().fold(DivisorExprX::new(), |e, (n, k)| e.with(n, *k))
}

fn sum_psi(group: &FinAbGroup, branches: &[BranchComponent], names: &[&str]) -> Vec<i64> {
    let mut acc = group.identity();
    for n in names {
        let b = branches.iter().find(|b| b.name == *n).unwrap();
        acc = group.add(&acc, &b.psi);
    }
    acc.coeffs().iter().map(|&c| c as i64).collect()
}

pub fn kulikov() -> Surface {
    let group = FinAbGroup::new(vec![3; 5], 2).unwrap();
    let data: [(&str, [i64; 4], [i64; 5]); 6] = [
        ("D1", [1, 0, -1, -1], [1, 0, 0, 0, 0]),
        ("D2", [1, -1, 0, -1], [1, 0, 1, 0, 0]),
        ("D3", [1, -1, -1, 0], [1, 0, 2, 1, 0]),
        ("D4", [1, -1, 0, 0], [0, 1, 0, 2, 0]),
        ("D5", [1, 0, -1, 0], [1, 1, 0, 0, 1]),
        ("D6", [1, 0, 0, -1], [2, 1, 0, 0, 2]),
    ];
    let mut branches: Vec<BranchComponent> = data
        .iter()
        .map(|(n, c, p)| BranchComponent {
            name: n.to_string(),
            class: class(c),
            psi: group.element(p).unwrap(),
        })
        .collect();
    let blowups: [(&str, usize, [&str; 3]); 3] = [
        ("E1", 1, ["D2", "D3", "D4"]),
        ("E2", 2, ["D1", "D3", "D5"]),
        ("E3", 3, ["D1", "D2", "D6"]),
    ];
    for (n, i, through) in blowups {
        let psi = sum_psi(&group, &branches, &through);
        branches.push(BranchComponent {
            name: n.into(),
            class: DivClass::basis(4, i),
            psi: group.element(&psi).unwrap(),
        });
    }
    let basis = vec![
        ("e0".to_string(), expr(&[("D1", 1), ("E2", 1), ("E3", 1)])),
        ("e1".to_string(), expr(&[("E1", 1)])),
        ("e2".to_string(), expr(&[("E2", 1)])),
        ("e3".to_string(), expr(&[("E3", 1)])),
    ];
    let lat = PicLattice::new(class(&[-3, 1, 1, 1])).unwrap();
    let cover = CoverData::new(group, lat.clone(), branches.clone(), vec![], basis).unwrap();
    let neg = negative_curves(&lat, &[]).unwrap();
    let y = SurfaceY::new(lat, neg, class(&[3, -1, -1, -1])).unwrap();
    let gens: Vec<_> = branches
        .iter()
        .map(|b| (b.name.clone(), expr(&[(&b.name, 1)])))
        .collect();
    Surface::new("kulikov", cover, y, &gens).unwrap()
}

/// Burniat surface with `K^2 = 4`; `nodal` selects the secondary nodal family.
pub fn burniat4(nodal: bool) -> Surface {
    let group = FinAbGroup::new(vec![2; 6], 2).unwrap();
    let g = |idx: &[usize]| {
        let mut v = vec![0i64; 6];
        for &i in idx {
            v[i - 1] ^= 1;
        }
        v
    };
    let c0_extra: &[usize] = if nodal { &[3, 4] } else { &[] };
    let c1_extra: &[usize] = if nodal { &[3, 6] } else { &[4, 6] };
    let a1 = if nodal { [1, -1, 0, 0, -1, -1] } else { [1, -1, 0, 0, -1, 0] };
    let a2 = if nodal { [1, -1, 0, 0, 0, 0] } else { [1, -1, 0, 0, 0, -1] };
    let data: Vec<(&str, [i64; 6], Vec<usize>)> = vec![
        ("A0", [1, -1, -1, 0, 0, 0], vec![1]),
        ("A1", a1, vec![1, 3]),
        ("A2", a2, vec![1, 4]),
        ("B0", [1, 0, -1, -1, 0, 0], vec![2]),
        ("B1", [1, 0, -1, 0, -1, 0], vec![2, 5]),
        ("B2", [1, 0, -1, 0, 0, -1], vec![2, 6]),
        ("C0", [1, -1, 0, -1, 0, 0], [&[1usize, 2][..], c0_extra].concat()),
        ("C1", [1, 0, 0, -1, 0, -1], [&[1usize, 2][..], c1_extra].concat()),
        ("C2", [1, 0, 0, -1, -1, 0], vec![1, 2, 3, 5]),
    ];
    let mut branches: Vec<BranchComponent> = data
        .iter()
        .map(|(n, c, idx)| BranchComponent {
            name: n.to_string(),
            class: class(c),
            psi: group.element(&g(idx)).unwrap(),
        })
        .collect();
    for i in 1..=3 {
        let through: Vec<&str> = data
            .iter()
            .filter(|(_, c, _)| c[i] == -1)
            .map(|(n, _, _)| *n)
            .collect();
        let psi = sum_psi(&group, &branches, &through);
        branches.push(BranchComponent {
            name: format!("E{i}"),
            class: DivClass::basis(6, i),
            psi: group.element(&psi).unwrap(),
        });
    }
    let mut unram = vec![
        UnramifiedCurve { name: "E4".into(), class: DivClass::basis(6, 4) },
        UnramifiedCurve { name: "E5".into(), class: DivClass::basis(6, 5) },
    ];
    if !nodal {
        // Without the (-2)-curve these (-1)-curves are irreducible and miss the branch locus.
        unram.push(UnramifiedCurve { name: "L45".into(), class: class(&[1, 0, 0, 0, -1, -1]) });
        unram.push(UnramifiedCurve { name: "Q".into(), class: class(&[2, -1, -1, -1, -1, -1]) });
    }
    let basis = vec![
        ("e0".to_string(), expr(&[("C0", 1), ("E1", 1), ("E3", 1)])),
        ("e1".to_string(), expr(&[("E1", 1)])),
        ("e2".to_string(), expr(&[("E2", 1)])),
        ("e3".to_string(), expr(&[("E3", 1)])),
        ("e4".to_string(), expr(&[("C0", 1), ("C2", -1), ("E1", 1)])),
        ("e5".to_string(), expr(&[("B0", 1), ("B2", -1), ("E3", 1)])),
    ];
    let lat = PicLattice::new(class(&[-3, 1, 1, 1, 1, 1])).unwrap();
    let cover = CoverData::new(group, lat.clone(), branches.clone(), unram.clone(), basis).unwrap();
    let roots = if nodal { vec![class(&[1, -1, 0, 0, -1, -1])] } else { vec![] };
    let neg = negative_curves(&lat, &roots).unwrap();
    let y = SurfaceY::new(lat, neg, class(&[4, -1, -1, -1, -1, -1])).unwrap();
    let mut gens: Vec<_> = branches
        .iter()
        .map(|b| (b.name.clone(), expr(&[(&b.name, 1)])))
        .collect();
    for u in &unram {
        gens.push((u.name.clone(), DivisorExprX::new().with_unramified(&u.name, 1)));
    }
    Surface::new(if nodal { "burniat4n" } else { "burniat4" }, cover, y, &gens).unwrap()
}

pub fn campedelli() -> Surface {
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
            name: format!("D{}", i + 1),
            class: class(&[1]),
            psi: group.element(p).unwrap(),
        })
        .collect();
    let lat = PicLattice::new(class(&[-3])).unwrap();
    let cover = CoverData::new(group, lat.clone(), branches, vec![], vec![]).unwrap();
    let y = SurfaceY::new(lat, vec![], class(&[1])).unwrap();
    Surface::cover_only("campedelli", cover, y)
}

/// The numerical collection `0, e0-e1, e0-e2, e0-e3, 2e0-e1-e2-e3, e0` on the Kulikov base.
pub fn kulikov_lambda() -> Vec<DivClass> {
    [
        [0, 0, 0, 0],
        [1, -1, 0, 0],
        [1, 0, -1, 0],
        [1, 0, 0, -1],
        [2, -1, -1, -1],
        [1, 0, 0, 0],
    ]
    .iter()
    .map(|c| class(c))
    .collect()
}
