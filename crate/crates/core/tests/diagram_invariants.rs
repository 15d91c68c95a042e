use std::collections::HashMap;

use graphhom::census;
use graphhom::diagram::{apply_move, enumerate_sites, find_inverse, random_moves, MoveKind, NodeRef};
use graphhom::invariants::{alexander, conway, determinant, fingerprint, jones, kauffman_bracket};
use graphhom::kauffman::family;
use graphhom::poly::{LaurentPoly, Var};
use graphhom::{Diagram, LinkDiagram};
use num_bigint::BigInt;
use proptest::prelude::*;

fn t(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(Var::T, terms)
}

/// Determinant of the Goeritz matrix from a checkerboard coloring, computed
/// without touching the skein code.
fn goeritz_determinant(d: &Diagram) -> i128 {
    let faces = d.faces();
    let mut sides_of_arc: HashMap<u32, Vec<usize>> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for s in &f.sides {
            sides_of_arc.entry(s.arc).or_default().push(fi);
        }
    }
    let mut color = vec![None; faces.len()];
    color[0] = Some(0u8);
    let mut stack = vec![0];
    while let Some(f) = stack.pop() {
        for s in &faces[f].sides {
            for &g in &sides_of_arc[&s.arc] {
                if g != f && color[g].is_none() {
                    color[g] = Some(1 - color[f].unwrap());
                    stack.push(g);
                }
            }
        }
    }
    let white: Vec<usize> = (0..faces.len()).filter(|&f| color[f] == Some(0)).collect();
    let idx: HashMap<usize, usize> = white.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    // White faces at each crossing, with the corner type.
    let mut at_crossing: HashMap<usize, Vec<(usize, i128)>> = HashMap::new();
    for &f in &white {
        for s in &faces[f].sides {
            if let NodeRef::Crossing(c) = s.to.node {
                let eta = if s.to.slot % 2 == 1 { 1 } else { -1 };
                at_crossing.entry(c).or_default().push((idx[&f], eta));
            }
        }
    }
    let n = white.len();
    let mut g = vec![vec![0i128; n]; n];
    for (_, ws) in at_crossing {
        assert_eq!(ws.len(), 2);
        let ((i, eta), (j, _)) = (ws[0], ws[1]);
        if i != j {
            g[i][j] -= eta;
            g[j][i] -= eta;
            g[i][i] += eta;
            g[j][j] += eta;
        }
    }
    let m: Vec<Vec<i128>> = g[1..].iter().map(|r| r[1..].to_vec()).collect();
    bareiss(m).abs()
}

fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[test]
fn split_components_examples() {
    assert_eq!(LinkDiagram::unknot().component_count(), 1);
    assert_eq!(census::link("L2a1").unwrap().component_count(), 2);
    let u = census::link("3_1").unwrap().disjoint_union(&LinkDiagram::unknot());
    assert_eq!(u.component_count(), 2);
    assert_eq!(census::link("L5a1").unwrap().component_count(), 2);
}

#[test]
fn determinant_matches_goeritz_on_census_knots() {
    for name in ["3_1", "4_1", "5_1", "5_2", "6_1", "7_1"] {
        let k = census::link(name).unwrap();
        let oracle = goeritz_determinant(k.diagram());
        assert_eq!(determinant(&k).unwrap(), BigInt::from(oracle), "{name}");
    }
}

#[test]
fn alexander_of_census_knots() {
    let expect = [
        ("3_1", t(&[(2, 1), (0, -1), (-2, 1)])),
        ("4_1", t(&[(2, 1), (0, -3), (-2, 1)])),
        ("5_1", t(&[(4, 1), (2, -1), (0, 1), (-2, -1), (-4, 1)])),
        ("5_2", t(&[(2, 2), (0, -3), (-2, 2)])),
        ("6_1", t(&[(2, 2), (0, -5), (-2, 2)])),
    ];
    for (name, a) in expect {
        let k = census::link(name).unwrap();
        let got = alexander(&k).unwrap();
        assert_eq!(got, a, "{name}");
        assert_eq!(got.invert(), got, "{name} symmetric");
    }
}

#[test]
fn figure_eight_jones_is_symmetric() {
    let k = census::link("4_1").unwrap();
    assert_eq!(jones(&k).unwrap(), t(&[(4, 1), (2, -1), (0, 1), (-2, -1), (-4, 1)]));
}

#[test]
fn mirror_inverts_jones() {
    for &name in census::LINK_NAMES {
        let l = census::link(name).unwrap();
        assert_eq!(jones(&l.mirror()).unwrap(), jones(&l).unwrap().invert(), "{name}");
    }
}

#[test]
fn union_multiplies_jones_by_circle_value() {
    let circle = t(&[(1, -1), (-1, -1)]);
    let names = ["0_1", "3_1", "4_1", "L2a1", "5_2"];
    for a in names {
        for b in names {
            let (la, lb) = (census::link(a).unwrap(), census::link(b).unwrap());
            let lhs = jones(&la.disjoint_union(&lb)).unwrap();
            let rhs = &(&jones(&la).unwrap() * &jones(&lb).unwrap()) * &circle;
            assert_eq!(lhs, rhs, "{a} + {b}");
        }
    }
}

#[test]
fn connected_sum_multiplies_jones_and_alexander() {
    let names = ["3_1", "4_1", "5_2"];
    for a in names {
        for b in names {
            let (la, lb) = (census::link(a).unwrap(), census::link(b).unwrap());
            let s = la.connected_sum(&lb);
            assert_eq!(s.component_count(), 1);
            assert_eq!(jones(&s).unwrap(), &jones(&la).unwrap() * &jones(&lb).unwrap(), "{a} # {b}");
            assert_eq!(alexander(&s).unwrap(), &alexander(&la).unwrap() * &alexander(&lb).unwrap(), "{a} # {b}");
        }
    }
}

#[test]
fn kink_on_unknot_scales_bracket() {
    let u = LinkDiagram::unknot();
    let trefoil = census::link("3_1").unwrap();
    for kink in graphhom::diagram::Kink::ALL {
        let arc = *trefoil.diagram().arc_ids().iter().next().unwrap();
        let k = LinkDiagram::new(apply_move(trefoil.diagram(), &graphhom::diagram::MoveSite::R1Add { arc, kink }).unwrap()).unwrap();
        let ratio_w = k.writhe() - trefoil.writhe();
        let factor = LaurentPoly::term(Var::A, 6 * ratio_w as i64, if ratio_w % 2 == 0 { 1 } else { -1 });
        assert_eq!(kauffman_bracket(&k).unwrap(), &factor * &kauffman_bracket(&trefoil).unwrap());
        assert_eq!(jones(&k).unwrap(), jones(&trefoil).unwrap());
    }
    assert_eq!(jones(&u).unwrap(), LaurentPoly::one(&[Var::T]));
}

#[test]
fn every_site_has_an_inverse_on_small_diagrams() {
    for d in [census::link("3_1").unwrap().into_diagram(), census::link("L2a1").unwrap().into_diagram(), census::theta(), census::handcuff()] {
        for s in enumerate_sites(&d) {
            let inv = find_inverse(&d, &s).unwrap();
            assert!(inv.is_some(), "no inverse for {s:?} on {d}");
        }
    }
}

#[test]
fn fingerprint_of_kinked_unknot() {
    let k = LinkDiagram::from_pd(&[[1, 2, 2, 1]]).unwrap();
    assert_eq!(fingerprint(&k).unwrap(), fingerprint(&LinkDiagram::unknot()).unwrap());
}

const CLASSICAL: &[MoveKind] = &[MoveKind::R1, MoveKind::R2, MoveKind::R3];
const ALL: &[MoveKind] = &[MoveKind::R1, MoveKind::R2, MoveKind::R3, MoveKind::R4, MoveKind::R5];

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn jones_and_conway_survive_random_moves(seed in any::<u64>(), which in 0usize..5) {
        let name = ["3_1", "4_1", "L2a1", "5_2", "L4a1"][which];
        let l = census::link(name).unwrap();
        let (moved, log) = random_moves(l.diagram(), seed, 12, CLASSICAL, l.crossing_count() + 6);
        prop_assert!(moved.validate().is_valid());
        let m = LinkDiagram::new(moved).unwrap();
        prop_assert_eq!(jones(&m).unwrap(), jones(&l).unwrap(), "moves {:?}", log);
        prop_assert_eq!(conway(&m).unwrap(), conway(&l).unwrap());
    }

    #[test]
    fn families_survive_random_graph_moves(seed in any::<u64>(), which in 0usize..3) {
        let g = census::graph(census::GRAPH_NAMES[which]).unwrap();
        let (moved, log) = random_moves(&g, seed, 8, ALL, g.crossings.len() + 5);
        prop_assert!(moved.validate().is_valid());
        let before = family(&g).unwrap();
        let after = family(&moved).unwrap();
        let fa: Vec<_> = before.members.iter().map(|m| (m.fingerprint.clone(), m.multiplicity)).collect();
        let fb: Vec<_> = after.members.iter().map(|m| (m.fingerprint.clone(), m.multiplicity)).collect();
        prop_assert_eq!(fa, fb, "moves {:?}", log);
    }

    #[test]
    fn move_then_inverse_is_isomorphic(seed in any::<u64>(), which in 0usize..4) {
        let d = [census::link("3_1").unwrap().into_diagram(), census::hopf_handcuff(), census::theta(), census::link("4_1").unwrap().into_diagram()][which].clone();
        let (d, _) = random_moves(&d, seed, 3, ALL, 10);
        let sites = enumerate_sites(&d);
        let s = &sites[(seed as usize) % sites.len()];
        let inv = find_inverse(&d, s).unwrap();
        prop_assert!(inv.is_some(), "{:?}", s);
        let back = apply_move(&apply_move(&d, s).unwrap(), &inv.unwrap()).unwrap();
        prop_assert!(back.is_isomorphic(&d));
    }
}
