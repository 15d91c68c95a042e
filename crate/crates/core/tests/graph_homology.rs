use graphhom::census;
use graphhom::diagram::{random_moves, MoveKind};
use graphhom::dims::BigradedDims;
use graphhom::graph_homology::{graph_homology, hfg, kkh_graph, member_dims, Options, Verdict};
use graphhom::grid::{hfk_hat, GridLimits};
use graphhom::khovanov::{khovanov_homology, Coeffs};
use graphhom::LinkDiagram;
use proptest::prelude::*;

fn hfk(l: &LinkDiagram) -> BigradedDims {
    hfk_hat(l, &GridLimits::new(8)).unwrap()
}

/// The rank-two piece at Maslov ±1/2, Alexander 0.
fn x_piece() -> BigradedDims {
    let mut x = BigradedDims::new();
    x.add(1, 0, 1, &[]);
    x.add(-1, 0, 1, &[]);
    x
}

#[test]
fn handcuff_decomposes_as_unlink_plus_unknot() {
    let r = hfg(&census::handcuff()).unwrap();
    let u = hfk(&LinkDiagram::unknot());
    let expected = u.tensor(&u).tensor(&x_piece()).direct_sum(&u);
    let f = r.floer.as_ref().unwrap();
    assert_eq!(f.dims, expected);
    assert_eq!(f.total_rank, 3);
    assert_eq!(f.verdict, Verdict::Pass);
}

#[test]
fn hopf_handcuff_sums_hopf_and_unknot() {
    let r = hfg(&census::hopf_handcuff()).unwrap();
    let hopf = hfk(&census::link("L2a1").unwrap());
    let expected = hopf.direct_sum(&hfk(&LinkDiagram::unknot()));
    let f = r.floer.as_ref().unwrap();
    assert_eq!(f.dims, expected);
    assert_eq!(f.verdict, Verdict::Pass);
}

#[test]
fn singleton_trefoil() {
    let tre = census::link("3_1").unwrap();
    let r = hfg(tre.diagram()).unwrap();
    let f = r.floer.as_ref().unwrap();
    assert_eq!(f.total_rank, 3);
    assert_eq!(f.euler, graphhom::poly::LaurentPoly::from_terms(graphhom::poly::Var::T, &[(2, 1), (0, -1), (-2, 1)]));
    assert_eq!(f.verdict, Verdict::Pass);
}

#[test]
fn khovanov_sums_match_members() {
    for name in census::GRAPH_NAMES {
        let g = census::graph(name).unwrap();
        let r = kkh_graph(&g, Coeffs::Z).unwrap();
        let mut sum = BigradedDims::new();
        for m in &r.members {
            sum += &khovanov_homology(&m.diagram, Coeffs::Z).unwrap();
        }
        let k = r.khovanov.as_ref().unwrap();
        assert_eq!(k.dims, sum, "{name}");
        assert_eq!(k.verdict, Verdict::Pass, "{name}");
    }
    for name in ["handcuff", "hopf_handcuff"] {
        let r = kkh_graph(&census::graph(name).unwrap(), Coeffs::F2).unwrap();
        assert_eq!(r.khovanov.unwrap().total_rank, 6, "{name}");
    }
}

#[test]
fn partial_sums_add_up() {
    for name in census::GRAPH_NAMES {
        let r = graph_homology(&census::graph(name).unwrap(), &Options::default()).unwrap();
        for floer in [true, false] {
            let parts = member_dims(&r, floer);
            let agg = if floer { &r.floer } else { &r.khovanov }.as_ref().unwrap();
            for split in 0..=parts.len() {
                let mut a = BigradedDims::new();
                let mut b = BigradedDims::new();
                for (i, d) in parts.iter().enumerate() {
                    if i < split { a += d.unwrap() } else { b += d.unwrap() }
                }
                assert_eq!(a.direct_sum(&b), agg.dims, "{name} split {split}");
            }
        }
    }
}

#[test]
fn multiset_weights_by_multiplicity() {
    let g = census::handcuff();
    let set = graph_homology(&g, &Options::default()).unwrap();
    let multi = graph_homology(&g, &Options { multiset: true, ..Options::default() }).unwrap();
    // Unknot four times, unlink once.
    assert_eq!(multi.floer.as_ref().unwrap().total_rank, 4 + 2);
    assert_eq!(multi.khovanov.as_ref().unwrap().total_rank, 4 * 2 + 4);
    assert_eq!(set.floer.as_ref().unwrap().total_rank, 3);
    assert_eq!(multi.euler_check(), Verdict::Pass);
}

#[test]
fn floer_cap_skips_members() {
    let opts = Options { grid: GridLimits::new(3), khovanov: false, ..Options::default() };
    let r = graph_homology(&census::hopf_handcuff(), &opts).unwrap();
    let f = r.floer.as_ref().unwrap();
    assert_eq!(f.verdict, Verdict::Partial);
    let skipped: Vec<_> = r.members.iter().filter_map(|m| match &m.floer {
        Some(graphhom::graph_homology::MemberResult::Skipped { reason }) => Some(reason.clone()),
        _ => None,
    }).collect();
    assert_eq!(skipped, vec!["floer: skipped (grid too large)".to_string()]);
}

const ALL: &[MoveKind] = &[MoveKind::R1, MoveKind::R2, MoveKind::R3, MoveKind::R4, MoveKind::R5];

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn reports_survive_graph_moves(seed in any::<u64>(), which in 0usize..3) {
        let g = census::graph(census::GRAPH_NAMES[which]).unwrap();
        let (moved, log) = random_moves(&g, seed, 8, ALL, g.crossings.len() + 4);
        let a = graph_homology(&g, &Options::default()).unwrap();
        let b = graph_homology(&moved, &Options::default()).unwrap();
        for (x, y) in [(&a.floer, &b.floer), (&a.khovanov, &b.khovanov)] {
            let (x, y) = (x.as_ref().unwrap(), y.as_ref().unwrap());
            prop_assert_eq!(&x.dims, &y.dims, "moves {:?}", log);
            prop_assert_eq!(&x.euler, &y.euler);
            prop_assert_eq!(y.verdict, Verdict::Pass);
        }
    }

    #[test]
    fn equal_fingerprints_give_equal_homology(seed in any::<u64>(), which in 0usize..3) {
        let g = census::graph(census::GRAPH_NAMES[which]).unwrap();
        let (h, _) = random_moves(&g, seed ^ 0x5eed, 5, ALL, g.crossings.len() + 4);
        let a = graph_homology(&g, &Options::default()).unwrap();
        let b = graph_homology(&h, &Options::default()).unwrap();
        let fa: Vec<_> = a.members.iter().map(|m| &m.fingerprint).collect();
        let fb: Vec<_> = b.members.iter().map(|m| &m.fingerprint).collect();
        if fa == fb {
            prop_assert_eq!(&a.floer.as_ref().unwrap().dims, &b.floer.as_ref().unwrap().dims);
            prop_assert_eq!(&a.khovanov.as_ref().unwrap().dims, &b.khovanov.as_ref().unwrap().dims);
        }
    }
}
