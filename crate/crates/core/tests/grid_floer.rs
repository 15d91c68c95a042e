use graphhom::census;
use graphhom::dims::BigradedDims;
use graphhom::grid::{hfk_hat, hfk_hat_of_grid, pd_to_grid, simplify_grid, tilde_complex, total_homology, GridDiagram, GridLimits};
use graphhom::invariants::conway;
use graphhom::poly::{conway_to_alexander, link_factor, normalize_alexander, EulerConvention, LaurentPoly, Var};
use graphhom::LinkDiagram;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn limits() -> GridLimits {
    GridLimits::new(8)
}

fn grid_of(l: &LinkDiagram) -> GridDiagram {
    simplify_grid(&pd_to_grid(l).unwrap())
}

fn random_grid(rng: &mut ChaCha8Rng, n: usize) -> GridDiagram {
    loop {
        let mut x: Vec<usize> = (0..n).collect();
        let mut o: Vec<usize> = (0..n).collect();
        x.shuffle(rng);
        o.shuffle(rng);
        if let Ok(g) = GridDiagram::new(x, o) {
            return g;
        }
    }
}

/// `(t^(1/2) - t^(-1/2))^(ℓ-1) Δ` from the skein recursion, normalized.
fn alexander_oracle(l: &LinkDiagram) -> LaurentPoly {
    let delta = conway_to_alexander(&conway(l).unwrap());
    let p = &link_factor(l.component_count() as u32 - 1) * &delta;
    if p.is_zero() {
        p
    } else {
        normalize_alexander(&p).unwrap()
    }
}

fn hat_euler(h: &BigradedDims) -> LaurentPoly {
    let e = h.euler(Var::T, EulerConvention::HalfShift).unwrap();
    if e.is_zero() {
        e
    } else {
        normalize_alexander(&e).unwrap()
    }
}

fn x_piece() -> BigradedDims {
    let mut x = BigradedDims::new();
    x.add(1, 0, 1, &[]);
    x.add(-1, 0, 1, &[]);
    x
}

fn small_census() -> Vec<(&'static str, LinkDiagram)> {
    census::LINK_NAMES
        .iter()
        .map(|&n| (n, census::link(n).unwrap()))
        .filter(|(_, l)| grid_of(l).n <= 7)
        .collect()
}

#[test]
fn euler_characteristic_matches_skein_oracle() {
    let links = small_census();
    assert!(links.len() >= 9);
    for (name, l) in links {
        let h = hfk_hat(&l, &limits()).unwrap();
        assert_eq!(hat_euler(&h), alexander_oracle(&l), "{name}");
    }
}

#[test]
fn total_homology_is_rank_two_power() {
    for (name, l) in small_census() {
        let g = grid_of(&l);
        let t = total_homology(&g, &limits()).unwrap();
        let expect = LaurentPoly::from_terms(Var::U, &[(1, 1), (-1, 1)]).pow(l.component_count() as u32 - 1);
        assert_eq!(t.poincare([Var::U, Var::T]).map_exponents(&[Var::U], |e| vec![e[0]]), expect, "{name}");
    }
}

#[test]
fn known_tables() {
    let tre = census::link("3_1").unwrap();
    let g = grid_of(&tre);
    assert_eq!(g.n, 5);
    assert_eq!(hfk_hat_of_grid(&g, &limits()).unwrap().ranks(), vec![(0, -2, 1), (2, 0, 1), (4, 2, 1)]);
    let right = hfk_hat(&tre.mirror(), &limits()).unwrap();
    assert_eq!(right.ranks(), vec![(-4, -2, 1), (-2, 0, 1), (0, 2, 1)]);
    let hopf = hfk_hat(&census::link("L2a1").unwrap(), &limits()).unwrap();
    assert_eq!(hopf.total_rank(), 4);
    assert_eq!(hfk_hat(&LinkDiagram::unknot(), &limits()).unwrap().ranks(), vec![(0, 0, 1)]);
}

#[test]
fn orientation_reversal_and_mirror() {
    for (name, l) in small_census() {
        let h = hfk_hat(&l, &limits()).unwrap();
        assert_eq!(hfk_hat(&l.reverse(), &limits()).unwrap(), h, "{name} reversed");
        let m = hfk_hat(&l.mirror(), &limits()).unwrap();
        assert_eq!(m, h.reindex(|a, b| (-a, -b)), "{name} mirrored");
    }
}

#[test]
fn disjoint_union_tensors_with_x() {
    let pairs = [("0_1", "0_1"), ("3_1", "0_1"), ("L2a1", "0_1"), ("4_1", "0_1"), ("0_1", "3_1")];
    for (a, b) in pairs {
        let (la, lb) = (census::link(a).unwrap(), census::link(b).unwrap());
        let got = hfk_hat(&la.disjoint_union(&lb), &limits()).unwrap();
        let want = hfk_hat(&la, &limits()).unwrap().tensor(&hfk_hat(&lb, &limits()).unwrap()).tensor(&x_piece());
        assert_eq!(got, want, "{a} + {b}");
    }
}

#[test]
fn connected_sum_tensors() {
    let pairs = [("3_1", "0_1"), ("L2a1", "L2a1"), ("3_1", "L2a1"), ("4_1", "0_1"), ("L2a1", "3_1")];
    for (a, b) in pairs {
        let (la, lb) = (census::link(a).unwrap(), census::link(b).unwrap());
        let got = hfk_hat(&la.connected_sum(&lb), &limits()).unwrap();
        let want = hfk_hat(&la, &limits()).unwrap().tensor(&hfk_hat(&lb, &limits()).unwrap());
        assert_eq!(got, want, "{a} # {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn stabilization_doubles_tilde_rank(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=5);
        let g = random_grid(&mut rng, n);
        let r = rng.gen_range(0..n);
        let s = g.stabilize(r, rng.gen_range(0..4));
        prop_assert!(s.check().is_ok());
        prop_assert_eq!(s.components(), g.components());
        let (cg, cs) = (tilde_complex(&g, &limits()).unwrap(), tilde_complex(&s, &limits()).unwrap());
        prop_assert!(cg.d_squared_is_zero() && cs.d_squared_is_zero());
        prop_assert!(cg.gradings_are_consistent() && cs.gradings_are_consistent());
        prop_assert_eq!(cs.homology().total_rank(), 2 * cg.homology().total_rank());
        prop_assert_eq!(hfk_hat_of_grid(&s, &limits()).unwrap(), hfk_hat_of_grid(&g, &limits()).unwrap());
    }

    #[test]
    fn commutation_and_translation_keep_tilde_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=6);
        let g = random_grid(&mut rng, n);
        let h = tilde_complex(&g, &limits()).unwrap().homology();
        for c in 0..n {
            if let Some(k) = g.commute_columns(c) {
                prop_assert_eq!(&tilde_complex(&k, &limits()).unwrap().homology(), &h);
            }
        }
        prop_assert_eq!(&tilde_complex(&g.rotate_columns(), &limits()).unwrap().homology(), &h);
        prop_assert_eq!(&tilde_complex(&g.rotate_rows(), &limits()).unwrap().homology(), &h);
    }

    #[test]
    fn simplification_keeps_the_link(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=7);
        let g = random_grid(&mut rng, n);
        let s = simplify_grid(&g);
        prop_assert!(s.n <= g.n);
        let (lg, ls) = (g.to_link(), s.to_link());
        prop_assert_eq!(conway(&lg).unwrap(), conway(&ls).unwrap());
        prop_assert_eq!(graphhom::invariants::jones(&lg).unwrap(), graphhom::invariants::jones(&ls).unwrap());
    }
}
