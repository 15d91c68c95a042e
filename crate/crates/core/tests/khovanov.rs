use graphhom::census;
use graphhom::diagram::{random_moves, MoveKind};
use graphhom::khovanov::{build_cube, euler_characteristic, khovanov_homology, kkh_family, unnormalized_jones, Coeffs, KhovanovComplex};
use graphhom::kauffman::family;
use graphhom::poly::{LaurentPoly, Var};
use graphhom::LinkDiagram;
use proptest::prelude::*;

const CLASSICAL: &[MoveKind] = &[MoveKind::R1, MoveKind::R2, MoveKind::R3];

/// Kauffman state sum evaluated directly in `q`, independent of the cube
/// complex: `Σ_states (-q)^r q^(n₊-2n₋) (q+q⁻¹)^k`.
fn state_sum(l: &LinkDiagram) -> LaurentPoly {
    let cube = build_cube(l).unwrap();
    let shift = cube.n_plus as i64 - 2 * cube.n_minus as i64;
    let circle = LaurentPoly::from_terms(Var::Q, &[(2, 1), (-2, 1)]);
    let mut out = LaurentPoly::zero(&[Var::Q]);
    for v in 0..cube.vertex_count() {
        let r = v.count_ones() as i64;
        let sign = if (r + cube.n_minus as i64) % 2 == 0 { 1 } else { -1 };
        out += &(&LaurentPoly::term(Var::Q, 2 * (r + shift), sign) * &circle.pow(cube.circles(v) as u32));
    }
    out
}

#[test]
fn euler_characteristic_on_census() {
    for &name in census::LINK_NAMES {
        let l = census::link(name).unwrap();
        let h = khovanov_homology(&l, Coeffs::Z).unwrap();
        let chi = euler_characteristic(&h);
        assert_eq!(chi, unnormalized_jones(&l).unwrap(), "{name}");
        assert_eq!(chi, state_sum(&l), "{name}");
    }
}

#[test]
fn field_ranks_dominate_free_ranks() {
    for &name in census::LINK_NAMES {
        let l = census::link(name).unwrap();
        let z = khovanov_homology(&l, Coeffs::Z).unwrap();
        let f = khovanov_homology(&l, Coeffs::F2).unwrap();
        for ((i, j), c) in z.iter() {
            assert!(f.rank(i, j) >= c.rank, "{name} at {i},{j}");
        }
        // Universal coefficients: each Z/2^k summand adds one in degree i and i+1.
        let two_torsion: u64 = z.iter().map(|(_, c)| c.torsion.iter().filter(|t| *t % 2u32 == 0u32.into()).count() as u64).sum();
        assert_eq!(f.total_rank(), z.total_rank() + 2 * two_torsion, "{name}");
    }
}

#[test]
fn family_sums() {
    let g1 = kkh_family(&family(&census::handcuff()).unwrap(), Coeffs::Z).unwrap();
    assert_eq!(g1.total_rank(), 6);
    let g2 = kkh_family(&family(&census::hopf_handcuff()).unwrap(), Coeffs::Z).unwrap();
    assert_eq!(g2.total_rank(), 6);
    let u = khovanov_homology(&LinkDiagram::unknot(), Coeffs::Z).unwrap();
    let single = kkh_family(&family(LinkDiagram::unknot().diagram()).unwrap(), Coeffs::Z).unwrap();
    assert_eq!(single, u);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn euler_on_random_diagrams(seed in any::<u64>(), which in 0usize..6) {
        let name = ["3_1", "4_1", "L2a1", "5_2", "L4a1", "6_1"][which];
        let l = census::link(name).unwrap();
        let (d, _) = random_moves(l.diagram(), seed, 10, CLASSICAL, 10);
        let m = LinkDiagram::new(d).unwrap();
        let cx = KhovanovComplex::new(&build_cube(&m).unwrap());
        prop_assert!(cx.d_squared_is_zero());
        let h = cx.homology(Coeffs::F2);
        prop_assert_eq!(euler_characteristic(&h), unnormalized_jones(&m).unwrap());
    }

    #[test]
    fn homology_survives_random_moves(seed in any::<u64>(), which in 0usize..4) {
        let name = ["3_1", "4_1", "L2a1", "5_2"][which];
        let l = census::link(name).unwrap();
        let (d, log) = random_moves(l.diagram(), seed, 6, CLASSICAL, 9);
        let m = LinkDiagram::new(d).unwrap();
        prop_assert_eq!(khovanov_homology(&m, Coeffs::Z).unwrap(), khovanov_homology(&l, Coeffs::Z).unwrap(), "moves {:?}", log);
    }
}
