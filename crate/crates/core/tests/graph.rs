mod common;

use common::*;
use krsl::graph::*;
use krsl::homology::GdimPoly;
use krsl::mf::{mat_mul, scalar_matrix, KoszulFactorization};
use krsl::oracle::{moy_eval, moy_eval_ordered, ScanOrder};
use krsl::poly::{Polynomial, Var};
use krsl::Error;

fn x(v: Var) -> Polynomial {
    Polynomial::var(v)
}

#[test]
fn circle_and_disjoint_circles() {
    let circle = standard_graph("circle").unwrap();
    let k = circle.build(2).unwrap();
    assert_eq!(k.rows.len(), 1);
    assert_eq!(k.rows[0].a, x(0).pow(2).scale(&krsl::poly::rat(3)));
    assert!(k.rows[0].b.is_zero());
    for n in 1..=5 {
        assert_eq!(
            graph_gdim(&circle, n).unwrap(),
            quantum(n as i64, 1),
            "n = {n}"
        );
        let two = graph_gdim(&standard_graph("two_circles").unwrap(), n).unwrap();
        assert_eq!(two, quantum(n as i64, 1).mul(&quantum(n as i64, 1)));
        let free = graph_gdim(&MoyGraph::new().loops(1), n).unwrap();
        assert_eq!(free, quantum(n as i64, 1));
    }
}

#[test]
fn open_wide_edge_fiber() {
    for n in 2..=5 {
        let want = GdimPoly::monomial(0, -1, 1)
            .mul(&one_plus_s(1 - n as i64))
            .mul(&one_plus_s(3 - n as i64));
        assert_eq!(gdim_of("wide", n), want, "n = {n}");
    }
}

#[test]
fn boundary_potential_matches_build() {
    for n in 2..=4 {
        for name in krsl::graph::STANDARD_GRAPHS {
            let g = standard_graph(name).unwrap();
            assert_eq!(
                g.build(n).unwrap().potential(),
                g.boundary_potential(n),
                "{name}, n = {n}"
            );
        }
    }
}

#[test]
fn chi_maps_are_chain_maps_of_degree_one() {
    let ctx = LocalCrossingContext::new(1, 2, 3, 4);
    for n in 2..=3 {
        for mu in [0, 1] {
            let f = chi0(&ctx, n, mu).unwrap();
            assert!(f.commutes() && f.is_homogeneous(), "chi0 n = {n} mu = {mu}");
            assert_eq!(f.q_degree, 1);
            let g = chi1(&ctx, n, mu).unwrap();
            assert!(
                g.commutes() && g.is_homogeneous(),
                "chi1 n = {n} lambda = {mu}"
            );
            assert_eq!(g.q_degree, 1);
        }
    }
}

#[test]
fn chi_compositions_are_exact() {
    for n in 1..=5 {
        let m = [1, 2, 3, 4];
        let [u0, u1] = chi0_matrices(m, n, 1).unwrap();
        let [v0, v1] = chi1_matrices(m, n, 0).unwrap();
        let want = scalar_matrix(2, &(&x(1) - &x(3)));
        assert_eq!(mat_mul(&v0, &u0), want, "n = {n}");
        assert_eq!(mat_mul(&v1, &u1), want, "n = {n}");
    }
}

#[test]
fn upsilon_identity_and_fiber() {
    for n in 1..=5 {
        let u = upsilon(n, [1, 2, 3, 4, 5, 6]).unwrap();
        let e = n as u32 + 1;
        let mut want = Polynomial::zero();
        for v in 1..=3 {
            want += &x(v).pow(e);
            want -= &x(v + 3).pow(e);
        }
        assert_eq!(u.potential(), want, "n = {n}");
        assert_eq!(u.q_shift, -3);
    }
    // v3 is the unit 3 at n = 2
    assert_eq!(
        upsilon(2, [1, 2, 3, 4, 5, 6]).unwrap().rows[2].a,
        Polynomial::int(3)
    );
    assert!(upsilon_gdim(2).is_zero());
    for n in 3..=4 {
        let n_ = n as i64;
        let want = GdimPoly::monomial(0, -3, 1)
            .mul(&one_plus_s(1 - n_))
            .mul(&one_plus_s(3 - n_))
            .mul(&one_plus_s(5 - n_));
        assert_eq!(upsilon_gdim(n), want, "n = {n}");
    }
    assert!(upsilon(0, [1, 2, 3, 4, 5, 6]).is_err());
}

#[test]
fn decomposition_identities() {
    for n in 2..=4 {
        for (name, ok) in decompositions(n) {
            assert!(ok, "{name} at n = {n}");
        }
    }
}

#[test]
fn closed_graphs_match_skein_values() {
    for n in 2..=3 {
        for name in CLOSED_GRAPHS {
            let g = standard_graph(name).unwrap();
            let gd = graph_gdim(&g, n).unwrap();
            let p = g.parity();
            assert_eq!(
                gd.parities().into_iter().collect::<Vec<_>>(),
                vec![p],
                "{name}, n = {n}"
            );
            let moy = moy_eval(&g, n).unwrap();
            assert_eq!(gd.part(p), moy, "{name}, n = {n}");
            assert_eq!(
                moy_eval_ordered(&g, n, ScanOrder::Reverse).unwrap(),
                moy,
                "{name}, n = {n}"
            );
            assert!(moy.has_nonnegative_coefficients());
        }
    }
}

#[test]
fn extra_marks_do_not_change_gdim() {
    for n in 2..=3 {
        for name in ["theta", "closed_ladder", "ladder_II", "digon_I"] {
            let g = standard_graph(name).unwrap();
            let before = graph_gdim(&g, n).unwrap();
            let fresh = g.marks.iter().max().unwrap() + 1;
            for idx in 0..g.arcs.len() {
                let h = g.subdivide_arc(idx, fresh);
                assert_eq!(
                    graph_gdim(&h, n).unwrap(),
                    before,
                    "{name} arc {idx}, n = {n}"
                );
            }
        }
    }
}

#[test]
fn literals() {
    let text = "a 1 4\na 2 3\nw 1 2 3 4\n";
    let g = MoyGraph::parse_literal(text).unwrap();
    assert!(g.is_closed());
    assert_eq!(graph_gdim(&g, 2).unwrap(), gdim_of("theta", 2));
    assert!(MoyGraph::parse_literal("w 1 2 3\n").is_err());
    assert!(matches!(
        standard_graph("nonsense"),
        Err(Error::UnknownName(_))
    ));
}

#[test]
fn empty_factorization_window() {
    let k = KoszulFactorization::empty(3);
    assert_eq!(krsl::homology::degree_window(&k, 0), (0, 0));
    assert_eq!(
        krsl::homology::cohomology(&k, (0, 0)).unwrap().1,
        GdimPoly::one()
    );
}
