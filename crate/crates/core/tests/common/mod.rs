//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use krsl::graph::{
    arc_row, chi0_matrices, chi1_matrices, graph_gdim, standard_graph, upsilon,
    LocalCrossingContext,
};
use krsl::homology::{
    cohomology, degree_window, induced_by, symmetric_window, GdimPoly, GradedBasis, Matrix,
};
use krsl::link::LinkDiagram;
use krsl::mf::{Gen, KoszulFactorization, Morphism, Reduction, Vector};
use krsl::oracle::{quantum_int, LaurentPoly};
use krsl::parse::parse_link;
use krsl::poly::{graded_monomials, rat, Polynomial};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const TREFOIL: &str = "braid:2:[1,1,1]";
pub const MIRROR_TREFOIL: &str = "braid:2:[-1,-1,-1]";
pub const HOPF: &str = "braid:2:[1,1]";
pub const FIGURE_EIGHT: &str = "braid:3:[1,-2,1,-2]";
pub const PD_TREFOIL: &str = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";

/// 0-, 1- and 2-crossing diagrams of the unknot.
pub const UNKNOTS: &[&str] = &[
    "PD[] loops=1",
    "braid:2:[1]",
    "braid:2:[-1]",
    "braid:3:[1,2]",
    "braid:3:[1,-2]",
];

/// Pairs of closed braids that differ by one braid-relation move.
pub const R3_PAIRS: &[(&str, &str)] = &[
    ("braid:3:[1,2,1,2,2]", "braid:3:[2,1,2,2,2]"),
    ("braid:3:[-1,-2,-1,-2,-2,-2]", "braid:3:[-2,-1,-2,-2,-2,-2]"),
    ("braid:3:[1,2,1,-2,1,-2]", "braid:3:[2,1,2,-2,1,-2]"),
];

pub const CLOSED_GRAPHS: &[&str] = &[
    "circle",
    "two_circles",
    "theta",
    "closed_ladder",
    "closed_square",
    "trefoil_web",
    "figure8_web",
];

pub fn link(text: &str) -> LinkDiagram {
    parse_link(text).unwrap()
}

pub fn gdim_of(name: &str, n: usize) -> GdimPoly {
    graph_gdim(&standard_graph(name).unwrap(), n).unwrap()
}

/// `[k]` as a graded dimension in ℤ₂-degree `z2`.
pub fn quantum(k: i64, z2: u8) -> GdimPoly {
    if k <= 0 {
        return GdimPoly::zero();
    }
    GdimPoly::from_laurent(&quantum_int(k), z2)
}

/// `1 + s q^k`.
pub fn one_plus_s(k: i64) -> GdimPoly {
    GdimPoly::one().add(&GdimPoly::monomial(1, k, 1))
}

pub fn upsilon_gdim(n: usize) -> GdimPoly {
    let u = upsilon(n, [1, 2, 3, 4, 5, 6])
        .unwrap()
        .fiber(&(1..=6).collect());
    let red = Reduction::maximal(&u);
    cohomology(red.result(), degree_window(red.result(), 9))
        .unwrap()
        .1
}

/// The decomposition identities at level `n`, each with its name.
pub fn decompositions(n: usize) -> Vec<(&'static str, bool)> {
    let n_ = n as i64;
    let g = |name: &str| gdim_of(name, n);
    let wide = g("wide");
    let mut out = vec![
        (
            "wide fiber",
            wide == GdimPoly::monomial(0, -1, 1)
                .mul(&one_plus_s(1 - n_))
                .mul(&one_plus_s(3 - n_)),
        ),
        ("II", g("ladder_II") == quantum(2, 0).mul(&wide)),
        ("III", g("square_III") == quantum(n_ - 1, 1).mul(&wide)),
        (
            "III split",
            g("square_III")
                == g("square_III_gamma2").add(&quantum(n_ - 2, 1).mul(&g("square_III_gamma1"))),
        ),
        (
            "I",
            g("digon_I").shift(0, 1) == quantum(n_ - 1, 0).mul(&g("digon_I_gamma1")),
        ),
        (
            "IV",
            g("iv_gamma1").add(&g("iv_gamma2")) == g("iv_gamma3").add(&g("iv_gamma4")),
        ),
    ];
    let ups = upsilon_gdim(n);
    if n == 2 {
        out.push(("upsilon contractible", ups.is_zero()));
    } else {
        let want = GdimPoly::monomial(0, -3, 1)
            .mul(&one_plus_s(1 - n_))
            .mul(&one_plus_s(3 - n_))
            .mul(&one_plus_s(5 - n_));
        out.push(("upsilon fiber", ups == want));
    }
    out
}

/// A closed complex with its reduction and cohomology basis.
pub struct Ambient {
    pub red: Reduction,
    pub basis: GradedBasis,
}

impl Ambient {
    pub fn new(k: &KoszulFactorization) -> Ambient {
        let red = Reduction::maximal(k);
        let (basis, _) = cohomology(red.result(), symmetric_window(red.result())).unwrap();
        Ambient { red, basis }
    }

    pub fn k(&self) -> &KoszulFactorization {
        &self.red.original
    }
}

pub fn induced(src: &Ambient, tgt: &Ambient, phi: &Morphism) -> BTreeMap<(u8, i64), Matrix> {
    induced_by(&src.basis, &tgt.basis, phi.q_degree, phi.z2_degree, |z| {
        tgt.red.forward(&phi.apply(&src.red.section(z)))
    })
    .unwrap()
}

/// How the four crossing marks are joined outside the crossing.
#[derive(Clone, Copy, Debug)]
pub enum Closure {
    /// Arcs `1 → 4` and `2 → 3`: two circles and a theta graph.
    Parallel,
    /// Arcs `1 → 3` and `2 → 4`: one circle and a wide edge with a loop on
    /// each side. Not planar, so the two sides sit in opposite ℤ₂-degrees.
    Crossed,
}

/// `C(Γ⁰)` and `C(Γ¹)` at one crossing site, closed up outside; the
/// crossing's rows come first.
pub fn crossing_site(n: usize, closure: Closure) -> (KoszulFactorization, KoszulFactorization) {
    let ctx = LocalCrossingContext::new(1, 2, 3, 4);
    let outside = match closure {
        Closure::Parallel => [arc_row(1, 4, n), arc_row(2, 3, n)],
        Closure::Crossed => [arc_row(1, 3, n), arc_row(2, 4, n)],
    };
    let outside = KoszulFactorization::new(n, outside.to_vec()).unwrap();
    (
        ctx.c0(n).tensor(&outside).unwrap(),
        ctx.c1(n).tensor(&outside).unwrap(),
    )
}

pub fn chi0_on(src: &KoszulFactorization, tgt: &KoszulFactorization, mu: i64) -> Morphism {
    let [u0, u1] = chi0_matrices([1, 2, 3, 4], src.n, mu).unwrap();
    Morphism::local(src, tgt, vec![0, 1], u0, u1, 1)
}

pub fn chi1_on(src: &KoszulFactorization, tgt: &KoszulFactorization, lambda: i64) -> Morphism {
    let [v0, v1] = chi1_matrices([1, 2, 3, 4], src.n, lambda).unwrap();
    Morphism::local(src, tgt, vec![0, 1], v0, v1, 1)
}

/// A random homogeneous ℤ₂-odd map of q-degree `q_degree`.
pub fn random_odd_map(
    src: &KoszulFactorization,
    tgt: &KoszulFactorization,
    q_degree: i64,
    seed: u64,
) -> Morphism {
    let mut rng = StdRng::seed_from_u64(seed);
    let vars: BTreeSet<u32> = src.vars.union(&tgt.vars).copied().collect();
    let mut images = BTreeMap::new();
    for g in src.generators() {
        let mut img = Vector::new();
        for t in tgt.generators() {
            if tgt.gen_z2(t) == src.gen_z2(g) {
                continue;
            }
            let d = src.gen_degree(g) + q_degree - tgt.gen_degree(t);
            let terms: Vec<_> = graded_monomials(&vars, d)
                .into_iter()
                .filter_map(|m| rng.gen_bool(0.3).then(|| (m, rat(rng.gen_range(-3..=3)))))
                .collect();
            let p = Polynomial::from_terms(terms);
            if !p.is_zero() {
                img.insert(t, p);
            }
        }
        images.insert(g as Gen, img);
    }
    Morphism::from_images(src, tgt, q_degree, 1, images)
}

/// `P / [n]` for reduced Euler characteristics.
pub fn divided_by_quantum(p: &LaurentPoly, n: usize) -> Option<LaurentPoly> {
    p.divide(&quantum_int(n as i64))
}
