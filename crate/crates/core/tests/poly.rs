use std::collections::{BTreeMap, BTreeSet};

use krsl::poly::*;
use num_traits::Signed;
use proptest::prelude::*;

fn x(v: Var) -> Polynomial {
    Polynomial::var(v)
}

fn bind(pairs: &[(Var, Polynomial)]) -> BTreeMap<Var, Polynomial> {
    pairs.iter().cloned().collect()
}

fn power(v: Var, e: u32) -> Polynomial {
    x(v).pow(e)
}

#[test]
fn arithmetic() {
    assert_eq!(
        &(&x(1) + &x(2)) * &(&x(1) - &x(2)),
        &power(1, 2) - &power(2, 2)
    );
    let p = &(&x(1) * &x(2)) + &x(3).scale(&rat_frac(2, 3));
    assert!((&p + &(-&p)).is_zero());
    assert_eq!(x(1).scale(&rat_frac(1, 2)).scale(&rat(2)), x(1));
}

#[test]
fn division() {
    assert_eq!(
        (&power(1, 2) - &power(2, 2))
            .exact_divide(&(&x(1) - &x(2)))
            .unwrap(),
        &x(1) + &x(2)
    );
    for n in 1..=6 {
        let num = &power(1, n as u32 + 1) - &power(2, n as u32 + 1);
        assert_eq!(num.exact_divide(&(&x(1) - &x(2))).unwrap(), pi(1, 2, n));
    }
    assert_eq!(
        power(1, 2).exact_divide(&(&x(1) + &x(2))),
        Err(krsl::Error::NotDivisible)
    );
    assert!(x(1).exact_divide(&Polynomial::zero()).is_err());
}

#[test]
fn g_difference_quotient_is_exact() {
    // (g(x1+x2, x1x2) - g(x3+x4, x1x2)) / (x1+x2-x3-x4) at n = 3
    let (s1, s2) = (100, 101);
    let g = g_poly(3, s1, s2);
    let e12 = &x(1) + &x(2);
    let p12 = &x(1) * &x(2);
    let e34 = &x(3) + &x(4);
    let num = &g
        .substitute(&bind(&[(s1, e12.clone()), (s2, p12.clone())]))
        .unwrap()
        - &g.substitute(&bind(&[(s1, e34.clone()), (s2, p12)]))
            .unwrap();
    let den = &e12 - &e34;
    let q = num.exact_divide(&den).unwrap();
    assert_eq!(&q * &den, num);
}

#[test]
fn substitution() {
    assert!((&x(1) - &x(2))
        .substitute(&bind(&[(2, x(1))]))
        .unwrap()
        .is_zero());
    for n in 1..=6 {
        let want = power(1, n as u32).scale(&rat(n as i64 + 1));
        assert_eq!(pi(1, 2, n).substitute(&bind(&[(2, x(1))])).unwrap(), want);
    }
    let p = &(&x(1) * &x(2)) - &(&x(3) * &x(4));
    let got = p
        .substitute(&bind(&[(1, &(&x(3) + &x(4)) - &x(2))]))
        .unwrap();
    let want = &(&(&(&x(3) * &x(2)) + &(&x(4) * &x(2))) - &power(2, 2)) - &(&x(3) * &x(4));
    assert_eq!(got, want);
}

#[test]
fn monomial_bases() {
    let set = |v: &[Var]| v.iter().copied().collect::<BTreeSet<Var>>();
    assert_eq!(graded_monomials(&set(&[1]), 0), vec![Monomial::one()]);
    assert_eq!(
        graded_monomials(&set(&[1, 2]), 4),
        vec![
            Monomial::from_exponents(vec![(1, 2)]),
            Monomial::from_exponents(vec![(1, 1), (2, 1)]),
            Monomial::from_exponents(vec![(2, 2)]),
        ]
    );
    assert_eq!(
        graded_monomials(&set(&[1, 2, 3]), 2),
        vec![Monomial::var(1), Monomial::var(2), Monomial::var(3)]
    );
    assert!(graded_monomials(&set(&[1, 2]), 3).is_empty());
}

#[test]
fn pi_examples() {
    assert_eq!(pi(1, 2, 1), &x(1) + &x(2));
    assert_eq!(pi(1, 1, 2), power(1, 2).scale(&rat(3)));
    for n in 1..=8 {
        assert_eq!(
            &(&x(1) - &x(2)) * &pi(1, 2, n),
            &power(1, n as u32 + 1) - &power(2, n as u32 + 1)
        );
    }
}

#[test]
fn g_poly_examples() {
    let (s1, s2) = (100, 101);
    assert_eq!(g_poly(1, s1, s2), &power(s1, 2) - &x(s2).scale(&rat(2)));
    assert_eq!(
        g_poly(2, s1, s2),
        &power(s1, 3) - &(&x(s1) * &x(s2)).scale(&rat(3))
    );
    for n in 1..=8 {
        let b = bind(&[(s1, &x(1) + &x(2)), (s2, &x(1) * &x(2))]);
        let got = g_poly(n, s1, s2).substitute(&b).unwrap();
        assert_eq!(
            got,
            &power(1, n as u32 + 1) + &power(2, n as u32 + 1),
            "n = {n}"
        );
    }
}

fn w_t(n: usize, m: [Var; 4]) -> Polynomial {
    let e = n as u32 + 1;
    &(&(&power(m[0], e) + &power(m[1], e)) - &power(m[2], e)) - &power(m[3], e)
}

#[test]
fn wide_edge_examples() {
    let [u1, u2, b1, b2] = wide_edge_polys(1, [1, 2, 3, 4]);
    assert_eq!(u1, &(&(&x(1) + &x(2)) + &x(3)) + &x(4));
    assert_eq!(u2, Polynomial::int(-2));
    assert_eq!(b1, &(&(&x(1) + &x(2)) - &x(3)) - &x(4));
    assert_eq!(b2, &(&x(1) * &x(2)) - &(&x(3) * &x(4)));
    let [_, u2, _, _] = wide_edge_polys(2, [1, 2, 3, 4]);
    assert_eq!(u2, (&x(3) + &x(4)).scale(&rat(-3)));
}

#[test]
fn wide_edge_identity_and_degrees() {
    let markings: [[Var; 4]; 5] = [
        [1, 2, 3, 4],
        [1, 2, 3, 1],
        [1, 1, 2, 3],
        [1, 2, 1, 2],
        [1, 1, 1, 1],
    ];
    for n in 1..=6 {
        for m in markings {
            let [u1, u2, b1, b2] = wide_edge_polys(n, m);
            assert_eq!(
                &(&u1 * &b1) + &(&u2 * &b2),
                w_t(n, m),
                "n = {n}, marks {m:?}"
            );
            if m == [1, 2, 3, 4] {
                assert_eq!(u1.degree(), Some(2 * n as i64));
                assert_eq!(b1.degree(), Some(2));
                assert_eq!(b2.degree(), Some(4));
                if n > 1 {
                    assert_eq!(u2.degree(), Some(2 * n as i64 - 2));
                }
                assert!(u1.is_homogeneous() && u2.is_homogeneous());
            }
        }
    }
}

#[test]
fn rational_normalization() {
    let r = rat_frac(4, -6);
    assert_eq!(r, rat_frac(-2, 3));
    assert!(r.denom().is_positive());
}

/// Homogeneous polynomials of degree `2 * d` in the variables 1..=3.
fn homogeneous(d: u32) -> impl Strategy<Value = Polynomial> {
    let vars: BTreeSet<Var> = (1..=3).collect();
    let n = graded_monomials(&vars, 2 * d as i64).len();
    prop::collection::vec(-4i64..=4, n).prop_map(move |cs| {
        let ms = graded_monomials(&(1..=3).collect(), 2 * d as i64);
        Polynomial::from_terms(ms.into_iter().zip(cs).map(|(m, c)| (m, rat(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divide_round_trip(p in homogeneous(2), q in homogeneous(1)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_divide(&q).unwrap(), p);
    }

    #[test]
    fn substitution_is_a_ring_map(p in homogeneous(2), q in homogeneous(1), b1 in homogeneous(1), b2 in homogeneous(1)) {
        let b = bind(&[(1, b1), (2, b2)]);
        let s = |r: &Polynomial| r.substitute(&b).unwrap();
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
    }

    #[test]
    fn products_stay_homogeneous(p in homogeneous(2), q in homogeneous(1)) {
        let r = &p * &q;
        prop_assert!(r.is_homogeneous());
        if !r.is_zero() {
            prop_assert_eq!(r.degree(), Some(6));
        }
    }
}
