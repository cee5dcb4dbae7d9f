//! Acceptance checks 1–10, run without the test harness so the PASS/FAIL
//! lines always print. Exits nonzero if any check fails or overruns its budget.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use krsl::graph::{chi0_matrices, chi1_matrices, graph_gdim, standard_graph, upsilon};
use krsl::homology::{cohomology, symmetric_window, GdimPoly};
use krsl::link::{kr_homology, reduced_kr_homology, HomologyTable, LinkDiagram};
use krsl::mf::{mat_mul, scalar_matrix, KoszulFactorization};
use krsl::oracle::{homfly_specialized, moy_eval, quantum_int, state_sum};
use krsl::poly::{g_poly, wide_edge_polys, Polynomial, Var};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let out = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panic: {}", msg.unwrap_or_default()))
    });
    let took = start.elapsed();
    let out = out.and_then(|()| {
        ensure(took <= budget, || {
            format!(
                "over budget ({:.1} s > {} s)",
                took.as_secs_f64(),
                budget.as_secs()
            )
        })
    });
    match &out {
        Ok(()) => println!(
            "PASS {id:>2} {name} ({:.2} s, budget {} s)",
            took.as_secs_f64(),
            budget.as_secs()
        ),
        Err(e) => println!(
            "FAIL {id:>2} {name} ({:.2} s, budget {} s): {e}",
            took.as_secs_f64(),
            budget.as_secs()
        ),
    }
    out.is_ok()
}

fn x(v: Var) -> Polynomial {
    Polynomial::var(v)
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn timed(budget: Duration, what: String, f: impl FnOnce() -> bool) -> Check {
    let start = Instant::now();
    let ok = f();
    ensure(ok, || format!("{what} failed"))?;
    ensure(start.elapsed() <= budget, || {
        format!("{what} took {:.2} s", start.elapsed().as_secs_f64())
    })
}

fn symbolic_identities() -> Check {
    let (s1, s2) = (100, 101);
    for n in 1..=6usize {
        let e = n as u32 + 1;
        timed(secs(1), format!("g substitution at n = {n}"), || {
            let b: BTreeMap<Var, Polynomial> = [(s1, &x(1) + &x(2)), (s2, &x(1) * &x(2))]
                .into_iter()
                .collect();
            g_poly(n, s1, s2).substitute(&b).unwrap() == &x(1).pow(e) + &x(2).pow(e)
        })?;
        timed(secs(1), format!("u1 b1 + u2 b2 at n = {n}"), || {
            let [u1, u2, b1, b2] = wide_edge_polys(n, [1, 2, 3, 4]);
            let w = &(&(&x(1).pow(e) + &x(2).pow(e)) - &x(3).pow(e)) - &x(4).pow(e);
            &(&u1 * &b1) + &(&u2 * &b2) == w
        })?;
        timed(secs(1), format!("upsilon potential at n = {n}"), || {
            let mut w = Polynomial::zero();
            for v in 1..=3 {
                w += &x(v).pow(e);
                w -= &x(v + 3).pow(e);
            }
            upsilon(n, [1, 2, 3, 4, 5, 6]).unwrap().potential() == w
        })?;
        timed(secs(1), format!("chi composites at n = {n}"), || {
            let [u0, u1] = chi0_matrices([1, 2, 3, 4], n, 1).unwrap();
            let [v0, v1] = chi1_matrices([1, 2, 3, 4], n, 0).unwrap();
            let want = scalar_matrix(2, &(&x(1) - &x(3)));
            mat_mul(&v0, &u0) == want && mat_mul(&v1, &u1) == want
        })?;
    }
    Ok(())
}

fn unknots() -> Check {
    for n in 1..=5 {
        let base = kr_homology(&LinkDiagram::unknot(), n).unwrap();
        let want: BTreeMap<(i64, i64), usize> = quantum_int(n as i64)
            .terms()
            .map(|(&j, _)| ((0, j), 1))
            .collect();
        ensure(base.entries == want && base.parity == 1, || {
            format!("0-crossing unknot at n = {n}: {base}")
        })?;
        for text in &UNKNOTS[1..] {
            let t = kr_homology(&link(text), n).unwrap();
            ensure(t == base, || format!("{text} at n = {n}: {t}"))?;
        }
    }
    Ok(())
}

fn euler_consistency() -> Check {
    let cases = [
        (TREFOIL, 2),
        (TREFOIL, 3),
        (TREFOIL, 4),
        (MIRROR_TREFOIL, 2),
        (MIRROR_TREFOIL, 3),
        (HOPF, 2),
        (HOPF, 3),
        (HOPF, 4),
        (FIGURE_EIGHT, 2),
        (FIGURE_EIGHT, 3),
    ];
    for (text, n) in cases {
        let d = link(text);
        let e = kr_homology(&d, n).unwrap().euler();
        let s = state_sum(&d, n).unwrap();
        let h = homfly_specialized(&d, n).unwrap();
        ensure(e == s && s == h, || {
            format!("{text} at n = {n}: euler {e}, state sum {s}, homfly {h}")
        })?;
    }
    Ok(())
}

fn acceptance_diagrams() -> Vec<&'static str> {
    let mut v = vec![TREFOIL, MIRROR_TREFOIL, HOPF, FIGURE_EIGHT, PD_TREFOIL];
    v.extend_from_slice(UNKNOTS);
    for (a, b) in R3_PAIRS {
        v.push(a);
        v.push(b);
    }
    v
}

fn level_one() -> Check {
    let want: BTreeMap<(i64, i64), usize> = [((0, 0), 1)].into_iter().collect();
    for text in acceptance_diagrams() {
        let t = kr_homology(&link(text), 1).unwrap();
        ensure(t.entries == want, || format!("{text}: {t}"))?;
    }
    Ok(())
}

fn decomposition_checks() -> Check {
    for n in 2..=4 {
        for (name, ok) in decompositions(n) {
            ensure(ok, || format!("{name} at n = {n}"))?;
        }
    }
    Ok(())
}

/// Candidate `(row, variable)` pairs for excluding a variable.
fn excludable(k: &KoszulFactorization) -> Vec<(usize, Var)> {
    let mut out = Vec::new();
    for (i, r) in k.rows.iter().enumerate() {
        for v in r.b.vars() {
            if r.b.linear_coefficient(v).is_some() {
                out.push((i, v));
            }
        }
    }
    out
}

fn invariance_suite() -> Check {
    for seed in 0..6u64 {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let (c0, c1) = crossing_site(n, Closure::Parallel);
        let (a0, a1) = (Ambient::new(&c0), Ambient::new(&c1));

        let base = induced(&a0, &a1, &chi0_on(&c0, &c1, 1));
        ensure(base == induced(&a0, &a1, &chi0_on(&c0, &c1, 0)), || {
            format!("chi0 mu choice, n = {n}")
        })?;
        let back = induced(&a1, &a0, &chi1_on(&c1, &c0, 0));
        ensure(back == induced(&a1, &a0, &chi1_on(&c1, &c0, 1)), || {
            format!("chi1 lambda choice, n = {n}")
        })?;

        let f = chi0_on(&c0, &c1, 1).plus_null_homotopy(&random_odd_map(&c0, &c1, 1, rng.gen()));
        ensure(f.commutes() && induced(&a0, &a1, &f) == base, || {
            format!("chi0 plus null-homotopy, seed {seed}")
        })?;
        let g = chi1_on(&c1, &c0, 0).plus_null_homotopy(&random_odd_map(&c1, &c0, 1, rng.gen()));
        ensure(g.commutes() && induced(&a1, &a0, &g) == back, || {
            format!("chi1 plus null-homotopy, seed {seed}")
        })?;

        let names = ["theta", "closed_ladder", "closed_square"];
        let name = names[rng.gen_range(0..names.len())];
        let graph = standard_graph(name).unwrap();
        let k = graph.build(n).unwrap();
        let full = cohomology(&k, symmetric_window(&k)).unwrap().1;
        let cands = excludable(&k);
        let (i, v) = cands[rng.gen_range(0..cands.len())];
        let (small, _) = k.exclude_variable(i, v).unwrap();
        let g_small = cohomology(&small, symmetric_window(&small)).unwrap().1;
        ensure(g_small == full, || {
            format!("excluding x{v} by row {i} of {name}, n = {n}")
        })?;

        let arc = rng.gen_range(0..graph.arcs.len());
        let fresh = graph.marks.iter().max().unwrap() + 1;
        let marked = graph_gdim(&graph.subdivide_arc(arc, fresh), n).unwrap();
        ensure(marked == graph_gdim(&graph, n).unwrap(), || {
            format!("extra mark on arc {arc} of {name}, n = {n}")
        })?;

        let (lo, hi) = symmetric_window(&k);
        let pad = rng.gen_range(1..=4) * 2;
        let wider = cohomology(&k, (lo - pad, hi + pad)).unwrap().1;
        ensure(wider == full, || {
            format!("window padded by {pad} for {name}, n = {n}")
        })?;
    }
    Ok(())
}

fn closed_graphs() -> Check {
    for n in 2..=4 {
        for name in CLOSED_GRAPHS {
            let g = standard_graph(name).unwrap();
            let gd: GdimPoly = graph_gdim(&g, n).unwrap();
            let p = g.parity();
            ensure(gd.parities().into_iter().all(|s| s == p), || {
                format!("{name} at n = {n} not in parity {p}: {gd}")
            })?;
            let moy = moy_eval(&g, n).unwrap();
            ensure(gd.part(p) == moy, || {
                format!("{name} at n = {n}: gdim {gd}, moy {moy}")
            })?;
        }
    }
    Ok(())
}

fn reduced() -> Check {
    let want: BTreeMap<(i64, i64), usize> = [((0, 0), 1)].into_iter().collect();
    for n in 1..=5 {
        let t = reduced_kr_homology(&LinkDiagram::unknot(), n, 0).unwrap();
        ensure(t.entries == want, || {
            format!("reduced unknot at n = {n}: {t}")
        })?;
    }
    for n in 2..=3 {
        for text in [TREFOIL, HOPF] {
            let d = link(text);
            let r = reduced_kr_homology(&d, n, 0).unwrap().euler();
            let u = kr_homology(&d, n).unwrap().euler();
            ensure(&r * &quantum_int(n as i64) == u, || {
                format!("{text} at n = {n}: reduced {r}, unreduced {u}")
            })?;
        }
    }
    Ok(())
}

fn reidemeister_three() -> Check {
    for (a, b) in R3_PAIRS {
        let (ta, tb) = (
            kr_homology(&link(a), 2).unwrap(),
            kr_homology(&link(b), 2).unwrap(),
        );
        ensure(ta == tb, || format!("{a} vs {b}:\n{ta}{tb}"))?;
        ensure(ta.total_dim() > 0, || format!("{a} has empty homology"))?;
    }
    Ok(())
}

fn render(t: &HomologyTable) -> String {
    format!("{t}{}\n{:?}\n", t.euler(), t.entries)
}

fn outputs() -> Vec<String> {
    let mut out = Vec::new();
    for (text, n) in [(TREFOIL, 3), (FIGURE_EIGHT, 2), (R3_PAIRS[0].0, 2)] {
        out.push(render(&kr_homology(&link(text), n).unwrap()));
    }
    out.push(render(&reduced_kr_homology(&link(HOPF), 3, 1).unwrap()));
    out
}

fn determinism() -> Check {
    let mut seen = BTreeSet::new();
    for threads in [1, 3, 1, 3] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        seen.insert(pool.install(outputs));
    }
    ensure(seen.len() == 1, || {
        format!("{} distinct outputs", seen.len())
    })
}

fn main() {
    let results = [
        run(1, "symbolic identities", secs(24), symbolic_identities),
        run(2, "unknot diagrams", secs(10), unknots),
        run(
            3,
            "euler = state sum = homfly",
            secs(300),
            euler_consistency,
        ),
        run(4, "n = 1 collapse", secs(120), level_one),
        run(
            5,
            "decomposition identities",
            secs(120),
            decomposition_checks,
        ),
        run(6, "invariance suite", secs(300), invariance_suite),
        run(7, "closed graphs", secs(300), closed_graphs),
        run(8, "reduced homology", secs(120), reduced),
        run(9, "Reidemeister III pairs", secs(1800), reidemeister_three),
        run(10, "determinism", secs(600), determinism),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
