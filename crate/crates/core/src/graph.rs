//! Planar trivalent (MOY) graphs and their matrix factorizations.
//!
//! A graph is a set of marks joined by oriented arcs and wide edges. A wide
//! edge `(x1, x2, x3, x4)` lists its marks counterclockwise: `x1, x2` on
//! the outgoing 1-edges, `x3, x4` on the incoming ones, with `x1, x4` on
//! the same side.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::homology::{cohomology, degree_window, symmetric_window, GdimPoly, GradedBasis};
use crate::mf::{KoszulFactorization, Morphism, Reduction};
use crate::poly::{
    formal, pi, power_sum_in_elementary, rat, wide_edge_polys, Polynomial, Var, FORMAL_BASE,
};
use crate::{Error, Result};

pub type Mark = Var;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MoyGraph {
    pub marks: BTreeSet<Mark>,
    /// `(from, to)` oriented segments.
    pub arcs: Vec<(Mark, Mark)>,
    /// `(out1, out2, in1, in2)`.
    pub wide_edges: Vec<[Mark; 4]>,
    pub free_loops: usize,
    /// Boundary marks: `+1` where an edge ends, `-1` where one starts.
    pub boundary: BTreeMap<Mark, i8>,
}

/// Rows `(π_{to,from}, x_to − x_from)` of the arc factorization.
pub fn arc_row(from: Mark, to: Mark, n: usize) -> (Polynomial, Polynomial) {
    (
        pi(to, from, n),
        &Polynomial::var(to) - &Polynomial::var(from),
    )
}

/// The two rows `(u1, b1)`, `(u2, b2)` of a wide edge (without its `{-1}` shift).
pub fn wide_rows(marks: [Mark; 4], n: usize) -> [(Polynomial, Polynomial); 2] {
    let [u1, u2, b1, b2] = wide_edge_polys(n, marks);
    [(u1, b1), (u2, b2)]
}

impl MoyGraph {
    pub fn new() -> Self {
        MoyGraph::default()
    }

    pub fn arc(mut self, from: Mark, to: Mark) -> Self {
        self.marks.extend([from, to]);
        self.arcs.push((from, to));
        self
    }

    pub fn wide(mut self, marks: [Mark; 4]) -> Self {
        self.marks.extend(marks);
        self.wide_edges.push(marks);
        self
    }

    pub fn loops(mut self, k: usize) -> Self {
        self.free_loops += k;
        self
    }

    pub fn boundary_mark(mut self, m: Mark, sign: i8) -> Self {
        self.marks.insert(m);
        self.boundary.insert(m, sign);
        self
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Arcs, wide edges, marks and loops: the edge count used by the degree window.
    pub fn size(&self) -> usize {
        self.marks.len() + self.wide_edges.len() + self.free_loops + self.arcs.len()
    }

    pub fn validate(&self) -> Result<()> {
        let mut arrive: BTreeMap<Mark, usize> = BTreeMap::new();
        let mut depart: BTreeMap<Mark, usize> = BTreeMap::new();
        for &(f, t) in &self.arcs {
            *depart.entry(f).or_default() += 1;
            *arrive.entry(t).or_default() += 1;
        }
        for w in &self.wide_edges {
            *arrive.entry(w[0]).or_default() += 1;
            *arrive.entry(w[1]).or_default() += 1;
            *depart.entry(w[2]).or_default() += 1;
            *depart.entry(w[3]).or_default() += 1;
        }
        for &m in &self.marks {
            if m >= FORMAL_BASE {
                return Err(Error::InvalidGraph(format!("mark {m} is reserved")));
            }
            let a = arrive.get(&m).copied().unwrap_or(0);
            let d = depart.get(&m).copied().unwrap_or(0);
            let want = match self.boundary.get(&m) {
                None => (1, 1),
                Some(1) => (1, 0),
                Some(-1) => (0, 1),
                Some(s) => {
                    return Err(Error::InvalidGraph(format!(
                        "boundary sign {s} at mark {m}"
                    )))
                }
            };
            if (a, d) != want {
                return Err(Error::InvalidGraph(format!(
                    "mark {m} has {a} incoming and {d} outgoing incidences"
                )));
            }
        }
        for m in arrive.keys().chain(depart.keys()) {
            if !self.marks.contains(m) {
                return Err(Error::InvalidGraph(format!("mark {m} is not declared")));
            }
        }
        Ok(())
    }

    /// `Σ s(i) x_i^{n+1}` over boundary marks.
    pub fn boundary_potential(&self, n: usize) -> Polynomial {
        let mut w = Polynomial::zero();
        for (&m, &s) in &self.boundary {
            w += &Polynomial::var(m).pow(n as u32 + 1).scale(&rat(s as i64));
        }
        w
    }

    fn loop_marks(&self) -> Vec<Mark> {
        let start = self.marks.iter().next_back().map_or(0, |m| m + 1);
        (0..self.free_loops as u32).map(|k| start + k).collect()
    }

    /// The factorization `C(Γ)`: arcs first, then wide edges, then free loops.
    pub fn build(&self, n: usize) -> Result<KoszulFactorization> {
        self.validate()?;
        let mut k = KoszulFactorization::empty(n);
        for &(f, t) in &self.arcs {
            let (a, b) = arc_row(f, t, n);
            k.push_row(a, b)?;
        }
        for &w in &self.wide_edges {
            for (a, b) in wide_rows(w, n) {
                k.push_row(a, b)?;
            }
            k.q_shift -= 1;
        }
        for m in self.loop_marks() {
            let (a, b) = arc_row(m, m, n);
            k.push_row(a, b)?;
        }
        k.vars.extend(self.marks.iter().copied());
        k.vars.extend(self.loop_marks());
        Ok(k)
    }

    /// Number of circles after each wide edge is replaced by the arcs
    /// `x4 → x1` and `x3 → x2`.
    pub fn circle_count(&self) -> usize {
        let mut next: BTreeMap<Mark, Mark> = BTreeMap::new();
        for &(f, t) in &self.arcs {
            next.insert(f, t);
        }
        for w in &self.wide_edges {
            next.insert(w[3], w[0]);
            next.insert(w[2], w[1]);
        }
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &start in next.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut m = start;
            let closed = loop {
                if !seen.insert(m) {
                    break m == start;
                }
                match next.get(&m) {
                    Some(&t) => m = t,
                    None => break false,
                }
            };
            if closed {
                count += 1;
            }
        }
        count + self.free_loops
    }

    /// The ℤ₂-degree carrying the cohomology of a closed graph.
    pub fn parity(&self) -> u8 {
        (self.circle_count() % 2) as u8
    }

    /// Split arc `idx` by inserting `mark` in its middle.
    pub fn subdivide_arc(&self, idx: usize, mark: Mark) -> MoyGraph {
        let mut g = self.clone();
        let (f, t) = g.arcs[idx];
        g.arcs[idx] = (f, mark);
        g.arcs.insert(idx + 1, (mark, t));
        g.marks.insert(mark);
        g
    }

    /// Line format: `marks ...`, `a FROM TO`, `w O1 O2 I1 I2`, `b MARK SIGN`, `loops K`.
    pub fn parse_literal(text: &str) -> Result<MoyGraph> {
        let mut g = MoyGraph::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.split('#').next().unwrap_or("");
            let words: Vec<&str> = body.split_whitespace().collect();
            let err = |msg: &str| Error::Parse {
                pos: offset,
                msg: msg.to_string(),
            };
            let nums = |ws: &[&str]| -> Result<Vec<i64>> {
                ws.iter()
                    .map(|w| {
                        w.parse::<i64>()
                            .map_err(|_| err(&format!("bad number `{w}`")))
                    })
                    .collect()
            };
            let mark = |v: i64| -> Result<Mark> {
                u32::try_from(v)
                    .ok()
                    .filter(|&m| m < FORMAL_BASE)
                    .ok_or_else(|| err("mark out of range"))
            };
            match words.split_first() {
                None => {}
                Some((&"marks", rest)) => {
                    for v in nums(rest)? {
                        g.marks.insert(mark(v)?);
                    }
                }
                Some((&"a", rest)) if rest.len() == 2 => {
                    let v = nums(rest)?;
                    g = g.arc(mark(v[0])?, mark(v[1])?);
                }
                Some((&"w", rest)) if rest.len() == 4 => {
                    let v = nums(rest)?;
                    g = g.wide([mark(v[0])?, mark(v[1])?, mark(v[2])?, mark(v[3])?]);
                }
                Some((&"b", rest)) if rest.len() == 2 => {
                    let v = nums(rest)?;
                    if v[1] != 1 && v[1] != -1 {
                        return Err(err("boundary sign must be 1 or -1"));
                    }
                    g = g.boundary_mark(mark(v[0])?, v[1] as i8);
                }
                Some((&"loops", rest)) if rest.len() == 1 => {
                    let v = nums(rest)?;
                    g.free_loops +=
                        usize::try_from(v[0]).map_err(|_| err("negative loop count"))?;
                }
                Some((w, _)) => return Err(err(&format!("unexpected line starting with `{w}`"))),
            }
            offset += line.len();
        }
        g.validate()?;
        Ok(g)
    }

    pub fn to_literal(&self) -> String {
        let mut s = String::new();
        let marks: Vec<String> = self.marks.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(s, "marks {}", marks.join(" "));
        for &(f, t) in &self.arcs {
            let _ = writeln!(s, "a {f} {t}");
        }
        for w in &self.wide_edges {
            let _ = writeln!(s, "w {} {} {} {}", w[0], w[1], w[2], w[3]);
        }
        for (m, sign) in &self.boundary {
            let _ = writeln!(s, "b {m} {sign}");
        }
        if self.free_loops > 0 {
            let _ = writeln!(s, "loops {}", self.free_loops);
        }
        s
    }
}

/// Cohomology of `C(Γ)` for a closed graph, or of its fiber over the
/// boundary marks for an open one. Variables are excluded first.
pub fn graph_cohomology(g: &MoyGraph, n: usize) -> Result<(Reduction, GradedBasis, GdimPoly)> {
    let mut k = g.build(n)?;
    if !g.is_closed() {
        k = k.fiber(&g.boundary.keys().copied().collect());
    }
    let red = Reduction::maximal(&k);
    let small = red.result();
    let window = if g.is_closed() {
        symmetric_window(small)
    } else {
        degree_window(small, g.size())
    };
    let (basis, gdim) = cohomology(small, window)?;
    Ok((red, basis, gdim))
}

pub fn graph_gdim(g: &MoyGraph, n: usize) -> Result<GdimPoly> {
    Ok(graph_cohomology(g, n)?.2)
}

/// The four marks around a crossing: `Γ⁰` is the arcs `x4 → x1`, `x3 → x2`
/// and `Γ¹` the wide edge `(x1, x2, x3, x4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalCrossingContext {
    pub x: [Mark; 4],
}

impl LocalCrossingContext {
    pub fn new(x1: Mark, x2: Mark, x3: Mark, x4: Mark) -> Self {
        LocalCrossingContext {
            x: [x1, x2, x3, x4],
        }
    }

    pub fn gamma0(&self) -> MoyGraph {
        let [x1, x2, x3, x4] = self.x;
        let mut g = MoyGraph::new().arc(x4, x1).arc(x3, x2);
        for (m, s) in [(x1, 1), (x2, 1), (x3, -1), (x4, -1)] {
            g = g.boundary_mark(m, s);
        }
        g
    }

    pub fn gamma1(&self) -> MoyGraph {
        let [x1, x2, x3, x4] = self.x;
        let mut g = MoyGraph::new().wide(self.x);
        for (m, s) in [(x1, 1), (x2, 1), (x3, -1), (x4, -1)] {
            g = g.boundary_mark(m, s);
        }
        g
    }

    /// `C(Γ⁰)` with rows `(π14, x1−x4)`, `(π23, x2−x3)`.
    pub fn c0(&self, n: usize) -> KoszulFactorization {
        let [x1, x2, x3, x4] = self.x;
        let (a1, b1) = arc_row(x4, x1, n);
        let (a2, b2) = arc_row(x3, x2, n);
        KoszulFactorization::new(n, vec![(a1, b1), (a2, b2)]).expect("arc rows")
    }

    /// `C(Γ¹)` with rows `(u1, b1)`, `(u2, b2)` and shift `{-1}`.
    pub fn c1(&self, n: usize) -> KoszulFactorization {
        let [r1, r2] = wide_rows(self.x, n);
        KoszulFactorization::new(n, vec![r1, r2])
            .expect("wide rows")
            .shift(-1, 0)
    }
}

fn specialize(m: &[Vec<Polynomial>], marks: [Mark; 4]) -> Vec<Vec<Polynomial>> {
    let bind: BTreeMap<Var, Polynomial> = (0..4)
        .map(|k| (formal(k as u32), Polynomial::var(marks[k])))
        .collect();
    m.iter()
        .map(|r| r.iter().map(|p| p.substitute_unchecked(&bind)).collect())
        .collect()
}

struct Generic {
    x: [Polynomial; 4],
    u2: Polynomial,
    b1: Polynomial,
    /// `(u1 + x1 u2 − π23) / (x1 − x4)`
    quotient: Polynomial,
}

fn generic(n: usize) -> Result<Generic> {
    let f: [Var; 4] = [formal(0), formal(1), formal(2), formal(3)];
    let x = f.map(Polynomial::var);
    let [u1, u2, b1, _] = wide_edge_polys(n, f);
    let num = &(&u1 + &(&x[0] * &u2)) - &pi(f[1], f[2], n);
    let quotient = num.exact_divide(&(&x[0] - &x[3]))?;
    Ok(Generic {
        x,
        u2,
        b1,
        quotient,
    })
}

/// `χ₀ : C(Γ⁰) → C(Γ¹)` as the matrices `(U₀, U₁)`.
pub fn chi0_matrices(marks: [Mark; 4], n: usize, mu: i64) -> Result<[Vec<Vec<Polynomial>>; 2]> {
    let Generic {
        x,
        u2,
        b1,
        quotient,
        ..
    } = generic(n)?;
    let mu = Polynomial::int(mu);
    let one = Polynomial::one();
    let a1 = &(&(&mu - &one) * &u2) + &quotient;
    let u0 = vec![
        vec![&(&x[3] - &x[1]) + &(&mu * &b1), Polynomial::zero()],
        vec![a1, one.clone()],
    ];
    let u1m = vec![
        vec![
            &x[3] + &(&mu * &(&x[0] - &x[3])),
            &(&mu * &(&x[1] - &x[2])) - &x[1],
        ],
        vec![-&one, one.clone()],
    ];
    Ok([specialize(&u0, marks), specialize(&u1m, marks)])
}

/// `χ₁ : C(Γ¹) → C(Γ⁰)` as the matrices `(V₀, V₁)`.
pub fn chi1_matrices(marks: [Mark; 4], n: usize, lambda: i64) -> Result<[Vec<Vec<Polynomial>>; 2]> {
    let Generic {
        x, u2, quotient, ..
    } = generic(n)?;
    let la = Polynomial::int(lambda);
    let one = Polynomial::one();
    let a2 = &(&la * &u2) - &quotient;
    let a3 = &(&la * &(&(&x[2] + &x[3]) - &(&x[0] + &x[1]))) + &(&x[0] - &x[2]);
    let v0 = vec![vec![one.clone(), Polynomial::zero()], vec![a2, a3]];
    let v1 = vec![
        vec![one.clone(), &x[2] + &(&la * &(&x[1] - &x[2]))],
        vec![one.clone(), &x[0] + &(&la * &(&x[3] - &x[0]))],
    ];
    Ok([specialize(&v0, marks), specialize(&v1, marks)])
}

/// `χ₀` as a morphism of degree 1.
pub fn chi0(ctx: &LocalCrossingContext, n: usize, mu: i64) -> Result<Morphism> {
    let [u0, u1] = chi0_matrices(ctx.x, n, mu)?;
    Ok(Morphism::local(
        &ctx.c0(n),
        &ctx.c1(n),
        vec![0, 1],
        u0,
        u1,
        1,
    ))
}

/// `χ₁` as a morphism of degree 1.
pub fn chi1(ctx: &LocalCrossingContext, n: usize, lambda: i64) -> Result<Morphism> {
    let [v0, v1] = chi1_matrices(ctx.x, n, lambda)?;
    Ok(Morphism::local(
        &ctx.c1(n),
        &ctx.c0(n),
        vec![0, 1],
        v0,
        v1,
        1,
    ))
}

/// The factorization `{(v1, v2, v3), (α1, α2, α3)}{-3}` over marks `x1..x6`.
pub fn upsilon(n: usize, x: [Mark; 6]) -> Result<KoszulFactorization> {
    if n < 1 {
        return Err(Error::InvalidGraph("upsilon needs n >= 1".into()));
    }
    let s: [Var; 6] = [
        formal(30),
        formal(31),
        formal(32),
        formal(33),
        formal(34),
        formal(35),
    ];
    let sp = s.map(Polynomial::var);
    let h = |e: [Var; 3]| power_sum_in_elementary(n + 1, e);
    let h123 = h([s[0], s[1], s[2]]);
    let h423 = h([s[3], s[1], s[2]]);
    let h453 = h([s[3], s[4], s[2]]);
    let h456 = h([s[3], s[4], s[5]]);
    let v1 = (&h123 - &h423).exact_divide(&(&sp[0] - &sp[3]))?;
    let v2 = (&h423 - &h453).exact_divide(&(&sp[1] - &sp[4]))?;
    let v3 = (&h453 - &h456).exact_divide(&(&sp[2] - &sp[5]))?;

    let xp = x.map(Polynomial::var);
    let elem = |a: &Polynomial, b: &Polynomial, c: &Polynomial| {
        [
            a + &(b + c),
            &(&(a * b) + &(a * c)) + &(b * c),
            &(a * b) * c,
        ]
    };
    let e123 = elem(&xp[0], &xp[1], &xp[2]);
    let e456 = elem(&xp[3], &xp[4], &xp[5]);
    let bind: BTreeMap<Var, Polynomial> = (0..3)
        .map(|k| (s[k], e123[k].clone()))
        .chain((0..3).map(|k| (s[k + 3], e456[k].clone())))
        .collect();
    let mut k = KoszulFactorization::empty(n);
    for (v, k_) in [(v1, 0), (v2, 1), (v3, 2)] {
        let alpha = &e123[k_] - &e456[k_];
        k.push_row_with_degree(
            v.substitute_unchecked(&bind),
            alpha,
            2 * (n as i64 + 1) - 2 * (k_ as i64 + 1),
        )?;
    }
    k.vars.extend(x);
    Ok(k.shift(-3, 0))
}

/// Closure of a braid-like web: one wide edge per letter `i`, joining
/// strand positions `i` and `i + 1` (1-based); strands are closed up.
pub fn braid_web(strands: usize, letters: &[usize]) -> MoyGraph {
    let mut g = MoyGraph::new();
    let mut next: Mark = strands as Mark;
    let mut cur: Vec<Mark> = (0..strands as Mark).collect();
    for &i in letters {
        assert!(i >= 1 && i < strands, "letter out of range");
        let (l, r) = (i - 1, i);
        let (tl, tr) = (next, next + 1);
        next += 2;
        // (out right, out left, in left, in right)
        g = g.wide([tr, tl, cur[l], cur[r]]);
        cur[l] = tl;
        cur[r] = tr;
    }
    for (p, &m) in cur.iter().enumerate() {
        if m == p as Mark {
            g.free_loops += 1;
            continue;
        }
        g = g.arc(m, p as Mark);
    }
    g.marks = g
        .arcs
        .iter()
        .flat_map(|&(f, t)| [f, t])
        .chain(g.wide_edges.iter().flatten().copied())
        .collect();
    g
}

/// The named graphs used by the decomposition identities.
///
/// Open graphs: `arc`, `wide`, `digon_I`, `digon_I_gamma1`, `ladder_II`,
/// `square_III`, `square_III_gamma1`, `square_III_gamma2`, `iv_gamma1` …
/// `iv_gamma4`. Closed graphs: `circle`, `two_circles`, `theta`,
/// `closed_ladder`, `closed_square`, `trefoil_web`, `figure8_web`.
pub fn standard_graph(name: &str) -> Result<MoyGraph> {
    let bd = |g: MoyGraph, outs: &[Mark], ins: &[Mark]| {
        let g = outs.iter().fold(g, |g, &m| g.boundary_mark(m, 1));
        ins.iter().fold(g, |g, &m| g.boundary_mark(m, -1))
    };
    let g = match name {
        "circle" => MoyGraph::new().arc(0, 0),
        "two_circles" => MoyGraph::new().arc(0, 0).arc(1, 1),
        "arc" => bd(MoyGraph::new().arc(2, 1), &[1], &[2]),
        "wide" => bd(MoyGraph::new().wide([1, 2, 3, 4]), &[1, 2], &[3, 4]),
        "digon_I" => bd(MoyGraph::new().wide([1, 2, 3, 1]), &[2], &[3]),
        "digon_I_gamma1" => bd(MoyGraph::new().arc(3, 2), &[2], &[3]),
        "ladder_II" => bd(
            MoyGraph::new().wide([1, 2, 5, 6]).wide([6, 5, 3, 4]),
            &[1, 2],
            &[3, 4],
        ),
        "square_III" => bd(
            MoyGraph::new().wide([1, 5, 6, 4]).wide([3, 6, 5, 2]),
            &[1, 3],
            &[2, 4],
        ),
        "square_III_gamma1" => bd(MoyGraph::new().arc(4, 1).arc(2, 3), &[1, 3], &[2, 4]),
        "square_III_gamma2" => bd(MoyGraph::new().arc(2, 1).arc(4, 3), &[1, 3], &[2, 4]),
        "iv_gamma1" => bd(
            MoyGraph::new()
                .wide([8, 7, 4, 5])
                .wide([3, 9, 8, 6])
                .wide([2, 1, 7, 9]),
            &[1, 2, 3],
            &[4, 5, 6],
        ),
        "iv_gamma3" => bd(
            MoyGraph::new()
                .wide([8, 7, 6, 5])
                .wide([1, 9, 8, 4])
                .wide([2, 3, 7, 9]),
            &[1, 2, 3],
            &[4, 5, 6],
        ),
        "iv_gamma2" => bd(
            MoyGraph::new().wide([3, 2, 5, 6]).arc(4, 1),
            &[1, 2, 3],
            &[4, 5, 6],
        ),
        "iv_gamma4" => bd(
            MoyGraph::new().wide([2, 1, 4, 5]).arc(6, 3),
            &[1, 2, 3],
            &[4, 5, 6],
        ),
        "theta" => MoyGraph::new().wide([1, 2, 3, 4]).arc(1, 4).arc(2, 3),
        "closed_ladder" => MoyGraph::new()
            .wide([1, 2, 5, 6])
            .wide([6, 5, 3, 4])
            .arc(1, 4)
            .arc(2, 3),
        "closed_square" => MoyGraph::new()
            .wide([1, 5, 6, 4])
            .wide([3, 6, 5, 2])
            .arc(1, 2)
            .arc(3, 4),
        "trefoil_web" => braid_web(2, &[1, 1, 1]),
        "figure8_web" => braid_web(3, &[1, 2, 1, 2]),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    g.validate()?;
    Ok(g)
}

pub const STANDARD_GRAPHS: &[&str] = &[
    "circle",
    "two_circles",
    "arc",
    "wide",
    "digon_I",
    "digon_I_gamma1",
    "ladder_II",
    "square_III",
    "square_III_gamma1",
    "square_III_gamma2",
    "iv_gamma1",
    "iv_gamma2",
    "iv_gamma3",
    "iv_gamma4",
    "theta",
    "closed_ladder",
    "closed_square",
    "trefoil_web",
    "figure8_web",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::{mat_mul, scalar_matrix};

    #[test]
    fn all_standard_graphs_are_valid() {
        for name in STANDARD_GRAPHS {
            standard_graph(name).unwrap();
        }
    }

    #[test]
    fn iv_gamma3_is_the_swap_of_gamma1() {
        let swap = |m: Mark| match m {
            1 => 3,
            3 => 1,
            4 => 6,
            6 => 4,
            m => m,
        };
        let g1 = standard_graph("iv_gamma1").unwrap();
        let g3 = standard_graph("iv_gamma3").unwrap();
        let mut swapped: Vec<[Mark; 4]> = g1.wide_edges.iter().map(|w| w.map(swap)).collect();
        let mut want = g3.wide_edges.clone();
        // compare as unordered pairs of outs and ins
        let norm = |w: &mut [Mark; 4]| {
            if w[0] > w[1] {
                w.swap(0, 1);
            }
            if w[2] > w[3] {
                w.swap(2, 3);
            }
        };
        swapped.iter_mut().for_each(norm);
        want.iter_mut().for_each(norm);
        swapped.sort();
        want.sort();
        assert_eq!(swapped, want);
    }

    #[test]
    fn chi_composition_is_scalar() {
        for n in 1..=4 {
            let m = [1, 2, 3, 4];
            let [u0, u1] = chi0_matrices(m, n, 1).unwrap();
            let [v0, v1] = chi1_matrices(m, n, 0).unwrap();
            let want = scalar_matrix(2, &(&Polynomial::var(1) - &Polynomial::var(3)));
            assert_eq!(mat_mul(&v0, &u0), want);
            assert_eq!(mat_mul(&v1, &u1), want);
        }
    }

    #[test]
    fn literal_round_trip() {
        let g = standard_graph("square_III").unwrap();
        assert_eq!(MoyGraph::parse_literal(&g.to_literal()).unwrap(), g);
    }

    #[test]
    fn literal_errors() {
        assert!(matches!(
            MoyGraph::parse_literal("a 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            MoyGraph::parse_literal("a 1 2\n"),
            Err(Error::InvalidGraph(_))
        ));
    }
}
