//! Link diagrams, the cube of resolutions and the homology `H_n^{i,j}(L)`.
//!
//! A crossing `X[a, b, c, d]` lists its edges counterclockwise starting from
//! the incoming under-strand, so the under-strand runs `a → c`. It is
//! positive when the over-strand runs `d → b`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::graph::{arc_row, chi0_matrices, chi1_matrices, wide_rows, Mark, MoyGraph};
use crate::homology::{
    cohomology, induced_on, symmetric_window, Echelon, GradedBasis, Matrix, SparseVec,
};
use crate::mf::{KoszulFactorization, Morphism, Reduction, Vector};
use crate::oracle::LaurentPoly;
use crate::poly::{Polynomial, Rational, FORMAL_BASE};
use crate::{par, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub pd: [u32; 4],
    /// `+1` or `-1`.
    pub sign: i8,
}

impl Crossing {
    /// `(incoming edges, outgoing edges)` as `([under, over], [under, over])`.
    pub fn ends(&self) -> ([u32; 2], [u32; 2]) {
        let [a, b, c, d] = self.pd;
        if self.sign > 0 {
            ([a, d], [c, b])
        } else {
            ([a, b], [c, d])
        }
    }

    /// Marks `[x1, x2, x3, x4]` of the local resolutions: `Γ⁰` is the arcs
    /// `x4 → x1`, `x3 → x2` and `Γ¹` the wide edge on these marks.
    pub fn local_marks(&self) -> [u32; 4] {
        let [a, b, c, d] = self.pd;
        if self.sign > 0 {
            [b, c, d, a]
        } else {
            [c, d, a, b]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinkDiagram {
    pub crossings: Vec<Crossing>,
    /// Crossingless unknotted components.
    pub loops: usize,
}

impl LinkDiagram {
    /// A diagram with explicit crossing signs.
    pub fn new(crossings: Vec<Crossing>, loops: usize) -> Result<LinkDiagram> {
        let d = LinkDiagram { crossings, loops };
        d.validate()?;
        Ok(d)
    }

    pub fn unknot() -> LinkDiagram {
        LinkDiagram {
            crossings: Vec::new(),
            loops: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut heads: BTreeMap<u32, usize> = BTreeMap::new();
        let mut tails: BTreeMap<u32, usize> = BTreeMap::new();
        for c in &self.crossings {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::InvalidDiagram(format!("crossing sign {}", c.sign)));
            }
            let (ins, outs) = c.ends();
            for e in ins {
                *heads.entry(e).or_default() += 1;
            }
            for e in outs {
                *tails.entry(e).or_default() += 1;
            }
        }
        for e in heads.keys().chain(tails.keys()) {
            if *e >= FORMAL_BASE / 2 {
                return Err(Error::InvalidDiagram(format!("edge id {e} is too large")));
            }
            if heads.get(e) != Some(&1) || tails.get(e) != Some(&1) {
                return Err(Error::InvalidDiagram(format!(
                    "edge {e} must enter and leave exactly one crossing"
                )));
            }
        }
        Ok(())
    }

    /// A diagram from unsigned PD quadruples; orientations are propagated
    /// from the under-strands, with consecutive labels as a last resort.
    pub fn from_pd(quads: &[[u32; 4]], loops: usize) -> Result<LinkDiagram> {
        let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (k, q) in quads.iter().enumerate() {
            for (p, &e) in q.iter().enumerate() {
                occ.entry(e).or_default().push((k, p));
            }
        }
        for (e, o) in &occ {
            if o.len() != 2 {
                return Err(Error::InvalidDiagram(format!(
                    "edge {e} appears {} times",
                    o.len()
                )));
            }
        }
        // true = edge enters the crossing at this position
        let mut dir: HashMap<(usize, usize), bool> = HashMap::new();
        for k in 0..quads.len() {
            dir.insert((k, 0), true);
            dir.insert((k, 2), false);
        }
        loop {
            let mut changed = true;
            while changed {
                changed = false;
                let set = |dir: &mut HashMap<(usize, usize), bool>,
                           at: (usize, usize),
                           v: bool,
                           e: u32|
                 -> Result<bool> {
                    match dir.get(&at) {
                        Some(&old) if old != v => Err(Error::InconsistentOrientation(e)),
                        Some(_) => Ok(false),
                        None => {
                            dir.insert(at, v);
                            Ok(true)
                        }
                    }
                };
                for (&e, o) in &occ {
                    for (x, y) in [(o[0], o[1]), (o[1], o[0])] {
                        if let Some(&v) = dir.get(&x) {
                            changed |= set(&mut dir, y, !v, e)?;
                        }
                    }
                }
                for (k, q) in quads.iter().enumerate() {
                    for (x, y) in [(1, 3), (3, 1)] {
                        if let Some(&v) = dir.get(&(k, x)) {
                            changed |= set(&mut dir, (k, y), !v, q[y])?;
                        }
                    }
                }
            }
            let Some(k) = (0..quads.len()).find(|&k| !dir.contains_key(&(k, 1))) else {
                break;
            };
            let [_, b, _, d] = quads[k];
            let d_to_b = b == d + 1 || b + 1 < d;
            dir.insert((k, 3), d_to_b);
            dir.insert((k, 1), !d_to_b);
        }
        let crossings = quads
            .iter()
            .enumerate()
            .map(|(k, &pd)| Crossing {
                pd,
                sign: if dir[&(k, 3)] { 1 } else { -1 },
            })
            .collect();
        LinkDiagram::new(crossings, loops)
    }

    /// Closure of a braid word; `i > 0` is `σ_i`, `i < 0` its inverse.
    pub fn from_braid(strands: usize, word: &[i64]) -> Result<LinkDiagram> {
        let mut cur: Vec<u32> = (1..=strands as u32).collect();
        let mut next = strands as u32 + 1;
        let mut crossings = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(Error::GeneratorOutOfRange(g, strands));
            }
            let (l, r) = (i - 1, i);
            let (tl, tr) = (next, next + 1);
            next += 2;
            let (pd, sign) = if g > 0 {
                ([cur[r], tr, tl, cur[l]], 1)
            } else {
                ([cur[l], cur[r], tr, tl], -1)
            };
            crossings.push(Crossing { pd, sign });
            cur[l] = tl;
            cur[r] = tr;
        }
        let rename: HashMap<u32, u32> = cur
            .iter()
            .enumerate()
            .filter(|&(p, &e)| e != p as u32 + 1)
            .map(|(p, &e)| (e, p as u32 + 1))
            .collect();
        let loops = cur
            .iter()
            .enumerate()
            .filter(|&(p, &e)| e == p as u32 + 1)
            .count();
        for c in &mut crossings {
            c.pd = c.pd.map(|e| rename.get(&e).copied().unwrap_or(e));
        }
        LinkDiagram::new(crossings, loops)?.compacted()
    }

    /// Edge ids relabelled `1, 2, …` in order of first appearance.
    pub fn compacted(&self) -> Result<LinkDiagram> {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                pd: c.pd.map(|e| {
                    let k = map.len() as u32 + 1;
                    *map.entry(e).or_insert(k)
                }),
                sign: c.sign,
            })
            .collect();
        LinkDiagram::new(crossings, self.loops)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let mut d = self.clone();
        for k in 0..d.crossings.len() {
            d = crate::oracle::switch_crossing(&d, k);
        }
        d
    }

    pub fn edges(&self) -> BTreeSet<u32> {
        self.crossings.iter().flat_map(|c| c.pd).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Edge following `e` along its component.
    fn successor(&self) -> HashMap<u32, u32> {
        let mut next = HashMap::new();
        for c in &self.crossings {
            let (ins, outs) = c.ends();
            next.insert(ins[0], outs[0]);
            next.insert(ins[1], outs[1]);
        }
        next
    }

    /// Edges of each component in order of travel, starting from its
    /// smallest edge; components are sorted by that edge. Crossingless
    /// loops are not listed.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let next = self.successor();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in self.edges() {
            if seen.contains(&e) {
                continue;
            }
            let mut comp = Vec::new();
            let mut x = e;
            while seen.insert(x) {
                comp.push(x);
                x = next[&x];
            }
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len() + self.loops
    }

    fn max_edge(&self) -> u32 {
        self.edges().into_iter().next_back().unwrap_or(0)
    }

    fn loop_marks(&self) -> Vec<Mark> {
        let start = self.max_edge() + 1;
        (0..self.loops as u32).map(|k| start + k).collect()
    }

    /// `(cohomological degree, q-shift)` of a state.
    pub fn state_degrees(&self, state: u64, n: usize) -> (i64, i64) {
        let n = n as i64;
        let mut i = 0;
        let mut q = 0;
        for (k, c) in self.crossings.iter().enumerate() {
            let one = state >> k & 1 == 1;
            let (di, dq) = match (c.sign > 0, one) {
                (true, false) => (0, 1 - n),
                (true, true) => (1, -n),
                (false, false) => (-1, n),
                (false, true) => (0, n - 1),
            };
            i += di;
            q += dq;
        }
        (i, q)
    }

    /// Whether crossing `k` is resolved by its wide edge in `state`. Bit
    /// `k` set means the resolution in cohomological degree `0` for a negative
    /// crossing and `1` for a positive one; `Γ¹` sits at `1` and `-1`.
    pub fn is_wide(&self, state: u64, k: usize) -> bool {
        (state >> k & 1 == 1) == (self.crossings[k].sign > 0)
    }

    /// The resolution `Γ_ε`.
    pub fn state_graph(&self, state: u64) -> MoyGraph {
        let mut g = MoyGraph::new();
        for (k, c) in self.crossings.iter().enumerate() {
            let [x1, x2, x3, x4] = c.local_marks();
            g = if self.is_wide(state, k) {
                g.wide([x1, x2, x3, x4])
            } else {
                g.arc(x4, x1).arc(x3, x2)
            };
        }
        g.loops(self.loops)
    }
}

/// Placement of marks: edge `e` carries the marks `e, m₁, …, m_k` in order
/// of travel, joined by arcs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Marking {
    pub extra: BTreeMap<u32, usize>,
}

impl Marking {
    pub fn minimal() -> Marking {
        Marking::default()
    }

    /// Chains `(edge, [extra marks])`, with fresh ids above `base`.
    fn chains(&self, base: Mark) -> BTreeMap<u32, Vec<Mark>> {
        let mut next = base;
        let mut out = BTreeMap::new();
        for (&e, &k) in &self.extra {
            let marks: Vec<Mark> = (0..k as u32).map(|i| next + i).collect();
            next += k as u32;
            out.insert(e, marks);
        }
        out
    }
}

/// Factorization of `Γ_ε` with the rows of crossing `k` at `2k`, `2k + 1`.
pub fn state_factorization(
    d: &LinkDiagram,
    state: u64,
    n: usize,
    marking: &Marking,
) -> Result<KoszulFactorization> {
    let base = d.max_edge() + d.loops as u32 + 1;
    let chains = marking.chains(base);
    let head = |e: u32| chains.get(&e).and_then(|c| c.last().copied()).unwrap_or(e);
    let mut k = KoszulFactorization::empty(n);
    for (idx, c) in d.crossings.iter().enumerate() {
        let [x1, x2, _, _] = c.local_marks();
        let [_, _, e3, e4] = c.local_marks();
        let (x3, x4) = (head(e3), head(e4));
        if d.is_wide(state, idx) {
            for (a, b) in wide_rows([x1, x2, x3, x4], n) {
                k.push_row(a, b)?;
            }
            k.q_shift -= 1;
        } else {
            let (a, b) = arc_row(x4, x1, n);
            k.push_row(a, b)?;
            let (a, b) = arc_row(x3, x2, n);
            k.push_row(a, b)?;
        }
    }
    for (&e, marks) in &chains {
        let mut prev = e;
        for &m in marks {
            let (a, b) = arc_row(prev, m, n);
            k.push_row(a, b)?;
            prev = m;
        }
    }
    for m in d.loop_marks() {
        let (a, b) = arc_row(m, m, n);
        k.push_row(a, b)?;
    }
    k.vars.extend(d.edges());
    k.vars.extend(d.loop_marks());
    k.vars.extend(chains.values().flatten().copied());
    Ok(k)
}

/// Which local map an edge of the cube uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiKind {
    /// `Γ⁰ → Γ¹` at a positive crossing.
    Chi0,
    /// `Γ¹ → Γ⁰` at a negative crossing.
    Chi1,
}

#[derive(Clone, Debug)]
pub struct CubeState {
    pub state: u64,
    pub graph: MoyGraph,
    pub degree: i64,
    pub shift: i64,
}

#[derive(Clone, Debug)]
pub struct CubeEdge {
    pub from: u64,
    pub to: u64,
    pub crossing: usize,
    pub kind: ChiKind,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct ResolutionCube {
    pub states: Vec<CubeState>,
    pub edges: Vec<CubeEdge>,
}

pub fn build_cube(d: &LinkDiagram, n: usize) -> Result<ResolutionCube> {
    d.validate()?;
    let c = d.crossings.len();
    if c > 24 {
        return Err(Error::InvalidDiagram(format!("{c} crossings is too many")));
    }
    let mut states = Vec::new();
    let mut edges = Vec::new();
    for s in 0..1u64 << c {
        let (degree, shift) = d.state_degrees(s, n);
        states.push(CubeState {
            state: s,
            graph: d.state_graph(s),
            degree,
            shift,
        });
        for k in 0..c {
            if s >> k & 1 == 1 {
                continue;
            }
            let ones_before = (s & ((1u64 << k) - 1)).count_ones();
            edges.push(CubeEdge {
                from: s,
                to: s | 1 << k,
                crossing: k,
                kind: if d.crossings[k].sign > 0 {
                    ChiKind::Chi0
                } else {
                    ChiKind::Chi1
                },
                sign: if ones_before.is_multiple_of(2) { 1 } else { -1 },
            });
        }
    }
    Ok(ResolutionCube { states, edges })
}

/// The cube map of `edge` between the state factorizations.
pub fn edge_morphism(
    d: &LinkDiagram,
    edge: &CubeEdge,
    n: usize,
    src: &KoszulFactorization,
    tgt: &KoszulFactorization,
    marking: &Marking,
) -> Result<Morphism> {
    let c = d.crossings[edge.crossing];
    let base = d.max_edge() + d.loops as u32 + 1;
    let chains = marking.chains(base);
    let head = |e: u32| chains.get(&e).and_then(|c| c.last().copied()).unwrap_or(e);
    let [x1, x2, e3, e4] = c.local_marks();
    let x = [x1, x2, head(e3), head(e4)];
    let [m0, m1] = match edge.kind {
        ChiKind::Chi0 => chi0_matrices(x, n, 1)?,
        ChiKind::Chi1 => chi1_matrices(x, n, 0)?,
    };
    let k = edge.crossing as u32;
    Ok(Morphism::local(src, tgt, vec![2 * k, 2 * k + 1], m0, m1, 1))
}

/// `(i, j) ↦ dim H^{i,j}`, concentrated in one ℤ₂-degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyTable {
    pub n: usize,
    pub parity: u8,
    pub entries: BTreeMap<(i64, i64), usize>,
}

impl HomologyTable {
    pub fn total_dim(&self) -> usize {
        self.entries.values().sum()
    }

    /// `Σ (−1)^i q^j dim H^{i,j}`.
    pub fn euler(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, j), &d) in &self.entries {
            let c = if i % 2 == 0 { d as i64 } else { -(d as i64) };
            p.add_term(j, Rational::from_integer(c.into()));
        }
        p
    }

    /// `Σ t^i q^j dim H^{i,j}`.
    pub fn poincare(&self) -> Poincare {
        Poincare {
            terms: self.entries.clone(),
        }
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, parity = {}", self.n, self.parity)?;
        if self.entries.is_empty() {
            return writeln!(f, "(zero)");
        }
        let is: BTreeSet<i64> = self.entries.keys().map(|k| k.0).collect();
        let js: BTreeSet<i64> = self.entries.keys().map(|k| k.1).collect();
        write!(f, "{:>6} |", "j\\i")?;
        for i in &is {
            write!(f, "{i:>4}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat(8 + 4 * is.len()))?;
        for j in js.iter().rev() {
            write!(f, "{j:>6} |")?;
            for i in &is {
                match self.entries.get(&(*i, *j)) {
                    Some(d) => write!(f, "{d:>4}")?,
                    None => write!(f, "{:>4}", ".")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Two-variable Poincaré polynomial `Σ t^i q^j dim`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poincare {
    pub terms: BTreeMap<(i64, i64), usize>,
}

impl Poincare {
    /// Specialization at an integer value of `t`.
    pub fn at_t(&self, t: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, j), &d) in &self.terms {
            let tv = Rational::from_integer(t.into());
            let w = if i >= 0 {
                num_traits::pow(tv, i as usize)
            } else {
                num_traits::pow(tv, (-i) as usize).recip()
            };
            p.add_term(j, w * Rational::from_integer((d as i64).into()));
        }
        p
    }
}

impl fmt::Display for Poincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), &d) in self.terms.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let mut parts = Vec::new();
            if d != 1 {
                parts.push(d.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("t".into()),
                _ => parts.push(format!("t^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("q".into()),
                _ => parts.push(format!("q^{j}")),
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

struct StateData {
    red: Reduction,
    basis: GradedBasis,
    /// The representatives of `basis` lifted to the unreduced factorization.
    lifted: BTreeMap<(u8, i64), Vec<Vector>>,
    degree: i64,
    shift: i64,
}

/// Per-state graded pieces `(z2, j) ↦ dim` and per-edge block matrices,
/// keyed by source piece, ready to assemble.
/// A cube edge's induced matrices: `(from, to, sign, matrices by source degree)`.
type EdgeMaps = (usize, usize, i8, BTreeMap<(u8, i64), Matrix>);

/// Offsets of each `(state, z2, j)` block within `C^{i,j}`.
type Blocks = BTreeMap<(i64, i64), BTreeMap<(usize, u8, i64), usize>>;

struct CubeData {
    dims: Vec<BTreeMap<(u8, i64), usize>>,
    degree: Vec<i64>,
    shift: Vec<i64>,
    maps: Vec<EdgeMaps>,
}

fn compute_states(
    d: &LinkDiagram,
    n: usize,
    marking: &Marking,
) -> Result<(ResolutionCube, Vec<StateData>)> {
    let cube = build_cube(d, n)?;
    let data: Vec<Result<StateData>> = par::map(&cube.states, |s| {
        let k = state_factorization(d, s.state, n, marking)?;
        let red = Reduction::maximal(&k);
        let (basis, _) = cohomology(red.result(), symmetric_window(red.result()))?;
        let lifted = basis
            .pieces
            .iter()
            .map(|(&key, p)| (key, p.reps.iter().map(|z| red.section(z)).collect()))
            .collect();
        Ok(StateData {
            red,
            basis,
            lifted,
            degree: s.degree,
            shift: s.shift,
        })
    });
    let data = data.into_iter().collect::<Result<Vec<_>>>()?;
    Ok((cube, data))
}

fn lifted(s: &StateData) -> impl Iterator<Item = ((u8, i64), &[Vector])> {
    s.lifted.iter().map(|(&k, v)| (k, v.as_slice()))
}

fn edge_matrices(
    d: &LinkDiagram,
    n: usize,
    marking: &Marking,
    cube: &ResolutionCube,
    states: &[StateData],
) -> Result<Vec<EdgeMaps>> {
    let out: Vec<Result<_>> = par::map(&cube.edges, |e| {
        let (s, t) = (&states[e.from as usize], &states[e.to as usize]);
        let phi = edge_morphism(d, e, n, &s.red.original, &t.red.original, marking)?;
        // phi only changes the bits of its crossing's rows, so components
        // the target projection drops elsewhere can be skipped up front
        let (mask, value) = t.red.kept_bits();
        let local = !(0b11u64 << (2 * e.crossing));
        let (mask, value) = (mask & local, value & local);
        let m = induced_on(lifted(s), &t.basis, 1, 0, |z| {
            let z: Vector = z
                .iter()
                .filter(|(&g, _)| g & mask == value)
                .map(|(&g, p)| (g, p.clone()))
                .collect();
            t.red.forward(&phi.apply(&z))
        })?;
        Ok((e.from as usize, e.to as usize, e.sign, m))
    });
    out.into_iter().collect()
}

fn state_parity(states: &[StateData]) -> Result<u8> {
    let ps: BTreeSet<u8> = states
        .iter()
        .flat_map(|s| s.basis.pieces.keys().map(|k| k.0))
        .collect();
    match ps.len() {
        0 => Ok(0),
        1 => Ok(*ps.iter().next().unwrap()),
        _ => Err(Error::Inconsistent(
            "state cohomology is not concentrated in one parity".into(),
        )),
    }
}

fn apply_columns(cols: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (&i, x) in v {
        for (&r, y) in &cols[i] {
            let e = out.entry(r).or_insert_with(Rational::zero);
            *e += x * y;
            if e.is_zero() {
                out.remove(&r);
            }
        }
    }
    out
}

/// Assemble the total complex and return `(i, j) ↦ dim H`.
fn assemble(data: &CubeData, j_offset: i64) -> Result<BTreeMap<(i64, i64), usize>> {
    let mut blocks: Blocks = BTreeMap::new();
    let mut sizes: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (s, dims) in data.dims.iter().enumerate() {
        for (&(z2, j), &dim) in dims {
            if dim == 0 {
                continue;
            }
            let key = (data.degree[s], j + data.shift[s] + j_offset);
            let size = sizes.entry(key).or_default();
            blocks.entry(key).or_default().insert((s, z2, j), *size);
            *size += dim;
        }
    }
    // D^{i,j}: columns of C^{i,j} as sparse vectors in C^{i+1,j}
    let mut diffs: BTreeMap<(i64, i64), Vec<SparseVec>> = sizes
        .iter()
        .map(|(&k, &size)| (k, vec![SparseVec::new(); size]))
        .collect();
    for (from, to, sign, mats) in &data.maps {
        for (&(z2, j), m) in mats {
            let key = (data.degree[*from], j + data.shift[*from] + j_offset);
            let tkey = (key.0 + 1, key.1);
            let (Some(&src_off), Some(&tgt_off)) = (
                blocks.get(&key).and_then(|b| b.get(&(*from, z2, j))),
                blocks.get(&tkey).and_then(|b| b.get(&(*to, z2, j + 1))),
            ) else {
                continue;
            };
            let cols = diffs.get_mut(&key).unwrap();
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        let v = if *sign > 0 { x.clone() } else { -x.clone() };
                        cols[src_off + c].insert(tgt_off + r, v);
                    }
                }
            }
        }
    }
    let keys: Vec<(i64, i64)> = sizes.keys().copied().collect();
    let checked: Vec<Result<usize>> = par::map(&keys, |&(i, j)| {
        let cols = &diffs[&(i, j)];
        if let Some(next) = diffs.get(&(i + 1, j)) {
            for c in cols {
                if !apply_columns(next, c).is_empty() {
                    return Err(Error::Inconsistent(format!("d² ≠ 0 at ({i}, {j})")));
                }
            }
        }
        Ok(crate::homology::rank(cols))
    });
    let mut ranks = BTreeMap::new();
    for (k, r) in keys.iter().zip(checked) {
        ranks.insert(*k, r?);
    }
    let mut out = BTreeMap::new();
    for (&(i, j), &size) in &sizes {
        let r_out = ranks[&(i, j)];
        let r_in = ranks.get(&(i - 1, j)).copied().unwrap_or(0);
        let h = size - r_out - r_in;
        if h > 0 {
            out.insert((i, j), h);
        }
    }
    Ok(out)
}

/// `H_n(D)` with all marks placed at the minimal positions.
pub fn kr_homology(d: &LinkDiagram, n: usize) -> Result<HomologyTable> {
    kr_homology_marked(d, n, &Marking::minimal())
}

pub fn kr_homology_marked(d: &LinkDiagram, n: usize, marking: &Marking) -> Result<HomologyTable> {
    if n == 0 {
        return Err(Error::InvalidDiagram("n must be at least 1".into()));
    }
    let (cube, states) = compute_states(d, n, marking)?;
    let maps = edge_matrices(d, n, marking, &cube, &states)?;
    let data = CubeData {
        dims: states
            .iter()
            .map(|s| s.basis.pieces.iter().map(|(&k, p)| (k, p.dim())).collect())
            .collect(),
        degree: states.iter().map(|s| s.degree).collect(),
        shift: states.iter().map(|s| s.shift).collect(),
        maps,
    };
    let p = state_parity(&states)?;
    let entries = assemble(&data, 0)?;
    Ok(HomologyTable {
        n,
        parity: (p + (d.crossings.len() % 2) as u8) % 2,
        entries,
    })
}

/// Quotient of one state's cohomology by the image of multiplication by a
/// mark: per piece, the non-pivot coordinates after reduction modulo the image.
struct Quotient {
    pieces: BTreeMap<(u8, i64), (Echelon, Vec<usize>)>,
}

impl Quotient {
    fn new(dims: &BTreeMap<(u8, i64), usize>, mult: &BTreeMap<(u8, i64), Matrix>) -> Quotient {
        let mut pieces = BTreeMap::new();
        for (&(z2, j), &dim) in dims {
            let mut e = Echelon::new();
            if let Some(m) = mult.get(&(z2, j - 2)) {
                for c in crate::homology::matrix_columns(m) {
                    e.insert(c);
                }
            }
            let pivots: BTreeSet<usize> = (0..dim).filter(|&i| e.is_pivot(i)).collect();
            let free: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
            pieces.insert((z2, j), (e, free));
        }
        Quotient { pieces }
    }

    fn dims(&self) -> BTreeMap<(u8, i64), usize> {
        self.pieces
            .iter()
            .map(|(&k, (_, free))| (k, free.len()))
            .collect()
    }

    fn project(&self, key: (u8, i64), v: SparseVec) -> Vec<Rational> {
        let (e, free) = &self.pieces[&key];
        let mut v = v;
        let mut t = SparseVec::new();
        e.reduce(&mut v, &mut t);
        free.iter()
            .map(|i| v.get(i).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }
}

/// Reduced homology with respect to the component `component` (an index
/// into [`LinkDiagram::components`], crossingless loops numbered after).
pub fn reduced_kr_homology(d: &LinkDiagram, n: usize, component: usize) -> Result<HomologyTable> {
    if n == 0 {
        return Err(Error::InvalidDiagram("n must be at least 1".into()));
    }
    let comps = d.components();
    let mark = if component < comps.len() {
        *comps[component].iter().min().unwrap()
    } else if component < comps.len() + d.loops {
        d.loop_marks()[component - comps.len()]
    } else {
        return Err(Error::InvalidDiagram(format!("no component {component}")));
    };
    let marking = Marking::minimal();
    let (cube, states) = compute_states(d, n, &marking)?;
    let maps = edge_matrices(d, n, &marking, &cube, &states)?;
    let x = Polynomial::var(mark);
    let quotients: Vec<Result<Quotient>> = par::map(&states, |s| {
        let mult = induced_on(lifted(s), &s.basis, 2, 0, |z: &Vector| {
            let prod: Vector = z.iter().map(|(&g, p)| (g, p * &x)).collect();
            s.red.forward(&prod)
        })?;
        let dims = s.basis.pieces.iter().map(|(&k, p)| (k, p.dim())).collect();
        Ok(Quotient::new(&dims, &mult))
    });
    let quotients = quotients.into_iter().collect::<Result<Vec<_>>>()?;
    let mut qmaps = Vec::new();
    for (from, to, sign, mats) in maps {
        let (qs, qt) = (&quotients[from], &quotients[to]);
        let mut out = BTreeMap::new();
        for (&(z2, j), m) in &mats {
            let (Some((_, sfree)), Some(_)) =
                (qs.pieces.get(&(z2, j)), qt.pieces.get(&(z2, j + 1)))
            else {
                continue;
            };
            let cols = crate::homology::matrix_columns(m);
            let projected: Vec<Vec<Rational>> = sfree
                .iter()
                .map(|&c| qt.project((z2, j + 1), cols[c].clone()))
                .collect();
            let rows = qt.pieces[&(z2, j + 1)].1.len();
            let mut mat = vec![vec![Rational::zero(); sfree.len()]; rows];
            for (c, col) in projected.iter().enumerate() {
                for (r, x) in col.iter().enumerate() {
                    mat[r][c] = x.clone();
                }
            }
            out.insert((z2, j), mat);
        }
        qmaps.push((from, to, sign, out));
    }
    let data = CubeData {
        dims: quotients.iter().map(Quotient::dims).collect(),
        degree: states.iter().map(|s| s.degree).collect(),
        shift: states.iter().map(|s| s.shift).collect(),
        maps: qmaps,
    };
    let p = state_parity(&states)?;
    let entries = assemble(&data, n as i64 - 1)?;
    Ok(HomologyTable {
        n,
        parity: (p + (d.crossings.len() % 2) as u8) % 2,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_closures() {
        let hopf = LinkDiagram::from_braid(2, &[1, 1]).unwrap();
        assert_eq!(hopf.component_count(), 2);
        let trefoil = LinkDiagram::from_braid(2, &[1, 1, 1]).unwrap();
        assert_eq!(trefoil.component_count(), 1);
        assert_eq!(trefoil.writhe(), 3);
        let unlink = LinkDiagram::from_braid(2, &[]).unwrap();
        assert_eq!(unlink.component_count(), 2);
        assert!(matches!(
            LinkDiagram::from_braid(2, &[2]),
            Err(Error::GeneratorOutOfRange(2, 2))
        ));
    }

    #[test]
    fn pd_orientation_matches_braid_signs() {
        for word in [
            vec![1, 1, 1],
            vec![1, -2, 1, -2],
            vec![-1, -1],
            vec![1, 2, -1, 2],
        ] {
            let d = LinkDiagram::from_braid(3, &word).unwrap();
            let quads: Vec<[u32; 4]> = d.crossings.iter().map(|c| c.pd).collect();
            let e = LinkDiagram::from_pd(&quads, d.loops).unwrap();
            assert_eq!(e, d, "word {word:?}");
        }
    }

    #[test]
    fn degrees_of_states() {
        let d = LinkDiagram::from_braid(2, &[1, -1]).unwrap();
        assert_eq!(d.state_degrees(0, 3), (-1, 1));
        assert_eq!(d.state_degrees(0b11, 3), (1, -1));
    }
}
