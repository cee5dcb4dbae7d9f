//! Cohomology of 2-periodic complexes (factorizations with zero potential).
//!
//! Each graded piece `C^{z2, j}` is a finite-dimensional ℚ-vector space
//! spanned by pairs (generator, monomial). The differential raises `j` by
//! `n + 1`, so `H^{z2, j}` is computed from the pieces at `j - n - 1`, `j`
//! and `j + n + 1` by exact sparse elimination.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::mf::{Gen, KoszulFactorization, Morphism, Vector};
use crate::oracle::LaurentPoly;
use crate::poly::{graded_monomials, Monomial, Polynomial, Rational, Var};
use crate::{par, Error, Result};

pub type SparseVec = BTreeMap<usize, Rational>;
pub type Matrix = Vec<Vec<Rational>>;

fn axpy(v: &mut SparseVec, c: &Rational, w: &SparseVec) {
    for (&i, x) in w {
        let e = v.entry(i).or_insert_with(Rational::zero);
        *e -= c * x;
        if e.is_zero() {
            v.remove(&i);
        }
    }
}

/// Row echelon form over ℚ; every stored vector has a leading 1 at its pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    /// Reduce `v` in place; `tag` receives the same row operations applied
    /// to the rows' tags. Returns the multipliers used, keyed by pivot.
    pub fn reduce(&self, v: &mut SparseVec, tag: &mut SparseVec) -> BTreeMap<usize, Rational> {
        let mut used = BTreeMap::new();
        let mut start = 0;
        while let Some((&p, c)) = v.range(start..).next() {
            start = p + 1;
            if let Some((row, rtag)) = self.rows.get(&p) {
                let c = c.clone();
                axpy(v, &c, row);
                axpy(tag, &c, rtag);
                used.insert(p, c);
            }
        }
        used
    }

    /// Insert a vector already reduced against this echelon. Returns its pivot.
    pub fn insert_reduced(&mut self, mut v: SparseVec, mut tag: SparseVec) -> Option<usize> {
        let (&p, c) = v.iter().next()?;
        let inv = Rational::one() / c.clone();
        for x in v.values_mut() {
            *x *= &inv;
        }
        for x in tag.values_mut() {
            *x *= &inv;
        }
        self.rows.insert(p, (v, tag));
        Some(p)
    }

    /// Insert `v` if it is independent of the stored rows.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        let mut t = SparseVec::new();
        self.reduce(&mut v, &mut t);
        self.insert_reduced(v, t).is_some()
    }
}

/// Rank of a matrix given by its columns.
pub fn rank(columns: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for c in columns {
        e.insert(c.clone());
    }
    e.rank()
}

/// Graded dimension, a Laurent polynomial in `q` and `s` with `s² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct GdimPoly {
    /// `(power of s, power of q) ↦ dimension`.
    pub coeffs: BTreeMap<(u8, i64), u64>,
}

impl GdimPoly {
    pub fn zero() -> Self {
        GdimPoly::default()
    }

    pub fn monomial(s: u8, q: i64, c: u64) -> Self {
        let mut g = GdimPoly::zero();
        g.add_term(s % 2, q, c);
        g
    }

    pub fn one() -> Self {
        GdimPoly::monomial(0, 0, 1)
    }

    pub fn add_term(&mut self, s: u8, q: i64, c: u64) {
        if c > 0 {
            *self.coeffs.entry((s % 2, q)).or_insert(0) += c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &GdimPoly) -> GdimPoly {
        let mut out = self.clone();
        for (&(s, q), &c) in &other.coeffs {
            out.add_term(s, q, c);
        }
        out
    }

    pub fn mul(&self, other: &GdimPoly) -> GdimPoly {
        let mut out = GdimPoly::zero();
        for (&(s1, q1), &c1) in &self.coeffs {
            for (&(s2, q2), &c2) in &other.coeffs {
                out.add_term((s1 + s2) % 2, q1 + q2, c1 * c2);
            }
        }
        out
    }

    pub fn shift(&self, dq: i64, ds: u8) -> GdimPoly {
        GdimPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(s, q), &c)| (((s + ds) % 2, q + dq), c))
                .collect(),
        }
    }

    /// The part with the given power of `s`, as a polynomial in `q`.
    pub fn part(&self, s: u8) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(t, q), &c) in &self.coeffs {
            if t == s % 2 {
                p.add_term(q, Rational::from_integer(c.into()));
            }
        }
        p
    }

    /// `Σ c q^k` placed at `s^z2`; panics on negative coefficients.
    pub fn from_laurent(p: &LaurentPoly, z2: u8) -> GdimPoly {
        let mut g = GdimPoly::zero();
        for (&k, c) in p.terms() {
            assert!(
                c.is_integer() && *c > Rational::zero(),
                "gdim coefficients are positive integers"
            );
            g.add_term(z2, k, c.to_integer().try_into().unwrap());
        }
        g
    }

    pub fn parities(&self) -> BTreeSet<u8> {
        self.coeffs.keys().map(|&(s, _)| s).collect()
    }

    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }
}

impl fmt::Display for GdimPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for s in [0u8, 1] {
            for (&(t, q), &c) in self.coeffs.iter().rev() {
                if t != s {
                    continue;
                }
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                let mut parts = Vec::new();
                if c != 1 {
                    parts.push(c.to_string());
                }
                if s == 1 {
                    parts.push("s".into());
                }
                match q {
                    0 => {}
                    1 => parts.push("q".into()),
                    _ => parts.push(format!("q^{q}")),
                }
                if parts.is_empty() {
                    parts.push("1".into());
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Coords {
    list: Vec<(Gen, Monomial)>,
    index: HashMap<(Gen, Monomial), usize>,
}

/// A smaller complex quasi-isomorphic to `K`.
///
/// Some rows contribute an entry `c_r` (either side) such that the leading
/// monomials of the chosen entries are pairwise coprime; these entries then
/// form a Gröbner basis and a regular sequence. The model keeps the
/// generators whose membership in those rows is fixed (outside for a `b`
/// entry, inside for an `a` entry) and works over `R/(c_r)`. The projection
/// from `K` is a quasi-isomorphism; cocycles are lifted back one row at a
/// time by exact division.
#[derive(Clone, Debug)]
struct Model {
    steps: Vec<(u32, Polynomial)>,
    lms: Vec<Monomial>,
    mask: Gen,
    fixed: Gen,
    /// Normal forms of the non-normal monomials up to some degree.
    table: HashMap<Monomial, Polynomial>,
}

fn coprime(a: &Monomial, b: &Monomial) -> bool {
    a.vars().all(|v| b.exponent(v) == 0)
}

impl Model {
    fn choose(k: &KoszulFactorization) -> Model {
        // Candidates per row: (row id, takes the `a` side, entry).
        let cands: Vec<Vec<(u32, bool, Polynomial, Monomial)>> = k
            .rows
            .iter()
            .map(|r| {
                [(true, &r.a), (false, &r.b)]
                    .into_iter()
                    .filter(|(_, p)| p.degree().is_some_and(|d| d > 0))
                    .map(|(side, p)| (r.id, side, p.clone(), p.leading_term().unwrap().0.clone()))
                    .collect()
            })
            .collect();
        let mut best: (usize, i64, Vec<usize>) = (0, 0, Vec::new());
        let mut pick = Vec::new();
        search(&cands, 0, &mut pick, &mut best);
        let mut m = Model {
            steps: Vec::new(),
            lms: Vec::new(),
            mask: 0,
            fixed: 0,
            table: HashMap::new(),
        };
        for (row, &c) in best.2.iter().enumerate() {
            if c == usize::MAX {
                continue;
            }
            let (id, side, p, lm) = &cands[row][c];
            m.mask |= 1 << id;
            if *side {
                m.fixed |= 1 << id;
            }
            m.steps.push((*id, p.clone()));
            m.lms.push(lm.clone());
        }
        m
    }

    fn contains(&self, g: Gen) -> bool {
        g & self.mask == self.fixed
    }

    fn is_normal(&self, m: &Monomial) -> bool {
        self.lms.iter().all(|l| m.div(l).is_none())
    }

    /// Division by the first `upto` entries: quotients and remainder.
    fn divide(&self, p: &Polynomial, upto: usize) -> (Vec<Polynomial>, Polynomial) {
        let mut quo = vec![Polynomial::zero(); upto];
        let mut rem = Polynomial::zero();
        let mut r = p.clone();
        'outer: while let Some((m, c)) = r.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            for (i, lm) in self.lms[..upto].iter().enumerate() {
                if let Some(t) = m.div(lm) {
                    let lc = self.steps[i].1.leading_term().unwrap().1;
                    let k = c / lc;
                    r -= &self.steps[i].1.mul_monomial(&t, &k);
                    quo[i].add_term(t, k);
                    continue 'outer;
                }
            }
            r.add_term(m.clone(), -c.clone());
            rem.add_term(m, c);
        }
        (quo, rem)
    }

    /// Fill the normal-form table for monomials of the given degrees in `vars`.
    ///
    /// Within one degree, rewriting `t·lm` by the tail of its entry only
    /// produces smaller monomials, so increasing order needs no recursion.
    fn tabulate(&mut self, vars: &BTreeSet<Var>, degrees: impl Iterator<Item = i64>) {
        if self.steps.is_empty() {
            return;
        }
        let tails: Vec<Polynomial> = self
            .steps
            .iter()
            .map(|(_, c)| {
                let (lm, lc) = c.leading_term().unwrap();
                let mut t = c.scale(&(-Rational::one() / lc));
                t.add_term(lm.clone(), Rational::one());
                t
            })
            .collect();
        for d in degrees {
            let mut mons = graded_monomials(vars, d);
            mons.sort();
            for m in mons {
                let Some((i, t)) = self
                    .lms
                    .iter()
                    .enumerate()
                    .find_map(|(i, l)| m.div(l).map(|t| (i, t)))
                else {
                    continue;
                };
                let mut nf = Polynomial::zero();
                for (u, a) in tails[i].terms() {
                    let tu = t.mul(u);
                    match self.table.get(&tu) {
                        Some(p) => nf += &p.scale(a),
                        None => nf.add_term(tu, a.clone()),
                    }
                }
                self.table.insert(m, nf);
            }
        }
    }

    fn normal_form(&self, p: &Polynomial) -> Polynomial {
        if self.steps.is_empty() {
            return p.clone();
        }
        let mut out = Polynomial::zero();
        let mut missing = false;
        for (m, c) in p.terms() {
            if self.is_normal(m) {
                out.add_term(m.clone(), c.clone());
            } else if let Some(nf) = self.table.get(m) {
                out += &nf.scale(c);
            } else {
                missing = true;
                break;
            }
        }
        if missing {
            return self.divide(p, self.steps.len()).1;
        }
        out
    }

    fn project(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&g, p) in v {
            if self.contains(g) {
                crate::mf::add_into(&mut out, g, self.normal_form(p));
            }
        }
        out
    }

    /// A cocycle of `K` projecting to the model cocycle `z`.
    fn lift(&self, k: &KoszulFactorization, mut z: Vector) -> Result<Vector> {
        for i in (0..self.steps.len()).rev() {
            let (id, c) = &self.steps[i];
            let bit = 1u64 << id;
            // Rows quotiented before step i keep their fixed membership.
            let earlier: Gen = self.steps[..i].iter().fold(0, |m, (r, _)| m | 1 << r);
            let dz = k.apply_d(&z);
            let mut y = Vector::new();
            for (g, p) in dz {
                if g & earlier != self.fixed & earlier || (g & bit) != (self.fixed & bit) {
                    continue;
                }
                let (quo, rem) = self.divide(&p, i + 1);
                if !rem.is_zero() {
                    return Err(Error::Inconsistent("model cocycle does not lift".into()));
                }
                let h = &quo[i];
                let partner = g ^ bit;
                let coef = k.d_gen(partner).remove(&g).unwrap_or_else(Polynomial::zero);
                let sign = if coef == *c {
                    -Rational::one()
                } else if coef == -c {
                    Rational::one()
                } else {
                    return Err(Error::Inconsistent("unexpected row entry in lift".into()));
                };
                crate::mf::add_into(&mut y, partner, h.scale(&sign));
            }
            for (g, p) in y {
                crate::mf::add_into(&mut z, g, p);
            }
        }
        if !k.apply_d(&z).is_empty() {
            return Err(Error::Inconsistent("lifted vector is not a cocycle".into()));
        }
        Ok(z)
    }
}

fn search(
    cands: &[Vec<(u32, bool, Polynomial, Monomial)>],
    row: usize,
    pick: &mut Vec<usize>,
    best: &mut (usize, i64, Vec<usize>),
) {
    if row == cands.len() {
        let chosen: Vec<&Monomial> = pick
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != usize::MAX)
            .map(|(r, &c)| &cands[r][c].3)
            .collect();
        let deg: i64 = chosen.iter().map(|m| m.degree()).sum();
        if (chosen.len(), -deg) > (best.0, -best.1) || best.2.is_empty() {
            *best = (chosen.len(), deg, pick.clone());
        }
        return;
    }
    let so_far = pick.iter().filter(|&&c| c != usize::MAX).count();
    if so_far + (cands.len() - row) < best.0 {
        return;
    }
    for (c, cand) in cands[row].iter().enumerate() {
        let ok = pick
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != usize::MAX)
            .all(|(r, &p)| coprime(&cands[r][p].3, &cand.3));
        if ok {
            pick.push(c);
            search(cands, row + 1, pick, best);
            pick.pop();
        }
    }
    pick.push(usize::MAX);
    search(cands, row + 1, pick, best);
    pick.pop();
}

fn piece_coords(k: &KoszulFactorization, model: &Model, gens: &[Gen], z2: u8, j: i64) -> Coords {
    let mut list = Vec::new();
    for &g in gens {
        if k.gen_z2(g) != z2 {
            continue;
        }
        let rest = j - k.gen_degree(g);
        if rest < 0 || rest % 2 != 0 {
            continue;
        }
        for m in graded_monomials(&k.vars, rest) {
            if model.is_normal(&m) {
                list.push((g, m));
            }
        }
    }
    let index = list
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    Coords { list, index }
}

fn to_sparse(coords: &Coords, v: &Vector) -> Result<SparseVec> {
    let mut out = SparseVec::new();
    for (&g, p) in v {
        for (m, c) in p.terms() {
            let i = coords
                .index
                .get(&(g, m.clone()))
                .ok_or_else(|| Error::Inconsistent("vector outside its graded piece".into()))?;
            out.insert(*i, c.clone());
        }
    }
    Ok(out)
}

fn from_sparse(coords: &Coords, v: &SparseVec) -> Vector {
    let mut out = Vector::new();
    for (&i, c) in v {
        let (g, m) = &coords.list[i];
        crate::mf::add_into(&mut out, *g, Polynomial::term(c.clone(), m.clone()));
    }
    out
}

/// Cohomology of one graded piece with explicit cocycle representatives.
pub struct Piece {
    pub z2: u8,
    pub j: i64,
    coords: Coords,
    model: Arc<Model>,
    /// Echelon of coboundaries followed by the representatives; the tag of
    /// a row is the unit vector of its representative (empty for coboundaries).
    echelon: Echelon,
    pivots: Vec<usize>,
    pub reps: Vec<Vector>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of a cocycle in the basis `reps`.
    pub fn coordinates(&self, v: &Vector) -> Result<Vec<Rational>> {
        let mut s = to_sparse(&self.coords, &self.model.project(v))?;
        let mut tag = SparseVec::new();
        let used = self.echelon.reduce(&mut s, &mut tag);
        if !s.is_empty() {
            return Err(Error::Inconsistent(format!(
                "not a cocycle in degree ({}, {})",
                self.z2, self.j
            )));
        }
        Ok(self
            .pivots
            .iter()
            .map(|p| used.get(p).cloned().unwrap_or_else(Rational::zero))
            .collect())
    }
}

/// Cocycle bases of the nonzero graded pieces of `H(K)`.
pub struct GradedBasis {
    pub factorization: KoszulFactorization,
    pub pieces: BTreeMap<(u8, i64), Piece>,
}

impl GradedBasis {
    pub fn empty(k: &KoszulFactorization) -> Self {
        GradedBasis {
            factorization: k.clone(),
            pieces: BTreeMap::new(),
        }
    }

    pub fn dim(&self, z2: u8, j: i64) -> usize {
        self.pieces.get(&(z2, j)).map_or(0, Piece::dim)
    }

    pub fn gdim(&self) -> GdimPoly {
        let mut g = GdimPoly::zero();
        for (&(z2, j), p) in &self.pieces {
            g.add_term(z2, j, p.dim() as u64);
        }
        g
    }

    /// Coordinates of a cocycle of degree `(z2, j)`; empty if that piece vanishes.
    pub fn coordinates(&self, z2: u8, j: i64, v: &Vector) -> Result<Vec<Rational>> {
        match self.pieces.get(&(z2, j)) {
            Some(p) => p.coordinates(v),
            None => Ok(Vec::new()),
        }
    }
}

/// `(j_min, j_max)`: no cohomology lies below the smallest generator degree;
/// `n·e` bounds it from above for a graph with `e` edges.
pub fn degree_window(k: &KoszulFactorization, edges: usize) -> (i64, i64) {
    if k.rows.is_empty() {
        return (k.q_shift, k.q_shift);
    }
    let lo = k.min_degree();
    (lo, lo.max((k.n * edges) as i64))
}

/// Window for a closed graph: its graded dimension is symmetric under
/// `q ↔ q⁻¹`, so the lower bound also bounds it from above.
pub fn symmetric_window(k: &KoszulFactorization) -> (i64, i64) {
    let lo = k.min_degree();
    (lo, -lo)
}

struct Elimination {
    kernel: Vec<SparseVec>,
    image: Echelon,
}

fn eliminate(
    dgen: &HashMap<Gen, Vector>,
    model: &Model,
    src: &Coords,
    tgt: Option<&Coords>,
) -> Result<Elimination> {
    let mut image = Echelon::new();
    let mut kernel = Vec::new();
    for (c, (g, m)) in src.list.iter().enumerate() {
        let mut img = SparseVec::new();
        if let Some(tgt) = tgt {
            let dv: Vector = dgen[g]
                .iter()
                .map(|(&t, p)| (t, model.normal_form(&p.mul_monomial(m, &Rational::one()))))
                .filter(|(_, p)| !p.is_zero())
                .collect();
            img = to_sparse(tgt, &dv)?;
        }
        let mut tag = SparseVec::new();
        tag.insert(c, Rational::one());
        image.reduce(&mut img, &mut tag);
        if img.is_empty() {
            kernel.push(tag);
        } else {
            image.insert_reduced(img, tag);
        }
    }
    Ok(Elimination { kernel, image })
}

/// Cohomology of `K` in the window `[lo, hi]` of internal degrees.
pub fn cohomology(k: &KoszulFactorization, window: (i64, i64)) -> Result<(GradedBasis, GdimPoly)> {
    if !k.potential().is_zero() {
        return Err(Error::PotentialNonzero);
    }
    if k.has_unit_row() || window.0 > window.1 {
        let b = GradedBasis::empty(k);
        return Ok((b, GdimPoly::zero()));
    }
    let n1 = k.n as i64 + 1;
    let (lo, hi) = window;
    let lo = lo.max(k.min_degree());
    let mut model = Model::choose(k);
    model.tabulate(&k.vars, (0..=hi + n1 - k.min_degree()).step_by(2));
    let model = Arc::new(model);
    let gens: Vec<Gen> = k
        .generators()
        .into_iter()
        .filter(|&g| model.contains(g))
        .collect();
    // The model differential: the rows outside the quotient, reduced.
    let dgen: HashMap<Gen, Vector> = gens
        .iter()
        .map(|&g| {
            let v = k
                .d_gen(g)
                .into_iter()
                .filter(|(t, _)| model.contains(*t))
                .collect();
            (g, v)
        })
        .collect();

    let mut keys: Vec<(u8, i64)> = Vec::new();
    for j in (lo - n1)..=(hi + n1) {
        for z2 in 0..2 {
            keys.push((z2, j));
        }
    }
    let coords: HashMap<(u8, i64), Coords> = keys
        .iter()
        .map(|&(z2, j)| ((z2, j), piece_coords(k, &model, &gens, z2, j)))
        .filter(|(_, c)| !c.list.is_empty())
        .collect();

    let elim_keys: Vec<(u8, i64)> = keys
        .iter()
        .copied()
        .filter(|&(_, j)| j <= hi)
        .filter(|key| coords.contains_key(key))
        .collect();
    let elims: Vec<Result<Elimination>> = par::map(&elim_keys, |&(z2, j)| {
        eliminate(
            &dgen,
            &model,
            &coords[&(z2, j)],
            coords.get(&(1 - z2, j + n1)),
        )
    });
    let mut elim: HashMap<(u8, i64), Elimination> = HashMap::new();
    for (key, e) in elim_keys.iter().zip(elims) {
        elim.insert(*key, e?);
    }

    let piece_keys: Vec<(u8, i64)> = elim_keys
        .iter()
        .copied()
        .filter(|&(_, j)| j >= lo)
        .collect();
    let empty = Echelon::new();
    let pieces: Vec<Result<Option<Piece>>> = par::map(&piece_keys, |&(z2, j)| {
        let e = &elim[&(z2, j)];
        let bound = elim.get(&(1 - z2, j - n1)).map_or(&empty, |b| &b.image);
        let dim = e.kernel.len() - bound.rank();
        if dim == 0 {
            return Ok(None);
        }
        let mut ech = bound.clone();
        let mut pivots = Vec::new();
        let c = &coords[&(z2, j)];
        for kv in &e.kernel {
            let mut v = kv.clone();
            let mut t = SparseVec::new();
            ech.reduce(&mut v, &mut t);
            if let Some(p) = ech.insert_reduced(v, SparseVec::new()) {
                pivots.push(p);
                if pivots.len() == dim {
                    break;
                }
            }
        }
        let reps = pivots
            .iter()
            .map(|p| model.lift(k, from_sparse(c, &ech.rows[p].0)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(Piece {
            z2,
            j,
            coords: Coords {
                list: c.list.clone(),
                index: c.index.clone(),
            },
            model: model.clone(),
            echelon: ech,
            pivots,
            reps,
        }))
    });
    let mut basis = GradedBasis::empty(k);
    for p in pieces {
        if let Some(p) = p? {
            basis.pieces.insert((p.z2, p.j), p);
        }
    }
    let g = basis.gdim();
    Ok((basis, g))
}

/// Matrices of the map induced on cohomology by `f`, keyed by source degree.
///
/// `f` must be a chain map of the given degrees from the complex of `src`
/// to the complex of `tgt`. Rows index target representatives, columns
/// source representatives.
pub fn induced_by<F>(
    src: &GradedBasis,
    tgt: &GradedBasis,
    q_degree: i64,
    z2_degree: u8,
    f: F,
) -> Result<BTreeMap<(u8, i64), Matrix>>
where
    F: Fn(&Vector) -> Vector,
{
    induced_on(
        src.pieces.iter().map(|(&k, p)| (k, p.reps.as_slice())),
        tgt,
        q_degree,
        z2_degree,
        f,
    )
}

/// As [`induced_by`], with the source cocycles given directly, for instance
/// after lifting them to a larger complex once.
pub fn induced_on<'a, I, F>(
    src: I,
    tgt: &GradedBasis,
    q_degree: i64,
    z2_degree: u8,
    f: F,
) -> Result<BTreeMap<(u8, i64), Matrix>>
where
    I: IntoIterator<Item = ((u8, i64), &'a [Vector])>,
    F: Fn(&Vector) -> Vector,
{
    let mut out = BTreeMap::new();
    for ((z2, j), reps) in src {
        let tz = (z2 + z2_degree) % 2;
        let tj = j + q_degree;
        let rows = tgt.dim(tz, tj);
        let mut m = vec![vec![Rational::zero(); reps.len()]; rows];
        if rows > 0 {
            for (c, rep) in reps.iter().enumerate() {
                let coords = tgt.coordinates(tz, tj, &f(rep))?;
                for (r, x) in coords.into_iter().enumerate() {
                    m[r][c] = x;
                }
            }
        }
        out.insert((z2, j), m);
    }
    Ok(out)
}

pub fn induced_map(
    phi: &Morphism,
    src: &GradedBasis,
    tgt: &GradedBasis,
) -> Result<BTreeMap<(u8, i64), Matrix>> {
    induced_by(src, tgt, phi.q_degree, phi.z2_degree, |v| phi.apply(v))
}

/// Multiplication by the variable `x` as an endomorphism of degree 2.
pub fn mult_endomorphism(k: &KoszulFactorization, x: Var) -> Result<Morphism> {
    if !k.vars.contains(&x) {
        return Err(Error::UnknownVariable(x));
    }
    Ok(Morphism::multiplication(k, &Polynomial::var(x)))
}

pub fn matrix_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b.iter())
                        .fold(Rational::zero(), |s, (x, r)| s + x * &r[j])
                })
                .collect()
        })
        .collect()
}

pub fn is_zero_matrix(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().all(Zero::is_zero))
}

pub fn matrix_columns(m: &Matrix) -> Vec<SparseVec> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            m.iter()
                .enumerate()
                .filter(|(_, r)| !r[j].is_zero())
                .map(|(i, r)| (i, r[j].clone()))
                .collect()
        })
        .collect()
}
