//! Graded Koszul matrix factorizations.
//!
//! A factorization `{a, b}` with rows `(a_k, b_k)` is the tensor product of
//! the rank-one factorizations `R --a_k--> R{n+1-deg a_k} --b_k--> R`. Its
//! generators are subsets `J` of rows, stored as bitmasks over row ids. The
//! differential acts on `e_J` by
//!
//! ```text
//! d(e_J) = Σ_{k∉J} ± a_k e_{J∪k} + Σ_{k∈J} ± b_k e_{J∖k},
//! ```
//!
//! where the sign is `(-1)^{#{j ∈ J : j > k}}`: rows act by right
//! multiplication in the Clifford algebra. With this rule `d² = w·Id`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::poly::{Polynomial, Rational, Var};
use crate::{Error, Result};

pub type Gen = u64;
pub type Vector = BTreeMap<Gen, Polynomial>;

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub id: u32,
    pub a: Polynomial,
    pub b: Polynomial,
    /// Degree of `a`; stored so that rows like `(0, 0)` keep their grading.
    pub a_deg: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KoszulFactorization {
    pub n: usize,
    pub rows: Vec<Row>,
    pub vars: BTreeSet<Var>,
    pub q_shift: i64,
    pub z2_shift: u8,
}

pub(crate) fn flips(j: Gen, k: u32) -> bool {
    let above = if k >= 63 { 0 } else { j >> (k + 1) };
    above.count_ones() % 2 == 1
}

pub(crate) fn add_into(v: &mut Vector, g: Gen, p: Polynomial) {
    if p.is_zero() {
        return;
    }
    match v.entry(g) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(p);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &p;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn vector_add(a: &Vector, b: &Vector) -> Vector {
    let mut out = a.clone();
    for (&g, p) in b {
        add_into(&mut out, g, p.clone());
    }
    out
}

pub fn vector_scale(v: &Vector, c: &Polynomial) -> Vector {
    let mut out = Vector::new();
    for (&g, p) in v {
        add_into(&mut out, g, p * c);
    }
    out
}

fn subset_cmp(a: Gen, b: Gen) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        let (mut x, mut y) = (a, b);
        while x != 0 && y != 0 {
            let (i, j) = (x.trailing_zeros(), y.trailing_zeros());
            if i != j {
                return i.cmp(&j);
            }
            x &= x - 1;
            y &= y - 1;
        }
        Ordering::Equal
    })
}

impl KoszulFactorization {
    pub fn empty(n: usize) -> Self {
        KoszulFactorization {
            n,
            rows: Vec::new(),
            vars: BTreeSet::new(),
            q_shift: 0,
            z2_shift: 0,
        }
    }

    /// Factorization with the given `(a, b)` rows; ids are assigned in order.
    pub fn new(n: usize, rows: Vec<(Polynomial, Polynomial)>) -> Result<Self> {
        let mut k = KoszulFactorization::empty(n);
        for (a, b) in rows {
            k.push_row(a, b)?;
        }
        Ok(k)
    }

    /// Append a row; the degree of `a` is inferred from whichever entry is nonzero.
    pub fn push_row(&mut self, a: Polynomial, b: Polynomial) -> Result<()> {
        let total = 2 * (self.n as i64 + 1);
        let a_deg = match (a.degree(), b.degree()) {
            (Some(da), Some(db)) if da + db == total => da,
            (Some(da), None) => da,
            (None, Some(db)) => total - db,
            _ => return Err(Error::DegreeViolation),
        };
        self.push_row_with_degree(a, b, a_deg)
    }

    pub fn push_row_with_degree(&mut self, a: Polynomial, b: Polynomial, a_deg: i64) -> Result<()> {
        let total = 2 * (self.n as i64 + 1);
        let ok =
            |p: &Polynomial, d: i64| p.is_zero() || (p.is_homogeneous() && p.degree() == Some(d));
        if !ok(&a, a_deg) || !ok(&b, total - a_deg) {
            return Err(Error::DegreeViolation);
        }
        let id = self.rows.last().map_or(0, |r| r.id + 1);
        assert!(id < 64, "at most 64 rows are supported");
        self.vars.extend(a.vars());
        self.vars.extend(b.vars());
        self.rows.push(Row { id, a, b, a_deg });
        Ok(())
    }

    pub fn potential(&self) -> Polynomial {
        let mut w = Polynomial::zero();
        for r in &self.rows {
            w += &(&r.a * &r.b);
        }
        w
    }

    pub fn row_by_id(&self, id: u32) -> Option<&Row> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn row_mask(&self) -> Gen {
        self.rows.iter().fold(0, |m, r| m | (1 << r.id))
    }

    pub fn gen_degree(&self, j: Gen) -> i64 {
        self.q_shift
            + self
                .rows
                .iter()
                .filter(|r| j >> r.id & 1 == 1)
                .map(|r| self.n as i64 + 1 - r.a_deg)
                .sum::<i64>()
    }

    pub fn gen_z2(&self, j: Gen) -> u8 {
        ((j.count_ones() as u8) + self.z2_shift) % 2
    }

    /// All generators in graded-lex subset order.
    pub fn generators(&self) -> Vec<Gen> {
        let ids: Vec<u32> = self.rows.iter().map(|r| r.id).collect();
        let mut out = Vec::with_capacity(1 << ids.len());
        for s in 0u64..(1u64 << ids.len()) {
            let mut g = 0;
            for (k, &id) in ids.iter().enumerate() {
                if s >> k & 1 == 1 {
                    g |= 1 << id;
                }
            }
            out.push(g);
        }
        out.sort_by(|&a, &b| subset_cmp(a, b));
        out
    }

    pub fn generators_z2(&self, z2: u8) -> Vec<Gen> {
        self.generators()
            .into_iter()
            .filter(|&g| self.gen_z2(g) == z2)
            .collect()
    }

    pub fn min_degree(&self) -> i64 {
        self.q_shift
            + self
                .rows
                .iter()
                .map(|r| (self.n as i64 + 1 - r.a_deg).min(0))
                .sum::<i64>()
    }

    pub fn max_degree(&self) -> i64 {
        self.q_shift
            + self
                .rows
                .iter()
                .map(|r| (self.n as i64 + 1 - r.a_deg).max(0))
                .sum::<i64>()
    }

    /// `d(e_J)` as a vector.
    pub fn d_gen(&self, j: Gen) -> Vector {
        self.d_gen_skipping(j, None)
    }

    fn d_gen_skipping(&self, j: Gen, skip: Option<u32>) -> Vector {
        let mut out = Vector::new();
        for r in &self.rows {
            if Some(r.id) == skip {
                continue;
            }
            let bit = 1u64 << r.id;
            let (target, coef) = if j & bit == 0 {
                (j | bit, &r.a)
            } else {
                (j & !bit, &r.b)
            };
            if coef.is_zero() {
                continue;
            }
            let c = if flips(j, r.id) { -coef } else { coef.clone() };
            add_into(&mut out, target, c);
        }
        out
    }

    pub fn apply_d(&self, v: &Vector) -> Vector {
        self.apply_d_skipping(v, None)
    }

    fn apply_d_skipping(&self, v: &Vector, skip: Option<u32>) -> Vector {
        let mut out = Vector::new();
        for (&j, p) in v {
            for (t, c) in self.d_gen_skipping(j, skip) {
                add_into(&mut out, t, &c * p);
            }
        }
        out
    }

    /// `(D0, D1)`: the even-to-odd and odd-to-even differentials as matrices
    /// whose columns are indexed by source generators.
    pub fn matrices(&self) -> (Vec<Vec<Polynomial>>, Vec<Vec<Polynomial>>) {
        let even = self.generators_z2(self.z2_shift % 2);
        let odd = self.generators_z2((self.z2_shift + 1) % 2);
        let build = |src: &[Gen], tgt: &[Gen]| {
            let mut m = vec![vec![Polynomial::zero(); src.len()]; tgt.len()];
            for (c, &g) in src.iter().enumerate() {
                for (t, p) in self.d_gen(g) {
                    let r = tgt.iter().position(|&x| x == t).expect("target generator");
                    m[r][c] = p;
                }
            }
            m
        };
        (build(&even, &odd), build(&odd, &even))
    }

    pub fn tensor(&self, other: &KoszulFactorization) -> Result<KoszulFactorization> {
        if self.n != other.n {
            return Err(Error::LevelMismatch(self.n, other.n));
        }
        let mut out = KoszulFactorization::empty(self.n);
        for r in self.rows.iter().chain(other.rows.iter()) {
            out.push_row_with_degree(r.a.clone(), r.b.clone(), r.a_deg)?;
        }
        out.vars = self.vars.union(&other.vars).copied().collect();
        out.q_shift = self.q_shift + other.q_shift;
        out.z2_shift = (self.z2_shift + other.z2_shift) % 2;
        Ok(out)
    }

    pub fn shift(&self, dq: i64, dz2: u8) -> KoszulFactorization {
        let mut out = self.clone();
        out.q_shift += dq;
        out.z2_shift = (out.z2_shift + dz2) % 2;
        out
    }

    /// `a_i ← a_i + λ a_j`, `b_j ← b_j − λ b_i` (rows by position).
    pub fn row_transform(
        &self,
        i: usize,
        j: usize,
        lambda: &Polynomial,
    ) -> Result<KoszulFactorization> {
        if i == j || i >= self.rows.len() || j >= self.rows.len() {
            return Err(Error::DegreeViolation);
        }
        if !lambda.is_zero()
            && (!lambda.is_homogeneous()
                || lambda.degree().unwrap() + self.rows[j].a_deg != self.rows[i].a_deg)
        {
            return Err(Error::DegreeViolation);
        }
        let mut out = self.clone();
        out.rows[i].a = &self.rows[i].a + &(lambda * &self.rows[j].a);
        out.rows[j].b = &self.rows[j].b - &(lambda * &self.rows[i].b);
        Ok(out)
    }

    /// Set the listed variables to zero.
    pub fn fiber(&self, kill: &BTreeSet<Var>) -> KoszulFactorization {
        let bind: BTreeMap<Var, Polynomial> =
            kill.iter().map(|&v| (v, Polynomial::zero())).collect();
        let mut out = self.clone();
        for r in &mut out.rows {
            r.a = r.a.substitute_unchecked(&bind);
            r.b = r.b.substitute_unchecked(&bind);
        }
        out.vars.retain(|v| !kill.contains(v));
        out
    }

    /// A row with a nonzero constant entry makes the factorization contractible.
    pub fn has_unit_row(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.a.as_nonzero_constant().is_some() || r.b.as_nonzero_constant().is_some())
    }

    fn apply_psi(&self, drop_id: u32, x: Var, value: &Polynomial) -> KoszulFactorization {
        let mut out = self.clone();
        out.rows.retain(|r| r.id != drop_id);
        for r in &mut out.rows {
            r.a = r.a.subst1(x, value);
            r.b = r.b.subst1(x, value);
        }
        out.vars.remove(&x);
        out
    }

    /// Remove row `i` (by position) using its `b` entry to eliminate `x`.
    ///
    /// Requires `b_i = κx + c` with `κ` a nonzero rational and `c` free of
    /// `x`. Returns the smaller factorization over the remaining variables
    /// and the substitution `x ↦ -c/κ` applied to it.
    pub fn exclude_variable(
        &self,
        i: usize,
        x: Var,
    ) -> Result<(KoszulFactorization, BTreeMap<Var, Polynomial>)> {
        let step = Exclusion::new(self, i, x, Side::B)?;
        let psi = [(x, step.value.clone())].into_iter().collect();
        Ok((step.after, psi))
    }

    /// As [`exclude_variable`](Self::exclude_variable), using the `a` entry;
    /// the result carries a ℤ₂ shift.
    pub fn exclude_variable_a(
        &self,
        i: usize,
        x: Var,
    ) -> Result<(KoszulFactorization, BTreeMap<Var, Polynomial>)> {
        let step = Exclusion::new(self, i, x, Side::A)?;
        let psi = [(x, step.value.clone())].into_iter().collect();
        Ok((step.after, psi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// One exclusion step together with the chain maps relating both sides.
///
/// `forward` is the projection that drops (or, for the `a` side, keeps) the
/// generators containing the excluded row and substitutes `x`. `section` is
/// a chain map back with `forward ∘ section = id`; it is only used on
/// complexes with zero potential.
#[derive(Clone, Debug)]
pub struct Exclusion {
    pub row: u32,
    pub var: Var,
    pub side: Side,
    pub value: Polynomial,
    pub before: KoszulFactorization,
    pub after: KoszulFactorization,
    /// `after` with each entry replaced by its change under the exclusion
    /// divided by the excluded entry, signed for `section`.
    delta: KoszulFactorization,
}

impl Exclusion {
    pub fn new(k: &KoszulFactorization, i: usize, x: Var, side: Side) -> Result<Exclusion> {
        let row = k.rows.get(i).ok_or(Error::NotExcludable(i, x))?;
        let entry = match side {
            Side::B => &row.b,
            Side::A => &row.a,
        };
        let kappa = entry
            .linear_coefficient(x)
            .ok_or(Error::NotExcludable(i, x))?;
        let rest = entry - &Polynomial::var(x).scale(&kappa);
        let value = rest.scale(&(-Rational::one() / kappa));
        let mut after = k.apply_psi(row.id, x, &value);
        if side == Side::A {
            after.z2_shift = (after.z2_shift + 1) % 2;
            after.q_shift += k.n as i64 + 1 - row.a_deg;
        }
        let mut delta = after.clone();
        for r in &mut delta.rows {
            let old = k.row_by_id(r.id).unwrap();
            let (da, db) = match side {
                Side::B => (&r.a - &old.a, &r.b - &old.b),
                Side::A => (&old.a - &r.a, &old.b - &r.b),
            };
            r.a = da.exact_divide(entry)?;
            r.b = db.exact_divide(entry)?;
        }
        Ok(Exclusion {
            row: row.id,
            var: x,
            side,
            value,
            before: k.clone(),
            after,
            delta,
        })
    }

    /// Where `forward` sends a generator, and whether it negates.
    fn map_gen(&self, g: Gen) -> Option<(Gen, bool)> {
        let bit = 1u64 << self.row;
        match self.side {
            Side::B => (g & bit == 0).then_some((g, false)),
            Side::A => (g & bit != 0).then(|| {
                let j = g & !bit;
                (j, flips(j, self.row) ^ (self.after.gen_z2(j) == 1))
            }),
        }
    }

    pub fn forward(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&g, p) in v {
            if let Some((j, neg)) = self.map_gen(g) {
                let q = p.subst1(self.var, &self.value);
                add_into(&mut out, j, if neg { -q } else { q });
            }
        }
        out
    }

    pub fn section(&self, z: &Vector) -> Vector {
        let bit = 1u64 << self.row;
        let twisted: Vector = match self.side {
            Side::B => z.clone(),
            Side::A => z
                .iter()
                .map(|(&g, p)| {
                    (
                        g,
                        if self.after.gen_z2(g) == 1 {
                            -p
                        } else {
                            p.clone()
                        },
                    )
                })
                .collect(),
        };
        let y = self.delta.apply_d(&twisted);
        let times_e = |v: &Vector| {
            let mut out = Vector::new();
            for (&g, p) in v {
                add_into(
                    &mut out,
                    g | bit,
                    if flips(g, self.row) { -p } else { p.clone() },
                );
            }
            out
        };
        match self.side {
            Side::B => vector_add(&twisted, &times_e(&y)),
            Side::A => vector_add(&y, &times_e(&twisted)),
        }
    }
}

pub fn vector_sub(a: &Vector, b: &Vector) -> Vector {
    let mut out = a.clone();
    for (&g, p) in b {
        add_into(&mut out, g, -p);
    }
    out
}

/// A sequence of exclusions applied greedily until none is possible.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub original: KoszulFactorization,
    pub steps: Vec<Exclusion>,
}

impl Reduction {
    /// Identity reduction (no exclusions).
    pub fn none(k: &KoszulFactorization) -> Reduction {
        Reduction {
            original: k.clone(),
            steps: Vec::new(),
        }
    }

    /// Exclude variables through linear `b` entries first, then through
    /// linear `a` entries, until no row qualifies or a unit entry appears.
    pub fn maximal(k: &KoszulFactorization) -> Reduction {
        let mut red = Reduction::none(k);
        loop {
            let cur = red.result();
            if cur.has_unit_row() {
                break;
            }
            let pick = find_linear(cur, Side::B).or_else(|| find_linear(cur, Side::A));
            let Some((i, x, side)) = pick else { break };
            let step = Exclusion::new(cur, i, x, side).expect("linear entry");
            red.steps.push(step);
        }
        red
    }

    pub fn result(&self) -> &KoszulFactorization {
        self.steps.last().map_or(&self.original, |s| &s.after)
    }

    /// The composite projection. Generators are mapped first so that the
    /// substitution only runs on the survivors, all variables at once.
    pub fn forward(&self, v: &Vector) -> Vector {
        let mut psi = BTreeMap::new();
        for s in self.steps.iter().rev() {
            let value = s.value.substitute_unchecked(&psi);
            psi.insert(s.var, value);
        }
        let mut out = Vector::new();
        'gens: for (&g, p) in v {
            let (mut j, mut neg) = (g, false);
            for s in &self.steps {
                let Some((k, flip)) = s.map_gen(j) else {
                    continue 'gens;
                };
                j = k;
                neg ^= flip;
            }
            let q = p.substitute_unchecked(&psi);
            add_into(&mut out, j, if neg { -q } else { q });
        }
        out
    }

    /// `(mask, value)`: `forward` drops every generator `g` with
    /// `g & mask != value`.
    pub fn kept_bits(&self) -> (Gen, Gen) {
        let (mut mask, mut value) = (0, 0);
        for s in &self.steps {
            mask |= 1 << s.row;
            if s.side == Side::A {
                value |= 1 << s.row;
            }
        }
        (mask, value)
    }

    pub fn section(&self, z: &Vector) -> Vector {
        self.steps
            .iter()
            .rev()
            .fold(z.clone(), |acc, s| s.section(&acc))
    }
}

fn find_linear(k: &KoszulFactorization, side: Side) -> Option<(usize, Var, Side)> {
    for (i, r) in k.rows.iter().enumerate() {
        let e = match side {
            Side::B => &r.b,
            Side::A => &r.a,
        };
        if e.degree() != Some(2) {
            continue;
        }
        let mut best: Option<(bool, Var)> = None;
        for (m, c) in e.terms() {
            let Some(v) = m.vars().next() else { continue };
            let unit = c.is_one() || (-c).is_one();
            if best.is_none_or(|(u, w)| (unit && !u) || (unit == u && v < w)) {
                best = Some((unit, v));
            }
        }
        if let Some((_, v)) = best {
            return Some((i, v, side));
        }
    }
    None
}

#[derive(Clone, Debug)]
enum Action {
    Local {
        rows: Vec<u32>,
        even: Vec<Vec<Polynomial>>,
        odd: Vec<Vec<Polynomial>>,
    },
    Multiply(Polynomial),
    Sparse(BTreeMap<Gen, Vector>),
}

/// A homomorphism of factorizations.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: KoszulFactorization,
    pub target: KoszulFactorization,
    pub q_degree: i64,
    pub z2_degree: u8,
    action: Action,
}

fn local_gens(count: usize) -> Vec<Gen> {
    let mut g: Vec<Gen> = (0..1u64 << count).collect();
    g.sort_by(|&a, &b| subset_cmp(a, b));
    g
}

impl Morphism {
    /// A ℤ₂-degree-0 morphism given by matrices on the rows `rows` and the
    /// identity on all other rows. Matrix columns are source generators of
    /// the local rows in graded-lex order, split by parity.
    pub fn local(
        source: &KoszulFactorization,
        target: &KoszulFactorization,
        rows: Vec<u32>,
        even: Vec<Vec<Polynomial>>,
        odd: Vec<Vec<Polynomial>>,
        q_degree: i64,
    ) -> Morphism {
        Morphism {
            source: source.clone(),
            target: target.clone(),
            q_degree,
            z2_degree: 0,
            action: Action::Local { rows, even, odd },
        }
    }

    /// Multiplication by `p` on every generator.
    pub fn multiplication(k: &KoszulFactorization, p: &Polynomial) -> Morphism {
        let q_degree = p.degree().unwrap_or(0);
        Morphism {
            source: k.clone(),
            target: k.clone(),
            q_degree,
            z2_degree: 0,
            action: Action::Multiply(p.clone()),
        }
    }

    pub fn identity(k: &KoszulFactorization) -> Morphism {
        Morphism::multiplication(k, &Polynomial::one())
    }

    /// Morphism given explicitly on each generator of the source.
    pub fn from_images(
        source: &KoszulFactorization,
        target: &KoszulFactorization,
        q_degree: i64,
        z2_degree: u8,
        images: BTreeMap<Gen, Vector>,
    ) -> Morphism {
        Morphism {
            source: source.clone(),
            target: target.clone(),
            q_degree,
            z2_degree,
            action: Action::Sparse(images),
        }
    }

    pub fn apply_gen(&self, g: Gen) -> Vector {
        let mut v = Vector::new();
        v.insert(g, Polynomial::one());
        self.apply(&v)
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        match &self.action {
            Action::Multiply(p) => {
                for (&g, c) in v {
                    add_into(&mut out, g, c * p);
                }
            }
            Action::Sparse(images) => {
                for (&g, c) in v {
                    if let Some(img) = images.get(&g) {
                        for (&t, p) in img {
                            add_into(&mut out, t, p * c);
                        }
                    }
                }
            }
            Action::Local { rows, even, odd } => {
                let gens = local_gens(rows.len());
                let ev: Vec<Gen> = gens
                    .iter()
                    .copied()
                    .filter(|g| g.count_ones() % 2 == 0)
                    .collect();
                let od: Vec<Gen> = gens
                    .iter()
                    .copied()
                    .filter(|g| g.count_ones() % 2 == 1)
                    .collect();
                let mask: Gen = rows.iter().fold(0, |m, &r| m | (1 << r));
                let to_local = |g: Gen| {
                    rows.iter().enumerate().fold(
                        0u64,
                        |l, (k, &r)| if g >> r & 1 == 1 { l | 1 << k } else { l },
                    )
                };
                let from_local = |l: Gen| {
                    rows.iter().enumerate().fold(
                        0u64,
                        |g, (k, &r)| if l >> k & 1 == 1 { g | 1 << r } else { g },
                    )
                };
                for (&g, c) in v {
                    let l = to_local(g);
                    let rest = g & !mask;
                    let (list, mat) = if l.count_ones() % 2 == 0 {
                        (&ev, even)
                    } else {
                        (&od, odd)
                    };
                    let col = list.iter().position(|&x| x == l).unwrap();
                    for (r, &tl) in list.iter().enumerate() {
                        let e = &mat[r][col];
                        if !e.is_zero() {
                            add_into(&mut out, rest | from_local(tl), e * c);
                        }
                    }
                }
            }
        }
        out
    }

    /// Explicit images of all source generators.
    pub fn to_images(&self) -> BTreeMap<Gen, Vector> {
        self.source
            .generators()
            .into_iter()
            .map(|g| (g, self.apply_gen(g)))
            .collect()
    }

    pub fn compose(&self, first: &Morphism) -> Morphism {
        let images = first
            .to_images()
            .into_iter()
            .map(|(g, v)| (g, self.apply(&v)))
            .collect();
        Morphism::from_images(
            &first.source,
            &self.target,
            self.q_degree + first.q_degree,
            (self.z2_degree + first.z2_degree) % 2,
            images,
        )
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let images = self
            .source
            .generators()
            .into_iter()
            .map(|g| (g, vector_add(&self.apply_gen(g), &other.apply_gen(g))))
            .collect();
        Morphism::from_images(
            &self.source,
            &self.target,
            self.q_degree,
            self.z2_degree,
            images,
        )
    }

    /// `self + d∘h + h∘d` for a ℤ₂-odd map `h` of the same q-degree.
    pub fn plus_null_homotopy(&self, h: &Morphism) -> Morphism {
        let images = self
            .source
            .generators()
            .into_iter()
            .map(|g| {
                let dh = self.target.apply_d(&h.apply_gen(g));
                let hd = h.apply(&self.source.d_gen(g));
                (g, vector_add(&self.apply_gen(g), &vector_add(&dh, &hd)))
            })
            .collect();
        Morphism::from_images(
            &self.source,
            &self.target,
            self.q_degree,
            self.z2_degree,
            images,
        )
    }

    /// Check `d_t ∘ F = (-1)^ε F ∘ d_s` on every generator.
    pub fn commutes(&self) -> bool {
        self.source.generators().into_iter().all(|g| {
            let lhs = self.target.apply_d(&self.apply_gen(g));
            let mut rhs = self.apply(&self.source.d_gen(g));
            if self.z2_degree == 1 {
                rhs = vector_scale(&rhs, &Polynomial::int(-1));
            }
            lhs == rhs
        })
    }

    /// Check that every entry has the degree forced by the generator degrees.
    pub fn is_homogeneous(&self) -> bool {
        self.source.generators().into_iter().all(|g| {
            let want = self.source.gen_degree(g) + self.q_degree;
            self.apply_gen(g).iter().all(|(&t, p)| {
                p.is_homogeneous() && p.degree().unwrap() + self.target.gen_degree(t) == want
            })
        })
    }

    /// Matrices per source parity: rows are target generators, columns source
    /// generators, both in graded-lex order.
    pub fn matrices(&self) -> [Vec<Vec<Polynomial>>; 2] {
        let mk = |d: u8| {
            let src = self.source.generators_z2(d);
            let tgt = self.target.generators_z2((d + self.z2_degree) % 2);
            let mut m = vec![vec![Polynomial::zero(); src.len()]; tgt.len()];
            for (c, &g) in src.iter().enumerate() {
                for (t, p) in self.apply_gen(g) {
                    let r = tgt.iter().position(|&x| x == t).expect("target generator");
                    m[r][c] = p;
                }
            }
            m
        };
        [mk(0), mk(1)]
    }
}

/// `m × m` identity-scaled matrix helper for tests and callers.
pub fn scalar_matrix(m: usize, p: &Polynomial) -> Vec<Vec<Polynomial>> {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        p.clone()
                    } else {
                        Polynomial::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = Polynomial::zero();
                    for k in 0..inner {
                        s += &(&row[k] * &b[k][j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::pi;

    fn x(v: Var) -> Polynomial {
        Polynomial::var(v)
    }

    fn two_arcs(n: usize) -> KoszulFactorization {
        KoszulFactorization::new(
            n,
            vec![(pi(1, 4, n), &x(1) - &x(4)), (pi(2, 3, n), &x(2) - &x(3))],
        )
        .unwrap()
    }

    #[test]
    fn arc_pair_matrices() {
        let k = two_arcs(2);
        let (d0, d1) = k.matrices();
        assert_eq!(d0[0][0], pi(1, 4, 2));
        assert_eq!(d0[0][1], &x(2) - &x(3));
        assert_eq!(d0[1][0], pi(2, 3, 2));
        assert_eq!(d0[1][1], &x(4) - &x(1));
        assert_eq!(d1[0][0], &x(1) - &x(4));
        assert_eq!(d1[1][1], -pi(1, 4, 2));
        let w = k.potential();
        assert_eq!(mat_mul(&d1, &d0), scalar_matrix(2, &w));
        assert_eq!(mat_mul(&d0, &d1), scalar_matrix(2, &w));
    }

    #[test]
    fn exclusion_maps_are_chain_maps() {
        // closed circle through two marks: rows (π_12, x1-x2), (π_21, x2-x1)
        let n = 3;
        let k = KoszulFactorization::new(
            n,
            vec![(pi(1, 2, n), &x(1) - &x(2)), (pi(2, 1, n), &x(2) - &x(1))],
        )
        .unwrap();
        assert!(k.potential().is_zero());
        for side in [Side::B, Side::A] {
            let Ok(step) = Exclusion::new(&k, 0, 1, side) else {
                continue;
            };
            for g in k.generators() {
                let mut v = Vector::new();
                v.insert(g, x(2).pow(2));
                let lhs = step.forward(&k.apply_d(&v));
                let rhs = step.after.apply_d(&step.forward(&v));
                assert_eq!(lhs, rhs, "{side:?}");
            }
            for g in step.after.generators() {
                let mut z = Vector::new();
                z.insert(g, x(2));
                let s = step.section(&z);
                assert_eq!(step.forward(&s), z);
                assert_eq!(k.apply_d(&s), step.section(&step.after.apply_d(&z)));
            }
        }
    }

    #[test]
    fn a_side_exclusion_for_n1() {
        let n = 1;
        let k = KoszulFactorization::new(
            n,
            vec![(pi(1, 2, n), &x(1) - &x(2)), (pi(2, 1, n), &x(2) - &x(1))],
        )
        .unwrap();
        let step = Exclusion::new(&k, 0, 1, Side::A).unwrap();
        assert_eq!(step.after.z2_shift, 1);
        for g in k.generators() {
            let mut v = Vector::new();
            v.insert(g, x(2));
            assert_eq!(
                step.forward(&k.apply_d(&v)),
                step.after.apply_d(&step.forward(&v))
            );
        }
        for g in step.after.generators() {
            let mut z = Vector::new();
            z.insert(g, Polynomial::one());
            let s = step.section(&z);
            assert_eq!(step.forward(&s), z);
            assert_eq!(k.apply_d(&s), step.section(&step.after.apply_d(&z)));
        }
    }
}
