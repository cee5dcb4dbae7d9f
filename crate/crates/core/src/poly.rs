//! Sparse multivariate polynomials over ℚ.
//!
//! Every variable has degree 2, so a monomial of total exponent `e` has
//! degree `2e`. Monomials are ordered graded-lexicographically with smaller
//! variable ids ranking higher; iteration over a polynomial therefore runs
//! from the smallest monomial to the leading one.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type Var = u32;

/// Ids at or above this value are reserved for formal variables.
pub const FORMAL_BASE: Var = 0xFFFF_FF00;

pub fn formal(k: u32) -> Var {
    FORMAL_BASE + k
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat_frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A monomial as a sorted list of `(variable, exponent)` with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_exponents(mut exps: Vec<(Var, u32)>) -> Self {
        exps.retain(|&(_, e)| e > 0);
        exps.sort_unstable();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn exponents(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Degree in the grading where each variable has degree 2.
    pub fn degree(&self) -> i64 {
        2 * self.total() as i64
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total().cmp(&other.total()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (&(va, ea), &(vb, eb)) in self.0.iter().zip(other.0.iter()) {
            if va != vb {
                return if va < vb {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if v >= FORMAL_BASE {
                write!(f, "t{}", v - FORMAL_BASE)?;
            } else {
                write!(f, "x{v}")?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Polynomial::constant(rat(c))
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Sum of the given terms; repeated monomials are combined.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms from the smallest monomial to the leading one.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// The nonzero constant if the polynomial is a constant, i.e. a unit.
    pub fn as_nonzero_constant(&self) -> Option<&Rational> {
        match self.terms.len() {
            1 => self.terms.get(&Monomial::one()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Degree of the leading monomial, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::total);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `self / q` when the division is exact.
    ///
    /// Leading terms are cancelled one at a time; any leading term of the
    /// running remainder that is not a multiple of the divisor's leading
    /// term means `q` does not divide `self`.
    pub fn exact_divide(&self, q: &Polynomial) -> Result<Polynomial> {
        let (lm, lc) = match q.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::NotDivisible),
        };
        let mut r = self.clone();
        let mut out = Polynomial::zero();
        while let Some((m, c)) = r.leading_term() {
            let t = m.div(&lm).ok_or(Error::NotDivisible)?;
            let k = c / &lc;
            r -= &q.mul_monomial(&t, &k);
            out.add_term(t, k);
        }
        Ok(out)
    }

    /// Simultaneous substitution `v ↦ bindings[v]`; other variables are kept.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Polynomial>) -> Result<Polynomial> {
        for (&v, b) in bindings {
            if !b.is_homogeneous() {
                return Err(Error::InhomogeneousBinding(v));
            }
        }
        Ok(self.substitute_unchecked(bindings))
    }

    pub(crate) fn substitute_unchecked(&self, bindings: &BTreeMap<Var, Polynomial>) -> Polynomial {
        if bindings.is_empty()
            || !self
                .terms
                .keys()
                .any(|m| m.vars().any(|v| bindings.contains_key(&v)))
        {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Polynomial::one();
            for &(v, e) in m.exponents() {
                match bindings.get(&v) {
                    Some(b) => {
                        let p = powers.entry((v, e)).or_insert_with(|| b.pow(e));
                        factor = &factor * p;
                    }
                    None => kept.push((v, e)),
                }
            }
            let rest = Monomial(kept);
            for (n, a) in factor.terms {
                out.add_term(n.mul(&rest), a * c);
            }
        }
        out
    }

    /// Substitute a single variable.
    pub fn subst1(&self, v: Var, value: &Polynomial) -> Polynomial {
        let mut b = BTreeMap::new();
        b.insert(v, value.clone());
        self.substitute_unchecked(&b)
    }

    /// Coefficient of `v` if the polynomial is a homogeneous linear form.
    pub fn linear_coefficient(&self, v: Var) -> Option<Rational> {
        if self.degree() != Some(2) || !self.is_homogeneous() {
            return None;
        }
        let c = self.coefficient(&Monomial::var(v));
        (!c.is_zero()).then_some(c)
    }

    /// Evaluate at rational values for every variable that occurs.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Rational {
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.exponents() {
                let x = point.get(&v).cloned().unwrap_or_else(Rational::zero);
                for _ in 0..e {
                    t *= &x;
                }
            }
            s += t;
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// All monomials of the given degree in `vars`, leading monomial first.
pub fn graded_monomials(vars: &BTreeSet<Var>, degree: i64) -> Vec<Monomial> {
    if degree < 0 || degree % 2 != 0 {
        return Vec::new();
    }
    let vs: Vec<Var> = vars.iter().copied().collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill_monomials(&vs, (degree / 2) as u32, &mut cur, &mut out);
    out
}

fn fill_monomials(vs: &[Var], left: u32, cur: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
    if left == 0 {
        out.push(Monomial(cur.clone()));
        return;
    }
    let Some((&v, rest)) = vs.split_first() else {
        return;
    };
    for e in (1..=left).rev() {
        cur.push((v, e));
        fill_monomials(rest, left - e, cur, out);
        cur.pop();
    }
    fill_monomials(rest, left, cur, out);
}

/// `x_i^n + x_i^{n-1} x_j + ⋯ + x_j^n`.
pub fn pi(i: Var, j: Var, n: usize) -> Polynomial {
    let n = n as u32;
    Polynomial::from_terms((0..=n).map(|k| {
        (
            Monomial::from_exponents(vec![(i, k), (j, n - k)]),
            Rational::one(),
        )
    }))
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for t in 0..k {
        r = r * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    r
}

/// The polynomial `g(s1, s2)` with `g(x+y, xy) = x^{n+1} + y^{n+1}`.
pub fn g_poly(n: usize, s1: Var, s2: Var) -> Polynomial {
    let n = n as i64;
    let mut out = Polynomial::term(
        Rational::one(),
        Monomial::from_exponents(vec![(s1, (n + 1) as u32)]),
    );
    let mut i = 1;
    while 2 * i <= n + 1 {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let c = Rational::new(
            BigInt::from(sign * (n + 1)) * binomial(n - i, i - 1),
            BigInt::from(i),
        );
        out.add_term(
            Monomial::from_exponents(vec![(s1, (n + 1 - 2 * i) as u32), (s2, i as u32)]),
            c,
        );
        i += 1;
    }
    out
}

/// `(u1, u2, b1, b2)` for a wide edge with marks `(x1, x2, x3, x4)`.
///
/// The quotients are formed in formal variables and then specialised, so
/// repeated marks never cause a division by zero.
pub fn wide_edge_polys(n: usize, marks: [Var; 4]) -> [Polynomial; 4] {
    let generic = generic_wide(n);
    let bind: BTreeMap<Var, Polynomial> = (0..4)
        .map(|k| (formal(k as u32), Polynomial::var(marks[k])))
        .collect();
    [
        generic[0].substitute_unchecked(&bind),
        generic[1].substitute_unchecked(&bind),
        generic[2].substitute_unchecked(&bind),
        generic[3].substitute_unchecked(&bind),
    ]
}

fn generic_wide(n: usize) -> [Polynomial; 4] {
    static CACHE: OnceLock<Mutex<HashMap<usize, [Polynomial; 4]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let x: Vec<Polynomial> = (0..4).map(|k| Polynomial::var(formal(k))).collect();
    let (s1, s2) = (formal(10), formal(11));
    let g = g_poly(n, s1, s2);
    let ev = |a: &Polynomial, b: &Polynomial| {
        let mut bind = BTreeMap::new();
        bind.insert(s1, a.clone());
        bind.insert(s2, b.clone());
        g.substitute_unchecked(&bind)
    };
    let e12 = &x[0] + &x[1];
    let p12 = &x[0] * &x[1];
    let e34 = &x[2] + &x[3];
    let p34 = &x[2] * &x[3];
    let b1 = &e12 - &e34;
    let b2 = &p12 - &p34;
    let g_34_12 = ev(&e34, &p12);
    let u1 = (&ev(&e12, &p12) - &g_34_12)
        .exact_divide(&b1)
        .expect("u1 quotient");
    let u2 = (&g_34_12 - &ev(&e34, &p34))
        .exact_divide(&b2)
        .expect("u2 quotient");
    let out = [u1, u2, b1, b2];
    cache.lock().unwrap().insert(n, out.clone());
    out
}

/// Power sum `x1^k + x2^k + x3^k` as a polynomial in the elementary
/// symmetric functions `e1, e2, e3`.
pub(crate) fn power_sum_in_elementary(k: usize, e: [Var; 3]) -> Polynomial {
    let ev: Vec<Polynomial> = e.iter().map(|&v| Polynomial::var(v)).collect();
    let mut p: Vec<Polynomial> = vec![Polynomial::int(3)];
    for m in 1..=k {
        let mut s = Polynomial::zero();
        for i in 1..=m.min(3) {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let term = if i == m {
                ev[i - 1].scale(&rat(sign * m as i64))
            } else {
                (&ev[i - 1] * &p[m - i]).scale(&rat(sign))
            };
            s += &term;
        }
        p.push(s);
    }
    p.swap_remove(k)
}
