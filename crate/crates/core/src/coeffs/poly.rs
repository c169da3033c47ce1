//! Sparse multivariate polynomials over the rationals in the fixed
//! indeterminates `q, r, s, alpha, beta`.
//!
//! Terms are kept sorted by descending graded-lexicographic order with
//! `q > r > s > alpha > beta`, so `terms[0]` is always the leading term.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const NUM_VARS: usize = 5;

/// Exponent vector indexed by [`Var::index`].
pub type Exponents = [u16; NUM_VARS];

/// The commuting indeterminates of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Q,
    R,
    S,
    Alpha,
    Beta,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [Var::Q, Var::R, Var::S, Var::Alpha, Var::Beta];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::R => "r",
            Var::S => "s",
            Var::Alpha => "alpha",
            Var::Beta => "beta",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

fn total_degree(e: &Exponents) -> u32 {
    e.iter().map(|&x| u32::from(x)).sum()
}

/// Graded lexicographic comparison, `q > r > s > alpha > beta`.
pub fn grlex_cmp(a: &Exponents, b: &Exponents) -> Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| a.cmp(b))
}

fn divides(d: &Exponents, e: &Exponents) -> bool {
    d.iter().zip(e).all(|(x, y)| x <= y)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Exponents, BigRational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![([0; NUM_VARS], c)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NUM_VARS];
        e[v.index()] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(e: Exponents, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(e, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, BigRational)>>(it: I) -> Self {
        let mut acc: HashMap<Exponents, BigRational> = HashMap::new();
        for (e, c) in it {
            *acc.entry(e).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Exponents, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == [0; NUM_VARS])
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == [0; NUM_VARS] && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(e, c)] if *e == [0; NUM_VARS] => Some(c.clone()),
            _ => None,
        }
    }

    /// Constant term (coefficient of the empty monomial).
    pub fn constant_term(&self) -> BigRational {
        match self.terms.last() {
            Some((e, c)) if *e == [0; NUM_VARS] => c.clone(),
            _ => BigRational::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms
            .iter()
            .map(|(e, _)| e[v.index()])
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| total_degree(e))
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(e, _)| e[v.index()] > 0)
    }

    fn var_mask(&self) -> [bool; NUM_VARS] {
        let mut m = [false; NUM_VARS];
        for (e, _) in &self.terms {
            for (slot, &x) in m.iter_mut().zip(e) {
                *slot |= x > 0;
            }
        }
        m
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match grlex_cmp(ea, eb) {
                Ordering::Greater => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*eb, if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(e, c)| (*e, if negate { -c } else { c.clone() })),
        );
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Exponents, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        Poly { terms }
    }

    fn mul_term(&self, m: &Exponents, k: &BigRational) -> Self {
        // multiplying by a monomial preserves grlex order
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    for (x, y) in e2.iter_mut().zip(m) {
                        *x += y;
                    }
                    (e2, c * k)
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (ld, lc) = &d.terms[0];
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((lr, cr)) = rem.terms.first() {
            if !divides(ld, lr) {
                return None;
            }
            let mut m = *lr;
            for (x, y) in m.iter_mut().zip(ld) {
                *x -= y;
            }
            let k = cr / lc;
            rem = rem.sub(&d.mul_term(&m, &k));
            quot.push((m, k));
        }
        Some(Poly { terms: quot })
    }

    /// Scales so the graded-lex leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Coefficients with respect to `v`, indexed by the power of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let d = usize::from(self.degree_in(v));
        let mut buckets: Vec<Vec<(Exponents, BigRational)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = usize::from(e2[v.index()]);
            e2[v.index()] = 0;
            buckets[k].push((e2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                // removing one variable can break grlex order between terms
                t.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
                Poly { terms: t }
            })
            .collect()
    }

    fn leading_coeff_in(&self, v: Var) -> Poly {
        let d = self.degree_in(v);
        let mut t: Vec<_> = self
            .terms
            .iter()
            .filter(|(e, _)| e[v.index()] == d)
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[v.index()] = 0;
                (e2, c.clone())
            })
            .collect();
        t.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        Poly { terms: t }
    }

    fn var_power(v: Var, k: u16) -> Exponents {
        let mut e = [0; NUM_VARS];
        e[v.index()] = k;
        e
    }

    /// Evaluates at a point; every variable occurring in `self` must be bound.
    pub fn eval(&self, point: &[Option<BigRational>; NUM_VARS]) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let k = e[v.index()];
                if k == 0 {
                    continue;
                }
                let x = point[v.index()]
                    .as_ref()
                    .ok_or(Error::UnboundVariable(v.name()))?;
                t *= num_traits::pow(x.clone(), usize::from(k));
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replaces the bound variables by their values and keeps the rest.
    pub fn substitute(&self, point: &[Option<BigRational>; NUM_VARS]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| {
            let mut e = *e;
            let mut c = c.clone();
            for v in Var::ALL {
                if let Some(x) = &point[v.index()] {
                    c *= num_traits::pow(x.clone(), usize::from(e[v.index()]));
                    e[v.index()] = 0;
                }
            }
            (e, c)
        }))
    }

    /// True when the polynomial is a single term with unit coefficient in at
    /// most one variable, or a nonnegative integer; such text needs no
    /// parentheses as a divisor.
    pub(crate) fn is_simple_atom(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [(e, c)] => {
                let nvars = e.iter().filter(|&&x| x > 0).count();
                if nvars == 0 {
                    c.is_integer() && !c.is_negative()
                } else {
                    nvars == 1 && c.is_one()
                }
            }
            _ => false,
        }
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(e: &Exponents) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match e[v.index()] {
            0 => {}
            1 => parts.push(v.name().to_string()),
            k => parts.push(format!("{}^{}", v.name(), k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Terms in ascending graded-lex order, e.g. `1-q+q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(e);
            let body = if mono.is_empty() {
                fmt_rational(c)
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{}*{}", fmt_rational(c), mono)
            };
            if i > 0 && !body.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

/// Greatest common divisor, normalized to a monic polynomial
/// (`gcd(0, 0) = 0`).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let ma = a.var_mask();
    let mb = b.var_mask();
    if provably_coprime(a, b, &ma, &mb) {
        return Poly::one();
    }
    for v in Var::ALL {
        let i = v.index();
        if ma[i] && !mb[i] {
            return gcd_with_coeffs(b, a, v);
        }
        if mb[i] && !ma[i] {
            return gcd_with_coeffs(a, b, v);
        }
    }
    // same variable support; recurse on the variable of smallest degree
    let x = Var::ALL
        .into_iter()
        .filter(|v| ma[v.index()])
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("nonconstant polynomial has a variable");
    let (ca, pa) = content_and_primitive(a, x);
    let (cb, pb) = content_and_primitive(b, x);
    let c = gcd(&ca, &cb);
    let g = primitive_prs_gcd(pa, pb, x);
    c.mul(&g).monic()
}

/// Exact coprimality test by specialization. For a variable `x`, fixing the
/// other variables at a point where neither leading coefficient in `x`
/// vanishes cannot lower the degree in `x` of the gcd. So a constant image
/// gcd for every variable of `a` means the true gcd is constant.
fn provably_coprime(a: &Poly, b: &Poly, ma: &[bool; NUM_VARS], mb: &[bool; NUM_VARS]) -> bool {
    for x in Var::ALL {
        let i = x.index();
        if !ma[i] {
            continue;
        }
        if !mb[i] {
            // gcd divides b, which is free of x
            continue;
        }
        let (la, lb) = (a.leading_coeff_in(x), b.leading_coeff_in(x));
        let image = (0..4i64).find_map(|attempt| {
            let mut point: [Option<BigRational>; NUM_VARS] = Default::default();
            for (j, slot) in point.iter_mut().enumerate() {
                if j != i {
                    let v = 3 + 7 * attempt + 2 * j as i64 + attempt * attempt * (j as i64 + 1);
                    *slot = Some(BigRational::from_integer(v.into()));
                }
            }
            let nonzero = |p: &Poly| p.eval(&point).map(|v| !v.is_zero()).unwrap_or(false);
            if !(nonzero(&la) && nonzero(&lb)) {
                return None;
            }
            Some(univariate_gcd_degree(
                &dense_in(&a.substitute(&point), x),
                &dense_in(&b.substitute(&point), x),
            ))
        });
        match image {
            Some(0) => {}
            _ => return false,
        }
    }
    true
}

fn dense_in(p: &Poly, x: Var) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); usize::from(p.degree_in(x)) + 1];
    for (e, c) in p.terms() {
        out[usize::from(e[x.index()])] += c;
    }
    out
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree of the gcd of two dense univariate polynomials over Q.
fn univariate_gcd_degree(a: &[BigRational], b: &[BigRational]) -> usize {
    let (mut f, mut g) = (a.to_vec(), b.to_vec());
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        while f.len() >= g.len() {
            let k = f.last().unwrap() / g.last().unwrap();
            let shift = f.len() - g.len();
            for (j, c) in g.iter().enumerate() {
                f[shift + j] -= &k * c;
            }
            f.pop();
            trim(&mut f);
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

/// gcd of `g` with every coefficient of `p` viewed as a polynomial in `v`,
/// where `v` does not occur in `g`.
fn gcd_with_coeffs(g: &Poly, p: &Poly, v: Var) -> Poly {
    let mut acc = g.monic();
    for c in p.coeffs_in(v).iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn content_in(p: &Poly, x: Var) -> Poly {
    let mut acc = Poly::zero();
    for c in p.coeffs_in(x).iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn content_and_primitive(p: &Poly, x: Var) -> (Poly, Poly) {
    let c = content_in(p, x);
    let pp = p.div_exact(&c).expect("content divides polynomial");
    (c, pp)
}

fn pseudo_remainder(f: &Poly, g: &Poly, x: Var) -> Poly {
    let dg = g.degree_in(x);
    let lcg = g.leading_coeff_in(x);
    let mut r = f.clone();
    while !r.is_zero() && r.contains_var(x) && r.degree_in(x) >= dg {
        let dr = r.degree_in(x);
        let lcr = r.leading_coeff_in(x);
        let shift = Poly::var_power(x, dr - dg);
        r = r
            .mul(&lcg)
            .sub(&g.mul(&lcr).mul_term(&shift, &BigRational::one()));
    }
    r
}

fn primitive_prs_gcd(mut f: Poly, mut g: Poly, x: Var) -> Poly {
    if f.degree_in(x) < g.degree_in(x) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.is_zero() {
            return content_and_primitive(&f, x).1.monic();
        }
        if !g.contains_var(x) {
            return Poly::one();
        }
        let r = pseudo_remainder(&f, &g, x);
        f = g;
        g = if r.is_zero() {
            r
        } else {
            content_and_primitive(&r, x).1.monic()
        };
    }
}
