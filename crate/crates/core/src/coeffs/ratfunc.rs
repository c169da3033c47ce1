use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{gcd, Poly, Var, NUM_VARS};
use crate::error::{Error, Result};

/// Element of the rational function field `Q(q, r, s, alpha, beta)`.
///
/// Always held in canonical form: numerator and denominator coprime, the
/// denominator's graded-lex leading coefficient equal to one, and zero
/// stored as `0/1`. Structural equality is therefore field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }

    pub fn r() -> Self {
        Self::var(Var::R)
    }

    pub fn s() -> Self {
        Self::var(Var::S)
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    /// `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonicalize(num, den))
    }

    fn canonicalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Re-derives the canonical form; a no-op on values built through the
    /// public API.
    pub fn recanonicalize(&self) -> Self {
        Self::canonicalize(self.num.clone(), self.den.clone())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        RatFunc {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, n: i32) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.inv()?.pow(n.unsigned_abs()))
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonicalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let b_num = if negate {
            other.num.neg()
        } else {
            other.num.clone()
        };
        if self.is_zero() {
            return RatFunc {
                num: b_num,
                den: other.den.clone(),
            };
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&b_num);
            if self.den.is_one() || num.is_zero() {
                return if num.is_zero() {
                    Self::zero()
                } else {
                    RatFunc {
                        num,
                        den: self.den.clone(),
                    }
                };
            }
            return Self::canonicalize(num, self.den.clone());
        }
        // Henrici: with reduced inputs only the shared denominator factor
        // can cancel.
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&b_num.mul(&self.den));
            if num.is_zero() {
                return Self::zero();
            }
            return RatFunc {
                num,
                den: self.den.mul(&other.den),
            };
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = other.den.div_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d2).add(&b_num.mul(&d1));
        if t.is_zero() {
            return Self::zero();
        }
        let g2 = gcd(&t, &g);
        let num = t.div_exact(&g2).expect("gcd divides");
        let den = d1.mul(&other.den.div_exact(&g2).expect("gcd divides"));
        RatFunc { num, den }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc {
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc {
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
    }

    /// Exact value at `point`, refusing points where `q` is zero or a root of
    /// unity of order at most `guard_order`.
    pub fn evaluate(&self, point: &Point, guard_order: u32) -> Result<BigRational> {
        point.check_guard(guard_order)?;
        let d = self.den.eval(&point.values)?;
        if d.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        Ok(self.num.eval(&point.values)? / d)
    }
}

impl RatFunc {
    /// Partial evaluation: bound variables are substituted, the others stay
    /// symbolic. A bound `q` must pass the guard.
    pub fn substitute(&self, point: &Point, guard_order: u32) -> Result<RatFunc> {
        if let Some(q) = point.get(Var::Q) {
            check_q_admissible(q, guard_order)?;
        }
        let den = self.den.substitute(&point.values);
        if den.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        RatFunc::new(self.num.substitute(&point.values), den)
    }
}

/// `{n}_q = 1 + q + ... + q^(n-1)`, and `0` for `n <= 0`.
pub fn q_bracket(n: i64) -> RatFunc {
    if n <= 0 {
        return RatFunc::zero();
    }
    let terms = (0..n).map(|t| {
        let mut e = [0u16; NUM_VARS];
        e[Var::Q.index()] = u16::try_from(t).expect("q-bracket exponent fits u16");
        (e, BigRational::one())
    });
    RatFunc::from_poly(Poly::from_terms(terms))
}

/// `q^n` for any integer `n` (negative powers as `1/q^|n|`).
pub fn q_pow(n: i32) -> RatFunc {
    RatFunc::q().powi(n).expect("q is nonzero")
}

/// Binomial coefficient as a field element.
pub fn binomial(n: u32, k: u32) -> RatFunc {
    if k > n {
        return RatFunc::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    RatFunc::from_rational(BigRational::from_integer(acc))
}

/// Values for the indeterminates at which rational functions are evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    values: [Option<BigRational>; NUM_VARS],
}

impl Point {
    pub fn new(q: BigRational, r: BigRational, s: BigRational) -> Self {
        let mut values: [Option<BigRational>; NUM_VARS] = Default::default();
        values[Var::Q.index()] = Some(q);
        values[Var::R.index()] = Some(r);
        values[Var::S.index()] = Some(s);
        Point { values }
    }

    pub fn empty() -> Self {
        Point {
            values: Default::default(),
        }
    }

    pub fn with(mut self, v: Var, x: BigRational) -> Self {
        self.values[v.index()] = Some(x);
        self
    }

    pub fn get(&self, v: Var) -> Option<&BigRational> {
        self.values[v.index()].as_ref()
    }

    pub fn check_guard(&self, guard_order: u32) -> Result<()> {
        let q = self.get(Var::Q).ok_or(Error::UnboundVariable("q"))?;
        check_q_admissible(q, guard_order)
    }
}

/// Rejects `q = 0` and `q^m = 1` for `1 <= m <= guard_order`.
pub fn check_q_admissible(q: &BigRational, guard_order: u32) -> Result<()> {
    if q.is_zero() {
        return Err(Error::InadmissibleQ {
            q: q.to_string(),
            reason: "q must be nonzero".into(),
        });
    }
    let mut power = BigRational::one();
    for m in 1..=guard_order {
        power *= q;
        if power.is_one() {
            return Err(Error::InadmissibleQ {
                q: q.to_string(),
                reason: format!("q^{m} = 1"),
            });
        }
    }
    Ok(())
}

impl fmt::Display for RatFunc {
    /// Renders `num/den`, flipping both signs when that makes the
    /// denominator's constant term positive (so `1/(1-q)` rather than
    /// `-1/(-1+q)`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let (num, den) = if self.den.constant_term().is_negative() {
            (self.num.neg(), self.den.neg())
        } else {
            (self.num.clone(), self.den.clone())
        };
        let num_s = if num.terms().len() > 1 {
            format!("({num})")
        } else {
            num.to_string()
        };
        let den_s = if den.is_simple_atom() {
            den.to_string()
        } else {
            format!("({den})")
        };
        write!(f, "{num_s}/{den_s}")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                $body(self, rhs)
            }
        }
        impl $trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                $body(&self, &rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                $body(&self, rhs)
            }
        }
        impl $trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatFunc, b: &RatFunc| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &RatFunc, b: &RatFunc| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &RatFunc, b: &RatFunc| a.mul_impl(b));

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = self.add_impl(rhs, true);
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}
