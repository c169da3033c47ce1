//! Concrete models of `U_q(r,s)` and its specializations.
//!
//! Each model carries the three-letter reduction system `R` over `{A,B,C}`
//! and the two-letter oracle system with the single rule
//! `AB -> qBA + rA + sB`, together with the maps between the two
//! presentations (`C ↦ AB - BA` and the inclusion on `A`, `B`).

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use crate::coeffs::{binomial, check_q_admissible, Point, RatFunc, Var};
use crate::error::{Error, Result};
use crate::freealg::{Alphabet, GeneratorMap, NCPoly, Word};
use crate::rewrite::{ReductionRule, ReductionSystem, RuleFamily};

/// Root-of-unity guard used whenever `q` is a number.
pub const GUARD_ORDER: u32 = 12;

/// Family instances checked against the termination metric at build time.
const FAMILY_CHECK_K: usize = 8;

/// How a parameter enters the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamSpec {
    Symbolic,
    Value(BigRational),
}

impl ParamSpec {
    pub fn zero() -> Self {
        ParamSpec::Value(BigRational::from_integer(0.into()))
    }

    fn resolve(&self, v: Var) -> RatFunc {
        match self {
            ParamSpec::Symbolic => RatFunc::var(v),
            ParamSpec::Value(x) => RatFunc::from_rational(x.clone()),
        }
    }
}

/// `q`, `r`, `s` as field elements. `r` may be the indeterminate `s`, which
/// gives the coupled model `U_q(s,0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    pub q: RatFunc,
    pub r: RatFunc,
    pub s: RatFunc,
}

impl ModelParams {
    pub fn new(q: RatFunc, r: RatFunc, s: RatFunc) -> Self {
        ModelParams { q, r, s }
    }

    pub fn symbolic() -> Self {
        Self::new(RatFunc::q(), RatFunc::r(), RatFunc::s())
    }

    pub fn r0() -> Self {
        Self::new(RatFunc::q(), RatFunc::r(), RatFunc::zero())
    }

    pub fn zero_s() -> Self {
        Self::new(RatFunc::q(), RatFunc::zero(), RatFunc::s())
    }

    /// `U_q(s,0)`: the `r` slot holds the indeterminate `s`.
    pub fn s0() -> Self {
        Self::new(RatFunc::q(), RatFunc::s(), RatFunc::zero())
    }

    /// `{n}_q` at this model's `q`.
    pub fn bracket(&self, n: i64) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut p = RatFunc::one();
        for _ in 0..n.max(0) {
            acc += &p;
            p = &p * &self.q;
        }
        acc
    }

    pub fn qpow(&self, n: u32) -> RatFunc {
        self.q.pow(n)
    }

    /// Substitutes a point into every parameter.
    pub fn evaluate(&self, point: &Point) -> Result<ModelParams> {
        let ev = |f: &RatFunc| -> Result<RatFunc> {
            Ok(RatFunc::from_rational(f.evaluate(point, GUARD_ORDER)?))
        };
        Ok(ModelParams::new(ev(&self.q)?, ev(&self.r)?, ev(&self.s)?))
    }

    /// Substitutes the variables bound at `point`, keeping the others.
    pub fn substitute(&self, point: &Point) -> Result<ModelParams> {
        let ev = |f: &RatFunc| f.substitute(point, GUARD_ORDER);
        Ok(ModelParams::new(ev(&self.q)?, ev(&self.r)?, ev(&self.s)?))
    }
}

/// Classification of an irreducible word of `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BasisWordClass {
    /// `B^b C^c`, including the empty word.
    BC { b: usize, c: usize },
    /// `C^c A^a` with `a >= 1`.
    CA { c: usize, a: usize },
}

/// `B^b C^c A^a` over `{B, C, A}`.
pub fn bca_word(alphabet: &Alphabet, b: usize, c: usize, a: usize) -> Word {
    Word::power(alphabet.ch('B'), b)
        .concat(&Word::power(alphabet.ch('C'), c))
        .concat(&Word::power(alphabet.ch('A'), a))
}

/// Word from `(letter, exponent)` pieces.
pub fn word_of(alphabet: &Alphabet, parts: &[(char, usize)]) -> Word {
    parts.iter().fold(Word::empty(), |w, &(ch, e)| {
        w.concat(&Word::power(alphabet.ch(ch), e))
    })
}

#[derive(Clone)]
pub struct AlgebraModel {
    params: ModelParams,
    abc: Alphabet,
    ab: Alphabet,
    system: Arc<ReductionSystem>,
    oracle: Arc<ReductionSystem>,
    eliminate_c: GeneratorMap,
    embed: GeneratorMap,
}

impl fmt::Debug for AlgebraModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraModel({})", self.name())
    }
}

/// `build_model(r, s)` with `q` symbolic.
pub fn build_model(r: ParamSpec, s: ParamSpec) -> Result<AlgebraModel> {
    AlgebraModel::new(ModelParams::new(
        RatFunc::q(),
        r.resolve(Var::R),
        s.resolve(Var::S),
    ))
}

impl AlgebraModel {
    pub fn new(params: ModelParams) -> Result<Self> {
        if let Some(qv) = params.q.constant_value() {
            check_q_admissible(&qv, GUARD_ORDER)?;
        } else if params.q.is_zero() {
            return Err(Error::InadmissibleQ {
                q: "0".into(),
                reason: "q must be nonzero".into(),
            });
        }
        let abc = Alphabet::abc();
        let ab = Alphabet::ab();
        let system = Arc::new(Self::three_letter_system(&abc, &params)?);
        let oracle = Arc::new(Self::oracle_system(&ab, &params)?);
        let c_image = &NCPoly::monomial(&ab, "AB") - &NCPoly::monomial(&ab, "BA");
        let eliminate_c = GeneratorMap::new(&abc, &ab)
            .with('A', NCPoly::letter(&ab, 'A'))?
            .with('B', NCPoly::letter(&ab, 'B'))?
            .with('C', c_image)?;
        let embed = GeneratorMap::new(&ab, &abc)
            .with('A', NCPoly::letter(&abc, 'A'))?
            .with('B', NCPoly::letter(&abc, 'B'))?;
        Ok(AlgebraModel {
            params,
            abc,
            ab,
            system,
            oracle,
            eliminate_c,
            embed,
        })
    }

    pub fn uqrs() -> Self {
        Self::new(ModelParams::symbolic()).expect("symbolic model")
    }

    pub fn uq_r0() -> Self {
        Self::new(ModelParams::r0()).expect("symbolic model")
    }

    pub fn uq_0s() -> Self {
        Self::new(ModelParams::zero_s()).expect("symbolic model")
    }

    pub fn uq_s0() -> Self {
        Self::new(ModelParams::s0()).expect("symbolic model")
    }

    /// Same model with every parameter replaced by its value at `point`.
    pub fn specialize(&self, point: &Point) -> Result<Self> {
        Self::new(self.params.evaluate(point)?)
    }

    /// Like [`specialize`](Self::specialize) but `point` may bind only some
    /// of the variables.
    pub fn substitute(&self, point: &Point) -> Result<Self> {
        Self::new(self.params.substitute(point)?)
    }

    fn three_letter_system(abc: &Alphabet, p: &ModelParams) -> Result<ReductionSystem> {
        let m = |w: &str| NCPoly::monomial(abc, w);
        let (q, r, s) = (&p.q, &p.r, &p.s);
        let d = (&RatFunc::one() - q).inv()?;
        let sigma1 = (&(&m("A").scale(r) + &m("B").scale(s)) - &m("C").scale(q)).scale(&d);
        let sigma2 = &m("CA").scale(q) + &m("C").scale(s);
        let sigma3 = (&(&m("A").scale(r) + &m("B").scale(s)) - &m("C")).scale(&d);
        let sigma4 = &m("BC").scale(q) + &m("C").scale(r);
        let rules = vec![
            ReductionRule::new("sigma1", abc.word("AB"), sigma1)?,
            ReductionRule::new("sigma2", abc.word("AC"), sigma2)?,
            ReductionRule::new("sigma3", abc.word("BA"), sigma3)?,
            ReductionRule::new("sigma4", abc.word("CB"), sigma4)?,
        ];
        let fam_params = p.clone();
        let fam_abc = abc.clone();
        let tau = RuleFamily::new(
            "tau",
            abc.word("B"),
            abc.ch('C'),
            abc.word("A"),
            1,
            move |k| tau_image(&fam_abc, &fam_params, k),
        );
        ReductionSystem::new(abc, rules, vec![tau], FAMILY_CHECK_K)
    }

    fn oracle_system(ab: &Alphabet, p: &ModelParams) -> Result<ReductionSystem> {
        let m = |w: &str| NCPoly::monomial(ab, w);
        let image = &(&m("BA").scale(&p.q) + &m("A").scale(&p.r)) + &m("B").scale(&p.s);
        let rule = ReductionRule::new("zeta1", ab.word("AB"), image)?;
        ReductionSystem::new(ab, vec![rule], vec![], 0)
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn name(&self) -> String {
        let mut name = format!("U_q({},{})", self.params.r, self.params.s);
        if self.params.q != RatFunc::q() {
            name.push_str(&format!(" at q={}", self.params.q));
        }
        name
    }

    pub fn abc(&self) -> &Alphabet {
        &self.abc
    }

    pub fn ab(&self) -> &Alphabet {
        &self.ab
    }

    pub fn system(&self) -> &ReductionSystem {
        &self.system
    }

    pub fn oracle(&self) -> &ReductionSystem {
        &self.oracle
    }

    pub fn eliminate_c(&self) -> &GeneratorMap {
        &self.eliminate_c
    }

    pub fn embed(&self) -> &GeneratorMap {
        &self.embed
    }

    /// Monomial over `{A, B, C}` spelled out letter by letter.
    pub fn mono(&self, text: &str) -> NCPoly {
        NCPoly::monomial(&self.abc, text)
    }

    pub fn bca(&self, b: usize, c: usize, a: usize) -> NCPoly {
        NCPoly::word(&self.abc, bca_word(&self.abc, b, c, a))
    }

    pub fn oracle_normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        self.oracle.normal_form(p)
    }

    pub fn three_gen_normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        self.system.normal_form(p)
    }

    /// Normal form under whichever system matches the alphabet of `p`.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        if p.alphabet() == &self.ab {
            self.oracle_normal_form(p)
        } else {
            self.three_gen_normal_form(p)
        }
    }

    pub fn classify(&self, w: &Word) -> Result<BasisWordClass> {
        let (b, c, a) = (self.abc.ch('B'), self.abc.ch('C'), self.abc.ch('A'));
        let runs = w.runs();
        let shape: Vec<_> = runs.iter().map(|&(l, _)| l).collect();
        let n = |i: usize| runs[i].1;
        let class = match shape.as_slice() {
            [] => Some(BasisWordClass::BC { b: 0, c: 0 }),
            [x] if *x == b => Some(BasisWordClass::BC { b: n(0), c: 0 }),
            [x] if *x == c => Some(BasisWordClass::BC { b: 0, c: n(0) }),
            [x] if *x == a => Some(BasisWordClass::CA { c: 0, a: n(0) }),
            [x, y] if *x == b && *y == c => Some(BasisWordClass::BC { b: n(0), c: n(1) }),
            [x, y] if *x == c && *y == a => Some(BasisWordClass::CA { c: n(0), a: n(1) }),
            _ => None,
        };
        class.ok_or_else(|| Error::ReducibleWord(w.display(&self.abc).to_string()))
    }

    /// `lhs - rhs` reduced to normal form; zero iff the identity holds.
    pub fn identity_residual(&self, lhs: &NCPoly, rhs: &NCPoly) -> Result<NCPoly> {
        self.normal_form(&lhs.try_sub(rhs)?)
    }

    pub fn verify_identity(&self, lhs: &NCPoly, rhs: &NCPoly) -> Result<bool> {
        Ok(self.identity_residual(lhs, rhs)?.is_zero())
    }

    pub fn cross_validate(&self, p: &NCPoly) -> Result<bool> {
        let direct = self.oracle_normal_form(&self.eliminate_c.apply(p)?)?;
        let nf = self.three_gen_normal_form(p)?;
        let via = self.oracle_normal_form(&self.eliminate_c.apply(&nf)?)?;
        Ok(direct == via)
    }

    /// Relators `ξ1..ξ4`, `ξ5(k)` (pattern minus image) and `ζ1`, `ζ2`.
    pub fn xi(&self, i: usize) -> NCPoly {
        let name = format!("sigma{i}");
        let rule = self.system.rule(&name).expect("sigma rules present");
        &NCPoly::word(&self.abc, rule.pattern().clone()) - rule.replacement()
    }

    pub fn xi5(&self, k: usize) -> Result<NCPoly> {
        let fam = self.system.family("tau").expect("tau family present");
        let rule = fam.instance(k)?;
        Ok(&NCPoly::word(&self.abc, rule.pattern().clone()) - rule.replacement())
    }

    pub fn zeta1(&self) -> NCPoly {
        let p = &self.params;
        &(&(&self.mono("AB") - &self.mono("BA").scale(&p.q)) - &self.mono("A").scale(&p.r))
            - &self.mono("B").scale(&p.s)
    }

    pub fn zeta2(&self) -> NCPoly {
        &(&self.mono("C") - &self.mono("AB")) + &self.mono("BA")
    }

    /// Free-algebra certificates that the two presentations define the same
    /// ideal. No rewriting is involved.
    pub fn presentation_certificates(&self, k_max: usize) -> Result<Vec<PresentationCertificate>> {
        let q = &self.params.q;
        let one = RatFunc::one();
        let omq = &one - q;
        let d = omq.inv()?;
        let (x1, x2, x3, x4) = (self.xi(1), self.xi(2), self.xi(3), self.xi(4));
        let (z1, z2) = (self.zeta1(), self.zeta2());
        let (a, b) = (self.mono("A"), self.mono("B"));
        let x2_variant = &(&(&a * &z1) - &(&z1 * &a)) + &(&(&a * &z2) - &(&z2 * &a).scale(q));
        let x4_variant = &(&(&z1 * &b) - &(&b * &z1)) + &(&(&z2 * &b) - &(&b * &z2).scale(q));
        let mut out = vec![
            PresentationCertificate::new("xi3 - xi1 = zeta2", &x3 - &x1, z2.clone()),
            PresentationCertificate::new("xi1 - q*xi3 = zeta1", &x1 - &x3.scale(q), z1.clone()),
            PresentationCertificate::new(
                "(zeta1 + q*zeta2)/(1-q) = xi1",
                (&z1 + &z2.scale(q)).scale(&d),
                x1,
            ),
            PresentationCertificate::new(
                "A*zeta1 - zeta1*A + A*zeta2 - q*zeta2*A - s*zeta2 = xi2",
                &x2_variant - &z2.scale(&self.params.s),
                x2.clone(),
            ),
            PresentationCertificate::new(
                "(zeta2 + zeta1)/(1-q) = xi3",
                (&z2 + &z1).scale(&d),
                x3.clone(),
            ),
            PresentationCertificate::new(
                "zeta1*B - B*zeta1 + zeta2*B - q*B*zeta2 - r*zeta2 = xi4",
                &x4_variant - &z2.scale(&self.params.r),
                x4.clone(),
            ),
            PresentationCertificate::variant(
                "A*zeta1 - zeta1*A + A*zeta2 - q*zeta2*A = xi2",
                x2_variant,
                x2,
                z2.scale(&self.params.s),
            ),
            PresentationCertificate::variant(
                "zeta1*B - B*zeta1 + zeta2*B - q*B*zeta2 = xi4",
                x4_variant,
                x4,
                z2.scale(&self.params.r),
            ),
        ];
        for k in 1..=k_max {
            let sigma = self.xi2_sum(k);
            let ck = NCPoly::word(&self.abc, word_of(&self.abc, &[('C', k)]));
            let left = &(&(&x3 * &ck).scale(&omq) + &sigma.scale(&self.params.r))
                - &(&b * &sigma).scale(&omq);
            let right = self.xi5(k)?.scale(&(&omq * &self.params.qpow(k as u32)));
            out.push(PresentationCertificate::new(
                format!("(1-q)*xi3*C^{k} + r*S - (1-q)*B*S = (1-q)*q^{k}*xi5({k})"),
                left,
                right,
            ));
        }
        Ok(out)
    }

    /// `Σ_{i=1}^{h} q^{i-1} C^{i-1} ξ2 C^{h-i}` in the free algebra.
    pub fn xi2_sum(&self, h: usize) -> NCPoly {
        let x2 = self.xi(2);
        let c = self.abc.ch('C');
        let mut acc = NCPoly::zero(&self.abc);
        for i in 1..=h {
            let term = x2
                .sandwich(&Word::power(c, i - 1), &Word::power(c, h - i))
                .scale(&self.params.qpow(i as u32 - 1));
            acc = &acc + &term;
        }
        acc
    }
}

fn tau_image(abc: &Alphabet, p: &ModelParams, k: usize) -> NCPoly {
    let qk = p.qpow(k as u32);
    let one = RatFunc::one();
    let den = (&qk * &(&one - &p.q)).inv().expect("q admissible");
    let ck = |extra: usize| NCPoly::word(abc, word_of(abc, &[('C', k + extra)]));
    let num = &(&(&NCPoly::word(abc, word_of(abc, &[('C', k), ('A', 1)])).scale(&(&qk * &p.r))
        + &NCPoly::word(abc, word_of(abc, &[('B', 1), ('C', k)])).scale(&(&qk * &p.s)))
        + &ck(0).scale(&(&p.bracket(k as i64) * &(&p.r * &p.s))))
        - &ck(1);
    num.scale(&den)
}

#[derive(Clone, Debug)]
pub struct PresentationCertificate {
    pub name: String,
    pub left: NCPoly,
    pub right: NCPoly,
    pub holds: bool,
    /// For a variant combination that misses a multiple of `ζ2`: the
    /// residual `left - right` it is expected to leave.
    pub expected_residual: Option<NCPoly>,
}

impl PresentationCertificate {
    fn new(name: impl Into<String>, left: NCPoly, right: NCPoly) -> Self {
        let holds = left == right;
        PresentationCertificate {
            name: name.into(),
            left,
            right,
            holds,
            expected_residual: None,
        }
    }

    fn variant(name: impl Into<String>, left: NCPoly, right: NCPoly, expected: NCPoly) -> Self {
        PresentationCertificate {
            expected_residual: Some(expected),
            ..Self::new(name, left, right)
        }
    }

    pub fn residual(&self) -> NCPoly {
        &self.left - &self.right
    }

    /// Genuine certificates pass when they hold, variants when they
    /// leave exactly the expected residual.
    pub fn passes(&self) -> bool {
        match &self.expected_residual {
            None => self.holds,
            Some(e) => &self.residual() == e,
        }
    }
}

/// How an identity instance is judged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    /// `lhs = rhs` literally in the free algebra.
    FreeAlgebra,
    /// `lhs - rhs` normalizes to zero in the model.
    Normalize,
    /// A variant formula known to disagree: the check passes when the
    /// residual is nonzero, and the residual is reported.
    Discrepancy,
}

#[derive(Clone, Debug)]
pub struct IdentityInstance {
    pub family: &'static str,
    pub params: Vec<(&'static str, i64)>,
    pub model: AlgebraModel,
    pub lhs: NCPoly,
    pub rhs: NCPoly,
    pub mode: CheckMode,
}

#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub residual: NCPoly,
    pub pass: bool,
}

impl IdentityInstance {
    pub fn check(&self) -> Result<IdentityOutcome> {
        let residual = match self.mode {
            CheckMode::FreeAlgebra => self.lhs.try_sub(&self.rhs)?,
            _ => self.model.identity_residual(&self.lhs, &self.rhs)?,
        };
        let pass = match self.mode {
            CheckMode::Discrepancy => !residual.is_zero(),
            _ => residual.is_zero(),
        };
        Ok(IdentityOutcome { residual, pass })
    }
}

fn inst(
    family: &'static str,
    params: Vec<(&'static str, i64)>,
    model: &AlgebraModel,
    lhs: NCPoly,
    rhs: NCPoly,
) -> IdentityInstance {
    IdentityInstance {
        family,
        params,
        model: model.clone(),
        lhs,
        rhs,
        mode: CheckMode::Normalize,
    }
}

fn ipow(n: usize) -> u32 {
    n as u32
}

/// `A^nB` and `AB^n` in the two-letter presentation, `n = 1..=n_max`.
pub fn power_identities(m: &AlgebraModel, n_max: usize) -> Vec<IdentityInstance> {
    let ab = m.ab();
    let p = m.params();
    let a = NCPoly::letter(ab, 'A');
    let b = NCPoly::letter(ab, 'B');
    let qa = a.scale(&p.q);
    let qb = b.scale(&p.q);
    let sc = |c: &RatFunc| NCPoly::scalar(ab, c.clone());
    let mut out = Vec::new();
    for n in 1..=n_max {
        let nn = ipow(n);
        let mut sum1 = NCPoly::zero(ab);
        let mut sum3 = NCPoly::zero(ab);
        for t in 0..=nn {
            sum1 = &sum1 + &qa.pow(nn - t).scale(&(&binomial(nn, t) * &p.s.pow(t)));
            sum3 = &sum3 + &qb.pow(nn - t).scale(&(&binomial(nn, t) * &p.r.pow(t)));
        }
        let mut sum2 = NCPoly::zero(ab);
        let mut sum4 = NCPoly::zero(ab);
        for i in 0..nn {
            sum2 = &sum2 + &(&(&qa + &sc(&p.s)).pow(nn - 1 - i) * &a.pow(i + 1));
            sum4 = &sum4 + &(&(&qb + &sc(&p.r)).pow(nn - 1 - i) * &b.pow(i + 1));
        }
        let lhs1 = &a.pow(nn) * &b;
        let rhs1 = &(&b * &sum1) + &sum2.scale(&p.r);
        out.push(inst("power.AnB", vec![("n", n as i64)], m, lhs1, rhs1));
        let lhs2 = &a * &b.pow(nn);
        let rhs2 = &(&sum3 * &a) + &sum4.scale(&p.s);
        out.push(inst("power.ABn", vec![("n", n as i64)], m, lhs2, rhs2));
    }
    out
}

/// The ξ2 summation, a free-algebra identity, for `h = 1..=h_max`.
pub fn xi2_identities(m: &AlgebraModel, h_max: usize) -> Vec<IdentityInstance> {
    let p = m.params();
    (1..=h_max)
        .map(|h| {
            let ach = NCPoly::word(m.abc(), word_of(m.abc(), &[('A', 1), ('C', h)]));
            let rhs = &ach
                - &(&m.bca(0, h, 1).scale(&p.qpow(h as u32))
                    + &m.bca(0, h, 0).scale(&(&p.bracket(h as i64) * &p.s)));
            IdentityInstance {
                mode: CheckMode::FreeAlgebra,
                ..inst("xi2.summation", vec![("h", h as i64)], m, m.xi2_sum(h), rhs)
            }
        })
        .collect()
}

/// `AC^m` and `C^mB` reordering for `m = 1..=m_max`.
pub fn c_power_identities(m: &AlgebraModel, m_max: usize) -> Vec<IdentityInstance> {
    let p = m.params();
    let abc = m.abc();
    let mut out = Vec::new();
    for e in 1..=m_max {
        let qe = p.qpow(e as u32);
        let br = p.bracket(e as i64);
        let lhs = NCPoly::word(abc, word_of(abc, &[('A', 1), ('C', e)]));
        let rhs = &m.bca(0, e, 1).scale(&qe) + &m.bca(0, e, 0).scale(&(&br * &p.s));
        out.push(inst("cpower.ACm", vec![("m", e as i64)], m, lhs, rhs));
        let lhs = NCPoly::word(abc, word_of(abc, &[('C', e), ('B', 1)]));
        let rhs = &m.bca(1, e, 0).scale(&qe) + &m.bca(0, e, 0).scale(&(&br * &p.r));
        out.push(inst("cpower.CmB", vec![("m", e as i64)], m, lhs, rhs));
    }
    out
}

/// Reordering formulas in `U_q(r,0)` with exponents up to `e`.
pub fn r0_identities(m: &AlgebraModel, e: usize) -> Vec<IdentityInstance> {
    let p = m.params();
    let abc = m.abc();
    let (q, r) = (&p.q, &p.r);
    let one = RatFunc::one();
    let d = (&one - q).inv().expect("q admissible");
    let w = |parts: &[(char, usize)]| NCPoly::word(abc, word_of(abc, parts));
    let mut out = Vec::new();
    for n in 1..=e {
        let nn = n as u32;
        let ni = n as i64;
        let lhs = w(&[('A', n), ('B', 1)]);
        let rhs = &w(&[('B', 1), ('A', n)]).scale(&q.pow(nn))
            + &w(&[('A', n)]).scale(&(&p.bracket(ni) * r));
        out.push(inst("uq_r0.AnB", vec![("n", ni)], m, lhs, rhs));

        let anbn = w(&[('A', n), ('B', n)]);
        let mut prod = NCPoly::one(abc);
        for i in 0..n {
            let j = (n - i) as u32;
            let factor = &w(&[('B', 1), ('A', 1)]).scale(&q.pow(j))
                + &w(&[('A', 1)]).scale(&(&p.bracket(j as i64) * r));
            prod = &prod * &factor;
        }
        out.push(inst(
            "uq_r0.AnBn_product",
            vec![("n", ni)],
            m,
            anbn.clone(),
            prod,
        ));

        let mut subst = NCPoly::one(abc);
        for k in (1..=nn).rev() {
            let factor = (&w(&[('A', 1)]).scale(r) - &w(&[('C', 1)]).scale(&q.pow(k))).scale(&d);
            subst = &subst * &factor;
        }
        out.push(inst(
            "uq_r0.AnBn_substituted",
            vec![("n", ni)],
            m,
            anbn.clone(),
            subst,
        ));

        let mut variant = NCPoly::one(abc);
        for i in 0..=nn {
            let factor = (&w(&[('A', 1)]).scale(r)
                - &w(&[('C', 1)]).scale(&(&q.pow(nn + 1 - i) * r)))
                .scale(&d);
            variant = &variant * &factor;
        }
        out.push(IdentityInstance {
            mode: CheckMode::Discrepancy,
            ..inst("uq_r0.AnBn_variant", vec![("n", ni)], m, anbn, variant)
        });

        for mm in 1..=e {
            let (mu, mi) = (mm as u32, mm as i64);
            let lhs = w(&[('A', n), ('C', mm)]);
            let rhs = w(&[('C', mm), ('A', n)]).scale(&q.pow(nn * mu));
            out.push(inst("uq_r0.AnCm", vec![("n", ni), ("m", mi)], m, lhs, rhs));

            let lhs = w(&[('C', mm), ('B', n)]);
            let mut rhs = NCPoly::zero(abc);
            for i in 0..=nn {
                let c = &(&binomial(nn, i) * &q.pow(mu * (nn - i))) * &(&p.bracket(mi) * r).pow(i);
                rhs = &rhs + &w(&[('B', n - i as usize), ('C', mm)]).scale(&c);
            }
            out.push(inst("uq_r0.CmBn", vec![("m", mi), ("n", ni)], m, lhs, rhs));
        }
    }
    for k in 1..=e {
        for wexp in 1..=e {
            for y in 1..=e {
                let base = r0_reorder_base(m, k, wexp, y);
                for t in 0..=e {
                    let lhs = w(&[('C', k), ('A', wexp), ('B', y), ('C', t)]);
                    let rhs = shift_trailing_c(m, &base, k, wexp, t);
                    out.push(inst(
                        "uq_r0.reorder_CkAwByCt",
                        vec![
                            ("k", k as i64),
                            ("w", wexp as i64),
                            ("y", y as i64),
                            ("t", t as i64),
                        ],
                        m,
                        lhs,
                        rhs,
                    ));
                }
            }
        }
    }
    out
}

/// Right side of the `C^kA^wB^y` expansion: words `B^{y-i-j} C^k A^w`.
fn r0_reorder_base(m: &AlgebraModel, k: usize, w: usize, y: usize) -> NCPoly {
    let p = m.params();
    let (q, r) = (&p.q, &p.r);
    let (ku, wu, yu) = (k as u32, w as u32, y as u32);
    let mut out = NCPoly::zero(m.abc());
    for i in 0..=yu {
        let outer =
            &(&binomial(yu, i) * &q.pow(wu * (yu - i))) * &(&p.bracket(w as i64) * r).pow(i);
        for j in 0..=yu - i {
            let inner = &(&binomial(yu - i, j) * &q.pow(ku * (yu - i - j)))
                * &(&p.bracket(k as i64) * r).pow(j);
            out = &out + &m.bca((yu - i - j) as usize, k, w).scale(&(&outer * &inner));
        }
    }
    out
}

/// Right-multiplies by `C^t` and swaps `A^w C^t = q^{wt} C^t A^w` in every
/// word `B^b C^k A^w`.
fn shift_trailing_c(m: &AlgebraModel, base: &NCPoly, k: usize, w: usize, t: usize) -> NCPoly {
    let factor = m.params().qpow((w * t) as u32);
    let mut out = NCPoly::zero(m.abc());
    for (word, c) in base.terms() {
        let b = word.len() - k - w;
        out.add_term(bca_word(m.abc(), b, k + t, w), &(c * &factor));
    }
    out
}

/// The `U_q(0,s)` analogs with exponents up to `e`.
pub fn zs_identities(m: &AlgebraModel, e: usize) -> Vec<IdentityInstance> {
    let p = m.params();
    let abc = m.abc();
    let (q, s) = (&p.q, &p.s);
    let w = |parts: &[(char, usize)]| NCPoly::word(abc, word_of(abc, parts));
    let mut out = Vec::new();
    for n in 1..=e {
        let (nn, ni) = (n as u32, n as i64);
        let lhs = w(&[('A', 1), ('B', n)]);
        let rhs = &w(&[('B', n), ('A', 1)]).scale(&q.pow(nn))
            + &w(&[('B', n)]).scale(&(&p.bracket(ni) * s));
        out.push(inst("uq_0s.ABn", vec![("n", ni)], m, lhs, rhs));
        for mm in 1..=e {
            let (mu, mi) = (mm as u32, mm as i64);
            let lhs = w(&[('A', n), ('C', mm)]);
            let mut rhs = NCPoly::zero(abc);
            for i in 0..=nn {
                let c = &(&binomial(nn, i) * &q.pow(mu * (nn - i))) * &(&p.bracket(mi) * s).pow(i);
                rhs = &rhs + &w(&[('C', mm), ('A', n - i as usize)]).scale(&c);
            }
            out.push(inst("uq_0s.AnCm", vec![("n", ni), ("m", mi)], m, lhs, rhs));

            let lhs = w(&[('C', mm), ('B', n)]);
            let rhs = w(&[('B', n), ('C', mm)]).scale(&q.pow(mu * nn));
            out.push(inst("uq_0s.CmBn", vec![("m", mi), ("n", ni)], m, lhs, rhs));
        }
    }
    for k in 1..=e {
        for wexp in 1..=e {
            for y in 1..=e {
                let base = zs_reorder_base(m, k, wexp, y);
                for t in 0..=e {
                    let lhs = w(&[('C', t), ('A', y), ('B', wexp), ('C', k)]);
                    // C^t B^w = q^{wt} B^w C^t on the left of every word
                    let factor = q.pow((wexp * t) as u32);
                    let mut rhs = NCPoly::zero(abc);
                    for (word, c) in base.terms() {
                        let a = word.len() - wexp - k;
                        rhs.add_term(bca_word(abc, wexp, k + t, a), &(c * &factor));
                    }
                    out.push(inst(
                        "uq_0s.reorder_CtAyBwCk",
                        vec![
                            ("k", k as i64),
                            ("w", wexp as i64),
                            ("y", y as i64),
                            ("t", t as i64),
                        ],
                        m,
                        lhs,
                        rhs,
                    ));
                }
            }
        }
    }
    out
}

/// Right side of the `A^yB^wC^k` expansion: words `B^w C^k A^{y-i-j}`.
fn zs_reorder_base(m: &AlgebraModel, k: usize, w: usize, y: usize) -> NCPoly {
    let p = m.params();
    let (q, s) = (&p.q, &p.s);
    let (ku, wu, yu) = (k as u32, w as u32, y as u32);
    let mut out = NCPoly::zero(m.abc());
    for i in 0..=yu {
        let outer =
            &(&binomial(yu, i) * &q.pow(wu * (yu - i))) * &(&p.bracket(w as i64) * s).pow(i);
        for j in 0..=yu - i {
            let inner = &(&binomial(yu - i, j) * &q.pow(ku * (yu - i - j)))
                * &(&p.bracket(k as i64) * s).pow(j);
            out = &out + &m.bca(w, k, (yu - i - j) as usize).scale(&(&outer * &inner));
        }
    }
    out
}
