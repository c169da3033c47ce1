//! Lie polynomials in `U_q(r,0)` and `U_q(0,s)`.
//!
//! Membership in the Lie subalgebra generated by `A`, `B` is decided by the
//! support of the normal form: the Lie algebra has basis
//! `A, B, B^n C^m (m >= 1), C^m A^k (m, k >= 1)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::algebras::{bca_word, AlgebraModel, BasisWordClass};
use crate::coeffs::{binomial, RatFunc};
use crate::error::{Error, Result};
use crate::freealg::{Alphabet, GeneratorMap, NCPoly, Word};

/// Which of the two Lie algebras a model hosts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LieKind {
    /// `L_(r,0)` inside `U_q(r,0)`.
    R0,
    /// `L_(0,s)` inside `U_q(0,s)`.
    ZeroS,
}

impl LieKind {
    pub fn of(model: &AlgebraModel) -> Option<LieKind> {
        let p = model.params();
        match (p.r.is_zero(), p.s.is_zero()) {
            (false, true) => Some(LieKind::R0),
            (true, false) => Some(LieKind::ZeroS),
            _ => None,
        }
    }

    fn require(model: &AlgebraModel) -> Result<LieKind> {
        Self::of(model).ok_or_else(|| {
            Error::ModelMismatch(format!(
                "Lie membership needs U_q(r,0) or U_q(0,s), got {}",
                model.name()
            ))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LieBasisWord {
    A,
    B,
    /// `B^n C^m`, `n >= 0`, `m >= 1`.
    BC {
        n: usize,
        m: usize,
    },
    /// `C^m A^k`, `m, k >= 1`.
    CA {
        m: usize,
        k: usize,
    },
}

impl LieBasisWord {
    pub fn word(&self, abc: &Alphabet) -> Word {
        match *self {
            LieBasisWord::A => bca_word(abc, 0, 0, 1),
            LieBasisWord::B => bca_word(abc, 1, 0, 0),
            LieBasisWord::BC { n, m } => bca_word(abc, n, m, 0),
            LieBasisWord::CA { m, k } => bca_word(abc, 0, m, k),
        }
    }

    pub fn poly(&self, abc: &Alphabet) -> NCPoly {
        NCPoly::word(abc, self.word(abc))
    }

    /// Basis words with every exponent at most `bound`.
    pub fn enumerate(bound: usize) -> Vec<LieBasisWord> {
        let mut out = vec![LieBasisWord::A, LieBasisWord::B];
        for m in 1..=bound {
            for n in 0..=bound {
                out.push(LieBasisWord::BC { n, m });
            }
        }
        for m in 1..=bound {
            for k in 1..=bound {
                out.push(LieBasisWord::CA { m, k });
            }
        }
        out
    }

    /// The index image under `Ψ` (the sign is always `-1`).
    pub fn psi_index(&self) -> LieBasisWord {
        match *self {
            LieBasisWord::A => LieBasisWord::B,
            LieBasisWord::B => LieBasisWord::A,
            LieBasisWord::BC { n: 0, m } => LieBasisWord::BC { n: 0, m },
            LieBasisWord::BC { n, m } => LieBasisWord::CA { m, k: n },
            LieBasisWord::CA { m, k } => LieBasisWord::BC { n: k, m },
        }
    }
}

impl fmt::Display for LieBasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word(&Alphabet::abc()).display(&Alphabet::abc()).fmt(f)
    }
}

/// Classifies an irreducible word of `R` into the Lie basis, or `None` when
/// it is an algebra basis word outside the Lie basis (`I`, `A^k`, `B^l`
/// with `k, l >= 2`). Reducible words are an error.
pub fn lie_basis_classify(w: &Word, model: &AlgebraModel) -> Result<Option<LieBasisWord>> {
    Ok(match model.classify(w)? {
        BasisWordClass::BC { b: 1, c: 0 } => Some(LieBasisWord::B),
        BasisWordClass::BC { b: _, c: 0 } => None,
        BasisWordClass::BC { b, c } => Some(LieBasisWord::BC { n: b, m: c }),
        BasisWordClass::CA { c: 0, a: 1 } => Some(LieBasisWord::A),
        BasisWordClass::CA { c: 0, a: _ } => None,
        BasisWordClass::CA { c, a } => Some(LieBasisWord::CA { m: c, k: a }),
    })
}

#[derive(Clone, Debug)]
pub struct MembershipVerdict {
    pub kind: LieKind,
    pub normal_form: NCPoly,
    pub verdict: bool,
    pub offending_words: Vec<Word>,
}

pub fn is_lie_polynomial(p: &NCPoly, model: &AlgebraModel) -> Result<MembershipVerdict> {
    let kind = LieKind::require(model)?;
    let normal_form = model.three_gen_normal_form(p)?;
    let mut offending_words = Vec::new();
    for w in normal_form.support() {
        if lie_basis_classify(w, model)?.is_none() {
            offending_words.push(w.clone());
        }
    }
    Ok(MembershipVerdict {
        kind,
        verdict: offending_words.is_empty(),
        normal_form,
        offending_words,
    })
}

/// Expansion of a Lie polynomial in the Lie basis.
pub fn lie_coordinates(p: &NCPoly, model: &AlgebraModel) -> Result<Vec<(LieBasisWord, RatFunc)>> {
    let v = is_lie_polynomial(p, model)?;
    if !v.verdict {
        let abc = model.abc();
        return Err(Error::NotLiePolynomial(
            v.offending_words
                .iter()
                .map(|w| w.display(abc).to_string())
                .collect(),
        ));
    }
    v.normal_form
        .terms()
        .map(|(w, c)| Ok((lie_basis_classify(w, model)?.expect("checked"), c.clone())))
        .collect()
}

/// Normal form of `(ad x)^n y`.
pub fn ad_power(x: &NCPoly, y: &NCPoly, n: usize, model: &AlgebraModel) -> Result<NCPoly> {
    let mut acc = model.three_gen_normal_form(y)?;
    for _ in 0..n {
        acc = model.three_gen_normal_form(&x.bracket(&acc)?)?;
    }
    Ok(acc)
}

/// Normal form of `[x, y]`.
pub fn lie_bracket(x: &NCPoly, y: &NCPoly, model: &AlgebraModel) -> Result<NCPoly> {
    model.three_gen_normal_form(&x.bracket(y)?)
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub left: LieBasisWord,
    pub right: LieBasisWord,
    pub bracket: NCPoly,
    pub closed_form: Option<NCPoly>,
    /// Whether the normalized closed form equals the bracket.
    pub matches: Option<bool>,
    pub in_lie_span: bool,
}

/// Closed forms for brackets of basis words in `U_q(r,0)`.
fn closed_form(l: LieBasisWord, rt: LieBasisWord, model: &AlgebraModel) -> Option<NCPoly> {
    use LieBasisWord::*;
    let abc = model.abc();
    let p = model.params();
    let (q, r) = (&p.q, &p.r);
    let one = RatFunc::one();
    let word = |b: usize, c: usize, a: usize| NCPoly::word(abc, bca_word(abc, b, c, a));
    let qp = |e: usize| q.pow(e as u32);
    let br = |e: usize| p.bracket(e as i64);
    // [B^v C^u, B^w C^t] for v, w >= 0 and u, t >= 1
    let bc_bc = |v: usize, u: usize, w: usize, t: usize| {
        let mut out = NCPoly::zero(abc);
        for i in 0..=w {
            let c =
                &(&binomial(w as u32, i as u32) * &qp(u * w - u * i)) * &(&br(u) * r).pow(i as u32);
            out = &out + &word(v + w - i, t + u, 0).scale(&c);
        }
        for i in 0..=v {
            let c =
                &(&binomial(v as u32, i as u32) * &qp(t * v - t * i)) * &(&br(t) * r).pow(i as u32);
            out = &out - &word(w + v - i, t + u, 0).scale(&c);
        }
        out
    };
    let forward = match (l, rt) {
        (x, y) if x == y => Some(NCPoly::zero(abc)),
        (A, B) => Some(word(0, 1, 0)),
        (BC { n: 0, m: u }, A) => Some(word(0, u, 1).scale(&(&one - &qp(u)))),
        (BC { n: t, m: u }, A) => {
            let mut out = word(t, u, 1);
            for i in 0..=t {
                let c = &(&binomial(t as u32, i as u32) * &qp(t + u - i)) * &r.pow(i as u32);
                out = &out - &word(t - i, u, 1).scale(&c);
            }
            Some(out)
        }
        (CA { m: u, k: w }, A) => Some(word(0, u, w + 1).scale(&(&one - &qp(u)))),
        (CA { m: u, k: w }, BC { n: 0, m: t }) => {
            Some(word(0, t + u, w).scale(&(&qp(t * w) - &one)))
        }
        (CA { m: u, k: w }, CA { m: t, k: v }) => {
            Some(word(0, t + u, v + w).scale(&(&qp(t * w) - &qp(u * v))))
        }
        (BC { n: t, m: u }, B) => {
            Some(&word(t + 1, u, 0).scale(&(&qp(u) - &one)) + &word(t, u, 0).scale(&(&br(u) * r)))
        }
        (BC { n: v, m: u }, BC { n: w, m: t }) => Some(bc_bc(v, u, w, t)),
        _ => None,
    };
    forward.or_else(|| match (rt, l) {
        (A, B)
        | (BC { .. }, A)
        | (CA { .. }, A)
        | (CA { .. }, BC { n: 0, .. })
        | (BC { .. }, B) => closed_form(rt, l, model).map(|p| -p),
        _ => None,
    })
}

pub fn commutator_table_entry(
    left: LieBasisWord,
    right: LieBasisWord,
    model: &AlgebraModel,
) -> Result<TableEntry> {
    if LieKind::of(model) != Some(LieKind::R0) {
        return Err(Error::ModelMismatch(format!(
            "the commutator table lives in U_q(r,0), got {}",
            model.name()
        )));
    }
    let abc = model.abc();
    let bracket = lie_bracket(&left.poly(abc), &right.poly(abc), model)?;
    let closed = closed_form(left, right, model);
    let matches = match &closed {
        Some(c) => Some(model.three_gen_normal_form(c)? == bracket),
        None => None,
    };
    let mut in_lie_span = true;
    for w in bracket.support() {
        if lie_basis_classify(w, model)?.is_none() {
            in_lie_span = false;
        }
    }
    Ok(TableEntry {
        left,
        right,
        bracket,
        closed_form: closed,
        matches,
        in_lie_span,
    })
}

/// The linear map `Ψ: L_(s,0) -> K̃ ⊆ U_q(0,s)`.
#[derive(Clone, Debug)]
pub struct PsiMap {
    source: AlgebraModel,
    target: AlgebraModel,
}

impl PsiMap {
    /// Requires source `U_q(s,0)` and target `U_q(0,s)` over the same `q`
    /// and with the same nonzero `s`.
    pub fn new(source: &AlgebraModel, target: &AlgebraModel) -> Result<Self> {
        let (sp, tp) = (source.params(), target.params());
        let ok =
            sp.q == tp.q && sp.s.is_zero() && tp.r.is_zero() && !tp.s.is_zero() && sp.r == tp.s;
        if !ok {
            return Err(Error::ModelMismatch(format!(
                "Psi needs U_q(s,0) -> U_q(0,s) with a shared s, got {} -> {}",
                source.name(),
                target.name()
            )));
        }
        Ok(PsiMap {
            source: source.clone(),
            target: target.clone(),
        })
    }

    pub fn source(&self) -> &AlgebraModel {
        &self.source
    }

    pub fn target(&self) -> &AlgebraModel {
        &self.target
    }

    pub fn apply(&self, p: &NCPoly) -> Result<NCPoly> {
        let abc = self.target.abc();
        let mut out = NCPoly::zero(abc);
        for (w, c) in lie_coordinates(p, &self.source)? {
            out.add_term(w.psi_index().word(abc), &-&c);
        }
        Ok(out)
    }

    /// Target normal form of `Ψ([x,y]) - [Ψ(x), Ψ(y)]`.
    pub fn bracket_residual(&self, x: &NCPoly, y: &NCPoly) -> Result<NCPoly> {
        let lhs = self.apply(&lie_bracket(x, y, &self.source)?)?;
        let rhs = lie_bracket(&self.apply(x)?, &self.apply(y)?, &self.target)?;
        self.target.three_gen_normal_form(&lhs.try_sub(&rhs)?)
    }

    /// Residual of `Ψ(B^y C^k A^w) = -B^w C^k A^y`.
    pub fn lemma_bca_residual(&self, y: usize, k: usize, w: usize) -> Result<NCPoly> {
        let abc = self.source.abc();
        let lhs = self.apply(&NCPoly::word(abc, bca_word(abc, y, k, w)))?;
        let rhs = -NCPoly::word(abc, bca_word(abc, w, k, y));
        self.target.identity_residual(&lhs, &rhs)
    }

    /// Residual of `Ψ(C^k A^y B^w C^t) = -C^t A^w B^y C^k`.
    pub fn lemma_cabc_residual(&self, k: usize, y: usize, w: usize, t: usize) -> Result<NCPoly> {
        let abc = self.source.abc();
        let word =
            |parts: &[(char, usize)]| NCPoly::word(abc, crate::algebras::word_of(abc, parts));
        let lhs = self.apply(&word(&[('C', k), ('A', y), ('B', w), ('C', t)]))?;
        let rhs = -word(&[('C', t), ('A', w), ('B', y), ('C', k)]);
        self.target.identity_residual(&lhs, &rhs)
    }
}

pub fn psi_apply(p: &NCPoly, source: &AlgebraModel, target: &AlgebraModel) -> Result<NCPoly> {
    PsiMap::new(source, target)?.apply(p)
}

pub fn check_bracket_preservation(
    x: &NCPoly,
    y: &NCPoly,
    source: &AlgebraModel,
    target: &AlgebraModel,
) -> Result<NCPoly> {
    PsiMap::new(source, target)?.bracket_residual(x, y)
}

/// Realizes Lie basis words as iterated brackets of two generators.
///
/// The recipes are those valid in `U_q(r,0)` with `r` taken from `params`:
/// `C = [A,B]`, `C^m A = (1-q)^{-m} (ad C)^m A`,
/// `C^{m+1} = q^m/{m+1} [C^m A, B]`, `C^m A^{n+1} = (1-q^m)^{-n} (-ad A)^n (C^m A)`,
/// `B C^m = ([B, C^m] + {m} r C^m)/(1-q^m)` and `B^{n+1} C^m` from
/// `(ad B)^n (B C^m)`. Evaluating them with other generator images and
/// another model gives the image of each basis word under any Lie map.
pub struct LieRealizer<'a> {
    recipe_model: &'a AlgebraModel,
    eval_model: &'a AlgebraModel,
    a: NCPoly,
    b: NCPoly,
    cache: HashMap<LieBasisWord, NCPoly>,
}

impl<'a> LieRealizer<'a> {
    pub fn new(
        recipe_model: &'a AlgebraModel,
        eval_model: &'a AlgebraModel,
        a: NCPoly,
        b: NCPoly,
    ) -> Self {
        LieRealizer {
            recipe_model,
            eval_model,
            a,
            b,
            cache: HashMap::new(),
        }
    }

    fn br(&self, x: &NCPoly, y: &NCPoly) -> Result<NCPoly> {
        lie_bracket(x, y, self.eval_model)
    }

    pub fn realize(&mut self, w: LieBasisWord) -> Result<NCPoly> {
        if let Some(v) = self.cache.get(&w) {
            return Ok(v.clone());
        }
        let p = self.recipe_model.params().clone();
        let one = RatFunc::one();
        let v = match w {
            LieBasisWord::A => self.a.clone(),
            LieBasisWord::B => self.b.clone(),
            LieBasisWord::BC { n: 0, m: 1 } => self.br(&self.a, &self.b)?,
            LieBasisWord::CA { m, k: 1 } => {
                let c = self.realize(LieBasisWord::BC { n: 0, m: 1 })?;
                let mut acc = self.a.clone();
                for _ in 0..m {
                    acc = self.br(&c, &acc)?;
                }
                acc.scale(&(&one - &p.q).powi(-(m as i32))?)
            }
            LieBasisWord::BC { n: 0, m } => {
                let cma = self.realize(LieBasisWord::CA { m: m - 1, k: 1 })?;
                let k = p.q.pow(m as u32 - 1).checked_div(&p.bracket(m as i64))?;
                self.br(&cma, &self.b)?.scale(&k)
            }
            LieBasisWord::CA { m, k } => {
                let mut acc = self.realize(LieBasisWord::CA { m, k: 1 })?;
                let neg_a = -&self.a;
                for _ in 1..k {
                    acc = self.br(&neg_a, &acc)?;
                }
                acc.scale(&(&one - &p.q.pow(m as u32)).powi(1 - k as i32)?)
            }
            LieBasisWord::BC { n: 1, m } => {
                let cm = self.realize(LieBasisWord::BC { n: 0, m })?;
                let sum = &self.br(&self.b, &cm)? + &cm.scale(&(&p.bracket(m as i64) * &p.r));
                sum.scale(&(&one - &p.q.pow(m as u32)).inv()?)
            }
            LieBasisWord::BC { n, m } => {
                // (ad B)^j (B C^m) = sum_i binom(j,i) (1-q^m)^i (-{m} r)^{j-i} B^{i+1} C^m
                let j = n - 1;
                let mut acc = self.realize(LieBasisWord::BC { n: 1, m })?;
                for _ in 0..j {
                    acc = self.br(&self.b, &acc)?;
                }
                let lam = &one - &p.q.pow(m as u32);
                let mu = -(&p.bracket(m as i64) * &p.r);
                for i in 0..j {
                    let lower = self.realize(LieBasisWord::BC { n: i + 1, m })?;
                    let c = &(&binomial(j as u32, i as u32) * &lam.pow(i as u32))
                        * &mu.pow((j - i) as u32);
                    acc = &acc - &lower.scale(&c);
                }
                acc.scale(&lam.powi(-(j as i32))?)
            }
        };
        let v = self.eval_model.three_gen_normal_form(&v)?;
        self.cache.insert(w, v.clone());
        Ok(v)
    }
}

/// Product-compatibility check `Φ(xy)` against `Φ(x)Φ(y)`.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub x: String,
    pub y: String,
    /// Target normal form of `Φ(nf(xy))`.
    pub image_of_product: String,
    /// Target normal form of `Φ(x)Φ(y)`.
    pub product_of_images: String,
    pub residual: String,
    /// Coefficients of the residual in the target basis.
    pub constraints: Vec<String>,
    /// Oracle-side residual (two-letter normal form after eliminating `C`);
    /// zero exactly when `residual` is.
    pub oracle_residual: String,
    #[serde(skip)]
    pub image_of_product_poly: Option<NCPoly>,
    #[serde(skip)]
    pub residual_poly: Option<NCPoly>,
}

/// Outcome of testing a candidate algebra map given on `A` and `B`.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub source: String,
    pub target: String,
    pub images: Vec<(char, String)>,
    /// Image of the source relation, in the target's two-letter basis.
    pub relation_residual: String,
    pub constraints: Vec<String>,
    pub probe_residuals: Vec<ProbeReport>,
    #[serde(skip)]
    pub relation_residual_poly: Option<NCPoly>,
    #[serde(skip)]
    pub constraint_values: Vec<RatFunc>,
}

/// `images` maps the source's two-letter alphabet into the target's.
pub fn homomorphism_obstruction(
    source: &AlgebraModel,
    images: &GeneratorMap,
    target: &AlgebraModel,
    probes: &[(NCPoly, NCPoly)],
) -> Result<ObstructionReport> {
    let ab = source.ab();
    let abc = source.abc();
    let sp = source.params();
    let m = |w: &str| NCPoly::monomial(ab, w);
    let relation =
        &(&(&m("AB") - &m("BA").scale(&sp.q)) - &m("A").scale(&sp.r)) - &m("B").scale(&sp.s);
    let relation_residual = target.oracle_normal_form(&images.apply(&relation)?)?;
    let mut constraint_values: Vec<RatFunc> =
        relation_residual.terms().map(|(_, c)| c.clone()).collect();

    let img = |ch: char| -> Result<NCPoly> {
        let p = images.image(ch).ok_or(Error::MissingImage(ch))?;
        target.embed().apply(p)
    };
    let (ia, ib) = (img('A')?, img('B')?);
    let phi = GeneratorMap::new(abc, abc)
        .with('A', ia.clone())?
        .with('B', ib.clone())?
        .with('C', &(&ia * &ib) - &(&ib * &ia))?;

    let mut probe_residuals = Vec::new();
    for (x, y) in probes {
        let xy = source.three_gen_normal_form(&x.multiply(y)?)?;
        let phi_xy = phi.apply(&xy)?;
        let phi_x_phi_y = phi.apply(x)?.multiply(&phi.apply(y)?)?;
        let lhs = target.three_gen_normal_form(&phi_xy)?;
        let rhs = target.three_gen_normal_form(&phi_x_phi_y)?;
        let residual = lhs.try_sub(&rhs)?;
        let oracle_residual = target
            .oracle_normal_form(&target.eliminate_c().apply(&phi_xy.try_sub(&phi_x_phi_y)?)?)?;
        let cs: Vec<RatFunc> = residual.terms().map(|(_, c)| c.clone()).collect();
        constraint_values.extend(cs.iter().cloned());
        probe_residuals.push(ProbeReport {
            x: x.to_string(),
            y: y.to_string(),
            image_of_product: lhs.to_string(),
            product_of_images: rhs.to_string(),
            residual: residual.to_string(),
            constraints: cs.iter().map(|c| c.to_string()).collect(),
            oracle_residual: oracle_residual.to_string(),
            image_of_product_poly: Some(lhs),
            residual_poly: Some(residual),
        });
    }
    let images_out = ['A', 'B']
        .iter()
        .filter_map(|&ch| images.image(ch).map(|p| (ch, p.to_string())))
        .collect();
    Ok(ObstructionReport {
        source: source.name(),
        target: target.name(),
        images: images_out,
        relation_residual: relation_residual.to_string(),
        constraints: constraint_values.iter().map(|c| c.to_string()).collect(),
        probe_residuals,
        relation_residual_poly: Some(relation_residual),
        constraint_values,
    })
}

/// Index-level check that `Ψ` permutes the basis words with exponents at
/// most `bound`: returns the words whose image falls outside, or collides.
pub fn psi_index_defects(bound: usize) -> Vec<LieBasisWord> {
    let domain = LieBasisWord::enumerate(bound);
    let set: BTreeSet<_> = domain.iter().copied().collect();
    let mut seen = BTreeSet::new();
    domain
        .into_iter()
        .filter(|w| {
            let img = w.psi_index();
            !set.contains(&img) || !seen.insert(img)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Var;

    fn r0() -> AlgebraModel {
        AlgebraModel::uq_r0()
    }

    #[test]
    fn classify_examples() {
        let m = r0();
        let a = m.abc();
        assert_eq!(
            lie_basis_classify(&a.word("CCAAAAA"), &m).unwrap(),
            Some(LieBasisWord::CA { m: 2, k: 5 })
        );
        assert_eq!(lie_basis_classify(&a.word("AA"), &m).unwrap(), None);
        assert_eq!(lie_basis_classify(&Word::empty(), &m).unwrap(), None);
        assert!(lie_basis_classify(&a.word("AB"), &m).is_err());
    }

    #[test]
    fn membership_examples() {
        let m = r0();
        let cases = [
            ("C", true),
            ("AB", true),
            ("BA", true),
            ("", false),
            ("AA", false),
            ("BBB", false),
        ];
        for (w, expected) in cases {
            let p = if w.is_empty() {
                NCPoly::one(m.abc())
            } else {
                m.mono(w)
            };
            assert_eq!(is_lie_polynomial(&p, &m).unwrap().verdict, expected, "{w}");
        }
        assert!(is_lie_polynomial(&m.mono("A"), &AlgebraModel::uqrs()).is_err());
    }

    #[test]
    fn ad_examples() {
        let m = r0();
        let (q, r) = (RatFunc::q(), RatFunc::r());
        let omq = &RatFunc::one() - &q;
        let c = m.mono("C");
        assert_eq!(
            ad_power(&c, &m.mono("A"), 2, &m).unwrap(),
            m.mono("CCA").scale(&omq.pow(2))
        );
        let qm1 = -&omq;
        assert_eq!(
            ad_power(&c, &m.mono("B"), 2, &m).unwrap(),
            &m.mono("BCC").scale(&qm1.pow(2)) + &m.mono("CC").scale(&(&qm1 * &r))
        );
        assert_eq!(ad_power(&c, &m.mono("B"), 0, &m).unwrap(), m.mono("B"));
    }

    #[test]
    fn table_examples() {
        let m = r0();
        let e =
            commutator_table_entry(LieBasisWord::BC { n: 0, m: 2 }, LieBasisWord::A, &m).unwrap();
        let q = RatFunc::q();
        assert_eq!(
            e.bracket,
            m.mono("CCA").scale(&(&RatFunc::one() - &q.pow(2)))
        );
        assert_eq!(e.matches, Some(true));
        let e = commutator_table_entry(
            LieBasisWord::CA { m: 1, k: 1 },
            LieBasisWord::CA { m: 1, k: 1 },
            &m,
        )
        .unwrap();
        assert!(e.bracket.is_zero());
        let e =
            commutator_table_entry(LieBasisWord::BC { n: 1, m: 1 }, LieBasisWord::B, &m).unwrap();
        let expected =
            &m.mono("BBC").scale(&(&q - &RatFunc::one())) + &m.mono("BC").scale(&RatFunc::r());
        assert_eq!(e.bracket, expected);
        assert_eq!(e.matches, Some(true));
    }

    #[test]
    fn psi_examples() {
        let (src, tgt) = (AlgebraModel::uq_s0(), AlgebraModel::uq_0s());
        let psi = PsiMap::new(&src, &tgt).unwrap();
        assert_eq!(psi.apply(&src.mono("A")).unwrap(), -tgt.mono("B"));
        let p = &src.mono("A").scale(&RatFunc::from_int(2))
            + &src.mono("CC").scale(&RatFunc::from_int(3));
        let expected = &tgt.mono("B").scale(&RatFunc::from_int(-2))
            - &tgt.mono("CC").scale(&RatFunc::from_int(3));
        assert_eq!(psi.apply(&p).unwrap(), expected);
        assert!(psi.lemma_bca_residual(1, 1, 1).unwrap().is_zero());
        assert!(psi
            .bracket_residual(&src.mono("A"), &src.mono("B"))
            .unwrap()
            .is_zero());
        assert!(psi
            .bracket_residual(&src.mono("CC"), &src.mono("A"))
            .unwrap()
            .is_zero());
        assert!(matches!(
            psi.apply(&src.mono("AA")),
            Err(Error::NotLiePolynomial(_))
        ));
        assert!(PsiMap::new(&AlgebraModel::uq_r0(), &tgt).is_err());
    }

    #[test]
    fn realizer_reproduces_basis_words() {
        let m = AlgebraModel::uq_r0();
        let mut lr = LieRealizer::new(&m, &m, m.mono("A"), m.mono("B"));
        for w in LieBasisWord::enumerate(3) {
            assert_eq!(lr.realize(w).unwrap(), w.poly(m.abc()), "{w}");
        }
    }

    #[test]
    fn no_iso_relation_residual() {
        let src = AlgebraModel::uq_s0();
        let tgt = AlgebraModel::uq_0s();
        let ab = src.ab();
        let (al, be) = (RatFunc::var(Var::Alpha), RatFunc::var(Var::Beta));
        let images = GeneratorMap::new(ab, ab)
            .with('A', NCPoly::letter(ab, 'B').scale(&be))
            .unwrap()
            .with('B', NCPoly::letter(ab, 'A').scale(&al))
            .unwrap();
        let rep = homomorphism_obstruction(&src, &images, &tgt, &[]).unwrap();
        let (q, s) = (RatFunc::q(), RatFunc::s());
        let one = RatFunc::one();
        let expected = &NCPoly::monomial(ab, "BA").scale(&(&(&al * &be) * &(&one - &q.pow(2))))
            - &NCPoly::monomial(ab, "B").scale(&(&(&s * &be) * &(&(&al * &q) + &one)));
        assert_eq!(rep.relation_residual_poly.unwrap(), expected);
    }
}
