//! Verification suites. Each suite returns one [`Item`] per checked
//! instance; an item passes when its check holds exactly.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebras::{
    c_power_identities, power_identities, r0_identities, xi2_identities, zs_identities,
    AlgebraModel, BasisWordClass, CheckMode, IdentityInstance, PresentationCertificate,
};
use crate::coeffs::{RatFunc, Var};
use crate::error::{Error, Result};
use crate::freealg::{GeneratorMap, NCPoly};
use crate::liepoly::{
    ad_power, commutator_table_entry, homomorphism_obstruction, is_lie_polynomial,
    psi_index_defects, LieBasisWord, LieRealizer, PsiMap,
};
use crate::random::{random_point, random_poly, CoeffKind};
use crate::rewrite::{AmbiguityKind, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub name: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub detail: String,
}

impl Item {
    pub fn new(
        name: impl Into<String>,
        params: Value,
        ok: bool,
        detail: impl Into<String>,
    ) -> Self {
        let params = match params {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Item {
            name: name.into(),
            params,
            status: Status::from_bool(ok),
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn error(name: impl Into<String>, params: Value, e: &Error) -> Self {
        Item::new(name, params, false, format!("error: {e}"))
    }
}

/// Exponent bounds and sample sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Single-parameter identities, certificates and `ad` formulas (`m` is
    /// accepted as an alias).
    pub n: usize,
    /// Reordering formulas in `U_q(r,0)` and `U_q(0,s)`.
    pub e: usize,
    /// Commutator table, span membership, `Ψ` brackets and lemmas.
    pub t: usize,
    /// `Ψ` index bijectivity.
    pub p: usize,
    pub kmax: usize,
    /// Random inputs for the basis and oracle suites.
    pub samples: usize,
    /// Random inputs and points for the specialization suite.
    pub spec_inputs: usize,
    pub spec_points: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            n: 6,
            e: 4,
            t: 3,
            p: 6,
            kmax: 8,
            samples: 200,
            spec_inputs: 50,
            spec_points: 5,
            seed: 2024,
        }
    }
}

impl Bounds {
    /// Applies `key=value` pairs separated by commas.
    pub fn apply(&mut self, text: &str) -> Result<()> {
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("bound `{part}` is not key=value"),
            })?;
            let n: u64 = v.trim().parse().map_err(|_| Error::Parse {
                position: 0,
                message: format!("bound `{part}` needs a nonnegative integer"),
            })?;
            let slot = match k.trim() {
                "n" | "m" => &mut self.n,
                "e" => &mut self.e,
                "t" => &mut self.t,
                "p" => &mut self.p,
                "kmax" => &mut self.kmax,
                "samples" => &mut self.samples,
                "spec_inputs" => &mut self.spec_inputs,
                "spec_points" => &mut self.spec_points,
                "seed" => {
                    self.seed = n;
                    continue;
                }
                other => {
                    return Err(Error::Parse {
                        position: 0,
                        message: format!("unknown bound `{other}`"),
                    })
                }
            };
            *slot = n as usize;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Ambiguities,
    Basis,
    Oracle,
    Identities,
    Certificates,
    Lie,
    Psi,
    Obstruction,
    Specialization,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Ambiguities,
        Suite::Basis,
        Suite::Oracle,
        Suite::Identities,
        Suite::Certificates,
        Suite::Lie,
        Suite::Psi,
        Suite::Obstruction,
        Suite::Specialization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ambiguities => "ambiguities",
            Suite::Basis => "basis",
            Suite::Oracle => "oracle",
            Suite::Identities => "identities",
            Suite::Certificates => "certificates",
            Suite::Lie => "lie",
            Suite::Psi => "psi",
            Suite::Obstruction => "obstruction",
            Suite::Specialization => "specialization",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Runs one suite. `model` is used by the suites that are not tied to a
/// specific specialization (ambiguities, basis, oracle, certificates,
/// specialization); the others build the models they are about.
pub fn run_suite(suite: Suite, model: &AlgebraModel, b: &Bounds) -> Vec<Item> {
    match suite {
        Suite::Ambiguities => ambiguities(model, b.kmax),
        Suite::Basis => basis(model, b),
        Suite::Oracle => oracle(model, b),
        Suite::Identities => identities(b),
        Suite::Certificates => certificate_items(model, b.n),
        Suite::Lie => lie(b),
        Suite::Psi => psi(b),
        Suite::Obstruction => obstruction(),
        Suite::Specialization => specialization(model, b),
    }
}

pub fn ambiguities(model: &AlgebraModel, kmax: usize) -> Vec<Item> {
    let sys = model.system();
    let abc = model.abc();
    let list = match sys.enumerate_ambiguities(kmax) {
        Ok(l) => l,
        Err(e) => {
            return vec![Item::error(
                "ambiguity.enumerate",
                json!({ "kmax": kmax }),
                &e,
            )]
        }
    };
    let expected = 5 + 4 * kmax;
    let inclusions = list
        .iter()
        .filter(|a| a.kind == AmbiguityKind::Inclusion)
        .count();
    let mut out = vec![
        Item::new(
            "ambiguity.count",
            json!({ "kmax": kmax, "found": list.len(), "expected": expected }),
            list.len() == expected,
            format!("{} ambiguities", list.len()),
        ),
        Item::new(
            "ambiguity.inclusions",
            json!({ "kmax": kmax, "found": inclusions }),
            inclusions == 0,
            format!("{inclusions} inclusion ambiguities"),
        ),
    ];
    let reports: Vec<Item> = list
        .par_iter()
        .map(|a| {
            let label = a.label(abc);
            let params = json!({
                "ambiguity": label,
                "kind": a.kind,
                "k": a.k,
            });
            match sys.check_resolvable(a) {
                Ok(r) => {
                    let detail = if r.resolved {
                        format!("both sides reduce to {}", r.left)
                    } else {
                        format!("left {} vs right {}", r.left, r.right)
                    };
                    Item::new("ambiguity.resolvable", params, r.resolved, detail)
                }
                Err(e) => Item::error("ambiguity.resolvable", params, &e),
            }
        })
        .collect();
    out.extend(reports);
    out
}

fn basis_support_ok(model: &AlgebraModel, p: &NCPoly) -> bool {
    p.support().all(|w| model.classify(w).is_ok())
}

pub fn basis(model: &AlgebraModel, b: &Bounds) -> Vec<Item> {
    let inputs = sample_inputs(model, b.samples, b.seed, CoeffKind::Integer);
    inputs
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let params =
                json!({ "seed": b.seed, "index": i, "degree": p.degree(), "terms": p.len() });
            let sys = model.system();
            let run = || -> Result<(bool, bool, NCPoly)> {
                let left = sys.normal_form_with(p, Strategy::Leftmost, None)?;
                let right = sys.normal_form_with(p, Strategy::Rightmost, None)?;
                Ok((basis_support_ok(model, &left), left == right, left))
            };
            match run() {
                Ok((support, agree, nf)) => Item::new(
                    "basis.random",
                    params,
                    support && agree,
                    if support && agree {
                        format!("{} basis terms, strategies agree", nf.len())
                    } else {
                        format!("support ok: {support}, strategies agree: {agree}")
                    },
                ),
                Err(e) => Item::error("basis.random", params, &e),
            }
        })
        .collect()
}

fn sample_inputs(model: &AlgebraModel, count: usize, seed: u64, kind: CoeffKind) -> Vec<NCPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_poly(&mut rng, model.abc(), 6, 6, kind))
        .collect()
}

pub fn oracle(model: &AlgebraModel, b: &Bounds) -> Vec<Item> {
    let inputs = sample_inputs(model, b.samples, b.seed.wrapping_add(1), CoeffKind::Integer);
    inputs
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let params =
                json!({ "seed": b.seed.wrapping_add(1), "index": i, "degree": p.degree() });
            match model.cross_validate(p) {
                Ok(ok) => Item::new(
                    "oracle.cross_validate",
                    params,
                    ok,
                    if ok {
                        "oracle agrees"
                    } else {
                        "oracle disagrees"
                    },
                ),
                Err(e) => Item::error("oracle.cross_validate", params, &e),
            }
        })
        .collect()
}

fn params_json(params: &[(&'static str, i64)]) -> Value {
    Value::Object(
        params
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect(),
    )
}

fn identity_item(inst: &IdentityInstance) -> Item {
    let mut params = params_json(&inst.params);
    params["model"] = json!(inst.model.name());
    match inst.check() {
        Ok(o) => {
            let detail = match (inst.mode, o.residual.is_zero()) {
                (CheckMode::Discrepancy, false) => {
                    format!("variant form does not hold; residual {}", o.residual)
                }
                (CheckMode::Discrepancy, true) => "variant form unexpectedly holds".to_string(),
                (_, true) => "residual 0".to_string(),
                (_, false) => format!("residual {}", o.residual),
            };
            Item::new(inst.family, params, o.pass, detail)
        }
        Err(e) => Item::error(inst.family, params, &e),
    }
}

pub fn certificate_items(model: &AlgebraModel, k_max: usize) -> Vec<Item> {
    let certs = match model.presentation_certificates(k_max) {
        Ok(c) => c,
        Err(e) => return vec![Item::error("certificate", json!({}), &e)],
    };
    certs.iter().map(|c| certificate_item(model, c)).collect()
}

fn certificate_item(model: &AlgebraModel, c: &PresentationCertificate) -> Item {
    let params = json!({ "certificate": c.name, "model": model.name() });
    let detail = match &c.expected_residual {
        None if c.holds => "holds in the free algebra".to_string(),
        None => format!("residual {}", c.residual()),
        Some(e) => format!(
            "variant combination leaves {} (expected {})",
            c.residual(),
            e
        ),
    };
    let name = if c.expected_residual.is_some() {
        "certificate.variant"
    } else {
        "certificate"
    };
    Item::new(name, params, c.passes(), detail)
}

pub fn identities(b: &Bounds) -> Vec<Item> {
    let rs = AlgebraModel::uqrs();
    let r0 = AlgebraModel::uq_r0();
    let zs = AlgebraModel::uq_0s();
    let mut insts = power_identities(&rs, b.n);
    insts.extend(xi2_identities(&rs, b.n));
    insts.extend(c_power_identities(&rs, b.n));
    insts.extend(r0_identities(&r0, b.e));
    insts.extend(zs_identities(&zs, b.e));
    let mut out = certificate_items(&rs, b.n);
    out.extend(insts.par_iter().map(identity_item).collect::<Vec<_>>());
    out
}

fn residual_item(name: &str, params: Value, r: Result<NCPoly>) -> Item {
    match r {
        Ok(p) if p.is_zero() => Item::new(name, params, true, "residual 0"),
        Ok(p) => Item::new(name, params, false, format!("residual {p}")),
        Err(e) => Item::error(name, params, &e),
    }
}

type ResidualJob = (String, Value, Box<dyn Fn() -> Result<NCPoly> + Send + Sync>);

pub fn lie(b: &Bounds) -> Vec<Item> {
    let m = AlgebraModel::uq_r0();
    let p = m.params().clone();
    let (a, bb, c) = (m.mono("A"), m.mono("B"), m.mono("C"));

    let mut jobs: Vec<ResidualJob> = Vec::new();
    for mm in 1..=b.n {
        let (m1, m2, pc) = (m.clone(), m.clone(), p.clone());
        let (a1, c1, bb1) = (a.clone(), c.clone(), bb.clone());
        jobs.push((
            "lie.adC_A".into(),
            json!({ "m": mm }),
            Box::new(move || {
                let lhs = ad_power(&c1, &a1, mm, &m1)?;
                let rhs = m1
                    .bca(0, mm, 1)
                    .scale(&(&RatFunc::one() - &pc.q).pow(mm as u32));
                Ok(&lhs - &rhs)
            }),
        ));
        let (c2, bb2, pc2) = (c.clone(), bb.clone(), p.clone());
        jobs.push((
            "lie.adC_B".into(),
            json!({ "m": mm }),
            Box::new(move || {
                let lhs = ad_power(&c2, &bb2, mm, &m2)?;
                let qm1 = &pc2.q - &RatFunc::one();
                let rhs = &m2.bca(1, mm, 0).scale(&qm1.pow(mm as u32))
                    + &m2.bca(0, mm, 0).scale(&(&qm1.pow(mm as u32 - 1) * &pc2.r));
                Ok(&lhs - &rhs)
            }),
        ));
        let (m3, pc3) = (m.clone(), p.clone());
        jobs.push((
            "lie.CmA_B".into(),
            json!({ "m": mm }),
            Box::new(move || {
                let br = crate::liepoly::lie_bracket(&m3.bca(0, mm, 1), &bb1, &m3)?;
                let lhs = br.scale(&pc3.q.pow(mm as u32));
                let rhs = m3.bca(0, mm + 1, 0).scale(&pc3.bracket(mm as i64 + 1));
                Ok(&lhs - &rhs)
            }),
        ));
        for n in 1..=b.n {
            let (m4, pc4, a4) = (m.clone(), p.clone(), a.clone());
            jobs.push((
                "lie.negadA_CmA".into(),
                json!({ "m": mm, "n": n }),
                Box::new(move || {
                    let lhs = ad_power(&-&a4, &m4.bca(0, mm, 1), n, &m4)?;
                    let k = (&RatFunc::one() - &pc4.q.pow(mm as u32)).pow(n as u32);
                    Ok(&lhs - &m4.bca(0, mm, n + 1).scale(&k))
                }),
            ));
            let (m5, pc5, b5) = (m.clone(), p.clone(), bb.clone());
            jobs.push((
                "lie.adB_BCm".into(),
                json!({ "m": mm, "n": n }),
                Box::new(move || {
                    let lhs = ad_power(&b5, &m5.bca(1, mm, 0), n, &m5)?;
                    let lam = &RatFunc::one() - &pc5.q.pow(mm as u32);
                    let mu = &pc5.bracket(mm as i64) * &pc5.r;
                    let factor = &b5.scale(&lam) - &NCPoly::scalar(m5.abc(), mu);
                    let rhs = &factor.pow(n as u32) * &m5.bca(1, mm, 0);
                    m5.identity_residual(&lhs, &rhs)
                }),
            ));
        }
    }
    let mut out: Vec<Item> = jobs
        .par_iter()
        .map(|(name, params, f)| residual_item(name, params.clone(), f()))
        .collect();

    // commutator table and closure
    let basis = LieBasisWord::enumerate(b.t);
    let pairs: Vec<(LieBasisWord, LieBasisWord)> = basis
        .iter()
        .flat_map(|&x| basis.iter().map(move |&y| (x, y)))
        .collect();
    out.extend(
        pairs
            .par_iter()
            .map(|&(x, y)| {
                let params = json!({ "left": x.to_string(), "right": y.to_string() });
                match commutator_table_entry(x, y, &m) {
                    Ok(e) => {
                        let closed_ok = e.matches.unwrap_or(true);
                        let detail = format!(
                            "bracket {}; closed form {}; in Lie span {}",
                            e.bracket,
                            match e.matches {
                                Some(true) => "matches",
                                Some(false) => "differs",
                                None => "not tabulated",
                            },
                            e.in_lie_span
                        );
                        Item::new("lie.table", params, closed_ok && e.in_lie_span, detail)
                    }
                    Err(e) => Item::error("lie.table", params, &e),
                }
            })
            .collect::<Vec<_>>(),
    );

    // span membership of B^y C^k A^w
    let mut triples = Vec::new();
    for y in 1..=b.t {
        for k in 1..=b.t {
            for w in 1..=b.t {
                triples.push((y, k, w));
            }
        }
    }
    out.extend(triples.par_iter().map(|&(y, k, w)| {
        let params = json!({ "y": y, "k": k, "w": w });
        match m.three_gen_normal_form(&m.bca(y, k, w)) {
            Ok(nf) => {
                let ok = nf.support().all(|wd| {
                    matches!(
                        m.classify(wd),
                        Ok(BasisWordClass::BC { c, .. }) | Ok(BasisWordClass::CA { c, .. }) if c >= 1
                    )
                });
                Item::new("lie.span_BCA", params, ok, format!("normal form {nf}"))
            }
            Err(e) => Item::error("lie.span_BCA", params, &e),
        }
    }).collect::<Vec<_>>());

    for (input, expected) in [
        ("C", true),
        ("A*B", true),
        ("B*A", true),
        ("I", false),
        ("A^2", false),
        ("B^3", false),
    ] {
        let poly = match input {
            "C" => c.clone(),
            "A*B" => m.mono("AB"),
            "B*A" => m.mono("BA"),
            "I" => NCPoly::one(m.abc()),
            "A^2" => m.mono("AA"),
            _ => m.mono("BBB"),
        };
        let params = json!({ "input": input, "expected": expected });
        out.push(match is_lie_polynomial(&poly, &m) {
            Ok(v) => Item::new(
                "lie.verdict",
                params,
                v.verdict == expected,
                format!("normal form {}; verdict {}", v.normal_form, v.verdict),
            ),
            Err(e) => Item::error("lie.verdict", params, &e),
        });
    }
    out
}

pub fn psi(b: &Bounds) -> Vec<Item> {
    let src = AlgebraModel::uq_s0();
    let tgt = AlgebraModel::uq_0s();
    let psi = PsiMap::new(&src, &tgt).expect("coupled models");
    let mut out = Vec::new();
    let defects = psi_index_defects(b.p);
    out.push(Item::new(
        "psi.bijective",
        json!({ "bound": b.p, "basis_words": LieBasisWord::enumerate(b.p).len() }),
        defects.is_empty(),
        if defects.is_empty() {
            "index map is a permutation".to_string()
        } else {
            format!("defects: {defects:?}")
        },
    ));

    let basis = LieBasisWord::enumerate(b.t);
    let pairs: Vec<(LieBasisWord, LieBasisWord)> = basis
        .iter()
        .flat_map(|&x| basis.iter().map(move |&y| (x, y)))
        .collect();
    let abc = src.abc().clone();
    out.extend(
        pairs
            .par_iter()
            .map(|&(x, y)| {
                residual_item(
                    "psi.bracket",
                    json!({ "x": x.to_string(), "y": y.to_string() }),
                    psi.bracket_residual(&x.poly(&abc), &y.poly(&abc)),
                )
            })
            .collect::<Vec<_>>(),
    );

    let mut jobs = Vec::new();
    for y in 1..=b.t {
        for k in 1..=b.t {
            for w in 1..=b.t {
                jobs.push((y, k, w, None));
                for t in 0..=b.t {
                    jobs.push((k, y, w, Some(t)));
                }
            }
        }
    }
    out.extend(
        jobs.par_iter()
            .map(|&(x1, x2, x3, t)| match t {
                None => residual_item(
                    "psi.lemma_BCA",
                    json!({ "y": x1, "k": x2, "w": x3 }),
                    psi.lemma_bca_residual(x1, x2, x3),
                ),
                Some(t) => residual_item(
                    "psi.lemma_CABC",
                    json!({ "k": x1, "y": x2, "w": x3, "t": t }),
                    psi.lemma_cabc_residual(x1, x2, x3, t),
                ),
            })
            .collect::<Vec<_>>(),
    );

    // K̃ ⊆ L_(0,s): rebuild each basis word from brackets of Ψ(A), Ψ(B)
    let mut in_src = LieRealizer::new(&src, &src, src.mono("A"), src.mono("B"));
    let mut in_tgt = LieRealizer::new(&src, &tgt, -tgt.mono("B"), -tgt.mono("A"));
    for w in basis {
        let params = json!({ "word": w.to_string() });
        let r = (|| -> Result<(bool, bool)> {
            let s = in_src.realize(w)? == w.poly(&abc);
            let t = in_tgt.realize(w)? == -w.psi_index().poly(&abc);
            Ok((s, t))
        })();
        out.push(match r {
            Ok((s, t)) => Item::new(
                "psi.lie_generated",
                params,
                s && t,
                format!("recipe reproduces word: {s}; image equals Psi(word): {t}"),
            ),
            Err(e) => Item::error("psi.lie_generated", params, &e),
        });
    }
    out
}

pub fn obstruction() -> Vec<Item> {
    let mut out = Vec::new();
    let one = RatFunc::one();
    let (q, r, s) = (RatFunc::q(), RatFunc::r(), RatFunc::s());
    let (al, be) = (RatFunc::var(Var::Alpha), RatFunc::var(Var::Beta));

    // A ↦ βB, B ↦ αA from U_q(s,0) to U_q(0,s)
    let src = AlgebraModel::uq_s0();
    let tgt = AlgebraModel::uq_0s();
    let ab = src.ab().clone();
    let images = GeneratorMap::new(&ab, &ab)
        .with('A', NCPoly::letter(&ab, 'B').scale(&be))
        .and_then(|g| g.with('B', NCPoly::letter(&ab, 'A').scale(&al)))
        .expect("generator images");
    match homomorphism_obstruction(&src, &images, &tgt, &[]) {
        Ok(rep) => {
            let expected = [
                &(&al * &be) * &(&q.pow(2) - &one),
                &(&s * &be) * &(&(&al * &q) + &one),
            ];
            let mut got: Vec<RatFunc> = rep.constraint_values.iter().map(|c| -c).collect();
            let mut want = expected.to_vec();
            got.sort_by_key(|c| c.to_string());
            want.sort_by_key(|c| c.to_string());
            let params = json!({
                "report": rep,
                "expected_constraints": want.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            out.push(Item::new(
                "swap.constraints",
                params,
                got == want,
                format!("relation residual {}", rep.relation_residual),
            ));
            let residual = rep
                .relation_residual_poly
                .clone()
                .unwrap_or_else(|| NCPoly::zero(&ab));
            let norm = (&al * &be).inv().map(|x| -x);
            let reference = &NCPoly::monomial(&ab, "BA").scale(&(&q.pow(2) - &one))
                + &NCPoly::monomial(&ab, "B").scale(
                    &(&s * &(&(&al * &q) + &one))
                        .checked_div(&al)
                        .expect("alpha nonzero"),
                );
            let ok = norm
                .as_ref()
                .map(|k| residual.scale(k) == reference)
                .unwrap_or(false);
            out.push(Item::new(
                "swap.normalized",
                json!({ "factor": "-1/(alpha*beta)", "reference": reference.to_string() }),
                ok,
                format!(
                    "-1/(alpha*beta) times the residual is {}",
                    norm.map(|k| residual.scale(&k).to_string())
                        .unwrap_or_default()
                ),
            ));
        }
        Err(e) => out.push(Item::error("swap.constraints", json!({}), &e)),
    }

    // A ↦ A, B ↦ rB from U_q(r,0) to U_q(1,0)
    let src = AlgebraModel::uq_r0();
    let tgt = AlgebraModel::new(crate::algebras::ModelParams::new(
        q.clone(),
        one.clone(),
        RatFunc::zero(),
    ))
    .expect("U_q(1,0)");
    let images = GeneratorMap::new(&ab, &ab)
        .with('A', NCPoly::letter(&ab, 'A'))
        .and_then(|g| g.with('B', NCPoly::letter(&ab, 'B').scale(&r)))
        .expect("generator images");
    let x = src.mono("CAA");
    let y = src.mono("BC");
    let d = (&one - &q).inv().expect("q symbolic");
    match homomorphism_obstruction(&src, &images, &tgt, &[(x.clone(), y.clone())]) {
        Ok(rep) => {
            let residual = rep
                .relation_residual_poly
                .clone()
                .unwrap_or_else(|| NCPoly::zero(&ab));
            out.push(Item::new(
                "scale_b.relation_residual",
                json!({ "relation_residual": rep.relation_residual }),
                residual.is_zero(),
                "image of r(AB - qBA - A) in U_q(1,0)",
            ));
            // source normal form of CA^2 * BC, checked against the oracle
            let src_nf = src.three_gen_normal_form(&(&x * &y));
            let expected_src = &src.mono("CCAA").scale(&(&(&r * &q.pow(2)) * &d))
                - &src.mono("CCCA").scale(&(&q.pow(3) * &d));
            let cross = src.cross_validate(&(&x * &y)).unwrap_or(false);
            let src_ok = matches!(&src_nf, Ok(p) if *p == expected_src) && cross;
            out.push(Item::new(
                "scale_b.source_normal_form",
                json!({
                    "engine": src_nf.as_ref().map(|p| p.to_string()).unwrap_or_default(),
                    "C^3*A_engine": (-(&q.pow(3) * &d)).to_string(),
                    "C^3*A_reference": (-(&(&r * &q.pow(3)) * &d)).to_string(),
                    "oracle_agrees": cross,
                }),
                src_ok,
                "C^3*A coefficient carries no factor r; the reference value has one",
            ));
            let probe = &rep.probe_residuals[0];
            let c3a = tgt.abc().word("CCCA");
            let engine_c3a = probe
                .image_of_product_poly
                .as_ref()
                .map(|p| p.coeff(&c3a))
                .unwrap_or_default();
            let reference_c3a = -(&(&r.pow(4) * &q.pow(3)) * &d);
            let reference_diff = &reference_c3a - &(-(&(&r.pow(3) * &q.pow(3)) * &d));
            let residual = probe
                .residual_poly
                .clone()
                .unwrap_or_else(|| NCPoly::zero(tgt.abc()));
            let oracle_consistent = tgt
                .oracle_normal_form(&tgt.eliminate_c().apply(&residual).expect("total map"))
                .map(|p| p.to_string() == probe.oracle_residual)
                .unwrap_or(false);
            out.push(Item::new(
                "scale_b.probe",
                json!({
                    "probe": probe,
                    "finding": {
                        "C^3*A_in_image_of_product_engine": engine_c3a.to_string(),
                        "C^3*A_in_image_of_product_reference": reference_c3a.to_string(),
                        "reference_difference": reference_diff.to_string(),
                        "engine_difference": residual.coeff(&c3a).to_string(),
                    }
                }),
                oracle_consistent,
                format!(
                    "engine residual {} agrees with the oracle; reference r^3(r-1) difference is not reproduced",
                    probe.residual
                ),
            ));
        }
        Err(e) => out.push(Item::error("scale_b.relation_residual", json!({}), &e)),
    }

    // A ↦ sA, B ↦ B from U_q(0,s) to U_q(0,1)
    let src = AlgebraModel::uq_0s();
    let tgt = AlgebraModel::new(crate::algebras::ModelParams::new(
        q.clone(),
        RatFunc::zero(),
        one.clone(),
    ))
    .expect("U_q(0,1)");
    let images = GeneratorMap::new(&ab, &ab)
        .with('A', NCPoly::letter(&ab, 'A').scale(&s))
        .and_then(|g| g.with('B', NCPoly::letter(&ab, 'B')))
        .expect("generator images");
    let probe_pair = (src.mono("CA"), src.mono("BBC"));
    match homomorphism_obstruction(&src, &images, &tgt, &[probe_pair]) {
        Ok(rep) => {
            let residual = rep
                .relation_residual_poly
                .clone()
                .unwrap_or_else(|| NCPoly::zero(&ab));
            out.push(Item::new(
                "scale_a.relation_residual",
                json!({ "relation_residual": rep.relation_residual }),
                residual.is_zero(),
                "image of s(AB - qBA - B) in U_q(0,1)",
            ));
            let probe = &rep.probe_residuals[0];
            let presid = probe
                .residual_poly
                .clone()
                .unwrap_or_else(|| NCPoly::zero(tgt.abc()));
            let b2c2 = tgt.abc().word("BBCC");
            let oracle_consistent = tgt
                .oracle_normal_form(&tgt.eliminate_c().apply(&presid).expect("total map"))
                .map(|p| p.to_string() == probe.oracle_residual)
                .unwrap_or(false);
            out.push(Item::new(
                "scale_a.probe",
                json!({
                    "probe": probe,
                    "B^2*C^2_in_residual": presid.coeff(&b2c2).to_string(),
                }),
                oracle_consistent,
                format!("engine residual {} agrees with the oracle", probe.residual),
            ));
        }
        Err(e) => out.push(Item::error("scale_a.relation_residual", json!({}), &e)),
    }
    out
}

pub fn specialization(model: &AlgebraModel, b: &Bounds) -> Vec<Item> {
    let seed = b.seed.wrapping_add(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jobs = Vec::new();
    for i in 0..b.spec_inputs {
        let p = random_poly(&mut rng, model.abc(), 6, 6, CoeffKind::Polynomial);
        let points: Vec<_> = (0..b.spec_points).map(|_| random_point(&mut rng)).collect();
        jobs.push((i, p, points));
    }
    jobs.par_iter()
        .flat_map_iter(|(i, p, points)| {
            let nf = model.three_gen_normal_form(p);
            points.iter().enumerate().map(move |(j, pt)| {
                let params = json!({
                    "seed": seed,
                    "input": i,
                    "point": j,
                    "q": pt.get(Var::Q).map(|x| x.to_string()),
                    "r": pt.get(Var::R).map(|x| x.to_string()),
                    "s": pt.get(Var::S).map(|x| x.to_string()),
                });
                let run = || -> Result<bool> {
                    let nf = nf.clone()?;
                    let ev = |x: &NCPoly| {
                        x.map_coeffs(|c| {
                            Ok(RatFunc::from_rational(
                                c.evaluate(pt, crate::algebras::GUARD_ORDER)?,
                            ))
                        })
                    };
                    let special = model.specialize(pt)?;
                    let first = special.three_gen_normal_form(&ev(p)?)?;
                    let second = ev(&nf)?;
                    Ok(first == second)
                };
                match run() {
                    Ok(ok) => Item::new(
                        "specialization.commutes",
                        params,
                        ok,
                        if ok {
                            "evaluate-then-normalize equals normalize-then-evaluate"
                        } else {
                            "results differ"
                        },
                    ),
                    Err(e) => Item::error("specialization.commutes", params, &e),
                }
            })
        })
        .collect()
}

/// Runs `lhs = rhs` as a one-item suite.
pub fn identity_check(model: &AlgebraModel, lhs: &NCPoly, rhs: &NCPoly) -> Item {
    let params = json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() });
    residual_item("identity", params, model.identity_residual(lhs, rhs))
}
