//! Acceptance suite: nine criteria, one status line each. Runs as a plain
//! binary so the lines are always printed; exits nonzero if any criterion
//! fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use qlie_cli::expr::parse_poly;
use qlie_core::algebras::{AlgebraModel, ModelParams};
use qlie_core::coeffs::Var;
use qlie_core::liepoly::{homomorphism_obstruction, LieBasisWord};
use qlie_core::suites::{self, Bounds, Item};
use qlie_core::{Alphabet, GeneratorMap, NCPoly, RatFunc, Word};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn all_pass(items: &[Item]) -> Result<(), String> {
    let failed: Vec<String> = items
        .iter()
        .filter(|i| !i.passed())
        .take(3)
        .map(|i| format!("{} {:?}: {}", i.name, i.params, i.detail))
        .collect();
    ensure(
        failed.is_empty(),
        format!("failing items: {}", failed.join("; ")),
    )
}

fn count(items: &[Item], name: &str) -> usize {
    items.iter().filter(|i| i.name == name).count()
}

/// Overlaps and inclusions among the rule patterns, counted directly from
/// the pattern words.
fn brute_force_ambiguities(patterns: &[Word]) -> (usize, usize) {
    let (mut overlaps, mut inclusions) = (0, 0);
    for (i, p) in patterns.iter().enumerate() {
        for (j, s) in patterns.iter().enumerate() {
            let (p, s) = (p.letters(), s.letters());
            for l in 1..p.len().min(s.len()) {
                if p[p.len() - l..] == s[..l] {
                    overlaps += 1;
                }
            }
            if i != j && s.len() <= p.len() && p.windows(s.len()).any(|w| w == s) {
                inclusions += 1;
            }
        }
    }
    (overlaps, inclusions)
}

fn criterion1() -> Check {
    let m = AlgebraModel::uqrs();
    let kmax = 8;
    let items = suites::ambiguities(&m, kmax);
    all_pass(&items)?;
    let mut patterns: Vec<Word> = m
        .system()
        .rules()
        .iter()
        .map(|r| r.pattern().clone())
        .collect();
    for fam in m.system().families() {
        patterns.extend((fam.min_k()..=kmax).map(|k| fam.pattern(k)));
    }
    let (overlaps, inclusions) = brute_force_ambiguities(&patterns);
    ensure(
        overlaps == 5 + 4 * kmax,
        format!("brute force finds {overlaps} overlaps"),
    )?;
    ensure(
        inclusions == 0,
        format!("brute force finds {inclusions} inclusions"),
    )?;
    let resolved = count(&items, "ambiguity.resolvable");
    ensure(resolved == 37, format!("{resolved} ambiguities reported"))?;
    Ok(format!(
        "{resolved} ambiguities, 0 inclusions, all resolvable"
    ))
}

fn criterion2() -> Check {
    let m = AlgebraModel::uqrs();
    let items = suites::basis(&m, &Bounds::default());
    all_pass(&items)?;
    ensure(items.len() == 200, "expected 200 inputs")?;
    Ok("200 inputs reduce to basis words; both strategies agree".into())
}

fn criterion3() -> Check {
    let m = AlgebraModel::uqrs();
    let items = suites::oracle(&m, &Bounds::default());
    all_pass(&items)?;
    ensure(items.len() == 200, "expected 200 inputs")?;
    Ok("200 inputs agree with the two-generator oracle".into())
}

fn criterion4() -> Check {
    let items = suites::identities(&Bounds::default());
    all_pass(&items)?;
    let families = [
        ("power.AnB", 6),
        ("power.ABn", 6),
        ("xi2.summation", 6),
        ("cpower.ACm", 6),
        ("cpower.CmB", 6),
        ("uq_r0.AnB", 4),
        ("uq_r0.AnBn_product", 4),
        ("uq_r0.AnBn_substituted", 4),
        ("uq_r0.AnCm", 16),
        ("uq_r0.CmBn", 16),
        ("uq_0s.ABn", 4),
        ("uq_0s.AnCm", 16),
        ("uq_0s.CmBn", 16),
    ];
    for (name, at_least) in families {
        let n = count(&items, name);
        ensure(n >= at_least, format!("{name}: {n} instances"))?;
    }
    for name in [
        "uq_r0.reorder_CkAwByCt",
        "uq_0s.reorder_CtAyBwCk",
        "certificate",
    ] {
        ensure(count(&items, name) > 0, format!("{name} missing"))?;
    }
    let xi5 = items
        .iter()
        .filter(|i| {
            i.name == "certificate"
                && i.params["certificate"]
                    .as_str()
                    .is_some_and(|c| c.contains("xi5"))
        })
        .count();
    ensure(xi5 == 6, format!("{xi5} xi5 certificates"))?;
    Ok(format!(
        "{} identity instances, all residuals zero",
        items.len()
    ))
}

fn criterion5() -> Check {
    let b = Bounds::default();
    let items = suites::lie(&b);
    all_pass(&items)?;
    for (name, n) in [
        ("lie.adC_A", 6),
        ("lie.adC_B", 6),
        ("lie.CmA_B", 6),
        ("lie.negadA_CmA", 36),
        ("lie.adB_BCm", 36),
        ("lie.span_BCA", 27),
        ("lie.verdict", 6),
    ] {
        ensure(
            count(&items, name) == n,
            format!("{name}: {} instances", count(&items, name)),
        )?;
    }
    let basis = LieBasisWord::enumerate(3).len();
    ensure(
        count(&items, "lie.table") == basis * basis,
        "table incomplete",
    )?;
    let expected = [
        ("C", true),
        ("A*B", true),
        ("B*A", true),
        ("I", false),
        ("A^2", false),
        ("B^3", false),
    ];
    for (input, verdict) in expected {
        let it = items
            .iter()
            .find(|i| i.name == "lie.verdict" && i.params["input"] == input)
            .ok_or(format!("no verdict for {input}"))?;
        ensure(
            it.detail.ends_with(&format!("verdict {verdict}")),
            format!("{input}: {}", it.detail),
        )?;
    }
    Ok(format!("{} Lie-layer checks", items.len()))
}

fn criterion6() -> Check {
    let items = suites::psi(&Bounds::default());
    all_pass(&items)?;
    let basis = LieBasisWord::enumerate(3).len();
    ensure(
        count(&items, "psi.bijective") == 1,
        "bijectivity item missing",
    )?;
    ensure(
        count(&items, "psi.bracket") == basis * basis,
        "bracket pairs incomplete",
    )?;
    ensure(count(&items, "psi.lemma_BCA") == 27, "BCA lemma instances")?;
    ensure(
        count(&items, "psi.lemma_CABC") == 27 * 4,
        "CABC lemma instances",
    )?;
    Ok(format!("{} Psi checks", items.len()))
}

fn criterion7() -> Check {
    let items = suites::obstruction();
    all_pass(&items)?;

    let ab = Alphabet::ab();
    let mono = |w: &str| NCPoly::monomial(&ab, w);
    let (q, s, one) = (RatFunc::q(), RatFunc::s(), RatFunc::one());
    let (al, be) = (RatFunc::var(Var::Alpha), RatFunc::var(Var::Beta));

    // swap, recomputed by hand in the target's two-letter basis.
    let src = AlgebraModel::uq_s0();
    let tgt = AlgebraModel::uq_0s();
    let images = GeneratorMap::new(&ab, &ab)
        .with('A', mono("B").scale(&be))
        .and_then(|g| g.with('B', mono("A").scale(&al)))
        .map_err(|e| e.to_string())?;
    let rep = homomorphism_obstruction(&src, &images, &tgt, &[]).map_err(|e| e.to_string())?;
    let by_hand = &mono("BA").scale(&(&(&al * &be) * &(&one - &q.pow(2))))
        - &mono("B").scale(&(&(&s * &be) * &(&(&al * &q) + &one)));
    ensure(
        rep.relation_residual_poly.as_ref() == Some(&by_hand),
        "swap residual",
    )?;
    let reference = &mono("BA").scale(&(&q.pow(2) - &one))
        + &mono("B")
            .scale(&(&s.checked_div(&al).map_err(|e| e.to_string())? * &(&(&al * &q) + &one)));
    let k = -(&(&al * &be).inv().map_err(|e| e.to_string())?);
    ensure(by_hand.scale(&k) == reference, "normalized swap residual")?;
    let constraints: BTreeSet<String> = rep
        .constraint_values
        .iter()
        .map(|c| (-c).to_string())
        .collect();
    let expected: BTreeSet<String> = [
        &(&al * &be) * &(&q.pow(2) - &one),
        &(&s * &be) * &(&(&al * &q) + &one),
    ]
    .iter()
    .map(|c| c.to_string())
    .collect();
    ensure(
        constraints == expected,
        format!("constraints {constraints:?}"),
    )?;

    // scale_b probe against the two-generator oracle.
    let r = RatFunc::r();
    let src = AlgebraModel::uq_r0();
    let tgt = AlgebraModel::new(ModelParams::new(q.clone(), one.clone(), RatFunc::zero()))
        .map_err(|e| e.to_string())?;
    let images = GeneratorMap::new(&ab, &ab)
        .with('A', mono("A"))
        .and_then(|g| g.with('B', mono("B").scale(&r)))
        .map_err(|e| e.to_string())?;
    let (x, y) = (src.mono("CAA"), src.mono("BC"));
    let rep = homomorphism_obstruction(&src, &images, &tgt, &[(x.clone(), y.clone())])
        .map_err(|e| e.to_string())?;
    ensure(
        rep.relation_residual_poly
            .as_ref()
            .is_some_and(NCPoly::is_zero),
        "scale_b relation residual",
    )?;
    let oracle = |p: &NCPoly, m: &AlgebraModel| -> Result<NCPoly, String> {
        let two = m.eliminate_c().apply(p).map_err(|e| e.to_string())?;
        m.oracle_normal_form(&two).map_err(|e| e.to_string())
    };
    let nf_ab = |p: &NCPoly, m: &AlgebraModel| m.oracle_normal_form(p).map_err(|e| e.to_string());
    let map = |p: &NCPoly| images.apply(p).map_err(|e| e.to_string());
    let image_of_product = nf_ab(&map(&oracle(&(&x * &y), &src)?)?, &tgt)?;
    let product_of_images = nf_ab(
        &(&map(&oracle(&x, &src)?)? * &map(&oracle(&y, &src)?)?),
        &tgt,
    )?;
    let oracle_residual = &image_of_product - &product_of_images;
    let probe = &rep.probe_residuals[0];
    let engine_residual = probe.residual_poly.as_ref().ok_or("no residual")?;
    ensure(
        oracle(engine_residual, &tgt)? == oracle_residual,
        "probe residual disagrees with oracle",
    )?;
    let engine_image = probe.image_of_product_poly.as_ref().ok_or("no image")?;
    ensure(
        oracle(engine_image, &tgt)? == image_of_product,
        "image of product disagrees with oracle",
    )?;
    let finding = items
        .iter()
        .find(|i| i.name == "scale_b.probe")
        .ok_or("structured finding missing")?;
    let f = &finding.params["finding"];
    ensure(
        f["C^3*A_in_image_of_product_reference"].is_string() && f["engine_difference"].is_string(),
        "finding lacks the coefficient comparison",
    )?;
    Ok(format!(
        "swap constraints reproduced; scale_b residual {} matches oracle; reference difference {} vs engine {}",
        probe.residual,
        f["reference_difference"].as_str().unwrap_or("?"),
        f["engine_difference"].as_str().unwrap_or("?"),
    ))
}

fn criterion8() -> Check {
    let m = AlgebraModel::uqrs();
    let items = suites::specialization(&m, &Bounds::default());
    all_pass(&items)?;
    ensure(items.len() == 250, "expected 50 inputs x 5 points")?;
    Ok("250 evaluation points commute with normalization".into())
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> String {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        let atoms = ["A", "B", "C", "I", "q", "r", "s", "alpha", "beta"];
        return if rng.gen_bool(0.25) {
            rng.gen_range(0..20).to_string()
        } else {
            atoms[rng.gen_range(0..atoms.len())].to_string()
        };
    }
    let a = random_expr(rng, depth - 1);
    match rng.gen_range(0..8) {
        0 => format!("{a} + {}", random_expr(rng, depth - 1)),
        1 => format!("{a} - {}", random_expr(rng, depth - 1)),
        2 | 3 => format!("({a})*({})", random_expr(rng, depth - 1)),
        4 => format!("({a})^{}", rng.gen_range(0..3)),
        5 => format!("[{a}, {}]", random_expr(rng, depth - 1)),
        6 => format!("-({a})"),
        _ => format!(
            "({a})/({})",
            ["2", "q", "1 - q", "r + 3", "alpha*beta"][rng.gen_range(0..5)]
        ),
    }
}

fn validate_report(doc: &Value) -> Result<(), String> {
    let obj = doc.as_object().ok_or("report is not an object")?;
    let keys: BTreeSet<&str> = obj.keys().map(String::as_str).collect();
    let expected: BTreeSet<&str> = ["command", "model", "items", "status", "elapsed_ms"].into();
    ensure(keys == expected, format!("report keys {keys:?}"))?;
    ensure(doc["command"].is_string(), "command")?;
    ensure(doc["model"].is_object(), "model")?;
    ensure(doc["elapsed_ms"].is_number(), "elapsed_ms")?;
    ensure(
        matches!(doc["status"].as_str(), Some("pass" | "fail")),
        "status",
    )?;
    for item in doc["items"].as_array().ok_or("items")? {
        let keys: BTreeSet<&str> = item
            .as_object()
            .ok_or("item")?
            .keys()
            .map(String::as_str)
            .collect();
        ensure(
            keys == ["name", "params", "status", "detail"].into(),
            format!("item keys {keys:?}"),
        )?;
        ensure(
            item["name"].is_string() && item["detail"].is_string(),
            "item strings",
        )?;
        ensure(item["params"].is_object(), "item params")?;
        ensure(
            matches!(item["status"].as_str(), Some("pass" | "fail")),
            "item status",
        )?;
    }
    Ok(())
}

fn run_qlie(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qlie"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    ))
}

fn criterion9() -> Check {
    let abc = Alphabet::abc();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let text = random_expr(&mut rng, 4);
        let p = parse_poly(&text, &abc).map_err(|e| format!("{text}: {e}"))?;
        let rendered = p.to_string();
        let back = parse_poly(&rendered, &abc).map_err(|e| format!("{rendered}: {e}"))?;
        ensure(back == p, format!("round trip changed {text}"))?;
    }

    let (code, out) = run_qlie(&["--json", "verify", "ambiguities", "--kmax", "2"])?;
    ensure(code == 0, format!("verify ambiguities exited {code}"))?;
    let doc: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    validate_report(&doc)?;
    ensure(
        doc["items"].as_array().map(Vec::len) == Some(15),
        "expected 13 ambiguities plus 2 summary items",
    )?;

    let (code, out) = run_qlie(&["--json", "verify", "identity", "A*B", "B*A"])?;
    ensure(code == 1, format!("forced failure exited {code}"))?;
    let doc: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    validate_report(&doc)?;
    ensure(doc["status"] == "fail", "forced failure reported as pass")?;

    let (code, _) = run_qlie(&["normalize", "A*AB"])?;
    ensure(code == 2, format!("parse error exited {code}"))?;
    Ok("100 round trips; report schema valid; exit codes 0/1/2".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("ambiguities", criterion1, 60),
        ("basis theorem", criterion2, 60),
        ("oracle equivalence", criterion3, 120),
        ("identity suites", criterion4, 180),
        ("Lie layer", criterion5, 120),
        ("Psi isomorphism", criterion6, 120),
        ("obstructions", criterion7, 30),
        ("specialization", criterion8, 60),
        ("cli", criterion9, 10),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{msg}; took {elapsed:.1?}, limit {limit} s"))
            }
            other => other,
        };
        match result {
            Ok(msg) => println!("criterion {} ({name}): PASS in {elapsed:.2?}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL in {elapsed:.2?}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
