use proptest::prelude::*;
use serde_json::Value;

use qlie_cli::expr::{parse_expression, parse_poly};
use qlie_cli::run;
use qlie_core::Alphabet;

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["qlie", "--json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let doc = if out.stdout.is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&out.stdout).unwrap()
    };
    (out.code, doc)
}

#[test]
fn normalize_ab_has_three_terms() {
    let (code, doc) = json(&["normalize", "--model", "uqrs", "A*B"]);
    assert_eq!(code, 0);
    let nf = doc["items"][0]["params"]["normal_form"].as_str().unwrap();
    assert_eq!(nf, "(s/(1-q))*B + (-q/(1-q))*C + (r/(1-q))*A");
}

#[test]
fn ambiguities_at_kmax_two() {
    let (code, doc) = json(&["verify", "ambiguities", "--kmax", "2"]);
    assert_eq!(code, 0);
    let items = doc["items"].as_array().unwrap();
    let resolved = items
        .iter()
        .filter(|i| i["name"] == "ambiguity.resolvable")
        .count();
    assert_eq!(resolved, 13);
    assert_eq!(doc["status"], "pass");
}

#[test]
fn a_squared_is_not_lie() {
    let (code, doc) = json(&["is-lie", "--model", "uq_r0", "A^2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["items"][0]["params"]["verdict"], false);
    let (_, doc) = json(&["is-lie", "--model", "uq_r0", "[A,B]"]);
    assert_eq!(doc["items"][0]["params"]["verdict"], true);
}

#[test]
fn is_lie_rejects_generic_model() {
    assert_eq!(json(&["is-lie", "--model", "uqrs", "C"]).0, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(
        json(&["verify", "identity", "A*B - q*B*A", "r*A + s*B"]).0,
        0
    );
    assert_eq!(json(&["verify", "identity", "A*B", "B*A"]).0, 1);
    assert_eq!(json(&["normalize", "A*(B"]).0, 2);
    assert_eq!(json(&["verify", "nonsense"]).0, 2);
    assert_eq!(json(&["normalize", "A", "--eval", "q=1"]).0, 2);
    assert_eq!(run(["qlie", "frobnicate"]).code, 2);
}

#[test]
fn eval_substitutes_parameters() {
    let (code, doc) = json(&["normalize", "--eval", "q=2,r=1,s=0", "A*B"]);
    assert_eq!(code, 0);
    assert_eq!(doc["items"][0]["detail"], "(2)*C - A");
    assert_eq!(doc["model"]["q"], "2");
}

#[test]
fn trace_lists_steps() {
    let (_, doc) = json(&["normalize", "--trace", "B*A"]);
    let trace = doc["items"][0]["params"]["trace"].as_array().unwrap();
    assert_eq!(trace[0], "sigma3 @ B*A/0");
}

#[test]
fn psi_on_basis_word() {
    let (code, doc) = json(&["psi", "C^2*A"]);
    assert_eq!(code, 0);
    assert_eq!(doc["items"][0]["detail"], "-B*C^2");
}

#[test]
fn obstruction_with_custom_map() {
    let (code, doc) = json(&[
        "obstruction",
        "--model",
        "uq_r0",
        "--map",
        "A=A",
        "--map",
        "B=r*B",
        "--target-r",
        "1",
        "--target-s",
        "0",
        "--probe",
        "C*A^2;B*C",
    ]);
    assert_eq!(code, 0);
    let report = &doc["items"][0]["params"]["report"];
    assert_eq!(report["relation_residual"], "0");
    assert_eq!(report["probe_residuals"].as_array().unwrap().len(), 1);
}

#[test]
fn text_output_has_one_line_per_item() {
    let out = run(["qlie", "verify", "certificates"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert!(lines
        .iter()
        .take(lines.len() - 1)
        .all(|l| l.starts_with("pass ")));
    assert!(lines.last().unwrap().starts_with("pass: "));
}

fn expr_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["A", "B", "C", "I", "q", "r", "s", "alpha", "beta"])
            .prop_map(String::from),
        (0u32..30).prop_map(|n| n.to_string()),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 0u32..3).prop_map(|(a, n)| format!("({a})^{n}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("[{a}, {b}]")),
            inner.clone().prop_map(|a| format!("-({a})")),
            inner.prop_map(|a| format!("({a})/(1 - q)")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn render_reparses(text in expr_text()) {
        let abc = Alphabet::abc();
        let p = parse_poly(&text, &abc).unwrap();
        let again = parse_poly(&p.to_string(), &abc).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn parser_never_panics(text in "[ABCqrs0-9+*/^()\\[\\], -]{0,24}") {
        let _ = parse_expression(&text);
    }
}
