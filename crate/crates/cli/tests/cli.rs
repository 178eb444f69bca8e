//! End-to-end tests of the binary: golden outputs, schema conformance,
//! exit codes and byte stability.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localp2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schemas")
        .join(name)
}

fn assert_golden(args: &[&str], name: &str) {
    let got = stdout_of(args);
    let expected = std::fs::read_to_string(golden_path(name)).expect("golden file present");
    assert_eq!(got, expected, "golden mismatch for {name}");
}

#[test]
fn golden_gv_tables() {
    for d in 1..=5 {
        assert_golden(
            &["gv", "--degree", &d.to_string()],
            &format!("gv_d{d}.json"),
        );
    }
}

#[test]
fn golden_pt_tables() {
    for d in 1..=5 {
        assert_golden(
            &["pt", "--degree", &d.to_string()],
            &format!("pt_d{d}.json"),
        );
    }
}

#[test]
fn golden_reports_and_series() {
    assert_golden(&["deg2-verify", "--max", "20"], "deg2_max20.json");
    assert_golden(&["crosscheck", "--dmax", "3"], "crosscheck_d3.json");
    assert_golden(
        &["macdonald", "--genus", "1", "--order", "3"],
        "macdonald_g1_o3.json",
    );
    assert_golden(
        &["refined", "--in", r#"{"degree":1,"values":{"2,0":"1"}}"#],
        "refined_d1_poly.json",
    );
    assert_golden(
        &[
            "sym",
            "--dims",
            r#"{"dims":{"0":1,"1":2,"2":1}}"#,
            "--n",
            "2",
        ],
        "sym_genus1_n2.json",
    );
}

#[test]
fn output_is_byte_stable() {
    for _ in 0..2 {
        let a = stdout_of(&["gv", "--degree", "5"]);
        let b = stdout_of(&["gv", "--degree", "5"]);
        assert_eq!(a, b);
        let c = stdout_of(&["deg2-verify", "--max", "10"]);
        let d = stdout_of(&["deg2-verify", "--max", "10"]);
        assert_eq!(c, d);
    }
}

#[test]
fn exit_codes() {
    let bad_degree = run(&["gv", "--degree", "9"]);
    assert_eq!(bad_degree.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_degree.stderr).contains("degree must be <= 5"));

    let bad_json = run(&["refined", "--in", "{\"values\":{\"x\":\"1\"}}"]);
    assert_eq!(bad_json.status.code(), Some(2));

    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));

    let ok = run(&["crosscheck", "--dmax", "2"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn spec_shaped_gv_output() {
    let got = stdout_of(&["gv", "--degree", "5", "--format", "json"]);
    assert_eq!(
        got.trim_end(),
        r#"{"degree":5,"values":{"0":"1695","1":"-4452","2":"5430","3":"-3672","4":"1386","5":"-270","6":"21"}}"#
    );
}

#[test]
fn outputs_validate_against_shipped_schemas() {
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["gv", "--degree", "4"], "gv_table.schema.json"),
        (vec!["pt", "--degree", "5"], "pt_table.schema.json"),
        (vec!["deg2-verify", "--max", "6"], "deg2_report.schema.json"),
        (
            vec!["crosscheck", "--dmax", "2"],
            "crosscheck_report.schema.json",
        ),
        (
            vec!["macdonald", "--genus", "2", "--order", "3"],
            "laurent_series.schema.json",
        ),
        (
            vec!["refined", "--in", r#"{"degree":1,"values":{"2,0":"1"}}"#],
            "laurent_series.schema.json",
        ),
        (
            vec![
                "refined",
                "--in",
                r#"{"vars":["q","r"],"terms":[{"e":[0,-2],"c":"1"},{"e":[0,0],"c":"1"},{"e":[0,2],"c":"1"}]}"#,
            ],
            "refined_table.schema.json",
        ),
        (
            vec!["sym", "--dims", r#"{"dims":{"0":1,"1":2}}"#, "--n", "3"],
            "sym_output.schema.json",
        ),
    ];
    for (args, schema_name) in cases {
        let out = stdout_of(&args);
        let value: Value = serde_json::from_str(&out).expect("valid JSON output");
        let schema: Value =
            serde_json::from_str(&std::fs::read_to_string(schema_path(schema_name)).unwrap())
                .expect("valid schema");
        if let Err(message) = validate(&value, &schema, &schema, "$") {
            panic!("{args:?} violates {schema_name}: {message}");
        }
    }
}

/// Minimal JSON-Schema checker covering the subset the shipped schemas use:
/// type, required, properties, patternProperties, additionalProperties,
/// items, minimum, pattern and local $ref.
fn validate(value: &Value, schema: &Value, root: &Value, at: &str) -> Result<(), String> {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let target = reference
            .strip_prefix("#/")
            .ok_or_else(|| format!("{at}: unsupported $ref {reference}"))?
            .split('/')
            .try_fold(root, |node, key| node.get(key))
            .ok_or_else(|| format!("{at}: dangling $ref {reference}"))?;
        return validate(value, target, root, at);
    }
    if let Some(kind) = schema.get("type").and_then(Value::as_str) {
        let ok = match kind {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            other => return Err(format!("{at}: unsupported type {other}")),
        };
        if !ok {
            return Err(format!("{at}: expected {kind}, got {value}"));
        }
    }
    if let Some(minimum) = schema.get("minimum").and_then(Value::as_i64) {
        if let Some(n) = value.as_i64() {
            if n < minimum {
                return Err(format!("{at}: {n} below minimum {minimum}"));
            }
        }
    }
    if let Some(pattern) = schema.get("pattern").and_then(Value::as_str) {
        let text = value
            .as_str()
            .ok_or_else(|| format!("{at}: not a string"))?;
        if !matches_pattern(text, pattern) {
            return Err(format!("{at}: `{text}` does not match {pattern}"));
        }
    }
    if let Some(object) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required {
                let key = key.as_str().unwrap_or_default();
                if !object.contains_key(key) {
                    return Err(format!("{at}: missing required key {key}"));
                }
            }
        }
        let properties = schema.get("properties").and_then(Value::as_object);
        let pattern_properties = schema.get("patternProperties").and_then(Value::as_object);
        let additional = schema.get("additionalProperties");
        for (key, item) in object {
            let here = format!("{at}.{key}");
            if let Some(sub) = properties.and_then(|p| p.get(key)) {
                validate(item, sub, root, &here)?;
                continue;
            }
            if let Some(patterns) = pattern_properties {
                let mut matched = false;
                for (pattern, sub) in patterns {
                    if matches_pattern(key, pattern) {
                        validate(item, sub, root, &here)?;
                        matched = true;
                    }
                }
                if matched {
                    continue;
                }
            }
            match additional {
                Some(Value::Bool(false)) => {
                    return Err(format!("{at}: unexpected key {key}"));
                }
                Some(schema @ Value::Object(_)) => validate(item, schema, root, &here)?,
                _ => {}
            }
        }
    }
    if let Some(array) = value.as_array() {
        if let Some(items) = schema.get("items") {
            for (i, item) in array.iter().enumerate() {
                validate(item, items, root, &format!("{at}[{i}]"))?;
            }
        }
    }
    Ok(())
}

/// Tiny matcher for the anchored patterns used by the schemas:
/// `^...$` with literal characters, `-?`, `[0-9]+` and `,`.
fn matches_pattern(text: &str, pattern: &str) -> bool {
    let inner = pattern
        .strip_prefix('^')
        .and_then(|p| p.strip_suffix('$'))
        .unwrap_or(pattern);
    let mut rest = text;
    let mut tokens = inner.chars().peekable();
    while let Some(token) = tokens.next() {
        match token {
            '-' => {
                let optional = tokens.peek() == Some(&'?');
                if optional {
                    tokens.next();
                }
                if let Some(stripped) = rest.strip_prefix('-') {
                    rest = stripped;
                } else if !optional {
                    return false;
                }
            }
            '[' => {
                // only the digit class appears
                for expected in "0-9]+".chars() {
                    if tokens.next() != Some(expected) {
                        return false;
                    }
                }
                let digits = rest.chars().take_while(char::is_ascii_digit).count();
                if digits == 0 {
                    return false;
                }
                rest = &rest[digits..];
            }
            literal => {
                if let Some(stripped) = rest.strip_prefix(literal) {
                    rest = stripped;
                } else {
                    return false;
                }
            }
        }
    }
    rest.is_empty()
}
