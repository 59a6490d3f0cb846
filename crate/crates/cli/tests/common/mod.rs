//! Checker for the JSON Schema keywords used by the files in `schemas/`:
//! `$ref` into `#/definitions`, `type`, `properties`, `required`,
//! `additionalProperties: false`, `items`, `minItems`, `maxItems`, `oneOf`,
//! `enum`, `const`, `pattern` and `minimum`. Unknown keywords fail loudly.

use regex::Regex;
use serde_json::Value;

const ANNOTATIONS: [&str; 4] = ["$schema", "$id", "title", "definitions"];

pub fn validate(schema: &Value, instance: &Value) -> Result<(), String> {
    check(schema, schema, instance, "")
}

fn resolve<'a>(root: &'a Value, node: &'a Value) -> &'a Value {
    match node.get("$ref").and_then(Value::as_str) {
        Some(r) => {
            let name = r
                .strip_prefix("#/definitions/")
                .unwrap_or_else(|| panic!("unsupported $ref {r}"));
            resolve(root, &root["definitions"][name])
        }
        None => node,
    }
}

fn check(root: &Value, node: &Value, v: &Value, at: &str) -> Result<(), String> {
    let node = resolve(root, node);
    let fail = |what: String| Err(format!("{at}: {what}"));
    for (key, rule) in node.as_object().expect("schema node is an object") {
        match key.as_str() {
            "type" => {
                let ok = match rule.as_str().unwrap() {
                    "object" => v.is_object(),
                    "array" => v.is_array(),
                    "integer" => v.is_i64() || v.is_u64(),
                    "string" => v.is_string(),
                    "boolean" => v.is_boolean(),
                    t => panic!("unsupported type {t}"),
                };
                if !ok {
                    return fail(format!("expected {rule}, got {v}"));
                }
            }
            "properties" => {
                let obj = v.as_object().ok_or_else(|| format!("{at}: not an object"))?;
                let props = rule.as_object().unwrap();
                for (k, item) in obj {
                    match props.get(k) {
                        Some(s) => check(root, s, item, &format!("{at}/{k}"))?,
                        None if node.get("additionalProperties") == Some(&Value::Bool(false)) => {
                            return fail(format!("unexpected property {k}"));
                        }
                        None => {}
                    }
                }
            }
            "required" => {
                for k in rule.as_array().unwrap() {
                    if v.get(k.as_str().unwrap()).is_none() {
                        return fail(format!("missing {k}"));
                    }
                }
            }
            "additionalProperties" => assert_eq!(rule, &Value::Bool(false)),
            "items" => {
                for (i, item) in v.as_array().into_iter().flatten().enumerate() {
                    check(root, rule, item, &format!("{at}/{i}"))?;
                }
            }
            "minItems" | "maxItems" => {
                let n = v.as_array().map_or(0, Vec::len) as u64;
                let bound = rule.as_u64().unwrap();
                if (key == "minItems" && n < bound) || (key == "maxItems" && n > bound) {
                    return fail(format!("{n} items violates {key} {bound}"));
                }
            }
            "oneOf" => {
                let matches = rule
                    .as_array()
                    .unwrap()
                    .iter()
                    .filter(|s| check(root, s, v, at).is_ok())
                    .count();
                if matches != 1 {
                    return fail(format!("{v} matches {matches} oneOf branches"));
                }
            }
            "enum" => {
                if !rule.as_array().unwrap().contains(v) {
                    return fail(format!("{v} not in {rule}"));
                }
            }
            "const" => {
                if rule != v {
                    return fail(format!("{v} != {rule}"));
                }
            }
            "pattern" => {
                let re = Regex::new(rule.as_str().unwrap()).unwrap();
                if v.as_str().is_some_and(|s| !re.is_match(s)) {
                    return fail(format!("{v} does not match {rule}"));
                }
            }
            "minimum" => {
                if v.as_i64().is_some_and(|x| x < rule.as_i64().unwrap()) {
                    return fail(format!("{v} below {rule}"));
                }
            }
            k if ANNOTATIONS.contains(&k) => {}
            k => panic!("unsupported schema keyword {k}"),
        }
    }
    Ok(())
}
