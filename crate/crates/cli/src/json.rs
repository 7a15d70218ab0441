//! Canonical JSON text: two-space indentation, arrays of scalars on one line,
//! keys in insertion order, trailing newline.

use serde_json::Value;

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn leaf(v: &Value) -> String {
    serde_json::to_string(v).expect("scalars always serialize")
}

fn write(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Array(a) if a.iter().all(is_scalar) => {
            out.push('[');
            out.push_str(&a.iter().map(leaf).collect::<Vec<_>>().join(", "));
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (k, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write(x, indent + 1, out);
                out.push_str(if k + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (k, (key, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&leaf(&Value::String(key.clone())));
                out.push_str(": ");
                write(x, indent + 1, out);
                out.push_str(if k + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        scalar => out.push_str(&leaf(scalar)),
    }
}

pub fn to_canonical(v: &Value) -> String {
    let mut out = String::new();
    write(v, 0, &mut out);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn layout() {
        let v = json!({"a": [1, 2], "b": {"c": []}, "d": [{"e": "x"}]});
        assert_eq!(
            to_canonical(&v),
            "{\n  \"a\": [1, 2],\n  \"b\": {\n    \"c\": []\n  },\n  \"d\": [\n    {\n      \"e\": \"x\"\n    }\n  ]\n}\n"
        );
    }
}
