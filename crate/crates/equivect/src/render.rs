//! Aligned plain-text rendering of a JSON report.
//!
//! Scalars print as `key: value`; arrays of flat objects become column tables;
//! arrays of scalar rows become headerless grids. Anything else nests.

use std::fmt::Write;

use serde_json::Value;

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    node(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) => {
            let inline = |x: &Value| match x {
                Value::Array(_) | Value::Object(_) => None,
                Value::String(s) if s.contains(char::is_whitespace) => None,
                _ => scalar(x),
            };
            let parts: Option<Vec<String>> = xs.iter().map(inline).collect();
            parts.map(|p| format!("[{}]", p.join(" ")))
        }
        Value::Object(_) => None,
    }
}

fn flat_object(v: &Value) -> bool {
    v.as_object().is_some_and(|o| o.values().all(|x| scalar(x).is_some()))
}

fn grid(out: &mut String, rows: &[Vec<String>], indent: usize) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
        let _ = writeln!(out, "{:indent$}{}", "", cells.join("  ").trim_end());
    }
}

fn node(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Object(o) => {
            let width = o
                .iter()
                .filter(|(_, x)| scalar(x).is_some())
                .map(|(k, _)| k.chars().count())
                .max()
                .unwrap_or(0);
            for (k, x) in o.iter().filter(|(_, x)| scalar(x).is_some()) {
                let _ = writeln!(out, "{:indent$}{k:<width$}  {}", "", scalar(x).unwrap_or_default());
            }
            for (k, x) in o.iter().filter(|(_, x)| scalar(x).is_none()) {
                let _ = writeln!(out, "{:indent$}{k}:", "");
                node(out, x, indent + 2);
            }
        }
        Value::Array(xs) if !xs.is_empty() && xs.iter().all(flat_object) => {
            let keys: Vec<String> = xs[0]
                .as_object()
                .map(|o| o.keys().cloned().collect())
                .unwrap_or_default();
            let mut rows = vec![keys.clone()];
            for x in xs {
                rows.push(
                    keys.iter()
                        .map(|k| x.get(k).and_then(scalar).unwrap_or_default())
                        .collect(),
                );
            }
            grid(out, &rows, indent);
        }
        Value::Array(xs) if !xs.is_empty() && xs.iter().all(|x| x.is_array() && scalar(x).is_some()) => {
            let rows: Vec<Vec<String>> = xs
                .iter()
                .map(|x| x.as_array().into_iter().flatten().filter_map(scalar).collect())
                .collect();
            grid(out, &rows, indent);
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{:indent$}- {s}", "");
                    }
                    None => {
                        let _ = writeln!(out, "{:indent$}[{i}]", "");
                        node(out, x, indent + 2);
                    }
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{:indent$}{}", "", scalar(v).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flat_arrays_become_aligned_tables() {
        let v = json!({"name": "Z3", "rows": [{"rank": 1, "label": "x0"}, {"rank": 10, "label": "x1"}]});
        let text = render(&v);
        assert!(text.contains("name  Z3"));
        assert!(text.contains("rank  label\n"));
        assert!(text.contains("1     x0\n"));
        assert!(text.contains("10    x1\n"));
    }

    #[test]
    fn scalar_grids_and_nesting() {
        let v = json!({"t": {"rows": [["1", "1"], ["1", "-1"]]}, "xs": [1, 2]});
        let text = render(&v);
        assert!(text.contains("xs  [1 2]"));
        assert!(text.contains("t:\n  rows:\n    1  1\n    1  -1\n"));
    }
}
