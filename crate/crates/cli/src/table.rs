//! Plain-text rendering of the JSON outputs.

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("({})", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn rows_of_objects(key: &str, items: &[Value], out: &mut String) {
    let mut cols: Vec<String> = Vec::new();
    for item in items {
        if let Value::Object(map) = item {
            for k in map.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|item| cols.iter().map(|c| scalar(item.get(c).unwrap_or(&Value::Null))).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    out.push_str(&format!("{key}:\n"));
    let line = |row: &[String]| {
        let padded: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(&cols));
    for row in &cells {
        out.push_str(&line(row));
    }
}

fn render_into(prefix: &str, v: &Value, out: &mut String) {
    let Value::Object(map) = v else {
        out.push_str(&format!("{}\n", scalar(v)));
        return;
    };
    let width = map.keys().map(|k| k.len() + prefix.len()).max().unwrap_or(0);
    for (k, val) in map {
        let key = format!("{prefix}{k}");
        match val {
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                rows_of_objects(&key, items, out)
            }
            Value::Object(inner) if !inner.is_empty() => render_into(&format!("{key}."), val, out),
            _ => out.push_str(&format!("{key:<width$}  {}\n", scalar(val))),
        }
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into("", v, &mut out);
    out
}
