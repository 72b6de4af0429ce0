//! Number formatting and the json / table / csv renderings.

use serde_json::{Map, Value};

/// Shortest round-trip decimal of `x` after rounding to 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let capped: f64 = format!("{x:.11e}")
        .parse()
        .expect("scientific notation parses");
    format!("{capped}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.to_string(),
            (_, Some(i)) => i.to_string(),
            _ => fmt_num(n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Nested objects and arrays become dotted keys: `optimizer.iterations`,
/// `optimal_direction.0`.
pub fn flatten(value: &Value) -> Vec<(String, Value)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
        let key = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, v)| walk(&key(k), v, out)),
            Value::Array(a) => a
                .iter()
                .enumerate()
                .for_each(|(i, v)| walk(&key(&i.to_string()), v, out)),
            leaf => out.push((prefix.to_string(), leaf.clone())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

pub fn json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Header row plus one row per record; columns come from the first record.
pub fn csv(records: &[Value]) -> String {
    let rows: Vec<Vec<(String, Value)>> = records.iter().map(flatten).collect();
    let mut out = String::new();
    let Some(first) = rows.first() else {
        return out;
    };
    let header: Vec<String> = first.iter().map(|(k, _)| csv_field(k)).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in &rows {
        let line: Vec<String> = row.iter().map(|(_, v)| csv_field(&cell(v))).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// One record renders as `key  value` lines, several as aligned columns.
pub fn table(records: &[Value]) -> String {
    let rows: Vec<Vec<(String, Value)>> = records.iter().map(flatten).collect();
    let mut out = String::new();
    match rows.as_slice() {
        [] => {}
        [single] => {
            let width = single.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in single {
                out.push_str(&format!("{k:<width$}  {}\n", cell(v)));
            }
        }
        many => {
            let header: Vec<&str> = many[0].iter().map(|(k, _)| k.as_str()).collect();
            let body: Vec<Vec<String>> = many
                .iter()
                .map(|r| r.iter().map(|(_, v)| cell(v)).collect())
                .collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    body.iter()
                        .filter_map(|r| r.get(i).map(String::len))
                        .chain([header[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(header.clone()));
            for r in &body {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
        }
    }
    out
}

pub fn render(format: Format, records: &[Value]) -> String {
    match format {
        Format::Json => match records {
            [single] => json(single),
            many => json(&Value::Array(many.to_vec())),
        },
        Format::Table => table(records),
        Format::Csv => csv(records),
    }
}

/// Serializes `value` and inserts `extra` fields in front of its own.
pub fn with_leading(extra: Vec<(&str, Value)>, value: Value) -> Value {
    let mut m: Map<String, Value> = extra.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    if let Value::Object(inner) = value {
        m.extend(inner);
    }
    Value::Object(m)
}
