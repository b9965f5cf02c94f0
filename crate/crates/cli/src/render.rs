//! Markdown tables and canonical JSON text.

use serde::Serialize;

use crate::error::CliError;

/// One markdown table with a header row.
pub fn table<S: AsRef<str>>(headers: &[&str], rows: &[Vec<S>]) -> String {
    let mut out = String::new();
    out.push_str(&format!("| {} |\n", headers.join(" | ")));
    out.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
    for row in rows {
        let cells: Vec<&str> = row.iter().map(|c| c.as_ref()).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}

/// Pretty JSON with sorted object keys and a trailing newline.
pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Failure(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Failure(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn matrix_table(labels: &[String], matrix: &[Vec<i64>]) -> String {
    let mut headers = vec![""];
    headers.extend(labels.iter().map(String::as_str));
    let rows: Vec<Vec<String>> = matrix
        .iter()
        .zip(labels)
        .map(|(r, l)| {
            std::iter::once(l.clone())
                .chain(r.iter().map(|v| v.to_string()))
                .collect()
        })
        .collect();
    table(&headers, &rows)
}
