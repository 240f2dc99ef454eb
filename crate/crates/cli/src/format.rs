//! Machine-readable renderings. Big integers are always decimal strings.

use std::fmt::Write as _;

use lahnet::lah::{IdentityReport, LahTable};
use lahnet::lgv::{ExhaustiveSummary, LindstromReport};
use lahnet::tnn::{TnnReport, VariationReport};
use lahnet::{BigInt, ExactMatrix, IndexSet, Network};
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

fn strings<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(
        values
            .into_iter()
            .map(|v| Value::String(v.to_string()))
            .collect(),
    )
}

fn indices(set: &IndexSet) -> Value {
    json!(set.as_slice())
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    Value::Array(m.iter_rows().take(m.rows()).map(strings).collect())
}

pub fn matrix_from_json(value: &Value) -> Result<ExactMatrix, CliError> {
    let bad = |what: &str| CliError::Usage(format!("matrix JSON: {what}"));
    let rows = value
        .as_array()
        .ok_or_else(|| bad("expected an array of rows"))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("each row must be an array"))?
                .iter()
                .map(|cell| {
                    cell.as_str()
                        .ok_or_else(|| bad("entries must be decimal strings"))?
                        .parse::<BigInt>()
                        .map_err(|_| bad("entry is not an integer"))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExactMatrix::from_rows(rows)?)
}

pub fn matrix_to_csv(m: &ExactMatrix) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for row in m.iter_rows().take(m.rows()) {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("decimal digits are UTF-8"))
}

pub fn matrix_from_csv(text: &str) -> Result<ExactMatrix, CliError> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<BigInt>()
                    .map_err(|_| CliError::Usage(format!("matrix CSV: {cell:?} is not an integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(ExactMatrix::from_rows(rows)?)
}

/// Parses the inline form `"r1;r2;..."` with comma-separated entries.
pub fn parse_matrix_spec(spec: &str) -> Result<ExactMatrix, CliError> {
    let rows = spec
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|cell| {
                    cell.trim().parse::<BigInt>().map_err(|_| {
                        CliError::Usage(format!("--matrix: {:?} is not an integer", cell.trim()))
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExactMatrix::from_rows(rows)?)
}

/// Space-separated rows.
pub fn matrix_to_text(m: &ExactMatrix) -> String {
    let mut out = m.to_string();
    out.push('\n');
    out
}

/// One line per row: `n: L(n,1) ... L(n,n)`.
pub fn triangle_text(table: &LahTable, rows: usize) -> String {
    let mut out = String::new();
    for n in 1..=rows {
        let _ = write!(out, "{n}:");
        for v in &table.row(n)[1..] {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

pub fn network_to_json(network: &Network) -> Value {
    let label = |v| Value::String(network.label(v).to_string());
    json!({
        "n": network.n(),
        "vertices": network
            .labels()
            .iter()
            .enumerate()
            .map(|(id, l)| json!({ "id": id, "label": l.to_string() }))
            .collect::<Vec<_>>(),
        "edges": network
            .edges()
            .iter()
            .map(|e| json!({
                "tail": label(e.tail),
                "head": label(e.head),
                "weight": e.weight.to_string(),
            }))
            .collect::<Vec<_>>(),
        "sources": network.sources().iter().map(|&v| label(v)).collect::<Vec<_>>(),
        "sinks": network.sinks().iter().map(|&v| label(v)).collect::<Vec<_>>(),
    })
}

/// Graphviz digraph with weight labels; sources and sinks pinned to the
/// first and last rank.
pub fn network_to_dot(network: &Network, name: &str) -> String {
    let mut out = String::new();
    let quoted = |v| format!("\"{}\"", network.label(v));
    let _ = writeln!(out, "digraph {name} {{");
    out.push_str("  rankdir=LR;\n");
    for (id, l) in network.labels().iter().enumerate() {
        let _ = writeln!(out, "  \"{l}\"; // {id}");
    }
    let ranked = |list: &[lahnet::VertexId]| {
        list.iter()
            .map(|&v| quoted(v))
            .collect::<Vec<_>>()
            .join("; ")
    };
    let _ = writeln!(out, "  {{ rank=source; {}; }}", ranked(network.sources()));
    let _ = writeln!(out, "  {{ rank=sink; {}; }}", ranked(network.sinks()));
    for e in network.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            quoted(e.tail),
            quoted(e.head),
            e.weight
        );
    }
    out.push_str("}\n");
    out
}

pub fn network_to_text(network: &Network) -> String {
    let mut out = String::new();
    for e in network.edges() {
        let _ = writeln!(
            out,
            "{} -> {} weight {}",
            network.label(e.tail),
            network.label(e.head),
            e.weight
        );
    }
    out
}

pub fn lindstrom_json(r: &LindstromReport) -> Value {
    json!({
        "I": indices(&r.rows),
        "J": indices(&r.cols),
        "minor": r.minor.to_string(),
        "family_sum": r.family_sum.to_string(),
        "equal": r.equal(),
        "family_count": r.family_count,
    })
}

pub fn lindstrom_text(r: &LindstromReport) -> String {
    format!(
        "I = {} J = {}: minor {}, family sum {} over {} families: {}\n",
        r.rows,
        r.cols,
        r.minor,
        r.family_sum,
        r.family_count,
        if r.equal() { "equal" } else { "NOT EQUAL" }
    )
}

pub fn exhaustive_json(s: &ExhaustiveSummary) -> Value {
    json!({
        "n": s.n,
        "max_size": s.max_size,
        "pairs_checked": s.pairs_checked,
        "all_equal": s.all_equal(),
        "failures": s.failures.iter().map(lindstrom_json).collect::<Vec<_>>(),
    })
}

pub fn tnn_json(r: &TnnReport) -> Value {
    json!({
        "rows": r.rows,
        "cols": r.cols,
        "checked_minor_count": r.checked_minor_count,
        "is_tnn": r.is_tnn(),
        "witness": r.witness.as_ref().map(|w| json!({
            "I": indices(&w.rows),
            "J": indices(&w.cols),
            "minor": w.value.to_string(),
        })),
    })
}

pub fn tnn_text(r: &TnnReport) -> String {
    match &r.witness {
        None => format!(
            "totally non-negative: {} minors of the {}x{} matrix checked\n",
            r.checked_minor_count, r.rows, r.cols
        ),
        Some(w) => format!(
            "not totally non-negative: minor I = {} J = {} is {} (after {} minors)\n",
            w.rows, w.cols, w.value, r.checked_minor_count
        ),
    }
}

pub fn variation_json(r: &VariationReport) -> Value {
    json!({
        "sample_count": r.sample_count,
        "seed": r.seed.to_string(),
        "generator": r.generator,
        "entry_bound": r.entry_bound.to_string(),
        "violation_count": r.violations.len(),
        "violations": r.violations.iter().map(|v| json!({
            "x": strings(&v.x),
            "var_x": v.var_x,
            "var_mx": v.var_mx,
        })).collect::<Vec<_>>(),
        "max_drop": r.max_drop,
        "samples": r.samples.iter().map(strings).collect::<Vec<_>>(),
    })
}

pub fn variation_text(r: &VariationReport) -> String {
    let mut out = format!(
        "{} violations in {} samples (seed {}, entries in [-{}, {}], {})\nlargest drop Var(x) - Var(Mx): {}\n",
        r.violations.len(),
        r.sample_count,
        r.seed,
        r.entry_bound,
        r.entry_bound,
        r.generator,
        r.max_drop
    );
    for v in &r.violations {
        let x: Vec<String> = v.x.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(
            out,
            "x = ({}): Var(x) = {}, Var(Mx) = {}",
            x.join(", "),
            v.var_x,
            v.var_mx
        );
    }
    out
}

pub fn identity_json(r: &IdentityReport) -> Value {
    json!({
        "n": r.n,
        "holds": r.holds(),
        "rising": strings(r.rising.coefficients()),
        "expansion": strings(r.expansion.coefficients()),
        "first_difference": r.first_difference.as_ref().map(|(d, a, b)| json!({
            "degree": d,
            "rising": a.to_string(),
            "expansion": b.to_string(),
        })),
    })
}

pub fn identity_text(r: &IdentityReport) -> String {
    match &r.first_difference {
        None => format!(
            "n = {}: {} = sum of L(n,k) falling factorials\n",
            r.n, r.rising
        ),
        Some((d, a, b)) => format!("n = {}: coefficients of x^{d} differ ({a} vs {b})\n", r.n),
    }
}
