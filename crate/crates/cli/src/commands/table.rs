use std::path::Path;

use ovk_core::hodge::{bg_table, closed_cover_contribution};
use ovk_core::open::{integer_invariants, open_invariant, partitions, OpenInvariantKey};
use serde_json::{json, Map, Value};

use crate::args::{Format, OutputArgs, TableArgs, TableKind};
use crate::error::{CliError, CliResult};
use crate::output::{csv_document, emit, json_document, rational_from_json, rational_json};

/// Parameters that determine a table completely; they are echoed into the
/// JSON document so a saved table can be regenerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableSpec {
    Bg { gmax: usize },
    Closed { gmax: usize, dmax: u64 },
    Nd { a: i64, dmax: u64 },
    Open { g: u32, h: usize, dmax: u64, a: i64 },
}

/// One row: named integer columns, an optional parts list, the value and
/// its provenance.
struct Row {
    fields: Vec<(&'static str, Value)>,
    value: ovk_core::Rational,
    path: &'static str,
}

impl TableSpec {
    fn from_args(kind: TableKind, args: &TableArgs) -> CliResult<Self> {
        let spec = match kind {
            TableKind::Bg => Self::Bg { gmax: args.gmax },
            TableKind::Closed => Self::Closed {
                gmax: args.gmax,
                dmax: args.dmax,
            },
            TableKind::Nd => Self::Nd {
                a: args.a,
                dmax: args.dmax,
            },
            TableKind::Open => Self::Open {
                g: args.g,
                h: args.h,
                dmax: args.dmax,
                a: args.a,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> CliResult<()> {
        let dmax = match *self {
            Self::Bg { .. } => return Ok(()),
            Self::Closed { dmax, .. } | Self::Nd { dmax, .. } => dmax,
            Self::Open { h, dmax, .. } => {
                if h < 1 {
                    return Err(CliError::usage("--h must be at least 1"));
                }
                dmax
            }
        };
        if dmax < 1 {
            return Err(CliError::usage("--dmax must be at least 1"));
        }
        Ok(())
    }

    fn name(&self) -> &'static str {
        match self {
            Self::Bg { .. } => "bg",
            Self::Closed { .. } => "closed",
            Self::Nd { .. } => "nd",
            Self::Open { .. } => "open",
        }
    }

    fn params(&self) -> Value {
        match *self {
            Self::Bg { gmax } => json!({ "gmax": gmax }),
            Self::Closed { gmax, dmax } => json!({ "gmax": gmax, "dmax": dmax }),
            Self::Nd { a, dmax } => json!({ "a": a, "dmax": dmax }),
            Self::Open { g, h, dmax, a } => json!({ "g": g, "h": h, "dmax": dmax, "a": a }),
        }
    }

    fn from_document(doc: &Value) -> Option<Self> {
        let p = doc.get("params")?;
        let u = |k: &str| p.get(k)?.as_u64();
        let i = |k: &str| p.get(k)?.as_i64();
        let spec = match doc.get("table")?.as_str()? {
            "bg" => Self::Bg {
                gmax: u("gmax")? as usize,
            },
            "closed" => Self::Closed {
                gmax: u("gmax")? as usize,
                dmax: u("dmax")?,
            },
            "nd" => Self::Nd {
                a: i("a")?,
                dmax: u("dmax")?,
            },
            "open" => Self::Open {
                g: u32::try_from(u("g")?).ok()?,
                h: u("h")? as usize,
                dmax: u("dmax")?,
                a: i("a")?,
            },
            _ => return None,
        };
        Some(spec)
    }

    fn rows(&self) -> CliResult<Vec<Row>> {
        let mut rows = Vec::new();
        match *self {
            Self::Bg { gmax } => {
                for (g, b) in bg_table(gmax).values().iter().enumerate() {
                    rows.push(Row {
                        fields: vec![("g", json!(g))],
                        value: b.clone(),
                        path: "series",
                    });
                }
            }
            Self::Closed { gmax, dmax } => {
                for g in 0..=gmax {
                    for d in 1..=dmax {
                        rows.push(Row {
                            fields: vec![("g", json!(g)), ("d", json!(d))],
                            value: closed_cover_contribution(g, d),
                            path: "closed-form",
                        });
                    }
                }
            }
            Self::Nd { a, dmax } => {
                let inv = integer_invariants(dmax, a);
                for (i, v) in inv.values.into_iter().enumerate() {
                    rows.push(Row {
                        fields: vec![("d", json!(i + 1)), ("integral", json!(v.is_integer()))],
                        value: v,
                        path: "mobius",
                    });
                }
            }
            Self::Open { g, h, dmax, a } => {
                for d in (h as u64)..=dmax {
                    for parts in partitions(d, h) {
                        let key = OpenInvariantKey::from_parts(g, &parts, a)?;
                        rows.push(Row {
                            fields: vec![
                                ("g", json!(g)),
                                ("h", json!(h)),
                                ("d", json!(d)),
                                ("parts", json!(parts)),
                                ("a", json!(a)),
                            ],
                            value: open_invariant(&key)?,
                            path: "closed-form",
                        });
                    }
                }
            }
        }
        Ok(rows)
    }

    fn json(&self, rows: &[Row]) -> String {
        let rows: Vec<Value> = rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (k, v) in &r.fields {
                    m.insert((*k).to_string(), v.clone());
                }
                m.insert("value".into(), rational_json(&r.value));
                m.insert("path".into(), json!(r.path));
                Value::Object(m)
            })
            .collect();
        json_document(&json!({ "table": self.name(), "params": self.params(), "rows": rows }))
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(","),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(spec: &TableSpec, rows: &[Row], format: Format) -> CliResult<String> {
    let columns: Vec<&str> = rows
        .first()
        .map(|r| r.fields.iter().map(|(k, _)| *k).collect())
        .unwrap_or_default();
    match format {
        Format::Json => Ok(spec.json(rows)),
        Format::Csv => {
            let mut header = columns.clone();
            header.extend(["num", "den", "path"]);
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut c: Vec<String> = r.fields.iter().map(|(_, v)| cell(v)).collect();
                    c.extend([r.value.numer().to_string(), r.value.denom().to_string(), r.path.into()]);
                    c
                })
                .collect();
            csv_document(&header, &body)
        }
        Format::Text => {
            let mut s = format!("# table {}\n", spec.name());
            for r in rows {
                let keys: Vec<String> = r.fields.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect();
                s.push_str(&format!("{}  {}  [{}]\n", keys.join(" "), r.value, r.path));
            }
            Ok(s)
        }
    }
}

fn check(file: &Path, out: &OutputArgs) -> CliResult<()> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", file.display())))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{} is not JSON: {e}", file.display())))?;
    let spec = TableSpec::from_document(&doc)
        .ok_or_else(|| CliError::usage(format!("{} is not a table document", file.display())))?;
    spec.validate()?;
    let rows = doc.get("rows").and_then(Value::as_array);
    let well_formed = rows.is_some_and(|rows| {
        rows.iter()
            .all(|r| r.get("value").and_then(rational_from_json).is_some())
    });
    if !well_formed {
        return Err(CliError::usage(format!(
            "{}: rows must carry {{num, den}} rational values",
            file.display()
        )));
    }
    let regenerated = spec.json(&spec.rows()?);
    if regenerated != text {
        return Err(CliError::failure(format!(
            "{}: regenerated {} table differs from the file",
            file.display(),
            spec.name()
        )));
    }
    emit(
        out,
        &format!("{}: {} table reproduces byte-identically\n", file.display(), spec.name()),
    )
}

pub fn run(args: &TableArgs) -> CliResult<()> {
    if let Some(file) = &args.check {
        return check(file, &args.out);
    }
    let kind = args.kind.expect("clap requires a kind when --check is absent");
    let spec = TableSpec::from_args(kind, args)?;
    let rows = spec.rows()?;
    emit(&args.out, &render(&spec, &rows, args.out.format)?)
}
