use std::io::Write;

use ovk_core::Rational;
use serde_json::{json, Value};

use crate::args::OutputArgs;
use crate::error::{CliError, CliResult};

/// `{"num": "...", "den": "..."}` with decimal-string integers.
pub fn rational_json(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn rational_from_json(v: &Value) -> Option<Rational> {
    let num = v.get("num")?.as_str()?.parse().ok()?;
    let den: num_bigint::BigInt = v.get("den")?.as_str()?.parse().ok()?;
    (den != num_bigint::BigInt::from(0)).then(|| Rational::new(num, den))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn json_document(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn csv_document(header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::failure(format!("csv: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::failure(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv input was UTF-8"))
}

/// Write to the requested file, or standard output when none is given.
pub fn emit(out: &OutputArgs, content: &str) -> CliResult<()> {
    match &out.output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout.write_all(content.as_bytes());
            let _ = stdout.flush();
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ovk_core::rat;

    #[test]
    fn rationals_round_trip_through_json() {
        let r = rat(-7, 5760);
        assert_eq!(rational_json(&r), json!({"num": "-7", "den": "5760"}));
        assert_eq!(rational_from_json(&rational_json(&r)), Some(r));
        assert_eq!(rational_from_json(&json!({"num": "1", "den": "0"})), None);
    }

    #[test]
    fn csv_quotes_embedded_commas() {
        let s = csv_document(&["parts", "num"], &[vec!["2,1".into(), "3".into()]]).unwrap();
        assert_eq!(s, "parts,num\n\"2,1\",3\n");
    }
}
