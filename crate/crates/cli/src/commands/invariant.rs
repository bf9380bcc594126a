use ovk_core::localization::{localize_open, symbolic_integrand};
use ovk_core::open::{open_invariant, OpenInvariantKey};
use ovk_core::{Error, Rational};
use serde_json::json;

use crate::args::{Format, InvariantArgs, Method};
use crate::error::{CliError, CliResult};
use crate::output::{csv_document, emit, json_document, rational_json};

fn path_name(m: Method) -> &'static str {
    match m {
        Method::ClosedForm => "closed-form",
        Method::Localization => "localization",
    }
}

fn evaluate(key: &OpenInvariantKey, m: Method) -> ovk_core::Result<Rational> {
    match m {
        Method::ClosedForm => open_invariant(key),
        Method::Localization => localize_open(key),
    }
}

fn parts_text(parts: &[u64]) -> String {
    parts.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn run(args: &InvariantArgs) -> CliResult<()> {
    let h = args.h.unwrap_or(args.parts.len());
    let d = args.d.unwrap_or_else(|| args.parts.iter().sum());
    let key = OpenInvariantKey::new(args.g, h, d, &args.parts, args.a)?;

    if args.symbolic {
        return emit_symbolic(args, &key);
    }

    let value = evaluate(&key, args.method)?;
    let mut checked_against = None;
    if args.cross_check {
        let other = match args.method {
            Method::ClosedForm => Method::Localization,
            Method::Localization => Method::ClosedForm,
        };
        let second = evaluate(&key, other).map_err(|e| match e {
            Error::UnsupportedRegime(m) => {
                CliError::usage(format!("cross-check: {} route unsupported: {m}", path_name(other)))
            }
            e => CliError::failure(format!("cross-check: {} route failed: {e}", path_name(other))),
        })?;
        if second != value {
            return Err(CliError::failure(format!(
                "cross-check mismatch for C{key}: {} gives {value}, {} gives {second}",
                path_name(args.method),
                path_name(other)
            )));
        }
        checked_against = Some(path_name(other));
    }

    let path = path_name(args.method);
    let content = match args.out.format {
        Format::Text => {
            let suffix = checked_against
                .map(|o| format!(", agrees with {o}"))
                .unwrap_or_default();
            format!("C{key} = {value}  [path: {path}{suffix}]\n")
        }
        Format::Json => json_document(&json!({
            "g": key.g(),
            "h": key.h(),
            "d": key.d(),
            "parts": key.parts(),
            "a": key.a(),
            "value": rational_json(&value),
            "path": path,
            "cross_check": checked_against,
        })),
        Format::Csv => csv_document(
            &["g", "h", "d", "parts", "a", "num", "den", "path"],
            &[vec![
                key.g().to_string(),
                key.h().to_string(),
                key.d().to_string(),
                parts_text(key.parts()),
                key.a().to_string(),
                value.numer().to_string(),
                value.denom().to_string(),
                path.to_string(),
            ]],
        )?,
    };
    emit(&args.out, &content)
}

fn emit_symbolic(args: &InvariantArgs, key: &OpenInvariantKey) -> CliResult<()> {
    let integrand = symbolic_integrand(key);
    let content = match args.out.format {
        Format::Text => format!("C{key} = {integrand}  [path: symbolic]\n"),
        Format::Json => json_document(&json!({
            "g": key.g(),
            "h": key.h(),
            "d": key.d(),
            "parts": key.parts(),
            "a": key.a(),
            "prefactor": rational_json(&integrand.prefactor),
            "integrand": integrand.to_string(),
            "path": "symbolic",
        })),
        Format::Csv => csv_document(
            &["g", "h", "d", "parts", "a", "integrand", "path"],
            &[vec![
                key.g().to_string(),
                key.h().to_string(),
                key.d().to_string(),
                parts_text(key.parts()),
                key.a().to_string(),
                integrand.to_string(),
                "symbolic".into(),
            ]],
        )?,
    };
    emit(&args.out, &content)
}
