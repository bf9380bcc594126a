use ovk_core::maslov::{maslov_index, symbolic_phase_index, ExampleBundle, ExprMatrix, MaslovConfig};
use ovk_core::MatrixLoop64;
use serde::Deserialize;
use serde_json::json;

use crate::args::{Format, MaslovArgs};
use crate::error::{CliError, CliResult};
use crate::output::{csv_document, emit, json_document};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LoopSpec {
    symbolic_phase: Option<Vec<i64>>,
    matrix: Option<Vec<Vec<String>>>,
    samples: Option<usize>,
}

#[derive(Debug, PartialEq, Eq)]
struct Report {
    index: i64,
    method: &'static str,
    sampled: Option<i64>,
}

fn parse_example(s: &str) -> CliResult<ExampleBundle> {
    let bad = || CliError::usage(format!("--example expects line:M or rank-two:D, found `{s}`"));
    let (family, n) = s.split_once(':').ok_or_else(bad)?;
    match family {
        "line" => Ok(ExampleBundle::Line(n.parse().map_err(|_| bad())?)),
        "rank-two" => {
            let d: u64 = n.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(ExampleBundle::RankTwo(d))
        }
        _ => Err(bad()),
    }
}

fn sample(lp: &MatrixLoop64, config: &MaslovConfig) -> CliResult<i64> {
    maslov_index(lp, config).map_err(|e| CliError::failure(format!("sampler: {e}")))
}

fn agree(exact: i64, sampled: i64, method: &'static str) -> CliResult<Report> {
    if exact != sampled {
        return Err(CliError::failure(format!(
            "{method} path gives {exact} but the sampler gives {sampled}"
        )));
    }
    Ok(Report {
        index: exact,
        method,
        sampled: Some(sampled),
    })
}

fn compute(args: &MaslovArgs) -> CliResult<Report> {
    let mut config = MaslovConfig {
        initial_samples: args.samples,
        max_samples: args.budget,
        floor_ratio: args.floor,
    };

    if let Some(example) = &args.example {
        let bundle = parse_example(example)?;
        let sampled = sample(&bundle.boundary_loop(), &config)?;
        return agree(bundle.maslov_exact(), sampled, "symbolic-phase");
    }

    let path = args.spec.as_ref().expect("clap requires --spec or --example");
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let spec: LoopSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("malformed loop file {}: {e}", path.display())))?;
    if let Some(n) = spec.samples {
        config.initial_samples = n;
    }
    validate(&config)?;

    match (spec.symbolic_phase, spec.matrix) {
        (Some(blocks), None) => Ok(Report {
            index: symbolic_phase_index(&blocks),
            method: "symbolic-phase",
            sampled: None,
        }),
        (None, Some(rows)) => {
            let matrix = ExprMatrix::parse(&rows)?;
            let sampled = sample(&matrix.to_loop(), &config)?;
            match matrix.exact_index()? {
                Some(exact) => agree(exact, sampled, "exact-determinant"),
                None => Ok(Report {
                    index: sampled,
                    method: "sampled",
                    sampled: Some(sampled),
                }),
            }
        }
        _ => Err(CliError::usage(
            "loop file needs exactly one of `symbolic_phase` and `matrix`",
        )),
    }
}

fn validate(config: &MaslovConfig) -> CliResult<()> {
    if config.initial_samples < 2 {
        return Err(CliError::usage("sample count must be at least 2"));
    }
    if config.max_samples < config.initial_samples {
        return Err(CliError::usage("--budget must be at least the sample count"));
    }
    if !(config.floor_ratio.is_finite() && config.floor_ratio >= 0.0) {
        return Err(CliError::usage("--floor must be a finite non-negative number"));
    }
    Ok(())
}

pub fn run(args: &MaslovArgs) -> CliResult<()> {
    validate(&MaslovConfig {
        initial_samples: args.samples,
        max_samples: args.budget,
        floor_ratio: args.floor,
    })?;
    let r = compute(args)?;
    let sampled_text = r.sampled.map(|s| s.to_string()).unwrap_or_default();
    let content = match args.out.format {
        Format::Text => {
            let tail = r
                .sampled
                .filter(|_| r.method != "sampled")
                .map(|s| format!("; sampler agrees ({s})"))
                .unwrap_or_default();
            format!("μ = {}  [method: {}{tail}]\n", r.index, r.method)
        }
        Format::Json => json_document(&json!({
            "index": r.index,
            "method": r.method,
            "sampled": r.sampled,
        })),
        Format::Csv => csv_document(
            &["index", "method", "sampled"],
            &[vec![r.index.to_string(), r.method.to_string(), sampled_text]],
        )?,
    };
    emit(&args.out, &content)
}
