use ovk_core::hodge::{lambda_product_identity, verify_sphere_ov};
use ovk_core::localization::localize_open;
use ovk_core::maslov::{
    bordered_rr_chi, example_cohomology_dims, maslov_index, BorderedType, ExampleBundle, MaslovConfig,
};
use ovk_core::open::{
    integer_invariants, open_invariant, partitions, verify_disc_ov, verify_framing_symmetry,
    OpenInvariantKey,
};
use rayon::prelude::*;
use serde_json::json;

use crate::args::{Format, Suite, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::output::{csv_document, emit, json_document};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub case: String,
    pub pass: bool,
    pub detail: String,
}

impl Record {
    fn new(case: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            case: case.into(),
            pass,
            detail: detail.into(),
        }
    }
}

pub fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::SphereOv => "sphere-ov",
        Suite::DiscOv => "disc-ov",
        Suite::Symmetry => "symmetry",
        Suite::Mumford => "mumford",
        Suite::LocalizationXcheck => "localization-xcheck",
        Suite::NdIntegrality => "nd-integrality",
        Suite::MaslovExamples => "maslov-examples",
        Suite::RrExamples => "rr-examples",
    }
}

fn validate(args: &VerifyArgs) -> CliResult<()> {
    if args.dmax < 1 {
        return Err(CliError::usage("--dmax must be at least 1"));
    }
    if args.hmax < 1 {
        return Err(CliError::usage("--hmax must be at least 1"));
    }
    if args.amin > args.amax {
        return Err(CliError::usage(format!(
            "empty framing range: --amin {} exceeds --amax {}",
            args.amin, args.amax
        )));
    }
    if args.mmax < 0 {
        return Err(CliError::usage("--mmax must be non-negative"));
    }
    if args.samples < 2 {
        return Err(CliError::usage("--samples must be at least 2"));
    }
    if args.budget < args.samples {
        return Err(CliError::usage("--budget must be at least --samples"));
    }
    Ok(())
}

fn genus_zero_keys(args: &VerifyArgs) -> Vec<OpenInvariantKey> {
    let mut keys = Vec::new();
    for h in 1..=args.hmax {
        for d in (h as u64)..=args.dmax {
            for parts in partitions(d, h) {
                for a in args.amin..=args.amax {
                    keys.push(OpenInvariantKey::from_parts(0, &parts, a).expect("partition is a valid key"));
                }
            }
        }
    }
    keys
}

fn equality(case: String, lhs: ovk_core::Result<ovk_core::Rational>, rhs: ovk_core::Result<ovk_core::Rational>) -> Record {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) if l == r => Record::new(case, true, format!("both {l}")),
        (Ok(l), Ok(r)) => Record::new(case, false, format!("localization {l}, closed form {r}")),
        (Err(e), _) | (_, Err(e)) => Record::new(case, false, e.to_string()),
    }
}

fn examples(args: &VerifyArgs) -> Vec<(ExampleBundle, i64)> {
    let mut v: Vec<_> = (-args.mmax..=args.mmax).map(|m| (ExampleBundle::Line(m), m)).collect();
    v.extend((1..=args.dmax).map(|d| (ExampleBundle::RankTwo(d), -2 * d as i64)));
    v
}

fn bundle_case(b: ExampleBundle) -> String {
    match b {
        ExampleBundle::Line(m) => format!("L({m})"),
        ExampleBundle::RankTwo(d) => format!("N({d})"),
    }
}

pub fn records(args: &VerifyArgs) -> Vec<Record> {
    match args.suite {
        Suite::SphereOv => (1..=args.dmax)
            .into_par_iter()
            .map(|d| {
                let ok = verify_sphere_ov(d, args.gmax);
                Record::new(format!("d={d}"), ok, format!("genus ≤ {}", args.gmax))
            })
            .collect(),
        Suite::DiscOv => (1..=args.dmax)
            .into_par_iter()
            .map(|d| {
                let ok = verify_disc_ov(d, args.gmax);
                Record::new(format!("d={d}"), ok, format!("genus ≤ {}", args.gmax))
            })
            .collect(),
        Suite::Symmetry => genus_zero_keys(args)
            .into_par_iter()
            .map(|k| match verify_framing_symmetry(&k) {
                Ok(ok) => Record::new(format!("C{k}"), ok, format!("a ↦ {}", 1 - k.a())),
                Err(e) => Record::new(format!("C{k}"), false, e.to_string()),
            })
            .collect(),
        Suite::Mumford => (0..=args.gmax)
            .into_par_iter()
            .map(|g| Record::new(format!("g={g}"), lambda_product_identity(g), "c(E)c(E^∨) = 1"))
            .collect(),
        Suite::LocalizationXcheck => {
            let mut keys = genus_zero_keys(args);
            for g in 1..=args.gmax as u32 {
                for d in 1..=args.dmax {
                    for a in [0, 1] {
                        keys.push(OpenInvariantKey::from_parts(g, &[d], a).expect("single part is a valid key"));
                    }
                }
            }
            keys.into_par_iter()
                .map(|k| equality(format!("C{k}"), localize_open(&k), open_invariant(&k)))
                .collect()
        }
        Suite::NdIntegrality => (args.amin..=args.amax)
            .into_par_iter()
            .map(|a| {
                let inv = integer_invariants(args.dmax, a);
                let case = format!("a={a}");
                if !inv.report.is_integral() {
                    return Record::new(case, false, format!("non-integral at d ∈ {:?}", inv.report.non_integral));
                }
                if a == 0 {
                    let expected = (1..=args.dmax).map(|d| i64::from(d == 1));
                    let ok = inv.values.iter().zip(expected).all(|(v, e)| *v == ovk_core::int(e));
                    return Record::new(case, ok, "N_1 = 1 and N_d = 0 for d ≥ 2");
                }
                Record::new(case, true, format!("N_d integral for d ≤ {}", args.dmax))
            })
            .collect(),
        Suite::MaslovExamples => {
            let config = MaslovConfig {
                initial_samples: args.samples,
                max_samples: args.budget,
                ..MaslovConfig::default()
            };
            examples(args)
                .into_par_iter()
                .map(|(b, expected)| {
                    let symbolic = b.maslov_exact();
                    let det = b.boundary_matrix().exact_index();
                    let sampled = maslov_index(&b.boundary_loop(), &config);
                    let ok = symbolic == expected && det == Ok(Some(expected)) && sampled == Ok(expected);
                    let detail = format!(
                        "expected {expected}: symbolic {symbolic}, determinant {}, sampled {}",
                        match det {
                            Ok(Some(v)) => v.to_string(),
                            Ok(None) => "n/a".into(),
                            Err(e) => e.to_string(),
                        },
                        match sampled {
                            Ok(v) => v.to_string(),
                            Err(e) => e.to_string(),
                        }
                    );
                    Record::new(bundle_case(b), ok, detail)
                })
                .collect()
        }
        Suite::RrExamples => examples(args)
            .into_par_iter()
            .map(|(b, _)| {
                let mu = b.maslov_exact();
                let chi = bordered_rr_chi(mu, b.rank(), BorderedType::DISC);
                let (h0, h1) = example_cohomology_dims(b);
                let ok = chi == h0 as i64 - h1 as i64;
                Record::new(bundle_case(b), ok, format!("χ = {chi}, h0 = {h0}, h1 = {h1}"))
            })
            .collect(),
    }
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    validate(args)?;
    let suite = suite_name(args.suite);
    let records = records(args);
    let failed = records.iter().filter(|r| !r.pass).count();
    let passed = records.len() - failed;

    let content = match args.out.format {
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                let tag = if r.pass { "PASS" } else { "FAIL" };
                s.push_str(&format!("{tag} {suite} {}: {}\n", r.case, r.detail));
            }
            s.push_str(&format!("{suite}: {passed} passed, {failed} failed\n"));
            s
        }
        Format::Json => json_document(&json!({
            "suite": suite,
            "passed": passed,
            "failed": failed,
            "records": records
                .iter()
                .map(|r| json!({"case": r.case, "pass": r.pass, "detail": r.detail}))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => csv_document(
            &["suite", "case", "pass", "detail"],
            &records
                .iter()
                .map(|r| vec![suite.to_string(), r.case.clone(), r.pass.to_string(), r.detail.clone()])
                .collect::<Vec<_>>(),
        )?,
    };
    emit(&args.out, &content)?;

    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::failure(format!("{suite}: {failed} of {} cases failed", records.len())))
    }
}
