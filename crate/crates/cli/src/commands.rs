//! One function per subcommand, each returning rendered output.

use std::path::Path;

use cftkit_core::coset::{
    catalog_extensions, classify_affine, classify_preunitary, conformal_embedding_check,
    integral_weight_check, mirror_extension, verify_gko, CatalogEntry, EmbeddingTarget,
    ExtensionSpec, NamedVoa,
};
use cftkit_core::minimal::{kac_canonical, minimal_character, minimal_modular_data};
use cftkit_core::modinv::{
    enumerate_physical_from, expected_invariants, invariant_from_extension, verify_invariant,
    ExtensionDecomposition, InvariantReport, InvariantTag, ModularInvariant, SearchCaps,
    DEFAULT_NODE_BUDGET,
};
use cftkit_core::rcft::{check_modular_relations, quantum_dims_with_precision};
use cftkit_core::wzw::{sl2_character, sl2_modular_data};
use cftkit_core::{Exec, Label, ModularData, Rational, TheoryId};
use serde::Serialize;

use crate::cache::{commutant_cached, CacheStatus};
use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::render::{json, matrix_table, table};
use crate::{Algebra, Report, Target, TheoryArgs, TheoryParams};

fn nonneg(name: &str, v: i64) -> Result<u32, CliError> {
    u32::try_from(v)
        .map_err(|_| CliError::usage(format!("{name} must be a nonnegative integer, got {v}")))
}

fn theory_of(algebra: Algebra, p: &TheoryParams) -> Result<TheoryId, CliError> {
    match (algebra, p.level, p.m) {
        (Algebra::Sl2, Some(level), None) => Ok(TheoryId::Sl2 {
            level: nonneg("level", level)?,
        }),
        (Algebra::Minimal, None, Some(m)) => {
            let m = nonneg("m", m)?;
            if m == 0 {
                return Err(CliError::usage("m must be at least 1"));
            }
            Ok(TheoryId::Minimal { m })
        }
        (Algebra::Sl2, _, _) => Err(CliError::usage("sl2 takes --level and not --m")),
        (Algebra::Minimal, _, _) => Err(CliError::usage("minimal takes --m and not --level")),
    }
}

fn data_of(theory: TheoryId) -> Result<ModularData, CliError> {
    Ok(match theory {
        TheoryId::Sl2 { level } => sl2_modular_data(level),
        TheoryId::Minimal { m } => minimal_modular_data(m)?,
    })
}

fn resolve(t: &TheoryArgs) -> Result<(TheoryId, ModularData), CliError> {
    let theory = theory_of(t.algebra, &t.params)?;
    Ok((theory, data_of(theory)?))
}

fn label_strings(data: &ModularData) -> Vec<String> {
    data.labels.iter().map(Label::to_string).collect()
}

#[derive(Serialize)]
struct InvariantDoc<'a> {
    theory: TheoryId,
    invariants: &'a [ModularInvariant],
}

fn render_invariants(
    cfg: &RunConfig,
    title: &str,
    data: &ModularData,
    list: &[ModularInvariant],
) -> Result<String, CliError> {
    if cfg.output == OutputFormat::Json {
        return json(&InvariantDoc {
            theory: data.theory,
            invariants: list,
        });
    }
    let labels = label_strings(data);
    let mut out = format!(
        "# {title}: {}\n\n{} invariant(s)\n",
        data.theory,
        list.len()
    );
    for x in list {
        let tag = x.tag.unwrap_or(InvariantTag::Unknown);
        out.push_str(&format!("\n## {tag}\n\n"));
        out.push_str(&matrix_table(&labels, &x.matrix));
    }
    Ok(out)
}

pub fn mdata(cfg: &RunConfig, algebra: Algebra, params: &TheoryParams) -> Result<Report, CliError> {
    let data = data_of(theory_of(algebra, params)?)?;
    let relations = check_modular_relations(&data);
    let passed = relations.passed();
    if cfg.output == OutputFormat::Json {
        return Ok(Report {
            text: json(&data.to_doc())?,
            passed,
        });
    }
    let qdims = quantum_dims_with_precision(&data, cfg.precision_bits)?;
    let rows: Vec<Vec<String>> = (0..data.len())
        .map(|i| {
            vec![
                data.labels[i].to_string(),
                data.weights[i].to_string(),
                data.t_phases[i].to_string(),
                format!("{:.12}", qdims[i].interval.re.to_f64()),
            ]
        })
        .collect();
    let mut out = format!(
        "# {}\n\nc = {}\n\n{}",
        data.theory,
        data.central_charge,
        table(&["label", "h", "T phase", "qdim (numeric)"], &rows)
    );
    match &relations.failure {
        None => out.push_str(&format!(
            "\nmodular relations: verified ({})\n",
            relations
                .verified
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )),
        Some(f) => out.push_str(&format!("\nmodular relations: FAILED: {f}\n")),
    }
    Ok(Report { text: out, passed })
}

#[derive(Serialize)]
struct CharacterDoc<T: Serialize> {
    theory: TheoryId,
    label: Label,
    order: usize,
    series: T,
}

fn render_series<C: ToString>(title: String, lead: &Rational, coeffs: &[C]) -> String {
    let rows: Vec<Vec<String>> = coeffs
        .iter()
        .enumerate()
        .map(|(d, c)| vec![d.to_string(), c.to_string()])
        .collect();
    format!(
        "# {title}\n\nleading exponent = {lead}\n\n{}",
        table(&["q-degree", "coefficient"], &rows)
    )
}

pub fn char_sl2(cfg: &RunConfig, level: i64, j: i64) -> Result<Report, CliError> {
    let (level, j) = (nonneg("level", level)?, nonneg("j", j)?);
    let ch = sl2_character(level, j, cfg.order)?;
    let theory = TheoryId::Sl2 { level };
    let text = match cfg.output {
        OutputFormat::Json => json(&CharacterDoc {
            theory,
            label: Label::Sl2(j),
            order: cfg.order,
            series: &ch,
        })?,
        OutputFormat::Markdown => render_series(
            format!("character of {j} at {theory}"),
            &ch.leading_exponent,
            &ch.coeffs,
        ),
    };
    Ok(Report::pass(text))
}

pub fn char_minimal(cfg: &RunConfig, m: i64, r: i64, s: i64) -> Result<Report, CliError> {
    let m = nonneg("m", m)?;
    let label = kac_canonical(m, nonneg("r", r)?, nonneg("s", s)?)?;
    let ch = minimal_character(m, label, cfg.order)?;
    let theory = TheoryId::Minimal { m };
    let text = match cfg.output {
        OutputFormat::Json => json(&CharacterDoc {
            theory,
            label: label.label(),
            order: cfg.order,
            series: &ch,
        })?,
        OutputFormat::Markdown => render_series(
            format!("character of {} at {theory}", label.label()),
            &ch.leading_exponent,
            &ch.coeffs,
        ),
    };
    Ok(Report::pass(text))
}

pub fn enumerate(cfg: &RunConfig, t: &TheoryArgs, no_cache: bool) -> Result<Report, CliError> {
    let (_, data) = resolve(t)?;
    let dir = (!no_cache).then_some(cfg.cache_dir.as_path());
    let (basis, status) = commutant_cached(&data, dir);
    match status {
        CacheStatus::Hit => eprintln!("commutant cache: hit"),
        CacheStatus::Miss => eprintln!("commutant cache: miss, stored"),
        CacheStatus::Disabled => {}
    }
    let caps = cfg.entry_bound.map(|b| SearchCaps {
        entry_bound: Some(b),
        max_nodes: Some(DEFAULT_NODE_BUDGET),
    });
    let mut list = enumerate_physical_from(&data, &basis, caps, Exec::default())?;
    list.sort_by(|a, b| a.matrix.cmp(&b.matrix));
    Ok(Report::pass(render_invariants(
        cfg,
        "physical invariants",
        &data,
        &list,
    )?))
}

fn read_matrix(path: &Path, data: &ModularData) -> Result<ModularInvariant, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{} is not JSON: {e}", path.display())))?;
    if value.is_array() {
        let matrix: Vec<Vec<i64>> = serde_json::from_value(value)
            .map_err(|e| CliError::usage(format!("matrix must be integer rows: {e}")))?;
        return Ok(ModularInvariant::new(data.labels.clone(), matrix)?);
    }
    let x: ModularInvariant = serde_json::from_value(value)
        .map_err(|e| CliError::usage(format!("invalid invariant document: {e}")))?;
    if x.basis != data.labels {
        return Err(CliError::usage(format!(
            "invariant basis does not match {}",
            data.theory
        )));
    }
    Ok(x)
}

#[derive(Serialize)]
struct VerifyDoc {
    theory: TheoryId,
    tag: Option<InvariantTag>,
    report: InvariantReport,
}

pub fn verify(
    cfg: &RunConfig,
    t: &TheoryArgs,
    tag: Option<&str>,
    matrix: Option<&Path>,
) -> Result<Report, CliError> {
    let (theory, data) = resolve(t)?;
    let candidates: Vec<ModularInvariant> = match (tag, matrix) {
        (Some(tag), _) => {
            let tag: InvariantTag = tag.parse()?;
            let found: Vec<_> = expected_invariants(&theory)?
                .into_iter()
                .filter(|(t, _)| *t == tag)
                .map(|(_, x)| x)
                .collect();
            if found.is_empty() {
                return Err(CliError::Failure(format!(
                    "no {tag} invariant exists at {theory}"
                )));
            }
            found
        }
        (None, Some(path)) => vec![read_matrix(path, &data)?],
        (None, None) => return Err(CliError::usage("give --tag or --matrix")),
    };
    let mut docs = Vec::new();
    for x in &candidates {
        docs.push(VerifyDoc {
            theory,
            tag: x.tag,
            report: verify_invariant(x, &data)?,
        });
    }
    let passed = docs.iter().all(|d| d.report.passed);
    let text = match cfg.output {
        OutputFormat::Json => json(&docs)?,
        OutputFormat::Markdown => {
            let rows: Vec<Vec<String>> = docs
                .iter()
                .map(|d| {
                    vec![
                        d.tag.map_or("-".into(), |t| t.to_string()),
                        if d.report.passed { "PASS" } else { "FAIL" }.to_string(),
                        d.report
                            .violation
                            .as_ref()
                            .map_or(String::new(), ToString::to_string),
                    ]
                })
                .collect();
            format!(
                "# invariant check: {theory}\n\n{}",
                table(&["tag", "result", "violation"], &rows)
            )
        }
    };
    Ok(Report { text, passed })
}

pub fn expected(cfg: &RunConfig, t: &TheoryArgs) -> Result<Report, CliError> {
    let (theory, data) = resolve(t)?;
    let list: Vec<ModularInvariant> = expected_invariants(&theory)?
        .into_iter()
        .map(|(tag, x)| x.with_tag(tag))
        .collect();
    Ok(Report::pass(render_invariants(
        cfg,
        "tabulated invariants",
        &data,
        &list,
    )?))
}

fn parse_labels(theory: TheoryId, text: &str) -> Result<Vec<Label>, CliError> {
    match theory {
        TheoryId::Sl2 { .. } => text
            .split(',')
            .map(|s| s.trim().parse::<u32>().map(Label::Sl2))
            .collect::<Result<_, _>>()
            .map_err(|_| {
                CliError::usage(format!("summands `{text}` are not comma-separated weights"))
            }),
        TheoryId::Minimal { .. } => {
            parse_kac_pairs(text).map(|v| v.into_iter().map(|(r, s)| Label::Kac(r, s)).collect())
        }
    }
}

/// Parses `(r,s),(r,s),...`.
fn parse_kac_pairs(text: &str) -> Result<Vec<(u32, u32)>, CliError> {
    let bad = || CliError::usage(format!("summands `{text}` are not a list of (r,s) pairs"));
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let (pair, tail) = body.split_once(')').ok_or_else(bad)?;
        let (r, s) = pair.split_once(',').ok_or_else(bad)?;
        out.push((
            r.trim().parse().map_err(|_| bad())?,
            s.trim().parse().map_err(|_| bad())?,
        ));
        rest = tail.trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn sorted_summands(spec: &ExtensionSpec) -> Vec<(Label, u32)> {
    let mut v = spec.summands.clone();
    v.sort();
    v
}

pub fn from_extension(
    cfg: &RunConfig,
    t: &TheoryArgs,
    summands: Option<&str>,
    decomposition: Option<&Path>,
) -> Result<Report, CliError> {
    let (theory, data) = resolve(t)?;
    let dec = match (summands, decomposition) {
        (Some(text), _) => {
            let spec = ExtensionSpec::from_labels(theory, &parse_labels(theory, text)?)?;
            let want = sorted_summands(&spec);
            catalog_extensions(&theory)?
                .into_iter()
                .find(|e| sorted_summands(&e.spec) == want)
                .map(|e| e.decomposition)
                .ok_or_else(|| {
                    CliError::Failure(format!(
                        "no cataloged extension of {theory} has these summands"
                    ))
                })?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let raw: ExtensionDecomposition = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("invalid decomposition: {e}")))?;
            ExtensionDecomposition::new(raw.rows)?
        }
        (None, None) => return Err(CliError::usage("give --summands or --decomposition")),
    };
    let x = invariant_from_extension(&dec, &data)?;
    Ok(Report::pass(render_invariants(
        cfg,
        "extension invariant",
        &data,
        &[x],
    )?))
}

pub fn coset_verify(cfg: &RunConfig, m: i64, n: i64, eps: i64) -> Result<Report, CliError> {
    let report = verify_gko(
        nonneg("m", m)?,
        nonneg("n", n)?,
        nonneg("eps", eps)?,
        cfg.order,
    )?;
    let text = match cfg.output {
        OutputFormat::Json => json(&report)?,
        OutputFormat::Markdown => {
            let status = if report.passed {
                format!("PASS through order {}", report.order)
            } else if let Some(s) = &report.structural {
                format!("FAIL: {s}")
            } else if let Some(mm) = &report.mismatch {
                format!(
                    "FAIL at q-degree {}, z^{}: {} vs {}",
                    mm.q_degree, mm.z_exponent, mm.lhs, mm.rhs
                )
            } else {
                "FAIL".into()
            };
            format!(
                "# coset decomposition m={} n={} eps={}\n\nleading exponent = {}\n\n{status}\n",
                report.m, report.n, report.eps, report.leading_exponent
            )
        }
    };
    Ok(Report {
        text,
        passed: report.passed,
    })
}

fn render_extension(title: &str, spec: &ExtensionSpec) -> Result<String, CliError> {
    let check = integral_weight_check(spec)?;
    let rows: Vec<Vec<String>> = spec
        .summands
        .iter()
        .zip(&check.entries)
        .map(|((l, mult), e)| vec![l.to_string(), mult.to_string(), e.weight.to_string()])
        .collect();
    let unitary = match spec.unitary {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    };
    Ok(format!(
        "# {title}: {}\n\nunitary: {unitary}\n\n{}",
        spec.base,
        table(&["summand", "multiplicity", "h"], &rows)
    ))
}

pub fn mirror(cfg: &RunConfig, m: i64, summands: &str) -> Result<Report, CliError> {
    let m = nonneg("m", m)?;
    let source = TheoryId::Sl2 { level: m + 1 };
    let spec = ExtensionSpec::from_labels(source, &parse_labels(source, summands)?)?;
    let out = mirror_extension(m, &spec)?;
    let passed = integral_weight_check(&out)?.passed;
    let text = match cfg.output {
        OutputFormat::Json => json(&out)?,
        OutputFormat::Markdown => render_extension("mirror extension", &out)?,
    };
    Ok(Report { text, passed })
}

pub fn embedding(cfg: &RunConfig, level: i64, target: Target) -> Result<Report, CliError> {
    let target = match target {
        Target::B2 => EmbeddingTarget::b2(),
        Target::G2 => EmbeddingTarget::g2(),
    };
    let r = conformal_embedding_check(nonneg("level", level)?, &target)?;
    let text = match cfg.output {
        OutputFormat::Json => json(&r)?,
        OutputFormat::Markdown => {
            let yes = |b: bool| if b { "yes" } else { "no" }.to_string();
            let rows = vec![
                vec![
                    "central charge".into(),
                    r.central_charge.to_string(),
                    r.target_central_charge.to_string(),
                    yes(r.charges_match),
                ],
                vec![
                    "weight-one dimension".into(),
                    r.weight_one_dimension.to_string(),
                    r.target.dimension.to_string(),
                    yes(r.dimensions_match),
                ],
            ];
            format!(
                "# sl2 level {} in {} level 1\n\n{}\n{}\n",
                r.level,
                r.target.name,
                table(&["quantity", "sl2 side", "target", "match"], &rows),
                if r.passed { "PASS" } else { "FAIL" }
            )
        }
    };
    Ok(Report {
        text,
        passed: r.passed,
    })
}

#[derive(Serialize)]
struct ClassifyDoc {
    voa: NamedVoa,
    name: String,
    invariant_tag: InvariantTag,
}

pub fn classify(
    cfg: &RunConfig,
    c: Option<&str>,
    level: Option<i64>,
    summands: &str,
) -> Result<Report, CliError> {
    let voa = match (c, level) {
        (Some(c), None) => {
            let c: Rational = c
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("central charge `{c}` is not p/q")))?;
            classify_preunitary(&c, &parse_kac_pairs(summands)?)
        }
        (None, Some(k)) => {
            let k = nonneg("level", k)?;
            let labels = parse_labels(TheoryId::Sl2 { level: k }, summands)?;
            let js: Vec<u32> = labels
                .into_iter()
                .map(|l| match l {
                    Label::Sl2(j) => j,
                    Label::Kac(..) => unreachable!("sl2 parsing yields weights"),
                })
                .collect();
            classify_affine(k, &js)
        }
        _ => return Err(CliError::usage("give exactly one of --c and --level")),
    };
    let voa = match voa {
        Ok(v) => v,
        Err(cftkit_core::Error::Rejected(why)) => {
            let text = match cfg.output {
                OutputFormat::Json => json(&serde_json::json!({ "rejected": why }))?,
                OutputFormat::Markdown => format!("rejected: {why}\n"),
            };
            return Ok(Report {
                text,
                passed: false,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let doc = ClassifyDoc {
        voa,
        name: voa.to_string(),
        invariant_tag: voa.invariant_tag(),
    };
    let text = match cfg.output {
        OutputFormat::Json => json(&doc)?,
        OutputFormat::Markdown => format!(
            "{} (kind {:?}, parameter {}, invariant {})\n",
            doc.name, voa.kind, voa.param, doc.invariant_tag
        ),
    };
    Ok(Report::pass(text))
}

pub fn catalog(cfg: &RunConfig, t: &TheoryArgs) -> Result<Report, CliError> {
    let (theory, _) = resolve(t)?;
    let entries: Vec<CatalogEntry> = catalog_extensions(&theory)?;
    if cfg.output == OutputFormat::Json {
        return Ok(Report::pass(json(&entries)?));
    }
    let mut out = format!(
        "# extensions of {theory}\n\n{} entr{}\n",
        entries.len(),
        if entries.len() == 1 { "y" } else { "ies" }
    );
    for e in &entries {
        out.push('\n');
        let body = render_extension(&e.voa.to_string(), &e.spec)?;
        out.push_str(&format!("#{body}"));
        out.push_str(&format!(
            "\ninvariant type: {}; {} irreducible module(s)\n",
            e.voa.invariant_tag(),
            e.decomposition.rows.len()
        ));
    }
    Ok(Report::pass(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kac_pair_lists() {
        assert_eq!(parse_kac_pairs("(1,1),(7,1)").unwrap(), [(1, 1), (7, 1)]);
        assert_eq!(
            parse_kac_pairs(" (1, 1) , (1,7) ").unwrap(),
            [(1, 1), (1, 7)]
        );
        assert!(parse_kac_pairs("(1,1").is_err());
        assert!(parse_kac_pairs("1,1").is_err());
        assert!(parse_kac_pairs("").is_err());
    }

    #[test]
    fn theory_params() {
        let p = TheoryParams {
            level: Some(-1),
            m: None,
        };
        assert!(matches!(
            theory_of(Algebra::Sl2, &p),
            Err(CliError::Usage(_))
        ));
        let p = TheoryParams {
            level: None,
            m: Some(3),
        };
        assert_eq!(
            theory_of(Algebra::Minimal, &p).unwrap(),
            TheoryId::Minimal { m: 3 }
        );
        assert!(theory_of(Algebra::Sl2, &p).is_err());
    }
}
