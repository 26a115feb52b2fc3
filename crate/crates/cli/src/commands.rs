use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use l2betti::betti::{self, BettiReport, OutcomeStatus, VerificationOutcome};
use l2betti::complexes::{build_complex, verify_composites_zero, ChainComplexSpec, ComplexDocument, ComplexKind, VerificationReport};
use l2betti::lmod::{self, LmodInput};
use l2betti::presentations::{parse_presentation, Presentation};
use l2betti::vnoracle::{oracle_for_presentation, FiniteCyclicModel};
use l2betti::words::VagueCardinal;

use crate::failure::{Failure, Kind};
use crate::{text, Cli, Format};

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn load(path: &Path) -> Result<Presentation, Failure> {
    parse_presentation(&read(path)?).map_err(|e| Failure::from(e).at(path))
}

fn emit<T: Serialize>(cli: &Cli, doc: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(doc).expect("documents serialize") + "\n",
        Format::Text => text(),
    };
    match &cli.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::io(path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::new(Kind::Io, e))
        }
    }
}

/// The report, with an oracle cross-check attached when the group is finite
/// and no larger than the bound.
pub fn report_for(p: &Presentation, oracle_bound: u64) -> Result<BettiReport, Failure> {
    let mut report = betti::analyze(p)?;
    if let VagueCardinal::Finite(n) = report.order {
        report.verification = Some(if n <= oracle_bound {
            betti::cross_validate(p, &report)
        } else {
            VerificationOutcome::skipped(&report, &format!("order {n} exceeds the oracle bound {oracle_bound}"))
        });
    }
    Ok(report)
}

pub fn analyze(cli: &Cli, path: Option<&Path>, known: Option<&str>) -> Outcome {
    let report = match (known, path) {
        (Some(name), _) => betti::known_group(name)?,
        (None, Some(path)) => report_for(&load(path)?, cli.oracle_bound).map_err(|f| f.at(path))?,
        (None, None) => unreachable!("clap requires a path or --known"),
    };
    emit(cli, &report, || text::report(&report))?;
    Ok(0)
}

#[derive(Debug, Serialize)]
pub struct VerifyDocument {
    pub input: &'static str,
    pub kind: ComplexKind,
    pub symbolic: VerificationReport,
    pub oracle: VerificationOutcome,
    pub passed: bool,
}

fn oracle_check(spec: &ChainComplexSpec, p: &Presentation, oracle_bound: u64) -> Result<VerificationOutcome, Failure> {
    let report = betti::analyze(p)?;
    Ok(match report.order {
        VagueCardinal::Finite(n) if n <= oracle_bound && spec.kind == ComplexKind::OneRelator => {
            match FiniteCyclicModel::for_presentation(p) {
                Ok(model) => betti::cross_validate_complex(spec, &model, &report),
                Err(e) => VerificationOutcome::failed(&report, None, e.to_string()),
            }
        }
        VagueCardinal::Finite(n) => {
            VerificationOutcome::skipped(&report, &format!("order {n} exceeds the oracle bound {oracle_bound}"))
        }
        VagueCardinal::Infinite => VerificationOutcome::skipped(&report, "the group is infinite; no finite oracle applies"),
    })
}

pub fn verify(cli: &Cli, path: &Path) -> Outcome {
    let raw = read(path)?;
    let (input, spec, p) = if raw.trim_start().starts_with('{') {
        let spec = ComplexDocument::from_json(&raw).and_then(|d| d.to_spec()).map_err(|e| Failure::from(e).at(path))?;
        // a one-relator complex carries its own presentation
        let p = match spec.kind {
            ComplexKind::OneRelator if spec.relators.len() <= 1 => {
                Presentation::new(spec.alphabet.clone(), spec.relators.clone()).ok()
            }
            _ => None,
        };
        ("complex", spec, p)
    } else {
        let p = parse_presentation(&raw).map_err(|e| Failure::from(e).at(path))?;
        let spec = build_complex(&p).map_err(|e| Failure::from(e).at(path))?;
        ("presentation", spec, Some(p))
    };
    let symbolic = verify_composites_zero(&spec);
    let oracle = match &p {
        Some(p) => oracle_check(&spec, p, cli.oracle_bound).map_err(|f| f.at(path))?,
        None => VerificationOutcome {
            status: OutcomeStatus::Skipped,
            formula: Vec::new(),
            oracle: None,
            detail: Some("no finite oracle applies to this complex".to_owned()),
        },
    };
    let passed = symbolic.passed() && oracle.status != OutcomeStatus::Fail;
    let doc = VerifyDocument { input, kind: spec.kind, symbolic, oracle, passed };
    emit(cli, &doc, || text::verification(&doc))?;
    Ok(if passed { 0 } else { 1 })
}

pub fn export_complex(cli: &Cli, path: &Path) -> Outcome {
    let p = load(path)?;
    let spec = build_complex(&p).map_err(|e| Failure::from(e).at(path))?;
    let doc = spec.to_document();
    emit(cli, &doc, || text::complex(&spec))?;
    Ok(0)
}

pub fn oracle(cli: &Cli, path: &Path) -> Outcome {
    let p = load(path)?;
    let report = betti::analyze(&p).map_err(|e| Failure::from(e).at(path))?;
    if let VagueCardinal::Finite(n) = report.order {
        if n > cli.oracle_bound {
            return Err(Failure::new(Kind::Precondition, format!("order {n} exceeds the oracle bound {}", cli.oracle_bound)).at(path));
        }
    }
    let doc = oracle_for_presentation(&p).map_err(|e| Failure::from(e).at(path))?;
    emit(cli, &doc, || text::oracle(&doc))?;
    Ok(0)
}

pub fn lmod_demo(cli: &Cli, path: &Path) -> Outcome {
    let input: LmodInput =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::new(Kind::Parse, e).at(path))?;
    let f = input.factorization().map_err(|e| Failure::from(e).at(path))?;
    let outcome = lmod::lmod_demo(&f);
    emit(cli, &outcome, || text::lmod(&outcome))?;
    Ok(if outcome.verified && outcome.proof_identity { 0 } else { 1 })
}

#[derive(Debug, Serialize)]
pub struct BatchEntry {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<BettiReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Failure>,
}

#[derive(Debug, Serialize)]
pub struct BatchDocument {
    pub files: Vec<BatchEntry>,
}

fn batch_entry(path: &Path, name: String, oracle_bound: u64) -> BatchEntry {
    let result = read(path)
        .and_then(|t| parse_presentation(&t).map_err(Failure::from))
        .and_then(|p| report_for(&p, oracle_bound));
    match result {
        Ok(report) => BatchEntry { file: name, report: Some(report), error: None },
        Err(mut f) => {
            f.file = None;
            BatchEntry { file: name, report: None, error: Some(f) }
        }
    }
}

pub fn batch(cli: &Cli, dir: &Path, jobs: Option<usize>) -> Outcome {
    let mut files: Vec<(String, std::path::PathBuf)> = fs::read_dir(dir)
        .map_err(|e| Failure::io(dir, e))?
        .filter_map(Result::ok)
        .filter(|e| e.file_type().map(|t| t.is_file()).unwrap_or(false))
        .map(|e| (e.file_name().to_string_lossy().into_owned(), e.path()))
        .filter(|(name, _)| !name.starts_with('.'))
        .collect();
    files.sort();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::new(Kind::Precondition, e))?;
    let bound = cli.oracle_bound;
    let entries: Vec<BatchEntry> =
        pool.install(|| files.into_par_iter().map(|(name, path)| batch_entry(&path, name, bound)).collect());

    let failed = entries.iter().any(|e| e.error.is_some());
    let doc = BatchDocument { files: entries };
    emit(cli, &doc, || text::batch(&doc))?;
    Ok(if failed { 1 } else { 0 })
}
