//! JSON Lines readers and writers for frame corpora, raw-text corpora, and
//! phenotype files. One record per line; loading preserves input order and
//! is deterministic, writing uses a canonical sort so outputs diff cleanly.

use std::collections::{BTreeSet, HashSet};
use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::Phenotype;
use crate::frame::{validate_report, Modality, ReportDocument, ValidationFinding};

/// Gold annotation records carry at most this many phenotypes. Predictions
/// are not capped.
pub const MAX_GOLD_PHENOTYPES: usize = 5;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        source: serde_json::Error,
    },
    #[error("line {line}: duplicate report_id {report_id:?}")]
    DuplicateReportId { line: usize, report_id: String },
    #[error("line {line}: report {report_id:?} has {n} validation finding(s), first: {first}",
        n = findings.len(), first = &findings[0])]
    InvalidReport {
        line: usize,
        report_id: String,
        findings: Vec<ValidationFinding>,
    },
    #[error("line {line}: record {report_id:?} has {count} phenotypes, above the gold cap of {MAX_GOLD_PHENOTYPES}")]
    TooManyPhenotypes {
        line: usize,
        report_id: String,
        count: usize,
    },
}

fn records<R: Read>(source: R) -> impl Iterator<Item = Result<(usize, String), CorpusError>> {
    BufReader::new(source)
        .lines()
        .enumerate()
        .filter_map(|(idx, line)| match line {
            Err(err) => Some(Err(CorpusError::Io(err))),
            Ok(text) if text.trim().is_empty() => None,
            Ok(text) => Some(Ok((idx + 1, text))),
        })
}

fn load_reports_numbered<R: Read>(
    source: R,
) -> Result<Vec<(usize, ReportDocument, Vec<ValidationFinding>)>, CorpusError> {
    let mut out = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();
    for record in records(source) {
        let (line, text) = record?;
        let mut report: ReportDocument =
            serde_json::from_str(&text).map_err(|source| CorpusError::Parse { line, source })?;
        report.assign_sentence_indices();
        if !seen_ids.insert(report.report_id.clone()) {
            return Err(CorpusError::DuplicateReportId {
                line,
                report_id: report.report_id,
            });
        }
        let findings = validate_report(&report);
        out.push((line, report, findings));
    }
    Ok(out)
}

/// Loads a frame corpus without rejecting invalid reports; each report is
/// paired with its validation findings. Parse failures still error.
pub fn load_reports_lenient<R: Read>(
    source: R,
) -> Result<Vec<(ReportDocument, Vec<ValidationFinding>)>, CorpusError> {
    Ok(load_reports_numbered(source)?
        .into_iter()
        .map(|(_, report, findings)| (report, findings))
        .collect())
}

/// Loads a frame corpus; every returned report passes validation with zero
/// findings, in input order.
pub fn load_reports<R: Read>(source: R) -> Result<Vec<ReportDocument>, CorpusError> {
    let mut out = Vec::new();
    for (line, report, findings) in load_reports_numbered(source)? {
        if !findings.is_empty() {
            return Err(CorpusError::InvalidReport {
                line,
                report_id: report.report_id,
                findings,
            });
        }
        out.push(report);
    }
    Ok(out)
}

/// Writes a frame corpus as JSON Lines, in the given order.
pub fn write_reports<W: Write>(reports: &[ReportDocument], mut sink: W) -> Result<(), CorpusError> {
    for report in reports {
        serde_json::to_writer(&mut sink, report)
            .map_err(|e| CorpusError::Io(std::io::Error::other(e)))?;
        sink.write_all(b"\n")?;
    }
    Ok(())
}

/// A raw, frame-less report: pre-split sentences only. Input format of the
/// pattern extractor path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawReport {
    pub report_id: String,
    pub modality: Modality,
    pub sentences: Vec<String>,
}

/// Loads a raw-text corpus (one JSON record per line).
pub fn load_raw_reports<R: Read>(source: R) -> Result<Vec<RawReport>, CorpusError> {
    let mut out: Vec<RawReport> = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();
    for record in records(source) {
        let (line, text) = record?;
        let report: RawReport =
            serde_json::from_str(&text).map_err(|source| CorpusError::Parse { line, source })?;
        if !seen_ids.insert(report.report_id.clone()) {
            return Err(CorpusError::DuplicateReportId {
                line,
                report_id: report.report_id,
            });
        }
        out.push(report);
    }
    Ok(out)
}

/// Gold phenotype annotations for one report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldPhenotypeRecord {
    pub report_id: String,
    pub phenotypes: BTreeSet<Phenotype>,
}

/// Result of loading a phenotype file: the records plus non-fatal warnings
/// (currently only duplicate-tuple dedups).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhenotypeLoad {
    pub records: Vec<GoldPhenotypeRecord>,
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PhenotypeRecordWire {
    report_id: String,
    phenotypes: Vec<Phenotype>,
}

fn load_phenotype_records<R: Read>(
    source: R,
    cap: Option<usize>,
) -> Result<PhenotypeLoad, CorpusError> {
    let mut records_out = Vec::new();
    let mut warnings = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();
    for record in records(source) {
        let (line, text) = record?;
        let wire: PhenotypeRecordWire =
            serde_json::from_str(&text).map_err(|source| CorpusError::Parse { line, source })?;
        if !seen_ids.insert(wire.report_id.clone()) {
            return Err(CorpusError::DuplicateReportId {
                line,
                report_id: wire.report_id,
            });
        }
        let mut phenotypes = BTreeSet::new();
        for phenotype in wire.phenotypes {
            if !phenotypes.insert(phenotype) {
                warnings.push(format!(
                    "line {line}: record {:?}: duplicate phenotype ({phenotype}) removed",
                    wire.report_id
                ));
            }
        }
        if let Some(cap) = cap {
            if phenotypes.len() > cap {
                return Err(CorpusError::TooManyPhenotypes {
                    line,
                    report_id: wire.report_id,
                    count: phenotypes.len(),
                });
            }
        }
        records_out.push(GoldPhenotypeRecord {
            report_id: wire.report_id,
            phenotypes,
        });
    }
    Ok(PhenotypeLoad {
        records: records_out,
        warnings,
    })
}

/// Loads gold annotations; records above the annotation cap are rejected.
pub fn load_gold<R: Read>(source: R) -> Result<PhenotypeLoad, CorpusError> {
    load_phenotype_records(source, Some(MAX_GOLD_PHENOTYPES))
}

/// Loads predicted phenotypes; no cap applies.
pub fn load_phenotypes<R: Read>(source: R) -> Result<PhenotypeLoad, CorpusError> {
    load_phenotype_records(source, None)
}

/// Writes phenotype records as JSON Lines: records sorted by report_id,
/// tuples in (side, region, stage, lacunar) order. The output loads back to
/// an equal value.
pub fn write_phenotypes<W: Write>(
    records: &[(String, BTreeSet<Phenotype>)],
    mut sink: W,
) -> Result<(), CorpusError> {
    let mut sorted: Vec<&(String, BTreeSet<Phenotype>)> = records.iter().collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    for (report_id, phenotypes) in sorted {
        let wire = PhenotypeRecordWire {
            report_id: report_id.clone(),
            phenotypes: phenotypes.iter().copied().collect(),
        };
        serde_json::to_writer(&mut sink, &wire)
            .map_err(|e| CorpusError::Io(std::io::Error::other(e)))?;
        sink.write_all(b"\n")?;
    }
    Ok(())
}
