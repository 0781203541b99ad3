//! Spatial frame data model: spans, frame elements, sentences, and reports.
//!
//! A frame is anchored by a spatial trigger (usually a preposition such as
//! "in" or "of") and carries zero or more typed elements, each a character
//! span into its sentence. All offsets count Unicode scalar values, not
//! bytes, so producers in other languages agree on positions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A character range into a sentence, with the surface text it covers.
///
/// `start` is inclusive, `end` exclusive, both counted in chars.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub text: String,
}

impl Span {
    pub fn new(start: usize, end: usize, text: impl Into<String>) -> Self {
        Span {
            start,
            end,
            text: text.into(),
        }
    }

    pub fn char_len(&self) -> usize {
        self.text.chars().count()
    }

    /// True when the two character ranges intersect.
    pub fn overlaps(&self, other: &Span) -> bool {
        self.start.max(other.start) < self.end.min(other.end)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}) {:?}", self.start, self.end, self.text)
    }
}

/// The closed set of frame element kinds. Parsing any other label fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElementKind {
    Figure,
    Ground,
    Hedge,
    Diagnosis,
    RelativePosition,
    Distance,
    PositionStatus,
    Reason,
    AssociatedProcess,
}

impl ElementKind {
    pub const ALL: [ElementKind; 9] = [
        ElementKind::Figure,
        ElementKind::Ground,
        ElementKind::Hedge,
        ElementKind::Diagnosis,
        ElementKind::RelativePosition,
        ElementKind::Distance,
        ElementKind::PositionStatus,
        ElementKind::Reason,
        ElementKind::AssociatedProcess,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ElementKind::Figure => "Figure",
            ElementKind::Ground => "Ground",
            ElementKind::Hedge => "Hedge",
            ElementKind::Diagnosis => "Diagnosis",
            ElementKind::RelativePosition => "RelativePosition",
            ElementKind::Distance => "Distance",
            ElementKind::PositionStatus => "PositionStatus",
            ElementKind::Reason => "Reason",
            ElementKind::AssociatedProcess => "AssociatedProcess",
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ElementKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ElementKind::ALL
            .iter()
            .copied()
            .find(|k| k.label() == s)
            .ok_or_else(|| format!("unknown element kind {s:?}"))
    }
}

/// One typed element of a spatial frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameElement {
    pub kind: ElementKind,
    #[serde(flatten)]
    pub span: Span,
}

impl FrameElement {
    pub fn new(kind: ElementKind, span: Span) -> Self {
        FrameElement { kind, span }
    }
}

/// A spatial frame: one trigger plus its elements, tied to a sentence.
///
/// `sentence_index` is derived from position within the report and is not
/// part of the wire format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpatialFrame {
    pub trigger: Span,
    pub elements: Vec<FrameElement>,
    #[serde(skip)]
    pub sentence_index: usize,
}

impl SpatialFrame {
    pub fn new(trigger: Span, elements: Vec<FrameElement>, sentence_index: usize) -> Self {
        SpatialFrame {
            trigger,
            elements,
            sentence_index,
        }
    }

    /// All spans of the requested kind, in ascending start order.
    pub fn elements_of(&self, kind: ElementKind) -> Vec<&Span> {
        let mut spans: Vec<&Span> = self
            .elements
            .iter()
            .filter(|e| e.kind == kind)
            .map(|e| &e.span)
            .collect();
        spans.sort_by_key(|s| (s.start, s.end));
        spans
    }
}

/// Imaging modality of a report. The keyword tables fork on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Modality {
    CT,
    MRI,
}

impl Modality {
    pub fn label(&self) -> &'static str {
        match self {
            Modality::CT => "CT",
            Modality::MRI => "MRI",
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Modality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "CT" => Ok(Modality::CT),
            "MRI" => Ok(Modality::MRI),
            other => Err(format!("unknown modality {other:?}")),
        }
    }
}

/// One pre-split sentence of a report with its frames in trigger order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub frames: Vec<SpatialFrame>,
}

impl Sentence {
    pub fn new(text: impl Into<String>, frames: Vec<SpatialFrame>) -> Self {
        Sentence {
            text: text.into(),
            frames,
        }
    }
}

/// A report: id, modality, and its sentences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub report_id: String,
    pub modality: Modality,
    pub sentences: Vec<Sentence>,
}

impl ReportDocument {
    pub fn new(report_id: impl Into<String>, modality: Modality, sentences: Vec<Sentence>) -> Self {
        let mut doc = ReportDocument {
            report_id: report_id.into(),
            modality,
            sentences,
        };
        doc.assign_sentence_indices();
        doc
    }

    /// Rewrites each frame's `sentence_index` to match its position.
    /// Called after deserialization, where the field is absent.
    pub fn assign_sentence_indices(&mut self) {
        for (idx, sentence) in self.sentences.iter_mut().enumerate() {
            for frame in &mut sentence.frames {
                frame.sentence_index = idx;
            }
        }
    }
}

/// A structural problem found in a report. Findings are data, not failures;
/// an empty list means every invariant holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationFinding {
    /// Sentence position, when the finding is tied to one.
    pub sentence: Option<usize>,
    /// Frame position within the sentence, when tied to one.
    pub frame: Option<usize>,
    pub detail: String,
}

impl ValidationFinding {
    fn report(detail: impl Into<String>) -> Self {
        ValidationFinding {
            sentence: None,
            frame: None,
            detail: detail.into(),
        }
    }

    fn frame(sentence: usize, frame: usize, detail: impl Into<String>) -> Self {
        ValidationFinding {
            sentence: Some(sentence),
            frame: Some(frame),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for ValidationFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.sentence, self.frame) {
            (Some(s), Some(fr)) => write!(f, "sentence {s}, frame {fr}: {}", self.detail),
            (Some(s), None) => write!(f, "sentence {s}: {}", self.detail),
            _ => f.write_str(&self.detail),
        }
    }
}

fn check_span(
    what: &str,
    span: &Span,
    sentence_chars: &[char],
    s_idx: usize,
    f_idx: usize,
    out: &mut Vec<ValidationFinding>,
) {
    if span.start >= span.end {
        out.push(ValidationFinding::frame(
            s_idx,
            f_idx,
            format!(
                "{what}: span start < end violated ({} >= {})",
                span.start, span.end
            ),
        ));
        return;
    }
    if span.end > sentence_chars.len() {
        out.push(ValidationFinding::frame(
            s_idx,
            f_idx,
            format!(
                "{what}: span end {} exceeds sentence length {}",
                span.end,
                sentence_chars.len()
            ),
        ));
        return;
    }
    if span.char_len() != span.end - span.start {
        out.push(ValidationFinding::frame(
            s_idx,
            f_idx,
            format!(
                "{what}: text length {} does not equal end - start = {}",
                span.char_len(),
                span.end - span.start
            ),
        ));
        return;
    }
    let covered: String = sentence_chars[span.start..span.end].iter().collect();
    if covered != span.text {
        out.push(ValidationFinding::frame(
            s_idx,
            f_idx,
            format!(
                "{what}: text {:?} does not equal sentence substring {:?} at [{}, {})",
                span.text, covered, span.start, span.end
            ),
        ));
    }
}

/// Checks every span and ordering invariant of a report.
///
/// Pure: repeated calls on the same value yield the same findings.
pub fn validate_report(report: &ReportDocument) -> Vec<ValidationFinding> {
    let mut out = Vec::new();
    if report.report_id.is_empty() {
        out.push(ValidationFinding::report("report_id is empty"));
    }
    for (s_idx, sentence) in report.sentences.iter().enumerate() {
        let chars: Vec<char> = sentence.text.chars().collect();
        let mut prev_start: Option<usize> = None;
        for (f_idx, frame) in sentence.frames.iter().enumerate() {
            if frame.sentence_index != s_idx {
                out.push(ValidationFinding::frame(
                    s_idx,
                    f_idx,
                    format!(
                        "frame sentence_index {} does not match sentence position {}",
                        frame.sentence_index, s_idx
                    ),
                ));
            }
            if let Some(prev) = prev_start {
                if frame.trigger.start < prev {
                    out.push(ValidationFinding::frame(
                        s_idx,
                        f_idx,
                        "frames are not ordered by trigger start offset".to_string(),
                    ));
                }
            }
            prev_start = Some(frame.trigger.start);
            check_span("trigger", &frame.trigger, &chars, s_idx, f_idx, &mut out);
            for element in &frame.elements {
                check_span(
                    &format!("{} element", element.kind),
                    &element.span,
                    &chars,
                    s_idx,
                    f_idx,
                    &mut out,
                );
            }
        }
    }
    out
}
