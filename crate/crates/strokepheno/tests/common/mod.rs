#![allow(dead_code)]

pub mod gen;

use strokepheno::{
    ElementKind, FrameElement, Modality, ReportDocument, Sentence, Span, SpatialFrame,
};

/// Span of the first occurrence of `needle` in `sentence`, in chars.
pub fn span_of(sentence: &str, needle: &str) -> Span {
    let byte_start = sentence
        .find(needle)
        .unwrap_or_else(|| panic!("{needle:?} not in {sentence:?}"));
    let start = sentence[..byte_start].chars().count();
    Span::new(start, start + needle.chars().count(), needle)
}

/// Span of the nth (0-based) whole-word occurrence of `word`.
pub fn span_of_word_nth(sentence: &str, word: &str, n: usize) -> Span {
    let mut seen = 0;
    for (i, _) in sentence.match_indices(word) {
        let before_ok = sentence[..i]
            .chars()
            .next_back()
            .is_none_or(|c| !c.is_alphanumeric());
        let after_ok = sentence[i + word.len()..]
            .chars()
            .next()
            .is_none_or(|c| !c.is_alphanumeric());
        if before_ok && after_ok {
            if seen == n {
                let start = sentence[..i].chars().count();
                return Span::new(start, start + word.chars().count(), word);
            }
            seen += 1;
        }
    }
    panic!("word occurrence {n} of {word:?} not in {sentence:?}");
}

pub fn span_of_word(sentence: &str, word: &str) -> Span {
    span_of_word_nth(sentence, word, 0)
}

pub fn element(kind: ElementKind, span: Span) -> FrameElement {
    FrameElement::new(kind, span)
}

/// The three-sentence golden report: acute right cerebellum (via chaining),
/// acute right brainstem, chronic left cerebellum.
pub fn granular_report() -> ReportDocument {
    let s1 = "There is acute infarction in the lateral aspect of right cerebellum.";
    let s2 = "There are several small acute infarctions in the right midbrain.";
    let s3 = "Encephalomalacia and gliosis are seen in the left cerebellum compatible with chronic infarct.";
    ReportDocument::new(
        "fig2",
        Modality::CT,
        vec![
            Sentence::new(
                s1,
                vec![
                    SpatialFrame::new(
                        span_of_word(s1, "in"),
                        vec![
                            element(ElementKind::Figure, span_of(s1, "acute infarction")),
                            element(ElementKind::Ground, span_of(s1, "the lateral aspect")),
                        ],
                        0,
                    ),
                    SpatialFrame::new(
                        span_of_word(s1, "of"),
                        vec![
                            element(ElementKind::Figure, span_of(s1, "the lateral aspect")),
                            element(ElementKind::Ground, span_of(s1, "right cerebellum")),
                        ],
                        0,
                    ),
                ],
            ),
            Sentence::new(
                s2,
                vec![SpatialFrame::new(
                    span_of_word(s2, "in"),
                    vec![
                        element(
                            ElementKind::Figure,
                            span_of(s2, "several small acute infarctions"),
                        ),
                        element(ElementKind::Ground, span_of(s2, "the right midbrain")),
                    ],
                    1,
                )],
            ),
            Sentence::new(
                s3,
                vec![SpatialFrame::new(
                    span_of_word(s3, "in"),
                    vec![
                        element(
                            ElementKind::Figure,
                            span_of(s3, "Encephalomalacia and gliosis"),
                        ),
                        element(ElementKind::Ground, span_of(s3, "the left cerebellum")),
                        element(ElementKind::Hedge, span_of(s3, "compatible with")),
                        element(ElementKind::Diagnosis, span_of(s3, "chronic infarct")),
                    ],
                    2,
                )],
            ),
        ],
    )
}
