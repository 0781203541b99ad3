//! Pattern-based frame extraction from raw sentences.
//!
//! A deterministic stand-in for a learned extractor so the pipeline runs
//! end-to-end from plain text: triggers come from a fixed preposition list,
//! chunks are split at triggers, punctuation, relative pronouns, report
//! verbs, and hedge markers, and elements are picked by lexicon hits.

use crate::frame::{ElementKind, FrameElement, Modality, Span, SpatialFrame};
use crate::lexicon::{Laterality, Lexicon};

const TRIGGERS: [&str; 9] = [
    "in",
    "within",
    "of",
    "on",
    "at",
    "involving",
    "along",
    "near",
    "throughout",
];

const HEDGES: [&str; 6] = [
    "consistent with",
    "suggesting",
    "suggestive of",
    "likely represents",
    "compatible with",
    "may represent",
];

// Tokens that close a chunk without joining one: relative pronouns plus the
// copulas and report verbs that separate a finding from its location.
const BREAKERS: [&str; 26] = [
    "which",
    "that",
    "who",
    "whom",
    "is",
    "are",
    "was",
    "were",
    "be",
    "been",
    "being",
    "noted",
    "seen",
    "demonstrated",
    "demonstrates",
    "demonstrating",
    "shows",
    "showing",
    "shown",
    "reveals",
    "revealed",
    "identified",
    "observed",
    "visualized",
    "appears",
    "appear",
];

#[derive(Debug)]
struct Token {
    start: usize,
    end: usize,
    text: String,
}

impl Token {
    fn core_word(&self) -> String {
        self.text
            .trim_matches(|c: char| !c.is_alphanumeric())
            .to_lowercase()
    }

    fn has_clause_punctuation(&self) -> bool {
        self.text.contains([',', ';', ':'])
    }
}

fn tokenize(sentence: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut start = None;
    let mut buf = String::new();
    let mut len = 0;
    for (i, c) in sentence.chars().enumerate() {
        len = i + 1;
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    start: s,
                    end: i,
                    text: std::mem::take(&mut buf),
                });
            }
        } else {
            if start.is_none() {
                start = Some(i);
            }
            buf.push(c);
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            start: s,
            end: len,
            text: buf,
        });
    }
    tokens
}

#[derive(Debug, Clone, Copy)]
struct HedgeOccurrence {
    start: usize,
    end: usize,
    first_token: usize,
    last_token: usize,
}

fn find_hedges(tokens: &[Token], chars: &[char]) -> Vec<HedgeOccurrence> {
    let hedge_words: Vec<Vec<&str>> = HEDGES
        .iter()
        .map(|h| h.split_whitespace().collect())
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let mut matched = None;
        for words in &hedge_words {
            if i + words.len() <= tokens.len()
                && words
                    .iter()
                    .enumerate()
                    .all(|(k, w)| tokens[i + k].core_word() == *w)
            {
                // Prefer the longest hedge starting here.
                if matched.is_none_or(|m: usize| words.len() > m) {
                    matched = Some(words.len());
                }
            }
        }
        if let Some(len) = matched {
            let (start, _) = trim_token(&tokens[i], chars);
            let (_, end) = trim_token(&tokens[i + len - 1], chars);
            out.push(HedgeOccurrence {
                start,
                end,
                first_token: i,
                last_token: i + len - 1,
            });
            i += len;
        } else {
            i += 1;
        }
    }
    out
}

/// Char range of a token with non-alphanumeric edges stripped, so spans for
/// triggers and hedges exclude attached punctuation.
fn trim_token(token: &Token, chars: &[char]) -> (usize, usize) {
    let mut start = token.start;
    let mut end = token.end;
    while start < end && !chars[start].is_alphanumeric() {
        start += 1;
    }
    while end > start && !chars[end - 1].is_alphanumeric() {
        end -= 1;
    }
    (start, end)
}

#[derive(Debug)]
struct Chunk {
    start: usize,
    end: usize,
    text: String,
}

/// Closes the current token run into a chunk, trimming non-alphanumeric
/// edges; runs with nothing alphanumeric are dropped.
fn flush_run(run: &mut Vec<usize>, tokens: &[Token], chars: &[char], chunks: &mut Vec<Chunk>) {
    if run.is_empty() {
        return;
    }
    let mut start = tokens[run[0]].start;
    let mut end = tokens[*run.last().unwrap()].end;
    run.clear();
    while start < end && !chars[start].is_alphanumeric() {
        start += 1;
    }
    while end > start && !chars[end - 1].is_alphanumeric() {
        end -= 1;
    }
    if start < end {
        chunks.push(Chunk {
            start,
            end,
            text: chars[start..end].iter().collect(),
        });
    }
}

/// Extracts frames from one sentence. Deterministic in (sentence, modality,
/// lexicon); sentences without a trigger-anchored finding yield no frames.
pub fn extract_frames(sentence: &str, modality: Modality, lexicon: &Lexicon) -> Vec<SpatialFrame> {
    let chars: Vec<char> = sentence.chars().collect();
    let tokens = tokenize(sentence);
    let hedges = find_hedges(&tokens, &chars);
    let in_hedge = |idx: usize| {
        hedges
            .iter()
            .any(|h| (h.first_token..=h.last_token).contains(&idx))
    };

    let mut triggers: Vec<&Token> = Vec::new();
    let mut chunks: Vec<Chunk> = Vec::new();
    let mut run: Vec<usize> = Vec::new();
    for (idx, token) in tokens.iter().enumerate() {
        let word = token.core_word();
        if in_hedge(idx) {
            flush_run(&mut run, &tokens, &chars, &mut chunks);
        } else if TRIGGERS.contains(&word.as_str()) {
            flush_run(&mut run, &tokens, &chars, &mut chunks);
            triggers.push(token);
        } else if BREAKERS.contains(&word.as_str()) || word.is_empty() {
            flush_run(&mut run, &tokens, &chars, &mut chunks);
        } else {
            run.push(idx);
            if token.has_clause_punctuation() {
                flush_run(&mut run, &tokens, &chars, &mut chunks);
            }
        }
    }
    flush_run(&mut run, &tokens, &chars, &mut chunks);

    let figure_like = |chunk: &Chunk| {
        lexicon.match_is_finding(&chunk.text, modality)
            || lexicon.match_stage_keyword(&chunk.text).is_some()
            || lexicon.match_lacunarity(&chunk.text)
    };
    let ground_like = |chunk: &Chunk| {
        !lexicon.match_region(&chunk.text).is_empty()
            || lexicon.match_laterality(&chunk.text) != Laterality::Unspecified
    };

    let mut frames = Vec::new();
    for (t_idx, trigger) in triggers.iter().enumerate() {
        let figure = chunks
            .iter()
            .rfind(|c| c.end <= trigger.start && figure_like(c));
        let ground = chunks
            .iter()
            .find(|c| c.start >= trigger.end && ground_like(c));
        if figure.is_none() && ground.is_none() {
            continue;
        }

        let mut elements = Vec::new();
        if let Some(chunk) = figure {
            elements.push(FrameElement::new(
                ElementKind::Figure,
                Span::new(chunk.start, chunk.end, chunk.text.clone()),
            ));
        }
        if let Some(chunk) = ground {
            elements.push(FrameElement::new(
                ElementKind::Ground,
                Span::new(chunk.start, chunk.end, chunk.text.clone()),
            ));
        }
        // The first hedge after this trigger but before the next one carries
        // the diagnosis phrasing.
        let next_trigger_start = triggers
            .get(t_idx + 1)
            .map(|t| t.start)
            .unwrap_or(usize::MAX);
        let hedge = hedges
            .iter()
            .find(|h| h.start >= trigger.end && h.start < next_trigger_start);
        if let Some(hedge) = hedge {
            let text: String = chars[hedge.start..hedge.end].iter().collect();
            elements.push(FrameElement::new(
                ElementKind::Hedge,
                Span::new(hedge.start, hedge.end, text),
            ));
            if let Some(chunk) = chunks.iter().find(|c| c.start >= hedge.end) {
                if figure_like(chunk) {
                    elements.push(FrameElement::new(
                        ElementKind::Diagnosis,
                        Span::new(chunk.start, chunk.end, chunk.text.clone()),
                    ));
                }
            }
        }

        elements.sort_by_key(|e| (e.span.start, e.span.end));
        let (trigger_start, trigger_end) = trim_token(trigger, &chars);
        let trigger_text: String = chars[trigger_start..trigger_end].iter().collect();
        frames.push(SpatialFrame::new(
            Span::new(trigger_start, trigger_end, trigger_text),
            elements,
            0,
        ));
    }
    frames
}
