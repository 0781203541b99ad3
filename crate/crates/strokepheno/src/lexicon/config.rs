//! Human-editable lexicon config: one `[section]` per table, one phrase per
//! line, `#` comments. `region:`, `compound:`, `territory:`, and `cue:`
//! sections are keyed; the value lines of `compound:` and `territory:`
//! sections are region labels rather than phrases.

use std::collections::BTreeSet;
use std::str::FromStr;

use super::{BrainRegion, ConstraintCue, Lexicon, LexiconError};

pub(super) const IS_FINDING_CT: &str = "is-finding-ct";
pub(super) const IS_FINDING_MRI: &str = "is-finding-mri";
pub(super) const STAGE_ACUTE_SUBACUTE: &str = "stage-acute-subacute";
pub(super) const STAGE_SUBACUTE: &str = "stage-subacute";
pub(super) const STAGE_ACUTE: &str = "stage-acute";
pub(super) const STAGE_CHRONIC: &str = "stage-chronic";
pub(super) const LACUNAR: &str = "lacunar";
pub(super) const LATERALITY_LEFT: &str = "laterality-left";
pub(super) const LATERALITY_RIGHT: &str = "laterality-right";
pub(super) const LATERALITY_BILATERAL: &str = "laterality-bilateral";
pub(super) const LATERALITY_BILATERAL_ANATOMY: &str = "laterality-bilateral-anatomy";

struct Section {
    name: String,
    line: usize,
    entries: Vec<String>,
}

fn parse_sections(input: &str) -> Result<Vec<Section>, LexiconError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let Some(name) = header.strip_suffix(']') else {
                return Err(LexiconError::Parse {
                    line: line_no,
                    message: format!("unterminated section header {line:?}"),
                });
            };
            let name = name.trim().to_string();
            if name.is_empty() {
                return Err(LexiconError::Parse {
                    line: line_no,
                    message: "empty section name".to_string(),
                });
            }
            if sections.iter().any(|s| s.name == name) {
                return Err(LexiconError::Parse {
                    line: line_no,
                    message: format!("duplicate section {name:?}"),
                });
            }
            sections.push(Section {
                name,
                line: line_no,
                entries: Vec::new(),
            });
        } else {
            let Some(section) = sections.last_mut() else {
                return Err(LexiconError::Parse {
                    line: line_no,
                    message: format!("entry {line:?} appears before any section header"),
                });
            };
            section.entries.push(super::normalize(line));
        }
    }
    Ok(sections)
}

fn parse_region_set(section: &Section) -> Result<BTreeSet<BrainRegion>, LexiconError> {
    section
        .entries
        .iter()
        .map(|label| {
            BrainRegion::from_str(label).map_err(|message| LexiconError::Parse {
                line: section.line,
                message,
            })
        })
        .collect()
}

pub(super) fn apply(base: Option<&Lexicon>, input: &str) -> Result<Lexicon, LexiconError> {
    let mut lexicon = match base {
        Some(existing) => existing.clone(),
        None => Lexicon {
            is_finding_ct: Vec::new(),
            is_finding_mri: Vec::new(),
            stage_acute_subacute: Vec::new(),
            stage_subacute: Vec::new(),
            stage_acute: Vec::new(),
            stage_chronic: Vec::new(),
            lacunar: Vec::new(),
            laterality_left: Vec::new(),
            laterality_right: Vec::new(),
            laterality_bilateral: Vec::new(),
            laterality_bilateral_anatomy: Vec::new(),
            region_keywords: Default::default(),
            compound_regions: Default::default(),
            territory_map: Default::default(),
            cue_phrases: Default::default(),
        },
    };
    for section in parse_sections(input)? {
        match section.name.as_str() {
            IS_FINDING_CT => lexicon.is_finding_ct = section.entries,
            IS_FINDING_MRI => lexicon.is_finding_mri = section.entries,
            STAGE_ACUTE_SUBACUTE => lexicon.stage_acute_subacute = section.entries,
            STAGE_SUBACUTE => lexicon.stage_subacute = section.entries,
            STAGE_ACUTE => lexicon.stage_acute = section.entries,
            STAGE_CHRONIC => lexicon.stage_chronic = section.entries,
            LACUNAR => lexicon.lacunar = section.entries,
            LATERALITY_LEFT => lexicon.laterality_left = section.entries,
            LATERALITY_RIGHT => lexicon.laterality_right = section.entries,
            LATERALITY_BILATERAL => lexicon.laterality_bilateral = section.entries,
            LATERALITY_BILATERAL_ANATOMY => lexicon.laterality_bilateral_anatomy = section.entries,
            name => {
                if let Some(label) = name.strip_prefix("region:") {
                    let region =
                        BrainRegion::from_str(label).map_err(|message| LexiconError::Parse {
                            line: section.line,
                            message,
                        })?;
                    lexicon.region_keywords.insert(region, section.entries);
                } else if let Some(word) = name.strip_prefix("compound:") {
                    let regions = parse_region_set(&section)?;
                    lexicon
                        .compound_regions
                        .insert(super::normalize(word), regions);
                } else if let Some(phrase) = name.strip_prefix("territory:") {
                    let regions = parse_region_set(&section)?;
                    lexicon
                        .territory_map
                        .insert(super::normalize(phrase), regions);
                } else if let Some(label) = name.strip_prefix("cue:") {
                    let cue =
                        ConstraintCue::from_str(label).map_err(|message| LexiconError::Parse {
                            line: section.line,
                            message,
                        })?;
                    lexicon.cue_phrases.insert(cue, section.entries);
                } else {
                    return Err(LexiconError::Parse {
                        line: section.line,
                        message: format!("unknown section {name:?}"),
                    });
                }
            }
        }
    }
    lexicon.validate()?;
    Ok(lexicon)
}

fn push_section<'a>(out: &mut String, name: &str, entries: impl IntoIterator<Item = &'a str>) {
    out.push('[');
    out.push_str(name);
    out.push_str("]\n");
    for entry in entries {
        out.push_str(entry);
        out.push('\n');
    }
    out.push('\n');
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

pub(super) fn dump(lexicon: &Lexicon) -> String {
    let mut out = String::new();

    push_section(&mut out, IS_FINDING_CT, strs(&lexicon.is_finding_ct));
    push_section(&mut out, IS_FINDING_MRI, strs(&lexicon.is_finding_mri));
    push_section(
        &mut out,
        STAGE_ACUTE_SUBACUTE,
        strs(&lexicon.stage_acute_subacute),
    );
    push_section(&mut out, STAGE_SUBACUTE, strs(&lexicon.stage_subacute));
    push_section(&mut out, STAGE_ACUTE, strs(&lexicon.stage_acute));
    push_section(&mut out, STAGE_CHRONIC, strs(&lexicon.stage_chronic));
    push_section(&mut out, LACUNAR, strs(&lexicon.lacunar));
    push_section(&mut out, LATERALITY_LEFT, strs(&lexicon.laterality_left));
    push_section(&mut out, LATERALITY_RIGHT, strs(&lexicon.laterality_right));
    push_section(
        &mut out,
        LATERALITY_BILATERAL,
        strs(&lexicon.laterality_bilateral),
    );
    push_section(
        &mut out,
        LATERALITY_BILATERAL_ANATOMY,
        strs(&lexicon.laterality_bilateral_anatomy),
    );
    for (region, phrases) in &lexicon.region_keywords {
        push_section(
            &mut out,
            &format!("region:{}", region.label()),
            strs(phrases),
        );
    }
    for (word, regions) in &lexicon.compound_regions {
        push_section(
            &mut out,
            &format!("compound:{word}"),
            regions.iter().map(|r| r.label()),
        );
    }
    for (phrase, regions) in &lexicon.territory_map {
        push_section(
            &mut out,
            &format!("territory:{phrase}"),
            regions.iter().map(|r| r.label()),
        );
    }
    for (cue, phrases) in &lexicon.cue_phrases {
        push_section(&mut out, &format!("cue:{}", cue.label()), strs(phrases));
    }
    out
}
