//! Tweet text normalization: emojis become their descriptive names, URLs,
//! hashtags and @-mentions become generic tokens, whitespace is collapsed.
//!
//! Emoji names come from a bundled table (`data/emoji_names.tsv`, codepoint
//! sequence -> lowercased short name); the table version is recorded in every
//! saved model's metadata. General text is left alone: no lowercasing,
//! stemming or spelling correction.

use std::collections::HashMap;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::corpus::LabeledCorpus;

const EMOJI_TABLE_TSV: &str = include_str!("../data/emoji_names.tsv");

/// Scheme-prefixed URLs plus bare t.co short links.
static URL_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)\bhttps?://\S+|\bt\.co/\S+").unwrap());
/// Token-initial @-mentions.
static MENTION_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(^|\s)@\w+").unwrap());
/// Token-initial hashtags; consumes the whole token so no `#` survives.
static HASHTAG_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(^|\s)#\S*").unwrap());

/// Generic token substituted for URLs.
pub const URL_TOKEN: &str = "URL";
/// Generic token substituted for hashtags.
pub const HASHTAG_TOKEN: &str = "HASHTAG";
/// Generic token substituted for @-mentions.
pub const MENTION_TOKEN: &str = "@USER";

/// Tweet text with all special entities substituted, ready for tokenization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedText(String);

impl NormalizedText {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl std::fmt::Display for NormalizedText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MentionPolicy {
    /// Replace @-mentions with [`MENTION_TOKEN`].
    #[default]
    UserToken,
    Keep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HashtagPolicy {
    /// Replace hashtags with [`HASHTAG_TOKEN`], discarding tag content.
    #[default]
    Token,
    /// Keep tag content, split at case/digit boundaries (`#BreakingNews2023`
    /// -> `Breaking News 2023`).
    Segment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct NormalizeOptions {
    pub mentions: MentionPolicy,
    pub hashtags: HashtagPolicy,
}

/// Normalize with default options.
pub fn normalize_tweet(text: &str) -> NormalizedText {
    normalize_tweet_with(text, &NormalizeOptions::default())
}

/// Normalize one tweet. Total over unicode strings; never fails.
pub fn normalize_tweet_with(text: &str, opts: &NormalizeOptions) -> NormalizedText {
    let s = URL_RE.replace_all(text, format!(" {URL_TOKEN} ").as_str());
    let s = replace_emoji(&s);
    let s = match opts.mentions {
        MentionPolicy::UserToken => MENTION_RE
            .replace_all(&s, format!("${{1}}{MENTION_TOKEN}").as_str())
            .into_owned(),
        MentionPolicy::Keep => s,
    };
    let s = match opts.hashtags {
        HashtagPolicy::Token => HASHTAG_RE
            .replace_all(&s, format!("${{1}}{HASHTAG_TOKEN}").as_str())
            .into_owned(),
        HashtagPolicy::Segment => HASHTAG_RE
            .replace_all(&s, |caps: &regex::Captures<'_>| {
                let tag = caps.get(0).unwrap().as_str();
                let lead = caps.get(1).map(|m| m.as_str()).unwrap_or("");
                let body = tag.trim_start_matches(char::is_whitespace).trim_start_matches('#');
                if body.is_empty() {
                    format!("{lead}{HASHTAG_TOKEN}")
                } else {
                    format!("{lead}{}", segment_tag(body))
                }
            })
            .into_owned(),
    };
    let collapsed: Vec<&str> = s.split_whitespace().collect();
    NormalizedText(collapsed.join(" "))
}

/// Element-wise normalization of a corpus, preserving order and ids.
pub fn normalize_corpus(corpus: &LabeledCorpus) -> Vec<(String, NormalizedText)> {
    normalize_corpus_with(corpus, &NormalizeOptions::default())
}

pub fn normalize_corpus_with(
    corpus: &LabeledCorpus,
    opts: &NormalizeOptions,
) -> Vec<(String, NormalizedText)> {
    corpus
        .iter()
        .map(|r| (r.tweet_id.clone(), normalize_tweet_with(&r.text, opts)))
        .collect()
}

/// Version string of the bundled emoji-name table.
pub fn emoji_table_version() -> &'static str {
    &emoji_table().version
}

/// True for codepoints inside the emoji blocks this module strips. Sequences
/// listed in the name table are replaced by their names before this check
/// applies; anything left in these ranges is dropped.
pub fn is_emoji_char(c: char) -> bool {
    matches!(u32::from(c),
        0x1F000..=0x1F02F   // mahjong tiles
        | 0x1F0A0..=0x1F0FF // playing cards
        | 0x1F100..=0x1F1FF // enclosed alphanumerics, regional indicators
        | 0x1F200..=0x1F2FF // enclosed ideographic
        | 0x1F300..=0x1F5FF // misc symbols and pictographs
        | 0x1F600..=0x1F64F // emoticons
        | 0x1F680..=0x1F6FF // transport and map
        | 0x1F700..=0x1F77F // alchemical
        | 0x1F780..=0x1F8FF // geometric shapes ext, arrows-c
        | 0x1F900..=0x1F9FF // supplemental symbols
        | 0x1FA00..=0x1FAFF // chess symbols, symbols ext-a
        | 0x2600..=0x26FF   // misc symbols
        | 0x2700..=0x27BF   // dingbats
        | 0x2B00..=0x2BFF   // misc symbols and arrows
        | 0xFE0E..=0xFE0F   // variation selectors
        | 0x200D            // zero-width joiner
        | 0x20E3            // combining enclosing keycap
    )
}

struct EmojiTable {
    version: String,
    /// First char of each sequence -> (full sequence, name), longest first.
    by_first: HashMap<char, Vec<(Vec<char>, String)>>,
}

static EMOJI_TABLE: LazyLock<EmojiTable> = LazyLock::new(|| {
    let mut lines = EMOJI_TABLE_TSV.lines();
    let header = lines.next().unwrap_or_default();
    let version = header.trim_start_matches('#').trim().to_string();
    let mut by_first: HashMap<char, Vec<(Vec<char>, String)>> = HashMap::new();
    for line in lines {
        let Some((codes, name)) = line.split_once('\t') else {
            continue;
        };
        let seq: Vec<char> = codes
            .split(' ')
            .filter_map(|h| u32::from_str_radix(h, 16).ok().and_then(char::from_u32))
            .collect();
        if let Some(&first) = seq.first() {
            by_first.entry(first).or_default().push((seq, name.to_string()));
        }
    }
    for entries in by_first.values_mut() {
        entries.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
    }
    EmojiTable { version, by_first }
});

fn emoji_table() -> &'static EmojiTable {
    &EMOJI_TABLE
}

/// Replace table sequences by their names (space-delimited) and drop any
/// remaining codepoints in the emoji blocks.
fn replace_emoji(text: &str) -> String {
    let table = emoji_table();
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if let Some(candidates) = table.by_first.get(&c) {
            if let Some((seq, name)) = candidates
                .iter()
                .find(|(seq, _)| chars[i..].starts_with(seq))
            {
                out.push(' ');
                out.push_str(name);
                out.push(' ');
                i += seq.len();
                continue;
            }
        }
        if is_emoji_char(c) {
            out.push(' ');
        } else {
            out.push(c);
        }
        i += 1;
    }
    out
}

/// Split a hashtag body at lower->upper and alpha<->digit boundaries.
fn segment_tag(body: &str) -> String {
    let mut words: Vec<String> = Vec::new();
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for c in body.chars() {
        let boundary = match prev {
            Some(p) => {
                (p.is_lowercase() && c.is_uppercase())
                    || (p.is_alphabetic() && c.is_ascii_digit())
                    || (p.is_ascii_digit() && c.is_alphabetic())
            }
            None => false,
        };
        if boundary && !current.is_empty() {
            words.push(std::mem::take(&mut current));
        }
        current.push(c);
        prev = Some(c);
    }
    if !current.is_empty() {
        words.push(current);
    }
    words.join(" ")
}
