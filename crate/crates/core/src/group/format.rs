//! Text and JSON forms of presentations.
//!
//! Text:
//! ```text
//! # trefoil
//! gens: x, y
//! rel: x y x Y X Y
//! ```
//! An upper-cased name is the inverse generator; `x^k` repeats a letter.
//!
//! JSON: `{"generators":["x","y"],"relators":[[1,2,-1,-2]]}` with 1-based
//! signed indices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::presentation::Presentation;
use crate::group::word::{invert_name, Letter, Word};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i64>>,
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        PresentationJson {
            generators: p.names().to_vec(),
            relators: p.relators().iter().map(|r| r.to_signed()).collect(),
        }
    }
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = Error;

    fn try_from(j: PresentationJson) -> Result<Self> {
        let n = j.generators.len();
        let rels = j
            .relators
            .iter()
            .map(|r| Word::from_signed(r, n))
            .collect::<Result<Vec<_>>>()?;
        Presentation::with_names(j.generators, rels)
    }
}

pub fn to_json(p: &Presentation) -> String {
    serde_json::to_string(&PresentationJson::from(p)).expect("serializable")
}

pub fn from_json(s: &str) -> Result<Presentation> {
    let j: PresentationJson = serde_json::from_str(s)?;
    Presentation::try_from(j)
}

/// Parse either format, sniffing a leading `{` for JSON.
pub fn parse_any(s: &str) -> Result<Presentation> {
    if s.trim_start().starts_with('{') {
        from_json(s)
    } else {
        parse_text(s)
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn parse_text(s: &str) -> Result<Presentation> {
    let mut names: Option<Vec<String>> = None;
    let mut rels: Vec<(usize, usize, &str)> = Vec::new();
    let mut comments = Vec::new();
    for (ln, raw) in s.lines().enumerate() {
        let ln = ln + 1;
        if let Some(c) = raw.trim_start().strip_prefix('#') {
            comments.push(c.trim().to_string());
        }
        let line = strip_comment(raw);
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let col = line.len() - trimmed.len() + 1;
        if let Some(rest) = trimmed.strip_prefix("gens:") {
            if names.is_some() {
                return Err(Error::parse(ln, col, "duplicate `gens:` line"));
            }
            names = Some(
                rest.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(str::to_string)
                    .collect(),
            );
        } else if let Some(rest) = trimmed.strip_prefix("rel:") {
            rels.push((ln, col + 4, rest));
        } else {
            return Err(Error::parse(ln, col, format!("expected `gens:` or `rel:`, found {trimmed:?}")));
        }
    }
    let names = names.ok_or_else(|| Error::parse(1, 1, "missing `gens:` line"))?;
    let mut words = Vec::with_capacity(rels.len());
    for (ln, col, body) in rels {
        words.push(parse_word_text(body, &names).map_err(|(c, m)| Error::parse(ln, col + c, m))?);
    }
    let mut p = Presentation::with_names(names, words)?;
    if !comments.is_empty() {
        p.metadata = Some(comments.join("\n"));
    }
    Ok(p)
}

/// Parse a whitespace-separated word; errors carry a 0-based column offset.
pub(crate) fn parse_word_text(body: &str, names: &[String]) -> std::result::Result<Word, (usize, String)> {
    let mut letters = Vec::new();
    let mut offset = 0;
    for tok in body.split_inclusive(char::is_whitespace) {
        let t = tok.trim();
        let col = offset;
        offset += tok.len();
        if t.is_empty() || t == "1" {
            continue;
        }
        let (base, power) = match t.split_once('^') {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|_| (col, format!("bad exponent in {t:?}")))?),
            None => (t, 1),
        };
        let letter = lookup(base, names).ok_or_else(|| (col, format!("unknown generator {base:?}")))?;
        let letter = if power < 0 { letter.inv() } else { letter };
        for _ in 0..power.unsigned_abs() {
            letters.push(letter);
        }
    }
    Word::reduce(letters, names.len()).map_err(|e| (0, e.to_string()))
}

fn lookup(tok: &str, names: &[String]) -> Option<Letter> {
    if let Some(i) = names.iter().position(|n| n == tok) {
        return Some(Letter::pos(i as u32));
    }
    names
        .iter()
        .position(|n| invert_name(n) == tok)
        .map(|i| Letter::neg(i as u32))
}
