//! Plain-text 1-knot presentation files.
//!
//! Whitespace-separated tokens, one directive per line:
//!
//! ```text
//! knot trefoil
//! gens x y
//! rel x y x Y X Y
//! meridian x
//! longitude x y x y x y X X X X X X
//! ```
//!
//! A lowercase token names a generator; the same token uppercased is its
//! inverse.  Blank lines and `#` comments are skipped.  A `longitude`
//! line with no tokens declares the empty word (the unknot case).

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::fpgroup::{GroupPresentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing peripheral word: {0}")]
    MissingPeripheral(&'static str),
    #[error("cannot read file: {0}")]
    Io(String),
}

/// A named 1-knot presentation with meridian and longitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotPresentation {
    pub name: String,
    pub group: GroupPresentation,
}

impl fmt::Display for KnotPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "knot: {}", self.name)?;
        write!(f, "{}", self.group)
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> KnotFileError {
    KnotFileError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_word(
    tokens: &[&str],
    line: usize,
    indices: &HashMap<String, usize>,
) -> Result<Word, KnotFileError> {
    let mut letters = Vec::new();
    for token in tokens {
        let lower = token.to_lowercase();
        let exponent = if *token == lower {
            1
        } else if *token == token.to_uppercase() {
            -1
        } else {
            return Err(parse_error(
                line,
                format!("mixed-case token `{token}` is neither a generator nor an inverse"),
            ));
        };
        let Some(&index) = indices.get(&lower) else {
            return Err(parse_error(line, format!("undeclared generator `{lower}`")));
        };
        letters.push((index, exponent));
    }
    Ok(Word::from_letters(letters))
}

/// Parses knot-file text.  See the module docs for the format.
pub fn parse_knot_str(input: &str) -> Result<KnotPresentation, KnotFileError> {
    let mut name: Option<String> = None;
    let mut indices: HashMap<String, usize> = HashMap::new();
    let mut group: Option<GroupPresentation> = None;
    let mut relators: Vec<Word> = Vec::new();
    let mut meridian: Option<Word> = None;
    let mut longitude: Option<Word> = None;

    for (lineno, raw) in input.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else {
            continue;
        };
        let rest: Vec<&str> = tokens.collect();
        match directive {
            "knot" => {
                if name.is_some() {
                    return Err(parse_error(line, "duplicate `knot` line"));
                }
                if rest.len() != 1 {
                    return Err(parse_error(line, "`knot` takes exactly one name"));
                }
                name = Some(rest[0].to_string());
            }
            "gens" => {
                if group.is_some() {
                    return Err(parse_error(line, "duplicate `gens` line"));
                }
                if rest.is_empty() {
                    return Err(parse_error(line, "`gens` needs at least one generator"));
                }
                for (i, token) in rest.iter().enumerate() {
                    if *token != token.to_lowercase() {
                        return Err(parse_error(
                            line,
                            format!("generator `{token}` must be lowercase"),
                        ));
                    }
                    if indices.insert(token.to_string(), i).is_some() {
                        return Err(parse_error(line, format!("duplicate generator `{token}`")));
                    }
                }
                group = Some(GroupPresentation::new(
                    rest.iter().map(|s| s.to_string()).collect(),
                ));
            }
            "rel" | "meridian" | "longitude" => {
                if group.is_none() {
                    return Err(parse_error(line, "`gens` must come first"));
                }
                let word = parse_word(&rest, line, &indices)?;
                match directive {
                    "rel" => relators.push(word),
                    "meridian" => {
                        if meridian.replace(word).is_some() {
                            return Err(parse_error(line, "duplicate `meridian` line"));
                        }
                    }
                    _ => {
                        if longitude.replace(word).is_some() {
                            return Err(parse_error(line, "duplicate `longitude` line"));
                        }
                    }
                }
            }
            other => {
                return Err(parse_error(line, format!("unknown directive `{other}`")));
            }
        }
    }

    let name = name.ok_or_else(|| parse_error(0, "missing `knot` line"))?;
    let mut group = group.ok_or_else(|| parse_error(0, "missing `gens` line"))?;
    for rel in relators {
        group.push_relator(rel);
    }
    group.set_meridian(meridian.ok_or(KnotFileError::MissingPeripheral("meridian"))?);
    group.set_longitude(longitude.ok_or(KnotFileError::MissingPeripheral("longitude"))?);
    Ok(KnotPresentation { name, group })
}

/// Reads and parses a knot file from disk.
pub fn parse_knot_file(path: impl AsRef<Path>) -> Result<KnotPresentation, KnotFileError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| KnotFileError::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_knot_str(&text)
}
