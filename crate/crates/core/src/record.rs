//! Line-oriented text records for maps.
//!
//! ```text
//! type unicellular
//! edges 2
//! alpha (L,R)(1,3)(2,4)
//! sigma (L,3,2,1,4)(R)
//! ```
//!
//! Bicellular records add an `m <split>` line after `edges`. Rainbow cycles
//! may be left out of `alpha`; `sigma` is optional and recomputed when
//! absent. Records in one file are separated by blank lines; `#` starts a
//! comment line.

use std::fmt;

use thiserror::Error;

use crate::maps::{AnyMap, BicellularMap, MapError, UnicellularMap};
use crate::perm::{parse_cycle_notation, Label, LabelSet, PermError, Permutation};

/// A located parse or validation failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct RecordError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl RecordError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        RecordError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// One `key value` line with its position.
#[derive(Debug, Clone)]
pub(crate) struct Field<'a> {
    pub line: usize,
    pub key: &'a str,
    pub value: &'a str,
    /// 1-based column where `value` starts.
    pub value_col: usize,
}

/// Splits text into blank-line separated blocks of `key value` fields.
pub(crate) fn blocks(text: &str) -> Vec<Vec<Field<'_>>> {
    let mut out = Vec::new();
    let mut cur: Vec<Field<'_>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        let indent = line.len() - trimmed.len();
        let (key, rest) = match trimmed.find(char::is_whitespace) {
            Some(p) => (&trimmed[..p], &trimmed[p..]),
            None => (trimmed, ""),
        };
        let value = rest.trim_start();
        let value_col = indent + key.len() + (rest.len() - value.len()) + 1;
        cur.push(Field {
            line: i + 1,
            key,
            value,
            value_col,
        });
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub(crate) fn parse_count(f: &Field<'_>) -> Result<usize, RecordError> {
    f.value.parse::<usize>().map_err(|_| {
        RecordError::new(
            f.line,
            f.value_col,
            format!("`{}` expects a non-negative integer", f.key),
        )
    })
}

fn perm_error(f: &Field<'_>, e: PermError) -> RecordError {
    match e {
        PermError::Syntax { column, message } => RecordError::new(f.line, f.value_col + column - 1, message),
        other => RecordError::new(f.line, f.value_col, other.to_string()),
    }
}

fn map_error(f: &Field<'_>, e: MapError) -> RecordError {
    match e {
        MapError::Perm(p) => perm_error(f, p),
        other => RecordError::new(f.line, f.value_col, other.to_string()),
    }
}

fn parse_block(fields: &[Field<'_>]) -> Result<AnyMap, RecordError> {
    let first = &fields[0];
    let get = |key: &str| fields.iter().find(|f| f.key == key);
    for (i, f) in fields.iter().enumerate() {
        if !matches!(f.key, "type" | "edges" | "m" | "alpha" | "sigma") {
            return Err(RecordError::new(f.line, 1, format!("unknown key `{}`", f.key)));
        }
        if fields[..i].iter().any(|g| g.key == f.key) {
            return Err(RecordError::new(f.line, 1, format!("duplicate key `{}`", f.key)));
        }
    }
    let ty = get("type").ok_or_else(|| RecordError::new(first.line, 1, "missing `type` line"))?;
    let edges = get("edges").ok_or_else(|| RecordError::new(first.line, 1, "missing `edges` line"))?;
    let alpha_f = get("alpha").ok_or_else(|| RecordError::new(first.line, 1, "missing `alpha` line"))?;
    let n = parse_count(edges)?;
    match ty.value {
        "unicellular" => {
            if let Some(f) = get("m") {
                return Err(RecordError::new(f.line, 1, "`m` is only valid for bicellular maps"));
            }
            let labels = LabelSet::unicellular(n);
            let alpha = parse_with_rainbows(alpha_f, &labels, &[(Label::L, Label::R)])?;
            match get("sigma") {
                Some(sf) => {
                    let sigma = Permutation::parse(&labels, sf.value).map_err(|e| perm_error(sf, e))?;
                    UnicellularMap::validate(&alpha, &sigma)
                        .map(AnyMap::Uni)
                        .map_err(|e| map_error(sf, e))
                }
                None => UnicellularMap::from_alpha(&alpha)
                    .map(AnyMap::Uni)
                    .map_err(|e| map_error(alpha_f, e)),
            }
        }
        "bicellular" => {
            let mf = get("m").ok_or_else(|| RecordError::new(first.line, 1, "missing `m` line"))?;
            let m = parse_count(mf)?;
            if n == 0 || m == 0 || m >= 2 * n {
                return Err(map_error(
                    mf,
                    MapError::SplitOutOfRange {
                        n,
                        m,
                        max: 2 * n as isize - 1,
                    },
                ));
            }
            let labels = LabelSet::bicellular(n, m);
            let beta = parse_with_rainbows(alpha_f, &labels, &[(Label::L1, Label::R1), (Label::L2, Label::R2)])?;
            match get("sigma") {
                Some(sf) => {
                    let tau = Permutation::parse(&labels, sf.value).map_err(|e| perm_error(sf, e))?;
                    BicellularMap::validate(n, m, &beta, &tau)
                        .map(AnyMap::Bi)
                        .map_err(|e| map_error(sf, e))
                }
                None => BicellularMap::from_beta(n, m, &beta)
                    .map(AnyMap::Bi)
                    .map_err(|e| map_error(alpha_f, e)),
            }
        }
        other => Err(RecordError::new(
            ty.line,
            ty.value_col,
            format!("unknown map type `{other}`"),
        )),
    }
}

/// Parses an edge involution, adding any rainbow cycle whose two ends are
/// both absent.
fn parse_with_rainbows(
    f: &Field<'_>,
    labels: &LabelSet,
    rainbows: &[(Label, Label)],
) -> Result<Permutation, RecordError> {
    let mut cycles = parse_cycle_notation(f.value).map_err(|e| perm_error(f, e))?;
    for &(a, b) in rainbows {
        let mentioned = cycles.iter().flatten().any(|&l| l == a || l == b);
        if !mentioned {
            cycles.push(vec![a, b]);
        }
    }
    Permutation::from_cycles(labels, &cycles).map_err(|e| perm_error(f, e))
}

/// Parses every map record in `text`.
pub fn parse_maps(text: &str) -> Result<Vec<AnyMap>, RecordError> {
    let blocks = blocks(text);
    if blocks.is_empty() {
        return Err(RecordError::new(1, 1, "no map record found"));
    }
    blocks.iter().map(|b| parse_block(b)).collect()
}

/// Parses exactly one map record.
pub fn parse_map(text: &str) -> Result<AnyMap, RecordError> {
    let mut maps = parse_maps(text)?;
    if maps.len() != 1 {
        return Err(RecordError::new(
            1,
            1,
            format!("expected one record, found {}", maps.len()),
        ));
    }
    Ok(maps.pop().unwrap())
}

impl fmt::Display for UnicellularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type unicellular")?;
        writeln!(f, "edges {}", self.edges())?;
        writeln!(f, "alpha {}", self.alpha())?;
        writeln!(f, "sigma {}", self.sigma())
    }
}

impl fmt::Display for BicellularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type bicellular")?;
        writeln!(f, "edges {}", self.edges())?;
        writeln!(f, "m {}", self.split())?;
        writeln!(f, "alpha {}", self.beta())?;
        writeln!(f, "sigma {}", self.tau())
    }
}

impl fmt::Display for AnyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyMap::Uni(u) => u.fmt(f),
            AnyMap::Bi(b) => b.fmt(f),
        }
    }
}
