//! RNA diagrams over one or two backbones and their planted-map duals.
//!
//! Collapsing each backbone to a vertex and adding a rainbow arc per
//! backbone, the Poincaré dual of a one-backbone diagram is a planted
//! unicellular map and that of a two-backbone interaction structure is a
//! planted bicellular map. Paired positions are numbered `1..2n` left to
//! right; unpaired positions carry no half-edge and drop out of the map.
//!
//! [`rewire`] turns an interaction structure into a one-backbone diagram of
//! one higher genus by passing the dual through [`eta`](crate::bijections::eta).

use std::fmt;

use thiserror::Error;

use crate::bijections::{eta_traced, BijectionError};
use crate::maps::{AnyMap, BicellularMap, MapError, UnicellularMap};
use crate::perm::Label;
use crate::record::{blocks, parse_count, RecordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RnaError {
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("expected a diagram over {expected} backbone(s), got {found}")]
    BackboneCount { expected: usize, found: usize },
    #[error("not an interaction structure: no arc joins the two backbones")]
    NotInteraction,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
    #[error(transparent)]
    Parse(#[from] RecordError),
}

/// Positions `1..=len` split into consecutive backbones, with a partial
/// matching of arcs `(i, j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    len: usize,
    backbones: Vec<(usize, usize)>,
    arcs: Vec<(usize, usize)>,
}

impl Diagram {
    /// `backbones` are inclusive intervals `(start, end)`; an empty
    /// interval is written `(a, a-1)`.
    pub fn new(len: usize, backbones: Vec<(usize, usize)>, arcs: Vec<(usize, usize)>) -> Result<Self, RnaError> {
        if backbones.is_empty() || backbones.len() > 2 {
            return Err(RnaError::Invalid(format!(
                "{} backbones; expected 1 or 2",
                backbones.len()
            )));
        }
        let mut next = 1;
        for &(a, b) in &backbones {
            if a != next || b + 1 < a {
                return Err(RnaError::Invalid(format!(
                    "backbone {a}..{b} does not continue from position {next}"
                )));
            }
            next = b + 1;
        }
        if next != len + 1 {
            return Err(RnaError::Invalid(format!(
                "backbones cover 1..{} but N = {len}",
                next - 1
            )));
        }
        let mut used = vec![false; len + 1];
        let mut norm = Vec::with_capacity(arcs.len());
        for (i, j) in arcs {
            let (i, j) = (i.min(j), i.max(j));
            if i == j {
                return Err(RnaError::Invalid(format!("arc ({i},{i}) is a loop")));
            }
            if i == 0 || j > len {
                return Err(RnaError::Invalid(format!("arc ({i},{j}) leaves 1..{len}")));
            }
            for p in [i, j] {
                if used[p] {
                    return Err(RnaError::Invalid(format!("position {p} is in two arcs")));
                }
                used[p] = true;
            }
            norm.push((i, j));
        }
        norm.sort_unstable();
        Ok(Diagram {
            len,
            backbones,
            arcs: norm,
        })
    }

    /// A diagram over one backbone `1..len`.
    pub fn one_backbone(len: usize, arcs: Vec<(usize, usize)>) -> Result<Self, RnaError> {
        Self::new(len, vec![(1, len)], arcs)
    }

    /// A diagram over backbones `1..first` and `first+1..first+second`.
    pub fn two_backbones(first: usize, second: usize, arcs: Vec<(usize, usize)>) -> Result<Self, RnaError> {
        Self::new(first + second, vec![(1, first), (first + 1, first + second)], arcs)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn backbones(&self) -> &[(usize, usize)] {
        &self.backbones
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Paired positions in increasing order.
    pub fn paired_positions(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.arcs.iter().flat_map(|&(i, j)| [i, j]).collect();
        p.sort_unstable();
        p
    }

    fn backbone_of(&self, pos: usize) -> usize {
        self.backbones.iter().position(|&(_, b)| pos <= b).unwrap_or(0)
    }

    fn has_exterior_arc(&self) -> bool {
        self.arcs
            .iter()
            .any(|&(i, j)| self.backbone_of(i) != self.backbone_of(j))
    }

    /// Arcs renumbered onto the half-edges `1..2n` of the paired positions.
    fn half_edge_pairs(&self) -> (Vec<usize>, Vec<(u32, u32)>) {
        let paired = self.paired_positions();
        let mut half = vec![0u32; self.len + 1];
        for (k, &p) in paired.iter().enumerate() {
            half[p] = k as u32 + 1;
        }
        let pairs = self.arcs.iter().map(|&(i, j)| (half[i], half[j])).collect();
        (paired, pairs)
    }

    /// Inserts an unpaired position before `pos` (`1..=len+1`), on the
    /// backbone that holds `pos`, or on the last backbone when appending.
    pub fn with_unpaired_inserted(&self, pos: usize) -> Result<Self, RnaError> {
        if pos == 0 || pos > self.len + 1 {
            return Err(RnaError::Invalid(format!("insertion point {pos} out of range")));
        }
        let host = if pos > self.len {
            self.backbones.len() - 1
        } else {
            self.backbone_of(pos)
        };
        let backbones = self
            .backbones
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| match k.cmp(&host) {
                std::cmp::Ordering::Less => (a, b),
                std::cmp::Ordering::Equal => (a, b + 1),
                std::cmp::Ordering::Greater => (a + 1, b + 1),
            })
            .collect();
        let shift = |p: usize| if p >= pos { p + 1 } else { p };
        let arcs = self.arcs.iter().map(|&(i, j)| (shift(i), shift(j))).collect();
        Self::new(self.len + 1, backbones, arcs)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N {}", self.len)?;
        f.write_str("backbones")?;
        for (a, b) in &self.backbones {
            write!(f, " {a}..{b}")?;
        }
        f.write_str("\narcs")?;
        for (i, j) in &self.arcs {
            write!(f, " ({i},{j})")?;
        }
        writeln!(f)
    }
}

fn parse_interval(token: &str) -> Option<(usize, usize)> {
    let (a, b) = token.split_once("..")?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

/// Parses `(i,j) (k,l) ...`; returns the arcs or a column (1-based) and message.
fn parse_arcs(text: &str) -> Result<Vec<(usize, usize)>, (usize, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut arcs = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let number = |i: &mut usize| -> Result<usize, (usize, String)> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if start == *i {
            return Err((start + 1, "expected a position".into()));
        }
        chars[start..*i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| (start + 1, "position too large".into()))
    };
    let expect = |i: &mut usize, c: char| -> Result<(), (usize, String)> {
        if *i < chars.len() && chars[*i] == c {
            *i += 1;
            Ok(())
        } else {
            Err((*i + 1, format!("expected `{c}`")))
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
        expect(&mut i, '(')?;
        skip_ws(&mut i);
        let a = number(&mut i)?;
        skip_ws(&mut i);
        expect(&mut i, ',')?;
        skip_ws(&mut i);
        let b = number(&mut i)?;
        skip_ws(&mut i);
        expect(&mut i, ')')?;
        arcs.push((a, b));
    }
    Ok(arcs)
}

impl std::str::FromStr for Diagram {
    type Err = RnaError;

    fn from_str(text: &str) -> Result<Self, RnaError> {
        let mut bs = blocks(text);
        if bs.len() != 1 {
            return Err(RecordError::new(1, 1, format!("expected one diagram record, found {}", bs.len())).into());
        }
        let fields = bs.pop().unwrap();
        let first_line = fields[0].line;
        for (i, f) in fields.iter().enumerate() {
            if !matches!(f.key, "N" | "backbones" | "arcs") {
                return Err(RecordError::new(f.line, 1, format!("unknown key `{}`", f.key)).into());
            }
            if fields[..i].iter().any(|g| g.key == f.key) {
                return Err(RecordError::new(f.line, 1, format!("duplicate key `{}`", f.key)).into());
            }
        }
        let get = |key: &str| {
            fields
                .iter()
                .find(|f| f.key == key)
                .ok_or_else(|| RecordError::new(first_line, 1, format!("missing `{key}` line")))
        };
        let nf = get("N")?;
        let len = parse_count(nf)?;
        let bf = get("backbones")?;
        let mut backbones = Vec::new();
        let mut offset = 0;
        for token in bf.value.split_whitespace() {
            let at = bf.value[offset..].find(token).unwrap() + offset;
            offset = at + token.len();
            let iv = parse_interval(token).ok_or_else(|| {
                RecordError::new(bf.line, bf.value_col + at, format!("`{token}` is not an interval a..b"))
            })?;
            backbones.push(iv);
        }
        let af = get("arcs")?;
        let arcs = parse_arcs(af.value).map_err(|(c, m)| RecordError::new(af.line, af.value_col + c - 1, m))?;
        Diagram::new(len, backbones, arcs).map_err(|e| match e {
            RnaError::Invalid(m) => RecordError::new(bf.line, 1, m).into(),
            other => other,
        })
    }
}

/// Dual of a one-backbone diagram.
pub fn diagram_to_unicellular(d: &Diagram) -> Result<UnicellularMap, RnaError> {
    if d.backbones.len() != 1 {
        return Err(RnaError::BackboneCount {
            expected: 1,
            found: d.backbones.len(),
        });
    }
    let (_, pairs) = d.half_edge_pairs();
    Ok(UnicellularMap::from_pairing(d.arcs.len(), &pairs)?)
}

/// Dual of a two-backbone interaction structure.
pub fn diagram_to_bicellular(d: &Diagram) -> Result<BicellularMap, RnaError> {
    if d.backbones.len() != 2 {
        return Err(RnaError::BackboneCount {
            expected: 2,
            found: d.backbones.len(),
        });
    }
    if !d.has_exterior_arc() {
        return Err(RnaError::NotInteraction);
    }
    let (paired, pairs) = d.half_edge_pairs();
    let end1 = d.backbones[0].1;
    let m = paired.iter().filter(|&&p| p <= end1).count();
    Ok(BicellularMap::from_pairing(d.arcs.len(), m, &pairs)?)
}

/// Dual of either map type, laid out along the canonical face order.
pub fn map_to_diagram(x: &AnyMap) -> Diagram {
    let arcs = |pairs: Vec<(u32, u32)>| pairs.into_iter().map(|(a, b)| (a as usize, b as usize)).collect();
    match x {
        AnyMap::Uni(u) => Diagram::one_backbone(2 * u.edges(), arcs(u.pairs())),
        AnyMap::Bi(b) => Diagram::two_backbones(b.split(), 2 * b.edges() - b.split(), arcs(b.pairs())),
    }
    .expect("canonical map lays out as a valid diagram")
}

/// Genus of the dual map.
pub fn genus_of_diagram(d: &Diagram) -> Result<usize, RnaError> {
    match d.backbones.len() {
        1 => Ok(diagram_to_unicellular(d)?.genus()),
        _ => Ok(diagram_to_bicellular(d)?.genus()),
    }
}

/// One row of a rewiring trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceRow {
    /// Position in the input diagram; `None` for rainbow ends.
    pub orig: Option<usize>,
    /// Half-edge of the input's bicellular dual; `None` for unpaired positions.
    pub half_edge: Option<Label>,
    /// Position in the rewired diagram; `None` where nothing lands.
    pub new_pos: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewireTrace {
    pub rows: Vec<TraceRow>,
    pub genus_before: usize,
    pub genus_after: usize,
    pub arcs_before: usize,
    pub arcs_after: usize,
}

impl RewireTrace {
    /// `orig_pos half_edge new_pos` rows, `-` marking absent entries.
    pub fn to_text(&self) -> String {
        let dash = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let mut s = String::from("orig_pos half_edge new_pos\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{} {} {}\n",
                dash(r.orig.map(|p| p.to_string())),
                dash(r.half_edge.map(|l| l.to_string())),
                dash(r.new_pos.map(|p| p.to_string()))
            ));
        }
        s
    }
}

/// Rewires a two-backbone interaction structure into a one-backbone diagram.
pub fn rewire(d: &Diagram) -> Result<(Diagram, RewireTrace), RnaError> {
    let b = diagram_to_bicellular(d)?;
    let (u, origin) = eta_traced(&b)?;
    let out = map_to_diagram(&AnyMap::Uni(u.clone()));

    let lay: Vec<Label> = b.beta().label_set().labels().to_vec();
    // unicellular plain k sits at position k of the rewired diagram
    let new_pos_of = |x: Label| {
        origin
            .iter()
            .position(|&o| o == x)
            .filter(|&k| k >= 1 && k <= 2 * u.edges())
    };
    let paired = d.paired_positions();
    let mut half_of = vec![None; d.len + 1];
    for (k, &p) in paired.iter().enumerate() {
        half_of[p] = Some(Label::Plain(k as u32 + 1));
    }
    let mut rows: Vec<TraceRow> = (1..=d.len)
        .map(|p| TraceRow {
            orig: Some(p),
            half_edge: half_of[p],
            new_pos: half_of[p].and_then(new_pos_of),
        })
        .collect();
    rows.extend(lay.iter().filter(|l| !matches!(l, Label::Plain(_))).map(|&l| TraceRow {
        orig: None,
        half_edge: Some(l),
        new_pos: new_pos_of(l),
    }));
    let trace = RewireTrace {
        rows,
        genus_before: b.genus(),
        genus_after: u.genus(),
        arcs_before: d.arcs.len(),
        arcs_after: out.arcs.len(),
    };
    Ok((out, trace))
}
