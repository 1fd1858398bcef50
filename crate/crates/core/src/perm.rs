//! Permutations on small, explicitly ordered half-edge label sets.
//!
//! A [`Permutation`] is an association table over a [`LabelSet`]. The label
//! set fixes the ambient linear order: cycles are reported starting at their
//! smallest label with respect to that order, and sorted by that label.
//!
//! Composition is right-to-left: `p.compose(&q)` maps `x` to `p(q(x))`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// A half-edge label: either a plain integer or one of the rainbow ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Start of the single face of a unicellular map.
    L,
    /// End of the single face of a unicellular map.
    R,
    L1,
    R1,
    L2,
    R2,
    Plain(u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::L => f.write_str("L"),
            Label::R => f.write_str("R"),
            Label::L1 => f.write_str("L1"),
            Label::R1 => f.write_str("R1"),
            Label::L2 => f.write_str("L2"),
            Label::R2 => f.write_str("R2"),
            Label::Plain(i) => write!(f, "{i}"),
        }
    }
}

impl FromStr for Label {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L" => Ok(Label::L),
            "R" => Ok(Label::R),
            "L1" => Ok(Label::L1),
            "R1" => Ok(Label::R1),
            "L2" => Ok(Label::L2),
            "R2" => Ok(Label::R2),
            _ => match s.parse::<u32>() {
                Ok(i) if i > 0 => Ok(Label::Plain(i)),
                _ => Err(PermError::BadToken(s.to_string())),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutations are defined on different label sets")]
    LabelSetMismatch,
    #[error("label {0} is not in the label set")]
    UnknownLabel(Label),
    #[error("label {0} appears more than once")]
    DuplicateLabel(Label),
    #[error("not a bijection of the label set")]
    NotBijective,
    #[error("invalid label token `{0}`")]
    BadToken(String),
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
}

/// A finite label set together with its ambient linear order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelSet(Arc<[Label]>);

impl LabelSet {
    pub fn new(labels: Vec<Label>) -> Result<Self, PermError> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(PermError::DuplicateLabel(*l));
            }
        }
        Ok(LabelSet(labels.into()))
    }

    /// `L < 1 < 2 < ... < 2n < R`.
    pub fn unicellular(n: usize) -> Self {
        let mut labels = Vec::with_capacity(2 * n + 2);
        labels.push(Label::L);
        labels.extend((1..=2 * n as u32).map(Label::Plain));
        labels.push(Label::R);
        LabelSet(labels.into())
    }

    /// `L1 < 1 < ... < m < R1 < L2 < m+1 < ... < 2n < R2`.
    pub fn bicellular(n: usize, m: usize) -> Self {
        let mut labels = Vec::with_capacity(2 * n + 4);
        labels.push(Label::L1);
        labels.extend((1..=m as u32).map(Label::Plain));
        labels.push(Label::R1);
        labels.push(Label::L2);
        labels.extend((m as u32 + 1..=2 * n as u32).map(Label::Plain));
        labels.push(Label::R2);
        LabelSet(labels.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn label(&self, index: usize) -> Label {
        self.0[index]
    }

    /// Position of `label` in the ambient order.
    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.0.iter().position(|&l| l == label)
    }
}

/// A bijection of a [`LabelSet`] onto itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    labels: LabelSet,
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(labels: &LabelSet) -> Self {
        Permutation {
            labels: labels.clone(),
            image: (0..labels.len()).collect(),
        }
    }

    /// Builds a permutation from the image of every index of `labels`.
    pub fn from_images(labels: &LabelSet, image: Vec<usize>) -> Result<Self, PermError> {
        if image.len() != labels.len() {
            return Err(PermError::NotBijective);
        }
        let mut seen = vec![false; image.len()];
        for &j in &image {
            if j >= image.len() || seen[j] {
                return Err(PermError::NotBijective);
            }
            seen[j] = true;
        }
        Ok(Permutation {
            labels: labels.clone(),
            image,
        })
    }

    /// Builds a permutation from disjoint cycles; unmentioned labels are fixed.
    pub fn from_cycles<C: AsRef<[Label]>>(labels: &LabelSet, cycles: &[C]) -> Result<Self, PermError> {
        let mut image: Vec<usize> = (0..labels.len()).collect();
        let mut seen = vec![false; labels.len()];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            let mut idx = Vec::with_capacity(cycle.len());
            for &l in cycle {
                let i = labels.index_of(l).ok_or(PermError::UnknownLabel(l))?;
                if seen[i] {
                    return Err(PermError::DuplicateLabel(l));
                }
                seen[i] = true;
                idx.push(i);
            }
            for (k, &i) in idx.iter().enumerate() {
                image[i] = idx[(k + 1) % idx.len()];
            }
        }
        Ok(Permutation {
            labels: labels.clone(),
            image,
        })
    }

    /// Builds an involution from a list of disjoint pairs.
    pub fn from_pairs(labels: &LabelSet, pairs: &[(Label, Label)]) -> Result<Self, PermError> {
        let cycles: Vec<[Label; 2]> = pairs.iter().map(|&(a, b)| [a, b]).collect();
        Self::from_cycles(labels, &cycles)
    }

    /// Parses cycle notation such as `(L,3,2,1,4)(R)`.
    pub fn parse(labels: &LabelSet, text: &str) -> Result<Self, PermError> {
        let cycles = parse_cycle_notation(text)?;
        Self::from_cycles(labels, &cycles)
    }

    pub fn label_set(&self) -> &LabelSet {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// Image of a label, or `None` if it is not in the label set.
    pub fn apply(&self, label: Label) -> Option<Label> {
        let i = self.labels.index_of(label)?;
        Some(self.labels.label(self.image[i]))
    }

    pub fn apply_index(&self, index: usize) -> usize {
        self.image[index]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.labels != other.labels {
            return Err(PermError::LabelSetMismatch);
        }
        Ok(Permutation {
            labels: self.labels.clone(),
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Permutation {
            labels: self.labels.clone(),
            image,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_fpf_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &j)| i != j && self.image[j] == i)
    }

    /// Cycles as index sequences, each starting at its minimum, sorted by minimum.
    pub fn cycle_indices(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.image.len()];
        let mut out = Vec::new();
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycles in the ambient order, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<Label>> {
        self.cycle_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.labels.label(i)).collect())
            .collect()
    }

    pub fn num_cycles(&self) -> usize {
        let mut seen = vec![false; self.image.len()];
        let mut count = 0;
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.image[cur];
            }
        }
        count
    }

    /// Index of the cycle containing each index, in the order of [`Self::cycle_indices`].
    pub fn cycle_ids(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.image.len()];
        let mut next = 0;
        for start in 0..self.image.len() {
            if id[start] != usize::MAX {
                continue;
            }
            let mut cur = start;
            while id[cur] == usize::MAX {
                id[cur] = next;
                cur = self.image[cur];
            }
            next += 1;
        }
        id
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (k, l) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Splits cycle notation into label cycles without checking them against a label set.
pub fn parse_cycle_notation(text: &str) -> Result<Vec<Vec<Label>>, PermError> {
    let syntax = |column: usize, message: &str| PermError::Syntax {
        column,
        message: message.to_string(),
    };
    let mut cycles = Vec::new();
    let mut current: Option<Vec<Label>> = None;
    let mut token = String::new();
    let mut token_col = 0;
    let mut token_closed = false;

    let flush = |token: &mut String, col: usize, cycle: &mut Vec<Label>| -> Result<(), PermError> {
        if token.is_empty() {
            return Err(syntax(col, "empty label"));
        }
        let label = token.parse::<Label>().map_err(|_| PermError::Syntax {
            column: col,
            message: format!("invalid label `{token}`"),
        })?;
        cycle.push(label);
        token.clear();
        Ok(())
    };

    for (i, ch) in text.chars().enumerate() {
        let col = i + 1;
        match ch {
            c if c.is_whitespace() => {
                if !token.is_empty() {
                    token_closed = true;
                }
            }
            '(' => {
                if current.is_some() {
                    return Err(syntax(col, "nested `(`"));
                }
                current = Some(Vec::new());
            }
            ')' => match current.as_mut() {
                None => return Err(syntax(col, "unmatched `)`")),
                Some(cycle) => {
                    if !(token.is_empty() && cycle.is_empty()) {
                        flush(&mut token, token_col, cycle)?;
                    }
                    if cycle.is_empty() {
                        return Err(syntax(col, "empty cycle"));
                    }
                    token_closed = false;
                    cycles.push(current.take().unwrap());
                }
            },
            ',' => match current.as_mut() {
                None => return Err(syntax(col, "`,` outside a cycle")),
                Some(cycle) => {
                    flush(&mut token, col, cycle)?;
                    token_closed = false;
                }
            },
            c if c.is_ascii_alphanumeric() => {
                if current.is_none() {
                    return Err(syntax(col, "label outside a cycle"));
                }
                if token_closed {
                    return Err(syntax(col, "missing `,` between labels"));
                }
                if token.is_empty() {
                    token_col = col;
                }
                token.push(c);
            }
            _ => return Err(syntax(col, &format!("unexpected character `{ch}`"))),
        }
    }
    if current.is_some() {
        return Err(syntax(text.chars().count() + 1, "unterminated cycle"));
    }
    Ok(cycles)
}
