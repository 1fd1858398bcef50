//! Gluing and cutting between unicellular maps of genus `g+1`, pairs of
//! unicellular maps and bicellular maps of genus `g`.
//!
//! * [`theta`] glues the plant of `u1` into the first vertex of `u2`; its
//!   image is exactly class III and [`psi`] cuts it back apart.
//! * [`eta`] glues the plant `R1` of a bicellular map into the vertex of
//!   `L2`; its image is classes I and II and [`varsigma`] cuts it back.
//! * [`beta_forward`] and [`beta_inverse`] combine the two.
//!
//! Every operation works on canonically labeled maps and re-canonicalizes
//! its output immediately.

use thiserror::Error;

use crate::maps::{
    classify_bicellular, classify_unicellular, relabel_bicellular, relabel_unicellular, BicellularMap, MapClass,
    MapError, UnicellularMap,
};
use crate::perm::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("{op} requires a class {expected} map, got class {found}")]
    WrongClass {
        op: &'static str,
        expected: &'static str,
        found: MapClass,
    },
    #[error("genus-0 maps have no decomposition")]
    GenusZero,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A preimage under the composite bijection.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Decomposition {
    Pair(UnicellularMap, UnicellularMap),
    Bi(BicellularMap),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Part {
    First,
    Second,
}

fn face_of(u: &UnicellularMap) -> impl Iterator<Item = Label> + '_ {
    u.alpha().label_set().labels().iter().copied()
}

fn pairs_of(p: &crate::perm::Permutation) -> Vec<(Label, Label)> {
    p.cycles().into_iter().map(|c| (c[0], c[1])).collect()
}

/// Glues the plant of `u1` into the first vertex of `u2`, right after `L`.
///
/// The result has `e(u1) + e(u2) + 1` edges, genus `g(u1) + g(u2)`, and class III.
pub fn theta(u1: &UnicellularMap, u2: &UnicellularMap) -> Result<UnicellularMap, BijectionError> {
    let mut face = Vec::with_capacity(2 * (u1.edges() + u2.edges()) + 4);
    face.push((Part::Second, Label::L));
    face.extend(face_of(u1).map(|l| (Part::First, l)));
    face.extend(face_of(u2).skip(1).map(|l| (Part::Second, l)));
    let pairing: Vec<_> = pairs_of(u1.alpha())
        .into_iter()
        .map(|(a, b)| ((Part::First, a), (Part::First, b)))
        .chain(
            pairs_of(u2.alpha())
                .into_iter()
                .map(|(a, b)| ((Part::Second, a), (Part::Second, b))),
        )
        .collect();
    let u = relabel_unicellular(&face, &pairing)?.map;
    let class = classify_unicellular(&u)?;
    if class != MapClass::III {
        return Err(BijectionError::Internal(format!("theta produced class {class}")));
    }
    Ok(u)
}

/// Cuts the edge `{1, alpha(1)}` of a class-III map into two unicellular maps.
pub fn psi(u: &UnicellularMap) -> Result<(UnicellularMap, UnicellularMap), BijectionError> {
    let class = classify_unicellular(u)?;
    if class != MapClass::III {
        return Err(BijectionError::WrongClass {
            op: "psi",
            expected: "III",
            found: class,
        });
    }
    let total = u.edges();
    let a1 = u.partner(1);
    if !a1.is_multiple_of(2) {
        return Err(BijectionError::Internal(format!("alpha(1) = {a1} is odd")));
    }
    // u1 lives on the face interval 2..a1-1, u2 on a1+1..2*total.
    let inner: Vec<usize> = (2..a1)
        .map(|h| {
            let p = u.partner(h);
            if (2..a1).contains(&p) {
                Ok(p - 2)
            } else {
                Err(BijectionError::Internal(format!("edge ({h},{p}) leaves the interval")))
            }
        })
        .collect::<Result<_, _>>()?;
    let outer: Vec<usize> = (a1 + 1..=2 * total).map(|h| u.partner(h) - a1 - 1).collect();
    let u1 = UnicellularMap::from_partner((a1 - 2) / 2, &inner)?;
    let u2 = UnicellularMap::from_partner(total - 1 - (a1 - 2) / 2, &outer)?;
    if u1.genus() + u2.genus() != u.genus() {
        return Err(BijectionError::Internal("psi broke the genus sum".into()));
    }
    Ok((u1, u2))
}

/// [`eta`] together with the bicellular label each unicellular label came from,
/// indexed by the unicellular ambient order `L, 1, ..., 2n+2, R`.
pub fn eta_traced(b: &BicellularMap) -> Result<(UnicellularMap, Vec<Label>), BijectionError> {
    let labels = b.beta().label_set().labels();
    let (l2_at, r2_at) = (b.split() + 2, labels.len() - 1);
    let mut face = Vec::with_capacity(labels.len());
    face.push(labels[l2_at]);
    face.extend_from_slice(&labels[..l2_at]);
    face.extend_from_slice(&labels[l2_at + 1..=r2_at]);
    let relabeled = relabel_unicellular(&face, &pairs_of(b.beta()))?;
    let u = relabeled.map;
    let expected = match classify_bicellular(b) {
        MapClass::BI => MapClass::I,
        _ => MapClass::II,
    };
    let class = classify_unicellular(&u)?;
    if class != expected || u.genus() != b.genus() + 1 {
        return Err(BijectionError::Internal(format!(
            "eta produced class {class} genus {} from genus {}",
            u.genus(),
            b.genus()
        )));
    }
    Ok((u, face))
}

/// Glues the plant `R1` into the vertex of `L2`, immediately after `L2`.
///
/// The result has `n+1` edges, genus `g+1`, and class I (from BI) or II (from BII).
pub fn eta(b: &BicellularMap) -> Result<UnicellularMap, BijectionError> {
    eta_traced(b).map(|(u, _)| u)
}

/// Cuts the edge `{1, alpha(1)}` of a class I/II map, leaving a bicellular
/// map split at `m = alpha(1) - 2`.
pub fn varsigma(u: &UnicellularMap) -> Result<BicellularMap, BijectionError> {
    let class = classify_unicellular(u)?;
    if class == MapClass::III {
        return Err(BijectionError::WrongClass {
            op: "varsigma",
            expected: "I or II",
            found: class,
        });
    }
    let total = u.edges();
    let a1 = u.partner(1);
    let face1: Vec<Label> = (1..=a1 as u32).map(Label::Plain).collect();
    let face2: Vec<Label> = std::iter::once(Label::L)
        .chain((a1 as u32 + 1..=2 * total as u32).map(Label::Plain))
        .chain(std::iter::once(Label::R))
        .collect();
    let b = relabel_bicellular(&face1, &face2, &pairs_of(u.alpha()))?.map;
    let expected = if class == MapClass::I {
        MapClass::BI
    } else {
        MapClass::BII
    };
    if b.class() != expected || b.genus() + 1 != u.genus() {
        return Err(BijectionError::Internal(
            "varsigma broke the class or genus contract".into(),
        ));
    }
    Ok(b)
}

pub fn beta_forward(x: &Decomposition) -> Result<UnicellularMap, BijectionError> {
    match x {
        Decomposition::Pair(u1, u2) => theta(u1, u2),
        Decomposition::Bi(b) => eta(b),
    }
}

/// Decomposes a map of genus at least 1 by its class.
pub fn beta_inverse(u: &UnicellularMap) -> Result<Decomposition, BijectionError> {
    if u.genus() == 0 {
        return Err(BijectionError::GenusZero);
    }
    match classify_unicellular(u)? {
        MapClass::III => psi(u).map(|(a, b)| Decomposition::Pair(a, b)),
        _ => varsigma(u).map(Decomposition::Bi),
    }
}
