//! Planted unicellular and bicellular maps in canonical labeling.
//!
//! Both map types keep their face(s) fixed in canonical form, so a map is
//! determined by its edge involution alone: the vertex permutation is forced
//! as `alpha ∘ face` (the involution is its own inverse).
//!
//! Unicellular labels are `L < 1 < ... < 2n < R` with face `(L,1,...,2n,R)`
//! and plant `(R)`. Bicellular labels are
//! `L1 < 1 < ... < m < R1 < L2 < m+1 < ... < 2n < R2` with faces
//! `(L1,1,...,m,R1)` and `(L2,m+1,...,2n,R2)` and plants `(R1)`, `(R2)`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::perm::{Label, LabelSet, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("label set is not the canonical {0} label set")]
    WrongLabelSet(&'static str),
    #[error("edge permutation has a fixed point at {0}")]
    FixedPoint(Label),
    #[error("edge permutation is not an involution")]
    NotInvolution,
    #[error("plant edge {0} is missing from the edge involution")]
    MissingPlant(&'static str),
    #[error("face permutation is not the canonical face {0}")]
    FaceNotCanonical(String),
    #[error("vertex permutation does not fix the plant {0}")]
    PlantNotFixed(Label),
    #[error("not a perfect matching on 1..{size}: {reason}")]
    NotPerfectMatching { size: usize, reason: String },
    #[error("split index m={m} out of range 1..={max} for {n} edges")]
    SplitOutOfRange { n: usize, m: usize, max: isize },
    #[error("disconnected: no edge joins the two faces")]
    Disconnected,
    #[error("class is undefined for the plant-only map")]
    Classless,
    #[error("inconsistent face/pairing data: {0}")]
    Structural(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// The three unicellular classes and the two bicellular classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapClass {
    I,
    II,
    III,
    BI,
    BII,
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapClass::I => "I",
            MapClass::II => "II",
            MapClass::III => "III",
            MapClass::BI => "BI",
            MapClass::BII => "BII",
        })
    }
}

/// A planted unicellular map with `n` non-plant edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnicellularMap {
    n: usize,
    alpha: Permutation,
    sigma: Permutation,
    genus: usize,
}

/// A planted bicellular map with `n` non-rainbow edges, split at `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BicellularMap {
    n: usize,
    m: usize,
    beta: Permutation,
    tau: Permutation,
    genus: usize,
}

/// Either map type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnyMap {
    Uni(UnicellularMap),
    Bi(BicellularMap),
}

/// Checks that `pairs` is a perfect matching of `1..=2n` and returns the
/// 0-based partner table.
fn partner_table(n: usize, pairs: &[(u32, u32)]) -> Result<Vec<usize>, MapError> {
    let size = 2 * n;
    let bad = |reason: String| MapError::NotPerfectMatching { size, reason };
    let mut partner = vec![usize::MAX; size];
    for &(a, b) in pairs {
        for x in [a, b] {
            if x == 0 || x as usize > size {
                return Err(bad(format!("{x} out of range")));
            }
        }
        if a == b {
            return Err(bad(format!("{a} paired with itself")));
        }
        let (i, j) = (a as usize - 1, b as usize - 1);
        if partner[i] != usize::MAX || partner[j] != usize::MAX {
            let dup = if partner[i] != usize::MAX { a } else { b };
            return Err(bad(format!("{dup} used twice")));
        }
        partner[i] = j;
        partner[j] = i;
    }
    if let Some(i) = partner.iter().position(|&p| p == usize::MAX) {
        return Err(bad(format!("{} unmatched", i + 1)));
    }
    Ok(partner)
}

/// Genus from the Euler bookkeeping `2 - 2g = (V - 1) - n + 1`, `V`
/// counting the plant vertex.
fn unicellular_genus(n: usize, vertices: usize) -> Result<usize, MapError> {
    let euler = vertices as isize - 1 - n as isize + 1;
    let twice = 2 - euler;
    if twice < 0 || twice % 2 != 0 {
        return Err(MapError::Internal(format!(
            "Euler characteristic {euler} gives no genus (n={n}, V={vertices})"
        )));
    }
    Ok((twice / 2) as usize)
}

/// Genus from `2 - 2g = V - n + 2`, `V` excluding both plants.
fn bicellular_genus(n: usize, vertices: usize) -> Result<usize, MapError> {
    let twice = n as isize - vertices as isize;
    if twice < 0 || twice % 2 != 0 {
        return Err(MapError::Internal(format!(
            "Euler characteristic gives no genus (n={n}, V={vertices})"
        )));
    }
    Ok((twice / 2) as usize)
}

impl UnicellularMap {
    /// Builds the map whose non-plant edges are `pairs` on `1..=2n`.
    pub fn from_pairing(n: usize, pairs: &[(u32, u32)]) -> Result<Self, MapError> {
        let partner = partner_table(n, pairs)?;
        Self::from_partner(n, &partner)
    }

    /// Builds a map from a 0-based partner table on the plain half-edges.
    ///
    /// `partner[i] = j` pairs half-edge `i+1` with `j+1`; the table must be
    /// a fixed-point-free involution.
    pub fn from_partner(n: usize, partner: &[usize]) -> Result<Self, MapError> {
        if partner.len() != 2 * n {
            return Err(MapError::NotPerfectMatching {
                size: 2 * n,
                reason: format!("partner table has length {}", partner.len()),
            });
        }
        let labels = LabelSet::unicellular(n);
        let last = 2 * n + 1;
        let mut alpha = vec![0; last + 1];
        alpha[0] = last;
        alpha[last] = 0;
        for (i, &j) in partner.iter().enumerate() {
            if j >= partner.len() || partner[j] != i || i == j {
                return Err(MapError::NotPerfectMatching {
                    size: 2 * n,
                    reason: format!("partner table is not an involution at {}", i + 1),
                });
            }
            alpha[i + 1] = j + 1;
        }
        let sigma: Vec<usize> = (0..=last).map(|h| alpha[(h + 1) % (last + 1)]).collect();
        let alpha = Permutation::from_images(&labels, alpha)?;
        let sigma = Permutation::from_images(&labels, sigma)?;
        let genus = unicellular_genus(n, sigma.num_cycles())?;
        Ok(UnicellularMap { n, alpha, sigma, genus })
    }

    /// Builds the map from its edge involution, forcing the canonical face.
    pub fn from_alpha(alpha: &Permutation) -> Result<Self, MapError> {
        let n = unicellular_edges(alpha.label_set())?;
        check_fpf(alpha)?;
        let last = 2 * n + 1;
        if alpha.apply_index(0) != last {
            return Err(MapError::MissingPlant("(L,R)"));
        }
        let partner: Vec<usize> = (1..last).map(|h| alpha.apply_index(h) - 1).collect();
        Self::from_partner(n, &partner)
    }

    /// Checks every invariant of a planted unicellular map.
    pub fn validate(alpha: &Permutation, sigma: &Permutation) -> Result<Self, MapError> {
        let labels = alpha.label_set();
        if sigma.label_set() != labels {
            return Err(PermError::LabelSetMismatch.into());
        }
        let n = unicellular_edges(labels)?;
        check_fpf(alpha)?;
        let last = 2 * n + 1;
        if alpha.apply_index(0) != last {
            return Err(MapError::MissingPlant("(L,R)"));
        }
        let gamma = alpha.compose(sigma)?;
        if (0..=last).any(|h| gamma.apply_index(h) != (h + 1) % (last + 1)) {
            return Err(MapError::FaceNotCanonical(Self::canonical_face_text(n)));
        }
        if sigma.apply_index(last) != last {
            return Err(MapError::PlantNotFixed(Label::R));
        }
        let genus = unicellular_genus(n, sigma.num_cycles())?;
        Ok(UnicellularMap {
            n,
            alpha: alpha.clone(),
            sigma: sigma.clone(),
            genus,
        })
    }

    /// The map with no edges besides the plant.
    pub fn plant_only() -> Self {
        Self::from_partner(0, &[]).expect("plant-only map is valid")
    }

    fn canonical_face_text(n: usize) -> String {
        let mut s = String::from("(L");
        for i in 1..=2 * n {
            s.push_str(&format!(",{i}"));
        }
        s.push_str(",R)");
        s
    }

    pub fn edges(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// The face `alpha ∘ sigma`.
    pub fn gamma(&self) -> Permutation {
        self.alpha.compose(&self.sigma).expect("same label set")
    }

    /// Non-plant edges as pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        (1..=2 * self.n)
            .filter_map(|h| {
                let p = self.alpha.apply_index(h);
                (h < p).then_some((h as u32, p as u32))
            })
            .collect()
    }

    /// Plain half-edge partner of plain half-edge `h` (1-based).
    pub fn partner(&self, h: usize) -> usize {
        self.alpha.apply_index(h)
    }

    /// Vertices including the plant.
    pub fn vertices(&self) -> Vec<Vec<Label>> {
        self.sigma.cycles()
    }

    pub fn class(&self) -> Result<MapClass, MapError> {
        classify_unicellular(self)
    }
}

fn unicellular_edges(labels: &LabelSet) -> Result<usize, MapError> {
    let len = labels.len();
    if len < 2 || !len.is_multiple_of(2) || *labels != LabelSet::unicellular((len - 2) / 2) {
        return Err(MapError::WrongLabelSet("unicellular"));
    }
    Ok((len - 2) / 2)
}

fn check_fpf(p: &Permutation) -> Result<(), MapError> {
    let labels = p.label_set();
    for i in 0..p.len() {
        if p.apply_index(i) == i {
            return Err(MapError::FixedPoint(labels.label(i)));
        }
    }
    for i in 0..p.len() {
        if p.apply_index(p.apply_index(i)) != i {
            return Err(MapError::NotInvolution);
        }
    }
    Ok(())
}

/// Ambient indices of the four rainbow labels for `(n, m)`.
#[derive(Clone, Copy, Debug)]
struct BiLayout {
    n: usize,
    m: usize,
}

impl BiLayout {
    fn l1(self) -> usize {
        0
    }
    fn r1(self) -> usize {
        self.m + 1
    }
    fn l2(self) -> usize {
        self.m + 2
    }
    fn r2(self) -> usize {
        2 * self.n + 3
    }
    fn len(self) -> usize {
        2 * self.n + 4
    }
    /// Ambient index of plain half-edge `h` (1-based).
    fn plain(self, h: usize) -> usize {
        if h <= self.m {
            h
        } else {
            h + 2
        }
    }
    /// Plain half-edge number of an ambient index, if it is plain.
    fn plain_of(self, idx: usize) -> Option<usize> {
        if idx == self.l1() || idx == self.r1() || idx == self.l2() || idx == self.r2() {
            None
        } else if idx <= self.m {
            Some(idx)
        } else {
            Some(idx - 2)
        }
    }
    fn face_next(self, idx: usize) -> usize {
        if idx == self.r1() {
            self.l1()
        } else if idx == self.r2() {
            self.l2()
        } else {
            idx + 1
        }
    }
}

fn split_range_check(n: usize, m: usize) -> Result<(), MapError> {
    if n == 0 || m < 1 || m > 2 * n - 1 {
        return Err(MapError::SplitOutOfRange {
            n,
            m,
            max: 2 * n as isize - 1,
        });
    }
    Ok(())
}

impl BicellularMap {
    /// Builds the map with non-rainbow edges `pairs` on `1..=2n`, split at `m`.
    pub fn from_pairing(n: usize, m: usize, pairs: &[(u32, u32)]) -> Result<Self, MapError> {
        split_range_check(n, m)?;
        let partner = partner_table(n, pairs)?;
        Self::from_partner(n, m, &partner)
    }

    /// Builds a map from a 0-based partner table on the plain half-edges.
    pub fn from_partner(n: usize, m: usize, partner: &[usize]) -> Result<Self, MapError> {
        split_range_check(n, m)?;
        if partner.len() != 2 * n {
            return Err(MapError::NotPerfectMatching {
                size: 2 * n,
                reason: format!("partner table has length {}", partner.len()),
            });
        }
        let lay = BiLayout { n, m };
        let mut beta = vec![0; lay.len()];
        beta[lay.l1()] = lay.r1();
        beta[lay.r1()] = lay.l1();
        beta[lay.l2()] = lay.r2();
        beta[lay.r2()] = lay.l2();
        let mut crossing = false;
        for (i, &j) in partner.iter().enumerate() {
            if j >= partner.len() || partner[j] != i || i == j {
                return Err(MapError::NotPerfectMatching {
                    size: 2 * n,
                    reason: format!("partner table is not an involution at {}", i + 1),
                });
            }
            crossing |= (i < m) != (j < m);
            beta[lay.plain(i + 1)] = lay.plain(j + 1);
        }
        if !crossing {
            return Err(MapError::Disconnected);
        }
        let tau: Vec<usize> = (0..lay.len()).map(|h| beta[lay.face_next(h)]).collect();
        let labels = LabelSet::bicellular(n, m);
        let beta = Permutation::from_images(&labels, beta)?;
        let tau = Permutation::from_images(&labels, tau)?;
        let genus = bicellular_genus(n, tau.num_cycles() - 2)?;
        Ok(BicellularMap { n, m, beta, tau, genus })
    }

    /// Builds the map from its edge involution, forcing the canonical faces.
    pub fn from_beta(n: usize, m: usize, beta: &Permutation) -> Result<Self, MapError> {
        split_range_check(n, m)?;
        if *beta.label_set() != LabelSet::bicellular(n, m) {
            return Err(MapError::WrongLabelSet("bicellular"));
        }
        check_fpf(beta)?;
        let lay = BiLayout { n, m };
        if beta.apply_index(lay.l1()) != lay.r1() {
            return Err(MapError::MissingPlant("(L1,R1)"));
        }
        if beta.apply_index(lay.l2()) != lay.r2() {
            return Err(MapError::MissingPlant("(L2,R2)"));
        }
        let partner: Vec<usize> = (1..=2 * n)
            .map(|h| lay.plain_of(beta.apply_index(lay.plain(h))).expect("plain partner") - 1)
            .collect();
        Self::from_partner(n, m, &partner)
    }

    /// Checks every invariant of a planted bicellular map.
    pub fn validate(n: usize, m: usize, beta: &Permutation, tau: &Permutation) -> Result<Self, MapError> {
        if tau.label_set() != beta.label_set() {
            return Err(PermError::LabelSetMismatch.into());
        }
        let map = Self::from_beta(n, m, beta)?;
        let omega = beta.compose(tau)?;
        let lay = BiLayout { n, m };
        if (0..lay.len()).any(|h| omega.apply_index(h) != lay.face_next(h)) {
            return Err(MapError::FaceNotCanonical(format!(
                "{}",
                Permutation::from_images(beta.label_set(), (0..lay.len()).map(|h| lay.face_next(h)).collect())?
            )));
        }
        debug_assert_eq!(&map.tau, tau);
        Ok(map)
    }

    pub fn edges(&self) -> usize {
        self.n
    }

    pub fn split(&self) -> usize {
        self.m
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    pub fn tau(&self) -> &Permutation {
        &self.tau
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// The two faces `beta ∘ tau`.
    pub fn omega(&self) -> Permutation {
        self.beta.compose(&self.tau).expect("same label set")
    }

    /// Non-rainbow edges as plain pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let lay = BiLayout { n: self.n, m: self.m };
        (1..=2 * self.n)
            .filter_map(|h| {
                let p = lay.plain_of(self.beta.apply_index(lay.plain(h)))?;
                (h < p).then_some((h as u32, p as u32))
            })
            .collect()
    }

    /// Vertices, excluding the two plants.
    pub fn vertices(&self) -> Vec<Vec<Label>> {
        self.tau
            .cycles()
            .into_iter()
            .filter(|c| !(c.len() == 1 && matches!(c[0], Label::R1 | Label::R2)))
            .collect()
    }

    pub fn class(&self) -> MapClass {
        classify_bicellular(self)
    }
}

/// Unicellular class I, II or III of a map with at least one edge.
pub fn classify_unicellular(u: &UnicellularMap) -> Result<MapClass, MapError> {
    if u.n == 0 {
        return Err(MapError::Classless);
    }
    let a1 = u.alpha.apply_index(1);
    let ids = u.sigma.cycle_ids();
    let same_vertex = ids[1] == ids[a1];
    let beyond = (2..a1).any(|k| u.alpha.apply_index(k) > a1);
    Ok(match (same_vertex, beyond) {
        (false, true) => MapClass::I,
        (true, true) => MapClass::II,
        (false, false) => MapClass::III,
        (true, false) => {
            return Err(MapError::Internal(
                "1 and alpha(1) share a vertex with no edge leaving their face interval".into(),
            ))
        }
    })
}

/// `BI` iff `L1` and `L2` lie on different vertices.
pub fn classify_bicellular(b: &BicellularMap) -> MapClass {
    let lay = BiLayout { n: b.n, m: b.m };
    let ids = b.tau.cycle_ids();
    if ids[lay.l1()] != ids[lay.l2()] {
        MapClass::BI
    } else {
        MapClass::BII
    }
}

/// Result of renaming composite labels onto canonical ones: the map and the
/// label each composite label was sent to.
#[derive(Clone, Debug)]
pub struct Relabeled<M, T> {
    pub map: M,
    pub renaming: HashMap<T, Label>,
}

fn pairing_table<T: Eq + Hash + Clone + fmt::Debug>(order: &[T], pairing: &[(T, T)]) -> Result<Vec<usize>, MapError> {
    let mut pos = HashMap::with_capacity(order.len());
    for (i, t) in order.iter().enumerate() {
        if pos.insert(t.clone(), i).is_some() {
            return Err(MapError::Structural(format!("{t:?} appears twice on the faces")));
        }
    }
    let mut partner = vec![usize::MAX; order.len()];
    for (a, b) in pairing {
        let i = *pos
            .get(a)
            .ok_or_else(|| MapError::Structural(format!("{a:?} is not on any face")))?;
        let j = *pos
            .get(b)
            .ok_or_else(|| MapError::Structural(format!("{b:?} is not on any face")))?;
        if i == j || partner[i] != usize::MAX || partner[j] != usize::MAX {
            return Err(MapError::Structural(format!("pairing is not an involution at {a:?}")));
        }
        partner[i] = j;
        partner[j] = i;
    }
    if let Some(i) = partner.iter().position(|&p| p == usize::MAX) {
        return Err(MapError::Structural(format!("{:?} is unpaired", order[i])));
    }
    Ok(partner)
}

/// Renames a single face `(first, ..., last)` of composite labels onto
/// `(L, 1, ..., 2n, R)` and returns the resulting unicellular map.
pub fn relabel_unicellular<T: Eq + Hash + Clone + fmt::Debug>(
    face: &[T],
    pairing: &[(T, T)],
) -> Result<Relabeled<UnicellularMap, T>, MapError> {
    if face.len() < 2 || !face.len().is_multiple_of(2) {
        return Err(MapError::Structural(format!(
            "face of odd or short length {}",
            face.len()
        )));
    }
    let n = (face.len() - 2) / 2;
    let partner = pairing_table(face, pairing)?;
    let last = face.len() - 1;
    if partner[0] != last {
        return Err(MapError::Structural(
            "face ends are not paired as the plant edge".into(),
        ));
    }
    let plain: Vec<usize> = (1..last).map(|h| partner[h] - 1).collect();
    let map = UnicellularMap::from_partner(n, &plain)?;
    let labels = LabelSet::unicellular(n);
    let renaming = face.iter().cloned().zip(labels.labels().iter().copied()).collect();
    Ok(Relabeled { map, renaming })
}

/// Renames two faces `(first1, ..., last1)` and `(first2, ..., last2)` onto
/// the canonical bicellular faces, with `m = face1.len() - 2`.
pub fn relabel_bicellular<T: Eq + Hash + Clone + fmt::Debug>(
    face1: &[T],
    face2: &[T],
    pairing: &[(T, T)],
) -> Result<Relabeled<BicellularMap, T>, MapError> {
    if face1.len() < 2 || face2.len() < 2 || !(face1.len() + face2.len()).is_multiple_of(2) {
        return Err(MapError::Structural("face lengths cannot carry two rainbows".into()));
    }
    let order: Vec<T> = face1.iter().chain(face2.iter()).cloned().collect();
    let m = face1.len() - 2;
    let n = (order.len() - 4) / 2;
    let partner = pairing_table(&order, pairing)?;
    let lay = BiLayout { n, m };
    if partner[lay.l1()] != lay.r1() || partner[lay.l2()] != lay.r2() {
        return Err(MapError::Structural("face ends are not paired as rainbows".into()));
    }
    let plain: Vec<usize> = (1..=2 * n)
        .map(|h| {
            lay.plain_of(partner[lay.plain(h)])
                .map(|p| p - 1)
                .ok_or_else(|| MapError::Structural("rainbow end paired with an inner label".into()))
        })
        .collect::<Result<_, _>>()?;
    let map = BicellularMap::from_partner(n, m, &plain)?;
    let labels = LabelSet::bicellular(n, m);
    let renaming = order.into_iter().zip(labels.labels().iter().copied()).collect();
    Ok(Relabeled { map, renaming })
}

/// Order-preserving rename onto canonical labels: one face gives a
/// unicellular map, two faces a bicellular map.
pub fn canonical_relabel<T: Eq + Hash + Clone + fmt::Debug>(
    faces: &[Vec<T>],
    pairing: &[(T, T)],
) -> Result<AnyMap, MapError> {
    match faces {
        [face] => Ok(AnyMap::Uni(relabel_unicellular(face, pairing)?.map)),
        [f1, f2] => Ok(AnyMap::Bi(relabel_bicellular(f1, f2, pairing)?.map)),
        _ => Err(MapError::Structural(format!(
            "{} faces given; expected 1 or 2",
            faces.len()
        ))),
    }
}

impl AnyMap {
    pub fn genus(&self) -> usize {
        match self {
            AnyMap::Uni(u) => u.genus(),
            AnyMap::Bi(b) => b.genus(),
        }
    }

    pub fn edges(&self) -> usize {
        match self {
            AnyMap::Uni(u) => u.edges(),
            AnyMap::Bi(b) => b.edges(),
        }
    }

    pub fn class(&self) -> Result<MapClass, MapError> {
        match self {
            AnyMap::Uni(u) => classify_unicellular(u),
            AnyMap::Bi(b) => Ok(classify_bicellular(b)),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyMap::Uni(_) => "unicellular",
            AnyMap::Bi(_) => "bicellular",
        }
    }
}

impl From<UnicellularMap> for AnyMap {
    fn from(u: UnicellularMap) -> Self {
        AnyMap::Uni(u)
    }
}

impl From<BicellularMap> for AnyMap {
    fn from(b: BicellularMap) -> Self {
        AnyMap::Bi(b)
    }
}
