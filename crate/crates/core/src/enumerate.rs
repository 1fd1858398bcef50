//! Exhaustive generation of planted maps, exact count tables, and checks of
//! the counting recursion and of the bijection.
//!
//! With the face(s) fixed canonically a map is determined by a perfect
//! matching of its plain half-edges, so generation walks all `(2n-1)!!`
//! matchings in lexicographic order of their partner tables. The search
//! space splits by the partner of the first half-edge; parallel runs
//! process those blocks independently and merge them in order.

use std::fmt;

use rayon::prelude::*;

use crate::bijections::{beta_forward, beta_inverse, theta, Decomposition};
use crate::maps::{classify_unicellular, BicellularMap, MapClass, UnicellularMap};

/// Lexicographic stream of perfect matchings on `0..size`, as partner tables.
#[derive(Clone, Debug)]
pub struct PerfectMatchings {
    partner: Vec<usize>,
    stack: Vec<(usize, usize)>,
    /// Pairs below this stack depth are fixed and never revisited.
    floor: usize,
    state: State,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

const FREE: usize = usize::MAX;

impl PerfectMatchings {
    pub fn new(size: usize) -> Self {
        PerfectMatchings {
            partner: vec![FREE; size],
            stack: Vec::new(),
            floor: 0,
            state: if size.is_multiple_of(2) {
                State::Fresh
            } else {
                State::Done
            },
        }
    }

    /// Only the matchings pairing `0` with `first`, in the same order.
    pub fn with_first(size: usize, first: usize) -> Self {
        let mut it = Self::new(size);
        if size == 0 || first == 0 || first >= size {
            it.state = State::Done;
            return it;
        }
        it.pair(0, first);
        it.floor = 1;
        it
    }

    fn pair(&mut self, a: usize, b: usize) {
        self.partner[a] = b;
        self.partner[b] = a;
        self.stack.push((a, b));
    }

    fn next_free(&self, from: usize) -> Option<usize> {
        (from..self.partner.len()).find(|&i| self.partner[i] == FREE)
    }

    fn fill(&mut self) {
        while let Some(a) = self.next_free(0) {
            let b = self.next_free(a + 1).expect("even size");
            self.pair(a, b);
        }
    }
}

impl Iterator for PerfectMatchings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                self.fill();
                return Some(self.partner.clone());
            }
            State::Running => {}
        }
        while self.stack.len() > self.floor {
            let (a, b) = self.stack.pop().unwrap();
            self.partner[a] = FREE;
            self.partner[b] = FREE;
            if let Some(c) = self.next_free(b + 1) {
                self.pair(a, c);
                self.fill();
                return Some(self.partner.clone());
            }
        }
        self.state = State::Done;
        None
    }
}

/// `(2n-1)!!`, the number of perfect matchings on `2n` points.
pub fn double_factorial_odd(n: usize) -> u64 {
    (1..=n as u64).map(|k| 2 * k - 1).product()
}

/// Which split indices a bicellular map may have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitRange {
    /// `1 <= m <= 2n-1`: each face carries at least one half-edge.
    Inclusive,
    /// `1 < m < 2n-1`.
    Strict,
}

impl SplitRange {
    #[allow(clippy::reversed_empty_ranges)]
    pub fn splits(self, n: usize) -> std::ops::RangeInclusive<usize> {
        match (self, n) {
            (_, 0) => 1..=0,
            (SplitRange::Inclusive, _) => 1..=2 * n - 1,
            (SplitRange::Strict, _) => 2..=(2 * n).saturating_sub(2),
        }
    }
}

/// All unicellular maps with `n` edges, optionally of one genus.
pub fn enumerate_unicellular(n: usize, genus: Option<usize>) -> impl Iterator<Item = UnicellularMap> {
    PerfectMatchings::new(2 * n)
        .map(move |p| UnicellularMap::from_partner(n, &p).expect("matching gives a valid map"))
        .filter(move |u| genus.is_none_or(|g| u.genus() == g))
}

/// All bicellular maps with `n` edges, `m` ascending then matching order.
pub fn enumerate_bicellular(n: usize, genus: Option<usize>) -> impl Iterator<Item = BicellularMap> {
    enumerate_bicellular_in(n, genus, SplitRange::Inclusive)
}

pub fn enumerate_bicellular_in(
    n: usize,
    genus: Option<usize>,
    range: SplitRange,
) -> impl Iterator<Item = BicellularMap> {
    range.splits(n).flat_map(move |m| {
        PerfectMatchings::new(2 * n)
            .filter(move |p| (0..m).any(|i| p[i] >= m))
            .map(move |p| BicellularMap::from_partner(n, m, &p).expect("crossing matching gives a valid map"))
            .filter(move |b| genus.is_none_or(|g| b.genus() == g))
    })
}

/// Exact counts `c_g(n)` of unicellular and `c2_g(n)` of bicellular maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub max_n: usize,
    /// `uni[g][n]`.
    pub uni: Vec<Vec<u64>>,
    /// `bi[g][n]`.
    pub bi: Vec<Vec<u64>>,
    pub range: SplitRange,
}

impl CountTable {
    pub fn uni(&self, g: usize, n: usize) -> u64 {
        self.uni.get(g).and_then(|r| r.get(n)).copied().unwrap_or(0)
    }

    pub fn bi(&self, g: usize, n: usize) -> u64 {
        self.bi.get(g).and_then(|r| r.get(n)).copied().unwrap_or(0)
    }

    /// Space-delimited `g n count kind` rows, header first.
    pub fn to_text(&self) -> String {
        let mut s = String::from("g n count kind\n");
        for (kind, tab) in [("uni", &self.uni), ("bi", &self.bi)] {
            for n in 0..=self.max_n {
                for g in 0..=n / 2 {
                    let c = tab.get(g).and_then(|r| r.get(n)).copied().unwrap_or(0);
                    s.push_str(&format!("{g} {n} {c} {kind}\n"));
                }
            }
        }
        s
    }
}

/// Runs `f` over each first-pair block of the matchings on `size` points,
/// with `workers` threads (1 means sequential), returning results in block order.
fn per_block<T: Send>(size: usize, workers: usize, f: impl Fn(PerfectMatchings) -> T + Sync) -> Vec<T> {
    let blocks: Vec<usize> = if size == 0 { vec![0] } else { (1..size).collect() };
    let run = |first: usize| {
        let it = if size == 0 {
            PerfectMatchings::new(0)
        } else {
            PerfectMatchings::with_first(size, first)
        };
        f(it)
    };
    if workers <= 1 {
        return blocks.into_iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| blocks.into_par_iter().map(run).collect())
}

fn add_into(acc: &mut Vec<u64>, part: &[u64]) {
    if acc.len() < part.len() {
        acc.resize(part.len(), 0);
    }
    for (a, p) in acc.iter_mut().zip(part) {
        *a += p;
    }
}

/// Counts by genus of unicellular maps with `n` edges.
fn uni_genus_counts(n: usize, workers: usize) -> Vec<u64> {
    let parts = per_block(2 * n, workers, |it| {
        let mut c = vec![0u64; n / 2 + 1];
        for p in it {
            c[UnicellularMap::from_partner(n, &p).expect("valid").genus()] += 1;
        }
        c
    });
    let mut total = vec![0; n / 2 + 1];
    for p in parts {
        add_into(&mut total, &p);
    }
    total
}

fn bi_genus_counts(n: usize, range: SplitRange, workers: usize) -> Vec<u64> {
    let mut total = vec![0; n / 2 + 1];
    for m in range.splits(n) {
        let parts = per_block(2 * n, workers, |it| {
            let mut c = vec![0u64; n / 2 + 1];
            for p in it.filter(|p| (0..m).any(|i| p[i] >= m)) {
                c[BicellularMap::from_partner(n, m, &p).expect("valid").genus()] += 1;
            }
            c
        });
        for p in parts {
            add_into(&mut total, &p);
        }
    }
    total
}

fn transpose(by_n: Vec<Vec<u64>>, max_n: usize) -> Vec<Vec<u64>> {
    let rows = max_n / 2 + 1;
    let mut out = vec![vec![0u64; max_n + 1]; rows];
    for (n, col) in by_n.into_iter().enumerate() {
        for (g, c) in col.into_iter().enumerate() {
            out[g][n] = c;
        }
    }
    out
}

pub fn count_table(max_n: usize) -> CountTable {
    count_table_with(max_n, SplitRange::Inclusive, 1)
}

/// Counts with a given split range and worker count; the result does not
/// depend on `workers`.
pub fn count_table_with(max_n: usize, range: SplitRange, workers: usize) -> CountTable {
    let uni = (0..=max_n).map(|n| uni_genus_counts(n, workers)).collect();
    let bi = (0..=max_n)
        .map(|n| {
            if n == 0 {
                vec![0]
            } else {
                bi_genus_counts(n, range, workers)
            }
        })
        .collect();
    CountTable {
        max_n,
        uni: transpose(uni, max_n),
        bi: transpose(bi, max_n),
        range,
    }
}

/// One `(g, n)` cell of the recursion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionCell {
    pub g: usize,
    pub n: usize,
    pub lhs_pairs: u64,
    pub lhs_bicellular: u64,
    pub rhs: u64,
}

impl RecursionCell {
    pub fn pass(&self) -> bool {
        self.lhs_pairs + self.lhs_bicellular == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub cells: Vec<RecursionCell>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.cells.iter().all(RecursionCell::pass)
    }

    pub fn cell(&self, g: usize, n: usize) -> Option<&RecursionCell> {
        self.cells.iter().find(|c| c.g == g && c.n == n)
    }

    pub fn summary(&self) -> String {
        format!(
            "RECURSION {} cells={}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.cells.len()
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            writeln!(
                f,
                "g={} n={} pairs={} bicellular={} rhs={} {}",
                c.g,
                c.n,
                c.lhs_pairs,
                c.lhs_bicellular,
                c.rhs,
                if c.pass() { "PASS" } else { "FAIL" }
            )?;
        }
        writeln!(f, "{}", self.summary())
    }
}

/// Evaluates both sides of the recursion on a count table, for every
/// `(g, n)` with `n+1 <= max_n` and `g+1 <= (n+1)/2`.
pub fn check_recursion(table: &CountTable) -> VerificationReport {
    let mut cells = Vec::new();
    for n in 1..table.max_n {
        for g in 0..n.div_ceil(2) {
            let mut pairs = 0;
            for g1 in 0..=g + 1 {
                for i in 0..=n {
                    pairs += table.uni(g1, i) * table.uni(g + 1 - g1, n - i);
                }
            }
            cells.push(RecursionCell {
                g,
                n,
                lhs_pairs: pairs,
                lhs_bicellular: table.bi(g, n),
                rhs: table.uni(g + 1, n + 1),
            });
        }
    }
    VerificationReport { cells }
}

pub fn verify_recursion(max_n: usize) -> VerificationReport {
    verify_recursion_with(max_n, SplitRange::Inclusive, 1)
}

pub fn verify_recursion_with(max_n: usize, range: SplitRange, workers: usize) -> VerificationReport {
    check_recursion(&count_table_with(max_n, range, workers))
}

/// Outcome of checking the bijection onto `U_{g,n}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BijectionReport {
    pub n: usize,
    pub g: usize,
    /// Matchings scanned.
    pub scanned: u64,
    pub maps: u64,
    pub class_i: u64,
    pub class_ii: u64,
    pub class_iii: u64,
    /// Maps `u` with `beta_forward(beta_inverse(u)) != u` or an error.
    pub forward_failures: u64,
    /// Pair and bicellular preimages enumerated independently.
    pub decompositions: u64,
    /// Preimages `x` with `beta_inverse(beta_forward(x)) != x` or an error.
    pub inverse_failures: u64,
}

impl BijectionReport {
    pub fn pass(&self) -> bool {
        self.forward_failures == 0
            && self.inverse_failures == 0
            && self.class_i + self.class_ii + self.class_iii == self.maps
            && self.decompositions == self.maps
    }

    fn merge(&mut self, o: &BijectionReport) {
        self.scanned += o.scanned;
        self.maps += o.maps;
        self.class_i += o.class_i;
        self.class_ii += o.class_ii;
        self.class_iii += o.class_iii;
        self.forward_failures += o.forward_failures;
        self.decompositions += o.decompositions;
        self.inverse_failures += o.inverse_failures;
    }
}

impl fmt::Display for BijectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "edges={} genus={} scanned={}", self.n, self.g, self.scanned)?;
        writeln!(
            f,
            "maps={} class_I={} class_II={} class_III={}",
            self.maps, self.class_i, self.class_ii, self.class_iii
        )?;
        writeln!(f, "forward_failures={}", self.forward_failures)?;
        writeln!(
            f,
            "decompositions={} inverse_failures={}",
            self.decompositions, self.inverse_failures
        )?;
        writeln!(
            f,
            "BIJECTION {} maps={}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.maps
        )
    }
}

fn round_trip_decomposition(x: Decomposition) -> bool {
    beta_forward(&x)
        .and_then(|u| beta_inverse(&u))
        .map(|y| y == x)
        .unwrap_or(false)
}

pub fn verify_bijection(n: usize, g: usize) -> BijectionReport {
    verify_bijection_with(n, g, 1)
}

/// Checks both round trips for every map in `U_{g,n}` and every preimage
/// (pairs of total genus `g` with `n-1` edges, and `B_{g-1,n-1}`).
pub fn verify_bijection_with(n: usize, g: usize, workers: usize) -> BijectionReport {
    let mut report = BijectionReport {
        n,
        g,
        ..Default::default()
    };
    if n == 0 || g == 0 {
        return report;
    }
    let parts = per_block(2 * n, workers, |it| {
        let mut r = BijectionReport::default();
        for p in it {
            r.scanned += 1;
            let u = UnicellularMap::from_partner(n, &p).expect("valid");
            if u.genus() != g {
                continue;
            }
            r.maps += 1;
            match classify_unicellular(&u) {
                Ok(MapClass::I) => r.class_i += 1,
                Ok(MapClass::II) => r.class_ii += 1,
                Ok(MapClass::III) => r.class_iii += 1,
                _ => {}
            }
            let ok = beta_inverse(&u)
                .and_then(|x| beta_forward(&x))
                .map(|v| v == u)
                .unwrap_or(false);
            if !ok {
                r.forward_failures += 1;
            }
        }
        r
    });
    for p in &parts {
        report.merge(p);
    }

    let rest = n - 1;
    for j in 0..=rest {
        for g1 in 0..=g {
            let firsts: Vec<UnicellularMap> = enumerate_unicellular(j, Some(g1)).collect();
            if firsts.is_empty() {
                continue;
            }
            for u2 in enumerate_unicellular(rest - j, Some(g - g1)) {
                for u1 in &firsts {
                    report.decompositions += 1;
                    if !round_trip_decomposition(Decomposition::Pair(u1.clone(), u2.clone())) {
                        report.inverse_failures += 1;
                    }
                }
            }
        }
    }
    if rest >= 1 {
        for b in enumerate_bicellular(rest, Some(g - 1)) {
            report.decompositions += 1;
            if !round_trip_decomposition(Decomposition::Bi(b)) {
                report.inverse_failures += 1;
            }
        }
    }
    report
}

/// Every pair `(u1, u2)` with `e(u1) + e(u2) = n`, in enumeration order.
pub fn enumerate_pairs(n: usize) -> impl Iterator<Item = (UnicellularMap, UnicellularMap)> {
    (0..=n).flat_map(move |j| {
        let firsts: Vec<UnicellularMap> = enumerate_unicellular(j, None).collect();
        enumerate_unicellular(n - j, None).flat_map(move |u2| {
            let firsts = firsts.clone();
            firsts.into_iter().map(move |u1| (u1, u2.clone()))
        })
    })
}

/// Image of every pair with `n` total edges under gluing.
pub fn glued_pairs(n: usize) -> impl Iterator<Item = UnicellularMap> {
    enumerate_pairs(n).map(|(a, b)| theta(&a, &b).expect("gluing succeeds"))
}
