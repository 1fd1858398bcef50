//! Brute-force oracles that avoid the library's permutation type.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cellmaps::perm::Label;

/// Cycles of a permutation given as an image table.
pub fn cycles_of(image: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; image.len()];
    let mut out = Vec::new();
    for s in 0..image.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = image[x];
        }
        out.push(c);
    }
    out
}

/// Genus of a one-face planted map from full Euler `V - E + F = 2 - 2g`,
/// with the plant edge and plant vertex counted. `partner` is 0-based on
/// the plain half-edges.
pub fn naive_uni_genus(partner: &[usize]) -> i64 {
    let size = partner.len() + 2;
    // face positions 0..size, 0 = L, size-1 = R
    let mut alpha = vec![0; size];
    alpha[0] = size - 1;
    alpha[size - 1] = 0;
    for (i, &j) in partner.iter().enumerate() {
        alpha[i + 1] = j + 1;
    }
    let gamma: Vec<usize> = (0..size).map(|h| (h + 1) % size).collect();
    let sigma: Vec<usize> = (0..size).map(|h| alpha[gamma[h]]).collect();
    let v = cycles_of(&sigma).len() as i64;
    let e = (size / 2) as i64;
    let chi = v - e + 1;
    assert_eq!(chi % 2, 0, "odd Euler characteristic");
    (2 - chi) / 2
}

/// `tau` of a bicellular layout on positions `0..2n+4` ordered
/// `L1, 1..m, R1, L2, m+1..2n, R2`.
pub fn naive_tau(m: usize, partner: &[usize]) -> Vec<usize> {
    let n2 = partner.len();
    let size = n2 + 4;
    let pos = |h: usize| if h < m { h + 1 } else { h + 3 };
    let (l1, r1, l2, r2) = (0, m + 1, m + 2, size - 1);
    let mut beta = vec![0; size];
    beta[l1] = r1;
    beta[r1] = l1;
    beta[l2] = r2;
    beta[r2] = l2;
    for (i, &j) in partner.iter().enumerate() {
        beta[pos(i)] = pos(j);
    }
    let omega: Vec<usize> = (0..size)
        .map(|h| {
            if h == r1 {
                l1
            } else if h == r2 {
                l2
            } else {
                h + 1
            }
        })
        .collect();
    (0..size).map(|h| beta[omega[h]]).collect()
}

/// Genus of a bicellular layout from `V - E + F = 2 - 2g`, both plants and
/// both rainbow edges counted.
pub fn naive_bi_genus(m: usize, partner: &[usize]) -> i64 {
    let tau = naive_tau(m, partner);
    let v = cycles_of(&tau).len() as i64;
    let e = (partner.len() / 2 + 2) as i64;
    (2 - (v - e + 2)) / 2
}

/// Union-find connectivity of the graph with `tau` cycles (plants removed)
/// as vertices and plain pairs as edges.
pub fn bicellular_connected(m: usize, partner: &[usize]) -> bool {
    let tau = naive_tau(m, partner);
    let size = tau.len();
    let plants = [m + 1, size - 1];
    let cyc = cycles_of(&tau);
    let mut vid = vec![usize::MAX; size];
    let mut verts = 0;
    for c in &cyc {
        if c.len() == 1 && plants.contains(&c[0]) {
            continue;
        }
        for &h in c {
            vid[h] = verts;
        }
        verts += 1;
    }
    let mut parent: Vec<usize> = (0..verts).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let pos = |h: usize| if h < m { h + 1 } else { h + 3 };
    for (i, &j) in partner.iter().enumerate() {
        let (a, b) = (find(&mut parent, vid[pos(i)]), find(&mut parent, vid[pos(j)]));
        parent[a] = b;
    }
    let roots: BTreeSet<usize> = (0..verts).map(|v| find(&mut parent, v)).collect();
    roots.len() == 1
}

/// All perfect matchings of `0..size` as partner tables, by recursion.
pub fn all_matchings(size: usize) -> Vec<Vec<usize>> {
    fn go(p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match p.iter().position(|&x| x == usize::MAX) {
            None => out.push(p.clone()),
            Some(a) => {
                for b in a + 1..p.len() {
                    if p[b] == usize::MAX {
                        p[a] = b;
                        p[b] = a;
                        go(p, out);
                        p[a] = usize::MAX;
                        p[b] = usize::MAX;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    if size.is_multiple_of(2) {
        go(&mut vec![usize::MAX; size], &mut out);
    }
    out
}

/// Catalan numbers from `C_{n+1} = sum C_i C_{n-i}`.
pub fn catalan(upto: usize) -> Vec<u64> {
    let mut c = vec![1u64];
    for n in 0..upto {
        c.push((0..=n).map(|i| c[i] * c[n - i]).sum());
    }
    c
}

/// A cycle rotated to start at its smallest element under `key`.
pub fn normalize<T: Clone, K: Ord>(c: &[T], key: impl Fn(&T) -> K) -> Vec<T> {
    let k = (0..c.len()).min_by_key(|&i| key(&c[i])).unwrap_or(0);
    c[k..].iter().chain(c[..k].iter()).cloned().collect()
}

/// Ambient rank of a unicellular label.
pub fn uni_rank(l: &Label) -> u32 {
    match l {
        Label::L => 0,
        Label::Plain(i) => *i,
        _ => u32::MAX,
    }
}

/// The three class predicates evaluated directly from a partner table
/// (1-based half-edges; `sigma` cycles from the naive route).
pub fn class_predicates(partner: &[usize]) -> (bool, bool, bool) {
    let size = partner.len() + 2;
    let mut alpha = vec![0; size];
    alpha[0] = size - 1;
    alpha[size - 1] = 0;
    for (i, &j) in partner.iter().enumerate() {
        alpha[i + 1] = j + 1;
    }
    let sigma: Vec<usize> = (0..size).map(|h| alpha[(h + 1) % size]).collect();
    let cyc = cycles_of(&sigma);
    let vertex = |h: usize| cyc.iter().position(|c| c.contains(&h)).unwrap();
    let a1 = alpha[1];
    let same = vertex(1) == vertex(a1);
    let exists = (2..a1).any(|k| alpha[k] > a1);
    let forall = (2..a1).all(|k| alpha[k] < a1);
    (!same && exists, same && exists, !same && forall)
}
