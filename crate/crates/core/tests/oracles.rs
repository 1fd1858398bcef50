//! Library results against brute-force oracles that recompute everything
//! from raw partner tables.

mod common;

use cellmaps::bijections::{beta_forward, beta_inverse, eta, eta_traced, theta, varsigma, Decomposition};
use cellmaps::enumerate::{count_table, enumerate_bicellular, enumerate_unicellular};
use cellmaps::maps::{BicellularMap, MapClass, MapError, UnicellularMap};
use cellmaps::perm::Label;

fn partner_of(u: &UnicellularMap) -> Vec<usize> {
    (1..=2 * u.edges()).map(|h| u.partner(h) - 1).collect()
}

#[test]
fn planar_counts_are_catalan() {
    let t = count_table(7);
    for (n, c) in common::catalan(7).into_iter().enumerate() {
        assert_eq!(t.uni(0, n), c, "n = {n}");
    }
}

#[test]
fn unicellular_genus_matches_euler_count() {
    for n in 0..=6 {
        for p in common::all_matchings(2 * n) {
            let u = UnicellularMap::from_partner(n, &p).unwrap();
            assert_eq!(u.genus() as i64, common::naive_uni_genus(&p), "{p:?}");
            assert!(2 * u.genus() <= n);
        }
    }
}

#[test]
fn enumerator_is_exhaustive_and_ordered() {
    for n in 0..=5 {
        let lib: Vec<Vec<usize>> = enumerate_unicellular(n, None).map(|u| partner_of(&u)).collect();
        assert_eq!(lib, common::all_matchings(2 * n), "n = {n}");
    }
}

#[test]
fn bicellular_maps_are_exactly_the_connected_layouts() {
    for n in 1..=5 {
        let mut accepted = 0;
        for m in 1..2 * n {
            for p in common::all_matchings(2 * n) {
                let connected = common::bicellular_connected(m, &p);
                match BicellularMap::from_partner(n, m, &p) {
                    Ok(b) => {
                        assert!(connected, "accepted disconnected layout m={m} {p:?}");
                        assert_eq!(b.genus() as i64, common::naive_bi_genus(m, &p));
                        let cross = (0..m).any(|h| p[h] >= m);
                        assert!(cross);
                        accepted += 1;
                    }
                    Err(MapError::Disconnected) => assert!(!connected, "rejected connected layout m={m} {p:?}"),
                    Err(e) => panic!("unexpected error {e} for m={m} {p:?}"),
                }
                // connectivity is equivalent to a cross edge
                assert_eq!(connected, (0..m).any(|h| p[h] >= m));
            }
        }
        let enumerated = enumerate_bicellular(n, None).count();
        assert_eq!(accepted, enumerated, "n = {n}");
    }
}

#[test]
fn bicellular_vertices_match_naive_tau() {
    for n in 1..=4 {
        for b in enumerate_bicellular(n, None) {
            let m = b.split();
            let pos = |l: &Label| -> usize {
                match *l {
                    Label::L1 => 0,
                    Label::R1 => m + 1,
                    Label::L2 => m + 2,
                    Label::R2 => 2 * n + 3,
                    Label::Plain(i) if (i as usize) <= m => i as usize,
                    Label::Plain(i) => i as usize + 2,
                    _ => unreachable!(),
                }
            };
            let partner: Vec<usize> = {
                let mut p = vec![0; 2 * n];
                for (a, c) in b.pairs() {
                    p[a as usize - 1] = c as usize - 1;
                    p[c as usize - 1] = a as usize - 1;
                }
                p
            };
            let tau = common::naive_tau(m, &partner);
            let plants = [m + 1, 2 * n + 3];
            let mut want: Vec<Vec<usize>> = common::cycles_of(&tau)
                .into_iter()
                .filter(|c| !(c.len() == 1 && plants.contains(&c[0])))
                .map(|c| common::normalize(&c, |&x| x))
                .collect();
            want.sort();
            let mut got: Vec<Vec<usize>> = b
                .vertices()
                .iter()
                .map(|c| common::normalize(&c.iter().map(pos).collect::<Vec<_>>(), |&x| x))
                .collect();
            got.sort();
            assert_eq!(got, want);
        }
    }
}

/// Vertex cycles of `theta(u1, u2)` predicted by surgery: the plant
/// vertex of `u1` disappears, the rest of `u1`'s cycles keep their labels, and
/// `u2`'s first vertex absorbs the new edge right after `L`.
#[test]
fn theta_vertices_match_surgery() {
    for total in 0..=4 {
        for j in 0..=total {
            for u1 in enumerate_unicellular(j, None) {
                for u2 in enumerate_unicellular(total - j, None) {
                    let u = theta(&u1, &u2).unwrap();
                    assert_eq!(u.edges(), total + 1);
                    // shift maps u1 plain i -> i+1, u2 plain i -> i + 2j + 2
                    let s1 = |l: &Label| match *l {
                        Label::Plain(i) => Label::Plain(i + 1),
                        Label::L => Label::Plain(1),
                        Label::R => Label::Plain(2 * j as u32 + 2),
                        _ => unreachable!(),
                    };
                    let s2 = |l: &Label| match *l {
                        Label::Plain(i) => Label::Plain(i + 2 * j as u32 + 2),
                        other => other,
                    };
                    let mut want: Vec<Vec<Label>> = Vec::new();
                    for c in u1.vertices() {
                        if c == [Label::R] {
                            continue;
                        }
                        want.push(c.iter().map(s1).collect());
                    }
                    for c in u2.vertices().into_iter().filter(|c| c != &[Label::R]) {
                        let mut c: Vec<Label> = c.iter().map(s2).collect();
                        if c[0] == Label::L {
                            c.insert(1, Label::Plain(2 * j as u32 + 2));
                        }
                        want.push(c);
                    }
                    let key = common::uni_rank;
                    let canon = |v: Vec<Vec<Label>>| {
                        let mut v: Vec<Vec<Label>> = v.iter().map(|c| common::normalize(c, key)).collect();
                        v.sort_by_key(|c| c.iter().map(key).collect::<Vec<_>>());
                        v
                    };
                    // both sides drop the surviving `(R)` plant cycle
                    let got = canon(u.vertices().into_iter().filter(|c| c != &[Label::R]).collect());
                    assert_eq!(got, canon(want), "u1={:?} u2={:?}", u1.pairs(), u2.pairs());
                }
            }
        }
    }
}

/// `eta` merges the two faces without touching vertices except that the
/// `R1` plant vanishes into the vertex of `L2`, right after `L2`.
#[test]
fn eta_vertices_match_surgery() {
    for n in 1..=4 {
        for b in enumerate_bicellular(n, None) {
            let (u, origin) = eta_traced(&b).unwrap();
            let labels = u.alpha().label_set().clone();
            let index = |l: &Label| labels.index_of(*l).unwrap();
            let mut want: Vec<Vec<Label>> = b
                .vertices()
                .into_iter()
                .map(|mut c| {
                    if let Some(k) = c.iter().position(|l| *l == Label::L2) {
                        c.insert(k + 1, Label::R1);
                    }
                    c
                })
                .collect();
            want.push(vec![Label::R2]);
            let mut got: Vec<Vec<Label>> = u
                .vertices()
                .into_iter()
                .map(|c| c.iter().map(|l| origin[index(l)]).collect())
                .collect();
            let canon = |v: &mut Vec<Vec<Label>>| {
                for c in v.iter_mut() {
                    let k = (0..c.len()).min_by_key(|&i| c[i]).unwrap();
                    c.rotate_left(k);
                }
                v.sort();
            };
            canon(&mut want);
            canon(&mut got);
            assert_eq!(got, want, "b = {:?} m = {}", b.pairs(), b.split());
        }
    }
}

#[test]
fn classes_match_independent_predicates() {
    for n in 1..=6 {
        for p in common::all_matchings(2 * n) {
            let u = UnicellularMap::from_partner(n, &p).unwrap();
            let (i, ii, iii) = common::class_predicates(&p);
            let want = match (i, ii, iii) {
                (true, false, false) => MapClass::I,
                (false, true, false) => MapClass::II,
                (false, false, true) => MapClass::III,
                other => panic!("predicates {other:?} for {p:?}"),
            };
            assert_eq!(u.class().unwrap(), want);
            if u.genus() == 0 {
                assert_eq!(want, MapClass::III);
            }
        }
    }
}

#[test]
fn both_round_trips_are_identities() {
    for n in 1..=6 {
        for u in enumerate_unicellular(n, None).filter(|u| u.genus() >= 1) {
            let x = beta_inverse(&u).unwrap();
            match &x {
                Decomposition::Pair(a, b) => {
                    assert_eq!(u.class().unwrap(), MapClass::III);
                    assert_eq!(a.edges() + b.edges() + 1, n);
                    assert_eq!(a.genus() + b.genus(), u.genus());
                }
                Decomposition::Bi(b) => {
                    assert_ne!(u.class().unwrap(), MapClass::III);
                    assert_eq!(b.edges() + 1, n);
                    assert_eq!(b.genus() + 1, u.genus());
                    let expect = if u.class().unwrap() == MapClass::I {
                        MapClass::BI
                    } else {
                        MapClass::BII
                    };
                    assert_eq!(b.class(), expect);
                    assert_eq!(varsigma(&u).unwrap(), *b);
                }
            }
            assert_eq!(beta_forward(&x).unwrap(), u);
        }
    }
    for n in 1..=5 {
        for b in enumerate_bicellular(n, None) {
            let u = eta(&b).unwrap();
            assert_eq!(u.genus(), b.genus() + 1);
            assert_eq!(varsigma(&u).unwrap(), b);
        }
    }
}

#[test]
fn wrong_class_inputs_are_rejected() {
    // a genus-0 map has no preimage
    let u = UnicellularMap::from_pairing(2, &[(1, 2), (3, 4)]).unwrap();
    assert!(beta_inverse(&u).is_err());
    // psi only cuts class III maps
    let torus = UnicellularMap::from_pairing(2, &[(1, 3), (2, 4)]).unwrap();
    assert_eq!(torus.class().unwrap(), MapClass::II);
    assert!(cellmaps::bijections::psi(&torus).is_err());
    let planar = UnicellularMap::from_pairing(1, &[(1, 2)]).unwrap();
    assert!(varsigma(&planar).is_err());
}
