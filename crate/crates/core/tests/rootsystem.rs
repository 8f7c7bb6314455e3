use std::collections::HashSet;

use parahoric::rootsystem::SumTarget;
use parahoric::{Root, RootSystem};

fn all_types() -> Vec<String> {
    let mut names = Vec::new();
    for n in 1..=8 {
        names.push(format!("A{n}"));
    }
    for n in 2..=8 {
        names.push(format!("B{n}"));
        names.push(format!("C{n}"));
    }
    for n in 4..=8 {
        names.push(format!("D{n}"));
    }
    names.extend(["E6", "E7", "E8", "F4", "G2"].map(String::from));
    names
}

fn expected_count(name: &str) -> usize {
    let n: usize = name[1..].parse().unwrap();
    match &name[..1] {
        "A" => n * (n + 1),
        "B" | "C" => 2 * n * n,
        "D" => 2 * n * (n - 1),
        "E" => [72, 126, 240][n - 6],
        "F" => 48,
        "G" => 12,
        _ => unreachable!(),
    }
}

#[test]
fn root_counts() {
    for name in all_types() {
        let rs = RootSystem::from_name(&name).unwrap();
        assert_eq!(rs.len(), expected_count(&name), "{name}");
        assert_eq!(rs.num_positive() * 2, rs.len(), "{name}");
    }
}

#[test]
fn negation_and_indexing() {
    for name in all_types() {
        let rs = RootSystem::from_name(&name).unwrap();
        let set: HashSet<&Root> = rs.roots().iter().collect();
        assert_eq!(set.len(), rs.len(), "{name}: duplicate roots");
        for (i, r) in rs.roots().iter().enumerate() {
            assert_eq!(rs.index_of(r), Some(i));
            assert_eq!(rs.root(rs.neg_index(i)), &r.neg(), "{name} {r}");
            assert_eq!(r.is_positive(), i < rs.num_positive());
        }
    }
}

#[test]
fn canonical_order() {
    for name in all_types() {
        let rs = RootSystem::from_name(&name).unwrap();
        let n = rs.rank();
        for i in 0..n {
            assert_eq!(rs.root(i), &Root::simple(n, i), "{name}");
        }
        let pos = rs.positives();
        for w in pos.windows(2) {
            assert!(w[0].height() < w[1].height() || (w[0].height() == w[1].height() && w[0].coeffs > w[1].coeffs));
        }
        for (i, r) in pos.iter().enumerate() {
            assert_eq!(rs.root(rs.num_positive() + i), &r.neg());
        }
    }
}

#[test]
fn sum_pairs_match_brute_force() {
    for name in all_types().into_iter().filter(|n| n != "E8") {
        let rs = RootSystem::from_name(&name).unwrap();
        let mut expected = Vec::new();
        for i in 0..rs.len() {
            for j in i + 1..rs.len() {
                let s = rs.root(i).add(rs.root(j));
                if s.coeffs.iter().all(|&c| c == 0) {
                    expected.push((i, j, SumTarget::Zero));
                } else if let Some(k) = rs.index_of(&s) {
                    expected.push((i, j, SumTarget::Root(k)));
                }
            }
        }
        let mut got = rs.sum_pairs().to_vec();
        got.sort_by_key(|&(i, j, _)| (i, j));
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn highest_root_dominates() {
    for name in all_types() {
        let rs = RootSystem::from_name(&name).unwrap();
        let c = rs.highest_coeffs();
        assert_eq!(&rs.highest().coeffs, c);
        let top = rs.positives().iter().filter(|r| r.height() == rs.highest().height()).count();
        assert_eq!(top, 1, "{name}");
        for r in rs.positives() {
            assert!(r.coeffs.iter().zip(c).all(|(a, b)| a <= b), "{name} {r}");
        }
        // |Φ| = rank · h and h = 1 + Σ c_α
        let h = rs.group_constants().coxeter;
        assert_eq!(h, 1 + c.iter().sum::<i64>(), "{name}");
        assert_eq!(rs.len() as i64, rs.rank() as i64 * h, "{name}");
    }
}

#[test]
fn cartan_pairing() {
    for name in ["A3", "B3", "C3", "D4", "G2", "F4"] {
        let rs = RootSystem::from_name(name).unwrap();
        let n = rs.rank();
        for i in 0..n {
            assert_eq!(rs.cartan()[i][i], 2);
            for j in 0..n {
                // a string through α_j in direction α_i has length −C[i][j] + 1 for i ≠ j
                if i != j {
                    let mut len = 0;
                    let mut r = Root::simple(n, j);
                    while rs.index_of(&r).is_some() {
                        len += 1;
                        r = r.add(&Root::simple(n, i));
                    }
                    assert_eq!(len, 1 - rs.cartan()[i][j], "{name} {i} {j}");
                }
            }
        }
    }
}

#[test]
fn bad_names() {
    for bad in ["A0", "B1", "E9", "F5", "G3", "X2", "", "A"] {
        assert!(RootSystem::from_name(bad).is_err(), "{bad}");
    }
}
