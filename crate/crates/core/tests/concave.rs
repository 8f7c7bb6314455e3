mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use parahoric::rational::{frac, int};
use parahoric::{ApartmentPoint, BoundedSet, ConcaveMap, ConcaveTuple, Error, RootSystem, TypeWitness};

const SMALL: [&str; 5] = ["A2", "A3", "B2", "B3", "G2"];
const UP_TO_RANK_4: [&str; 10] = ["A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2"];

fn rs(name: &str) -> RootSystem {
    RootSystem::from_name(name).unwrap()
}

#[test]
fn point_and_set_maps_are_concave() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in UP_TO_RANK_4 {
        let r = rs(name);
        let sums = multisets(&r, 3);
        for _ in 0..20 {
            let p = random_point(&r, &mut rng);
            let (z, v) = to_ints(&r.from_point(&p).unwrap());
            assert!(exhaustively_concave(z, &v, &sums), "{name} m_θ");
            let omega = BoundedSet::new((0..3).map(|_| random_point(&r, &mut rng)).collect()).unwrap();
            let f = r.from_set(&omega).unwrap();
            let (z, v) = to_ints(&f);
            assert!(exhaustively_concave(z, &v, &sums), "{name} f_Ω");
            assert_eq!(r.is_concave(&f).unwrap(), None);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn point_maps_are_type_one(pick in 0usize..5, seed in any::<u64>()) {
        let r = rs(SMALL[pick]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = r.from_point(&random_point(&r, &mut rng)).unwrap();
        match r.classify(&f).unwrap() {
            TypeWitness::TypeI(theta) => prop_assert_eq!(r.from_point(&theta).unwrap(), f.clone()),
            w => prop_assert!(false, "expected TypeI, got {}", w),
        }
        // point maps are already optimal
        prop_assert_eq!(r.regularize(&f).unwrap(), f);
    }

    #[test]
    fn set_maps_are_never_type_three(pick in 0usize..5, seed in any::<u64>(), size in 2usize..4) {
        let r = rs(SMALL[pick]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let omega = BoundedSet::new((0..size).map(|_| random_point(&r, &mut rng)).collect()).unwrap();
        let f = r.from_set(&omega).unwrap();
        match r.classify(&f).unwrap() {
            TypeWitness::TypeI(theta) => prop_assert_eq!(r.from_point(&theta).unwrap(), f),
            TypeWitness::TypeII(w) => prop_assert_eq!(r.from_set(&w).unwrap(), f),
            TypeWitness::TypeIII(c) => prop_assert!(false, "TypeIII {}", c),
        }
    }

    #[test]
    fn combine_sums_and_sup_maxes(pick in 0usize..5, seed in any::<u64>(), k in 1usize..5) {
        let r = rs(SMALL[pick]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let maps: Vec<ConcaveMap> = (0..k).map(|_| r.from_point(&random_point(&r, &mut rng)).unwrap()).collect();
        let fs = ConcaveTuple::new(maps.clone()).unwrap();
        let subset: Vec<usize> = (0..k).filter(|_| rng.random_bool(0.6)).collect();
        if subset.is_empty() {
            prop_assert!(matches!(fs.combine(&subset), Err(Error::EmptySubset)));
        } else {
            let c = fs.combine(&subset).unwrap();
            for i in 0..r.len() {
                let sum = subset.iter().fold(int(0), |acc, &s| acc + &maps[s].values[i]);
                prop_assert_eq!(&c.values[i], &sum);
            }
            prop_assert_eq!(r.is_concave(&c).unwrap(), None);
        }
        let sup = fs.sup();
        for i in 0..r.len() {
            let max = maps.iter().map(|f| f.values[i].clone()).max().unwrap();
            prop_assert_eq!(&sup.values[i], &max);
        }
        prop_assert_eq!(r.is_concave(&sup).unwrap(), None);
    }
}

#[test]
fn regularize_matches_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ["A2", "B2", "G2", "A3", "B3", "C3"] {
        let r = rs(name);
        let mut done = 0;
        while done < 12 {
            let Some(f) = random_concave(&r, &mut rng, -2, 3) else { continue };
            done += 1;
            let g = r.regularize(&f).unwrap();
            for (i, alpha) in r.roots().iter().enumerate() {
                let expect = lp_min_by_vertices(&r, &f, alpha).ceil();
                assert_eq!(g.values[i], expect, "{name} {f} at {alpha}");
                assert!(g.values[i] <= f.values[i]);
            }
            assert_eq!(r.is_concave(&g).unwrap(), None, "{name} {g}");
            assert_eq!(r.regularize(&g).unwrap(), g, "{name}: not idempotent on {f}");
        }
    }
}

#[test]
fn type_three_certificates_have_no_grid_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut seen = 0;
    for name in ["B2", "G2"] {
        let r = rs(name);
        for _ in 0..400 {
            let Some(f) = random_concave(&r, &mut rng, -1, 2) else { continue };
            if let TypeWitness::TypeIII(cert) = r.classify(&f).unwrap() {
                seen += 1;
                let k = r.index_of(&cert).unwrap();
                let (_, v) = to_ints(&f);
                assert!(grid_witness(&r, &v, k, -3, 3, 12).is_none(), "{name} {f}");
            }
        }
    }
    assert!(seen > 0, "no TypeIII map sampled");
}

#[test]
fn ceiling_and_errors() {
    let r = rs("A2");
    let half = ConcaveMap::new(&r, int(0), vec![frac(1, 2); 6]).unwrap();
    assert_eq!(r.ceiling(&half).unwrap(), ConcaveMap::from_ints(&r, 0, &[1; 6]).unwrap());
    assert!(matches!(r.classify(&half), Err(Error::NotIntegral(_))));
    let bad = ConcaveMap::from_ints(&r, 0, &[0, 0, 5, 0, 0, 0]).unwrap();
    assert!(matches!(r.classify(&bad), Err(Error::NotConcave(_))));
    assert!(matches!(r.regularize(&bad), Err(Error::NotConcave(_))));
    assert!(matches!(ConcaveMap::from_ints(&r, 0, &[0; 5]), Err(Error::SizeMismatch { .. })));
    let g2 = ConcaveMap::constant_zero(&rs("G2"));
    assert!(r.is_concave(&g2).is_err());
}

#[test]
fn moy_prasad_depth_zero_is_point_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in SMALL {
        let r = rs(name);
        let theta = random_point(&r, &mut rng);
        let mp = r.moy_prasad(&theta, &int(0)).unwrap();
        assert_eq!(mp.to_concave_map(), r.from_point(&theta).unwrap());
        let deeper = r.moy_prasad(&theta, &frac(3, 2)).unwrap();
        assert_eq!(deeper.torus_level, 2);
        for (a, b) in deeper.root_values.iter().zip(&mp.root_values) {
            assert!(a > b);
        }
        assert!(r.moy_prasad(&theta, &frac(-1, 3)).is_err());
    }
    let _ = ApartmentPoint::zero(rs("A2").dynkin());
}
