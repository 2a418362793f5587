//! Classification pipeline on the catalog actions, checked against brute force.

use std::collections::BTreeSet;

use equivect_core::catalog;
use equivect_core::context::Context;
use equivect_core::semigroup::{direct_sum, regime, zero_class};

mod common;
use common::{brute_force, monoid_up_to};

fn ctx(name: &str, chi: usize) -> Context {
    Context::new(catalog::by_name(name).unwrap().unwrap(), chi).unwrap()
}

#[test]
fn rank_one_count_equals_n_for_odd_cyclic() {
    for n in [1, 3, 5, 7] {
        let c = ctx(&format!("Z{n}"), 0);
        let rank1 = c.enumerate(1).len();
        assert_eq!(rank1, n, "Z{n}");
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for (name, chi, r) in [
        ("Z1", 0, 3),
        ("Z3", 0, 3),
        ("Z4", 0, 2),
        ("D3", 0, 2),
        ("S3/Z2", 1, 3),
        ("Q8/D2", 1, 2),
    ] {
        let c = ctx(name, chi);
        let cs = &c.rp2().system;
        let fast: BTreeSet<_> = c.enumerate(r).into_iter().collect();
        assert_eq!(fast, brute_force(cs, r), "{name} chi={chi}");
    }
}

#[test]
fn hilbert_basis_generates_the_enumeration() {
    for (name, chi) in [
        ("Z1", 0),
        ("Z3", 0),
        ("Z5", 0),
        ("D3", 0),
        ("D4", 0),
        ("T", 0),
        ("Q8xZ3", 4),
    ] {
        let c = ctx(name, chi);
        let cs = &c.rp2().system;
        let basis = c.hilbert_basis().unwrap();
        for b in &basis {
            assert!(cs.is_solution(&b.flat()), "{name}: basis element is not a solution");
        }
        let enumerated: BTreeSet<_> = c.enumerate(4).into_iter().collect();
        assert_eq!(monoid_up_to(cs, &basis, 4), enumerated, "{name}");
    }
}

#[test]
fn twin_classes_for_odd_cyclic_images() {
    let c = ctx("Z3", 0);
    assert_eq!(regime(c.image_tag()), "twin-classes");
    let classes = c.classify(1).unwrap();
    assert_eq!(classes.len(), 6);
    let parities: BTreeSet<_> = classes.iter().map(|k| k.chern_parity.unwrap()).collect();
    assert_eq!(parities, BTreeSet::from([0, 1]));

    let q = ctx("Q8xZ3", 4);
    assert_eq!(q.chi_degree(), 2);
    let classes = q.classify(2).unwrap();
    assert_eq!(classes.len(), 2 * q.enumerate(2).len());
    assert!(classes.iter().all(|k| k.chern_parity == Some(0)));
}

#[test]
fn isotropy_determined_images_have_no_twins() {
    for name in ["Z4", "D3", "D4", "T"] {
        let c = ctx(name, 0);
        assert_eq!(regime(c.image_tag()), "isotropy-determined");
        let classes = c.classify(3).unwrap();
        assert_eq!(classes.len(), c.enumerate(3).len(), "{name}");
        assert!(classes.iter().all(|k| k.twin_bit.is_none()));
    }
}

#[test]
fn q8_isotypical_support() {
    let c = ctx("Q8xZ3", 4);
    let cs = &c.rp2().system;
    let stab_minus = &c.rp2().point_tables[0];
    for t in c.enumerate(2) {
        for (i, &m) in t.m_minus.iter().enumerate() {
            if m > 0 {
                assert_eq!(cs.degrees()[0][i], 2);
                assert_eq!(stab_minus.table().degree(i), 2);
            }
        }
    }
}

#[test]
fn trivial_group_has_two_classes_per_rank() {
    let c = ctx("Z1", 0);
    let classes = c.classify(4).unwrap();
    for r in 1..=4 {
        let at: Vec<_> = classes.iter().filter(|k| k.rank == r).collect();
        assert_eq!(at.len(), 2, "rank {r}");
        let p: BTreeSet<_> = at.iter().map(|k| k.chern_parity.unwrap()).collect();
        assert_eq!(p, BTreeSet::from([0, 1]));
    }
}

#[test]
fn direct_sum_adds_parities() {
    let c = ctx("Z3", 0);
    let classes = c.classify(1).unwrap();
    let zero = zero_class(&c.key());
    for a in &classes {
        assert_eq!(&direct_sum(a, &zero).unwrap(), a);
        for b in &classes {
            let s = direct_sum(a, b).unwrap();
            assert_eq!(
                s.chern_parity.unwrap(),
                a.chern_parity.unwrap() ^ b.chern_parity.unwrap()
            );
            assert!(c.rp2().system.is_solution(&s.triple.flat()));
        }
    }
    let other = ctx("Z5", 0).classify(1).unwrap();
    assert!(direct_sum(&classes[0], &other[0]).is_err());
}

#[test]
fn transfer_to_the_covering_round_trips() {
    for (name, chi) in [
        ("Z1", 0),
        ("Z3", 0),
        ("Z4", 0),
        ("D3", 0),
        ("D2", 0),
        ("T", 0),
        ("O", 0),
        ("Q8xZ3", 4),
        ("Q8/D2", 1),
    ] {
        let c = ctx(name, chi);
        c.check_stabilizer_transfer().unwrap();
        let mut image = BTreeSet::new();
        for t in c.enumerate(3) {
            let up = c.p1_to_s2(&t);
            assert!(
                c.s2().system.is_solution(&up.flat()),
                "{name}: transferred triple is not admissible"
            );
            assert_eq!(c.p1_to_rp2(&up).unwrap(), t);
            image.insert(up);
        }
        let upstairs: BTreeSet<_> = c.enumerate_s2(3).into_iter().collect();
        assert_eq!(image, upstairs, "{name}: transfer is not onto");
    }
}

#[test]
fn every_enumerated_triple_passes_the_direct_check() {
    for (name, chi) in [("Z3", 0), ("D3", 0), ("O", 0), ("I", 0), ("S3/Z2", 1)] {
        let c = ctx(name, chi);
        for t in c.enumerate(2) {
            c.rp2().check_direct(&t).unwrap();
        }
    }
}
