mod common;

use std::collections::BTreeSet;

use common::pairwise_crossings;
use twopage::analysis::check_structure;
use twopage::construct::{
    even_optimal, family_free_edges, odd_family, odd_template, random_drawing, structure_template,
    FamilyMask,
};
use twopage::kedge::crossings_direct;
use twopage::transform::{apply, are_equivalent, canonical_key, GroupElement};
use twopage::{z_number, Color};

#[test]
fn even_optimal_up_to_40() {
    for n in (4..=40).step_by(2) {
        let d = even_optimal(n).unwrap();
        assert_eq!(crossings_direct(&d), z_number(n as u64), "n = {n}");
        if n >= 6 {
            assert!(check_structure(&d).unwrap().is_empty());
            assert_eq!(structure_template(n).unwrap().free_count(), 0);
        }
    }
    assert_eq!(pairwise_crossings(&even_optimal(8).unwrap()), 18);
}

#[test]
fn every_family_member_is_optimal() {
    for n in [5usize, 7, 9, 11, 13, 15] {
        let masks = FamilyMask::all(n);
        assert_eq!(masks.len(), 1 << ((n - 3) / 2));
        for m in &masks {
            assert_eq!(
                crossings_direct(&odd_family(n, m).unwrap()),
                z_number(n as u64)
            );
        }
    }
}

#[test]
fn family_splits_into_pairs() {
    for n in [5usize, 7, 9, 11, 13] {
        let keys: BTreeSet<Vec<u8>> = FamilyMask::all(n)
            .iter()
            .map(|m| canonical_key(&odd_family(n, m).unwrap()))
            .collect();
        assert_eq!(keys.len(), 1 << ((n - 5) / 2), "n = {n}");
    }
}

#[test]
fn family_pairing_map() {
    // h g f^((n+1)/2) sends each member to another member
    let n = 9;
    let pairing = GroupElement::h()
        .compose(GroupElement::g(), n)
        .compose(GroupElement::f().pow(n.div_ceil(2), n), n);
    let members: Vec<_> = FamilyMask::all(n)
        .iter()
        .map(|m| odd_family(n, m).unwrap())
        .collect();
    for d in &members {
        let image = apply(d, pairing);
        let partner = members
            .iter()
            .position(|m| *m == image)
            .expect("image stays in the family");
        assert!(are_equivalent(d, &members[partner]).unwrap());
    }
}

#[test]
fn family_free_edges_lie_on_one_antidiagonal_class() {
    let n = 11;
    let free = family_free_edges(n);
    assert_eq!(free.len(), (n - 3) / 2);
    assert!(free.windows(2).all(|w| w[0].0 < w[1].0));
    for &(r, c) in &free {
        assert_eq!((r + c) % n, ((n + 3) / 2) % n);
    }
}

#[test]
fn template_completions_agree_with_family() {
    for n in [9usize, 11] {
        let template = odd_template(n).unwrap();
        let free = template.free_entries();
        for m in FamilyMask::all(n) {
            let member = odd_family(n, &m).unwrap();
            assert!(template.conforms(&member));
            let bits: Vec<bool> = free
                .iter()
                .map(|&(i, j)| member.color(i, j) == Color::Red)
                .collect();
            let completion = template.complete(&bits).unwrap();
            assert_eq!(completion, member);
            assert_eq!(crossings_direct(&completion), z_number(n as u64));
        }
    }
}

#[test]
fn template_free_counts() {
    for n in (7..=31).step_by(2) {
        assert_eq!(odd_template(n).unwrap().free_count(), 5 * (n - 5) / 2);
    }
    assert!(odd_template(5).is_err());
    assert!(structure_template(5).is_err());
}

#[test]
fn random_drawings_are_seeded() {
    assert_eq!(
        random_drawing(12, 7).unwrap(),
        random_drawing(12, 7).unwrap()
    );
    let distinct: BTreeSet<String> = (0..100)
        .map(|s| random_drawing(10, s).unwrap().serialize())
        .collect();
    assert_eq!(distinct.len(), 100);
    assert!(random_drawing(2, 0).is_err());
}
