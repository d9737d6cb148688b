use tourneylab::tournament::{enumerate_tournaments, enumerate_tournaments_with_limit};

#[test]
fn isomorphism_class_counts_match_the_known_sequence() {
    let expected = [1, 1, 2, 4, 12, 56, 456];
    for (n, &count) in (1..=7).zip(&expected) {
        assert_eq!(enumerate_tournaments(n, true).unwrap().count(), count, "n = {n}");
    }
}

#[test]
fn eight_vertex_classes() {
    assert_eq!(enumerate_tournaments(8, true).unwrap().count(), 6880);
}

#[test]
fn enumeration_is_deterministic() {
    let a: Vec<u64> = enumerate_tournaments(6, true)
        .unwrap()
        .map(|t| t.code())
        .collect();
    let b: Vec<u64> = enumerate_tournaments(6, true)
        .unwrap()
        .map(|t| t.code())
        .collect();
    assert_eq!(a, b);
    assert!(a.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn canonical_representatives_are_fixed_points() {
    for t in enumerate_tournaments(6, true).unwrap() {
        assert_eq!(t.canonical_code(), t.code());
    }
}

#[test]
fn labeled_classes_cover_every_labeled_tournament() {
    use std::collections::BTreeSet;
    let classes: BTreeSet<u64> = enumerate_tournaments(5, true)
        .unwrap()
        .map(|t| t.code())
        .collect();
    let mut seen = BTreeSet::new();
    for t in enumerate_tournaments(5, false).unwrap() {
        let c = t.canonical_code();
        assert!(classes.contains(&c));
        seen.insert(c);
    }
    assert_eq!(seen, classes);
}

#[test]
fn limits_are_enforced() {
    assert!(enumerate_tournaments(9, false).is_err());
    assert!(enumerate_tournaments_with_limit(9, true, 8).is_err());
}
