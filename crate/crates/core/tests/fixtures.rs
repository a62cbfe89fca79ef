mod common;

use common::pos;
use takeaway_core::{
    classify, enumerate_instances, grundy_value, iso_canonical_key, predict, EnumerationBounds, Group, Position,
    SearchConfig, TranspositionTable,
};

// S = 0, A.. = 1..
fn shapes() -> Vec<(usize, Position)> {
    vec![
        (1, pos(3, &[&[1, 2], &[0, 1, 2]])),
        (2, pos(5, &[&[1, 2, 3, 4], &[0, 1, 2], &[0, 2, 3]])),
        (3, pos(7, &[&[1, 2, 3, 4, 5, 6], &[0, 1, 2], &[0, 2, 3], &[0, 3, 4]])),
        (4, pos(9, &[&[1, 2, 3, 4, 5, 6, 7, 8], &[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[0, 7, 8]])),
    ]
}

#[test]
fn every_shape_appears_in_the_enumeration() {
    for (m, shape) in shapes() {
        let key = iso_canonical_key(&shape, 10).unwrap();
        let found = enumerate_instances(EnumerationBounds::labeled(m))
            .filter(|i| i.position.vertex_count() == 2 * m + 1)
            .find(|i| i.position == shape);
        let inst = found.unwrap_or_else(|| panic!("shape at m={m} missing"));
        assert_eq!(iso_canonical_key(&inst.position, 10).unwrap(), key);
    }
}

#[test]
fn shapes_are_conforming_and_predicted_correctly() {
    let cfg = SearchConfig::default();
    let mut table = TranspositionTable::new();
    let groups = [Group::I, Group::V, Group::V, Group::I];
    for ((_, shape), group) in shapes().into_iter().zip(groups) {
        let r = classify(&shape);
        assert!(r.is_conforming());
        assert_eq!(r.group, group);
        let p = predict(&r).unwrap();
        assert_eq!(p.value, Some(grundy_value(&shape, &mut table, &cfg).unwrap()));
    }
}

#[test]
fn four_cycle_value_matches_reference_oracle() {
    let cycle = pos(7, &[&[1, 2, 3, 4, 5, 6], &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 1, 4]]);
    let r = classify(&cycle);
    assert_eq!(r.group, Group::BC);
    assert_eq!(predict(&r).unwrap().value, None);
    let mut memo = std::collections::HashMap::new();
    let expected = common::naive_grundy(&common::Naive::of(&cycle), &mut memo);
    let g = grundy_value(&cycle, &mut TranspositionTable::new(), &SearchConfig::default()).unwrap();
    assert_eq!(g as usize, expected);
    assert_eq!(g, 3);
}
