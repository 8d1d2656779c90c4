use std::collections::BTreeMap;

use aperiodic_core::data::{phi, u_tiles};
use aperiodic_core::markers::{equivalences, find_markers, find_substitution, is_equivalent, Side};
use aperiodic_core::word2d::Axis;

fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[test]
fn markers_then_desubstitution_close_the_loop() {
    let u = u_tiles();
    let m0 = find_markers(&u, Axis::E2, 2);
    assert_eq!(m0.marker_subsets, vec![vec![0, 1, 2, 3, 4, 5, 6, 7]]);

    let d0 = find_substitution(&u, &m0.marker_subsets[0], Axis::E2, 2, Side::Right).unwrap();
    assert_eq!(d0.tiles.len(), 21);

    let m1 = find_markers(&d0.tiles, Axis::E1, 1);
    assert_eq!(
        m1.marker_subsets,
        vec![vec![0, 1, 2, 8, 9, 10, 11], vec![3, 5, 13, 14, 17, 20], vec![4, 6, 7, 12, 15, 16, 18, 19]]
    );

    let d1 = find_substitution(&d0.tiles, &m1.marker_subsets[0], Axis::E1, 1, Side::Right).unwrap();
    assert_eq!(d1.tiles.len(), 19);

    let eq = is_equivalent(&u, &d1.tiles).expect("equivalent to the original set");
    let vert = map(&[
        ("A", "IJ"), ("B", "IH"), ("C", "BF"), ("D", "G"), ("E", "AF"),
        ("F", "I"), ("G", "ID"), ("H", "B"), ("I", "GF"), ("J", "A"),
    ]);
    let horiz = map(&[("K", "PO"), ("L", "M"), ("M", "PL"), ("N", "MO"), ("O", "K"), ("P", "KO")]);
    assert_eq!(eq.vert, vert);
    assert_eq!(eq.horiz, horiz);
    assert_eq!(equivalences(&u, &d1.tiles, 10).len(), 1);

    let composite = d0.morphism.compose(&d1.morphism).unwrap().compose(&eq.morphism()).unwrap();
    assert_eq!(composite, phi());
}
