use std::collections::BTreeSet;

use aperiodic_core::data::{phi, u_tiles};
use aperiodic_core::morphism2d::Morphism2d;
use aperiodic_core::selfsim::{
    check_uniqueness_hypotheses, cross_check_languages, recognizability, run_pet_pipeline, run_wang_pipeline,
    wang_language,
};
use aperiodic_core::word2d::{Axis, Word2d};

fn col(cols: &[[u16; 2]; 2]) -> Word2d {
    Word2d::from_columns(cols).unwrap()
}

#[test]
fn recognizable_on_six_by_six() {
    let r = recognizability(&phi(), (6, 6)).unwrap();
    assert!(r.words > 0);
    assert!(r.ambiguous.is_empty(), "{:?}", r.ambiguous.first());
    assert_eq!(r.uncovered, 0);
}

#[test]
fn uniqueness_hypotheses_of_phi() {
    let m = phi();
    let r = check_uniqueness_hypotheses(&m).unwrap();
    assert!(r.expansive);
    assert!(r.primitive);
    // The seeds graph on all 2x2 words has cycles outside the language, so
    // the inclusion hypothesis does not hold for φ.
    assert!(!r.seeds_in_language());
    assert!(!r.holds());
    let s = r.seeds.unwrap();
    assert_eq!(s.language_2x2, 50);
    assert_eq!(s.seeds, 360);
    assert_eq!(s.outside_language, 310);

    let lang = m.language((2, 2), 64).unwrap();
    let cycle = &s.witness_cycle;
    assert!(!cycle.is_empty());
    for (i, u) in cycle.iter().enumerate() {
        let v = &cycle[(i + 1) % cycle.len()];
        assert!(!v.occurrences_in(&m.apply(u).unwrap()).is_empty());
    }
    assert!(!lang.contains(&cycle[0]));

    // hand-checked two-cycle, columns bottom to top
    let u = col(&[[1, 8], [6, 14]]);
    let v = col(&[[14, 6], [13, 7]]);
    assert!(v.occurs_at(&m.apply(&u).unwrap(), (0, 1)));
    assert!(u.occurs_at(&m.apply(&v).unwrap(), (1, 1)));
    assert!(!lang.contains(&u) && !lang.contains(&v));
}

#[test]
fn uniqueness_hypotheses_fail_for_degenerate_morphisms() {
    let id = check_uniqueness_hypotheses(&Morphism2d::identity(2)).unwrap();
    assert!(!id.expansive);
    assert!(id.seeds.is_none());

    // a -> (a b), b -> a along e1: primitive, heights never grow
    let fib = Morphism2d::from_column_lists(2, &[&[&[0], &[1]], &[&[0]]]).unwrap();
    let r = check_uniqueness_hypotheses(&fib).unwrap();
    assert!(!r.expansive);
    assert!(r.primitive);
}

#[test]
fn alternative_routes_close_the_loop() {
    let w = run_wang_pipeline(&u_tiles(), [Axis::E1, Axis::E2], 3).unwrap();
    assert_eq!(w.steps[1].result.tiles.len(), 19);
    assert_eq!(w.composite, Some(phi()));
    let p = run_pet_pipeline([Axis::E1, Axis::E2]).unwrap();
    assert_eq!(p.steps.iter().map(|s| s.atoms).collect::<Vec<_>>(), vec![20, 19]);
    assert_eq!(p.composite, Some(phi()));
}

#[test]
fn extended_language_table() {
    let rows = cross_check_languages(&u_tiles(), (3, 3), 2, 4).unwrap();
    assert_eq!(rows.len(), 9);
    for r in &rows {
        assert!(r.equal, "{r:?}");
    }
    let sizes: Vec<usize> = rows.iter().map(|r| r.substitutive).collect();
    assert_eq!(sizes, vec![19, 35, 55, 31, 50, 73, 46, 68, 94]);

    // radius 3 still admits one vertical word outside the language
    let lang = phi().language((1, 3), 64).unwrap();
    let extra: Vec<Word2d> = wang_language(&u_tiles(), (1, 3), 3).iter().filter(|w| !lang.contains(w)).cloned().collect();
    assert_eq!(extra, vec![Word2d::from_columns(&[[15, 13, 18]]).unwrap()]);
}

#[test]
fn periodic_points_are_fixed_by_phi_squared() {
    let m = phi();
    let pairs = m.periodic_seeds(2).unwrap();
    assert_eq!(pairs.len(), 8);
    assert!(pairs.iter().all(|(_, k)| *k == 2));
    let seeds: BTreeSet<&Word2d> = pairs.iter().map(|(w, _)| w).collect();
    assert_eq!(seeds.len(), 8);
    let sq = m.power(2).unwrap();
    for u in seeds {
        // φ²(u) contains u where the images of its four letters meet
        let corner = sq.image(u.get(0, 0)).unwrap();
        let img = sq.apply(u).unwrap();
        let at = img.factor((corner.width() - 1, corner.height() - 1), (2, 2));
        assert_eq!(&at, u);
    }
}
