use std::collections::BTreeSet;

use aperiodic_core::data::u_tiles;
use aperiodic_core::wangtiles::{Lattice, TilingInstance, WangTile, WangTileSet};
use aperiodic_core::word2d::Word2d;
use proptest::prelude::*;

fn tile_set() -> impl Strategy<Value = WangTileSet> {
    let color = |names: &'static [&'static str]| proptest::sample::select(names);
    let tile = (color(&["a", "b"]), color(&["x", "y"]), color(&["a", "b"]), color(&["x", "y"]))
        .prop_map(|(r, t, l, b)| WangTile::new(r, t, l, b));
    proptest::collection::vec(tile, 5).prop_map(WangTileSet::new)
}

/// Every word of the shape over the tile indices, in no particular order.
fn all_words(n: usize, shape: (usize, usize)) -> Vec<Word2d> {
    let cells = shape.0 * shape.1;
    (0..n.pow(cells as u32))
        .map(|mut k| {
            let mut letters = vec![0u16; cells];
            for l in letters.iter_mut() {
                *l = (k % n) as u16;
                k /= n;
            }
            Word2d::from_fn(shape, |x, y| letters[x * shape.1 + y])
        })
        .collect()
}

/// Validity on the torus ℤ²/L, straight from the definition: the cell above
/// the top row is the bottom cell shifted back by `b`.
fn valid_on_torus(t: &WangTileSet, w: &Word2d, l: &Lattice) -> bool {
    let tile = |x: usize, y: usize| &t.tiles()[w.get(x, y) as usize];
    (0..l.a).all(|x| {
        (0..l.d).all(|y| {
            let right = tile((x + 1) % l.a, y);
            let up = if y + 1 < l.d { tile(x, y + 1) } else { tile((x + l.a - l.b % l.a) % l.a, 0) };
            tile(x, y).right() == right.left() && tile(x, y).top() == up.bottom()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_matches_naive_enumeration(t in tile_set(), w in 1usize..4, h in 1usize..3) {
        let naive: BTreeSet<Word2d> =
            all_words(5, (w, h)).into_iter().filter(|u| t.is_valid_pattern(u).unwrap()).collect();
        let inst = TilingInstance::rectangle(&t, (w, h));
        let solved: BTreeSet<Word2d> = inst.all_solutions(usize::MAX).into_iter().collect();
        prop_assert_eq!(&solved, &naive);
        prop_assert_eq!(inst.solve_exact_cover().is_some(), !naive.is_empty());
        if let Some(s) = inst.solve_exact_cover() {
            prop_assert!(naive.contains(&s));
        }
    }

    #[test]
    fn torus_solver_matches_naive_enumeration(t in tile_set(), index in 1usize..6, pick in 0usize..100) {
        let lattices = Lattice::all_with_index(index);
        let l = lattices[pick % lattices.len()];
        let naive = all_words(5, (l.a, l.d)).into_iter().any(|u| valid_on_torus(&t, &u, &l));
        let inst = TilingInstance::torus(&t, l);
        prop_assert_eq!(inst.solve().is_some(), naive);
        prop_assert_eq!(inst.solve_exact_cover().is_some(), naive);
        prop_assert_eq!(t.exists_periodic_tiling(l.basis()).unwrap(), naive);
        if let Some(s) = inst.solve() {
            prop_assert!(valid_on_torus(&t, &s, &l));
        }
    }

    #[test]
    fn surrounding_is_monotone_in_radius(cells in proptest::collection::vec(0u16..19, 4), r in 0usize..3) {
        let u = Word2d::from_fn((2, 2), |x, y| cells[2 * x + y]);
        let t = u_tiles();
        if t.admits_surrounding(&u, r + 1) {
            prop_assert!(t.admits_surrounding(&u, r));
        }
        if t.admits_surrounding(&u, r) {
            prop_assert!(t.is_valid_pattern(&u).unwrap());
        }
    }
}

#[test]
fn valid_patterns_are_monotone_in_radius() {
    let t = u_tiles();
    let mut previous = usize::MAX;
    for r in 0..=3 {
        let n = t.valid_patterns((2, 2)).iter().filter(|u| t.admits_surrounding(u, r)).count();
        assert!(n <= previous);
        previous = n;
    }
    assert_eq!(previous, 50);
}

#[test]
fn no_periodic_tiling_up_to_index_16() {
    let t = u_tiles();
    let mut count = 0;
    for n in 1..=16 {
        // number of sublattices of index n is the divisor sum σ(n)
        let sigma: usize = (1..=n).filter(|d| n % d == 0).sum();
        let lattices = Lattice::all_with_index(n);
        assert_eq!(lattices.len(), sigma);
        for l in lattices {
            assert_eq!(l.index(), n);
            assert!(!t.exists_periodic_tiling(l.basis()).unwrap(), "periodic tiling for {l:?}");
            assert!(TilingInstance::torus(&t, l).solve_exact_cover().is_none(), "dlx found {l:?}");
            count += 1;
        }
    }
    assert_eq!(count, 220);
}
