//! Helpers shared by the property suites and the acceptance run.
#![allow(dead_code)]

use aperiodic_core::exactnum::Golden;
use aperiodic_core::geometry::{reduce_point, Point, TorusPartition};
use aperiodic_core::morphism2d::Morphism2d;
use aperiodic_core::pet::{config_patch, induced_partition, InducedPartition, Window, Z2Action};
use aperiodic_core::selfsim::partition_u;
use aperiodic_core::word2d::{Axis, Word2d};
use rand::rngs::StdRng;
use rand::Rng;

pub struct Levels {
    pub pu: TorusPartition,
    pub ru: Z2Action,
    pub i0: InducedPartition,
    pub i1: InducedPartition,
    pub beta2: Morphism2d,
}

pub fn levels() -> Levels {
    let (pu, ru) = partition_u().unwrap();
    let inv1 = Golden::phi_pow(-1);
    let i0 = induced_partition(&pu, &ru, &Window::new(Axis::E2, inv1.clone())).unwrap();
    let i1 = induced_partition(&i0.partition, &i0.action, &Window::new(Axis::E1, inv1)).unwrap();
    let one = Golden::one();
    let scaled = i1.partition.rescale(&-Golden::phi(), &[one.clone(), one]).unwrap();
    let perm = pu.is_equal_up_to_relabeling(&scaled).unwrap();
    let beta2 = Morphism2d::from_permutation(&perm.values().copied().collect::<Vec<_>>(), 19).unwrap();
    Levels { pu, ru, i0, i1, beta2 }
}

/// Uniform rational point of the box `[0, w) × [0, h)` with denominators
/// up to a few thousand.
pub fn sample(rng: &mut StdRng, periods: &[Golden; 2]) -> Point {
    let mut coord = |len: &Golden| {
        let d: i64 = rng.gen_range(500..5000);
        let n: i64 = rng.gen_range(0..d);
        &Golden::from_ratios(n, d, 0, 1) * len
    };
    [coord(&periods[0]), coord(&periods[1])]
}

pub fn check_action(a: &Z2Action, rng: &mut StdRng, samples: usize) {
    for axis in [Axis::E1, Axis::E2] {
        assert!(a.generator(axis).is_bijective());
    }
    let (g1, g2) = (a.generator(Axis::E1), a.generator(Axis::E2));
    let (h1, h2) = (g1.inverse(), g2.inverse());
    let mut done = 0;
    while done < samples {
        let x = sample(rng, a.periods());
        let (Ok(y1), Ok(y2)) = (g1.apply(&x), g2.apply(&x)) else { continue };
        let (Ok(y12), Ok(y21)) = (g2.apply(&y1), g1.apply(&y2)) else { continue };
        assert_eq!(y12, y21, "generators do not commute at {x:?}");
        assert_eq!(h1.apply(&y1).unwrap(), x);
        assert_eq!(h2.apply(&y2).unwrap(), x);
        done += 1;
    }
}

pub const PATCH: (usize, usize) = (10, 10);

/// `β(config of the coarse system at x)` starts with the config of the fine
/// system at x, checked on 20 points where both codings are defined.
pub fn patch_identity(
    fine: (&TorusPartition, &Z2Action),
    coarse: (&TorusPartition, &Z2Action),
    beta: &Morphism2d,
    sample_box: &[Golden; 2],
    to_coarse: impl Fn(&Point) -> Point,
    rng: &mut StdRng,
) {
    let mut done = 0;
    while done < 20 {
        let x = sample(rng, sample_box);
        let fine_x = x.clone();
        let y = to_coarse(&x);
        let (Ok(small), Ok(big)) =
            (config_patch(coarse.0, coarse.1, &y, PATCH, (0, 0)), config_patch(fine.0, fine.1, &fine_x, PATCH, (0, 0)))
        else {
            continue;
        };
        let image: Word2d = beta.apply(&small).unwrap();
        assert!(image.width() >= PATCH.0 && image.height() >= PATCH.1);
        assert_eq!(image.factor((0, 0), PATCH), big, "at {x:?}");
        done += 1;
    }
}

/// The patch identity at all three levels of the loop.
pub fn all_patch_identities(l: &Levels, rng: &mut StdRng) {
    // the window of each induction is the domain of the next partition
    let (p0, p1) = (l.i0.partition.periods().clone(), l.i1.partition.periods().clone());
    patch_identity((&l.pu, &l.ru), (&l.i0.partition, &l.i0.action), &l.i0.substitution, &p0, |x| x.clone(), rng);
    patch_identity(
        (&l.i0.partition, &l.i0.action),
        (&l.i1.partition, &l.i1.action),
        &l.i1.substitution,
        &p1,
        |x| x.clone(),
        rng,
    );
    // the last step is the similarity x ↦ -φx + (1, 1) onto the original torus
    let one = Golden::one();
    let phi = Golden::phi();
    let unit = [one.clone(), one.clone()];
    patch_identity(
        (&l.i1.partition, &l.i1.action),
        (&l.pu, &l.ru),
        &l.beta2,
        &p1,
        |x| reduce_point(&[&one - &(&phi * &x[0]), &one - &(&phi * &x[1])], &unit),
        rng,
    );
}
