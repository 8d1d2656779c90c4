mod common;

use common::{all_patch_identities, check_action, levels};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn actions_are_commuting_bijections() {
    let l = levels();
    let mut rng = StdRng::seed_from_u64(11);
    check_action(&l.ru, &mut rng, 1000);
    check_action(&l.i0.action, &mut rng, 1000);
    check_action(&l.i1.action, &mut rng, 1000);
}

#[test]
fn desubstitution_patch_identity() {
    let l = levels();
    let mut rng = StdRng::seed_from_u64(5);
    all_patch_identities(&l, &mut rng);
}
