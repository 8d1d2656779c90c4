//! Canonical objects: the self-similarity φ, the 19 Wang tiles 𝒰, the
//! segments cutting out the torus partition, and the domino lists of the
//! language of φ.

use crate::exactnum::Golden;
use crate::geometry::Point;
use crate::morphism2d::Morphism2d;
use crate::wangtiles::WangTileSet;
use crate::word2d::Letter;

/// Images of φ, each as columns read bottom-to-top.
pub const PHI_RULE: [&[&[Letter]]; 19] = [
    &[&[17]],
    &[&[16]],
    &[&[15], &[11]],
    &[&[13], &[9]],
    &[&[17], &[8]],
    &[&[16], &[8]],
    &[&[15], &[8]],
    &[&[14], &[8]],
    &[&[14, 6]],
    &[&[17, 3]],
    &[&[16, 3]],
    &[&[14, 2]],
    &[&[15, 7], &[11, 1]],
    &[&[14, 6], &[11, 1]],
    &[&[13, 7], &[9, 1]],
    &[&[12, 6], &[9, 1]],
    &[&[18, 5], &[10, 1]],
    &[&[13, 4], &[9, 1]],
    &[&[14, 2], &[8, 0]],
];

pub fn phi() -> Morphism2d {
    Morphism2d::from_column_lists(19, &PHI_RULE).expect("static rule table")
}

/// The tiles of 𝒰 as (right, top, left, bottom) color strings.
pub const U_TILES: [&str; 19] = [
    "FOJO", "FOHL", "JMFP", "DMFK", "HPJP", "HPHN", "HKFP", "HKDP", "BOIO", "GLEO", "GLCL", "ALIO", "EPGP",
    "EPIP", "IPGK", "IPIK", "IKBM", "IKAK", "CNIP",
];

pub fn u_tiles() -> WangTileSet {
    WangTileSet::from_strings(&U_TILES)
}

/// Horizontal dominoes `(left, right)` of the language of φ.
pub const H_DOMINOES: [(Letter, Letter); 31] = [
    (0, 3),
    (1, 2),
    (1, 3),
    (1, 6),
    (2, 0),
    (2, 4),
    (3, 7),
    (4, 1),
    (5, 1),
    (6, 1),
    (6, 5),
    (7, 1),
    (8, 16),
    (9, 14),
    (10, 12),
    (10, 14),
    (11, 17),
    (12, 9),
    (13, 9),
    (14, 8),
    (14, 11),
    (14, 13),
    (14, 18),
    (15, 8),
    (15, 11),
    (16, 8),
    (16, 13),
    (16, 15),
    (17, 8),
    (17, 13),
    (18, 10),
];

/// Vertical dominoes `(bottom, top)` of the language of φ.
pub const V_DOMINOES: [(Letter, Letter); 35] = [
    (0, 8),
    (1, 8),
    (1, 9),
    (1, 11),
    (2, 16),
    (3, 16),
    (4, 13),
    (5, 13),
    (6, 14),
    (6, 17),
    (7, 15),
    (8, 0),
    (8, 9),
    (8, 11),
    (9, 1),
    (9, 10),
    (10, 1),
    (11, 1),
    (11, 10),
    (12, 6),
    (13, 4),
    (13, 7),
    (13, 18),
    (14, 2),
    (14, 6),
    (14, 12),
    (15, 7),
    (15, 13),
    (15, 18),
    (16, 3),
    (16, 14),
    (16, 17),
    (17, 3),
    (17, 14),
    (18, 5),
];

/// The three polylines whose ℤ²-translates cut the torus into 19 atoms.
pub fn partition_u_polylines() -> Vec<Vec<Point>> {
    let g = Golden::from_ints;
    let phi = g(0, 1);
    let phi2 = g(1, 1);
    let inv2 = Golden::phi_pow(-2);
    let one_plus_inv2 = &g(1, 0) + &inv2;
    vec![
        vec![[g(1, 0), phi2.clone()], [g(0, 0), phi2], [phi.clone(), g(0, 0)], [phi, g(1, 0)]],
        vec![[g(1, 0), g(1, 0)], [g(0, 0), g(1, 0)], [g(1, 0), g(0, 0)], [g(1, 0), g(1, 0)]],
        vec![[inv2, g(2, 0)], [one_plus_inv2.clone(), g(1, 0)], [one_plus_inv2, g(2, 0)]],
    ]
}

/// The eight segments of [`partition_u_polylines`].
pub fn partition_u_segments() -> Vec<[Point; 2]> {
    partition_u_polylines()
        .into_iter()
        .flat_map(|pl| pl.windows(2).map(|w| [w[0].clone(), w[1].clone()]).collect::<Vec<_>>())
        .collect()
}

/// Markers of 𝒰 in direction e₂ at radius 2.
pub const U_MARKERS_E2: [usize; 8] = [0, 1, 2, 3, 4, 5, 6, 7];

/// Marker sets of the 21-tile set obtained from 𝒰, direction e₁, radius 1.
pub const V_MARKERS_E1: [&[usize]; 3] =
    [&[0, 1, 2, 8, 9, 10, 11], &[3, 5, 13, 14, 17, 20], &[4, 6, 7, 12, 15, 16, 18, 19]];

/// Color renaming from 𝒰 onto the 19-tile set closing the loop.
pub const CERTIFICATE_VERT: [(&str, &str); 10] = [
    ("A", "IJ"),
    ("B", "IH"),
    ("C", "BF"),
    ("D", "G"),
    ("E", "AF"),
    ("F", "I"),
    ("G", "ID"),
    ("H", "B"),
    ("I", "GF"),
    ("J", "A"),
];
pub const CERTIFICATE_HORIZ: [(&str, &str); 6] =
    [("K", "PO"), ("L", "M"), ("M", "PL"), ("N", "MO"), ("O", "K"), ("P", "KO")];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes() {
        assert_eq!(phi().domain(), 19);
        assert_eq!(u_tiles().len(), 19);
        assert_eq!(partition_u_segments().len(), 8);
        assert_eq!(H_DOMINOES.len(), 31);
        assert_eq!(V_DOMINOES.len(), 35);
    }
}
