//! Wang tile sets, validity of patterns, surroundings and periodicity tests.

pub mod dlx;
mod solver;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use solver::TilingInstance;

use crate::word2d::{Axis, Word2d};

pub type TileIndex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WangError {
    #[error("tile index {0} is not in the tile set")]
    UnknownTileIndex(usize),
    #[error("period lattice is singular")]
    SingularLattice,
}

/// A tile as four color tokens in (right, top, left, bottom) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WangTile(pub [String; 4]);

impl WangTile {
    pub fn new(right: &str, top: &str, left: &str, bottom: &str) -> Self {
        WangTile([right.into(), top.into(), left.into(), bottom.into()])
    }

    pub fn right(&self) -> &str {
        &self.0[0]
    }
    pub fn top(&self) -> &str {
        &self.0[1]
    }
    pub fn left(&self) -> &str {
        &self.0[2]
    }
    pub fn bottom(&self) -> &str {
        &self.0[3]
    }
}

impl fmt::Display for WangTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Indexed list of Wang tiles. Vertical colors (right/left) and horizontal
/// colors (top/bottom) are interned separately for the solvers.
#[derive(Clone)]
pub struct WangTileSet {
    tiles: Vec<WangTile>,
    vertical: Vec<[u32; 2]>,
    horizontal: Vec<[u32; 2]>,
}

#[derive(Serialize, Deserialize)]
struct TileSetRepr {
    tiles: Vec<[String; 4]>,
}

impl Serialize for WangTileSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TileSetRepr { tiles: self.tiles.iter().map(|t| t.0.clone()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WangTileSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = TileSetRepr::deserialize(d)?;
        Ok(WangTileSet::new(r.tiles.into_iter().map(WangTile).collect()))
    }
}

impl PartialEq for WangTileSet {
    fn eq(&self, other: &Self) -> bool {
        self.tiles == other.tiles
    }
}

impl Eq for WangTileSet {}

impl fmt::Debug for WangTileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.tiles.iter().map(|t| t.to_string())).finish()
    }
}

impl WangTileSet {
    pub fn new(tiles: Vec<WangTile>) -> Self {
        let mut vmap: HashMap<String, u32> = HashMap::new();
        let mut hmap: HashMap<String, u32> = HashMap::new();
        let intern = |m: &mut HashMap<String, u32>, c: &str| {
            let n = m.len() as u32;
            *m.entry(c.to_string()).or_insert(n)
        };
        let vertical = tiles.iter().map(|t| [intern(&mut vmap, t.right()), intern(&mut vmap, t.left())]).collect();
        let horizontal = tiles.iter().map(|t| [intern(&mut hmap, t.top()), intern(&mut hmap, t.bottom())]).collect();
        WangTileSet { tiles, vertical, horizontal }
    }

    /// Tiles written as four-letter strings such as `"FOJO"`.
    pub fn from_strings(tiles: &[&str]) -> Self {
        WangTileSet::new(
            tiles
                .iter()
                .map(|s| {
                    let c: Vec<String> = s.chars().map(|c| c.to_string()).collect();
                    WangTile([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tiles(&self) -> &[WangTile] {
        &self.tiles
    }

    pub fn tile(&self, i: TileIndex) -> Result<&WangTile, WangError> {
        self.tiles.get(i).ok_or(WangError::UnknownTileIndex(i))
    }

    /// Interned (right, left) color ids.
    pub fn vertical_ids(&self, i: TileIndex) -> [u32; 2] {
        self.vertical[i]
    }

    /// Interned (top, bottom) color ids.
    pub fn horizontal_ids(&self, i: TileIndex) -> [u32; 2] {
        self.horizontal[i]
    }

    /// Colors on vertical edges (right and left sides).
    pub fn vertical_colors(&self) -> BTreeSet<&str> {
        self.tiles.iter().flat_map(|t| [t.right(), t.left()]).collect()
    }

    /// Colors on horizontal edges (top and bottom sides).
    pub fn horizontal_colors(&self) -> BTreeSet<&str> {
        self.tiles.iter().flat_map(|t| [t.top(), t.bottom()]).collect()
    }

    /// Whether `u ⊙ⁱ v` respects the shared edge.
    pub fn domino_fits(&self, u: TileIndex, v: TileIndex, axis: Axis) -> bool {
        match axis {
            Axis::E1 => self.vertical[u][0] == self.vertical[v][1],
            Axis::E2 => self.horizontal[u][0] == self.horizontal[v][1],
        }
    }

    pub fn is_valid_pattern(&self, w: &Word2d) -> Result<bool, WangError> {
        if let Some(&bad) = w.letters().iter().find(|&&a| a as usize >= self.len()) {
            return Err(WangError::UnknownTileIndex(bad as usize));
        }
        for x in 0..w.width() {
            for y in 0..w.height() {
                let t = w.get(x, y) as usize;
                if x + 1 < w.width() && !self.domino_fits(t, w.get(x + 1, y) as usize, Axis::E1) {
                    return Ok(false);
                }
                if y + 1 < w.height() && !self.domino_fits(t, w.get(x, y + 1) as usize, Axis::E2) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Some valid pattern of the given shape, if any.
    pub fn solve(&self, shape: (usize, usize)) -> Option<Word2d> {
        TilingInstance::rectangle(self, shape).solve()
    }

    /// Whether `u` extends to a valid pattern with `r` extra cells on every side.
    pub fn admits_surrounding(&self, u: &Word2d, r: usize) -> bool {
        if u.letters().iter().any(|&a| a as usize >= self.len()) {
            return false;
        }
        let shape = (u.width() + 2 * r, u.height() + 2 * r);
        TilingInstance::rectangle(self, shape).with_word(u, (r, r)).solve().is_some()
    }

    /// `D_i = {(u, v) : u ⊙ⁱ v admits a surrounding of radius r}`.
    pub fn dominoes_with_surrounding(&self, axis: Axis, r: usize) -> BTreeSet<(TileIndex, TileIndex)> {
        let m = self.len();
        let pairs: Vec<(TileIndex, TileIndex)> =
            (0..m).flat_map(|u| (0..m).map(move |v| (u, v))).filter(|&(u, v)| self.domino_fits(u, v, axis)).collect();
        pairs
            .into_par_iter()
            .filter(|&(u, v)| {
                let w = domino(u, v, axis);
                self.admits_surrounding(&w, r)
            })
            .collect()
    }

    /// Whether some configuration is invariant under the lattice spanned by
    /// the columns of `basis`.
    pub fn exists_periodic_tiling(&self, basis: [[i64; 2]; 2]) -> Result<bool, WangError> {
        let lattice = Lattice::from_basis(basis)?;
        if self.is_empty() {
            return Ok(false);
        }
        Ok(TilingInstance::torus(self, lattice).solve().is_some())
    }

    /// Valid patterns of the given shape, in lexicographic order.
    pub fn valid_patterns(&self, shape: (usize, usize)) -> Vec<Word2d> {
        TilingInstance::rectangle(self, shape).all_solutions(usize::MAX)
    }
}

/// Two-tile word `u ⊙ⁱ v`.
pub fn domino(u: TileIndex, v: TileIndex, axis: Axis) -> Word2d {
    match axis {
        Axis::E1 => Word2d::from_columns(&[[u as u16], [v as u16]]).unwrap(),
        Axis::E2 => Word2d::from_columns(&[[u as u16, v as u16]]).unwrap(),
    }
}

/// A full-rank sublattice of ℤ² in Hermite normal form, spanned by the
/// columns `(a, 0)` and `(b, d)` with `0 <= b < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    pub a: usize,
    pub b: usize,
    pub d: usize,
}

impl Lattice {
    /// Hermite normal form of the lattice spanned by the two columns.
    pub fn from_basis(basis: [[i64; 2]; 2]) -> Result<Lattice, WangError> {
        // columns v1 = (basis[0][0], basis[1][0]), v2 = (basis[0][1], basis[1][1])
        let (mut v1, mut v2) = ([basis[0][0], basis[1][0]], [basis[0][1], basis[1][1]]);
        let det = v1[0] * v2[1] - v1[1] * v2[0];
        if det == 0 {
            return Err(WangError::SingularLattice);
        }
        // column operations to zero the second coordinate of v1
        while v1[1] != 0 {
            if v2[1] == 0 || v1[1].abs() < v2[1].abs() {
                std::mem::swap(&mut v1, &mut v2);
                continue;
            }
            let q = v1[1] / v2[1];
            v1 = [v1[0] - q * v2[0], v1[1] - q * v2[1]];
        }
        if v1[0] < 0 {
            v1 = [-v1[0], 0];
        }
        if v2[1] < 0 {
            v2 = [-v2[0], -v2[1]];
        }
        let a = v1[0];
        let b = v2[0].rem_euclid(a);
        Ok(Lattice { a: a as usize, b: b as usize, d: v2[1] as usize })
    }

    pub fn index(&self) -> usize {
        self.a * self.d
    }

    /// Every sublattice of ℤ² with the given index.
    pub fn all_with_index(n: usize) -> Vec<Lattice> {
        let mut out = Vec::new();
        for a in 1..=n {
            if n.is_multiple_of(a) {
                for b in 0..a {
                    out.push(Lattice { a, b, d: n / a });
                }
            }
        }
        out
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        let d = self.d as i64;
        if p.1 % d != 0 {
            return false;
        }
        let k = p.1 / d;
        (p.0 - k * self.b as i64).rem_euclid(self.a as i64) == 0
    }

    pub fn basis(&self) -> [[i64; 2]; 2] {
        [[self.a as i64, self.b as i64], [0, self.d as i64]]
    }
}
