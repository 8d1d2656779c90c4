//! Markers, fusion of Wang tiles and recognizable desubstitution of Wang
//! shifts, plus the equivalence test between tile sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::morphism2d::{Morphism2d, MorphismError};
use crate::wangtiles::{domino, TileIndex, WangTile, WangTileSet};
use crate::word2d::{Axis, Word2d};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkerError {
    #[error("tiles {0} and {1} do not share an edge color along {2}")]
    EdgeMismatch(String, String, Axis),
    #[error("{0:?} is not a set of markers along {1} at radius {2}")]
    NotAMarkerSet(Vec<TileIndex>, Axis, usize),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// Which side of the merged domino the markers sit on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("side must be left or right, got {other:?}")),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkerReport {
    pub direction: Axis,
    pub radius: usize,
    pub marker_subsets: Vec<Vec<TileIndex>>,
}

/// Disjoint sets over tile indices.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

/// Marker sets along `axis`: classes of the partition generated by the
/// perpendicular dominoes that contain no admissible domino along `axis`.
pub fn find_markers(tiles: &WangTileSet, axis: Axis, radius: usize) -> MarkerReport {
    let perpendicular = tiles.dominoes_with_surrounding(axis.other(), radius);
    let mut uf = UnionFind::new(tiles.len());
    for &(u, v) in &perpendicular {
        uf.union(u, v);
    }
    let along = tiles.dominoes_with_surrounding(axis, radius);
    let mut classes: BTreeMap<usize, Vec<TileIndex>> = BTreeMap::new();
    for t in 0..tiles.len() {
        let root = uf.find(t);
        classes.entry(root).or_default().push(t);
    }
    let marker_subsets = classes
        .into_values()
        .filter(|m| {
            let set: BTreeSet<TileIndex> = m.iter().copied().collect();
            !along.iter().any(|(u, v)| set.contains(u) && set.contains(v))
        })
        .collect();
    MarkerReport { direction: axis, radius, marker_subsets }
}

/// Fusion `u ⊞ v` (e1) or `u ⊟ v` (e2); colors on the parallel sides are
/// concatenated.
pub fn fuse(u: &WangTile, v: &WangTile, axis: Axis) -> Result<WangTile, MarkerError> {
    let cat = |a: &str, b: &str| format!("{a}{b}");
    match axis {
        Axis::E1 => {
            if u.right() != v.left() {
                return Err(MarkerError::EdgeMismatch(u.to_string(), v.to_string(), axis));
            }
            Ok(WangTile::new(v.right(), &cat(u.top(), v.top()), u.left(), &cat(u.bottom(), v.bottom())))
        }
        Axis::E2 => {
            if u.top() != v.bottom() {
                return Err(MarkerError::EdgeMismatch(u.to_string(), v.to_string(), axis));
            }
            Ok(WangTile::new(&cat(u.right(), v.right()), v.top(), &cat(u.left(), v.left()), u.bottom()))
        }
    }
}

/// Output of [`find_substitution`]: the new tile set and the morphism
/// sending its tiles to single tiles or dominoes of the original set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesubstitutionResult {
    pub tiles: WangTileSet,
    pub morphism: Morphism2d,
    pub side: Side,
    pub direction: Axis,
}

/// Serialized as the pair `[tile set, morphism]`.
impl Serialize for DesubstitutionResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.tiles, &self.morphism).serialize(s)
    }
}

/// Domino criterion for `m` to be markers along `axis` given the admissible
/// domino sets.
pub fn satisfies_marker_criterion(
    m: &BTreeSet<TileIndex>,
    along: &BTreeSet<(TileIndex, TileIndex)>,
    perpendicular: &BTreeSet<(TileIndex, TileIndex)>,
) -> bool {
    !m.is_empty()
        && !along.iter().any(|(u, v)| m.contains(u) && m.contains(v))
        && !perpendicular.iter().any(|(u, v)| m.contains(u) != m.contains(v))
}

/// Recognizable desubstitution from a set of markers.
///
/// Non-marker tiles that can be followed by a non-marker (`K`) keep their
/// place; each admissible domino joining a non-marker and a marker (`P`)
/// becomes one fused tile. `K` comes first, then `P`, both sorted by tile
/// indices.
pub fn find_substitution(
    tiles: &WangTileSet,
    markers: &[TileIndex],
    axis: Axis,
    radius: usize,
    side: Side,
) -> Result<DesubstitutionResult, MarkerError> {
    let m: BTreeSet<TileIndex> = markers.iter().copied().collect();
    let along = tiles.dominoes_with_surrounding(axis, radius);
    let perpendicular = tiles.dominoes_with_surrounding(axis.other(), radius);
    if !satisfies_marker_criterion(&m, &along, &perpendicular) {
        return Err(MarkerError::NotAMarkerSet(markers.to_vec(), axis, radius));
    }
    let (p, k): (Vec<(TileIndex, TileIndex)>, BTreeSet<TileIndex>) = match side {
        Side::Right => (
            along.iter().copied().filter(|(u, v)| !m.contains(u) && m.contains(v)).collect(),
            along.iter().filter(|(u, v)| !m.contains(u) && !m.contains(v)).map(|&(u, _)| u).collect(),
        ),
        Side::Left => (
            along.iter().copied().filter(|(u, v)| m.contains(u) && !m.contains(v)).collect(),
            along.iter().filter(|(u, v)| !m.contains(u) && !m.contains(v)).map(|&(_, v)| v).collect(),
        ),
    };
    // `along` is a BTreeSet so `p` is already sorted lexicographically
    let mut new_tiles = Vec::with_capacity(k.len() + p.len());
    let mut images = Vec::with_capacity(k.len() + p.len());
    for &u in &k {
        new_tiles.push(tiles.tiles()[u].clone());
        images.push(Word2d::letter(u as u16));
    }
    for &(u, v) in &p {
        new_tiles.push(fuse(&tiles.tiles()[u], &tiles.tiles()[v], axis)?);
        images.push(domino(u, v, axis));
    }
    Ok(DesubstitutionResult {
        tiles: WangTileSet::new(new_tiles),
        morphism: Morphism2d::new(tiles.len(), images)?,
        side,
        direction: axis,
    })
}

/// Certificate that two tile sets differ only by renaming colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    /// Vertical colors of the first set to vertical colors of the second.
    pub vert: BTreeMap<String, String>,
    /// Horizontal colors of the first set to horizontal colors of the second.
    pub horiz: BTreeMap<String, String>,
    /// `tile_map[t]` is the tile of the second set that `t` is sent to.
    pub tile_map: Vec<TileIndex>,
}

impl Equivalence {
    /// The letter-to-letter morphism `t -> tile_map[t]`.
    pub fn morphism(&self) -> Morphism2d {
        let perm: Vec<u16> = self.tile_map.iter().map(|&s| s as u16).collect();
        Morphism2d::from_permutation(&perm, self.tile_map.len()).expect("bijection onto the second set")
    }
}

struct EquivSearch<'a> {
    from: &'a WangTileSet,
    to: &'a WangTileSet,
    vert: HashMap<&'a str, &'a str>,
    horiz: HashMap<&'a str, &'a str>,
    vert_used: HashMap<&'a str, &'a str>,
    horiz_used: HashMap<&'a str, &'a str>,
    used: Vec<bool>,
    tile_map: Vec<TileIndex>,
}

impl<'a> EquivSearch<'a> {
    fn bind(
        map: &mut HashMap<&'a str, &'a str>,
        inv: &mut HashMap<&'a str, &'a str>,
        a: &'a str,
        b: &'a str,
        undo: &mut Vec<&'a str>,
    ) -> bool {
        match (map.get(a), inv.get(b)) {
            (Some(&x), _) => x == b,
            (None, Some(_)) => false,
            (None, None) => {
                map.insert(a, b);
                inv.insert(b, a);
                undo.push(a);
                true
            }
        }
    }

    fn search(&mut self, t: usize, found: &mut Vec<Equivalence>, limit: usize) {
        if found.len() >= limit {
            return;
        }
        if t == self.from.len() {
            found.push(Equivalence {
                vert: self.vert.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
                horiz: self.horiz.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
                tile_map: self.tile_map.clone(),
            });
            return;
        }
        let src = &self.from.tiles()[t];
        for s in 0..self.to.len() {
            if self.used[s] {
                continue;
            }
            let dst = &self.to.tiles()[s];
            let mut vu = Vec::new();
            let mut hu = Vec::new();
            let ok = Self::bind(&mut self.vert, &mut self.vert_used, src.right(), dst.right(), &mut vu)
                && Self::bind(&mut self.vert, &mut self.vert_used, src.left(), dst.left(), &mut vu)
                && Self::bind(&mut self.horiz, &mut self.horiz_used, src.top(), dst.top(), &mut hu)
                && Self::bind(&mut self.horiz, &mut self.horiz_used, src.bottom(), dst.bottom(), &mut hu);
            if ok {
                self.used[s] = true;
                self.tile_map.push(s);
                self.search(t + 1, found, limit);
                self.tile_map.pop();
                self.used[s] = false;
            }
            for a in vu {
                let b = self.vert.remove(a).unwrap();
                self.vert_used.remove(b);
            }
            for a in hu {
                let b = self.horiz.remove(a).unwrap();
                self.horiz_used.remove(b);
            }
            if found.len() >= limit {
                return;
            }
        }
    }
}

/// Color renamings (injective on vertical and on horizontal colors) that map
/// the tiles of `from` bijectively onto the tiles of `to`, at most `limit`.
pub fn equivalences(from: &WangTileSet, to: &WangTileSet, limit: usize) -> Vec<Equivalence> {
    if from.len() != to.len()
        || from.vertical_colors().len() != to.vertical_colors().len()
        || from.horizontal_colors().len() != to.horizontal_colors().len()
    {
        return Vec::new();
    }
    let mut search = EquivSearch {
        from,
        to,
        vert: HashMap::new(),
        horiz: HashMap::new(),
        vert_used: HashMap::new(),
        horiz_used: HashMap::new(),
        used: vec![false; to.len()],
        tile_map: Vec::new(),
    };
    let mut found = Vec::new();
    search.search(0, &mut found, limit);
    found
}

/// First equivalence found, trying target tiles in index order.
pub fn is_equivalent(from: &WangTileSet, to: &WangTileSet) -> Option<Equivalence> {
    equivalences(from, to, 1).pop()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::u_tiles;

    #[test]
    fn fusion_rules() {
        let t = WangTile::new("A", "B", "A", "B");
        assert_eq!(fuse(&t, &t, Axis::E1).unwrap(), WangTile::new("A", "BB", "A", "BB"));
        assert_eq!(fuse(&t, &t, Axis::E2).unwrap(), WangTile::new("AA", "B", "AA", "B"));
        let u = u_tiles();
        let r = fuse(&u.tiles()[0], &u.tiles()[1], Axis::E1);
        assert!(matches!(r, Err(MarkerError::EdgeMismatch(..))));
    }

    #[test]
    fn equivalence_with_itself_is_identity() {
        let u = u_tiles();
        let e = is_equivalent(&u, &u).unwrap();
        assert_eq!(e.tile_map, (0..19).collect::<Vec<_>>());
        assert!(e.vert.iter().all(|(a, b)| a == b));
        assert!(e.horiz.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn no_equivalence_across_sizes() {
        let u = u_tiles();
        let smaller = WangTileSet::new(u.tiles()[..18].to_vec());
        assert!(is_equivalent(&u, &smaller).is_none());
    }

    #[test]
    fn periodic_single_tile_has_no_markers() {
        let one = WangTileSet::from_strings(&["ABAB"]);
        let r = find_markers(&one, Axis::E2, 1);
        assert!(r.marker_subsets.is_empty());
    }

    #[test]
    fn union_find_merges() {
        let mut uf = UnionFind::new(5);
        uf.union(0, 3);
        uf.union(3, 4);
        assert_eq!(uf.find(4), uf.find(0));
        assert_ne!(uf.find(1), uf.find(0));
    }
}
