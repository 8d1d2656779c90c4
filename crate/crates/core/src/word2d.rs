//! Finite two-dimensional words.
//!
//! Cells are addressed with Cartesian coordinates `(x, y)`, `y` pointing up,
//! and stored column-major. The JSON form is the list of columns, each read
//! bottom-to-top; the text form prints the top row first, like a matrix.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Letter = u16;

/// Shape `(width, height)` of a word.
pub type Shape = (usize, usize);

/// One of the two coordinate directions `e1` (horizontal) and `e2` (vertical).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    E1,
    E2,
}

impl Axis {
    pub fn from_index(i: u8) -> Option<Axis> {
        match i {
            1 => Some(Axis::E1),
            2 => Some(Axis::E2),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Axis::E1 => 1,
            Axis::E2 => 2,
        }
    }

    pub fn other(self) -> Axis {
        match self {
            Axis::E1 => Axis::E2,
            Axis::E2 => Axis::E1,
        }
    }

    /// Unit vector of this axis.
    pub fn unit(self) -> (i64, i64) {
        match self {
            Axis::E1 => (1, 0),
            Axis::E2 => (0, 1),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.index())
    }
}

impl Serialize for Axis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

impl<'de> Deserialize<'de> for Axis {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let i = u8::deserialize(d)?;
        Axis::from_index(i).ok_or_else(|| serde::de::Error::custom(format!("bad axis {i}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("shape mismatch: {left:?} and {right:?} along {axis}")]
    ShapeMismatch { left: Shape, right: Shape, axis: Axis },
    #[error("requested shape {requested:?} exceeds word shape {actual:?}")]
    ShapeTooLarge { requested: Shape, actual: Shape },
    #[error("columns of a word must have equal heights")]
    RaggedColumns,
}

/// A rectangular word over small integer letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word2d {
    width: usize,
    height: usize,
    cells: Vec<Letter>,
}

impl Word2d {
    pub fn empty(shape: Shape) -> Self {
        debug_assert!(shape.0 == 0 || shape.1 == 0);
        Word2d { width: shape.0, height: shape.1, cells: Vec::new() }
    }

    pub fn filled(shape: Shape, letter: Letter) -> Self {
        Word2d { width: shape.0, height: shape.1, cells: vec![letter; shape.0 * shape.1] }
    }

    pub fn letter(a: Letter) -> Self {
        Word2d { width: 1, height: 1, cells: vec![a] }
    }

    /// Build from columns, each listed bottom-to-top.
    pub fn from_columns<C: AsRef<[Letter]>>(columns: &[C]) -> Result<Self, WordError> {
        let width = columns.len();
        let height = columns.first().map_or(0, |c| c.as_ref().len());
        if columns.iter().any(|c| c.as_ref().len() != height) {
            return Err(WordError::RaggedColumns);
        }
        let cells = columns.iter().flat_map(|c| c.as_ref().iter().copied()).collect();
        Ok(Word2d { width, height, cells })
    }

    /// Build from rows listed top-to-bottom, as a matrix is written.
    pub fn from_rows<R: AsRef<[Letter]>>(rows: &[R]) -> Result<Self, WordError> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != width) {
            return Err(WordError::RaggedColumns);
        }
        let mut w = Word2d::filled((width, height), 0);
        for (i, row) in rows.iter().enumerate() {
            let y = height - 1 - i;
            for (x, &a) in row.as_ref().iter().enumerate() {
                w.set(x, y, a);
            }
        }
        Ok(w)
    }

    pub fn from_fn(shape: Shape, mut f: impl FnMut(usize, usize) -> Letter) -> Self {
        let mut cells = Vec::with_capacity(shape.0 * shape.1);
        for x in 0..shape.0 {
            for y in 0..shape.1 {
                cells.push(f(x, y));
            }
        }
        Word2d { width: shape.0, height: shape.1, cells }
    }

    pub fn shape(&self) -> Shape {
        (self.width, self.height)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0 || self.height == 0
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Letter {
        self.cells[x * self.height + y]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, a: Letter) {
        self.cells[x * self.height + y] = a;
    }

    /// Letter at a signed position, `None` outside the support.
    pub fn get_signed(&self, x: i64, y: i64) -> Option<Letter> {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            None
        } else {
            Some(self.get(x as usize, y as usize))
        }
    }

    /// Columns, each bottom-to-top.
    pub fn columns(&self) -> impl Iterator<Item = &[Letter]> {
        (0..self.width).map(move |x| &self.cells[x * self.height..(x + 1) * self.height])
    }

    /// Letters in storage order (column by column, bottom-to-top).
    pub fn letters(&self) -> &[Letter] {
        &self.cells
    }

    pub fn alphabet(&self) -> BTreeSet<Letter> {
        self.cells.iter().copied().collect()
    }

    /// The factor of the given shape whose lower-left corner is `pos`.
    pub fn factor(&self, pos: (usize, usize), shape: Shape) -> Word2d {
        debug_assert!(pos.0 + shape.0 <= self.width && pos.1 + shape.1 <= self.height);
        let mut cells = Vec::with_capacity(shape.0 * shape.1);
        for x in pos.0..pos.0 + shape.0 {
            let start = x * self.height + pos.1;
            cells.extend_from_slice(&self.cells[start..start + shape.1]);
        }
        Word2d { width: shape.0, height: shape.1, cells }
    }

    /// Concatenation `self ⊙ⁱ other`: `other` is placed to the right (e1) or
    /// on top (e2) of `self`.
    pub fn concat(&self, other: &Word2d, axis: Axis) -> Result<Word2d, WordError> {
        let mismatch = || WordError::ShapeMismatch { left: self.shape(), right: other.shape(), axis };
        match axis {
            Axis::E1 => {
                if self.width == 0 {
                    return Ok(other.clone());
                }
                if other.width == 0 {
                    return Ok(self.clone());
                }
                if self.height != other.height {
                    return Err(mismatch());
                }
                let mut cells = self.cells.clone();
                cells.extend_from_slice(&other.cells);
                Ok(Word2d { width: self.width + other.width, height: self.height, cells })
            }
            Axis::E2 => {
                if self.height == 0 {
                    return Ok(other.clone());
                }
                if other.height == 0 {
                    return Ok(self.clone());
                }
                if self.width != other.width {
                    return Err(mismatch());
                }
                let height = self.height + other.height;
                let mut cells = Vec::with_capacity(self.width * height);
                for (a, b) in self.columns().zip(other.columns()) {
                    cells.extend_from_slice(a);
                    cells.extend_from_slice(b);
                }
                Ok(Word2d { width: self.width, height, cells })
            }
        }
    }

    /// Whether `self` occurs in `host` at position `p`.
    pub fn occurs_at(&self, host: &Word2d, p: (i64, i64)) -> bool {
        if p.0 < 0 || p.1 < 0 {
            return self.is_empty() && p.0 >= 0 && p.1 >= 0;
        }
        let (px, py) = (p.0 as usize, p.1 as usize);
        if px + self.width > host.width || py + self.height > host.height {
            return false;
        }
        (0..self.width).all(|x| {
            let col = &host.cells[(px + x) * host.height + py..][..self.height];
            col == &self.cells[x * self.height..(x + 1) * self.height]
        })
    }

    /// All positions where `self` occurs in `host`.
    pub fn occurrences_in(&self, host: &Word2d) -> Vec<(usize, usize)> {
        if self.width > host.width || self.height > host.height {
            return Vec::new();
        }
        let mut out = Vec::new();
        for x in 0..=host.width - self.width {
            for y in 0..=host.height - self.height {
                if self.occurs_at(host, (x as i64, y as i64)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// All distinct factors of the given shape.
    pub fn subwords(&self, shape: Shape) -> Result<Language2d, WordError> {
        let mut lang = Language2d::new(shape);
        self.collect_subwords(shape, &mut lang)?;
        Ok(lang)
    }

    pub(crate) fn collect_subwords(&self, shape: Shape, into: &mut Language2d) -> Result<(), WordError> {
        if shape.0 > self.width || shape.1 > self.height {
            return Err(WordError::ShapeTooLarge { requested: shape, actual: self.shape() });
        }
        for x in 0..=self.width - shape.0 {
            for y in 0..=self.height - shape.1 {
                into.words.insert(self.factor((x, y), shape));
            }
        }
        Ok(())
    }

    /// Replace each letter through `f`.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Word2d {
        Word2d { width: self.width, height: self.height, cells: self.cells.iter().map(|&a| f(a)).collect() }
    }
}

/// Matrix display: top row first, letters separated by spaces.
impl fmt::Display for Word2d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for y in (0..self.height).rev() {
            let row: Vec<String> = (0..self.width).map(|x| self.get(x, y).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
            if y > 0 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word2d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.height)
            .rev()
            .map(|y| (0..self.width).map(|x| self.get(x, y).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "({})", rows.join(" / "))
    }
}

impl Serialize for Word2d {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let cols: Vec<&[Letter]> = self.columns().collect();
        cols.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word2d {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let cols = Vec::<Vec<Letter>>::deserialize(d)?;
        Word2d::from_columns(&cols).map_err(serde::de::Error::custom)
    }
}

/// A set of words sharing one shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Language2d {
    pub shape: Shape,
    pub words: BTreeSet<Word2d>,
}

impl Language2d {
    pub fn new(shape: Shape) -> Self {
        Language2d { shape, words: BTreeSet::new() }
    }

    pub fn from_words(shape: Shape, words: impl IntoIterator<Item = Word2d>) -> Self {
        let words: BTreeSet<Word2d> = words.into_iter().collect();
        debug_assert!(words.iter().all(|w| w.shape() == shape));
        Language2d { shape, words }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word2d) -> bool {
        self.words.contains(w)
    }

    pub fn insert(&mut self, w: Word2d) -> bool {
        debug_assert_eq!(w.shape(), self.shape);
        self.words.insert(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word2d> {
        self.words.iter()
    }

    pub fn is_subset(&self, other: &Language2d) -> bool {
        self.words.is_subset(&other.words)
    }

    /// Factors of a smaller shape of every word.
    pub fn restrict(&self, shape: Shape) -> Result<Language2d, WordError> {
        let mut out = Language2d::new(shape);
        for w in &self.words {
            w.collect_subwords(shape, &mut out)?;
        }
        Ok(out)
    }

    /// Words as letter pairs, for domino languages of shape (2,1) or (1,2).
    pub fn dominoes(&self) -> BTreeSet<(Letter, Letter)> {
        self.words.iter().map(|w| (w.letters()[0], w.letters()[1])).collect()
    }
}

impl<'a> IntoIterator for &'a Language2d {
    type Item = &'a Word2d;
    type IntoIter = std::collections::btree_set::Iter<'a, Word2d>;
    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(r: &[&[Letter]]) -> Word2d {
        Word2d::from_rows(r).unwrap()
    }

    #[test]
    fn vertical_concat_matches_matrix_display() {
        let u = rows(&[&[4, 5], &[10, 5]]);
        let v = rows(&[&[3, 10], &[9, 9], &[0, 0]]);
        let w = u.concat(&v, Axis::E2).unwrap();
        assert_eq!(w, rows(&[&[3, 10], &[9, 9], &[0, 0], &[4, 5], &[10, 5]]));
        assert_eq!(w.shape(), (2, 5));
    }

    #[test]
    fn horizontal_concat_of_5x3_and_5x2() {
        let u = Word2d::from_fn((3, 5), |x, y| (x + 3 * y) as Letter);
        let v = Word2d::from_fn((2, 5), |x, y| (100 + x + 2 * y) as Letter);
        let w = u.concat(&v, Axis::E1).unwrap();
        assert_eq!(w.shape(), (5, 5));
        assert!(u.occurs_at(&w, (0, 0)));
        assert!(v.occurs_at(&w, (3, 0)));
    }

    #[test]
    fn concat_with_empty_is_identity() {
        let u = rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(u.concat(&Word2d::empty((0, 2)), Axis::E1).unwrap(), u);
        assert_eq!(Word2d::empty((2, 0)).concat(&u, Axis::E2).unwrap(), u);
    }

    #[test]
    fn concat_shape_mismatch() {
        let u = rows(&[&[1, 2]]);
        let v = rows(&[&[1], &[2]]);
        assert!(matches!(u.concat(&v, Axis::E1), Err(WordError::ShapeMismatch { .. })));
    }

    #[test]
    fn occurrence_queries() {
        let w = rows(&[&[13, 7], &[14, 6]]);
        let u = Word2d::letter(14);
        assert!(u.occurs_at(&w, (0, 0)));
        assert!(!u.occurs_at(&w, (0, 1)));
        assert!(!u.occurs_at(&w, (5, 5)));
        assert!(!u.occurs_at(&w, (-1, 0)));
        assert!(w.occurs_at(&w, (0, 0)));
    }

    #[test]
    fn subwords_of_whole_shape() {
        let w = rows(&[&[1, 2], &[3, 4]]);
        let l = w.subwords((2, 2)).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.contains(&w));
        assert!(w.subwords((3, 1)).is_err());
    }

    #[test]
    fn text_and_json_forms() {
        let w = rows(&[&[14, 8, 16], &[6, 1, 3], &[14, 11, 17]]);
        assert_eq!(w.to_string(), "14 8 16\n6 1 3\n14 11 17");
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, "[[14,6,14],[11,1,8],[17,3,16]]");
        let back: Word2d = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}
