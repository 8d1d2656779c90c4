//! Complete search for valid rectangular or toroidal Wang patterns.
//!
//! Two independent backends: a cell-by-cell backtracker with arc-consistent
//! propagation on edge colors, which returns the lexicographically least
//! solution, and an exact-cover-with-colors formulation solved by dancing
//! links.

use std::collections::BTreeMap;

use super::dlx::{Color, Xcc};
use super::{Lattice, TileIndex, WangTileSet};
use crate::word2d::{Shape, Word2d};

/// Solver input: a shape, some pre-assigned cells and an optional period
/// lattice turning the rectangle into a torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingInstance<'a> {
    pub tiles: &'a WangTileSet,
    pub shape: Shape,
    pub fixed: BTreeMap<(usize, usize), TileIndex>,
    pub wrap: Option<Lattice>,
}

// neighbor directions
const RIGHT: usize = 0;
const UP: usize = 1;
const LEFT: usize = 2;
const DOWN: usize = 3;

impl<'a> TilingInstance<'a> {
    pub fn rectangle(tiles: &'a WangTileSet, shape: Shape) -> Self {
        TilingInstance { tiles, shape, fixed: BTreeMap::new(), wrap: None }
    }

    /// Torus `ℤ² / L`; the cells are the `a × d` box of the Hermite form.
    pub fn torus(tiles: &'a WangTileSet, lattice: Lattice) -> Self {
        TilingInstance { tiles, shape: (lattice.a, lattice.d), fixed: BTreeMap::new(), wrap: Some(lattice) }
    }

    pub fn with_fixed(mut self, pos: (usize, usize), tile: TileIndex) -> Self {
        self.fixed.insert(pos, tile);
        self
    }

    /// Fix the whole word `u` with its lower-left corner at `offset`.
    pub fn with_word(mut self, u: &Word2d, offset: (usize, usize)) -> Self {
        for x in 0..u.width() {
            for y in 0..u.height() {
                self.fixed.insert((offset.0 + x, offset.1 + y), u.get(x, y) as TileIndex);
            }
        }
        self
    }

    fn n_cells(&self) -> usize {
        self.shape.0 * self.shape.1
    }

    /// Cells are numbered row by row, bottom row first.
    fn cell(&self, x: usize, y: usize) -> usize {
        y * self.shape.0 + x
    }

    fn coords(&self, c: usize) -> (usize, usize) {
        (c % self.shape.0, c / self.shape.0)
    }

    fn neighbors(&self) -> Vec<[Option<usize>; 4]> {
        let (w, h) = self.shape;
        (0..self.n_cells())
            .map(|c| {
                let (x, y) = self.coords(c);
                let mut nb = [None; 4];
                match &self.wrap {
                    None => {
                        if x + 1 < w {
                            nb[RIGHT] = Some(self.cell(x + 1, y));
                        }
                        if y + 1 < h {
                            nb[UP] = Some(self.cell(x, y + 1));
                        }
                        if x > 0 {
                            nb[LEFT] = Some(self.cell(x - 1, y));
                        }
                        if y > 0 {
                            nb[DOWN] = Some(self.cell(x, y - 1));
                        }
                    }
                    Some(l) => {
                        // (a, 0) and (b, d) generate the lattice
                        nb[RIGHT] = Some(self.cell((x + 1) % w, y));
                        nb[LEFT] = Some(self.cell((x + w - 1) % w, y));
                        nb[UP] = Some(if y + 1 < h { self.cell(x, y + 1) } else { self.cell((x + w - l.b % w) % w, 0) });
                        nb[DOWN] = Some(if y > 0 { self.cell(x, y - 1) } else { self.cell((x + l.b) % w, h - 1) });
                    }
                }
                nb
            })
            .collect()
    }

    fn is_consistent_input(&self) -> bool {
        if self.shape.0 == 0 || self.shape.1 == 0 {
            return false;
        }
        self.fixed.iter().all(|(&(x, y), &t)| x < self.shape.0 && y < self.shape.1 && t < self.tiles.len())
    }

    fn to_word(&self, assign: &[TileIndex]) -> Word2d {
        Word2d::from_fn(self.shape, |x, y| assign[self.cell(x, y)] as u16)
    }

    /// Lexicographically least solution (cells read row by row from the
    /// bottom row, tiles in index order).
    pub fn solve(&self) -> Option<Word2d> {
        let mut out = None;
        self.for_each_solution(|w| {
            out = Some(w.clone());
            true
        });
        out
    }

    /// Every solution in lexicographic order until `visit` returns true.
    pub fn for_each_solution(&self, mut visit: impl FnMut(&Word2d) -> bool) {
        if self.tiles.is_empty() || !self.is_consistent_input() {
            if self.shape.0 * self.shape.1 == 0 && !self.tiles.is_empty() {
                visit(&Word2d::empty(self.shape));
            }
            return;
        }
        let mut bt = Backtracker::new(self);
        if !bt.init() {
            return;
        }
        let mut assign = vec![0; self.n_cells()];
        bt.search(0, &mut assign, &mut |a| visit(&self.to_word(a)));
    }

    pub fn all_solutions(&self, limit: usize) -> Vec<Word2d> {
        let mut out = Vec::new();
        self.for_each_solution(|w| {
            out.push(w.clone());
            out.len() >= limit
        });
        out
    }

    /// Satisfiability through the exact-cover backend.
    pub fn solve_exact_cover(&self) -> Option<Word2d> {
        if self.tiles.is_empty() || !self.is_consistent_input() {
            return None;
        }
        let nb = self.neighbors();
        // secondary items: one per (cell, RIGHT) and (cell, UP) edge
        let n = self.n_cells();
        let edge = |c: usize, dir: usize| -> Option<usize> {
            match dir {
                RIGHT => nb[c][RIGHT].map(|_| n + 2 * c),
                UP => nb[c][UP].map(|_| n + 2 * c + 1),
                LEFT => nb[c][LEFT].map(|l| n + 2 * l),
                DOWN => nb[c][DOWN].map(|d| n + 2 * d + 1),
                _ => unreachable!(),
            }
        };
        let mut xcc = Xcc::new(n, 2 * n);
        let mut meaning = Vec::new();
        for c in 0..n {
            let (x, y) = self.coords(c);
            let candidates: Vec<TileIndex> = match self.fixed.get(&(x, y)) {
                Some(&t) => vec![t],
                None => (0..self.tiles.len()).collect(),
            };
            for t in candidates {
                let v = self.tiles.vertical_ids(t);
                let h = self.tiles.horizontal_ids(t);
                let colors: [Color; 4] = [v[0], h[0], v[1], h[1]];
                let mut items: Vec<(usize, Option<Color>)> = vec![(c, None)];
                let mut clash = false;
                for dir in [RIGHT, UP, LEFT, DOWN] {
                    if let Some(e) = edge(c, dir) {
                        if let Some(&(_, Some(prev))) = items.iter().find(|(i, _)| *i == e) {
                            // self-adjacent on a thin torus
                            if prev != colors[dir] {
                                clash = true;
                            }
                            continue;
                        }
                        items.push((e, Some(colors[dir])));
                    }
                }
                if !clash {
                    xcc.add_option(&items);
                    meaning.push((c, t));
                }
            }
        }
        let sol = xcc.first_solution()?;
        let mut assign = vec![0; n];
        for o in sol {
            let (c, t) = meaning[o];
            assign[c] = t;
        }
        Some(self.to_word(&assign))
    }
}

/// Fixed-width bitsets over tile indices, one row per cell.
struct Backtracker<'i, 'a> {
    inst: &'i TilingInstance<'a>,
    words: usize,
    nb: Vec<[Option<usize>; 4]>,
    // ok[dir][t]: tiles allowed in the `dir` neighbor of a cell holding t
    ok: [Vec<Vec<u64>>; 4],
    dom: Vec<u64>,
}

impl<'i, 'a> Backtracker<'i, 'a> {
    fn new(inst: &'i TilingInstance<'a>) -> Self {
        let m = inst.tiles.len();
        let words = m.div_ceil(64);
        let mk = |pred: &dyn Fn(usize, usize) -> bool| -> Vec<Vec<u64>> {
            (0..m)
                .map(|t| {
                    let mut row = vec![0u64; words];
                    for s in 0..m {
                        if pred(t, s) {
                            row[s / 64] |= 1 << (s % 64);
                        }
                    }
                    row
                })
                .collect()
        };
        let ts = inst.tiles;
        let ok = [
            mk(&|t, s| ts.vertical_ids(t)[0] == ts.vertical_ids(s)[1]),
            mk(&|t, s| ts.horizontal_ids(t)[0] == ts.horizontal_ids(s)[1]),
            mk(&|t, s| ts.vertical_ids(t)[1] == ts.vertical_ids(s)[0]),
            mk(&|t, s| ts.horizontal_ids(t)[1] == ts.horizontal_ids(s)[0]),
        ];
        let n = inst.n_cells();
        let mut dom = vec![0u64; n * words];
        for c in 0..n {
            let (x, y) = inst.coords(c);
            let row = &mut dom[c * words..(c + 1) * words];
            match inst.fixed.get(&(x, y)) {
                Some(&t) => row[t / 64] |= 1 << (t % 64),
                None => {
                    for s in 0..m {
                        row[s / 64] |= 1 << (s % 64);
                    }
                }
            }
        }
        Backtracker { inst, words, nb: inst.neighbors(), ok, dom }
    }

    fn row(&self, c: usize) -> &[u64] {
        &self.dom[c * self.words..(c + 1) * self.words]
    }

    /// Arc consistency from the cells in `queue`; records changes in `trail`.
    fn propagate(&mut self, mut queue: Vec<usize>, trail: &mut Vec<(usize, Vec<u64>)>) -> bool {
        let w = self.words;
        let mut support = vec![0u64; w];
        while let Some(c) = queue.pop() {
            for dir in 0..4 {
                let Some(n) = self.nb[c][dir] else { continue };
                support.iter_mut().for_each(|s| *s = 0);
                for (wi, &bits) in self.row(c).iter().enumerate() {
                    let mut b = bits;
                    while b != 0 {
                        let t = wi * 64 + b.trailing_zeros() as usize;
                        b &= b - 1;
                        for (s, o) in support.iter_mut().zip(&self.ok[dir][t]) {
                            *s |= o;
                        }
                    }
                }
                let old: Vec<u64> = self.row(n).to_vec();
                let mut changed = false;
                let mut empty = true;
                for i in 0..w {
                    let nv = old[i] & support[i];
                    if nv != old[i] {
                        changed = true;
                    }
                    if nv != 0 {
                        empty = false;
                    }
                    self.dom[n * w + i] = nv;
                }
                if changed {
                    trail.push((n, old));
                    if empty {
                        return false;
                    }
                    queue.push(n);
                }
            }
        }
        true
    }

    fn init(&mut self) -> bool {
        let mut trail = Vec::new();
        let all: Vec<usize> = (0..self.inst.n_cells()).collect();
        self.propagate(all, &mut trail)
    }

    fn undo(&mut self, trail: Vec<(usize, Vec<u64>)>) {
        for (c, old) in trail.into_iter().rev() {
            self.dom[c * self.words..(c + 1) * self.words].copy_from_slice(&old);
        }
    }

    fn search(&mut self, c: usize, assign: &mut [TileIndex], visit: &mut dyn FnMut(&[TileIndex]) -> bool) -> bool {
        if c == assign.len() {
            return visit(assign);
        }
        let candidates: Vec<TileIndex> = {
            let mut v = Vec::new();
            for (wi, &bits) in self.row(c).iter().enumerate() {
                let mut b = bits;
                while b != 0 {
                    v.push(wi * 64 + b.trailing_zeros() as usize);
                    b &= b - 1;
                }
            }
            v
        };
        for t in candidates {
            let w = self.words;
            let old = self.row(c).to_vec();
            let mut trail = vec![(c, old)];
            for i in 0..w {
                self.dom[c * w + i] = 0;
            }
            self.dom[c * w + t / 64] = 1 << (t % 64);
            if self.propagate(vec![c], &mut trail) {
                assign[c] = t;
                if self.search(c + 1, assign, visit) {
                    self.undo(trail);
                    return true;
                }
            }
            self.undo(trail);
        }
        false
    }
}
