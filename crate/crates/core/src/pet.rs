//! Polygon exchange transformations, toral ℤ²-rotations, first-return
//! induction on axis-parallel windows and the symbolic codings they define.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::exactnum::Golden;
use crate::geometry::{
    domain_rectangle, reduce_point, relabel_to_match, GeometryError, Location, Point, Polygon, Region,
    TorusPartition,
};
use crate::morphism2d::{Morphism2d, MorphismError};
use crate::word2d::{Axis, Language2d, Letter, Shape, Word2d, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PetError {
    #[error("point ({}, {}) lies on a discontinuity", .0[0], .0[1])]
    BoundaryHit(Box<Point>),
    #[error("orbit hits a boundary at n = {0:?}")]
    OrbitBoundaryHit((i64, i64)),
    #[error("point ({}, {}) is outside the domain", .0[0], .0[1])]
    OutsideDomain(Box<Point>),
    #[error("some piece has not returned to the window after {0} steps")]
    NonReturningPiece(usize),
    #[error("the action is not Cartesian on this window")]
    NotCartesian,
    #[error("window bound must lie in (0, {0}]")]
    BadWindow(Box<Golden>),
    #[error("partition and action live on different tori")]
    DomainMismatch,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Word(#[from] WordError),
}

fn add(p: &Point, q: &Point) -> Point {
    [&p[0] + &q[0], &p[1] + &q[1]]
}

fn neg(p: &Point) -> Point {
    [-&p[0], -&p[1]]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub polygon: Polygon,
    pub translation: Point,
}

/// Piecewise translation of a convex domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pet {
    domain: Polygon,
    pieces: Vec<Piece>,
}

/// Upper bound on the return time searched by [`Pet::induced_transformation`].
pub const MAX_RETURN_TIME: usize = 1000;

impl Pet {
    pub fn new(domain: Polygon, pieces: Vec<Piece>) -> Self {
        Pet { domain, pieces }
    }

    pub fn identity(domain: Polygon) -> Self {
        let zero = [Golden::zero(), Golden::zero()];
        Pet { pieces: vec![Piece { polygon: domain.clone(), translation: zero }], domain }
    }

    /// `x ↦ x + v` on `ℝ² / (ℓ₁ℤ × ℓ₂ℤ)` as an exchange of at most four
    /// rectangles of the fundamental domain.
    pub fn toral_translation(periods: &[Golden; 2], v: &Point) -> Result<Pet, GeometryError> {
        let domain = domain_rectangle(periods)?;
        let v = reduce_point(v, periods);
        let cuts = |axis: usize| -> Vec<(Golden, Golden, Golden)> {
            let l = &periods[axis];
            if v[axis].is_zero() {
                vec![(Golden::zero(), l.clone(), Golden::zero())]
            } else {
                let s = l - &v[axis];
                vec![(Golden::zero(), s.clone(), v[axis].clone()), (s, l.clone(), &v[axis] - l)]
            }
        };
        let mut pieces = Vec::new();
        for (x0, x1, tx) in cuts(0) {
            for (y0, y1, ty) in cuts(1) {
                let polygon = Polygon::rectangle(x0.clone(), y0, x1.clone(), y1)?;
                pieces.push(Piece { polygon, translation: [tx.clone(), ty] });
            }
        }
        Ok(Pet { domain, pieces })
    }

    pub fn domain(&self) -> &Polygon {
        &self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn apply(&self, x: &Point) -> Result<Point, PetError> {
        let mut on_boundary = false;
        for p in &self.pieces {
            match p.polygon.locate(x) {
                Location::Interior => return Ok(add(x, &p.translation)),
                Location::Boundary => on_boundary = true,
                Location::Exterior => {}
            }
        }
        if on_boundary {
            Err(PetError::BoundaryHit(Box::new(x.clone())))
        } else {
            Err(PetError::OutsideDomain(Box::new(x.clone())))
        }
    }

    pub fn inverse(&self) -> Pet {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece { polygon: p.polygon.translate(&p.translation), translation: neg(&p.translation) })
            .collect();
        Pet { domain: self.domain.clone(), pieces }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Pet) -> Pet {
        let mut pieces = Vec::new();
        for a in &first.pieces {
            let image = a.polygon.translate(&a.translation);
            for b in &self.pieces {
                if let Some(c) = image.intersection(&b.polygon) {
                    pieces.push(Piece {
                        polygon: c.translate(&neg(&a.translation)),
                        translation: add(&a.translation, &b.translation),
                    });
                }
            }
        }
        Pet { domain: first.domain.clone(), pieces }
    }

    /// Same translation wherever the pieces of both maps overlap.
    pub fn agrees_with(&self, other: &Pet) -> bool {
        self.pieces.iter().all(|a| {
            other
                .pieces
                .iter()
                .all(|b| a.translation == b.translation || a.polygon.intersection(&b.polygon).is_none())
        })
    }

    /// Pieces and their images both tile the domain.
    pub fn is_bijective(&self) -> bool {
        let area = self.domain.area();
        let tiles = |polys: &[Polygon]| -> bool {
            let sum: Golden = polys.iter().map(Polygon::area).sum();
            if sum != area {
                return false;
            }
            let inside = polys.iter().all(|p| p.intersection(&self.domain).is_some_and(|c| c.area() == p.area()));
            let disjoint =
                (0..polys.len()).all(|i| (i + 1..polys.len()).all(|j| polys[i].intersection(&polys[j]).is_none()));
            inside && disjoint
        };
        let src: Vec<Polygon> = self.pieces.iter().map(|p| p.polygon.clone()).collect();
        let dst: Vec<Polygon> = self.pieces.iter().map(|p| p.polygon.translate(&p.translation)).collect();
        tiles(&src) && tiles(&dst)
    }

    /// First return map to `window` (a convex subset of the domain) with the
    /// return time of each piece.
    pub fn induced_transformation(&self, window: &Polygon) -> Result<Induced, PetError> {
        let zero = [Golden::zero(), Golden::zero()];
        let halfplanes = window.halfplanes();
        // (piece of the window, translation so far)
        let mut pending = vec![(window.clone(), zero)];
        let mut done: Vec<(Piece, usize)> = Vec::new();
        for t in 1..=MAX_RETURN_TIME {
            let mut next = Vec::new();
            for (orig, acc) in &pending {
                let image = orig.translate(acc);
                for piece in &self.pieces {
                    let Some(part) = image.intersection(&piece.polygon) else { continue };
                    let total = add(acc, &piece.translation);
                    let mut rest = Some(part.translate(&piece.translation));
                    let back = neg(&total);
                    for h in &halfplanes {
                        let Some(r) = rest.take() else { break };
                        if let Some(out) = r.clip(&h.complement()) {
                            next.push((out.translate(&back), total.clone()));
                        }
                        rest = r.clip(h);
                    }
                    if let Some(inside) = rest {
                        done.push((Piece { polygon: inside.translate(&back), translation: total.clone() }, t));
                    }
                }
            }
            pending = next;
            if pending.is_empty() {
                let (pieces, times) = done.into_iter().unzip();
                return Ok(Induced { pet: Pet { domain: window.clone(), pieces }, return_times: times });
            }
        }
        Err(PetError::NonReturningPiece(MAX_RETURN_TIME))
    }
}

/// Result of a first-return computation: `return_times[k]` belongs to the
/// `k`-th piece of `pet`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induced {
    pub pet: Pet,
    pub return_times: Vec<usize>,
}

impl Induced {
    pub fn max_return_time(&self) -> usize {
        self.return_times.iter().copied().max().unwrap_or(0)
    }
}

/// `{x : x_axis ≤ bound}` inside the fundamental rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub axis: Axis,
    pub bound: Golden,
}

impl Window {
    pub fn new(axis: Axis, bound: Golden) -> Self {
        Window { axis, bound }
    }

    /// Periods of the torus obtained by cutting `periods` at the bound.
    pub fn periods(&self, periods: &[Golden; 2]) -> Result<[Golden; 2], PetError> {
        let k = (self.axis.index() - 1) as usize;
        if !self.bound.is_positive() || self.bound > periods[k] {
            return Err(PetError::BadWindow(Box::new(periods[k].clone())));
        }
        let mut out = periods.clone();
        out[k] = self.bound.clone();
        Ok(out)
    }

    pub fn polygon(&self, periods: &[Golden; 2]) -> Result<Polygon, PetError> {
        Ok(domain_rectangle(&self.periods(periods)?)?)
    }
}

/// A ℤ²-action given by two commuting PETs of the same fundamental rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2Action {
    periods: [Golden; 2],
    gens: [Pet; 2],
}

impl Z2Action {
    pub fn new(periods: [Golden; 2], gen1: Pet, gen2: Pet) -> Self {
        Z2Action { periods, gens: [gen1, gen2] }
    }

    /// `n ↦ x + (n₁α, n₂β)` on `ℝ² / (ℓ₁ℤ × ℓ₂ℤ)`.
    pub fn toral_rotation(periods: [Golden; 2], alpha: Golden, beta: Golden) -> Result<Self, PetError> {
        let z = Golden::zero();
        let g1 = Pet::toral_translation(&periods, &[alpha, z.clone()])?;
        let g2 = Pet::toral_translation(&periods, &[z, beta])?;
        Ok(Z2Action::new(periods, g1, g2))
    }

    pub fn periods(&self) -> &[Golden; 2] {
        &self.periods
    }

    pub fn generator(&self, axis: Axis) -> &Pet {
        &self.gens[(axis.index() - 1) as usize]
    }

    /// `R^n(x)`; generators commute so the order of application is free.
    pub fn apply(&self, n: (i64, i64), x: &Point) -> Result<Point, PetError> {
        let mut p = reduce_point(x, &self.periods);
        for (k, steps) in [n.1, n.0].into_iter().enumerate() {
            let g = &self.gens[1 - k];
            let inv;
            let map = if steps >= 0 {
                g
            } else {
                inv = g.inverse();
                &inv
            };
            for _ in 0..steps.unsigned_abs() {
                p = map.apply(&p)?;
            }
        }
        Ok(p)
    }

    /// Each generator moves points along its own axis only.
    pub fn is_axis_aligned(&self) -> bool {
        self.gens[0].pieces.iter().all(|p| p.translation[1].is_zero())
            && self.gens[1].pieces.iter().all(|p| p.translation[0].is_zero())
    }

    /// The generators commute as piecewise maps.
    pub fn commutes(&self) -> bool {
        self.gens[0].after(&self.gens[1]).agrees_with(&self.gens[1].after(&self.gens[0]))
    }

    /// Translation vectors of the generators reduced into the fundamental
    /// rectangle, when each generator is a translation of the torus.
    pub fn rotation_vectors(&self) -> Option<[Point; 2]> {
        let mut out = Vec::new();
        for g in &self.gens {
            let mut vs = g.pieces.iter().map(|p| reduce_point(&p.translation, &self.periods));
            let first = vs.next()?;
            if vs.any(|v| v != first) {
                return None;
            }
            out.push(first);
        }
        let [a, b]: [Point; 2] = out.try_into().ok()?;
        Some([a, b])
    }

    /// The action is `n ↦ x + n₁v₁ + n₂v₂` modulo the lattice.
    pub fn is_rotation_by(&self, v1: &Point, v2: &Point) -> bool {
        self.rotation_vectors().is_some_and(|[a, b]| {
            a == reduce_point(v1, &self.periods) && b == reduce_point(v2, &self.periods)
        })
    }

    /// Induced action on an axis-parallel window; the window becomes the new
    /// fundamental rectangle.
    pub fn induce(&self, window: &Window) -> Result<(Z2Action, [Induced; 2]), PetError> {
        // axis-aligned generators and a rectangular window make return times a
        // product of two one-dimensional sequences
        if !self.is_axis_aligned() {
            return Err(PetError::NotCartesian);
        }
        let periods = window.periods(&self.periods)?;
        let w = window.polygon(&self.periods)?;
        let i1 = self.gens[0].induced_transformation(&w)?;
        let i2 = self.gens[1].induced_transformation(&w)?;
        let action = Z2Action::new(periods, i1.pet.clone(), i2.pet.clone());
        Ok((action, [i1, i2]))
    }
}

// ---------------------------------------------------------------------------
// codings

type Cells<L> = Vec<(L, Polygon)>;

/// Pairwise intersections with positive area.
fn refine<A: Clone + Sync + Send, B: Clone + Sync + Send>(a: &[(A, Polygon)], b: &[(B, Polygon)]) -> Cells<(A, B)> {
    a.par_iter()
        .flat_map_iter(|(la, pa)| {
            b.iter().filter_map(move |(lb, pb)| pa.intersection(pb).map(|c| ((la.clone(), lb.clone()), c)))
        })
        .collect()
}

/// Cells `{x : t(x) ∈ C}` labeled like `C`.
fn pull_back<L: Clone + Sync + Send>(t: &Pet, cells: &[(L, Polygon)]) -> Cells<L> {
    t.pieces
        .par_iter()
        .flat_map_iter(|piece| {
            let back = neg(&piece.translation);
            cells.iter().filter_map(move |(l, c)| {
                c.translate(&back).intersection(&piece.polygon).map(|p| (l.clone(), p))
            })
        })
        .collect()
}

fn check_domain(p: &TorusPartition, a: &Z2Action) -> Result<(), PetError> {
    if p.periods() != a.periods() {
        return Err(PetError::DomainMismatch);
    }
    Ok(())
}

/// Convex cells on which the coding pattern of the given shape is constant,
/// each labeled by that pattern.
pub fn pattern_cells(p: &TorusPartition, a: &Z2Action, shape: Shape) -> Result<Vec<(Word2d, Polygon)>, PetError> {
    check_domain(p, a)?;
    if shape.0 == 0 || shape.1 == 0 {
        return Ok(vec![(Word2d::empty(shape), p.domain())]);
    }
    let base: Cells<Word2d> = p.cells().into_iter().map(|(l, c)| (Word2d::letter(l), c)).collect();
    let mut column = base.clone();
    for _ in 1..shape.1 {
        let above = pull_back(&a.gens[1], &column);
        column = refine(&base, &above)
            .into_iter()
            .map(|((b, w), c)| (b.concat(&w, Axis::E2).expect("equal widths"), c))
            .collect();
    }
    let mut block = column.clone();
    for _ in 1..shape.0 {
        let right = pull_back(&a.gens[0], &block);
        block = refine(&column, &right)
            .into_iter()
            .map(|((col, w), c)| (col.concat(&w, Axis::E1).expect("equal heights"), c))
            .collect();
    }
    Ok(block)
}

/// Patterns of the given shape whose cylinder has nonempty interior.
pub fn enumerate_language(p: &TorusPartition, a: &Z2Action, shape: Shape) -> Result<Language2d, PetError> {
    let cells = pattern_cells(p, a, shape)?;
    Ok(Language2d::from_words(shape, cells.into_iter().map(|(w, _)| w)))
}

pub fn code(p: &TorusPartition, x: &Point) -> Result<Letter, PetError> {
    Ok(p.code(x)?)
}

/// `(i, j) ↦ Code(R^{offset + (i, j)} x)` on the given shape.
pub fn config_patch(
    p: &TorusPartition,
    a: &Z2Action,
    x: &Point,
    shape: Shape,
    offset: (i64, i64),
) -> Result<Word2d, PetError> {
    check_domain(p, a)?;
    if shape.0 == 0 || shape.1 == 0 {
        return Ok(Word2d::empty(shape));
    }
    let mut w = Word2d::filled(shape, 0);
    let at = |n: (i64, i64), r: Result<Point, PetError>| -> Result<Point, PetError> {
        r.map_err(|e| match e {
            PetError::BoundaryHit(..) => PetError::OrbitBoundaryHit(n),
            e => e,
        })
    };
    let mut col_start = at(offset, a.apply(offset, x))?;
    for i in 0..shape.0 {
        let ni = offset.0 + i as i64;
        if i > 0 {
            col_start = at((ni, offset.1), a.gens[0].apply(&col_start))?;
        }
        let mut y = col_start.clone();
        for j in 0..shape.1 {
            let n = (ni, offset.1 + j as i64);
            if j > 0 {
                y = at(n, a.gens[1].apply(&y))?;
            }
            let l = p.code(&y).map_err(|_| PetError::OrbitBoundaryHit(n))?;
            w.set(i, j, l);
        }
    }
    Ok(w)
}

fn first_return(g: &Pet, window: &Polygon, x: &Point) -> Result<usize, PetError> {
    let mut y = x.clone();
    for t in 1..=MAX_RETURN_TIME {
        y = g.apply(&y)?;
        match window.locate(&y) {
            Location::Interior => return Ok(t),
            Location::Boundary => return Err(PetError::BoundaryHit(Box::new(y.clone()))),
            Location::Exterior => {}
        }
    }
    Err(PetError::NonReturningPiece(MAX_RETURN_TIME))
}

/// Block of codes swept by `x` before it returns to the window along each
/// axis.
pub fn return_word(p: &TorusPartition, a: &Z2Action, window: &Window, x: &Point) -> Result<Word2d, PetError> {
    let w = window.polygon(a.periods())?;
    if w.locate(x) != Location::Interior {
        return Err(PetError::OutsideDomain(Box::new(x.clone())));
    }
    let r = first_return(&a.gens[0], &w, x)?;
    let s = first_return(&a.gens[1], &w, x)?;
    config_patch(p, a, x, (r, s), (0, 0))
}

/// Sort key for return words: area first, then the reading column by column
/// from the bottom, then the shape.
fn return_word_key(w: &Word2d) -> (usize, Vec<Letter>, Shape) {
    (w.width() * w.height(), w.letters().to_vec(), w.shape())
}

/// Induced partition, induced action and natural substitution of a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedPartition {
    pub partition: TorusPartition,
    pub action: Z2Action,
    pub substitution: Morphism2d,
}

/// Partition of the window into sets of constant return word. Return words
/// become letters `0, 1, …` in the order of [`return_word_key`], and the
/// substitution maps each letter back to its return word.
pub fn induced_partition(p: &TorusPartition, a: &Z2Action, window: &Window) -> Result<InducedPartition, PetError> {
    check_domain(p, a)?;
    let (action, [i1, i2]) = a.induce(window)?;
    let times1: Cells<usize> = i1.pet.pieces.iter().zip(&i1.return_times).map(|(q, &t)| (t, q.polygon.clone())).collect();
    let times2: Cells<usize> = i2.pet.pieces.iter().zip(&i2.return_times).map(|(q, &t)| (t, q.polygon.clone())).collect();
    let times = refine(&times1, &times2);
    let shape = (i1.max_return_time(), i2.max_return_time());
    let words = pattern_cells(p, a, shape)?;
    let mut groups: BTreeMap<Word2d, Vec<Polygon>> = BTreeMap::new();
    for (((r, s), w), c) in refine(&times, &words) {
        groups.entry(w.factor((0, 0), (r, s))).or_default().push(c);
    }
    let mut ordered: Vec<(Word2d, Vec<Polygon>)> = groups.into_iter().collect();
    ordered.sort_by_cached_key(|(w, _)| return_word_key(w));
    let alphabet = p.labels().last().map_or(0, |&l| l as usize + 1);
    let mut atoms = BTreeMap::new();
    let mut images = Vec::with_capacity(ordered.len());
    for (b, (w, cells)) in ordered.into_iter().enumerate() {
        atoms.insert(b as Letter, Region::new(cells));
        images.push(w);
    }
    Ok(InducedPartition {
        partition: TorusPartition::new(action.periods().clone(), atoms)?,
        action,
        substitution: Morphism2d::new(alphabet, images)?,
    })
}

pub type Dominoes = BTreeSet<(Letter, Letter)>;

/// Horizontal and vertical dominoes of the coding.
pub fn coded_dominoes(
    p: &TorusPartition,
    a: &Z2Action,
) -> Result<(Dominoes, Dominoes), PetError> {
    Ok((enumerate_language(p, a, (2, 1))?.dominoes(), enumerate_language(p, a, (1, 2))?.dominoes()))
}

/// Relabel the atoms of `p` so that its coding has the reference dominoes.
pub fn relabel_by_dominoes(
    p: &TorusPartition,
    a: &Z2Action,
    reference_h: &BTreeSet<(Letter, Letter)>,
    reference_v: &BTreeSet<(Letter, Letter)>,
) -> Result<TorusPartition, PetError> {
    let (h, v) = coded_dominoes(p, a)?;
    Ok(relabel_to_match(p, &h, &v, reference_h, reference_v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64) -> Golden {
        Golden::from(a)
    }

    fn q(p: i64, d: i64) -> Golden {
        Golden::from_ratios(p, d, 0, 1)
    }

    fn unit() -> [Golden; 2] {
        [g(1), g(1)]
    }

    #[test]
    fn toral_translation_piece_counts() {
        let inv2 = Golden::phi_pow(-2);
        let t = Pet::toral_translation(&unit(), &[inv2.clone(), g(0)]).unwrap();
        assert_eq!(t.pieces().len(), 2);
        assert!(t.is_bijective());
        assert_eq!(Pet::toral_translation(&unit(), &[g(0), g(0)]).unwrap().pieces().len(), 1);
        let t4 = Pet::toral_translation(&unit(), &[q(1, 3), q(1, 2)]).unwrap();
        assert_eq!(t4.pieces().len(), 4);
        assert!(t4.is_bijective());
    }

    #[test]
    fn apply_and_boundary() {
        let inv2 = Golden::phi_pow(-2);
        let t = Pet::toral_translation(&unit(), &[inv2.clone(), g(0)]).unwrap();
        let x = [q(1357, 10000), q(2938, 10000)];
        assert_eq!(t.apply(&x).unwrap(), [&x[0] + &inv2, x[1].clone()]);
        let y = [q(9, 10), q(1, 2)];
        assert_eq!(t.apply(&y).unwrap(), [&(&y[0] + &inv2) - &g(1), y[1].clone()]);
        let cut = [g(1) - inv2, q(1, 2)];
        assert!(matches!(t.apply(&cut), Err(PetError::BoundaryHit(..))));
        assert_eq!(t.inverse().apply(&t.apply(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn inducing_on_the_whole_domain_is_trivial() {
        let id = Pet::identity(domain_rectangle(&unit()).unwrap());
        let ind = id.induced_transformation(id.domain()).unwrap();
        assert_eq!(ind.return_times, vec![1]);
        let a = Z2Action::toral_rotation(unit(), Golden::phi_pow(-2), Golden::phi_pow(-2)).unwrap();
        let (b, _) = a.induce(&Window::new(Axis::E2, g(1))).unwrap();
        assert!(b.is_rotation_by(&[Golden::phi_pow(-2), g(0)], &[g(0), Golden::phi_pow(-2)]));
    }

    #[test]
    fn one_dimensional_return_times() {
        let inv1 = Golden::phi_pow(-1);
        let inv2 = Golden::phi_pow(-2);
        let a = Z2Action::toral_rotation(unit(), inv2.clone(), inv2.clone()).unwrap();
        let (_, [_, i2]) = a.induce(&Window::new(Axis::E2, inv1.clone())).unwrap();
        for (piece, &t) in i2.pet.pieces().iter().zip(&i2.return_times) {
            // return after one step exactly when y + φ⁻² < φ⁻¹
            let y = &piece.polygon.interior_point()[1];
            assert_eq!(t == 1, (y + &inv2) < inv1);
        }
        assert_eq!(i2.max_return_time(), 2);
    }

    #[test]
    fn triangle_window_first_return_is_a_pet() {
        let t = Pet::toral_translation(&unit(), &[q(1, 3), q(1, 2)]).unwrap();
        let tri = Polygon::new(vec![[g(0), g(0)], [g(1), g(0)], [g(0), g(1)]]).unwrap();
        let ind = t.induced_transformation(&tri).unwrap();
        assert!(ind.pet.is_bijective());
    }

    #[test]
    fn shape_one_is_the_alphabet() {
        let p = TorusPartition::trivial(unit()).unwrap();
        let a = Z2Action::toral_rotation(unit(), Golden::phi_pow(-2), Golden::phi_pow(-2)).unwrap();
        let l = enumerate_language(&p, &a, (1, 1)).unwrap();
        assert_eq!(l.len(), 1);
        let x = [q(1, 7), q(2, 7)];
        assert_eq!(config_patch(&p, &a, &x, (1, 1), (0, 0)).unwrap(), Word2d::letter(0));
    }
}
