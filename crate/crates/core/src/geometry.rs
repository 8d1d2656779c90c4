//! Exact convex polygons over ℚ(φ) and labeled partitions of tori
//! `ℝ² / (ℓ₁ℤ × ℓ₂ℤ)`.
//!
//! Non-convex regions are kept as unions of convex cells with disjoint
//! interiors. Everything is exact; floats never enter a predicate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{Golden, NumError};
use crate::word2d::Letter;

pub type Point = [Golden; 2];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polygon has empty interior")]
    Degenerate,
    #[error("polygon is not convex")]
    NotConvex,
    #[error("scaling factor must be nonzero")]
    ZeroFactor,
    #[error("point ({}, {}) lies on the boundary of the partition", .0[0], .0[1])]
    BoundaryHit(Box<Point>),
    #[error("no labeling of the atoms is consistent with the reference dominoes")]
    NoConsistentLabeling,
    #[error("{0} labelings are consistent with the reference dominoes")]
    AmbiguousLabeling(usize),
    #[error("lattice periods must be positive")]
    BadLattice,
    #[error(transparent)]
    Num(#[from] NumError),
}

pub fn point(x: Golden, y: Golden) -> Point {
    [x, y]
}

fn sub(p: &Point, q: &Point) -> Point {
    [&p[0] - &q[0], &p[1] - &q[1]]
}

fn add(p: &Point, q: &Point) -> Point {
    [&p[0] + &q[0], &p[1] + &q[1]]
}

/// z-component of `(a − o) × (b − o)`.
fn cross(o: &Point, a: &Point, b: &Point) -> Golden {
    let u = sub(a, o);
    let v = sub(b, o);
    &u[0] * &v[1] - &u[1] * &v[0]
}

/// Closed halfplane `n·x ≤ c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfplane {
    pub normal: [Golden; 2],
    pub offset: Golden,
}

impl Halfplane {
    pub fn new(normal: [Golden; 2], offset: Golden) -> Self {
        Halfplane { normal, offset }
    }

    /// `a·x + b·y ≤ c`.
    pub fn le(a: Golden, b: Golden, c: Golden) -> Self {
        Halfplane::new([a, b], c)
    }

    /// Opposite closed halfplane `n·x ≥ c`.
    pub fn complement(&self) -> Self {
        Halfplane::new([-&self.normal[0], -&self.normal[1]], -&self.offset)
    }

    /// `n·p − c`: negative inside, zero on the line.
    pub fn eval(&self, p: &Point) -> Golden {
        &self.normal[0] * &p[0] + &self.normal[1] * &p[1] - &self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Convex polygon with vertices in counterclockwise order, no repeated or
/// collinear consecutive vertices and positive area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

/// Drop repeated and collinear consecutive vertices.
fn simplify(mut v: Vec<Point>) -> Vec<Point> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut drop = None;
        for i in 0..n {
            let prev = &v[(i + n - 1) % n];
            let next = &v[(i + 1) % n];
            if v[i] == *prev || cross(prev, &v[i], next).is_zero() {
                drop = Some(i);
                break;
            }
        }
        match drop {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

impl Polygon {
    /// Convex polygon from vertices in either orientation.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        let mut v = simplify(vertices);
        if v.len() < 3 {
            return Err(GeometryError::Degenerate);
        }
        if signed_area2(&v).is_negative() {
            v.reverse();
        }
        let n = v.len();
        for i in 0..n {
            if !cross(&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]).is_positive() {
                return Err(GeometryError::NotConvex);
            }
        }
        Ok(Polygon { vertices: v })
    }

    /// Axis-parallel rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: Golden, y0: Golden, x1: Golden, y1: Golden) -> Result<Self, GeometryError> {
        if x0 >= x1 || y0 >= y1 {
            return Err(GeometryError::Degenerate);
        }
        Ok(Polygon { vertices: vec![[x0.clone(), y0.clone()], [x1.clone(), y0], [x1, y1.clone()], [x0, y1]] })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> Golden {
        signed_area2(&self.vertices) * Golden::from_ratios(1, 2, 0, 1)
    }

    /// Halfplanes whose intersection is the polygon.
    pub fn halfplanes(&self) -> Vec<Halfplane> {
        self.edges()
            .map(|(p, q)| {
                let d = sub(q, p);
                let n = [d[1].clone(), -&d[0]];
                let c = &n[0] * &p[0] + &n[1] * &p[1];
                Halfplane::new(n, c)
            })
            .collect()
    }

    /// Intersection with a closed halfplane; `None` when it has no interior.
    pub fn clip(&self, h: &Halfplane) -> Option<Polygon> {
        let vals: Vec<Golden> = self.vertices.iter().map(|p| h.eval(p)).collect();
        if vals.iter().all(|s| !s.is_positive()) {
            return Some(self.clone());
        }
        if vals.iter().all(|s| !s.is_negative()) {
            return None;
        }
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (&self.vertices[i], &self.vertices[j]);
            let (sp, sq) = (&vals[i], &vals[j]);
            if !sp.is_positive() {
                out.push(p.clone());
            }
            if (sp.is_negative() && sq.is_positive()) || (sp.is_positive() && sq.is_negative()) {
                let t = sp / &(sp - sq);
                let d = sub(q, p);
                out.push([&p[0] + &(&t * &d[0]), &p[1] + &(&t * &d[1])]);
            }
        }
        let v = simplify(out);
        (v.len() >= 3).then_some(Polygon { vertices: v })
    }

    pub fn intersection(&self, other: &Polygon) -> Option<Polygon> {
        if !self.bbox().overlaps(&other.bbox()) {
            return None;
        }
        let mut cur = self.clone();
        for h in other.halfplanes() {
            cur = cur.clip(&h)?;
        }
        Some(cur)
    }

    pub fn translate(&self, v: &Point) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|p| add(p, v)).collect() }
    }

    /// Image under `x ↦ f·x + t`. A uniform scaling keeps the orientation.
    pub fn affine(&self, f: &Golden, t: &Point) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|p| [&(f * &p[0]) + &t[0], &(f * &p[1]) + &t[1]]).collect(),
        }
    }

    pub fn locate(&self, p: &Point) -> Location {
        let mut on_edge = false;
        for (a, b) in self.edges() {
            match cross(a, b, p).signum() {
                Ordering::Less => return Location::Exterior,
                Ordering::Equal => on_edge = true,
                Ordering::Greater => {}
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// Vertex average, which is interior for a convex polygon.
    pub fn interior_point(&self) -> Point {
        let n = Golden::from(self.vertices.len() as i64);
        let sx: Golden = self.vertices.iter().map(|p| p[0].clone()).sum();
        let sy: Golden = self.vertices.iter().map(|p| p[1].clone()).sum();
        [&sx / &n, &sy / &n]
    }

    pub fn bbox(&self) -> BBox {
        let xs = self.vertices.iter().map(|p| &p[0]);
        let ys = self.vertices.iter().map(|p| &p[1]);
        BBox {
            min: [xs.clone().min().unwrap().clone(), ys.clone().min().unwrap().clone()],
            max: [xs.max().unwrap().clone(), ys.max().unwrap().clone()],
        }
    }
}

fn signed_area2(v: &[Point]) -> Golden {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (p, q) = (&v[i], &v[(i + 1) % n]);
            &p[0] * &q[1] - &p[1] * &q[0]
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    /// Interiors overlap.
    pub fn overlaps(&self, o: &BBox) -> bool {
        self.min[0] < o.max[0] && o.min[0] < self.max[0] && self.min[1] < o.max[1] && o.min[1] < self.max[1]
    }
}

/// Union of convex cells with pairwise disjoint interiors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Region {
    pub cells: Vec<Polygon>,
}

impl Region {
    pub fn new(cells: Vec<Polygon>) -> Self {
        Region { cells }
    }

    pub fn area(&self) -> Golden {
        self.cells.iter().map(Polygon::area).sum()
    }

    pub fn intersection_area(&self, other: &Region) -> Golden {
        let mut total = Golden::zero();
        for a in &self.cells {
            for b in &other.cells {
                if let Some(c) = a.intersection(b) {
                    total += &c.area();
                }
            }
        }
        total
    }

    /// Equal up to a set of zero area.
    pub fn same_as(&self, other: &Region) -> bool {
        let a = self.area();
        a == other.area() && self.intersection_area(other) == a
    }

    /// Interior (of the closure), boundary or exterior.
    pub fn locate(&self, p: &Point) -> Location {
        let mut touched = false;
        for c in &self.cells {
            match c.locate(p) {
                Location::Interior => return Location::Interior,
                Location::Boundary => touched = true,
                Location::Exterior => {}
            }
        }
        if touched {
            Location::Boundary
        } else {
            Location::Exterior
        }
    }
}

/// Split a polygon along the lines of the lattice `ℓ₁ℤ × ℓ₂ℤ` and move every
/// piece into the fundamental rectangle `[0, ℓ₁] × [0, ℓ₂]`.
pub fn reduce_polygon(p: &Polygon, periods: &[Golden; 2]) -> Vec<Polygon> {
    let bb = p.bbox();
    let range = |axis: usize| -> (i64, i64) {
        let lo = (&bb.min[axis] / &periods[axis]).floor();
        let hi = (&bb.max[axis] / &periods[axis]).floor();
        (i64::try_from(lo).expect("small coordinate"), i64::try_from(hi).expect("small coordinate"))
    };
    let (i0, i1) = range(0);
    let (j0, j1) = range(1);
    let mut out = Vec::new();
    for i in i0..=i1 {
        let x0 = &periods[0] * &Golden::from(i);
        let x1 = &x0 + &periods[0];
        for j in j0..=j1 {
            let y0 = &periods[1] * &Golden::from(j);
            let y1 = &y0 + &periods[1];
            let rect = Polygon::rectangle(x0.clone(), y0.clone(), x1.clone(), y1).expect("positive periods");
            if let Some(c) = p.intersection(&rect) {
                out.push(c.translate(&[-&x0, -&y0]));
            }
        }
    }
    out
}

/// Reduce a point into `[0, ℓ₁) × [0, ℓ₂)`.
pub fn reduce_point(p: &Point, periods: &[Golden; 2]) -> Point {
    [
        p[0].rem_euclid(&periods[0]).expect("positive period"),
        p[1].rem_euclid(&periods[1]).expect("positive period"),
    ]
}

/// Labeled partition of `ℝ² / (ℓ₁ℤ × ℓ₂ℤ)` with atoms stored inside the
/// fundamental rectangle `[0, ℓ₁] × [0, ℓ₂]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPartition {
    periods: [Golden; 2],
    atoms: BTreeMap<Letter, Region>,
}

impl TorusPartition {
    pub fn new(periods: [Golden; 2], atoms: BTreeMap<Letter, Region>) -> Result<Self, GeometryError> {
        if !periods[0].is_positive() || !periods[1].is_positive() {
            return Err(GeometryError::BadLattice);
        }
        Ok(TorusPartition { periods, atoms })
    }

    /// The whole torus as a single atom labeled 0.
    pub fn trivial(periods: [Golden; 2]) -> Result<Self, GeometryError> {
        let d = domain_rectangle(&periods)?;
        TorusPartition::new(periods, BTreeMap::from([(0, Region::new(vec![d]))]))
    }

    pub fn periods(&self) -> &[Golden; 2] {
        &self.periods
    }

    pub fn domain(&self) -> Polygon {
        domain_rectangle(&self.periods).expect("validated periods")
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn labels(&self) -> Vec<Letter> {
        self.atoms.keys().copied().collect()
    }

    pub fn atoms(&self) -> &BTreeMap<Letter, Region> {
        &self.atoms
    }

    pub fn atom(&self, label: Letter) -> Option<&Region> {
        self.atoms.get(&label)
    }

    /// All convex cells with their labels.
    pub fn cells(&self) -> Vec<(Letter, Polygon)> {
        self.atoms.iter().flat_map(|(&l, r)| r.cells.iter().map(move |c| (l, c.clone()))).collect()
    }

    pub fn area(&self) -> Golden {
        self.atoms.values().map(Region::area).sum()
    }

    /// Atoms cover the domain and have pairwise disjoint interiors.
    pub fn is_partition(&self) -> bool {
        if self.area() != &self.periods[0] * &self.periods[1] {
            return false;
        }
        let cells = self.cells();
        for (i, (_, a)) in cells.iter().enumerate() {
            for (_, b) in &cells[i + 1..] {
                if a.intersection(b).is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// Label of the atom containing `x` (taken modulo the lattice).
    pub fn code(&self, x: &Point) -> Result<Letter, GeometryError> {
        let r = reduce_point(x, &self.periods);
        // a point on the edge of the fundamental rectangle also sits on the
        // opposite edge
        let mut reps = vec![r.clone()];
        if r[0].is_zero() {
            reps.push([self.periods[0].clone(), r[1].clone()]);
        }
        if r[1].is_zero() {
            let more: Vec<Point> = reps.iter().map(|p| [p[0].clone(), self.periods[1].clone()]).collect();
            reps.extend(more);
        }
        // closures of the atoms cover the torus, so x is interior to an atom
        // exactly when no other closure contains it
        let hits: BTreeSet<Letter> = self
            .atoms
            .iter()
            .filter(|(_, region)| reps.iter().any(|p| region.locate(p) != Location::Exterior))
            .map(|(&l, _)| l)
            .collect();
        match hits.len() {
            1 => Ok(*hits.iter().next().unwrap()),
            _ => Err(GeometryError::BoundaryHit(Box::new(x.clone()))),
        }
    }

    /// Rename atoms; labels missing from `map` are kept.
    pub fn relabel(&self, map: &BTreeMap<Letter, Letter>) -> TorusPartition {
        let atoms = self.atoms.iter().map(|(l, r)| (*map.get(l).unwrap_or(l), r.clone())).collect();
        TorusPartition { periods: self.periods.clone(), atoms }
    }

    /// Image under `x ↦ f·x + t`, reduced into the new fundamental domain
    /// `[0, |f|ℓ₁] × [0, |f|ℓ₂]`.
    pub fn rescale(&self, factor: &Golden, translate: &Point) -> Result<TorusPartition, GeometryError> {
        if factor.is_zero() {
            return Err(GeometryError::ZeroFactor);
        }
        let f = factor.abs();
        let periods = [&f * &self.periods[0], &f * &self.periods[1]];
        let atoms = self
            .atoms
            .iter()
            .map(|(&l, r)| {
                let cells = r.cells.iter().flat_map(|c| reduce_polygon(&c.affine(factor, translate), &periods)).collect();
                (l, Region::new(cells))
            })
            .collect();
        TorusPartition::new(periods, atoms)
    }

    /// Label map `a ↦ b` with `self[a] = other[b]` up to measure zero.
    pub fn is_equal_up_to_relabeling(&self, other: &TorusPartition) -> Option<BTreeMap<Letter, Letter>> {
        if self.periods != other.periods || self.len() != other.len() {
            return None;
        }
        let other_areas: Vec<(Letter, Golden, &Region)> =
            other.atoms.iter().map(|(&l, r)| (l, r.area(), r)).collect();
        let mut map = BTreeMap::new();
        let mut used = BTreeSet::new();
        for (&a, ra) in &self.atoms {
            let area = ra.area();
            let b = other_areas
                .iter()
                .find(|(b, ab, rb)| !used.contains(b) && *ab == area && ra.intersection_area(rb) == area)?
                .0;
            used.insert(b);
            map.insert(a, b);
        }
        Some(map)
    }
}

pub fn domain_rectangle(periods: &[Golden; 2]) -> Result<Polygon, GeometryError> {
    Polygon::rectangle(Golden::zero(), Golden::zero(), periods[0].clone(), periods[1].clone())
        .map_err(|_| GeometryError::BadLattice)
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    lattice: [[Golden; 2]; 2],
    atoms: BTreeMap<Letter, Vec<Vec<Point>>>,
}

/// `{"lattice": [[ℓ₁, 0], [0, ℓ₂]], "atoms": {label: [cell, ...]}}` where a
/// cell is its list of vertices.
impl Serialize for TorusPartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PartitionRepr {
            lattice: [
                [self.periods[0].clone(), Golden::zero()],
                [Golden::zero(), self.periods[1].clone()],
            ],
            atoms: self
                .atoms
                .iter()
                .map(|(&l, r)| (l, r.cells.iter().map(|c| c.vertices.clone()).collect()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = PartitionRepr::deserialize(d)?;
        let [[l1, z1], [z2, l2]] = repr.lattice;
        if !z1.is_zero() || !z2.is_zero() {
            return Err(D::Error::custom("only diagonal lattices are supported"));
        }
        let mut atoms = BTreeMap::new();
        for (l, cells) in repr.atoms {
            let cells = cells.into_iter().map(Polygon::new).collect::<Result<Vec<_>, _>>().map_err(D::Error::custom)?;
            atoms.insert(l, Region::new(cells));
        }
        TorusPartition::new([l1, l2], atoms).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// arrangements

/// Line `n·x = c` with `n` scaled so that its first nonzero entry is 1.
type LineKey = (Golden, Golden, Golden);

fn line_key(p: &Point, q: &Point) -> LineKey {
    let d = sub(q, p);
    let mut n = [d[1].clone(), -&d[0]];
    let lead = if !n[0].is_zero() { n[0].clone() } else { n[1].clone() };
    n = [&n[0] / &lead, &n[1] / &lead];
    let c = &n[0] * &p[0] + &n[1] * &p[1];
    let [a, b] = n;
    (a, b, c)
}

/// Coordinate used to parametrize points of a line: y on vertical lines,
/// x otherwise.
fn line_param(key: &LineKey, p: &Point) -> Golden {
    if key.1.is_zero() {
        p[1].clone()
    } else {
        p[0].clone()
    }
}

/// Part of segment `[a, b]` inside the closed rectangle, if of positive length.
fn clip_segment(a: &Point, b: &Point, periods: &[Golden; 2]) -> Option<[Point; 2]> {
    let d = sub(b, a);
    let mut t0 = Golden::zero();
    let mut t1 = Golden::one();
    for axis in 0..2 {
        // 0 ≤ a + t·d ≤ ℓ
        let lo = -&a[axis];
        let hi = &periods[axis] - &a[axis];
        if d[axis].is_zero() {
            if lo.is_positive() || hi.is_negative() {
                return None;
            }
            continue;
        }
        let (mut u, mut v) = (&lo / &d[axis], &hi / &d[axis]);
        if d[axis].is_negative() {
            std::mem::swap(&mut u, &mut v);
        }
        t0 = t0.max(u);
        t1 = t1.min(v);
    }
    if t0 >= t1 {
        return None;
    }
    let at = |t: &Golden| [&a[0] + &(t * &d[0]), &a[1] + &(t * &d[1])];
    Some([at(&t0), at(&t1)])
}

/// Every lattice translate of the segments, clipped to the closed
/// fundamental rectangle.
pub fn torus_segments(segments: &[[Point; 2]], periods: &[Golden; 2]) -> Vec<[Point; 2]> {
    let mut out = Vec::new();
    for [a, b] in segments {
        let mut range = [(0i64, 0i64); 2];
        for (axis, r) in range.iter_mut().enumerate() {
            let lo = (a[axis].clone().min(b[axis].clone()) / &periods[axis]).floor();
            let hi = (a[axis].clone().max(b[axis].clone()) / &periods[axis]).floor();
            *r = (i64::try_from(lo).unwrap() - 1, i64::try_from(hi).unwrap());
        }
        for i in range[0].0..=range[0].1 {
            for j in range[1].0..=range[1].1 {
                let shift = [&periods[0] * &Golden::from(-i), &periods[1] * &Golden::from(-j)];
                if let Some(s) = clip_segment(&add(a, &shift), &add(b, &shift), periods) {
                    out.push(s);
                }
            }
        }
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Does the union of `intervals` cover `[lo, hi]`?
fn covers(intervals: &[(Golden, Golden)], lo: &Golden, hi: &Golden) -> bool {
    let mut sorted: Vec<&(Golden, Golden)> = intervals.iter().collect();
    sorted.sort();
    let mut cur = lo.clone();
    for (a, b) in sorted {
        if *a > cur {
            break;
        }
        if *b > cur {
            cur = b.clone();
        }
        if cur >= *hi {
            return true;
        }
    }
    cur >= *hi
}

/// Faces of the arrangement cut out by the segments, as regions of the
/// fundamental rectangle. With `glue`, faces touching across opposite sides
/// of the rectangle are merged as well, giving the faces on the torus.
pub fn arrangement_faces(segments: &[[Point; 2]], periods: &[Golden; 2], glue: bool) -> Vec<Region> {
    let segs = torus_segments(segments, periods);
    let mut lines: BTreeMap<LineKey, Vec<(Golden, Golden)>> = BTreeMap::new();
    for [a, b] in &segs {
        let key = line_key(a, b);
        let (u, v) = (line_param(&key, a), line_param(&key, b));
        lines.entry(key).or_default().push((u.clone().min(v.clone()), u.max(v)));
    }

    // cut the rectangle along every supporting line
    let mut cells = vec![domain_rectangle(periods).expect("positive periods")];
    for (a, b, c) in lines.keys() {
        let h = Halfplane::new([a.clone(), b.clone()], c.clone());
        let hc = h.complement();
        cells = cells.iter().flat_map(|p| [p.clip(&h), p.clip(&hc)]).flatten().collect();
    }

    let mut edges: BTreeMap<LineKey, Vec<(usize, Golden, Golden)>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        for (p, q) in c.edges() {
            let key = line_key(p, q);
            let (u, v) = (line_param(&key, p), line_param(&key, q));
            edges.entry(key).or_default().push((i, u.clone().min(v.clone()), u.max(v)));
        }
    }
    let no_cut = Vec::new();
    let mut uf = UnionFind((0..cells.len()).collect());
    let mut join = |ea: &[(usize, Golden, Golden)], eb: &[(usize, Golden, Golden)], cuts: &[(Golden, Golden)]| {
        for (i, a0, a1) in ea {
            for (j, b0, b1) in eb {
                if i == j {
                    continue;
                }
                let lo = a0.clone().max(b0.clone());
                let hi = a1.clone().min(b1.clone());
                if lo < hi && !covers(cuts, &lo, &hi) {
                    uf.union(*i, *j);
                }
            }
        }
    };
    for (key, list) in &edges {
        join(list, list, lines.get(key).unwrap_or(&no_cut));
    }
    if glue {
        let (o, z) = (Golden::one(), Golden::zero());
        for (axis, period) in periods.iter().enumerate() {
            let n = if axis == 0 { (o.clone(), z.clone()) } else { (z.clone(), o.clone()) };
            let near = (n.0.clone(), n.1.clone(), z.clone());
            let far = (n.0, n.1, period.clone());
            let mut cuts: Vec<(Golden, Golden)> = lines.get(&near).cloned().unwrap_or_default();
            cuts.extend(lines.get(&far).cloned().unwrap_or_default());
            if let (Some(a), Some(b)) = (edges.get(&near), edges.get(&far)) {
                join(a, b, &cuts);
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<Polygon>> = BTreeMap::new();
    for (i, c) in cells.into_iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(c);
    }
    let mut regions: Vec<(Point, Region)> = groups
        .into_values()
        .map(|cells| {
            let key = cells.iter().map(Polygon::interior_point).min().unwrap();
            (key, Region::new(cells))
        })
        .collect();
    regions.sort_by(|a, b| a.0.cmp(&b.0));
    regions.into_iter().map(|(_, r)| r).collect()
}

/// The torus partition cut out by the lattice translates of the segments.
/// Atoms get provisional labels `0, 1, …` ordered by their leftmost cell.
pub fn partition_from_segments(segments: &[[Point; 2]], periods: [Golden; 2]) -> Result<TorusPartition, GeometryError> {
    domain_rectangle(&periods)?;
    let faces = arrangement_faces(segments, &periods, true);
    let atoms = faces.into_iter().enumerate().map(|(i, r)| (i as Letter, r)).collect();
    TorusPartition::new(periods, atoms)
}

// ---------------------------------------------------------------------------
// relabeling

/// All bijections `π` from `labels` onto `0..labels.len()` such that every
/// observed horizontal pair maps into `reference_h` and every vertical pair
/// into `reference_v`, at most `limit` of them.
pub fn consistent_labelings(
    labels: &[Letter],
    observed_h: &BTreeSet<(Letter, Letter)>,
    observed_v: &BTreeSet<(Letter, Letter)>,
    reference_h: &BTreeSet<(Letter, Letter)>,
    reference_v: &BTreeSet<(Letter, Letter)>,
    limit: usize,
) -> Vec<BTreeMap<Letter, Letter>> {
    let n = labels.len();
    let index: BTreeMap<Letter, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    // constraints as (other label index, is_vertical, self is first)
    let mut adj: Vec<Vec<(usize, bool, bool)>> = vec![Vec::new(); n];
    for (set, vertical) in [(observed_h, false), (observed_v, true)] {
        for (a, b) in set {
            let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) else { continue };
            adj[i].push((j, vertical, true));
            adj[j].push((i, vertical, false));
        }
    }
    // visit labels in BFS order from the most constrained one so that checks
    // fire early
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    while order.len() < n {
        let start = (0..n).filter(|&i| !seen[i]).max_by_key(|&i| (adj[i].len(), usize::MAX - i)).unwrap();
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &(j, _, _) in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }

    struct Search<'a> {
        order: Vec<usize>,
        adj: Vec<Vec<(usize, bool, bool)>>,
        refs: [&'a BTreeSet<(Letter, Letter)>; 2],
        assign: Vec<Option<Letter>>,
        used: Vec<bool>,
        found: Vec<Vec<Letter>>,
        limit: usize,
    }
    impl Search<'_> {
        fn go(&mut self, k: usize) {
            if self.found.len() >= self.limit {
                return;
            }
            if k == self.order.len() {
                self.found.push(self.assign.iter().map(|a| a.unwrap()).collect());
                return;
            }
            let i = self.order[k];
            for t in 0..self.used.len() {
                if self.used[t] {
                    continue;
                }
                let t = t as Letter;
                let ok = self.adj[i].iter().all(|&(j, vertical, first)| {
                    let other = if j == i { Some(t) } else { self.assign[j] };
                    match other {
                        None => true,
                        Some(o) => {
                            let pair = if first { (t, o) } else { (o, t) };
                            self.refs[vertical as usize].contains(&pair)
                        }
                    }
                });
                if ok {
                    self.assign[i] = Some(t);
                    self.used[t as usize] = true;
                    self.go(k + 1);
                    self.used[t as usize] = false;
                    self.assign[i] = None;
                }
            }
        }
    }
    let mut s = Search {
        order,
        adj,
        refs: [reference_h, reference_v],
        assign: vec![None; n],
        used: vec![false; n],
        found: Vec::new(),
        limit,
    };
    s.go(0);
    s.found
        .into_iter()
        .map(|targets| labels.iter().copied().zip(targets).collect())
        .collect()
}

/// Relabel `p` by the unique labeling consistent with the reference domino
/// sets, given the dominoes observed in the coding of `p`.
pub fn relabel_to_match(
    p: &TorusPartition,
    observed_h: &BTreeSet<(Letter, Letter)>,
    observed_v: &BTreeSet<(Letter, Letter)>,
    reference_h: &BTreeSet<(Letter, Letter)>,
    reference_v: &BTreeSet<(Letter, Letter)>,
) -> Result<TorusPartition, GeometryError> {
    let found = consistent_labelings(&p.labels(), observed_h, observed_v, reference_h, reference_v, 2);
    match found.len() {
        0 => Err(GeometryError::NoConsistentLabeling),
        1 => Ok(p.relabel(&found[0])),
        n => Err(GeometryError::AmbiguousLabeling(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64) -> Golden {
        Golden::from(a)
    }

    fn unit() -> Polygon {
        Polygon::rectangle(g(0), g(0), g(1), g(1)).unwrap()
    }

    #[test]
    fn clip_axis_cut() {
        let inv = Golden::phi_pow(-1);
        let r = unit().clip(&Halfplane::le(g(0), g(1), inv.clone())).unwrap();
        assert_eq!(r, Polygon::rectangle(g(0), g(0), g(1), inv).unwrap());
        assert_eq!(unit().clip(&Halfplane::le(g(1), g(0), g(5))).unwrap(), unit());
        let tri = Polygon::new(vec![[g(0), g(0)], [g(1), g(0)], [g(0), g(1)]]).unwrap();
        assert_eq!(tri.clip(&Halfplane::le(g(1), g(1), g(1))).unwrap(), tri);
        assert!(unit().clip(&Halfplane::le(g(1), g(0), g(0))).is_none());
    }

    #[test]
    fn clip_halves_add_up() {
        let h = Halfplane::le(Golden::phi(), g(1), Golden::from_ints(1, 0));
        let a = unit().clip(&h).unwrap().area();
        let b = unit().clip(&h.complement()).unwrap().area();
        assert_eq!(a + b, g(1));
    }

    #[test]
    fn polygon_rejects_bad_input() {
        assert_eq!(Polygon::new(vec![[g(0), g(0)], [g(1), g(1)], [g(2), g(2)]]), Err(GeometryError::Degenerate));
        let dart = vec![[g(0), g(0)], [g(4), g(0)], [g(1), g(1)], [g(0), g(4)]];
        assert_eq!(Polygon::new(dart), Err(GeometryError::NotConvex));
        // clockwise input is reoriented
        let cw = Polygon::new(vec![[g(0), g(0)], [g(0), g(1)], [g(1), g(1)], [g(1), g(0)]]).unwrap();
        assert_eq!(cw.area(), g(1));
    }

    #[test]
    fn point_location() {
        let half = Golden::from_ratios(1, 2, 0, 1);
        assert_eq!(unit().locate(&[half.clone(), half.clone()]), Location::Interior);
        assert_eq!(unit().locate(&[g(0), half.clone()]), Location::Boundary);
        assert_eq!(unit().locate(&[g(2), half]), Location::Exterior);
    }

    #[test]
    fn no_segments_single_atom() {
        let p = partition_from_segments(&[], [g(1), g(1)]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.area(), g(1));
    }

    #[test]
    fn diagonals() {
        let segs = vec![[[g(0), g(0)], [g(1), g(1)]], [[g(0), g(1)], [g(1), g(0)]]];
        let faces = arrangement_faces(&segs, &[g(1), g(1)], false);
        assert_eq!(faces.len(), 4);
        // on the torus the triangles at opposite sides are glued together
        let p = partition_from_segments(&segs, [g(1), g(1)]).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.is_partition());
    }

    #[test]
    fn segment_across_the_lattice() {
        // a vertical segment outside the square still cuts it after reduction
        let segs = vec![[[Golden::from_ratios(5, 2, 0, 1), g(-3)], [Golden::from_ratios(5, 2, 0, 1), g(3)]]];
        let p = partition_from_segments(&segs, [g(1), g(1)]).unwrap();
        // one cut line on a torus does not disconnect it
        assert_eq!(p.len(), 1);
        let segs2 = vec![segs[0].clone(), [[g(0), g(0)], [g(0), g(1)]]];
        assert_eq!(partition_from_segments(&segs2, [g(1), g(1)]).unwrap().len(), 2);
    }

    #[test]
    fn rescale_identity_and_reflection() {
        let segs = vec![[[g(0), g(0)], [g(1), g(1)]], [[g(0), g(1)], [g(1), g(0)]], [[g(0), g(0)], [g(0), g(1)]]];
        let p = partition_from_segments(&segs, [g(1), g(1)]).unwrap();
        let same = p.rescale(&g(1), &[g(0), g(0)]).unwrap();
        assert_eq!(p.is_equal_up_to_relabeling(&same).unwrap(), p.labels().iter().map(|&l| (l, l)).collect());
        let r = p.rescale(&g(-1), &[g(0), g(0)]).unwrap();
        assert_eq!(r.area(), g(1));
        assert!(r.is_partition());
        assert!(p.rescale(&g(0), &[g(0), g(0)]).is_err());
    }

    #[test]
    fn coding_and_boundaries() {
        let segs = vec![[[g(0), g(0)], [g(0), g(1)]], [[Golden::phi_pow(-1), g(0)], [Golden::phi_pow(-1), g(1)]]];
        let p = partition_from_segments(&segs, [g(1), g(1)]).unwrap();
        assert_eq!(p.len(), 2);
        let q = Golden::from_ratios(1, 3, 0, 1);
        let left = p.code(&[Golden::from_ratios(1, 10, 0, 1), q.clone()]).unwrap();
        let right = p.code(&[Golden::from_ratios(9, 10, 0, 1), q.clone()]).unwrap();
        assert_ne!(left, right);
        assert_eq!(p.code(&[Golden::from_ratios(11, 10, 0, 1), q.clone()]).unwrap(), left);
        assert!(matches!(p.code(&[Golden::phi_pow(-1), q.clone()]), Err(GeometryError::BoundaryHit(..))));
        assert!(matches!(p.code(&[g(0), q]), Err(GeometryError::BoundaryHit(..))));
    }

    #[test]
    fn json_round_trip() {
        let segs = vec![[[g(0), g(0)], [g(1), g(1)]]];
        let p = partition_from_segments(&segs, [g(1), Golden::phi_pow(-1)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: TorusPartition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn labelings() {
        let labels = vec![5, 7];
        let obs: BTreeSet<(Letter, Letter)> = [(5, 7)].into();
        let empty = BTreeSet::new();
        let reference: BTreeSet<(Letter, Letter)> = [(1, 0)].into();
        let found = consistent_labelings(&labels, &obs, &empty, &reference, &empty, 5);
        assert_eq!(found, vec![BTreeMap::from([(5, 1), (7, 0)])]);
        let full: BTreeSet<(Letter, Letter)> = [(0, 1), (1, 0), (0, 0), (1, 1)].into();
        assert_eq!(consistent_labelings(&labels, &obs, &empty, &full, &empty, 5).len(), 2);
    }
}
