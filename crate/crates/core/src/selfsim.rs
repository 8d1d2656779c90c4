//! End-to-end pipelines proving that the Wang shift, the substitutive shift
//! and the polygon-exchange coding coincide, plus the checks around them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::data::{
    partition_u_segments, phi, u_tiles, CERTIFICATE_HORIZ, CERTIFICATE_VERT, H_DOMINOES, U_MARKERS_E2,
    V_DOMINOES, V_MARKERS_E1,
};
use crate::exactnum::Golden;
use crate::geometry::{partition_from_segments, reduce_point, GeometryError, Point, TorusPartition};
use crate::markers::{find_markers, find_substitution, is_equivalent, DesubstitutionResult, Equivalence, MarkerError, MarkerReport, Side};
use crate::morphism2d::{Morphism2d, MorphismError};
use crate::pet::{enumerate_language, induced_partition, relabel_by_dominoes, PetError, Window, Z2Action};
use crate::wangtiles::{Lattice, WangError, WangTileSet};
use crate::word2d::{Axis, Language2d, Letter, Shape, Word2d};

/// Iteration bound used whenever a language of φ is closed under images.
const LANGUAGE_BOUND: usize = 64;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("no markers in direction {axis} up to radius {radius}; try increasing the radius")]
    NoMarkers { axis: Axis, radius: usize },
    #[error(transparent)]
    Marker(#[from] MarkerError),
    #[error(transparent)]
    Pet(#[from] PetError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Wang(#[from] WangError),
}

/// One marker search followed by a desubstitution.
#[derive(Debug, Clone, Serialize)]
pub struct WangStep {
    pub markers: MarkerReport,
    pub chosen: Vec<usize>,
    pub result: DesubstitutionResult,
}

/// Two desubstitutions and, when it exists, the renaming back to the input.
#[derive(Debug, Clone, Serialize)]
pub struct WangLoop {
    pub steps: Vec<WangStep>,
    pub equivalence: Option<Equivalence>,
    /// `α₀ ∘ α₁ ∘ α₂` when the loop closes.
    pub composite: Option<Morphism2d>,
}

/// Smallest radius up to `max_radius` at which markers exist.
pub fn markers_with_growing_radius(
    tiles: &WangTileSet,
    axis: Axis,
    max_radius: usize,
) -> Result<MarkerReport, PipelineError> {
    for r in 1..=max_radius {
        let rep = find_markers(tiles, axis, r);
        if !rep.marker_subsets.is_empty() {
            return Ok(rep);
        }
    }
    Err(PipelineError::NoMarkers { axis, radius: max_radius })
}

/// Desubstitute twice, in the directions `order`, always taking the first
/// marker set and the right side, then look for a color renaming onto the
/// original tile set.
pub fn run_wang_pipeline(tiles: &WangTileSet, order: [Axis; 2], max_radius: usize) -> Result<WangLoop, PipelineError> {
    let mut steps = Vec::new();
    let mut current = tiles.clone();
    for axis in order {
        let markers = markers_with_growing_radius(&current, axis, max_radius)?;
        let chosen = markers.marker_subsets[0].clone();
        let result = find_substitution(&current, &chosen, axis, markers.radius, Side::Right)?;
        log::info!("desubstitution along {axis}: {} tiles", result.tiles.len());
        current = result.tiles.clone();
        steps.push(WangStep { markers, chosen, result });
    }
    let equivalence = is_equivalent(tiles, &current);
    let composite = match &equivalence {
        Some(eq) => Some(steps[0].result.morphism.compose(&steps[1].result.morphism)?.compose(&eq.morphism())?),
        None => None,
    };
    Ok(WangLoop { steps, equivalence, composite })
}

/// The torus partition of 𝒰 with the action `R_U`, labeled so that its
/// coding has the dominoes of the language of φ.
pub fn partition_u() -> Result<(TorusPartition, Z2Action), PipelineError> {
    let one = Golden::one();
    let raw = partition_from_segments(&partition_u_segments(), [one.clone(), one.clone()])?;
    let inv2 = Golden::phi_pow(-2);
    let action = Z2Action::toral_rotation([one.clone(), one], inv2.clone(), inv2)?;
    let h: BTreeSet<_> = H_DOMINOES.into_iter().collect();
    let v: BTreeSet<_> = V_DOMINOES.into_iter().collect();
    Ok((relabel_by_dominoes(&raw, &action, &h, &v)?, action))
}

#[derive(Debug, Clone, Serialize)]
pub struct PetStep {
    pub window: Axis,
    pub atoms: usize,
    pub periods: [Golden; 2],
    /// Translation vectors of the induced action when it is a toral rotation.
    pub rotation: Option<[Point; 2]>,
    pub substitution: Morphism2d,
}

#[derive(Debug, Clone, Serialize)]
pub struct PetLoop {
    pub atoms: usize,
    pub area: Golden,
    pub steps: Vec<PetStep>,
    /// Label permutation from the rescaled second induced partition onto the
    /// original one, as a morphism.
    pub rescaling: Option<Morphism2d>,
    pub composite: Option<Morphism2d>,
}

/// Induce on `x_i <= φ⁻¹` for the two axes in `order`, rescale by `-φ`
/// and compare with the original partition.
pub fn run_pet_pipeline(order: [Axis; 2]) -> Result<PetLoop, PipelineError> {
    let (pu, ru) = partition_u()?;
    let inv1 = Golden::phi_pow(-1);
    let mut steps = Vec::new();
    let (mut p, mut a) = (pu.clone(), ru);
    for axis in order {
        let ind = induced_partition(&p, &a, &Window::new(axis, inv1.clone()))?;
        log::info!("induced on window {axis}: {} atoms", ind.partition.len());
        steps.push(PetStep {
            window: axis,
            atoms: ind.partition.len(),
            periods: ind.action.periods().clone(),
            rotation: ind.action.rotation_vectors(),
            substitution: ind.substitution.clone(),
        });
        p = ind.partition;
        a = ind.action;
    }
    let one = Golden::one();
    let rescaling = match p.rescale(&-Golden::phi(), &[one.clone(), one]) {
        Ok(scaled) => match pu.is_equal_up_to_relabeling(&scaled) {
            Some(perm) => {
                let images: Vec<Letter> = perm.values().copied().collect();
                Some(Morphism2d::from_permutation(&images, pu.len())?)
            }
            None => None,
        },
        Err(_) => None,
    };
    let composite = match &rescaling {
        Some(b2) => Some(steps[0].substitution.compose(&steps[1].substitution)?.compose(b2)?),
        None => None,
    };
    Ok(PetLoop { atoms: pu.len(), area: pu.area(), steps, rescaling, composite })
}

/// Sufficient conditions for a morphism to define a unique self-similar
/// subshift. The seeds inclusion is only examined for expansive morphisms,
/// whose language is well defined.
#[derive(Debug, Clone, Serialize)]
pub struct UniquenessReport {
    pub expansive: bool,
    pub primitive: bool,
    pub seeds: Option<SeedsReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedsReport {
    pub seeds: usize,
    pub language_2x2: usize,
    pub outside_language: usize,
    /// A cycle of the seeds graph through a word outside the language.
    pub witness_cycle: Vec<Word2d>,
}

impl SeedsReport {
    pub fn in_language(&self) -> bool {
        self.outside_language == 0
    }
}

impl UniquenessReport {
    pub fn seeds_in_language(&self) -> bool {
        self.seeds.as_ref().is_some_and(SeedsReport::in_language)
    }

    pub fn holds(&self) -> bool {
        self.expansive && self.primitive && self.seeds_in_language()
    }
}

pub fn check_uniqueness_hypotheses(m: &Morphism2d) -> Result<UniquenessReport, PipelineError> {
    let expansive = m.is_expansive(4)?;
    let primitive = m.is_primitive()?;
    if !expansive {
        return Ok(UniquenessReport { expansive, primitive, seeds: None });
    }
    let seeds = m.seeds()?;
    let lang = m.language((2, 2), LANGUAGE_BOUND)?;
    let outside: Vec<&Word2d> = seeds.iter().filter(|w| !lang.contains(w)).collect();
    let witness_cycle = match outside.first() {
        Some(&w) => seeds_cycle_through(m, w)?,
        None => Vec::new(),
    };
    let seeds = SeedsReport { seeds: seeds.len(), language_2x2: lang.len(), outside_language: outside.len(), witness_cycle };
    Ok(UniquenessReport { expansive, primitive, seeds: Some(seeds) })
}

/// Shortest cycle of the seeds graph through `start`, found by BFS.
fn seeds_cycle_through(m: &Morphism2d, start: &Word2d) -> Result<Vec<Word2d>, PipelineError> {
    let mut parent: BTreeMap<Word2d, Word2d> = BTreeMap::new();
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(u) = queue.pop_front() {
        let Ok(img) = m.apply(&u) else { continue };
        for v in img.subwords((2, 2)).map_err(MorphismError::from)?.iter() {
            if v == start {
                let mut cycle = vec![u.clone()];
                let mut cur = u.clone();
                while &cur != start {
                    cur = parent[&cur].clone();
                    cycle.push(cur.clone());
                }
                cycle.reverse();
                return Ok(cycle);
            }
            if !parent.contains_key(v) {
                parent.insert(v.clone(), u.clone());
                queue.push_back(v.clone());
            }
        }
    }
    Ok(Vec::new())
}

/// Sizes of the three languages for one shape.
#[derive(Debug, Clone, Serialize)]
pub struct LanguageRow {
    pub shape: Shape,
    pub substitutive: usize,
    pub wang: usize,
    /// Surrounding radius that made the Wang count agree, or the largest tried.
    pub wang_radius: usize,
    pub pet: usize,
    pub equal: bool,
}

/// Patterns of `shape` that extend to a valid pattern `r` cells larger on
/// every side.
pub fn wang_language(tiles: &WangTileSet, shape: Shape, r: usize) -> Language2d {
    let found: Vec<Word2d> =
        tiles.valid_patterns(shape).into_par_iter().filter(|w| tiles.admits_surrounding(w, r)).collect();
    Language2d::from_words(shape, found)
}

/// Compare the languages of φ, of the Wang shift (surrounding radius from
/// `radius` up to `max_radius`) and of the coding of the torus partition,
/// for all shapes up to `max_shape`.
pub fn cross_check_languages(
    tiles: &WangTileSet,
    max_shape: Shape,
    radius: usize,
    max_radius: usize,
) -> Result<Vec<LanguageRow>, PipelineError> {
    let m = phi();
    let (pu, ru) = partition_u()?;
    let mut rows = Vec::new();
    for w in 1..=max_shape.0 {
        for h in 1..=max_shape.1 {
            let shape = (w, h);
            let sub = m.language(shape, LANGUAGE_BOUND)?;
            let pet = enumerate_language(&pu, &ru, shape)?;
            let mut r = radius;
            let mut wang = wang_language(tiles, shape, r);
            while wang != sub && r < max_radius {
                r += 1;
                wang = wang_language(tiles, shape, r);
            }
            rows.push(LanguageRow {
                shape,
                substitutive: sub.len(),
                wang: wang.len(),
                wang_radius: r,
                pet: pet.len(),
                equal: sub == wang && sub == pet,
            });
        }
    }
    Ok(rows)
}

/// Result of the recognizability desk check.
#[derive(Debug, Clone, Serialize)]
pub struct RecognizabilityReport {
    pub shape: Shape,
    pub words: usize,
    /// Words with several (preimage letter, offset) pairs at their center.
    pub ambiguous: Vec<Word2d>,
    /// Words of the language never seen inside an image.
    pub uncovered: usize,
}

impl RecognizabilityReport {
    pub fn holds(&self) -> bool {
        self.ambiguous.is_empty() && self.uncovered == 0
    }
}

/// Preimage letter and the offset of a cell inside its block.
type Parse = (Letter, usize, usize);

/// For every `w` of the language of `m` with the given shape, collect the
/// letters `a` and offsets `k` such that some occurrence of `w` in an image
/// `m(u)` has its center cell at offset `k` inside the block `m(a)`.
pub fn recognizability(m: &Morphism2d, shape: Shape) -> Result<RecognizabilityReport, PipelineError> {
    let lang = m.language(shape, LANGUAGE_BOUND)?;
    let center = (shape.0 / 2, shape.1 / 2);
    let found: Vec<Vec<(Word2d, Parse)>> = lang
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|u| -> Result<_, MorphismError> {
            let img = m.apply(u)?;
            // block boundaries of the image along each axis
            let xs = block_starts((0..u.width()).map(|x| m.image(u.get(x, 0)).map(|w| w.width())))?;
            let ys = block_starts((0..u.height()).map(|y| m.image(u.get(0, y)).map(|w| w.height())))?;
            let mut out = Vec::new();
            for px in 0..=img.width().saturating_sub(shape.0) {
                for py in 0..=img.height().saturating_sub(shape.1) {
                    if img.width() < shape.0 || img.height() < shape.1 {
                        continue;
                    }
                    let (cx, cy) = (px + center.0, py + center.1);
                    let i = xs.partition_point(|&s| s <= cx) - 1;
                    let j = ys.partition_point(|&s| s <= cy) - 1;
                    out.push((img.factor((px, py), shape), (u.get(i, j), cx - xs[i], cy - ys[j])));
                }
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;
    let mut candidates: BTreeMap<Word2d, BTreeSet<(Letter, usize, usize)>> = BTreeMap::new();
    for (w, c) in found.into_iter().flatten() {
        candidates.entry(w).or_default().insert(c);
    }
    let ambiguous = candidates.iter().filter(|(_, c)| c.len() > 1).map(|(w, _)| w.clone()).collect();
    let uncovered = lang.iter().filter(|w| !candidates.contains_key(*w)).count();
    Ok(RecognizabilityReport { shape, words: lang.len(), ambiguous, uncovered })
}

fn block_starts(sizes: impl Iterator<Item = Result<usize, MorphismError>>) -> Result<Vec<usize>, MorphismError> {
    let mut starts = vec![0];
    for s in sizes {
        let last = *starts.last().unwrap();
        starts.push(last + s?);
    }
    starts.pop();
    Ok(starts)
}

/// Sublattices of index at most `max_index` whose torus `tiles` can tile.
pub fn periodic_tilings(tiles: &WangTileSet, max_index: usize) -> Result<(usize, Vec<Lattice>), PipelineError> {
    let lattices: Vec<Lattice> = (1..=max_index).flat_map(Lattice::all_with_index).collect();
    let found: Vec<Lattice> = lattices
        .par_iter()
        .map(|l| tiles.exists_periodic_tiling(l.basis()).map(|ok| ok.then_some(*l)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok((lattices.len(), found))
}

/// One line of the final report.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub stage: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub stage: String,
    pub millis: u128,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub tiles: WangTileSet,
    pub max_shape: Shape,
    pub radius: usize,
    pub max_radius: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tiles: u_tiles(), max_shape: (2, 2), radius: 2, max_radius: 3 }
    }
}

/// Everything `verify_all` computed. `checks` decide success; `findings`
/// record facts that are reported but not required.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub findings: Vec<Check>,
    pub timings: Vec<Timing>,
    pub wang: Option<WangLoop>,
    pub pet: Option<PetLoop>,
    /// Markers along e₁ first, then e₂.
    pub wang_alt: Option<WangLoop>,
    /// Window `x <= φ⁻¹` first, then `y <= φ⁻¹`.
    pub pet_alt: Option<PetLoop>,
    pub uniqueness: Option<UniquenessReport>,
    pub languages: Vec<LanguageRow>,
    pub periodic_points: Option<PeriodicPoints>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodicPoints {
    /// Pairs `(seed, k)` with the seed fixed by `φ^k`.
    pub pairs: Vec<(Word2d, usize)>,
    pub distinct_seeds: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

struct Recorder {
    report: VerificationReport,
}

impl Recorder {
    fn check(&mut self, stage: &str, name: &str, passed: bool, detail: impl Into<String>) {
        self.report.checks.push(Check { stage: stage.into(), name: name.into(), passed, detail: detail.into() });
    }

    fn finding(&mut self, stage: &str, name: &str, passed: bool, detail: impl Into<String>) {
        self.report.findings.push(Check { stage: stage.into(), name: name.into(), passed, detail: detail.into() });
    }

    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.report.timings.push(Timing { stage: stage.into(), millis: t.elapsed().as_millis() });
        out
    }
}

fn expected_certificate() -> (BTreeMap<String, String>, BTreeMap<String, String>) {
    let conv = |p: &[(&str, &str)]| p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    (conv(&CERTIFICATE_VERT), conv(&CERTIFICATE_HORIZ))
}

/// Run every pipeline and record one check per verified fact. Stage errors
/// become failed checks instead of aborting.
pub fn verify_all(opts: &VerifyOptions) -> VerificationReport {
    let mut rec = Recorder {
        report: VerificationReport {
            checks: Vec::new(),
            findings: Vec::new(),
            timings: Vec::new(),
            wang: None,
            pet: None,
            wang_alt: None,
            pet_alt: None,
            uniqueness: None,
            languages: Vec::new(),
            periodic_points: None,
        },
    };
    let target = phi();

    match rec.time("wang", || run_wang_pipeline(&opts.tiles, [Axis::E2, Axis::E1], opts.max_radius)) {
        Ok(w) => {
            let m0 = &w.steps[0].markers;
            rec.check("wang", "markers of U along e2", m0.marker_subsets == [U_MARKERS_E2.to_vec()], format!("{:?} at radius {}", m0.marker_subsets, m0.radius));
            rec.check("wang", "first desubstitution has 21 tiles", w.steps[0].result.tiles.len() == 21, w.steps[0].result.tiles.len().to_string());
            let m1 = &w.steps[1].markers;
            let expected: Vec<Vec<usize>> = V_MARKERS_E1.iter().map(|s| s.to_vec()).collect();
            rec.check("wang", "marker sets along e1", m1.marker_subsets == expected, format!("{:?} at radius {}", m1.marker_subsets, m1.radius));
            rec.check("wang", "second desubstitution has 19 tiles", w.steps[1].result.tiles.len() == 19, w.steps[1].result.tiles.len().to_string());
            let (ev, eh) = expected_certificate();
            let cert_ok = w.equivalence.as_ref().is_some_and(|e| e.vert == ev && e.horiz == eh);
            rec.check("wang", "color renaming back onto U", cert_ok, if w.equivalence.is_some() { "found" } else { "none" });
            rec.check("wang", "composite equals phi", w.composite.as_ref() == Some(&target), "");
            rec.report.wang = Some(w);
        }
        Err(e) => rec.check("wang", "pipeline", false, e.to_string()),
    }

    match rec.time("pet", || run_pet_pipeline([Axis::E2, Axis::E1])) {
        Ok(p) => {
            rec.check("pet", "partition has 19 atoms of total area 1", p.atoms == 19 && p.area == Golden::one(), format!("{} atoms, area {}", p.atoms, p.area));
            let (z, inv2, inv3) = (Golden::zero(), Golden::phi_pow(-2), Golden::phi_pow(-3));
            let expected = [[[inv2, z.clone()], [z.clone(), -&inv3]], [[-&inv3, z.clone()], [z, -&inv3]]];
            for (i, (step, want)) in p.steps.iter().zip(&expected).enumerate() {
                let reduced = want.clone().map(|v| reduce_point(&v, &step.periods));
                rec.check(
                    "pet",
                    &format!("induced partition {i} and its rotation"),
                    step.atoms == [21, 19][i] && step.rotation.as_ref() == Some(&reduced),
                    format!("{} atoms, periods ({}, {})", step.atoms, step.periods[0], step.periods[1]),
                );
            }
            rec.check("pet", "rescaled partition matches", p.rescaling.is_some(), "");
            rec.check("pet", "composite equals phi", p.composite.as_ref() == Some(&target), "");
            if let Some(w) = &rec.report.wang {
                let alpha = [Some(&w.steps[0].result.morphism), Some(&w.steps[1].result.morphism)];
                let beta = [Some(&p.steps[0].substitution), Some(&p.steps[1].substitution)];
                let a2 = w.equivalence.as_ref().map(Equivalence::morphism);
                let same = alpha == beta && a2.is_some() && a2.as_ref() == p.rescaling.as_ref();
                rec.check("pet", "induced substitutions equal desubstitutions", same, "");
            }
            rec.report.pet = Some(p);
        }
        Err(e) => rec.check("pet", "pipeline", false, e.to_string()),
    }

    match rec.time("alternative routes", || {
        (run_wang_pipeline(&opts.tiles, [Axis::E1, Axis::E2], opts.max_radius), run_pet_pipeline([Axis::E1, Axis::E2]))
    }) {
        (Ok(w), Ok(p)) => {
            let same_phi = |c: &Option<Morphism2d>| c.as_ref() == Some(&target);
            rec.finding("alternative routes", "e1-first desubstitution composite equals phi", same_phi(&w.composite), "");
            rec.finding("alternative routes", "horizontal-first induction composite equals phi", same_phi(&p.composite), "");
            let alpha: Vec<Morphism2d> = w.steps.iter().map(|s| s.result.morphism.clone()).chain(w.equivalence.as_ref().map(Equivalence::morphism)).collect();
            let beta: Vec<Morphism2d> = p.steps.iter().map(|s| s.substitution.clone()).chain(p.rescaling.clone()).collect();
            let sizes = format!(
                "desubstitutions {:?} tiles, inductions {:?} atoms",
                w.steps.iter().map(|s| s.result.tiles.len()).collect::<Vec<_>>(),
                p.steps.iter().map(|s| s.atoms).collect::<Vec<_>>()
            );
            rec.finding("alternative routes", "both alternative routes give identical morphisms", alpha == beta, sizes);
            rec.report.wang_alt = Some(w);
            rec.report.pet_alt = Some(p);
        }
        (w, p) => {
            let msg: Vec<String> = [w.err(), p.err()].into_iter().flatten().map(|e| e.to_string()).collect();
            rec.finding("alternative routes", "pipelines", false, msg.join("; "));
        }
    }

    match rec.time("languages", || cross_check_languages(&opts.tiles, opts.max_shape, opts.radius, opts.max_radius)) {
        Ok(rows) => {
            for r in &rows {
                rec.check(
                    "languages",
                    &format!("languages agree on {}x{}", r.shape.0, r.shape.1),
                    r.equal,
                    format!("phi {} wang {} (radius {}) pet {}", r.substitutive, r.wang, r.wang_radius, r.pet),
                );
            }
            rec.report.languages = rows;
        }
        Err(e) => rec.check("languages", "cross-check", false, e.to_string()),
    }

    match rec.time("periodic points", || target.periodic_seeds(2)) {
        Ok(pairs) => {
            let distinct: BTreeSet<&Word2d> = pairs.iter().map(|(w, _)| w).collect();
            let n = distinct.len();
            rec.check("periodic points", "eight seeds fixed by phi^2", pairs.len() == 8 && n == 8, format!("{} pairs, {} seeds", pairs.len(), n));
            rec.report.periodic_points = Some(PeriodicPoints { pairs, distinct_seeds: n });
        }
        Err(e) => rec.check("periodic points", "periodic seeds", false, e.to_string()),
    }

    match rec.time("uniqueness", || check_uniqueness_hypotheses(&target)) {
        Ok(u) => {
            rec.check("uniqueness", "phi is expansive", u.expansive, "");
            rec.check("uniqueness", "phi is primitive", u.primitive, "");
            let detail = match &u.seeds {
                Some(s) => format!("{} seeds, {} outside the {} words of the language", s.seeds, s.outside_language, s.language_2x2),
                None => "not examined".into(),
            };
            rec.finding("uniqueness", "seeds lie in the language", u.seeds_in_language(), detail);
            rec.report.uniqueness = Some(u);
        }
        Err(e) => rec.check("uniqueness", "hypotheses", false, e.to_string()),
    }
    rec.report
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{mark} [{}] {}", c.stage, c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        for c in &self.findings {
            let mark = if c.passed { "holds" } else { "does not hold" };
            write!(f, "note [{}] {} {mark}", c.stage, c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        for t in &self.timings {
            writeln!(f, "time [{}] {} ms", t.stage, t.millis)?;
        }
        write!(f, "{}", if self.passed() { "all checks passed" } else { "some checks failed" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_starts_are_prefix_sums() {
        let s = block_starts([1, 2, 2].into_iter().map(Ok)).unwrap();
        assert_eq!(s, vec![0, 1, 3]);
    }

}
