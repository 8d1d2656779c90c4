//! Two-dimensional morphisms given by rule tables, with the language,
//! seeds-graph and periodic-point machinery built on top of them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word2d::{Language2d, Letter, Shape, Word2d, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("image undefined: inconsistent block sizes at positions {0:?}")]
    UndefinedImage(Vec<(usize, usize)>),
    #[error("letter {0} is outside the domain alphabet")]
    UnknownLetter(Letter),
    #[error("image of letter {letter} uses letter {image_letter} outside the codomain")]
    BadImage { letter: Letter, image_letter: Letter },
    #[error("composition needs codomain of the inner morphism ({inner}) to fit the domain of the outer ({outer})")]
    IncompatibleComposition { inner: usize, outer: usize },
    #[error("domain and codomain differ ({0} vs {1})")]
    NotEndomorphism(usize, usize),
    #[error("morphism is not expansive")]
    NotExpansive,
    #[error("language did not stabilize after {0} iterations")]
    NotStabilized(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A rule table `letter -> Word2d` from `⟦0, domain)` to words over `⟦0, codomain)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism2d {
    codomain: usize,
    rule: Vec<Word2d>,
}

/// JSON form: `{"domain": k, "codomain": l, "rule": {"0": [[17]], ...}}`.
#[derive(Serialize, Deserialize)]
struct MorphismRepr {
    domain: usize,
    codomain: usize,
    rule: BTreeMap<Letter, Word2d>,
}

impl Serialize for Morphism2d {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MorphismRepr {
            domain: self.domain(),
            codomain: self.codomain,
            rule: self.rule.iter().enumerate().map(|(a, w)| (a as Letter, w.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Morphism2d {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MorphismRepr::deserialize(d)?;
        let rule: Vec<Word2d> = (0..repr.domain)
            .map(|a| {
                repr.rule
                    .get(&(a as Letter))
                    .cloned()
                    .ok_or_else(|| serde::de::Error::custom(format!("missing image of letter {a}")))
            })
            .collect::<Result<_, _>>()?;
        if repr.rule.len() != repr.domain {
            return Err(serde::de::Error::custom("rule has letters outside the domain"));
        }
        Morphism2d::new(repr.codomain, rule).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Morphism2d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (a, w) in self.rule.iter().enumerate() {
            m.entry(&a, w);
        }
        m.finish()
    }
}

impl fmt::Display for Morphism2d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, w) in self.rule.iter().enumerate() {
            let cols: Vec<String> = w
                .columns()
                .map(|c| format!("[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            writeln!(f, "{a} -> [{}]", cols.join(","))?;
        }
        Ok(())
    }
}

impl Morphism2d {
    pub fn new(codomain: usize, rule: Vec<Word2d>) -> Result<Self, MorphismError> {
        for (a, w) in rule.iter().enumerate() {
            if let Some(&b) = w.letters().iter().find(|&&b| b as usize >= codomain) {
                return Err(MorphismError::BadImage { letter: a as Letter, image_letter: b });
            }
        }
        Ok(Morphism2d { codomain, rule })
    }

    /// Build from images written as columns, bottom-to-top.
    pub fn from_column_lists(codomain: usize, images: &[&[&[Letter]]]) -> Result<Self, MorphismError> {
        let rule = images.iter().map(|cols| Word2d::from_columns(cols)).collect::<Result<Vec<_>, _>>()?;
        Morphism2d::new(codomain, rule)
    }

    pub fn identity(n: usize) -> Self {
        Morphism2d { codomain: n, rule: (0..n).map(|a| Word2d::letter(a as Letter)).collect() }
    }

    /// Letter-to-letter morphism `a -> perm[a]`.
    pub fn from_permutation(perm: &[Letter], codomain: usize) -> Result<Self, MorphismError> {
        Morphism2d::new(codomain, perm.iter().map(|&b| Word2d::letter(b)).collect())
    }

    pub fn domain(&self) -> usize {
        self.rule.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn image(&self, a: Letter) -> Result<&Word2d, MorphismError> {
        self.rule.get(a as usize).ok_or(MorphismError::UnknownLetter(a))
    }

    pub fn images(&self) -> &[Word2d] {
        &self.rule
    }

    fn is_endomorphism(&self) -> Result<(), MorphismError> {
        if self.domain() != self.codomain {
            return Err(MorphismError::NotEndomorphism(self.domain(), self.codomain));
        }
        Ok(())
    }

    /// Image of a word, assembled block by block.
    pub fn apply(&self, u: &Word2d) -> Result<Word2d, MorphismError> {
        let (w, h) = u.shape();
        if u.is_empty() {
            return Ok(Word2d::empty((0, 0)));
        }
        for &a in u.letters() {
            self.image(a)?;
        }
        let img = |x: usize, y: usize| &self.rule[u.get(x, y) as usize];
        let mut bad = BTreeSet::new();
        let col_width: Vec<usize> = (0..w)
            .map(|x| {
                let cw = img(x, 0).width();
                for y in 1..h {
                    if img(x, y).width() != cw {
                        bad.insert((x, y));
                    }
                }
                cw
            })
            .collect();
        let row_height: Vec<usize> = (0..h)
            .map(|y| {
                let rh = img(0, y).height();
                for x in 1..w {
                    if img(x, y).height() != rh {
                        bad.insert((x, y));
                    }
                }
                rh
            })
            .collect();
        if !bad.is_empty() {
            return Err(MorphismError::UndefinedImage(bad.into_iter().collect()));
        }
        let total_w: usize = col_width.iter().sum();
        let total_h: usize = row_height.iter().sum();
        let mut out = Word2d::filled((total_w, total_h), 0);
        let mut x0 = 0;
        for (x, cw) in col_width.iter().enumerate() {
            let mut y0 = 0;
            for (y, rh) in row_height.iter().enumerate() {
                let block = img(x, y);
                for bx in 0..block.width() {
                    for by in 0..block.height() {
                        out.set(x0 + bx, y0 + by, block.get(bx, by));
                    }
                }
                y0 += rh;
            }
            x0 += cw;
        }
        Ok(out)
    }

    /// `self ∘ inner`: letter `a` maps to `self(inner(a))`.
    pub fn compose(&self, inner: &Morphism2d) -> Result<Morphism2d, MorphismError> {
        if inner.codomain > self.domain() {
            return Err(MorphismError::IncompatibleComposition { inner: inner.codomain, outer: self.domain() });
        }
        let rule = inner.rule.iter().map(|w| self.apply(w)).collect::<Result<Vec<_>, _>>()?;
        Ok(Morphism2d { codomain: self.codomain, rule })
    }

    /// `self^k`.
    pub fn power(&self, k: usize) -> Result<Morphism2d, MorphismError> {
        self.is_endomorphism()?;
        let mut out = Morphism2d::identity(self.domain());
        for _ in 0..k {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    /// `self^k(u)`.
    pub fn apply_power(&self, u: &Word2d, k: usize) -> Result<Word2d, MorphismError> {
        let mut w = u.clone();
        for _ in 0..k {
            w = self.apply(&w)?;
        }
        Ok(w)
    }

    /// Letter-occurrence graph: `adj[a]` lists the letters of `self(a)`.
    fn occurrence_graph(&self) -> Vec<BTreeSet<usize>> {
        self.rule.iter().map(|w| w.letters().iter().map(|&b| b as usize).collect()).collect()
    }

    /// Whether both dimensions of `self^k(a)` grow without bound for every
    /// letter. Definedness of `self^k(a)` is checked for `k <= bound`.
    ///
    /// Widths follow the one-dimensional morphism `a -> bottom row of self(a)`
    /// and heights `a -> left column of self(a)`; a letter grows under such a
    /// non-erasing morphism iff it reaches a letter whose image has length at
    /// least two and contains a letter of its own strongly connected component.
    pub fn is_expansive(&self, bound: usize) -> Result<bool, MorphismError> {
        self.is_endomorphism()?;
        for a in 0..self.domain() {
            self.apply_power(&Word2d::letter(a as Letter), bound)?;
        }
        let bottom_rows: Vec<Vec<usize>> =
            self.rule.iter().map(|w| (0..w.width()).map(|x| w.get(x, 0) as usize).collect()).collect();
        let left_cols: Vec<Vec<usize>> =
            self.rule.iter().map(|w| (0..w.height()).map(|y| w.get(0, y) as usize).collect()).collect();
        Ok(all_letters_grow(&bottom_rows) && all_letters_grow(&left_cols))
    }

    /// Primitivity of the incidence matrix, checked up to Wielandt's bound
    /// `(k-1)^2 + 1`.
    pub fn is_primitive(&self) -> Result<bool, MorphismError> {
        self.is_endomorphism()?;
        let n = self.domain();
        if n == 0 {
            return Ok(false);
        }
        let adj = self.occurrence_graph();
        let step = |m: &Vec<BTreeSet<usize>>| -> Vec<BTreeSet<usize>> {
            m.iter().map(|row| row.iter().flat_map(|&b| adj[b].iter().copied()).collect()).collect()
        };
        let mut reach = adj.clone();
        let limit = (n - 1) * (n - 1) + 1;
        for _ in 1..=limit {
            if reach.iter().all(|r| r.len() == n) {
                return Ok(true);
            }
            reach = step(&reach);
        }
        Ok(reach.iter().all(|r| r.len() == n))
    }

    /// Words of the given shape in the language of the morphism.
    ///
    /// Seeds are the `shape`-factors of `self^k(a)`; the set is then closed
    /// under `w -> factors(self(w))`. Any `shape`-window of an image meets at
    /// most `shape` blocks per axis, so this closure is the whole language
    /// once it stops growing.
    pub fn language(&self, shape: Shape, bound: usize) -> Result<Language2d, MorphismError> {
        self.is_endomorphism()?;
        let mut lang = Language2d::new(shape);
        for a in 0..self.domain() {
            let mut w = Word2d::letter(a as Letter);
            for _ in 0..=bound {
                if w.width() >= shape.0 && w.height() >= shape.1 {
                    w.collect_subwords(shape, &mut lang)?;
                    break;
                }
                let next = self.apply(&w)?;
                // a side that is too short and stopped growing never will
                let stuck = (w.width() < shape.0 && next.width() <= w.width())
                    || (w.height() < shape.1 && next.height() <= w.height());
                if stuck {
                    break;
                }
                w = next;
            }
        }
        let mut frontier: Vec<Word2d> = lang.words.iter().cloned().collect();
        for _ in 0..bound {
            if frontier.is_empty() {
                return Ok(lang);
            }
            let found: Vec<Language2d> = frontier
                .par_iter()
                .map(|w| {
                    let img = self.apply(w)?;
                    Ok(img.subwords(shape)?)
                })
                .collect::<Result<Vec<_>, MorphismError>>()?;
            frontier.clear();
            for l in found {
                for w in l.words {
                    if !lang.contains(&w) {
                        lang.insert(w.clone());
                        frontier.push(w);
                    }
                }
            }
        }
        if frontier.is_empty() {
            Ok(lang)
        } else {
            Err(MorphismError::NotStabilized(bound))
        }
    }

    /// Vertices of the seeds graph lying on a cycle. Vertices are all 2×2
    /// words over the alphabet; `u -> v` when `v` is a factor of `self(u)`.
    pub fn seeds(&self) -> Result<Language2d, MorphismError> {
        self.is_endomorphism()?;
        let n = self.domain();
        let total = n.pow(4);
        let decode = |i: usize| {
            let l = [i % n, (i / n) % n, (i / n / n) % n, i / n / n / n];
            Word2d::from_columns(&[[l[0] as Letter, l[1] as Letter], [l[2] as Letter, l[3] as Letter]]).unwrap()
        };
        let encode = |w: &Word2d| {
            let l = w.letters();
            l[0] as usize + n * (l[1] as usize + n * (l[2] as usize + n * l[3] as usize))
        };
        let adj: Vec<Vec<usize>> = (0..total)
            .into_par_iter()
            .map(|i| match self.apply(&decode(i)) {
                Ok(img) => {
                    let mut out: Vec<usize> = img.subwords((2, 2)).unwrap().iter().map(encode).collect();
                    out.sort_unstable();
                    out
                }
                Err(_) => Vec::new(),
            })
            .collect();
        let comp = strongly_connected_components(&adj);
        let mut size: HashMap<usize, usize> = HashMap::new();
        for &c in &comp {
            *size.entry(c).or_default() += 1;
        }
        let mut out = Language2d::new((2, 2));
        for i in 0..total {
            if size[&comp[i]] > 1 || adj[i].binary_search(&i).is_ok() {
                out.insert(decode(i));
            }
        }
        Ok(out)
    }

    /// Pairs `(u, k)` with `u` a 2×2 word of the language such that `self^k(u)`
    /// contains `u` at the corner where the four image blocks meet, so that
    /// `u` grows into a configuration fixed by `self^k`.
    pub fn periodic_seeds(&self, max_period: usize) -> Result<Vec<(Word2d, usize)>, MorphismError> {
        if !self.is_expansive(4)? {
            return Err(MorphismError::NotExpansive);
        }
        let lang = self.language((2, 2), 64)?;
        let mut out = Vec::new();
        for u in lang.iter() {
            let mut img = u.clone();
            let mut corner = Word2d::letter(u.get(0, 0));
            for k in 1..=max_period {
                img = self.apply(&img)?;
                corner = self.apply(&corner)?;
                let p = (corner.width() as i64 - 1, corner.height() as i64 - 1);
                if u.occurs_at(&img, p) {
                    out.push((u.clone(), k));
                }
            }
        }
        Ok(out)
    }
}

fn all_letters_grow(images: &[Vec<usize>]) -> bool {
    let n = images.len();
    let adj: Vec<Vec<usize>> = images.to_vec();
    let comp = strongly_connected_components(&adj);
    // letters whose image is long and re-enters the letter's own component
    let mut pumping = vec![false; n];
    for a in 0..n {
        if images[a].len() >= 2 && images[a].iter().any(|&b| comp[b] == comp[a]) {
            pumping[a] = true;
        }
    }
    // a letter grows iff it reaches a pumping letter
    (0..n).all(|a| {
        let mut seen = vec![false; n];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(c) = stack.pop() {
            if pumping[c] {
                return true;
            }
            for &d in &images[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        false
    })
}

/// Iterative Tarjan; returns a component id per vertex.
pub(crate) fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSET; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == UNSET {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}
