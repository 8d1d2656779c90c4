//! Deterministic SVG output. Coordinates are printed with a fixed number of
//! decimals and every collection is walked in sorted order, so the same
//! input and palette seed always give the same bytes.

use std::collections::BTreeSet;
use std::fmt::Write;

use aperiodic_core::exactnum::Golden;
use aperiodic_core::geometry::{Point, Polygon, TorusPartition};
use aperiodic_core::pet::{code, Z2Action};
use aperiodic_core::wangtiles::WangTileSet;
use aperiodic_core::word2d::{Shape, Word2d};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Target {
    Tiling,
    Partition,
    CodedOrbit,
}

pub struct OrbitArgs {
    pub rotation: Option<Point>,
    pub seed_point: Option<Point>,
    pub shape: Option<Shape>,
}

/// A tile set alone, or a tile set with a pattern over it.
#[derive(Deserialize)]
#[serde(untagged)]
enum TilingInput {
    Pattern { tileset: WangTileSet, word: Word2d },
    Tiles(WangTileSet),
}

const TILE: f64 = 60.0;
const GAP: f64 = 12.0;
const UNIT: f64 = 400.0;
const MARGIN: f64 = 10.0;

/// Distinct fill colors for `keys`, drawn from a seeded generator.
fn palette<K: Ord + Clone>(keys: impl IntoIterator<Item = K>, seed: u64) -> Vec<(K, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let keys: BTreeSet<K> = keys.into_iter().collect();
    keys.into_iter()
        .map(|k| {
            let hue: u32 = rng.gen_range(0..360);
            let light: u32 = rng.gen_range(55..80);
            (k, format!("hsl({hue},70%,{light}%)"))
        })
        .collect()
}

fn lookup<'a, K: Ord>(pal: &'a [(K, String)], k: &K) -> &'a str {
    pal.binary_search_by(|(x, _)| x.cmp(k)).map(|i| pal[i].1.as_str()).unwrap_or("#ccc")
}

fn document(width: f64, height: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">\n{body}</svg>\n"
    )
}

pub fn render(target: Target, text: &str, seed: u64, orbit: &OrbitArgs) -> Result<String, String> {
    match target {
        Target::Tiling => {
            let input: TilingInput = serde_json::from_str(text).map_err(|e| format!("tiling: {e}"))?;
            Ok(match input {
                TilingInput::Tiles(t) => render_tile_set(&t, seed),
                TilingInput::Pattern { tileset, word } => render_pattern(&tileset, &word, seed)?,
            })
        }
        Target::Partition => {
            let p: TorusPartition = serde_json::from_str(text).map_err(|e| format!("partition: {e}"))?;
            Ok(render_partition(&p, seed, None))
        }
        Target::CodedOrbit => {
            let p: TorusPartition = serde_json::from_str(text).map_err(|e| format!("partition: {e}"))?;
            let [a, b] = orbit.rotation.clone().unwrap_or([Golden::phi_pow(-2), Golden::phi_pow(-2)]);
            let action = Z2Action::toral_rotation(p.periods().clone(), a, b).map_err(|e| e.to_string())?;
            let x = orbit.seed_point.clone().ok_or("coded-orbit needs --seed-point")?;
            let shape = orbit.shape.unwrap_or((5, 5));
            Ok(render_partition(&p, seed, Some((&action, &x, shape))))
        }
    }
}

/// One tile with its lower-left corner at `(x, y)` in SVG coordinates.
fn draw_tile(out: &mut String, tiles: &WangTileSet, t: usize, x: f64, y: f64, pal: &[(String, String)], label: bool) {
    let tile = &tiles.tiles()[t];
    let (l, r, top, bot) = (x, x + TILE, y - TILE, y);
    let (cx, cy) = (x + TILE / 2.0, y - TILE / 2.0);
    let sides = [
        (tile.right(), [(r, bot), (r, top)], (r - 9.0, cy + 4.0)),
        (tile.top(), [(r, top), (l, top)], (cx, top + 13.0)),
        (tile.left(), [(l, top), (l, bot)], (l + 9.0, cy + 4.0)),
        (tile.bottom(), [(l, bot), (r, bot)], (cx, bot - 4.0)),
    ];
    let _ = writeln!(out, "<g class=\"tile\" data-index=\"{t}\">");
    for (color, [(x0, y0), (x1, y1)], _) in &sides {
        let _ = writeln!(
            out,
            "<polygon points=\"{x0:.2},{y0:.2} {x1:.2},{y1:.2} {cx:.2},{cy:.2}\" fill=\"{}\" stroke=\"#444\" stroke-width=\"0.5\"/>",
            lookup(pal, &color.to_string())
        );
    }
    let _ = writeln!(out, "<rect class=\"square\" x=\"{l:.2}\" y=\"{top:.2}\" width=\"{TILE:.2}\" height=\"{TILE:.2}\" fill=\"none\" stroke=\"#000\"/>");
    for (color, _, (tx, ty)) in &sides {
        let _ = writeln!(
            out,
            "<text class=\"edge\" x=\"{tx:.2}\" y=\"{ty:.2}\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            escape(color)
        );
    }
    if label {
        let _ = writeln!(out, "<text class=\"index\" x=\"{cx:.2}\" y=\"{:.2}\" font-size=\"9\" text-anchor=\"middle\">{t}</text>", y + 11.0);
    }
    out.push_str("</g>\n");
}

fn color_palette(tiles: &WangTileSet, seed: u64) -> Vec<(String, String)> {
    let colors = tiles.tiles().iter().flat_map(|t| t.0.iter().cloned());
    palette(colors, seed)
}

fn render_tile_set(tiles: &WangTileSet, seed: u64) -> String {
    let pal = color_palette(tiles, seed);
    let mut body = String::new();
    for t in 0..tiles.len() {
        let x = MARGIN + t as f64 * (TILE + GAP);
        draw_tile(&mut body, tiles, t, x, MARGIN + TILE, &pal, true);
    }
    let n = tiles.len() as f64;
    let width = if tiles.is_empty() { 0.0 } else { 2.0 * MARGIN + n * TILE + (n - 1.0) * GAP };
    let height = if tiles.is_empty() { 0.0 } else { 2.0 * MARGIN + TILE + 14.0 };
    document(width, height, &body)
}

fn render_pattern(tiles: &WangTileSet, w: &Word2d, seed: u64) -> Result<String, String> {
    if w.letters().iter().any(|&a| a as usize >= tiles.len()) {
        return Err("pattern uses a tile outside the tile set".into());
    }
    let pal = color_palette(tiles, seed);
    let mut body = String::new();
    let h = w.height() as f64 * TILE;
    for x in 0..w.width() {
        for y in 0..w.height() {
            let sx = MARGIN + x as f64 * TILE;
            let sy = MARGIN + h - y as f64 * TILE;
            draw_tile(&mut body, tiles, w.get(x, y) as usize, sx, sy, &pal, false);
        }
    }
    let (width, height) = if w.is_empty() { (0.0, 0.0) } else { (2.0 * MARGIN + w.width() as f64 * TILE, 2.0 * MARGIN + h) };
    Ok(document(width, height, &body))
}

fn to_svg(p: &Point, height: f64) -> (f64, f64) {
    (MARGIN + p[0].to_f64() * UNIT, MARGIN + (height - p[1].to_f64()) * UNIT)
}

fn polygon_points(poly: &Polygon, height: f64) -> String {
    let pts: Vec<String> = poly
        .vertices()
        .iter()
        .map(|v| {
            let (x, y) = to_svg(v, height);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    pts.join(" ")
}

fn render_partition(p: &TorusPartition, seed: u64, orbit: Option<(&Z2Action, &Point, Shape)>) -> String {
    let [w, h] = p.periods().clone().map(|g| g.to_f64());
    let pal = palette(p.labels(), seed);
    let mut body = String::new();
    for (label, region) in p.atoms() {
        let _ = writeln!(body, "<g class=\"atom\" data-label=\"{label}\">");
        for cell in &region.cells {
            let _ = writeln!(
                body,
                "<polygon points=\"{}\" fill=\"{}\" stroke=\"#000\" stroke-width=\"0.6\"/>",
                polygon_points(cell, h),
                lookup(&pal, label)
            );
        }
        if let Some(big) = region.cells.iter().max_by(|a, b| a.area().cmp(&b.area())) {
            let (x, y) = to_svg(&big.interior_point(), h);
            let _ = writeln!(body, "<text x=\"{x:.3}\" y=\"{:.3}\" font-size=\"12\" text-anchor=\"middle\">{label}</text>", y + 4.0);
        }
        body.push_str("</g>\n");
    }
    if let Some((action, x, shape)) = orbit {
        body.push_str("<g class=\"orbit\">\n");
        for i in 0..shape.0 as i64 {
            for j in 0..shape.1 as i64 {
                let Ok(y) = action.apply((i, j), x) else { continue };
                let (sx, sy) = to_svg(&y, h);
                let letter = code(p, &y).map(|l| l.to_string()).unwrap_or_else(|_| "?".into());
                let _ = writeln!(
                    body,
                    "<circle cx=\"{sx:.3}\" cy=\"{sy:.3}\" r=\"2.5\" fill=\"#000\" data-n=\"{i},{j}\"/>\n<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"9\">{letter}</text>",
                    sx + 3.0,
                    sy - 3.0
                );
            }
        }
        body.push_str("</g>\n");
    }
    document(2.0 * MARGIN + w * UNIT, 2.0 * MARGIN + h * UNIT, &body)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
