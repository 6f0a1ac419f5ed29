//! Sequence-pair geometry: decoding a pair of permutations into a
//! non-overlapping rectangle placement, and rendering the repacking
//! sequence of a move path as SVG frames.
//!
//! Adopted decoding rules: block `a` is left of `b` iff `a` precedes `b`
//! in both permutations; `a` is below `b` iff `a` follows `b` in the first
//! and precedes `b` in the second. Coordinates come from longest weighted
//! paths over these relations (widths for x, heights for y).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, Permutation};
use crate::path::{check_path, MovePath, PathVerdict};

// All rendering constants in one place so byte determinism is auditable.
const SCALE: u64 = 24; // px per unit
const MARGIN: u64 = 4; // px around the packing
const STROKE: u64 = 1;
const HIGHLIGHT_STROKE: u64 = 3;
const FONT_SIZE: u64 = 12;

/// Per-block rectangle sizes, indexed by block label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RectSpec {
    w: Vec<u32>,
    h: Vec<u32>,
}

impl RectSpec {
    pub fn new(w: Vec<u32>, h: Vec<u32>) -> Result<Self> {
        if w.is_empty() || w.len() != h.len() {
            return Err(Error::ShapeMismatch {
                detail: format!("{} widths vs {} heights", w.len(), h.len()),
            });
        }
        for (name, dims) in [("w", &w), ("h", &h)] {
            if let Some(i) = dims.iter().position(|&d| d == 0) {
                return Err(Error::OutOfRange {
                    location: format!("rects {name}[{}]", i + 1),
                    value: 0,
                    max: u32::MAX as u64,
                });
            }
        }
        Ok(Self { w, h })
    }

    pub fn unit_squares(n: usize) -> Self {
        Self {
            w: vec![1; n],
            h: vec![1; n],
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RectSpec = serde_json::from_str(text)?;
        Self::new(raw.w, raw.h)
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn width(&self, block: u32) -> u64 {
        self.w[block as usize - 1] as u64
    }

    pub fn height(&self, block: u32) -> u64 {
        self.h[block as usize - 1] as u64
    }
}

/// Lower-left block coordinates plus the bounding box.
#[derive(Debug, Clone)]
pub struct Placement {
    x: Vec<u64>,
    y: Vec<u64>,
    pub width: u64,
    pub height: u64,
}

impl Placement {
    /// Lower-left corner of a block (math orientation, y growing upward).
    pub fn position(&self, block: u32) -> (u64, u64) {
        (self.x[block as usize - 1], self.y[block as usize - 1])
    }
}

/// Decodes a sequence pair into a placement. O(n²).
pub fn sp_place(first: &Permutation, second: &Permutation, rects: &RectSpec) -> Result<Placement> {
    let n = first.n();
    if second.n() != n || rects.n() != n {
        return Err(Error::ShapeMismatch {
            detail: format!(
                "sequence pair has n={} and n={}, rects have n={}",
                n,
                second.n(),
                rects.n()
            ),
        });
    }
    let left_of = |a: u32, b: u32| {
        first.position(a) < first.position(b) && second.position(a) < second.position(b)
    };
    let below = |a: u32, b: u32| {
        first.position(a) > first.position(b) && second.position(a) < second.position(b)
    };
    // every pair must be related in exactly one direction
    for a in 1..=n as u32 {
        for b in a + 1..=n as u32 {
            let rels = [left_of(a, b), left_of(b, a), below(a, b), below(b, a)];
            assert_eq!(
                rels.iter().filter(|&&r| r).count(),
                1,
                "blocks {a} and {b} must be related exactly once"
            );
        }
    }

    let mut x = vec![0u64; n];
    for &b in first.labels() {
        x[b as usize - 1] = first
            .labels()
            .iter()
            .copied()
            .filter(|&a| left_of(a, b))
            .map(|a| x[a as usize - 1] + rects.width(a))
            .max()
            .unwrap_or(0);
    }
    let mut y = vec![0u64; n];
    for &b in second.labels() {
        y[b as usize - 1] = second
            .labels()
            .iter()
            .copied()
            .filter(|&a| below(a, b))
            .map(|a| y[a as usize - 1] + rects.height(a))
            .max()
            .unwrap_or(0);
    }
    let width = (1..=n as u32).map(|b| x[b as usize - 1] + rects.width(b)).max().unwrap();
    let height = (1..=n as u32).map(|b| y[b as usize - 1] + rects.height(b)).max().unwrap();
    Ok(Placement {
        x,
        y,
        width,
        height,
    })
}

fn svg_frame(placement: &Placement, rects: &RectSpec, highlight: Option<u32>) -> String {
    let n = rects.n() as u32;
    let px_w = placement.width * SCALE + 2 * MARGIN;
    let px_h = placement.height * SCALE + 2 * MARGIN;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px_w}" height="{px_h}" viewBox="0 0 {px_w} {px_h}">"#
    );
    for b in 1..=n {
        let (bx, by) = placement.position(b);
        let w = rects.width(b) * SCALE;
        let h = rects.height(b) * SCALE;
        let x = MARGIN + bx * SCALE;
        // SVG y points down; placement y points up
        let y = MARGIN + (placement.height - by - rects.height(b)) * SCALE;
        let stroke = if highlight == Some(b) {
            HIGHLIGHT_STROKE
        } else {
            STROKE
        };
        let hue = (b as u64 - 1) * 360 / n as u64;
        let _ = writeln!(
            svg,
            r#"<rect id="block{b}" x="{x}" y="{y}" width="{w}" height="{h}" fill="hsl({hue},62%,74%)" stroke="#222222" stroke-width="{stroke}"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="{FONT_SIZE}" text-anchor="middle" dominant-baseline="central">{b}</text>"#,
            x + w / 2,
            y + h / 2
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Renders one SVG per tuple along the path into `out_dir`
/// (`frame_000.svg`, `frame_001.svg`, ...). The block moved by step `i` is
/// drawn with a thicker stroke in frame `i+1`. Output is byte-deterministic
/// for identical inputs. The instance must have k = 2.
pub fn render_frames(
    inst: &Instance,
    path: &MovePath,
    rects: &RectSpec,
    out_dir: &Path,
) -> Result<Vec<String>> {
    if inst.k() != 2 {
        return Err(Error::ShapeMismatch {
            detail: format!("rendering needs k=2, instance has k={}", inst.k()),
        });
    }
    if rects.n() != inst.n() {
        return Err(Error::ShapeMismatch {
            detail: format!("rects have n={}, instance has n={}", rects.n(), inst.n()),
        });
    }
    let verdict = check_path(inst, path);
    if verdict != PathVerdict::Valid {
        return Err(Error::InvalidPath {
            reason: verdict.to_string(),
        });
    }
    fs::create_dir_all(out_dir)?;
    let mut tuples = vec![path.start.clone()];
    for mv in &path.moves {
        let next = crate::path::apply_insert_move(tuples.last().unwrap(), mv)
            .expect("verified path applies");
        tuples.push(next);
    }
    let mut names = Vec::with_capacity(tuples.len());
    for (i, tuple) in tuples.iter().enumerate() {
        let placement = sp_place(tuple.dim(0), tuple.dim(1), rects)?;
        let highlight = if i > 0 {
            Some(path.moves[i - 1].element)
        } else {
            None
        };
        let svg = svg_frame(&placement, rects, highlight);
        let name = format!("frame_{i:03}.svg");
        fs::write(out_dir.join(&name), svg)?;
        names.push(name);
    }
    Ok(names)
}
