use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::count::riemann_von_mangoldt;
use super::hardy::hardy_z;
use super::theta::{rs_theta, rs_theta_derivative};
use crate::error::{Error, Result};

/// No ordinate lies below this height.
pub const FIRST_ZERO_FLOOR: f64 = 14.0;
/// Ingested tables are checked against computed zeros up to this height.
pub const OVERLAP_HEIGHT: f64 = 200.0;
const REFINE_TOLERANCE: f64 = 1e-10;
const MAX_HALVINGS: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZeroSource {
    Computed,
    Ingested,
}

/// Ordinates 0 < γ₁ < γ₂ < … ≤ max_height of zeros on the critical line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroList {
    ordinates: Vec<f64>,
    source: ZeroSource,
    max_height: f64,
}

impl ZeroList {
    pub fn new(ordinates: Vec<f64>, source: ZeroSource, max_height: f64) -> Result<Self> {
        for (i, w) in ordinates.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::Census(format!(
                    "ordinates not strictly increasing at position {}",
                    i + 2
                )));
            }
        }
        if let Some(&first) = ordinates.first() {
            if !(first > FIRST_ZERO_FLOOR) {
                return Err(Error::Census(format!("ordinate {first} lies below the first zero")));
            }
        }
        if let Some(&last) = ordinates.last() {
            if last > max_height {
                return Err(Error::Census(format!("ordinate {last} exceeds max height {max_height}")));
            }
        }
        Ok(Self {
            ordinates,
            source,
            max_height,
        })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn max_height(&self) -> f64 {
        self.max_height
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn count_up_to(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// The ordinates ≤ t, as a list covering height t.
    pub fn truncated(&self, t: f64) -> Self {
        let t = t.min(self.max_height);
        Self {
            ordinates: self.ordinates[..self.count_up_to(t)].to_vec(),
            source: self.source,
            max_height: t,
        }
    }

    /// Largest gap between consecutive ordinates inside [a, b].
    pub fn largest_gap(&self, a: f64, b: f64) -> Option<(f64, f64)> {
        let inside: Vec<f64> = self.ordinates.iter().copied().filter(|&g| g >= a && g <= b).collect();
        inside
            .windows(2)
            .map(|w| (w[0], w[1]))
            .max_by(|x, y| (x.1 - x.0).total_cmp(&(y.1 - y.0)))
    }
}

/// The Gram point g_n, θ(g_n) = nπ, for n ≥ −1.
pub fn gram_point(n: i64) -> f64 {
    let target = n as f64 * PI;
    // (t/2)log(t/2πe) ≈ π(n + 1/8) gives t ≈ 2π(n + 1/8)/log c with c = (n + 1/8)/e.
    let c = (n as f64 + 0.125) / std::f64::consts::E;
    let mut t = if c > 3.0 { 2.0 * PI * (n as f64 + 0.125) / c.ln() } else { 20.0 };
    for _ in 0..100 {
        let dt = (rs_theta(t) - target) / rs_theta_derivative(t);
        t -= dt;
        if dt.abs() < 1e-12 * t {
            break;
        }
    }
    t
}

fn gram_index_below(t: f64) -> i64 {
    (rs_theta(t) / PI).floor() as i64
}

/// Sign changes of Z in (a, b], refined by Illinois steps.
fn scan_block(a: f64, b: f64, step_scale: f64) -> Vec<f64> {
    let mid = 0.5 * (a + b);
    let step = step_scale * 0.2 / mid.ln();
    let pieces = ((b - a) / step).ceil().max(1.0) as usize;
    let mut roots = Vec::new();
    let mut t0 = a;
    let mut z0 = hardy_z(t0);
    for i in 1..=pieces {
        let t1 = if i == pieces { b } else { a + (b - a) * i as f64 / pieces as f64 };
        let z1 = hardy_z(t1);
        if z1 == 0.0 {
            roots.push(t1);
        } else if z0 != 0.0 && z0.signum() != z1.signum() {
            roots.push(refine(t0, z0, t1, z1));
        }
        t0 = t1;
        z0 = z1;
    }
    roots
}

fn refine(mut a: f64, mut za: f64, mut b: f64, mut zb: f64) -> f64 {
    let mut side = 0i8;
    for _ in 0..200 {
        if b - a <= REFINE_TOLERANCE {
            break;
        }
        let mut c = (a * zb - b * za) / (zb - za);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let zc = hardy_z(c);
        if zc == 0.0 {
            return c;
        }
        if zc.signum() == za.signum() {
            a = c;
            za = zc;
            if side == -1 {
                zb *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            zb = zc;
            if side == 1 {
                za *= 0.5;
            }
            side = 1;
        }
    }
    0.5 * (a + b)
}

struct Block {
    a: f64,
    b: f64,
}

fn blocks_for(height: f64) -> Vec<Block> {
    let start = 10.0;
    let last = gram_index_below(height);
    let mut edges = vec![start];
    for n in 0..=last {
        let g = gram_point(n);
        if g > start && g < height {
            edges.push(g);
        }
    }
    edges.push(height);
    edges.windows(2).map(|w| Block { a: w[0], b: w[1] }).collect()
}

/// All zero ordinates in (0, T], validated against the Riemann–von Mangoldt
/// count at checkpoints. Segments that disagree are rescanned at halved step.
pub fn find_zeros(height: f64) -> Result<ZeroList> {
    if !(height > 0.0 && height <= 1e5) {
        return Err(Error::InvalidParameter(format!("T must lie in (0, 1e5], got {height}")));
    }
    if height <= FIRST_ZERO_FLOOR {
        return ZeroList::new(Vec::new(), ZeroSource::Computed, height);
    }
    let blocks = blocks_for(height);
    const SEGMENTS: usize = 64;
    let per_segment = blocks.len().div_ceil(SEGMENTS).max(1);
    let segments: Vec<&[Block]> = blocks.chunks(per_segment).collect();

    let results: Vec<Result<Vec<f64>>> = segments
        .par_iter()
        .map(|seg| scan_segment(seg))
        .collect();
    let mut ordinates = Vec::new();
    for r in results {
        ordinates.extend(r?);
    }
    ZeroList::new(ordinates, ZeroSource::Computed, height)
}

/// Scans a run of blocks, checking the count between its two ends.
fn scan_segment(blocks: &[Block]) -> Result<Vec<f64>> {
    let (a, b) = (blocks[0].a, blocks[blocks.len() - 1].b);
    let expected = riemann_von_mangoldt(b) - riemann_von_mangoldt(a);
    let mut scale = 1.0;
    let mut roots = Vec::new();
    for _ in 0..=MAX_HALVINGS {
        roots = blocks.iter().flat_map(|blk| scan_block(blk.a, blk.b, scale)).collect();
        if (roots.len() as f64 - expected).abs() < 0.5 {
            return Ok(roots);
        }
        scale *= 0.5;
    }
    let gap = ZeroList::new(roots.clone(), ZeroSource::Computed, b)
        .ok()
        .and_then(|l| l.largest_gap(a, b));
    Err(Error::Census(match gap {
        Some((x, y)) => format!(
            "found {} zeros in ({a:.6}, {b:.6}] but expected {expected:.3}; largest gap ({x:.9}, {y:.9}) is suspicious",
            roots.len()
        ),
        None => format!("found {} zeros in ({a:.6}, {b:.6}] but expected {expected:.3}", roots.len()),
    }))
}

/// Parses one ordinate per line; '#' starts a comment line.
pub fn read_zeros<R: BufRead>(reader: R) -> Result<ZeroList> {
    let mut ordinates: Vec<f64> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let value: f64 = text.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("not a decimal ordinate: {text:?}"),
        })?;
        if !(value.is_finite() && value > FIRST_ZERO_FLOOR) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("ordinate {value} is not above {FIRST_ZERO_FLOOR}"),
            });
        }
        if let Some(&prev) = ordinates.last() {
            if value <= prev {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("ordinate {value} does not exceed the previous {prev}"),
                });
            }
        }
        ordinates.push(value);
    }
    let max_height = ordinates.last().copied().unwrap_or(FIRST_ZERO_FLOOR);
    ZeroList::new(ordinates, ZeroSource::Ingested, max_height)
}

/// Reads a zero table and checks it against computed zeros on
/// [0, min(200, last ordinate)] to 1e-6.
pub fn ingest_zeros(path: impl AsRef<Path>) -> Result<ZeroList> {
    let list = read_zeros(BufReader::new(File::open(path)?))?;
    check_overlap(&list)?;
    Ok(list)
}

pub fn check_overlap(list: &ZeroList) -> Result<()> {
    let top = OVERLAP_HEIGHT.min(list.max_height());
    if top <= FIRST_ZERO_FLOOR {
        return Ok(());
    }
    let computed = find_zeros(top + 1e-6)?;
    let reference: Vec<f64> = computed.ordinates().iter().copied().filter(|&g| g <= top + 1e-6).collect();
    let given: Vec<f64> = list.ordinates().iter().copied().filter(|&g| g <= top).collect();
    if reference.len() != given.len() {
        return Err(Error::Census(format!(
            "table has {} zeros up to {top} but {} were computed",
            given.len(),
            reference.len()
        )));
    }
    for (i, (g, r)) in given.iter().zip(&reference).enumerate() {
        if (g - r).abs() > 1e-6 {
            return Err(Error::Census(format!(
                "zero #{} differs: table {g}, computed {r}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Writes one ordinate per line in shortest round-trip form.
pub fn write_zeros<W: Write>(list: &ZeroList, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    writeln!(w, "# zeros of zeta on the critical line, 0 < t <= {}", list.max_height())?;
    for g in list.ordinates() {
        writeln!(w, "{g}")?;
    }
    w.flush()?;
    Ok(())
}
