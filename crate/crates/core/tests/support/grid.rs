//! Brute-force RCC8 model over regions made of closed unit cells on a 6×6 grid.
//!
//! Two regions are connected when some of their cells share a point (same cell or
//! 8-adjacent), overlap when they share a cell, and a part is tangential when one of
//! its cells touches a point outside the whole (the area beyond the grid counts as
//! outside).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spatconf::qsr::{Rcc8, RelationSet};

pub const N: usize = 6;
pub const GRID: u64 = (1 << (N * N)) - 1;

pub fn cell(x: usize, y: usize) -> u64 {
    1 << (y * N + x)
}

pub fn border() -> u64 {
    let mut m = 0;
    for i in 0..N {
        m |= cell(i, 0) | cell(i, N - 1) | cell(0, i) | cell(N - 1, i);
    }
    m
}

/// Cells sharing at least a corner with some cell of `m`, including `m` itself.
pub fn dilate(m: u64) -> u64 {
    let mut out = 0;
    for y in 0..N {
        for x in 0..N {
            if m & cell(x, y) == 0 {
                continue;
            }
            for dy in -1i32..=1 {
                for dx in -1i32..=1 {
                    let (nx, ny) = (x as i32 + dx, y as i32 + dy);
                    if (0..N as i32).contains(&nx) && (0..N as i32).contains(&ny) {
                        out |= cell(nx as usize, ny as usize);
                    }
                }
            }
        }
    }
    out
}

pub struct Region {
    cells: u64,
    halo: u64,
    on_border: bool,
}

impl Region {
    pub fn new(cells: u64) -> Region {
        Region {
            cells,
            halo: dilate(cells),
            on_border: cells & border() != 0,
        }
    }
}

pub fn relation(a: &Region, b: &Region) -> Rcc8 {
    if a.cells == b.cells {
        return Rcc8::EQ;
    }
    if a.cells & b.cells == 0 {
        return if a.halo & b.cells != 0 { Rcc8::EC } else { Rcc8::DC };
    }
    let tangential = |inner: &Region, outer: &Region| inner.on_border || inner.halo & !outer.cells & GRID != 0;
    if a.cells & !b.cells == 0 {
        return if tangential(a, b) { Rcc8::TPP } else { Rcc8::NTPP };
    }
    if b.cells & !a.cells == 0 {
        return if tangential(b, a) { Rcc8::TPPi } else { Rcc8::NTPPi };
    }
    Rcc8::PO
}

pub fn rectangles() -> Vec<u64> {
    let mut out = Vec::new();
    for x0 in 0..N {
        for x1 in x0..N {
            for y0 in 0..N {
                for y1 in y0..N {
                    let mut m = 0;
                    for y in y0..=y1 {
                        for x in x0..=x1 {
                            m |= cell(x, y);
                        }
                    }
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Random 4-connected polyominoes grown from a seed cell.
pub fn polyominoes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let size = rng.gen_range(2..=20);
        let mut m = cell(rng.gen_range(0..N), rng.gen_range(0..N));
        while (m.count_ones() as usize) < size {
            let x = rng.gen_range(0..N);
            let y = rng.gen_range(0..N);
            if m & cell(x, y) != 0 {
                continue;
            }
            let four = [(0i32, 1i32), (1, 0), (0, -1), (-1, 0)].iter().any(|(dx, dy)| {
                let (nx, ny) = (x as i32 + dx, y as i32 + dy);
                (0..N as i32).contains(&nx)
                    && (0..N as i32).contains(&ny)
                    && m & cell(nx as usize, ny as usize) != 0
            });
            if four {
                m |= cell(x, y);
            }
        }
        out.push(m);
    }
    out
}

/// Realized compositions: `cells[r1][r2]` holds every relation x–z seen with x r1 y, y r2 z.
pub fn realized(regions: &[u64]) -> [[RelationSet; 8]; 8] {
    let regions: Vec<Region> = regions.iter().map(|&m| Region::new(m)).collect();
    let n = regions.len();
    let mut rel = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            rel[i * n + j] = relation(&regions[i], &regions[j]).index() as u8;
        }
    }
    let mut bits = [[0u8; 8]; 8];
    for a in 0..n {
        for b in 0..n {
            let r1 = rel[a * n + b] as usize;
            let row_b = &rel[b * n..(b + 1) * n];
            let row_a = &rel[a * n..(a + 1) * n];
            let cells = &mut bits[r1];
            for c in 0..n {
                cells[row_b[c] as usize] |= 1 << row_a[c];
            }
        }
    }
    bits.map(|row| row.map(RelationSet::from_bits))
}

/// Rectangles plus seeded polyominoes, deduplicated.
pub fn standard_regions() -> Vec<u64> {
    let mut regions = rectangles();
    regions.extend(polyominoes(120, 7));
    regions.sort_unstable();
    regions.dedup();
    regions
}
