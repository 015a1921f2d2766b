//! Occupancy bitmaps over uniform cell grids, plus the exact Euclidean
//! distance transform used by the radii and set-distance computations.

use serde::{Deserialize, Serialize};

/// Row-major bit mask, one bit per grid cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bitmap {
    width: usize,
    height: usize,
    words: Vec<u64>,
}

impl Bitmap {
    pub fn new(width: usize, height: usize) -> Self {
        let words = vec![0u64; (width * height + 63) / 64];
        Bitmap { width, height, words }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.width && j < self.height);
        let bit = j * self.width + i;
        self.words[bit >> 6] & (1u64 << (bit & 63)) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let bit = j * self.width + i;
        if v {
            self.words[bit >> 6] |= 1u64 << (bit & 63);
        } else {
            self.words[bit >> 6] &= !(1u64 << (bit & 63));
        }
    }

    /// Fill a run of cells within one row; used by scanline rasterizers.
    pub fn set_run(&mut self, j: usize, i0: usize, i1: usize, v: bool) {
        for i in i0..i1 {
            self.set(i, j, v);
        }
    }

    pub fn count_ones(&self) -> usize {
        let mut total: usize = self.words.iter().map(|w| w.count_ones() as usize).sum();
        // Mask any stray bits past the end.
        let tail = self.width * self.height % 64;
        if tail != 0 {
            let last = *self.words.last().unwrap();
            let masked = last & !((1u64 << tail) - 1);
            total -= masked.count_ones() as usize;
        }
        total
    }

    pub fn negated(&self) -> Bitmap {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out
    }

    pub fn or_assign(&mut self, other: &Bitmap) {
        assert_eq!(self.words.len(), other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn xor_count(&self, other: &Bitmap) -> usize {
        assert_eq!(self.width, other.width);
        assert_eq!(self.height, other.height);
        let mut total: usize = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum();
        let tail = self.width * self.height % 64;
        if tail != 0 {
            let last = self.words.last().unwrap() ^ other.words.last().unwrap();
            total -= (last & !((1u64 << tail) - 1)).count_ones() as usize;
        }
        total
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = (self.width * self.height + 7) / 8;
        let mut out = vec![0u8; nbytes];
        for (k, byte) in out.iter_mut().enumerate() {
            let word = self.words[k / 8];
            *byte = (word >> ((k % 8) * 8)) as u8;
        }
        out
    }

    pub fn from_bytes(width: usize, height: usize, bytes: &[u8]) -> Option<Self> {
        let nbytes = (width * height + 7) / 8;
        if bytes.len() != nbytes {
            return None;
        }
        let mut bm = Bitmap::new(width, height);
        for (k, &byte) in bytes.iter().enumerate() {
            bm.words[k / 8] |= (byte as u64) << ((k % 8) * 8);
        }
        // Reject set bits past the end so round-trips stay bit-exact.
        let tail = width * height % 64;
        if tail != 0 && bm.words.last().unwrap() & !((1u64 << tail) - 1) != 0 {
            return None;
        }
        Some(bm)
    }
}

/// Geometry of a uniform grid: world position of cells.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridGeometry {
    pub x0: f64,
    pub y0: f64,
    pub resolution: f64,
    pub width: usize,
    pub height: usize,
}

impl GridGeometry {
    #[inline]
    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.x0 + (i as f64 + 0.5) * self.resolution,
            self.y0 + (j as f64 + 0.5) * self.resolution,
        )
    }

    /// Cell containing `(x, y)`, or None outside the grid.
    #[inline]
    pub fn cell_of(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let fi = (x - self.x0) / self.resolution;
        let fj = (y - self.y0) / self.resolution;
        if fi < 0.0 || fj < 0.0 {
            return None;
        }
        let i = fi as usize;
        let j = fj as usize;
        if i >= self.width || j >= self.height {
            return None;
        }
        Some((i, j))
    }
}

const EDT_INF: f64 = 1e20;

/// Exact squared Euclidean distance transform (distances in cell units) to
/// the nearest cell where `seed` is true. Cells with no seed anywhere get
/// a large sentinel value.
pub fn squared_distance_transform(seed: &Bitmap) -> Vec<f64> {
    let w = seed.width();
    let h = seed.height();
    let mut field = vec![EDT_INF; w * h];
    for j in 0..h {
        for i in 0..w {
            if seed.get(i, j) {
                field[j * w + i] = 0.0;
            }
        }
    }
    // 1D transform along rows, then columns (Felzenszwalb-Huttenlocher).
    let mut f = vec![0.0f64; w.max(h)];
    let mut d = vec![0.0f64; w.max(h)];
    let mut v = vec![0usize; w.max(h)];
    let mut z = vec![0.0f64; w.max(h) + 1];
    for j in 0..h {
        for i in 0..w {
            f[i] = field[j * w + i];
        }
        dt_1d(&f[..w], &mut d[..w], &mut v, &mut z);
        for i in 0..w {
            field[j * w + i] = d[i];
        }
    }
    for i in 0..w {
        for j in 0..h {
            f[j] = field[j * w + i];
        }
        dt_1d(&f[..h], &mut d[..h], &mut v, &mut z);
        for j in 0..h {
            field[j * w + i] = d[j];
        }
    }
    field
}

fn dt_1d(f: &[f64], d: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k = 0usize;
    v[0] = 0;
    z[0] = -EDT_INF;
    z[1] = EDT_INF;
    for q in 1..n {
        let mut s;
        loop {
            let p = v[k];
            s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
            if s > z[k] {
                break;
            }
            if k == 0 {
                break;
            }
            k -= 1;
        }
        if s <= z[k] && k == 0 {
            v[0] = q;
            z[0] = -EDT_INF;
            z[1] = EDT_INF;
        } else {
            k += 1;
            v[k] = q;
            z[k] = s;
            z[k + 1] = EDT_INF;
        }
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let dq = q as f64 - p as f64;
        d[q] = dq * dq + f[p];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitmap_roundtrip_bytes() {
        let mut bm = Bitmap::new(13, 7);
        for (i, j) in [(0, 0), (12, 6), (5, 3), (7, 0)] {
            bm.set(i, j, true);
        }
        let bytes = bm.to_bytes();
        let back = Bitmap::from_bytes(13, 7, &bytes).unwrap();
        assert_eq!(bm, back);
        assert_eq!(back.count_ones(), 4);
    }

    #[test]
    fn xor_count_matches_cellwise() {
        let mut a = Bitmap::new(70, 3);
        let mut b = Bitmap::new(70, 3);
        a.set(0, 0, true);
        a.set(69, 2, true);
        b.set(69, 2, true);
        b.set(33, 1, true);
        assert_eq!(a.xor_count(&b), 2);
    }

    #[test]
    fn edt_matches_brute_force() {
        let w = 23;
        let h = 17;
        let mut seed = Bitmap::new(w, h);
        for (i, j) in [(3, 4), (20, 15), (11, 0), (0, 16), (7, 9)] {
            seed.set(i, j, true);
        }
        let field = squared_distance_transform(&seed);
        for j in 0..h {
            for i in 0..w {
                let mut best = f64::INFINITY;
                for (si, sj) in [(3, 4), (20, 15), (11, 0), (0, 16), (7, 9)] {
                    let dx = i as f64 - si as f64;
                    let dy = j as f64 - sj as f64;
                    best = best.min(dx * dx + dy * dy);
                }
                assert_eq!(field[j * w + i], best, "cell ({i},{j})");
            }
        }
    }
}
