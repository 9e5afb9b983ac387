//! Dense membership tables over an exponent box.
//!
//! For desk-scale ideals the box `0 <= a <= bound` is small, and a single
//! pass propagating membership upward (`a in I` iff `a` is a generator or
//! some `a - e_i` is in `I`) replaces quadratic divisibility scans.

use crate::monomial::Monomial;

/// Largest box handled densely.
pub(crate) const DENSE_CAP: usize = 1 << 22;

pub(crate) struct Grid {
    dims: Vec<usize>,
    strides: Vec<usize>,
    pub(crate) cells: Vec<bool>,
}

impl Grid {
    /// Box size for `0 <= a <= bound`, or `None` if above `cap`.
    pub(crate) fn box_size(bound: &[u32], cap: usize) -> Option<usize> {
        let mut size: usize = 1;
        for &b in bound {
            size = size.checked_mul(b as usize + 1)?;
            if size > cap {
                return None;
            }
        }
        Some(size)
    }

    pub(crate) fn empty(bound: &[u32]) -> Grid {
        let dims: Vec<usize> = bound.iter().map(|&b| b as usize + 1).collect();
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        let len = dims.iter().product();
        Grid { dims, strides, cells: vec![false; len] }
    }

    /// Membership table of the ideal generated by `gens`, restricted to the box.
    pub(crate) fn membership<'a>(bound: &[u32], gens: impl IntoIterator<Item = &'a Monomial>) -> Grid {
        let mut g = Grid::empty(bound);
        for m in gens {
            if m.is_below(bound) {
                let idx = g.index(m.exps());
                g.cells[idx] = true;
            }
        }
        g.propagate();
        g
    }

    pub(crate) fn strides(&self) -> &[usize] {
        &self.strides
    }

    /// Inverse of [`Grid::index`].
    pub(crate) fn coords(&self, mut idx: usize) -> Vec<u32> {
        let mut c = vec![0u32; self.dims.len()];
        for i in (0..self.dims.len()).rev() {
            c[i] = (idx % self.dims[i]) as u32;
            idx /= self.dims[i];
        }
        c
    }

    pub(crate) fn index(&self, a: &[u32]) -> usize {
        a.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum()
    }

    fn propagate(&mut self) {
        let n = self.dims.len();
        let mut coord = vec![0usize; n];
        for idx in 0..self.cells.len() {
            if !self.cells[idx] {
                for (c, s) in coord.iter().zip(&self.strides) {
                    if *c > 0 && self.cells[idx - s] {
                        self.cells[idx] = true;
                        break;
                    }
                }
            }
            // odometer, last coordinate fastest
            for i in (0..n).rev() {
                coord[i] += 1;
                if coord[i] < self.dims[i] {
                    break;
                }
                coord[i] = 0;
            }
        }
    }

    pub(crate) fn and_with(&mut self, other: &Grid) {
        for (c, o) in self.cells.iter_mut().zip(&other.cells) {
            *c = *c && *o;
        }
    }

    /// Exponent vectors of the minimal members, in index order.
    pub(crate) fn minimal_points(&self) -> Vec<Vec<u32>> {
        let n = self.dims.len();
        let mut out = Vec::new();
        let mut coord = vec![0usize; n];
        for idx in 0..self.cells.len() {
            if self.cells[idx] {
                let minimal = (0..n).all(|i| coord[i] == 0 || !self.cells[idx - self.strides[i]]);
                if minimal {
                    out.push(coord.iter().map(|&c| c as u32).collect());
                }
            }
            for i in (0..n).rev() {
                coord[i] += 1;
                if coord[i] < self.dims[i] {
                    break;
                }
                coord[i] = 0;
            }
        }
        out
    }

    /// Whether `a - e_i` is a member (caller guarantees `a_i > 0`).
    pub(crate) fn below_is_member(&self, idx: usize, i: usize) -> bool {
        self.cells[idx - self.strides[i]]
    }
}
