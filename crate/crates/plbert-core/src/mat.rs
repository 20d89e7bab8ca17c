//! Row-major matrices with `f64`-accumulating kernels.
//!
//! The kernels are deliberately plain loops: at the model sizes this crate
//! targets they vectorize well enough, and keeping them branch-free makes
//! the numerics easy to reason about. Dot products and rank-1 updates
//! always accumulate in `f64`; results are cast back to the storage type
//! once per output element.

use alloc::vec;
use alloc::vec::Vec;

use crate::num::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "shape/data mismatch");
        Mat { rows, cols, data }
    }

    #[inline(always)]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline(always)]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn numel(&self) -> usize {
        self.data.len()
    }

    #[inline(always)]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline(always)]
    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline(always)]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn fill_zero(&mut self) {
        self.data.fill(T::zero());
    }

    /// Elementwise cast into another storage type.
    pub fn cast<U: Real>(&self) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| U::from_f64(v.to_f64())).collect(),
        }
    }
}

/// `a · b` for (m×k)·(k×n), f64 accumulation per output row.
pub fn matmul<T: Real>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    assert_eq!(a.cols, b.rows, "matmul inner dims");
    let (m, k, n) = (a.rows, a.cols, b.cols);
    let mut out = Mat::zeros(m, n);
    let mut acc = vec![0.0f64; n];
    for i in 0..m {
        acc.fill(0.0);
        let arow = a.row(i);
        for p in 0..k {
            let av = arow[p].to_f64();
            let brow = b.row(p);
            for j in 0..n {
                acc[j] += av * brow[j].to_f64();
            }
        }
        let orow = out.row_mut(i);
        for j in 0..n {
            orow[j] = T::from_f64(acc[j]);
        }
    }
    out
}

/// `a · b + bias` broadcast over rows.
pub fn affine<T: Real>(a: &Mat<T>, w: &Mat<T>, bias: &[T]) -> Mat<T> {
    assert_eq!(w.cols, bias.len(), "affine bias width");
    let mut out = matmul(a, w);
    for i in 0..out.rows {
        let row = out.row_mut(i);
        for j in 0..row.len() {
            row[j] += bias[j];
        }
    }
    out
}

/// `out += a · bᵀ` for (m×k)·(n×k)ᵀ → (m×n). Used on gradient paths, so the
/// output is always `f64`.
pub fn mm_nt_add<A: Real, B: Real>(out: &mut Mat<f64>, a: &Mat<A>, b: &Mat<B>) {
    assert_eq!(a.cols, b.cols, "mm_nt inner dims");
    assert_eq!(out.rows, a.rows);
    assert_eq!(out.cols, b.rows);
    for i in 0..a.rows {
        let arow = a.row(i);
        let orow = out.row_mut(i);
        for j in 0..b.rows {
            let brow = b.row(j);
            let mut acc = 0.0f64;
            for p in 0..a.cols {
                acc += arow[p].to_f64() * brow[p].to_f64();
            }
            orow[j] += acc;
        }
    }
}

/// `out += aᵀ · b` for (m×k)ᵀ·(m×n) → (k×n), the rank-m update behind every
/// weight gradient.
pub fn mm_tn_add<A: Real, B: Real>(out: &mut Mat<f64>, a: &Mat<A>, b: &Mat<B>) {
    assert_eq!(a.rows, b.rows, "mm_tn outer dims");
    assert_eq!(out.rows, a.cols);
    assert_eq!(out.cols, b.cols);
    for i in 0..a.rows {
        let arow = a.row(i);
        let brow = b.row(i);
        for p in 0..a.cols {
            let av = arow[p].to_f64();
            let orow = out.row_mut(p);
            for j in 0..b.cols {
                orow[j] += av * brow[j].to_f64();
            }
        }
    }
}

/// `out[j] += Σ_i a[i][j]`.
pub fn colsum_add(out: &mut [f64], a: &Mat<f64>) {
    assert_eq!(out.len(), a.cols);
    for i in 0..a.rows {
        let row = a.row(i);
        for j in 0..a.cols {
            out[j] += row[j];
        }
    }
}
