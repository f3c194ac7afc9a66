//! Dense matrices over the Laurent polynomial ring: multiplication,
//! division-free characteristic polynomials, determinants, and exact inverses
//! through the fraction field.

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, RingFraction};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// A row-major dense matrix with [`LaurentPoly`] entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl RingMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            data: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = LaurentPoly::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> LaurentPoly,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Entrywise bar involution (q ↦ q^{-1}, t ↦ t^{-1}).
    pub fn bar(&self) -> Self {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.bar()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    *out.at_mut(i, j) = out.at(i, j) + &prod;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "dimension mismatch"
        );
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "dimension mismatch"
        );
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &LaurentPoly) -> Self {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    /// Characteristic polynomial det(λI − A) by the Berkowitz algorithm:
    /// division-free, so it stays inside the Laurent ring.
    ///
    /// Returns coefficients in ascending degree, `[c_0, ..., c_n]` with
    /// `c_n = 1`, so `det(A) = (−1)^n · c_0`.
    pub fn charpoly(&self) -> Result<Vec<LaurentPoly>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(vec![LaurentPoly::one()]);
        }
        // Work from the trailing 1x1 block outward. `p` holds the charpoly of
        // the current trailing block, descending degree (leading 1 first).
        let mut p = vec![LaurentPoly::one(), self.at(n - 1, n - 1).neg_ref()];
        for k in (0..n.saturating_sub(1)).rev() {
            let m = n - k; // size of the new trailing block
                           // Toeplitz column: [1, -a_kk, -R C, -R M C, -R M^2 C, ...]
            let mut s = Vec::with_capacity(m + 1);
            s.push(LaurentPoly::one());
            s.push(self.at(k, k).neg_ref());
            // R = row k over columns k+1.., C = column k over rows k+1..,
            // M = trailing (m-1)x(m-1) block.
            let mut v: Vec<LaurentPoly> = (k + 1..n).map(|i| self.at(i, k).clone()).collect();
            for _ in 0..m - 1 {
                let mut dot = LaurentPoly::zero();
                for (idx, j) in (k + 1..n).enumerate() {
                    if !v[idx].is_zero() {
                        dot = &dot + &(self.at(k, j) * &v[idx]);
                    }
                }
                s.push(dot.neg_ref());
                if s.len() == m + 1 {
                    break;
                }
                let mut next = vec![LaurentPoly::zero(); v.len()];
                for (ridx, i) in (k + 1..n).enumerate() {
                    for (cidx, j) in (k + 1..n).enumerate() {
                        if !v[cidx].is_zero() {
                            let e = self.at(i, j);
                            if !e.is_zero() {
                                next[ridx] = &next[ridx] + &(e * &v[cidx]);
                            }
                        }
                    }
                }
                v = next;
            }
            // newp = s ⋆ p (polynomial convolution), sized m+1
            let mut newp = vec![LaurentPoly::zero(); m + 1];
            for (i, np) in newp.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate() {
                    if j <= i && i - j < s.len() && !pj.is_zero() && !s[i - j].is_zero() {
                        *np = &*np + &(&s[i - j] * pj);
                    }
                }
            }
            p = newp;
        }
        p.reverse(); // ascending degree
        Ok(p)
    }

    /// Exact determinant via the characteristic polynomial.
    pub fn det(&self) -> Result<LaurentPoly> {
        let cp = self.charpoly()?;
        let n = self.rows;
        let c0 = cp[0].clone();
        Ok(if n.is_multiple_of(2) {
            c0
        } else {
            c0.neg_ref()
        })
    }

    /// Exact inverse through the fraction field, with a [`Error::NonLaurentEntry`]
    /// if some entry of the inverse does not lie back in the Laurent ring and
    /// [`Error::Singular`] if the matrix is singular.
    pub fn inverse(&self) -> Result<RingMatrix> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        // Gauss-Jordan over the fraction field on [A | I].
        let mut a: Vec<Vec<RingFraction>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| RingFraction::from_poly(self.at(i, j).clone()))
                    .collect()
            })
            .collect();
        let mut inv: Vec<Vec<RingFraction>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            RingFraction::one()
                        } else {
                            RingFraction::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            let pivot = a[col][col].clone();
            for j in 0..n {
                a[col][j] = a[col][j].div(&pivot)?;
                inv[col][j] = inv[col][j].div(&pivot)?;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let am = a[col][j].mul(&factor);
                    a[r][j] = a[r][j].sub(&am);
                    let im = inv[col][j].mul(&factor);
                    inv[r][j] = inv[r][j].sub(&im);
                }
            }
        }
        let mut out = RingMatrix::zero(n, n);
        for (i, row) in inv.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                *out.at_mut(i, j) = entry.to_laurent().ok_or(Error::NonLaurentEntry)?;
            }
        }
        Ok(out)
    }
}

impl Serialize for RingMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RingMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let entries: Vec<Vec<&LaurentPoly>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j)).collect())
            .collect();
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}
