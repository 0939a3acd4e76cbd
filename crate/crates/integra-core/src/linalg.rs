//! Matrices over an arbitrary supported ring, with division-free
//! determinant, adjugate and characteristic polynomial.
//!
//! Everything here must stay valid over rings with zero divisors (for
//! example `Z/12`), which rules out Gaussian elimination and
//! Faddeev-LeVerrier. The characteristic polynomial is computed by the
//! Samuelson-Berkowitz algorithm; cofactor expansion is retained both as
//! the determinant path for small matrices and as an independent oracle.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ring::{embed, Element, Ring};

/// A row-major matrix with entries in a fixed ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Element>,
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Element>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch);
        }
        if data.iter().any(|e| e.ring() != &ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Element>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch);
        }
        Matrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Matrix {
        let data = vec![ring.zero(); rows * cols];
        Matrix { ring, rows, cols, data }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring.clone(), n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Element {
        &self.data[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch);
        }
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch);
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch);
        }
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = Matrix::zero(self.ring.clone(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(rhs.at(k, j))?)?;
                }
                out.data[i * rhs.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, s: &Element) -> Result<Matrix> {
        if s.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let data = self.data.iter().map(|a| a.mul(s)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Matrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == skip_row {
                continue;
            }
            for j in 0..self.cols {
                if j == skip_col {
                    continue;
                }
                data.push(self.at(i, j).clone());
            }
        }
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Determinant by Laplace expansion along the first row. Exponential;
    /// reserved for small matrices and oracle duty.
    pub fn det_cofactor(&self) -> Result<Element> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch);
        }
        match self.rows {
            0 => Ok(self.ring.one()),
            1 => Ok(self.at(0, 0).clone()),
            _ => {
                let mut acc = self.ring.zero();
                for j in 0..self.cols {
                    if self.at(0, j).is_zero() {
                        continue;
                    }
                    let term = self.at(0, j).mul(&self.minor(0, j).det_cofactor()?)?;
                    acc = if j % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
                }
                Ok(acc)
            }
        }
    }

    /// Division-free determinant: cofactor expansion up to 6x6, Berkowitz
    /// beyond. Valid over any commutative ring.
    pub fn det(&self) -> Result<Element> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch);
        }
        if self.rows <= 6 {
            self.det_cofactor()
        } else {
            // charpoly(0) = det(-A) = (-1)^n det(A)
            let c0 = self.charpoly()?.swap_remove(0);
            Ok(if self.rows.is_multiple_of(2) { c0 } else { c0.neg() })
        }
    }

    /// The transposed cofactor matrix; satisfies
    /// `adjugate(M) * M = M * adjugate(M) = det(M) * I` exactly.
    pub fn adjugate(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut out = Matrix::zero(self.ring.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(j, i).det()?;
                out.data[i * n + j] = if (i + j) % 2 == 0 { d } else { d.neg() };
            }
        }
        Ok(out)
    }

    /// Characteristic polynomial `det(X I - M)` by the Samuelson-Berkowitz
    /// division-free recurrence. Coefficients are returned lowest degree
    /// first; the result is monic of degree exactly `n`.
    pub fn charpoly(&self) -> Result<Vec<Element>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch);
        }
        let n = self.rows;
        let ring = &self.ring;
        // Leading-first coefficient vector, one principal submatrix at a time.
        let mut c = vec![ring.one()];
        for r in 1..=n {
            let a = self.at(r - 1, r - 1);
            let mut t = Vec::with_capacity(r + 1);
            t.push(ring.one());
            t.push(a.neg());
            if r >= 2 {
                let mut w: Vec<Element> = (0..r - 1).map(|i| self.at(i, r - 1).clone()).collect();
                for k in 2..=r {
                    let mut dot = ring.zero();
                    for (j, wj) in w.iter().enumerate() {
                        dot = dot.add(&self.at(r - 1, j).mul(wj)?)?;
                    }
                    t.push(dot.neg());
                    if k < r {
                        let mut next = Vec::with_capacity(r - 1);
                        for i in 0..r - 1 {
                            let mut s = ring.zero();
                            for (j, wj) in w.iter().enumerate() {
                                s = s.add(&self.at(i, j).mul(wj)?)?;
                            }
                            next.push(s);
                        }
                        w = next;
                    }
                }
            }
            let mut cnew = vec![ring.zero(); r + 1];
            for (i, slot) in cnew.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i >= j && i - j < t.len() {
                        *slot = slot.add(&t[i - j].mul(cj)?)?;
                    }
                }
            }
            c = cnew;
        }
        c.reverse();
        Ok(c)
    }

    /// Independent characteristic-polynomial oracle: builds `X I - M` over
    /// a fresh polynomial layer and expands the determinant by cofactors.
    pub fn charpoly_via_cofactor(&self) -> Result<Vec<Element>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch);
        }
        let n = self.rows;
        let var = self.ring.fresh_var("X");
        let pring = Ring::polynomial(&self.ring, &var)?;
        let x = pring.var_elem()?;
        let mut xi_m = Matrix::zero(pring.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                let lifted = embed(self.at(i, j), &pring)?;
                xi_m.data[i * n + j] = if i == j { x.sub(&lifted)? } else { lifted.neg() };
            }
        }
        let det = xi_m.det_cofactor()?;
        let mut coeffs = det.coeffs_in_base()?;
        while coeffs.len() < n + 1 {
            coeffs.push(self.ring.zero());
        }
        Ok(coeffs)
    }

    /// Evaluates a polynomial at this (square) matrix, `sum c_i M^i`, with
    /// coefficients embedded as scalar matrices.
    pub fn poly_at(&self, coeffs: &[Element]) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch);
        }
        let n = self.rows;
        let mut acc = Matrix::zero(self.ring.clone(), n, n);
        for c in coeffs.iter().rev() {
            let scaled = Matrix::identity(self.ring.clone(), n).scalar_mul(&embed(c, &self.ring)?)?;
            acc = acc.mul(self)?.add(&scaled)?;
        }
        Ok(acc)
    }
}
