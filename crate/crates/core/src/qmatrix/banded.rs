use std::fmt::Write as _;

use crate::exactfield::Field;

use super::QMatrixError;

/// A square truncation of a semi-infinite banded matrix.
///
/// Entry `(j, k)` lies on diagonal `j - k`; only diagonals `lo..=hi` are
/// stored. `valid` bounds the leading block whose entries agree with the
/// semi-infinite matrix: truncating a product loses the terms that run past
/// the last row or column, so every product shrinks it.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix<F> {
    size: usize,
    lo: i64,
    hi: i64,
    valid: usize,
    diags: Vec<Vec<F>>,
}

impl<F: Field> BandedMatrix<F> {
    pub fn zeros(size: usize, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "band ({lo},{hi}) is empty");
        let diags = (lo..=hi)
            .map(|d| vec![F::zero(); size.saturating_sub(d.unsigned_abs() as usize)])
            .collect();
        BandedMatrix {
            size,
            lo,
            hi,
            valid: size,
            diags,
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = BandedMatrix::zeros(size, 0, 0);
        m.diags[0] = vec![F::one(); size];
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `(lo, hi)` in the `j - k` convention.
    pub fn band(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn valid(&self) -> usize {
        self.valid
    }

    fn slot(&self, j: usize, k: usize) -> Option<(usize, usize)> {
        if j >= self.size || k >= self.size {
            return None;
        }
        let d = j as i64 - k as i64;
        if d < self.lo || d > self.hi {
            return None;
        }
        Some(((d - self.lo) as usize, j.min(k)))
    }

    pub fn get(&self, j: usize, k: usize) -> F {
        match self.slot(j, k) {
            Some((di, i)) => self.diags[di][i].clone(),
            None => F::zero(),
        }
    }

    /// Sets an entry inside the band; panics outside it.
    pub fn set(&mut self, j: usize, k: usize, v: F) {
        let (di, i) = self
            .slot(j, k)
            .unwrap_or_else(|| panic!("({j},{k}) outside band ({},{})", self.lo, self.hi));
        self.diags[di][i] = v;
    }

    fn check_size(&self, other: &Self) -> Result<(), QMatrixError> {
        if self.size != other.size {
            return Err(QMatrixError::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, QMatrixError> {
        self.check_size(other)?;
        let n = self.size;
        let mut out: Self = BandedMatrix::zeros(n, self.lo + other.lo, self.hi + other.hi);
        for (ai, da) in (self.lo..=self.hi).enumerate() {
            for (bi, db) in (other.lo..=other.hi).enumerate() {
                let d = da + db;
                let oi = (d - out.lo) as usize;
                // (j, i) on diagonal da, (i, k) on diagonal db
                for (pos, a) in self.diags[ai].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let (j, i) = if da >= 0 {
                        (pos + da as usize, pos)
                    } else {
                        (pos, pos + (-da) as usize)
                    };
                    let k = i as i64 - db;
                    if k < 0 || k as usize >= n {
                        continue;
                    }
                    let k = k as usize;
                    let b = &other.diags[bi][i.min(k)];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = j.min(k);
                    out.diags[oi][slot] = out.diags[oi][slot].clone() + &(a.clone() * b);
                }
            }
        }
        let slack = (-self.lo).max(0) as usize;
        out.valid = self.valid.min(other.valid).saturating_sub(slack);
        Ok(out)
    }

    fn combine(&self, other: &Self, f: impl Fn(F, &F) -> F) -> Result<Self, QMatrixError> {
        self.check_size(other)?;
        let mut out = BandedMatrix::zeros(self.size, self.lo.min(other.lo), self.hi.max(other.hi));
        for j in 0..self.size {
            for d in out.lo..=out.hi {
                let k = j as i64 - d;
                if k < 0 || k as usize >= self.size {
                    continue;
                }
                let k = k as usize;
                out.set(j, k, f(self.get(j, k), &other.get(j, k)));
            }
        }
        out.valid = self.valid.min(other.valid);
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, QMatrixError> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QMatrixError> {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = self.clone();
        for diag in &mut out.diags {
            for x in diag.iter_mut() {
                *x = x.clone() * c;
            }
        }
        out
    }

    /// The leading `n × n` block.
    pub fn restrict(&self, n: usize) -> Self {
        let n = n.min(self.size);
        let mut out = BandedMatrix::zeros(n, self.lo, self.hi);
        for (di, diag) in out.diags.iter_mut().enumerate() {
            let len = diag.len();
            *diag = self.diags[di][..len].to_vec();
        }
        out.valid = self.valid.min(n);
        out
    }

    /// First nonzero entry of the valid block in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, F)> {
        for j in 0..self.valid {
            for k in 0..self.valid {
                let v = self.get(j, k);
                if !v.is_zero() {
                    return Some((j, k, v));
                }
            }
        }
        None
    }

    pub fn is_zero_on_valid(&self) -> bool {
        self.first_nonzero().is_none()
    }

    /// Row-major `j k value` lines for the nonzero entries of the valid block.
    pub fn to_triples(&self) -> String {
        let mut s = String::new();
        for j in 0..self.valid {
            for k in 0..self.valid {
                let v = self.get(j, k);
                if !v.is_zero() {
                    let _ = writeln!(s, "{j} {k} {v}");
                }
            }
        }
        s
    }
}
