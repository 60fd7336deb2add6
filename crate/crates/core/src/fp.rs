//! Exact dense linear algebra over the prime field F_p.
//!
//! Scalars are residues stored as `u64`; every matrix carries its modulus and
//! all arithmetic is exact field arithmetic. Nothing here is sparse or
//! asymptotically clever: the rings this crate works with have dimension at
//! most a handful, so plain Gaussian elimination is the right tool.

use crate::error::{Error, Result};

/// Trial-division primality test; moduli in this crate are tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn add_m(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

#[inline]
pub(crate) fn sub_m(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

#[inline]
pub(crate) fn mul_m(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

#[inline]
pub(crate) fn neg_m(a: u64, p: u64) -> u64 {
    (p - a) % p
}

/// Reduce a signed integer into [0, p).
#[inline]
pub(crate) fn reduce_i64(a: i64, p: u64) -> u64 {
    let m = p as i64;
    (((a % m) + m) % m) as u64
}

pub(crate) fn pow_m(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_m(acc, base, p);
        }
        base = mul_m(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse mod a prime, via Fermat's little theorem.
pub(crate) fn inv_m(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    pow_m(a, p - 2, p)
}

/// A residue in F_p together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u64,
    modulus: u64,
}

impl FpScalar {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(FpScalar {
            value: reduce_i64(value, modulus),
            modulus,
        })
    }

    pub(crate) fn from_raw(value: u64, modulus: u64) -> Self {
        FpScalar {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<u64> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(self.modulus)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let p = self.same_field(other)?;
        Ok(FpScalar::from_raw(add_m(self.value, other.value, p), p))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let p = self.same_field(other)?;
        Ok(FpScalar::from_raw(sub_m(self.value, other.value, p), p))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let p = self.same_field(other)?;
        Ok(FpScalar::from_raw(mul_m(self.value, other.value, p), p))
    }

    pub fn neg(&self) -> Self {
        FpScalar::from_raw(neg_m(self.value, self.modulus), self.modulus)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FpScalar::from_raw(
            inv_m(self.value, self.modulus),
            self.modulus,
        ))
    }
}

/// A dense matrix over F_p, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// The outcome of row reduction: the reduced matrix, its rank, and the
/// pivot columns in increasing order.
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = FpMatrix::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build a matrix from rows of already-reduced residues.
    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            for &x in r {
                debug_assert!(x < p);
                data.push(x % p);
            }
        }
        FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Build a matrix from possibly-negative integers, reducing mod p.
    pub fn from_signed_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| reduce_i64(x, p)).collect())
            .collect();
        FpMatrix::from_rows(p, &reduced)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn entry(&self, r: usize, c: usize) -> FpScalar {
        FpScalar::from_raw(self.get(r, c), self.p)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Vertical concatenation; panics on column/modulus mismatch.
    pub fn stack(parts: &[&FpMatrix]) -> FpMatrix {
        assert!(!parts.is_empty());
        let p = parts[0].p;
        let cols = parts[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.p, p, "modulus mismatch in stack");
            assert_eq!(m.cols, cols, "column mismatch in stack");
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        FpMatrix {
            p,
            rows,
            cols,
            data,
        }
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let mut out = FpMatrix::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add_m(out.get(i, j), mul_m(a, other.get(k, j), self.p), self.p);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.cols {
                    acc = add_m(acc, mul_m(self.get(i, j), v[j], self.p), self.p);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.p, other.p);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| add_m(a, b, self.p))
            .collect();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: u64) -> FpMatrix {
        let c = c % self.p;
        let data = self.data.iter().map(|&a| mul_m(a, c, self.p)).collect();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix power; `pow(0)` is the identity (square matrices only).
    pub fn pow(&self, k: usize) -> FpMatrix {
        assert_eq!(self.rows, self.cols, "pow of non-square matrix");
        let mut acc = FpMatrix::identity(self.rows, self.p);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduced row echelon form with unit pivots and zeros above and below.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let p = m.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let (a, b) = (m.get(r, j), m.get(pr, j));
                m.set(r, j, b);
                m.set(pr, j, a);
            }
            let inv = inv_m(m.get(r, c), p);
            for j in 0..m.cols {
                m.set(r, j, mul_m(m.get(r, j), inv, p));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = sub_m(m.get(i, j), mul_m(f, m.get(r, j), p), p);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: r,
            pivots,
        }
    }

    /// A row basis of the right kernel {v : Mv = 0}, in reduced echelon form.
    pub fn kernel_basis(&self) -> FpMatrix {
        let rr = self.rref();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &rr.pivots {
                s[c] = true;
            }
            s
        };
        let mut rows = Vec::new();
        for f in 0..self.cols {
            if pivot_set[f] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for (i, &pc) in rr.pivots.iter().enumerate() {
                v[pc] = neg_m(rr.reduced.get(i, f), self.p);
            }
            rows.push(v);
        }
        let raw = FpMatrix::from_rows_or_empty(self.p, self.cols, rows);
        // Free-variable vectors need not be echelonized; canonicalize.
        let rr = raw.rref();
        rr.reduced.take_rows(rr.rank)
    }

    /// Inverse of a square matrix, or None when singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = FpMatrix::zeros(n, 2 * n, self.p);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let rr = aug.rref();
        if rr.rank < n || rr.pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        let mut inv = FpMatrix::zeros(n, n, self.p);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, rr.reduced.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Keep the first `k` rows.
    pub(crate) fn take_rows(&self, k: usize) -> FpMatrix {
        FpMatrix {
            p: self.p,
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    /// Like `from_rows` but keeps a column count for the empty case.
    pub(crate) fn from_rows_or_empty(p: u64, cols: usize, rows: Vec<Vec<u64>>) -> FpMatrix {
        if rows.is_empty() {
            return FpMatrix::zeros(0, cols, p);
        }
        FpMatrix::from_rows(p, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_arithmetic() {
        let a = FpScalar::new(3, 5).unwrap();
        let b = FpScalar::new(-1, 5).unwrap();
        assert_eq!(b.value(), 4);
        assert_eq!(a.add(&b).unwrap().value(), 2);
        assert_eq!(a.mul(&b).unwrap().value(), 2);
        assert_eq!(a.inv().unwrap().value(), 2); // 3 * 2 = 6 = 1 mod 5
        assert_eq!(a.neg().value(), 2);
        assert!(FpScalar::new(1, 6).is_err());
        assert!(FpScalar::new(0, 5).unwrap().inv().is_err());
    }

    #[test]
    fn scalar_modulus_mismatch() {
        let a = FpScalar::new(1, 3).unwrap();
        let b = FpScalar::new(1, 5).unwrap();
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = FpMatrix::identity(3, 5);
        let rr = id.rref();
        assert_eq!(rr.reduced, id);
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_duplicate_rows_over_f2() {
        let m = FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        let rr = m.rref();
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.reduced.row(0), &[1, 1]);
        assert_eq!(rr.reduced.row(1), &[0, 0]);
    }

    #[test]
    fn rref_matches_hand_elimination_over_f5() {
        // [[2,4],[1,2]]: scale row 0 by 2^{-1} = 3 giving [1,2], subtract from row 1.
        let m = FpMatrix::from_rows(5, &[vec![2, 4], vec![1, 2]]);
        let rr = m.rref();
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.reduced.row(0), &[1, 2]);
        assert_eq!(rr.reduced.row(1), &[0, 0]);
        // Idempotence.
        let again = rr.reduced.rref();
        assert_eq!(again.reduced, rr.reduced);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let m = FpMatrix::zeros(2, 2, 3);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 2);
        assert_eq!(k, FpMatrix::identity(2, 3));
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let m = FpMatrix::identity(2, 3);
        assert_eq!(m.kernel_basis().rows(), 0);
    }

    #[test]
    fn kernel_of_single_row_over_f5() {
        // Oracle: of the 25 vectors (a, b), exactly those with a + 2b = 0.
        let m = FpMatrix::from_rows(5, &[vec![1, 2]]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 1);
        let mut solutions = Vec::new();
        for a in 0..5u64 {
            for b in 0..5u64 {
                if (a + 2 * b) % 5 == 0 {
                    solutions.push(vec![a, b]);
                }
            }
        }
        assert_eq!(solutions.len(), 5);
        // (3, 1) is a solution, and the canonical basis row is its normalization.
        assert!(solutions.contains(&vec![3, 1]));
        assert_eq!(k.row(0), &[1, 2]); // 3^{-1} * (3, 1) = 2 * (3, 1) = (1, 2)
        for s in &solutions {
            assert!(m.mul_vec(s).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = FpMatrix::from_rows(7, &[vec![1, 2, 0], vec![0, 1, 3], vec![2, 0, 1]]);
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv), FpMatrix::identity(3, 7));
        assert_eq!(inv.mul(&m), FpMatrix::identity(3, 7));
        let singular = FpMatrix::from_rows(7, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn empty_shapes_do_not_panic() {
        let m = FpMatrix::zeros(0, 3, 5);
        assert_eq!(m.rref().rank, 0);
        assert_eq!(m.kernel_basis().rows(), 3);
        let n = FpMatrix::zeros(3, 0, 5);
        assert_eq!(n.rref().rank, 0);
        assert_eq!(n.kernel_basis().rows(), 0);
    }
}
