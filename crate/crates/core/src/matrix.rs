//! Dense square matrices over any [`Ring`].
//!
//! A [`Mat`] holds plain element values; the ring is passed to every arithmetic call.
//! This keeps matrices hashable so that group elements can live in hash sets.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{Field, Fq, Ring};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mat<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: Copy> Mat<E> {
    /// Row-major construction; `data.len()` must be `n * n`.
    pub fn from_vec(n: usize, data: Vec<E>) -> Result<Mat<E>> {
        if data.len() != n * n {
            return Err(Error::Shape(format!("{} entries for a {n}x{n} matrix", data.len())));
        }
        Ok(Mat { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Mat<E>> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("matrix rows must have length equal to the row count".into()));
        }
        Ok(Mat { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Mat<E> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Mat { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn map<F: Copy>(&self, f: impl Fn(E) -> F) -> Mat<F> {
        Mat { n: self.n, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn transpose(&self) -> Mat<E> {
        Mat::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// The `size x size` submatrix starting at `(r, c)`.
    pub fn block(&self, r: usize, c: usize, size: usize) -> Mat<E> {
        Mat::from_fn(size, |i, j| self.get(r + i, c + j))
    }
}

impl<E: Copy + Eq> Mat<E> {
    pub fn zero<R: Ring<Elem = E>>(ring: &R, n: usize) -> Mat<E> {
        Mat { n, data: vec![ring.zero(); n * n] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Mat<E> {
        Mat::scalar(ring, n, ring.one())
    }

    pub fn scalar<R: Ring<Elem = E>>(ring: &R, n: usize, c: E) -> Mat<E> {
        let z = ring.zero();
        Mat::from_fn(n, |i, j| if i == j { c } else { z })
    }

    pub fn diag<R: Ring<Elem = E>>(ring: &R, d: &[E]) -> Mat<E> {
        let z = ring.zero();
        Mat::from_fn(d.len(), |i, j| if i == j { d[i] } else { z })
    }

    /// The matrix unit `E_ij`.
    pub fn unit<R: Ring<Elem = E>>(ring: &R, n: usize, i: usize, j: usize) -> Mat<E> {
        let mut m = Mat::zero(ring, n);
        m.set(i, j, ring.one());
        m
    }

    /// `e_ij(alpha) = I + alpha E_ij`, `i != j`.
    pub fn elementary<R: Ring<Elem = E>>(ring: &R, n: usize, i: usize, j: usize, alpha: E) -> Result<Mat<E>> {
        if i == j {
            return Err(Error::InvalidArgument("elementary matrix needs i != j".into()));
        }
        let mut m = Mat::identity(ring, n);
        m.set(i, j, alpha);
        Ok(m)
    }

    fn check(&self, other: &Mat<E>) {
        assert_eq!(self.n, other.n, "matrix size mismatch");
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Mat<E>) -> Mat<E> {
        self.check(other);
        Mat { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| ring.add(a, b)).collect() }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Mat<E>) -> Mat<E> {
        self.check(other);
        Mat { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| ring.sub(a, b)).collect() }
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Mat<E> {
        self.map(|a| ring.neg(a))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: E) -> Mat<E> {
        self.map(|a| ring.mul(c, a))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Mat<E>) -> Mat<E> {
        self.check(other);
        let n = self.n;
        let zero = ring.zero();
        let mut data = vec![zero; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == zero {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if b != zero {
                        let c = &mut data[i * n + j];
                        *c = ring.add(*c, ring.mul(a, b));
                    }
                }
            }
        }
        Mat { n, data }
    }

    pub fn commutator<R: Ring<Elem = E>>(&self, ring: &R, other: &Mat<E>) -> Mat<E> {
        self.mul(ring, other).sub(ring, &other.mul(ring, self))
    }

    /// `g self g^-1` given `g` and its inverse.
    pub fn conjugate<R: Ring<Elem = E>>(&self, ring: &R, g: &Mat<E>, g_inv: &Mat<E>) -> Mat<E> {
        g.mul(ring, self).mul(ring, g_inv)
    }

    pub fn trace<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        (0..self.n).fold(ring.zero(), |acc, i| ring.add(acc, self.get(i, i)))
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, mut e: u64) -> Mat<E> {
        let mut acc = Mat::identity(ring, self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|&a| a == ring.zero())
    }

    pub fn is_identity<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        let (z, o) = (ring.zero(), ring.one());
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { o } else { z }))
    }

    /// Whether `self` is a scalar matrix `cI`.
    pub fn is_scalar<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        let z = ring.zero();
        let c = if self.n > 0 { self.get(0, 0) } else { z };
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { c } else { z }))
    }

    /// Determinant by unit-pivot elimination; once no unit pivot remains, the rest of the
    /// matrix is expanded by cofactors.
    pub fn det<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        let n = self.n;
        let mut a = self.data.clone();
        let mut acc = ring.one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| ring.is_unit(a[i * n + k])) else {
                let rest = n - k;
                let sub: Vec<E> = (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).map(|(i, j)| a[i * n + j]).collect();
                let sub = Mat { n: rest, data: sub };
                return ring.mul(acc, sub.det_cofactor(ring));
            };
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                acc = ring.neg(acc);
            }
            let pv = a[k * n + k];
            acc = ring.mul(acc, pv);
            let pinv = ring.inv(pv).expect("pivot is a unit");
            for i in k + 1..n {
                let factor = ring.mul(a[i * n + k], pinv);
                if factor == ring.zero() {
                    continue;
                }
                for j in k..n {
                    let t = ring.mul(factor, a[k * n + j]);
                    a[i * n + j] = ring.sub(a[i * n + j], t);
                }
            }
        }
        acc
    }

    /// Determinant by Laplace expansion along rows, memoised over column subsets.
    pub fn det_cofactor<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        let n = self.n;
        let mut dp = vec![ring.zero(); 1usize << n];
        dp[0] = ring.one();
        for mask in 0usize..(1 << n) {
            let v = dp[mask];
            if v == ring.zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let e = self.get(row, j);
                if e == ring.zero() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let t = ring.mul(v, e);
                let t = if above % 2 == 1 { ring.neg(t) } else { t };
                let m2 = mask | (1 << j);
                dp[m2] = ring.add(dp[m2], t);
            }
        }
        dp[(1 << n) - 1]
    }

    /// Inverse by Gauss-Jordan elimination with unit pivots.
    pub fn inverse<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Mat<E>> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut b = Mat::identity(ring, n).data;
        for k in 0..n {
            let piv = (k..n).find(|&i| ring.is_unit(a[i * n + k])).ok_or(Error::NotUnit)?;
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                    b.swap(k * n + j, piv * n + j);
                }
            }
            let pinv = ring.inv(a[k * n + k]).expect("pivot is a unit");
            for j in 0..n {
                a[k * n + j] = ring.mul(a[k * n + j], pinv);
                b[k * n + j] = ring.mul(b[k * n + j], pinv);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = a[i * n + k];
                if factor == ring.zero() {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] = ring.sub(a[i * n + j], ring.mul(factor, a[k * n + j]));
                    b[i * n + j] = ring.sub(b[i * n + j], ring.mul(factor, b[k * n + j]));
                }
            }
        }
        Ok(Mat { n, data: b })
    }

    /// Block diagonal sum.
    pub fn direct_sum<R: Ring<Elem = E>>(ring: &R, blocks: &[Mat<E>]) -> Mat<E> {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Mat::zero(ring, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n;
        }
        m
    }

    /// Text form: rows separated by `;`, entries by `,`. Entries whose own text contains a
    /// separator are wrapped in brackets.
    pub fn format<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        self.rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&e| {
                        let s = ring.format(e);
                        if s.contains([',', ';']) {
                            format!("[{s}]")
                        } else {
                            s
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse<R: Ring<Elem = E>>(ring: &R, s: &str) -> Result<Mat<E>> {
        let rows: Vec<Vec<E>> = split_top(s.trim(), ';')
            .iter()
            .map(|row| {
                split_top(row, ',')
                    .iter()
                    .map(|tok| {
                        let tok = tok.trim();
                        let tok = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(tok);
                        ring.parse(tok)
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Mat::from_rows(rows)
    }

    pub fn to_json<R: Ring<Elem = E>>(&self, ring: &R) -> Value {
        Value::Array(self.rows().iter().map(|r| Value::Array(r.iter().map(|&e| ring.to_json(e)).collect())).collect())
    }

    pub fn from_json<R: Ring<Elem = E>>(ring: &R, v: &Value) -> Result<Mat<E>> {
        let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let rows: Vec<Vec<E>> = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(|e| ring.from_json(e))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Mat::from_rows(rows)
    }
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Entrywise Teichmüller lift of a residue matrix.
pub fn lift_teichmuller<R: Ring>(ring: &R, x: &Mat<Fq>) -> Mat<R::Elem> {
    x.map(|a| ring.teichmuller(a))
}

/// Entrywise reduction to the residue field.
pub fn reduce_mat<R: Ring>(ring: &R, x: &Mat<R::Elem>) -> Mat<Fq> {
    x.map(|a| ring.reduce(a))
}

/// Whether a matrix over `F_q` is the image of an integer matrix (entries in `F_p`).
pub fn in_prime_field(field: &Field, x: &Mat<Fq>) -> bool {
    x.entries().iter().all(|&a| field.coeffs(a).iter().skip(1).all(|&c| c == 0))
}

/// General linear or special linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linear {
    GL,
    SL,
}

/// `|GL_n(F_q)|` or `|SL_n(F_q)|`, times `q^(n^2)` or `q^(n^2-1)` when `length == 2`.
pub fn group_order(n: u32, q: u64, constraint: Linear, length: u32) -> u128 {
    let q = q as u128;
    let qn = q.pow(n);
    let mut gl: u128 = 1;
    for i in 0..n {
        gl *= qn - q.pow(i);
    }
    let base = match constraint {
        Linear::GL => gl,
        Linear::SL => gl / (q - 1),
    };
    if length <= 1 || n == 0 {
        return base;
    }
    let kernel_exp = match constraint {
        Linear::GL => n * n,
        Linear::SL => n * n - 1,
    };
    base * q.pow(kernel_exp * (length - 1))
}
