//! Univariate polynomials over `F_q`, characteristic polynomials and root finding.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{extend_field, Embedding, Field, Fq};

/// Coefficients, constant term first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(pub Vec<Fq>);

impl Poly {
    pub fn new(mut c: Vec<Fq>) -> Poly {
        while c.last() == Some(&Fq::ZERO) {
            c.pop();
        }
        Poly(c)
    }

    pub fn monomial(c: Fq, deg: usize) -> Poly {
        let mut v = vec![Fq::ZERO; deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new(
            (0..n)
                .map(|i| f.add(*self.0.get(i).unwrap_or(&Fq::ZERO), *o.0.get(i).unwrap_or(&Fq::ZERO)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly(self.0.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly::default();
        }
        let mut out = vec![Fq::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == Fq::ZERO {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn eval(&self, f: &Field, x: Fq) -> Fq {
        self.0.iter().rev().fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Division by the monic linear factor `X - r`, assuming `r` is a root.
    fn deflate(&self, f: &Field, r: Fq) -> Poly {
        let d = self.0.len() - 1;
        let mut q = vec![Fq::ZERO; d];
        let mut carry = Fq::ZERO;
        for i in (0..d).rev() {
            carry = f.add(self.0[i + 1], f.mul(carry, r));
            q[i] = carry;
        }
        Poly::new(q)
    }

    pub fn map(&self, e: &Embedding) -> Poly {
        Poly::new(self.0.iter().map(|&c| e.apply(c)).collect())
    }

    /// Roots in `f` with multiplicity, each root listed once, in element order.
    pub fn roots(&self, f: &Field) -> Vec<(Fq, usize)> {
        let mut out = Vec::new();
        let mut rest = self.clone();
        for a in f.elements() {
            let mut m = 0;
            while rest.degree().unwrap_or(0) > 0 && rest.eval(f, a) == Fq::ZERO {
                rest = rest.deflate(f, a);
                m += 1;
            }
            if m > 0 {
                out.push((a, m));
            }
        }
        out
    }

    pub fn format(&self, f: &Field) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == Fq::ZERO {
                continue;
            }
            let cs = f.format(c);
            let cs = if cs.contains(',') { format!("({cs})") } else { cs };
            terms.push(match (i, c == Fq::ONE) {
                (0, _) => cs,
                (1, true) => "X".into(),
                (1, false) => format!("{cs}*X"),
                (_, true) => format!("X^{i}"),
                (_, false) => format!("{cs}*X^{i}"),
            });
        }
        terms.join(" + ")
    }
}

/// `det(X I - a)`, by cofactor expansion memoised over column subsets.
pub fn char_poly(f: &Field, a: &Mat<Fq>) -> Poly {
    let n = a.n();
    let entry = |i: usize, j: usize| -> Poly {
        let c = f.neg(a.get(i, j));
        if i == j {
            Poly::new(vec![c, Fq::ONE])
        } else {
            Poly::new(vec![c])
        }
    };
    let mut dp = vec![Poly::default(); 1usize << n];
    dp[0] = Poly::new(vec![Fq::ONE]);
    for mask in 0usize..(1 << n) {
        if dp[mask].0.is_empty() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        let v = dp[mask].clone();
        for j in 0..n {
            if mask & (1 << j) != 0 {
                continue;
            }
            let e = entry(row, j);
            if e.0.is_empty() {
                continue;
            }
            let mut t = v.mul(f, &e);
            if (mask >> (j + 1)).count_ones() % 2 == 1 {
                t = t.neg(f);
            }
            let m2 = mask | (1 << j);
            dp[m2] = dp[m2].add(f, &t);
        }
    }
    dp[(1 << n) - 1].clone()
}

/// Smallest extension `k = F_{q^m}` over which `poly` splits, with its embedding and the
/// roots in `k` with multiplicities. Extensions larger than `max_size` are refused.
pub fn splitting_field(f: &Field, poly: &Poly, max_size: u64) -> Result<(Field, Embedding, Vec<(Fq, usize)>)> {
    let deg = poly.degree().unwrap_or(0);
    let mut m = 1u32;
    loop {
        let size = (f.q() as u64).checked_pow(m).unwrap_or(u64::MAX);
        if size > max_size {
            return Err(Error::Budget {
                what: "splitting field".into(),
                required: size as u128,
                cap: max_size as u128,
            });
        }
        let (k, emb) = extend_field(f, m)?;
        let roots = poly.map(&emb).roots(&k);
        if roots.iter().map(|r| r.1).sum::<usize>() == deg {
            return Ok((k, emb, roots));
        }
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_diagonal_and_zero() {
        let f = Field::prime(5).unwrap();
        let z = Mat::zero(&f, 2);
        assert_eq!(char_poly(&f, &z), Poly::monomial(Fq::ONE, 2));
        let d = Mat::diag(&f, &[Fq(2), Fq(3)]);
        let expect = Poly::new(vec![f.neg(Fq(2)), Fq::ONE]).mul(&f, &Poly::new(vec![f.neg(Fq(3)), Fq::ONE]));
        assert_eq!(char_poly(&f, &d), expect);
    }

    #[test]
    fn companion_splits_in_quadratic_extension() {
        let f = Field::prime(2).unwrap();
        // companion of u^2 + u + 1
        let c = Mat::from_rows(vec![vec![Fq(0), Fq(1)], vec![Fq(1), Fq(1)]]).unwrap();
        let (k, _, roots) = splitting_field(&f, &char_poly(&f, &c), 1 << 20).unwrap();
        assert_eq!(k.q(), 4);
        assert_eq!(roots.len(), 2);
        for (r, m) in roots {
            assert_eq!(m, 1);
            assert_eq!(k.add(k.mul(r, r), k.add(r, Fq::ONE)), Fq::ZERO);
        }
    }

    #[test]
    fn lcm_larger_than_degree_bound() {
        // degree 2 and degree 3 irreducible factors: splits only over F_64
        let f = Field::prime(2).unwrap();
        let c2 = Mat::from_rows(vec![vec![Fq(0), Fq(1)], vec![Fq(1), Fq(1)]]).unwrap();
        let c3 = Mat::from_rows(vec![
            vec![Fq(0), Fq(0), Fq(1)],
            vec![Fq(1), Fq(0), Fq(1)],
            vec![Fq(0), Fq(1), Fq(0)],
        ])
        .unwrap();
        let m = Mat::direct_sum(&f, &[c2, c3]);
        let (k, _, roots) = splitting_field(&f, &char_poly(&f, &m), 1 << 20).unwrap();
        assert_eq!(k.q(), 64);
        assert_eq!(roots.len(), 5);
    }
}
