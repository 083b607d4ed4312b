//! Character degrees of small matrix groups from class multiplication coefficients,
//! computed modulo primes `l = 1 (mod exp G)` with `l > |G|`.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_budget, Error, Result};
use crate::group::closure;
use crate::matrix::Mat;
use crate::ring::Ring;

/// A finite group of matrices, stored as an indexed element list.
#[derive(Clone, Debug)]
pub struct FiniteGroup<R: Ring> {
    ring: R,
    n: usize,
    elements: Vec<Mat<R::Elem>>,
    index: HashMap<Mat<R::Elem>, usize>,
    inverse: Vec<usize>,
    identity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClasses {
    /// Class index of every element.
    pub class_of: Vec<usize>,
    /// Element index of a representative per class; class 0 is the identity.
    pub reps: Vec<usize>,
    pub sizes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDistribution {
    /// Number of irreducible characters of each degree.
    pub counts: BTreeMap<u64, u64>,
    pub group_order: u64,
}

impl DegreeDistribution {
    pub fn sum_of_squares(&self) -> u128 {
        self.counts.iter().map(|(&d, &c)| (d as u128) * (d as u128) * c as u128).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `sum d^2 count = |G|` and `sum count = classes`.
    pub fn check(&self, classes: usize) -> bool {
        self.sum_of_squares() == self.group_order as u128 && self.total() == classes as u64
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub distribution: DegreeDistribution,
    pub classes: usize,
    pub exponent: u64,
    /// Primes used; the results agreed for all of them.
    pub primes: Vec<u64>,
}

impl<R: Ring> FiniteGroup<R> {
    /// Checks closure under products of all pairs when `|G|^2 <= cap`, and on a
    /// deterministic sample of pairs otherwise.
    pub fn from_elements(ring: &R, elements: Vec<Mat<R::Elem>>, cap: u64) -> Result<FiniteGroup<R>> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidArgument("empty element list".into()));
        };
        let n = first.n();
        let index: HashMap<Mat<R::Elem>, usize> = elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        if index.len() != elements.len() {
            return Err(Error::InvalidArgument("repeated group elements".into()));
        }
        let identity = *index
            .get(&Mat::identity(ring, n))
            .ok_or_else(|| Error::InvalidArgument("element list lacks the identity".into()))?;
        let inverse = elements
            .iter()
            .map(|g| {
                let gi = g.inverse(ring)?;
                index.get(&gi).copied().ok_or_else(|| Error::InvalidArgument("element list not closed under inverses".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = elements.len();
        let pairs = (m as u128) * (m as u128);
        let step = if pairs <= cap as u128 { 1 } else { (pairs / cap.max(1) as u128) as usize + 1 };
        let closed = (0..m * m).into_par_iter().step_by(step).all(|t| index.contains_key(&elements[t / m].mul(ring, &elements[t % m])));
        if !closed {
            return Err(Error::InvalidArgument("element list not closed under products".into()));
        }
        Ok(FiniteGroup { ring: ring.clone(), n, elements, index, inverse, identity })
    }

    pub fn from_generators(ring: &R, n: usize, gens: &[Mat<R::Elem>], cap: u64) -> Result<FiniteGroup<R>> {
        let elements = closure(ring, n, gens, cap)?;
        FiniteGroup::from_elements(ring, elements, 0)
    }

    /// Matrix size.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat<R::Elem>] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, g: &Mat<R::Elem>) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.ring, &self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut acc = a;
        while acc != self.identity {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    pub fn conjugacy_classes(&self, cap: u64) -> Result<ConjugacyClasses> {
        let m = self.order();
        check_budget("group order for conjugacy classes", m as u128, cap)?;
        let mut class_of = vec![usize::MAX; m];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let order: Vec<usize> = std::iter::once(self.identity).chain((0..m).filter(|&i| i != self.identity)).collect();
        for x in order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            let members: Vec<usize> = (0..m)
                .into_par_iter()
                .map(|g| self.index[&self.elements[x].conjugate(&self.ring, &self.elements[g], &self.elements[self.inverse[g]])])
                .collect();
            let mut size = 0;
            for y in members {
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    size += 1;
                }
            }
            reps.push(x);
            sizes.push(size);
        }
        Ok(ConjugacyClasses { class_of, reps, sizes })
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self, classes: &ConjugacyClasses) -> u64 {
        classes.reps.iter().fold(1, |acc, &r| lcm(acc, self.element_order(r)))
    }

    /// `c[i][j][k] = #{(x, y) in C_i x C_j : x y = z_k}` for the representative `z_k`.
    pub fn class_coefficients(&self, classes: &ConjugacyClasses) -> Vec<Vec<Vec<u64>>> {
        let r = classes.reps.len();
        let per_k: Vec<Vec<Vec<u64>>> = classes
            .reps
            .par_iter()
            .map(|&z| {
                let mut c = vec![vec![0u64; r]; r];
                for x in 0..self.order() {
                    let y = self.mul(self.inverse[x], z);
                    c[classes.class_of[x]][classes.class_of[y]] += 1;
                }
                c
            })
            .collect();
        (0..r).map(|i| (0..r).map(|j| (0..r).map(|k| per_k[k][i][j]).collect()).collect()).collect()
    }

    /// Degree distribution, required to agree for two primes (or for the given primes).
    pub fn character_degrees(&self, cap: u64, primes: Option<&[u64]>) -> Result<DegreeReport> {
        let classes = self.conjugacy_classes(cap)?;
        let r = classes.reps.len();
        check_budget("class coefficient work", (r as u128) * self.order() as u128, cap.saturating_mul(64))?;
        let g = self.order() as u64;
        let e = self.exponent(&classes);
        let primes: Vec<u64> = match primes {
            Some(ps) => {
                for &l in ps {
                    if !is_prime(l) || l % e != 1 || l <= g {
                        return Err(Error::InvalidArgument(format!("prime {l} must satisfy l = 1 mod {e} and l > {g}")));
                    }
                }
                ps.to_vec()
            }
            None => {
                // a random combination separates r eigenvalues with probability >= 1 - r^2 / 2l
                let l1 = next_prime_1_mod(e, g.max(64 * (r * r) as u64));
                vec![l1, next_prime_1_mod(e, l1)]
            }
        };
        let coeff = self.class_coefficients(&classes);
        let inv_class: Vec<usize> = classes.reps.iter().map(|&x| classes.class_of[self.inverse[x]]).collect();
        let mut result: Option<DegreeDistribution> = None;
        for &l in &primes {
            let d = degrees_mod(&coeff, &classes.sizes, &inv_class, g, l)?;
            match &result {
                None => result = Some(d),
                Some(prev) if *prev != d => {
                    return Err(Error::Discrepancy(format!("degree distributions differ between primes: {prev:?} and {d:?}")));
                }
                Some(_) => {}
            }
        }
        let distribution = result.expect("at least one prime");
        if !distribution.check(r) {
            return Err(Error::Discrepancy(format!("degree distribution {distribution:?} fails the sum rules")));
        }
        Ok(DegreeReport { distribution, classes: r, exponent: e, primes })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The least prime `l > above` with `l = 1 (mod e)`.
pub fn next_prime_1_mod(e: u64, above: u64) -> u64 {
    let mut l = (above / e + 1) * e + 1;
    while !is_prime(l) {
        l += e;
    }
    l
}

fn mulm(a: u64, b: u64, l: u64) -> u64 {
    ((a as u128 * b as u128) % l as u128) as u64
}

fn powm(mut a: u64, mut e: u64, l: u64) -> u64 {
    let mut acc = 1;
    a %= l;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, l);
        }
        a = mulm(a, a, l);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, l: u64) -> u64 {
    powm(a, l - 2, l)
}

/// Characteristic polynomial mod `l` by reduction to Hessenberg form; coefficients from
/// the constant term up, monic of degree `r`.
fn char_poly_mod(m: &[Vec<u64>], l: u64) -> Vec<u64> {
    let r = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for col in 0..r.saturating_sub(2) {
        let Some(piv) = (col + 1..r).find(|&i| h[i][col] != 0) else { continue };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = invm(h[col + 1][col], l);
        for i in col + 2..r {
            let t = mulm(h[i][col], inv, l);
            if t == 0 {
                continue;
            }
            for j in 0..r {
                h[i][j] = (h[i][j] + l - mulm(t, h[col + 1][j], l)) % l;
            }
            for row in h.iter_mut() {
                row[col + 1] = (row[col + 1] + mulm(t, row[i], l)) % l;
            }
        }
    }
    // p_k = char poly of the leading k x k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..r {
        let mut next = vec![0u64; k + 2];
        for (i, &c) in polys[k].iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % l;
            next[i] = (next[i] + l - mulm(h[k][k], c, l)) % l;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = mulm(prod, h[i + 1][i], l);
            let t = mulm(prod, h[i][k], l);
            for (j, &c) in polys[i].iter().enumerate() {
                next[j] = (next[j] + l - mulm(t, c, l)) % l;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("r + 1 polynomials")
}

fn roots_mod(poly: &[u64], l: u64) -> Vec<u64> {
    let deg = poly.len() - 1;
    let mut out = Vec::new();
    for x in 0..l {
        let v = poly.iter().rev().fold(0u64, |acc, &c| (mulm(acc, x, l) + c) % l);
        if v == 0 {
            out.push(x);
            if out.len() == deg {
                break;
            }
        }
    }
    out
}

/// One-dimensional kernel of `a` mod `l`, normalised so that coordinate 0 is 1.
fn kernel_vector(a: &[Vec<u64>], l: u64) -> Option<Vec<u64>> {
    let r = a.len();
    let mut m = a.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(p) = (row..r).find(|&i| m[i][col] != 0) else { continue };
        m.swap(row, p);
        let inv = invm(m[row][col], l);
        for j in 0..r {
            m[row][j] = mulm(m[row][j], inv, l);
        }
        for i in 0..r {
            if i != row && m[i][col] != 0 {
                let t = m[i][col];
                for j in 0..r {
                    m[i][j] = (m[i][j] + l - mulm(t, m[row][j], l)) % l;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() != r - 1 {
        return None;
    }
    let free = (0..r).find(|c| !pivots.contains(c)).expect("one free column");
    let mut v = vec![0u64; r];
    v[free] = 1;
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = (l - m[i][free]) % l;
    }
    if v[0] == 0 {
        return None;
    }
    let s = invm(v[0], l);
    Some(v.into_iter().map(|x| mulm(x, s, l)).collect())
}

fn isqrt(n: u64) -> Option<u64> {
    let mut s = (n as f64).sqrt() as u64;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    (s * s == n).then_some(s)
}

fn degrees_mod(coeff: &[Vec<Vec<u64>>], sizes: &[u64], inv_class: &[usize], g: u64, l: u64) -> Result<DegreeDistribution> {
    let r = sizes.len();
    let mut counts = BTreeMap::new();
    if r == 1 {
        counts.insert(1, 1);
        return Ok(DegreeDistribution { counts, group_order: g });
    }
    for attempt in 0..32u64 {
        // sum_i a_i M_i with (M_i)_{jk} = c[i][j][k], seeded by the attempt number
        let mut rng = ChaCha8Rng::seed_from_u64(attempt);
        let a: Vec<u64> = (0..r).map(|_| rng.gen_range(0..l)).collect();
        let m: Vec<Vec<u64>> = (0..r)
            .map(|j| (0..r).map(|k| (0..r).fold(0, |acc, i| (acc + mulm(a[i], coeff[i][j][k] % l, l)) % l)).collect())
            .collect();
        let roots = roots_mod(&char_poly_mod(&m, l), l);
        if roots.len() != r {
            continue;
        }
        let mut degrees = Vec::with_capacity(r);
        for &lam in &roots {
            let shifted: Vec<Vec<u64>> =
                (0..r).map(|j| (0..r).map(|k| if j == k { (m[j][k] + l - lam) % l } else { m[j][k] }).collect()).collect();
            let Some(w) = kernel_vector(&shifted, l) else { break };
            let s = (0..r).fold(0, |acc, k| (acc + mulm(mulm(w[k], w[inv_class[k]], l), invm(sizes[k] % l, l), l)) % l);
            if s == 0 {
                break;
            }
            let d2 = mulm(g % l, invm(s, l), l);
            let Some(d) = isqrt(d2) else {
                return Err(Error::Discrepancy(format!("degree square {d2} mod {l} is not a square integer")));
            };
            degrees.push(d);
        }
        if degrees.len() != r {
            continue;
        }
        for d in degrees {
            *counts.entry(d).or_insert(0) += 1;
        }
        return Ok(DegreeDistribution { counts, group_order: g });
    }
    Err(Error::Failed(format!("no separating class-matrix combination modulo {l} after 32 attempts")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::sl_elements;
    use crate::ring::{Field, Fq};

    fn dist(pairs: &[(u64, u64)], g: u64) -> DegreeDistribution {
        DegreeDistribution { counts: pairs.iter().copied().collect(), group_order: g }
    }

    #[test]
    fn classes_and_degrees_of_small_groups() {
        let f2 = Field::prime(2).unwrap();
        let s3 = FiniteGroup::from_elements(&f2, sl_elements(&f2, 2, 100).unwrap(), 1 << 20).unwrap();
        let c = s3.conjugacy_classes(1 << 20).unwrap();
        let mut sizes = c.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(s3.character_degrees(1 << 20, None).unwrap().distribution, dist(&[(1, 2), (2, 1)], 6));
        let f3 = Field::prime(3).unwrap();
        let sl23 = FiniteGroup::from_elements(&f3, sl_elements(&f3, 2, 100).unwrap(), 1 << 20).unwrap();
        let rep = sl23.character_degrees(1 << 20, None).unwrap();
        assert_eq!(rep.classes, 7);
        assert_eq!(rep.distribution, dist(&[(1, 3), (2, 3), (3, 1)], 24));
        assert_eq!(rep.exponent, 12);
        let c3 = FiniteGroup::from_generators(&f3, 1, &[Mat::scalar(&f3, 1, Fq(2))], 10).unwrap();
        assert_eq!(c3.order(), 2);
        let f7 = Field::prime(7).unwrap();
        let c3 = FiniteGroup::from_generators(&f7, 1, &[Mat::scalar(&f7, 1, Fq(2))], 10).unwrap();
        assert_eq!(c3.character_degrees(100, None).unwrap().distribution, dist(&[(1, 3)], 3));
        let triv = FiniteGroup::from_generators(&f2, 2, &[Mat::identity(&f2, 2)], 10).unwrap();
        assert_eq!(triv.character_degrees(100, None).unwrap().distribution, dist(&[(1, 1)], 1));
    }

    #[test]
    fn larger_groups() {
        let f2 = Field::prime(2).unwrap();
        let g = FiniteGroup::from_elements(&f2, sl_elements(&f2, 3, 1000).unwrap(), 1 << 20).unwrap();
        // GL_3(F_2) = PSL_2(F_7): degrees 1, 3, 3, 6, 7, 8
        assert_eq!(g.character_degrees(1 << 20, None).unwrap().distribution, dist(&[(1, 1), (3, 2), (6, 1), (7, 1), (8, 1)], 168));
        let f4 = Field::gf(2, 2).unwrap();
        let a5 = FiniteGroup::from_elements(&f4, sl_elements(&f4, 2, 1000).unwrap(), 1 << 20).unwrap();
        assert_eq!(a5.character_degrees(1 << 20, None).unwrap().distribution, dist(&[(1, 1), (3, 2), (4, 1), (5, 1)], 60));
    }

    #[test]
    fn helpers() {
        assert_eq!(next_prime_1_mod(12, 24), 37);
        assert!(is_prime(97) && !is_prime(91));
        let m = vec![vec![2, 1], vec![0, 3]];
        assert_eq!(char_poly_mod(&m, 7), vec![6, 2, 1]);
        assert_eq!(roots_mod(&[6, 2, 1], 7), vec![2, 3]);
        assert_eq!(isqrt(49), Some(7));
        assert_eq!(isqrt(50), None);
    }
}
