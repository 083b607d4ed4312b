//! Linear systems over finite chain rings (fields and the length-two local rings).

use crate::ring::Ring;

/// A generator `v` of a kernel together with its order: `R v` has `q^order` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelGen<E> {
    pub vector: Vec<E>,
    pub order: u32,
}

/// Kernel of the `rows x ncols` matrix `a` acting on column vectors.
///
/// Elimination brings `a` to a diagonal form `P a Q = diag(pi^v_t)`; the kernel is
/// generated by `Q (pi^(L - v_t) e_t)` with order `v_t`, where `L` is the ring length and
/// columns past the rank count as `v_t = L`. The module is the direct sum of these cyclic
/// pieces, so it has `q^(sum of orders)` elements.
pub fn kernel<R: Ring>(ring: &R, a: &[Vec<R::Elem>], ncols: usize) -> Vec<KernelGen<R::Elem>> {
    let len = ring.length();
    let mut m: Vec<Vec<R::Elem>> = a.to_vec();
    let nrows = m.len();
    // q holds the column operations: columns of q are the new coordinates
    let mut q: Vec<Vec<R::Elem>> =
        (0..ncols).map(|i| (0..ncols).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
    let mut vals = Vec::new();
    let mut k = 0;
    while k < nrows.min(ncols) {
        // entry of least valuation in the trailing submatrix
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in k..nrows {
            for j in k..ncols {
                let v = ring.valuation(m[i][j]);
                if v < len && best.is_none_or(|b| v < b.0) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        m.swap(k, pi);
        if pj != k {
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            for row in q.iter_mut() {
                row.swap(k, pj);
            }
        }
        let pivot = m[k][k];
        for i in k + 1..nrows {
            if ring.is_zero(m[i][k]) {
                continue;
            }
            let c = ring.divide(m[i][k], pivot).expect("pivot has least valuation");
            for j in k..ncols {
                let t = ring.mul(c, m[k][j]);
                m[i][j] = ring.sub(m[i][j], t);
            }
        }
        for j in k + 1..ncols {
            if ring.is_zero(m[k][j]) {
                continue;
            }
            let c = ring.divide(m[k][j], pivot).expect("pivot has least valuation");
            for row in m.iter_mut() {
                let t = ring.mul(c, row[k]);
                row[j] = ring.sub(row[j], t);
            }
            for row in q.iter_mut() {
                let t = ring.mul(c, row[k]);
                row[j] = ring.sub(row[j], t);
            }
        }
        vals.push(v);
        k += 1;
    }
    let pi = ring.uniformizer();
    let mut gens = Vec::new();
    for t in 0..ncols {
        let v = vals.get(t).copied().unwrap_or(len);
        if v == 0 {
            continue;
        }
        let scale = ring.pow(pi, (len - v) as u64);
        let vector: Vec<R::Elem> = (0..ncols).map(|i| ring.mul(scale, q[i][t])).collect();
        gens.push(KernelGen { vector, order: v });
    }
    gens
}

/// Rank of a matrix over a field.
pub fn rank<R: Ring>(ring: &R, a: &[Vec<R::Elem>], ncols: usize) -> usize {
    debug_assert_eq!(ring.length(), 1);
    ncols - kernel(ring, a, ncols).len()
}

/// Basis of the column span over a field, as a list of the chosen independent columns
/// of `vectors` (given as a list of vectors).
pub fn independent_subset<R: Ring>(ring: &R, vectors: &[Vec<R::Elem>], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut echelon: Vec<(usize, Vec<R::Elem>)> = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (pc, row) in &echelon {
            if !ring.is_zero(w[*pc]) {
                let c = w[*pc];
                for t in 0..dim {
                    w[t] = ring.sub(w[t], ring.mul(c, row[t]));
                }
            }
        }
        if let Some(pc) = (0..dim).find(|&t| !ring.is_zero(w[t])) {
            let inv = ring.inv(w[pc]).expect("field element");
            for x in w.iter_mut() {
                *x = ring.mul(*x, inv);
            }
            for (_, row) in echelon.iter_mut() {
                if !ring.is_zero(row[pc]) {
                    let c = row[pc];
                    for t in 0..dim {
                        row[t] = ring.sub(row[t], ring.mul(c, w[t]));
                    }
                }
            }
            echelon.push((pc, w));
            chosen.push(idx);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, Fq, LocalRing, RingKind};

    fn apply<R: Ring>(r: &R, a: &[Vec<R::Elem>], v: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().map(|row| row.iter().zip(v).fold(r.zero(), |acc, (&x, &y)| r.add(acc, r.mul(x, y)))).collect()
    }

    #[test]
    fn field_kernel_has_expected_dimension() {
        let f = Field::prime(3).unwrap();
        let a = vec![vec![Fq(1), Fq(2), Fq(0)], vec![Fq(2), Fq(1), Fq(0)]];
        let k = kernel(&f, &a, 3);
        assert_eq!(k.len(), 2);
        for g in &k {
            assert_eq!(g.order, 1);
            assert!(apply(&f, &a, &g.vector).iter().all(|&x| x == Fq::ZERO));
        }
        assert_eq!(rank(&f, &a, 3), 1);
    }

    #[test]
    fn local_kernel_counts_match_brute_force() {
        for kind in RingKind::ALL {
            let r = LocalRing::new(Field::prime(2).unwrap(), kind);
            let el = r.elements();
            let two = r.uniformizer();
            let systems = vec![
                vec![vec![two, r.zero()], vec![r.zero(), r.one()]],
                vec![vec![two, two], vec![r.zero(), r.zero()]],
                vec![vec![r.one(), two], vec![two, r.one()]],
                vec![vec![r.zero(), r.zero()]],
            ];
            for a in systems {
                let gens = kernel(&r, &a, 2);
                let mut brute = 0u32;
                for &x in &el {
                    for &y in &el {
                        if apply(&r, &a, &[x, y]).iter().all(|&z| z == r.zero()) {
                            brute += 1;
                        }
                    }
                }
                let total: u32 = gens.iter().map(|g| g.order).sum();
                assert_eq!(2u32.pow(total), brute);
                for g in &gens {
                    assert!(apply(&r, &a, &g.vector).iter().all(|&z| z == r.zero()));
                }
            }
        }
    }
}
