//! Matrix groups given by generators: closures, `SL_n` generators, and the congruence
//! kernel `S^1 = ker(SL_n(O_2) -> SL_n(F_q))`.

use std::collections::{HashSet, VecDeque};

use crate::error::{check_budget, Result};
use crate::matrix::{lift_teichmuller, Mat};
use crate::ring::{Field, Fq, LocalRing, Ring};

/// All products of the generators, by breadth-first search from the identity.
pub fn closure<R: Ring>(ring: &R, n: usize, gens: &[Mat<R::Elem>], cap: u64) -> Result<Vec<Mat<R::Elem>>> {
    let id = Mat::identity(ring, n);
    let mut seen: HashSet<Mat<R::Elem>> = HashSet::new();
    let mut order = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.mul(ring, s);
            if seen.insert(h.clone()) {
                check_budget("group closure", seen.len() as u128, cap)?;
                order.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(order)
}

/// Additive generators of the ring: an `F_p`-basis of `F_q` through the Teichmüller map,
/// together with its multiples by the uniformizer when the ring has length two.
pub fn additive_generators<R: Ring>(ring: &R) -> Vec<R::Elem> {
    let field = ring.residue_field();
    let mut out: Vec<R::Elem> = field.basis().into_iter().map(|b| ring.teichmuller(b)).collect();
    if ring.length() == 2 {
        let pi = ring.uniformizer();
        let more: Vec<R::Elem> = out.iter().map(|&a| ring.mul(pi, a)).collect();
        out.extend(more);
    }
    out
}

/// Elementary matrices `e_ij(a)`, `i != j`, with `a` running over [`additive_generators`].
pub fn sl_generators<R: Ring>(ring: &R, n: usize) -> Vec<Mat<R::Elem>> {
    let alphas = additive_generators(ring);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &a in &alphas {
                out.push(Mat::elementary(ring, n, i, j, a).expect("i != j"));
            }
        }
    }
    out
}

pub fn sl_elements<R: Ring>(ring: &R, n: usize, cap: u64) -> Result<Vec<Mat<R::Elem>>> {
    if n == 1 {
        return Ok(vec![Mat::identity(ring, 1)]);
    }
    closure(ring, n, &sl_generators(ring, n), cap)
}

/// A lift of `h` in `SL_n(F_q)` to `SL_n(O_2)`: `diag(det(s(h))^-1, 1, ..., 1) s(h)`.
pub fn sl_lift(ring: &LocalRing, h: &Mat<Fq>) -> Mat<crate::ring::R2> {
    let s = lift_teichmuller(ring, h);
    let d = s.det(ring);
    let dinv = ring.inv(d).expect("det(h) is a unit");
    let mut out = s;
    for j in 0..h.n() {
        let v = ring.mul(dinv, out.get(0, j));
        out.set(0, j, v);
    }
    out
}

/// `I + pi s(y)` for `y` in `M_n(F_q)`.
pub fn kernel_element(ring: &LocalRing, y: &Mat<Fq>) -> Mat<crate::ring::R2> {
    let n = y.n();
    Mat::identity(ring, n).add(ring, &y.map(|a| ring.varpi_times(a)))
}

/// Generators of the elementary abelian group `S^1`: `I + pi s(b) E_ij` for `i != j` and
/// `I + pi s(b) (E_ii - E_nn)` for `i < n - 1`, with `b` running over an `F_p`-basis.
pub fn kernel_generators(ring: &LocalRing, n: usize) -> Vec<Mat<crate::ring::R2>> {
    let f = ring.field();
    let mut out = Vec::new();
    for b in f.basis() {
        for i in 0..n {
            for j in 0..n {
                if i == j && i + 1 == n {
                    continue;
                }
                let mut y = Mat::zero(f, n);
                y.set(i, j, b);
                if i == j {
                    y.set(n - 1, n - 1, f.neg(b));
                }
                out.push(kernel_element(ring, &y));
            }
        }
    }
    out
}

/// Every trace-zero `y` in `M_n(F_q)`, in a fixed order.
pub fn trace_zero_matrices(field: &Field, n: usize, cap: u64) -> Result<Vec<Mat<Fq>>> {
    let q = field.q() as u128;
    let free = n * n - 1;
    check_budget("trace-zero matrices", q.saturating_pow(free as u32), cap)?;
    let elems: Vec<Fq> = field.elements().collect();
    let total = q.pow(free as u32) as usize;
    Ok((0..total)
        .map(|mut code| {
            let mut data = Vec::with_capacity(n * n);
            let mut tr = Fq::ZERO;
            for idx in 0..free {
                let e = elems[code % elems.len()];
                code /= elems.len();
                if idx % (n + 1) == 0 {
                    tr = field.add(tr, e);
                }
                data.push(e);
            }
            data.push(field.neg(tr));
            Mat::from_vec(n, data).expect("n*n entries")
        })
        .collect())
}

/// `rho^-1(H)` in `SL_n(O_2)` for a subgroup `H` of `SL_n(F_q)` given by its elements.
pub fn preimage(ring: &LocalRing, h: &[Mat<Fq>], cap: u64) -> Result<Vec<Mat<crate::ring::R2>>> {
    let Some(first) = h.first() else { return Ok(Vec::new()) };
    let n = first.n();
    let q = ring.field().q() as u128;
    check_budget("preimage elements", (h.len() as u128).saturating_mul(q.saturating_pow((n * n - 1) as u32)), cap)?;
    let kernel: Vec<Mat<_>> =
        trace_zero_matrices(ring.field(), n, cap)?.iter().map(|y| kernel_element(ring, y)).collect();
    let mut out = Vec::with_capacity(h.len() * kernel.len());
    for g in h {
        let l = sl_lift(ring, g);
        for k in &kernel {
            out.push(l.mul(ring, k));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{group_order, reduce_mat, Linear};
    use crate::ring::RingKind;

    #[test]
    fn generator_closures_have_the_right_order() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(sl_generators(&f2, 2).len(), 2);
        assert_eq!(sl_elements(&f2, 2, 1 << 20).unwrap().len(), 6);
        let f4 = Field::gf(2, 2).unwrap();
        assert_eq!(sl_generators(&f4, 2).len(), 4);
        assert_eq!(sl_elements(&f4, 2, 1 << 20).unwrap().len(), 60);
        assert_eq!(sl_generators(&f2, 3).len(), 6);
        assert_eq!(sl_elements(&f2, 3, 1 << 20).unwrap().len(), 168);
        let id = closure(&f2, 2, &[Mat::identity(&f2, 2)], 10).unwrap();
        assert_eq!(id.len(), 1);
    }

    #[test]
    fn local_sl_orders_and_reduction() {
        for (p, n) in [(2u32, 2usize), (3, 2)] {
            for kind in RingKind::ALL {
                let r = LocalRing::new(Field::prime(p).unwrap(), kind);
                let all = sl_elements(&r, n, 1 << 20).unwrap();
                assert_eq!(all.len() as u128, group_order(n as u32, p as u64, Linear::SL, 2));
                let image: HashSet<_> = all.iter().map(|g| reduce_mat(&r, g)).collect();
                assert_eq!(image.len() as u128, group_order(n as u32, p as u64, Linear::SL, 1));
                let kernel = closure(&r, n, &kernel_generators(&r, n), 1 << 20).unwrap();
                assert_eq!(kernel.len(), (p as usize).pow((n * n - 1) as u32));
                let pre = preimage(&r, &[Mat::identity(r.field(), n)], 1 << 20).unwrap();
                let a: HashSet<_> = kernel.into_iter().collect();
                let b: HashSet<_> = pre.into_iter().collect();
                assert_eq!(a, b);
            }
        }
    }
}
