//! Lifts of `e_12` of order `p`, the power formula for `(A + pX)^p` over `W_2(F_q)`, explicit
//! order-`p` lifts for `(n, p) = (3, 2), (3, 3)`, and the constant section over `F_q[t]/t^2`.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::{random_trace_zero, Mode};
use crate::error::{check_budget, Error, Result};
use crate::group::{closure, kernel_element, kernel_generators, sl_elements, trace_zero_matrices};
use crate::matrix::{lift_teichmuller, reduce_mat, Mat};
use crate::ring::{Field, Fq, LocalRing, Ring, RingKind, R2};

/// `I + E_12` over a ring.
pub fn e12<R: Ring>(ring: &R, n: usize) -> Mat<R::Elem> {
    Mat::elementary(ring, n, 0, 1, ring.one()).expect("n >= 2")
}

#[derive(Clone, Debug)]
pub struct LiftSearchResult {
    pub target: Mat<Fq>,
    pub kind: RingKind,
    /// First lift of determinant 1 and order `p`, in search order.
    pub found: Option<Mat<R2>>,
    pub search_space_size: u128,
    pub det_one_lifts: u64,
    pub order_p_lifts: u64,
    pub mode: Mode,
}

impl LiftSearchResult {
    pub fn to_json(&self, ring: &LocalRing) -> Value {
        let mut v = json!({
            "found": self.found.is_some(),
            "mode": self.mode,
            "kind": self.kind,
            "target": self.target.to_json(ring.field()),
            "search_space_size": self.search_space_size.to_string(),
            "det_one_lifts": self.det_one_lifts,
            "order_p_lifts": self.order_p_lifts,
        });
        if let Some(w) = &self.found {
            v["witness"] = w.to_json(ring);
        }
        v
    }
}

fn matrix_from_code(field: &Field, n: usize, mut code: u64) -> Mat<Fq> {
    let q = field.q() as u64;
    let mut data = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        data.push(Fq::from_code((code % q) as u32));
        code /= q;
    }
    Mat::from_vec(n, data).expect("n*n entries")
}

/// All lifts `s(target) + pi s(X)`, `X` in `M_n(F_q)`, exhaustively when `q^(n^2) <= cap` and
/// on `samples` random `X` otherwise; counts those of determinant 1 and of order `p`.
pub fn lift_order_search(
    field: &Field,
    kind: RingKind,
    target: &Mat<Fq>,
    cap: u64,
    samples: usize,
    seed: u64,
) -> Result<LiftSearchResult> {
    let ring = LocalRing::new(field.clone(), kind);
    let n = target.n();
    if target.det(field) != Fq::ONE {
        return Err(Error::InvalidArgument("target is not in SL_n(F_q)".into()));
    }
    let a = lift_teichmuller(&ring, target);
    let p = field.p() as u64;
    let space = (field.q() as u128).saturating_pow((n * n) as u32);
    let id = Mat::identity(&ring, n);
    let (xs, mode): (Vec<u64>, Mode) = if space <= cap as u128 {
        ((0..space as u64).collect(), Mode::Exhaustive)
    } else {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bound = space.min(u64::MAX as u128) as u64;
        ((0..samples).map(|_| rng.gen_range(0..bound)).collect(), Mode::Sampled)
    };
    let hits: Vec<(u64, bool)> = xs
        .par_iter()
        .filter_map(|&code| {
            let x = matrix_from_code(field, n, code);
            let g = a.add(&ring, &x.map(|c| ring.varpi_times(c)));
            (g.det(&ring) == ring.one()).then(|| (code, g.pow(&ring, p) == id))
        })
        .collect();
    let det_one = hits.len() as u64;
    let order_p: Vec<u64> = hits.iter().filter(|h| h.1).map(|h| h.0).collect();
    let found = order_p.first().map(|&c| a.add(&ring, &matrix_from_code(field, n, c).map(|c| ring.varpi_times(c))));
    Ok(LiftSearchResult {
        target: target.clone(),
        kind,
        found,
        search_space_size: space,
        det_one_lifts: det_one,
        order_p_lifts: order_p.len() as u64,
        mode,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerFormulaReport {
    pub checked: u64,
    /// `(A + pX)^p = A^p = I + p E_12` for every checked `X`.
    pub power_holds: bool,
    /// `[A^m, X] = m [A, X]` for `1 <= m <= p` and every checked `X`.
    pub commutator_holds: bool,
    pub mode: Mode,
}

/// Checks the power formula over `W_2(F_q)` with `A = I + E_12`.
pub fn verify_power_formula(field: &Field, n: usize, cap: u64, samples: usize, seed: u64) -> Result<PowerFormulaReport> {
    if field.p() < 5 {
        return Err(Error::InvalidArgument("the power formula needs p >= 5".into()));
    }
    let ring = LocalRing::witt(field.clone());
    let p = field.p() as u64;
    let pr = ring.from_int(p as i64);
    let a = e12(&ring, n);
    let id = Mat::identity(&ring, n);
    let unit = Mat::unit(&ring, n, 0, 1);
    let ap = a.pow(&ring, p);
    if ap != id.add(&ring, &unit.scale(&ring, pr)) {
        return Ok(PowerFormulaReport { checked: 0, power_holds: false, commutator_holds: false, mode: Mode::Exhaustive });
    }
    let space = (field.q() as u128).saturating_pow((n * n) as u32);
    let (codes, mode): (Vec<u64>, Mode) = if space <= cap as u128 {
        ((0..space as u64).collect(), Mode::Exhaustive)
    } else {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bound = space.min(u64::MAX as u128) as u64;
        ((0..samples).map(|_| rng.gen_range(0..bound)).collect(), Mode::Sampled)
    };
    let powers: Vec<Mat<R2>> = (1..=p).map(|m| a.pow(&ring, m)).collect();
    let results: Vec<(bool, bool)> = codes
        .par_iter()
        .map(|&code| {
            let x = lift_teichmuller(&ring, &matrix_from_code(field, n, code));
            let g = a.add(&ring, &x.scale(&ring, pr));
            let power = g.pow(&ring, p) == ap;
            let ax = a.commutator(&ring, &x);
            let comm = powers
                .iter()
                .enumerate()
                .all(|(i, am)| am.commutator(&ring, &x) == ax.scale(&ring, ring.from_int(i as i64 + 1)));
            (power, comm)
        })
        .collect();
    Ok(PowerFormulaReport {
        checked: results.len() as u64,
        power_holds: results.iter().all(|r| r.0),
        commutator_holds: results.iter().all(|r| r.1),
        mode,
    })
}

/// A square matrix over `Z/m` as integers.
pub type IntMat = Vec<Vec<i64>>;

pub fn int_mul(a: &IntMat, b: &IntMat, m: i64) -> IntMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| (acc + a[i][k] * b[k][j]).rem_euclid(m))).collect()).collect()
}

pub fn int_det(a: &IntMat, m: i64) -> i64 {
    let n = a.len();
    if n == 1 {
        return a[0][0].rem_euclid(m);
    }
    let mut total = 0;
    for j in 0..n {
        let minor: IntMat = a[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect()).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total = (total + sign * a[0][j] * int_det(&minor, m)).rem_euclid(m);
    }
    total
}

/// An integer matrix modulo `p^2` as a matrix over `W_2(F_p)`.
pub fn from_zp2(ring: &LocalRing, a: &IntMat) -> Result<Mat<R2>> {
    Mat::from_rows(a.iter().map(|r| r.iter().map(|&v| ring.from_int(v)).collect()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    pub n: usize,
    pub p: u32,
    pub matrix_mod_p2: IntMat,
    pub det: i64,
    /// `M^p mod p^2` is the identity.
    pub order_p: bool,
    /// The same checks carried out in `SL_n(W_2(F_p))`.
    pub witt_agrees: bool,
    pub reduction: IntMat,
}

#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub witnesses: Vec<WitnessCheck>,
    /// Determinants of the lifts of `e_12` with square `I` at `(n, p) = (2, 2)`.
    pub square_one_dets_2_2: Vec<i64>,
}

fn check_witness(n: usize, p: u32, m: IntMat) -> Result<WitnessCheck> {
    let q = (p * p) as i64;
    let m: IntMat = m.into_iter().map(|r| r.into_iter().map(|v| v.rem_euclid(q)).collect()).collect();
    let det = int_det(&m, q);
    let mut pw = m.clone();
    for _ in 1..p {
        pw = int_mul(&pw, &m, q);
    }
    let id: IntMat = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let order_p = pw == id;
    let ring = LocalRing::witt(Field::prime(p)?);
    let w = from_zp2(&ring, &m)?;
    let witt_agrees = (w.det(&ring) == ring.from_int(det)) && ((w.pow(&ring, p as u64) == Mat::identity(&ring, n)) == order_p);
    let reduction = m.iter().map(|r| r.iter().map(|v| v.rem_euclid(p as i64)).collect()).collect();
    Ok(WitnessCheck { n, p, matrix_mod_p2: m, det, order_p, witt_agrees, reduction })
}

/// The explicit order-`p` matrices for `(3, 2)` and `(3, 3)`, and the `(2, 2)` determinant
/// obstruction.
pub fn remark_witnesses() -> Result<RemarkReport> {
    let w32 = vec![vec![1 + 2, 1, 0], vec![0, 1, 0], vec![0, 0, 1 - 2]];
    let w33 = vec![vec![1, 1, 0], vec![-3, 1 - 3, 1], vec![0, 0, 1]];
    let witnesses = vec![check_witness(3, 2, w32)?, check_witness(3, 3, w33)?];
    let mut dets = BTreeSet::new();
    let a: IntMat = vec![vec![1, 1], vec![0, 1]];
    for code in 0..16u32 {
        let g: IntMat =
            (0..2).map(|i| (0..2).map(|j| a[i][j] + 2 * ((code >> (2 * i + j)) & 1) as i64).collect()).collect();
        if int_mul(&g, &g, 4) == vec![vec![1, 0], vec![0, 1]] {
            dets.insert(int_det(&g, 4));
        }
    }
    Ok(RemarkReport { witnesses, square_one_dets_2_2: dets.into_iter().collect() })
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionReport {
    pub group_order: usize,
    /// `rho(s(g)) = g` for every element.
    pub section: bool,
    /// `s(g h) = s(g) s(h)` on the checked pairs.
    pub homomorphism: bool,
    /// `s(g)` has the order of `g`.
    pub orders_preserved: bool,
    pub pairs_checked: u64,
    pub mode: Mode,
}

/// The constant section `a -> a + 0 t` from `SL_n(F_q)` to `SL_n(F_q[t]/t^2)`; all pairs when
/// `|S|^2 <= cap`, otherwise pairs with a generator.
pub fn dual_splitting_section(field: &Field, n: usize, cap: u64) -> Result<SectionReport> {
    let ring = LocalRing::dual(field.clone());
    let s = |g: &Mat<Fq>| -> Mat<R2> { g.map(|a| R2::new(a, Fq::ZERO)) };
    let elems = sl_elements(field, n, cap)?;
    let section = elems.iter().all(|g| reduce_mat(&ring, &s(g)) == *g && s(g).det(&ring) == ring.one());
    let order_of = |g: &Mat<R2>| {
        let mut k = 1;
        let mut acc = g.clone();
        while !acc.is_identity(&ring) {
            acc = acc.mul(&ring, g);
            k += 1;
        }
        k
    };
    let forder = |g: &Mat<Fq>| {
        let mut k = 1;
        let mut acc = g.clone();
        while !acc.is_identity(field) {
            acc = acc.mul(field, g);
            k += 1;
        }
        k
    };
    let orders_preserved = elems.iter().all(|g| order_of(&s(g)) == forder(g));
    let pairs = (elems.len() as u128).pow(2);
    let (right, mode): (Vec<Mat<Fq>>, Mode) = if pairs <= cap as u128 {
        (elems.clone(), Mode::Exhaustive)
    } else {
        (crate::group::sl_generators(field, n), Mode::Sampled)
    };
    let homomorphism = elems.par_iter().all(|g| right.iter().all(|h| s(&g.mul(field, h)) == s(g).mul(&ring, &s(h))));
    Ok(SectionReport {
        group_order: elems.len(),
        section,
        homomorphism,
        orders_preserved,
        pairs_checked: (elems.len() * right.len()) as u64,
        mode,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub order: u64,
    pub expected_order: u64,
    /// `(I + pi s(X))(I + pi s(Y)) = I + pi s(X + Y)` on the checked pairs.
    pub additive: bool,
    /// `(I + pi s(X))^p = I` for every `X`.
    pub exponent_p: bool,
    pub mode: Mode,
}

/// Structure of `K = ker(SL_n(O_2) -> SL_n(F_q))`.
pub fn kernel_structure(field: &Field, n: usize, kind: RingKind, cap: u64, seed: u64) -> Result<KernelReport> {
    let ring = LocalRing::new(field.clone(), kind);
    let expected = (field.q() as u64).pow((n * n - 1) as u32);
    check_budget("kernel elements", expected as u128, cap)?;
    let order = closure(&ring, n, &kernel_generators(&ring, n), cap)?.len() as u64;
    let ys = trace_zero_matrices(field, n, cap)?;
    let p = field.p() as u64;
    let id = Mat::identity(&ring, n);
    let exponent_p = ys.par_iter().all(|y| kernel_element(&ring, y).pow(&ring, p) == id);
    let pairs = (ys.len() as u128).pow(2);
    let check = |x: &Mat<Fq>, y: &Mat<Fq>| {
        kernel_element(&ring, x).mul(&ring, &kernel_element(&ring, y)) == kernel_element(&ring, &x.add(field, y))
    };
    let (additive, mode) = if pairs <= cap as u128 {
        (ys.par_iter().all(|x| ys.iter().all(|y| check(x, y))), Mode::Exhaustive)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ok = (0..4096).all(|_| check(&random_trace_zero(field, n, &mut rng), &random_trace_zero(field, n, &mut rng)));
        (ok, Mode::Sampled)
    };
    Ok(KernelReport { order, expected_order: expected, additive, exponent_p, mode })
}
