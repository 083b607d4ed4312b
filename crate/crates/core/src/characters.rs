//! The characters `psi_{x+Z}` of `S^1`, with values held as exponents in `Z/p`, and the
//! extension criterion for `psi_{x+Z}` to `C_{S_2}(x + Z)`.
//!
//! The additive character of `F_q` is fixed as `a -> exp(2 pi i Tr_{F_q/F_p}(a) / p)`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::centralizer::{centralizer_basis, centralizer_group};
use crate::error::{check_budget, Error, Result};
use crate::group::{closure, kernel_element, kernel_generators, sl_lift, trace_zero_matrices};
use crate::linalg::rank;
use crate::matrix::{lift_teichmuller, reduce_mat, Mat};
use crate::ring::{Field, Fq, LocalRing, Ring, RingKind, R2};
use crate::stabilizer::{build_v, find_shift, lift_w};
use crate::weyr::{build_basic_weyr, read_weyr_form};

/// `psi_{x+Z}` on `S^1` for the local ring of the given kind.
#[derive(Clone, Debug)]
pub struct PsiCharacter {
    pub x: Mat<Fq>,
    pub ring: LocalRing,
}

impl PsiCharacter {
    pub fn new(field: &Field, kind: RingKind, x: Mat<Fq>) -> PsiCharacter {
        PsiCharacter { x, ring: LocalRing::new(field.clone(), kind) }
    }

    /// `rho((g - I) / pi)` for `g` in `S^1`.
    pub fn kernel_coordinate(&self, g: &Mat<R2>) -> Result<Mat<Fq>> {
        kernel_coordinate(&self.ring, g)
    }

    /// `Tr_{F_q/F_p}(Tr(x y))` where `g = I + pi s(y)`.
    pub fn value(&self, g: &Mat<R2>) -> Result<u32> {
        let y = self.kernel_coordinate(g)?;
        Ok(self.value_at(&y))
    }

    /// The exponent on `I + pi s(y)`.
    pub fn value_at(&self, y: &Mat<Fq>) -> u32 {
        let f = self.ring.field();
        f.trace(self.x.mul(f, y).trace(f))
    }
}

/// `rho((g - I) / pi)`; errors unless `g` lies in `S^1`.
pub fn kernel_coordinate(ring: &LocalRing, g: &Mat<R2>) -> Result<Mat<Fq>> {
    let n = g.n();
    if g.det(ring) != ring.one() {
        return Err(Error::InvalidArgument("element does not have determinant 1".into()));
    }
    let d = g.sub(ring, &Mat::identity(ring, n));
    let mut data = Vec::with_capacity(n * n);
    for &e in d.entries() {
        data.push(ring.div_varpi(e).ok_or_else(|| Error::InvalidArgument("element does not reduce to I".into()))?);
    }
    Mat::from_vec(n, data)
}

pub fn psi_value(field: &Field, kind: RingKind, x: &Mat<Fq>, g: &Mat<R2>) -> Result<u32> {
    PsiCharacter::new(field, kind, x.clone()).value(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

/// `psi_{g x g^-1 + Z}(h) = psi_{x+Z}(g^-1 h g)` for `h` in `S^1`, with `g` lifted to
/// `SL_n(O_2)`. Exhaustive over `S^1` when it has at most `cap` elements, otherwise on
/// `samples` random elements.
pub fn check_equivariance(
    field: &Field,
    kind: RingKind,
    x: &Mat<Fq>,
    g: &Mat<Fq>,
    cap: u64,
    samples: usize,
    seed: u64,
) -> Result<(bool, Mode)> {
    let ring = LocalRing::new(field.clone(), kind);
    let n = x.n();
    let ginv = g.inverse(field)?;
    let left = PsiCharacter::new(field, kind, x.conjugate(field, g, &ginv));
    let right = PsiCharacter::new(field, kind, x.clone());
    let ghat = sl_lift(&ring, g);
    let ghat_inv = ghat.inverse(&ring)?;
    let (ys, mode) = match trace_zero_matrices(field, n, cap) {
        Ok(all) => (all, Mode::Exhaustive),
        Err(Error::Budget { .. }) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            ((0..samples).map(|_| random_trace_zero(field, n, &mut rng)).collect(), Mode::Sampled)
        }
        Err(e) => return Err(e),
    };
    for y in &ys {
        let h = kernel_element(&ring, y);
        if left.value(&h)? != right.value(&h.conjugate(&ring, &ghat_inv, &ghat))? {
            return Ok((false, mode));
        }
    }
    Ok((true, mode))
}

pub fn random_trace_zero<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Mat<Fq> {
    let mut y = Mat::from_fn(n, |_, _| field.random(rng));
    let t = y.trace(field);
    y.set(n - 1, n - 1, field.sub(y.get(n - 1, n - 1), t));
    y
}

/// Rank over `F_p` of the pairing `(x + Z, y) -> Tr_{F_q/F_p}(Tr(x y))` between
/// `M_n(F_q)/Z` and the trace-zero matrices, with the expected full rank `f (n^2 - 1)`.
pub fn pairing_rank(field: &Field, n: usize) -> Result<(usize, usize)> {
    let fp = Field::prime(field.p())?;
    let basis = field.basis();
    let mut cosets = Vec::new();
    let mut kernel = Vec::new();
    for &b in &basis {
        for i in 0..n {
            for j in 0..n {
                if (i, j) != (0, 0) {
                    let mut m = Mat::zero(field, n);
                    m.set(i, j, b);
                    cosets.push(m);
                }
                if i == j && i + 1 == n {
                    continue;
                }
                let mut y = Mat::zero(field, n);
                y.set(i, j, b);
                if i == j {
                    y.set(n - 1, n - 1, field.neg(b));
                }
                kernel.push(y);
            }
        }
    }
    let rows: Vec<Vec<Fq>> = cosets
        .iter()
        .map(|x| kernel.iter().map(|y| Fq::from_code(field.trace(x.mul(field, y).trace(field)))).collect())
        .collect();
    Ok((rank(&fp, &rows, kernel.len()), basis.len() * (n * n - 1)))
}

/// `Tr(W(a) c) = a Tr(c)` for `c` commuting with the basic Weyr matrix `W(a)`.
pub fn trace_identity_check(field: &Field, a: Fq, partition: &[usize], c: &Mat<Fq>) -> Result<bool> {
    let w = build_basic_weyr(field, a, partition)?;
    if w.mul(field, c) != c.mul(field, &w) {
        return Err(Error::InvalidArgument("matrix does not commute with the Weyr block".into()));
    }
    Ok(w.mul(field, c).trace(field) == field.mul(a, c.trace(field)))
}

/// [`trace_identity_check`] on every element of a basis of the centraliser of `W(a)`.
pub fn trace_identity_on_basis(field: &Field, a: Fq, partition: &[usize]) -> Result<(bool, usize)> {
    let w = build_basic_weyr(field, a, partition)?;
    let basis = centralizer_basis(field, &w).basis();
    for c in &basis {
        if !trace_identity_check(field, a, partition, c)? {
            return Ok((false, basis.len()));
        }
    }
    Ok((true, basis.len()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionVerdict {
    pub extends: bool,
    pub mode: Mode,
    /// Elements of `[H, H] ∩ S^1` inspected.
    pub checked: u64,
    #[serde(skip)]
    pub witness: Option<Mat<R2>>,
}

#[derive(Clone, Copy, Debug)]
pub enum ExtensionMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
    /// Exhaustive within the budget, sampled beyond it.
    Auto { samples: usize, seed: u64 },
}

/// Decides whether `psi_{x+Z}` extends to `H = rho^-1(C_S(x + Z))`, given generators of
/// `C_S(x + Z)`: it does iff it vanishes on `[H, H] ∩ S^1`.
///
/// The exhaustive mode builds `[H, H]` as the normal closure of the generator commutators.
/// The sampled mode tests commutators `[h, k]` with `k` in `S^1`, and powers `c^m` of
/// products of commutators with `m` the order of `rho(c)`.
pub fn verify_extension(
    field: &Field,
    kind: RingKind,
    x: &Mat<Fq>,
    stab_gens: &[Mat<Fq>],
    mode: ExtensionMode,
    cap: u64,
) -> Result<ExtensionVerdict> {
    for g in stab_gens {
        let ginv = g.inverse(field)?;
        if !x.conjugate(field, g, &ginv).sub(field, x).is_scalar(field) {
            return Err(Error::InvalidArgument("generator does not stabilise x + Z".into()));
        }
    }
    commutator_criterion(field, kind, x, stab_gens, mode, cap)
}

/// Whether `psi_{x+Z}` vanishes on `[H, H] ∩ S^1` for `H` generated by `S^1` and lifts of
/// `gens`, without requiring `gens` to stabilise `x + Z`.
pub fn commutator_criterion(
    field: &Field,
    kind: RingKind,
    x: &Mat<Fq>,
    stab_gens: &[Mat<Fq>],
    mode: ExtensionMode,
    cap: u64,
) -> Result<ExtensionVerdict> {
    let n = x.n();
    let ring = LocalRing::new(field.clone(), kind);
    let psi = PsiCharacter { x: x.clone(), ring: ring.clone() };
    let mut gens: Vec<Mat<R2>> = stab_gens.iter().map(|g| sl_lift(&ring, g)).collect();
    gens.extend(kernel_generators(&ring, n));
    match mode {
        ExtensionMode::Exhaustive => exhaustive(&ring, &psi, stab_gens, &gens, cap),
        ExtensionMode::Sampled { samples, seed } => sampled(&ring, &psi, &gens, samples, seed),
        ExtensionMode::Auto { samples, seed } => match exhaustive(&ring, &psi, stab_gens, &gens, cap) {
            Err(Error::Budget { .. }) => sampled(&ring, &psi, &gens, samples, seed),
            other => other,
        },
    }
}

fn exhaustive(
    ring: &LocalRing,
    psi: &PsiCharacter,
    stab_gens: &[Mat<Fq>],
    gens: &[Mat<R2>],
    cap: u64,
) -> Result<ExtensionVerdict> {
    let f = ring.field();
    let n = psi.x.n();
    let stab = closure(f, n, stab_gens, cap)?;
    let kernel_order = (f.q() as u128).pow((n * n - 1) as u32);
    check_budget("stabiliser preimage", stab.len() as u128 * kernel_order, cap)?;
    let inv: Vec<Mat<R2>> = gens.iter().map(|g| g.inverse(ring).expect("group element")).collect();
    let mut seeds = Vec::new();
    for (a, ai) in gens.iter().zip(&inv) {
        for (b, bi) in gens.iter().zip(&inv) {
            seeds.push(a.mul(ring, b).mul(ring, ai).mul(ring, bi));
        }
    }
    let derived = normal_closure(ring, n, &seeds, gens, &inv, cap)?;
    let mut checked = 0;
    for d in &derived {
        if reduce_mat(ring, d).is_identity(f) {
            checked += 1;
            if psi.value(d)? != 0 {
                return Ok(ExtensionVerdict { extends: false, mode: Mode::Exhaustive, checked, witness: Some(d.clone()) });
            }
        }
    }
    Ok(ExtensionVerdict { extends: true, mode: Mode::Exhaustive, checked, witness: None })
}

/// The smallest subgroup containing `seeds` and stable under conjugation by `conj`.
pub fn normal_closure<R: Ring>(
    ring: &R,
    n: usize,
    seeds: &[Mat<R::Elem>],
    conj: &[Mat<R::Elem>],
    conj_inv: &[Mat<R::Elem>],
    cap: u64,
) -> Result<Vec<Mat<R::Elem>>> {
    let mut gens: Vec<Mat<R::Elem>> = Vec::new();
    let mut elems: HashSet<Mat<R::Elem>> = [Mat::identity(ring, n)].into_iter().collect();
    let mut pending: Vec<Mat<R::Elem>> = seeds.to_vec();
    loop {
        let mut grew = false;
        for c in pending.drain(..) {
            if !elems.contains(&c) {
                gens.push(c);
                elems = closure(ring, n, &gens, cap)?.into_iter().collect();
                grew = true;
            }
        }
        if !grew {
            break;
        }
        for g in &gens {
            for (t, ti) in conj.iter().zip(conj_inv) {
                let c = g.conjugate(ring, t, ti);
                if !elems.contains(&c) {
                    pending.push(c);
                }
            }
        }
        if pending.is_empty() {
            break;
        }
    }
    Ok(elems.into_iter().collect())
}

fn random_word<R: Rng>(ring: &LocalRing, gens: &[Mat<R2>], len: usize, rng: &mut R) -> Mat<R2> {
    let n = gens[0].n();
    let mut g = Mat::identity(ring, n);
    for _ in 0..len {
        g = g.mul(ring, &gens[rng.gen_range(0..gens.len())]);
    }
    g
}

fn reduced_order(field: &Field, g: &Mat<Fq>) -> u64 {
    let mut m = 1;
    let mut acc = g.clone();
    while !acc.is_identity(field) {
        acc = acc.mul(field, g);
        m += 1;
    }
    m
}

fn sampled(ring: &LocalRing, psi: &PsiCharacter, gens: &[Mat<R2>], samples: usize, seed: u64) -> Result<ExtensionVerdict> {
    let f = ring.field();
    let n = psi.x.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comm = |a: &Mat<R2>, b: &Mat<R2>| -> Mat<R2> {
        a.mul(ring, b).mul(ring, &a.inverse(ring).expect("unit")).mul(ring, &b.inverse(ring).expect("unit"))
    };
    let mut checked = 0;
    for i in 0..samples {
        let h1 = random_word(ring, gens, 24, &mut rng);
        let h2 = random_word(ring, gens, 24, &mut rng);
        let k = kernel_element(ring, &random_trace_zero(f, n, &mut rng));
        let mut c = comm(&h1, &h2);
        if i % 2 == 1 {
            let h3 = random_word(ring, gens, 24, &mut rng);
            c = c.mul(ring, &comm(&h3, &h1));
        }
        let m = reduced_order(f, &reduce_mat(ring, &c));
        for d in [comm(&h1, &k), c.pow(ring, m)] {
            checked += 1;
            if psi.value(&d)? != 0 {
                return Ok(ExtensionVerdict { extends: false, mode: Mode::Sampled, checked, witness: Some(d) });
            }
        }
    }
    Ok(ExtensionVerdict { extends: true, mode: Mode::Sampled, checked, witness: None })
}

/// The glued character `chi(c_1 + ... + c_r) = sum_i chi_{a_i}(det c_i)` on
/// `C_{S_2}(s(y))` for `y` in Weyr form with eigenvalues `a_i` in `F_q`, where
/// `chi_a(s(u)(1 + pi beta)) = Tr_{F_q/F_p}(a rho(beta))`.
#[derive(Clone, Debug, Serialize)]
pub struct GlueReport {
    pub centralizer_order: usize,
    pub homomorphism: bool,
    pub agrees_on_kernel: bool,
    /// `None` when `y + Z` has no nonzero shift.
    pub w_invariant: Option<bool>,
}

pub fn glue_check(field: &Field, kind: RingKind, y: &Mat<Fq>, cap: u64) -> Result<GlueReport> {
    let blocks = read_weyr_form(field, y).ok_or_else(|| Error::InvalidArgument("matrix is not in Weyr form".into()))?;
    let ring = LocalRing::new(field.clone(), kind);
    let sy = lift_teichmuller(&ring, y);
    let group = centralizer_group(&ring, &sy, true, cap)?;
    let mut offs = Vec::new();
    let mut o = 0;
    for (a, p) in &blocks {
        let size: usize = p.iter().sum();
        offs.push((o, size, *a));
        o += size;
    }
    let chi = |c: &Mat<R2>| -> u32 {
        let mut total = 0;
        for &(off, size, a) in &offs {
            let d = c.block(off, off, size).det(&ring);
            let u = ring.teichmuller(ring.reduce(d));
            let one_plus = ring.mul(d, ring.inv(u).expect("unit determinant"));
            let beta = ring.div_varpi(ring.sub(one_plus, ring.one())).expect("1 + pi beta");
            total += field.trace(field.mul(a, beta));
        }
        total % field.p()
    };
    let values: Vec<u32> = group.iter().map(chi).collect();
    let p = field.p();
    let mut homomorphism = true;
    let pairs = (group.len() as u128).pow(2);
    let step = if pairs <= cap as u128 { 1 } else { (pairs / cap as u128) as usize + 1 };
    let index: std::collections::HashMap<&Mat<R2>, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    'outer: for (i, a) in group.iter().enumerate() {
        for (j, b) in group.iter().enumerate().step_by(step) {
            let Some(&k) = index.get(&a.mul(&ring, b)) else {
                homomorphism = false;
                break 'outer;
            };
            if values[k] != (values[i] + values[j]) % p {
                homomorphism = false;
                break 'outer;
            }
        }
    }
    let psi = PsiCharacter { x: y.clone(), ring: ring.clone() };
    let id = Mat::identity(field, y.n());
    let mut agrees_on_kernel = true;
    for (g, &v) in group.iter().zip(&values) {
        if reduce_mat(&ring, g) == id && psi.value(g)? != v {
            agrees_on_kernel = false;
            break;
        }
    }
    let w_invariant = match find_shift(field, y)? {
        None => None,
        Some(shift) => {
            let v = build_v(field, y, &shift)?;
            let (w, _) = lift_w(&ring, &v)?;
            let winv = w.inverse(&ring)?;
            Some(group.iter().zip(&values).all(|(c, &val)| {
                let d = c.conjugate(&ring, &w, &winv);
                index.get(&d).map(|&k| values[k] == val).unwrap_or(false)
            }))
        }
    };
    Ok(GlueReport { centralizer_order: group.len(), homomorphism, agrees_on_kernel, w_invariant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::enumerate_orbits;
    use crate::weyr::example_7x7;

    #[test]
    fn psi_examples() {
        let f = Field::prime(2).unwrap();
        for kind in RingKind::ALL {
            let r = LocalRing::new(f.clone(), kind);
            let x = Mat::unit(&f, 2, 0, 1);
            let g21 = kernel_element(&r, &Mat::unit(&f, 2, 1, 0));
            let g12 = kernel_element(&r, &Mat::unit(&f, 2, 0, 1));
            assert_eq!(psi_value(&f, kind, &x, &g21).unwrap(), 1);
            assert_eq!(psi_value(&f, kind, &x, &g12).unwrap(), 0);
            assert_eq!(psi_value(&f, kind, &Mat::zero(&f, 2), &g21).unwrap(), 0);
            assert!(psi_value(&f, kind, &x, &lift_teichmuller(&r, &Mat::elementary(&f, 2, 0, 1, Fq::ONE).unwrap())).is_err());
        }
    }

    #[test]
    fn equivariance_and_pairing() {
        let f = Field::prime(2).unwrap();
        let x = Mat::from_rows(vec![vec![Fq(1), Fq(1)], vec![Fq(0), Fq(0)]]).unwrap();
        let g = Mat::from_rows(vec![vec![Fq(0), Fq(1)], vec![Fq(1), Fq(1)]]).unwrap();
        for kind in RingKind::ALL {
            assert_eq!(check_equivariance(&f, kind, &x, &g, 1000, 0, 0).unwrap(), (true, Mode::Exhaustive));
            assert!(check_equivariance(&f, kind, &x, &Mat::identity(&f, 2), 1000, 0, 0).unwrap().0);
        }
        for (p, e) in [(2, 1), (2, 2), (3, 1)] {
            let f = Field::gf(p, e).unwrap();
            for n in [2, 3] {
                let (r, full) = pairing_rank(&f, n).unwrap();
                assert_eq!(r, full);
            }
        }
    }

    #[test]
    fn trace_identity() {
        let f = Field::prime(3).unwrap();
        let (ok, dim) = trace_identity_on_basis(&f, Fq(0), &[3, 2, 2]).unwrap();
        assert!(ok);
        assert_eq!(dim, 17);
        assert!(trace_identity_on_basis(&f, Fq(2), &[2, 1]).unwrap().0);
        let w = build_basic_weyr(&f, Fq(2), &[2, 1]).unwrap();
        assert_eq!(w.trace(&f), f.mul(Fq(2), f.constant(3)));
        assert_eq!(example_7x7(&f).n(), 7);
    }

    #[test]
    fn extension_at_small_scale() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            let table = enumerate_orbits(&f, 2, 1 << 20, 1 << 20).unwrap();
            for kind in RingKind::ALL {
                for o in &table.orbits {
                    let v = verify_extension(&f, kind, &o.rep, &o.stab_gens, ExtensionMode::Exhaustive, 1 << 20).unwrap();
                    assert!(v.extends, "{kind} {:?}", o.rep);
                    let s = verify_extension(&f, kind, &o.rep, &o.stab_gens, ExtensionMode::Sampled { samples: 20, seed: 1 }, 0)
                        .unwrap();
                    assert!(s.extends);
                }
            }
        }
    }

    #[test]
    fn criterion_detects_non_invariant_characters() {
        let f = Field::prime(3).unwrap();
        let x = Mat::unit(&f, 2, 0, 1);
        let gens = crate::group::sl_generators(&f, 2);
        assert!(verify_extension(&f, RingKind::Witt2, &x, &gens, ExtensionMode::Exhaustive, 1 << 20).is_err());
        for kind in RingKind::ALL {
            let e = commutator_criterion(&f, kind, &x, &gens, ExtensionMode::Exhaustive, 1 << 20).unwrap();
            assert!(!e.extends && e.witness.is_some());
            let s = commutator_criterion(&f, kind, &x, &gens, ExtensionMode::Sampled { samples: 50, seed: 3 }, 0).unwrap();
            assert!(!s.extends);
        }
    }

    #[test]
    fn glue_examples() {
        let f = Field::prime(2).unwrap();
        for kind in RingKind::ALL {
            let y = Mat::diag(&f, &[Fq(0), Fq(1)]);
            let g = glue_check(&f, kind, &y, 1 << 20).unwrap();
            assert!(g.homomorphism && g.agrees_on_kernel);
            assert_eq!(g.w_invariant, Some(true));
            let z = glue_check(&f, kind, &Mat::zero(&f, 2), 1 << 20).unwrap();
            assert_eq!(z.centralizer_order, 48);
            assert!(z.homomorphism && z.agrees_on_kernel);
        }
        let f3 = Field::prime(3).unwrap();
        let y = Mat::diag(&f3, &[Fq(0), Fq(1), Fq(2)]);
        for kind in RingKind::ALL {
            let g = glue_check(&f3, kind, &y, 1 << 20).unwrap();
            assert_eq!(g.centralizer_order, 36);
            assert!(g.homomorphism && g.agrees_on_kernel);
            assert_eq!(g.w_invariant, Some(true));
        }
    }
}
