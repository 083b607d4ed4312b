//! Dense polynomials over the prime field `Z/p`, coefficients stored constant term first.
//!
//! These back the polynomial-basis representation of `F_{p^f}`: moduli, irreducibility
//! tests and extended Euclid for inversion.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod_p(b[db], p) as u64;
    let mut rem: Vec<u32> = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u32; rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = (rem[dr] as u64 * lead_inv % p as u64) as u32;
        quot[dr - db] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let t = (c as u64 * bj as u64 % p as u64) as u32;
            rem[dr - db + j] = (rem[dr - db + j] + p - t) % p;
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s*a = g (mod m)`.
pub(crate) fn ext_gcd(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd, s0 its cofactor for `a`
    if let Some(d) = degree(&r0) {
        let li = inv_mod_p(r0[d], p);
        let scale = |v: &[u32]| -> Vec<u32> {
            let mut out: Vec<u32> = v.iter().map(|&c| (c as u64 * li as u64 % p as u64) as u32).collect();
            trim(&mut out);
            out
        };
        (scale(&r0), scale(&s0))
    } else {
        (r0, s0)
    }
}

/// Monic polynomials of the given degree, enumerated with the coefficient vector of the
/// lower terms read as a base-`p` counter (constant term fastest).
pub(crate) fn monic_of_degree(d: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d as u32);
    (0..count).map(move |mut code| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push((code % p as u64) as u32);
            code /= p as u64;
        }
        v.push(1);
        v
    })
}

/// Trial division by every monic polynomial of degree at most `deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    for k in 1..=d / 2 {
        for g in monic_of_degree(k, p) {
            let (_, r) = divrem(f, &g, p);
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}

pub(crate) fn first_irreducible(d: usize, p: u32) -> Vec<u32> {
    monic_of_degree(d, p)
        .find(|g| is_irreducible(g, p))
        .expect("irreducible polynomials exist in every degree")
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert_eq!(first_irreducible(2, 3), vec![1, 0, 1]);
    }

    #[test]
    fn ext_gcd_inverts_modulo_irreducible() {
        let m = [1, 1, 0, 1];
        for code in 1..8u32 {
            let a: Vec<u32> = (0..3).map(|i| (code >> i) & 1).collect();
            let (g, s) = ext_gcd(&a, &m, 2);
            assert_eq!(g, vec![1]);
            let (_, r) = divrem(&mul(&s, &a, 2), &m, 2);
            assert_eq!(r, vec![1]);
        }
    }
}
