//! The length-two local rings `W_2(F_q)` and `F_q[t]/t^2`.
//!
//! Both are written in coordinates `(a0, a1)` over `F_q`. For dual numbers the element is
//! `a0 + a1 t`. For Witt vectors `(a0, a1)` is the usual Witt vector, with addition and
//! multiplication given by the length-two Witt polynomials
//!
//! ```text
//! (a0, a1) + (b0, b1) = (a0 + b0, a1 + b1 - sum_{0<i<p} (C(p,i)/p) a0^i b0^(p-i))
//! (a0, a1) * (b0, b1) = (a0 b0, a0^p b1 + a1 b0^p)
//! ```
//!
//! In both rings the uniformizer is `(0, 1)`, i.e. `t` or `p`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{Field, Fq};
use super::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Witt2,
    Dual,
}

impl RingKind {
    pub const ALL: [RingKind; 2] = [RingKind::Witt2, RingKind::Dual];

    pub fn name(self) -> &'static str {
        match self {
            RingKind::Witt2 => "witt2",
            RingKind::Dual => "dual",
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RingKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<RingKind> {
        match s.to_ascii_lowercase().as_str() {
            "witt2" | "witt" | "w2" => Ok(RingKind::Witt2),
            "dual" | "dual-numbers" => Ok(RingKind::Dual),
            _ => Err(Error::Parse(format!("unknown ring kind {s:?}"))),
        }
    }
}

/// Element `(a0, a1)` of a length-two ring; `a0` is the residue.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct R2 {
    pub a0: Fq,
    pub a1: Fq,
}

impl R2 {
    pub const fn new(a0: Fq, a1: Fq) -> R2 {
        R2 { a0, a1 }
    }
}

#[derive(Clone)]
pub struct LocalRing {
    field: Field,
    kind: RingKind,
    // C(p,i)/p mod p for i = 1..p-1
    witt_carry: Arc<[Fq]>,
}

impl fmt::Debug for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({:?})", self.kind, self.field)
    }
}

impl PartialEq for LocalRing {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.field == other.field
    }
}

impl Eq for LocalRing {}

impl LocalRing {
    pub fn new(field: Field, kind: RingKind) -> LocalRing {
        let p = field.p() as i64;
        // C(p,i)/p = C(p-1,i-1)/i = (-1)^(i-1)/i mod p
        let witt_carry: Vec<Fq> = (1..p)
            .map(|i| {
                let sign = if (i - 1) % 2 == 0 { 1 } else { -1 };
                let inv_i = field.inv(field.constant(i)).expect("i < p is invertible");
                field.mul(field.constant(sign), inv_i)
            })
            .collect();
        LocalRing {
            field,
            kind,
            witt_carry: witt_carry.into(),
        }
    }

    pub fn witt(field: Field) -> LocalRing {
        LocalRing::new(field, RingKind::Witt2)
    }

    pub fn dual(field: Field) -> LocalRing {
        LocalRing::new(field, RingKind::Dual)
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `uniformizer * s(c)`; depends only on `c`.
    pub fn varpi_times(&self, c: Fq) -> R2 {
        match self.kind {
            RingKind::Dual => R2::new(Fq::ZERO, c),
            RingKind::Witt2 => R2::new(Fq::ZERO, self.field.frobenius(c)),
        }
    }

    /// For `e` in the maximal ideal, the residue of `e / uniformizer`.
    pub fn div_varpi(&self, e: R2) -> Option<Fq> {
        if e.a0 != Fq::ZERO {
            return None;
        }
        Some(match self.kind {
            RingKind::Dual => e.a1,
            RingKind::Witt2 => self.field.frobenius_inv(e.a1),
        })
    }

    /// For `W_2(F_p)`, the image under the isomorphism onto `Z/p^2`.
    pub fn witt_to_zp2(&self, e: R2) -> Option<u64> {
        if self.kind != RingKind::Witt2 || self.field.f() != 1 {
            return None;
        }
        let p = self.field.p() as u64;
        let m = p * p;
        let teich = crate::ring::fp_poly::pow_mod(e.a0.code() as u64, p, m);
        Some((teich + p * e.a1.code() as u64) % m)
    }

    fn witt_add(&self, a: R2, b: R2) -> R2 {
        let f = &self.field;
        let p = f.p() as usize;
        let mut carry = Fq::ZERO;
        if a.a0 != Fq::ZERO && b.a0 != Fq::ZERO {
            // sum_{i=1}^{p-1} c_i a0^i b0^(p-i)
            let mut bpow = vec![Fq::ONE; p];
            for j in 1..p {
                bpow[j] = f.mul(bpow[j - 1], b.a0);
            }
            let mut apow = Fq::ONE;
            for i in 1..p {
                apow = f.mul(apow, a.a0);
                let term = f.mul(self.witt_carry[i - 1], f.mul(apow, bpow[p - i]));
                carry = f.add(carry, term);
            }
        }
        R2::new(f.add(a.a0, b.a0), f.sub(f.add(a.a1, b.a1), carry))
    }
}

impl Ring for LocalRing {
    type Elem = R2;

    fn residue_field(&self) -> &Field {
        &self.field
    }

    fn zero(&self) -> R2 {
        R2::default()
    }

    fn one(&self) -> R2 {
        R2::new(Fq::ONE, Fq::ZERO)
    }

    fn add(&self, a: R2, b: R2) -> R2 {
        match self.kind {
            RingKind::Dual => R2::new(self.field.add(a.a0, b.a0), self.field.add(a.a1, b.a1)),
            RingKind::Witt2 => self.witt_add(a, b),
        }
    }

    fn neg(&self, a: R2) -> R2 {
        let f = &self.field;
        match self.kind {
            RingKind::Witt2 if f.p() == 2 => {
                // -1 = (1, 1), so -(a0, a1) = (a0, a1 + a0^2)
                R2::new(a.a0, f.add(a.a1, f.mul(a.a0, a.a0)))
            }
            _ => R2::new(f.neg(a.a0), f.neg(a.a1)),
        }
    }

    fn mul(&self, a: R2, b: R2) -> R2 {
        let f = &self.field;
        match self.kind {
            RingKind::Dual => R2::new(f.mul(a.a0, b.a0), f.add(f.mul(a.a0, b.a1), f.mul(a.a1, b.a0))),
            RingKind::Witt2 => R2::new(
                f.mul(a.a0, b.a0),
                f.add(f.mul(f.frobenius(a.a0), b.a1), f.mul(a.a1, f.frobenius(b.a0))),
            ),
        }
    }

    fn inv(&self, a: R2) -> Option<R2> {
        let f = &self.field;
        let c0 = f.inv(a.a0)?;
        let c1 = match self.kind {
            // a0 c1 + a1 c0 = 0
            RingKind::Dual => f.neg(f.mul(a.a1, f.mul(c0, c0))),
            // a0^p c1 + a1 c0^p = 0
            RingKind::Witt2 => {
                let c0p = f.frobenius(c0);
                f.neg(f.mul(a.a1, f.mul(c0p, c0p)))
            }
        };
        Some(R2::new(c0, c1))
    }

    fn is_unit(&self, a: R2) -> bool {
        a.a0 != Fq::ZERO
    }

    fn length(&self) -> u32 {
        2
    }

    fn valuation(&self, a: R2) -> u32 {
        if a.a0 != Fq::ZERO {
            0
        } else if a.a1 != Fq::ZERO {
            1
        } else {
            2
        }
    }

    fn uniformizer(&self) -> R2 {
        R2::new(Fq::ZERO, Fq::ONE)
    }

    fn divide(&self, b: R2, a: R2) -> Option<R2> {
        match self.valuation(a) {
            0 => Some(self.mul(b, self.inv(a)?)),
            1 => {
                let beta = self.div_varpi(b)?;
                let alpha = self.div_varpi(a)?;
                let ratio = self.field.mul(beta, self.field.inv(alpha)?);
                Some(R2::new(ratio, Fq::ZERO))
            }
            _ => (b == R2::default()).then(R2::default),
        }
    }

    fn reduce(&self, a: R2) -> Fq {
        a.a0
    }

    fn teichmuller(&self, a: Fq) -> R2 {
        R2::new(a, Fq::ZERO)
    }

    fn size(&self) -> u64 {
        let q = self.field.q() as u64;
        q * q
    }

    fn elements(&self) -> Vec<R2> {
        let f = &self.field;
        f.elements().flat_map(|a0| f.elements().map(move |a1| R2::new(a0, a1))).collect()
    }

    fn format(&self, a: R2) -> String {
        format!("{};{}", self.field.format(a.a0), self.field.format(a.a1))
    }

    /// `"a0;a1"` with each coordinate in field form; a bare `"a0"` is its Teichmüller lift.
    fn parse(&self, s: &str) -> Result<R2> {
        match s.split_once(';') {
            Some((x, y)) => Ok(R2::new(self.field.parse(x)?, self.field.parse(y)?)),
            None => Ok(R2::new(self.field.parse(s)?, Fq::ZERO)),
        }
    }

    fn to_json(&self, a: R2) -> serde_json::Value {
        serde_json::Value::Array(vec![self.field.to_json(a.a0), self.field.to_json(a.a1)])
    }

    fn from_json(&self, v: &serde_json::Value) -> Result<R2> {
        match v {
            serde_json::Value::Array(xs) if xs.len() == 2 => {
                Ok(R2::new(self.field.from_json(&xs[0])?, self.field.from_json(&xs[1])?))
            }
            serde_json::Value::String(s) => self.parse(s),
            other => Err(Error::Parse(format!("expected [a0, a1], got {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn e(a0: u32, a1: u32) -> R2 {
        R2::new(Fq(a0), Fq(a1))
    }

    #[test]
    fn witt_examples_match_integer_oracle() {
        let w2 = LocalRing::witt(fp(2));
        assert_eq!(w2.add(e(1, 0), e(1, 0)), e(0, 1));
        assert_eq!(w2.mul(e(1, 1), e(1, 1)), e(1, 0));
        for x in w2.elements() {
            assert_eq!(w2.add(R2::default(), x), x);
            assert_eq!(w2.mul(w2.one(), x), x);
        }
        let w3 = LocalRing::witt(fp(3));
        // teich(2) = 8 in Z/9, so 1 + 8 = 0 and 8 * 8 = 1
        assert_eq!(w3.add(e(1, 0), e(2, 0)), e(0, 0));
        assert_eq!(w3.mul(e(2, 0), e(2, 0)), e(1, 0));
        // the integer 2 is (2, 1): 1 + 2 = 3 = (0, 1)
        assert_eq!(w3.from_int(2), e(2, 1));
        assert_eq!(w3.add(e(1, 0), e(2, 1)), e(0, 1));
    }

    #[test]
    fn dual_examples() {
        let d = LocalRing::dual(fp(2));
        assert_eq!(d.mul(e(0, 1), e(0, 1)), e(0, 0));
        assert_eq!(d.mul(e(1, 1), e(1, 1)), e(1, 0));
        assert_eq!(d.add(e(1, 1), e(0, 0)), e(1, 1));
    }

    #[test]
    fn teichmuller_is_multiplicative_section() {
        for kind in RingKind::ALL {
            let r = LocalRing::new(Field::gf(3, 2).unwrap(), kind);
            let f = r.field().clone();
            for a in f.elements() {
                assert_eq!(r.reduce(r.teichmuller(a)), a);
                for b in f.elements() {
                    assert_eq!(r.teichmuller(f.mul(a, b)), r.mul(r.teichmuller(a), r.teichmuller(b)));
                }
            }
            assert_eq!(r.teichmuller(Fq::ZERO), r.zero());
        }
    }

    #[test]
    fn additive_order_of_one_distinguishes_the_rings() {
        for p in [2, 3, 5] {
            let w = LocalRing::witt(fp(p));
            let d = LocalRing::dual(fp(p));
            assert_ne!(w.from_int(p as i64), w.zero());
            assert_eq!(d.from_int(p as i64), d.zero());
            assert_eq!(w.from_int((p * p) as i64), w.zero());
        }
    }

    #[test]
    fn divide_and_varpi_helpers() {
        for kind in RingKind::ALL {
            let r = LocalRing::new(Field::gf(2, 2).unwrap(), kind);
            let elems = r.elements();
            for &a in &elems {
                for &b in &elems {
                    let expect = elems.iter().any(|&c| r.mul(a, c) == b);
                    match r.divide(b, a) {
                        Some(c) => assert_eq!(r.mul(a, c), b),
                        None => assert!(!expect),
                    }
                }
                if a.a0 == Fq::ZERO {
                    let c = r.div_varpi(a).unwrap();
                    assert_eq!(r.varpi_times(c), a);
                }
            }
        }
    }
}
