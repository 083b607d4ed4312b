//! Scalar rings: finite fields and the two length-two local rings over them.

pub(crate) mod fp_poly;
pub mod checks;
mod field;
mod local;

use std::fmt;
use std::hash::Hash;

pub use field::{extend_field, Embedding, Field, FieldSpec, Fq};
pub use local::{LocalRing, RingKind, R2};

use crate::error::Result;

/// A finite commutative chain ring with residue field [`Ring::residue_field`].
///
/// Elements are plain values; all arithmetic goes through the ring object.
pub trait Ring: Clone + fmt::Debug + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn residue_field(&self) -> &Field;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Inverse of a unit, `None` otherwise.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn is_unit(&self, a: Self::Elem) -> bool;
    /// Composition length: 1 for fields, 2 for the local rings.
    fn length(&self) -> u32;
    /// `v` such that `a = unit * uniformizer^v`; `length()` for zero.
    fn valuation(&self, a: Self::Elem) -> u32;
    fn uniformizer(&self) -> Self::Elem;
    /// Some `c` with `a * c = b`, if one exists.
    fn divide(&self, b: Self::Elem, a: Self::Elem) -> Option<Self::Elem>;
    fn reduce(&self, a: Self::Elem) -> Fq;
    /// Multiplicative section of [`Ring::reduce`], sending 0 to 0.
    fn teichmuller(&self, a: Fq) -> Self::Elem;
    fn size(&self) -> u64;
    fn elements(&self) -> Vec<Self::Elem>;
    fn format(&self, a: Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn to_json(&self, a: Self::Elem) -> serde_json::Value;
    fn from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer under `Z -> ring`.
    fn from_int(&self, m: i64) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut k = m.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        if m < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }
}

impl Ring for Field {
    type Elem = Fq;

    fn residue_field(&self) -> &Field {
        self
    }
    fn zero(&self) -> Fq {
        Fq::ZERO
    }
    fn one(&self) -> Fq {
        Fq::ONE
    }
    fn add(&self, a: Fq, b: Fq) -> Fq {
        Field::add(self, a, b)
    }
    fn neg(&self, a: Fq) -> Fq {
        Field::neg(self, a)
    }
    fn sub(&self, a: Fq, b: Fq) -> Fq {
        Field::sub(self, a, b)
    }
    fn mul(&self, a: Fq, b: Fq) -> Fq {
        Field::mul(self, a, b)
    }
    fn inv(&self, a: Fq) -> Option<Fq> {
        Field::inv(self, a)
    }
    fn is_unit(&self, a: Fq) -> bool {
        a != Fq::ZERO
    }
    fn length(&self) -> u32 {
        1
    }
    fn valuation(&self, a: Fq) -> u32 {
        u32::from(a == Fq::ZERO)
    }
    fn uniformizer(&self) -> Fq {
        Fq::ZERO
    }
    fn divide(&self, b: Fq, a: Fq) -> Option<Fq> {
        match Field::inv(self, a) {
            Some(ai) => Some(Field::mul(self, b, ai)),
            None if b == Fq::ZERO => Some(Fq::ZERO),
            None => None,
        }
    }
    fn reduce(&self, a: Fq) -> Fq {
        a
    }
    fn teichmuller(&self, a: Fq) -> Fq {
        a
    }
    fn size(&self) -> u64 {
        self.q() as u64
    }
    fn elements(&self) -> Vec<Fq> {
        Field::elements(self).collect()
    }
    fn format(&self, a: Fq) -> String {
        Field::format(self, a)
    }
    fn parse(&self, s: &str) -> Result<Fq> {
        Field::parse(self, s)
    }
    fn to_json(&self, a: Fq) -> serde_json::Value {
        Field::to_json(self, a)
    }
    fn from_json(&self, v: &serde_json::Value) -> Result<Fq> {
        Field::from_json(self, v)
    }
    fn pow(&self, a: Fq, e: u64) -> Fq {
        Field::pow(self, a, e)
    }
}
