//! The coefficient ring for p-adic computations: `Q(zeta)[sqrt(q)]`.
//!
//! A scalar is `a + b*sqrt(q)` with `a`, `b` cyclotomic numbers and `q` the
//! residue cardinality of the ambient context. Half-integer powers of `q`
//! (from modulus characters and Satake normalizations) and roots of unity
//! (from additive characters and Gauss sums) live here together.

use std::fmt;

use num_traits::{One, Signed};

use crate::cyclotomic::Cyc;
use crate::linalg::{qint, Q};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    q: u64,
    a: Cyc,
    b: Cyc,
}

impl Scalar {
    pub fn zero(q: u64) -> Self {
        Scalar { q, a: Cyc::zero(), b: Cyc::zero() }
    }

    pub fn one(q: u64) -> Self {
        Scalar { q, a: Cyc::one(), b: Cyc::zero() }
    }

    pub fn from_q(q: u64, x: Q) -> Self {
        Scalar { q, a: Cyc::from_q(x), b: Cyc::zero() }
    }

    pub fn from_int(q: u64, x: i64) -> Self {
        Scalar::from_q(q, qint(x))
    }

    pub fn from_cyc(q: u64, c: Cyc) -> Self {
        Scalar { q, a: c, b: Cyc::zero() }
    }

    /// `q^(h/2)` for an integer `h` (possibly negative).
    pub fn q_half_pow(q: u64, h: i64) -> Self {
        let int_part = h.div_euclid(2);
        let frac = h.rem_euclid(2);
        let base = Q::new((q as i64).into(), 1.into());
        let mut val = Q::one();
        if int_part >= 0 {
            for _ in 0..int_part {
                val *= &base;
            }
        } else {
            for _ in 0..(-int_part) {
                val /= &base;
            }
        }
        if frac == 0 {
            Scalar::from_q(q, val)
        } else {
            Scalar { q, a: Cyc::zero(), b: Cyc::from_q(val) }
        }
    }

    /// Integer power of q as a rational.
    pub fn q_pow(q: u64, e: i64) -> Self {
        Scalar::q_half_pow(q, 2 * e)
    }

    pub fn residue(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.b.is_zero() {
            self.a.as_rational()
        } else {
            None
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.q, other.q, "mixing scalars over different q");
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check(other);
        Scalar { q: self.q, a: self.a.add(&other.a), b: self.b.add(&other.b) }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check(other);
        Scalar { q: self.q, a: self.a.sub(&other.a), b: self.b.sub(&other.b) }
    }

    pub fn neg(&self) -> Scalar {
        Scalar { q: self.q, a: self.a.neg(), b: self.b.neg() }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check(other);
        let qc = Cyc::from_int(self.q as i64);
        let a = self.a.mul(&other.a).add(&self.b.mul(&other.b).mul(&qc));
        let b = self.a.mul(&other.b).add(&self.b.mul(&other.a));
        Scalar { q: self.q, a, b }
    }

    pub fn scale(&self, x: &Q) -> Scalar {
        Scalar { q: self.q, a: self.a.scale(x), b: self.b.scale(x) }
    }

    pub fn inv(&self) -> Result<Scalar> {
        // (a + b s)^{-1} = (a - b s) / (a^2 - q b^2), when the norm is a unit.
        let qc = Cyc::from_int(self.q as i64);
        let norm = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&qc));
        if norm.is_zero() {
            return Err(Error::NonInvertibleScalar);
        }
        let ninv = norm.inv()?;
        Ok(Scalar {
            q: self.q,
            a: self.a.mul(&ninv),
            b: self.b.neg().mul(&ninv),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Complex conjugate (roots of unity invert; sqrt(q) is real).
    pub fn conj(&self) -> Scalar {
        Scalar { q: self.q, a: self.a.conj(), b: self.b.conj() }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.q);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact string form for reports: rational scalars print as `num/den`,
    /// anything with a sqrt(q) or cyclotomic part prints structurally.
    pub fn to_exact_string(&self) -> String {
        format!("{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            if r.is_integer() {
                return write!(f, "{}", r.to_integer());
            }
            return write!(f, "{}", r);
        }
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("q^(1/2)*({})", self.b);
        if self.a.is_zero() {
            write!(f, "{}", root)
        } else {
            write!(f, "{} + {}", self.a, root)
        }
    }
}

/// Convenience: rational comparison against an integer.
pub fn scalar_eq_int(s: &Scalar, n: i64) -> bool {
    s.as_rational().map(|r| r == qint(n)).unwrap_or(false)
}

/// True when the rational part is positive and there is no irrational part.
pub fn scalar_is_positive_rational(s: &Scalar) -> bool {
    s.as_rational().map(|r| r.is_positive()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qfrac;

    #[test]
    fn sqrt_q_squares() {
        let s = Scalar::q_half_pow(3, 1);
        assert_eq!(s.mul(&s), Scalar::from_int(3, 3));
        let t = Scalar::q_half_pow(3, -1);
        assert_eq!(s.mul(&t), Scalar::one(3));
        assert_eq!(t.mul(&t).as_rational().unwrap(), qfrac(1, 3));
    }

    #[test]
    fn mixed_inverse() {
        let x = Scalar::q_half_pow(2, 3).add(&Scalar::from_int(2, 5));
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv), Scalar::one(2));
    }

    #[test]
    fn conj_of_root() {
        let z = Scalar::from_cyc(5, Cyc::root_of_unity(5, 1));
        assert_eq!(z.mul(&z.conj()), Scalar::one(5));
    }
}
