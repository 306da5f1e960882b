//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element carries the order `n` of the root of unity it is written in;
//! binary operations lift both sides to the lcm order. Coordinates are taken
//! in the power basis `1, z, ..., z^(phi(n)-1)` reduced modulo the n-th
//! cyclotomic polynomial, so representations are canonical and equality is
//! coefficient-wise.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::linalg::{qint, Q};
use crate::{Error, Result};

/// Euler phi.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn poly_trim(v: &mut Vec<Q>) {
    while v.last().map(Zero::is_zero).unwrap_or(false) {
        v.pop();
    }
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo monic-after-scaling `m`.
fn poly_rem(a: &[Q], m: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead = m[dm].clone();
    while r.len() > dm {
        let dr = r.len() - 1;
        let f = &r[dr] / &lead;
        for i in 0..=dm {
            let sub = &f * &m[i];
            r[dr - dm + i] = &r[dr - dm + i] - &sub;
        }
        poly_trim(&mut r);
        if r.len() == dr + 1 {
            // Leading coefficient must have cancelled.
            r.pop();
            poly_trim(&mut r);
        }
    }
    r
}

/// Quotient and remainder.
fn poly_divmod(a: &[Q], m: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead = m[dm].clone();
    let mut q = vec![Q::zero(); r.len().saturating_sub(dm)];
    while r.len() > dm {
        let dr = r.len() - 1;
        let f = &r[dr] / &lead;
        q[dr - dm] = f.clone();
        for i in 0..=dm {
            let sub = &f * &m[i];
            r[dr - dm + i] = &r[dr - dm + i] - &sub;
        }
        r.pop();
        poly_trim(&mut r);
    }
    (q, r)
}

/// n-th cyclotomic polynomial, computed by dividing `x^n - 1` by the
/// cyclotomic polynomials of the proper divisors. Memoized.
pub fn cyclotomic_polynomial(n: u64) -> Vec<Q> {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, Vec<Q>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![qint(-1), qint(1)]
    } else {
        let mut num = vec![Q::zero(); n as usize + 1];
        num[0] = qint(-1);
        num[n as usize] = qint(1);
        let mut den = vec![qint(1)];
        for d in 1..n {
            if n % d == 0 {
                den = poly_mul(&den, &cyclotomic_polynomial(d));
            }
        }
        let (q, r) = poly_divmod(&num, &den);
        debug_assert!(r.is_empty(), "cyclotomic division must be exact");
        q
    };
    cache.lock().unwrap().insert(n, result.clone());
    result
}

/// Element of `Q(zeta_order)`.
///
/// Representations are canonical within a fixed order; equality lifts both
/// sides to the lcm order first, so the same number written over different
/// orders still compares equal.
#[derive(Debug, Clone)]
pub struct Cyc {
    order: u64,
    /// Length phi(order); coefficients of `1, z, ..., z^(phi-1)`.
    coeffs: Vec<Q>,
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let m = num_integer::lcm(self.order, other.order);
        self.lift(m).coeffs == other.lift(m).coeffs
    }
}
impl Eq for Cyc {}

impl Cyc {
    pub fn zero() -> Self {
        Cyc { order: 1, coeffs: vec![Q::zero()] }
    }

    pub fn one() -> Self {
        Cyc::from_q(Q::one())
    }

    pub fn from_q(x: Q) -> Self {
        Cyc { order: 1, coeffs: vec![x] }
    }

    pub fn from_int(x: i64) -> Self {
        Cyc::from_q(qint(x))
    }

    /// `zeta_order ^ exp`.
    pub fn root_of_unity(order: u64, exp: i64) -> Self {
        assert!(order >= 1, "order must be positive");
        let e = exp.rem_euclid(order as i64) as u64;
        let phi = euler_phi(order) as usize;
        let mut poly = vec![Q::zero(); e as usize + 1];
        poly[e as usize] = Q::one();
        let modulus = cyclotomic_polynomial(order);
        let mut coeffs = poly_rem(&poly, &modulus);
        coeffs.resize(phi, Q::zero());
        let c = Cyc { order, coeffs };
        c.compress()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Rational part if the element is rational.
    pub fn as_rational(&self) -> Option<Q> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Drop to order 1 when the element is rational.
    fn compress(self) -> Self {
        if self.order > 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            Cyc { order: 1, coeffs: vec![self.coeffs[0].clone()] }
        } else {
            self
        }
    }

    /// Rewrite in `Q(zeta_m)` for `order | m`.
    fn lift(&self, m: u64) -> Cyc {
        if m == self.order {
            return self.clone();
        }
        debug_assert_eq!(m % self.order, 0);
        let k = m / self.order;
        let modulus = cyclotomic_polynomial(m);
        let phi_m = euler_phi(m) as usize;
        // z_order^i = z_m^(i*k)
        let mut poly = vec![Q::zero(); ((self.coeffs.len() as u64 - 1) * k + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * k as usize] = c.clone();
            }
        }
        let mut coeffs = poly_rem(&poly, &modulus);
        coeffs.resize(phi_m, Q::zero());
        Cyc { order: m, coeffs }
    }

    fn common_order(&self, other: &Cyc) -> u64 {
        num_integer::lcm(self.order, other.order)
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        let m = self.common_order(other);
        let a = self.lift(m);
        let b = other.lift(m);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Cyc { order: m, coeffs }.compress()
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        let m = self.common_order(other);
        let a = self.lift(m);
        let b = other.lift(m);
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        let modulus = cyclotomic_polynomial(m);
        let mut coeffs = poly_rem(&prod, &modulus);
        coeffs.resize(euler_phi(m) as usize, Q::zero());
        Cyc { order: m, coeffs }.compress()
    }

    pub fn scale(&self, x: &Q) -> Cyc {
        Cyc {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * x).collect(),
        }
        .compress()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic modulus.
    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::NonInvertibleScalar);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Cyc::from_q(Q::one() / r));
        }
        let modulus = cyclotomic_polynomial(self.order);
        // Extended gcd of self.coeffs and modulus in Q[x].
        let mut r0 = modulus.clone();
        let mut r1 = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<Q> = vec![];
        let mut s1: Vec<Q> = vec![Q::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs1 = poly_mul(&q, &s1);
            let mut s2 = s0.clone();
            s2.resize(s2.len().max(qs1.len()), Q::zero());
            for (i, c) in qs1.iter().enumerate() {
                s2[i] = &s2[i] - c;
            }
            poly_trim(&mut s2);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd, must be a nonzero constant (the modulus is squarefree and
        // coprime to any nonzero element of smaller degree).
        if r0.len() != 1 {
            return Err(Error::NonInvertibleScalar);
        }
        let c = r0[0].clone();
        let mut coeffs: Vec<Q> = s0.iter().map(|x| x / &c).collect();
        coeffs.resize(euler_phi(self.order) as usize, Q::zero());
        Ok(Cyc { order: self.order, coeffs }.compress())
    }

    /// Complex conjugate: `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Cyc {
        if self.order == 1 {
            return self.clone();
        }
        let mut acc = Cyc::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = Cyc::root_of_unity(self.order, -(i as i64)).scale(c);
                acc = acc.add(&term);
            }
        }
        acc
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = if i == 0 {
                format!("{}", c)
            } else if c.is_one() {
                format!("z{}^{}", self.order, i)
            } else if (-c.clone()).is_one() {
                format!("-z{}^{}", self.order, i)
            } else {
                format!("{}*z{}^{}", c, self.order, i)
            };
            parts.push(body);
        }
        let mut s = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k > 0 && !p.starts_with('-') {
                s.push('+');
            }
            s.push_str(p);
        }
        write!(f, "{}", s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qfrac;

    #[test]
    fn phi_and_cyclotomics() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(25), 20);
        // Phi_4 = x^2 + 1
        let p4 = cyclotomic_polynomial(4);
        assert_eq!(p4, vec![qint(1), qint(0), qint(1)]);
        // Phi_6 = x^2 - x + 1
        let p6 = cyclotomic_polynomial(6);
        assert_eq!(p6, vec![qint(1), qint(-1), qint(1)]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2u64, 3, 4, 5, 6, 9] {
            let mut acc = Cyc::zero();
            for k in 0..n {
                acc = acc.add(&Cyc::root_of_unity(n, k as i64));
            }
            assert!(acc.is_zero(), "sum of all {}-th roots", n);
        }
    }

    #[test]
    fn mixed_order_product() {
        // zeta_2 * zeta_3 = zeta_6^5 (since -1 = z6^3, z3 = z6^2)
        let a = Cyc::root_of_unity(2, 1);
        let b = Cyc::root_of_unity(3, 1);
        let c = a.mul(&b);
        assert_eq!(c, Cyc::root_of_unity(6, 5));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Cyc::root_of_unity(5, 2)
            .scale(&qfrac(3, 7))
            .add(&Cyc::from_int(2));
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv), Cyc::one());
    }

    #[test]
    fn gauss_sum_squares_to_q_for_q_5() {
        // Quadratic Gauss sum mod 5: g = sum chi(u) zeta_5^u, g^2 = 5.
        let legendre = |u: i64| -> i64 {
            match u.rem_euclid(5) {
                1 | 4 => 1,
                2 | 3 => -1,
                _ => 0,
            }
        };
        let mut g = Cyc::zero();
        for u in 1..5 {
            g = g.add(&Cyc::root_of_unity(5, u).scale(&qint(legendre(u))));
        }
        assert_eq!(g.mul(&g), Cyc::from_int(5));
    }

    #[test]
    fn conjugation_is_involutive_ring_hom() {
        let x = Cyc::root_of_unity(9, 2).add(&Cyc::root_of_unity(9, 5).scale(&qfrac(1, 2)));
        let y = Cyc::root_of_unity(9, 7).sub(&Cyc::from_int(3));
        assert_eq!(x.conj().conj(), x);
        assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
    }
}
