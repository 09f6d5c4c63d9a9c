//! Finite fields GF(p^m).
//!
//! An element of GF(p^m) is a polynomial of degree < m over GF(p), reduced
//! modulo a fixed monic irreducible. Elements are stored as the base-p integer
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` of their coefficient vector, so the
//! representation is canonical and equality is structural. For `m = 1` the
//! encoding is simply the residue.
//!
//! ```
//! use subcode::field::{FieldContext, FieldPolicy};
//!
//! let gf4 = FieldContext::make_field(4, FieldPolicy::SmallestPrimePower).unwrap();
//! let x = gf4.from_encoding(2).unwrap(); // the class of x
//! assert_eq!(gf4.mul(x, x).encoding(), 3); // x^2 = x + 1
//! ```

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest characteristic accepted by [`FieldContext::make_field`].
pub const MAX_CHARACTERISTIC: u64 = 1 << 20;
/// Largest extension degree accepted by [`FieldContext::make_field`].
pub const MAX_DEGREE: u32 = 16;
/// Largest prime accepted by [`FieldContext::prime`].
pub const MAX_LARGE_PRIME: u64 = 1 << 62;

/// Exp/log tables are built for extension fields up to this order.
const TABLE_LIMIT: u64 = 1 << 16;

/// Canonical encoding of an element of some [`FieldContext`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Base-p digit encoding of the coefficient vector.
    #[inline]
    pub fn encoding(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How [`FieldContext::make_field`] picks the field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldPolicy {
    /// Least prime `>= min_size`.
    SmallestPrime,
    /// Least prime power `>= min_size`.
    SmallestPrimePower,
    /// Exactly this order; must be a prime power `>= min_size`.
    Forced(u64),
}

struct Tables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, ascending coefficients, length `m + 1`. `[0, 1]` when `m = 1`.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// The field GF(p^m). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldContext {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// Builds a field with at least `min_size` elements according to `policy`.
    pub fn make_field(min_size: u64, policy: FieldPolicy) -> Result<FieldContext> {
        if min_size < 2 {
            return Err(Error::InvalidFieldRequest(format!(
                "minimum size must be at least 2, got {min_size}"
            )));
        }
        let (p, m) = match policy {
            FieldPolicy::SmallestPrime => {
                let mut c = min_size;
                while !is_prime(c) {
                    c += 1;
                }
                (c, 1)
            }
            FieldPolicy::SmallestPrimePower => {
                let mut c = min_size;
                loop {
                    if let Some(pm) = prime_power(c) {
                        break pm;
                    }
                    c += 1;
                }
            }
            FieldPolicy::Forced(q) => {
                let pm = prime_power(q).ok_or(Error::NotPrimePower(q))?;
                if q < min_size {
                    return Err(Error::InvalidFieldRequest(format!(
                        "forced q = {q} is below the required size {min_size}"
                    )));
                }
                pm
            }
        };
        FieldContext::with_params(p, m)
    }

    /// GF(p^m) with the lexicographically least monic irreducible modulus.
    pub fn with_params(p: u64, m: u32) -> Result<FieldContext> {
        let too_large = Error::FieldTooLarge {
            p,
            m: m as u64,
            p_cap: MAX_CHARACTERISTIC,
            m_cap: MAX_DEGREE,
        };
        if p > MAX_CHARACTERISTIC || m > MAX_DEGREE {
            return Err(too_large);
        }
        if m == 0 || !is_prime(p) {
            return Err(Error::InvalidFieldRequest(format!("GF({p}^{m}) is not a field")));
        }
        let q = checked_pow(p, m).filter(|&q| q < 1 << 63).ok_or(too_large)?;
        if m == 1 {
            return Ok(Self::prime_unchecked(p));
        }
        let modulus = least_irreducible(p, m as usize);
        Ok(Self::extension(p, m, q, modulus))
    }

    /// GF(p^m) with an explicit monic modulus (ascending coefficients, length
    /// `m + 1`), which must be irreducible. Used when reloading stored designs.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<FieldContext> {
        let m = modulus.len().saturating_sub(1) as u32;
        if m <= 1 {
            return if modulus == [0, 1] || m == 0 && modulus.is_empty() {
                FieldContext::with_params(p, 1)
            } else {
                Err(Error::InvalidFieldRequest(format!(
                    "prime-field modulus must be [0, 1], got {modulus:?}"
                )))
            };
        }
        let ctx = FieldContext::with_params(p, m)?;
        if modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) || !is_irreducible(modulus, p) {
            return Err(Error::InvalidFieldRequest(format!(
                "{modulus:?} is not a monic irreducible over GF({p})"
            )));
        }
        if modulus == ctx.modulus() {
            return Ok(ctx);
        }
        Ok(Self::extension(p, m, ctx.order(), modulus.to_vec()))
    }

    /// The prime field GF(p) for a prime `p <= 2^62`, outside the general size
    /// cap. Used for polynomial identity testing.
    pub fn prime(p: u64) -> Result<FieldContext> {
        if p > MAX_LARGE_PRIME || !is_prime(p) {
            return Err(Error::InvalidFieldRequest(format!("{p} is not a prime below 2^62")));
        }
        Ok(Self::prime_unchecked(p))
    }

    fn prime_unchecked(p: u64) -> FieldContext {
        FieldContext {
            inner: Arc::new(Inner {
                p,
                m: 1,
                q: p,
                modulus: vec![0, 1],
                tables: None,
            }),
        }
    }

    fn extension(p: u64, m: u32, q: u64, modulus: Vec<u64>) -> FieldContext {
        let mut ctx = FieldContext {
            inner: Arc::new(Inner {
                p,
                m,
                q,
                modulus,
                tables: None,
            }),
        };
        if q <= TABLE_LIMIT {
            let tables = ctx.build_tables();
            Arc::get_mut(&mut ctx.inner).expect("fresh context").tables = Some(tables);
        }
        ctx
    }

    fn build_tables(&self) -> Tables {
        let q = self.inner.q;
        let order = q - 1;
        let factors = prime_factors(order);
        let generator = (2..q)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_slow(g, order / r) != FieldElement::ONE)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; q as usize];
        let mut acc = FieldElement::ONE;
        for i in 0..order {
            exp.push(acc.0);
            log[acc.0 as usize] = i as u32;
            acc = self.mul_poly(acc, generator);
        }
        exp.extend_from_within(..);
        Tables { exp, log }
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.inner.q
    }

    /// Monic modulus in ascending coefficient order (length `m + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with the given canonical encoding.
    pub fn from_encoding(&self, value: u64) -> Result<FieldElement> {
        if value < self.inner.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::Malformed(format!(
                "{value} is not an element encoding of GF({})",
                self.inner.q
            )))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, value: i64) -> FieldElement {
        FieldElement(value.rem_euclid(self.inner.p as i64) as u64)
    }

    /// Coefficient vector (length `m`, ascending powers of the generator).
    pub fn coefficients(&self, a: FieldElement) -> Vec<u64> {
        let p = self.inner.p;
        let mut v = a.0;
        (0..self.inner.m)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.inner.m as usize || coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::Malformed(format!(
                "coefficient vector {coeffs:?} is not canonical for GF({})",
                self.inner.q
            )));
        }
        Ok(FieldElement(self.encode_digits(coeffs)))
    }

    /// All `q` elements in encoding order, starting `0, 1, ...`.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(FieldElement)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.inner.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.inner.q))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.m == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y| (x + y) % p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.m == 1 {
            return FieldElement(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p - b.0 });
        }
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y| (x + p - y) % p)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(FieldElement::ZERO, a)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.inner.m == 1 {
            return FieldElement(((a.0 as u128 * b.0 as u128) % self.inner.p as u128) as u64);
        }
        match &self.inner.tables {
            Some(t) => {
                let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                FieldElement(t.exp[i])
            }
            None => self.mul_poly(a, b),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        if self.inner.m == 1 {
            return Ok(FieldElement(inv_mod(a.0, self.inner.p)));
        }
        match &self.inner.tables {
            Some(t) => {
                let order = self.inner.q - 1;
                let l = t.log[a.0 as usize] as u64;
                Ok(FieldElement(t.exp[((order - l) % order) as usize]))
            }
            None => Ok(self.pow_slow(a, self.inner.q - 2)),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `sum_i a_i b_i`.
    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter()
            .zip(b)
            .fold(FieldElement::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    fn pow_slow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    fn digitwise(&self, a: FieldElement, b: FieldElement, op: impl Fn(u64, u64) -> u64) -> FieldElement {
        let p = self.inner.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.inner.m {
            out += op(x % p, y % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    fn encode_digits(&self, digits: &[u64]) -> u64 {
        let p = self.inner.p;
        digits.iter().rev().fold(0u64, |acc, &d| acc * p + d)
    }

    /// Schoolbook product of the coefficient vectors reduced by the modulus.
    fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p;
        let m = self.inner.m as usize;
        let x = self.coefficients(a);
        let y = self.coefficients(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + xi as u128 * yj as u128) % p as u128) as u64;
            }
        }
        reduce_mod(&mut prod, &self.inner.modulus, p);
        prod.truncate(m);
        FieldElement(self.encode_digits(&prod))
    }
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    (0..exp).try_fold(1u64, |acc, _| acc.checked_mul(base))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// `Some((p, m))` when `q = p^m` with `p <= MAX_CHARACTERISTIC` and `m <= MAX_DEGREE`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    if is_prime(q) {
        return (q <= MAX_CHARACTERISTIC).then_some((q, 1));
    }
    let mut p = 2u64;
    while p <= MAX_CHARACTERISTIC && p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut m = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                m += 1;
            }
            return (rest == 1 && m <= MAX_DEGREE).then_some((p, m));
        }
        p += 1;
    }
    None
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over GF(p) with u64 coefficients, ascending order. Only
// used to find and apply the modulus, before a context exists.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Reduces `a` modulo the monic `f` in place.
fn reduce_mod(a: &mut Vec<u64>, f: &[u64], p: u64) {
    let df = f.len() - 1;
    trim(a);
    while a.len() > df {
        let lead = *a.last().expect("nonempty");
        let shift = a.len() - 1 - df;
        for (i, &fi) in f.iter().enumerate() {
            let sub = mul_mod(lead, fi, p);
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(a);
    }
}

fn mulmod_poly(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    reduce_mod(&mut prod, f, p);
    prod
}

fn powmod_poly(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    reduce_mod(&mut b, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_poly(&acc, &b, f, p);
        }
        b = mulmod_poly(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn gcd_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let lead_inv = inv_mod(*y.last().expect("nonempty"), p);
        let monic: Vec<u64> = y.iter().map(|&c| mul_mod(c, lead_inv, p)).collect();
        reduce_mod(&mut x, &monic, p);
        std::mem::swap(&mut x, &mut y);
    }
    x
}

/// `x^(p^e) mod f`.
fn frobenius_power(f: &[u64], e: usize, p: u64) -> Vec<u64> {
    let mut h = vec![0, 1];
    for _ in 0..e {
        h = powmod_poly(&h, p, f, p);
    }
    h
}

/// Rabin's irreducibility test for a monic `f` of degree `m` over GF(p).
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    let mut x = vec![0, 1];
    reduce_mod(&mut x, f, p);
    if frobenius_power(f, m, p) != x {
        return false;
    }
    prime_factors(m as u64).into_iter().all(|d| {
        let mut h = frobenius_power(f, m / d as usize, p);
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        let g = gcd_poly(f, &h, p);
        g.len() == 1
    })
}

/// Least monic irreducible of degree `m`, ordering candidates by the base-p
/// integer of their lower coefficients `c_0 + c_1 p + ...`.
fn least_irreducible(p: u64, m: usize) -> Vec<u64> {
    let mut lower = vec![0u64; m];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // odometer increment, c_0 fastest
        for digit in lower.iter_mut() {
            *digit += 1;
            if *digit < p {
                break;
            }
            *digit = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> FieldContext {
        FieldContext::make_field(q, FieldPolicy::Forced(q)).unwrap()
    }

    /// Independent prime-power test by enumerating all `p^m` for small p, m.
    fn is_prime_power_oracle(q: u64) -> bool {
        (2..=q).filter(|&p| (2..p).all(|d| p % d != 0)).any(|p| {
            let mut v = p;
            while v < q {
                v *= p;
            }
            v == q
        })
    }

    #[test]
    fn smallest_prime_power_matches_enumeration() {
        for min in 2..200u64 {
            let expected = (min..).find(|&c| is_prime_power_oracle(c)).unwrap();
            let ctx = FieldContext::make_field(min, FieldPolicy::SmallestPrimePower).unwrap();
            assert_eq!(ctx.order(), expected, "min_size {min}");
        }
    }

    #[test]
    fn make_field_examples() {
        let f7 = FieldContext::make_field(7, FieldPolicy::SmallestPrimePower).unwrap();
        assert_eq!((f7.order(), f7.degree()), (7, 1));
        let f9 = FieldContext::make_field(9, FieldPolicy::SmallestPrimePower).unwrap();
        assert_eq!((f9.characteristic(), f9.degree(), f9.order()), (3, 2, 9));
        let f2 = FieldContext::make_field(2, FieldPolicy::SmallestPrime).unwrap();
        assert_eq!(f2.order(), 2);
        let f = FieldContext::make_field(6, FieldPolicy::SmallestPrime).unwrap();
        assert_eq!(f.order(), 7);
        let f = FieldContext::make_field(6, FieldPolicy::SmallestPrimePower).unwrap();
        assert_eq!(f.order(), 7);
        let f = FieldContext::make_field(8, FieldPolicy::SmallestPrimePower).unwrap();
        assert_eq!(f.order(), 8);
    }

    #[test]
    fn make_field_errors() {
        assert_eq!(
            FieldContext::make_field(2, FieldPolicy::Forced(12)).unwrap_err(),
            Error::NotPrimePower(12)
        );
        assert!(FieldContext::make_field(1, FieldPolicy::SmallestPrime).is_err());
        assert!(FieldContext::make_field(10, FieldPolicy::Forced(9)).is_err());
        assert!(matches!(
            FieldContext::with_params(2, 17),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            FieldContext::with_params(1_048_583, 1),
            Err(Error::FieldTooLarge { .. })
        ));
        // a prime above the characteristic cap is not accepted as a forced order
        assert_eq!(
            FieldContext::make_field(2, FieldPolicy::Forced(1_048_583)).unwrap_err(),
            Error::NotPrimePower(1_048_583)
        );
    }

    #[test]
    fn prime_field_examples() {
        let f = gf(7);
        let (three, five) = (f.from_int(3), f.from_int(5));
        assert_eq!(f.mul(three, five), f.one());
        assert_eq!(f.inv(three).unwrap(), five);
        assert_eq!(f.inv(f.zero()), Err(Error::ZeroInverse));
        assert_eq!(f.from_int(-2), five);
    }

    #[test]
    fn gf4_modulus_and_product() {
        let f = gf(4);
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.from_coefficients(&[0, 1]).unwrap();
        let x_plus_1 = f.from_coefficients(&[1, 1]).unwrap();
        assert_eq!(f.mul(x, x), x_plus_1);
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(gf(8).modulus(), &[1, 1, 0, 1]);
        assert_eq!(gf(9).modulus(), &[1, 0, 1]);
        assert_eq!(gf(16).modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(gf(25).modulus(), &[2, 0, 1]);
    }

    #[test]
    fn explicit_modulus() {
        let f = FieldContext::with_modulus(2, &[1, 0, 1, 1]).unwrap();
        assert_eq!(f.order(), 8);
        assert_ne!(f, gf(8));
        check_axioms(&f, 4);
        assert!(FieldContext::with_modulus(2, &[1, 0, 1]).is_err());
        assert!(FieldContext::with_modulus(3, &[0, 1]).is_ok());
        assert!(FieldContext::with_modulus(3, &[1, 1]).is_err());
        assert_eq!(FieldContext::with_modulus(3, &[1, 0, 1]).unwrap(), gf(9));
    }

    #[test]
    fn enumerate_small_fields() {
        let list: Vec<u64> = gf(2).enumerate().map(|e| e.encoding()).collect();
        assert_eq!(list, vec![0, 1]);
        let list: Vec<u64> = gf(3).enumerate().map(|e| e.encoding()).collect();
        assert_eq!(list, vec![0, 1, 2]);
        for q in [4u64, 8, 9, 25, 27, 49, 64] {
            let f = gf(q);
            let all: Vec<_> = f.enumerate().collect();
            assert_eq!(all.len() as u64, q);
            assert_eq!(all[0], f.zero());
            assert_eq!(all[1], f.one());
            let set: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(set.len() as u64, q);
            for &a in &all {
                for &b in &all {
                    assert!(f.add(a, b).encoding() < q);
                    assert!(f.mul(a, b).encoding() < q);
                }
            }
        }
    }

    fn check_axioms(f: &FieldContext, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.sub(f.add(a, b), b), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            assert_eq!(f.pow(a, f.order()), a);
        }
    }

    #[test]
    fn field_axioms_sampled() {
        for q in [2u64, 7, 101, 4, 8, 9, 27, 125, 256, 3125] {
            check_axioms(&gf(q), q);
        }
        // beyond the table limit: schoolbook multiplication path
        check_axioms(&FieldContext::with_params(3, 11).unwrap(), 1);
        check_axioms(&FieldContext::with_params(2, 16).unwrap(), 2);
        check_axioms(&FieldContext::prime((1 << 61) - 1).unwrap(), 3);
    }

    #[test]
    fn inverse_exhaustive_small() {
        for q in [4u64, 9, 16, 49] {
            let f = gf(q);
            for a in f.enumerate().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                assert_eq!(f.pow(a, q), a);
            }
        }
    }

    #[test]
    fn table_and_schoolbook_agree() {
        let f = gf(81);
        for a in f.enumerate() {
            for b in f.enumerate() {
                assert_eq!(
                    f.mul(a, b),
                    if a.is_zero() || b.is_zero() {
                        f.zero()
                    } else {
                        f.mul_poly(a, b)
                    }
                );
            }
        }
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime((1 << 61) + 1));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(1 << 17), None);
        assert_eq!(prime_power(36), None);
    }
}
