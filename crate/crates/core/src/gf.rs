//! Finite field contexts.
//!
//! A field is a context object implementing [`Field`]; its elements are
//! plain values (`Field::Elem`) that only make sense together with the
//! context that produced them. Two contexts are provided:
//!
//! * [`PrimeField`]: `F_p` with residues stored as `u64` in `[0, p)`.
//! * [`ExtField`]: a quotient ring `base[x]/(m(x))` with `m` monic and
//!   irreducible, elements stored as fixed-length coefficient vectors.
//!
//! Context identity is structural: two `ExtField`s are equal when they have
//! equal bases and equal moduli.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::num;
use crate::poly::Poly;
use crate::verify;

pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Image of an integer under the canonical map `Z -> F`.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// `q = |F|`, or `None` if it does not fit in a `u128`.
    fn cardinality(&self) -> Option<u128>;
    /// Degree over the prime field.
    fn prime_degree(&self) -> usize;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Cardinality as a `u64`, failing for fields too large for the
    /// integer routines in this crate.
    fn order_u64(&self) -> Result<u64> {
        self.cardinality()
            .and_then(|q| u64::try_from(q).ok())
            .ok_or(Error::CardinalityOverflow)
    }
}

/// The prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !num::is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Every element, ascending.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }

    /// Nonzero elements, ascending.
    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.p
    }

    pub fn elem(&self, v: i64) -> u64 {
        self.from_i64(v)
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let (s, overflow) = a.overflowing_add(*b);
        if overflow || s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.p <= u32::MAX as u64 {
            (a * b) % self.p
        } else {
            ((*a as u128 * *b as u128) % self.p as u128) as u64
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (s0, s1) = (s1, s0 - quot * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(s0.rem_euclid(self.p as i128) as u64)
    }

    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn cardinality(&self) -> Option<u128> {
        Some(self.p as u128)
    }

    fn prime_degree(&self) -> usize {
        1
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        if let Ok(v) = s.parse::<i64>() {
            return Ok(self.from_i64(v));
        }
        s.parse::<u64>()
            .map(|v| v % self.p)
            .map_err(|_| Error::Parse(s.to_string()))
    }
}

struct ExtInner<F: Field> {
    base: F,
    modulus: Poly<F>,
    degree: usize,
    /// `(j, -m_j)` for every nonzero non-leading coefficient of the modulus,
    /// so that `x^N = sum tail_j x^j`.
    tail: Vec<(usize, F::Elem)>,
}

/// The quotient ring `base[x]/(modulus)`, a field when the modulus is
/// irreducible. Elements are coefficient vectors of length `degree()`.
#[derive(Clone)]
pub struct ExtField<F: Field> {
    inner: Arc<ExtInner<F>>,
}

impl<F: Field> ExtField<F> {
    /// Builds `base[x]/(modulus)`, checking that the modulus is monic and
    /// irreducible.
    pub fn new(modulus: Poly<F>) -> Result<Self> {
        match modulus.degree() {
            Some(d) if d >= 1 && modulus.is_monic() => {}
            _ => return Err(Error::NonMonicModulus),
        }
        if !verify::rabin_irreducible(&modulus) {
            return Err(Error::ReducibleModulus);
        }
        Ok(Self::new_unchecked(modulus))
    }

    /// Same as [`ExtField::new`] without the irreducibility test. The
    /// modulus is made monic.
    pub fn new_unchecked(modulus: Poly<F>) -> Self {
        let modulus = modulus.monic();
        let degree = modulus.degree().expect("nonzero modulus");
        assert!(degree >= 1, "modulus must have degree >= 1");
        let base = modulus.ctx().clone();
        let tail = modulus.coeffs()[..degree]
            .iter()
            .enumerate()
            .filter(|(_, c)| !base.is_zero(c))
            .map(|(j, c)| (j, base.neg(c)))
            .collect();
        Self {
            inner: Arc::new(ExtInner {
                base,
                modulus,
                degree,
                tail,
            }),
        }
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.inner.modulus
    }

    /// Degree of the extension over its base.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// The class of the indeterminate, a root of the modulus.
    pub fn root(&self) -> Vec<F::Elem> {
        self.from_poly(&Poly::x(self.base().clone()))
    }

    pub fn embed(&self, c: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base().zero(); self.degree()];
        v[0] = c.clone();
        v
    }

    /// The element represented by `p` mod the modulus.
    pub fn from_poly(&self, p: &Poly<F>) -> Vec<F::Elem> {
        self.reduce(p.coeffs().to_vec())
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> Poly<F> {
        Poly::new(self.base().clone(), a.to_vec())
    }

    /// Reduces an arbitrary-length coefficient vector mod the modulus.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let n = self.degree();
        let base = self.base();
        for i in (n..v.len()).rev() {
            if base.is_zero(&v[i]) {
                continue;
            }
            let c = v[i].clone();
            for (j, t) in &self.inner.tail {
                let k = i - n + j;
                v[k] = base.add(&v[k], &base.mul(&c, t));
            }
        }
        v.resize(n, base.zero());
        v
    }
}

impl<F: Field> PartialEq for ExtField<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl<F: Field> fmt::Debug for ExtField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[x]/({})", self.base(), self.modulus())
    }
}

impl<F: Field> Field for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base().zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base().one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base().is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let base = self.base();
        a.iter().zip(b).map(|(x, y)| base.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let base = self.base();
        a.iter().zip(b).map(|(x, y)| base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base().neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let base = self.base();
        let n = self.degree();
        let mut prod = vec![base.zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !base.is_zero(y) {
                    prod[i + j] = base.add(&prod[i + j], &base.mul(x, y));
                }
            }
        }
        self.reduce(prod)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.to_poly(a).ext_gcd(self.modulus())?;
        if !g.is_one() {
            // only reachable with a reducible modulus
            return Err(Error::DivisionByZero);
        }
        Ok(self.from_poly(&s))
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.embed(&self.base().from_i64(v))
    }

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn cardinality(&self) -> Option<u128> {
        let q = self.base().cardinality()?;
        q.checked_pow(u32::try_from(self.degree()).ok()?)
    }

    fn prime_degree(&self) -> usize {
        self.base().prime_degree() * self.degree()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (0..self.degree())
            .map(|_| self.base().random(rng))
            .collect()
    }

    fn format(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.iter().map(|c| self.base().format(c)).collect();
        format!("[{}]", parts.join(","))
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let s = s.trim();
        let body = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(s.to_string()))?;
        let parts = split_top_level(body);
        if parts.len() > self.degree() {
            return Err(Error::Parse(s.to_string()));
        }
        let coeffs = parts
            .iter()
            .map(|p| self.base().parse(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.reduce(coeffs))
    }
}

/// Splits on commas that are not nested inside brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() || !out.is_empty() {
        out.push(&s[start..]);
    }
    out
}

/// Smallest `e >= 1` with `x^e = 1`.
pub fn mult_order<F: Field>(ctx: &F, x: &F::Elem) -> Result<u64> {
    if ctx.is_zero(x) {
        return Err(Error::DivisionByZero);
    }
    let group = ctx.order_u64()? - 1;
    let mut e = group;
    for l in num::prime_factors(group) {
        while e % l == 0 && ctx.is_one(&ctx.pow(x, (e / l) as u128)) {
            e /= l;
        }
    }
    Ok(e)
}

/// Whether `x = y^l` for some `y` in the field, `l` prime.
pub fn is_lth_power<F: Field>(ctx: &F, x: &F::Elem, l: u64) -> Result<bool> {
    if !num::is_prime(l) {
        return Err(Error::NonPrimeExponent(l));
    }
    if ctx.is_zero(x) {
        return Err(Error::DivisionByZero);
    }
    let group = ctx.order_u64()? - 1;
    if group % l != 0 {
        // x -> x^l is a bijection on the unit group
        return Ok(true);
    }
    Ok(ctx.is_one(&ctx.pow(x, (group / l) as u128)))
}
