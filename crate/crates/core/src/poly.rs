//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::gf::Field;

/// A polynomial with coefficients in ascending degree order and no trailing
/// zeros. The zero polynomial has no coefficients and `degree() == None`.
#[derive(Clone)]
pub struct Poly<F: Field> {
    ctx: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(ctx: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ctx.is_zero(c)) {
            coeffs.pop();
        }
        Self { ctx, coeffs }
    }

    pub fn zero(ctx: F) -> Self {
        Self {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: F) -> Self {
        let one = ctx.one();
        Self::new(ctx, vec![one])
    }

    pub fn x(ctx: F) -> Self {
        Self::monomial(ctx.clone(), ctx.one(), 1)
    }

    pub fn constant(ctx: F, c: F::Elem) -> Self {
        Self::new(ctx, vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(ctx: F, c: F::Elem, deg: usize) -> Self {
        let mut coeffs = vec![ctx.zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(ctx, coeffs)
    }

    /// From integer coefficients, ascending.
    pub fn from_i64s(ctx: F, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| ctx.from_i64(c)).collect();
        Self::new(ctx, coeffs)
    }

    /// `x^n - a`
    pub fn binomial(ctx: F, n: usize, a: &F::Elem) -> Self {
        let mut coeffs = vec![ctx.zero(); n + 1];
        coeffs[n] = ctx.one();
        coeffs[0] = ctx.sub(&coeffs[0], a);
        Self::new(ctx, coeffs)
    }

    /// Parses ascending coefficient strings, the inverse of [`Poly::to_strings`].
    pub fn from_strings<S: AsRef<str>>(ctx: F, coeffs: &[S]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|s| ctx.parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ctx, coeffs))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| self.ctx.format(c)).collect()
    }

    pub fn ctx(&self) -> &F {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.ctx.is_one(&self.coeffs[0])
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.ctx.is_one(c))
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ctx.inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect();
        Self::new(self.ctx.clone(), coeffs)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    fn assert_ctx(&self, other: &Self) {
        assert!(self.ctx == other.ctx, "polynomial context mismatch");
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        self.check_ctx(b)?;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let ctx = &self.ctx;
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok((Self::zero(ctx.clone()), self.clone()));
        };
        let lc_inv = ctx.inv(b.leading().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ctx.zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let c = ctx.mul(&rem[i + db], &lc_inv);
            if ctx.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[i + j] = ctx.sub(&rem[i + j], &ctx.mul(&c, bj));
            }
            quot[i] = c;
        }
        rem.truncate(db);
        Ok((Self::new(ctx.clone(), quot), Self::new(ctx.clone(), rem)))
    }

    pub fn rem(&self, m: &Self) -> Result<Self> {
        Ok(self.divmod(m)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, t)` with `g = gcd(self, other)` monic and
    /// `g = s * self + t * other`.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.check_ctx(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let ctx = self.ctx.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(ctx.clone()), Self::zero(ctx.clone()));
        let (mut t0, mut t1) = (Self::zero(ctx.clone()), Self::one(ctx.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let lc_inv = ctx.inv(r0.leading().unwrap())?;
        Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        (self * other).rem(m)
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn powmod(&self, mut e: u128, m: &Self) -> Result<Self> {
        self.check_ctx(m)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.ctx.clone()).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let ctx = &self.ctx;
        self.coeffs
            .iter()
            .rev()
            .fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, x), c))
    }

    /// `f(x^t)`
    pub fn substitute_power(&self, t: usize) -> Self {
        assert!(t >= 1, "substitution exponent must be >= 1");
        let Some(deg) = self.degree() else {
            return self.clone();
        };
        let mut coeffs = vec![self.ctx.zero(); deg * t + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * t] = c.clone();
        }
        Self::new(self.ctx.clone(), coeffs)
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<'a, F: Field> Add for &'a Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: &'a Poly<F>) -> Poly<F> {
        self.assert_ctx(rhs);
        let ctx = &self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => ctx.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(ctx.clone(), coeffs)
    }
}

impl<'a, F: Field> Sub for &'a Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: &'a Poly<F>) -> Poly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        let coeffs = self.coeffs.iter().map(|c| self.ctx.neg(c)).collect();
        Poly::new(self.ctx.clone(), coeffs)
    }
}

impl<'a, F: Field> Mul for &'a Poly<F> {
    type Output = Poly<F>;

    /// Schoolbook product.
    fn mul(self, rhs: &'a Poly<F>) -> Poly<F> {
        self.assert_ctx(rhs);
        let ctx = &self.ctx;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(ctx.clone());
        }
        let mut out = vec![ctx.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ctx.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
            }
        }
        Poly::new(ctx.clone(), out)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    /// Human form, highest degree first: `5*x^2+4*x+4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ctx.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = self.ctx.format(c);
            let show_coeff = i == 0 || !self.ctx.is_one(c);
            match (show_coeff, i) {
                (true, 0) => write!(f, "{cs}")?,
                (true, 1) => write!(f, "{cs}*x")?,
                (true, _) => write!(f, "{cs}*x^{i}")?,
                (false, 1) => write!(f, "x")?,
                (false, _) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {:?})", self.ctx)
    }
}

/// Machine form: ascending coefficient strings, e.g. `["4","4","5"]`.
impl<F: Field> Serialize for Poly<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&self.ctx.format(c))?;
        }
        seq.end()
    }
}
