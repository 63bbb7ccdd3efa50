//! `GL_2` matrices, their Möbius action on the projective line, and the
//! polynomial transforms built from them.
//!
//! For `σ = (a b; c d)` and `f` of degree `n`:
//!
//! * `P_σ(f)(x) = (cx+d)^n f((ax+b)/(cx+d))`, computed homogeneously as
//!   `Σ f_i (ax+b)^i (cx+d)^(n-i)`;
//! * the degree-multiplying transform `P_{σ⁻¹} ∘ S_t ∘ P_σ` where
//!   `S_t(f)(x) = f(x^t)`.
//!
//! Outputs are left unnormalized; scalar multiples are interchangeable for
//! every property the criteria care about, and the raw form keeps the
//! algebraic identities exact.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::Poly;

/// A point of `P^1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint<E> {
    Finite(E),
    Infinity,
}

/// An invertible 2×2 matrix `(a b; c d)`.
#[derive(Clone)]
pub struct Mat2<F: Field> {
    ctx: F,
    a: F::Elem,
    b: F::Elem,
    c: F::Elem,
    d: F::Elem,
}

impl<F: Field> Mat2<F> {
    pub fn new(ctx: F, a: F::Elem, b: F::Elem, c: F::Elem, d: F::Elem) -> Result<Self> {
        let m = Self { ctx, a, b, c, d };
        if m.ctx.is_zero(&m.det()) {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    /// Row-major integer entries, reduced into the field.
    pub fn from_i64s(ctx: F, [a, b, c, d]: [i64; 4]) -> Result<Self> {
        let (a, b, c, d) = (
            ctx.from_i64(a),
            ctx.from_i64(b),
            ctx.from_i64(c),
            ctx.from_i64(d),
        );
        Self::new(ctx, a, b, c, d)
    }

    pub fn identity(ctx: F) -> Self {
        let (one, zero) = (ctx.one(), ctx.zero());
        Self {
            a: one.clone(),
            b: zero.clone(),
            c: zero,
            d: one,
            ctx,
        }
    }

    pub fn ctx(&self) -> &F {
        &self.ctx
    }

    pub fn a(&self) -> &F::Elem {
        &self.a
    }

    pub fn b(&self) -> &F::Elem {
        &self.b
    }

    pub fn c(&self) -> &F::Elem {
        &self.c
    }

    pub fn d(&self) -> &F::Elem {
        &self.d
    }

    pub fn det(&self) -> F::Elem {
        let k = &self.ctx;
        k.sub(&k.mul(&self.a, &self.d), &k.mul(&self.b, &self.c))
    }

    /// The exact inverse `det⁻¹ (d -b; -c a)`.
    pub fn inverse(&self) -> Self {
        let k = &self.ctx;
        let s = k.inv(&self.det()).expect("det is nonzero");
        Self {
            a: k.mul(&s, &self.d),
            b: k.neg(&k.mul(&s, &self.b)),
            c: k.neg(&k.mul(&s, &self.c)),
            d: k.mul(&s, &self.a),
            ctx: k.clone(),
        }
    }

    /// `σ·α = (aα+b)/(cα+d)`, with `∞` at the pole and `σ·∞ = a/c`.
    pub fn apply(&self, p: &ProjPoint<F::Elem>) -> ProjPoint<F::Elem> {
        let k = &self.ctx;
        let (num, den) = match p {
            ProjPoint::Infinity => (self.a.clone(), self.c.clone()),
            ProjPoint::Finite(x) => (
                k.add(&k.mul(&self.a, x), &self.b),
                k.add(&k.mul(&self.c, x), &self.d),
            ),
        };
        match k.div(&num, &den) {
            Ok(v) => ProjPoint::Finite(v),
            Err(_) => ProjPoint::Infinity,
        }
    }

    /// `σ·∞`.
    pub fn pole_image(&self) -> ProjPoint<F::Elem> {
        self.apply(&ProjPoint::Infinity)
    }

    /// Whether `self` and `other` agree as elements of `PGL_2`.
    pub fn projectively_eq(&self, other: &Self) -> bool {
        let k = &self.ctx;
        let mine = [&self.a, &self.b, &self.c, &self.d];
        let theirs = [&other.a, &other.b, &other.c, &other.d];
        // cross-multiplied proportionality on all pairs
        (0..4).all(|i| (0..4).all(|j| k.mul(mine[i], theirs[j]) == k.mul(mine[j], theirs[i])))
    }
}

impl<F: Field> PartialEq for Mat2<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.a == other.a
            && self.b == other.b
            && self.c == other.c
            && self.d == other.d
    }
}

impl<F: Field> fmt::Debug for Mat2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = &self.ctx;
        write!(
            f,
            "({} {}; {} {})",
            k.format(&self.a),
            k.format(&self.b),
            k.format(&self.c),
            k.format(&self.d)
        )
    }
}

impl<'a, F: Field> Mul for &'a Mat2<F> {
    type Output = Mat2<F>;

    fn mul(self, rhs: &'a Mat2<F>) -> Mat2<F> {
        assert!(self.ctx == rhs.ctx, "matrix context mismatch");
        let k = &self.ctx;
        let dot =
            |x: &F::Elem, y: &F::Elem, z: &F::Elem, w: &F::Elem| k.add(&k.mul(x, y), &k.mul(z, w));
        Mat2 {
            a: dot(&self.a, &rhs.a, &self.b, &rhs.c),
            b: dot(&self.a, &rhs.b, &self.b, &rhs.d),
            c: dot(&self.c, &rhs.a, &self.d, &rhs.c),
            d: dot(&self.c, &rhs.b, &self.d, &rhs.d),
            ctx: k.clone(),
        }
    }
}

/// `P_σ(f) = Σ f_i (ax+b)^i (cx+d)^(n-i)` with `n = deg f`.
pub fn p_sigma<F: Field>(sigma: &Mat2<F>, f: &Poly<F>) -> Result<Poly<F>> {
    if f.ctx() != sigma.ctx() {
        return Err(Error::CtxMismatch);
    }
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let ctx = sigma.ctx().clone();
    let num = Poly::new(ctx.clone(), vec![sigma.b.clone(), sigma.a.clone()]);
    let den = Poly::new(ctx.clone(), vec![sigma.d.clone(), sigma.c.clone()]);
    // Horner in the homogeneous form: acc <- acc*(ax+b) + f_i (cx+d)^(n-i)
    let coeffs = f.coeffs();
    let mut acc = Poly::constant(ctx.clone(), coeffs[n].clone());
    let mut den_pow = Poly::one(ctx.clone());
    for i in (0..n).rev() {
        den_pow = &den_pow * &den;
        acc = &(&acc * &num) + &den_pow.scale(&coeffs[i]);
    }
    Ok(acc)
}

/// One step of the degree-multiplying transform `P_{σ⁻¹}(S_t(P_σ(g)))`.
///
/// Fails with `DegreeCollapse` when `g(σ·∞) = 0`, or if the outer transform
/// loses degree.
pub fn r_transform<F: Field>(sigma: &Mat2<F>, t: usize, g: &Poly<F>) -> Result<Poly<F>> {
    if t < 1 {
        return Err(Error::InvalidArgument("t must be >= 1".into()));
    }
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    let h = p_sigma(sigma, g)?;
    let hd = h.degree().unwrap_or(0);
    if hd != n {
        return Err(Error::DegreeCollapse {
            expected: n * t,
            got: hd * t,
        });
    }
    let out = p_sigma(&sigma.inverse(), &h.substitute_power(t))?;
    let od = out.degree().unwrap_or(0);
    if od != n * t {
        return Err(Error::DegreeCollapse {
            expected: n * t,
            got: od,
        });
    }
    Ok(out)
}

/// The residue element `η(g;σ) = (σ⁻¹·∞)^n g(σ·0) / g(σ·∞)`, in the form
/// `(-d/c)^n g(b/d) g(a/c)⁻¹`, with `(-d/a)^n g(b/d)` when `c = 0` and
/// `(-b/c)^n g(a/c)⁻¹` when `d = 0`.
///
/// For monic `g` this is the product of the roots of `P_σ(g)`.
pub fn eta<F: Field>(g: &Poly<F>, sigma: &Mat2<F>) -> Result<F::Elem> {
    let k = sigma.ctx();
    if g.ctx() != k {
        return Err(Error::CtxMismatch);
    }
    let n = g.degree().ok_or(Error::ZeroPolynomial)? as u128;
    let (a, b, c, d) = (&sigma.a, &sigma.b, &sigma.c, &sigma.d);
    let at_pole = || -> Result<F::Elem> {
        let v = g.eval(&k.div(a, c)?);
        k.inv(&v)
            .map_err(|_| Error::EtaUndefined("g(σ·∞) = 0".into()))
    };
    let neg_ratio =
        |x: &F::Elem, y: &F::Elem| -> F::Elem { k.neg(&k.div(x, y).expect("nonzero denominator")) };
    if k.is_zero(c) {
        let scale = k.pow(&neg_ratio(d, a), n);
        return Ok(k.mul(&scale, &g.eval(&k.div(b, d)?)));
    }
    if k.is_zero(d) {
        let scale = k.pow(&neg_ratio(b, c), n);
        return Ok(k.mul(&scale, &at_pole()?));
    }
    let scale = k.pow(&neg_ratio(d, c), n);
    Ok(k.mul(&k.mul(&scale, &g.eval(&k.div(b, d)?)), &at_pole()?))
}
