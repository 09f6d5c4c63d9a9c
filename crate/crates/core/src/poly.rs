//! Dense univariate polynomials over a [`FieldContext`].
//!
//! Coefficients are stored in ascending degree order with no trailing zeros;
//! the zero polynomial is the empty vector.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Polynomial {
        Polynomial {
            coeffs: vec![FieldElement::ONE],
        }
    }

    pub fn constant(c: FieldElement) -> Polynomial {
        Polynomial::from_coeffs(vec![c])
    }

    /// `x^degree`.
    pub fn monomial(degree: usize) -> Polynomial {
        let mut coeffs = vec![FieldElement::ZERO; degree + 1];
        coeffs[degree] = FieldElement::ONE;
        Polynomial { coeffs }
    }

    /// Ascending coefficients; trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// `x^shift * prod_{j in set} (x + alphas[j])`.
    pub fn from_constraint_roots(
        ctx: &FieldContext,
        set: impl IntoIterator<Item = usize>,
        alphas: &[FieldElement],
        shift: usize,
    ) -> Result<Polynomial> {
        let mut f = Polynomial::monomial(shift);
        for j in set {
            let a = *alphas.get(j).ok_or(Error::IndexOutOfRange {
                index: j,
                len: alphas.len(),
            })?;
            f = f.mul_linear(ctx, a);
        }
        Ok(f)
    }

    /// `prod_i (x - roots[i])`.
    pub fn from_roots(ctx: &FieldContext, roots: &[FieldElement]) -> Polynomial {
        roots
            .iter()
            .fold(Polynomial::one(), |f, &r| f.mul_linear(ctx, ctx.neg(r)))
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElement::ONE)
    }

    /// `self * (x + a)`.
    pub fn mul_linear(&self, ctx: &FieldContext, a: FieldElement) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] = ctx.add(out[i + 1], c);
            out[i] = ctx.add(out[i], ctx.mul(c, a));
        }
        Polynomial::from_coeffs(out)
    }

    pub fn add(&self, other: &Polynomial, ctx: &FieldContext) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|i| ctx.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Polynomial, ctx: &FieldContext) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|i| ctx.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: FieldElement, ctx: &FieldContext) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Polynomial, ctx: &FieldContext) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Polynomial::from_coeffs(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement, ctx: &FieldContext) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    /// `(quotient, remainder)` with `self = quotient * divisor + remainder` and
    /// `deg remainder < deg divisor`.
    pub fn divrem(&self, divisor: &Polynomial, ctx: &FieldContext) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = ctx.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = ctx.mul(rem[shift + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = ctx.sub(rem[shift + i], ctx.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem)))
    }

    /// Extended Euclid on `(f, g)`, stopped as soon as the remainder has
    /// degree `< stop_degree`. Returns `(r, v)` with `r = u*f + v*g` for some `u`.
    pub fn gcd_partial(
        f: &Polynomial,
        g: &Polynomial,
        stop_degree: usize,
        ctx: &FieldContext,
    ) -> Result<(Polynomial, Polynomial)> {
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut v0, mut v1) = (Polynomial::zero(), Polynomial::one());
        while r1.degree().is_some_and(|d| d >= stop_degree) {
            let (quot, rem) = r0.divrem(&r1, ctx)?;
            let v2 = v0.sub(&quot.mul(&v1, ctx), ctx);
            (r0, r1) = (r1, rem);
            (v0, v1) = (v1, v2);
        }
        Ok((r1, v1))
    }

    /// Unique polynomial of degree `< points.len()` through `(points[i], values[i])`.
    /// Points must be pairwise distinct.
    pub fn interpolate(points: &[FieldElement], values: &[FieldElement], ctx: &FieldContext) -> Result<Polynomial> {
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch {
                what: "interpolation values",
                expected: points.len(),
                found: values.len(),
            });
        }
        // Newton divided differences.
        let n = points.len();
        let mut dd = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = ctx.sub(points[i], points[i - level]);
                let inv = ctx
                    .inv(den)
                    .map_err(|_| Error::InvalidInstance("interpolation points are not distinct".into()))?;
                dd[i] = ctx.mul(ctx.sub(dd[i], dd[i - 1]), inv);
            }
        }
        let mut f = Polynomial::zero();
        for i in (0..n).rev() {
            f = f
                .mul_linear(ctx, ctx.neg(points[i]))
                .add(&Polynomial::constant(dd[i]), ctx);
        }
        Ok(f)
    }
}
