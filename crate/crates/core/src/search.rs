//! Search for evaluation points that make the design matrix nonsingular.
//!
//! The random phase samples distinct tuples. The exhaustive phase assigns
//! `alpha_0, alpha_1, ..` one at a time over the field and abandons a prefix
//! once `det M`, viewed as a polynomial in the still-free alphas, evaluates to
//! zero at several random points of a large extension `E = F[y]/(g)`. A
//! nonzero evaluation certifies that the prefix can still be completed over
//! some extension; an all-zero run marks it dead with error at most
//! `(D / |E|)^trials`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constraints::GeneralInstance;
use crate::field::{FieldContext, FieldElement};
use crate::poly::Polynomial;
use crate::sylvester::SylvesterMatrix;

/// Extension evaluations per pruning decision.
const PRUNE_TRIALS: usize = 4;
/// The extension is chosen with at least this many bits of size.
const EXTENSION_BITS: f64 = 40.0;

/// Degree-`e` extension of a [`FieldContext`], elements as coefficient vectors
/// of length `e` in the adjoined root.
pub(crate) struct ExtensionField {
    base: FieldContext,
    /// Monic irreducible of degree `e` over the base field.
    modulus: Polynomial,
    degree: usize,
}

impl ExtensionField {
    /// Smallest degree `e >= 2` with `q^e >= 2^40`, modulus found by
    /// enumerating monic candidates in encoding order.
    pub(crate) fn large_over(base: &FieldContext) -> ExtensionField {
        let q = base.order() as f64;
        let degree = ((EXTENSION_BITS / q.log2()).ceil() as usize).max(2);
        let mut lower = vec![FieldElement::ZERO; degree];
        loop {
            let mut coeffs = lower.clone();
            coeffs.push(FieldElement::ONE);
            let candidate = Polynomial::from_coeffs(coeffs);
            if is_irreducible_over(&candidate, base) {
                return ExtensionField {
                    base: base.clone(),
                    modulus: candidate,
                    degree,
                };
            }
            for digit in lower.iter_mut() {
                let next = digit.encoding() + 1;
                if next < base.order() {
                    *digit = base.from_encoding(next).expect("in range");
                    break;
                }
                *digit = FieldElement::ZERO;
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn degree(&self) -> usize {
        self.degree
    }

    fn reduce(&self, p: &Polynomial) -> Polynomial {
        p.divrem(&self.modulus, &self.base).expect("modulus is nonzero").1
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&a.mul(b, &self.base))
    }

    fn inv(&self, a: &Polynomial) -> Option<Polynomial> {
        if a.is_zero() {
            return None;
        }
        // r = u*modulus + v*a with deg r = 0
        let (r, v) = Polynomial::gcd_partial(&self.modulus, a, 1, &self.base).ok()?;
        let c = self.base.inv(r.coeff(0)).ok()?;
        Some(self.reduce(&v.scale(c, &self.base)))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Polynomial {
        Polynomial::from_coeffs((0..self.degree).map(|_| self.base.random(rng)).collect())
    }

    /// Determinant by elimination over the extension.
    fn determinant(&self, mut m: Vec<Vec<Polynomial>>) -> Polynomial {
        let n = m.len();
        let ctx = &self.base;
        let mut det = Polynomial::one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Polynomial::zero();
            };
            if pr != c {
                m.swap(pr, c);
                det = det.scale(ctx.neg(ctx.one()), ctx);
            }
            det = self.mul(&det, &m[c][c]);
            let inv = self.inv(&m[c][c]).expect("pivot is nonzero");
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = self.mul(&m[i][c], &inv);
                let (top, bottom) = m.split_at_mut(i);
                for (x, p) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                    *x = x.sub(&self.mul(&factor, p), ctx);
                }
            }
        }
        det
    }

    /// `det M` for the block instance at alphas given as extension elements.
    fn sylvester_determinant(&self, inst: &GeneralInstance, alphas: &[Polynomial]) -> Polynomial {
        let k = inst.k();
        let ctx = &self.base;
        let mut rows = Vec::with_capacity(k);
        for block in inst.blocks() {
            // coefficients of x^(k-|S|-1) prod (x + alpha_j), ascending, in E
            let mut f: Vec<Polynomial> = vec![Polynomial::one()];
            for j in block.set.iter() {
                let mut next = vec![Polynomial::zero(); f.len() + 1];
                for (i, c) in f.iter().enumerate() {
                    next[i + 1] = next[i + 1].add(c, ctx);
                    next[i] = next[i].add(&self.mul(c, &alphas[j]), ctx);
                }
                f = next;
            }
            let shift = k - block.set.len() - 1;
            let mut asc = vec![Polynomial::zero(); shift];
            asc.extend(f);
            let first: Vec<Polynomial> = (0..k).map(|c| asc[k - 1 - c].clone()).collect();
            for t in 0..block.r {
                let mut row = vec![Polynomial::zero(); k];
                row[t..k].clone_from_slice(&first[..(k - t)]);
                rows.push(row);
            }
        }
        self.determinant(rows)
    }
}

/// Rabin's test over an arbitrary base field, using `x^(q^i) mod f`.
fn is_irreducible_over(f: &Polynomial, ctx: &FieldContext) -> bool {
    let e = f.degree().expect("nonzero");
    let x = Polynomial::monomial(1);
    let frob = |h: &Polynomial| -> Polynomial {
        // h^q mod f by square and multiply
        let mut acc = Polynomial::one();
        let mut base = h.clone();
        let mut exp = ctx.order();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, ctx).divrem(f, ctx).expect("nonzero").1;
            }
            base = base.mul(&base, ctx).divrem(f, ctx).expect("nonzero").1;
            exp >>= 1;
        }
        acc
    };
    let mut powers = vec![x.divrem(f, ctx).expect("nonzero").1];
    for _ in 0..e {
        let next = frob(powers.last().expect("nonempty"));
        powers.push(next);
    }
    if powers[e] != powers[0] {
        return false;
    }
    let mut d = 2;
    let mut rest = e;
    let mut primes = Vec::new();
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            primes.push(d);
            while rest.is_multiple_of(d) {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    primes.into_iter().all(|pr| {
        let h = powers[e / pr].sub(&x, ctx);
        gcd_degree(f, &h, ctx) == 0
    })
}

fn gcd_degree(a: &Polynomial, b: &Polynomial, ctx: &FieldContext) -> usize {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.divrem(&y, ctx).expect("nonzero").1;
        x = y;
        y = r;
    }
    x.degree().unwrap_or(usize::MAX)
}

/// `distinct` pairwise distinct uniform elements followed by `total - distinct`
/// unconstrained uniform elements.
pub(crate) fn candidate_tuple<R: Rng + ?Sized>(
    ctx: &FieldContext,
    distinct: usize,
    total: usize,
    rng: &mut R,
) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> = if ctx.order() <= 1 << 16 {
        let mut all: Vec<FieldElement> = ctx.enumerate().collect();
        let (chosen, _) = all.partial_shuffle(rng, distinct);
        chosen.to_vec()
    } else {
        let mut out = Vec::with_capacity(total);
        while out.len() < distinct {
            let c = ctx.random(rng);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    };
    out.extend((distinct..total).map(|_| ctx.random(rng)));
    out
}

pub(crate) fn is_nonsingular(inst: &GeneralInstance, alphas: &[FieldElement], ctx: &FieldContext) -> bool {
    let m = SylvesterMatrix::build(inst, alphas, ctx).expect("alpha count matches");
    !m.determinant(ctx).is_zero()
}

/// Counters from the exhaustive phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExhaustiveStats {
    /// Complete assignments whose determinant was evaluated.
    pub leaves: u64,
    /// Prefixes abandoned by the extension-field test.
    pub pruned: u64,
}

/// Depth-first search over assignments in field enumeration order, the first
/// `distinct` of which must be pairwise distinct. Returns the first
/// nonsingular assignment found, if any.
pub(crate) fn exhaustive<R: Rng + ?Sized>(
    inst: &GeneralInstance,
    ctx: &FieldContext,
    distinct: usize,
    rng: &mut R,
    stats: &mut ExhaustiveStats,
) -> Option<Vec<FieldElement>> {
    if (ctx.order() as usize) < distinct {
        return None;
    }
    let ext = ExtensionField::large_over(ctx);
    let elements: Vec<FieldElement> = ctx.enumerate().collect();
    let mut used = vec![false; elements.len()];
    let mut prefix = Vec::with_capacity(inst.n());

    fn alive<R: Rng + ?Sized>(
        inst: &GeneralInstance,
        ext: &ExtensionField,
        prefix: &[FieldElement],
        rng: &mut R,
    ) -> bool {
        (0..PRUNE_TRIALS).any(|_| {
            let alphas: Vec<Polynomial> = (0..inst.n())
                .map(|j| match prefix.get(j) {
                    Some(&a) => Polynomial::constant(a),
                    None => ext.random(rng),
                })
                .collect();
            !ext.sylvester_determinant(inst, &alphas).is_zero()
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn rec<R: Rng + ?Sized>(
        inst: &GeneralInstance,
        ctx: &FieldContext,
        ext: &ExtensionField,
        elements: &[FieldElement],
        distinct: usize,
        used: &mut [bool],
        prefix: &mut Vec<FieldElement>,
        rng: &mut R,
        stats: &mut ExhaustiveStats,
    ) -> bool {
        if prefix.len() == inst.n() {
            stats.leaves += 1;
            return is_nonsingular(inst, prefix, ctx);
        }
        let must_differ = prefix.len() < distinct;
        for (idx, &e) in elements.iter().enumerate() {
            if must_differ && used[idx] {
                continue;
            }
            prefix.push(e);
            if prefix.len() < inst.n() && !alive(inst, ext, prefix, rng) {
                stats.pruned += 1;
                prefix.pop();
                continue;
            }
            if must_differ {
                used[idx] = true;
            }
            if rec(inst, ctx, ext, elements, distinct, used, prefix, rng, stats) {
                return true;
            }
            if must_differ {
                used[idx] = false;
            }
            prefix.pop();
        }
        false
    }

    rec(inst, ctx, &ext, &elements, distinct, &mut used, &mut prefix, rng, stats).then_some(prefix)
}
