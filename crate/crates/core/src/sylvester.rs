//! Block-Toeplitz (generalized Sylvester) matrices of block instances.
//!
//! For a [`GeneralInstance`] with blocks `(S_i, r_i)` and a concrete choice of
//! `alphas`, block `i` of `M` has `r_i` rows; its first row holds the
//! coefficients of `x^(k - |S_i| - 1) * prod_{j in S_i} (x + alpha_j)` in
//! descending degree order, and each further row is the previous one shifted
//! right by one column.
//!
//! A row vector `y` annihilates `M` exactly when the polynomials `q_i` read off
//! its segments satisfy `sum_i p_i q_i = 0`, where
//! `p_i = x^(k - |S_i| - r_i) * prod_{j in S_i} (x + alpha_j)`.

use crate::constraints::{GeneralInstance, IndexSet};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::matrix::Matrix;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterMatrix {
    instance: GeneralInstance,
    alphas: Vec<FieldElement>,
    matrix: Matrix,
}

impl SylvesterMatrix {
    pub fn build(inst: &GeneralInstance, alphas: &[FieldElement], ctx: &FieldContext) -> Result<SylvesterMatrix> {
        if alphas.len() != inst.n() {
            return Err(Error::DimensionMismatch {
                what: "alpha vector length",
                expected: inst.n(),
                found: alphas.len(),
            });
        }
        let k = inst.k();
        let mut matrix = Matrix::zeros(k, k);
        let mut row = 0;
        for block in inst.blocks() {
            let s = block.set.len();
            let f = Polynomial::from_constraint_roots(ctx, block.set.iter(), alphas, k - s - 1)?;
            let first: Vec<FieldElement> = (0..k).map(|c| f.coeff(k - 1 - c)).collect();
            for t in 0..block.r {
                for c in t..k {
                    matrix[(row + t, c)] = first[c - t];
                }
            }
            // bottom-right entry of the block is prod alpha_j exactly when |S_i| + r_i = k
            let corner = matrix[(row + block.r - 1, k - 1)];
            if s + block.r == k {
                let prod = block
                    .set
                    .iter()
                    .fold(FieldElement::ONE, |acc, j| ctx.mul(acc, alphas[j]));
                assert_eq!(corner, prod, "block corner must be the product of its alphas");
            } else {
                assert!(corner.is_zero(), "block corner must vanish when |S_i| + r_i < k");
            }
            row += block.r;
        }
        Ok(SylvesterMatrix {
            instance: inst.clone(),
            alphas: alphas.to_vec(),
            matrix,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn instance(&self) -> &GeneralInstance {
        &self.instance
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    pub fn determinant(&self, ctx: &FieldContext) -> FieldElement {
        self.matrix.determinant(ctx).expect("M is square")
    }

    /// Nonzero `y` with `y * M = 0`, present iff `det M = 0`.
    pub fn nullspace_vector(&self, ctx: &FieldContext) -> Option<Vec<FieldElement>> {
        self.matrix.left_nullspace_vector(ctx)
    }

    /// Row indices of block `i`.
    pub fn block_rows(&self, block: usize) -> std::ops::Range<usize> {
        let start: usize = self.instance.blocks()[..block].iter().map(|b| b.r).sum();
        start..start + self.instance.blocks()[block].r
    }
}

/// The polynomials `p_i = x^(k - |S_i| - r_i) * prod_{j in S_i} (x + alpha_j)`.
pub fn block_polynomials(
    inst: &GeneralInstance,
    alphas: &[FieldElement],
    ctx: &FieldContext,
) -> Result<Vec<Polynomial>> {
    if alphas.len() != inst.n() {
        return Err(Error::DimensionMismatch {
            what: "alpha vector length",
            expected: inst.n(),
            found: alphas.len(),
        });
    }
    inst.blocks()
        .iter()
        .map(|b| Polynomial::from_constraint_roots(ctx, b.set.iter(), alphas, inst.k() - b.set.len() - b.r))
        .collect()
}

/// Splits `y` into segments of lengths `r_i`; segment `i` lists the
/// coefficients of `x^(r_i - 1), .., x, 1` of `q_i`.
pub fn vector_to_polys(y: &[FieldElement], inst: &GeneralInstance) -> Result<Vec<Polynomial>> {
    if y.len() != inst.k() {
        return Err(Error::DimensionMismatch {
            what: "nullspace vector length",
            expected: inst.k(),
            found: y.len(),
        });
    }
    let mut rest = y;
    Ok(inst
        .blocks()
        .iter()
        .map(|b| {
            let (seg, tail) = rest.split_at(b.r);
            rest = tail;
            Polynomial::from_coeffs(seg.iter().rev().copied().collect())
        })
        .collect())
}

/// `sum_i p_i q_i`.
pub fn combine(ps: &[Polynomial], qs: &[Polynomial], ctx: &FieldContext) -> Polynomial {
    ps.iter()
        .zip(qs)
        .fold(Polynomial::zero(), |acc, (p, q)| acc.add(&p.mul(q, ctx), ctx))
}

/// Evidence that the blocks in a violating subset make `M` rank deficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDeficiencyReport {
    pub omega: Vec<usize>,
    /// Intersection of the sets in omega.
    pub common: Vec<usize>,
    /// Total row count of the blocks in omega.
    pub r0: usize,
    /// `max (|S_i| + r_i)` over omega; only the first `k_prime` columns of
    /// those rows can be nonzero.
    pub k_prime: usize,
    pub trailing_columns_zero: bool,
    /// `M0 * W == 0` for the Vandermonde `W` in `-alpha_j`, `j` in `common`.
    pub annihilated: bool,
    pub rank_m0: usize,
    pub rank_w: usize,
    pub determinant_zero: bool,
}

impl RankDeficiencyReport {
    pub fn confirmed(&self) -> bool {
        self.trailing_columns_zero && self.annihilated && self.rank_m0 < self.r0 && self.determinant_zero
    }
}

/// Rebuilds the submatrix `M0` (rows of the blocks in `omega`, first `k'`
/// columns) and the Vandermonde `W = ((-alpha_j)^(k' - 1 - i))`, then checks
/// `M0 * W = 0` and `rank M0 < r0`.
///
/// `W` uses nonnegative exponents so it stays defined when some `alpha_j = 0`;
/// it differs from the negative-power form only by a column scaling.
pub fn rank_deficiency_witness(
    inst: &GeneralInstance,
    omega: &[usize],
    alphas: &[FieldElement],
    ctx: &FieldContext,
) -> Result<RankDeficiencyReport> {
    let blocks = inst.blocks();
    if omega.is_empty() {
        return Err(Error::NotViolating { omega: Vec::new() });
    }
    if let Some(&bad) = omega.iter().find(|&&i| i >= blocks.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: blocks.len(),
        });
    }
    let mut common = IndexSet::full(inst.n());
    for &i in omega {
        common.intersect_with(&blocks[i].set);
    }
    let r0: usize = omega.iter().map(|&i| blocks[i].r).sum();
    let k_prime = omega
        .iter()
        .map(|&i| blocks[i].set.len() + blocks[i].r)
        .max()
        .expect("omega is nonempty");
    if common.len() + r0 <= k_prime {
        return Err(Error::NotViolating { omega: omega.to_vec() });
    }

    let sylvester = SylvesterMatrix::build(inst, alphas, ctx)?;
    let m = sylvester.matrix();
    let rows: Vec<usize> = omega.iter().flat_map(|&i| sylvester.block_rows(i)).collect();
    let trailing_columns_zero = rows.iter().all(|&r| (k_prime..inst.k()).all(|c| m[(r, c)].is_zero()));
    let m0 = m.select(&rows, &(0..k_prime).collect::<Vec<_>>());

    let common = common.to_vec();
    let mut w = Matrix::zeros(k_prime, common.len());
    for (col, &j) in common.iter().enumerate() {
        let root = ctx.neg(alphas[j]);
        for i in 0..k_prime {
            w[(i, col)] = ctx.pow(root, (k_prime - 1 - i) as u64);
        }
    }
    let annihilated = m0.mul(&w, ctx)?.is_zero();

    Ok(RankDeficiencyReport {
        omega: omega.to_vec(),
        common,
        r0,
        k_prime,
        trailing_columns_zero,
        annihilated,
        rank_m0: m0.rank(ctx),
        rank_w: w.rank(ctx),
        determinant_zero: sylvester.determinant(ctx).is_zero(),
    })
}
