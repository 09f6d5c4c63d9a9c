//! Reed-Solomon subcodes meeting a zero pattern at the best possible distance.
//!
//! Given `k` zero sets over `n` columns, let `ell` be the subset maximum of
//! `|intersection S_i| + |omega|`. Padding the instance with `ell - k` empty
//! sets gives `ell` rows that satisfy the GM-MDS condition. Each padded set is
//! then enlarged to exactly `ell - 1` roots, drawing on the `n` code columns
//! and `ell - 1` auxiliary columns, without breaking that condition. Row `i`
//! is the polynomial
//!
//! ```text
//! f_i(x) = prod_{j in S'_i} (x + alpha_j)
//! ```
//!
//! evaluated at `beta_j = -alpha_j` for the code columns, so `f_i` vanishes on
//! every column of `S_i`. Stacking the ascending coefficient vectors of the
//! `f_i` gives an `ell x ell` matrix `T_full`; the generator is the first `k`
//! rows of `T_full * V` with `V` the `ell x n` Vandermonde matrix in the
//! `beta_j`. Every nonzero codeword is the evaluation of a nonzero polynomial
//! of degree `< ell`, so `d >= n - ell + 1`, and the Singleton-type bound makes
//! that tight.
//!
//! Plain shifted rows `x^(ell - 1 - |S_i|) prod (x + alpha_j)` are not used:
//! two padded rows with the same set would coincide and `T_full` would be
//! singular for every choice of points.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constraints::{ConstraintInstance, GeneralInstance};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, FieldPolicy};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::search::{self, ExhaustiveStats};

/// Knobs for the evaluation-point search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Random distinct tuples tried per field before backtracking.
    pub attempts: u64,
    /// Try the random phase at larger prime powers before falling back to
    /// exhaustive search at the minimal field. The resulting `q` is then not
    /// minimal.
    pub escalate: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            attempts: 10_000,
            escalate: false,
        }
    }
}

/// Number of larger fields the escalation flag may try.
const ESCALATION_STEPS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Random,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub mode: SearchMode,
    /// Random tuples evaluated across all fields.
    pub random_attempts: u64,
    pub exhaustive_leaves: u64,
    pub exhaustive_pruned: u64,
    /// Field orders visited, in order.
    pub fields_tried: Vec<u64>,
}

/// A constructed subcode: field, evaluation points and generator.
#[derive(Debug, Clone)]
pub struct CodeDesign {
    ctx: FieldContext,
    instance: ConstraintInstance,
    ell: usize,
    alphas: Vec<FieldElement>,
    aux_alphas: Vec<FieldElement>,
    eval_points: Vec<FieldElement>,
    t_full: Matrix,
    g: Matrix,
    stats: Option<SearchStats>,
}

/// Builds the optimal design for `inst`. Deterministic in `(inst, policy, config, seed)`.
pub fn design(inst: &ConstraintInstance, policy: FieldPolicy, config: SearchConfig, seed: u64) -> Result<CodeDesign> {
    let bound = inst.singleton_bound()?;
    if !bound.is_feasible_length() {
        return Err(Error::InfeasibleLength {
            n: inst.n(),
            ell: bound.ell,
        });
    }
    let padded = inst.pad_to_ell()?;
    let ell = bound.ell;
    let n = inst.n();
    let min_size = (n + ell - 1).max(2) as u64;
    let minimal = FieldContext::make_field(min_size, policy)?;
    let exhausted = || Error::SearchExhausted {
        q: minimal.order(),
        n,
        ell,
    };
    let completed = padded.complete_sets(ell - 1)?.ok_or_else(exhausted)?;
    let total = completed.n();
    let blocks = GeneralInstance::new(total, completed.set_lists().into_iter().map(|s| (s, 1)).collect())?;
    let mut fields = vec![minimal.clone()];
    if config.escalate {
        for _ in 0..ESCALATION_STEPS {
            let last = fields.last().expect("nonempty").order();
            match FieldContext::make_field(last + 1, FieldPolicy::SmallestPrimePower) {
                Ok(f) => fields.push(f),
                Err(_) => break,
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = SearchStats {
        mode: SearchMode::Random,
        random_attempts: 0,
        exhaustive_leaves: 0,
        exhaustive_pruned: 0,
        fields_tried: Vec::new(),
    };
    for ctx in &fields {
        stats.fields_tried.push(ctx.order());
        for _ in 0..config.attempts {
            stats.random_attempts += 1;
            let alphas = search::candidate_tuple(ctx, n, total, &mut rng);
            if search::is_nonsingular(&blocks, &alphas, ctx) {
                return Ok(assemble(ctx.clone(), inst.clone(), &completed, alphas, Some(stats)));
            }
        }
    }

    stats.mode = SearchMode::Exhaustive;
    if stats.fields_tried.last() != Some(&minimal.order()) {
        stats.fields_tried.push(minimal.order());
    }
    let mut pit_rng = ChaCha8Rng::seed_from_u64(seed);
    pit_rng.set_stream(1);
    let mut ex = ExhaustiveStats::default();
    let found = search::exhaustive(&blocks, &minimal, n, &mut pit_rng, &mut ex);
    stats.exhaustive_leaves = ex.leaves;
    stats.exhaustive_pruned = ex.pruned;
    match found {
        Some(alphas) => Ok(assemble(minimal, inst.clone(), &completed, alphas, Some(stats))),
        None => Err(exhausted()),
    }
}

/// Coefficient matrix of the completed row polynomials, ascending powers.
fn row_polynomials(completed: &ConstraintInstance, alphas: &[FieldElement], ctx: &FieldContext) -> Result<Matrix> {
    let ell = completed.k();
    let mut t = Matrix::zeros(ell, ell);
    for (i, set) in completed.sets().iter().enumerate() {
        let f = Polynomial::from_constraint_roots(ctx, set.iter(), alphas, ell - 1 - set.len())?;
        for c in 0..ell {
            t[(i, c)] = f.coeff(c);
        }
    }
    Ok(t)
}

/// `V[r][j] = beta_j^r` for `r < rows`.
pub fn vandermonde(points: &[FieldElement], rows: usize, ctx: &FieldContext) -> Matrix {
    let mut v = Matrix::zeros(rows, points.len());
    for (j, &b) in points.iter().enumerate() {
        let mut pw = FieldElement::ONE;
        for r in 0..rows {
            v[(r, j)] = pw;
            pw = ctx.mul(pw, b);
        }
    }
    v
}

fn assemble(
    ctx: FieldContext,
    instance: ConstraintInstance,
    completed: &ConstraintInstance,
    mut alphas: Vec<FieldElement>,
    stats: Option<SearchStats>,
) -> CodeDesign {
    let ell = completed.k();
    let k = instance.k();
    let t_full = row_polynomials(completed, &alphas, &ctx).expect("one alpha per column");
    let aux_alphas = alphas.split_off(instance.n());
    let eval_points: Vec<FieldElement> = alphas.iter().map(|&a| ctx.neg(a)).collect();
    let v = vandermonde(&eval_points, ell, &ctx);
    let top: Vec<usize> = (0..k).collect();
    let all: Vec<usize> = (0..ell).collect();
    let g = t_full
        .select(&top, &all)
        .mul(&v, &ctx)
        .expect("T is k x ell and V is ell x n");

    let design = CodeDesign {
        ctx,
        instance,
        ell,
        alphas,
        aux_alphas,
        eval_points,
        t_full,
        g,
        stats,
    };
    assert!(
        design.t_full_invertible(),
        "row polynomials must be independent once det M is nonzero"
    );
    assert!(design.zero_pattern_holds(), "generator must vanish on every zero set");
    assert!(design.points_distinct(), "evaluation points must be distinct");
    design
}

impl CodeDesign {
    /// Reassembles a stored design. `t_full` and `g` are kept exactly as
    /// given so that verification sees what was stored.
    pub fn from_parts(
        ctx: FieldContext,
        instance: ConstraintInstance,
        alphas: Vec<FieldElement>,
        aux_alphas: Vec<FieldElement>,
        t_full: Matrix,
        g: Matrix,
    ) -> Result<CodeDesign> {
        let (n, k) = (instance.n(), instance.k());
        let ell = t_full.rows();
        let check = |what, expected, found| {
            if expected == found {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { what, expected, found })
            }
        };
        check("alpha count", n, alphas.len())?;
        check("T_full columns", ell, t_full.cols())?;
        check("G rows", k, g.rows())?;
        check("G columns", n, g.cols())?;
        if ell < k {
            return Err(Error::DimensionMismatch {
                what: "T_full rows (ell >= k)",
                expected: k,
                found: ell,
            });
        }
        let eval_points = alphas.iter().map(|&a| ctx.neg(a)).collect();
        Ok(CodeDesign {
            ctx,
            instance,
            ell,
            alphas,
            aux_alphas,
            eval_points,
            t_full,
            g,
            stats: None,
        })
    }

    pub fn field(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn instance(&self) -> &ConstraintInstance {
        &self.instance
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }

    pub fn k(&self) -> usize {
        self.instance.k()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Designed distance `n - ell + 1`.
    pub fn d(&self) -> usize {
        self.n() + 1 - self.ell
    }

    /// Errors the decoder is guaranteed to correct.
    pub fn correctable(&self) -> usize {
        (self.d() - 1) / 2
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    /// Roots of the row polynomials outside the code columns.
    pub fn aux_alphas(&self) -> &[FieldElement] {
        &self.aux_alphas
    }

    pub fn eval_points(&self) -> &[FieldElement] {
        &self.eval_points
    }

    pub fn t_full(&self) -> &Matrix {
        &self.t_full
    }

    /// First `k` rows of `T_full`.
    pub fn t(&self) -> Matrix {
        let top: Vec<usize> = (0..self.k()).collect();
        let all: Vec<usize> = (0..self.ell).collect();
        self.t_full.select(&top, &all)
    }

    pub fn vandermonde(&self) -> Matrix {
        vandermonde(&self.eval_points, self.ell, &self.ctx)
    }

    pub fn generator(&self) -> &Matrix {
        &self.g
    }

    pub fn search_stats(&self) -> Option<&SearchStats> {
        self.stats.as_ref()
    }

    pub fn t_full_invertible(&self) -> bool {
        self.t_full.rows() == self.t_full.cols() && !self.t_full.determinant(&self.ctx).expect("square").is_zero()
    }

    pub fn zero_pattern_holds(&self) -> bool {
        self.instance
            .sets()
            .iter()
            .enumerate()
            .all(|(i, s)| s.iter().all(|j| self.g[(i, j)].is_zero()))
    }

    pub fn points_distinct(&self) -> bool {
        let mut pts = self.eval_points.clone();
        pts.sort();
        pts.windows(2).all(|w| w[0] != w[1])
    }

    /// `message * G`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.k() {
            return Err(Error::DimensionMismatch {
                what: "message length",
                expected: self.k(),
                found: message.len(),
            });
        }
        self.g.left_mul(message, &self.ctx)
    }

    /// Recovers the message from a word with at most `correctable()` errors.
    ///
    /// Runs Gao's decoder for the parent `[n, ell]` Reed-Solomon code, then
    /// maps the recovered coefficient vector back through `T_full`.
    pub fn decode(&self, received: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let n = self.n();
        if received.len() != n {
            return Err(Error::DimensionMismatch {
                what: "received word length",
                expected: n,
                found: received.len(),
            });
        }
        let ctx = &self.ctx;
        let g0 = Polynomial::from_roots(ctx, &self.eval_points);
        let g1 = Polynomial::interpolate(&self.eval_points, received, ctx)?;
        let stop = (n + self.ell).div_ceil(2);
        let (g, v) = Polynomial::gcd_partial(&g0, &g1, stop, ctx)?;
        let (f1, r) = g.divrem(&v, ctx)?;
        if !r.is_zero() || f1.degree().is_some_and(|d| d >= self.ell) {
            return Err(Error::DecodeFailure("too many errors for the parent Reed-Solomon code"));
        }
        let c: Vec<FieldElement> = (0..self.ell).map(|i| f1.coeff(i)).collect();
        let u = self
            .t_full
            .solve_left(&c, ctx)?
            .ok_or(Error::DecodeFailure("T_full is singular"))?;
        if u[self.k()..].iter().any(|x| !x.is_zero()) {
            return Err(Error::DecodeFailure("codeword lies outside the subcode"));
        }
        Ok(u[..self.k()].to_vec())
    }
}
