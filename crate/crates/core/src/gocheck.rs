//! The geodesic-orbit property at a tangent vector as a linear feasibility
//! problem.
//!
//! Every formulation asks for unknowns `z` (coordinates on a basis of some
//! subspace of g) with `M z = b`, where the rows are indexed by a basis of
//! the tangent space (or of g in the Lie-group case). Residual diagnostics
//! are computed on a normalized system: `X` scaled to ⟨X,X⟩ = 1, rows and
//! unknowns scaled to ⟨·,·⟩-unit vectors, and everything divided by `(X,X)`.
//! With this normalization verdicts are invariant under homotheties of the
//! metric.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{CompactLieAlgebra, Subspace};
use crate::linalg::{axpy, lstsq, Field, Matrix};
use crate::metrics::{subspace_to_f64, MetricEndomorphism, ModuleDecomposition};
use crate::scalar::{q_from_f64, Scalar, Q};

/// Reductive decomposition `g = h ⊕ m` with `[h, m] ⊆ m`.
#[derive(Clone, Debug)]
pub struct ReductiveSpace<S> {
    pub alg: CompactLieAlgebra<S>,
    pub h: Subspace<S>,
    pub m: Subspace<S>,
}

impl<S: Field> ReductiveSpace<S> {
    /// `m` is the ⟨·,·⟩-orthogonal complement of `h`.
    pub fn new(alg: CompactLieAlgebra<S>, h: Subspace<S>) -> Result<Self> {
        if !h.is_subalgebra(&alg) {
            return Err(Error::NotSubalgebra("isotropy algebra".into()));
        }
        let m = h.complement(&alg);
        if !h.normalizes(&alg, &m) {
            return Err(Error::Construction("[h, m] is not contained in m".into()));
        }
        Ok(ReductiveSpace { alg, h, m })
    }

    /// The Lie group itself: `h = 0`, `m = g`.
    pub fn group(alg: CompactLieAlgebra<S>) -> Self {
        let h = Subspace::zero(&alg);
        let m = Subspace::full(&alg);
        ReductiveSpace { alg, h, m }
    }

    pub fn project_m(&self, x: &[S]) -> Vec<S> {
        self.m.project(&self.alg, x)
    }

    fn check_tangent(&self, x: &[S]) -> Result<()> {
        let d = self.m.distance_rel(&self.alg, x);
        let ok = if S::EXACT { self.m.contains(&self.alg, x) } else { d <= 1e-9 };
        if ok {
            Ok(())
        } else {
            Err(Error::NotInTangentSpace(d))
        }
    }
}

impl ReductiveSpace<Q> {
    pub fn to_f64(&self) -> ReductiveSpace<f64> {
        let alg = self.alg.to_f64();
        let h = subspace_to_f64(&alg, &self.h);
        let m = subspace_to_f64(&alg, &self.m);
        ReductiveSpace { alg, h, m }
    }
}

/// Which criterion is solved.
#[derive(Clone, Debug)]
pub enum Formulation<S> {
    /// `∃ Z ∈ h : ([X+Z, Y]_m, X) = 0 ∀ Y ∈ m`.
    Direct,
    /// `∃ V ∈ h, U = Σ u_j U_j : ([X+V, Y]_m, X) + (L(U, Y), X) = 0 ∀ Y ∈ m`,
    /// with the operators `L(U_j, ·)` given as matrices on g.
    Reduced { ops: Vec<Matrix<S>> },
    /// `∃ V ∈ h, W ∈ c : [A X, X + V + W] ∈ h` with `c = c_g(h) ∩ m`.
    NormalTransitive { c: Subspace<S> },
    /// `∃ W ∈ k : [A X, X + W] = 0` on the group (`h = 0`).
    LieGroup { k: Subspace<S> },
}

impl<S: Field> Formulation<S> {
    pub fn name(&self) -> &'static str {
        match self {
            Formulation::Direct => "direct",
            Formulation::Reduced { .. } => "reduced",
            Formulation::NormalTransitive { .. } => "normal_transitive",
            Formulation::LieGroup { .. } => "lie_group",
        }
    }
}

impl Formulation<Q> {
    fn to_f64(&self, falg: &CompactLieAlgebra<f64>) -> Formulation<f64> {
        match self {
            Formulation::Direct => Formulation::Direct,
            Formulation::Reduced { ops } => Formulation::Reduced { ops: ops.iter().map(|m| m.to_f64()).collect() },
            Formulation::NormalTransitive { c } => Formulation::NormalTransitive { c: subspace_to_f64(falg, c) },
            Formulation::LieGroup { k } => Formulation::LieGroup { k: subspace_to_f64(falg, k) },
        }
    }
}

/// A formulation together with its space and metric.
#[derive(Clone, Debug)]
pub struct Setup<S> {
    pub space: ReductiveSpace<S>,
    pub metric: MetricEndomorphism<S>,
    pub form: Formulation<S>,
}

/// The linear system `M z = b` at one tangent vector.
#[derive(Clone, Debug)]
pub struct LinSys<S> {
    pub m: Matrix<S>,
    pub b: Vec<S>,
    /// Vectors of g carried by the unknowns (`None` for operator coefficients).
    pub unknowns: Vec<Option<Vec<S>>>,
    row_norms: Vec<f64>,
    col_norms: Vec<f64>,
    /// ⟨X,X⟩^{1/2}
    xnorm: f64,
    /// (X,X)
    xa: f64,
}

impl<S: Field> Setup<S> {
    pub fn new(space: ReductiveSpace<S>, metric: MetricEndomorphism<S>, form: Formulation<S>) -> Result<Self> {
        let setup = Setup { space, metric, form };
        if let Formulation::Reduced { ops } = &setup.form {
            for (i, op) in ops.iter().enumerate() {
                let d = setup.operator_skew_defect(op);
                let tol = if S::EXACT { 0.0 } else { 1e-9 };
                if d > tol {
                    return Err(Error::NonSkewOperator { index: i, defect: d });
                }
            }
        }
        Ok(setup)
    }

    /// Largest `|(L y, z) + (y, L z)|` over basis pairs of m, relative to the
    /// operator scale.
    pub fn operator_skew_defect(&self, op: &Matrix<S>) -> f64 {
        let alg = &self.space.alg;
        let basis = self.space.m.basis();
        let mut worst: f64 = 0.0;
        let scale = op.to_f64().frobenius().max(1e-300);
        for y in basis {
            let ly = self.space.project_m(&op.mul_vec(y));
            for z in basis {
                let lz = self.space.project_m(&op.mul_vec(z));
                let v = self.metric.inner(alg, &ly, z) + self.metric.inner(alg, y, &lz);
                let n = alg.norm_f64(y) * alg.norm_f64(z);
                let rel = v.to_f64().abs() / (n * scale);
                worst = worst.max(if S::EXACT && !v.is_zero() { rel.max(f64::MIN_POSITIVE) } else { rel });
            }
        }
        worst
    }

    /// Test vectors indexing the rows.
    fn row_vectors(&self) -> Vec<Vec<S>> {
        match &self.form {
            Formulation::LieGroup { .. } => (0..self.space.alg.dim).map(|i| self.space.alg.basis_vector(i)).collect(),
            _ => self.space.m.basis().to_vec(),
        }
    }

    pub fn system(&self, x: &[S]) -> Result<LinSys<S>> {
        let alg = &self.space.alg;
        self.space.check_tangent(x)?;
        let ax = self.metric.apply(alg, x);
        let rows = self.row_vectors();
        let mut unknowns: Vec<Option<Vec<S>>> = Vec::new();
        match &self.form {
            Formulation::Direct => unknowns.extend(self.space.h.basis().iter().cloned().map(Some)),
            Formulation::Reduced { ops } => {
                unknowns.extend(self.space.h.basis().iter().cloned().map(Some));
                unknowns.extend(ops.iter().map(|_| None));
            }
            Formulation::NormalTransitive { c } => {
                unknowns.extend(self.space.h.basis().iter().cloned().map(Some));
                unknowns.extend(c.basis().iter().cloned().map(Some));
            }
            Formulation::LieGroup { k } => unknowns.extend(k.basis().iter().cloned().map(Some)),
        }
        let n_h = self.space.h.dim();
        let mut m = Matrix::zeros(rows.len(), unknowns.len());
        let mut b = Vec::with_capacity(rows.len());
        match &self.form {
            Formulation::Direct | Formulation::Reduced { .. } => {
                // row Y: ⟨[w, Y], AX⟩ for w ∈ h; ⟨L_j Y, AX⟩ for operators
                for (i, y) in rows.iter().enumerate() {
                    for (j, w) in unknowns.iter().enumerate() {
                        m[(i, j)] = match w {
                            Some(w) => alg.ip(&alg.bracket(w, y), &ax),
                            None => {
                                let Formulation::Reduced { ops } = &self.form else { unreachable!() };
                                alg.ip(&self.space.project_m(&ops[j - n_h].mul_vec(y)), &ax)
                            }
                        };
                    }
                    b.push(-alg.ip(&alg.bracket(x, y), &ax));
                }
            }
            Formulation::NormalTransitive { .. } | Formulation::LieGroup { .. } => {
                // row Y: ⟨[AX, w], Y⟩
                let brs: Vec<Vec<S>> = unknowns.iter().map(|w| alg.bracket(&ax, w.as_ref().unwrap())).collect();
                let base = alg.bracket(&ax, x);
                for (i, y) in rows.iter().enumerate() {
                    for (j, br) in brs.iter().enumerate() {
                        m[(i, j)] = alg.ip(br, y);
                    }
                    b.push(-alg.ip(&base, y));
                }
            }
        }
        let row_norms = rows.iter().map(|y| alg.norm_f64(y)).collect();
        let col_norms = unknowns.iter().map(|w| w.as_ref().map_or(1.0, |w| alg.norm_f64(w))).collect();
        Ok(LinSys {
            m,
            b,
            unknowns,
            row_norms,
            col_norms,
            xnorm: alg.norm_f64(x),
            xa: self.metric.inner(alg, x, x).to_f64(),
        })
    }

    /// The defining condition evaluated directly from brackets at the
    /// candidate `z`; returns the normalized residual norm.
    pub fn condition_residual(&self, x: &[S], z: &[S]) -> Result<f64> {
        let alg = &self.space.alg;
        let ax = self.metric.apply(alg, x);
        let rows = self.row_vectors();
        let n_h = self.space.h.dim();
        let mut lifted = vec![S::zero(); alg.dim];
        let mut op_sum: Option<Matrix<S>> = None;
        let basis: Vec<Vec<S>> = match &self.form {
            Formulation::Direct | Formulation::Reduced { .. } => self.space.h.basis().to_vec(),
            Formulation::NormalTransitive { c } => {
                let mut v = self.space.h.basis().to_vec();
                v.extend(c.basis().iter().cloned());
                v
            }
            Formulation::LieGroup { k } => k.basis().to_vec(),
        };
        for (zi, w) in z.iter().zip(&basis) {
            axpy(zi, w, &mut lifted);
        }
        if let Formulation::Reduced { ops } = &self.form {
            let mut acc: Matrix<S> = Matrix::zeros(alg.dim, alg.dim);
            for (j, op) in ops.iter().enumerate() {
                let c = z[n_h + j].clone();
                for r in 0..alg.dim {
                    for s in 0..alg.dim {
                        acc[(r, s)] = acc[(r, s)].clone() + c.clone() * op[(r, s)].clone();
                    }
                }
            }
            op_sum = Some(acc);
        }
        let xa = self.metric.inner(alg, x, x).to_f64();
        let mut sq = 0.0;
        for y in &rows {
            let v = match &self.form {
                Formulation::Direct | Formulation::Reduced { .. } => {
                    let mut t = x.to_vec();
                    axpy(&S::one(), &lifted, &mut t);
                    let mut v = alg.ip(&alg.bracket(&t, y), &ax);
                    if let Some(op) = &op_sum {
                        v = v + alg.ip(&self.space.project_m(&op.mul_vec(y)), &ax);
                    }
                    v
                }
                _ => {
                    let mut t = x.to_vec();
                    axpy(&S::one(), &lifted, &mut t);
                    alg.ip(&alg.bracket(&ax, &t), y)
                }
            };
            let e = v.to_f64() / (alg.norm_f64(y) * xa);
            sq += e * e;
        }
        Ok(sq.sqrt())
    }
}

impl Setup<Q> {
    pub fn to_f64(&self) -> Setup<f64> {
        let space = self.space.to_f64();
        let metric = self.metric.to_f64(&space.alg);
        let form = self.form.to_f64(&space.alg);
        Setup { space, metric, form }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    /// Feasible when the normalized residual is at most this.
    pub feas: f64,
    /// Infeasibility certified when the residual is at least this ...
    pub infeas: f64,
    /// ... and the smallest nonzero singular value is at least this.
    pub sigma: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { feas: 1e-9, infeas: 1e-3, sigma: 1e-6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Feasible,
    Infeasible,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    GoConfirmedOnSamples,
    NonGoCertified,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Arith {
    Exact,
    Float,
}

/// Float diagnostics of the normalized system.
#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub residual: f64,
    pub sigma_min: Option<f64>,
    pub rank: usize,
    /// Least-squares solution in the unnormalized unknowns.
    pub z: Vec<f64>,
}

pub fn diagnostics<S: Field>(sys: &LinSys<S>) -> Diagnostics {
    let (r, c) = (sys.m.rows(), sys.m.cols());
    let mut mf = Matrix::zeros(r, c);
    let mut bf = vec![0.0; r];
    for i in 0..r {
        for j in 0..c {
            mf[(i, j)] = sys.m[(i, j)].to_f64() * sys.xnorm / (sys.xa * sys.row_norms[i] * sys.col_norms[j]);
        }
        bf[i] = sys.b[i].to_f64() / (sys.xa * sys.row_norms[i]);
    }
    let ls = lstsq(&mf, &bf);
    let residual = ls.residual.iter().map(|v| v * v).sum::<f64>().sqrt();
    let z = ls.x.iter().zip(&sys.col_norms).map(|(v, cn)| v * sys.xnorm / cn).collect();
    Diagnostics { residual, sigma_min: ls.sigma_min_nonzero, rank: ls.rank, z }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleResult {
    #[serde(rename = "X")]
    pub x: Vec<f64>,
    pub verdict: Verdict,
    pub decided_by: Arith,
    pub escalated: bool,
    pub residual: f64,
    pub smallest_nonzero_singular_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_residual: Option<f64>,
}

impl SampleResult {
    /// Infeasible with a certificate: exact rank, or residual and
    /// conditioning above the hard thresholds.
    pub fn certifies_non_go(&self, tol: &Tolerances) -> bool {
        self.verdict == Verdict::Infeasible
            && (self.decided_by == Arith::Exact
                || (self.residual >= tol.infeas && self.smallest_nonzero_singular_value.is_none_or(|s| s >= tol.sigma)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GoCertificate {
    pub mode: String,
    pub arithmetic: Arith,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub kmax_dim: Option<usize>,
    pub samples: Vec<SampleResult>,
    pub overall: Overall,
}

/// Exact and float versions of one problem.
#[derive(Clone, Debug)]
pub struct GoProblem {
    pub exact: Setup<Q>,
    pub float: Setup<f64>,
    /// Re-decide float samples in the indeterminate band exactly.
    pub escalate: bool,
}

fn witness_vector<S: Field>(sys: &LinSys<S>, z: &[S], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for (zi, w) in z.iter().zip(&sys.unknowns) {
        if let Some(w) = w {
            for (o, wv) in out.iter_mut().zip(w) {
                *o += zi.to_f64() * wv.to_f64();
            }
        }
    }
    out
}

impl GoProblem {
    pub fn new(exact: Setup<Q>) -> Self {
        let float = exact.to_f64();
        GoProblem { exact, float, escalate: true }
    }

    pub fn mode(&self) -> &'static str {
        self.exact.form.name()
    }

    fn exact_sample(&self, x: &[Q], xf: Vec<f64>, escalated: bool) -> Result<SampleResult> {
        let sys = self.exact.system(x)?;
        let d = diagnostics(&sys);
        let sol = Q::solve(&sys.m, &sys.b);
        let feasible = sol.consistent == Some(true);
        let (witness, witness_residual) = if feasible {
            let wr = self.exact.condition_residual(x, &sol.x)?;
            (Some(witness_vector(&sys, &sol.x, self.exact.space.alg.dim)), Some(wr))
        } else {
            (None, None)
        };
        Ok(SampleResult {
            x: xf,
            verdict: if feasible { Verdict::Feasible } else { Verdict::Infeasible },
            decided_by: Arith::Exact,
            escalated,
            residual: if feasible { 0.0 } else { d.residual },
            smallest_nonzero_singular_value: d.sigma_min,
            witness,
            witness_residual,
        })
    }

    /// Decide one sample. Float mode escalates indeterminate samples to exact
    /// arithmetic unless `escalate` is off.
    pub fn check(&self, x: &[Q], arith: Arith, tol: &Tolerances) -> Result<SampleResult> {
        let xf: Vec<f64> = x.iter().map(Scalar::to_f64).collect();
        if arith == Arith::Exact {
            return self.exact_sample(x, xf, false);
        }
        let sys = self.float.system(&xf)?;
        let d = diagnostics(&sys);
        let guard = d.sigma_min.is_none_or(|s| s >= tol.sigma);
        let verdict = if d.residual <= tol.feas {
            Verdict::Feasible
        } else if d.residual >= tol.infeas && guard {
            Verdict::Infeasible
        } else {
            Verdict::Indeterminate
        };
        if verdict == Verdict::Indeterminate && self.escalate {
            return self.exact_sample(x, xf, true);
        }
        let (witness, witness_residual) = if verdict == Verdict::Feasible {
            let wr = self.float.condition_residual(&xf, &d.z)?;
            (Some(witness_vector(&sys, &d.z, self.float.space.alg.dim)), Some(wr))
        } else {
            (None, None)
        };
        Ok(SampleResult {
            x: xf,
            verdict,
            decided_by: Arith::Float,
            escalated: false,
            residual: d.residual,
            smallest_nonzero_singular_value: d.sigma_min,
            witness,
            witness_residual,
        })
    }

    /// Check all samples (in parallel, results in input order).
    pub fn certify(&self, samples: &[Vec<Q>], arith: Arith, tol: &Tolerances, seed: u64) -> Result<GoCertificate> {
        let results: Vec<SampleResult> =
            samples.par_iter().map(|x| self.check(x, arith, tol)).collect::<Result<Vec<_>>>()?;
        let overall = if results.iter().any(|r| r.certifies_non_go(tol)) {
            Overall::NonGoCertified
        } else if results.iter().all(|r| r.verdict == Verdict::Feasible) {
            Overall::GoConfirmedOnSamples
        } else {
            Overall::Indeterminate
        };
        let kmax_dim = match &self.exact.form {
            Formulation::LieGroup { k } => Some(k.dim()),
            _ => None,
        };
        Ok(GoCertificate {
            mode: self.mode().to_string(),
            arithmetic: arith,
            seed,
            tolerances: *tol,
            kmax_dim,
            samples: results,
            overall,
        })
    }
}

/// GO check on a compact Lie group: the right-isometry algebra `k_max` is
/// computed from the metric and `[A X, X + W] = 0` is solved over it.
pub fn lie_group_problem(alg: &CompactLieAlgebra<Q>, metric: &MetricEndomorphism<Q>) -> Result<GoProblem> {
    let k = crate::metrics::max_right_isometry_algebra(alg, metric);
    let space = ReductiveSpace::group(alg.clone());
    Ok(GoProblem::new(Setup::new(space, metric.clone(), Formulation::LieGroup { k })?))
}

pub fn lie_group_go_check(
    alg: &CompactLieAlgebra<Q>,
    metric: &MetricEndomorphism<Q>,
    samples: &[Vec<Q>],
    arith: Arith,
    tol: &Tolerances,
    seed: u64,
) -> Result<GoCertificate> {
    lie_group_problem(alg, metric)?.certify(samples, arith, tol, seed)
}

/// Sampling strategies for tangent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Gaussian direction in the whole space, normalized.
    Sphere(usize),
    /// One random unit vector per block.
    PerBlock,
    /// One vector per unordered pair of blocks: a unit vector in each.
    CrossBlock,
    /// Sum of random unit vectors in every block.
    AllBlocks(usize),
}

/// Grid for rounding sampled coefficients to rationals.
const SAMPLE_GRID: f64 = 1e6;

fn round_q(x: f64) -> Q {
    let r = (x * SAMPLE_GRID).round();
    q_from_f64(r) / q_from_f64(SAMPLE_GRID)
}

/// Random vector of ⟨·,·⟩-norm about 1 in `block`, with rational
/// coefficients on the block's exact basis.
fn block_vector(alg: &CompactLieAlgebra<Q>, block: &Subspace<Q>, rng: &mut ChaCha8Rng) -> Vec<Q> {
    let g: Vec<f64> = (0..block.dim()).map(|_| rng.sample(StandardNormal)).collect();
    let n = g.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-12);
    let coeffs: Vec<Q> = g
        .iter()
        .zip(block.basis())
        .map(|(v, b)| round_q(v / (n * alg.norm_f64(b))))
        .collect();
    block.combine(&coeffs)
}

/// Deterministic tangent-vector samples for a block decomposition.
pub fn sample_tangent_vectors(
    alg: &CompactLieAlgebra<Q>,
    blocks: &ModuleDecomposition<Q>,
    strategy: Strategy,
    seed: u64,
) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = &blocks.blocks;
    let nonzero = |v: &Vec<Q>| v.iter().any(|c| !num::Zero::is_zero(c));
    let mut out = Vec::new();
    match strategy {
        Strategy::Sphere(n) => {
            let whole = blocks.ambient(alg);
            while out.len() < n {
                let v = block_vector(alg, &whole, &mut rng);
                if nonzero(&v) {
                    out.push(v);
                }
            }
        }
        Strategy::PerBlock => {
            for blk in b {
                out.push(block_vector(alg, blk, &mut rng));
            }
        }
        Strategy::CrossBlock => {
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    let mut v = block_vector(alg, &b[i], &mut rng);
                    let w = block_vector(alg, &b[j], &mut rng);
                    axpy(&Q::from_integer(1.into()), &w, &mut v);
                    out.push(v);
                }
            }
        }
        Strategy::AllBlocks(n) => {
            for _ in 0..n {
                let mut v = vec![Q::from_integer(0.into()); alg.dim];
                for blk in b {
                    let w = block_vector(alg, blk, &mut rng);
                    axpy(&Q::from_integer(1.into()), &w, &mut v);
                }
                out.push(v);
            }
        }
    }
    out
}

/// The standard sample set: per-block, cross-block, all-blocks and sphere
/// samples, each drawn from its own seeded stream.
pub fn standard_samples(alg: &CompactLieAlgebra<Q>, blocks: &ModuleDecomposition<Q>, seed: u64, n: usize) -> Vec<Vec<Q>> {
    let mut out = sample_tangent_vectors(alg, blocks, Strategy::PerBlock, seed);
    out.extend(sample_tangent_vectors(alg, blocks, Strategy::CrossBlock, seed.wrapping_add(1)));
    out.extend(sample_tangent_vectors(alg, blocks, Strategy::AllBlocks(n), seed.wrapping_add(2)));
    out.extend(sample_tangent_vectors(alg, blocks, Strategy::Sphere(n), seed.wrapping_add(3)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_su2;
    use crate::metrics::make_metric;
    use crate::scalar::qi;

    fn su2(a: i64, b: i64, c: i64) -> (CompactLieAlgebra<Q>, MetricEndomorphism<Q>, ModuleDecomposition<Q>) {
        let g = build_su2();
        let blocks = (0..3).map(|i| Subspace::coordinate(&g, &[i])).collect();
        let d = ModuleDecomposition::new(&g, vec!["e1".into(), "e2".into(), "e3".into()], blocks, &Subspace::full(&g))
            .unwrap();
        let m = make_metric(&g, d.clone(), vec![qi(a), qi(b), qi(c)]).unwrap();
        (g, m, d)
    }

    #[test]
    fn su2_verdicts() {
        let tol = Tolerances::default();
        let (g, m, d) = su2(1, 2, 3);
        let xs = standard_samples(&g, &d, 7, 4);
        let c = lie_group_go_check(&g, &m, &xs, Arith::Exact, &tol, 7).unwrap();
        assert_eq!(c.kmax_dim, Some(0));
        assert_eq!(c.overall, Overall::NonGoCertified);
        let c = lie_group_go_check(&g, &m, &xs, Arith::Float, &tol, 7).unwrap();
        assert_eq!(c.overall, Overall::NonGoCertified);

        let (g, m, d) = su2(2, 2, 5);
        let xs = standard_samples(&g, &d, 7, 4);
        for arith in [Arith::Exact, Arith::Float] {
            let c = lie_group_go_check(&g, &m, &xs, arith, &tol, 7).unwrap();
            assert_eq!(c.overall, Overall::GoConfirmedOnSamples);
            for s in &c.samples {
                assert!(s.witness_residual.unwrap() <= tol.feas);
            }
        }
    }

    #[test]
    fn samplers() {
        let (g, _, d) = su2(1, 2, 3);
        let a = standard_samples(&g, &d, 11, 3);
        let b = standard_samples(&g, &d, 11, 3);
        assert_eq!(a, b);
        assert_eq!(sample_tangent_vectors(&g, &d, Strategy::CrossBlock, 1).len(), 3);
        for v in sample_tangent_vectors(&g, &d, Strategy::AllBlocks(5), 2) {
            assert!(d.blocks.iter().all(|blk| blk.project(&g, &v).iter().any(|c| !num::Zero::is_zero(c))));
        }
    }

    #[test]
    fn rejects_non_tangent() {
        let (g, m, _) = su2(1, 2, 3);
        let h = Subspace::coordinate(&g, &[2]);
        let space = ReductiveSpace::new(g.clone(), h).unwrap();
        let d = ModuleDecomposition::new(
            &g,
            vec!["e1".into(), "e2".into()],
            vec![Subspace::coordinate(&g, &[0]), Subspace::coordinate(&g, &[1])],
            &space.m,
        )
        .unwrap();
        let metric = make_metric(&g, d, vec![qi(1), qi(1)]).unwrap();
        let _ = m;
        let p = GoProblem::new(Setup::new(space, metric, Formulation::Direct).unwrap());
        let x = vec![qi(0), qi(0), qi(1)];
        assert!(matches!(p.check(&x, Arith::Exact, &Tolerances::default()), Err(Error::NotInTangentSpace(_))));
    }
}
