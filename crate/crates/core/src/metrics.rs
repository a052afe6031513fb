//! Block-scalar metric endomorphisms `(x, y) = ⟨A x, y⟩`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{CompactLieAlgebra, Subspace};
use crate::linalg::{axpy, Field, Matrix};
use crate::rootsys::RootSystem;
use crate::scalar::Scalar;

/// Tolerance for float-mode coefficient equality and orthogonality.
pub const COEFF_RTOL: f64 = 1e-9;

pub fn coeff_eq<S: Scalar>(a: &S, b: &S) -> bool {
    if S::EXACT {
        a == b
    } else {
        let (x, y) = (a.to_f64(), b.to_f64());
        (x - y).abs() <= COEFF_RTOL * x.abs().max(y.abs()).max(1e-300)
    }
}

/// Pairwise ⟨·,·⟩-orthogonal blocks spanning an ambient space (g, or m).
#[derive(Clone, Debug)]
pub struct ModuleDecomposition<S> {
    pub names: Vec<String>,
    pub blocks: Vec<Subspace<S>>,
}

impl<S: Field> ModuleDecomposition<S> {
    pub fn new(
        alg: &CompactLieAlgebra<S>,
        names: Vec<String>,
        blocks: Vec<Subspace<S>>,
        ambient: &Subspace<S>,
    ) -> Result<Self> {
        if names.len() != blocks.len() {
            return Err(Error::Dimension { expected: blocks.len(), got: names.len() });
        }
        for (i, a) in blocks.iter().enumerate() {
            for b in &blocks[i + 1..] {
                for x in a.basis() {
                    for y in b.basis() {
                        let v = alg.ip(x, y);
                        let ok = if S::EXACT {
                            v.is_zero()
                        } else {
                            v.to_f64().abs() <= COEFF_RTOL * alg.norm_f64(x) * alg.norm_f64(y)
                        };
                        if !ok {
                            return Err(Error::InvalidMetric("blocks are not orthogonal".into()));
                        }
                    }
                }
            }
        }
        let total: usize = blocks.iter().map(|b| b.dim()).sum();
        if total != ambient.dim() {
            return Err(Error::Dimension { expected: ambient.dim(), got: total });
        }
        if !blocks.iter().all(|b| ambient.contains_subspace(alg, b)) {
            return Err(Error::InvalidMetric("block outside the ambient space".into()));
        }
        Ok(ModuleDecomposition { names, blocks })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ambient(&self, alg: &CompactLieAlgebra<S>) -> Subspace<S> {
        let vs: Vec<Vec<S>> = self.blocks.iter().flat_map(|b| b.basis().to_vec()).collect();
        Subspace::span(alg, &vs)
    }

    /// Sum of the blocks with the given indices.
    pub fn block_sum(&self, alg: &CompactLieAlgebra<S>, idx: &[usize]) -> Subspace<S> {
        let vs: Vec<Vec<S>> = idx.iter().flat_map(|&i| self.blocks[i].basis().to_vec()).collect();
        Subspace::span(alg, &vs)
    }

    pub fn to_f64(&self, falg: &CompactLieAlgebra<f64>) -> ModuleDecomposition<f64> {
        ModuleDecomposition {
            names: self.names.clone(),
            blocks: self.blocks.iter().map(|b| subspace_to_f64(falg, b)).collect(),
        }
    }
}

pub fn subspace_to_f64<S: Field>(falg: &CompactLieAlgebra<f64>, s: &Subspace<S>) -> Subspace<f64> {
    let vs: Vec<Vec<f64>> = s.basis().iter().map(|v| v.iter().map(Scalar::to_f64).collect()).collect();
    Subspace::span(falg, &vs)
}

/// The operator `A`, scalar `coeffs[i]` on block `i`.
#[derive(Clone, Debug)]
pub struct MetricEndomorphism<S> {
    pub decomposition: ModuleDecomposition<S>,
    pub coeffs: Vec<S>,
    pub gauge: String,
}

pub fn make_metric<S: Field>(
    alg: &CompactLieAlgebra<S>,
    d: ModuleDecomposition<S>,
    coeffs: Vec<S>,
) -> Result<MetricEndomorphism<S>> {
    if coeffs.len() != d.len() {
        return Err(Error::Dimension { expected: d.len(), got: coeffs.len() });
    }
    if let Some(i) = coeffs.iter().position(|c| !c.is_positive()) {
        return Err(Error::InvalidMetric(format!("coefficient {} is not positive", i + 1)));
    }
    Ok(MetricEndomorphism { decomposition: d, coeffs, gauge: alg.gauge() })
}

impl<S: Field> MetricEndomorphism<S> {
    /// `A x`; components outside the ambient space are dropped.
    pub fn apply(&self, alg: &CompactLieAlgebra<S>, x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); x.len()];
        for (b, c) in self.decomposition.blocks.iter().zip(&self.coeffs) {
            axpy(c, &b.project(alg, x), &mut out);
        }
        out
    }

    /// `(x, y) = ⟨A x, y⟩`.
    pub fn inner(&self, alg: &CompactLieAlgebra<S>, x: &[S], y: &[S]) -> S {
        alg.ip(&self.apply(alg, x), y)
    }

    /// Matrix of `A` on the whole algebra (columns `A e_j`).
    pub fn matrix(&self, alg: &CompactLieAlgebra<S>) -> Matrix<S> {
        let cols: Vec<Vec<S>> = (0..alg.dim).map(|j| self.apply(alg, &alg.basis_vector(j))).collect();
        Matrix::from_cols(alg.dim, &cols)
    }

    pub fn scaled(&self, lambda: &S) -> Self {
        MetricEndomorphism {
            decomposition: self.decomposition.clone(),
            coeffs: self.coeffs.iter().map(|c| c.clone() * lambda.clone()).collect(),
            gauge: self.gauge.clone(),
        }
    }

    pub fn to_f64(&self, falg: &CompactLieAlgebra<f64>) -> MetricEndomorphism<f64> {
        MetricEndomorphism {
            decomposition: self.decomposition.to_f64(falg),
            coeffs: self.coeffs.iter().map(Scalar::to_f64).collect(),
            gauge: self.gauge.clone(),
        }
    }

    /// Distinct coefficients with the sum of their blocks (eigenspaces of A).
    pub fn eigenspaces(&self, alg: &CompactLieAlgebra<S>) -> Vec<(S, Subspace<S>)> {
        let mut groups: Vec<(S, Vec<usize>)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            match groups.iter_mut().find(|(g, _)| coeff_eq(g, c)) {
                Some((_, v)) => v.push(i),
                None => groups.push((c.clone(), vec![i])),
            }
        }
        groups
            .into_iter()
            .map(|(c, idx)| (c, self.decomposition.block_sum(alg, &idx)))
            .collect()
    }

    /// Largest defect of `⟨Ax,y⟩ = ⟨x,Ay⟩` over basis pairs.
    pub fn self_adjoint_defect(&self, alg: &CompactLieAlgebra<S>) -> f64 {
        let a = self.matrix(alg);
        let ga = alg.inner.mul(&a);
        let mut worst: f64 = 0.0;
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                worst = worst.max((ga[(i, j)].clone() - ga[(j, i)].clone()).to_f64().abs());
            }
        }
        worst
    }

    pub fn descriptor(&self) -> MetricDescriptor {
        MetricDescriptor {
            gauge: self.gauge.clone(),
            blocks: self.decomposition.names.clone(),
            dims: self.decomposition.blocks.iter().map(|b| b.dim()).collect(),
            coeffs: self.coeffs.iter().map(|c| c.to_json()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MetricDescriptor {
    pub gauge: String,
    pub blocks: Vec<String>,
    pub dims: Vec<usize>,
    pub coeffs: Vec<serde_json::Value>,
}

/// Whether `k` is adapted to the eigenspace decomposition `p_1 ⊕ … ⊕ p_s` of
/// `A`: `k = ⊕ (k ∩ p_i)` with each `k ∩ p_i` an ideal of `k`, and the
/// complement of `k ∩ p_i` in `p_i` invariant under `ad(k)`.
pub fn is_adapted<S: Field>(
    alg: &CompactLieAlgebra<S>,
    k: &Subspace<S>,
    metric: &MetricEndomorphism<S>,
) -> Result<bool> {
    if !k.is_subalgebra(alg) {
        return Err(Error::NotSubalgebra("k is not closed under the bracket".into()));
    }
    let eig = metric.eigenspaces(alg);
    let parts: Vec<Subspace<S>> = eig.iter().map(|(_, p)| k.intersection(alg, p)).collect();
    if parts.iter().map(|p| p.dim()).sum::<usize>() != k.dim() {
        return Ok(false);
    }
    for ((_, p), ki) in eig.iter().zip(&parts) {
        if !k.normalizes(alg, ki) {
            return Ok(false);
        }
        let rest = ki.complement_in(alg, p);
        if !k.normalizes(alg, &rest) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{W ∈ g : ad(W)∘A = A∘ad(W)}`.
pub fn max_right_isometry_algebra<S: Field>(alg: &CompactLieAlgebra<S>, metric: &MetricEndomorphism<S>) -> Subspace<S> {
    let n = alg.dim;
    let a = metric.matrix(alg);
    let mut m = Matrix::zeros(n * n, n);
    for k in 0..n {
        let ad = alg.ad(&alg.basis_vector(k));
        let c1 = ad.mul(&a);
        let c2 = a.mul(&ad);
        for i in 0..n {
            for j in 0..n {
                m[(i * n + j, k)] = c1[(i, j)].clone() - c2[(i, j)].clone();
            }
        }
    }
    Subspace::span(alg, &S::nullspace(&m))
}

/// A match of the metric with the naturally reductive form
/// `x⟨·,·⟩|_m + Σ u_j ⟨·,·⟩|_{h_j}`.
#[derive(Clone, Debug)]
pub struct NaturallyReductive<S> {
    pub candidate: usize,
    pub h: Subspace<S>,
    /// `None` when `h = g`.
    pub x: Option<S>,
    /// Eigenvalues of `A|_h` with their eigenspaces (ideals of `h`).
    pub u: Vec<(S, Subspace<S>)>,
}

impl<S: Field> NaturallyReductive<S> {
    /// Rebuild `A` from `(h, x, u)`.
    pub fn reassemble(&self, alg: &CompactLieAlgebra<S>) -> Matrix<S> {
        let m = self.h.complement(alg);
        let cols: Vec<Vec<S>> = (0..alg.dim)
            .map(|j| {
                let e = alg.basis_vector(j);
                let mut out = vec![S::zero(); alg.dim];
                if let Some(x) = &self.x {
                    axpy(x, &m.project(alg, &e), &mut out);
                }
                for (u, hj) in &self.u {
                    axpy(u, &hj.project(alg, &e), &mut out);
                }
                out
            })
            .collect();
        Matrix::from_cols(alg.dim, &cols)
    }
}

/// First candidate subalgebra `h` for which `A` has the naturally reductive
/// form: `A(h) ⊆ h`, `A = x` on `m = h^⊥`, and `A|_h` commutes with
/// `ad(h)|_h` (so its eigenspaces are ideals of `h`).
pub fn detect_naturally_reductive<S: Field>(
    alg: &CompactLieAlgebra<S>,
    metric: &MetricEndomorphism<S>,
    candidates: &[Subspace<S>],
) -> Result<Option<NaturallyReductive<S>>> {
    for (ci, h) in candidates.iter().enumerate() {
        if !h.is_subalgebra(alg) {
            return Err(Error::NotSubalgebra(format!("candidate {ci}")));
        }
        if !h.basis().iter().all(|y| h.contains(alg, &metric.apply(alg, y))) {
            continue;
        }
        let m = h.complement(alg);
        let mut x: Option<S> = None;
        let mut scalar_on_m = true;
        for v in m.basis() {
            let av = metric.apply(alg, v);
            let c = alg.ip(&av, v) / alg.ip(v, v);
            let resid: Vec<S> = av.iter().zip(v).map(|(a, b)| a.clone() - c.clone() * b.clone()).collect();
            let is_eig = if S::EXACT {
                resid.iter().all(|r| r.is_zero())
            } else {
                alg.norm_f64(&resid) <= COEFF_RTOL * alg.norm_f64(&av)
            };
            match (&x, is_eig) {
                (_, false) => scalar_on_m = false,
                (None, true) => x = Some(c),
                (Some(x0), true) if !coeff_eq(x0, &c) => scalar_on_m = false,
                _ => {}
            }
            if !scalar_on_m {
                break;
            }
        }
        if !scalar_on_m {
            continue;
        }
        let mut commutes = true;
        'outer: for y in h.basis() {
            for z in h.basis() {
                let lhs = metric.apply(alg, &alg.bracket(y, z));
                let rhs = alg.bracket(y, &metric.apply(alg, z));
                let d: Vec<S> = lhs.iter().zip(&rhs).map(|(a, b)| a.clone() - b.clone()).collect();
                let ok = if S::EXACT {
                    d.iter().all(|v| v.is_zero())
                } else {
                    alg.norm_f64(&d) <= COEFF_RTOL * (alg.norm_f64(&lhs) + alg.norm_f64(&rhs)).max(1e-300)
                };
                if !ok {
                    commutes = false;
                    break 'outer;
                }
            }
        }
        if !commutes {
            continue;
        }
        let u: Vec<(S, Subspace<S>)> = metric
            .eigenspaces(alg)
            .into_iter()
            .map(|(c, p)| (c, h.intersection(alg, &p)))
            .filter(|(_, s)| s.dim() > 0)
            .collect();
        return Ok(Some(NaturallyReductive { candidate: ci, h: h.clone(), x, u }));
    }
    Ok(None)
}

/// Candidate subalgebras for natural reductivity: block sums that are
/// subalgebras, plus `t ⊕ Σ_{α∈A⁺} v_α` for every closed symmetric
/// subsystem `A` (when root data is given). Sorted by dimension, largest
/// first, without duplicates.
pub fn natred_candidates<S: Field>(
    alg: &CompactLieAlgebra<S>,
    d: &ModuleDecomposition<S>,
    rs: Option<&RootSystem>,
) -> Vec<Subspace<S>> {
    let s = d.len();
    let mut out: Vec<Subspace<S>> = Vec::new();
    let push = |c: Subspace<S>, out: &mut Vec<Subspace<S>>| {
        if c.is_subalgebra(alg) && !out.iter().any(|o| o.equals(alg, &c)) {
            out.push(c);
        }
    };
    for mask in 1..(1u32 << s) {
        let idx: Vec<usize> = (0..s).filter(|i| mask & (1 << i) != 0).collect();
        push(d.block_sum(alg, &idx), &mut out);
    }
    if let Some(rs) = rs {
        for sub in rs.all_closed_symmetric_subsystems() {
            let mut span = alg.cartan_subspace();
            for i in sub.positive_members(rs) {
                if let Some(p) = alg.plane_subspace(&rs.roots[i].name) {
                    span = span.sum(alg, &p);
                }
            }
            push(span, &mut out);
        }
    }
    out.sort_by_key(|c| std::cmp::Reverse(c.dim()));
    out
}
