use crate::linalg::{axpy, Field, Matrix};
use crate::scalar::Scalar;

use super::CompactLieAlgebra;

/// Relative tolerance for float-mode membership tests.
pub const SUBSPACE_TOL: f64 = 1e-9;

/// Rank threshold of the pivoted Gram-Schmidt, relative to the largest input
/// norm.
const GS_RTOL: f64 = 1e-10;

/// A linear subspace of a compact Lie algebra.
///
/// The basis is ⟨·,·⟩-orthogonal; in float mode it is also normalized. Exact
/// bases are left unnormalized so that they stay rational.
#[derive(Clone, Debug)]
pub struct Subspace<S> {
    basis: Vec<Vec<S>>,
    ambient: usize,
}

impl<S: Field> Subspace<S> {
    pub fn zero(alg: &CompactLieAlgebra<S>) -> Self {
        Subspace { basis: Vec::new(), ambient: alg.dim }
    }

    pub fn full(alg: &CompactLieAlgebra<S>) -> Self {
        Self::coordinate(alg, &(0..alg.dim).collect::<Vec<_>>())
    }

    /// Span of basis vectors `e_i`, `i ∈ idx`.
    pub fn coordinate(alg: &CompactLieAlgebra<S>, idx: &[usize]) -> Self {
        Self::span(alg, &idx.iter().map(|&i| alg.basis_vector(i)).collect::<Vec<_>>())
    }

    /// Span of arbitrary vectors via Gram-Schmidt with column pivoting.
    pub fn span(alg: &CompactLieAlgebra<S>, vectors: &[Vec<S>]) -> Self {
        Self::span_scaled(alg, vectors, 0.0)
    }

    /// As [`Subspace::span`], with the float rank threshold taken relative
    /// to `max(scale, largest input norm)`.
    fn span_scaled(alg: &CompactLieAlgebra<S>, vectors: &[Vec<S>], scale: f64) -> Self {
        let mut rest: Vec<Vec<S>> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
        let max_norm = rest.iter().map(|v| alg.norm_f64(v)).fold(scale, f64::max);
        let mut basis: Vec<Vec<S>> = Vec::new();
        while !rest.is_empty() {
            let pick = if S::EXACT {
                match rest.iter().position(|v| !alg.norm2(v).is_zero()) {
                    Some(p) => p,
                    None => break,
                }
            } else {
                let (p, n) = rest
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (i, alg.norm_f64(v)))
                    .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
                if n <= GS_RTOL * max_norm || n == 0.0 {
                    break;
                }
                p
            };
            let mut b = rest.swap_remove(pick);
            if !S::EXACT {
                // second pass against rounding drift
                for q in &basis {
                    let c = alg.ip(&b, q) / alg.ip(q, q);
                    axpy(&(-c), q, &mut b);
                }
                let n = alg.norm_f64(&b);
                let inv = S::from_q(&crate::scalar::q_from_f64(1.0 / n));
                b = b.iter().map(|x| x.clone() * inv.clone()).collect();
            }
            let bb = alg.ip(&b, &b);
            for v in rest.iter_mut() {
                let c = alg.ip(v, &b) / bb.clone();
                axpy(&(-c), &b, v);
            }
            if S::EXACT {
                rest.retain(|v| v.iter().any(|x| !x.is_zero()));
            }
            basis.push(b);
        }
        Subspace { basis, ambient: alg.dim }
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, alg: &CompactLieAlgebra<S>, x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.ambient];
        for b in &self.basis {
            let c = alg.ip(x, b) / alg.ip(b, b);
            axpy(&c, b, &mut out);
        }
        out
    }

    /// Coordinates of `x` in the stored basis (of its projection).
    pub fn coords(&self, alg: &CompactLieAlgebra<S>, x: &[S]) -> Vec<S> {
        self.basis.iter().map(|b| alg.ip(x, b) / alg.ip(b, b)).collect()
    }

    /// Norm of `x − proj(x)` relative to `|x|` (0 for `x = 0`).
    pub fn distance_rel(&self, alg: &CompactLieAlgebra<S>, x: &[S]) -> f64 {
        let n = alg.norm_f64(x);
        if n == 0.0 {
            return 0.0;
        }
        let p = self.project(alg, x);
        let r: Vec<S> = x.iter().zip(&p).map(|(a, b)| a.clone() - b.clone()).collect();
        alg.norm_f64(&r) / n
    }

    pub fn contains(&self, alg: &CompactLieAlgebra<S>, x: &[S]) -> bool {
        if S::EXACT {
            let p = self.project(alg, x);
            p.iter().zip(x).all(|(a, b)| a == b)
        } else {
            self.distance_rel(alg, x) <= SUBSPACE_TOL
        }
    }

    pub fn contains_subspace(&self, alg: &CompactLieAlgebra<S>, other: &Subspace<S>) -> bool {
        other.basis.iter().all(|b| self.contains(alg, b))
    }

    pub fn equals(&self, alg: &CompactLieAlgebra<S>, other: &Subspace<S>) -> bool {
        self.dim() == other.dim() && self.contains_subspace(alg, other)
    }

    pub fn sum(&self, alg: &CompactLieAlgebra<S>, other: &Subspace<S>) -> Subspace<S> {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::span(alg, &v)
    }

    /// ⟨·,·⟩-orthogonal complement in the whole algebra.
    pub fn complement(&self, alg: &CompactLieAlgebra<S>) -> Subspace<S> {
        let rows: Vec<Vec<S>> = self.basis.iter().map(|b| alg.inner.mul_vec(b)).collect();
        let m = matrix_from_rows(&rows, alg.dim);
        Self::span(alg, &S::nullspace(&m))
    }

    /// Orthogonal complement of `self` inside `within`.
    pub fn complement_in(&self, alg: &CompactLieAlgebra<S>, within: &Subspace<S>) -> Subspace<S> {
        let vs: Vec<Vec<S>> = within
            .basis
            .iter()
            .map(|w| {
                let p = self.project(alg, w);
                w.iter().zip(&p).map(|(a, b)| a.clone() - b.clone()).collect()
            })
            .collect();
        Self::span(alg, &vs)
    }

    pub fn intersection(&self, alg: &CompactLieAlgebra<S>, other: &Subspace<S>) -> Subspace<S> {
        let comp = other.complement(alg);
        if comp.dim() == 0 {
            return self.clone();
        }
        // x = Σ a_i p_i with ⟨x, c_k⟩ = 0
        let mut m = Matrix::zeros(comp.dim(), self.dim());
        for (k, c) in comp.basis.iter().enumerate() {
            for (i, p) in self.basis.iter().enumerate() {
                m[(k, i)] = alg.ip(p, c);
            }
        }
        let vs: Vec<Vec<S>> = S::nullspace(&m).iter().map(|a| self.combine(a)).collect();
        Self::span(alg, &vs)
    }

    /// `Σ a_i b_i` over the stored basis.
    pub fn combine(&self, a: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.ambient];
        for (ai, b) in a.iter().zip(&self.basis) {
            axpy(ai, b, &mut out);
        }
        out
    }

    /// `[P, Q]`: span of brackets of basis vectors.
    pub fn module_product(alg: &CompactLieAlgebra<S>, p: &Subspace<S>, q: &Subspace<S>) -> Subspace<S> {
        let mut vs = Vec::with_capacity(p.dim() * q.dim());
        let mut scale: f64 = 0.0;
        for x in &p.basis {
            for y in &q.basis {
                vs.push(alg.bracket(x, y));
                scale = scale.max(alg.norm_f64(x) * alg.norm_f64(y));
            }
        }
        Self::span_scaled(alg, &vs, scale)
    }

    pub fn is_subalgebra(&self, alg: &CompactLieAlgebra<S>) -> bool {
        for (i, x) in self.basis.iter().enumerate() {
            for y in &self.basis[i + 1..] {
                if !self.contains(alg, &alg.bracket(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// `[self, other] ⊆ other`.
    pub fn normalizes(&self, alg: &CompactLieAlgebra<S>, other: &Subspace<S>) -> bool {
        self.basis
            .iter()
            .all(|x| other.basis.iter().all(|y| other.contains(alg, &alg.bracket(x, y))))
    }

    /// c_g(P) = {x : [x, p] = 0 for all p ∈ P}.
    pub fn centralizer(alg: &CompactLieAlgebra<S>, p: &Subspace<S>) -> Subspace<S> {
        let mut rows = Vec::new();
        for b in &p.basis {
            let ad = alg.ad(b);
            rows.extend(ad.to_rows());
        }
        let m = matrix_from_rows(&rows, alg.dim);
        Self::span(alg, &S::nullspace(&m))
    }

    /// n_g(P) = {x : [x, P] ⊆ P}.
    pub fn normalizer(alg: &CompactLieAlgebra<S>, p: &Subspace<S>) -> Subspace<S> {
        let comp = p.complement(alg);
        let mut rows = Vec::new();
        for b in &p.basis {
            // x ↦ ⟨c, [x, b]⟩ = −⟨c, ad(b) x⟩
            let ad = alg.ad(b);
            for c in &comp.basis {
                let gc = alg.inner.mul_vec(c);
                let row: Vec<S> = (0..alg.dim)
                    .map(|j| {
                        let mut acc = S::zero();
                        for (i, g) in gc.iter().enumerate() {
                            acc = acc + g.clone() * ad[(i, j)].clone();
                        }
                        acc
                    })
                    .collect();
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Self::full(alg);
        }
        let m = matrix_from_rows(&rows, alg.dim);
        Self::span(alg, &S::nullspace(&m))
    }
}

pub(crate) fn matrix_from_rows<S: Scalar>(rows: &[Vec<S>], cols: usize) -> Matrix<S> {
    let mut m = Matrix::zeros(0, cols);
    for r in rows {
        m.push_row(r.clone());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_su2;

    #[test]
    fn su2_subspaces() {
        let su2 = build_su2();
        let t = Subspace::coordinate(&su2, &[2]);
        assert!(t.is_subalgebra(&su2));
        let c = Subspace::centralizer(&su2, &t);
        assert!(c.equals(&su2, &t));
        let n = Subspace::normalizer(&su2, &t);
        assert!(n.equals(&su2, &t));
        let p = Subspace::coordinate(&su2, &[0, 1]);
        assert!(!p.is_subalgebra(&su2));
        let pp = Subspace::module_product(&su2, &p, &p);
        assert!(pp.equals(&su2, &t));
        assert_eq!(t.complement(&su2).dim(), 2);
        assert_eq!(p.intersection(&su2, &t).dim(), 0);

        let f = su2.to_f64();
        let tf = Subspace::coordinate(&f, &[2]);
        assert_eq!(Subspace::centralizer(&f, &tf).dim(), 1);
        assert_eq!(Subspace::normalizer(&f, &tf).dim(), 1);
    }
}
