//! Compact Lie algebras as structure-constant tensors.
//!
//! Bases are always orthogonal for the invariant inner product ⟨·,·⟩, but
//! not necessarily normalized: keeping the Gram matrix diagonal with rational
//! entries is what lets su(3) and g₂ live over Q.

mod chevalley;
mod su3;
mod subspace;

pub use chevalley::{build_compact_from_rootsystem, chevalley_structure_constants};
pub use su3::{build_su2, build_su3, build_su3_aw};
pub use subspace::Subspace;

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, Field, Matrix};
use crate::scalar::{format_q, Scalar, Q};

/// A root plane v_α = span(U_α, V_α) of a compact algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct RootPlane {
    pub name: String,
    /// The root as a vector of the Cartan subalgebra, in coordinates of the
    /// basis vectors listed in `cartan`.
    pub root: Vec<Q>,
    pub u: usize,
    pub v: usize,
}

#[derive(Clone, Debug)]
pub struct CompactLieAlgebra<S> {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `table[i * dim + j]` lists the nonzero `(k, c)` with `[e_i, e_j] = Σ c e_k`.
    table: Vec<Vec<(usize, S)>>,
    pub killing: Matrix<S>,
    /// Diagonal Gram matrix of ⟨·,·⟩.
    pub inner: Matrix<S>,
    /// `⟨·,·⟩ = λ·(−B)`; `None` for algebras with a center.
    pub lambda: Option<Q>,
    pub cartan: Vec<usize>,
    pub root_planes: Vec<RootPlane>,
}

/// Name of the normalization convention.
pub fn gauge_name(lambda: &Option<Q>) -> String {
    match lambda {
        Some(l) if l.is_one() => "minusB".to_string(),
        Some(l) if *l == crate::scalar::q(1, 12) => "su3".to_string(),
        Some(l) => format!("lambda={}", format_q(l)),
        None => "custom".to_string(),
    }
}

impl CompactLieAlgebra<Q> {
    /// Assemble and validate an exact algebra. `entries` lists `[e_i, e_j]`
    /// for `i < j` only; antisymmetry is implied.
    #[allow(clippy::too_many_arguments)]
    pub fn from_entries(
        name: &str,
        labels: Vec<String>,
        entries: &[(usize, usize, usize, Q)],
        inner_diag: Vec<Q>,
        lambda: Option<Q>,
        cartan: Vec<usize>,
        root_planes: Vec<RootPlane>,
    ) -> Result<Self> {
        let dim = labels.len();
        if inner_diag.len() != dim {
            return Err(Error::Dimension { expected: dim, got: inner_diag.len() });
        }
        let mut dense = vec![Q::zero(); dim * dim * dim];
        for (i, j, k, c) in entries {
            if i >= j {
                return Err(Error::Construction(format!("entry ({i},{j}) must have i < j")));
            }
            dense[(i * dim + j) * dim + k] += c.clone();
            dense[(j * dim + i) * dim + k] -= c.clone();
        }
        let table = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter(|&k| !dense[ij * dim + k].is_zero())
                    .map(|k| (k, dense[ij * dim + k].clone()))
                    .collect()
            })
            .collect();
        let mut inner = Matrix::zeros(dim, dim);
        for (i, v) in inner_diag.into_iter().enumerate() {
            inner[(i, i)] = v;
        }
        let mut alg = CompactLieAlgebra {
            name: name.to_string(),
            dim,
            labels,
            table,
            killing: Matrix::zeros(dim, dim),
            inner,
            lambda,
            cartan,
            root_planes,
        };
        alg.killing = alg.compute_killing();
        alg.validate()?;
        Ok(alg)
    }

    pub fn to_f64(&self) -> CompactLieAlgebra<f64> {
        CompactLieAlgebra {
            name: self.name.clone(),
            dim: self.dim,
            labels: self.labels.clone(),
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|(k, c)| (*k, c.to_f64())).collect())
                .collect(),
            killing: self.killing.to_f64(),
            inner: self.inner.to_f64(),
            lambda: self.lambda.clone(),
            cartan: self.cartan.clone(),
            root_planes: self.root_planes.clone(),
        }
    }

    /// Direct sum `self ⊕ other` with the block-diagonal inner product.
    pub fn direct_sum(&self, other: &CompactLieAlgebra<Q>, name: &str) -> Result<Self> {
        let n = self.dim;
        let mut entries = Vec::new();
        for (alg, off) in [(self, 0), (other, n)] {
            for i in 0..alg.dim {
                for j in i + 1..alg.dim {
                    for (k, c) in &alg.table[i * alg.dim + j] {
                        entries.push((i + off, j + off, k + off, c.clone()));
                    }
                }
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let inner: Vec<Q> = (0..n)
            .map(|i| self.inner[(i, i)].clone())
            .chain((0..other.dim).map(|i| other.inner[(i, i)].clone()))
            .collect();
        let lambda = match (&self.lambda, &other.lambda) {
            (Some(a), Some(b)) if a == b => Some(a.clone()),
            _ => None,
        };
        let mut cartan = self.cartan.clone();
        cartan.extend(other.cartan.iter().map(|c| c + n));
        let mut planes = self.root_planes.clone();
        // roots of the second summand are padded by zeros on the first Cartan
        for p in &other.root_planes {
            let mut root = vec![Q::zero(); self.cartan.len()];
            root.extend(p.root.iter().cloned());
            planes.push(RootPlane { name: p.name.clone(), root, u: p.u + n, v: p.v + n });
        }
        for p in planes.iter_mut().take(self.root_planes.len()) {
            p.root.extend(std::iter::repeat_n(Q::zero(), other.cartan.len()));
        }
        Self::from_entries(name, labels, &entries, inner, lambda, cartan, planes)
    }
}

/// The abelian algebra R^n with inner product `diag`.
pub fn build_abelian(diag: Vec<Q>) -> Result<CompactLieAlgebra<Q>> {
    let n = diag.len();
    let labels = (0..n).map(|i| format!("c{}", i + 1)).collect();
    CompactLieAlgebra::from_entries("abelian", labels, &[], diag, None, (0..n).collect(), Vec::new())
}

impl<S: Field> CompactLieAlgebra<S> {
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> S {
        self.table[i * self.dim + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or(S::zero(), |(_, c)| c.clone())
    }

    /// Nonzero entries of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let f = xi.clone() * yj.clone();
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k] = out[*k].clone() + f.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Matrix of ad(x); column j is `[x, e_j]`.
    pub fn ad(&self, x: &[S]) -> Matrix<S> {
        let mut m: Matrix<S> = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in &self.table[i * self.dim + j] {
                    m[(*k, j)] = m[(*k, j)].clone() + xi.clone() * c.clone();
                }
            }
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        crate::linalg::unit(self.dim, i)
    }

    /// ⟨x, y⟩.
    pub fn ip(&self, x: &[S], y: &[S]) -> S {
        let mut acc = S::zero();
        for i in 0..self.dim {
            if !x[i].is_zero() && !y[i].is_zero() {
                acc = acc + self.inner[(i, i)].clone() * x[i].clone() * y[i].clone();
            }
        }
        acc
    }

    pub fn norm2(&self, x: &[S]) -> S {
        self.ip(x, x)
    }

    pub fn norm_f64(&self, x: &[S]) -> f64 {
        self.norm2(x).to_f64().max(0.0).sqrt()
    }

    pub fn killing_form(&self, x: &[S], y: &[S]) -> S {
        dot(&self.killing.mul_vec(x), y)
    }

    fn compute_killing(&self) -> Matrix<S> {
        let n = self.dim;
        let ads: Vec<Matrix<S>> = (0..n).map(|i| self.ad(&self.basis_vector(i))).collect();
        let mut b = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = ads[i].mul(&ads[j]).trace();
                b[(i, j)] = t.clone();
                b[(j, i)] = t;
            }
        }
        b
    }

    /// Largest absolute Jacobi defect over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    for t in 0..n {
                        let s = a[t].clone() + b[t].clone() + c[t].clone();
                        worst = worst.max(s.to_f64().abs());
                        if S::EXACT && !s.is_zero() && worst == 0.0 {
                            worst = f64::MIN_POSITIVE;
                        }
                    }
                }
            }
        }
        worst
    }

    /// Largest defect of B([x,y],z) + B(y,[x,z]) over basis triples.
    pub fn killing_invariance_residual(&self) -> f64 {
        self.invariance_residual(&self.killing)
    }

    /// Largest defect of ⟨[x,y],z⟩ + ⟨y,[x,z]⟩ over basis triples.
    pub fn inner_invariance_residual(&self) -> f64 {
        self.invariance_residual(&self.inner)
    }

    fn invariance_residual(&self, form: &Matrix<S>) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for x in 0..n {
            let ad = self.ad(&self.basis_vector(x));
            // form * ad + ad^T * form must vanish
            let fa = form.mul(&ad);
            for y in 0..n {
                for z in 0..n {
                    let s = fa[(z, y)].clone() + fa[(y, z)].clone();
                    let v = s.to_f64().abs();
                    worst = worst.max(if S::EXACT && !s.is_zero() { v.max(f64::MIN_POSITIVE) } else { v });
                }
            }
        }
        worst
    }

    fn validate(&self) -> Result<()> {
        let tol = if S::EXACT { 0.0 } else { 1e-12 };
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j && !self.inner[(i, j)].is_zero() {
                    return Err(Error::Construction("basis is not orthogonal".into()));
                }
            }
            if !self.inner[(i, i)].is_positive() {
                return Err(Error::Construction("inner product is not positive".into()));
            }
        }
        let jac = self.jacobi_residual();
        if jac > tol {
            return Err(Error::Construction(format!("Jacobi identity fails (defect {jac:e})")));
        }
        let inv = self.inner_invariance_residual();
        if inv > tol {
            return Err(Error::Construction(format!("inner product is not ad-invariant ({inv:e})")));
        }
        if let Some(l) = &self.lambda {
            let l = S::from_q(l);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let d = self.inner[(i, j)].clone() + l.clone() * self.killing[(i, j)].clone();
                    if !d.near_zero(tol) {
                        return Err(Error::Construction(format!(
                            "inner product differs from lambda*(-B) at ({i},{j})"
                        )));
                    }
                }
            }
            let neg_b = self.killing.map(|x| -x.clone());
            if !S::is_positive_definite(&neg_b) {
                return Err(Error::Construction("Killing form is not negative definite".into()));
            }
        }
        for p in &self.root_planes {
            if p.root.len() != self.cartan.len() {
                return Err(Error::Construction(format!("root {} has wrong length", p.name)));
            }
        }
        Ok(())
    }

    /// Vector of the Cartan subalgebra given in `cartan` coordinates.
    pub fn cartan_vector(&self, coords: &[Q]) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim];
        for (c, &i) in coords.iter().zip(&self.cartan) {
            v[i] = S::from_q(c);
        }
        v
    }

    pub fn root_plane(&self, name: &str) -> Option<&RootPlane> {
        self.root_planes.iter().find(|p| p.name == name)
    }

    /// The root plane as a subspace.
    pub fn plane_subspace(&self, name: &str) -> Option<Subspace<S>> {
        let p = self.root_plane(name)?;
        Some(Subspace::coordinate(self, &[p.u, p.v]))
    }

    pub fn cartan_subspace(&self) -> Subspace<S> {
        Subspace::coordinate(self, &self.cartan)
    }

    /// Transpose of ad(x) with respect to ⟨·,·⟩ plus ad(x); zero when ad(x)
    /// is skew.
    pub fn ad_skew_defect(&self, x: &[S]) -> f64 {
        let ad = self.ad(x);
        let ga = self.inner.mul(&ad);
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let s = ga[(i, j)].clone() + ga[(j, i)].clone();
                worst = worst.max(s.to_f64().abs());
            }
        }
        worst
    }

    pub fn gauge(&self) -> String {
        gauge_name(&self.lambda)
    }

    /// Rows `(i, j, k, c_ijk)` for `i < j` with nonzero constants.
    pub fn bracket_rows(&self) -> Vec<(usize, usize, usize, S)> {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, c) in &self.table[i * self.dim + j] {
                    rows.push((i, j, *k, c.clone()));
                }
            }
        }
        rows
    }

    pub fn bracket_csv(&self) -> String {
        let mut s = String::from("i,j,k,c\n");
        for (i, j, k, c) in self.bracket_rows() {
            let v = match c.to_json() {
                serde_json::Value::String(t) => t,
                other => other.to_string(),
            };
            s.push_str(&format!("{i},{j},{k},{v}\n"));
        }
        s
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        let js = |m: &Matrix<S>| -> Vec<Vec<serde_json::Value>> {
            m.to_rows().iter().map(|r| r.iter().map(|x| x.to_json()).collect()).collect()
        };
        AlgebraDescriptor {
            schema: "1".into(),
            name: self.name.clone(),
            dim: self.dim,
            labels: self.labels.clone(),
            structure: self
                .bracket_rows()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, c.to_json()))
                .collect(),
            killing: js(&self.killing),
            inner: js(&self.inner),
            gauge: self.gauge(),
            lambda: self.lambda.as_ref().map(format_q),
            cartan: self.cartan.clone(),
            root_planes: self
                .root_planes
                .iter()
                .map(|p| RootPlaneJson {
                    name: p.name.clone(),
                    root: p.root.iter().map(format_q).collect(),
                    u: self.labels[p.u].clone(),
                    v: self.labels[p.v].clone(),
                })
                .collect(),
        }
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The subalgebra spanned by `sub` as an algebra of its own, in an
    /// orthogonal basis of `sub`: returns its Killing form. Used to identify
    /// subalgebra types.
    pub fn restricted_killing(&self, sub: &Subspace<S>) -> Matrix<S> {
        let b = sub.basis();
        let n = b.len();
        // structure constants of the subalgebra in the basis b
        let coords = |x: &[S]| -> Vec<S> {
            b.iter().map(|bi| self.ip(x, bi) / self.ip(bi, bi)).collect()
        };
        let ads: Vec<Matrix<S>> = b
            .iter()
            .map(|bi| {
                let cols: Vec<Vec<S>> = b.iter().map(|bj| coords(&self.bracket(bi, bj))).collect();
                Matrix::from_cols(n, &cols)
            })
            .collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                k[(i, j)] = ads[i].mul(&ads[j]).trace();
            }
        }
        k
    }

    /// Dimension of the centralizer of a generic element inside `sub`.
    pub fn rank_of_subalgebra(&self, sub: &Subspace<S>) -> usize {
        let b = sub.basis();
        // deterministic pseudo-generic combination
        let mut x = vec![S::zero(); self.dim];
        for (i, bi) in b.iter().enumerate() {
            let c = S::from_i64(((i as i64 * 7919 + 104_729) % 1009) + 1);
            crate::linalg::axpy(&c, bi, &mut x);
        }
        let cols: Vec<Vec<S>> = b.iter().map(|bi| self.bracket(&x, bi)).collect();
        let m = Matrix::from_cols(self.dim, &cols);
        b.len() - S::rank(&m)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootPlaneJson {
    pub name: String,
    pub root: Vec<String>,
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraDescriptor {
    pub schema: String,
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub structure: Vec<(usize, usize, usize, serde_json::Value)>,
    pub killing: Vec<Vec<serde_json::Value>>,
    pub inner: Vec<Vec<serde_json::Value>>,
    pub gauge: String,
    pub lambda: Option<String>,
    pub cartan: Vec<usize>,
    pub root_planes: Vec<RootPlaneJson>,
}

/// Summary used to recognise a subalgebra: dimension, rank, dimension of the
/// center and whether its own Killing form is negative definite on the
/// complement of the center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraType {
    pub dim: usize,
    pub rank: usize,
    pub center_dim: usize,
    pub semisimple: bool,
}

impl SubalgebraType {
    /// Compact semisimple algebras of rank ≤ 2 are determined by (dim, rank).
    pub fn name(&self) -> Option<&'static str> {
        if !self.semisimple {
            return None;
        }
        match (self.dim, self.rank) {
            (3, 1) => Some("su(2)"),
            (6, 2) => Some("su(2)+su(2)"),
            (8, 2) => Some("su(3)"),
            (10, 2) => Some("so(5)"),
            (14, 2) => Some("g2"),
            _ => None,
        }
    }
}

pub fn subalgebra_type<S: Field>(alg: &CompactLieAlgebra<S>, sub: &Subspace<S>) -> SubalgebraType {
    let k = alg.restricted_killing(sub);
    let neg = k.map(|x| -x.clone());
    let semisimple = S::is_positive_definite(&neg);
    let center = sub.intersection(alg, &Subspace::centralizer(alg, sub));
    SubalgebraType {
        dim: sub.dim(),
        rank: alg.rank_of_subalgebra(sub),
        center_dim: center.dim(),
        semisimple,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    #[test]
    fn su2_direct_sum_and_abelian() {
        let su2 = build_su2();
        let t = build_abelian(vec![qi(1)]).unwrap();
        let s = su2.direct_sum(&t, "u(2)").unwrap();
        assert_eq!(s.dim, 4);
        assert!(s.lambda.is_none());
        assert_eq!(s.jacobi_residual(), 0.0);
        let ss = su2.direct_sum(&su2, "su2+su2").unwrap();
        assert_eq!(ss.lambda, Some(qi(1)));
        assert_eq!(ss.root_planes.len(), 2);
        assert_eq!(ss.root_planes[1].root.len(), 2);
    }

    #[test]
    fn csv_export() {
        let su2 = build_su2();
        let csv = su2.bracket_csv();
        assert!(csv.starts_with("i,j,k,c\n"));
        assert!(csv.contains("0,1,2,1\n"));
    }
}
