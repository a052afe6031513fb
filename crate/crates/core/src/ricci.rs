//! Ricci curvature of left-invariant metrics on compact Lie groups.
//!
//! For a (·,·)-orthogonal basis `b_i` with `w_i = (b_i, b_i)` and
//! `[b_i, b_j] = Σ_m c^m_ij b_m`, the unimodular formula reads
//!
//! ```text
//! Ric(b_k, b_l) = −½ Σ_i ([b_k,b_i],[b_l,b_i]) / w_i − ½ B(b_k, b_l)
//!                 + ¼ Σ_ij ([b_i,b_j],b_k)([b_i,b_j],b_l) / (w_i w_j)
//! ```
//!
//! Everything stays rational when the metric coefficients are rational.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::CompactLieAlgebra;
use crate::linalg::{Field, Matrix};
use crate::metrics::MetricEndomorphism;
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize)]
pub struct RicciResult {
    /// Gauge of ⟨·,·⟩ in which the frame below is orthonormal.
    pub gauge: String,
    /// Ric in the ⟨·,·⟩-orthonormal frame `e_k / |e_k|` of the algebra basis.
    pub ric: Vec<Vec<f64>>,
    /// The metric (·,·) in the same frame.
    pub metric: Vec<Vec<f64>>,
    /// `c` minimizing ‖Ric − c·g‖ (Frobenius, in the frame above).
    pub einstein_constant: f64,
    /// ‖Ric − c·g‖ / ‖Ric‖ (0 when Ric = 0).
    pub deviation: f64,
    pub scalar_curvature: f64,
    /// Exact verdict `Ric = c·g` when computed over the rationals.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_einstein: Option<bool>,
}

/// Ric in a (·,·)-orthogonal basis built from the metric blocks, with the
/// basis and the weights `w_i`.
pub fn ricci_in_metric_basis<S: Field>(
    alg: &CompactLieAlgebra<S>,
    metric: &MetricEndomorphism<S>,
) -> Result<(Vec<Vec<S>>, Vec<S>, Matrix<S>)> {
    let mut basis: Vec<Vec<S>> = Vec::new();
    let mut w: Vec<S> = Vec::new();
    for (blk, c) in metric.decomposition.blocks.iter().zip(&metric.coeffs) {
        for b in blk.basis() {
            w.push(c.clone() * alg.norm2(b));
            basis.push(b.clone());
        }
    }
    if basis.len() != alg.dim {
        return Err(Error::InvalidMetric(format!(
            "metric blocks span dimension {} of {}",
            basis.len(),
            alg.dim
        )));
    }
    let n = alg.dim;
    let nb: Vec<S> = basis.iter().map(|b| alg.norm2(b)).collect();
    // c[k][i][m]: coefficient of b_m in [b_k, b_i]
    let mut c = vec![vec![vec![S::zero(); n]; n]; n];
    for k in 0..n {
        for i in k + 1..n {
            let br = alg.bracket(&basis[k], &basis[i]);
            if br.iter().all(|x| x.is_zero()) {
                continue;
            }
            for m in 0..n {
                let v = alg.ip(&br, &basis[m]) / nb[m].clone();
                if !v.is_zero() {
                    c[i][k][m] = -v.clone();
                    c[k][i][m] = v;
                }
            }
        }
    }
    let mut ric = Matrix::zeros(n, n);
    let half = S::from_i64(1) / S::from_i64(2);
    let quarter = S::from_i64(1) / S::from_i64(4);
    for k in 0..n {
        for l in k..n {
            let mut t1 = S::zero();
            let mut kb = S::zero();
            for i in 0..n {
                for m in 0..n {
                    if !c[k][i][m].is_zero() {
                        if !c[l][i][m].is_zero() {
                            t1 = t1 + c[k][i][m].clone() * c[l][i][m].clone() * w[m].clone() / w[i].clone();
                        }
                        if !c[l][m][i].is_zero() {
                            kb = kb + c[k][i][m].clone() * c[l][m][i].clone();
                        }
                    }
                }
            }
            let mut t3 = S::zero();
            for i in 0..n {
                for j in 0..n {
                    if !c[i][j][k].is_zero() && !c[i][j][l].is_zero() {
                        t3 = t3 + c[i][j][k].clone() * c[i][j][l].clone() / (w[i].clone() * w[j].clone());
                    }
                }
            }
            t3 = t3 * w[k].clone() * w[l].clone();
            let v = -(half.clone() * t1) - half.clone() * kb + quarter.clone() * t3;
            ric[(k, l)] = v.clone();
            ric[(l, k)] = v;
        }
    }
    Ok((basis, w, ric))
}

/// Ricci tensor of the left-invariant metric `(x, y) = ⟨A x, y⟩` on the group
/// of `alg`. The metric blocks must span g.
pub fn ricci_left_invariant<S: Field>(alg: &CompactLieAlgebra<S>, metric: &MetricEndomorphism<S>) -> Result<RicciResult> {
    let (basis, w, rb) = ricci_in_metric_basis(alg, metric)?;
    let n = alg.dim;

    let exact_einstein = if S::EXACT {
        let e = rb[(0, 0)].clone() / w[0].clone();
        let ok = (0..n).all(|k| {
            (0..n).all(|l| {
                let target = if k == l { e.clone() * w[k].clone() } else { S::zero() };
                rb[(k, l)] == target
            })
        });
        Some(ok)
    } else {
        None
    };

    // e_k = Σ_i p[k][i] b_i, then rescale to the ⟨·,·⟩-orthonormal frame
    let nb: Vec<f64> = basis.iter().map(|b| alg.norm2(b).to_f64()).collect();
    let p: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let inv = 1.0 / alg.inner[(k, k)].to_f64().sqrt();
            (0..n).map(|i| basis[i][k].to_f64() * alg.inner[(k, k)].to_f64() / nb[i] * inv).collect()
        })
        .collect();
    let rbf = rb.to_f64();
    let wf: Vec<f64> = w.iter().map(Scalar::to_f64).collect();
    let mut ric = vec![vec![0.0; n]; n];
    let mut g = vec![vec![0.0; n]; n];
    for k in 0..n {
        for l in 0..n {
            let mut r = 0.0;
            let mut gg = 0.0;
            for i in 0..n {
                if p[k][i] == 0.0 {
                    continue;
                }
                gg += p[k][i] * p[l][i] * wf[i];
                for j in 0..n {
                    r += p[k][i] * p[l][j] * rbf[(i, j)];
                }
            }
            ric[k][l] = r;
            g[k][l] = gg;
        }
    }
    let frob = |a: &Vec<Vec<f64>>, b: &Vec<Vec<f64>>| -> f64 {
        a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u * v).sum::<f64>()).sum()
    };
    let c = frob(&ric, &g) / frob(&g, &g);
    let rn = frob(&ric, &ric).sqrt();
    let dev_sq: f64 = ric
        .iter()
        .zip(&g)
        .map(|(r, gr)| r.iter().zip(gr).map(|(a, b)| (a - c * b).powi(2)).sum::<f64>())
        .sum();
    let deviation = if rn == 0.0 { 0.0 } else { dev_sq.sqrt() / rn };
    let scalar_curvature = (0..n).map(|i| rbf[(i, i)] / wf[i]).sum();

    Ok(RicciResult {
        gauge: alg.gauge(),
        ric,
        metric: g,
        einstein_constant: c,
        deviation,
        scalar_curvature,
        exact_einstein,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EinsteinReport {
    pub is_einstein: bool,
    pub c: f64,
    pub deviation: f64,
    pub gauge: String,
    pub scalar_curvature: f64,
}

pub fn einstein_check<S: Field>(alg: &CompactLieAlgebra<S>, metric: &MetricEndomorphism<S>, tol: f64) -> Result<EinsteinReport> {
    let r = ricci_left_invariant(alg, metric)?;
    let is_einstein = match r.exact_einstein {
        Some(e) => e || r.deviation <= tol,
        None => r.deviation <= tol,
    };
    Ok(EinsteinReport {
        is_einstein,
        c: r.einstein_constant,
        deviation: r.deviation,
        gauge: r.gauge,
        scalar_curvature: r.scalar_curvature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_su2, Subspace};
    use crate::metrics::{make_metric, ModuleDecomposition};
    use crate::scalar::{qi, Q};

    fn su2_metric(a: [i64; 3]) -> (CompactLieAlgebra<Q>, MetricEndomorphism<Q>) {
        let g = build_su2();
        let blocks = (0..3).map(|i| Subspace::coordinate(&g, &[i])).collect();
        let d = ModuleDecomposition::new(&g, vec!["1".into(), "2".into(), "3".into()], blocks, &Subspace::full(&g)).unwrap();
        let m = make_metric(&g, d, a.iter().map(|&x| qi(x)).collect()).unwrap();
        (g, m)
    }

    /// Principal Ricci curvatures of su(2) from the orthonormal-frame constants
    /// `[f2,f3] = λ1 f1` (cyclic): `r_1 = 2 μ2 μ3`, `μ_i = ½Σλ − λ_i`.
    fn milnor(a: [f64; 3]) -> [f64; 3] {
        // ⟨·,·⟩ = 2·Id and [e2,e3] = e1, so f_i = e_i / sqrt(2 a_i)
        let lam = |i: usize, j: usize, k: usize| (a[i] / (2.0 * a[j] * a[k])).sqrt();
        let l = [lam(0, 1, 2), lam(1, 2, 0), lam(2, 0, 1)];
        let s = (l[0] + l[1] + l[2]) / 2.0;
        let mu = [s - l[0], s - l[1], s - l[2]];
        [2.0 * mu[1] * mu[2], 2.0 * mu[2] * mu[0], 2.0 * mu[0] * mu[1]]
    }

    #[test]
    fn su2_matches_milnor_frame() {
        for a in [[1, 1, 1], [1, 2, 3], [5, 1, 2], [2, 2, 7]] {
            let (g, m) = su2_metric(a);
            let r = ricci_left_invariant(&g, &m).unwrap();
            let af = a.map(|x| x as f64);
            let expect = milnor(af);
            for i in 0..3 {
                // Ric(f_i, f_i) = r_i, and f_i = e_i/sqrt(2a_i) = frame_i / sqrt(a_i)
                assert!((r.ric[i][i] / af[i] - expect[i]).abs() < 1e-12, "{a:?} {i}");
                for j in 0..3 {
                    if i != j {
                        assert!(r.ric[i][j].abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn bi_invariant_is_quarter() {
        let (g, m) = su2_metric([1, 1, 1]);
        let r = ricci_left_invariant(&g, &m).unwrap();
        assert_eq!(r.exact_einstein, Some(true));
        assert!((r.einstein_constant - 0.25).abs() < 1e-15);
        assert!(r.deviation < 1e-15);
        let (g, m) = su2_metric([1, 2, 3]);
        let rep = einstein_check(&g, &m, 1e-5).unwrap();
        assert!(!rep.is_einstein);
    }

    #[test]
    fn torus_is_flat() {
        let g = crate::liealg::build_abelian(vec![qi(1), qi(3)]).unwrap();
        let blocks = vec![Subspace::full(&g)];
        let d = ModuleDecomposition::new(&g, vec!["t".into()], blocks, &Subspace::full(&g)).unwrap();
        let m = make_metric(&g, d, vec![qi(2)]).unwrap();
        let r = ricci_left_invariant(&g, &m).unwrap();
        assert!(r.ric.iter().flatten().all(|v| *v == 0.0));
        assert_eq!(r.deviation, 0.0);
    }
}
