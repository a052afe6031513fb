//! su(2) and su(3) from index rules, without matrices.

use num::Zero;

use super::{CompactLieAlgebra, RootPlane};
use crate::error::{Error, Result};
use crate::scalar::{q, qi, Q};

/// su(2) with `[e1,e2] = e3` and cyclic, ⟨·,·⟩ = −B = 2·Id; the Cartan
/// subalgebra is spanned by e3.
pub fn build_su2() -> CompactLieAlgebra<Q> {
    let labels = vec!["e1".to_string(), "e2".into(), "e3".into()];
    let entries = [(0, 1, 2, qi(1)), (1, 2, 0, qi(1)), (0, 2, 1, qi(-1))];
    // [e3, e1] = e2 = ⟨α, e3⟩ e2 with α = e3 / 2
    let planes = vec![RootPlane { name: "a".into(), root: vec![q(1, 2)], u: 0, v: 1 }];
    CompactLieAlgebra::from_entries("su2", labels, &entries, vec![qi(2); 3], Some(qi(1)), vec![2], planes)
        .expect("su(2) table is valid")
}

/// Off-diagonal generators of su(3): `A_pq = E_pq − E_qp`, `S_pq = i(E_pq + E_qp)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    A,
    S,
}

/// Basis positions of X₁…X₆ = A12, S12, A13, S13, A23, S23.
const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn offdiag_index(kind: Kind, p: usize, q: usize) -> usize {
    let pair = PAIRS.iter().position(|&x| x == (p, q)).expect("ordered pair");
    2 + 2 * pair + if kind == Kind::A { 0 } else { 1 }
}

/// The generator written with the given (possibly reversed) orientation,
/// with the sign picked up: `A_qp = −A_pq`, `S_qp = S_pq`.
fn oriented(kind: Kind, p: usize, q: usize) -> (i64, Kind, usize, usize) {
    if p < q {
        (1, kind, p, q)
    } else if kind == Kind::A {
        (-1, kind, q, p)
    } else {
        (1, kind, q, p)
    }
}

/// su(3) in the basis adapted to the circle `diag(e^{ikθ}, e^{ilθ}, e^{imθ})`,
/// `m = −k−l`.
///
/// Basis: `Z = i·diag(k,l,m)`, `X0 = i·diag(l−m, m−k, k−l)`, then X₁…X₆ as
/// above. `X0` is the unit vector X₀ of the Aloff–Wallach basis divided by
/// `f = sqrt(2/(3L))`, `L = k²+l²+m²`, which keeps all constants rational.
/// ⟨X,Y⟩ = −½ Re tr(XY) = −B/12 gives the Gram diagonal (L/2, 3L/2, 1, …, 1).
pub fn build_su3_aw(k: i64, l: i64) -> Result<CompactLieAlgebra<Q>> {
    let m = -k - l;
    let ll = k * k + l * l + m * m;
    if ll == 0 {
        return Err(Error::InvalidParameters("k = l = 0 gives no circle".into()));
    }
    let z = [k, l, m];
    let x0 = [l - m, m - k, k - l];
    let diag = [z, x0];

    let mut dense: Vec<Vec<Vec<Q>>> = vec![vec![vec![Q::zero(); 8]; 8]; 8];
    let mut set = |i: usize, j: usize, k: usize, c: Q| {
        dense[i][j][k] += c.clone();
        dense[j][i][k] -= c;
    };

    // [iD, A_pq] = (d_p − d_q) S_pq, [iD, S_pq] = −(d_p − d_q) A_pq
    for (di, d) in diag.iter().enumerate() {
        for &(p, q) in &PAIRS {
            let w = qi(d[p] - d[q]);
            set(di, offdiag_index(Kind::A, p, q), offdiag_index(Kind::S, p, q), w.clone());
            set(di, offdiag_index(Kind::S, p, q), offdiag_index(Kind::A, p, q), -w);
        }
    }

    // [A_pq, S_pq] = 2i(E_pp − E_qq), projected on Z and X0
    for &(p, q) in &PAIRS {
        let mut d = [0i64; 3];
        d[p] = 2;
        d[q] = -2;
        let dz: i64 = d.iter().zip(&z).map(|(a, b)| a * b).sum();
        let dx: i64 = d.iter().zip(&x0).map(|(a, b)| a * b).sum();
        let (a, s) = (offdiag_index(Kind::A, p, q), offdiag_index(Kind::S, p, q));
        set(a, s, 0, Q::new(dz.into(), ll.into()));
        set(a, s, 1, Q::new(dx.into(), (3 * ll).into()));
    }

    // generators on pairs sharing one index: chain as (i,j),(j,k)
    let gens: Vec<(Kind, usize, usize)> = PAIRS
        .iter()
        .flat_map(|&(p, q)| [(Kind::A, p, q), (Kind::S, p, q)])
        .collect();
    for (x, &(k1, p1, q1)) in gens.iter().enumerate() {
        for (y, &(k2, p2, q2)) in gens.iter().enumerate() {
            if x >= y || (p1, q1) == (p2, q2) {
                continue;
            }
            let shared = if p1 == p2 || p1 == q2 { p1 } else { q1 };
            let i = if p1 == shared { q1 } else { p1 };
            let kk = if p2 == shared { q2 } else { p2 };
            let (s1, _, _, _) = oriented(k1, i, shared);
            let (s2, _, _, _) = oriented(k2, shared, kk);
            // [A_ij, A_jk] = A_ik, [A_ij, S_jk] = [S_ij, A_jk] = S_ik, [S_ij, S_jk] = −A_ik
            let (s3, kind) = match (k1, k2) {
                (Kind::A, Kind::A) => (1, Kind::A),
                (Kind::A, Kind::S) | (Kind::S, Kind::A) => (1, Kind::S),
                (Kind::S, Kind::S) => (-1, Kind::A),
            };
            let (s4, kind, a, b) = oriented(kind, i, kk);
            let coeff = s1 * s2 * s3 * s4;
            set(2 + x, 2 + y, offdiag_index(kind, a, b), qi(coeff));
        }
    }

    let mut entries = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            for kk in 0..8 {
                if !dense[i][j][kk].is_zero() {
                    entries.push((i, j, kk, dense[i][j][kk].clone()));
                }
            }
        }
    }

    let labels: Vec<String> = ["Z", "X0", "X1", "X2", "X3", "X4", "X5", "X6"].iter().map(|s| s.to_string()).collect();
    let mut inner = vec![q(ll, 2), q(3 * ll, 2)];
    inner.extend(std::iter::repeat_n(qi(1), 6));

    // root of the plane (A_pq, S_pq): the vector H_r of t with ⟨H_r, iD⟩ = d_p − d_q,
    // which is 2i(E_pp − E_qq) itself
    let names = ["a1", "a1+a2", "a2"];
    let planes = PAIRS
        .iter()
        .zip(names)
        .map(|(&(p, q), name)| {
            let rz = Q::new((2 * (z[p] - z[q])).into(), ll.into());
            let rx = Q::new((2 * (x0[p] - x0[q])).into(), (3 * ll).into());
            RootPlane {
                name: name.to_string(),
                root: vec![rz, rx],
                u: offdiag_index(Kind::A, p, q),
                v: offdiag_index(Kind::S, p, q),
            }
        })
        .collect();

    CompactLieAlgebra::from_entries(
        &format!("su3[{k},{l}]"),
        labels,
        &entries,
        inner,
        Some(q(1, 12)),
        vec![0, 1],
        planes,
    )
}

/// su(3) with the Cartan basis of the circle (k, l) = (1, 0).
pub fn build_su3() -> CompactLieAlgebra<Q> {
    build_su3_aw(1, 0).expect("su(3) table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit;

    #[test]
    fn z_brackets() {
        for (k, l) in [(2, 1), (3, 1), (3, 2), (5, 2), (1, 0)] {
            let m = -k - l;
            let g = build_su3_aw(k, l).unwrap();
            let z = unit::<Q>(8, 0);
            let br = |i: usize| g.bracket(&z, &unit(8, i));
            assert!(br(1).iter().all(|c| c.is_zero()));
            let expect = [(2, 3, k - l), (4, 5, k - m), (6, 7, l - m)];
            for (a, b, c) in expect {
                assert_eq!(br(a), crate::linalg::scale(&qi(c), &unit(8, b)));
                assert_eq!(br(b), crate::linalg::scale(&qi(-c), &unit(8, a)));
            }
        }
    }

    #[test]
    fn killing_is_minus_twelve_inner() {
        let g = build_su3_aw(2, 1).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(g.killing[(i, j)], -qi(12) * g.inner[(i, j)].clone());
            }
        }
        assert_eq!(g.killing[(2, 2)], qi(-12));
    }

    #[test]
    fn eq_n_relations_su3() {
        let g = build_su3_aw(3, 1).unwrap();
        for p in &g.root_planes {
            let h = g.cartan_vector(&p.root);
            let uv = g.bracket(&unit(8, p.u), &unit(8, p.v));
            assert_eq!(uv, h);
        }
    }
}
