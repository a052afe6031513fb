//! Compact real forms from root data.
//!
//! A Chevalley basis `{h_a, E_γ}` of the complexification has
//! `[E_γ, E_δ] = N_{γ,δ} E_{γ+δ}` with `|N_{γ,δ}| = p + 1`, where `p` is the
//! largest `j` with `δ − jγ ∈ Δ`. Signs are constrained by
//! `N_{δ,γ} = −N_{γ,δ}` and `N_{−γ,−δ} = −N_{γ,δ}`; the remaining freedom is
//! resolved by a deterministic backtracking search that keeps the first
//! assignment (trying `+1` before `−1`) satisfying the Jacobi identity.
//!
//! The compact form is spanned by the frame vectors of `t` together with
//! `A_γ = E_γ − E_{−γ}` and `B_γ = i(E_γ + E_{−γ})` for `γ ∈ Δ⁺`. With
//! ⟨·,·⟩ = −B these satisfy `[H, A_γ] = ⟨γ,H⟩ B_γ`, `[H, B_γ] = −⟨γ,H⟩ A_γ`
//! and `[A_γ, B_γ] = |A_γ|² γ`, so `U_γ = A_γ/|A_γ|`, `V_γ = B_γ/|B_γ|`
//! satisfy `[U_γ, V_γ] = γ`. The basis keeps `A_γ, B_γ` unnormalized to stay
//! rational.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::{CompactLieAlgebra, RootPlane};
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::scalar::{qi, Q};

/// Structure constants `N_{γ,δ}` indexed by root indices of `rs`.
pub type NTable = BTreeMap<(usize, usize), i64>;

/// Integer data of the complex algebra in the simple-coroot basis of `t`.
struct IntData {
    rank: usize,
    nroots: usize,
    /// `cartan[γ][a] = γ(h_a) = 2⟨γ,α_a⟩/⟨α_a,α_a⟩`.
    cartan: Vec<Vec<i64>>,
    /// `coroot[γ]` = coordinates of `[E_γ, E_{−γ}]` in the simple coroots.
    coroot: Vec<Vec<i64>>,
    /// `sum[γ][δ]` = index of `γ + δ` when it is a root.
    sum: Vec<Vec<Option<usize>>>,
    neg: Vec<usize>,
}

fn to_int(x: &Q) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::Construction(format!("non-integral Cartan datum {x}")));
    }
    x.numer().try_into().map_err(|_| Error::Construction("Cartan datum overflow".into()))
}

impl IntData {
    fn new(rs: &RootSystem) -> Result<Self> {
        let n = rs.roots.len();
        let simple: Vec<&Vec<Q>> = rs.simple.iter().map(|&i| &rs.roots[i].coords).collect();
        let mut cartan = Vec::with_capacity(n);
        let mut coroot = Vec::with_capacity(n);
        for r in &rs.roots {
            let row = simple
                .iter()
                .map(|a| to_int(&(qi(2) * rs.ip(&r.coords, a) / rs.ip(a, a))))
                .collect::<Result<Vec<_>>>()?;
            cartan.push(row);
            let g2 = rs.ip(&r.coords, &r.coords);
            let co = r
                .simple
                .iter()
                .zip(&simple)
                .map(|(c, a)| to_int(&(qi(*c) * rs.ip(a, a) / g2.clone())))
                .collect::<Result<Vec<_>>>()?;
            coroot.push(co);
        }
        let mut sum = vec![vec![None; n]; n];
        for (i, ri) in rs.roots.iter().enumerate() {
            for (j, rj) in rs.roots.iter().enumerate() {
                let s: Vec<Q> = ri.coords.iter().zip(&rj.coords).map(|(a, b)| a + b).collect();
                sum[i][j] = rs.index_of(&s);
            }
        }
        let neg = (0..n).map(|i| rs.negative_of(i)).collect();
        Ok(IntData { rank: rs.rank, nroots: n, cartan, coroot, sum, neg })
    }

    /// `p + 1` for the δ-string through γ: largest `j` with `δ − jγ ∈ Δ`.
    fn magnitude(&self, g: usize, d: usize) -> i64 {
        let mut cur = d;
        let mut p = 0;
        while let Some(next) = self.sum[cur][self.neg[g]] {
            p += 1;
            cur = next;
        }
        p + 1
    }

    fn dim(&self) -> usize {
        self.rank + self.nroots
    }

    /// Bracket of two basis vectors as a sparse integer vector, or `None` when a
    /// required constant is not yet assigned.
    fn bracket_basis(&self, n: &NTable, x: usize, y: usize) -> Option<Vec<(usize, i64)>> {
        let r = self.rank;
        match (x < r, y < r) {
            (true, true) => Some(Vec::new()),
            (true, false) => Some(vec![(y, self.cartan[y - r][x])]),
            (false, true) => Some(vec![(x, -self.cartan[x - r][y])]),
            (false, false) => {
                let (g, d) = (x - r, y - r);
                if self.neg[g] == d {
                    Some(self.coroot[g].iter().enumerate().map(|(a, &c)| (a, c)).collect())
                } else if let Some(s) = self.sum[g][d] {
                    n.get(&(g, d)).map(|&c| vec![(s + r, c)])
                } else {
                    Some(Vec::new())
                }
            }
        }
    }

    fn bracket(&self, n: &NTable, u: &[(usize, i64)], v: &[(usize, i64)]) -> Option<Vec<(usize, i64)>> {
        let mut acc = vec![0i64; self.dim()];
        for &(i, a) in u {
            for &(j, b) in v {
                for (k, c) in self.bracket_basis(n, i, j)? {
                    acc[k] += a * b * c;
                }
            }
        }
        Some(acc.into_iter().enumerate().filter(|(_, c)| *c != 0).collect())
    }

    /// False if some fully determined basis triple violates Jacobi.
    fn jacobi_ok(&self, n: &NTable) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                    let mut total = vec![0i64; d];
                    let mut known = true;
                    for (a, b, c) in cyc {
                        let inner = match self.bracket_basis(n, b, c) {
                            Some(v) => v,
                            None => {
                                known = false;
                                break;
                            }
                        };
                        match self.bracket(n, &[(a, 1)], &inner) {
                            Some(v) => v.into_iter().for_each(|(t, x)| total[t] += x),
                            None => {
                                known = false;
                                break;
                            }
                        }
                    }
                    if known && total.iter().any(|&x| x != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Chevalley structure constants for `rs`, keyed by root indices.
pub fn chevalley_structure_constants(rs: &RootSystem) -> Result<NTable> {
    let data = IntData::new(rs)?;
    // one representative per class {(γ,δ), (δ,γ), (−γ,−δ), (−δ,−γ)}
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for g in 0..data.nroots {
        for d in 0..data.nroots {
            if data.sum[g][d].is_none() || seen.contains(&(g, d)) {
                continue;
            }
            let (ng, nd) = (data.neg[g], data.neg[d]);
            for p in [(g, d), (d, g), (ng, nd), (nd, ng)] {
                seen.insert(p);
            }
            classes.push((g, d));
        }
    }

    fn assign(data: &IntData, n: &mut NTable, (g, d): (usize, usize), sign: i64) {
        let m = data.magnitude(g, d) * sign;
        let (ng, nd) = (data.neg[g], data.neg[d]);
        n.insert((g, d), m);
        n.insert((d, g), -m);
        n.insert((ng, nd), -m);
        n.insert((nd, ng), m);
    }

    fn search(data: &IntData, classes: &[(usize, usize)], n: &mut NTable) -> bool {
        let Some((&first, rest)) = classes.split_first() else {
            return true;
        };
        for sign in [1, -1] {
            let saved = n.clone();
            assign(data, n, first, sign);
            if data.jacobi_ok(n) && search(data, rest, n) {
                return true;
            }
            *n = saved;
        }
        false
    }

    let mut n = NTable::new();
    if !search(&data, &classes, &mut n) {
        return Err(Error::Construction(format!(
            "no sign assignment for {} satisfies the Jacobi identity",
            rs.name
        )));
    }
    for (&(g, d), &c) in &n {
        if c.abs() != data.magnitude(g, d) {
            return Err(Error::Construction("inconsistent root string lengths".into()));
        }
    }
    Ok(n)
}

/// Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq)]
struct C {
    re: Q,
    im: Q,
}

impl C {
    fn new(re: Q, im: Q) -> Self {
        C { re, im }
    }
    fn real(re: Q) -> Self {
        C { re, im: Q::zero() }
    }
    fn i() -> Self {
        C { re: Q::zero(), im: Q::one() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Add for C {
    type Output = C;
    fn add(self, o: C) -> C {
        C::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for C {
    type Output = C;
    fn sub(self, o: C) -> C {
        C::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for C {
    type Output = C;
    fn neg(self) -> C {
        C::new(-self.re, -self.im)
    }
}

impl Mul for C {
    type Output = C;
    fn mul(self, o: C) -> C {
        C::new(
            self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            self.re * o.im + self.im * o.re,
        )
    }
}

/// The compact real form of the algebra with root system `rs`, with
/// ⟨·,·⟩ = −B.
///
/// Basis order: frame vectors `T1..Tr` of `t`, then `U[γ], V[γ]` (that is
/// `A_γ, B_γ`) for the positive roots in the order of `rs`.
pub fn build_compact_from_rootsystem(rs: &RootSystem) -> Result<CompactLieAlgebra<Q>> {
    let ntab = chevalley_structure_constants(rs)?;
    let r = rs.rank;
    let nroots = rs.roots.len();
    // true inner product on t in frame coordinates
    let ipt = |a: &[Q], b: &[Q]| rs.minus_b_scale.clone() * rs.ip(a, b);

    // complex basis: h_1..h_r (frame vectors), then E_γ for all roots
    let cdim = r + nroots;
    let cbracket = |x: usize, y: usize| -> Vec<(usize, C)> {
        match (x < r, y < r) {
            (true, true) => Vec::new(),
            (true, false) => {
                let g = &rs.roots[y - r].coords;
                vec![(y, C::real(ipt(g, &crate::linalg::unit(r, x))))]
            }
            (false, true) => {
                let g = &rs.roots[x - r].coords;
                vec![(x, C::real(-ipt(g, &crate::linalg::unit(r, y))))]
            }
            (false, false) => {
                let (g, d) = (x - r, y - r);
                if rs.negative_of(g) == d {
                    // coroot 2γ/⟨γ,γ⟩ as a vector of t
                    let gc = &rs.roots[g].coords;
                    let f = qi(2) / ipt(gc, gc);
                    gc.iter().enumerate().map(|(a, c)| (a, C::real(f.clone() * c))).collect()
                } else if let Some(&c) = ntab.get(&(g, d)) {
                    let s: Vec<Q> = rs.roots[g].coords.iter().zip(&rs.roots[d].coords).map(|(a, b)| a + b).collect();
                    vec![(rs.index_of(&s).expect("root sum") + r, C::real(qi(c)))]
                } else {
                    Vec::new()
                }
            }
        }
    };
    let cbr = |u: &[(usize, C)], v: &[(usize, C)]| -> Vec<C> {
        let mut acc = vec![C::real(Q::zero()); cdim];
        for (i, a) in u {
            for (j, b) in v {
                for (k, c) in cbracket(*i, *j) {
                    acc[k] = acc[k].clone() + a.clone() * b.clone() * c;
                }
            }
        }
        acc
    };

    // compact basis in complex coordinates
    let mut compact: Vec<Vec<(usize, C)>> = Vec::new();
    for a in 0..r {
        compact.push(vec![(a, C::i())]);
    }
    for &g in &rs.positive {
        let ng = rs.negative_of(g);
        compact.push(vec![(g + r, C::real(qi(1))), (ng + r, C::real(qi(-1)))]);
        compact.push(vec![(g + r, C::i()), (ng + r, C::i())]);
    }
    let dim = compact.len();

    let to_compact = |w: &[C]| -> Result<Vec<Q>> {
        let bad = || Error::Construction("bracket leaves the compact form".into());
        let mut out = vec![Q::zero(); dim];
        for a in 0..r {
            if !w[a].re.is_zero() {
                return Err(bad());
            }
            out[a] = w[a].im.clone();
        }
        for (p, &g) in rs.positive.iter().enumerate() {
            let wg = w[g + r].clone();
            let wn = w[rs.negative_of(g) + r].clone();
            let a = (wg.clone() - wn.clone()) * C::real(Q::new(1.into(), 2.into()));
            let b = (wg + wn) * C::new(Q::zero(), Q::new((-1).into(), 2.into()));
            if !a.im.is_zero() || !b.im.is_zero() {
                return Err(bad());
            }
            out[r + 2 * p] = a.re;
            out[r + 2 * p + 1] = b.re;
        }
        Ok(out)
    };

    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let w = cbr(&compact[i], &compact[j]);
            if w.iter().all(C::is_zero) {
                continue;
            }
            for (k, c) in to_compact(&w)?.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c));
                }
            }
        }
    }

    let mut labels: Vec<String> = (1..=r).map(|a| format!("T{a}")).collect();
    let mut inner: Vec<Q> = (0..r)
        .map(|a| {
            let e = crate::linalg::unit(r, a);
            ipt(&e, &e)
        })
        .collect();
    let mut planes = Vec::new();
    for (p, &g) in rs.positive.iter().enumerate() {
        let root = &rs.roots[g];
        labels.push(format!("U[{}]", root.name));
        labels.push(format!("V[{}]", root.name));
        let n = qi(4) / ipt(&root.coords, &root.coords);
        inner.push(n.clone());
        inner.push(n);
        planes.push(RootPlane { name: root.name.clone(), root: root.coords.clone(), u: r + 2 * p, v: r + 2 * p + 1 });
    }
    CompactLieAlgebra::from_entries(
        &rs.name.to_ascii_lowercase(),
        labels,
        &entries,
        inner,
        Some(qi(1)),
        (0..r).collect(),
        planes,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{unit, Field};
    use crate::liealg::Subspace;

    #[test]
    fn g2_dimension_and_jacobi() {
        let g2 = build_compact_from_rootsystem(&RootSystem::g2()).unwrap();
        assert_eq!(g2.dim, 14);
        assert_eq!(g2.jacobi_residual(), 0.0);
        assert_eq!(g2.killing_invariance_residual(), 0.0);
    }

    #[test]
    fn eq_n_relations() {
        for rs in [RootSystem::g2(), RootSystem::a2()] {
            let g = build_compact_from_rootsystem(&rs).unwrap();
            for p in &g.root_planes {
                let h_alpha = g.cartan_vector(&p.root);
                let (u, v) = (unit::<Q>(g.dim, p.u), unit::<Q>(g.dim, p.v));
                // [U,V] = |U|² α
                let uv = g.bracket(&u, &v);
                let nu = g.norm2(&u);
                assert_eq!(uv, crate::linalg::scale(&nu, &h_alpha));
                for a in 0..rs.rank {
                    let h = unit::<Q>(g.dim, a);
                    let c = g.ip(&h_alpha, &h);
                    assert_eq!(g.bracket(&h, &u), crate::linalg::scale(&c, &v));
                    assert_eq!(g.bracket(&h, &v), crate::linalg::scale(&(-c), &u));
                }
            }
        }
    }

    #[test]
    fn plane_products() {
        let rs = RootSystem::g2();
        let g = build_compact_from_rootsystem(&rs).unwrap();
        for p in &g.root_planes {
            for q in &g.root_planes {
                if p.name == q.name {
                    continue;
                }
                let vp = g.plane_subspace(&p.name).unwrap();
                let vq = g.plane_subspace(&q.name).unwrap();
                let prod = Subspace::module_product(&g, &vp, &vq);
                let mut allowed = Subspace::zero(&g);
                let a = rs.index_of(&p.root).unwrap();
                let b = rs.index_of(&q.root).unwrap();
                for (x, y, sign) in [(a, b, 1), (a, b, -1)] {
                    let s: Vec<Q> = rs.roots[x]
                        .coords
                        .iter()
                        .zip(&rs.roots[y].coords)
                        .map(|(u, v)| u + qi(sign) * v)
                        .collect();
                    if let Some(i) = rs.index_of(&s) {
                        let pos = if rs.is_positive_root(i) { i } else { rs.negative_of(i) };
                        allowed = allowed.sum(&g, &g.plane_subspace(&rs.roots[pos].name).unwrap());
                    }
                }
                assert!(allowed.contains_subspace(&g, &prod), "{} {}", p.name, q.name);
            }
        }
    }

    #[test]
    fn a2_build_is_su3() {
        let g = build_compact_from_rootsystem(&RootSystem::a2()).unwrap();
        assert_eq!(g.dim, 8);
        let neg = g.killing.map(|x| -x.clone());
        assert_eq!(Q::rank(&neg), 8);
    }
}
