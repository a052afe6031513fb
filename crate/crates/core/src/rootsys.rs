//! Rank-2 root systems, their Weyl groups and closed symmetric subsystems.
//!
//! Roots are stored in an orthogonal frame of the Cartan space in which every
//! coordinate is rational. For G₂ the frame vectors are α and α+2β (which are
//! orthogonal), normalized so that |β|² = 2; the Gram matrix of the frame is
//! then diag(6, 2). For A₂ the frame is (α₁, α₁+2α₂) with |α₁|² = 2, Gram
//! diag(2, 6). The scale that turns this abstract Gram matrix into −B of the
//! compact algebra is recorded in [`RootSystem::minus_b_scale`].

use std::collections::BTreeMap;

use num::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, Field, Matrix};
use crate::scalar::{format_q, q, qi, Scalar, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub name: String,
    /// Coefficients with respect to the simple roots.
    pub simple: Vec<i64>,
    /// Coordinates in the orthogonal frame.
    pub coords: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub name: String,
    pub rank: usize,
    pub frame: Vec<String>,
    /// Positive roots first (indices `0..n`), then their negatives in the same
    /// order (index `i + n` is `-roots[i]`).
    pub roots: Vec<Root>,
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
    /// Gram matrix of the frame, abstract normalization.
    pub gram: Matrix<Q>,
    /// `minus_b_scale * gram` is −B on the Cartan subalgebra.
    pub minus_b_scale: Q,
    /// Weyl group as matrices acting on frame coordinates.
    pub weyl: Vec<Matrix<Q>>,
    /// `weyl_perm[w][i]` is the index of `w(roots[i])`.
    weyl_perm: Vec<Vec<usize>>,
}

fn root_name(simple_names: &[&str], coeffs: &[i64]) -> String {
    let mut s = String::new();
    for (c, n) in coeffs.iter().zip(simple_names) {
        if *c == 0 {
            continue;
        }
        if *c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(n);
    }
    s
}

fn mat_vec(m: &Matrix<Q>, v: &[Q]) -> Vec<Q> {
    m.mul_vec(v)
}

impl RootSystem {
    /// The exceptional system G₂ with simple roots α (long) and β (short).
    pub fn g2() -> RootSystem {
        let alpha = vec![qi(1), qi(0)];
        let beta = vec![q(-1, 2), q(1, 2)];
        let gram = Matrix::from_rows(&[vec![qi(6), qi(0)], vec![qi(0), qi(2)]]);
        Self::from_simple(
            "G2",
            vec!["alpha".into(), "alpha+2beta".into()],
            &["a", "b"],
            vec![alpha, beta],
            gram,
        )
        .expect("G2 data is consistent")
    }

    /// The system A₂ of su(3).
    pub fn a2() -> RootSystem {
        let a1 = vec![qi(1), qi(0)];
        let a2 = vec![q(-1, 2), q(1, 2)];
        let gram = Matrix::from_rows(&[vec![qi(2), qi(0)], vec![qi(0), qi(6)]]);
        Self::from_simple(
            "A2",
            vec!["alpha1".into(), "alpha1+2alpha2".into()],
            &["a1", "a2"],
            vec![a1, a2],
            gram,
        )
        .expect("A2 data is consistent")
    }

    pub fn by_name(name: &str) -> Result<RootSystem> {
        match name.to_ascii_lowercase().as_str() {
            "g2" => Ok(Self::g2()),
            "a2" => Ok(Self::a2()),
            other => Err(Error::InvalidParameters(format!(
                "unknown root system {other:?} (supported: a2, g2)"
            ))),
        }
    }

    /// Generate the full system from simple roots by closing under simple
    /// reflections.
    pub fn from_simple(
        name: &str,
        frame: Vec<String>,
        simple_names: &[&str],
        simple_roots: Vec<Vec<Q>>,
        gram: Matrix<Q>,
    ) -> Result<RootSystem> {
        let rank = simple_roots.len();
        let ip = |a: &[Q], b: &[Q]| dot(&gram.mul_vec(a), b);
        let reflect = |r: &[Q], h: &[Q]| -> Vec<Q> {
            let f = qi(2) * ip(h, r) / ip(r, r);
            h.iter().zip(r).map(|(x, y)| x.clone() - f.clone() * y.clone()).collect()
        };

        let mut all: Vec<Vec<Q>> = simple_roots.clone();
        let mut i = 0;
        while i < all.len() {
            for s in &simple_roots {
                let img = reflect(s, &all[i]);
                if !all.contains(&img) {
                    all.push(img);
                }
            }
            i += 1;
        }

        // simple-root coefficients: solve coords = S c
        let smat = Matrix::from_cols(rank, &simple_roots);
        let coeffs_of = |v: &[Q]| -> Result<Vec<i64>> {
            let sol = Q::solve(&smat, v);
            if sol.consistent != Some(true) {
                return Err(Error::Construction("root outside the simple-root span".into()));
            }
            sol.x
                .iter()
                .map(|c| {
                    if c.is_integer() {
                        Ok(c.to_integer().to_i64().unwrap())
                    } else {
                        Err(Error::Construction("non-integral root coefficient".into()))
                    }
                })
                .collect()
        };

        let mut pos: Vec<(Vec<i64>, Vec<Q>)> = Vec::new();
        for v in &all {
            let c = coeffs_of(v)?;
            let nonneg = c.iter().all(|&x| x >= 0);
            let nonpos = c.iter().all(|&x| x <= 0);
            if !(nonneg || nonpos) {
                return Err(Error::Construction("root neither positive nor negative".into()));
            }
            if nonneg {
                pos.push((c, v.clone()));
            }
        }
        pos.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let n = pos.len();
        if 2 * n != all.len() {
            return Err(Error::Construction("roots are not symmetric".into()));
        }
        let mut roots: Vec<Root> = pos
            .iter()
            .map(|(c, v)| Root { name: root_name(simple_names, c), simple: c.clone(), coords: v.clone() })
            .collect();
        for k in 0..n {
            let r = &roots[k];
            let neg: Vec<i64> = r.simple.iter().map(|x| -x).collect();
            roots.push(Root {
                name: root_name(simple_names, &neg),
                simple: neg,
                coords: r.coords.iter().map(|x| -x.clone()).collect(),
            });
        }
        let simple: Vec<usize> = simple_roots
            .iter()
            .map(|s| roots.iter().position(|r| &r.coords == s).unwrap())
            .collect();

        // Σ_Δ ⟨α,·⟩⊗⟨α,·⟩ must be proportional to the Gram matrix.
        let mut k = Matrix::<Q>::zeros(rank, rank);
        for r in &roots {
            let g = gram.mul_vec(&r.coords);
            for a in 0..rank {
                for b in 0..rank {
                    k[(a, b)] = k[(a, b)].clone() + g[a].clone() * g[b].clone();
                }
            }
        }
        let minus_b_scale = gram[(0, 0)].clone() / k[(0, 0)].clone();
        for a in 0..rank {
            for b in 0..rank {
                if k[(a, b)].clone() * minus_b_scale.clone() != gram[(a, b)] {
                    return Err(Error::Construction("root system is not irreducible".into()));
                }
            }
        }

        let mut rs = RootSystem {
            name: name.to_string(),
            rank,
            frame,
            positive: (0..n).collect(),
            simple,
            roots,
            gram,
            minus_b_scale,
            weyl: Vec::new(),
            weyl_perm: Vec::new(),
        };
        rs.build_weyl();
        Ok(rs)
    }

    fn reflection_matrix(&self, r: &[Q]) -> Matrix<Q> {
        let cols: Vec<Vec<Q>> = (0..self.rank)
            .map(|j| self.reflect_q(r, &crate::linalg::unit(self.rank, j)))
            .collect();
        Matrix::from_cols(self.rank, &cols)
    }

    fn reflect_q(&self, r: &[Q], h: &[Q]) -> Vec<Q> {
        let f = qi(2) * self.ip(h, r) / self.ip(r, r);
        h.iter().zip(r).map(|(x, y)| x.clone() - f.clone() * y.clone()).collect()
    }

    fn build_weyl(&mut self) {
        let gens: Vec<Matrix<Q>> =
            self.simple.iter().map(|&s| self.reflection_matrix(&self.roots[s].coords)).collect();
        let mut group = vec![Matrix::<Q>::identity(self.rank)];
        let mut i = 0;
        while i < group.len() {
            for g in &gens {
                let w = g.mul(&group[i]);
                if !group.contains(&w) {
                    group.push(w);
                }
            }
            i += 1;
        }
        self.weyl_perm = group
            .iter()
            .map(|w| {
                self.roots
                    .iter()
                    .map(|r| {
                        let img = mat_vec(w, &r.coords);
                        self.roots.iter().position(|s| s.coords == img).expect("W permutes roots")
                    })
                    .collect()
            })
            .collect();
        self.weyl = group;
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Inner product with the abstract Gram matrix.
    pub fn ip(&self, a: &[Q], b: &[Q]) -> Q {
        dot(&self.gram.mul_vec(a), b)
    }

    pub fn ip_s<S: Scalar>(&self, a: &[S], b: &[S]) -> S {
        let g = self.gram.map(S::from_q);
        dot(&g.mul_vec(a), b)
    }

    pub fn index_of(&self, v: &[Q]) -> Option<usize> {
        self.roots.iter().position(|r| r.coords == v)
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.roots.iter().position(|r| r.name == name)
    }

    /// Index of `-roots[i]`.
    pub fn negative_of(&self, i: usize) -> usize {
        let n = self.num_positive();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    pub fn is_long(&self, i: usize) -> bool {
        let len = self.ip(&self.roots[i].coords, &self.roots[i].coords);
        self.roots.iter().all(|r| self.ip(&r.coords, &r.coords) <= len)
    }

    /// The orthogonal reflection in the hyperplane of `alpha`.
    pub fn reflect<S: Scalar>(&self, alpha: &[Q], h: &[S]) -> Result<Vec<S>> {
        if self.index_of(alpha).is_none() {
            return Err(Error::NotARoot {
                system: self.name.clone(),
                vector: alpha.iter().map(format_q).collect::<Vec<_>>().join(","),
            });
        }
        let a: Vec<S> = alpha.iter().map(S::from_q).collect();
        let f = S::from_i64(2) * self.ip_s(h, &a) / self.ip_s(&a, &a);
        Ok(h.iter().zip(&a).map(|(x, y)| x.clone() - f.clone() * y.clone()).collect())
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    /// Images `w(seed)` over the Weyl group, each as a sorted list, without
    /// repetition and in sorted order.
    pub fn weyl_orbit(&self, seed: &[Vec<Q>]) -> Vec<Vec<Vec<Q>>> {
        let mut out: Vec<Vec<Vec<Q>>> = self
            .weyl
            .iter()
            .map(|w| {
                let mut img: Vec<Vec<Q>> = seed.iter().map(|v| mat_vec(w, v)).collect();
                img.sort();
                img.dedup();
                img
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The orbit of a single vector.
    pub fn vector_orbit(&self, v: &[Q]) -> Vec<Vec<Q>> {
        self.weyl_orbit(&[v.to_vec()]).into_iter().map(|mut s| s.remove(0)).collect()
    }

    pub fn in_chamber<S: Scalar>(&self, h: &[S]) -> bool {
        self.positive.iter().all(|&i| {
            let a: Vec<S> = self.roots[i].coords.iter().map(S::from_q).collect();
            let v = self.ip_s(&a, h);
            v.is_positive() || v.near_zero(0.0) || v.is_zero()
        })
    }

    /// Move `h` into the closed Weyl chamber by simple reflections.
    pub fn chamber_reduce<S: Scalar>(&self, h: &[S]) -> Vec<S> {
        let mut cur = h.to_vec();
        let norm = cur.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        let tol = if S::EXACT { 0.0 } else { 1e-13 * norm.max(1.0) };
        for _ in 0..=self.weyl.len() * self.roots.len() {
            let neg = self.simple.iter().find(|&&s| {
                let a: Vec<S> = self.roots[s].coords.iter().map(S::from_q).collect();
                let v = self.ip_s(&a, &cur);
                !v.is_positive() && !v.near_zero(tol) && !v.is_zero()
            });
            match neg {
                Some(&s) => cur = self.reflect(&self.roots[s].coords, &cur).unwrap(),
                None => return cur,
            }
        }
        cur
    }

    /// All closed symmetric subsystems (including ∅ and Δ), as sorted index
    /// lists.
    pub fn all_closed_symmetric_subsystems(&self) -> Vec<RootSubsystem> {
        let n = self.num_positive();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let mut members: Vec<usize> = Vec::new();
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    members.push(i);
                    members.push(i + n);
                }
            }
            members.sort();
            let sub = RootSubsystem { members };
            if sub.is_closed(self) {
                out.push(sub);
            }
        }
        out
    }

    fn canonical_key(&self, sub: &RootSubsystem) -> (Vec<Vec<i64>>, usize) {
        let mut best: Option<(Vec<Vec<i64>>, usize)> = None;
        for (wi, perm) in self.weyl_perm.iter().enumerate() {
            let mut key: Vec<Vec<i64>> = sub
                .members
                .iter()
                .map(|&i| perm[i])
                .filter(|&j| j < self.num_positive())
                .map(|j| self.roots[j].simple.clone())
                .collect();
            key.sort();
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, wi));
            }
        }
        best.unwrap()
    }

    /// Apply the Weyl element with index `w` to a subsystem.
    pub fn act_on_subsystem(&self, w: usize, sub: &RootSubsystem) -> RootSubsystem {
        let mut members: Vec<usize> = sub.members.iter().map(|&i| self.weyl_perm[w][i]).collect();
        members.sort();
        RootSubsystem { members }
    }

    pub fn w_equivalent(&self, a: &RootSubsystem, b: &RootSubsystem) -> bool {
        self.canonical_key(a).0 == self.canonical_key(b).0
    }

    /// One representative per Weyl-class of proper closed symmetric
    /// subsystems, ordered by (size, canonical key). The representative is
    /// the image minimizing the sorted list of simple-root coefficient
    /// vectors of its positive roots.
    pub fn enumerate_closed_symmetric_subsystems(&self) -> Vec<RootSubsystem> {
        let full = self.roots.len();
        let mut classes: BTreeMap<(usize, Vec<Vec<i64>>), RootSubsystem> = BTreeMap::new();
        for sub in self.all_closed_symmetric_subsystems() {
            if sub.members.len() == full {
                continue;
            }
            let (key, w) = self.canonical_key(&sub);
            let rep = self.act_on_subsystem(w, &sub);
            classes.entry((sub.members.len(), key)).or_insert(rep);
        }
        classes.into_values().collect()
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            name: self.name.clone(),
            rank: self.rank,
            frame: self.frame.clone(),
            roots: self
                .roots
                .iter()
                .map(|r| RootJson {
                    name: r.name.clone(),
                    simple: r.simple.clone(),
                    coords: r.coords.iter().map(format_q).collect(),
                })
                .collect(),
            positive: self.positive.iter().map(|&i| self.roots[i].name.clone()).collect(),
            gram: self.gram.to_rows().iter().map(|r| r.iter().map(format_q).collect()).collect(),
            minus_b_scale: format_q(&self.minus_b_scale),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootSubsystem {
    /// Sorted indices into the parent's `roots`.
    pub members: Vec<usize>,
}

impl RootSubsystem {
    pub fn from_names(rs: &RootSystem, names: &[&str]) -> Option<RootSubsystem> {
        let mut members = Vec::new();
        for n in names {
            let i = rs.index_of_name(n)?;
            members.push(i);
            members.push(rs.negative_of(i));
        }
        members.sort();
        members.dedup();
        Some(RootSubsystem { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_symmetric(&self, rs: &RootSystem) -> bool {
        self.members.iter().all(|&i| self.members.contains(&rs.negative_of(i)))
    }

    pub fn is_closed(&self, rs: &RootSystem) -> bool {
        for &i in &self.members {
            for &j in &self.members {
                let a = &rs.roots[i].coords;
                let b = &rs.roots[j].coords;
                for sign in [Q::one(), -Q::one()] {
                    let c: Vec<Q> = a.iter().zip(b).map(|(x, y)| x.clone() + sign.clone() * y.clone()).collect();
                    if c.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    if let Some(k) = rs.index_of(&c) {
                        if !self.members.contains(&k) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn positive_members(&self, rs: &RootSystem) -> Vec<usize> {
        self.members.iter().copied().filter(|&i| i < rs.num_positive()).collect()
    }

    pub fn names(&self, rs: &RootSystem) -> Vec<String> {
        self.members.iter().map(|&i| rs.roots[i].name.clone()).collect()
    }

    /// Display form such as `{±a, ±(a+3b)}`.
    pub fn display(&self, rs: &RootSystem) -> String {
        let parts: Vec<String> = self
            .positive_members(rs)
            .iter()
            .map(|&i| {
                let n = &rs.roots[i].name;
                if n.contains('+') {
                    format!("±({n})")
                } else {
                    format!("±{n}")
                }
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootJson {
    pub name: String,
    pub simple: Vec<i64>,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystemJson {
    pub name: String,
    pub rank: usize,
    pub frame: Vec<String>,
    pub roots: Vec<RootJson>,
    pub positive: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub minus_b_scale: String,
}

impl RootSystem {
    /// Float copy of a root's coordinates.
    pub fn coords_f64(&self, i: usize) -> Vec<f64> {
        self.roots[i].coords.iter().map(Scalar::to_f64).collect()
    }

    /// ⟨α, α⟩ in the abstract normalization.
    pub fn norm2(&self, i: usize) -> Q {
        self.ip(&self.roots[i].coords, &self.roots[i].coords)
    }

    pub fn is_positive_root(&self, i: usize) -> bool {
        i < self.num_positive()
    }

    pub fn sign_of(&self, i: usize) -> i32 {
        if self.roots[i].simple.iter().any(|c| c.is_positive()) {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(rs: &RootSystem, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| rs.roots[i].name.clone()).collect()
    }

    #[test]
    fn g2_roots() {
        let g2 = RootSystem::g2();
        assert_eq!(g2.roots.len(), 12);
        assert_eq!(names(&g2, &g2.positive), ["a", "b", "a+b", "a+2b", "a+3b", "2a+3b"]);
        let long: Vec<String> =
            (0..12).filter(|&i| g2.is_long(i)).map(|i| g2.roots[i].name.clone()).collect();
        assert_eq!(long, ["a", "a+3b", "2a+3b", "-a", "-a-3b", "-2a-3b"]);
        let a = &g2.roots[0].coords;
        let b = &g2.roots[1].coords;
        assert_eq!(g2.ip(b, b), qi(2));
        assert_eq!(g2.ip(a, a), qi(6));
        assert_eq!(g2.ip(a, b), qi(-3));
        let a2b = &g2.roots[g2.index_of_name("a+2b").unwrap()].coords;
        assert!(g2.ip(a, a2b).is_zero());
        assert_eq!(g2.minus_b_scale, q(1, 24));
        assert_eq!(g2.weyl_order(), 12);
    }

    #[test]
    fn reflections() {
        let g2 = RootSystem::g2();
        let a = g2.roots[0].coords.clone();
        let b = g2.roots[1].coords.clone();
        let img = g2.reflect(&b, &a).unwrap();
        assert_eq!(g2.roots[g2.index_of(&img).unwrap()].name, "a+3b");
        let neg: Vec<Q> = a.iter().map(|x| -x.clone()).collect();
        assert_eq!(g2.reflect(&a, &a).unwrap(), neg);
        assert!(g2.reflect(&[qi(1), qi(1)], &a).is_err());
    }

    #[test]
    fn a2_roots() {
        let a2 = RootSystem::a2();
        assert_eq!(a2.roots.len(), 6);
        assert_eq!(a2.weyl_order(), 6);
        assert_eq!(a2.minus_b_scale, q(1, 6));
        assert!((0..6).all(|i| a2.norm2(i) == qi(2)));
    }

    #[test]
    fn orbits() {
        let g2 = RootSystem::g2();
        assert_eq!(g2.vector_orbit(&g2.roots[0].coords).len(), 6);
        assert_eq!(g2.vector_orbit(&[qi(0), qi(0)]).len(), 1);
        assert_eq!(g2.vector_orbit(&[q(3, 7), q(1, 5)]).len(), 12);
    }

    #[test]
    fn g2_subsystems() {
        let g2 = RootSystem::g2();
        let classes = g2.enumerate_closed_symmetric_subsystems();
        let shown: Vec<String> = classes.iter().map(|c| c.display(&g2)).collect();
        assert_eq!(
            shown,
            ["{}", "{±b}", "{±a}", "{±b, ±(2a+3b)}", "{±a, ±(a+3b), ±(2a+3b)}"]
        );
    }

    #[test]
    fn a2_subsystems() {
        let a2 = RootSystem::a2();
        let classes = a2.enumerate_closed_symmetric_subsystems();
        assert_eq!(classes.len(), 2);
        assert!(classes[0].is_empty());
        assert_eq!(classes[1].len(), 2);
    }
}
