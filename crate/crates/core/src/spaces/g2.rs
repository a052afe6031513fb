//! The five-block decomposition of g₂ and its left-invariant Einstein metrics.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gocheck::{
    lie_group_problem, standard_samples, Arith, GoCertificate, Overall, Tolerances,
};
use crate::liealg::{build_compact_from_rootsystem, subalgebra_type, CompactLieAlgebra, Subspace};
use crate::metrics::{
    detect_naturally_reductive, make_metric, natred_candidates, MetricEndomorphism,
    ModuleDecomposition,
};
use crate::ricci::{einstein_check, EinsteinReport};
use crate::rootsys::RootSystem;
use crate::scalar::{format_q, parse_literal, Scalar, Q};

#[derive(Clone, Debug)]
pub struct G2Decomposition {
    pub alg: CompactLieAlgebra<Q>,
    pub rs: RootSystem,
    /// p₁ … p₅
    pub blocks: ModuleDecomposition<Q>,
}

fn root_line(alg: &CompactLieAlgebra<Q>, rs: &RootSystem, name: &str) -> Result<Subspace<Q>> {
    let i = rs.index_of_name(name).ok_or_else(|| Error::Construction(format!("no root {name}")))?;
    Ok(Subspace::span(alg, &[alg.cartan_vector(&rs.roots[i].coords)]))
}

fn plane(alg: &CompactLieAlgebra<Q>, name: &str) -> Result<Subspace<Q>> {
    alg.plane_subspace(name).ok_or_else(|| Error::Construction(format!("no root plane {name}")))
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Construction(format!("g2 decomposition: {what}")))
    }
}

/// p₁ = [v_{α+2β}, v_{α+2β}], p₂ = [v_α, v_α] ⊕ v_α, p₃ = v_{α+β} ⊕ v_β,
/// p₄ = v_{α+2β}, p₅ = v_{2α+3β} ⊕ v_{α+3β}; all relations checked exactly.
pub fn g2_decomposition() -> Result<G2Decomposition> {
    let rs = RootSystem::g2();
    let alg = build_compact_from_rootsystem(&rs)?;
    let p1 = root_line(&alg, &rs, "a+2b")?;
    let ta = root_line(&alg, &rs, "a")?;
    let p2 = ta.sum(&alg, &plane(&alg, "a")?);
    let p3 = plane(&alg, "a+b")?.sum(&alg, &plane(&alg, "b")?);
    let p4 = plane(&alg, "a+2b")?;
    let p5 = plane(&alg, "2a+3b")?.sum(&alg, &plane(&alg, "a+3b")?);

    // [v_γ, v_γ] is the line of γ in t
    let pb = |s: &Subspace<Q>, t: &Subspace<Q>| Subspace::module_product(&alg, s, t);
    require(pb(&p4, &p4).equals(&alg, &p1), "[v_{a+2b}, v_{a+2b}] is not p1")?;
    require(pb(&plane(&alg, "a")?, &plane(&alg, "a")?).equals(&alg, &ta), "[v_a, v_a] is not the line of a")?;
    require(p1.sum(&alg, &ta).equals(&alg, &alg.cartan_subspace()), "t != p1 + [v_a, v_a]")?;

    let names = (1..=5).map(|i| format!("p{i}")).collect();
    let blocks = ModuleDecomposition::new(
        &alg,
        names,
        vec![p1, p2, p3, p4, p5],
        &Subspace::full(&alg),
    )?;
    let dims: Vec<usize> = blocks.blocks.iter().map(|b| b.dim()).collect();
    require(dims == [1, 3, 4, 2, 4], "block dimensions")?;
    let d = G2Decomposition { alg, rs, blocks };
    d.verify_relations()?;
    Ok(d)
}

impl G2Decomposition {
    pub fn block(&self, i: usize) -> &Subspace<Q> {
        &self.blocks.blocks[i - 1]
    }

    pub fn sum(&self, idx: &[usize]) -> Subspace<Q> {
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        self.blocks.block_sum(&self.alg, &zero_based)
    }

    /// `[p_i, p_j]` as a subspace.
    pub fn product(&self, i: usize, j: usize) -> Subspace<Q> {
        Subspace::module_product(&self.alg, self.block(i), self.block(j))
    }

    fn verify_relations(&self) -> Result<()> {
        let a = &self.alg;
        let p35 = self.product(3, 5);
        require(p35.dim() > 0 && self.block(4).contains_subspace(a, &p35), "[p3,p5] ⊆ p4, nonzero")?;
        let p45 = self.product(4, 5);
        require(p45.dim() > 0 && self.block(3).contains_subspace(a, &p45), "[p4,p5] ⊆ p3, nonzero")?;
        let p34 = self.product(3, 4);
        require(self.sum(&[3, 5]).contains_subspace(a, &p34), "[p3,p4] ⊆ p3+p5")?;
        require(!self.block(3).contains_subspace(a, &p34), "[p3,p4] ⊄ p3")?;
        require(self.product(2, 4).dim() == 0, "[p2,p4] = 0")?;
        let s124 = self.sum(&[1, 2, 4]);
        require(
            s124.is_subalgebra(a) && subalgebra_type(a, &s124).name() == Some("su(2)+su(2)"),
            "p1+p2+p4 is su(2)+su(2)",
        )?;
        let s125 = self.sum(&[1, 2, 5]);
        require(
            s125.is_subalgebra(a) && subalgebra_type(a, &s125).name() == Some("su(3)"),
            "p1+p2+p5 is su(3)",
        )?;
        Ok(())
    }

    /// For each pair `i ≤ j`, the blocks on which `[p_i, p_j]` has a nonzero
    /// component.
    pub fn bracket_inclusions(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let mut out = Vec::new();
        for i in 1..=5 {
            for j in i..=5 {
                let pr = self.product(i, j);
                let hits = (1..=5)
                    .filter(|&t| pr.basis().iter().any(|v| !crate::linalg::is_zero_vec(&self.block(t).project(&self.alg, v))))
                    .collect();
                out.push((i, j, hits));
            }
        }
        out
    }

    /// CSV `i,j,blocks` of [`G2Decomposition::bracket_inclusions`].
    pub fn bracket_inclusions_csv(&self) -> String {
        let mut s = String::from("i,j,blocks\n");
        for (i, j, hits) in self.bracket_inclusions() {
            let h: Vec<String> = hits.iter().map(|t| format!("p{t}")).collect();
            s.push_str(&format!("p{i},p{j},{}\n", h.join(" ")));
        }
        s
    }

    /// Names of the blocks contained in `s`.
    pub fn blocks_in(&self, s: &Subspace<Q>) -> Vec<String> {
        (1..=5).filter(|&i| s.contains_subspace(&self.alg, self.block(i))).map(|i| format!("p{i}")).collect()
    }

    pub fn metric(&self, u: &[Q; 5]) -> Result<MetricEndomorphism<Q>> {
        make_metric(&self.alg, self.blocks.clone(), u.to_vec())
    }
}

/// Metric `Σ u_i ⟨·,·⟩|_{p_i}` in the gauge ⟨·,·⟩ = −B.
pub fn g2_metric(d: &G2Decomposition, u: &[Q; 5]) -> Result<MetricEndomorphism<Q>> {
    d.metric(u)
}

/// The three Einstein parameter sets; the third is known to 8 digits.
pub const EINSTEIN_SETS: [[&str; 5]; 3] = [
    ["1", "1", "1", "1", "1"],
    ["1", "1", "11/9", "11/9", "1"],
    ["1.0851961", "0.69929486", "0.93245951", "1.0225069", "1"],
];

/// Perturbation applied to each 8-digit coefficient.
pub const PERTURBATION: f64 = 1e-6;

pub fn einstein_set(i: usize) -> Result<([Q; 5], bool)> {
    let lits: Vec<_> = EINSTEIN_SETS[i].iter().map(|s| parse_literal(s)).collect::<Result<_>>()?;
    let decimal = lits.iter().any(|l| l.decimal);
    Ok((std::array::from_fn(|t| lits[t].value.clone()), decimal))
}

#[derive(Clone, Debug, Serialize)]
pub struct NatRedReport {
    pub h_blocks: Vec<String>,
    pub h_dim: usize,
    pub h_type: Option<String>,
    pub x: Option<String>,
    pub u: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CornerSummary {
    pub corners: usize,
    pub max_einstein_deviation: f64,
    pub all_non_go_certified: bool,
    /// Smallest, over corners, of the largest certifying residual.
    pub min_certifying_residual: f64,
    pub min_sigma: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetReport {
    pub label: String,
    pub u: [String; 5],
    pub einstein: EinsteinReport,
    pub naturally_reductive: Option<NatRedReport>,
    pub kmax_dim: usize,
    pub kmax_blocks: Vec<String>,
    pub kmax_is_subalgebra: bool,
    pub go: GoCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<CornerSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct G2Report {
    pub schema: &'static str,
    pub seed: u64,
    pub sets: Vec<SetReport>,
    pub failures: Vec<String>,
    pub all_match: bool,
}

/// Samples used for the GO certificates.
pub const G2_SAMPLES_PER_STRATEGY: usize = 8;

fn set_report(
    d: &G2Decomposition,
    idx: usize,
    seed: u64,
    tol: &Tolerances,
    tol_einstein: Option<f64>,
    samples: &[Vec<Q>],
) -> Result<SetReport> {
    let (u, decimal) = einstein_set(idx)?;
    let metric = d.metric(&u)?;
    let et = tol_einstein.unwrap_or(if decimal { 1e-5 } else { 1e-12 });
    let einstein = einstein_check(&d.alg, &metric, et)?;

    let cands = natred_candidates(&d.alg, &d.blocks, Some(&d.rs));
    let naturally_reductive = detect_naturally_reductive(&d.alg, &metric, &cands)?.map(|nr| NatRedReport {
        h_blocks: d.blocks_in(&nr.h),
        h_dim: nr.h.dim(),
        h_type: subalgebra_type(&d.alg, &nr.h).name().map(str::to_string),
        x: nr.x.as_ref().map(format_q),
        u: nr.u.iter().map(|(c, _)| format_q(c)).collect(),
    });

    let problem = lie_group_problem(&d.alg, &metric)?;
    let crate::gocheck::Formulation::LieGroup { k } = &problem.exact.form else { unreachable!() };
    let kmax_dim = k.dim();
    let kmax_blocks = if k.dim() > 0 && k.equals(&d.alg, &d.sum(&blocks_index(&d.blocks_in(k)))) {
        d.blocks_in(k)
    } else {
        Vec::new()
    };
    let kmax_is_subalgebra = k.is_subalgebra(&d.alg);
    let arith = if decimal { Arith::Float } else { Arith::Exact };
    let go = problem.certify(samples, arith, tol, seed)?;

    let perturbation = if decimal { Some(corner_summary(d, &u, samples, tol, seed)?) } else { None };

    Ok(SetReport {
        label: format!("set{}", idx + 1),
        u: std::array::from_fn(|i| EINSTEIN_SETS[idx][i].to_string()),
        einstein,
        naturally_reductive,
        kmax_dim,
        kmax_blocks,
        kmax_is_subalgebra,
        go,
        perturbation,
    })
}

fn blocks_index(names: &[String]) -> Vec<usize> {
    names.iter().filter_map(|n| n.strip_prefix('p')?.parse().ok()).collect()
}

/// Einstein deviation and GO verdict at all `2⁵` corners `u_i ± 1e-6`.
pub fn corner_summary(
    d: &G2Decomposition,
    u: &[Q; 5],
    samples: &[Vec<Q>],
    tol: &Tolerances,
    seed: u64,
) -> Result<CornerSummary> {
    let corners: Vec<[Q; 5]> = (0..32u32)
        .map(|mask| {
            std::array::from_fn(|i| {
                let eps = Q::new(1.into(), 1_000_000.into());
                debug_assert_eq!(eps.to_f64(), PERTURBATION);
                if mask & (1 << i) != 0 {
                    u[i].clone() + eps
                } else {
                    u[i].clone() - eps
                }
            })
        })
        .collect();
    let results: Vec<(f64, bool, f64, f64)> = corners
        .par_iter()
        .map(|c| {
            let metric = d.metric(c)?;
            let fm = metric.to_f64(&d.alg.to_f64());
            let dev = crate::ricci::ricci_left_invariant(&d.alg.to_f64(), &fm)?.deviation;
            let cert = lie_group_problem(&d.alg, &metric)?.certify(samples, Arith::Float, tol, seed)?;
            let certifying: Vec<_> = cert.samples.iter().filter(|s| s.certifies_non_go(tol)).collect();
            let best = certifying.iter().map(|s| s.residual).fold(0.0, f64::max);
            let sigma = certifying
                .iter()
                .filter_map(|s| s.smallest_nonzero_singular_value)
                .fold(f64::INFINITY, f64::min);
            Ok((dev, cert.overall == Overall::NonGoCertified, best, sigma))
        })
        .collect::<Result<_>>()?;
    Ok(CornerSummary {
        corners: results.len(),
        max_einstein_deviation: results.iter().map(|r| r.0).fold(0.0, f64::max),
        all_non_go_certified: results.iter().all(|r| r.1),
        min_certifying_residual: results.iter().map(|r| r.2).fold(f64::INFINITY, f64::min),
        min_sigma: results.iter().map(|r| r.3).fold(f64::INFINITY, f64::min),
    })
}

/// Einstein, natural-reductivity and GO verdicts for the three parameter
/// sets, compared with the expected outcome.
pub fn reproduce_main_theorem(seed: u64, tol: &Tolerances, tol_einstein: Option<f64>) -> Result<G2Report> {
    let d = g2_decomposition()?;
    let samples = standard_samples(&d.alg, &d.blocks, seed, G2_SAMPLES_PER_STRATEGY);
    let sets: Vec<SetReport> = (0..3)
        .into_par_iter()
        .map(|i| set_report(&d, i, seed, tol, tol_einstein, &samples))
        .collect::<Result<_>>()?;

    let mut failures = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    for s in &sets {
        expect(s.einstein.is_einstein, &format!("{}: Einstein", s.label));
    }
    expect(sets[0].go.overall == Overall::GoConfirmedOnSamples, "set1: GO");
    expect(sets[0].kmax_dim == 14, "set1: bi-invariant");
    let nr2 = sets[1].naturally_reductive.as_ref();
    expect(
        nr2.is_some_and(|n| n.h_type.as_deref() == Some("su(3)") && n.x.as_deref() == Some("11/9")),
        "set2: naturally reductive with h = su(3), x = 11/9",
    );
    expect(sets[1].go.overall == Overall::GoConfirmedOnSamples, "set2: GO");
    expect(sets[2].naturally_reductive.is_none(), "set3: not naturally reductive");
    expect(sets[2].kmax_dim == 4 && sets[2].kmax_is_subalgebra, "set3: k_max = p1 + p2");
    expect(sets[2].go.overall == Overall::NonGoCertified, "set3: non-GO certified");
    if let Some(p) = &sets[2].perturbation {
        expect(p.all_non_go_certified, "set3: non-GO at all perturbed corners");
        expect(p.max_einstein_deviation <= 1e-4, "set3: Einstein at all perturbed corners");
    }
    let all_match = failures.is_empty();
    Ok(G2Report { schema: "1", seed, sets, failures, all_match })
}

/// The metric with the third parameter set as floats, for callers that do
/// not need exact coefficients.
pub fn set3_f64() -> [f64; 5] {
    einstein_set(2).map(|(u, _)| u.map(|x| x.to_f64())).expect("literal table parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::max_right_isometry_algebra;
    use crate::scalar::{q, qi};

    #[test]
    fn decomposition_relations() {
        let d = g2_decomposition().unwrap();
        assert_eq!(d.blocks.blocks.iter().map(|b| b.dim()).collect::<Vec<_>>(), vec![1, 3, 4, 2, 4]);
        let inc = d.bracket_inclusions();
        let find = |i, j| inc.iter().find(|e| e.0 == i && e.1 == j).unwrap().2.clone();
        assert_eq!(find(3, 5), vec![4]);
        assert_eq!(find(4, 5), vec![3]);
        assert_eq!(find(2, 4), Vec::<usize>::new());
        assert_eq!(find(3, 4), vec![3, 5]);
    }

    #[test]
    fn kmax_for_distinct_coefficients() {
        let d = g2_decomposition().unwrap();
        let m = d.metric(&[qi(1), qi(2), qi(3), qi(4), qi(5)]).unwrap();
        let k = max_right_isometry_algebra(&d.alg, &m);
        assert!(k.equals(&d.alg, &d.sum(&[1, 2])));
        let m = d.metric(&[qi(1), qi(1), q(11, 9), q(11, 9), qi(1)]).unwrap();
        let k = max_right_isometry_algebra(&d.alg, &m);
        assert!(k.equals(&d.alg, &d.sum(&[1, 2, 5])));
    }
}

#[cfg(test)]
mod reproduce_tests {
    use super::*;

    #[test]
    fn reproduces_all_three_sets() {
        let r = reproduce_main_theorem(42, &Tolerances::default(), None).unwrap();
        assert!(r.all_match, "{:?}", r.failures);
    }
}
