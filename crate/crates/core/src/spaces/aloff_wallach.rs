//! Aloff–Wallach spaces `W_{k,l} = SU(3)/SO(2)`.
//!
//! Vectors of su(3) use the basis of [`build_su3_aw`]: index 0 is `Z`, index
//! 1 is `X0' = X₀/f`, indices 2..8 are X₁…X₆. A user-facing coefficient α₀ on
//! the unit vector X₀ is the coefficient `α₀·f` on `X0'`; all routines here take
//! the latter (`a0`), which is rational.

use num::{Complex, Integer, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gocheck::{
    standard_samples, Arith, Formulation, GoCertificate, GoProblem, Overall, ReductiveSpace, Setup, Tolerances,
};
use crate::liealg::{build_abelian, build_su3_aw, CompactLieAlgebra, Subspace};
use crate::linalg::{axpy, is_zero_vec, unit};
use crate::metrics::{make_metric, MetricEndomorphism, ModuleDecomposition};
use crate::scalar::{format_q, q, qi, Q};

pub const DIM: usize = 8;
const IDX_Z: usize = 0;
const IDX_X0: usize = 1;

#[derive(Clone, Debug)]
pub struct AloffWallach {
    pub k: i64,
    pub l: i64,
    pub m: i64,
    pub l_val: i64,
    /// `sqrt(2 / (3 L))`
    pub f: f64,
    pub space: ReductiveSpace<Q>,
    /// m₁ = (X₁,X₂), m₂ = (X₃,X₄), m₃ = (X₅,X₆), m₄ = (X₀)
    pub blocks: ModuleDecomposition<Q>,
}

/// Which GO criterion to run on an Aloff–Wallach space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AwFormulation {
    /// Direct check on `U(3)`-presentation `(SU(3) × T¹)/T¹`.
    Direct,
    /// SU(3) isotropy plus the operator `ad(X₀)|_m`.
    Reduced,
    /// `[A X, X + V + W] ∈ h` with `W ∈ c_g(h) ∩ m`.
    NormalTransitive,
}

impl AwFormulation {
    pub const ALL: [AwFormulation; 3] = [AwFormulation::Direct, AwFormulation::Reduced, AwFormulation::NormalTransitive];
}

pub fn aloff_wallach(k: i64, l: i64) -> Result<AloffWallach> {
    if k < l || l < 0 {
        return Err(Error::InvalidParameters(format!("need k >= l >= 0, got ({k}, {l})")));
    }
    if k == 0 && l == 0 {
        return Err(Error::InvalidParameters("(k, l) = (0, 0)".into()));
    }
    if k.gcd(&l) != 1 {
        return Err(Error::InvalidParameters(format!("gcd({k}, {l}) != 1")));
    }
    let m = -k - l;
    let l_val = k * k + l * l + m * m;
    if 2 * (k * k + l * l + m * m - k * l - k * m - l * m) != 3 * l_val {
        return Err(Error::Construction("k²+l²+m²−kl−km−ml ≠ 3L/2".into()));
    }
    let alg = build_su3_aw(k, l)?;
    let z = unit::<Q>(DIM, IDX_Z);
    let table = [
        (IDX_X0, None),
        (2, Some((3, k - l))),
        (3, Some((2, l - k))),
        (4, Some((5, k - m))),
        (5, Some((4, m - k))),
        (6, Some((7, l - m))),
        (7, Some((6, m - l))),
    ];
    for (i, expect) in table {
        let br = alg.bracket(&z, &unit(DIM, i));
        let want = match expect {
            None => vec![Q::zero(); DIM],
            Some((j, c)) => crate::linalg::scale(&qi(c), &unit(DIM, j)),
        };
        if br != want {
            return Err(Error::Construction(format!("[Z, {}] does not match the table", alg.labels[i])));
        }
    }
    let h = Subspace::coordinate(&alg, &[IDX_Z]);
    let space = ReductiveSpace::new(alg.clone(), h)?;
    let blocks = vec![
        Subspace::coordinate(&alg, &[2, 3]),
        Subspace::coordinate(&alg, &[4, 5]),
        Subspace::coordinate(&alg, &[6, 7]),
        Subspace::coordinate(&alg, &[IDX_X0]),
    ];
    for b in &blocks {
        if !space.h.normalizes(&alg, b) {
            return Err(Error::Construction("block is not ad(h)-invariant".into()));
        }
    }
    let names = ["m1", "m2", "m3", "m4"].iter().map(|s| s.to_string()).collect();
    let blocks = ModuleDecomposition::new(&alg, names, blocks, &space.m)?;
    Ok(AloffWallach { k, l, m, l_val, f: (2.0 / (3.0 * l_val as f64)).sqrt(), space, blocks })
}

/// Tangent vector `a0·X0' + Σ α_i X_i`.
pub fn aw_vector(a0: &Q, alpha: &[Q; 6]) -> Vec<Q> {
    let mut v = vec![Q::zero(); DIM];
    v[IDX_X0] = a0.clone();
    for (i, a) in alpha.iter().enumerate() {
        v[2 + i] = a.clone();
    }
    v
}

impl AloffWallach {
    pub fn alg(&self) -> &CompactLieAlgebra<Q> {
        &self.space.alg
    }

    /// W_{1,0} and W_{1,1} carry larger families of invariant metrics and a
    /// larger isometry group.
    pub fn is_excluded(&self) -> bool {
        (self.k, self.l) == (1, 0) || (self.k, self.l) == (1, 1)
    }

    fn check_classifiable(&self) -> Result<()> {
        if self.is_excluded() {
            return Err(Error::Excluded(format!(
                "W_{{{},{}}} has more invariant metrics and its isometry group is not locally U(3)",
                self.k, self.l
            )));
        }
        Ok(())
    }

    /// Invariant metric `x_i⟨·,·⟩` on m_i (gauge ⟨·,·⟩ = −B/12).
    pub fn metric(&self, x: &[Q; 4]) -> Result<MetricEndomorphism<Q>> {
        make_metric(self.alg(), self.blocks.clone(), x.to_vec())
    }

    /// The GO problem for one formulation, plus the map taking tangent
    /// vectors of `W` to that formulation's tangent space.
    pub fn problem(&self, metric: &MetricEndomorphism<Q>, form: AwFormulation) -> Result<AwProblem> {
        let alg = self.alg();
        let setup = match form {
            AwFormulation::NormalTransitive => {
                let c = Subspace::centralizer(alg, &self.space.h).intersection(alg, &self.space.m);
                Setup::new(self.space.clone(), metric.clone(), Formulation::NormalTransitive { c })?
            }
            AwFormulation::Reduced => {
                let op = alg.ad(&unit(DIM, IDX_X0));
                Setup::new(self.space.clone(), metric.clone(), Formulation::Reduced { ops: vec![op] })?
            }
            AwFormulation::Direct => return self.u3_problem(metric),
        };
        Ok(AwProblem { form, problem: GoProblem::new(setup), lift: false })
    }

    /// `g₁ = su(3) ⊕ Rκ` with ⟨κ,κ⟩ = ⟨X0',X0'⟩, `h₁ = span(Z, X0' + κ)`,
    /// `m₁ = span(X₁…X₆, X0' − κ)`. The projection to su(3) along κ maps
    /// `X0' − κ` to `2 X0'`, so the pulled-back metric has coefficient `2 x₄`
    /// on that line.
    fn u3_problem(&self, metric: &MetricEndomorphism<Q>) -> Result<AwProblem> {
        let su3 = self.alg();
        let kappa = build_abelian(vec![su3.inner[(IDX_X0, IDX_X0)].clone()])?;
        let g1 = su3.direct_sum(&kappa, &format!("u3[{},{}]", self.k, self.l))?;
        let mut hx = unit::<Q>(DIM + 1, IDX_X0);
        hx[DIM] = Q::one();
        let mut mx = unit::<Q>(DIM + 1, IDX_X0);
        mx[DIM] = -Q::one();
        let h1 = Subspace::span(&g1, &[unit(DIM + 1, IDX_Z), hx]);
        let space = ReductiveSpace::new(g1.clone(), h1)?;
        let blocks = vec![
            Subspace::coordinate(&g1, &[2, 3]),
            Subspace::coordinate(&g1, &[4, 5]),
            Subspace::coordinate(&g1, &[6, 7]),
            Subspace::span(&g1, &[mx]),
        ];
        let d = ModuleDecomposition::new(&g1, self.blocks.names.clone(), blocks, &space.m)?;
        let mut x = metric.coeffs.clone();
        x[3] = qi(2) * x[3].clone();
        let m1 = make_metric(&g1, d, x)?;
        Ok(AwProblem {
            form: AwFormulation::Direct,
            problem: GoProblem::new(Setup::new(space, m1, Formulation::Direct)?),
            lift: true,
        })
    }

    /// Seeded tangent vectors spread over the blocks.
    pub fn samples(&self, seed: u64, n: usize) -> Vec<Vec<Q>> {
        standard_samples(self.alg(), &self.blocks, seed, n)
    }
}

#[derive(Clone, Debug)]
pub struct AwProblem {
    pub form: AwFormulation,
    pub problem: GoProblem,
    lift: bool,
}

impl AwProblem {
    /// Tangent vector of the formulation's presentation.
    pub fn lift(&self, x: &[Q]) -> Vec<Q> {
        if !self.lift {
            return x.to_vec();
        }
        let mut v = x.to_vec();
        let a0 = v[IDX_X0].clone() / qi(2);
        v[IDX_X0] = a0.clone();
        v.push(-a0);
        v
    }

    pub fn certify(&self, samples: &[Vec<Q>], arith: Arith, tol: &Tolerances, seed: u64) -> Result<GoCertificate> {
        let lifted: Vec<Vec<Q>> = samples.iter().map(|x| self.lift(x)).collect();
        let mut cert = self.problem.certify(&lifted, arith, tol, seed)?;
        cert.mode = format!("aw_{}", self.problem.mode());
        Ok(cert)
    }
}

/// `aw_metric` as a free function.
pub fn aw_metric(aw: &AloffWallach, x1: Q, x2: Q, x3: Q, x4: Q) -> Result<MetricEndomorphism<Q>> {
    aw.metric(&[x1, x2, x3, x4])
}

type Cq = Complex<Q>;

fn cq(re: Q, im: Q) -> Cq {
    Complex::new(re, im)
}

type M3 = [[Cq; 3]; 3];

fn m3_commutator(a: &M3, b: &M3) -> M3 {
    let mut out: M3 = std::array::from_fn(|_| std::array::from_fn(|_| Cq::zero()));
    for (i, row) in out.iter_mut().enumerate() {
        for (j, o) in row.iter_mut().enumerate() {
            for k in 0..3 {
                *o += a[i][k].clone() * b[k][j].clone() - b[i][k].clone() * a[k][j].clone();
            }
        }
    }
    out
}

/// The 3×3 matrix with off-diagonal part given by α₁…α₆ (weighted by the
/// block coefficients `w`) and diagonal `i·diag(d)`.
fn aw_matrix(alpha: &[Q; 6], w: &[Q; 3], d: [Q; 3]) -> M3 {
    let mut m: M3 = std::array::from_fn(|_| std::array::from_fn(|_| Cq::zero()));
    for (i, di) in d.into_iter().enumerate() {
        m[i][i] = cq(Q::zero(), di);
    }
    for (pair, (p, qq)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        let (a, s) = (alpha[2 * pair].clone() * w[pair].clone(), alpha[2 * pair + 1].clone() * w[pair].clone());
        m[p][qq] = cq(a.clone(), s.clone());
        m[qq][p] = cq(-a, s);
    }
    m
}

/// The three combinations
///
/// ```text
/// α₂/(2i)·(u₁₂+u₂₁) + α₁/2·(u₁₂−u₂₁)
/// α₄/(2i)·(u₁₃+u₃₁) + α₃/2·(u₁₃−u₃₁)
/// α₆/(2i)·(u₂₃+u₃₂) + α₅/2·(u₂₃−u₃₂)
/// ```
///
/// of the entries of `U = [A(X), X + V + W]`, with the off-diagonal part of X
/// given by `alpha` = (α₁,…,α₆). They do not depend on the diagonal entries of
/// either factor, so α₀, f and (β, γ) drop out; `diag` supplies arbitrary
/// rational stand-ins `(d_X, d_{X+V+W})`.
pub fn aw_obstruction_with(x: [&Q; 3], alpha: &[Q; 6], diag: ([Q; 3], [Q; 3])) -> [Q; 3] {
    let one = [Q::one(), Q::one(), Q::one()];
    let w = [x[0].clone(), x[1].clone(), x[2].clone()];
    let ax = aw_matrix(alpha, &w, diag.0);
    let y = aw_matrix(alpha, &one, diag.1);
    let u = m3_commutator(&ax, &y);
    let half = q(1, 2);
    let two_i = cq(Q::zero(), qi(2));
    let comb = |p: usize, qq: usize, a_re: &Q, a_im: &Q| -> Q {
        let s = u[p][qq].clone() + u[qq][p].clone();
        let d = u[p][qq].clone() - u[qq][p].clone();
        let v = s * cq(a_im.clone(), Q::zero()) / two_i.clone() + d * cq(a_re.clone() * half.clone(), Q::zero());
        debug_assert!(v.im.is_zero());
        v.re
    };
    [
        comb(0, 1, &alpha[0], &alpha[1]),
        comb(0, 2, &alpha[2], &alpha[3]),
        comb(1, 2, &alpha[4], &alpha[5]),
    ]
}

/// [`aw_obstruction_with`] at the actual diagonal of X (with rational `a0`
/// on X0') and `β = γ = 0`.
pub fn aw_obstruction(aw: &AloffWallach, x1: &Q, x2: &Q, x3: &Q, a0: &Q, alpha: &[Q; 6]) -> [Q; 3] {
    let (k, l, m) = (aw.k, aw.l, aw.m);
    let dx = [qi(l - m) * a0.clone(), qi(m - k) * a0.clone(), qi(k - l) * a0.clone()];
    aw_obstruction_with([x1, x2, x3], alpha, (dx.clone(), dx))
}

/// `P = α₂α₄α₅ − α₂α₃α₆ + α₁α₃α₅ + α₁α₄α₆`.
pub fn aw_obstruction_polynomial(alpha: &[Q; 6]) -> Q {
    let a = |i: usize| alpha[i - 1].clone();
    a(2) * a(4) * a(5) - a(2) * a(3) * a(6) + a(1) * a(3) * a(5) + a(1) * a(4) * a(6)
}

/// Points with at most three nonzero coordinates, each in {0,1,2,3}: a cubic
/// in six variables vanishing there vanishes identically.
pub fn cubic_spanning_set() -> Vec<[Q; 6]> {
    let mut out = Vec::new();
    for code in 0..4u32.pow(6) {
        let digits: Vec<i64> = (0..6).map(|i| ((code / 4u32.pow(i)) % 4) as i64).collect();
        if digits.iter().filter(|&&d| d != 0).count() <= 3 {
            out.push(std::array::from_fn(|i| qi(digits[i])));
        }
    }
    out
}

/// Whether all three obstructions vanish identically in X.
pub fn aw_obstruction_vanishes(x1: &Q, x2: &Q, x3: &Q) -> bool {
    let zero = [Q::zero(), Q::zero(), Q::zero()];
    cubic_spanning_set()
        .iter()
        .all(|a| aw_obstruction_with([x1, x2, x3], a, (zero.clone(), zero.clone())).iter().all(Q::is_zero))
}

/// The closed-form witness for `x₁ = x₂ = x₃ = x`: `V + W = (x₄/x − 1)·a0·X0'`,
/// i.e. `β = (x₄/x − 1) a0 (l−m)`, `γ = (x₄/x − 1) a0 (m−k)`.
pub fn aw_closed_form_witness(x: &Q, x4: &Q, a0: &Q) -> Vec<Q> {
    let c = (x4.clone() / x.clone() - Q::one()) * a0.clone();
    crate::linalg::scale(&c, &unit(DIM, IDX_X0))
}

/// `(β, γ)` of `V + W = vZ + wX0'` in `i·diag(β, γ, −β−γ)`.
pub fn beta_gamma(aw: &AloffWallach, vw: &[Q]) -> (Q, Q) {
    let (v, w) = (vw[IDX_Z].clone(), vw[IDX_X0].clone());
    (
        v.clone() * qi(aw.k) + w.clone() * qi(aw.l - aw.m),
        v * qi(aw.l) + w * qi(aw.m - aw.k),
    )
}

/// Points `e_i` and `e_i + e_j` in (a0, α₁, …, α₆): a quadratic form is
/// determined by its values there.
pub fn quadratic_spanning_set() -> Vec<[Q; 7]> {
    let mut out = Vec::new();
    for i in 0..7 {
        out.push(std::array::from_fn(|t| if t == i { Q::one() } else { Q::zero() }));
        for j in i + 1..7 {
            out.push(std::array::from_fn(|t| if t == i || t == j { Q::one() } else { Q::zero() }));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    pub x: String,
    pub x4: String,
    pub points: usize,
    /// `[A(X), X + V + W] = 0` at every point.
    pub identity_holds: bool,
    /// The solver's witness at a random point, as (β, γ).
    pub solver_beta_gamma: (String, String),
    pub closed_form_beta_gamma: (String, String),
    pub reproduces_closed_form: bool,
}

/// Check the closed-form witness on the degree-2 spanning set plus one random
/// rational point, and compare with the normal-transitive solver there.
pub fn aw_symbolic_witness(aw: &AloffWallach, x: &Q, x4: &Q, seed: u64) -> Result<WitnessCheck> {
    let metric = aw.metric(&[x.clone(), x.clone(), x.clone(), x4.clone()])?;
    let alg = aw.alg();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random: [Q; 7] = std::array::from_fn(|_| q(rng.random_range(-50..=50), rng.random_range(1..=9)));
    let mut points = quadratic_spanning_set();
    points.push(random.clone());
    let mut identity_holds = true;
    for p in &points {
        let xv = aw_vector(&p[0], &std::array::from_fn(|i| p[i + 1].clone()));
        let mut t = xv.clone();
        axpy(&Q::one(), &aw_closed_form_witness(x, x4, &p[0]), &mut t);
        let u = alg.bracket(&metric.apply(alg, &xv), &t);
        identity_holds &= is_zero_vec(&u);
    }

    let xv = aw_vector(&random[0], &std::array::from_fn(|i| random[i + 1].clone()));
    let prob = aw.problem(&metric, AwFormulation::NormalTransitive)?;
    let sys = prob.problem.exact.system(&xv)?;
    let sol = <Q as crate::linalg::Field>::solve(&sys.m, &sys.b);
    let mut vw = vec![Q::zero(); DIM];
    for (z, u) in sol.x.iter().zip(&sys.unknowns) {
        axpy(z, u.as_ref().expect("vector unknown"), &mut vw);
    }
    let solver = beta_gamma(aw, &vw);
    let closed = beta_gamma(aw, &aw_closed_form_witness(x, x4, &random[0]));
    Ok(WitnessCheck {
        x: format_q(x),
        x4: format_q(x4),
        points: points.len(),
        identity_holds,
        reproduces_closed_form: sol.consistent == Some(true) && solver == closed,
        solver_beta_gamma: (format_q(&solver.0), format_q(&solver.1)),
        closed_form_beta_gamma: (format_q(&closed.0), format_q(&closed.1)),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GridEntry {
    pub x: [String; 4],
    pub overall: Overall,
    pub exact_non_go: bool,
    pub obstruction_vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AwClassification {
    pub schema: &'static str,
    pub k: i64,
    pub l: i64,
    pub seed: u64,
    pub grid: Vec<GridEntry>,
    pub witnesses: Vec<WitnessCheck>,
    pub conclusion: String,
    pub matches: bool,
}

/// Distinct-coefficient test grid: all `(x₁,x₂,x₃) ∈ {1,2,3}³` not all
/// equal, with `x₄ ∈ {1, 3}`, plus two explicit metrics.
pub fn aw_test_grid() -> Vec<[Q; 4]> {
    let mut out = vec![[qi(2), qi(1), qi(1), qi(5)], [qi(1), qi(1), qi(2), qi(1)]];
    for x4 in [1, 3] {
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    if !(a == b && b == c) {
                        out.push([qi(a), qi(b), qi(c), qi(x4)]);
                    }
                }
            }
        }
    }
    out
}

/// Exact non-GO certificates on the grid and the symbolic GO confirmation
/// for `x₁ = x₂ = x₃`.
pub fn aw_go_classify(k: i64, l: i64, seed: u64) -> Result<AwClassification> {
    aw_go_classify_on(k, l, seed, &aw_test_grid())
}

pub fn aw_go_classify_on(k: i64, l: i64, seed: u64, grid: &[[Q; 4]]) -> Result<AwClassification> {
    use rayon::prelude::*;
    let aw = aloff_wallach(k, l)?;
    aw.check_classifiable()?;
    let tol = Tolerances::default();
    let samples = aw.samples(seed, 4);
    let entries: Vec<GridEntry> = grid
        .par_iter()
        .map(|x| -> Result<GridEntry> {
            let metric = aw.metric(x)?;
            let cert = aw.problem(&metric, AwFormulation::NormalTransitive)?.certify(&samples, Arith::Exact, &tol, seed)?;
            Ok(GridEntry {
                x: std::array::from_fn(|i| format_q(&x[i])),
                overall: cert.overall,
                exact_non_go: cert.overall == Overall::NonGoCertified,
                obstruction_vanishes: aw_obstruction_vanishes(&x[0], &x[1], &x[2]),
            })
        })
        .collect::<Result<_>>()?;
    let mut witnesses = Vec::new();
    for (x, x4) in [(1, 1), (1, 3), (2, 1), (2, 3)] {
        witnesses.push(aw_symbolic_witness(&aw, &qi(x), &qi(x4), seed)?);
    }
    let matches = entries.iter().all(|e| e.exact_non_go && !e.obstruction_vanishes)
        && witnesses.iter().all(|w| w.identity_holds && w.reproduces_closed_form);
    Ok(AwClassification {
        schema: "1",
        k,
        l,
        seed,
        grid: entries,
        witnesses,
        conclusion: "SU(3)-invariant metrics on W_{k,l} are geodesic orbit exactly when x1 = x2 = x3".into(),
        matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AgreementSample {
    pub k: i64,
    pub l: i64,
    pub x: [String; 4],
    pub feasible: [bool; 3],
}

/// Run the three formulations in exact arithmetic on `n` seeded
/// (space, metric, vector) triples; one third of the metrics have
/// `x₁ = x₂ = x₃`.
pub fn formulation_agreement(seed: u64, n: usize) -> Result<Vec<AgreementSample>> {
    use rayon::prelude::*;
    let spaces: Vec<AloffWallach> = [(2, 1), (3, 1), (3, 2), (5, 2)]
        .iter()
        .map(|&(k, l)| aloff_wallach(k, l))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(n);
    for i in 0..n {
        let s = rng.random_range(0..spaces.len());
        let mut x: [Q; 4] = std::array::from_fn(|_| q(rng.random_range(1..=6), rng.random_range(1..=3)));
        if i % 3 == 0 {
            x[1] = x[0].clone();
            x[2] = x[0].clone();
        }
        let v: Vec<Q> = (0..7).map(|_| qi(rng.random_range(-4..=4))).collect();
        let xv = aw_vector(&v[0], &std::array::from_fn(|t| v[t + 1].clone()));
        cases.push((s, x, xv));
    }
    let tol = Tolerances::default();
    cases
        .par_iter()
        .map(|(s, x, xv)| {
            let aw = &spaces[*s];
            let metric = aw.metric(x)?;
            let mut feasible = [false; 3];
            for (slot, form) in feasible.iter_mut().zip(AwFormulation::ALL) {
                let p = aw.problem(&metric, form)?;
                let r = p.problem.check(&p.lift(xv), Arith::Exact, &tol)?;
                *slot = r.verdict == crate::gocheck::Verdict::Feasible;
            }
            Ok(AgreementSample { k: aw.k, l: aw.l, x: std::array::from_fn(|i| format_q(&x[i])), feasible })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let aw = aloff_wallach(2, 1).unwrap();
        assert_eq!(aw.l_val, 14);
        assert!(aloff_wallach(4, 2).is_err());
        assert!(aloff_wallach(1, 2).is_err());
        let w11 = aloff_wallach(1, 1).unwrap();
        assert!(matches!(aw_go_classify(1, 1, 0), Err(Error::Excluded(_))));
        assert!(w11.is_excluded());
        assert!(matches!(aw_go_classify(1, 0, 0), Err(Error::Excluded(_))));
    }

    #[test]
    fn obstruction_is_minus_factor_times_p() {
        let aw = aloff_wallach(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x: [Q; 3] = std::array::from_fn(|_| qi(rng.random_range(1..=5)));
            let alpha: [Q; 6] = std::array::from_fn(|_| qi(rng.random_range(-3..=3)));
            let a0 = q(rng.random_range(-5..=5), 7);
            let o = aw_obstruction(&aw, &x[0], &x[1], &x[2], &a0, &alpha);
            let p = aw_obstruction_polynomial(&alpha);
            let f = [x[1].clone() - x[2].clone(), x[2].clone() - x[0].clone(), x[0].clone() - x[1].clone()];
            for i in 0..3 {
                assert_eq!(o[i], -f[i].clone() * p.clone());
            }
            assert!((o[0].clone() + o[1].clone() + o[2].clone()).is_zero());
            // diagonal stand-ins do not matter
            let d1 = [qi(5), q(-1, 3), qi(2)];
            let d2 = [qi(-7), qi(4), q(2, 9)];
            assert_eq!(aw_obstruction_with([&x[0], &x[1], &x[2]], &alpha, (d1, d2)), o);
        }
    }

    #[test]
    fn obstruction_boundary() {
        assert!(aw_obstruction_vanishes(&qi(2), &qi(2), &qi(2)));
        assert!(!aw_obstruction_vanishes(&qi(1), &qi(1), &qi(2)));
        assert!(!aw_obstruction_vanishes(&qi(1), &qi(2), &qi(3)));
    }

    #[test]
    fn witness_identity() {
        let aw = aloff_wallach(2, 1).unwrap();
        for (x, x4) in [(1, 1), (1, 3), (2, 1), (2, 3)] {
            let w = aw_symbolic_witness(&aw, &qi(x), &qi(x4), 9).unwrap();
            assert!(w.identity_holds);
            assert!(w.reproduces_closed_form, "{w:?}");
        }
    }

    #[test]
    fn formulations_agree() {
        for s in formulation_agreement(5, 24).unwrap() {
            assert!(s.feasible.iter().all(|&f| f == s.feasible[0]), "{s:?}");
        }
    }

    /// Over the SU(3) isotropy alone the direct check decides SU(3)-GO, which
    /// is stricter: it fails for x₁ = x₂ = x₃ ≠ x₄.
    #[test]
    fn direct_over_su3_isotropy_is_stricter() {
        let aw = aloff_wallach(2, 1).unwrap();
        let metric = aw.metric(&[qi(1), qi(1), qi(1), qi(2)]).unwrap();
        let p = GoProblem::new(Setup::new(aw.space.clone(), metric.clone(), Formulation::Direct).unwrap());
        let one = Q::one();
        let xv = aw_vector(&one, &[one.clone(), Q::zero(), one.clone(), Q::zero(), Q::zero(), Q::zero()]);
        let tol = Tolerances::default();
        assert_eq!(p.check(&xv, Arith::Exact, &tol).unwrap().verdict, crate::gocheck::Verdict::Infeasible);
        let nt = aw.problem(&metric, AwFormulation::Direct).unwrap();
        assert_eq!(nt.problem.check(&nt.lift(&xv), Arith::Exact, &tol).unwrap().verdict, crate::gocheck::Verdict::Feasible);
    }

    #[test]
    fn grid_is_non_go() {
        let grid = [[qi(1), qi(2), qi(3), qi(1)], [qi(2), qi(1), qi(1), qi(5)], [qi(1), qi(1), qi(2), qi(1)]];
        let r = aw_go_classify_on(2, 1, 1, &grid).unwrap();
        assert!(r.matches, "{r:?}");
    }
}
