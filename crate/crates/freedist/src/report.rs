//! Verification suites, check results and report emission.

use crate::inclusions::{
    cr_fefferman, fefferman_transversality, lambda2_matrix, lambda2_rep, octonion_spin_check, pairs4, spinorial_fefferman,
    su22_basis, su22_four_form_check, su22_rep,
};
use crate::jet::{JMat, Jet};
use crate::kostant::{adjoint_scalar, Kostant};
use crate::lie::build_so;
use crate::linalg::Mat;
use crate::models::{
    flat_curvature, nonflat_example, normality_check, standard_commutator_failures, standard_model, twisted_product,
    TwistSigns,
};
use crate::octonion::{
    canonical_closed_plane, classify_isotropic_plane, closed_plane_report, find_triple, g2_graded_decomposition, g2_in_im,
    alternator_four_form, sl3_example_check, symbolic_identities, theta_form, triple_table_check, IsotropicPlane, Orbit, ZornRule,
};
use crate::scalar::{fmt_scalar, q, Scalar};
use crate::tractor::{
    central_cov_injectivity, h_metric, is_parallel, mu_extraction, normalize_splitting_for_v, parallel_section,
    upsilon_action, verify_maxpref_properties, SplittingData, TractorError, TractorSection, WeylShift,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

pub const DEFAULT_SEED: u64 = 20_240_611;
pub const SUITES: [&str; 6] = ["algebra", "kostant", "models", "tractor", "octonion", "inclusions"];

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("unknown suite {0:?}; expected one of algebra, kostant, models, tractor, octonion, inclusions, all")]
    UnknownSuite(String),
    #[error("invalid n-range {0:?}")]
    InvalidRange(String),
    #[error("no results to emit")]
    Empty,
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Microseconds; omitted when timestamps are suppressed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

/// Inclusive range of n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRange {
    pub min: usize,
    pub max: usize,
}

impl NRange {
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.min..=self.max
    }

    pub fn clamp(&self, lo: usize, hi: usize) -> impl Iterator<Item = usize> {
        self.min.max(lo)..=self.max.min(hi)
    }

    pub fn contains(&self, n: usize) -> bool {
        (self.min..=self.max).contains(&n)
    }
}

impl FromStr for NRange {
    type Err = ReportError;

    /// `MIN..MAX`, `MIN..=MAX` or a single `N`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ReportError::InvalidRange(s.to_string());
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a, b.trim_start_matches('=')),
            None => (s, s),
        };
        let min: usize = a.trim().parse().map_err(|_| bad())?;
        let max: usize = b.trim().parse().map_err(|_| bad())?;
        let r = NRange { min, max };
        r.validate().map_err(|_| bad())?;
        Ok(r)
    }
}

impl NRange {
    pub fn validate(&self) -> Result<(), ReportError> {
        if self.min < 2 || self.min > self.max || self.max > 8 {
            return Err(ReportError::InvalidRange(format!("{}..{}", self.min, self.max)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: NRange,
    pub seed: u64,
    pub deep: bool,
    /// Record elapsed times and a generation timestamp.
    pub timing: bool,
}

impl Default for Params {
    fn default() -> Self {
        Params { n: NRange { min: 2, max: 5 }, seed: DEFAULT_SEED, deep: false, timing: true }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub n_min: usize,
    pub n_max: usize,
    pub deep: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub params: ParamsJson,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    /// Seconds since the Unix epoch; omitted with timestamps suppressed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
}

impl Report {
    pub fn new(suite: &str, params: &Params, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let summary = summarize(&checks);
        let generated_at = params
            .timing
            .then(|| std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
        Report {
            suite: suite.to_string(),
            seed: params.seed,
            params: ParamsJson { n_min: params.n.min, n_max: params.n.max, deep: params.deep },
            checks,
            summary,
            generated_at,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.summary.fail > 0
    }
}

pub fn summarize(checks: &[CheckResult]) -> Summary {
    let mut s = Summary::default();
    for c in checks {
        match c.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Skipped => s.skipped += 1,
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

pub fn render(report: &Report, format: Format) -> Result<String, ReportError> {
    if report.checks.is_empty() {
        return Err(ReportError::Empty);
    }
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Text => Ok(render_text(report)),
    }
}

fn render_text(r: &Report) -> String {
    let width = r.checks.iter().map(|c| c.id.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "suite {}  seed {}  n {}..{}  deep {}", r.suite, r.seed, r.params.n_min, r.params.n_max, r.params.deep);
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let pad = width - c.id.chars().count();
        let time = c.elapsed_us.map(|t| format!("{:>10.3}s  ", t as f64 / 1e6)).unwrap_or_default();
        let _ = writeln!(out, "{status}  {}{}  {time}{}", c.id, " ".repeat(pad), c.witness.as_deref().unwrap_or(""));
    }
    let s = r.summary;
    let _ = writeln!(out, "summary: {} pass, {} fail, {} skipped", s.pass, s.fail, s.skipped);
    out
}

/// Writes the rendered report to `path`, or returns it when `path` is `None`.
pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> Result<String, ReportError> {
    let s = render(report, format)?;
    if let Some(p) = path {
        std::fs::write(p, &s)?;
    }
    Ok(s)
}

struct Ctx {
    timing: bool,
    out: Vec<CheckResult>,
}

impl Ctx {
    /// `f` returns whether the check passed and the computed value used as witness.
    fn check(&mut self, id: impl Into<String>, anchor: &str, f: impl FnOnce() -> (bool, String)) {
        let t = Instant::now();
        let (pass, witness) = f();
        let elapsed = t.elapsed();
        self.out.push(CheckResult {
            id: id.into(),
            anchor: anchor.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            witness: Some(witness),
            elapsed_us: self.timing.then(|| elapsed.as_micros() as u64),
        });
    }

    /// Like `check`, timing the construction of a value that later checks reuse.
    fn value<T>(&mut self, id: impl Into<String>, anchor: &str, build: impl FnOnce() -> T, judge: impl FnOnce(&T) -> (bool, String)) -> T {
        let mut slot = None;
        self.check(id, anchor, || {
            let v = build();
            let r = judge(&v);
            slot = Some(v);
            r
        });
        slot.unwrap()
    }

    /// A perturbed input whose check has to fail; passes when the failure is detected.
    fn mutation(&mut self, id: impl Into<String>, anchor: &str, f: impl FnOnce() -> (bool, String)) {
        self.check(id, anchor, || {
            let (detected, w) = f();
            (detected, if detected { format!("detected: {w}") } else { format!("not detected: {w}") })
        });
    }

    fn skip(&mut self, id: impl Into<String>, anchor: &str, why: &str) {
        self.out.push(CheckResult {
            id: id.into(),
            anchor: anchor.to_string(),
            status: Status::Skipped,
            witness: Some(why.to_string()),
            elapsed_us: None,
        });
    }
}

/// Runs one suite, or all of them for `"all"`. Results are sorted by id.
pub fn run_suite(selector: &str, params: &Params) -> Result<Vec<CheckResult>, ReportError> {
    params.n.validate()?;
    let suites: Vec<&str> = match selector {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => return Err(ReportError::UnknownSuite(s.to_string())),
    };
    let mut ctx = Ctx { timing: params.timing, out: Vec::new() };
    for s in suites {
        match s {
            "algebra" => algebra_suite(&mut ctx, params),
            "kostant" => kostant_suite(&mut ctx, params),
            "models" => models_suite(&mut ctx, params),
            "tractor" => tractor_suite(&mut ctx, params),
            "octonion" => octonion_suite(&mut ctx, params),
            _ => inclusions_suite(&mut ctx, params),
        }
    }
    ctx.out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(ctx.out)
}

fn subscript(k: i32) -> String {
    let digits = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    let mut s = String::new();
    if k < 0 {
        s.push('₋');
    }
    for ch in k.abs().to_string().chars() {
        s.push(digits[ch.to_digit(10).unwrap() as usize]);
    }
    s
}

fn block_label(wedge: (i32, i32), g: i32) -> String {
    format!("(g{}∧g{})⊗g{}", subscript(wedge.0), subscript(wedge.1), subscript(g))
}

fn algebra_suite(ctx: &mut Ctx, p: &Params) {
    const A: &str = "so(n+1,n) grading: \"[g₁, g₁] = g₂\", \"given by taking the wedge\"";
    for n in p.n.iter() {
        let g = build_so(n).unwrap();
        ctx.check(format!("algebra.n{n}.jacobi"), A, || match g.alg.jacobi_violation() {
            None => (true, format!("dim {}", g.dim())),
            Some((i, j, k, v)) => (false, format!("({i},{j},{k}) -> {} nonzero entries", v.iter().filter(|x| *x != &q(0)).count())),
        });
        ctx.check(format!("algebra.n{n}.grade_additivity"), A, || match g.grade_violation() {
            None => (true, "[g_i, g_j] ⊆ g_(i+j)".into()),
            Some((i, j)) => (false, format!("[{}, {}]", g.label(i), g.label(j))),
        });
        ctx.check(format!("algebra.n{n}.nilradical_free"), A, || {
            let r = g.nilradical_check();
            (r.ok() && r.wedge_rank == n * (n - 1) / 2, format!("wedge rank {} dim g1 {} dim g2 {} {:?}", r.wedge_rank, r.dim_g1, r.dim_g2, r.failures))
        });
        ctx.check(format!("algebra.n{n}.dim_g_minus_p"), A, || {
            let d = g.dim() - g.p_indices().len();
            (d == n * (n + 1) / 2, format!("{d}"))
        });
        ctx.check(format!("algebra.n{n}.grading_element"), A, || match g.grading_element() {
            Ok(_) => (true, "ad E = grade".into()),
            Err(e) => (false, e.to_string()),
        });
    }
    ctx.mutation("algebra.mutation.perturbed_structure_constant", A, || {
        let mut g = build_so(2).unwrap();
        let (i, j) = (g.indices_of_grade(1)[0], g.indices_of_grade(1)[1]);
        let k = g.indices_of_grade(-1)[0];
        g.alg.perturb_structure(i, j, k, q(1));
        let jac = g.alg.jacobi_violation();
        let gr = g.grade_violation();
        (jac.is_some() || gr.is_some(), format!("jacobi {:?} grade {:?}", jac.map(|v| (v.0, v.1, v.2)), gr))
    });
}

fn kostant_suite(ctx: &mut Ctx, p: &Params) {
    const A: &str = "Kostant homology: \"contained inside (g₁ ∧ g₂) ⊗ g₋₂\", \"these geometries are never torsion-free\"";
    for n in p.n.iter() {
        if n >= 5 && !p.deep {
            ctx.skip(format!("kostant.n{n}.homology"), A, "behind --deep");
            continue;
        }
        let g = build_so(n).unwrap();
        let k = Kostant::new(&g);
        ctx.check(format!("kostant.n{n}.d_squared"), A, || {
            let z = k.differential(1).compose(&k.differential(0)).is_zero();
            (z, format!("∂∘∂ = 0: {z}"))
        });
        ctx.check(format!("kostant.n{n}.dstar_squared"), A, || {
            let z = match (k.codifferential(2), k.codifferential(3)) {
                (Ok(a), Ok(b)) => a.compose(&b).is_zero(),
                _ => false,
            };
            (z, format!("∂*∘∂* = 0: {z}"))
        });
        let mut slot = None;
        ctx.check(format!("kostant.n{n}.homology"), A, || {
            let h = k.homology();
            let w = format!("dim H₂ {} by homogeneity {:?}", h.total_dim(), h.dims);
            let ok = h.total_dim() > 0;
            slot = Some(h);
            (ok, w)
        });
        let h = slot.unwrap();
        let present: Vec<String> =
            h.support.iter().filter(|b| b.dim > 0).map(|b| format!("{}: present (dim {}, homogeneity {})", block_label(b.wedge, b.g), b.dim, b.homogeneity)).collect();
        if n <= 3 {
            ctx.check(format!("kostant.n{n}.block_support"), A, || {
                let inside = h.support.iter().filter(|b| b.dim > 0).all(|b| b.wedge == (1, 2) && b.g == 0);
                (inside, present.join("; "))
            });
        } else {
            ctx.check(format!("kostant.n{n}.block_support"), A, || (h.present((1, 2), -2), present.join("; ")));
        }
    }
    ctx.mutation("kostant.mutation.flipped_codifferential_sign", A, || {
        let g = build_so(2).unwrap();
        let mut k = Kostant::new(&g);
        k.perturb = true;
        let sq = k.codifferential(2).unwrap().compose(&k.codifferential(3).unwrap());
        let adj = adjoint_scalar(&k.differential(1), &k.codifferential(2).unwrap());
        (!sq.is_zero() || adj.is_none(), format!("∂*∘∂* zero {}, ∂* proportional to ∂ᵗ {}", sq.is_zero(), adj.is_some()))
    });
}

fn random_point(rng: &mut ChaCha8Rng, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| q(rng.gen_range(-9..=9))).collect()
}

fn models_suite(ctx: &mut Ctx, p: &Params) {
    const A: &str = "homogeneous model: \"[X_i, X_j] = U_ij\", \"[X_k, U_ij] = 0\"";
    const N: &str = "non-flat example: \"= U₃₄\"";
    const T: &str = "twisted product theorem: three commutator displays";
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x6d6f64);
    for n in p.n.iter() {
        let m = standard_model(n).unwrap();
        ctx.check(format!("models.n{n}.commutator_table"), A, || match standard_commutator_failures(&m) {
            Ok(b) => (b.is_empty(), format!("{} fields, failures {:?}", m.len(), b)),
            Err(e) => (false, e.to_string()),
        });
        let k = flat_curvature(&m);
        ctx.check(format!("models.n{n}.flat_curvature"), A, || match &k {
            Ok(k) => (k.is_zero(), format!("{} nonzero entries", k.entries.len())),
            Err(e) => (false, e.to_string()),
        });
        ctx.check(format!("models.n{n}.flat_normal"), A, || match &k {
            Ok(k) => {
                let r = normality_check(&m, k);
                (r.is_normal(), format!("∂*κ nonzero on {:?}", r.offenders()))
            }
            Err(e) => (false, e.to_string()),
        });
        let pt = random_point(&mut rng, m.nvars());
        ctx.check(format!("models.n{n}.free"), A, || {
            let origin = vec![q(0); m.nvars()];
            let (a, b) = (m.freeness_rank(&origin), m.freeness_rank(&pt));
            (m.is_free_at(&origin) && m.is_free_at(&pt), format!("H + [H, H] spans rank {a} at origin, {b} at a random point, of {}", m.nvars()))
        });
    }
    if p.n.contains(4) || p.n.max >= 4 {
        let m = nonflat_example(4).unwrap();
        let k = flat_curvature(&m).unwrap();
        ctx.check("models.nonflat.κ(U₁₂,X₁′)=U₃₄", N, || {
            let (i, j) = (m.index_of("X1'").unwrap(), m.index_of("U12").unwrap());
            let u34 = m.index_of("U34").unwrap();
            let nv = m.nvars();
            let v = k.get(j, i, m.len(), nv);
            let want: Vec<_> = (0..m.len()).map(|c| if c == u34 { crate::poly::Poly::one(nv) } else { crate::poly::Poly::zero(nv) }).collect();
            (k.entries.len() == 1 && v == want, format!("{} nonzero entries; κ(U12,X1') == U34: {}", k.entries.len(), v == want))
        });
        ctx.check("models.nonflat.normal", N, || {
            let r = normality_check(&m, &k);
            (r.is_normal(), format!("offenders {:?}", r.offenders()))
        });
    }
    let m2 = standard_model(2).unwrap();
    match twisted_product(&m2, &m2, TwistSigns::WORKING) {
        Ok(tp) => {
            ctx.check("models.twisted.relations", T, || match tp.relation_failures(&m2, &m2) {
                Ok(b) => (b.is_empty(), format!("failures {b:?}")),
                Err(e) => (false, e.to_string()),
            });
            ctx.check("models.twisted.free_rank4", T, || {
                let origin = vec![q(0); tp.frame.nvars()];
                let r = tp.frame.freeness_rank(&origin);
                (tp.frame.h_part.len() == 4 && tp.frame.is_free_at(&origin), format!("rank {} distribution, H + [H, H] spans {r} of {}", tp.frame.h_part.len(), tp.frame.nvars()))
            });
            ctx.check("models.twisted.curvature_direct_sum", T, || match tp.direct_sum_failures(&m2, &m2) {
                Ok(b) => (b.is_empty(), format!("mismatches {b:?}")),
                Err(e) => (false, e.to_string()),
            });
        }
        Err(e) => ctx.check("models.twisted.relations", T, || (false, e.to_string())),
    }
    ctx.mutation("models.mutation.literal_twist_signs", T, || match twisted_product(&m2, &m2, TwistSigns::LITERAL) {
        Ok(tp) => {
            let b = tp.relation_failures(&m2, &m2).unwrap_or_default();
            (!b.is_empty(), format!("{} relation failures", b.len()))
        }
        Err(e) => (true, e.to_string()),
    });
    ctx.mutation("models.mutation.nonflat_is_not_flat", N, || {
        let m = nonflat_example(4).unwrap();
        let k = flat_curvature(&m).unwrap();
        (!k.is_zero(), format!("{} curvature entries", k.entries.len()))
    });
}

fn rand_section(rng: &mut ChaCha8Rng, n: usize) -> TractorSection {
    let v = random_point(rng, 2 * n + 1);
    TractorSection::from_scalars(&v[..n], v[n].clone(), &v[n + 1..])
}

fn rand_shift(rng: &mut ChaCha8Rng, n: usize) -> WeylShift {
    let u1 = random_point(rng, n);
    let mut s = Mat::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = q(rng.gen_range(-9..=9));
            s[(j, i)] = -x.clone();
            s[(i, j)] = x;
        }
    }
    WeylShift::from_scalars(&u1, &s)
}

/// h(Υ·s, Υ·t) = h(s, t) with every entry of s, t and Υ an independent variable (n = 2).
fn symbolic_h_invariance() -> bool {
    let n = 2;
    let len = 2 * n + 1;
    let nv = 2 * len + n + 1;
    let order = 6;
    let var = |k: usize| Jet::var(nv, order, k);
    let sec = |o: usize| TractorSection { cov: (0..n).map(|i| var(o + i)).collect(), scal: var(o + n), vec: (0..n).map(|i| var(o + n + 1 + i)).collect() };
    let (s, t) = (sec(0), sec(len));
    let mut ups2 = JMat::zeros(n, n, nv, order);
    ups2.set(0, 1, var(2 * len + n));
    ups2.set(1, 0, var(2 * len + n).neg());
    let u = WeylShift { ups1: (0..n).map(|i| var(2 * len + i)).collect(), ups2 };
    h_metric(&upsilon_action(&s, &u), &upsilon_action(&t, &u)) == h_metric(&s, &t)
}

fn parallel_v(d: &SplittingData, n: usize) -> Vec<TractorSection> {
    (0..n)
        .map(|i| {
            let mut s0 = vec![q(0); 2 * n + 1];
            s0[i] = q(1);
            s0[n + 1 + i] = q(1);
            parallel_section(d, &s0)
        })
        .collect()
}

fn tractor_suite(ctx: &mut Ctx, p: &Params) {
    const H: &str = "tractor metric: \"h is invariant under the action of Υ\"";
    const V: &str = "preferred splitting for V: \"μ is symmetric\"";
    const M: &str = "maximal-rank preferred splitting theorem";
    const R: &str = "remark: \"the inclusions H* ⊂ ℝ ⊕ H* ⊂ T are well defined\"";
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x747261);
    if p.n.contains(2) {
        ctx.check("tractor.n2.h_invariance_symbolic", H, || {
            let ok = symbolic_h_invariance();
            (ok, format!("polynomial identity in 13 variables: {ok}"))
        });
    }
    for n in p.n.clamp(2, 4) {
        let trials = 20;
        let mut bad = 0;
        for _ in 0..trials {
            let (s, t, u) = (rand_section(&mut rng, n), rand_section(&mut rng, n), rand_shift(&mut rng, n));
            if h_metric(&upsilon_action(&s, &u), &upsilon_action(&t, &u)) != h_metric(&s, &t) || upsilon_action(&s, &u).vec != s.vec {
                bad += 1;
            }
        }
        ctx.check(format!("tractor.n{n}.h_invariance_random"), H, || (bad == 0, format!("{bad} of {trials} seeded trials fail")));
        for strong in [false, true] {
            let variant = if strong { "strong" } else { "weak" };
            for r in 1..=n {
                let (mut ok, mut retries, mut failures) = (0, 0, Vec::new());
                while ok < 100 && retries < 1000 {
                    let v: Vec<TractorSection> = (0..r).map(|_| rand_section(&mut rng, n)).collect();
                    match normalize_splitting_for_v(&v, strong) {
                        Ok(out) => {
                            ok += 1;
                            let mu = mu_extraction(&out.sections);
                            let good = match &mu {
                                Ok(mu) => mu.is_symmetric() && (!strong || mu.kills_isotropic()) && out.shifts.len() <= r + r * r,
                                Err(_) => false,
                            };
                            if !good && failures.len() < 3 {
                                failures.push(format!("{:?}", v.iter().map(|s| s.values().iter().map(fmt_scalar).collect::<Vec<_>>()).collect::<Vec<_>>()));
                            }
                        }
                        Err(TractorError::Genericity(_)) => retries += 1,
                        Err(e) => {
                            ok += 1;
                            failures.push(e.to_string());
                        }
                    }
                }
                ctx.check(format!("tractor.n{n}.normalize_{variant}_rank{r}"), V, || {
                    (ok == 100 && failures.is_empty(), format!("{ok} generic V, {retries} non-generic resampled, failures {failures:?}"))
                });
            }
        }
        let m = standard_model(n).unwrap();
        let d = SplittingData::flat(&m, 1);
        ctx.check(format!("tractor.n{n}.central_cov_injective"), R, || {
            let r = central_cov_injectivity(&d);
            (r == n + 1, format!("rank {r}"))
        });
    }
    for (n, order) in [(2usize, 3), (3, 2)] {
        if !p.n.contains(n) {
            continue;
        }
        let m = standard_model(n).unwrap();
        let d = SplittingData::flat(&m, order);
        let v = parallel_v(&d, n);
        ctx.check(format!("tractor.n{n}.maxpref"), M, || match verify_maxpref_properties(&d, &v) {
            Ok(r) => (
                r.all_pass() && v.iter().all(|s| is_parallel(&d, s)),
                r.bullets.iter().map(|b| format!("{}: {} (order {})", b.name, if b.pass { "pass" } else { "fail" }, b.order)).collect::<Vec<_>>().join("; "),
            ),
            Err(e) => (false, e.to_string()),
        });
    }
    ctx.mutation("tractor.mutation.non_parallel_v", M, || {
        let n = 2;
        let m = standard_model(n).unwrap();
        let d = SplittingData::flat(&m, 3);
        let nv = m.nvars();
        let mut v = parallel_v(&d, n);
        v[0] = TractorSection::from_column(&v[0].to_column().iter().map(|x| Jet::constant(nv, 3, x.value())).collect::<Vec<_>>());
        match verify_maxpref_properties(&d, &v) {
            Ok(r) => (!r.all_pass(), format!("failing bullets {:?}", r.bullets.iter().filter(|b| !b.pass).map(|b| b.name.clone()).collect::<Vec<_>>())),
            Err(e) => (true, e.to_string()),
        }
    });
}

fn rand_gl3(rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = Mat::from_fn(3, 3, |_, _| q(rng.gen_range(-3..=3)));
        if m.rank() == 3 {
            return m;
        }
    }
}

fn octonion_suite(ctx: &mut Ctx, p: &Params) {
    const Z: &str = "split octonions: \"Multiplication is given by\"";
    const L: &str = "octonionic triple lemma: multiplication table";
    const O: &str = "\"There are three orbits of isotropic 3-planes\"";
    const G: &str = "g₂' graded decomposition \"(X', X, Θ, X', X)\"";
    const S: &str = "SL(3,ℝ)/T² distribution example";
    for r in symbolic_identities(ZornRule::Corrected) {
        let id = format!("octonion.identity.{}", r.name);
        ctx.check(id, Z, || (r.pass, "exact polynomial identity".into()));
    }
    // multilinear, so checking every basis index tuple is exact
    ctx.check("octonion.identity.N([x, y, z], w) alternating", Z, || {
        let f = alternator_four_form(ZornRule::Corrected);
        (f.is_alternating() && !f.is_zero(), format!("on all 8⁴ basis tuples, nonzero {}", !f.is_zero()))
    });
    ctx.check("octonion.identity.theta alternating", Z, || {
        let f = theta_form();
        (f.is_alternating(), "on all 7³ basis tuples of Im O'".into())
    });
    let [x, y, z] = find_triple();
    match triple_table_check(&x, &y, &z) {
        Ok(rels) => {
            for r in rels {
                ctx.check(format!("octonion.triple.{}", r.name), L, || (r.pass, format!("x={:?} y={:?} z={:?}", coords(&x), coords(&y), coords(&z))));
            }
        }
        Err(e) => ctx.check("octonion.triple", L, || (false, e.to_string())),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x6f6374);
    let closed = canonical_closed_plane();
    let open = IsotropicPlane::new(x.clone(), y.clone(), z.clone()).unwrap();
    for (name, plane, want_closed) in [("canonical_closed", &closed, true), ("triple_open", &open, false)] {
        let mut bad = Vec::new();
        let mut classes = Vec::new();
        for k in 0..=20 {
            let pl = if k == 0 { plane.clone() } else { plane.rebased(&rand_gl3(&mut rng)).unwrap() };
            let c = matches!(classify_isotropic_plane(&pl), Orbit::Closed { .. });
            classes.push(c);
            if c != want_closed || crate::octonion::closed_under_product(&pl) != want_closed {
                bad.push(k);
            }
        }
        ctx.check(format!("octonion.orbit.{name}"), O, || {
            (bad.is_empty(), format!("{} under 20 seeded basis changes; mismatches {bad:?}", if want_closed { "Closed" } else { "Open" }))
        });
    }
    for r in closed_plane_report(&closed) {
        ctx.check(format!("octonion.closed_plane.{}", r.name), O, || (r.pass, "canonical plane".into()));
    }
    ctx.check("octonion.g2.stab_theta_im", G, || {
        let s = g2_in_im();
        (s.dim() == 14 && s.is_closed(), format!("dim {} closed {}", s.dim(), s.is_closed()))
    });
    ctx.check("octonion.g2.graded_decomposition", G, || match g2_graded_decomposition(&x, &y, &z) {
        Ok(d) => (
            d.dim == 14 && d.closed && d.g0_dim == 8 && d.g0_traceless && d.negative_dim == 0 && d.diag_scalars.is_some() && d.failures.is_empty(),
            format!(
                "dim {} in so(4,3), g₀ part {} (traceless {}), g₋ part {}, projection rank {}, diagonal scalars {:?}",
                d.dim,
                d.g0_dim,
                d.g0_traceless,
                d.negative_dim,
                d.projection_rank,
                d.diag_scalars.as_ref().map(|(a, b)| (fmt_scalar(a), fmt_scalar(b)))
            ),
        ),
        Err(e) => (false, e.to_string()),
    });
    ctx.check("octonion.sl3_example", S, || {
        let r = sl3_example_check();
        (
            r.torus_preserves && r.bracket_dim == 3 && r.bracket_is_transpose && r.intersection_dim == 0,
            format!("{r:?}"),
        )
    });
    ctx.mutation("octonion.mutation.displayed_product_rule", Z, || {
        let fails: Vec<String> = symbolic_identities(ZornRule::Displayed).into_iter().filter(|r| !r.pass).map(|r| r.name).collect();
        (!fails.is_empty(), format!("failing identities {fails:?}"))
    });
}

fn coords(z: &crate::octonion::Zorn) -> Vec<String> {
    z.coords().iter().map(fmt_scalar).collect()
}

fn inclusions_suite(ctx: &mut Ctx, p: &Params) {
    const LC: &str = "Lagrangian contact lemma: \"we get an algebra inclusion sl(4,ℝ) ⊂ so(3,3)\"";
    const CR: &str = "CR lemma: \"there is an inclusion su(2,2) ↪ so(4,2)\"";
    const FF: &str = "\"Re(v) - (μ)²\"";
    const FE: &str = "CR Fefferman: \"Ĝ is of dimension 21, P̂ of dimension 15, G also of dimension 15, P of dimension 10 and G ∩ P̂ of dimension 9\"";
    const SP: &str = "almost-spinorial Fefferman: \"P̂ ∩ G = P\"";
    let l2 = ctx.value("inclusions.lambda2.injective", LC, lambda2_rep, |l2| (l2.is_injective(), format!("image dim {}", l2.image_rank())));
    ctx.check("inclusions.lambda2.brackets", LC, || {
        let b = l2.bracket_failures();
        (b.is_empty(), format!("{} failing pairs of {}", b.len(), 15 * 14 / 2))
    });
    ctx.check("inclusions.lambda2.signature", LC, || {
        let s = l2.form_signature();
        (s == (3, 3, 0), format!("{s:?}"))
    });
    ctx.check("inclusions.lambda2.onto_so33", LC, || (l2.onto_orthogonal() && l2.image_rank() == 15, format!("image {}", l2.image_rank())));
    ctx.check("inclusions.lambda2.diagonal", LC, || {
        let h = Mat::from_i64(4, 4, &[1, 0, 0, 0, 0, 2, 0, 0, 0, 0, -4, 0, 0, 0, 0, 1]);
        let m = lambda2_matrix(&h);
        let d = [1i64, 2, -4, 1];
        let ok = pairs4().iter().enumerate().all(|(r, &(i, j))| (0..6).all(|c| m[(r, c)] == if r == c { q(d[i] + d[j]) } else { q(0) }));
        (ok, "diag(1,2,-4,1) acts on e_i∧e_j by d_i + d_j".into())
    });
    let su = ctx.value("inclusions.su22.real_structure", CR, su22_rep, |su| {
        (su.real_structure && su.real_dim == 6 && su.form_real, format!("σ² = 1: {}, real dim {}, pairing real {}", su.real_structure, su.real_dim, su.form_real))
    });
    ctx.check("inclusions.su22.dim", CR, || {
        let d = su22_basis().len();
        (d == 15, format!("dim su(2,2) = {d}"))
    });
    ctx.check("inclusions.su22.signature", CR, || {
        let s = su.rep.form_signature();
        (s == (4, 2, 0), format!("{s:?} after sign {}", su.form_sign))
    });
    ctx.check("inclusions.su22.injective", CR, || (su.rep.is_injective(), format!("image dim {}", su.rep.image_rank())));
    ctx.check("inclusions.su22.brackets", CR, || {
        let b = su.rep.bracket_failures();
        (b.is_empty(), format!("{} failing pairs", b.len()))
    });
    ctx.check("inclusions.su22.onto_so42", CR, || (su.rep.onto_orthogonal(), format!("image {}", su.rep.image_rank())));
    let ff = ctx.value("inclusions.four_form.stabilizer_21", FF, su22_four_form_check, |ff| {
        (
            ff.stabilizer_dim == 21 && ff.stabilizer_closed && ff.form_alternating,
            format!("Re(v) - c μ∧μ with c = {}; stab dim {} closed {}", ff.scale.as_ref().map(fmt_scalar).unwrap_or("none".into()), ff.stabilizer_dim, ff.stabilizer_closed),
        )
    });
    ctx.check("inclusions.four_form.su22_annihilates", FF, || {
        (ff.su22_annihilating == ff.su22_total && ff.su22_total == 15, format!("{} of {} generators", ff.su22_annihilating, ff.su22_total))
    });
    ctx.check("inclusions.four_form.u22_kahler_square", FF, || (ff.u22_annihilating_mu2 == 16, format!("{} of 16 generators", ff.u22_annihilating_mu2)));
    let want = ff.stabilizer_dim;
    ctx.value("inclusions.octonion_spin43", FF, octonion_spin_check, |oc| {
        (
            oc.stabilizer_dim == 21 && oc.stabilizer_closed && oc.unit_stabilizer_dim == 14 && oc.stabilizer_dim == want,
            format!(
                "1*∧θ + c [x,y,z] with c = {}; stab dim {} closed {}; unit stabilizer {}",
                oc.scale.as_ref().map(fmt_scalar).unwrap_or("none".into()),
                oc.stabilizer_dim,
                oc.stabilizer_closed,
                oc.unit_stabilizer_dim
            ),
        )
    });
    ctx.value("inclusions.fefferman.cr_dims", FE, cr_fefferman, |cr| {
        let dims = (cr.dim_ghat, cr.dim_phat, cr.dim_g, cr.dim_p, cr.dim_g_cap_phat);
        (dims == (21, 15, 15, 10, 9) && cr.transverse && cr.dimension_identity, format!("{dims:?} transverse {} fiber {}", cr.transverse, cr.fiber_dim))
    });
    for n in p.n.clamp(2, 4) {
        ctx.value(format!("inclusions.fefferman.spinorial_n{n}"), SP, || spinorial_fefferman(n), |t| {
            (
                t.transverse && t.cap_is_p && t.dimension_identity,
                format!("ĝ {} p̂ {} g {} p {} g∩p̂ {}", t.dim_ghat, t.dim_phat, t.dim_g, t.dim_p, t.dim_g_cap_phat),
            )
        });
    }
    ctx.check("inclusions.fefferman.sub_is_ghat", SP, || {
        let so = build_so(3).unwrap();
        let ghat = so.alg.basis().to_vec();
        let phat: Vec<Mat> = so.p_indices().iter().map(|&i| ghat[i].clone()).collect();
        let t = fefferman_transversality(&ghat, &ghat, &phat, &phat);
        (t.transverse && t.dim_g_cap_phat == t.dim_phat && t.dimension_identity, format!("g∩p̂ {} = p̂ {}", t.dim_g_cap_phat, t.dim_phat))
    });
    ctx.mutation("inclusions.mutation.sign_flipped_image", LC, || {
        let mut r = lambda2_rep();
        r.images[0] = r.images[0].scale(&q(-1));
        let b = r.bracket_failures();
        (!b.is_empty(), format!("{} failing pairs, first {:?}", b.len(), b.first()))
    });
    ctx.mutation("inclusions.mutation.unnormalized_four_form", FF, || {
        let d = ff.scan.iter().find(|(c, _)| *c == q(1)).map(|(_, d)| *d).unwrap_or(0);
        (d != 21, format!("stab(Re(v) - μ∧μ) has dim {d}"))
    });
}
