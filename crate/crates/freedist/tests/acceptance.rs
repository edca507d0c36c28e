//! One PASS/FAIL line per acceptance criterion.

use freedist::inclusions::{cr_fefferman, su22_four_form_check};
use freedist::models::{standard_model, twisted_product, TwistSigns};
use freedist::octonion::{g2_graded_decomposition, g2_in_im, find_triple};
use freedist::report::{render, run_suite, CheckResult, Format, NRange, Params, Report, Status, SUITES};
use freedist::scalar::q;
use std::process::ExitCode;
use std::time::{Duration, Instant};

fn params(min: usize, max: usize) -> Params {
    Params { n: NRange { min, max }, timing: false, ..Params::default() }
}

fn status(checks: &[CheckResult], id: &str) -> Option<Status> {
    checks.iter().find(|c| c.id == id).map(|c| c.status)
}

/// Every listed id is present and passes; returns the first offender.
fn require(checks: &[CheckResult], ids: &[String]) -> Result<(), String> {
    for id in ids {
        match status(checks, id) {
            Some(Status::Pass) => {}
            Some(s) => return Err(format!("{id}: {s:?}")),
            None => return Err(format!("{id}: missing")),
        }
    }
    Ok(())
}

fn all_pass(checks: &[CheckResult]) -> Result<(), String> {
    match checks.iter().find(|c| c.status == Status::Fail) {
        Some(c) => Err(format!("{} failed: {}", c.id, c.witness.clone().unwrap_or_default())),
        None => Ok(()),
    }
}

fn per_n(ns: impl Iterator<Item = usize>, suite: &str, names: &[&str]) -> Vec<String> {
    ns.flat_map(|n| names.iter().map(move |t| format!("{suite}.n{n}.{t}"))).collect()
}

fn criterion_1() -> Result<String, String> {
    let c = run_suite("algebra", &params(2, 5)).map_err(|e| e.to_string())?;
    all_pass(&c)?;
    require(&c, &per_n(2..=5, "algebra", &["jacobi", "grade_additivity", "nilradical_free", "dim_g_minus_p"]))?;
    Ok(format!("{} checks", c.len()))
}

fn criterion_2() -> Result<String, String> {
    let c = run_suite("kostant", &params(2, 5)).map_err(|e| e.to_string())?;
    all_pass(&c)?;
    require(&c, &per_n(2..=4, "kostant", &["d_squared", "dstar_squared", "block_support"]))?;
    if status(&c, "kostant.n5.homology") != Some(Status::Skipped) {
        return Err("n = 5 ran without --deep".into());
    }
    let w = c.iter().find(|x| x.id == "kostant.n4.block_support").and_then(|x| x.witness.clone()).unwrap_or_default();
    if !w.contains("(g₁∧g₂)⊗g₋₂: present") {
        return Err(format!("n = 4 support {w}"));
    }
    Ok("n = 2..4 exact, n = 5 deferred to --deep".into())
}

fn criterion_3() -> Result<String, String> {
    let c = run_suite("models", &params(2, 5)).map_err(|e| e.to_string())?;
    all_pass(&c)?;
    let mut ids = per_n(2..=5, "models", &["commutator_table", "flat_curvature", "flat_normal", "free"]);
    ids.push("models.nonflat.κ(U₁₂,X₁′)=U₃₄".into());
    ids.push("models.nonflat.normal".into());
    require(&c, &ids)?;
    Ok(format!("{} checks", c.len()))
}

fn criterion_4() -> Result<String, String> {
    let m = standard_model(2).map_err(|e| e.to_string())?;
    let tp = twisted_product(&m, &m, TwistSigns::WORKING).map_err(|e| e.to_string())?;
    let rel = tp.relation_failures(&m, &m).map_err(|e| e.to_string())?;
    let sum = tp.direct_sum_failures(&m, &m).map_err(|e| e.to_string())?;
    let origin = vec![q(0); tp.frame.nvars()];
    let free = tp.frame.is_free_at(&origin) && tp.frame.h_part.len() == 4;
    if !rel.is_empty() || !sum.is_empty() || !free {
        return Err(format!("relations {rel:?} curvature {sum:?} free {free}"));
    }
    Ok("relations exact, free of rank 4, curvature zero".into())
}

fn criterion_5() -> Result<String, String> {
    let c = run_suite("tractor", &params(2, 4)).map_err(|e| e.to_string())?;
    all_pass(&c)?;
    let mut ids = vec!["tractor.n2.h_invariance_symbolic".to_string(), "tractor.n2.maxpref".into(), "tractor.n3.maxpref".into()];
    ids.push("tractor.mutation.non_parallel_v".into());
    for n in 2..=4 {
        ids.push(format!("tractor.n{n}.h_invariance_random"));
        for r in 1..=n {
            ids.push(format!("tractor.n{n}.normalize_weak_rank{r}"));
            ids.push(format!("tractor.n{n}.normalize_strong_rank{r}"));
        }
    }
    require(&c, &ids)?;
    Ok(format!("{} checks", c.len()))
}

fn criterion_6() -> Result<String, String> {
    let c = run_suite("octonion", &params(2, 4)).map_err(|e| e.to_string())?;
    all_pass(&c)?;
    let ids: Vec<String> = [
        "octonion.identity.[x, x, y] = 0",
        "octonion.identity.[x, y, y] = 0",
        "octonion.identity.N(xy) = N(x) N(y)",
        "octonion.identity.theta(x, y, x) = 0",
        "octonion.identity.N([x, y, z], x) = 0",
        "octonion.identity.N([x, y, z], w) alternating",
        "octonion.identity.theta alternating",
        "octonion.triple.a a = 1",
        "octonion.triple.lambda(yz, zx, xy) = -1",
        "octonion.orbit.canonical_closed",
        "octonion.orbit.triple_open",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    require(&c, &ids)?;
    Ok(format!("{} checks", c.len()))
}

fn criterion_7() -> Result<String, String> {
    let g2 = g2_in_im();
    let [x, y, z] = find_triple();
    let d = g2_graded_decomposition(&x, &y, &z).map_err(|e| e.to_string())?;
    let ff = su22_four_form_check();
    let ok = g2.dim() == 14 && d.dim == 14 && d.g0_dim == 8 && d.diag_scalars.is_some() && d.failures.is_empty() && ff.stabilizer_dim == 21;
    let w = format!("stab θ {} / {} in so(4,3), g₀ part {}, stab(Re(v) − ½μ∧μ) {}", g2.dim(), d.dim, d.g0_dim, ff.stabilizer_dim);
    if ok {
        Ok(w)
    } else {
        Err(w)
    }
}

fn criterion_8() -> Result<String, String> {
    let c = run_suite("inclusions", &params(2, 4)).map_err(|e| e.to_string())?;
    all_pass(&c)?;
    let ids: Vec<String> = [
        "inclusions.lambda2.injective",
        "inclusions.lambda2.brackets",
        "inclusions.lambda2.signature",
        "inclusions.lambda2.onto_so33",
        "inclusions.su22.injective",
        "inclusions.su22.brackets",
        "inclusions.su22.signature",
        "inclusions.su22.onto_so42",
        "inclusions.fefferman.cr_dims",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    require(&c, &ids)?;
    let cr = cr_fefferman();
    let dims = (cr.dim_ghat, cr.dim_phat, cr.dim_g, cr.dim_p, cr.dim_g_cap_phat);
    if dims != (21, 15, 15, 10, 9) || !cr.transverse {
        return Err(format!("{dims:?}"));
    }
    Ok(format!("{dims:?} transverse"))
}

fn criterion_9() -> Result<String, String> {
    let c = run_suite("all", &params(2, 4)).map_err(|e| e.to_string())?;
    for s in SUITES {
        let muts: Vec<&CheckResult> = c.iter().filter(|x| x.id.starts_with(&format!("{s}.mutation."))).collect();
        if muts.is_empty() {
            return Err(format!("{s}: no mutation check"));
        }
        for m in muts {
            let w = m.witness.as_deref().unwrap_or("");
            if m.status != Status::Pass || !w.starts_with("detected") {
                return Err(format!("{}: {w}", m.id));
            }
        }
    }
    Ok("every suite detects its perturbed input".into())
}

fn criterion_10() -> Result<String, String> {
    let p = Params { timing: false, ..Params::default() };
    let emit = || -> Result<String, String> {
        let c = run_suite("all", &p).map_err(|e| e.to_string())?;
        render(&Report::new("all", &p, c), Format::Json).map_err(|e| e.to_string())
    };
    let (a, b) = (emit()?, emit()?);
    if a == b {
        Ok(format!("{} bytes identical", a.len()))
    } else {
        Err("reports differ".into())
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Result<String, String>); 10] = [
        (1, "algebra suite", Duration::from_secs(10), criterion_1),
        (2, "kostant suite", Duration::from_secs(300), criterion_2),
        (3, "model suite", Duration::from_secs(30), criterion_3),
        (4, "twisted product", Duration::from_secs(30), criterion_4),
        (5, "tractor suite", Duration::from_secs(60), criterion_5),
        (6, "octonion suite", Duration::from_secs(60), criterion_6),
        (7, "stabilizer dimensions", Duration::from_secs(120), criterion_7),
        (8, "isomorphisms and transversality", Duration::from_secs(60), criterion_8),
        (9, "mutation detection", Duration::MAX, criterion_9),
        (10, "determinism", Duration::MAX, criterion_10),
    ];
    let mut failed = 0;
    for (k, name, limit, f) in criteria {
        let t = Instant::now();
        let r = f();
        let el = t.elapsed();
        let (ok, msg) = match r {
            Ok(m) if el <= limit => (true, m),
            Ok(m) => (false, format!("{m}; over the {}s limit", limit.as_secs())),
            Err(m) => (false, m),
        };
        if !ok {
            failed += 1;
        }
        println!("{} criterion {k:>2} ({name}) {:.2}s: {msg}", if ok { "PASS" } else { "FAIL" }, el.as_secs_f64());
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
