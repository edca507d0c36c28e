//! Preferred splittings: normalizing for a random V, then the maximal-rank case on the flat model.

use freedist::models::standard_model;
use freedist::scalar::{fmt_scalar, q};
use freedist::tractor::{is_parallel, mu_extraction, normalize_splitting_for_v, parallel_section, verify_maxpref_properties, SplittingData, TractorSection};

fn section(n: usize, seed: i64) -> TractorSection {
    let v: Vec<_> = (0..2 * n + 1).map(|i| q((seed * 7 + i as i64 * 5) % 11 - 5)).collect();
    TractorSection::from_scalars(&v[..n], v[n].clone(), &v[n + 1..])
}

fn main() {
    let n = 3;
    for strong in [false, true] {
        let v: Vec<TractorSection> = (1..=2).map(|s| section(n, s)).collect();
        match normalize_splitting_for_v(&v, strong) {
            Ok(out) => {
                let mu = mu_extraction(&out.sections).unwrap();
                let vals: Vec<String> = out.total.ups1.iter().map(|j| fmt_scalar(&j.value())).collect();
                println!(
                    "{}: {} shifts, Υ₁ = ({}), μ symmetric {}, μ kills isotropic {}",
                    if strong { "strong" } else { "weak" },
                    out.shifts.len(),
                    vals.join(", "),
                    mu.is_symmetric(),
                    mu.kills_isotropic()
                );
            }
            Err(e) => println!("{}: {e}", if strong { "strong" } else { "weak" }),
        }
    }
    let (n, order) = (2, 3);
    let m = standard_model(n).unwrap();
    let d = SplittingData::flat(&m, order);
    let v: Vec<TractorSection> = (0..n)
        .map(|i| {
            let mut s0 = vec![q(0); 2 * n + 1];
            s0[i] = q(1);
            s0[n + 1 + i] = q(1);
            parallel_section(&d, &s0)
        })
        .collect();
    println!("parallel V: {}", v.iter().all(|s| is_parallel(&d, s)));
    let r = verify_maxpref_properties(&d, &v).unwrap();
    for b in &r.bullets {
        println!("  {}: {} to order {}", b.name, if b.pass { "holds" } else { "fails" }, b.order);
    }
}
