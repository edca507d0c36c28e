//! Split octonions: an octonionic triple, its multiplication table, the two orbits of
//! isotropic 3-planes and the graded pieces of g₂'.

use freedist::octonion::{
    canonical_closed_plane, classify_isotropic_plane, closed_plane_report, find_triple, g2_graded_decomposition, g2_in_im, symbolic_identities,
    triple_table_check, IsotropicPlane, Orbit, ZornRule,
};
use freedist::scalar::fmt_scalar;

fn main() {
    for rule in [ZornRule::Corrected, ZornRule::Displayed] {
        let bad: Vec<String> = symbolic_identities(rule).into_iter().filter(|r| !r.pass).map(|r| r.name).collect();
        println!("{rule:?} product: failing identities {bad:?}");
    }
    let [x, y, z] = find_triple();
    println!("triple x = {:?}\n       y = {:?}\n       z = {:?}", x.coords().iter().map(fmt_scalar).collect::<Vec<_>>(), y.coords().iter().map(fmt_scalar).collect::<Vec<_>>(), z.coords().iter().map(fmt_scalar).collect::<Vec<_>>());
    for r in triple_table_check(&x, &y, &z).unwrap() {
        println!("  {:<45} {}", r.name, if r.pass { "ok" } else { "FAILS" });
    }
    for (name, p) in [("canonical", canonical_closed_plane()), ("triple", IsotropicPlane::new(x.clone(), y.clone(), z.clone()).unwrap())] {
        match classify_isotropic_plane(&p) {
            Orbit::Closed { .. } => {
                let rep: Vec<String> = closed_plane_report(&p).iter().map(|r| format!("{}: {}", r.name, r.pass)).collect();
                println!("{name} plane: closed orbit; {}", rep.join(", "));
            }
            Orbit::Open { theta } => println!("{name} plane: open orbit, θ = {}", fmt_scalar(&theta)),
        }
    }
    let g2 = g2_in_im();
    let d = g2_graded_decomposition(&x, &y, &z).unwrap();
    println!("stab θ: dim {}, closed {}", g2.dim(), g2.is_closed());
    println!(
        "in so(4,3): g₀ part {}, projection to g₋ rank {}, (grade 1, grade 2) = {:?} · ⋆(grade −2, grade −1)",
        d.g0_dim,
        d.projection_rank,
        d.diag_scalars.map(|(c, e)| (fmt_scalar(&c), fmt_scalar(&e)))
    );
}
