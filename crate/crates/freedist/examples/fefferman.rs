//! Transversality of g and p̂ in ĝ for the CR and spinorial Fefferman-type constructions.

use freedist::inclusions::{cr_fefferman, spinorial_fefferman, Transversality};

fn show(name: &str, t: &Transversality) {
    println!(
        "{name}: ĝ {} p̂ {} g {} p {} g∩p̂ {} g+p̂ {}; transverse {}, g∩p̂ = p {}, fiber {}",
        t.dim_ghat, t.dim_phat, t.dim_g, t.dim_p, t.dim_g_cap_phat, t.dim_sum, t.transverse, t.cap_is_p, t.fiber_dim
    );
}

fn main() {
    show("so(4,2) ⊂ so(4,3)", &cr_fefferman());
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    for n in 2..=max {
        show(&format!("so({},{n}) ⊂ so({},{})", n + 1, n + 1, n + 1), &spinorial_fefferman(n));
    }
}
