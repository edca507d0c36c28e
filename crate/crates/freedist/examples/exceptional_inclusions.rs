//! sl(4) ≅ so(3,3) and su(2,2) ≅ so(4,2) through Λ², and the 4-forms whose stabilizers are
//! spin(4,3)-sized.

use freedist::inclusions::{lambda2_rep, octonion_spin_check, su22_four_form_check, su22_rep, RepMap};
use freedist::scalar::fmt_scalar;

fn describe(name: &str, r: &RepMap) {
    println!(
        "{name}: dim {} → gl({}), image rank {}, bracket failures {}, form signature {:?}, onto orthogonal {}",
        r.source.len(),
        r.target_dim(),
        r.image_rank(),
        r.bracket_failures().len(),
        r.form_signature(),
        r.onto_orthogonal()
    );
}

fn main() {
    describe("Λ² sl(4)", &lambda2_rep());
    let s = su22_rep();
    describe("Λ² su(2,2)", &s.rep);
    println!("  real form of Λ²C⁴: dim {}, pairing sign {}", s.real_dim, s.form_sign);
    let f = su22_four_form_check();
    let scan = |v: &[(freedist::scalar::Scalar, usize)]| v.iter().map(|(c, d)| format!("{}:{d}", fmt_scalar(c))).collect::<Vec<_>>().join(" ");
    println!("Re(v) − c·μ∧μ, stabilizer in so(4,4) by c: {}", scan(&f.scan));
    println!(
        "  c = {}: stabilizer {}, su(2,2) annihilates {}/{}, u(2,2) annihilates μ∧μ {}",
        f.scale.as_ref().map(fmt_scalar).unwrap_or("none".into()),
        f.stabilizer_dim,
        f.su22_annihilating,
        f.su22_total,
        f.u22_annihilating_mu2
    );
    let o = octonion_spin_check();
    println!("1*∧θ + c·N([x,y,z],w) by c: {}", scan(&o.scan));
    println!("  stabilizer {}, fixing 1 as well {}", o.stabilizer_dim, o.unit_stabilizer_dim);
}
