//! Homogeneous model, non-flat n = 4 example, curvature and normality.

use freedist::models::{flat_curvature, nonflat_example, normality_check, standard_commutator_failures, standard_model};

fn main() {
    for n in 2..=5 {
        let m = standard_model(n).unwrap();
        let bad = standard_commutator_failures(&m).unwrap();
        let k = flat_curvature(&m).unwrap();
        println!("standard({n}): {} fields, commutator failures {}, flat {}", m.len(), bad.len(), k.is_zero());
    }
    let m = nonflat_example(4).unwrap();
    let k = flat_curvature(&m).unwrap();
    for (&(i, j), v) in &k.entries {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(c, p)| format!("({})·{}", p.display(&m.coords), m.labels[c]))
            .collect();
        println!("κ({}, {}) = {}", m.labels[i], m.labels[j], terms.join(" + "));
    }
    let rep = normality_check(&m, &k);
    println!("non-flat example normal: {}", rep.is_normal());
}
