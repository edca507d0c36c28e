//! so(n+1,n) with its |2|-grading: block dimensions, grading element, free nilradical.

use freedist::lie::build_so;
use num_traits::Zero;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for n in 2..=max {
        let g = build_so(n).unwrap();
        let dims: Vec<usize> = (-2..=2).map(|k| g.indices_of_grade(k).len()).collect();
        let e = g.grading_element().unwrap();
        let support: Vec<String> = e.element.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| g.label(i)).collect();
        let nil = g.nilradical_check();
        println!(
            "n={n}: dim {} grades g₋₂..g₂ {:?}, p {}, Jacobi {}, ε₀ on {:?}, Λ²g₋₁ → g₋₂ rank {} of {}",
            g.dim(),
            dims,
            g.p_indices().len(),
            if g.alg.jacobi_violation().is_none() { "ok" } else { "violated" },
            support,
            nil.wedge_rank,
            nil.dim_g2,
        );
    }
}
