//! H₂(p⊥, g) for so(n+1,n), split by homogeneity and block.

use freedist::kostant::{adjoint_scalar, Kostant};
use freedist::lie::build_so;
use freedist::scalar::fmt_scalar;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    for n in 2..=max {
        let g = build_so(n).unwrap();
        let k = Kostant::new(&g);
        for c in 0..2 {
            let s = adjoint_scalar(&k.differential(c), &k.codifferential(c + 1).unwrap());
            println!("n={n} c={c}: ∂* = s·∂ᵗ with s = {}", s.map(|s| fmt_scalar(&s)).unwrap_or("none".into()));
        }
        let h = k.homology();
        println!("n={n}: dim H₂ = {}  by homogeneity {:?}", h.total_dim(), h.dims);
        for b in h.support.iter().filter(|b| b.dim > 0) {
            println!("  {}  homogeneity {}  dim {}", b.name(), b.homogeneity, b.dim);
        }
    }
}
