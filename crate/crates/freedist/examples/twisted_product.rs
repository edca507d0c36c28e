//! Twisted product of two rank-2 homogeneous models.

use freedist::models::{standard_model, twisted_product, TwistSigns};
use freedist::scalar::{fmt_scalar, q};

fn main() {
    let m = standard_model(2).unwrap();
    for (name, signs) in [("working", TwistSigns::WORKING), ("literal", TwistSigns::LITERAL)] {
        let p = twisted_product(&m, &m, signs).unwrap();
        let origin = vec![q(0); p.frame.nvars()];
        let point: Vec<_> = (0..p.frame.nvars()).map(|i| q(i as i64 * 3 - 7)).collect();
        println!(
            "{name}: X·x = {}, Y·y = {}, frame size {}, relation failures {:?}, free at origin {}, free at sample {}, curvature mismatches {:?}",
            fmt_scalar(&p.a),
            fmt_scalar(&p.b),
            p.frame.len(),
            p.relation_failures(&m, &m).unwrap(),
            p.frame.is_free_at(&origin),
            p.frame.is_free_at(&point),
            p.direct_sum_failures(&m, &m).map_err(|e| e.to_string()),
        );
    }
}
