//! Inputs shared by the benchmarks.

use mmcurve::couplings::CouplingFrame;
use mmcurve::fat::fat_frame;
use mmcurve::series::rational::rat;
use mmcurve::{PSeries, TruncationPolicy, VarTable};

/// Dense series in `g1, g2, g3` with every monomial up to `degree`.
pub fn dense_series(degree: i32) -> PSeries {
    let table = VarTable::standard(&["g1", "g2", "g3"]).expect("valid names");
    let tr = TruncationPolicy::degree(degree as u32);
    let mut s = PSeries::constant(&table, &tr, rat(1, 1));
    for a in 0..=degree {
        for b in 0..=degree - a {
            for c in 0..=degree - a - b {
                if a + b + c == 0 {
                    continue;
                }
                let coeff = rat((a + 2 * b - c) as i64, (1 + a + b + c) as i64);
                let m = PSeries::monomial(&table, &tr, &[("g1", a), ("g2", b), ("g3", c)], coeff)
                    .expect("variables exist");
                s = &s + &m;
            }
        }
    }
    s
}

/// Symbolic `(g1, g2, g3)` frame, the standard mixed case.
pub fn mixed_frame(degree: u32) -> CouplingFrame {
    fat_frame(&[1, 2, 3], degree).expect("valid frame")
}
