use std::time::Instant;
use ospq_core::bmw::matrix_unit_tables;
use ospq_core::rmatrix::{build_tower, cap_maps};
use ospq_core::scalar::Fq;

fn main() {
    let t: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let n: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let started = Instant::now();
    let (m, rc) = build_tower(n, Fq::gen());
    let caps = cap_maps(&m).unwrap();
    println!("tower built {:.2?}", started.elapsed());
    for level in 1..=t {
        let s = Instant::now();
        let tables = matrix_unit_tables(&m, &rc, &caps, level).unwrap();
        println!(
            "tables to level {level}: {:.2?} ({} paths at top)",
            s.elapsed(),
            tables[level - 1].paths().len()
        );
    }
}
