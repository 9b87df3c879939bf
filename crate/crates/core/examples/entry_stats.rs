use ospq_core::bmw::matrix_unit_tables;
use ospq_core::rmatrix::{build_tower, cap_maps};
use ospq_core::scalar::Fq;

fn main() {
    let (m, rc) = build_tower(1, Fq::gen());
    let caps = cap_maps(&m).unwrap();
    let tables = matrix_unit_tables(&m, &rc, &caps, 3).unwrap();
    let t3 = &tables[2];
    for idx in [(0usize, 0usize), (2, 4), (4, 2)] {
        if let Some(u) = t3.unit(idx.0, idx.1) {
            let mut max_bits = 0u64;
            let mut max_terms = 0usize;
            for (_, _, f) in u.raw_op().entries() {
                for poly in [f.numerator(), f.denominator()] {
                    max_terms = max_terms.max(poly.num_terms());
                    for (_, c) in poly.terms() {
                        max_bits = max_bits.max(c.numer().bits().max(c.denom().bits()));
                    }
                }
            }
            println!(
                "unit {:?}: nnz={} max poly terms={} max coeff bits={}",
                idx,
                u.raw_op().nnz(),
                max_terms,
                max_bits
            );
        }
    }
}
