//! Regenerates the worked-example fixture: a (7,4) check matrix already
//! in reliability order (so the identity ranking reproduces it) and an
//! LLR vector whose magnitudes are already ascending, with the single
//! negative sign placed so the syndrome comes out (0,0,1).
//!
//! Run with `cargo run -p grandlab-cli --example gen_example1_fixture`.

use std::path::PathBuf;

use grandlab::codes::{format_matrix, MatrixFormat};
use grandlab::gf2::{BitMatrix, BitVector, OpCounter};

fn main() {
    let h = BitMatrix::from_str_rows(&["1110000", "0111010", "1011101"]).expect("matrix");
    let llrs: [f64; 7] = [0.1, 0.2, 0.3, 0.4, -0.5, 0.6, 0.7];

    // self-check: the hard decision of these LLRs yields syndrome (0,0,1)
    let mut theta = BitVector::zeros(7);
    for (i, &l) in llrs.iter().enumerate() {
        if l < 0.0 {
            theta.set(i);
        }
    }
    let mut counter = OpCounter::new();
    let s = h.mat_vec_mul(&theta, &mut counter).expect("syndrome");
    assert_eq!(s.to_string01(), "001", "fixture self-check");
    for w in llrs.windows(2) {
        assert!(w[0].abs() < w[1].abs(), "ranking must be the identity");
    }

    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    std::fs::create_dir_all(&dir).expect("fixtures dir");
    std::fs::write(
        dir.join("example1_h.txt"),
        format_matrix(&h, MatrixFormat::DenseText),
    )
    .expect("write matrix");
    let llr_text: String = llrs.iter().map(|l| format!("{l}\n")).collect();
    std::fs::write(dir.join("example1.llr"), llr_text).expect("write llrs");
    println!("regenerated fixtures in {}", dir.display());
}
