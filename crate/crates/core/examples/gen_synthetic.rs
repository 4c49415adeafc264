//! Regenerates data/synthetic_cisd.csv, the synthetic stand-in for an
//! external CISD series:
//!
//! ```text
//! cargo run -p h2spin --example gen_synthetic > data/synthetic_cisd.csv
//! ```

use h2spin::ci_bridge::synthetic_series;

fn main() {
    println!("# SYNTHETIC data generated from the g = 1 two-qubit closed forms;");
    println!("# not a quantum-chemistry calculation. Regenerate with the");
    println!("# gen_synthetic example.");
    println!("R_angstrom,E_corr,S_vN");
    for row in synthetic_series(60, (0.05, 2.0)).rows() {
        println!("{:.9e},{:.9e},{:.9e}", row.r, row.e_corr, row.entropy);
    }
}
