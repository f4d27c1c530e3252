//! Benchmark fixtures shared by the criterion targets.

use fmcurves::checks::{random_class, random_kernel, suite_rng};
use fmcurves::{CohClass, KernelClass, ProductSpace};

/// Deterministic pair of random kernels on `C_g x C_g`.
pub fn kernel_pair(g: usize) -> (KernelClass, KernelClass) {
    let mut rng = suite_rng(0, "bench-kernels");
    (random_kernel(&mut rng, g, g), random_kernel(&mut rng, g, g))
}

/// Deterministic pair of random classes on a product of curves of genus `g`.
pub fn class_pair(factors: usize, g: usize) -> (CohClass, CohClass) {
    let space = ProductSpace::from_genera(&vec![g; factors]).expect("1 to 3 factors");
    let mut rng = suite_rng(0, "bench-classes");
    (random_class(&mut rng, &space), random_class(&mut rng, &space))
}
