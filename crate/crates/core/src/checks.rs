//! Randomized invariant suites, shared by the `selftest` command and the
//! benchmarks. Every suite draws from its own ChaCha stream derived from the
//! run seed, so results do not depend on which suites run or in what order.

use ndarray::IxDyn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::standard_catalog;
use crate::fm;
use crate::grr::{self, diagonal_kernel, KClassCurve, KernelClass};
use crate::kunneth::{self, CohClass, ProductSpace, Tensor};
use crate::lattice::{self, JacHom, JacPoint, SymplecticLattice};
use crate::matrix::Matrix;
use crate::rational::{frac, int, Rational};

pub const DEFAULT_SEED: u64 = 1729;

pub const MAX_GENUS: usize = 3;

pub fn suite_rng(seed: u64, suite: &str) -> ChaCha8Rng {
    // FNV-1a over the suite name keeps streams independent and stable.
    let tag = suite
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ tag)
}

fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    int(rng.random_range(-bound..=bound))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small_int(rng, bound))
}

/// Kernel with every entry drawn uniformly from `[-3, 3]`.
pub fn random_kernel<R: Rng>(rng: &mut R, g: usize, g2: usize) -> KernelClass {
    let gamma = random_matrix(rng, 2 * g, 2 * g2, 3);
    KernelClass::new(
        g,
        g2,
        small_int(rng, 3),
        small_int(rng, 3),
        small_int(rng, 3),
        gamma,
        small_int(rng, 3),
    )
    .expect("shape matches genera")
}

pub fn random_k_class<R: Rng>(rng: &mut R, g: usize) -> KClassCurve {
    let jac = (0..2 * g).map(|_| small_int(rng, 5)).collect();
    KClassCurve::new(g, small_int(rng, 5), small_int(rng, 5), jac).expect("length 2g")
}

pub fn random_genus<R: Rng>(rng: &mut R) -> usize {
    rng.random_range(0..=MAX_GENUS)
}

/// Random class with roughly half its coefficients zero.
pub fn random_class<R: Rng>(rng: &mut R, space: &ProductSpace) -> CohClass {
    let n = space.len();
    let mut x = CohClass::zero(space.clone());
    for code in 0..3usize.pow(n as u32) {
        let degree: Vec<u8> = (0..n).map(|i| (code / 3usize.pow(i as u32) % 3) as u8).collect();
        let shape: Vec<usize> = (0..n)
            .filter(|&i| degree[i] == 1)
            .map(|i| 2 * space.genus(i))
            .collect();
        let t = Tensor::from_shape_simple_fn(IxDyn(&shape), || {
            if rng.random_bool(0.5) {
                int(0)
            } else {
                small_int(rng, 3)
            }
        });
        x = &x + &CohClass::from_component(space.clone(), degree, t).expect("shape built from space");
    }
    x
}

pub fn random_space<R: Rng>(rng: &mut R, factors: usize, max_genus: usize) -> ProductSpace {
    let genera: Vec<usize> = (0..factors).map(|_| rng.random_range(0..=max_genus)).collect();
    ProductSpace::from_genera(&genera).expect("1 to 3 factors")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Suite {
    name: &'static str,
    trials: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            trials: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            trials: self.trials,
            failures: self.failures,
        }
    }
}

pub type SuiteFn = fn(usize, u64) -> SuiteOutcome;

pub const SUITES: [(&str, SuiteFn); 8] = [
    ("lattice", lattice_suite),
    ("kunneth", kunneth_suite),
    ("grr", grr_suite),
    ("oracle", oracle_suite),
    ("functoriality", functoriality_suite),
    ("kernel-operations", kernel_operations_suite),
    ("adjoints", adjoint_suite),
    ("torelli", torelli_suite),
];

pub fn run_selftest(trials: usize, seed: u64) -> Vec<SuiteOutcome> {
    SUITES.iter().map(|(_, run)| run(trials, seed)).collect()
}

pub fn lattice_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut s = Suite::new("lattice");
    let mut rng = suite_rng(seed, s.name);
    for _ in 0..trials {
        let (g1, g2, g3) = (random_genus(&mut rng), random_genus(&mut rng), random_genus(&mut rng));
        let l = |g| SymplecticLattice::standard(g);
        let phi = JacHom::new(l(g1), l(g2), random_matrix(&mut rng, 2 * g2, 2 * g1, 3)).unwrap();
        let psi = JacHom::new(l(g2), l(g3), random_matrix(&mut rng, 2 * g3, 2 * g2, 3)).unwrap();
        let dd = lattice::dual_hom(&lattice::dual_hom(&phi));
        s.check(dd == phi, || format!("dual not an involution on {phi:?}"));
        let lhs = lattice::dual_hom(&lattice::compose(&psi, &phi).unwrap());
        let rhs = lattice::compose(&lattice::dual_hom(&phi), &lattice::dual_hom(&psi)).unwrap();
        s.check(lhs == rhs, || format!("dual does not reverse composition for {phi:?}, {psi:?}"));

        let sq = JacHom::new(l(g1), l(g1), random_matrix(&mut rng, 2 * g1, 2 * g1, 1)).unwrap();
        let pol = lattice::preserves_polarization(&sq).unwrap();
        let via_dual = lattice::compose(&lattice::dual_hom(&sq), &sq).unwrap() == JacHom::identity(l(g1));
        s.check(pol == via_dual, || format!("polarization criteria disagree on {sq:?}"));

        let point = |rng: &mut ChaCha8Rng| {
            let coords = (0..2 * g1).map(|_| frac(rng.random_range(-9..=9), rng.random_range(1..=6))).collect();
            JacPoint::new(l(g1), coords).unwrap()
        };
        let (x, y) = (point(&mut rng), point(&mut rng));
        let sum = lattice::apply_point(&phi, &(&x + &y)).unwrap();
        let parts = &lattice::apply_point(&phi, &x).unwrap() + &lattice::apply_point(&phi, &y).unwrap();
        s.check(sum == parts, || format!("point action not additive for {phi:?}"));
    }
    s.finish()
}

pub fn kunneth_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut s = Suite::new("kunneth");
    let mut rng = suite_rng(seed, s.name);
    for t in 0..trials {
        let factors = 2 + t % 2;
        let space = random_space(&mut rng, factors, 2);
        let (x, y, z) = (
            random_class(&mut rng, &space),
            random_class(&mut rng, &space),
            random_class(&mut rng, &space),
        );
        let cup = |a: &CohClass, b: &CohClass| kunneth::cup(a, b).unwrap();
        s.check(cup(&cup(&x, &y), &z) == cup(&x, &cup(&y, &z)), || {
            format!("cup not associative on {space:?}")
        });
        let graded = x.homogeneous_parts().iter().all(|(dx, hx)| {
            y.homogeneous_parts().iter().all(|(dy, hy)| {
                let yx = cup(hy, hx);
                cup(hx, hy) == if dx * dy % 2 == 1 { -&yx } else { yx }
            })
        });
        s.check(graded, || format!("cup not graded-commutative on {space:?}"));

        let keep: Vec<usize> = if factors == 2 { vec![1] } else { vec![0, 2] };
        let image = space.sub_space(&keep).unwrap();
        let w = random_class(&mut rng, &image);
        let up = kunneth::pullback(&space, &keep, &w).unwrap();
        let lhs = kunneth::pushforward(&cup(&up, &x), &keep).unwrap();
        let rhs = kunneth::cup(&w, &kunneth::pushforward(&x, &keep).unwrap()).unwrap();
        s.check(lhs == rhs, || format!("projection formula fails on {space:?} keeping {keep:?}"));
        let w2 = random_class(&mut rng, &image);
        let ring = kunneth::pullback(&space, &keep, &kunneth::cup(&w, &w2).unwrap()).unwrap()
            == cup(&up, &kunneth::pullback(&space, &keep, &w2).unwrap());
        s.check(ring, || format!("pullback not multiplicative on {space:?}"));
        s.check(kunneth::pushforward(&up, &keep).unwrap().is_zero(), || {
            format!("pushforward of a pullback survives on {space:?}")
        });
    }
    for g in 0..=5 {
        let delta = kunneth::diagonal_class(g);
        let top = CohClass::top(ProductSpace::surface(g, g));
        let a = CohClass::point(ProductSpace::surface(g, g), 0);
        s.check(kunneth::cup(&delta, &a).unwrap() == top, || format!("Δ·A ≠ pt for genus {g}"));
        s.check(kunneth::cup(&delta, &delta).unwrap() == top.scale(&int(2 - 2 * g as i64)), || {
            format!("Δ² ≠ 2 − 2g for genus {g}")
        });
    }
    s.finish()
}

pub fn grr_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut s = Suite::new("grr");
    let mut rng = suite_rng(seed, s.name);
    for g in 0..=5 {
        let d = diagonal_kernel(g);
        let expected = KernelClass::new(g, g, int(0), int(1), int(1), d.gamma().clone(), int(g as i64 - 1)).unwrap();
        s.check(d == expected, || format!("diagonal kernel of genus {g} is {d:?}"));
        let action = kunneth::correspondence_matrix(&grr::kernel_to_coh(&d)).unwrap();
        s.check(action == Matrix::identity(2 * g), || format!("Γ_Δ does not act as identity in genus {g}"));
        for _ in 0..trials.div_ceil(6) {
            let f = random_k_class(&mut rng, g);
            s.check(fm::apply_k(&d, &f).unwrap() == f, || format!("diagonal moves {f:?}"));
        }
    }
    for _ in 0..trials {
        let (g, h) = (random_genus(&mut rng), random_genus(&mut rng));
        let e = random_kernel(&mut rng, g, h);
        s.check(grr::coh_to_kernel(&grr::kernel_to_coh(&e)).unwrap() == e, || format!("round trip moves {e:?}"));
        let (f1, f2) = (random_k_class(&mut rng, g), random_k_class(&mut rng, g));
        let sum = grr::chern_character_curve(&f1.checked_add(&f2).unwrap());
        s.check(sum == &grr::chern_character_curve(&f1) + &grr::chern_character_curve(&f2), || {
            format!("ch not additive on {f1:?}, {f2:?}")
        });
    }
    s.finish()
}

pub fn oracle_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut s = Suite::new("oracle");
    let mut rng = suite_rng(seed, s.name);
    for _ in 0..trials {
        let (g, h) = (random_genus(&mut rng), random_genus(&mut rng));
        let e = random_kernel(&mut rng, g, h);
        let f = random_k_class(&mut rng, g);
        let (fast, slow) = (fm::apply_k(&e, &f).unwrap(), fm::apply_k_engine(&e, &f).unwrap());
        s.check(fast == slow, || format!("apply_k paths disagree on {e:?}, {f:?}"));
        s.check(fm::pic_map(&e) == fm::pic_map_engine(&e).unwrap(), || {
            format!("pic_map paths disagree on {e:?}")
        });
    }
    s.finish()
}

pub fn functoriality_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut s = Suite::new("functoriality");
    let mut rng = suite_rng(seed, s.name);
    for _ in 0..trials {
        let g: Vec<usize> = (0..4).map(|_| random_genus(&mut rng)).collect();
        let e1 = random_kernel(&mut rng, g[0], g[1]);
        let e2 = random_kernel(&mut rng, g[1], g[2]);
        let e3 = random_kernel(&mut rng, g[2], g[3]);
        let e12 = fm::convolve(&e1, &e2).unwrap();
        let f = random_k_class(&mut rng, g[0]);
        let composed = fm::apply_k(&e2, &fm::apply_k(&e1, &f).unwrap()).unwrap();
        s.check(fm::apply_k(&e12, &f).unwrap() == composed, || {
            format!("apply_k not functorial for {e1:?}, {e2:?}")
        });
        let jac = lattice::compose(&fm::jac_map(&e2), &fm::jac_map(&e1)).unwrap();
        s.check(fm::jac_map(&e12) == jac, || format!("jac_map not functorial for {e1:?}, {e2:?}"));
        let left = fm::convolve(&e12, &e3).unwrap();
        let right = fm::convolve(&e1, &fm::convolve(&e2, &e3).unwrap()).unwrap();
        s.check(left == right, || format!("convolution not associative for {e1:?}, {e2:?}, {e3:?}"));
        s.check(fm::convolve(&diagonal_kernel(g[0]), &e1).unwrap() == e1, || {
            format!("left identity fails on {e1:?}")
        });
        s.check(fm::convolve(&e1, &diagonal_kernel(g[1])).unwrap() == e1, || {
            format!("right identity fails on {e1:?}")
        });
    }
    s.finish()
}

pub fn kernel_operations_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut s = Suite::new("kernel-operations");
    let mut rng = suite_rng(seed, s.name);
    for _ in 0..trials {
        let (g, h) = (random_genus(&mut rng), random_genus(&mut rng));
        let e = random_kernel(&mut rng, g, h);
        let phi = fm::jac_map(&e);
        s.check(fm::jac_map(&fm::shift(&e)) == phi.negate(), || format!("shift law fails on {e:?}"));
        s.check(fm::jac_map(&fm::dual(&e)) == phi.negate(), || format!("dual law fails on {e:?}"));
        let (df, df2) = (small_int(&mut rng, 4), small_int(&mut rng, 4));
        s.check(fm::jac_map(&fm::twist(&e, &df, &df2)) == phi, || format!("twist law fails on {e:?}"));
        let (p, ps) = (fm::pic_map(&e), fm::pic_map(&fm::shift(&e)));
        let negated = ps.slope_degree == -&p.slope_degree && ps.translation_degree == -&p.translation_degree;
        s.check(negated, || format!("shift does not negate the Picard map of {e:?}"));
        s.check(fm::shift(&fm::shift(&e)) == e, || format!("double shift moves {e:?}"));
        s.check(fm::swap_kernel(&fm::swap_kernel(&e)) == e, || format!("double swap moves {e:?}"));

        // Degree-zero line bundles differ only through the linear part.
        let x: Vec<Rational> = (0..2 * g).map(|_| small_int(&mut rng, 4)).collect();
        let y: Vec<Rational> = (0..2 * g).map(|_| small_int(&mut rng, 4)).collect();
        let (mx, jx) = p.apply(&int(0), &x).unwrap();
        let (my, jy) = p.apply(&int(0), &y).unwrap();
        let diff: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
        let linear = p.jac_linear.matrix().mul_vec(&diff).unwrap();
        let delta: Vec<Rational> = jx.iter().zip(&jy).map(|(a, b)| a - b).collect();
        s.check(mx == my && delta == linear, || format!("linearization law fails on {e:?}"));
    }
    s.finish()
}

pub fn adjoint_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut s = Suite::new("adjoints");
    let mut rng = suite_rng(seed, s.name);
    for _ in 0..trials {
        let (g, h) = (random_genus(&mut rng), random_genus(&mut rng));
        let e = random_kernel(&mut rng, g, h);
        let dual = lattice::dual_hom(&fm::jac_map(&e));
        s.check(fm::jac_map(&fm::left_adjoint(&e)) == dual, || format!("left adjoint law fails on {e:?}"));
        s.check(fm::jac_map(&fm::right_adjoint(&e)) == dual, || format!("right adjoint law fails on {e:?}"));
        s.check(fm::jac_map(&fm::swap_kernel(&e)) == dual, || format!("swap law fails on {e:?}"));
    }
    for entry in standard_catalog().into_iter().filter(|c| c.is_equivalence) {
        let e = &entry.kernel;
        for adj in [fm::left_adjoint(e), fm::right_adjoint(e)] {
            let ok = fm::convolve(e, &adj).unwrap() == diagonal_kernel(e.genus_source())
                && fm::convolve(&adj, e).unwrap() == diagonal_kernel(e.genus_target());
            s.check(ok, || format!("adjoint of {} is not inverse", entry.name));
        }
    }
    s.finish()
}

pub fn torelli_suite(trials: usize, seed: u64) -> SuiteOutcome {
    let mut s = Suite::new("torelli");
    let mut rng = suite_rng(seed, s.name);
    for _ in 0..trials {
        let (g, h) = (random_genus(&mut rng), random_genus(&mut rng));
        let e = random_kernel(&mut rng, g, h);
        let r = fm::torelli_report(&e);
        s.check(!r.numerical_equivalence || (r.jac_is_isomorphism && r.jac_preserves_polarization), || {
            format!("numerical equivalence with a bad Jacobian map: {e:?}")
        });
    }
    let catalog = standard_catalog();
    for entry in &catalog {
        let r = fm::torelli_report(&entry.kernel);
        s.check(r.consistent && r.numerical_equivalence == entry.is_equivalence, || {
            format!("catalog kernel {} reports {r:?}", entry.name)
        });
    }
    let equivalences: Vec<&KernelClass> = catalog.iter().filter(|c| c.is_equivalence).map(|c| &c.kernel).collect();
    for _ in 0..trials.div_ceil(4) {
        let mut e = equivalences[rng.random_range(0..equivalences.len())].clone();
        for _ in 0..rng.random_range(1..=2) {
            let same: Vec<&&KernelClass> = equivalences.iter().filter(|k| k.genus_source() == e.genus_target()).collect();
            e = fm::convolve(&e, same[rng.random_range(0..same.len())]).unwrap();
        }
        let r = fm::torelli_report(&e);
        s.check(r.consistent && r.numerical_equivalence, || format!("composite equivalence {e:?} reports {r:?}"));
    }
    s.finish()
}
