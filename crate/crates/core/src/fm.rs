//! Fourier–Mukai calculus on numerical kernel classes: induced maps on
//! K-theory, rational Picard groups and Jacobians, the kernel operations
//! (shift, dual, twist, swap, adjoints, convolution), and the comparison of
//! numerical invertibility with polarization-preserving Jacobian maps.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grr::{self, KClassCurve, KernelClass};
use crate::kunneth::{self, ProductSpace};
use crate::lattice::{self, JacHom, SymplecticLattice};
use crate::rational::{int, Rational};

/// Affine map on rational Picard groups, acting on a line bundle class
/// `(degree m, Jacobian part x)` by `m ↦ slope·m + translation`, `x ↦ jac_linear·x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePicMap {
    pub slope_degree: Rational,
    pub jac_linear: JacHom,
    pub translation_degree: Rational,
}

impl AffinePicMap {
    pub fn apply(&self, degree: &Rational, jac: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
        let d = &self.slope_degree * degree + &self.translation_degree;
        Ok((d, self.jac_linear.matrix().mul_vec(jac)?))
    }

    /// `self ∘ first` as affine maps of `(degree, jac)` pairs.
    pub fn after(&self, first: &AffinePicMap) -> Result<AffinePicMap> {
        Ok(AffinePicMap {
            slope_degree: &self.slope_degree * &first.slope_degree,
            jac_linear: lattice::compose(&self.jac_linear, &first.jac_linear)?,
            translation_degree: &self.slope_degree * &first.translation_degree + &self.translation_degree,
        })
    }
}

/// Coefficients of the induced map on `(rank, degree)`:
/// `rank' = rank_r·r + rank_d·d`, `degree' = degree_r·r + degree_d·d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMapCoefficients {
    pub rank_r: Rational,
    pub rank_d: Rational,
    pub degree_r: Rational,
    pub degree_d: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorelliReport {
    pub numerical_equivalence: bool,
    pub jac_is_isomorphism: bool,
    pub jac_preserves_polarization: bool,
    pub consistent: bool,
}

fn genus_term(g: usize) -> Rational {
    int(g as i64 - 1)
}

pub fn k_map_coefficients(e: &KernelClass) -> KMapCoefficients {
    let t = genus_term(e.genus_source());
    KMapCoefficients {
        rank_r: &e.a - &t * &e.rank,
        rank_d: e.rank.clone(),
        degree_r: &e.ch2 - &t * &e.b,
        degree_d: e.b.clone(),
    }
}

fn check_source(e: &KernelClass, f: &KClassCurve) -> Result<()> {
    if f.genus() != e.genus_source() {
        return Err(Error::GenusMismatch {
            expected: e.genus_source(),
            found: f.genus(),
        });
    }
    Ok(())
}

/// `f ↦ q_!(p^* f ⊗ e)` in closed form:
/// `rank' = a·r_f + r·d_f − (g−1)·r·r_f`, `degree' = s·r_f + b·d_f − (g−1)·b·r_f`,
/// `jac' = jac_map(e)·jac_f`.
pub fn apply_k(e: &KernelClass, f: &KClassCurve) -> Result<KClassCurve> {
    check_source(e, f)?;
    let c = k_map_coefficients(e);
    let rank = &c.rank_r * &f.rank + &c.rank_d * &f.degree;
    let degree = &c.degree_r * &f.rank + &c.degree_d * &f.degree;
    let jac = jac_map(e).matrix().mul_vec(&f.jac)?;
    KClassCurve::new(e.genus_target(), rank, degree, jac)
}

/// [`apply_k`] evaluated through the cohomology engine and GRR for `q`.
pub fn apply_k_engine(e: &KernelClass, f: &KClassCurve) -> Result<KClassCurve> {
    check_source(e, f)?;
    let space = e.space();
    let pulled = kunneth::pullback(&space, &[0], &grr::chern_character_curve(f))?;
    let integrand = kunneth::cup(&pulled, &grr::kernel_to_coh(e))?;
    grr::k_class_from_ch(&grr::grr_push(&integrand, &[1])?)
}

/// The correspondence `ω ↦ q_*(p^*ω ∪ c_1(e))` on `H^1`, as a map of Jacobians.
pub fn jac_map(e: &KernelClass) -> JacHom {
    // Of ch(e) only the H^1 ⊗ H^1 part of c_1 survives q_*(p^*ω ∪ ·); the
    // other components land in multi-degrees (1, *) or exceed degree 2.
    let m = kunneth::correspondence_matrix(&grr::kernel_to_coh(e)).expect("surface class");
    JacHom::new(
        SymplecticLattice::standard(e.genus_source()),
        SymplecticLattice::standard(e.genus_target()),
        m,
    )
    .expect("correspondence matrix is 2g' x 2g")
}

pub fn pic_map(e: &KernelClass) -> AffinePicMap {
    let t = genus_term(e.genus_source());
    AffinePicMap {
        slope_degree: e.b.clone(),
        jac_linear: jac_map(e),
        translation_degree: &e.ch2 - &t * &e.b,
    }
}

/// [`pic_map`] read off from the engine images of the line bundles of degree 0 and 1.
pub fn pic_map_engine(e: &KernelClass) -> Result<AffinePicMap> {
    let g = e.genus_source();
    let d0 = apply_k_engine(e, &KClassCurve::line_bundle(g, int(0)))?.degree;
    let d1 = apply_k_engine(e, &KClassCurve::line_bundle(g, int(1)))?.degree;
    let mut jac = crate::matrix::Matrix::zeros(2 * e.genus_target(), 2 * g);
    for k in 0..2 * g {
        let mut x = vec![Rational::zero(); 2 * g];
        x[k] = Rational::one();
        let image = apply_k_engine(e, &KClassCurve::new(g, int(1), int(0), x)?)?;
        for (i, v) in image.jac.into_iter().enumerate() {
            jac[(i, k)] = v;
        }
    }
    Ok(AffinePicMap {
        slope_degree: &d1 - &d0,
        jac_linear: JacHom::new(
            SymplecticLattice::standard(g),
            SymplecticLattice::standard(e.genus_target()),
            jac,
        )?,
        translation_degree: d0,
    })
}

/// Kernel of the shifted transform: `[E[1]] = -[E]`.
pub fn shift(e: &KernelClass) -> KernelClass {
    e.scale(&-Rational::one())
}

/// Derived dual: odd-degree Chern character components change sign.
pub fn dual(e: &KernelClass) -> KernelClass {
    KernelClass::new(
        e.genus_source(),
        e.genus_target(),
        e.rank.clone(),
        -&e.a,
        -&e.b,
        -e.gamma(),
        e.ch2.clone(),
    )
    .expect("same shape")
}

/// `e ⊗ p^*F ⊗ q^*F'` for line bundles of degrees `df` on `C` and `df_target` on `C'`.
pub fn twist(e: &KernelClass, df: &Rational, df_target: &Rational) -> KernelClass {
    let r = &e.rank;
    KernelClass::new(
        e.genus_source(),
        e.genus_target(),
        r.clone(),
        &e.a + r * df,
        &e.b + r * df_target,
        e.gamma().clone(),
        &e.ch2 + &e.a * df_target + &e.b * df + r * df * df_target,
    )
    .expect("same shape")
}

/// The same class read on `C' × C`; `gamma` picks up the Koszul sign of
/// exchanging two degree-one slots.
pub fn swap_kernel(e: &KernelClass) -> KernelClass {
    KernelClass::new(
        e.genus_target(),
        e.genus_source(),
        e.rank.clone(),
        e.b.clone(),
        e.a.clone(),
        -e.gamma().transpose(),
        e.ch2.clone(),
    )
    .expect("transposed shape")
}

/// Kernel of the left adjoint, `E^∨ ⊗ q^*K_{C'} [1]`, viewed on `C' × C`.
pub fn left_adjoint(e: &KernelClass) -> KernelClass {
    let k_target = int(2 * e.genus_target() as i64 - 2);
    swap_kernel(&shift(&twist(&dual(e), &int(0), &k_target)))
}

/// Kernel of the right adjoint, `E^∨ ⊗ p^*K_C [1]`, viewed on `C' × C`.
pub fn right_adjoint(e: &KernelClass) -> KernelClass {
    let k_source = int(2 * e.genus_source() as i64 - 2);
    swap_kernel(&shift(&twist(&dual(e), &k_source, &int(0))))
}

/// Composition kernel `π_13!(π_12^* e1 ⊗ π_23^* e2)`: the transform of `e1`
/// followed by that of `e2`.
pub fn convolve(e1: &KernelClass, e2: &KernelClass) -> Result<KernelClass> {
    if e1.genus_target() != e2.genus_source() {
        return Err(Error::GenusMismatch {
            expected: e1.genus_target(),
            found: e2.genus_source(),
        });
    }
    let space = ProductSpace::threefold(e1.genus_source(), e1.genus_target(), e2.genus_target());
    let first = kunneth::pullback(&space, &[0, 1], &grr::kernel_to_coh(e1))?;
    let second = kunneth::pullback(&space, &[1, 2], &grr::kernel_to_coh(e2))?;
    let pushed = grr::grr_push(&kunneth::cup(&first, &second)?, &[0, 2])?;
    grr::coh_to_kernel(&pushed)
}

/// Both adjoints are two-sided numerical inverses under convolution.
pub fn is_numerical_equivalence(e: &KernelClass) -> bool {
    let (g, g2) = (e.genus_source(), e.genus_target());
    let id_source = grr::diagonal_kernel(g);
    let id_target = grr::diagonal_kernel(g2);
    [left_adjoint(e), right_adjoint(e)].iter().all(|adj| {
        convolve(e, adj).ok().as_ref() == Some(&id_source) && convolve(adj, e).ok().as_ref() == Some(&id_target)
    })
}

pub fn torelli_report(e: &KernelClass) -> TorelliReport {
    let phi = jac_map(e);
    let numerical_equivalence = is_numerical_equivalence(e);
    let jac_is_isomorphism = lattice::is_unimodular_iso(&phi);
    let jac_preserves_polarization = phi.matrix().is_square()
        && phi.is_integral()
        && lattice::preserves_polarization(&phi).unwrap_or(false);
    TorelliReport {
        numerical_equivalence,
        jac_is_isomorphism,
        jac_preserves_polarization,
        consistent: numerical_equivalence == (jac_is_isomorphism && jac_preserves_polarization),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grr::diagonal_kernel;
    use crate::kunneth::CohClass;
    use crate::matrix::Matrix;

    fn kernel(g: usize, g2: usize, r: i64, a: i64, b: i64, gamma: Matrix, s: i64) -> KernelClass {
        KernelClass::new(g, g2, int(r), int(a), int(b), gamma, int(s)).unwrap()
    }

    fn poincare() -> KernelClass {
        kernel(1, 1, 1, 0, 0, diagonal_kernel(1).gamma().clone(), -1)
    }

    fn rd(g: usize, r: i64, d: i64) -> KClassCurve {
        KClassCurve::new(g, int(r), int(d), vec![int(0); 2 * g]).unwrap()
    }

    #[test]
    fn apply_k_examples() {
        let f = KClassCurve::new(2, int(3), int(-2), vec![int(1), int(0), int(5), int(-1)]).unwrap();
        assert_eq!(apply_k(&diagonal_kernel(2), &f).unwrap(), f);
        assert_eq!(apply_k(&poincare(), &rd(1, 1, 0)).unwrap(), rd(1, 0, -1));
        assert_eq!(apply_k_engine(&poincare(), &rd(1, 1, 0)).unwrap(), rd(1, 0, -1));
        for (r, d) in [(2, 5), (-1, 3), (0, 1)] {
            assert_eq!(apply_k(&poincare(), &rd(1, r, d)).unwrap(), rd(1, d, -r));
        }
        assert_eq!(apply_k(&KernelClass::zero(2, 3), &f).unwrap(), KClassCurve::zero(3));
        assert!(apply_k(&KernelClass::zero(1, 3), &f).is_err());
    }

    #[test]
    fn pic_map_examples() {
        for g in 0..4 {
            let p = pic_map(&diagonal_kernel(g));
            assert_eq!(p.slope_degree, int(1));
            assert_eq!(p.translation_degree, int(0));
            assert_eq!(p.jac_linear, JacHom::identity(SymplecticLattice::standard(g)));
        }
        let e = kernel(2, 2, 1, 0, 1, Matrix::zeros(4, 4), 0);
        let p = pic_map(&e);
        assert_eq!(p.apply(&int(7), &vec![int(0); 4]).unwrap().0, int(6));
        assert_eq!(pic_map_engine(&e).unwrap(), p);
        let sh = pic_map(&shift(&e));
        assert_eq!(sh.slope_degree, -&p.slope_degree);
        assert_eq!(sh.translation_degree, -&p.translation_degree);
        assert_eq!(sh.jac_linear, p.jac_linear.negate());
    }

    #[test]
    fn jac_map_examples() {
        assert!(jac_map(&kernel(1, 2, 3, 1, -2, Matrix::zeros(2, 4), 5)).matrix().is_zero());
        let e = kernel(1, 1, 2, 1, 1, Matrix::from_i64(&[&[1, 2], &[0, -1]]), 0);
        assert_eq!(jac_map(&twist(&e, &int(2), &int(-1))), jac_map(&e));
        // closed form (J M)^T
        let j = SymplecticLattice::standard(1).form().clone();
        assert_eq!(jac_map(&e).matrix(), &(&j * e.gamma()).transpose());
    }

    #[test]
    fn kernel_operation_examples() {
        let e = kernel(1, 2, 1, -2, 3, Matrix::from_fn(2, 4, |i, k| int((i * 4 + k) as i64)), 4);
        assert_eq!(shift(&shift(&e)), e);
        assert_eq!(dual(&poincare()), kernel(1, 1, 1, 0, 0, -poincare().gamma(), -1));
        let trivial = kernel(2, 2, 1, 0, 0, Matrix::zeros(4, 4), 0);
        assert_eq!(twist(&trivial, &int(2), &int(3)), kernel(2, 2, 1, 2, 3, Matrix::zeros(4, 4), 6));
        for g in 0..4 {
            assert_eq!(swap_kernel(&diagonal_kernel(g)), diagonal_kernel(g));
        }
        let s = kernel(2, 1, 0, 2, 5, Matrix::zeros(4, 2), 1);
        assert_eq!(swap_kernel(&s), kernel(1, 2, 0, 5, 2, Matrix::zeros(2, 4), 1));
        assert_eq!(swap_kernel(&swap_kernel(&e)), e);
    }

    #[test]
    fn twist_matches_engine_multiplication() {
        let e = kernel(1, 2, 2, -1, 3, Matrix::from_fn(2, 4, |i, k| int(i as i64 - k as i64)), 5);
        let (df, df2) = (int(2), int(-3));
        let space = e.space();
        let line = |slot: usize, d: &Rational| {
            &CohClass::unit(space.clone()) + &CohClass::point(space.clone(), slot).scale(d)
        };
        let ch = kunneth::cup(&kunneth::cup(&grr::kernel_to_coh(&e), &line(0, &df)).unwrap(), &line(1, &df2)).unwrap();
        assert_eq!(grr::coh_to_kernel(&ch).unwrap(), twist(&e, &df, &df2));
    }

    #[test]
    fn swap_kernel_matches_engine_swap() {
        let e = kernel(1, 2, 2, -1, 3, Matrix::from_fn(2, 4, |i, k| int(3 * i as i64 - k as i64)), 5);
        let swapped = kunneth::swap(&grr::kernel_to_coh(&e)).unwrap();
        assert_eq!(grr::coh_to_kernel(&swapped).unwrap(), swap_kernel(&e));
        assert_eq!(jac_map(&swap_kernel(&e)), lattice::dual_hom(&jac_map(&e)));
    }

    #[test]
    fn adjoint_examples() {
        let l = left_adjoint(&poincare());
        assert_eq!(l, kernel(1, 1, -1, 0, 0, diagonal_kernel(1).gamma().clone(), 1));
        assert_eq!(convolve(&poincare(), &l).unwrap(), diagonal_kernel(1));
        assert_eq!(jac_map(&l), lattice::dual_hom(&jac_map(&poincare())));
        for g in 0..4 {
            let d = diagonal_kernel(g);
            assert_eq!(convolve(&left_adjoint(&d), &d).unwrap(), d);
            assert_eq!(right_adjoint(&d), d);
        }
    }

    #[test]
    fn convolution_examples() {
        let e = kernel(1, 2, 2, -1, 3, Matrix::from_fn(2, 4, |i, k| int(i as i64 + k as i64 - 2)), 5);
        assert_eq!(convolve(&diagonal_kernel(1), &e).unwrap(), e);
        assert_eq!(convolve(&e, &diagonal_kernel(2)).unwrap(), e);
        assert_eq!(convolve(&KernelClass::zero(3, 1), &e).unwrap(), KernelClass::zero(3, 2));
        assert!(convolve(&e, &e).is_err());
        let sq = convolve(&poincare(), &poincare()).unwrap();
        for (r, d) in [(1, 0), (0, 1), (3, -2)] {
            assert_eq!(apply_k(&sq, &rd(1, r, d)).unwrap(), rd(1, -r, -d));
        }
    }

    #[test]
    fn numerical_equivalence_examples() {
        for g in 0..=5 {
            assert!(is_numerical_equivalence(&diagonal_kernel(g)), "genus {g}");
        }
        assert!(is_numerical_equivalence(&poincare()));
        for (g, g2) in [(1, 1), (2, 2), (2, 1)] {
            assert!(!is_numerical_equivalence(&kernel(g, g2, 0, 0, 1, Matrix::zeros(2 * g, 2 * g2), 0)));
        }
    }

    #[test]
    fn torelli_report_examples() {
        let all = TorelliReport {
            numerical_equivalence: true,
            jac_is_isomorphism: true,
            jac_preserves_polarization: true,
            consistent: true,
        };
        let none = TorelliReport {
            numerical_equivalence: false,
            jac_is_isomorphism: false,
            jac_preserves_polarization: false,
            consistent: true,
        };
        assert_eq!(torelli_report(&diagonal_kernel(2)), all);
        assert_eq!(torelli_report(&diagonal_kernel(2).scale(&int(2))), none);
        assert_eq!(torelli_report(&kernel(2, 2, 0, 0, 1, Matrix::zeros(4, 4), 0)), none);
        // Non-square and non-integral Jacobian maps report false rather than failing.
        assert_eq!(torelli_report(&kernel(1, 2, 0, 0, 1, Matrix::zeros(2, 4), 0)), none);
        let half = diagonal_kernel(1).scale(&crate::rational::frac(1, 2));
        assert!(!torelli_report(&half).jac_preserves_polarization);
    }

    #[test]
    fn genus_zero_jacobians_are_trivially_isomorphic() {
        let r = torelli_report(&KernelClass::zero(0, 0));
        assert!(r.jac_is_isomorphism && r.jac_preserves_polarization);
        assert!(!r.numerical_equivalence);
        assert!(!r.consistent);
        assert!(!torelli_report(&KernelClass::zero(0, 1)).jac_is_isomorphism);
    }
}
