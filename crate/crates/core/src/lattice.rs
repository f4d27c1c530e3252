//! Symplectic lattices standing in for `H^1(C, Z)` with its principal
//! polarization, and homomorphisms between the associated Jacobians.
//!
//! Basis convention: `a_1..a_g, b_1..b_g` with pairing `E(x, y) = x^T J_g y`,
//! `J_g = [[0, I], [-I, 0]]`, so `E(a_i, b_j) = delta_ij`. A Jacobian is the real
//! torus `H^1(R) / H^1(Z)`; its points are coordinate vectors modulo integers.

use std::ops::Add;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{fract_part, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticLattice {
    genus: usize,
    form: Matrix,
}

/// Entry `(k, l)` of the standard form `J_g`.
pub fn standard_form_entry(genus: usize, k: usize, l: usize) -> i8 {
    if k < genus && l == k + genus {
        1
    } else if k >= genus && l + genus == k {
        -1
    } else {
        0
    }
}

impl SymplecticLattice {
    pub fn standard(genus: usize) -> Self {
        let n = 2 * genus;
        let form = Matrix::from_fn(n, n, |k, l| Rational::from_integer(standard_form_entry(genus, k, l).into()));
        SymplecticLattice { genus, form }
    }

    /// Accepts any integral, skew-symmetric, unimodular form of even size.
    pub fn from_form(form: Matrix) -> Result<Self> {
        if !form.is_square() || !form.rows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "symplectic form must be square of even size, got {}x{}",
                form.rows(),
                form.cols()
            )));
        }
        if !form.is_integral() {
            return Err(Error::Precondition("symplectic form must be integral".into()));
        }
        if form.transpose() != -&form {
            return Err(Error::Precondition("symplectic form must be skew-symmetric".into()));
        }
        if form.determinant()?.abs() != Rational::one() {
            return Err(Error::Precondition("symplectic form must be unimodular".into()));
        }
        Ok(SymplecticLattice {
            genus: form.rows() / 2,
            form,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let sy = self.form.mul_vec(y)?;
        if x.len() != sy.len() {
            return Err(Error::DimensionMismatch("pairing of vectors of different lengths".into()));
        }
        Ok(x.iter().zip(&sy).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }
}

/// A homomorphism of Jacobians, given by its action on `H^1`. Columns are
/// indexed by the source basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JacHom {
    source: SymplecticLattice,
    target: SymplecticLattice,
    matrix: Matrix,
}

impl JacHom {
    pub fn new(source: SymplecticLattice, target: SymplecticLattice, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but lattices need {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        Ok(JacHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(lattice: SymplecticLattice) -> Self {
        let matrix = Matrix::identity(lattice.rank());
        JacHom {
            source: lattice.clone(),
            target: lattice,
            matrix,
        }
    }

    pub fn zero(source: SymplecticLattice, target: SymplecticLattice) -> Self {
        let matrix = Matrix::zeros(target.rank(), source.rank());
        JacHom {
            source,
            target,
            matrix,
        }
    }

    pub fn source(&self) -> &SymplecticLattice {
        &self.source
    }

    pub fn target(&self) -> &SymplecticLattice {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_integral(&self) -> bool {
        self.matrix.is_integral()
    }

    pub fn negate(&self) -> Self {
        JacHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: -&self.matrix,
        }
    }
}

/// `g2 ∘ g1`.
pub fn compose(g2: &JacHom, g1: &JacHom) -> Result<JacHom> {
    if g1.target != g2.source {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose: target of first map has genus {}, source of second has genus {}",
            g1.target.genus, g2.source.genus
        )));
    }
    Ok(JacHom {
        source: g1.source.clone(),
        target: g2.target.clone(),
        matrix: g2.matrix.checked_mul(&g1.matrix)?,
    })
}

/// The dual homomorphism, with both duals identified with their lattices
/// through the polarizations: `S_source^-1 · φ^T · S_target`.
pub fn dual_hom(phi: &JacHom) -> JacHom {
    let s_inv = phi
        .source
        .form
        .inverse()
        .expect("unimodular forms are invertible");
    let matrix = &(&s_inv * &phi.matrix.transpose()) * &phi.target.form;
    JacHom {
        source: phi.target.clone(),
        target: phi.source.clone(),
        matrix,
    }
}

/// `φ^T S_target φ = S_source`. Requires an integral matrix.
pub fn preserves_polarization(phi: &JacHom) -> Result<bool> {
    if !phi.is_integral() {
        return Err(Error::Precondition(
            "polarization check needs an integral homomorphism".into(),
        ));
    }
    let pulled = &(&phi.matrix.transpose() * &phi.target.form) * &phi.matrix;
    Ok(pulled == phi.source.form)
}

/// Square, integral, determinant ±1.
pub fn is_unimodular_iso(phi: &JacHom) -> bool {
    phi.matrix.is_square()
        && phi.is_integral()
        && phi
            .matrix
            .determinant()
            .map(|d| d.abs().is_one())
            .unwrap_or(false)
}

/// A point of the torus `H^1(R) / H^1(Z)`, stored with coordinates in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JacPoint {
    lattice: SymplecticLattice,
    coords: Vec<Rational>,
}

impl JacPoint {
    pub fn new(lattice: SymplecticLattice, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, lattice rank is {}",
                coords.len(),
                lattice.rank()
            )));
        }
        let coords = coords.iter().map(fract_part).collect();
        Ok(JacPoint { lattice, coords })
    }

    pub fn zero(lattice: SymplecticLattice) -> Self {
        let coords = vec![Rational::zero(); lattice.rank()];
        JacPoint { lattice, coords }
    }

    pub fn lattice(&self) -> &SymplecticLattice {
        &self.lattice
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl Add for &JacPoint {
    type Output = JacPoint;

    fn add(self, rhs: &JacPoint) -> JacPoint {
        assert_eq!(self.lattice, rhs.lattice, "points on different Jacobians");
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        JacPoint::new(self.lattice.clone(), coords).expect("same rank")
    }
}

pub fn apply_point(phi: &JacHom, x: &JacPoint) -> Result<JacPoint> {
    if !phi.is_integral() {
        return Err(Error::Precondition(
            "only integral homomorphisms act on the torus".into(),
        ));
    }
    if x.lattice != phi.source {
        return Err(Error::DimensionMismatch("point does not lie on the source Jacobian".into()));
    }
    JacPoint::new(phi.target.clone(), phi.matrix.mul_vec(&x.coords)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn hom(g: usize, rows: &[&[i64]]) -> JacHom {
        let l = SymplecticLattice::standard(g);
        JacHom::new(l.clone(), l, Matrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn standard_form_is_unimodular_and_skew() {
        for g in 0..5 {
            let l = SymplecticLattice::standard(g);
            assert!(SymplecticLattice::from_form(l.form().clone()).is_ok());
            let a1 = (0..2 * g).map(|i| int((i == 0) as i64)).collect::<Vec<_>>();
            let b1 = (0..2 * g).map(|i| int((i == g) as i64)).collect::<Vec<_>>();
            if g > 0 {
                assert_eq!(l.pairing(&a1, &b1).unwrap(), int(1));
            }
        }
        assert!(SymplecticLattice::from_form(Matrix::from_i64(&[&[0, 2], &[-2, 0]])).is_err());
        assert!(SymplecticLattice::from_form(Matrix::from_i64(&[&[1, 1], &[-1, 0]])).is_err());
    }

    #[test]
    fn compose_examples() {
        let rot = hom(1, &[&[0, 1], &[-1, 0]]);
        assert_eq!(compose(&rot, &rot).unwrap(), hom(1, &[&[-1, 0], &[0, -1]]));
        let id = JacHom::identity(SymplecticLattice::standard(2));
        assert_eq!(compose(&id, &id).unwrap(), id);
        let l1 = SymplecticLattice::standard(1);
        let z = JacHom::zero(l1.clone(), l1);
        assert!(compose(&rot, &z).unwrap().matrix().is_zero());
        assert!(compose(&id, &rot).is_err());
    }

    #[test]
    fn dual_hom_examples() {
        let id = JacHom::identity(SymplecticLattice::standard(2));
        assert_eq!(dual_hom(&id), id);
        let shear = hom(1, &[&[1, 1], &[0, 1]]);
        assert_eq!(dual_hom(&shear), hom(1, &[&[1, -1], &[0, 1]]));
    }

    #[test]
    fn polarization_examples() {
        for g in 0..4 {
            assert!(preserves_polarization(&JacHom::identity(SymplecticLattice::standard(g))).unwrap());
        }
        assert!(!preserves_polarization(&hom(1, &[&[2, 0], &[0, 2]])).unwrap());
        assert!(preserves_polarization(&hom(1, &[&[1, 1], &[0, 1]])).unwrap());
        let l = SymplecticLattice::standard(1);
        let half = JacHom::new(l.clone(), l, Matrix::identity(2).scale(&frac(1, 2))).unwrap();
        assert!(matches!(preserves_polarization(&half), Err(Error::Precondition(_))));
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular_iso(&JacHom::identity(SymplecticLattice::standard(3))));
        assert!(is_unimodular_iso(&JacHom::identity(SymplecticLattice::standard(0))));
        let wide = JacHom::zero(SymplecticLattice::standard(2), SymplecticLattice::standard(1));
        assert!(!is_unimodular_iso(&wide));
        assert!(!is_unimodular_iso(&hom(1, &[&[2, 0], &[0, 1]])));
        let empty_to_one = JacHom::zero(SymplecticLattice::standard(0), SymplecticLattice::standard(1));
        assert!(!is_unimodular_iso(&empty_to_one));
    }

    #[test]
    fn apply_point_examples() {
        let l = SymplecticLattice::standard(1);
        let x = JacPoint::new(l.clone(), vec![frac(1, 2), int(0)]).unwrap();
        let id = JacHom::identity(l.clone());
        assert_eq!(apply_point(&id, &x).unwrap(), x);
        let rot = hom(1, &[&[0, 1], &[-1, 0]]);
        let y = apply_point(&rot, &x).unwrap();
        assert_eq!(y.coords(), &[int(0), frac(1, 2)]);
        assert!(apply_point(&rot, &JacPoint::zero(l.clone())).unwrap().is_zero());
        let half = JacHom::new(l.clone(), l.clone(), Matrix::identity(2).scale(&frac(1, 2))).unwrap();
        assert!(apply_point(&half, &x).is_err());
        let other = JacPoint::zero(SymplecticLattice::standard(2));
        assert!(apply_point(&rot, &other).is_err());
    }

    #[test]
    fn points_equal_modulo_integers() {
        let l = SymplecticLattice::standard(1);
        let x = JacPoint::new(l.clone(), vec![frac(-1, 3), int(5)]).unwrap();
        let y = JacPoint::new(l, vec![frac(2, 3), int(0)]).unwrap();
        assert_eq!(x, y);
    }

    fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
            Matrix::from_fn(rows, cols, |i, j| int(v[i * cols + j]))
        })
    }

    fn hom_between(g: usize, h: usize) -> impl Strategy<Value = JacHom> {
        int_matrix(2 * h, 2 * g).prop_map(move |m| {
            JacHom::new(SymplecticLattice::standard(g), SymplecticLattice::standard(h), m).unwrap()
        })
    }

    /// Integral symplectic matrices, generated as words in elementary transvections.
    fn symplectic(g: usize) -> impl Strategy<Value = JacHom> {
        prop::collection::vec((0..2 * g.max(1), -2i64..=2), 0..6).prop_map(move |steps| {
            let l = SymplecticLattice::standard(g);
            let mut acc = JacHom::identity(l.clone());
            for (k, c) in steps {
                if g == 0 {
                    break;
                }
                // x ↦ x + c·E(v, x)·v with v a basis vector is a symplectic transvection.
                let v: Vec<Rational> = (0..2 * g).map(|i| int((i == k) as i64)).collect();
                let m = Matrix::from_fn(2 * g, 2 * g, |i, j| {
                    let e_j: Vec<Rational> = (0..2 * g).map(|t| int((t == j) as i64)).collect();
                    let delta = int((i == j) as i64);
                    delta + int(c) * l.pairing(&v, &e_j).unwrap() * &v[i]
                });
                let t = JacHom::new(l.clone(), l.clone(), m).unwrap();
                acc = compose(&t, &acc).unwrap();
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn dual_is_involution(phi in (0usize..4, 0usize..4).prop_flat_map(|(g, h)| hom_between(g, h))) {
            prop_assert_eq!(dual_hom(&dual_hom(&phi)), phi);
        }

        #[test]
        fn dual_reverses_composition(phi in hom_between(2, 1), psi in hom_between(1, 3)) {
            let lhs = dual_hom(&compose(&psi, &phi).unwrap());
            let rhs = compose(&dual_hom(&phi), &dual_hom(&psi)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn transvection_words_preserve_polarization(phi in symplectic(2), psi in symplectic(2)) {
            prop_assert!(preserves_polarization(&phi).unwrap());
            prop_assert!(preserves_polarization(&compose(&psi, &phi).unwrap()).unwrap());
            prop_assert!(is_unimodular_iso(&phi));
        }

        #[test]
        fn polarization_iff_dual_is_left_inverse(phi in hom_between(2, 2)) {
            let id = JacHom::identity(SymplecticLattice::standard(2));
            let via_dual = compose(&dual_hom(&phi), &phi).unwrap() == id;
            prop_assert_eq!(preserves_polarization(&phi).unwrap(), via_dual);
        }

        #[test]
        fn point_action_is_additive(
            phi in hom_between(2, 1),
            xs in prop::collection::vec((-9i64..9, 1i64..6), 4),
            ys in prop::collection::vec((-9i64..9, 1i64..6), 4),
        ) {
            let l = SymplecticLattice::standard(2);
            let x = JacPoint::new(l.clone(), xs.iter().map(|&(n, d)| frac(n, d)).collect()).unwrap();
            let y = JacPoint::new(l, ys.iter().map(|&(n, d)| frac(n, d)).collect()).unwrap();
            let lhs = apply_point(&phi, &(&x + &y)).unwrap();
            let rhs = &apply_point(&phi, &x).unwrap() + &apply_point(&phi, &y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
