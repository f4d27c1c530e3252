//! Chern characters, relative Todd classes and the Grothendieck–Riemann–Roch
//! pushforward, plus the compact numerical form of kernel classes on `C × C'`.

use ndarray::IxDyn;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kunneth::{self, CohClass, ProductSpace, Tensor};
use crate::matrix::Matrix;
use crate::rational::{int, Rational};

/// Numerical K-theory class on a curve: rank, degree, and the Jacobian
/// component as a vector in `H^1` (length `2g`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KClassCurve {
    genus: usize,
    pub rank: Rational,
    pub degree: Rational,
    pub jac: Vec<Rational>,
}

impl KClassCurve {
    pub fn new(genus: usize, rank: Rational, degree: Rational, jac: Vec<Rational>) -> Result<Self> {
        if jac.len() != 2 * genus {
            return Err(Error::DimensionMismatch(format!(
                "Jacobian component has length {}, genus {genus} needs {}",
                jac.len(),
                2 * genus
            )));
        }
        Ok(KClassCurve {
            genus,
            rank,
            degree,
            jac,
        })
    }

    pub fn zero(genus: usize) -> Self {
        KClassCurve {
            genus,
            rank: Rational::zero(),
            degree: Rational::zero(),
            jac: vec![Rational::zero(); 2 * genus],
        }
    }

    pub fn structure_sheaf(genus: usize) -> Self {
        Self::line_bundle(genus, int(0))
    }

    pub fn line_bundle(genus: usize, degree: Rational) -> Self {
        KClassCurve {
            rank: Rational::one(),
            degree,
            ..Self::zero(genus)
        }
    }

    pub fn skyscraper(genus: usize) -> Self {
        KClassCurve {
            degree: Rational::one(),
            ..Self::zero(genus)
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn checked_add(&self, other: &KClassCurve) -> Result<KClassCurve> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                expected: self.genus,
                found: other.genus,
            });
        }
        Ok(KClassCurve {
            genus: self.genus,
            rank: &self.rank + &other.rank,
            degree: &self.degree + &other.degree,
            jac: self.jac.iter().zip(&other.jac).map(|(x, y)| x + y).collect(),
        })
    }
}

/// Numerical class of a kernel on `C × C'`:
/// `ch(e) = rank + a·A + b·B + Γ + ch2·[pt]`, with `A = p^*[pt]`,
/// `B = q^*[pt']` and `Γ = Σ gamma_ik e_i ⊗ e'_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KernelClass {
    genus_source: usize,
    genus_target: usize,
    pub rank: Rational,
    pub a: Rational,
    pub b: Rational,
    gamma: Matrix,
    pub ch2: Rational,
}

impl KernelClass {
    pub fn new(
        genus_source: usize,
        genus_target: usize,
        rank: Rational,
        a: Rational,
        b: Rational,
        gamma: Matrix,
        ch2: Rational,
    ) -> Result<Self> {
        if gamma.rows() != 2 * genus_source || gamma.cols() != 2 * genus_target {
            return Err(Error::DimensionMismatch(format!(
                "gamma is {}x{}, genera ({genus_source}, {genus_target}) need {}x{}",
                gamma.rows(),
                gamma.cols(),
                2 * genus_source,
                2 * genus_target
            )));
        }
        Ok(KernelClass {
            genus_source,
            genus_target,
            rank,
            a,
            b,
            gamma,
            ch2,
        })
    }

    pub fn zero(genus_source: usize, genus_target: usize) -> Self {
        KernelClass {
            genus_source,
            genus_target,
            rank: Rational::zero(),
            a: Rational::zero(),
            b: Rational::zero(),
            gamma: Matrix::zeros(2 * genus_source, 2 * genus_target),
            ch2: Rational::zero(),
        }
    }

    pub fn genus_source(&self) -> usize {
        self.genus_source
    }

    pub fn genus_target(&self) -> usize {
        self.genus_target
    }

    pub fn gamma(&self) -> &Matrix {
        &self.gamma
    }

    pub fn space(&self) -> ProductSpace {
        ProductSpace::surface(self.genus_source, self.genus_target)
    }

    /// Multiplies every field by `c`.
    pub fn scale(&self, c: &Rational) -> KernelClass {
        KernelClass {
            genus_source: self.genus_source,
            genus_target: self.genus_target,
            rank: &self.rank * c,
            a: &self.a * c,
            b: &self.b * c,
            gamma: self.gamma.scale(c),
            ch2: &self.ch2 * c,
        }
    }

    pub fn checked_add(&self, other: &KernelClass) -> Result<KernelClass> {
        if (self.genus_source, self.genus_target) != (other.genus_source, other.genus_target) {
            return Err(Error::DimensionMismatch("kernels on different products".into()));
        }
        Ok(KernelClass {
            genus_source: self.genus_source,
            genus_target: self.genus_target,
            rank: &self.rank + &other.rank,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            gamma: &self.gamma + &other.gamma,
            ch2: &self.ch2 + &other.ch2,
        })
    }
}

/// `ch(f) = rank + jac + degree·[pt]`, with the Jacobian vector placed in `H^1`.
pub fn chern_character_curve(f: &KClassCurve) -> CohClass {
    let space = ProductSpace::curve(f.genus);
    let mut out = CohClass::scalar(space.clone(), f.rank.clone());
    out = &out + &CohClass::top(space.clone()).scale(&f.degree);
    if f.genus > 0 {
        let t = Tensor::from_shape_vec(IxDyn(&[2 * f.genus]), f.jac.clone()).expect("length 2g");
        out = &out + &CohClass::from_component(space, vec![1], t).expect("shape checked");
    }
    out
}

/// Inverse of [`chern_character_curve`].
pub fn k_class_from_ch(x: &CohClass) -> Result<KClassCurve> {
    if x.space().len() != 1 {
        return Err(Error::Shape("K-classes live on a single curve".into()));
    }
    let g = x.space().genus(0);
    let jac = match x.component(&[1]) {
        Some(t) => t.iter().cloned().collect(),
        None => vec![Rational::zero(); 2 * g],
    };
    KClassCurve::new(g, x.scalar_part(&[0]), x.scalar_part(&[2]), jac)
}

pub fn kernel_to_coh(e: &KernelClass) -> CohClass {
    let space = e.space();
    let mut out = CohClass::scalar(space.clone(), e.rank.clone());
    out = &out + &CohClass::point(space.clone(), 0).scale(&e.a);
    out = &out + &CohClass::point(space.clone(), 1).scale(&e.b);
    out = &out + &CohClass::top(space.clone()).scale(&e.ch2);
    let (n, m) = (e.gamma.rows(), e.gamma.cols());
    let t = Tensor::from_shape_fn(IxDyn(&[n, m]), |ix| e.gamma[(ix[0], ix[1])].clone());
    &out + &CohClass::from_component(space, vec![1, 1], t).expect("gamma shape is 2g x 2g'")
}

const KERNEL_DEGREES: [[u8; 2]; 5] = [[0, 0], [2, 0], [0, 2], [1, 1], [2, 2]];

pub fn coh_to_kernel(x: &CohClass) -> Result<KernelClass> {
    let space = x.space();
    if space.len() != 2 {
        return Err(Error::Shape("kernels live on products of two curves".into()));
    }
    if let Some((deg, _)) = x.components().find(|(d, _)| !KERNEL_DEGREES.iter().any(|k| k[..] == d[..])) {
        return Err(Error::Shape(format!(
            "class has a component of multi-degree {deg:?}, which no kernel class carries"
        )));
    }
    let (g, g2) = (space.genus(0), space.genus(1));
    let gamma = match x.component(&[1, 1]) {
        Some(t) => Matrix::from_fn(2 * g, 2 * g2, |i, k| t[[i, k]].clone()),
        None => Matrix::zeros(2 * g, 2 * g2),
    };
    KernelClass::new(
        g,
        g2,
        x.scalar_part(&[0, 0]),
        x.scalar_part(&[2, 0]),
        x.scalar_part(&[0, 2]),
        gamma,
        x.scalar_part(&[2, 2]),
    )
}

/// Todd class of the relative tangent bundle of the projection keeping
/// `keep_slots`: `Π_{dropped i} (1 - (g_i - 1) F_i)`. With no kept slots this
/// is the Todd class of the whole product.
pub fn relative_todd(space: &ProductSpace, keep_slots: &[usize]) -> Result<CohClass> {
    if keep_slots.windows(2).any(|w| w[0] >= w[1]) || keep_slots.iter().any(|&s| s >= space.len()) {
        return Err(Error::Shape(format!("invalid kept slots {keep_slots:?}")));
    }
    let mut td = CohClass::unit(space.clone());
    for (slot, curve) in space.factors().iter().enumerate() {
        if keep_slots.contains(&slot) {
            continue;
        }
        // Td(T_C) = 1 + c_1(T_C)/2 = 1 - (g - 1)[pt]
        let half_canonical = int(curve.genus() as i64 - 1);
        let factor = &CohClass::unit(space.clone()) - &CohClass::point(space.clone(), slot).scale(&half_canonical);
        td = kunneth::cup(&td, &factor)?;
    }
    Ok(td)
}

pub fn todd_class(space: &ProductSpace) -> CohClass {
    relative_todd(space, &[]).expect("empty slot list is valid")
}

/// `ch(f_! x) = f_*(ch(x) · Td(f))` for the projection keeping `keep_slots`.
pub fn grr_push(ch: &CohClass, keep_slots: &[usize]) -> Result<CohClass> {
    let td = relative_todd(ch.space(), keep_slots)?;
    kunneth::pushforward(&kunneth::cup(ch, &td)?, keep_slots)
}

/// Numerical class of the structure sheaf of the diagonal, from GRR for the
/// closed immersion `δ: C → C × C`: `ch(δ_* O_C) = δ_*(Td_C) · Td_{C×C}^{-1}`.
pub fn diagonal_kernel(g: usize) -> KernelClass {
    let curve = ProductSpace::curve(g);
    let surface = ProductSpace::surface(g, g);
    let pushed = kunneth::diagonal_pushforward(&todd_class(&curve)).expect("single curve");
    let td_inv = kunneth::invert(&todd_class(&surface)).expect("Todd classes are unipotent");
    let ch = kunneth::cup(&pushed, &td_inv).expect("same surface");
    coh_to_kernel(&ch).expect("diagonal class has kernel shape")
}
