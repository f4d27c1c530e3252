//! Graded cohomology of products of one to three curves.
//!
//! A class is stored by Künneth multi-degree `(d_1, .., d_n)`, `d_i ∈ {0, 1, 2}`.
//! Each component is a dense tensor with one axis of length `2 g_i` for every
//! slot of degree one, in slot order; components without a degree-one slot
//! are zero-dimensional tensors. Per slot the basis is `1`, the symplectic
//! basis `a_1..a_g, b_1..b_g` of `H^1`, and the point class `[pt]`.
//!
//! Products follow the Koszul rule
//! `(x_1 ⊗ .. ⊗ x_n)(y_1 ⊗ .. ⊗ y_n) = (-1)^{Σ_{j<i} |x_i||y_j|} (x_1 y_1) ⊗ .. ⊗ (x_n y_n)`
//! and inside a slot two `H^1` classes multiply to `E(α, β) [pt]`.
//!
//! Every stored component is nonzero, so derived equality is exact equality
//! of classes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use ndarray::{ArrayD, Dimension, IxDyn};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{standard_form_entry, SymplecticLattice};
use crate::matrix::Matrix;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveSpec {
    genus: usize,
}

impl CurveSpec {
    pub fn new(genus: usize) -> Self {
        CurveSpec { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn h1_rank(&self) -> usize {
        2 * self.genus
    }

    /// Degree of the canonical bundle, `2g - 2`.
    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus as i64 - 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductSpace {
    factors: Vec<CurveSpec>,
}

impl ProductSpace {
    pub const MAX_FACTORS: usize = 3;

    pub fn new(factors: Vec<CurveSpec>) -> Result<Self> {
        if factors.is_empty() || factors.len() > Self::MAX_FACTORS {
            return Err(Error::Shape(format!(
                "products of 1 to {} curves are supported, got {}",
                Self::MAX_FACTORS,
                factors.len()
            )));
        }
        Ok(ProductSpace { factors })
    }

    pub fn from_genera(genera: &[usize]) -> Result<Self> {
        ProductSpace::new(genera.iter().map(|&g| CurveSpec::new(g)).collect())
    }

    pub fn curve(g: usize) -> Self {
        ProductSpace {
            factors: vec![CurveSpec::new(g)],
        }
    }

    pub fn surface(g: usize, g2: usize) -> Self {
        ProductSpace {
            factors: vec![CurveSpec::new(g), CurveSpec::new(g2)],
        }
    }

    pub fn threefold(g: usize, g2: usize, g3: usize) -> Self {
        ProductSpace {
            factors: vec![CurveSpec::new(g), CurveSpec::new(g2), CurveSpec::new(g3)],
        }
    }

    pub fn factors(&self) -> &[CurveSpec] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn genus(&self, slot: usize) -> usize {
        self.factors[slot].genus
    }

    fn check_slots(&self, keep_slots: &[usize]) -> Result<()> {
        if keep_slots.is_empty() {
            return Err(Error::Shape("projection must keep at least one slot".into()));
        }
        if keep_slots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Shape(format!(
                "kept slots must be strictly increasing, got {keep_slots:?}"
            )));
        }
        if keep_slots.iter().any(|&s| s >= self.len()) {
            return Err(Error::Shape(format!(
                "slot out of range for a product of {} curves: {keep_slots:?}",
                self.len()
            )));
        }
        Ok(())
    }

    /// The factor of the projection keeping `keep_slots`.
    pub fn sub_space(&self, keep_slots: &[usize]) -> Result<ProductSpace> {
        self.check_slots(keep_slots)?;
        ProductSpace::new(keep_slots.iter().map(|&s| self.factors[s]).collect())
    }

    fn shape(&self, degree: &[u8]) -> Vec<usize> {
        degree
            .iter()
            .zip(&self.factors)
            .filter(|(&d, _)| d == 1)
            .map(|(_, c)| c.h1_rank())
            .collect()
    }
}

pub type MultiDegree = Vec<u8>;

pub type Tensor = ArrayD<Rational>;

#[derive(Clone, PartialEq, Eq)]
pub struct CohClass {
    space: ProductSpace,
    components: BTreeMap<MultiDegree, Tensor>,
}

fn scalar_tensor(c: Rational) -> Tensor {
    ArrayD::from_elem(IxDyn(&[]), c)
}

fn nonzero_entries(t: &Tensor) -> Vec<(Vec<usize>, &Rational)> {
    t.indexed_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(ix, v)| (ix.slice().to_vec(), v))
        .collect()
}

impl CohClass {
    pub fn zero(space: ProductSpace) -> Self {
        CohClass {
            space,
            components: BTreeMap::new(),
        }
    }

    pub fn scalar(space: ProductSpace, c: Rational) -> Self {
        let degree = vec![0; space.len()];
        let mut x = CohClass::zero(space);
        x.insert(degree, scalar_tensor(c));
        x
    }

    pub fn unit(space: ProductSpace) -> Self {
        CohClass::scalar(space, Rational::one())
    }

    /// Pullback of the point class of factor `slot`.
    pub fn point(space: ProductSpace, slot: usize) -> Self {
        let mut degree = vec![0; space.len()];
        degree[slot] = 2;
        let mut x = CohClass::zero(space);
        x.insert(degree, scalar_tensor(Rational::one()));
        x
    }

    /// The class of a point of the whole product.
    pub fn top(space: ProductSpace) -> Self {
        let degree = vec![2; space.len()];
        let mut x = CohClass::zero(space);
        x.insert(degree, scalar_tensor(Rational::one()));
        x
    }

    /// Pullback of the `k`-th basis vector of `H^1` of factor `slot`.
    pub fn h1(space: ProductSpace, slot: usize, k: usize) -> Self {
        let mut degree = vec![0; space.len()];
        degree[slot] = 1;
        let n = space.genus(slot) * 2;
        assert!(k < n, "H^1 index {k} out of range for genus {}", space.genus(slot));
        let mut t = Tensor::zeros(IxDyn(&[n]));
        t[[k]] = Rational::one();
        let mut x = CohClass::zero(space);
        x.insert(degree, t);
        x
    }

    pub fn from_component(space: ProductSpace, degree: MultiDegree, tensor: Tensor) -> Result<Self> {
        if degree.len() != space.len() || degree.iter().any(|&d| d > 2) {
            return Err(Error::Shape(format!("invalid multi-degree {degree:?}")));
        }
        let shape = space.shape(&degree);
        if tensor.shape() != shape.as_slice() {
            return Err(Error::Shape(format!(
                "component {degree:?} needs tensor shape {shape:?}, got {:?}",
                tensor.shape()
            )));
        }
        let mut x = CohClass::zero(space);
        x.insert(degree, tensor);
        Ok(x)
    }

    fn insert(&mut self, degree: MultiDegree, tensor: Tensor) {
        if tensor.iter().any(|v| !v.is_zero()) {
            self.components.insert(degree, tensor);
        } else {
            self.components.remove(&degree);
        }
    }

    fn accumulate(&mut self, degree: MultiDegree, tensor: &Tensor) {
        match self.components.get_mut(&degree) {
            Some(t) => {
                *t += tensor;
                if t.iter().all(Zero::is_zero) {
                    self.components.remove(&degree);
                }
            }
            None => self.insert(degree, tensor.clone()),
        }
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, degree: &[u8]) -> Option<&Tensor> {
        self.components.get(degree)
    }

    pub fn components(&self) -> impl Iterator<Item = (&MultiDegree, &Tensor)> {
        self.components.iter()
    }

    /// Coefficient of a scalar-shaped component (no degree-one slots).
    pub fn scalar_part(&self, degree: &[u8]) -> Rational {
        self.component(degree)
            .map(|t| t.first().cloned().unwrap_or_else(Rational::zero))
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree if the class is homogeneous; `None` for zero or mixed classes.
    pub fn total_degree(&self) -> Option<u32> {
        let mut degrees = self
            .components
            .keys()
            .map(|d| d.iter().map(|&x| x as u32).sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Splits into homogeneous pieces by total degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, CohClass> {
        let mut out: BTreeMap<u32, CohClass> = BTreeMap::new();
        for (deg, t) in &self.components {
            let total = deg.iter().map(|&x| x as u32).sum();
            out.entry(total)
                .or_insert_with(|| CohClass::zero(self.space.clone()))
                .insert(deg.clone(), t.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CohClass {
        let mut out = CohClass::zero(self.space.clone());
        if c.is_zero() {
            return out;
        }
        for (deg, t) in &self.components {
            out.insert(deg.clone(), t.mapv(|v| v * c));
        }
        out
    }

    pub fn checked_add(&self, other: &CohClass) -> Result<CohClass> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(format!(
                "cannot add classes on {:?} and {:?}",
                self.space, other.space
            )));
        }
        let mut out = self.clone();
        for (deg, t) in &other.components {
            out.accumulate(deg.clone(), t);
        }
        Ok(out)
    }
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let genera: Vec<usize> = self.space.factors.iter().map(|c| c.genus).collect();
        write!(f, "CohClass{genera:?}{{")?;
        for (i, (deg, t)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let entries: Vec<String> = nonzero_entries(t)
                .into_iter()
                .map(|(ix, v)| if ix.is_empty() { v.to_string() } else { format!("{ix:?}:{v}") })
                .collect();
            write!(f, "{deg:?} => {}", entries.join(" "))?;
        }
        write!(f, "}}")
    }
}

impl Add for &CohClass {
    type Output = CohClass;

    /// Panics when the classes live on different spaces.
    fn add(self, rhs: &CohClass) -> CohClass {
        self.checked_add(rhs).expect("classes on different spaces")
    }
}

impl Neg for &CohClass {
    type Output = CohClass;

    fn neg(self) -> CohClass {
        self.scale(&-Rational::one())
    }
}

impl Sub for &CohClass {
    type Output = CohClass;

    fn sub(self, rhs: &CohClass) -> CohClass {
        self + &(-rhs)
    }
}

/// Where each axis of a product component comes from.
#[derive(Clone, Copy)]
enum AxisSource {
    Left(usize),
    Right(usize),
}

fn cup_components(
    space: &ProductSpace,
    dx: &[u8],
    x: &Tensor,
    dy: &[u8],
    y: &Tensor,
) -> Option<(MultiDegree, Tensor)> {
    let n = space.len();
    let dz: MultiDegree = dx.iter().zip(dy).map(|(a, b)| a + b).collect();
    if dz.iter().any(|&d| d > 2) {
        return None;
    }
    let parity: u32 = (0..n)
        .map(|i| dx[i] as u32 * dy[..i].iter().map(|&d| d as u32).sum::<u32>())
        .sum();
    let negative = parity % 2 == 1;

    let (mut xpos, mut ypos) = (0, 0);
    let mut axes = Vec::new();
    // (genus, axis in x, axis in y) for slots where two H^1 classes meet.
    let mut contractions = Vec::new();
    for i in 0..n {
        match (dx[i], dy[i]) {
            (1, 1) => {
                contractions.push((space.genus(i), xpos, ypos));
                xpos += 1;
                ypos += 1;
            }
            (1, _) => {
                axes.push(AxisSource::Left(xpos));
                xpos += 1;
            }
            (_, 1) => {
                axes.push(AxisSource::Right(ypos));
                ypos += 1;
            }
            _ => {}
        }
    }

    let shape = space.shape(&dz);
    let mut z = Tensor::zeros(IxDyn(&shape));
    let ys = nonzero_entries(y);
    let mut zix = vec![0usize; axes.len()];
    for (ix, vx) in nonzero_entries(x) {
        'pairs: for (iy, vy) in &ys {
            let mut sign = negative;
            for &(g, px, py) in &contractions {
                match standard_form_entry(g, ix[px], iy[py]) {
                    0 => continue 'pairs,
                    -1 => sign = !sign,
                    _ => {}
                }
            }
            for (slot, src) in zix.iter_mut().zip(&axes) {
                *slot = match *src {
                    AxisSource::Left(p) => ix[p],
                    AxisSource::Right(p) => iy[p],
                };
            }
            let v = vx * *vy;
            let cell = &mut z[IxDyn(&zix)];
            if sign {
                *cell -= v;
            } else {
                *cell += v;
            }
        }
    }
    Some((dz, z))
}

/// Cup product.
pub fn cup(x: &CohClass, y: &CohClass) -> Result<CohClass> {
    if x.space != y.space {
        return Err(Error::SpaceMismatch(format!(
            "cup of classes on {:?} and {:?}",
            x.space, y.space
        )));
    }
    let mut out = CohClass::zero(x.space.clone());
    for (dx, tx) in &x.components {
        for (dy, ty) in &y.components {
            if let Some((dz, tz)) = cup_components(&x.space, dx, tx, dy, ty) {
                out.accumulate(dz, &tz);
            }
        }
    }
    Ok(out)
}

/// Pullback along the projection from `target` onto the factors `keep_slots`.
/// The new slots receive the unit class.
pub fn pullback(target: &ProductSpace, keep_slots: &[usize], x: &CohClass) -> Result<CohClass> {
    let sub = target.sub_space(keep_slots)?;
    if sub.len() != x.space.len() {
        return Err(Error::Shape(format!(
            "class lives on {} factors, projection keeps {}",
            x.space.len(),
            sub.len()
        )));
    }
    for (want, have) in sub.factors.iter().zip(&x.space.factors) {
        if want.genus != have.genus {
            return Err(Error::GenusMismatch {
                expected: want.genus,
                found: have.genus,
            });
        }
    }
    let mut out = CohClass::zero(target.clone());
    for (deg, t) in &x.components {
        let mut d = vec![0; target.len()];
        for (&slot, &di) in keep_slots.iter().zip(deg) {
            d[slot] = di;
        }
        out.insert(d, t.clone());
    }
    Ok(out)
}

/// Pushforward along the projection keeping `keep_slots`: integrates every
/// dropped slot, so only components of degree 2 in all dropped slots survive.
pub fn pushforward(x: &CohClass, keep_slots: &[usize]) -> Result<CohClass> {
    let image = x.space.sub_space(keep_slots)?;
    let dropped: Vec<usize> = (0..x.space.len()).filter(|s| !keep_slots.contains(s)).collect();
    let mut out = CohClass::zero(image);
    for (deg, t) in &x.components {
        if dropped.iter().all(|&s| deg[s] == 2) {
            let d: MultiDegree = keep_slots.iter().map(|&s| deg[s]).collect();
            out.accumulate(d, t);
        }
    }
    Ok(out)
}

/// Exchanges the two factors of a surface, with Koszul sign `(-1)^{d_1 d_2}`.
pub fn swap(x: &CohClass) -> Result<CohClass> {
    if x.space.len() != 2 {
        return Err(Error::Shape(format!(
            "swap needs a product of two curves, got {}",
            x.space.len()
        )));
    }
    let space = ProductSpace::new(vec![x.space.factors[1], x.space.factors[0]])?;
    let mut out = CohClass::zero(space);
    for (deg, t) in &x.components {
        let mut t = if deg[0] == 1 && deg[1] == 1 {
            t.clone().reversed_axes()
        } else {
            t.clone()
        };
        if deg[0] * deg[1] % 2 == 1 {
            t.mapv_inplace(|v| -v);
        }
        out.insert(vec![deg[1], deg[0]], t.as_standard_layout().into_owned());
    }
    Ok(out)
}

/// The matrix of `ω ↦ q_*(p^*ω ∪ x)` for a class `x` on `C × C'`, evaluated
/// column by column; shape `2g' × 2g`.
pub fn correspondence_matrix(x: &CohClass) -> Result<Matrix> {
    if x.space.len() != 2 {
        return Err(Error::Shape("correspondences live on products of two curves".into()));
    }
    let (g, g2) = (x.space.genus(0), x.space.genus(1));
    let source = ProductSpace::curve(g);
    let mut m = Matrix::zeros(2 * g2, 2 * g);
    for k in 0..2 * g {
        let omega = pullback(&x.space, &[0], &CohClass::h1(source.clone(), 0, k))?;
        let image = pushforward(&cup(&omega, x)?, &[1])?;
        if let Some(col) = image.component(&[1]) {
            for (i, v) in col.iter().enumerate() {
                m[(i, k)] = v.clone();
            }
        }
    }
    Ok(m)
}

/// Class of the diagonal in `C × C`: `A + B + Γ_Δ`, where the `H^1 ⊗ H^1`
/// part `Γ_Δ` is the one whose correspondence is the identity of `H^1`.
pub fn diagonal_class(g: usize) -> CohClass {
    let space = ProductSpace::surface(g, g);
    // q_*(p^*e_i ∪ Σ M_jk e_j ⊗ e_k) = Σ_k (J M)_ik e_k, so identity action means M = J^-1.
    let gamma = SymplecticLattice::standard(g)
        .form()
        .inverse()
        .expect("standard form is unimodular");
    let n = 2 * g;
    let t = Tensor::from_shape_fn(IxDyn(&[n, n]), |ix| gamma[(ix[0], ix[1])].clone());
    let mut delta = &CohClass::point(space.clone(), 0) + &CohClass::point(space.clone(), 1);
    delta.accumulate(vec![1, 1], &t);
    delta
}

/// Pushforward along the diagonal embedding `C → C × C`, via
/// `δ_*(α) = p^*α ∪ [Δ]`.
pub fn diagonal_pushforward(x: &CohClass) -> Result<CohClass> {
    if x.space.len() != 1 {
        return Err(Error::Shape("diagonal pushforward starts on a single curve".into()));
    }
    let g = x.space.genus(0);
    let space = ProductSpace::surface(g, g);
    cup(&pullback(&space, &[0], x)?, &diagonal_class(g))
}

/// Multiplicative inverse of a class whose degree-zero part is a nonzero
/// scalar; the remainder is nilpotent so the geometric series terminates.
pub fn invert(x: &CohClass) -> Result<CohClass> {
    let zero_degree = vec![0; x.space.len()];
    let c = x.scalar_part(&zero_degree);
    if c.is_zero() {
        return Err(Error::Precondition("class has no invertible degree-zero part".into()));
    }
    let c_inv = c.recip();
    let unit = CohClass::unit(x.space.clone());
    // x = c (1 + n)  ⇒  x^-1 = c^-1 Σ (-n)^k
    let minus_n = &unit - &x.scale(&c_inv);
    let mut term = unit.clone();
    let mut sum = unit;
    loop {
        term = cup(&term, &minus_n)?;
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
    }
    Ok(sum.scale(&c_inv))
}
