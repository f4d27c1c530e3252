//! Named kernels with known ground truth about whether their transforms are
//! equivalences.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fm;
use crate::grr::{diagonal_kernel, KernelClass};
use crate::rational::int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogName {
    /// Structure sheaf of the diagonal.
    Diagonal,
    /// Diagonal twisted by `p^*F ⊗ q^*F'`.
    DiagonalTwist,
    /// Diagonal shifted by one.
    DiagonalShift,
    /// Normalized Poincaré bundle on `E × E`.
    Poincare,
    /// `O_{C × pt'}`.
    PointSheaf,
    Zero,
}

impl CatalogName {
    pub const ALL: [CatalogName; 6] = [
        CatalogName::Diagonal,
        CatalogName::DiagonalTwist,
        CatalogName::DiagonalShift,
        CatalogName::Poincare,
        CatalogName::PointSheaf,
        CatalogName::Zero,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogName::Diagonal => "diagonal",
            CatalogName::DiagonalTwist => "diagonal_twist",
            CatalogName::DiagonalShift => "diagonal_shift",
            CatalogName::Poincare => "poincare",
            CatalogName::PointSheaf => "point_sheaf",
            CatalogName::Zero => "zero",
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownKernel(s.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CatalogParams {
    pub genus: Option<usize>,
    /// Defaults to `genus` where a second genus is meaningful.
    pub genus_target: Option<usize>,
    pub twist_source: i64,
    pub twist_target: i64,
}

impl CatalogParams {
    pub fn genus(g: usize) -> Self {
        CatalogParams {
            genus: Some(g),
            ..Default::default()
        }
    }

    pub fn pair(g: usize, g2: usize) -> Self {
        CatalogParams {
            genus: Some(g),
            genus_target: Some(g2),
            ..Default::default()
        }
    }

    pub fn twist(g: usize, df: i64, df_target: i64) -> Self {
        CatalogParams {
            genus: Some(g),
            twist_source: df,
            twist_target: df_target,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub kernel: KernelClass,
    pub is_equivalence: bool,
}

pub fn catalog_kernel(name: &str, params: &CatalogParams) -> Result<CatalogEntry> {
    let name: CatalogName = name.parse()?;
    let genus = || {
        params
            .genus
            .ok_or_else(|| Error::Precondition(format!("catalog kernel `{name}` needs a genus")))
    };
    let square = |g: usize| -> Result<usize> {
        match params.genus_target {
            Some(h) if h != g => Err(Error::Precondition(format!(
                "catalog kernel `{name}` lives on C x C; got genera {g} and {h}"
            ))),
            _ => Ok(g),
        }
    };
    let (kernel, is_equivalence) = match name {
        CatalogName::Diagonal => (diagonal_kernel(square(genus()?)?), true),
        CatalogName::DiagonalTwist => {
            let g = square(genus()?)?;
            let e = fm::twist(&diagonal_kernel(g), &int(params.twist_source), &int(params.twist_target));
            (e, true)
        }
        CatalogName::DiagonalShift => (fm::shift(&diagonal_kernel(square(genus()?)?)), true),
        CatalogName::Poincare => {
            if params.genus.unwrap_or(1) != 1 || params.genus_target.unwrap_or(1) != 1 {
                return Err(Error::Precondition("the Poincaré kernel needs genus 1".into()));
            }
            // c_1 = Δ - A - B, ch_2 = c_1^2 / 2 = -1
            let gamma = diagonal_kernel(1).gamma().clone();
            (KernelClass::new(1, 1, int(1), int(0), int(0), gamma, int(-1))?, true)
        }
        CatalogName::PointSheaf => {
            let g = genus()?;
            let h = params.genus_target.unwrap_or(g);
            let mut e = KernelClass::zero(g, h);
            e.b = int(1);
            (e, false)
        }
        CatalogName::Zero => {
            let g = genus()?;
            (KernelClass::zero(g, params.genus_target.unwrap_or(g)), false)
        }
    };
    Ok(CatalogEntry {
        name,
        kernel,
        is_equivalence,
    })
}

/// A fixed spread of catalog kernels over small genera. Non-equivalences are
/// only listed in positive genus: for `g = g' = 0` the Jacobians vanish and
/// every kernel induces the (polarization-preserving) isomorphism `0 → 0`.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    let mut params: Vec<(&str, CatalogParams)> = Vec::new();
    for g in 0..=3 {
        params.push(("diagonal", CatalogParams::genus(g)));
        params.push(("diagonal_shift", CatalogParams::genus(g)));
        params.push(("diagonal_twist", CatalogParams::twist(g, 1, 0)));
        params.push(("diagonal_twist", CatalogParams::twist(g, -2, 3)));
    }
    params.push(("poincare", CatalogParams::genus(1)));
    for (g, h) in [(1, 1), (2, 2), (3, 3), (1, 2), (2, 0)] {
        params.push(("point_sheaf", CatalogParams::pair(g, h)));
        params.push(("zero", CatalogParams::pair(g, h)));
    }
    params
        .into_iter()
        .map(|(name, p)| catalog_kernel(name, &p).expect("catalog parameters are valid"))
        .collect()
}
