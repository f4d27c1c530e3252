//! Analysis reports for a kernel class.

use std::fmt::Write as _;

use fmcurves::fm::{self, AffinePicMap, KMapCoefficients, TorelliReport};
use fmcurves::rational::{format_rational, int};
use fmcurves::{KernelClass, Matrix, Rational};
use serde_json::{json, Value};

use crate::kernel_file::{canonical_json, kernel_to_json, matrix_to_json, rational_to_json};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub kernel: KernelClass,
    pub k_map: KMapCoefficients,
    pub pic: AffinePicMap,
    pub torelli: TorelliReport,
}

impl Report {
    pub fn new(kernel: &KernelClass) -> Self {
        Report {
            kernel: kernel.clone(),
            k_map: fm::k_map_coefficients(kernel),
            pic: fm::pic_map(kernel),
            torelli: fm::torelli_report(kernel),
        }
    }

    pub fn jac(&self) -> &Matrix {
        self.pic.jac_linear.matrix()
    }

    pub fn to_json(&self) -> Value {
        let k = &self.k_map;
        let t = &self.torelli;
        json!({
            "kernel": kernel_to_json(&self.kernel),
            "k_map": {
                "rank": {"r": rational_to_json(&k.rank_r), "d": rational_to_json(&k.rank_d)},
                "degree": {"r": rational_to_json(&k.degree_r), "d": rational_to_json(&k.degree_d)},
            },
            "pic": {
                "slope": rational_to_json(&self.pic.slope_degree),
                "translation": rational_to_json(&self.pic.translation_degree),
            },
            "jac": matrix_to_json(self.jac()),
            "flags": {
                "unimodular": t.jac_is_isomorphism,
                "preserves_polarization": t.jac_preserves_polarization,
                "numerical_equivalence": t.numerical_equivalence,
                "consistent": t.consistent,
            },
        })
    }

    pub fn render_json(&self) -> String {
        canonical_json(&self.to_json())
    }

    pub fn render_text(&self) -> String {
        let e = &self.kernel;
        let k = &self.k_map;
        let t = &self.torelli;
        let q = format_rational;
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "kernel on C x C' with g = {}, g' = {}", e.genus_source(), e.genus_target());
        let _ = writeln!(w, "  rank {}, fiber degrees a = {}, b = {}, ch2 = {}", q(&e.rank), q(&e.a), q(&e.b), q(&e.ch2));
        let _ = writeln!(w, "K-theory map");
        let _ = writeln!(w, "  rank'   = {} r {} d", q(&k.rank_r), signed(&k.rank_d));
        let _ = writeln!(w, "  degree' = {} r {} d", q(&k.degree_r), signed(&k.degree_d));
        let _ = writeln!(w, "Picard map");
        let _ = writeln!(
            w,
            "  degree m -> {} m {}",
            q(&self.pic.slope_degree),
            signed(&self.pic.translation_degree)
        );
        let _ = writeln!(w, "Jacobian map ({} x {})", self.jac().rows(), self.jac().cols());
        write_matrix(w, self.jac());
        let _ = writeln!(w, "flags");
        let flag = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(w, "  unimodular:             {}", flag(t.jac_is_isomorphism));
        let _ = writeln!(w, "  preserves polarization: {}", flag(t.jac_preserves_polarization));
        let _ = writeln!(w, "  numerical equivalence:  {}", flag(t.numerical_equivalence));
        let _ = writeln!(w, "  consistent:             {}", flag(t.consistent));
        out
    }
}

/// `+ x` or `- |x|`, for the trailing term of a linear form.
fn signed(x: &Rational) -> String {
    if x < &int(0) {
        format!("- {}", format_rational(&-x))
    } else {
        format!("+ {}", format_rational(x))
    }
}

fn write_matrix(w: &mut String, m: &Matrix) {
    if m.rows() == 0 || m.cols() == 0 {
        let _ = writeln!(w, "  (empty)");
        return;
    }
    let cells: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(w, "  [ {} ]", padded.join(" "));
    }
}

/// One-line verdict used by `check`.
pub fn verdict(kernel: &KernelClass) -> String {
    let t = fm::torelli_report(kernel);
    let polarized = t.jac_is_isomorphism && t.jac_preserves_polarization;
    format!(
        "numerical equivalence: {}; polarization-preserving Jacobian isomorphism: {}; {}",
        t.numerical_equivalence,
        polarized,
        if t.consistent { "consistent" } else { "INCONSISTENT" }
    )
}
