//! The 3x3 boundary multiplication matrix, its determinant identity, and the
//! vanishing sweep over pairs of 7-th roots of unity.
//!
//! On the boundary curve (two rational components glued at three points) a
//! 7-torsion gluing datum (c1, c2) produces sections f_i = a_i x + b_i y
//! with a_i = c1^i - 1 and b_i = c2^i - 1. Multiplying the sections for the
//! complementary pairs (i, 7-i), i = 1, 2, 3, yields three quadratic forms
//! whose coefficient matrix A decides whether the multiplication map is an
//! isomorphism: it is exactly when det A is nonzero.
//!
//! The source text prints a middle column for A that does not agree with the
//! literal expansion of the displayed section products. Both variants are
//! built here; adding the outer columns to the middle one shows
//! det(printed) = -det(derived) identically, so exactly one variant matches
//! the displayed determinant formula. That variant is taken as authoritative
//! and the discrepancy is reported, never silently patched.

use std::fmt;

use crate::cyclo::{rat_int, CycloElem, TorusPoly};
use crate::linalg::ExactMatrix;

/// Everything here lives over the 7-torsion torus ring.
const P: u32 = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MulmapError {
    IndexOutOfRange { index: u32, lo: u32, hi: u32 },
}

impl fmt::Display for MulmapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MulmapError::IndexOutOfRange { index, lo, hi } => {
                write!(f, "section index {index} outside {lo}..={hi}")
            }
        }
    }
}

impl std::error::Error for MulmapError {}

/// Coefficients of the section f_i(x, y) = a_i x + b_i y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCoeffs {
    pub index: u32,
    pub a: TorusPoly,
    pub b: TorusPoly,
}

/// a_i = c1^i - 1 and b_i = c2^i - 1 for 1 <= i <= 6.
pub fn build_section(i: u32) -> Result<SectionCoeffs, MulmapError> {
    if !(1..=6).contains(&i) {
        return Err(MulmapError::IndexOutOfRange {
            index: i,
            lo: 1,
            hi: 6,
        });
    }
    let one = TorusPoly::one(P);
    Ok(SectionCoeffs {
        index: i,
        a: &TorusPoly::c1_pow(P, i as i64) - &one,
        b: &TorusPoly::c2_pow(P, i as i64) - &one,
    })
}

/// The x^2, xy, y^2 coefficients of the product f_i * f_(7-i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub index: u32,
    pub xx: TorusPoly,
    pub xy: TorusPoly,
    pub yy: TorusPoly,
}

/// Multiply the sections for the complementary pair (i, 7 - i), 1 <= i <= 3.
pub fn build_product(i: u32) -> Result<QuadraticForm, MulmapError> {
    if !(1..=3).contains(&i) {
        return Err(MulmapError::IndexOutOfRange {
            index: i,
            lo: 1,
            hi: 3,
        });
    }
    let fi = build_section(i)?;
    let fj = build_section(P - i)?;
    Ok(QuadraticForm {
        index: i,
        xx: &fi.a * &fj.a,
        xy: &(&fi.a * &fj.b) + &(&fj.a * &fi.b),
        yy: &fi.b * &fj.b,
    })
}

/// Which of the two matrix builds is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixVariant {
    /// Rows copied verbatim from the displayed matrix, middle entry
    /// 2 - c1^i c2^(7-i) - c1^(7-i) c2^i.
    Printed,
    /// Columns (xx, xy, yy) taken from the expanded section products.
    Derived,
}

impl fmt::Display for MatrixVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixVariant::Printed => write!(f, "printed"),
            MatrixVariant::Derived => write!(f, "derived"),
        }
    }
}

/// The displayed matrix, rows i = 1, 2, 3:
/// [ 2 - c1^i - c1^(7-i),  2 - c1^i c2^(7-i) - c1^(7-i) c2^i,  2 - c2^i - c2^(7-i) ].
pub fn matrix_a_printed() -> ExactMatrix<TorusPoly> {
    let two = TorusPoly::from_int(P, 2);
    ExactMatrix::from_fn(3, 3, |r, c| {
        let i = (r + 1) as i64;
        let j = 7 - i;
        match c {
            0 => &(&two - &TorusPoly::c1_pow(P, i)) - &TorusPoly::c1_pow(P, j),
            1 => {
                let m1 = &TorusPoly::c1_pow(P, i) * &TorusPoly::c2_pow(P, j);
                let m2 = &TorusPoly::c1_pow(P, j) * &TorusPoly::c2_pow(P, i);
                &(&two - &m1) - &m2
            }
            _ => &(&two - &TorusPoly::c2_pow(P, i)) - &TorusPoly::c2_pow(P, j),
        }
    })
}

/// The matrix assembled from the literal products: row i = (xx_i, xy_i, yy_i).
pub fn matrix_a_derived() -> ExactMatrix<TorusPoly> {
    let rows: Vec<Vec<TorusPoly>> = (1..=3)
        .map(|i| {
            let q = build_product(i).expect("index in range");
            vec![q.xx, q.xy, q.yy]
        })
        .collect();
    ExactMatrix::from_rows(rows).expect("3x3")
}

pub fn matrix_variant(v: MatrixVariant) -> ExactMatrix<TorusPoly> {
    match v {
        MatrixVariant::Printed => matrix_a_printed(),
        MatrixVariant::Derived => matrix_a_derived(),
    }
}

/// The displayed determinant: det A = 7 times the sum of c1^6 (c2^3 - c2^5),
/// c1^5 (c2^6 - c2^3), c1^4 (c2^2 - c2), c1^3 (c2^5 - c2^6),
/// c1^2 (c2 - c2^4) and c1 (c2^4 - c2^2).
pub fn det_formula() -> TorusPoly {
    let terms: [(i64, i64, i64); 12] = [
        (6, 3, 1),
        (6, 5, -1),
        (5, 6, 1),
        (5, 3, -1),
        (4, 2, 1),
        (4, 1, -1),
        (3, 5, 1),
        (3, 6, -1),
        (2, 1, 1),
        (2, 4, -1),
        (1, 4, 1),
        (1, 2, -1),
    ];
    let mut f = TorusPoly::zero(P);
    for (i, j, s) in terms {
        f = &f + &TorusPoly::monomial(P, i, j, rat_int(7 * s));
    }
    f
}

/// Symbolic determinant of a variant (cofactor expansion; the torus ring has
/// zero divisors, so no elimination).
pub fn det_of(v: MatrixVariant) -> TorusPoly {
    matrix_variant(v).det_cofactor().expect("3x3 over a ring")
}

/// Evaluate the determinant of a variant at (c1, c2) = (zeta^a, zeta^b), by
/// the route det-then-evaluate.
pub fn det_eval(v: MatrixVariant, a: i64, b: i64) -> CycloElem {
    det_of(v).eval(a, b)
}

/// The other route: evaluate entries first, then take the determinant over
/// the cyclotomic field.
pub fn eval_then_det(v: MatrixVariant, a: i64, b: i64) -> CycloElem {
    matrix_variant(v)
        .map(|e| e.eval(a, b))
        .det()
        .expect("3x3 over a field")
}

/// Outcome of checking det(variant) = 7F symbolically and at all 49
/// evaluation points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetIdentityReport {
    pub printed_symbolic: bool,
    pub printed_all_points: bool,
    pub derived_symbolic: bool,
    pub derived_all_points: bool,
    /// The middle columns of the two variants differ (the discrepancy in the
    /// source text).
    pub middle_columns_differ: bool,
    /// The outer columns agree symbolically.
    pub outer_columns_agree: bool,
    /// det(printed) = -det(derived) as torus polynomials.
    pub printed_is_minus_derived: bool,
    /// The variant whose determinant equals the displayed formula.
    pub authoritative: MatrixVariant,
}

pub fn verify_det_identity() -> DetIdentityReport {
    let formula = det_formula();
    let det_printed = det_of(MatrixVariant::Printed);
    let det_derived = det_of(MatrixVariant::Derived);

    let printed_symbolic = det_printed == formula;
    let derived_symbolic = det_derived == formula;
    let all_points =
        |d: &TorusPoly| (0..7).all(|a| (0..7).all(|b| d.eval(a, b) == formula.eval(a, b)));
    let printed_all_points = all_points(&det_printed);
    let derived_all_points = all_points(&det_derived);

    let printed = matrix_a_printed();
    let derived = matrix_a_derived();
    let middle_columns_differ = (0..3).any(|r| printed.entry(r, 1) != derived.entry(r, 1));
    let outer_columns_agree = (0..3).all(|r| {
        printed.entry(r, 0) == derived.entry(r, 0) && printed.entry(r, 2) == derived.entry(r, 2)
    });
    let printed_is_minus_derived = det_printed == det_derived.negated();

    // When the two determinants are negatives of each other at most one can
    // match the (nonzero) displayed formula; prefer the one that does.
    let authoritative = if printed_symbolic {
        MatrixVariant::Printed
    } else {
        MatrixVariant::Derived
    };

    DetIdentityReport {
        printed_symbolic,
        printed_all_points,
        derived_symbolic,
        derived_all_points,
        middle_columns_differ,
        outer_columns_agree,
        printed_is_minus_derived,
        authoritative,
    }
}

/// The variant whose determinant reproduces the displayed formula.
pub fn authoritative_variant() -> MatrixVariant {
    verify_det_identity().authoritative
}

/// table\[a\]\[b\] = det of the authoritative variant at (zeta^a, zeta^b) is
/// nonzero.
pub fn vanishing_sweep() -> [[bool; 7]; 7] {
    let d = det_of(authoritative_variant());
    let mut table = [[false; 7]; 7];
    for a in 0..7 {
        for b in 0..7 {
            table[a as usize][b as usize] = !d.eval(a, b).is_zero();
        }
    }
    table
}

/// The pattern required of the sweep: nonzero exactly when a, b are nonzero
/// mod 7 and b = 3a or b = 5a mod 7.
pub fn expected_pattern() -> [[bool; 7]; 7] {
    let mut table = [[false; 7]; 7];
    for a in 0..7usize {
        for b in 0..7usize {
            table[a][b] = a != 0 && b != 0 && (b == 3 * a % 7 || b == 5 * a % 7);
        }
    }
    table
}

/// Render a sweep table with `*` for nonzero cells, rows indexed by a.
pub fn render_sweep(table: &[[bool; 7]; 7]) -> String {
    let mut out = String::from("      b=0 1 2 3 4 5 6\n");
    for (a, row) in table.iter().enumerate() {
        out.push_str(&format!("  a={a}   "));
        for (b, &nonzero) in row.iter().enumerate() {
            out.push(if nonzero { '*' } else { '.' });
            if b < 6 {
                out.push(' ');
            }
        }
        out.push('\n');
    }
    out
}
