//! The formal algebra of Prym differentials on the boundary covers: the
//! omega basis supported one component at a time, the eigenbasis Omega_i,
//! the cyclic-diagonal tensors psi_i, and the kernel of the codifferential.
//!
//! Only the index combinatorics and the cyclotomic coefficients matter here;
//! the differentials themselves are never realized as forms on a curve. The
//! deck transformation acts on the basis by the cyclic shift that makes
//! sigma^*(Omega_i) = rho^i Omega_i hold, and that eigenvalue equation is
//! itself one of the checks.

use std::fmt;

use crate::cyclo::CycloElem;
use crate::linalg::ExactMatrix;

/// Conductor of the scalar field and the number of omega basis elements.
const P: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrymdiffError {
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
}

impl fmt::Display for PrymdiffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrymdiffError::IndexOutOfRange { index, lo, hi } => {
                write!(f, "index {index} outside {lo}..={hi}")
            }
        }
    }
}

impl std::error::Error for PrymdiffError {}

fn zeta(k: i64) -> CycloElem {
    CycloElem::zeta_pow(P as u32, k)
}

/// A vector in the 7-dimensional span of omega_1, ..., omega_7 with
/// cyclotomic coefficients. Coordinate k holds the coefficient of
/// omega_(k+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaVector {
    coords: Vec<CycloElem>,
}

impl OmegaVector {
    pub fn zero() -> Self {
        OmegaVector {
            coords: vec![CycloElem::zero(P as u32); P],
        }
    }

    pub fn coords(&self) -> &[CycloElem] {
        &self.coords
    }

    /// Coefficient of omega_j, 1-indexed.
    pub fn coeff(&self, j: usize) -> &CycloElem {
        &self.coords[j - 1]
    }

    pub fn add(&self, rhs: &Self) -> Self {
        OmegaVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &CycloElem) -> Self {
        OmegaVector {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }
}

/// omega_j: the j-th unit vector, 1 <= j <= 7.
pub fn omega(j: usize) -> Result<OmegaVector, PrymdiffError> {
    if !(1..=P).contains(&j) {
        return Err(PrymdiffError::IndexOutOfRange {
            index: j as i64,
            lo: 1,
            hi: 7,
        });
    }
    let mut v = OmegaVector::zero();
    v.coords[j - 1] = CycloElem::one(P as u32);
    Ok(v)
}

/// Omega_i = sum_j rho^(i j) omega_j, 0 <= i <= 6.
pub fn big_omega(i: usize) -> Result<OmegaVector, PrymdiffError> {
    if i > 6 {
        return Err(PrymdiffError::IndexOutOfRange {
            index: i as i64,
            lo: 0,
            hi: 6,
        });
    }
    let mut v = OmegaVector::zero();
    for j in 1..=P {
        v.coords[j - 1] = zeta((i * j) as i64);
    }
    Ok(v)
}

/// Pullback along the deck transformation: omega_j -> omega_(j-1), indices
/// cyclic in 1..7.
pub fn sigma_pullback(v: &OmegaVector) -> OmegaVector {
    let mut out = OmegaVector::zero();
    for k in 0..P {
        out.coords[k] = v.coords[(k + 1) % P].clone();
    }
    out
}

/// An element of the tensor square: entry (a, b), 0-indexed, holds the
/// coefficient of omega_(a+1) (x) omega_(b+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElem {
    entries: Vec<CycloElem>, // row-major 7x7
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem {
            entries: vec![CycloElem::zero(P as u32); P * P],
        }
    }

    /// Coefficient of omega_a (x) omega_b, 1-indexed.
    pub fn coeff(&self, a: usize, b: usize) -> &CycloElem {
        &self.entries[(a - 1) * P + (b - 1)]
    }

    fn coeff_mut(&mut self, a: usize, b: usize) -> &mut CycloElem {
        &mut self.entries[(a - 1) * P + (b - 1)]
    }

    pub fn add(&self, rhs: &Self) -> Self {
        TensorElem {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &CycloElem) -> Self {
        TensorElem {
            entries: self.entries.iter().map(|c| c * s).collect(),
        }
    }
}

/// The bilinear tensor constructor u (x) v.
pub fn tensor(u: &OmegaVector, v: &OmegaVector) -> TensorElem {
    let mut t = TensorElem::zero();
    for a in 1..=P {
        for b in 1..=P {
            *t.coeff_mut(a, b) = u.coeff(a) * v.coeff(b);
        }
    }
    t
}

/// psi_i = sum_j omega_j (x) omega_(j+i-1), 1 <= i <= 7, indices cyclic.
pub fn psi(i: usize) -> Result<TensorElem, PrymdiffError> {
    if !(1..=P).contains(&i) {
        return Err(PrymdiffError::IndexOutOfRange {
            index: i as i64,
            lo: 1,
            hi: 7,
        });
    }
    let mut t = TensorElem::zero();
    for j in 1..=P {
        let l = (j + i - 2) % P + 1;
        *t.coeff_mut(j, l) = CycloElem::one(P as u32);
    }
    Ok(t)
}

/// Omega_i (x) Omega_(7-i) together with its expansion in the psi basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairExpansion {
    pub tensor: TensorElem,
    /// psi_coeffs[s-1] is the coefficient of psi_s.
    pub psi_coeffs: Vec<CycloElem>,
}

/// Decompose a tensor supported on cyclic diagonals in the psi basis. The
/// psi_s have pairwise disjoint supports, so the expansion is unique; a
/// tensor straying off the diagonals or non-constant along one returns None.
pub fn psi_decompose(t: &TensorElem) -> Option<Vec<CycloElem>> {
    let mut coeffs = Vec::with_capacity(P);
    for s in 1..=P {
        // diagonal of psi_s passes through (1, s)
        let value = t.coeff(1, s).clone();
        for j in 1..=P {
            let l = (j + s - 2) % P + 1;
            if *t.coeff(j, l) != value {
                return None;
            }
        }
        coeffs.push(value);
    }
    // reconstruct to rule out support off the diagonals
    let mut rebuilt = TensorElem::zero();
    for (s, c) in coeffs.iter().enumerate() {
        rebuilt = rebuilt.add(&psi(s + 1).expect("in range").scale(c));
    }
    if rebuilt == *t {
        Some(coeffs)
    } else {
        None
    }
}

/// Build Omega_i (x) Omega_(7-i) for i in 1..=3 and expand it in the psi
/// basis.
pub fn expand_pair(i: usize) -> Result<PairExpansion, PrymdiffError> {
    if !(1..=3).contains(&i) {
        return Err(PrymdiffError::IndexOutOfRange {
            index: i as i64,
            lo: 1,
            hi: 3,
        });
    }
    let t = tensor(&big_omega(i)?, &big_omega(P - i)?);
    let psi_coeffs = psi_decompose(&t).expect("pair tensors live on the cyclic diagonals");
    Ok(PairExpansion {
        tensor: t,
        psi_coeffs,
    })
}

/// Coordinates (a, b, c) in the invariant basis Omega_1 (x) Omega_6,
/// Omega_2 (x) Omega_5, Omega_3 (x) Omega_4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymCoords {
    pub a: CycloElem,
    pub b: CycloElem,
    pub c: CycloElem,
}

impl SymCoords {
    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        SymCoords {
            a: CycloElem::from_int(P as u32, a),
            b: CycloElem::from_int(P as u32, b),
            c: CycloElem::from_int(P as u32, c),
        }
    }

    pub fn combination_tensor(&self) -> TensorElem {
        let e1 = expand_pair(1).expect("in range").tensor.scale(&self.a);
        let e2 = expand_pair(2).expect("in range").tensor.scale(&self.b);
        let e3 = expand_pair(3).expect("in range").tensor.scale(&self.c);
        e1.add(&e2).add(&e3)
    }

    /// psi-basis coefficients of the combination a E1 + b E2 + c E3.
    pub fn psi_coefficients(&self) -> Vec<CycloElem> {
        psi_decompose(&self.combination_tensor()).expect("combination stays diagonal")
    }
}

/// The coefficients of the symmetrized combination grouped by cyclic
/// distance: d0 multiplies sum(omega_j^2) and ds, s = 1, 2, 3, multiplies
/// sum(omega_j omega_(j+s)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedCoeffs {
    pub d0: CycloElem,
    pub d: [CycloElem; 3],
}

/// Symmetrize a Omega_1(x)Omega_6 + b Omega_2(x)Omega_5 + c Omega_3(x)Omega_4
/// in the symmetric square (dimension 28) and read off the four grouped
/// coefficients. Constancy along each distance class is asserted, not
/// assumed.
pub fn phi_grouped_coeffs(s: &SymCoords) -> GroupedCoeffs {
    let t = s.combination_tensor();
    // symmetric-square coefficient of the unordered pair {u, v}
    let sym = |u: usize, v: usize| -> CycloElem {
        if u == v {
            t.coeff(u, v).clone()
        } else {
            t.coeff(u, v) + t.coeff(v, u)
        }
    };
    let d0 = sym(1, 1);
    for j in 2..=P {
        assert_eq!(sym(j, j), d0, "diagonal coefficient is constant");
    }
    let mut d = Vec::with_capacity(3);
    for dist in 1..=3usize {
        let first = sym(1, 1 + dist);
        for j in 1..=P {
            let l = (j + dist - 1) % P + 1;
            assert_eq!(sym(j, l), first, "distance-{dist} coefficient is constant");
        }
        d.push(first);
    }
    GroupedCoeffs {
        d0,
        d: [d[0].clone(), d[1].clone(), d[2].clone()],
    }
}

/// The scalar functional whose vanishing characterizes the kernel of the
/// codifferential: a + b + c.
pub fn phi_functional(s: &SymCoords) -> CycloElem {
    &(&s.a + &s.b) + &s.c
}

/// The restriction of the combination to a single component collapses to
/// -5 (a + b + c).
pub fn restriction_value(s: &SymCoords) -> CycloElem {
    phi_functional(s).scale(&crate::cyclo::rat_int(-5))
}

/// The 1x3 matrix of the codifferential in the (a, b, c) coordinates.
fn phi_matrix() -> ExactMatrix<CycloElem> {
    let one = CycloElem::one(P as u32);
    ExactMatrix::from_rows(vec![vec![one.clone(), one.clone(), one]]).expect("1x3")
}

/// Basis of { (a, b, c) : a + b + c = 0 }, computed by the generic kernel
/// routine. Exactly two elements.
pub fn kernel_of_phi() -> Vec<SymCoords> {
    phi_matrix()
        .kernel_basis()
        .into_iter()
        .map(|v| SymCoords {
            a: v[0].clone(),
            b: v[1].clone(),
            c: v[2].clone(),
        })
        .collect()
}

/// Rank of the codifferential.
pub fn phi_rank() -> usize {
    phi_matrix().rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_int;

    #[test]
    fn big_omega_zero_is_all_ones() {
        let v = big_omega(0).unwrap();
        for j in 1..=7 {
            assert_eq!(*v.coeff(j), CycloElem::one(7));
        }
    }

    #[test]
    fn big_omega_one_coefficient_at_omega_two() {
        let v = big_omega(1).unwrap();
        assert_eq!(*v.coeff(2), zeta(2));
    }

    #[test]
    fn eigenbasis_has_rank_six() {
        let rows: Vec<Vec<CycloElem>> = (1..=6)
            .map(|i| big_omega(i).unwrap().coords().to_vec())
            .collect();
        let m = ExactMatrix::from_rows(rows).unwrap();
        assert_eq!(m.rank(), 6);
    }

    #[test]
    fn omega_is_unit_vector_and_ranges_checked() {
        let v = omega(3).unwrap();
        for j in 1..=7 {
            let expected = if j == 3 {
                CycloElem::one(7)
            } else {
                CycloElem::zero(7)
            };
            assert_eq!(*v.coeff(j), expected);
        }
        assert!(omega(0).is_err());
        assert!(omega(8).is_err());
        assert!(big_omega(7).is_err());
    }

    #[test]
    fn sigma_fixes_omega_zero() {
        let v = big_omega(0).unwrap();
        assert_eq!(sigma_pullback(&v), v);
    }

    #[test]
    fn sigma_eigenvalue_on_each_big_omega() {
        for i in 0..=6 {
            let v = big_omega(i).unwrap();
            assert_eq!(sigma_pullback(&v), v.scale(&zeta(i as i64)), "i = {i}");
        }
    }

    #[test]
    fn sigma_has_order_seven() {
        let mut v = big_omega(3).unwrap().add(&omega(1).unwrap());
        let start = v.clone();
        for _ in 0..7 {
            v = sigma_pullback(&v);
        }
        assert_eq!(v, start);
    }

    #[test]
    fn psi_one_is_diagonal() {
        let t = psi(1).unwrap();
        for j in 1..=7 {
            assert_eq!(*t.coeff(j, j), CycloElem::one(7));
        }
    }

    #[test]
    fn psi_two_wraps_around() {
        let t = psi(2).unwrap();
        assert_eq!(*t.coeff(7, 1), CycloElem::one(7));
        assert_eq!(*t.coeff(1, 2), CycloElem::one(7));
        assert_eq!(*t.coeff(1, 3), CycloElem::zero(7));
    }

    #[test]
    fn psi_sum_is_all_ones() {
        let mut acc = TensorElem::zero();
        for i in 1..=7 {
            acc = acc.add(&psi(i).unwrap());
        }
        for a in 1..=7 {
            for b in 1..=7 {
                assert_eq!(*acc.coeff(a, b), CycloElem::one(7));
            }
        }
    }

    /// The three displayed psi expansions, frozen coefficient by coefficient.
    #[test]
    fn displayed_expansions_hold_exactly() {
        let cases: [(usize, [i64; 7]); 3] = [
            // psi_1..psi_7 coefficients as powers of rho
            (1, [0, 6, 5, 4, 3, 2, 1]),
            (2, [0, 5, 3, 1, 6, 4, 2]),
            (3, [0, 4, 1, 5, 2, 6, 3]),
        ];
        for (i, powers) in cases {
            let e = expand_pair(i).unwrap();
            let expected: Vec<CycloElem> = powers.iter().map(|&k| zeta(k)).collect();
            assert_eq!(e.psi_coeffs, expected, "pair {i}");
            // and the expansion reconstructs the tensor
            let mut rebuilt = TensorElem::zero();
            for (s, c) in e.psi_coeffs.iter().enumerate() {
                rebuilt = rebuilt.add(&psi(s + 1).unwrap().scale(c));
            }
            assert_eq!(rebuilt, e.tensor);
        }
    }

    #[test]
    fn expand_pair_range_checked() {
        assert!(expand_pair(0).is_err());
        assert!(expand_pair(4).is_err());
    }

    #[test]
    fn psi_one_coefficient_is_sum_of_coords() {
        let s = SymCoords::from_ints(2, -3, 5);
        let coeffs = s.psi_coefficients();
        assert_eq!(coeffs[0], CycloElem::from_int(7, 4));
        assert_eq!(coeffs[0], phi_functional(&s));
    }

    #[test]
    fn grouped_coeffs_on_unit_vectors() {
        let s = SymCoords::from_ints(1, 0, 0);
        let g = phi_grouped_coeffs(&s);
        assert_eq!(g.d0, CycloElem::one(7));
        assert_eq!(g.d[0], &zeta(1) + &zeta(6));
        assert_eq!(g.d[1], &zeta(2) + &zeta(5));
        assert_eq!(g.d[2], &zeta(3) + &zeta(4));
    }

    #[test]
    fn grouped_coeffs_match_displayed_brackets() {
        // d1 = a(r+r^6) + b(r^2+r^5) + c(r^3+r^4), then cycled for d2, d3
        let s = SymCoords::from_ints(2, 3, -1);
        let g = phi_grouped_coeffs(&s);
        let pair = |u: i64| &zeta(u) + &zeta(7 - u);
        let combine = |pu: i64, pv: i64, pw: i64| {
            let ta = s.a.checked_mul(&pair(pu)).unwrap();
            let tb = s.b.checked_mul(&pair(pv)).unwrap();
            let tc = s.c.checked_mul(&pair(pw)).unwrap();
            &(&ta + &tb) + &tc
        };
        assert_eq!(g.d0, phi_functional(&s));
        assert_eq!(g.d[0], combine(1, 2, 3));
        assert_eq!(g.d[1], combine(2, 3, 1));
        assert_eq!(g.d[2], combine(3, 1, 2));
    }

    #[test]
    fn grouped_sum_collapses_to_minus_functional() {
        let s = SymCoords::from_ints(4, -7, 2);
        let g = phi_grouped_coeffs(&s);
        let sum = &(&g.d[0] + &g.d[1]) + &g.d[2];
        assert_eq!(sum, phi_functional(&s).negated());
    }

    #[test]
    fn grouped_coeffs_trivial_cases() {
        let ones = SymCoords::from_ints(1, 1, 1);
        let g = phi_grouped_coeffs(&ones);
        assert_eq!(g.d0, CycloElem::from_int(7, 3));
        let sum = &(&g.d[0] + &g.d[1]) + &g.d[2];
        assert_eq!(sum, CycloElem::from_int(7, -3));

        let balanced = SymCoords::from_ints(1, -1, 0);
        assert!(phi_grouped_coeffs(&balanced).d0.is_zero());
    }

    #[test]
    fn kernel_of_phi_is_two_dimensional() {
        let kernel = kernel_of_phi();
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            assert!(phi_functional(v).is_zero());
            assert!(restriction_value(v).is_zero());
        }
        assert_eq!(phi_rank(), 1);
        assert_eq!(phi_rank() + kernel.len(), 3);
    }

    #[test]
    fn kernel_spans_the_expected_plane() {
        // kernel must span the same plane as (1, -1, 0) and (1, 0, -1)
        let kernel = kernel_of_phi();
        let to_row = |s: &SymCoords| vec![s.a.clone(), s.b.clone(), s.c.clone()];
        let spanning = vec![
            to_row(&kernel[0]),
            to_row(&kernel[1]),
            to_row(&SymCoords::from_ints(1, -1, 0)),
            to_row(&SymCoords::from_ints(1, 0, -1)),
        ];
        let m = ExactMatrix::from_rows(spanning).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn all_ones_is_outside_the_kernel() {
        let s = SymCoords::from_ints(1, 1, 1);
        assert_eq!(phi_functional(&s), CycloElem::from_int(7, 3));
        assert!(!phi_functional(&s).is_zero());
        assert_eq!(restriction_value(&s), CycloElem::from_int(7, -15));
    }

    #[test]
    fn restriction_scales_functional_by_minus_five() {
        let s = SymCoords::from_ints(2, 0, 1);
        assert_eq!(
            restriction_value(&s),
            phi_functional(&s).scale(&rat_int(-5))
        );
    }
}
