//! Signature dimension enumeration for moduli of polarized abelian varieties
//! with an order-p automorphism.
//!
//! The moduli space attached to a totally complex field with totally real
//! subfield of degree e0 has dimension sum(r_v * s_v) over the e0 real
//! places, where each signature pair satisfies r_v + s_v = m. Enumerating
//! every signature tuple is cheap for the instances we care about: (e0, m) =
//! (3, 2) for the degree-7 cover of a genus-2 curve and (1, 5) for the
//! degree-6 case that fails the dimension match.

use std::collections::BTreeSet;
use std::fmt;

/// Instance of the signature enumeration: e0 real places, signatures of size
/// m at each place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureProblem {
    pub e0: u32,
    pub m: u32,
}

impl SignatureProblem {
    pub fn new(e0: u32, m: u32) -> Self {
        assert!(e0 >= 1 && m >= 1, "e0 and m must be positive");
        SignatureProblem { e0, m }
    }

    /// The degree-7 over genus-2 instance: Q(zeta_7) has totally real
    /// subfield of degree 3, and dim P / e0 = 6 / 3 = 2.
    pub fn degree7_genus2() -> Self {
        SignatureProblem::new(3, 2)
    }

    /// The degree-6 over genus-2 instance: Q(zeta_6) is imaginary quadratic,
    /// so e0 = 1 and m = dim P / e0 = 5.
    pub fn degree6_genus2() -> Self {
        SignatureProblem::new(1, 5)
    }
}

/// Result of exhausting all (m+1)^e0 signature tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureEnumeration {
    /// All achievable values of sum(r_v * s_v), deduplicated and sorted.
    pub dims: BTreeSet<u64>,
    /// The largest achievable dimension.
    pub max: u64,
    /// Every signature tuple attaining the maximum, as (r_v, s_v) pairs.
    pub maximizers: Vec<Vec<(u32, u32)>>,
}

impl fmt::Display for SignatureEnumeration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}} max {}", dims.join(","), self.max)
    }
}

/// Enumerate every signature tuple (r_1, s_1), ..., (r_e0, s_e0) with
/// r_v + s_v = m and collect the achievable dimensions sum(r_v * s_v).
pub fn signature_dims(problem: SignatureProblem) -> SignatureEnumeration {
    let e0 = problem.e0 as usize;
    let m = problem.m as u64;
    let mut dims = BTreeSet::new();
    let mut max = 0u64;
    let mut maximizers: Vec<Vec<(u32, u32)>> = Vec::new();
    // odometer over r_v in 0..=m for each place
    let mut r = vec![0u64; e0];
    loop {
        let dim: u64 = r.iter().map(|&rv| rv * (m - rv)).sum();
        dims.insert(dim);
        let tuple: Vec<(u32, u32)> = r.iter().map(|&rv| (rv as u32, (m - rv) as u32)).collect();
        if dim > max {
            max = dim;
            maximizers.clear();
            maximizers.push(tuple);
        } else if dim == max {
            maximizers.push(tuple);
        }
        // advance odometer
        let mut i = 0;
        loop {
            if i == e0 {
                return SignatureEnumeration {
                    dims,
                    max,
                    maximizers,
                };
            }
            if r[i] < m {
                r[i] += 1;
                break;
            }
            r[i] = 0;
            i += 1;
        }
    }
}

/// Dimension of the moduli of cyclic degree-p etale covers of genus-g
/// curves: the base curve moves in M_g, so the dimension is 3g - 3.
pub fn dim_cover_space(g: u32, _p: u32) -> Result<u32, DimensionError> {
    if g < 2 {
        return Err(DimensionError::GenusTooSmall(g));
    }
    Ok(3 * g - 3)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimensionError {
    GenusTooSmall(u32),
}

impl fmt::Display for DimensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimensionError::GenusTooSmall(g) => write!(f, "genus must be >= 2, got {g}"),
        }
    }
}

impl std::error::Error for DimensionError {}

/// For the (g, p) = (2, 6) instance: the covering space is 3-dimensional but
/// 3 is not an achievable signature dimension, so the two spaces cannot have
/// equal dimension. Returns true when 3 is indeed excluded.
pub fn degree6_dimension_mismatch() -> bool {
    !signature_dims(SignatureProblem::degree6_genus2())
        .dims
        .contains(&3)
}
