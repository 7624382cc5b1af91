//! Riemann-Hurwitz genus computation, the index of Gamma_0(N), cusp data for
//! the level-7 modular curve, and the final degree count for the Prym map.
//!
//! The local degree along the first boundary divisor comes from projecting a
//! plane cubic from a point on itself (degree 3 - 1 = 2); the local degree
//! along the second is the degree of the forgetful map from the level-7
//! modular curve, i.e. the index of Gamma_0(7). Their sum is the total
//! degree 10.

use std::fmt;

use crate::cyclo::{rat, rat_int, Rational};
use num_integer::Integer;
use num_traits::One;

/// A ramification profile of a branched covering: one partition of the
/// degree per branch point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamProfile {
    pub degree: u32,
    pub branch_points: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileError {
    /// A partition does not sum to the covering degree.
    BadPartition {
        index: usize,
        sum: u32,
        degree: u32,
    },
    /// A partition contains a zero part.
    ZeroPart {
        index: usize,
    },
    UnsupportedLevel(u32),
}

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileError::BadPartition { index, sum, degree } => {
                write!(
                    f,
                    "partition {index} sums to {sum}, expected degree {degree}"
                )
            }
            ProfileError::ZeroPart { index } => {
                write!(f, "partition {index} contains a zero part")
            }
            ProfileError::UnsupportedLevel(n) => write!(f, "level {n} is not supported"),
        }
    }
}

impl std::error::Error for ProfileError {}

impl RamProfile {
    pub fn new(degree: u32, branch_points: Vec<Vec<u32>>) -> Result<Self, ProfileError> {
        for (index, part) in branch_points.iter().enumerate() {
            if part.contains(&0) {
                return Err(ProfileError::ZeroPart { index });
            }
            let sum: u32 = part.iter().sum();
            if sum != degree {
                return Err(ProfileError::BadPartition { index, sum, degree });
            }
        }
        Ok(RamProfile {
            degree,
            branch_points,
        })
    }

    /// Total ramification sum((e - 1)) over all cycles of all branch points.
    pub fn ramification_mass(&self) -> u32 {
        self.branch_points
            .iter()
            .flat_map(|p| p.iter())
            .map(|&e| e - 1)
            .sum()
    }
}

/// Genus of the covering curve by the Hurwitz formula,
/// g = 1 + d(g0 - 1) + (1/2) sum(e - 1), returned as an exact rational so
/// integrality can be asserted rather than assumed.
pub fn riemann_hurwitz_genus(profile: &RamProfile, base_genus: u32) -> Rational {
    let d = rat_int(profile.degree as i64);
    let g0 = rat_int(base_genus as i64);
    let mass = rat_int(profile.ramification_mass() as i64);
    rat_int(1) + d * (g0 - rat_int(1)) + rat(1, 2) * mass
}

/// The ramification profile of the degree-8 forgetful map from the level-7
/// modular curve to the j-line. Over j = 0 the two elliptic points of order
/// 3 are unramified and the rest of the fiber has ramification index 3; over
/// j = 1728 there are no elliptic points of order 2, so four points of index
/// 2; over j = infinity the two cusps have widths 1 and 7.
pub fn level7_profile() -> RamProfile {
    RamProfile::new(8, vec![vec![3, 3, 1, 1], vec![2, 2, 2, 2], vec![7, 1]])
        .expect("profile partitions sum to 8")
}

/// Index of Gamma_0(N) in the modular group: N * prod(1 + 1/q) over the
/// distinct primes q dividing N.
pub fn gamma0_index(n: u64) -> u64 {
    assert!(n >= 1);
    let mut index = n;
    let mut rest = n;
    let mut q = 2u64;
    while q * q <= rest {
        if rest.is_multiple_of(q) {
            index = index / q * (q + 1);
            while rest.is_multiple_of(q) {
                rest /= q;
            }
        }
        q += 1;
    }
    if rest > 1 {
        index = index / rest * (rest + 1);
    }
    index
}

/// Independent oracle for `gamma0_index`: count the points of P^1(Z/N) by
/// brute force. Pairs (u, v) with gcd(u, v, N) = 1 are enumerated and
/// identified under scaling by units of Z/N.
pub fn projective_line_count(n: u64) -> u64 {
    assert!(n >= 1);
    if n == 1 {
        return 1;
    }
    let units: Vec<u64> = (1..n).filter(|&u| u.gcd(&n) == 1).collect();
    let mut seen = vec![false; (n * n) as usize];
    let mut classes = 0u64;
    for u in 0..n {
        for v in 0..n {
            if u.gcd(&v).gcd(&n) != 1 {
                continue;
            }
            if seen[(u * n + v) as usize] {
                continue;
            }
            classes += 1;
            for &w in &units {
                seen[((u * w % n) * n + v * w % n) as usize] = true;
            }
        }
    }
    classes
}

/// Degree of the projection of a plane curve of degree d from a point,
/// which drops by one when the center lies on the curve.
pub fn projection_degree(curve_degree: u32, center_on_curve: bool) -> u32 {
    if center_on_curve {
        curve_degree - 1
    } else {
        curve_degree
    }
}

/// Local degree of the Prym map along the divisor of irreducible-base
/// covers: the fiber map is the projection of a plane cubic from a smooth
/// point on it.
pub fn local_degree_s1() -> u32 {
    projection_degree(3, true)
}

/// Local degree along the divisor of reducible-base covers: the fiber map is
/// the degree-8 forgetful map from the level-7 modular curve.
pub fn local_degree_s2() -> u64 {
    gamma0_index(7)
}

/// Total degree of the extended Prym map: the sum of the two local degrees.
pub fn total_degree() -> u64 {
    local_degree_s1() as u64 + local_degree_s2()
}

/// The two cusps of the level-7 modular curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspData {
    pub cusps: Vec<CuspInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspInfo {
    /// Ramification index of the cusp over j = infinity.
    pub width: u64,
    /// Number of rational components in the polygon degeneration.
    pub polygon: u32,
    /// Which boundary cover type the cusp parametrizes.
    pub cover_type: &'static str,
}

/// Cusp data at level 7: one etale cusp (width 1, the 1-gon, i.e. a nodal
/// cubic) and one totally ramified cusp (width 7, the 7-gon, a closed chain
/// of seven rational curves).
pub fn cusp_data(n: u64) -> Result<CuspData, ProfileError> {
    if n != 7 {
        return Err(ProfileError::UnsupportedLevel(n as u32));
    }
    Ok(CuspData {
        cusps: vec![
            CuspInfo {
                width: 1,
                polygon: 1,
                cover_type: "(iii)",
            },
            CuspInfo {
                width: 7,
                polygon: 7,
                cover_type: "(iv)",
            },
        ],
    })
}

/// The value of an exactly-integral rational, or None.
pub fn expect_integer(r: &Rational) -> Option<i64> {
    if r.denom().is_one() {
        use num_traits::ToPrimitive;
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn level7_curve_has_genus_zero() {
        let profile = level7_profile();
        assert_eq!(profile.ramification_mass(), 14);
        let g = riemann_hurwitz_genus(&profile, 0);
        assert!(g.is_zero());
    }

    #[test]
    fn unramified_degree7_over_genus1_stays_genus1() {
        let profile = RamProfile::new(7, vec![]).unwrap();
        assert_eq!(riemann_hurwitz_genus(&profile, 1), rat_int(1));
    }

    #[test]
    fn two_total_branch_points_over_genus1() {
        // degree 7 over genus 1, totally ramified at two points:
        // g = 1 + 7*0 + (6 + 6)/2 = 7
        let profile = RamProfile::new(7, vec![vec![7], vec![7]]).unwrap();
        assert_eq!(riemann_hurwitz_genus(&profile, 1), rat_int(7));
    }

    #[test]
    fn malformed_partition_is_rejected() {
        assert_eq!(
            RamProfile::new(8, vec![vec![3, 3, 1]]).unwrap_err(),
            ProfileError::BadPartition {
                index: 0,
                sum: 7,
                degree: 8
            }
        );
        assert_eq!(
            RamProfile::new(3, vec![vec![3, 0]]).unwrap_err(),
            ProfileError::ZeroPart { index: 0 }
        );
    }

    #[test]
    fn gamma0_index_values() {
        assert_eq!(gamma0_index(7), 8);
        assert_eq!(gamma0_index(1), 1);
        assert_eq!(gamma0_index(6), 12);
    }

    #[test]
    fn gamma0_index_matches_projective_line_oracle() {
        for n in 1..=30 {
            assert_eq!(gamma0_index(n), projective_line_count(n), "N = {n}");
        }
    }

    #[test]
    fn gamma0_index_multiplicative_on_coprimes() {
        for a in 1..=30u64 {
            for b in 1..=30u64 {
                if a.gcd(&b) == 1 && a * b <= 30 {
                    assert_eq!(gamma0_index(a * b), gamma0_index(a) * gamma0_index(b));
                }
            }
        }
    }

    #[test]
    fn local_degrees_and_total() {
        assert_eq!(local_degree_s1(), 2);
        assert_eq!(local_degree_s2(), 8);
        assert_eq!(total_degree(), 10);
        // contrast probe at level 3: 4 + 2 = 6
        assert_eq!(gamma0_index(3) + local_degree_s1() as u64, 6);
    }

    #[test]
    fn projection_degree_shapes() {
        assert_eq!(projection_degree(3, true), 2);
        assert_eq!(projection_degree(3, false), 3);
        for d in 2..=6 {
            assert_eq!(projection_degree(d, true), d - 1);
        }
    }

    #[test]
    fn cusp_widths_and_polygons() {
        let data = cusp_data(7).unwrap();
        let widths: Vec<u64> = data.cusps.iter().map(|c| c.width).collect();
        assert_eq!(widths, vec![1, 7]);
        assert_eq!(widths.iter().sum::<u64>(), gamma0_index(7));
        let seven_gon = data.cusps.iter().find(|c| c.polygon == 7).unwrap();
        assert_eq!(seven_gon.cover_type, "(iv)");
        let one_gon = data.cusps.iter().find(|c| c.polygon == 1).unwrap();
        assert_eq!(one_gon.cover_type, "(iii)");
        assert_eq!(
            cusp_data(11).unwrap_err(),
            ProfileError::UnsupportedLevel(11)
        );
    }

    #[test]
    fn ramification_balance_for_level7() {
        // 2g - 2 = deg * (2 * 0 - 2) + mass, i.e. -2 = -16 + 14
        let profile = level7_profile();
        let mass = profile.ramification_mass() as i64;
        assert_eq!(mass, 14);
        assert_eq!(-2, -2 * profile.degree as i64 + mass);
        let g = riemann_hurwitz_genus(&profile, 0);
        assert_eq!(expect_integer(&g), Some(0));
    }

    #[test]
    fn genus_integrality_detectable() {
        // an inconsistent profile yields a non-integral "genus"
        let profile = RamProfile::new(2, vec![vec![2]]).unwrap();
        let g = riemann_hurwitz_genus(&profile, 0);
        assert_eq!(g, rat(-1, 2));
        assert_eq!(expect_integer(&g), None);
    }
}
