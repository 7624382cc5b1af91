//! Named verification checks and the report structures for the CLI.
//!
//! Every check re-runs a computation from scratch and records a pass/fail
//! plus a human-readable detail line keyed by an anchor into the source
//! text, so the report can be read side by side with it. The two known
//! ambiguities (the middle column of the boundary matrix and the elliptic
//! ramification profiles) are reported with their resolutions instead of
//! being silently patched.

use std::time::Instant;

use serde::Serialize;

use crate::covers::{self, BaseType, CoverTypeLabel};
use crate::cyclo::{rat, CycloElem, Rational};
use crate::linalg::ExactMatrix;
use crate::modular;
use crate::mulmap::{self, MatrixVariant};
use crate::prymdiff::{self, SymCoords};
use crate::rng::SplitMix64;
use crate::shimura::{self, SignatureProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    ReportedAmbiguity,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_anchor: String,
    pub status: CheckStatus,
    pub details: String,
    pub elapsed_ms: u64,
}

impl CheckResult {
    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

fn check(id: &str, anchor: &str, body: impl FnOnce() -> (bool, String)) -> CheckResult {
    let start = Instant::now();
    let (ok, details) = body();
    CheckResult {
        id: id.to_string(),
        paper_anchor: anchor.to_string(),
        status: if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        details,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn ambiguity(id: &str, anchor: &str, details: String) -> CheckResult {
    CheckResult {
        id: id.to_string(),
        paper_anchor: anchor.to_string(),
        status: CheckStatus::ReportedAmbiguity,
        details,
        elapsed_ms: 0,
    }
}

/// Number of cases run by each randomized property check.
pub const PROPERTY_CASES: usize = 200;

fn random_cyclo(rng: &mut SplitMix64) -> CycloElem {
    let coords: Vec<Rational> = (0..6)
        .map(|_| {
            let numer = rng.range_i64(-9, 9);
            let denom = rng.range_i64(1, 4);
            rat(numer, denom)
        })
        .collect();
    CycloElem::new(7, coords).expect("six coordinates")
}

fn random_nonzero_cyclo(rng: &mut SplitMix64) -> CycloElem {
    loop {
        let x = random_cyclo(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn shimura_suite(_seed: u64) -> Vec<CheckResult> {
    vec![
        check("shimura-27-dims", "Prop 2.1", || {
            let e = shimura::signature_dims(SignatureProblem::degree7_genus2());
            let dims: Vec<u64> = e.dims.iter().copied().collect();
            let ok = dims == vec![0, 1, 2, 3]
                && e.max == 3
                && e.maximizers == vec![vec![(1, 1), (1, 1), (1, 1)]];
            (
                ok,
                format!(
                    "(2,7): max dim {}; dims {{0,1,2,3}}; equality only at r=s=1",
                    e.max
                ),
            )
        }),
        check("shimura-26-dims", "Remark on (2,6)", || {
            let e = shimura::signature_dims(SignatureProblem::degree6_genus2());
            let dims: Vec<u64> = e.dims.iter().copied().collect();
            let ok = dims == vec![0, 4, 6] && shimura::degree6_dimension_mismatch();
            (
                ok,
                "(2,6): {0,4,6}; dimension 3 is not achievable".to_string(),
            )
        }),
        check("shimura-max-closed-form", "Eq. (1.5)", || {
            let mut ok = true;
            for e0 in 1..=4u32 {
                for m in 1..=8u32 {
                    let e = shimura::signature_dims(SignatureProblem::new(e0, m));
                    ok &= e.max == e0 as u64 * (m as u64 / 2) * (m as u64).div_ceil(2);
                }
            }
            (
                ok,
                "max sum(r s) = e0 floor(m/2) ceil(m/2) on e0 <= 4, m <= 8".to_string(),
            )
        }),
        check("shimura-dimension-match", "Prop 2.1", || {
            let e = shimura::signature_dims(SignatureProblem::degree7_genus2());
            let r = shimura::dim_cover_space(2, 7).expect("genus 2");
            (
                e.max as u32 == r && r == 3,
                format!("max dim {} equals dim of the covering space {}", e.max, r),
            )
        }),
    ]
}

pub fn detsweep_suite(seed: u64) -> Vec<CheckResult> {
    let report = mulmap::verify_det_identity();
    let mut out = vec![
        ambiguity(
            "detsweep-variant-ambiguity",
            "Thm 5.2",
            format!(
                "displayed middle column differs from the literal section product \
                 (columns 1 and 3 agree); det(printed) = -det(derived); \
                 the {} variant satisfies det A = 7F and is used for the sweep",
                report.authoritative
            ),
        ),
        check("detsweep-identity-symbolic", "Thm 5.2", || {
            let ok = report.printed_symbolic
                && !report.derived_symbolic
                && report.printed_is_minus_derived
                && report.middle_columns_differ
                && report.outer_columns_agree;
            (
                ok,
                "det A(printed) = 7F exactly in the quotient ring".to_string(),
            )
        }),
        check("detsweep-identity-49-points", "Thm 5.2", || {
            (
                report.printed_all_points,
                "det A = 7F at all 49 pairs of 7-th roots of unity".to_string(),
            )
        }),
        check("detsweep-vanishing-pattern", "Thm 5.2", || {
            let sweep = mulmap::vanishing_sweep();
            let nonzero = sweep.iter().flatten().filter(|&&x| x).count();
            let ok = sweep == mulmap::expected_pattern() && nonzero == 12;
            (
                ok,
                format!(
                    "det A nonzero exactly at b = 3a, 5a with a, b nonzero \
                     ({nonzero} of 49 cells)\n{}",
                    mulmap::render_sweep(&sweep)
                ),
            )
        }),
        check("detsweep-degenerate-loci", "Thm 5.2", || {
            let d = mulmap::det_of(report.authoritative);
            let mut ok = true;
            for t in 0..7 {
                ok &= d.eval(t, t).is_zero() && d.eval(0, t).is_zero() && d.eval(t, 0).is_zero();
            }
            (
                ok,
                "det A vanishes on c1 = 1, c2 = 1 and c1 = c2".to_string(),
            )
        }),
        check("detsweep-det-eval-commute", "Thm 5.2", || {
            let mut ok = true;
            for v in [MatrixVariant::Printed, MatrixVariant::Derived] {
                for a in 0..7 {
                    for b in 0..7 {
                        ok &= mulmap::det_eval(v, a, b) == mulmap::eval_then_det(v, a, b);
                    }
                }
            }
            (
                ok,
                "determinant commutes with evaluation on both variants".to_string(),
            )
        }),
        check("detsweep-swap-symmetry", "Thm 5.2", || {
            let d = mulmap::det_of(report.authoritative);
            let sweep = mulmap::vanishing_sweep();
            let mut ok = d.swap_vars() == d.negated();
            for a in 0..7 {
                for b in 0..7 {
                    ok &= sweep[a][b] == sweep[b][a];
                }
            }
            // the slopes surviving in row a = 1 must be inverse mod 7
            let slopes: Vec<usize> = (1..7).filter(|&b| sweep[1][b]).collect();
            ok &= slopes == vec![3, 5] && (slopes[0] * slopes[1]) % 7 == 1;
            (
                ok,
                "c1 <-> c2 negates det; sweep symmetric; 3 and 5 inverse mod 7".to_string(),
            )
        }),
    ];
    out.push(check("detsweep-rank-nullity-random", "Thm 5.2", || {
        let mut rng = SplitMix64::new(seed ^ 0x11);
        let mut ok = true;
        for _ in 0..PROPERTY_CASES {
            let rows = 1 + rng.below(4) as usize;
            let cols = 1 + rng.below(4) as usize;
            let m = ExactMatrix::from_fn(rows, cols, |_, _| random_cyclo(&mut rng));
            let kernel = m.kernel_basis();
            ok &= m.rank() + kernel.len() == cols;
            for v in &kernel {
                ok &= m.apply(v).expect("sizes match").iter().all(|x| x.is_zero());
            }
        }
        (
            ok,
            format!("rank + kernel dimension = columns on {PROPERTY_CASES} random matrices"),
        )
    }));
    out.push(check(
        "detsweep-det-multiplicative-random",
        "Thm 5.2",
        || {
            let mut rng = SplitMix64::new(seed ^ 0x12);
            let mut ok = true;
            for _ in 0..PROPERTY_CASES {
                let n = 1 + rng.below(3) as usize;
                let a = ExactMatrix::from_fn(n, n, |_, _| random_cyclo(&mut rng));
                let b = ExactMatrix::from_fn(n, n, |_, _| random_cyclo(&mut rng));
                let prod = a.matmul(&b).expect("square");
                let lhs = prod.det().expect("square");
                let rhs = a
                    .det()
                    .expect("square")
                    .checked_mul(&b.det().expect("square"));
                ok &= lhs == rhs.expect("same conductor");
            }
            (
                ok,
                format!("det(MN) = det(M) det(N) on {PROPERTY_CASES} random pairs"),
            )
        },
    ));
    out
}

pub fn differentials_suite(seed: u64) -> Vec<CheckResult> {
    let mut out = vec![
        check("diff-eigenbasis", "Lemma (basis)", || {
            let mut ok = true;
            for i in 0..=6usize {
                let v = prymdiff::big_omega(i).expect("in range");
                let eig = v.scale(&CycloElem::zeta_pow(7, i as i64));
                ok &= prymdiff::sigma_pullback(&v) == eig;
            }
            let rows: Vec<Vec<CycloElem>> = (1..=6)
                .map(|i| prymdiff::big_omega(i).expect("in range").coords().to_vec())
                .collect();
            ok &= ExactMatrix::from_rows(rows).expect("6x7").rank() == 6;
            (
                ok,
                "sigma*(Omega_i) = rho^i Omega_i for i = 0..6; Omega_1..Omega_6 independent"
                    .to_string(),
            )
        }),
        check("diff-psi-expansions", "Prop codifDiv", || {
            let cases: [(usize, [i64; 7]); 3] = [
                (1, [0, 6, 5, 4, 3, 2, 1]),
                (2, [0, 5, 3, 1, 6, 4, 2]),
                (3, [0, 4, 1, 5, 2, 6, 3]),
            ];
            let mut ok = true;
            for (i, powers) in cases {
                let e = prymdiff::expand_pair(i).expect("in range");
                let expected: Vec<CycloElem> =
                    powers.iter().map(|&k| CycloElem::zeta_pow(7, k)).collect();
                ok &= e.psi_coeffs == expected;
            }
            (
                ok,
                "the three displayed psi expansions hold exactly".to_string(),
            )
        }),
        check("diff-kernel", "Prop codifDiv", || {
            let kernel = prymdiff::kernel_of_phi();
            let mut ok = kernel.len() == 2 && prymdiff::phi_rank() == 1;
            for v in &kernel {
                ok &= prymdiff::phi_functional(v).is_zero();
                ok &= prymdiff::restriction_value(v).is_zero();
            }
            // kernel spans the plane a + b + c = 0
            let to_row = |s: &SymCoords| vec![s.a.clone(), s.b.clone(), s.c.clone()];
            let mut rows: Vec<Vec<CycloElem>> = kernel.iter().map(to_row).collect();
            rows.push(to_row(&SymCoords::from_ints(1, -1, 0)));
            rows.push(to_row(&SymCoords::from_ints(1, 0, -1)));
            ok &= ExactMatrix::from_rows(rows).expect("4x3").rank() == 2;
            ok &= !prymdiff::phi_functional(&SymCoords::from_ints(1, 1, 1)).is_zero();
            (
                ok,
                "kernel of phi = {a + b + c = 0}: dimension 2, rank 1".to_string(),
            )
        }),
    ];
    out.push(check("diff-grouped-coeffs-random", "Prop codifDiv", || {
        let mut rng = SplitMix64::new(seed ^ 0x21);
        let mut ok = true;
        for _ in 0..PROPERTY_CASES {
            let s = SymCoords {
                a: random_cyclo(&mut rng),
                b: random_cyclo(&mut rng),
                c: random_cyclo(&mut rng),
            };
            let g = prymdiff::phi_grouped_coeffs(&s);
            let functional = prymdiff::phi_functional(&s);
            ok &= g.d0 == functional;
            let sum = &(&g.d[0] + &g.d[1]) + &g.d[2];
            ok &= sum == functional.negated();
            ok &= s.psi_coefficients()[0] == functional;
        }
        (
            ok,
            format!(
                "psi_1 coefficient is a+b+c and the three brackets sum to -(a+b+c) \
                 on {PROPERTY_CASES} random triples"
            ),
        )
    }));
    out.push(check("diff-field-axioms-random", "Prop codifDiv", || {
        let mut rng = SplitMix64::new(seed ^ 0x22);
        let mut ok = true;
        for _ in 0..PROPERTY_CASES {
            let x = random_cyclo(&mut rng);
            let y = random_cyclo(&mut rng);
            let z = random_cyclo(&mut rng);
            ok &= &(&x + &y) + &z == &x + &(&y + &z);
            ok &= &(&x * &y) * &z == &x * &(&y * &z);
            ok &= &x * &(&y + &z) == &(&x * &y) + &(&x * &z);
            ok &= &x + &y == &y + &x;
            ok &= &x * &y == &y * &x;
            let nz = random_nonzero_cyclo(&mut rng);
            ok &= &nz * &nz.inv().expect("nonzero") == CycloElem::one(7);
        }
        (
            ok,
            format!("field axioms on {PROPERTY_CASES} random triples over Q(zeta_7)"),
        )
    }));
    out.push(check("diff-galois-composition-random", "Prop 2.1", || {
        let mut rng = SplitMix64::new(seed ^ 0x23);
        let mut ok = true;
        for _ in 0..PROPERTY_CASES {
            let x = random_cyclo(&mut rng);
            let k = rng.range_i64(1, 6);
            let l = rng.range_i64(1, 6);
            let lhs = x.galois(k).expect("coprime").galois(l).expect("coprime");
            let rhs = x.galois((k * l).rem_euclid(7)).expect("coprime");
            ok &= lhs == rhs;
            ok &= x.galois(1).expect("coprime") == x;
        }
        (
            ok,
            format!("galois composition law on {PROPERTY_CASES} random elements"),
        )
    }));
    out
}

pub fn covers_suite(seed: u64) -> Vec<CheckResult> {
    let catalog = covers::fiber_catalog();
    let mut out = vec![
        check("covers-hurwitz-genus", "Lemma 3.1", || {
            let ok = covers::cover_arith_genus(2, 0) == 8
                && covers::cover_arith_genus(2, 1) == 11
                && covers::hurwitz_cover_genus(1, 0, 1) == 7
                && covers::hurwitz_cover_genus(1, 0, 0) == 1;
            (
                ok,
                "p_a of the cover is 8 for genus 2 with no fixed points".to_string(),
            )
        }),
        check("covers-prym-dimension", "Prop 2.2, Prop 2.3", || {
            let mut ok = covers::prym_dim(2).expect("genus 2") == 6;
            ok &= covers::polarization_type(2).expect("genus 2") == vec![1, 1, 1, 1, 1, 7];
            for g in 2..=5u32 {
                let t = covers::polarization_type(g).expect("genus >= 2");
                ok &= t.len() as u32 == covers::prym_dim(g).expect("genus >= 2");
                ok &= t.iter().map(|&x| x as u64).product::<u64>() == 7u64.pow(g - 1);
            }
            (
                ok,
                "dim P = 6 with polarization type (1,1,1,1,1,7)".to_string(),
            )
        }),
        check("covers-star-star-on-survivors", "Lemma 3.1", || {
            let mut ok = true;
            let mut survivors = 0;
            for b in BaseType::all() {
                for class in covers::classify_fiber(b) {
                    survivors += 1;
                    let c = &class.sample;
                    ok &= covers::check_star_star(&c.counts);
                    let (dt7, dt1) = covers::torus_dims(&c.counts);
                    ok &= dt7 == dt1;
                    ok &= dt7 == c.graph.betti1();
                    ok &= dt1 == b.dual_graph().betti1();
                    ok &= c.graph.arithmetic_genus() == 8;
                }
            }
            ok &= survivors == 4;
            (
                ok,
                "every surviving cover satisfies r = 0, comp1 = n1, equal torus \
                 dimensions and p_a = 8"
                    .to_string(),
            )
        }),
        check("covers-fiber-table", "Thm 6.3", || {
            let expected: [(BaseType, &[CoverTypeLabel]); 7] = [
                (BaseType::Smooth, &[]),
                (BaseType::IrreducibleOneNode, &[CoverTypeLabel::I]),
                (BaseType::RationalTwoNodes, &[]),
                (BaseType::TwoElliptic, &[CoverTypeLabel::II]),
                (
                    BaseType::EllipticPlusNodalRational,
                    &[CoverTypeLabel::III, CoverTypeLabel::IV],
                ),
                (BaseType::TwoNodalRational, &[]),
                (BaseType::TwoRationalThreePoints, &[]),
            ];
            let mut ok = true;
            for (base, want) in expected {
                let got: Vec<CoverTypeLabel> = covers::classify_fiber(base)
                    .iter()
                    .map(|c| c.label)
                    .collect();
                ok &= got == want;
            }
            (
                ok,
                "4 cover types from 3 of the 7 stable base types; the other 4 bases \
                 admit none"
                    .to_string(),
            )
        }),
        check("covers-uniqueness-and-divisors", "Prop 6.4", || {
            use covers::Parametrization;
            let mut ok = catalog
                .class(CoverTypeLabel::III)
                .map(|c| c.iso_classes == 1)
                .unwrap_or(false);
            ok &= catalog
                .class(CoverTypeLabel::IV)
                .map(|c| c.iso_classes == 1)
                .unwrap_or(false);
            ok &= CoverTypeLabel::I.parametrization() == Parametrization::Curve;
            ok &= CoverTypeLabel::II.parametrization() == Parametrization::EllipticWithSubgroup;
            ok &= CoverTypeLabel::III.parametrization() == Parametrization::UniquePoint;
            ok &= CoverTypeLabel::IV.parametrization() == Parametrization::UniquePoint;
            ok &= catalog.s1 == vec![CoverTypeLabel::I, CoverTypeLabel::IV];
            ok &= catalog.s2 == vec![CoverTypeLabel::II, CoverTypeLabel::III, CoverTypeLabel::IV];
            ok &= catalog.s1_intersect_s2() == vec![CoverTypeLabel::IV];
            (
                ok,
                "types (iii), (iv) unique; (i) moves in a curve, (ii) in pairs \
                 (elliptic, order-7 subgroup); S1 = {(i),(iv)}, S2 = {(ii),(iii),(iv)}, \
                 meeting in (iv)"
                    .to_string(),
            )
        }),
        check("covers-torsion-counts", "Thm 6.3 setup", || {
            let ok = covers::diagonal_torsion_order(7) == 49
                && covers::order7_subgroup_count_s7() == 120
                && covers::order7_subgroup_count_zz7_squared() == 8;
            (
                ok,
                "polarization kernel has 49 points; S_7 has 120 order-7 subgroups; \
                 (Z/7)^2 has 8"
                    .to_string(),
            )
        }),
    ];
    out.push(check(
        "covers-fundamental-subgraph-random",
        "Lemma 3.3",
        || {
            let mut rng = SplitMix64::new(seed ^ 0x31);
            let mut ok = true;
            for _ in 0..PROPERTY_CASES {
                let (graph, sigma) = covers::random_sigma_symmetric_graph(&mut rng, 3);
                match covers::fundamental_subgraph(&graph, &sigma) {
                    Ok(s) => {
                        use std::collections::BTreeSet;
                        let set: BTreeSet<usize> = s.iter().copied().collect();
                        let image: BTreeSet<usize> =
                            s.iter().map(|&v| sigma.apply_vertex(v)).collect();
                        ok &= set.is_disjoint(&image);
                        let mut union = set.clone();
                        let mut cur: Vec<usize> = s.clone();
                        for _ in 0..6 {
                            cur = cur.iter().map(|&v| sigma.apply_vertex(v)).collect();
                            union.extend(cur.iter().copied());
                        }
                        ok &= union.len() == graph.num_vertices();
                    }
                    Err(_) => ok = false,
                }
            }
            (
                ok,
                format!(
                    "connected fundamental domain found and verified on {PROPERTY_CASES} \
                 random symmetric graphs"
                ),
            )
        },
    ));
    out
}

pub fn modular_suite(_seed: u64) -> Vec<CheckResult> {
    vec![
        check(
            "modular-gamma0-index",
            "degree of the forgetful map",
            || {
                let mut ok = modular::gamma0_index(7) == 8;
                for n in 1..=30 {
                    ok &= modular::gamma0_index(n) == modular::projective_line_count(n);
                }
                (
                    ok,
                    "index of Gamma_0(7) is 8, matching the P^1(Z/N) count for N <= 30".to_string(),
                )
            },
        ),
        ambiguity(
            "modular-profile-ambiguity",
            "genus of the level-7 curve",
            "the ramification over j = 0 and j = 1728 is stated as degree 4 per fibre; \
             profiles (3,3,1,1) and (2,2,2,2) from the elliptic-point counts nu_3 = 2, \
             nu_2 = 0 are used and checked against the genus"
                .to_string(),
        ),
        check("modular-level7-genus", "genus of the level-7 curve", || {
            let profile = modular::level7_profile();
            let g = modular::riemann_hurwitz_genus(&profile, 0);
            let ok = modular::expect_integer(&g) == Some(0) && profile.ramification_mass() == 14;
            (
                ok,
                "the level-7 modular curve has genus 0; ramification mass 14".to_string(),
            )
        }),
        check("modular-cusps", "Neron polygons", || {
            let data = modular::cusp_data(7).expect("level 7");
            let widths: Vec<u64> = data.cusps.iter().map(|c| c.width).collect();
            let mut ok = widths == vec![1, 7];
            ok &= widths.iter().sum::<u64>() == modular::gamma0_index(7);
            // the polygon sizes match the rational cycles in the cover graphs
            let catalog = covers::fiber_catalog();
            for cusp in &data.cusps {
                let label = match cusp.cover_type {
                    "(iii)" => CoverTypeLabel::III,
                    _ => CoverTypeLabel::IV,
                };
                let graph = &catalog.class(label).expect("catalogued").sample.graph;
                let rational_cycle = graph
                    .edges()
                    .iter()
                    .filter(|&&(u, v)| graph.genus(u) == 0 && graph.genus(v) == 0)
                    .count() as u32;
                ok &= rational_cycle == cusp.polygon;
            }
            (
                ok,
                "cusp widths {1, 7}; the 1-gon matches type (iii), the 7-gon type (iv)".to_string(),
            )
        }),
        check(
            "modular-local-degrees",
            "local degrees along the boundary",
            || {
                let ok = modular::local_degree_s1() == 2
                    && modular::local_degree_s2() == 8
                    && modular::projection_degree(3, false) == 3;
                (
                    ok,
                    "projecting a cubic from a point on it has degree 2; the forgetful map \
                 degree 8"
                        .to_string(),
                )
            },
        ),
        check("modular-total-degree", "Thm 1.1", || {
            (
                modular::total_degree() == 10,
                format!("total degree {} = 2 + 8", modular::total_degree()),
            )
        }),
    ]
}

pub const SUITE_NAMES: [&str; 5] = ["shimura", "detsweep", "differentials", "covers", "modular"];

/// The checks for one subcommand; None for an unknown name.
pub fn run_suite(name: &str, seed: u64) -> Option<Vec<CheckResult>> {
    match name {
        "shimura" => Some(shimura_suite(seed)),
        "detsweep" => Some(detsweep_suite(seed)),
        "differentials" => Some(differentials_suite(seed)),
        "covers" => Some(covers_suite(seed)),
        "modular" => Some(modular_suite(seed)),
        "all" => {
            let mut all = Vec::new();
            for suite in SUITE_NAMES {
                all.extend(run_suite(suite, seed).expect("known suite"));
            }
            Some(all)
        }
        _ => None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub ambiguities: usize,
    pub total_degree: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub subcommand: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

pub fn build_report(subcommand: &str, seed: u64) -> Option<Report> {
    let checks = run_suite(subcommand, seed)?;
    let summary = Summary {
        total: checks.len(),
        passed: checks
            .iter()
            .filter(|c| c.status == CheckStatus::Pass)
            .count(),
        failed: checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .count(),
        ambiguities: checks
            .iter()
            .filter(|c| c.status == CheckStatus::ReportedAmbiguity)
            .count(),
        total_degree: modular::total_degree(),
    };
    Some(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        subcommand: subcommand.to_string(),
        seed,
        checks,
        summary,
    })
}

/// Exit code contract: 0 all pass, 1 at least one failure.
pub fn exit_code(report: &Report) -> i32 {
    if report.summary.failed > 0 {
        1
    } else {
        0
    }
}

/// Plain-text rendering keyed by the anchors.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "prymcheck {} ({}, seed {})\n\n",
        report.version, report.subcommand, report.seed
    ));
    for c in &report.checks {
        let tag = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::ReportedAmbiguity => "note",
        };
        out.push_str(&format!("[{tag}] {} ({})\n", c.id, c.paper_anchor));
        for line in c.details.lines() {
            out.push_str(&format!("       {line}\n"));
        }
    }
    out.push_str(&format!(
        "\n{} checks: {} passed, {} failed, {} ambiguity notes\n",
        report.summary.total,
        report.summary.passed,
        report.summary.failed,
        report.summary.ambiguities
    ));
    out.push_str(&format!(
        "total degree of the Prym map: {}\n",
        report.summary.total_degree
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for name in SUITE_NAMES {
            let checks = run_suite(name, 7).expect("known suite");
            assert!(!checks.is_empty());
            for c in &checks {
                assert_ne!(
                    c.status,
                    CheckStatus::Fail,
                    "{} failed: {}",
                    c.id,
                    c.details
                );
            }
        }
    }

    #[test]
    fn check_ids_are_unique_in_full_report() {
        let report = build_report("all", 7).expect("known");
        let mut ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
        let before = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }

    #[test]
    fn report_summary_counts_match() {
        let report = build_report("all", 7).expect("known");
        assert_eq!(report.summary.total, report.checks.len());
        assert_eq!(report.summary.failed, 0);
        assert_eq!(report.summary.ambiguities, 2);
        assert_eq!(report.summary.total_degree, 10);
        assert_eq!(exit_code(&report), 0);
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(build_report("nonsense", 7).is_none());
    }

    #[test]
    fn exit_code_flags_failures() {
        let mut report = build_report("shimura", 7).expect("known");
        report.checks[0].status = CheckStatus::Fail;
        report.summary.failed = 1;
        assert_eq!(exit_code(&report), 1);
    }

    #[test]
    fn text_rendering_contains_required_lines() {
        let report = build_report("shimura", 7).expect("known");
        let text = render_text(&report);
        assert!(text.contains("(2,7): max dim 3"));
        assert!(text.contains("(2,6): {0,4,6}"));
        let sweep = build_report("detsweep", 7).expect("known");
        let text = render_text(&sweep);
        assert!(text.contains("12 of 49 cells"));
    }

    #[test]
    fn checks_are_deterministic_for_fixed_seed() {
        let a = build_report("all", 42).expect("known");
        let b = build_report("all", 42).expect("known");
        for (x, y) in a.checks.iter().zip(&b.checks) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.status, y.status);
            assert_eq!(x.details, y.details);
        }
    }
}
