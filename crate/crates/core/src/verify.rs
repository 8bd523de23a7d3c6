//! The verification suite behind `riglab verify-paper`: every worked
//! computation and property claim reproduced end to end, each as one
//! pass/fail check with a stable id.
//!
//! Checks never fail fast: errors are caught and reported as failures so a
//! single run always yields the full picture. All randomness flows from
//! the configured seed (parallel tasks get index-derived subseeds), so a
//! fixed config produces identical results regardless of scheduling.

use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::cyclo::{
    self, build_root_matrix, delta_full, delta_reduced, elimination_degree_bound, BoundVariant,
};
use crate::detideals::{
    crosscheck_elimination_routes_with, elimination_ideal_direct_with, patterns_of_size, Pattern,
};
use crate::error::Result;
use crate::exactla::{
    self, bareiss_rank, naive_gauss_rank, random_nonzero_rational, sample_param_point,
    sample_rank_variety, seeded_rng, MinorSpec, RationalMatrix,
};
use crate::groebner::{buchberger_with, spolys_reduce_to_zero, Caps, Ideal, SelectionStrategy};
use crate::polyring::{divide, Monomial, MonomialOrder, Polynomial, Rational, VarRegistry};
use crate::rigidity::{
    closure_member_with, family_instance, max_rigidity_certificate, rig_exact_with, CertOptions,
    CertTarget, DocumentedRigidity, FamilyKind, RigOptions,
};
use rand::Rng;
use std::sync::Arc;

/// Configuration for a verification run.
#[derive(Debug, Clone, Default)]
pub struct VerifyConfig {
    pub seed: u64,
    pub caps: Caps,
    /// Run only checks whose id contains this substring.
    pub only: Option<String>,
}

/// One executed check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: &'static str,
    pub description: &'static str,
    pub expected: &'static str,
    pub actual: String,
    pub passed: bool,
    pub runtime_ms: u128,
    pub notes: Vec<String>,
}

type CheckFn = fn(&VerifyConfig) -> Result<(String, bool, Vec<String>)>;

struct CheckSpec {
    id: &'static str,
    description: &'static str,
    expected: &'static str,
    run: CheckFn,
}

const CHECKS: &[CheckSpec] = &[
    CheckSpec {
        id: "ei-single-cell",
        description: "elimination ideal of the single-cell pattern at n=3, r=1 \
                      (reduced lex basis, five binomial generators)",
        expected: "x2*x6 - x3*x5; x2*x9 - x3*x8; x4*x8 - x5*x7; x4*x9 - x6*x7; x5*x9 - x6*x8",
        run: check_ei_single_cell,
    },
    CheckSpec {
        id: "ei-diagonal",
        description: "elimination ideal of the diagonal pattern at n=3, r=1 \
                      (a single cubic generator)",
        expected: "x2*x6*x7 - x3*x4*x8",
        run: check_ei_diagonal,
    },
    CheckSpec {
        id: "elimination-crosscheck",
        description: "direct and reduced elimination routes produce identical \
                      reduced bases for all size-1 and size-2 patterns and the \
                      diagonal at n=3, r=1",
        expected: "46/46 pattern routes agree",
        run: check_elimination_crosscheck,
    },
    CheckSpec {
        id: "semicontinuity-families",
        description: "exact rigidity of the semicontinuity example families \
                      (cross, perturbed cross, bordered-diagonal, perturbed \
                      bordered-diagonal)",
        expected: "cross draws 20/20 rig 2; crossn rig n-1 at n=3,4; perturbed 10/10 rig 1; \
                   maxrigid3 rig 4; maxrigid3-perturbed rig <= 3",
        run: check_semicontinuity_families,
    },
    CheckSpec {
        id: "prime-matrix",
        description: "the prime matrix has rigidity 4 at target rank 1 and is \
                      excluded from the closure at every size-3 pattern with an \
                      explicit separating generator",
        expected: "rig 4; 84/84 patterns excluded with separating generators",
        run: check_prime_matrix,
    },
    CheckSpec {
        id: "non-closedness",
        description: "the cross matrix needs two changes yet lies in the closure \
                      of the corner-fixable set, so the fixable set is not closed",
        expected: "rig 2; corner-pattern closure membership true",
        run: check_non_closedness,
    },
    CheckSpec {
        id: "dimension-formula",
        description: "Jacobian rank of the rank-r-plus-pattern parametrization \
                      equals n^2 - (n-r)^2 + k at 5 random points per (n, r, k)",
        expected: "50/50 points match the dimension formula",
        run: check_dimension_formula,
    },
    CheckSpec {
        id: "rank-sampler",
        description: "rank-variety sampler produces matrices of exactly the \
                      requested rank with an invertible selected block",
        expected: "100/100 samples have exact rank and invertible block",
        run: check_rank_sampler,
    },
    CheckSpec {
        id: "degree-bounds",
        description: "order-bound and elimination-degree-bound calculators give \
                      the exact stated integers and the strict bound chain holds \
                      for 3 <= n <= 8",
        expected: "3^36 = 150094635296999121; 2*3^18 = 774840978; reduced bound(3,1) = 387440172; \
                   chain holds for all 3 <= n <= 8, 1 <= r <= n-1",
        run: check_degree_bounds,
    },
    CheckSpec {
        id: "root-matrix-certificates",
        description: "maximal-rigidity certificates for root-of-unity matrices: \
                      the 3x3 matrix on the nine smallest primes >= 7 at r=1, and \
                      the 2x2 matrix on {5,7,11,13} via its determinant",
        expected: "84/84 size-3 patterns certified at n=3; determinant certified at n=2",
        run: check_root_matrix_certificates,
    },
    CheckSpec {
        id: "low-degree-nonvanishing",
        description: "random polynomials of total degree < 3 over one variable per \
                      prime in {5, 7} are always certified nonzero at primitive \
                      roots; the sharp degree case is rejected by precondition",
        expected: "100/100 certified; degree-bound 5 rejected",
        run: check_low_degree_nonvanishing,
    },
    CheckSpec {
        id: "kernel-properties",
        description: "arithmetic kernel property suites: ring axioms, division \
                      recombination, S-polynomial reduction on emitted bases, \
                      strategy-independent reduced bases, dual-route rank agreement",
        expected: "1000/1000 axiom triples; 500/500 recombinations; 8/8 bases; \
                   8/8 strategy-stable; 200/200 rank agreements",
        run: check_kernel_properties,
    },
];

/// Stable (id, description) listing of every check.
pub fn check_catalog() -> Vec<(&'static str, &'static str)> {
    CHECKS.iter().map(|c| (c.id, c.description)).collect()
}

/// Run the suite (optionally filtered by `config.only`), never failing fast.
pub fn run_all(config: &VerifyConfig) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .filter(|c| {
            config
                .only
                .as_ref()
                .is_none_or(|needle| c.id.contains(needle.as_str()))
        })
        .map(|c| {
            let start = Instant::now();
            let (actual, passed, notes) = match (c.run)(config) {
                Ok(t) => t,
                Err(e) => (format!("error: {e}"), false, Vec::new()),
            };
            CheckResult {
                id: c.id,
                description: c.description,
                expected: c.expected,
                actual,
                passed,
                runtime_ms: start.elapsed().as_millis(),
                notes,
            }
        })
        .collect()
}

fn sorted_texts(ideal: &Ideal) -> Vec<String> {
    let mut v: Vec<String> = ideal.generators().iter().map(ToString::to_string).collect();
    v.sort();
    v
}

fn check_ei_single_cell(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let ei = elimination_ideal_direct_with(3, 1, &Pattern::new([(0, 0)]), cfg.caps)?;
    let got = sorted_texts(&ei);
    let want = vec![
        "x2*x6 - x3*x5",
        "x2*x9 - x3*x8",
        "x4*x8 - x5*x7",
        "x4*x9 - x6*x7",
        "x5*x9 - x6*x8",
    ];
    let passed = got == want;
    Ok((got.join("; "), passed, Vec::new()))
}

fn check_ei_diagonal(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let ei = elimination_ideal_direct_with(3, 1, &Pattern::diagonal(3), cfg.caps)?;
    let got = sorted_texts(&ei);
    let passed = got == ["x2*x6*x7 - x3*x4*x8"];
    let notes = vec![
        "a superficially similar candidate x2*x6*x8 - x3*x4*x8 factors through x8 \
         and fails the dual-route cross-check; the computed generator does not"
            .to_string(),
    ];
    Ok((got.join("; "), passed, notes))
}

fn check_elimination_crosscheck(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let mut pats = patterns_of_size(3, 1);
    pats.extend(patterns_of_size(3, 2));
    pats.push(Pattern::diagonal(3));
    let total = pats.len();
    let agreements = pats
        .par_iter()
        .map(|p| crosscheck_elimination_routes_with(3, 1, p, cfg.caps))
        .collect::<Result<Vec<bool>>>()?;
    let ok = agreements.iter().filter(|&&b| b).count();
    Ok((
        format!("{ok}/{total} pattern routes agree"),
        ok == total && total == 46,
        Vec::new(),
    ))
}

fn cross_matrix(vals: &[Rational; 5]) -> Result<RationalMatrix> {
    let [a, b, c, d, e] = vals.clone();
    let zero = Rational::from_integer(0.into());
    RationalMatrix::from_rows(vec![
        vec![a, b, c],
        vec![d, zero.clone(), zero.clone()],
        vec![e, zero.clone(), zero],
    ])
}

fn check_semicontinuity_families(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let opts = RigOptions {
        caps: cfg.caps,
        ..RigOptions::default()
    };
    let mut rng = seeded_rng(cfg.seed.wrapping_add(40));
    let mut cross_ok = 0;
    for _ in 0..20 {
        let vals: [Rational; 5] = std::array::from_fn(|_| random_nonzero_rational(&mut rng));
        let m = cross_matrix(&vals)?;
        if rig_exact_with(&m, 1, &opts)?.value == 2 {
            cross_ok += 1;
        }
    }
    let mut crossn_vals = Vec::new();
    for n in [3usize, 4] {
        let f = family_instance(FamilyKind::CrossN, Some(n), None)?;
        crossn_vals.push((n, rig_exact_with(&f.matrix, 1, &opts)?.value));
    }
    let crossn_ok = crossn_vals.iter().all(|&(n, v)| v == n - 1);
    let mut perturbed_ok = 0;
    let half = Rational::new(1.into(), 2.into());
    for n in [3usize, 4] {
        for _ in 0..5 {
            let delta = loop {
                let d = random_nonzero_rational(&mut rng);
                if d != half {
                    break d;
                }
            };
            let f = family_instance(FamilyKind::CrossNPerturbed, Some(n), Some(delta))?;
            if rig_exact_with(&f.matrix, 1, &opts)?.value == 1 {
                perturbed_ok += 1;
            }
        }
    }
    let mr = family_instance(FamilyKind::MaxRigid3, None, None)?;
    let mr_value = rig_exact_with(&mr.matrix, 1, &opts)?.value;
    let mrp = family_instance(FamilyKind::MaxRigid3Perturbed, None, None)?;
    let mrp_value = rig_exact_with(&mrp.matrix, 1, &opts)?.value;
    let mrp_claim_holds = match mrp.documented {
        DocumentedRigidity::AtMost(bound) => mrp_value <= bound,
        DocumentedRigidity::Exact(v) => mrp_value == v,
    };
    let passed = cross_ok == 20
        && crossn_ok
        && perturbed_ok == 10
        && mr_value == 4
        && mrp_claim_holds;
    let actual = format!(
        "cross draws {cross_ok}/20 rig 2; crossn {}; perturbed {perturbed_ok}/10 rig 1; \
         maxrigid3 rig {mr_value}; maxrigid3-perturbed rig {mrp_value}",
        crossn_vals
            .iter()
            .map(|(n, v)| format!("rig {v} at n={n}"))
            .collect::<Vec<_>>()
            .join(", "),
    );
    Ok((actual, passed, Vec::new()))
}

fn check_prime_matrix(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let m = family_instance(FamilyKind::Primes3, None, None)?.matrix;
    let opts = RigOptions {
        caps: cfg.caps,
        ..RigOptions::default()
    };
    let value = rig_exact_with(&m, 1, &opts)?.value;
    let pats = patterns_of_size(3, 3);
    let total = pats.len();
    let exclusions = pats
        .par_iter()
        .map(|p| {
            let d = closure_member_with(&m, 1, p, cfg.caps)?;
            Ok(!d.in_closure && d.separating_generator.is_some())
        })
        .collect::<Result<Vec<bool>>>()?;
    let excluded = exclusions.iter().filter(|&&b| b).count();
    Ok((
        format!("rig {value}; {excluded}/{total} patterns excluded with separating generators"),
        value == 4 && excluded == total && total == 84,
        Vec::new(),
    ))
}

fn check_non_closedness(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let m = family_instance(FamilyKind::Cross3, None, None)?.matrix;
    let opts = RigOptions {
        caps: cfg.caps,
        ..RigOptions::default()
    };
    let value = rig_exact_with(&m, 1, &opts)?.value;
    let member = closure_member_with(&m, 1, &Pattern::new([(0, 0)]), cfg.caps)?;
    let passed = value == 2 && member.in_closure;
    Ok((
        format!(
            "rig {value}; corner-pattern closure membership {}",
            member.in_closure
        ),
        passed,
        vec![
            "one change never suffices, yet every generator of the corner elimination \
             ideal vanishes at the matrix: the fixable set is strictly inside its closure"
                .to_string(),
        ],
    ))
}

fn check_dimension_formula(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let mut cases: Vec<(usize, usize, usize)> = Vec::new();
    for k in 0..=3 {
        cases.push((3, 1, k));
        cases.push((4, 2, k));
    }
    for k in 0..=1 {
        cases.push((2, 1, k));
    }
    let mut matched = 0;
    let mut total = 0;
    let mut resamples = 0u32;
    for (case_idx, &(n, r, k)) in cases.iter().enumerate() {
        // First k cells of the bottom-right (n-r) x (n-r) block, row-major.
        let pattern = Pattern::new((0..k).map(|m| (r + m / (n - r), r + m % (n - r))));
        let expected_rank = n * n - (n - r) * (n - r) + k;
        for point in 0..5 {
            total += 1;
            let mut attempt = 0u64;
            let rank = loop {
                let seed = cfg
                    .seed
                    .wrapping_add(7000 + (case_idx as u64) * 100 + point * 10 + attempt);
                let p = sample_param_point(n, r, &pattern, seed)?;
                match exactla::jacobian_rank_at(n, r, &pattern, &p) {
                    Ok(rank) => break rank,
                    Err(_) if attempt < 50 => {
                        resamples += 1;
                        attempt += 1;
                    }
                    Err(e) => return Err(e),
                }
            };
            if rank == expected_rank {
                matched += 1;
            }
        }
    }
    Ok((
        format!("{matched}/{total} points match the dimension formula"),
        matched == total && total == 50,
        vec![format!("{resamples} resamples due to singular blocks")],
    ))
}

fn check_rank_sampler(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let combos: Vec<(usize, usize)> = [3usize, 4]
        .iter()
        .flat_map(|&n| (0..=n).map(move |s| (n, s)))
        .collect();
    let mut ok = 0;
    let mut rng = seeded_rng(cfg.seed.wrapping_add(8000));
    for i in 0..100u64 {
        let (n, s) = combos[(i as usize) % combos.len()];
        // A random strictly-increasing row/column selection for the pivot
        // block.
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut idx: Vec<usize> = (0..n).collect();
            for j in (1..n).rev() {
                idx.swap(j, rng.random_range(0..=j));
            }
            let mut sel = idx[..s].to_vec();
            sel.sort_unstable();
            sel
        };
        let spec = MinorSpec::new(pick(&mut rng), pick(&mut rng))?;
        let m = sample_rank_variety(n, s, &spec, cfg.seed.wrapping_add(8100 + i))?;
        let rank_ok = bareiss_rank(&m) == s;
        let block_ok = s == 0
            || bareiss_rank(&m.submatrix(spec.rows(), spec.cols())) == s;
        if rank_ok && block_ok {
            ok += 1;
        }
    }
    Ok((
        format!("{ok}/100 samples have exact rank and invertible block"),
        ok == 100,
        Vec::new(),
    ))
}

fn check_degree_bounds(_cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let full3 = delta_full(3)?;
    let reduced3 = delta_reduced(3)?;
    let bound31 = elimination_degree_bound(3, 1, BoundVariant::Reduced)?;
    let exact_ok = full3.to_string() == "3^36"
        && full3.value == BigUint::parse_bytes(b"150094635296999121", 10).unwrap()
        && reduced3.to_string() == "2*3^18"
        && reduced3.value == BigUint::from(774840978u64)
        && bound31 == BigUint::from(387440172u64);
    let mut chain_ok = true;
    for n in 3..=8usize {
        for r in 1..n {
            let rep = cyclo::bounds_report(n, r)?;
            chain_ok &= rep.full_below_delta && rep.reduced_below_delta;
        }
    }
    Ok((
        format!(
            "{full3} = {}; {reduced3} = {}; reduced bound(3,1) = {bound31}; chain {}",
            full3.value,
            reduced3.value,
            if chain_ok { "holds" } else { "FAILS" }
        ),
        exact_ok && chain_ok,
        Vec::new(),
    ))
}

fn check_root_matrix_certificates(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let opts = CertOptions {
        caps: cfg.caps,
        max_attempts: 8,
        seed: cfg.seed,
    };
    let primes9 = cyclo::first_primes_at_least(7, 9);
    let m3 = build_root_matrix(3, &primes9, false)?;
    let rep3 = max_rigidity_certificate(CertTarget::Roots(&m3), 1, &opts)?;
    let m2 = build_root_matrix(2, &[5, 7, 11, 13], false)?;
    let rep2 = max_rigidity_certificate(CertTarget::Roots(&m2), 1, &opts)?;
    let det_cert = rep2
        .patterns
        .first()
        .map(|p| p.certified && p.generator.as_deref() == Some("x1*x4 - x2*x3"))
        .unwrap_or(false);
    let passed = rep3.all_certified
        && rep3.total == 84
        && rep3.implied_rigidity == Some(4)
        && rep2.total == 1
        && det_cert
        && rep2.implied_rigidity == Some(1);
    let actual = format!(
        "{}/{} size-3 patterns certified at n=3; determinant {} at n=2",
        rep3.certified,
        rep3.total,
        if det_cert { "certified" } else { "NOT certified" }
    );
    let notes = vec![format!(
        "desk scale only: these primes ({}..{}) are far below the sufficient root \
         order {} = {}, so this certifies these specific matrices rather than \
         instantiating the general construction",
        primes9.first().unwrap(),
        primes9.last().unwrap(),
        delta_full(3)?,
        delta_full(3)?.value
    )];
    Ok((actual, passed, notes))
}

fn check_low_degree_nonvanishing(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let report = cyclo::low_degree_nonvanishing_suite(&[5, 7], 3, 100, cfg.seed)?;
    let sharp_rejected = cyclo::low_degree_nonvanishing_suite(&[5, 7], 5, 1, 0).is_err();
    let passed = report.certified == 100 && report.trials == 100 && sharp_rejected;
    let mut notes = vec![
        "degree bound 5 would admit 1 + x + x^2 + x^3 + x^4, which vanishes at a \
         fifth root; the precondition rejects it"
            .to_string(),
    ];
    if !report.failures.is_empty() {
        notes.push(format!("inconclusive draws: {}", report.failures.join(" | ")));
    }
    Ok((
        format!(
            "{}/{} certified; degree-bound 5 {}",
            report.certified,
            report.trials,
            if sharp_rejected { "rejected" } else { "ACCEPTED" }
        ),
        passed,
        notes,
    ))
}

fn random_poly<R: Rng>(
    registry: &Arc<VarRegistry>,
    order: MonomialOrder,
    rng: &mut R,
) -> Polynomial {
    let n_vars = registry.len();
    let terms: Vec<(Rational, Monomial)> = (0..rng.random_range(0..=5))
        .map(|_| {
            (
                Rational::from_integer(rng.random_range(-9i64..=9).into()),
                Monomial::from_exps((0..n_vars).map(|_| rng.random_range(0..4)).collect()),
            )
        })
        .collect();
    Polynomial::from_terms(Arc::clone(registry), order, terms).expect("valid terms")
}

fn check_kernel_properties(cfg: &VerifyConfig) -> Result<(String, bool, Vec<String>)> {
    let reg = VarRegistry::new(["x", "y", "z"])?;
    let mut rng = seeded_rng(cfg.seed.wrapping_add(12_000));
    let orders = [MonomialOrder::Lex, MonomialOrder::GrevLex];

    let mut axioms_ok = 0;
    for i in 0..1000 {
        let order = orders[i % 2];
        let f = random_poly(&reg, order, &mut rng);
        let g = random_poly(&reg, order, &mut rng);
        let h = random_poly(&reg, order, &mut rng);
        let assoc_add = &(&f + &g) + &h == &f + &(&g + &h);
        let comm_add = &f + &g == &g + &f;
        let comm_mul = &f * &g == &g * &f;
        let distrib = &f * &(&g + &h) == &(&f * &g) + &(&f * &h);
        let neg = &f - &g == &f + &(-&g);
        if assoc_add && comm_add && comm_mul && distrib && neg {
            axioms_ok += 1;
        }
    }

    let mut recombine_ok = 0;
    for i in 0..500 {
        let order = orders[i % 2];
        let f = random_poly(&reg, order, &mut rng);
        let divisors: Vec<Polynomial> = (0..rng.random_range(1..=3))
            .map(|_| loop {
                let d = random_poly(&reg, order, &mut rng);
                if !d.is_zero() {
                    break d;
                }
            })
            .collect();
        let (quotients, rem) = divide(&f, &divisors, order)?;
        let mut recombined = rem.clone();
        for (q, d) in quotients.iter().zip(&divisors) {
            recombined = &recombined + &(q * d);
        }
        if recombined == f {
            recombine_ok += 1;
        }
    }

    let seed_ideals: Vec<Ideal> = (0..8)
        .map(|_| {
            let gens: Vec<Polynomial> = (0..3)
                .map(|_| loop {
                    let g = random_poly(&reg, MonomialOrder::Lex, &mut rng);
                    if !g.is_zero() {
                        break g;
                    }
                })
                .collect();
            Ideal::new(Arc::clone(&reg), gens)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sred_ok = 0;
    let mut stable_ok = 0;
    for (i, ideal) in seed_ideals.iter().enumerate() {
        let order = orders[i % 2];
        let gb = buchberger_with(ideal, order, cfg.caps, SelectionStrategy::MinLcmDegree)?;
        if spolys_reduce_to_zero(&gb)? {
            sred_ok += 1;
        }
        let gb2 = buchberger_with(ideal, order, cfg.caps, SelectionStrategy::FirstCome)?;
        if gb.basis() == gb2.basis() {
            stable_ok += 1;
        }
    }

    let mut rank_ok = 0;
    for _ in 0..200 {
        let n_rows = rng.random_range(1..=6);
        let n_cols = rng.random_range(1..=6);
        let mut m = exactla::random_matrix(n_rows, n_cols, &mut rng);
        // Mix in singular structure: sometimes copy one row onto another.
        if n_rows >= 2 && rng.random_range(0..3) == 0 {
            let src = rng.random_range(0..n_rows);
            let dst = (src + 1) % n_rows;
            for j in 0..n_cols {
                m.set(dst, j, m.get(src, j).clone());
            }
        }
        if bareiss_rank(&m) == naive_gauss_rank(&m) {
            rank_ok += 1;
        }
    }

    let passed = axioms_ok == 1000
        && recombine_ok == 500
        && sred_ok == 8
        && stable_ok == 8
        && rank_ok == 200;
    Ok((
        format!(
            "{axioms_ok}/1000 axiom triples; {recombine_ok}/500 recombinations; \
             {sred_ok}/8 bases; {stable_ok}/8 strategy-stable; {rank_ok}/200 rank agreements"
        ),
        passed,
        Vec::new(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_lists_twelve_stable_ids() {
        let ids: Vec<&str> = check_catalog().iter().map(|(id, _)| *id).collect();
        assert_eq!(ids.len(), 12);
        assert!(ids.contains(&"ei-single-cell"));
        assert!(ids.contains(&"semicontinuity-families"));
        assert!(ids.contains(&"kernel-properties"));
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 12, "ids are unique");
    }

    #[test]
    fn only_filter_selects_substring_matches() {
        let cfg = VerifyConfig {
            only: Some("semicontinuity".into()),
            ..VerifyConfig::default()
        };
        // Don't run it (slow); just check the filter logic via the catalog.
        let matching: Vec<_> = CHECKS
            .iter()
            .filter(|c| c.id.contains(cfg.only.as_deref().unwrap()))
            .collect();
        assert_eq!(matching.len(), 1);
        assert_eq!(matching[0].id, "semicontinuity-families");
    }

    #[test]
    fn fast_checks_pass_with_default_config() {
        let cfg = VerifyConfig {
            only: Some("degree-bounds".into()),
            ..VerifyConfig::default()
        };
        let results = run_all(&cfg);
        assert_eq!(results.len(), 1);
        assert!(results[0].passed, "{}", results[0].actual);
        let cfg2 = VerifyConfig {
            only: Some("non-closedness".into()),
            ..VerifyConfig::default()
        };
        let results2 = run_all(&cfg2);
        assert!(results2[0].passed, "{}", results2[0].actual);
    }

    #[test]
    fn reports_are_reproducible_for_a_fixed_seed() {
        let cfg = VerifyConfig {
            only: Some("rank-sampler".into()),
            seed: 5,
            ..VerifyConfig::default()
        };
        let a = run_all(&cfg);
        let b = run_all(&cfg);
        assert_eq!(a[0].actual, b[0].actual);
        assert_eq!(a[0].passed, b[0].passed);
        assert!(a[0].passed, "{}", a[0].actual);
    }
}
