//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hookbranch::bijection::{
    check_exhaustive, demo_arrangement, enumerate_f, phi_inverse, phi_trace, VariantKind,
};
use hookbranch::hook_walks::{
    closed_form_distribution, compare_with_exact, monte_carlo_estimate, region_probability,
    terminal_probability, uniform_corollary_probability, Conditioning, Region, WeightSystem,
};
use hookbranch::identities::{
    complement_equivalence_check, cwbr_lhs, cwbr_rhs, verify, ComplementFamily, IdentityId,
    VerifyMode, VerifyOptions,
};
use hookbranch::partition::{partitions_of, partitions_up_to};
use hookbranch::polynomial::Polynomial;
use hookbranch::syt::{
    check_new_recursions, check_sum_squares, content_statistics, syt_count, RecursionStatus,
};
use hookbranch::{Cell, Partition};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{p, random_weights, syt_by_linear_extensions};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn ac1() -> Outcome {
    let t = Instant::now();
    let f = syt_count(&p("322"));
    let dt = t.elapsed();
    outcome(
        f == BigUint::from(21u32) && dt < Duration::from_millis(1),
        format!(
            "syt_count(322) = {f} in {:.3} ms (limit 1 ms)",
            dt.as_secs_f64() * 1e3
        ),
    )
}

fn ac2() -> Outcome {
    let mut shapes = vec![p("3211")];
    shapes.extend(partitions_up_to(6));
    let bad: Vec<String> = shapes
        .iter()
        .filter(|lam| cwbr_lhs(lam) != cwbr_rhs(lam))
        .map(|lam| lam.to_string())
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "cwbr expanded for 3211 and {} partitions with n <= 6; mismatches: {bad:?}",
            shapes.len() - 1
        ),
    )
}

fn ac3() -> Outcome {
    let shapes: Vec<Partition> = partitions_up_to(12)
        .into_iter()
        .filter(|l| !l.is_empty())
        .collect();
    let opts = VerifyOptions::default();
    let mut checks = 0usize;
    let mut failures = Vec::new();
    for id in IdentityId::BRANCHING {
        for lam in &shapes {
            for seed in 0..20u64 {
                let r = verify(id, lam, VerifyMode::RandomEval { trials: 8, seed }, &opts)
                    .expect("nonempty partition");
                checks += 1;
                if !r.verdict {
                    failures.push(format!("{id} {lam} seed {seed}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "8 identities x {} partitions (1 <= n <= 12) x 20 seeds x 8 points: {checks} checks, {} mismatches",
            shapes.len(),
            failures.len()
        ),
    )
}

fn ac4() -> Outcome {
    let mut shapes = vec![p("3211")];
    shapes.extend(partitions_up_to(5));
    let mut failed = Vec::new();
    let mut total = 0u128;
    for lam in &shapes {
        let r = check_exhaustive(lam, VariantKind::Plain);
        total += r.domain_size;
        if !r.passed() {
            failed.push(lam.to_string());
        }
    }
    let size_3211 = check_exhaustive(&p("3211"), VariantKind::Plain).checked;
    let mut weight_bad = Vec::new();
    for lam in partitions_up_to(5) {
        let sum = enumerate_f(&lam).fold(Polynomial::zero(), |acc, f| {
            &acc + &Polynomial::term(f.weight(), BigInt::one())
        });
        if sum != cwbr_lhs(&lam) {
            weight_bad.push(lam.to_string());
        }
    }
    outcome(
        failed.is_empty() && weight_bad.is_empty() && size_3211 == 3360,
        format!(
            "|F_3211| = {size_3211}; {total} arrangements round-tripped over {} shapes; failures {failed:?}; weight-sum mismatches {weight_bad:?}",
            shapes.len()
        ),
    )
}

fn ac5() -> Outcome {
    let f = demo_arrangement();
    let t = phi_trace(&f);
    let want: Vec<Cell> = common::cells(&[(1, 1), (4, 1), (4, 3), (4, 5), (7, 5), (7, 6)]);
    let walk_ok = t.walk.cells == want;
    let back_ok = phi_inverse(&t.result).as_ref() == Some(&f);
    outcome(
        f.partition == p("988666542") && walk_ok && back_ok,
        format!("walk {}; inverse recovers F: {back_ok}", t.walk),
    )
}

fn ac6() -> Outcome {
    let mut bad = Vec::new();
    let mut systems = 0;
    for lam in partitions_up_to(7).into_iter().filter(|l| !l.is_empty()) {
        for k in 0..50u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + k);
            let w = random_weights(&lam, 2, &mut rng);
            systems += 1;
            for region in Region::CORNER_REGIONS.iter().chain(&Region::OUTER_REGIONS) {
                if *region == Region::R5 && lam.is_rectangle() {
                    continue;
                }
                let d = closed_form_distribution(&lam, Conditioning::Region(*region), &w).unwrap();
                if d.total() != BigRational::one() {
                    bad.push(format!("{lam} {region} weights#{k}"));
                }
            }
            if !total_probability_holds(&lam, &w) {
                bad.push(format!("{lam} total probability weights#{k}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{systems} (partition, weight system) pairs over n <= 7, regions R1-R8; failures {bad:?}"),
    )
}

fn total_probability_holds(lam: &Partition, w: &WeightSystem) -> bool {
    let check = |c: Cell, regions: &[Region]| {
        let mut sum = BigRational::zero();
        for &r in regions {
            let pr = region_probability(lam, r, w).unwrap();
            if !pr.is_zero() {
                sum += terminal_probability(lam, c, Conditioning::Region(r), w).unwrap() * pr;
            }
        }
        sum == terminal_probability(lam, c, Conditioning::Unconditional, w).unwrap()
    };
    lam.corners()
        .into_iter()
        .all(|c| check(c, &Region::CORNER_REGIONS))
        && lam
            .outer_corners()
            .into_iter()
            .all(|c| check(c, &Region::OUTER_REGIONS))
}

fn ac7() -> Outcome {
    let mut bad = Vec::new();
    for lam in partitions_up_to(8).into_iter().filter(|l| !l.is_empty()) {
        let w = WeightSystem::uniform_window(&lam, 0);
        let f = BigRational::from_integer(BigInt::from(syt_count(&lam)));
        let n1 = q(lam.size() as i64 + 1, 1);
        for c in lam.corners() {
            let want =
                BigRational::from_integer(BigInt::from(syt_count(&lam.remove_cell(c).unwrap())))
                    / &f;
            let got = terminal_probability(&lam, c, Conditioning::Region(Region::R1), &w).unwrap();
            if got != want || uniform_corollary_probability(&lam, c, Region::R1).unwrap() != want {
                bad.push(format!("{lam} R1 {c}"));
            }
        }
        for c in lam.outer_corners() {
            let mut w8 = WeightSystem::uniform_window(&lam, 0);
            w8.set_x(lam.len() as i64 + 1, BigRational::one()).unwrap();
            w8.set_y(lam.first_part() as i64 + 1, BigRational::one())
                .unwrap();
            let want =
                BigRational::from_integer(BigInt::from(syt_count(&lam.add_cell(c).unwrap())))
                    / (&n1 * &f);
            let got = terminal_probability(&lam, c, Conditioning::Region(Region::R8), &w8).unwrap();
            if got != want || uniform_corollary_probability(&lam, c, Region::R8).unwrap() != want {
                bad.push(format!("{lam} R8 {c}"));
            }
        }
    }
    let lam = p("322");
    let w = WeightSystem::uniform_window(&lam, 1);
    let spot1 =
        terminal_probability(&lam, Cell::new(1, 3), Conditioning::Region(Region::R1), &w).unwrap();
    let spot8 =
        terminal_probability(&lam, Cell::new(4, 1), Conditioning::Region(Region::R8), &w).unwrap();
    outcome(
        bad.is_empty() && spot1 == q(5, 21) && spot8 == q(70, 168),
        format!("n <= 8 checked; 322: P((1,3)|R1) = {spot1}, P((4,1)|R8) = {spot8} (= 70/168); failures {bad:?}"),
    )
}

fn ac8() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    let mut compared = 0;
    for s in ["322", "3211", "66532"] {
        let lam = p(s);
        let w = WeightSystem::uniform_window(&lam, 3);
        for region in [Region::R1, Region::R5, Region::R6, Region::R8] {
            let est = monte_carlo_estimate(&lam, region, &w, 100_000, 20_241_014).unwrap();
            let exact = closed_form_distribution(&lam, Conditioning::Region(region), &w).unwrap();
            for c in compare_with_exact(&est, &exact, 4.0) {
                compared += 1;
                if c.sigma > 0.0 {
                    worst = worst.max((c.estimate - c.exact_decimal).abs() / c.sigma);
                }
                if !c.within {
                    bad.push(format!("{s} {region} {}", c.terminal));
                }
            }
        }
    }
    let dt = t.elapsed();
    outcome(
        bad.is_empty() && dt < Duration::from_secs(120),
        format!(
            "{compared} terminal frequencies, 1e5 walks each; max deviation {worst:.2} sigma (limit 4); {:.1} s; failures {bad:?}",
            dt.as_secs_f64()
        ),
    )
}

fn ac9() -> Outcome {
    let mut bad = Vec::new();
    for lam in partitions_up_to(10) {
        let st = content_statistics(&lam);
        if st.mean != BigRational::zero() || st.variance != q(lam.size() as i64, 1) {
            bad.push(lam.to_string());
        }
    }
    let st = content_statistics(&p("322"));
    let ledger: BTreeSet<(i64, u64)> = st
        .table
        .iter()
        .map(|row| (row.content, u64::try_from(&row.f).unwrap()))
        .collect();
    let want = BTreeSet::from([(-3, 56), (-1, 42), (3, 70)]);
    outcome(
        bad.is_empty() && ledger == want,
        format!("mean 0 and variance n for all n <= 10; 322 (content, f) = {ledger:?}; failures {bad:?}"),
    )
}

fn ac10() -> Outcome {
    let squares_ok = (0..=10).all(check_sum_squares);
    let mut bad = Vec::new();
    let mut held = 0;
    for lam in partitions_up_to(9) {
        for c in check_new_recursions(&lam) {
            match c.status {
                RecursionStatus::Holds => held += 1,
                RecursionStatus::Skipped { .. } => {}
                RecursionStatus::Fails { .. } => bad.push(format!("{lam} {:?}", c.recursion)),
            }
        }
    }
    outcome(
        squares_ok && bad.is_empty(),
        format!("sum of squares = n! for n <= 10: {squares_ok}; {held} recursion instances hold for n <= 9; failures {bad:?}"),
    )
}

fn ac11() -> Outcome {
    let lam = p("66532");
    let comps = [
        (5, 6, "431"),
        (5, 7, "54211"),
        (8, 6, "666431"),
        (6, 8, "865322"),
    ];
    let comps_ok = comps
        .iter()
        .all(|&(a, b, want)| lam.complement(a, b).unwrap() == p(want));
    let full =
        complement_equivalence_check(&p("3211"), ComplementFamily::Y, VerifyMode::FullExpansion)
            .unwrap();
    let rand = complement_equivalence_check(
        &lam,
        ComplementFamily::Y,
        VerifyMode::RandomEval {
            trials: 16,
            seed: 11,
        },
    )
    .unwrap();
    outcome(
        comps_ok && full.verdict && rand.verdict,
        format!(
            "complements of 66532 reproduced: {comps_ok}; 3211 full expansion: {}; 66532 random evaluation (16 points): {}",
            full.verdict, rand.verdict
        ),
    )
}

fn ac12() -> Outcome {
    let mut count = 0;
    let bad: Vec<String> = (0..=7)
        .flat_map(partitions_of)
        .inspect(|_| count += 1)
        .filter(|lam| syt_count(lam) != BigUint::from(syt_by_linear_extensions(lam)))
        .map(|lam| lam.to_string())
        .collect();
    outcome(
        bad.is_empty(),
        format!("{count} partitions with n <= 7; mismatches {bad:?}"),
    )
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("AC1", "hook-length formula pin", ac1),
        ("AC2", "symbolic complementary rule", ac2),
        ("AC3", "eight identities by random evaluation", ac3),
        ("AC4", "bijection exhaustive", ac4),
        ("AC5", "worked-example replay", ac5),
        ("AC6", "probability normalization", ac6),
        ("AC7", "uniform-weight corollary", ac7),
        ("AC8", "Monte Carlo agreement", ac8),
        ("AC9", "content statistics", ac9),
        ("AC10", "classical and new recursions", ac10),
        ("AC11", "complement structure", ac11),
        ("AC12", "independent tableau count", ac12),
    ];
    let mut all = true;
    for (id, name, run) in criteria {
        let t = Instant::now();
        let o = run();
        all &= o.pass;
        println!(
            "[{}] {id} {name}: {} ({:.2} s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
