//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (run with `cargo test -p hypersplit-cli --test acceptance --
//! --nocapture` to see them).

use std::process::Command;
use std::time::{Duration, Instant};

use num::rational::Ratio;

use hypersplit::affine::affine_closure;
use hypersplit::elemset::ElementSet;
use hypersplit::error::Error;
use hypersplit::hyperplane::{zero_locus, AffineHyperplane};
use hypersplit::signature::{model_signature, LensSpace, SignatureFamily};
use hypersplit::splitting::{find_splittings_with_union, Splitting};
use hypersplit::verify::{self, SweepConfig, Theorem};
use hypersplit::{Group, QmodZ};

fn rat(n: i64) -> Ratio<i64> {
    Ratio::from_integer(n)
}

/// Criterion 1: the reference rho values are reproduced exactly, in under
/// a millisecond each, and the CLI agrees.
#[test]
fn acceptance_1_rho_exactness() {
    let start = Instant::now();
    let a = LensSpace::new(6, 1).unwrap().rho(3).unwrap();
    let first = start.elapsed();
    let start = Instant::now();
    let b = LensSpace::new(8, 1).unwrap().rho(2).unwrap();
    let second = start.elapsed();
    assert_eq!(a, rat(2));
    assert_eq!(b, rat(2));
    assert!(first < Duration::from_millis(1), "rho(6,1,3) took {first:?}");
    assert!(second < Duration::from_millis(1), "rho(8,1,2) took {second:?}");

    let out = Command::new(env!("CARGO_BIN_EXE_hypersplit"))
        .args(["rho", "--n", "6", "--q", "1", "--k", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
    let out = Command::new(env!("CARGO_BIN_EXE_hypersplit"))
        .args(["rho", "--n", "8", "--q", "1", "--k", "2"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
    println!("ACCEPTANCE 1 (rho exactness): PASS ({first:?}, {second:?})");
}

/// Criterion 2: for all odd 3 <= n <= 199 and all q coprime to n, rho is
/// nonvanishing away from zero, rho(0) = 0, and n * rho(k) is an integer;
/// single-threaded in under a minute.
#[test]
fn acceptance_2_rho_nonvanishing_sweep() {
    let start = Instant::now();
    let config = SweepConfig {
        max_n: 199,
        parallelism: 1,
        ..SweepConfig::default()
    };
    let report = verify::run(Theorem::RhoValues, &config).unwrap();
    let elapsed = start.elapsed();
    assert!(report.passed(), "{report}");
    assert!(report.cases_tested >= 8000, "swept {} pairs", report.cases_tested);
    assert!(elapsed < Duration::from_secs(60), "sweep took {elapsed:?}");
    println!(
        "ACCEPTANCE 2 (nonvanishing rho for odd n <= 199): PASS ({} (n,q) pairs in {elapsed:?})",
        report.cases_tested
    );
}

/// Criterion 3: over every multiset from {3,4,5,7,9} with at most 3
/// factors and order at most 320, the coordinate splitting is the only
/// splitting of the zero locus; 4 workers, under 10 minutes.
#[test]
fn acceptance_3_unique_splitting_sweep() {
    let start = Instant::now();
    let config = SweepConfig {
        moduli_alphabet: vec![3, 4, 5, 7, 9],
        max_factors: 3,
        max_group_order: 320,
        parallelism: 4,
        ..SweepConfig::default()
    };
    let report = verify::run(Theorem::Thm1, &config).unwrap();
    let elapsed = start.elapsed();
    assert!(report.passed(), "{report}");
    assert!(elapsed < Duration::from_secs(600), "sweep took {elapsed:?}");
    println!(
        "ACCEPTANCE 3 (unique splitting, no order-2 factors): PASS ({} groups in {elapsed:?})",
        report.cases_tested
    );
}

/// Criterion 4: with order-2 factors allowed ({2,3,4}, up to 4 factors,
/// order <= 96) every splitting of the zero locus has z-witnesses at
/// moduli > 2, nearly-coordinate members, and quotient orders equal to the
/// moduli; the non-coordinate splitting of (Z/2)^3 appears as a positive
/// instance.
#[test]
fn acceptance_4_splitting_recovery_sweep() {
    let config = SweepConfig {
        moduli_alphabet: vec![2, 3, 4],
        max_factors: 4,
        max_group_order: 96,
        parallelism: 4,
        ..SweepConfig::default()
    };
    let report = verify::run(Theorem::Thm1Upgraded, &config).unwrap();
    assert!(report.passed(), "{report}");

    let g = Group::new(&[2, 2, 2]).unwrap();
    let found = find_splittings_with_union(&g, &zero_locus(&g).unwrap()).unwrap();
    let z0 = AffineHyperplane::coordinate(&g, 0).unwrap();
    let z1 = AffineHyperplane::coordinate(&g, 1).unwrap();
    let diag = AffineHyperplane::new(&g, g.character(&[1, 1, 1]).unwrap(), QmodZ::ZERO).unwrap();
    let target = Splitting::new(&g, vec![z0, z1, diag]).unwrap();
    assert!(found.contains(&target), "missing the non-coordinate splitting");
    assert!(found.len() > 1);
    let recovered = target.recover().unwrap();
    assert_eq!(recovered.quotient_orders, vec![2, 2, 2]);
    println!(
        "ACCEPTANCE 4 (splitting recovery with order-2 factors): PASS ({} splittings checked)",
        report.cases_tested
    );
}

/// Criterion 5: every hyperplane through z_0 inside the zero locus of a
/// group over {2,3,4,5} with order <= 64 classifies into a containing
/// nearly-coordinate hyperplane; on p-groups the containment is equality;
/// classification never fails.
#[test]
fn acceptance_5_z0_classification_sweep() {
    let config = SweepConfig {
        moduli_alphabet: vec![2, 3, 4, 5],
        max_factors: 6,
        max_group_order: 64,
        parallelism: 4,
        ..SweepConfig::default()
    };
    let report = verify::run(Theorem::ThmGeneralCase, &config).unwrap();
    assert!(report.passed(), "{report}");
    let p_report = verify::run(Theorem::PropPGroup, &config).unwrap();
    assert!(p_report.passed(), "{p_report}");
    println!(
        "ACCEPTANCE 5 (z_0-hyperplane classification): PASS ({} hyperplanes, {} on p-groups)",
        report.cases_tested, p_report.cases_tested
    );
}

/// Criterion 6: over {2,3,4,5} with at most 3 factors and order <= 60,
/// every zero-locus-preserving automorphism produces a valid block-form
/// report with ell equal to the number of order-2 factors, and with no
/// order-2 factors the matrix is monomial; automorphisms are enumerated
/// exhaustively.
#[test]
fn acceptance_6_block_form_sweep() {
    let config = SweepConfig {
        moduli_alphabet: vec![2, 3, 4, 5],
        max_factors: 3,
        max_group_order: 60,
        parallelism: 4,
        ..SweepConfig::default()
    };
    let report = verify::run(Theorem::Thm2, &config).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.cases_tested > 0);
    println!(
        "ACCEPTANCE 6 (block form of zero-locus-preserving isomorphisms): PASS ({} maps)",
        report.cases_tested
    );
}

/// Criterion 7: for every homomorphism between groups of order <= 36
/// (exhaustive matrix enumeration), the dual matrix is adjoint to it under
/// character evaluation and the double dual returns the original matrix.
#[test]
fn acceptance_7_adjointness_sweep() {
    let start = Instant::now();
    let groups = verify::all_groups_up_to(36);
    let (cases, ces) = verify::adjointness_sweep(&groups, 20_000).unwrap();
    assert!(ces.is_empty(), "{ces:?}");
    assert!(cases > 30_000_000, "only {cases} homomorphisms enumerated");
    println!(
        "ACCEPTANCE 7 (dual adjointness, orders <= 36): PASS ({cases} homs over {} groups in {:?})",
        groups.len(),
        start.elapsed()
    );
}

/// Criterion 8: the cyclic-shift eigenspace model has signature 1 at every
/// nontrivial character for 2 <= n <= 30 (tolerance 1e-6 on eigenvalue
/// signs; the implementation classifies at 1e-9, well inside it) and 0 at
/// the trivial one, and the product family [3,5,7] vanishes exactly on the
/// zero locus (cardinality 105 - 2*4*6 = 57).
#[test]
fn acceptance_8_signature_model() {
    for n in 2..=30u64 {
        assert_eq!(model_signature(n, 0).unwrap(), 0, "n={n}");
        for j in 1..n {
            assert_eq!(model_signature(n, j).unwrap(), 1, "n={n} j={j}");
        }
    }
    let fam = SignatureFamily::model(&[3, 5, 7]).unwrap();
    let vanishing = fam.signature_zero_locus().unwrap();
    assert_eq!(vanishing.len(), 57);
    assert_eq!(vanishing, zero_locus(fam.group()).unwrap());
    println!("ACCEPTANCE 8 (signature model and product vanishing locus): PASS");
}

/// Criterion 9: the printed set-piece examples are reproduced exactly, and
/// the affine-but-not-hyperplane subgroups are rejected by the hyperplane
/// constructor.
#[test]
fn acceptance_9_set_pieces() {
    // V_1 in (Z/2)^2.
    let v1 = AffineHyperplane::vile(1).unwrap();
    let g2 = v1.group().clone();
    let expect = |g: &Group, rows: &[&[i64]]| -> ElementSet {
        ElementSet::from_ranks(g.order(), rows.iter().map(|r| g.rank(&g.element(r).unwrap())))
    };
    assert_eq!(*v1.members().unwrap(), expect(&g2, &[&[1, 0], &[0, 1]]));

    // V_2 in (Z/2)^3.
    let v2 = AffineHyperplane::vile(2).unwrap();
    let g3 = v2.group().clone();
    assert_eq!(
        *v2.members().unwrap(),
        expect(&g3, &[&[0, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])
    );

    // The affine closure of {(0,1,1), (2,0,2)} in (Z/3)^3.
    let g = Group::new(&[3, 3, 3]).unwrap();
    let pts = [
        g.element(&[0, 1, 1]).unwrap(),
        g.element(&[2, 0, 2]).unwrap(),
    ];
    let closure = affine_closure(&g, &pts).unwrap();
    let members = g.set_elements(closure.members(&g).unwrap());
    let expected: Vec<_> = [[0i64, 1, 1], [1, 2, 0], [2, 0, 2]]
        .iter()
        .map(|r| g.element(r).unwrap())
        .collect();
    assert_eq!(members, expected);

    // The five-element rescaled-cycle subgroup of (Z/5)^5 sits inside the
    // zero locus but is rejected: its quotient is not cyclic.
    let g5 = Group::new(&[5; 5]).unwrap();
    let scalars = [1i64, 1, 3, 2, 4];
    let points: Vec<_> = (0..5i64)
        .map(|shift| {
            let coords: Vec<i64> = (0..5)
                .map(|i| ((i + shift) % 5) * scalars[i as usize])
                .collect();
            g5.element(&coords).unwrap()
        })
        .collect();
    let closure = affine_closure(&g5, &points).unwrap();
    let set = ElementSet::from_ranks(g5.order(), closure.members(&g5).unwrap().iter());
    assert_eq!(set.len(), 5);
    assert!(set.is_subset_of(&zero_locus(&g5).unwrap()));
    assert_eq!(
        AffineHyperplane::from_set(&g5, &set),
        Err(Error::NonCyclicQuotient)
    );
    println!("ACCEPTANCE 9 (printed set pieces): PASS");
}

/// The parity shortcut agrees with the full formula for every n (not just
/// odd), pinned on the reference cases.
#[test]
fn parity_residues_cross_check() {
    let l61 = LensSpace::new(6, 1).unwrap();
    assert_eq!(l61.rho_parity(3).unwrap(), rat(0));
    let l81 = LensSpace::new(8, 1).unwrap();
    assert_eq!(l81.rho_parity(2).unwrap(), rat(0));
    let l31 = LensSpace::new(3, 1).unwrap();
    assert_eq!(l31.rho_parity(1).unwrap(), Ratio::new(1, 3));
    for lens in [l61, l81, l31] {
        for k in 1..lens.n() {
            let diff = lens.rho(k).unwrap() - lens.rho_parity(k).unwrap();
            assert!((diff / rat(2)).is_integer());
            assert!((lens.rho(k).unwrap() * rat(lens.n() as i64)).is_integer());
        }
    }
}
