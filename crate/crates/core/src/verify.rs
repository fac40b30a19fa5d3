//! Exhaustive verification sweeps.
//!
//! Every structural claim the library relies on is checkable by brute
//! force on small groups, and this module does exactly that: it generates
//! all groups over a moduli alphabet up to an order bound, runs the claim
//! on each, and reports counterexamples. A passing sweep prints nothing
//! but statistics; a failing one names the offending group and object.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::affine_closure;
use crate::character::Character;
use crate::duality::{analyze_iso, annihilator, preserves_zero_locus, transport_hyperplane};
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{gcd, Group, DEFAULT_ENUM_BUDGET};
use crate::hom::{enumerate_isomorphisms, hom_count, HomMatrix};
use crate::hyperplane::{
    classify_order2, classify_z0_hyperplane, enumerate_z0_hyperplanes, nearly_coordinate,
    zero_locus, AffineHyperplane, NearlyCoordinateData,
};
use crate::qmodz::QmodZ;
use crate::signature::{model_signature, LensSpace, SignatureFamily};
use crate::splitting::{find_splittings_with_union, Splitting};

/// Parameters for a verification sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Moduli the sweep groups draw from.
    pub moduli_alphabet: Vec<u64>,
    /// Maximum number of cyclic factors per group.
    pub max_factors: usize,
    /// Maximum group order.
    pub max_group_order: u64,
    /// Worker threads; 0 means one per available core.
    pub parallelism: usize,
    /// Bound for the lens-space sweeps.
    pub max_n: u64,
    /// Enumeration budget applied to every constructed group.
    pub hard_budget: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            moduli_alphabet: vec![2, 3, 4, 5],
            max_factors: 3,
            max_group_order: 64,
            parallelism: 0,
            max_n: 99,
            hard_budget: DEFAULT_ENUM_BUDGET,
        }
    }
}

impl SweepConfig {
    fn check(&self) -> Result<()> {
        if self.max_group_order > self.hard_budget {
            return Err(Error::EnumerationBudgetExceeded {
                order: self.max_group_order,
                budget: self.hard_budget,
            });
        }
        Ok(())
    }
}

/// The theorems the harness can verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// With every modulus > 2, the only splitting of the zero locus is the
    /// coordinate one.
    Thm1,
    /// Any splitting with union the zero locus matches the coordinates:
    /// z-witnesses, nearly-coordinate members, quotient orders.
    Thm1Upgraded,
    /// Zero-locus-preserving isomorphisms have block form.
    Thm2,
    /// Every hyperplane through z_0 inside the zero locus lies in a
    /// nearly-coordinate hyperplane.
    ThmGeneralCase,
    /// Nearly-coordinate hyperplanes are maximal inside the zero locus.
    LemmaMaxVile,
    /// Order-2 hyperplanes inside the zero locus are nearly-coordinate.
    LemmaOrd2,
    /// A z_i-subgroup with modulus > 2 contains no other z_j.
    LemmaOneH,
    /// No z_0-subgroup of Z/4 x A' projects onto the full Z/4.
    LemmaNo4,
    /// On p-groups with an initial Z/p factor, z_0-hyperplanes equal their
    /// nearly-coordinate classification.
    PropPGroup,
    /// Lens-space rho tables: zero only at zero for odd n, exactness, parity.
    RhoValues,
    /// Dual-map facts: adjointness, double duals, annihilator transport.
    DualFacts,
    /// Product signature model: multiplicativity and the vanishing locus.
    SigpropCModel,
}

impl Theorem {
    pub const ALL: [Theorem; 12] = [
        Theorem::Thm1,
        Theorem::Thm1Upgraded,
        Theorem::Thm2,
        Theorem::ThmGeneralCase,
        Theorem::LemmaMaxVile,
        Theorem::LemmaOrd2,
        Theorem::LemmaOneH,
        Theorem::LemmaNo4,
        Theorem::PropPGroup,
        Theorem::RhoValues,
        Theorem::DualFacts,
        Theorem::SigpropCModel,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::Thm1Upgraded => "thm1-upgraded",
            Theorem::Thm2 => "thm2",
            Theorem::ThmGeneralCase => "thm-general-case",
            Theorem::LemmaMaxVile => "lemma-max-vile",
            Theorem::LemmaOrd2 => "lemma-ord2",
            Theorem::LemmaOneH => "lemma-one-h",
            Theorem::LemmaNo4 => "lemma-no4",
            Theorem::PropPGroup => "prop-p-group",
            Theorem::RhoValues => "rho-values",
            Theorem::DualFacts => "dual-facts",
            Theorem::SigpropCModel => "sigprop-c-model",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        Theorem::ALL
            .iter()
            .copied()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Outcome of a sweep. `counterexamples` is empty exactly when the sweep
/// passed; `cases_tested` counts the groups or parameter sets examined.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictReport {
    pub theorem: String,
    pub cases_tested: u64,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
    pub wall_ms: u128,
}

impl VerdictReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} ({} cases, {} ms)",
            self.theorem,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases_tested,
            self.wall_ms
        )?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for c in &self.counterexamples {
            writeln!(f, "  counterexample: {c}")?;
        }
        Ok(())
    }
}

/// Runs the sweep for one theorem.
pub fn run(theorem: Theorem, config: &SweepConfig) -> Result<VerdictReport> {
    config.check()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .expect("thread pool");
    let (cases, mut counterexamples, notes) = pool.install(|| dispatch(theorem, config))?;
    counterexamples.sort();
    Ok(VerdictReport {
        theorem: theorem.id().to_string(),
        cases_tested: cases,
        counterexamples,
        notes,
        wall_ms: start.elapsed().as_millis(),
    })
}

type SweepOutcome = (u64, Vec<String>, Vec<String>);

fn dispatch(theorem: Theorem, config: &SweepConfig) -> Result<SweepOutcome> {
    match theorem {
        Theorem::Thm1 => sweep_thm1(config),
        Theorem::Thm1Upgraded => sweep_thm1_upgraded(config),
        Theorem::Thm2 => sweep_thm2(config),
        Theorem::ThmGeneralCase => sweep_general_case(config, false),
        Theorem::PropPGroup => sweep_general_case(config, true),
        Theorem::LemmaMaxVile => sweep_max_vile(config),
        Theorem::LemmaOrd2 => sweep_ord2(config),
        Theorem::LemmaOneH => sweep_one_h(config),
        Theorem::LemmaNo4 => sweep_no4(config),
        Theorem::RhoValues => sweep_rho_values(config),
        Theorem::DualFacts => sweep_dual_facts(config),
        Theorem::SigpropCModel => sweep_sigprop_model(config),
    }
}

/// All multisets (as non-decreasing lists) over the alphabet with at most
/// `max_factors` entries and product at most `max_group_order`.
pub fn sweep_groups(config: &SweepConfig) -> Vec<Vec<u64>> {
    let mut alphabet: Vec<u64> = config
        .moduli_alphabet
        .iter()
        .copied()
        .filter(|&n| n >= 2)
        .collect();
    alphabet.sort();
    alphabet.dedup();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(
        alphabet: &[u64],
        from: usize,
        max_factors: usize,
        max_order: u64,
        product: u64,
        stack: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if !stack.is_empty() {
            out.push(stack.clone());
        }
        if stack.len() == max_factors {
            return;
        }
        for (idx, &n) in alphabet.iter().enumerate().skip(from) {
            if product.saturating_mul(n) > max_order {
                continue;
            }
            stack.push(n);
            go(alphabet, idx, max_factors, max_order, product * n, stack, out);
            stack.pop();
        }
    }
    go(
        &alphabet,
        0,
        config.max_factors,
        config.max_group_order,
        1,
        &mut stack,
        &mut out,
    );
    out
}

/// All groups (as non-decreasing moduli lists) of order at most `max_order`.
pub fn all_groups_up_to(max_order: u64) -> Vec<Vec<u64>> {
    let config = SweepConfig {
        moduli_alphabet: (2..=max_order).collect(),
        max_factors: 64,
        max_group_order: max_order,
        ..SweepConfig::default()
    };
    sweep_groups(&config)
}

fn build(config: &SweepConfig, moduli: &[u64]) -> Result<Group> {
    Group::with_budget(moduli, config.hard_budget)
}

/// Runs `check` over every sweep group in parallel and merges outcomes.
fn over_groups<F>(config: &SweepConfig, filter: impl Fn(&[u64]) -> bool, check: F) -> Result<SweepOutcome>
where
    F: Fn(&Group) -> Result<(u64, Vec<String>)> + Sync,
{
    over_groups_noted(config, filter, |g| check(g).map(|(c, e)| (c, e, Vec::new())))
}

fn over_groups_noted<F>(
    config: &SweepConfig,
    filter: impl Fn(&[u64]) -> bool,
    check: F,
) -> Result<SweepOutcome>
where
    F: Fn(&Group) -> Result<SweepOutcome> + Sync,
{
    let groups: Vec<Vec<u64>> = sweep_groups(config)
        .into_iter()
        .filter(|m| filter(m))
        .collect();
    let results: Vec<Result<SweepOutcome>> = groups
        .par_iter()
        .map(|moduli| check(&build(config, moduli)?))
        .collect();
    let mut cases = 0;
    let mut ces = Vec::new();
    let mut notes = Vec::new();
    for r in results {
        let (c, mut e, mut n) = r?;
        cases += c;
        ces.append(&mut e);
        notes.append(&mut n);
    }
    notes.sort();
    notes.dedup();
    Ok((cases, ces, notes))
}

fn sweep_thm1(config: &SweepConfig) -> Result<SweepOutcome> {
    over_groups(
        config,
        |m| m.iter().all(|&n| n > 2),
        |g| {
            let mut ces = Vec::new();
            let zl = zero_locus(g)?;
            let found = find_splittings_with_union(g, &zl)?;
            let coordinate = Splitting::coordinate(g)?;
            if found != vec![coordinate] {
                ces.push(format!(
                    "group [{g}]: {} splittings of the zero locus (expected the coordinate one only)",
                    found.len()
                ));
            }
            Ok((1, ces))
        },
    )
}

fn sweep_thm1_upgraded(config: &SweepConfig) -> Result<SweepOutcome> {
    over_groups(config, |_| true, |g| {
        let mut ces = Vec::new();
        let mut cases = 0;
        let zl = zero_locus(g)?;
        for s in find_splittings_with_union(g, &zl)? {
            cases += 1;
            let report = match s.recover() {
                Ok(r) => r,
                Err(e) => {
                    ces.push(format!("group [{g}]: recovery failed: {e}"));
                    continue;
                }
            };
            // (c) the quotient orders are the moduli and the count matches.
            let mut orders = report.quotient_orders.clone();
            orders.sort();
            let mut moduli = g.moduli().to_vec();
            moduli.sort();
            if orders != moduli || report.permutation.len() != g.arity() {
                ces.push(format!("group [{g}]: quotient orders {orders:?} != moduli"));
            }
            // (a) each z_i with modulus > 2 lies in exactly one member.
            for i in 0..g.arity() {
                if g.moduli()[i] <= 2 {
                    continue;
                }
                let z = g.z_vector(i)?;
                let count = s
                    .hyperplanes()
                    .iter()
                    .filter(|h| h.contains(&z).unwrap_or(false))
                    .count();
                if count != 1 {
                    ces.push(format!(
                        "group [{g}]: z_{i} lies in {count} members of a splitting"
                    ));
                }
            }
            // The splitting is affinely isomorphic to the coordinate one:
            // a -> ((chi_k(a) - c_k) * N_k)_k is a bijection sending the
            // k'th member onto the k'th coordinate hyperplane.
            let orders: Vec<u64> = s.hyperplanes().iter().map(|h| h.quotient_order()).collect();
            let mut seen = BTreeSet::new();
            for a in g.elements()? {
                let mut index: u64 = 0;
                for (h, &n) in s.hyperplanes().iter().zip(&orders) {
                    let v = g.char_eval(h.character(), &a)?.sub(h.target());
                    index = index * n + v.numer() * (n / v.denom());
                }
                seen.insert(index);
            }
            if seen.len() as u64 != g.order() {
                ces.push(format!(
                    "group [{g}]: induced coordinate map is not a bijection"
                ));
            }
            for (k, h) in s.hyperplanes().iter().enumerate() {
                for r in h.members()?.iter() {
                    let a = g.unrank(r);
                    let v = g.char_eval(h.character(), &a)?.sub(h.target());
                    if !v.is_zero() {
                        ces.push(format!(
                            "group [{g}]: member {k} does not map onto its coordinate hyperplane"
                        ));
                        break;
                    }
                }
            }
        }
        Ok((cases, ces))
    })
}

fn monomial_with_units(f: &HomMatrix) -> bool {
    let m = f.source().arity();
    let mut col_used = vec![false; m];
    for (j, row) in f.entries().iter().enumerate() {
        let nonzero: Vec<usize> = (0..m).filter(|&i| row[i] != 0).collect();
        if nonzero.len() != 1 {
            return false;
        }
        let i = nonzero[0];
        if col_used[i] || gcd(row[i], f.target().moduli()[j]) != 1 {
            return false;
        }
        col_used[i] = true;
    }
    col_used.iter().all(|&u| u)
}

fn sweep_thm2(config: &SweepConfig) -> Result<SweepOutcome> {
    over_groups_noted(config, |_| true, |g| {
        let mut ces = Vec::new();
        let mut notes = Vec::new();
        let mut cases = 0;
        let ell = g.moduli().iter().filter(|&&n| n == 2).count();
        let zl = zero_locus(g)?;
        let isos = enumerate_isomorphisms(g, g)?;
        for f in &isos {
            if !preserves_zero_locus(f)? {
                continue;
            }
            cases += 1;
            match analyze_iso(f) {
                Ok(report) => {
                    if report.ell != ell {
                        ces.push(format!(
                            "group [{g}]: reported ell {} != {ell} for {:?}",
                            report.ell,
                            f.entries()
                        ));
                    }
                    if ell == 0 && !monomial_with_units(f) {
                        ces.push(format!(
                            "group [{g}]: zero-locus-preserving map {:?} is not monomial",
                            f.entries()
                        ));
                    }
                }
                Err(e) => ces.push(format!(
                    "group [{g}]: block form extraction failed on {:?}: {e}",
                    f.entries()
                )),
            }
        }
        // Converse: every monomial matrix with unit entries preserves the
        // zero locus.
        for f in &isos {
            if monomial_with_units(f) && !preserves_zero_locus(f)? {
                ces.push(format!(
                    "group [{g}]: monomial map {:?} does not preserve the zero locus",
                    f.entries()
                ));
            }
        }
        // Affine maps x -> f(x) + c preserving the zero locus: every
        // coordinate of the translation is 0 or half the modulus. The
        // translation is not always confined to the order-2 block: inflated
        // coordinates admit half-modulus shifts, which are noted.
        for f in &isos {
            let mut image_of_zl = Vec::with_capacity(zl.len() as usize);
            for r in zl.iter() {
                image_of_zl.push(f.apply(&g.unrank(r))?);
            }
            for c in g.elements()? {
                let translated =
                    ElementSet::from_ranks(g.order(), image_of_zl.iter().map(|y| g.rank(&g.add(y, &c))));
                if translated == zl {
                    for (&ci, &n) in c.coords().iter().zip(g.moduli()) {
                        if ci != 0 && (n % 2 != 0 || ci != n / 2) {
                            ces.push(format!(
                                "group [{g}]: affine zero-locus preserver with translation {c} not of half-modulus shape"
                            ));
                        } else if ci != 0 && n > 2 {
                            notes.push(format!(
                                "group [{g}]: affine zero-locus preserver shifts an inflated coordinate (translation {c})"
                            ));
                        }
                    }
                }
            }
        }
        Ok((cases, ces, notes))
    })
}

fn is_p_group_with_prime_first(moduli: &[u64]) -> bool {
    let p = moduli[0];
    let is_prime = p >= 2 && (2..p).all(|d| p % d != 0);
    is_prime
        && moduli.iter().all(|&n| {
            let mut n = n;
            while n % p == 0 {
                n /= p;
            }
            n == 1
        })
}

fn sweep_general_case(config: &SweepConfig, p_groups_only: bool) -> Result<SweepOutcome> {
    over_groups(
        config,
        |m| !p_groups_only || is_p_group_with_prime_first(m),
        move |g| {
            let mut ces = Vec::new();
            let mut cases = 0;
            let equality_expected = is_p_group_with_prime_first(g.moduli());
            for h in enumerate_z0_hyperplanes(g)? {
                cases += 1;
                let data = match classify_z0_hyperplane(&h) {
                    Ok(d) => d,
                    Err(e) => {
                        ces.push(format!("group [{g}]: classification of {h} failed: {e}"));
                        continue;
                    }
                };
                let zphi = nearly_coordinate(g, &data)?;
                if !h.members()?.is_subset_of(zphi.members()?) {
                    ces.push(format!(
                        "group [{g}]: {h} not contained in its nearly-coordinate hyperplane {zphi}"
                    ));
                }
                if equality_expected && zphi != h {
                    ces.push(format!(
                        "group [{g}]: p-group hyperplane {h} classified into strictly larger {zphi}"
                    ));
                }
            }
            Ok((cases, ces))
        },
    )
}

fn nearly_coordinate_data_for(g: &Group) -> Result<Vec<NearlyCoordinateData>> {
    let mut out = Vec::new();
    for j in 0..g.arity() {
        let pool: Vec<usize> = (0..g.arity())
            .filter(|&i| i != j && g.moduli()[i] == 2)
            .collect();
        out.push(NearlyCoordinateData::new(g, j, 0, &[])?);
        if g.moduli()[j] % 2 != 0 {
            continue;
        }
        let r = g.moduli()[j] / 2;
        for mask in 1u64..(1 << pool.len()) {
            let support: Vec<usize> = pool
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &i)| i)
                .collect();
            out.push(NearlyCoordinateData::new(g, j, r, &support)?);
        }
    }
    Ok(out)
}

fn sweep_max_vile(config: &SweepConfig) -> Result<SweepOutcome> {
    over_groups(config, |_| true, |g| {
        let mut ces = Vec::new();
        let mut cases = 0;
        for data in nearly_coordinate_data_for(g)? {
            cases += 1;
            let h = match nearly_coordinate(g, &data) {
                Ok(h) => h,
                Err(e) => {
                    ces.push(format!("group [{g}]: construction failed for {data:?}: {e}"));
                    continue;
                }
            };
            if !h.is_contained_in_zero_locus()? {
                ces.push(format!("group [{g}]: {h} escapes the zero locus"));
                continue;
            }
            if !h.is_maximal_in_zero_locus()? {
                ces.push(format!("group [{g}]: {h} is not maximal in the zero locus"));
            }
        }
        Ok((cases, ces))
    })
}

fn sweep_ord2(config: &SweepConfig) -> Result<SweepOutcome> {
    over_groups(config, |_| true, |g| {
        let mut ces = Vec::new();
        let mut cases = 0;
        let even: Vec<usize> = (0..g.arity()).filter(|&i| g.moduli()[i] % 2 == 0).collect();
        for mask in 1u64..(1 << even.len()) {
            let coords: Vec<i64> = (0..g.arity())
                .map(|i| {
                    even.iter()
                        .position(|&e| e == i)
                        .filter(|&b| mask & (1 << b) != 0)
                        .map(|_| (g.moduli()[i] / 2) as i64)
                        .unwrap_or(0)
                })
                .collect();
            let chi = g.character(&coords)?;
            for target in [QmodZ::ZERO, QmodZ::new(1, 2)] {
                let h = AffineHyperplane::new(g, chi.clone(), target)?;
                if !h.is_contained_in_zero_locus()? {
                    continue;
                }
                cases += 1;
                match classify_order2(&h) {
                    Ok(data) => {
                        if nearly_coordinate(g, &data)? != h {
                            ces.push(format!(
                                "group [{g}]: order-2 classification of {h} is not exact"
                            ));
                        }
                    }
                    Err(e) => ces.push(format!(
                        "group [{g}]: order-2 hyperplane {h} failed to classify: {e}"
                    )),
                }
            }
        }
        Ok((cases, ces))
    })
}

fn sweep_one_h(config: &SweepConfig) -> Result<SweepOutcome> {
    over_groups(config, |m| m.len() > 1, |g| {
        let mut ces = Vec::new();
        let mut cases = 0;
        let zl = zero_locus(g)?;
        for i in 0..g.arity() {
            if g.moduli()[i] <= 2 {
                continue;
            }
            for j in 0..g.arity() {
                if i == j {
                    continue;
                }
                cases += 1;
                let s = affine_closure(g, &[g.z_vector(i)?, g.z_vector(j)?])?;
                if s.members(g)?.is_subset_of(&zl) {
                    ces.push(format!(
                        "group [{g}]: z_{i} and z_{j} generate an affine subgroup inside the zero locus"
                    ));
                }
            }
        }
        Ok((cases, ces))
    })
}

fn sweep_no4(config: &SweepConfig) -> Result<SweepOutcome> {
    over_groups(
        config,
        |m| m.contains(&4),
        |g| {
            let mut ces = Vec::new();
            let mut cases = 0;
            let zl = zero_locus(g)?;
            for i in 0..g.arity() {
                if g.moduli()[i] != 4 {
                    continue;
                }
                cases += 1;
                let z = g.z_vector(i)?;
                for r in zl.iter() {
                    let x = g.unrank(r);
                    if x.coords()[i] % 2 == 0 {
                        continue;
                    }
                    // Any z_i-subgroup projecting onto the whole Z/4 would
                    // contain the closure of {z_i, x} for some such x.
                    let s = affine_closure(g, &[z.clone(), x.clone()])?;
                    if s.members(g)?.is_subset_of(&zl) {
                        ces.push(format!(
                            "group [{g}]: z-subgroup through {x} at coordinate {i} projects onto Z/4"
                        ));
                    }
                }
            }
            Ok((cases, ces))
        },
    )
}

fn coprime_residues(n: u64) -> Vec<u64> {
    (1..n).filter(|&q| gcd(n, q) == 1).collect()
}

fn sweep_rho_values(config: &SweepConfig) -> Result<SweepOutcome> {
    let odd: Vec<u64> = (3..=config.max_n).step_by(2).collect();
    let results: Vec<(u64, Vec<String>)> = odd
        .par_iter()
        .map(|&n| {
            let mut ces = Vec::new();
            let mut cases = 0;
            for q in coprime_residues(n) {
                cases += 1;
                let lens = LensSpace::new(n, q).expect("coprime by construction");
                let table = lens.rho_table();
                if !table[0].is_zero() {
                    ces.push(format!("rho_{{{n},{q}}}(0) = {} != 0", table[0]));
                }
                for (k, value) in table.iter().enumerate().skip(1) {
                    if value.is_zero() {
                        ces.push(format!("rho_{{{n},{q}}}({k}) = 0 with n odd"));
                    }
                    if !(*value * num::rational::Ratio::from_integer(n as i64)).is_integer() {
                        ces.push(format!("n * rho_{{{n},{q}}}({k}) is not an integer"));
                    }
                }
                // Parity: the closed formula agrees with -(2k^2 q + n)/n mod 2.
                if n <= 99 {
                    for k in 1..n {
                        let diff = lens.rho(k).unwrap() - lens.rho_parity(k).unwrap();
                        if !(diff / num::rational::Ratio::from_integer(2)).is_integer() {
                            ces.push(format!("parity identity fails at rho_{{{n},{q}}}({k})"));
                        }
                    }
                }
            }
            (cases, ces)
        })
        .collect();

    let mut cases = 0;
    let mut ces = Vec::new();
    for (c, mut e) in results {
        cases += c;
        ces.append(&mut e);
    }

    // Even n is outside the nonvanishing claim; log where the mod-2
    // obstruction dies while the value itself stays nonzero.
    let mut notes = Vec::new();
    let mut logged = 0;
    'outer: for n in (4..=config.max_n.min(40)).step_by(2) {
        for q in coprime_residues(n) {
            let lens = LensSpace::new(n, q).expect("coprime");
            for (k, value) in lens.rho_table().iter().enumerate().skip(1) {
                let even_residue = lens.rho_parity(k as u64).unwrap().is_zero();
                if even_residue && !value.is_zero() {
                    notes.push(format!(
                        "even n: rho_{{{n},{q}}}({k}) = {value} is nonzero but vanishes mod 2"
                    ));
                    logged += 1;
                    if logged >= 8 {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok((cases, ces, notes))
}

/// Dense grids get the full pairwise adjointness check; beyond this many
/// homomorphisms per pair, agreement is pinned down on basis pairs (both
/// sides are additive in each argument, so basis agreement is equivalent).
const DENSE_HOM_LIMIT: u64 = 2_000;

/// Work-item size when splitting one pair's enumeration across threads.
const HOM_CHUNK: u64 = 1 << 19;

/// Exhaustive adjointness sweep used both by the `dual-facts` theorem and
/// directly by the acceptance suite: for every pair of groups in `groups`
/// and every homomorphism between them, the dual matrix satisfies
/// `chi_eval(dual(f)(psi), a) = chi_eval(psi, f(a))` and `dual(dual(f)) = f`.
pub fn adjointness_sweep(groups: &[Vec<u64>], budget: u64) -> Result<(u64, Vec<String>)> {
    let mut work = Vec::new();
    for i in 0..groups.len() {
        for j in 0..groups.len() {
            let a = Group::with_budget(&groups[i], budget)?;
            let b = Group::with_budget(&groups[j], budget)?;
            let total = hom_count(&a, &b);
            let mut from = 0;
            while from < total {
                work.push((i, j, from, (from + HOM_CHUNK).min(total)));
                from += HOM_CHUNK;
            }
        }
    }
    let results: Vec<Result<(u64, Vec<String>)>> = work
        .par_iter()
        .map(|&(i, j, from, to)| {
            let a = Group::with_budget(&groups[i], budget)?;
            let b = Group::with_budget(&groups[j], budget)?;
            Ok(check_pair_adjointness(&a, &b, from, to))
        })
        .collect();
    let mut cases = 0;
    let mut ces = Vec::new();
    for r in results {
        let (c, mut e) = r?;
        cases += c;
        ces.append(&mut e);
    }
    Ok((cases, ces))
}

fn check_pair_adjointness(a: &Group, b: &Group, from: u64, to: u64) -> (u64, Vec<String>) {
    let ms = a.arity();
    let mt = b.arity();
    let s = a.moduli();
    let t = b.moduli();
    let dense = hom_count(a, b) <= DENSE_HOM_LIMIT;

    let lcm_all = s
        .iter()
        .chain(t.iter())
        .fold(1u64, |acc, &n| crate::group::lcm(acc, n));

    // Element tables for the dense tier.
    let a_elems: Vec<Vec<u64>> = if dense {
        a.elements()
            .map(|it| it.map(|e| e.coords().to_vec()).collect())
            .unwrap_or_default()
    } else {
        Vec::new()
    };
    let b_chars: Vec<Vec<u64>> = if dense {
        b.elements()
            .map(|it| it.map(|e| e.coords().to_vec()).collect())
            .unwrap_or_default()
    } else {
        Vec::new()
    };

    let mut cases = 0u64;
    let mut ces = Vec::new();
    let mut dual = vec![0u64; ms * mt]; // dual[i * mt + j]
    let mut fa_table = vec![0u64; a_elems.len() * mt];
    let mut chi = vec![0u64; ms];

    crate::hom::visit_homs_range(a, b, from, to, |flat| {
        cases += 1;
        // Dual matrix from the weighted-transpose formula.
        for i in 0..ms {
            for j in 0..mt {
                dual[i * mt + j] = (s[i] * flat[j * ms + i] / t[j]) % s[i];
            }
        }
        // Double dual returns the original matrix.
        for j in 0..mt {
            for i in 0..ms {
                let dd = (t[j] * dual[i * mt + j] / s[i]) % t[j];
                if dd != flat[j * ms + i] {
                    ces.push(format!(
                        "double dual mismatch at ({j},{i}) for a hom [{a}] -> [{b}]"
                    ));
                }
            }
        }
        // Basis adjointness: dual[i][j]/s_i = flat[j][i]/t_j in Q/Z.
        for i in 0..ms {
            for j in 0..mt {
                let lhs = dual[i * mt + j] * t[j] % (s[i] * t[j]);
                let rhs = flat[j * ms + i] * s[i] % (s[i] * t[j]);
                if lhs != rhs {
                    ces.push(format!(
                        "adjointness fails on basis pair ({i},{j}) for a hom [{a}] -> [{b}]"
                    ));
                }
            }
        }
        if dense {
            for (xi, x) in a_elems.iter().enumerate() {
                for j in 0..mt {
                    fa_table[xi * mt + j] =
                        (0..ms).fold(0u64, |acc, i| (acc + flat[j * ms + i] * x[i]) % t[j]);
                }
            }
            for psi in &b_chars {
                for (i, c) in chi.iter_mut().enumerate() {
                    *c = (0..mt).fold(0u64, |acc, j| (acc + dual[i * mt + j] * psi[j]) % s[i]);
                }
                for (xi, x) in a_elems.iter().enumerate() {
                    let mut lhs = 0u64;
                    for i in 0..ms {
                        lhs = (lhs + chi[i] * x[i] % lcm_all * (lcm_all / s[i])) % lcm_all;
                    }
                    let mut rhs = 0u64;
                    for j in 0..mt {
                        rhs = (rhs + psi[j] * fa_table[xi * mt + j] % lcm_all * (lcm_all / t[j]))
                            % lcm_all;
                    }
                    if lhs != rhs {
                        ces.push(format!(
                            "adjointness fails on a full pair for a hom [{a}] -> [{b}]"
                        ));
                        return;
                    }
                }
            }
        }
    });
    (cases, ces)
}

fn sweep_dual_facts(config: &SweepConfig) -> Result<SweepOutcome> {
    let groups: Vec<Vec<u64>> = sweep_groups(config);
    let (hom_cases, mut ces) = adjointness_sweep(&groups, config.hard_budget)?;
    let mut cases = hom_cases;

    // Per-group annihilator facts.
    let per_group: Vec<Result<(u64, Vec<String>)>> = groups
        .par_iter()
        .map(|moduli| {
            let g = build(config, moduli)?;
            let mut ces = Vec::new();
            let mut cases = 0;
            // The annihilator of the linear translate has the right order
            // and generator, for every hyperplane fiber through zero.
            for chi in g.characters()? {
                if chi.is_zero() {
                    continue;
                }
                cases += 1;
                let h = AffineHyperplane::new(&g, chi, QmodZ::ZERO)?;
                let translate = g.set_elements(&h.linear_translate()?);
                let killers: Vec<Character> = g
                    .characters()?
                    .filter(|psi| {
                        translate
                            .iter()
                            .all(|x| g.char_eval(psi, x).map(|v| v.is_zero()).unwrap_or(false))
                    })
                    .collect();
                if killers.len() as u64 != h.quotient_order() {
                    ces.push(format!(
                        "group [{g}]: annihilator of {h} has size {} != {}",
                        killers.len(),
                        h.quotient_order()
                    ));
                    continue;
                }
                let canon = killers
                    .iter()
                    .filter(|psi| g.character_order(psi) == h.quotient_order())
                    .min()
                    .cloned();
                if canon.as_ref() != Some(&annihilator(&h)) {
                    ces.push(format!(
                        "group [{g}]: annihilator generator mismatch for {h}"
                    ));
                }
            }
            // Nearly-coordinate hyperplanes have annihilator generated by
            // the determined dual coordinate plus an order-2 character.
            for data in nearly_coordinate_data_for(&g)? {
                cases += 1;
                let h = nearly_coordinate(&g, &data)?;
                let mut coords = vec![0i64; g.arity()];
                coords[data.determined] = 1;
                for &i in &data.phi_support {
                    coords[i] = 1;
                }
                let expected = g.character(&coords)?;
                let (canon, _) = g.canonical_generator(&expected);
                if annihilator(&h) != canon {
                    ces.push(format!(
                        "group [{g}]: nearly-coordinate annihilator mismatch at {data:?}"
                    ));
                }
            }
            Ok((cases, ces))
        })
        .collect();
    for r in per_group {
        let (c, mut e) = r?;
        cases += c;
        ces.append(&mut e);
    }

    // Annihilator transport along homomorphisms between small pairs.
    let pairs: Vec<(usize, usize)> = (0..groups.len())
        .flat_map(|i| (0..groups.len()).map(move |j| (i, j)))
        .collect();
    let transport: Vec<Result<(u64, Vec<String>)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let a = build(config, &groups[i])?;
            let b = build(config, &groups[j])?;
            let mut cases = 0;
            let mut ces = Vec::new();
            if hom_count(&a, &b) > 512 {
                return Ok((0, ces));
            }
            for f in crate::hom::enumerate_homs(&a, &b) {
                for chi in b.characters()? {
                    if chi.is_zero() {
                        continue;
                    }
                    let n = b.character_order(&chi);
                    for target in [QmodZ::ZERO, QmodZ::new(1, n as i64)] {
                        let h = AffineHyperplane::new(&b, chi.clone(), target)?;
                        cases += 1;
                        match transport_hyperplane(&f, &h) {
                            Ok(jh) => {
                                let pulled = f.pull_back(&annihilator(&h))?;
                                let (canon, _) = a.canonical_generator(&pulled);
                                if annihilator(&jh) != canon {
                                    ces.push(format!(
                                        "transport annihilator mismatch [{a}] -> [{b}] at {h}"
                                    ));
                                }
                            }
                            Err(Error::EmptyPreimage) | Err(Error::FullPreimage) => {}
                            Err(e) => {
                                ces.push(format!("transport failed [{a}] -> [{b}] at {h}: {e}"))
                            }
                        }
                    }
                }
            }
            Ok((cases, ces))
        })
        .collect();
    for r in transport {
        let (c, mut e) = r?;
        cases += c;
        ces.append(&mut e);
    }

    Ok((cases, ces, Vec::new()))
}

fn sweep_sigprop_model(config: &SweepConfig) -> Result<SweepOutcome> {
    let mut cases = 0;
    let mut ces = Vec::new();

    // The cyclic-shift eigenspace model takes signature 1 at every
    // nontrivial character.
    for n in 2..=30u64 {
        cases += 1;
        if model_signature(n, 0)? != 0 {
            ces.push(format!("model signature at (n={n}, j=0) is nonzero"));
        }
        for j in 1..n {
            if model_signature(n, j)? != 1 {
                ces.push(format!("model signature at (n={n}, j={j}) is not 1"));
            }
        }
    }

    let odd_groups: Vec<Vec<u64>> = sweep_groups(config)
        .into_iter()
        .filter(|m| m.iter().all(|&n| n % 2 == 1 && n > 2))
        .collect();

    for moduli in &odd_groups {
        cases += 1;
        let fam = SignatureFamily::model(moduli)?;
        // Vanishing locus is exactly the zero locus.
        if fam.signature_zero_locus()? != zero_locus(fam.group())? {
            ces.push(format!(
                "model family {moduli:?}: vanishing locus differs from the zero locus"
            ));
        }
    }

    // Multiplicativity under concatenation.
    for ma in &odd_groups {
        for mb in &odd_groups {
            let combined: Vec<u64> = ma.iter().chain(mb.iter()).copied().collect();
            let product: u64 = combined.iter().product();
            if product > config.max_group_order {
                continue;
            }
            cases += 1;
            let fa = SignatureFamily::model(ma)?;
            let fb = SignatureFamily::model(mb)?;
            let fab = SignatureFamily::model(&combined)?;
            let ga = fa.group().clone();
            let gb = fb.group().clone();
            for phi in fab.group().elements()? {
                let (pa, pb) = phi.coords().split_at(ma.len());
                let sa = fa.signature(&ga.element(&pa.iter().map(|&c| c as i64).collect::<Vec<_>>())?)?;
                let sb = fb.signature(&gb.element(&pb.iter().map(|&c| c as i64).collect::<Vec<_>>())?)?;
                if fab.signature(&phi)? != sa * sb {
                    ces.push(format!(
                        "multiplicativity fails for {ma:?} x {mb:?} at {phi}"
                    ));
                    break;
                }
            }
        }
    }

    Ok((cases, ces, Vec::new()))
}
