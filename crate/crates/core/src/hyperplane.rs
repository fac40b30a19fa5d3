//! Affine hyperplanes and the zero locus.
//!
//! An affine hyperplane is a nonempty fiber of a nontrivial character, or
//! equivalently a coset of a proper subgroup with cyclic quotient. The
//! zero locus of a product group is the union of its coordinate
//! hyperplanes: the elements with at least one coordinate equal to zero.
//!
//! Besides the coordinate hyperplanes this module builds the family of
//! nearly-coordinate hyperplanes, where one "determined" coordinate is a
//! function of the order-2 coordinates rather than pinned to zero, and the
//! classifier that exhibits every hyperplane through a `z` vector inside
//! the zero locus as a subset of a nearly-coordinate one.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::affine::is_affine_set;
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::character::Character;
use crate::qmodz::QmodZ;

/// An affine hyperplane `character^{-1}(target)` in canonical form.
///
/// Canonical form: among all pairs `(u * character, u * target)` with `u`
/// a unit mod the character order (these all have the same fiber), the
/// stored character is the lexicographically least, so hyperplane equality
/// is structural equality.
#[derive(Debug, Clone)]
pub struct AffineHyperplane {
    group: Group,
    character: Character,
    target: QmodZ,
    members: OnceLock<ElementSet>,
}

impl PartialEq for AffineHyperplane {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.character == other.character && self.target == other.target
    }
}

impl Eq for AffineHyperplane {}

impl PartialOrd for AffineHyperplane {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffineHyperplane {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.character.coords(), &self.target).cmp(&(other.character.coords(), &other.target))
    }
}

impl AffineHyperplane {
    /// Builds the fiber `character^{-1}(target)` and canonicalizes.
    pub fn new(group: &Group, character: Character, target: QmodZ) -> Result<AffineHyperplane> {
        group.check_character(&character)?;
        if character.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        let order = group.character_order(&character);
        if order % target.denom() != 0 {
            return Err(Error::EmptyFiber {
                target: target.to_string(),
                order,
            });
        }
        let (canon, u) = group.canonical_generator(&character);
        Ok(AffineHyperplane {
            group: group.clone(),
            character: canon,
            target: target.scale(u as i64),
            members: OnceLock::new(),
        })
    }

    /// The `i`'th coordinate hyperplane: the elements with `x_i = 0`.
    pub fn coordinate(group: &Group, i: usize) -> Result<AffineHyperplane> {
        AffineHyperplane::new(group, group.dual_basis(i)?, QmodZ::ZERO)
    }

    /// The hyperplane of coordinate sum `m` in `(Z/2)^{m+1}`.
    pub fn vile(m: usize) -> Result<AffineHyperplane> {
        let group = Group::new(&vec![2; m + 1])?;
        let chi = group.character(&vec![1; m + 1])?;
        AffineHyperplane::new(&group, chi, QmodZ::new(m as i64, 2))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn target(&self) -> &QmodZ {
        &self.target
    }

    /// Order of the cyclic quotient by the linear translate.
    pub fn quotient_order(&self) -> u64 {
        self.group.character_order(&self.character)
    }

    /// The member set, memoized. Size is `|A| / quotient_order`.
    pub fn members(&self) -> Result<&ElementSet> {
        self.group.check_budget()?;
        if let Some(m) = self.members.get() {
            return Ok(m);
        }
        let mut set = ElementSet::empty(self.group.order());
        for (rank, a) in self.group.elements()?.enumerate() {
            if self.group.char_eval(&self.character, &a)? == self.target {
                set.insert(rank as u64);
            }
        }
        let _ = self.members.set(set);
        Ok(self.members.get().expect("just set"))
    }

    pub fn member_elements(&self) -> Result<Vec<Element>> {
        Ok(self.group.set_elements(self.members()?))
    }

    pub fn contains(&self, a: &Element) -> Result<bool> {
        Ok(self.group.char_eval(&self.character, a)? == self.target)
    }

    /// The linear translate: the kernel of the character.
    pub fn linear_translate(&self) -> Result<ElementSet> {
        let mut set = ElementSet::empty(self.group.order());
        for (rank, a) in self.group.elements()?.enumerate() {
            if self.group.char_eval(&self.character, &a)?.is_zero() {
                set.insert(rank as u64);
            }
        }
        Ok(set)
    }

    /// Reconstructs a hyperplane from its member set.
    ///
    /// Fails with `NonCyclicQuotient` when the quotient by the linear
    /// translate is not cyclic: affine subgroups inside the zero locus
    /// exist that are not hyperplanes, and this constructor rejects them.
    pub fn from_set(group: &Group, set: &ElementSet) -> Result<AffineHyperplane> {
        group.check_budget()?;
        if set.is_empty() {
            return Err(Error::EmptyInput);
        }
        if set.len() == group.order() {
            return Err(Error::ZeroCharacter);
        }
        if !is_affine_set(group, set)? {
            return Err(Error::NotAffine);
        }
        let basepoint = group.unrank(set.iter().next().expect("nonempty"));
        let translate: Vec<Element> = set
            .iter()
            .map(|r| group.sub(&group.unrank(r), &basepoint))
            .collect();
        // The quotient is cyclic iff some character annihilating the
        // translate has order |A| / |set|.
        let quotient = group.order() / set.len();
        for chi in group.characters()? {
            if group.character_order(&chi) != quotient {
                continue;
            }
            if translate
                .iter()
                .all(|s| group.char_eval(&chi, s).map(|v| v.is_zero()).unwrap_or(false))
            {
                let target = group.char_eval(&chi, &basepoint)?;
                return AffineHyperplane::new(group, chi, target);
            }
        }
        Err(Error::NonCyclicQuotient)
    }

    /// True iff every member has some zero coordinate.
    pub fn is_contained_in_zero_locus(&self) -> Result<bool> {
        let zl = zero_locus(&self.group)?;
        Ok(self.members()?.is_subset_of(&zl))
    }

    /// Maximality among affine hyperplanes contained in the zero locus.
    pub fn is_maximal_in_zero_locus(&self) -> Result<bool> {
        let zl = zero_locus(&self.group)?;
        if !self.members()?.is_subset_of(&zl) {
            return Err(Error::NotInZeroLocus);
        }
        self.is_maximal_within(&zl)
    }

    /// Whether no strictly larger affine hyperplane sits between this one
    /// and `target_set`. Any hyperplane containing this one is a fiber of
    /// `d * character` for a proper divisor `d` of the character order, so
    /// those are the only candidates to check.
    pub fn is_maximal_within(&self, target_set: &ElementSet) -> Result<bool> {
        let order = self.quotient_order();
        let basepoint = self
            .group
            .unrank(self.members()?.iter().next().expect("hyperplanes are nonempty"));
        for d in 2..order {
            if order % d != 0 {
                continue;
            }
            let chi = self.group.char_scale(d as i64, &self.character);
            let target = self.group.char_eval(&chi, &basepoint)?;
            let bigger = AffineHyperplane::new(&self.group, chi, target)?;
            if bigger.members()?.is_subset_of(target_set) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::fmt::Display for AffineHyperplane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{chi=({}) -> {}}}", self.character, self.target)
    }
}

/// The set of elements with at least one zero coordinate.
pub fn zero_locus(g: &Group) -> Result<ElementSet> {
    g.check_budget()?;
    let mut set = ElementSet::empty(g.order());
    for (rank, a) in g.elements()?.enumerate() {
        if a.coords().contains(&0) {
            set.insert(rank as u64);
        }
    }
    Ok(set)
}

/// Data for a nearly-coordinate hyperplane.
///
/// The hyperplane consists of the points whose determined coordinate
/// satisfies `x_j = inflation * (phi(x) + phi(1))  (mod n_j)`, where `phi`
/// sums the coordinates listed in `phi_support` modulo 2 (each of those
/// factors must have modulus 2). When the support is empty this is the
/// coordinate hyperplane `x_j = 0` and the inflation carries no
/// information; it is normalized to `n_j / 2` for even `n_j` and to 1
/// otherwise. When the support is nonempty the modulus of the determined
/// coordinate must equal `2 * inflation`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearlyCoordinateData {
    #[serde(rename = "determined")]
    pub determined: usize,
    #[serde(rename = "inflation")]
    pub inflation: u64,
    #[serde(rename = "phi_support")]
    pub phi_support: Vec<usize>,
    #[serde(rename = "independent")]
    pub independent: Vec<usize>,
}

impl NearlyCoordinateData {
    /// Normalizes and validates the data against a group.
    pub fn new(
        group: &Group,
        determined: usize,
        inflation: u64,
        phi_support: &[usize],
    ) -> Result<NearlyCoordinateData> {
        group.check_index(determined)?;
        let nj = group.moduli()[determined];
        let support: BTreeSet<usize> = phi_support.iter().copied().collect();
        for &i in &support {
            group.check_index(i)?;
            if i == determined || group.moduli()[i] != 2 {
                return Err(Error::BadSupport {
                    index: i,
                    modulus: if i == determined { nj } else { group.moduli()[i] },
                });
            }
        }
        let inflation = if support.is_empty() {
            if nj % 2 == 0 {
                nj / 2
            } else {
                1
            }
        } else {
            if nj != 2 * inflation {
                return Err(Error::BadInflation {
                    inflation,
                    modulus: nj,
                });
            }
            inflation
        };
        let independent = (0..group.arity())
            .filter(|i| *i != determined && !support.contains(i))
            .collect();
        Ok(NearlyCoordinateData {
            determined,
            inflation,
            phi_support: support.into_iter().collect(),
            independent,
        })
    }

    /// The defining congruence, evaluated on raw coordinates.
    pub fn matches(&self, group: &Group, a: &Element) -> bool {
        let nj = group.moduli()[self.determined];
        let phi: u64 = self
            .phi_support
            .iter()
            .map(|&i| a.coords()[i])
            .sum::<u64>()
            % 2;
        let phi_ones = self.phi_support.len() as u64 % 2;
        a.coords()[self.determined] == (self.inflation * ((phi + phi_ones) % 2)) % nj
    }
}

/// Builds the nearly-coordinate hyperplane described by `data`.
///
/// The fiber description: the character is `e_j^dual + sum of e_i^dual`
/// over the support (each supported factor has order 2, so its dual
/// coordinate is 1), and the target is `|support| / 2 mod 1`.
pub fn nearly_coordinate(group: &Group, data: &NearlyCoordinateData) -> Result<AffineHyperplane> {
    let data = NearlyCoordinateData::new(group, data.determined, data.inflation, &data.phi_support)?;
    let mut coords = vec![0i64; group.arity()];
    coords[data.determined] = 1;
    for &i in &data.phi_support {
        coords[i] = 1;
    }
    let chi = group.character(&coords)?;
    let target = QmodZ::new(data.phi_support.len() as i64, 2);
    AffineHyperplane::new(group, chi, target)
}

/// All hyperplanes through `z_0 = (0, 1, ..., 1)` contained in the zero
/// locus, in canonical order.
pub fn enumerate_z_hyperplanes(g: &Group, i: usize) -> Result<Vec<AffineHyperplane>> {
    g.check_index(i)?;
    let zl = zero_locus(g)?;
    let z = g.z_vector(i)?;
    // Hyperplane ordering ignores the member cache, so the set key is stable.
    #[allow(clippy::mutable_key_type)]
    let mut out = BTreeSet::new();
    for chi in g.characters()? {
        if chi.is_zero() {
            continue;
        }
        let target = g.char_eval(&chi, &z)?;
        let h = AffineHyperplane::new(g, chi, target)?;
        if h.members()?.is_subset_of(&zl) {
            out.insert(h);
        }
    }
    Ok(out.into_iter().collect())
}

pub fn enumerate_z0_hyperplanes(g: &Group) -> Result<Vec<AffineHyperplane>> {
    enumerate_z_hyperplanes(g, 0)
}

/// All canonical hyperplanes whose members lie inside `target_set`.
///
/// Iterates over characters and partitions the group by fiber, so the cost
/// is `|A|` per character rather than per (character, target) pair.
pub fn hyperplanes_within(g: &Group, target_set: &ElementSet) -> Result<Vec<AffineHyperplane>> {
    g.check_budget()?;
    let order = g.order();
    #[allow(clippy::mutable_key_type)]
    let mut out = BTreeSet::new();
    let mut fiber_of = vec![0u64; order as usize];
    for chi in g.characters()? {
        if chi.is_zero() {
            continue;
        }
        let n = g.character_order(&chi);
        // fiber_of[rank] = target numerator over denominator n
        for (rank, a) in g.elements()?.enumerate() {
            let v = g.char_eval(&chi, &a)?;
            fiber_of[rank] = v.numer() * (n / v.denom());
        }
        let mut ok = vec![true; n as usize];
        for (rank, &f) in fiber_of.iter().enumerate() {
            if !target_set.contains(rank as u64) {
                ok[f as usize] = false;
            }
        }
        for (f, &good) in ok.iter().enumerate() {
            if good {
                let h = AffineHyperplane::new(g, chi.clone(), QmodZ::new(f as i64, n as i64))?;
                out.insert(h);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// The hyperplanes inside `target_set` that are maximal with respect to
/// inclusion of member sets.
pub fn maximal_hyperplanes_within(
    g: &Group,
    target_set: &ElementSet,
) -> Result<Vec<AffineHyperplane>> {
    let all = hyperplanes_within(g, target_set)?;
    let sets: Vec<&ElementSet> = all.iter().map(|h| h.members()).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, h) in all.iter().enumerate() {
        let maximal = (0..all.len()).all(|j| {
            j == i || !(sets[i].is_subset_of(sets[j]) && sets[i].len() < sets[j].len())
        });
        if maximal {
            out.push(h.clone());
        }
    }
    Ok(out)
}

/// Classifies a hyperplane through `z_0` inside the zero locus: returns
/// nearly-coordinate data whose hyperplane contains it.
///
/// The inflation is read off from the projection of the members to the
/// initial coordinate (a linear subgroup `r Z/n_0`), and the determining
/// character is then found by searching the characters supported on the
/// order-2 factors. `TheoremViolation` is returned when no candidate
/// contains the input; on genuine hyperplanes this never fires.
pub fn classify_z0_hyperplane(h: &AffineHyperplane) -> Result<NearlyCoordinateData> {
    classify_z_hyperplane(h, 0)
}

/// Classifies a hyperplane through `z_i` as nearly-coordinate with
/// determined coordinate `i`, by permuting coordinate `i` into slot 0.
pub fn classify_z_hyperplane(h: &AffineHyperplane, index: usize) -> Result<NearlyCoordinateData> {
    let g = h.group();
    g.check_index(index)?;
    let z = g.z_vector(index)?;
    if !h.contains(&z)? || !h.is_contained_in_zero_locus()? {
        return Err(Error::NotZHyperplane { index });
    }

    let members = h.member_elements()?;
    // Projection to the determined coordinate; contains 0 since z_i does.
    let proj: BTreeSet<u64> = members.iter().map(|a| a.coords()[index]).collect();
    let n0 = g.moduli()[index];
    let r = proj.iter().copied().filter(|&c| c != 0).min();

    match r {
        None => {
            // Trivial projection: contained in the coordinate hyperplane.
            NearlyCoordinateData::new(g, index, 0, &[])
        }
        Some(r) => {
            if n0 != 2 * r {
                return Err(Error::TheoremViolation(format!(
                    "projection of a z-hyperplane generated by {r} inside Z/{n0}"
                )));
            }
            // Candidate supports: subsets of the order-2 coordinates.
            let support_pool: Vec<usize> = (0..g.arity())
                .filter(|&i| i != index && g.moduli()[i] == 2)
                .collect();
            for mask in 1u64..(1 << support_pool.len()) {
                let support: Vec<usize> = support_pool
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask & (1 << b) != 0)
                    .map(|(_, &i)| i)
                    .collect();
                let data = NearlyCoordinateData::new(g, index, r, &support)?;
                if members.iter().all(|a| data.matches(g, a)) {
                    return Ok(data);
                }
            }
            Err(Error::TheoremViolation(
                "no nearly-coordinate hyperplane contains the given z-hyperplane".into(),
            ))
        }
    }
}

/// Classifies a hyperplane inside the zero locus with quotient of order 2.
///
/// Such a hyperplane is always nearly-coordinate with inflation 1: its
/// character is supported on order-2 factors only, and any supported index
/// can play the determined role; the least one is reported.
pub fn classify_order2(h: &AffineHyperplane) -> Result<NearlyCoordinateData> {
    if h.quotient_order() != 2 {
        return Err(Error::NotOrderTwo);
    }
    if !h.is_contained_in_zero_locus()? {
        return Err(Error::NotInZeroLocus);
    }
    let g = h.group();
    let support: Vec<usize> = h
        .character()
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, _)| i)
        .collect();
    for &i in &support {
        if g.moduli()[i] != 2 {
            return Err(Error::TheoremViolation(format!(
                "order-2 hyperplane in the zero locus supported on Z/{}",
                g.moduli()[i]
            )));
        }
    }
    let determined = support[0];
    let rest: Vec<usize> = support[1..].to_vec();
    let data = NearlyCoordinateData::new(g, determined, 1, &rest)?;
    let rebuilt = nearly_coordinate(g, &data)?;
    if &rebuilt != h {
        return Err(Error::TheoremViolation(
            "order-2 classification did not reproduce the hyperplane".into(),
        ));
    }
    Ok(data)
}
