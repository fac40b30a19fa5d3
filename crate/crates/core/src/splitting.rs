//! Hyperplane splittings: collections whose linear translates cut the group
//! into independent cyclic directions.
//!
//! A collection `{H_i}` of affine hyperplanes is a splitting when the
//! induced map `a -> (a + H'_i)_i` into the product of quotients is an
//! isomorphism; equivalently, the translates intersect trivially and the
//! quotient orders multiply to the group order. The union of a splitting
//! determines it far more rigidly than one might expect, and [`recover`]
//! extracts that structure: a matching of hyperplanes to coordinates, a
//! nearly-coordinate description of each, and witnesses `z_i` in the
//! hyperplane matched to each coordinate of order > 2.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::hyperplane::{
    classify_order2, classify_z_hyperplane, maximal_hyperplanes_within, nearly_coordinate,
    zero_locus, AffineHyperplane, NearlyCoordinateData,
};

/// An unordered collection of affine hyperplanes forming a splitting.
///
/// Hyperplanes are kept sorted in canonical order, so splittings compare as
/// unordered multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    group: Group,
    hyperplanes: Vec<AffineHyperplane>,
}

impl Splitting {
    /// Validates the splitting condition.
    pub fn new(group: &Group, hyperplanes: Vec<AffineHyperplane>) -> Result<Splitting> {
        if !is_splitting(group, &hyperplanes)? {
            return Err(Error::NotASplitting);
        }
        let mut hyperplanes = hyperplanes;
        hyperplanes.sort();
        Ok(Splitting {
            group: group.clone(),
            hyperplanes,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn hyperplanes(&self) -> &[AffineHyperplane] {
        &self.hyperplanes
    }

    /// Union of the member sets.
    pub fn union(&self) -> Result<ElementSet> {
        let mut u = ElementSet::empty(self.group.order());
        for h in &self.hyperplanes {
            u.union_with(h.members()?);
        }
        Ok(u)
    }

    /// The coordinate hyperplane splitting of a group.
    pub fn coordinate(group: &Group) -> Result<Splitting> {
        let hs = (0..group.arity())
            .map(|i| AffineHyperplane::coordinate(group, i))
            .collect::<Result<Vec<_>>>()?;
        Splitting::new(group, hs)
    }

    /// Recovers the coordinate structure of a splitting whose union is the
    /// zero locus. See [`RecoveryReport`].
    pub fn recover(&self) -> Result<RecoveryReport> {
        if self.union()? != zero_locus(&self.group)? {
            return Err(Error::UnionMismatch);
        }
        let assignment = assign_coordinates(&self.group, &self.hyperplanes)?;

        // Deterministic report order: quotient orders descending, ties by
        // least determined coordinate.
        let mut order: Vec<usize> = (0..self.hyperplanes.len()).collect();
        order.sort_by_key(|&k| {
            (
                std::cmp::Reverse(self.hyperplanes[k].quotient_order()),
                assignment[k].0,
            )
        });

        let mut permutation = Vec::new();
        let mut nearly = Vec::new();
        let mut quotient_orders = Vec::new();
        let mut z_witnesses = BTreeMap::new();
        for &k in &order {
            let (coord, data) = &assignment[k];
            let coord = *coord;
            permutation.push(coord);
            nearly.push(data.clone());
            quotient_orders.push(self.hyperplanes[k].quotient_order());
            if self.group.moduli()[coord] > 2 {
                let z = self.group.z_vector(coord)?;
                z_witnesses.insert(coord, z.coords().to_vec());
            }
        }
        Ok(RecoveryReport {
            moduli: self.group.moduli().to_vec(),
            permutation,
            nearly_coordinate: nearly,
            quotient_orders,
            z_witnesses,
        })
    }
}

/// True iff the translates intersect trivially and the quotient orders
/// multiply to the group order.
pub fn is_splitting(group: &Group, hyperplanes: &[AffineHyperplane]) -> Result<bool> {
    let mut product: u64 = 1;
    let mut intersection = ElementSet::full(group.order());
    for h in hyperplanes {
        if h.group() != group {
            return Err(Error::GroupMismatch);
        }
        product = product.saturating_mul(h.quotient_order());
        intersection.intersect_with(&h.linear_translate()?);
    }
    Ok(product == group.order() && intersection.len() == 1)
}

/// All splittings (up to unordered equality) whose union is exactly
/// `target`, in canonical order.
///
/// Candidates are pruned to the maximal hyperplanes inside the target: the
/// members of any splitting are maximal among affine hyperplanes contained
/// in their union.
pub fn find_splittings_with_union(group: &Group, target: &ElementSet) -> Result<Vec<Splitting>> {
    let candidates = maximal_hyperplanes_within(group, target)?;
    let translates: Vec<ElementSet> = candidates
        .iter()
        .map(|h| h.linear_translate())
        .collect::<Result<_>>()?;
    let member_sets: Vec<&ElementSet> = candidates
        .iter()
        .map(|h| h.members())
        .collect::<Result<_>>()?;

    let mut found = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let order = group.order();

    struct Search<'a> {
        group: &'a Group,
        candidates: &'a [AffineHyperplane],
        translates: &'a [ElementSet],
        member_sets: &'a [&'a ElementSet],
        target: &'a ElementSet,
        found: &'a mut Vec<Splitting>,
    }

    fn dfs(
        s: &mut Search<'_>,
        start: usize,
        chosen: &mut Vec<usize>,
        inter: ElementSet,
        union: ElementSet,
        product: u64,
    ) -> Result<()> {
        let order = s.group.order();
        if product == order {
            if inter.len() == 1 && union == *s.target {
                let hs: Vec<AffineHyperplane> =
                    chosen.iter().map(|&k| s.candidates[k].clone()).collect();
                s.found.push(Splitting::new(s.group, hs)?);
            }
            return Ok(());
        }
        for k in start..s.candidates.len() {
            let q = s.candidates[k].quotient_order();
            let next = product.saturating_mul(q);
            if next > order || order % next != 0 {
                continue;
            }
            let mut ni = inter.clone();
            ni.intersect_with(&s.translates[k]);
            let mut nu = union.clone();
            nu.union_with(s.member_sets[k]);
            chosen.push(k);
            dfs(s, k + 1, chosen, ni, nu, next)?;
            chosen.pop();
        }
        Ok(())
    }

    let mut search = Search {
        group,
        candidates: &candidates,
        translates: &translates,
        member_sets: &member_sets,
        target,
        found: &mut found,
    };
    dfs(
        &mut search,
        0,
        &mut chosen,
        ElementSet::full(order),
        ElementSet::empty(order),
        1,
    )?;
    found.sort_by(|a, b| a.hyperplanes.cmp(&b.hyperplanes));
    found.dedup();
    Ok(found)
}

/// The structure extracted from a splitting whose union is the zero locus:
/// the `k`'th entry of `permutation` is the coordinate matched to the
/// `k`'th reported hyperplane, `nearly_coordinate[k]` describes that
/// hyperplane, and `quotient_orders` is a permutation of the moduli.
/// `z_witnesses` maps each coordinate `i` of modulus > 2 to the vector
/// `z_i` contained in the hyperplane matched to `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveryReport {
    pub moduli: Vec<u64>,
    pub permutation: Vec<usize>,
    pub nearly_coordinate: Vec<NearlyCoordinateData>,
    pub quotient_orders: Vec<u64>,
    pub z_witnesses: BTreeMap<usize, Vec<u64>>,
}

/// Matches each hyperplane of a zero-locus splitting to a distinct
/// coordinate, with a nearly-coordinate description. Hyperplanes with
/// quotient order > 2 contain a unique `z_i` and are forced; order-2
/// hyperplanes may serve as nearly-`Z_i` for any supported coordinate, and
/// the lexicographically least consistent assignment is chosen.
pub(crate) fn assign_coordinates(
    group: &Group,
    hyperplanes: &[AffineHyperplane],
) -> Result<Vec<(usize, NearlyCoordinateData)>> {
    let m = group.arity();
    if hyperplanes.len() != m {
        return Err(Error::TheoremViolation(format!(
            "splitting of a {m}-factor group with {} hyperplanes",
            hyperplanes.len()
        )));
    }

    // Candidate coordinates for each hyperplane.
    let mut options: Vec<Vec<(usize, NearlyCoordinateData)>> = Vec::with_capacity(m);
    for h in hyperplanes {
        let mut opts = Vec::new();
        if h.quotient_order() == 2 {
            let support: Vec<usize> = h
                .character()
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, _)| i)
                .collect();
            classify_order2(h)?;
            for &i in &support {
                let rest: Vec<usize> = support.iter().copied().filter(|&j| j != i).collect();
                opts.push((i, NearlyCoordinateData::new(group, i, 1, &rest)?));
            }
        } else {
            for i in 0..m {
                if group.moduli()[i] != h.quotient_order() {
                    continue;
                }
                let z = group.z_vector(i)?;
                if !h.contains(&z)? {
                    continue;
                }
                let data = classify_z_hyperplane(h, i)?;
                // Splitting members are maximal inside the union, so the
                // classification containment is an equality here.
                if &nearly_coordinate(group, &data)? != h {
                    return Err(Error::TheoremViolation(format!(
                        "splitting member {h} is strictly contained in its nearly-coordinate hyperplane"
                    )));
                }
                opts.push((i, data));
            }
        }
        if opts.is_empty() {
            return Err(Error::TheoremViolation(format!(
                "no coordinate matches splitting member {h}"
            )));
        }
        options.push(opts);
    }

    // Backtracking exact matching, trying least coordinates first.
    fn go(
        options: &[Vec<(usize, NearlyCoordinateData)>],
        k: usize,
        used: &mut Vec<bool>,
        acc: &mut Vec<(usize, NearlyCoordinateData)>,
    ) -> bool {
        if k == options.len() {
            return true;
        }
        for (i, data) in &options[k] {
            if used[*i] {
                continue;
            }
            used[*i] = true;
            acc.push((*i, data.clone()));
            if go(options, k + 1, used, acc) {
                return true;
            }
            acc.pop();
            used[*i] = false;
        }
        false
    }

    let mut used = vec![false; m];
    let mut acc = Vec::new();
    if !go(&options, 0, &mut used, &mut acc) {
        return Err(Error::TheoremViolation(
            "no bijective matching of splitting members to coordinates".into(),
        ));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmodz::QmodZ;

    #[test]
    fn coordinate_splitting_is_a_splitting() {
        for moduli in [&[2, 3][..], &[4, 2][..], &[3, 3, 3][..], &[5][..]] {
            let g = Group::new(moduli).unwrap();
            let s = Splitting::coordinate(&g).unwrap();
            assert_eq!(s.union().unwrap(), zero_locus(&g).unwrap());
        }
    }

    #[test]
    fn crt_splitting_of_z6() {
        let g = Group::new(&[6]).unwrap();
        // 2Z/6 = kernel of x -> 3x/6, 3Z/6 = kernel of x -> 2x/6.
        let h2 = AffineHyperplane::new(&g, g.character(&[3]).unwrap(), QmodZ::ZERO).unwrap();
        let h3 = AffineHyperplane::new(&g, g.character(&[2]).unwrap(), QmodZ::ZERO).unwrap();
        assert!(is_splitting(&g, &[h2.clone(), h3.clone()]).unwrap());

        let g30 = Group::new(&[30]).unwrap();
        // 2Z/30 and 6Z/30 have quotient orders 2 and 6: 12 != 30.
        let a = AffineHyperplane::new(&g30, g30.character(&[15]).unwrap(), QmodZ::ZERO).unwrap();
        let b = AffineHyperplane::new(&g30, g30.character(&[5]).unwrap(), QmodZ::ZERO).unwrap();
        assert_eq!(a.members().unwrap().len(), 15);
        assert_eq!(b.members().unwrap().len(), 5);
        assert!(!is_splitting(&g30, &[a, b]).unwrap());
    }

    #[test]
    fn union_of_singleton_splitting() {
        let g = Group::new(&[6]).unwrap();
        let h = AffineHyperplane::new(&g, g.character(&[1]).unwrap(), QmodZ::ZERO).unwrap();
        let s = Splitting::new(&g, vec![h]).unwrap();
        assert_eq!(s.union().unwrap().iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn non_coordinate_splitting_of_two_cubed() {
        let g = Group::new(&[2, 2, 2]).unwrap();
        let z0 = AffineHyperplane::coordinate(&g, 0).unwrap();
        let z1 = AffineHyperplane::coordinate(&g, 1).unwrap();
        let h = AffineHyperplane::new(&g, g.character(&[1, 1, 1]).unwrap(), QmodZ::ZERO).unwrap();
        let s = Splitting::new(&g, vec![z0, z1, h]).unwrap();
        assert_eq!(s.union().unwrap(), zero_locus(&g).unwrap());
    }

    #[test]
    fn find_splittings_examples() {
        // (Z/3)^2: only the coordinate splitting covers the zero locus.
        let g = Group::new(&[3, 3]).unwrap();
        let found = find_splittings_with_union(&g, &zero_locus(&g).unwrap()).unwrap();
        assert_eq!(found, vec![Splitting::coordinate(&g).unwrap()]);

        // (Z/2)^3 has more than one, including the non-coordinate one.
        let g = Group::new(&[2, 2, 2]).unwrap();
        let found = find_splittings_with_union(&g, &zero_locus(&g).unwrap()).unwrap();
        assert!(found.len() > 1);
        assert!(found.contains(&Splitting::coordinate(&g).unwrap()));
        let z0 = AffineHyperplane::coordinate(&g, 0).unwrap();
        let z1 = AffineHyperplane::coordinate(&g, 1).unwrap();
        let h = AffineHyperplane::new(&g, g.character(&[1, 1, 1]).unwrap(), QmodZ::ZERO).unwrap();
        assert!(found.contains(&Splitting::new(&g, vec![z0, z1, h]).unwrap()));

        // A single factor: the zero locus is {0} and the splitting is the
        // full-order hyperplane {0}.
        let g = Group::new(&[5]).unwrap();
        let target = ElementSet::from_ranks(5, [0]);
        let found = find_splittings_with_union(&g, &target).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].hyperplanes().len(), 1);
        assert_eq!(found[0].hyperplanes()[0].members().unwrap().len(), 1);
    }

    #[test]
    fn recover_coordinate_splitting() {
        let g = Group::new(&[3, 5]).unwrap();
        let report = Splitting::coordinate(&g).unwrap().recover().unwrap();
        // Orders sorted descending: 5 then 3.
        assert_eq!(report.quotient_orders, vec![5, 3]);
        assert_eq!(report.permutation, vec![1, 0]);
        assert!(report.nearly_coordinate.iter().all(|d| d.phi_support.is_empty()));
        assert_eq!(report.z_witnesses.len(), 2);
        assert_eq!(report.z_witnesses[&0], vec![0, 1]);
        assert_eq!(report.z_witnesses[&1], vec![1, 0]);
    }

    #[test]
    fn recover_non_coordinate_splitting() {
        let g = Group::new(&[2, 2, 2]).unwrap();
        let z0 = AffineHyperplane::coordinate(&g, 0).unwrap();
        let z1 = AffineHyperplane::coordinate(&g, 1).unwrap();
        let h = AffineHyperplane::new(&g, g.character(&[1, 1, 1]).unwrap(), QmodZ::ZERO).unwrap();
        let s = Splitting::new(&g, vec![z0, z1, h]).unwrap();
        let report = s.recover().unwrap();
        assert_eq!(report.quotient_orders, vec![2, 2, 2]);
        assert_eq!(report.permutation, vec![0, 1, 2]);
        // The third hyperplane is nearly-coordinate at index 2 with
        // determining coordinates {0, 1}.
        let third = &report.nearly_coordinate[2];
        assert_eq!(third.determined, 2);
        assert_eq!(third.phi_support, vec![0, 1]);
        assert!(report.z_witnesses.is_empty());
    }

    #[test]
    fn recover_mixed_moduli() {
        let g = Group::new(&[2, 3, 4]).unwrap();
        let report = Splitting::coordinate(&g).unwrap().recover().unwrap();
        assert_eq!(report.quotient_orders, vec![4, 3, 2]);
        let mut sorted = report.quotient_orders.clone();
        sorted.sort();
        assert_eq!(sorted, vec![2, 3, 4]);
        assert_eq!(report.permutation, vec![2, 1, 0]);
    }

    #[test]
    fn recover_rejects_wrong_union() {
        let g = Group::new(&[2, 3]).unwrap();
        let h = AffineHyperplane::new(&g, g.character(&[1, 1]).unwrap(), QmodZ::ZERO).unwrap();
        let s = Splitting::new(&g, vec![h]).unwrap();
        assert_eq!(s.recover(), Err(Error::UnionMismatch));
    }
}
