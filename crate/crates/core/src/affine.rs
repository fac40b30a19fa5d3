//! Affine subgroups: cosets of subgroups, or equivalently nonempty sets
//! closed under integer affine combinations `sum t_i x_i` with `sum t_i = 1`.

use std::sync::OnceLock;

use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Element, Group};

/// An affine subgroup, materialized as a basepoint plus generators of its
/// linear translate.
#[derive(Debug, Clone)]
pub struct AffineSubgroup {
    basepoint: Element,
    generators: Vec<Element>,
    members: OnceLock<ElementSet>,
}

impl PartialEq for AffineSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.basepoint == other.basepoint && self.generators == other.generators
    }
}

impl AffineSubgroup {
    pub fn basepoint(&self) -> &Element {
        &self.basepoint
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// The full member set `basepoint + <generators>`, memoized.
    pub fn members(&self, g: &Group) -> Result<&ElementSet> {
        g.check_budget()?;
        if let Some(m) = self.members.get() {
            return Ok(m);
        }
        let span = subgroup_closure(g, &self.generators)?;
        let mut set = ElementSet::empty(g.order());
        for r in span.iter() {
            set.insert(g.rank(&g.add(&self.basepoint, &g.unrank(r))));
        }
        let _ = self.members.set(set);
        Ok(self.members.get().expect("just set"))
    }

    pub fn contains(&self, g: &Group, a: &Element) -> Result<bool> {
        Ok(self.members(g)?.contains(g.rank(a)))
    }

    pub fn len(&self, g: &Group) -> Result<u64> {
        Ok(self.members(g)?.len())
    }

    /// The linear translate: the subgroup of which this set is a coset.
    pub fn linear_translate(&self, g: &Group) -> Result<ElementSet> {
        subgroup_closure(g, &self.generators)
    }
}

/// Closure of a generator list into the subgroup it spans.
fn subgroup_closure(g: &Group, generators: &[Element]) -> Result<ElementSet> {
    g.check_budget()?;
    let mut set = ElementSet::empty(g.order());
    set.insert(g.rank(&g.zero()));
    let mut frontier = vec![g.zero()];
    while let Some(cur) = frontier.pop() {
        for gen in generators {
            let next = g.add(&cur, gen);
            let r = g.rank(&next);
            if !set.contains(r) {
                set.insert(r);
                frontier.push(next);
            }
        }
    }
    Ok(set)
}

/// The smallest affine subgroup containing the given points: the first point
/// translated by the subgroup generated by pairwise differences.
pub fn affine_closure(g: &Group, points: &[Element]) -> Result<AffineSubgroup> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    for p in points {
        g.check_element(p)?;
    }
    let basepoint = points[0].clone();
    let generators: Vec<Element> = points[1..]
        .iter()
        .map(|p| g.sub(p, &basepoint))
        .filter(|d| *d != g.zero())
        .collect();
    Ok(AffineSubgroup {
        basepoint,
        generators,
        members: OnceLock::new(),
    })
}

/// Whether a set of ranks is closed under affine combinations, checked via
/// the two-term criterion `x - y + z` in the set for all members x, y, z.
pub fn is_affine_set(g: &Group, set: &ElementSet) -> Result<bool> {
    g.check_budget()?;
    if set.is_empty() {
        return Ok(false);
    }
    let members: Vec<Element> = g.set_elements(set);
    let base = &members[0];
    for y in &members {
        for z in &members {
            let cand = g.add(&g.sub(base, y), z);
            if !set.contains(g.rank(&cand)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elems(g: &Group, coords: &[&[i64]]) -> Vec<Element> {
        coords.iter().map(|c| g.element(c).unwrap()).collect()
    }

    #[test]
    fn singleton_closure() {
        let g = Group::new(&[2, 2]).unwrap();
        let s = affine_closure(&g, &elems(&g, &[&[0, 0]])).unwrap();
        assert_eq!(s.len(&g).unwrap(), 1);
        assert!(s.contains(&g, &g.zero()).unwrap());
    }

    #[test]
    fn two_point_line_in_klein_group() {
        let g = Group::new(&[2, 2]).unwrap();
        let pts = elems(&g, &[&[1, 0], &[0, 1]]);
        let s = affine_closure(&g, &pts).unwrap();
        let members = g.set_elements(s.members(&g).unwrap());
        assert_eq!(members, elems(&g, &[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn rescaled_diagonal_in_three_cubed() {
        let g = Group::new(&[3, 3, 3]).unwrap();
        let s = affine_closure(&g, &elems(&g, &[&[0, 1, 1], &[2, 0, 2]])).unwrap();
        let members: Vec<Element> = g.set_elements(s.members(&g).unwrap());
        let expect = elems(&g, &[&[0, 1, 1], &[1, 2, 0], &[2, 0, 2]]);
        assert_eq!(members, expect);
    }

    #[test]
    fn closure_is_idempotent_and_contains_input() {
        let g = Group::new(&[4, 2, 3]).unwrap();
        let pts = elems(&g, &[&[1, 1, 2], &[3, 0, 1], &[0, 1, 0]]);
        let s = affine_closure(&g, &pts).unwrap();
        for p in &pts {
            assert!(s.contains(&g, p).unwrap());
        }
        let members = g.set_elements(s.members(&g).unwrap());
        let s2 = affine_closure(&g, &members).unwrap();
        assert_eq!(s2.members(&g).unwrap(), s.members(&g).unwrap());
        assert!(is_affine_set(&g, s.members(&g).unwrap()).unwrap());
    }

    #[test]
    fn affine_criterion_rejects_non_affine_sets() {
        let g = Group::new(&[3, 3]).unwrap();
        let set = ElementSet::from_ranks(
            9,
            [&[0, 0][..], &[1, 1][..]]
                .iter()
                .map(|c| g.rank(&g.element(c).unwrap())),
        );
        assert!(!is_affine_set(&g, &set).unwrap());
    }

    #[test]
    fn empty_input_is_an_error() {
        let g = Group::new(&[2]).unwrap();
        assert_eq!(affine_closure(&g, &[]).err(), Some(Error::EmptyInput));
    }
}
