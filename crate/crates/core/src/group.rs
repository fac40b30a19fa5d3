//! Finite products of cyclic groups and their elements.
//!
//! A [`Group`] is an ordered list of cyclic moduli `n_0, ..., n_m` (each at
//! least 2) representing `Z/n_0 x ... x Z/n_m`. Elements are coordinate
//! vectors reduced into `[0, n_i)`; all arithmetic re-reduces eagerly so
//! structural equality is group equality.

use std::fmt;

use crate::elemset::ElementSet;
use crate::error::{Error, Result};

/// Default cap on the order of groups whose elements we are willing to
/// enumerate exhaustively.
pub const DEFAULT_ENUM_BUDGET: u64 = 20_000;

/// A product of non-trivial finite cyclic groups.
#[derive(Debug, Clone)]
pub struct Group {
    moduli: Vec<u64>,
    order: u64,
    budget: u64,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.moduli == other.moduli
    }
}

impl Eq for Group {}

impl Group {
    /// Builds the product of the given cyclic factors with the default
    /// enumeration budget.
    pub fn new(moduli: &[u64]) -> Result<Group> {
        Group::with_budget(moduli, DEFAULT_ENUM_BUDGET)
    }

    pub fn with_budget(moduli: &[u64], budget: u64) -> Result<Group> {
        if moduli.is_empty() {
            return Err(Error::EmptyGroup);
        }
        let mut order: u64 = 1;
        for &n in moduli {
            if n < 2 {
                return Err(Error::InvalidModulus(n));
            }
            order = order
                .checked_mul(n)
                .ok_or(Error::EnumerationBudgetExceeded {
                    order: u64::MAX,
                    budget,
                })?;
        }
        Ok(Group {
            moduli: moduli.to_vec(),
            order,
            budget,
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic factors.
    pub fn arity(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Fails when the order is too large for exhaustive element sweeps.
    pub fn check_budget(&self) -> Result<()> {
        if self.order > self.budget {
            Err(Error::EnumerationBudgetExceeded {
                order: self.order,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            coords: vec![0; self.arity()],
        }
    }

    /// The standard basis vector `e_i`.
    pub fn basis(&self, i: usize) -> Result<Element> {
        self.check_index(i)?;
        let mut coords = vec![0; self.arity()];
        coords[i] = 1;
        Ok(Element { coords })
    }

    /// The all-ones vector.
    pub fn all_ones(&self) -> Element {
        Element {
            coords: vec![1; self.arity()],
        }
    }

    /// The vector with 1 in every slot except a 0 in slot `i`.
    pub fn z_vector(&self, i: usize) -> Result<Element> {
        self.check_index(i)?;
        let mut coords = vec![1; self.arity()];
        coords[i] = 0;
        Ok(Element { coords })
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.arity() {
            Err(Error::IndexOutOfRange {
                index: i,
                arity: self.arity(),
            })
        } else {
            Ok(())
        }
    }

    /// Builds an element from signed coordinates, reducing each into range.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.arity() {
            return Err(Error::GroupMismatch);
        }
        Ok(Element {
            coords: coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        })
    }

    /// Checks that `a` is a valid, reduced element of this group.
    pub fn check_element(&self, a: &Element) -> Result<()> {
        if a.coords.len() != self.arity()
            || a.coords.iter().zip(&self.moduli).any(|(&c, &n)| c >= n)
        {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.moduli)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        Element {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.moduli)
                .map(|((&x, &y), &n)| (x + n - y) % n)
                .collect(),
        }
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.sub(&self.zero(), a)
    }

    /// Integer scaling `t * a`.
    pub fn scale(&self, t: i64, a: &Element) -> Element {
        Element {
            coords: a
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &n)| ((t.rem_euclid(n as i64) as u64) * x) % n)
                .collect(),
        }
    }

    /// Lexicographic rank of an element, with coordinate 0 most significant.
    pub fn rank(&self, a: &Element) -> u64 {
        let mut r = 0;
        for (&c, &n) in a.coords.iter().zip(&self.moduli) {
            r = r * n + c;
        }
        r
    }

    pub fn unrank(&self, mut rank: u64) -> Element {
        let mut coords = vec![0; self.arity()];
        for i in (0..self.arity()).rev() {
            coords[i] = rank % self.moduli[i];
            rank /= self.moduli[i];
        }
        Element { coords }
    }

    /// Streams every element exactly once in lexicographic order.
    pub fn elements(&self) -> Result<Elements<'_>> {
        self.check_budget()?;
        Ok(Elements {
            group: self,
            next: Some(self.zero()),
        })
    }

    /// Turns a set of ranks back into elements, in lexicographic order.
    pub fn set_elements(&self, set: &ElementSet) -> Vec<Element> {
        set.iter().map(|r| self.unrank(r)).collect()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// An element of a [`Group`], stored with every coordinate reduced.
///
/// Elements do not carry a back-reference to their group; operations that
/// combine an element with a group validate the shape and report
/// `GroupMismatch` when it does not fit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    coords: Vec<u64>,
}

impl Element {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn from_coords(coords: Vec<u64>) -> Element {
        Element { coords }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Iterator over all elements of a group in lexicographic order.
pub struct Elements<'g> {
    group: &'g Group,
    next: Option<Element>,
}

impl Iterator for Elements<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let moduli = self.group.moduli();
        let mut i = moduli.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            succ.coords[i] += 1;
            if succ.coords[i] < moduli[i] {
                self.next = Some(succ);
                break;
            }
            succ.coords[i] = 0;
        }
        Some(current)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(Group::new(&[2, 3, 4]).unwrap().order(), 24);
        assert_eq!(Group::new(&[5]).unwrap().order(), 5);
        assert_eq!(Group::new(&[2, 2, 2]).unwrap().order(), 8);
    }

    #[test]
    fn rejects_trivial_factors() {
        assert_eq!(Group::new(&[1]), Err(Error::InvalidModulus(1)));
        assert_eq!(Group::new(&[3, 0]), Err(Error::InvalidModulus(0)));
        assert_eq!(Group::new(&[]), Err(Error::EmptyGroup));
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let g = Group::new(&[2, 2]).unwrap();
        let all: Vec<Element> = g.elements().unwrap().collect();
        let expect: Vec<Element> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|c| g.element(&c.map(|x| x as i64)).unwrap())
            .collect();
        assert_eq!(all, expect);

        let g = Group::new(&[3]).unwrap();
        assert_eq!(g.elements().unwrap().count(), 3);
        let g = Group::new(&[2, 3]).unwrap();
        assert_eq!(g.elements().unwrap().count(), 6);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Group::with_budget(&[7, 7], 10).unwrap();
        assert!(matches!(
            g.elements().err(),
            Some(Error::EnumerationBudgetExceeded { order: 49, budget: 10 })
        ));
    }

    #[test]
    fn rank_round_trip() {
        let g = Group::new(&[2, 3, 4]).unwrap();
        for (i, a) in g.elements().unwrap().enumerate() {
            assert_eq!(g.rank(&a), i as u64);
            assert_eq!(g.unrank(i as u64), a);
        }
    }

    #[test]
    fn arithmetic_reduces() {
        let g = Group::new(&[2, 3]).unwrap();
        let a = g.element(&[1, 2]).unwrap();
        let b = g.element(&[1, 2]).unwrap();
        assert_eq!(g.add(&a, &b), g.element(&[0, 1]).unwrap());
        assert_eq!(g.neg(&a), g.element(&[1, 1]).unwrap());
        assert_eq!(g.scale(-2, &a), g.element(&[0, 2]).unwrap());
        assert_eq!(g.element(&[-1, 7]).unwrap(), g.element(&[1, 1]).unwrap());
    }

    #[test]
    fn special_vectors() {
        let g = Group::new(&[2, 3, 4]).unwrap();
        assert_eq!(g.z_vector(0).unwrap().coords(), &[0, 1, 1]);
        assert_eq!(g.basis(2).unwrap().coords(), &[0, 0, 1]);
        assert!(g.z_vector(3).is_err());
    }
}
