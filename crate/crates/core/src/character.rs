//! Circle-valued characters of a product group.
//!
//! The dual of `Z/n_0 x ... x Z/n_m` is canonically the same product: the
//! coordinate vector `x` corresponds to the homomorphism
//! `a -> sum_i a_i x_i / n_i` in Q/Z. We keep characters as reduced
//! coordinate vectors and evaluate exactly.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{gcd, lcm, Element, Group};
use crate::qmodz::QmodZ;

/// A character of a group, stored via its dual coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    coords: Vec<u64>,
}

impl Character {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn from_coords(coords: Vec<u64>) -> Character {
        Character { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Group {
    /// Builds a character from signed dual coordinates, reducing into range.
    pub fn character(&self, coords: &[i64]) -> Result<Character> {
        Ok(Character {
            coords: self.element(coords)?.coords().to_vec(),
        })
    }

    /// The dual basis character reading off coordinate `i`.
    pub fn dual_basis(&self, i: usize) -> Result<Character> {
        Ok(Character {
            coords: self.basis(i)?.coords().to_vec(),
        })
    }

    pub fn check_character(&self, chi: &Character) -> Result<()> {
        if chi.coords.len() != self.arity()
            || chi.coords.iter().zip(self.moduli()).any(|(&c, &n)| c >= n)
        {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// Exact evaluation `chi(a)` in Q/Z.
    pub fn char_eval(&self, chi: &Character, a: &Element) -> Result<QmodZ> {
        self.check_character(chi)?;
        self.check_element(a)?;
        let mut acc = QmodZ::ZERO;
        for ((&x, &c), &n) in chi.coords.iter().zip(a.coords()).zip(self.moduli()) {
            acc = acc.add(&QmodZ::new((x * c) as i64, n as i64));
        }
        Ok(acc)
    }

    /// Order of the character in the dual group.
    pub fn character_order(&self, chi: &Character) -> u64 {
        chi.coords
            .iter()
            .zip(self.moduli())
            .map(|(&x, &n)| n / gcd(n, x))
            .fold(1, lcm)
    }

    /// Integer scaling `t * chi` in the dual group.
    pub fn char_scale(&self, t: i64, chi: &Character) -> Character {
        Character {
            coords: chi
                .coords
                .iter()
                .zip(self.moduli())
                .map(|(&x, &n)| ((t.rem_euclid(n as i64) as u64) * x) % n)
                .collect(),
        }
    }

    pub fn char_add(&self, a: &Character, b: &Character) -> Character {
        Character {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(self.moduli())
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        }
    }

    /// Streams every character of the group (same count as elements).
    pub fn characters(&self) -> Result<impl Iterator<Item = Character> + '_> {
        Ok(self.elements()?.map(|a| Character {
            coords: a.coords().to_vec(),
        }))
    }

    /// The lexicographically least generator of the cyclic subgroup
    /// generated by `chi`, together with the unit multiplier `u` such that
    /// the returned character equals `u * chi`.
    pub fn canonical_generator(&self, chi: &Character) -> (Character, u64) {
        let order = self.character_order(chi);
        let mut best = chi.clone();
        let mut best_u = 1;
        for u in 2..order {
            if gcd(u, order) != 1 {
                continue;
            }
            let cand = self.char_scale(u as i64, chi);
            if cand < best {
                best = cand;
                best_u = u;
            }
        }
        (best, best_u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_matches_coordinate_formula() {
        let g = Group::new(&[2, 3]).unwrap();
        let phi = g.character(&[1, 0]).unwrap();
        let a = g.element(&[1, 2]).unwrap();
        assert_eq!(g.char_eval(&phi, &a).unwrap(), QmodZ::new(1, 2));

        let g2 = Group::new(&[2, 2]).unwrap();
        let phi = g2.character(&[1, 1]).unwrap();
        let a = g2.element(&[1, 1]).unwrap();
        assert_eq!(g2.char_eval(&phi, &a).unwrap(), QmodZ::ZERO);

        let phi = g.character(&[1, 2]).unwrap();
        let a = g.element(&[1, 1]).unwrap();
        assert_eq!(g.char_eval(&phi, &a).unwrap(), QmodZ::new(1, 6));
    }

    #[test]
    fn orders() {
        let g = Group::new(&[4, 2]).unwrap();
        assert_eq!(g.character_order(&g.character(&[1, 1]).unwrap()), 4);
        assert_eq!(g.character_order(&g.character(&[2, 1]).unwrap()), 2);
        assert_eq!(g.character_order(&g.character(&[0, 0]).unwrap()), 1);
        let g = Group::new(&[30]).unwrap();
        assert_eq!(g.character_order(&g.character(&[1]).unwrap()), 30);
    }

    #[test]
    fn group_mismatch_detected() {
        let g = Group::new(&[2, 3]).unwrap();
        let h = Group::new(&[5]).unwrap();
        let phi = h.character(&[1]).unwrap();
        let a = g.element(&[1, 1]).unwrap();
        assert_eq!(g.char_eval(&phi, &a), Err(Error::GroupMismatch));
    }

    #[test]
    fn canonical_generator_is_least() {
        let g = Group::new(&[4, 2]).unwrap();
        let chi = g.character(&[3, 1]).unwrap();
        // Generators of <(3,1)> are (3,1) and 3*(3,1) = (1,1).
        let (canon, u) = g.canonical_generator(&chi);
        assert_eq!(canon, g.character(&[1, 1]).unwrap());
        assert_eq!(u, 3);
    }

    #[test]
    fn evaluation_is_additive() {
        let g = Group::new(&[4, 3, 2]).unwrap();
        for chi in g.characters().unwrap() {
            for a in g.elements().unwrap().step_by(5) {
                for b in g.elements().unwrap().step_by(7) {
                    let lhs = g.char_eval(&chi, &g.add(&a, &b)).unwrap();
                    let rhs = g
                        .char_eval(&chi, &a)
                        .unwrap()
                        .add(&g.char_eval(&chi, &b).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn coordinates_determine_the_character() {
        // Distinct coordinate vectors give distinct evaluation tables.
        for moduli in [&[2, 3][..], &[4, 2][..], &[3, 3][..]] {
            let g = Group::new(moduli).unwrap();
            let tables: Vec<Vec<QmodZ>> = g
                .characters()
                .unwrap()
                .map(|chi| {
                    g.elements()
                        .unwrap()
                        .map(|a| g.char_eval(&chi, &a).unwrap())
                        .collect()
                })
                .collect();
            for i in 0..tables.len() {
                for j in i + 1..tables.len() {
                    assert_ne!(tables[i], tables[j]);
                }
            }
        }
    }
}
