//! Homomorphisms between product groups as integer matrices.
//!
//! Column `i` holds the image of the source basis vector `e_i`; the entry in
//! row `j` is taken modulo the `j`'th target modulus. Such a matrix defines
//! a homomorphism exactly when `n_i * entry[j][i] = 0 mod n'_j` for every
//! entry, which is validated at construction.

use crate::character::Character;
use crate::error::{Error, Result};
use crate::group::{gcd, Element, Group};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMatrix {
    source: Group,
    target: Group,
    /// Row-major: `entries[j][i]` is the `j`'th component of the image of `e_i`.
    entries: Vec<Vec<u64>>,
}

impl HomMatrix {
    /// Validates well-definedness and reduces every entry mod its row modulus.
    pub fn new(source: Group, target: Group, entries: &[Vec<i64>]) -> Result<HomMatrix> {
        if entries.len() != target.arity()
            || entries.iter().any(|row| row.len() != source.arity())
        {
            return Err(Error::GroupMismatch);
        }
        let mut reduced = Vec::with_capacity(entries.len());
        for (j, row) in entries.iter().enumerate() {
            let nj = target.moduli()[j];
            let mut out = Vec::with_capacity(row.len());
            for (i, &e) in row.iter().enumerate() {
                let e = e.rem_euclid(nj as i64) as u64;
                let ni = source.moduli()[i];
                if (ni * e) % nj != 0 {
                    return Err(Error::IllDefinedHom {
                        row: j,
                        col: i,
                        entry: e,
                        source_modulus: ni,
                        target_modulus: nj,
                    });
                }
                out.push(e);
            }
            reduced.push(out);
        }
        Ok(HomMatrix {
            source,
            target,
            entries: reduced,
        })
    }

    pub fn identity(g: &Group) -> HomMatrix {
        let m = g.arity();
        let entries = (0..m)
            .map(|j| (0..m).map(|i| u64::from(i == j)).collect())
            .collect();
        HomMatrix {
            source: g.clone(),
            target: g.clone(),
            entries,
        }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Matrix-vector product reduced modulo the target moduli.
    pub fn apply(&self, a: &Element) -> Result<Element> {
        self.source.check_element(a)?;
        let coords = self
            .entries
            .iter()
            .zip(self.target.moduli())
            .map(|(row, &nj)| {
                row.iter()
                    .zip(a.coords())
                    .fold(0u64, |acc, (&e, &c)| (acc + e * c) % nj)
            })
            .collect();
        Ok(Element::from_coords(coords))
    }

    /// True iff the map is bijective: equal orders plus a trivial kernel,
    /// checked by exhaustive enumeration.
    pub fn is_isomorphism(&self) -> Result<bool> {
        if self.source.order() != self.target.order() {
            return Ok(false);
        }
        let zero = self.target.zero();
        let mut kernel = 0u64;
        for a in self.source.elements()? {
            if self.apply(&a)? == zero {
                kernel += 1;
                if kernel > 1 {
                    return Ok(false);
                }
            }
        }
        Ok(kernel == 1)
    }

    /// The dual map between character groups, with entries
    /// `dual[i][j] = n_i * entries[j][i] / n'_j` reduced mod `n_i`.
    pub fn dual(&self) -> HomMatrix {
        let m_src = self.source.arity();
        let m_tgt = self.target.arity();
        let mut entries = vec![vec![0u64; m_tgt]; m_src];
        for i in 0..m_src {
            let ni = self.source.moduli()[i];
            for j in 0..m_tgt {
                let nj = self.target.moduli()[j];
                entries[i][j] = (ni * self.entries[j][i] / nj) % ni;
            }
        }
        HomMatrix {
            source: self.target.clone(),
            target: self.source.clone(),
            entries,
        }
    }

    /// Pullback of a character along this map: `(dual f)(chi) = chi . f`.
    pub fn pull_back(&self, chi: &Character) -> Result<Character> {
        self.target.check_character(chi)?;
        let dual = self.dual();
        let coords = dual
            .entries
            .iter()
            .zip(self.source.moduli())
            .map(|(row, &ni)| {
                row.iter()
                    .zip(chi.coords())
                    .fold(0u64, |acc, (&e, &c)| (acc + e * c) % ni)
            })
            .collect();
        Ok(Character::from_coords(coords))
    }
}

/// Number of homomorphisms from `source` to `target`: the product of
/// `gcd(n_i, n'_j)` over all entries.
pub fn hom_count(source: &Group, target: &Group) -> u64 {
    let mut count: u64 = 1;
    for &nj in target.moduli() {
        for &ni in source.moduli() {
            count = count.saturating_mul(gcd(ni, nj));
        }
    }
    count
}

/// Visits every homomorphism from `source` to `target` exactly once.
///
/// The closure receives the matrix in row-major flat form
/// (`flat[j * source.arity() + i]` is row `j`, column `i`). The buffer is
/// reused between calls, which keeps exhaustive sweeps allocation-free.
pub fn visit_homs<F: FnMut(&[u64])>(source: &Group, target: &Group, visit: F) {
    visit_homs_range(source, target, 0, hom_count(source, target), visit)
}

/// Visits the homomorphisms with enumeration index in `from..to`, in order.
/// The index space is the mixed-radix odometer over the admissible values
/// per entry, so a large enumeration can be split into contiguous chunks
/// and processed in parallel.
pub fn visit_homs_range<F: FnMut(&[u64])>(
    source: &Group,
    target: &Group,
    from: u64,
    to: u64,
    mut visit: F,
) {
    let m_src = source.arity();
    let m_tgt = target.arity();
    // Admissible values in row j, column i are the multiples of
    // n'_j / gcd(n_i, n'_j); there are gcd(n_i, n'_j) of them.
    let mut steps = Vec::with_capacity(m_src * m_tgt);
    let mut counts = Vec::with_capacity(m_src * m_tgt);
    for j in 0..m_tgt {
        let nj = target.moduli()[j];
        for i in 0..m_src {
            let g = gcd(source.moduli()[i], nj);
            steps.push(nj / g);
            counts.push(g);
        }
    }
    let total: u64 = counts.iter().product();
    let to = to.min(total);
    if from >= to {
        return;
    }
    // Seek the odometer to `from` (last digit fastest).
    let mut digits = vec![0u64; m_src * m_tgt];
    let mut rem = from;
    for pos in (0..digits.len()).rev() {
        digits[pos] = rem % counts[pos];
        rem /= counts[pos];
    }
    let mut flat: Vec<u64> = digits
        .iter()
        .zip(&steps)
        .map(|(&d, &s)| d * s)
        .collect();
    for _ in from..to {
        visit(&flat);
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < counts[pos] {
                flat[pos] = digits[pos] * steps[pos];
                break;
            }
            digits[pos] = 0;
            flat[pos] = 0;
        }
    }
}

/// Collects every homomorphism from `source` to `target`.
pub fn enumerate_homs(source: &Group, target: &Group) -> Vec<HomMatrix> {
    let m_src = source.arity();
    let mut out = Vec::new();
    visit_homs(source, target, |flat| {
        let entries: Vec<Vec<u64>> = flat.chunks(m_src).map(|row| row.to_vec()).collect();
        out.push(HomMatrix {
            source: source.clone(),
            target: target.clone(),
            entries,
        });
    });
    out
}

/// Collects every isomorphism from `source` to `target`.
pub fn enumerate_isomorphisms(source: &Group, target: &Group) -> Result<Vec<HomMatrix>> {
    if source.order() != target.order() {
        return Ok(Vec::new());
    }
    source.check_budget()?;
    let mut out = Vec::new();
    for f in enumerate_homs(source, target) {
        if f.is_isomorphism()? {
            out.push(f);
        }
    }
    Ok(out)
}
