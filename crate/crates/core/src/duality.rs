//! Transport of hyperplanes along homomorphisms via the dual group, and the
//! block-form extractor for isomorphisms preserving the zero locus.
//!
//! A hyperplane `H` determines the cyclic subgroup of characters vanishing
//! on its linear translate; pulling a character back along `f` transports
//! `H` to its preimage. When an isomorphism carries the zero locus onto the
//! zero locus and the moduli are sorted with the order-2 factors first, its
//! matrix is forced (up to a permutation of the target coordinates) into
//! the shape `[[f11, 0], [f21, D]]` with `f11` an automorphism of the
//! order-2 block and `D` diagonal with unit entries. [`analyze_iso`]
//! computes that normal form and verifies it entry by entry.

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{gcd, Group};
use crate::hom::HomMatrix;
use crate::hyperplane::{zero_locus, AffineHyperplane};
use crate::splitting::assign_coordinates;

/// The canonical generator of the annihilator of the hyperplane's linear
/// translate. Its order equals the quotient order.
pub fn annihilator(h: &AffineHyperplane) -> Character {
    // The stored character is already the canonical generator.
    h.character().clone()
}

/// Transports a hyperplane to its preimage under `f`, realized with the
/// pulled-back character and the same target value.
pub fn transport_hyperplane(f: &HomMatrix, h: &AffineHyperplane) -> Result<AffineHyperplane> {
    if h.group() != f.target() {
        return Err(Error::GroupMismatch);
    }
    let chi = f.pull_back(h.character())?;
    if chi.is_zero() {
        // The character dies on the image: the preimage is everything or
        // nothing, and neither is a hyperplane.
        return if h.target().is_zero() {
            Err(Error::FullPreimage)
        } else {
            Err(Error::EmptyPreimage)
        };
    }
    let order = f.source().character_order(&chi);
    if order % h.target().denom() != 0 {
        return Err(Error::EmptyPreimage);
    }
    AffineHyperplane::new(f.source(), chi, *h.target())
}

/// Whether an isomorphism maps the zero locus of the source onto the zero
/// locus of the target, by exhaustive image computation.
pub fn preserves_zero_locus(f: &HomMatrix) -> Result<bool> {
    if !f.is_isomorphism()? {
        return Err(Error::NotIso);
    }
    let src_zl = zero_locus(f.source())?;
    let tgt_zl = zero_locus(f.target())?;
    let mut image = ElementSet::empty(f.target().order());
    for r in src_zl.iter() {
        let a = f.source().unrank(r);
        image.insert(f.target().rank(&f.apply(&a)?));
    }
    Ok(image == tgt_zl)
}

/// Block form of a zero-locus-preserving isomorphism.
///
/// `permutation[i]` is the target coordinate matched to source coordinate
/// `i`; after permuting the target rows accordingly the matrix becomes
/// `[[f11, 0], [f21, diag]]` over the moduli split into the `ell` order-2
/// factors followed by the rest. `matched_moduli[i]` is the modulus of the
/// permuted target coordinate, equal to the `i`'th source modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockFormReport {
    pub ell: usize,
    #[serde(rename = "perm")]
    pub permutation: Vec<usize>,
    #[serde(rename = "moduli")]
    pub matched_moduli: Vec<u64>,
    pub diag: Vec<u64>,
    pub f11: Vec<Vec<u64>>,
    pub f21: Vec<Vec<u64>>,
}

/// True when the order-2 factors come first.
pub fn is_z2_sorted(moduli: &[u64]) -> bool {
    let first_big = moduli.iter().position(|&n| n != 2).unwrap_or(moduli.len());
    moduli[first_big..].iter().all(|&n| n != 2)
}

/// Reorders the factors so the order-2 ones come first (otherwise stable),
/// returning the sorted group and the permutation matrix that maps it back
/// onto `g`. Conjugating by these brings any map into the shape
/// [`analyze_iso`] expects.
pub fn sort_z2_first(g: &Group) -> Result<(Group, HomMatrix)> {
    let mut positions: Vec<usize> = (0..g.arity()).collect();
    positions.sort_by_key(|&i| (g.moduli()[i] != 2, i));
    let moduli: Vec<u64> = positions.iter().map(|&i| g.moduli()[i]).collect();
    let sorted = Group::with_budget(&moduli, g.budget())?;
    // Row j of the matrix reads off sorted coordinate j from the original.
    let entries: Vec<Vec<i64>> = (0..g.arity())
        .map(|j| {
            (0..g.arity())
                .map(|i| i64::from(i == positions[j]))
                .collect()
        })
        .collect();
    let to_sorted = HomMatrix::new(g.clone(), sorted, &entries)?;
    Ok((to_sorted.target().clone(), to_sorted))
}

/// Extracts and verifies the block form of a zero-locus-preserving
/// isomorphism between groups whose moduli are sorted order-2-first.
///
/// The permutation is found by pushing each coordinate hyperplane of the
/// source through `f` and classifying the image as nearly-coordinate; a
/// structural failure after the hypotheses hold would contradict the
/// classification theorems and is reported as `TheoremViolation`.
pub fn analyze_iso(f: &HomMatrix) -> Result<BlockFormReport> {
    let source = f.source();
    let target = f.target();
    if !is_z2_sorted(source.moduli()) {
        return Err(Error::ModuliNotSorted(source.moduli().to_vec()));
    }
    if !is_z2_sorted(target.moduli()) {
        return Err(Error::ModuliNotSorted(target.moduli().to_vec()));
    }
    if !preserves_zero_locus(f)? {
        return Err(Error::NotZPreserving);
    }

    let ell = source.moduli().iter().filter(|&&n| n == 2).count();
    let ell_target = target.moduli().iter().filter(|&&n| n == 2).count();
    let m = source.arity();
    if m != target.arity() || ell != ell_target {
        return Err(Error::TheoremViolation(format!(
            "zero-locus-preserving isomorphism between shapes {:?} and {:?}",
            source.moduli(),
            target.moduli()
        )));
    }

    // Push the coordinate splitting through f.
    let mut images = Vec::with_capacity(m);
    for i in 0..m {
        let w = AffineHyperplane::coordinate(source, i)?;
        let mut image = ElementSet::empty(target.order());
        for r in w.members()?.iter() {
            image.insert(target.rank(&f.apply(&source.unrank(r))?));
        }
        images.push(AffineHyperplane::from_set(target, &image)?);
    }
    let assignment = assign_coordinates(target, &images)?;
    let permutation: Vec<usize> = assignment.iter().map(|(i, _)| *i).collect();

    let matched_moduli: Vec<u64> = permutation.iter().map(|&j| target.moduli()[j]).collect();
    if matched_moduli != source.moduli() {
        return Err(Error::TheoremViolation(format!(
            "matched moduli {matched_moduli:?} differ from source moduli {:?}",
            source.moduli()
        )));
    }

    // Row-permuted matrix: row i of the normal form is row permutation[i]
    // of f. Verify the block shape.
    let entries = f.entries();
    let permuted: Vec<&Vec<u64>> = permutation.iter().map(|&j| &entries[j]).collect();
    for (i, row) in permuted.iter().enumerate() {
        for (k, &e) in row.iter().enumerate() {
            let top_right = i < ell && k >= ell;
            let off_diagonal = i >= ell && k >= ell && k != i;
            if (top_right || off_diagonal) && e != 0 {
                return Err(Error::TheoremViolation(format!(
                    "entry ({i},{k}) = {e} outside the block form"
                )));
            }
        }
    }
    let mut diag = Vec::new();
    for i in ell..m {
        let d = permuted[i][i];
        if gcd(d, source.moduli()[i]) != 1 {
            return Err(Error::TheoremViolation(format!(
                "diagonal entry {d} is not a unit mod {}",
                source.moduli()[i]
            )));
        }
        diag.push(d);
    }

    let f11: Vec<Vec<u64>> = permuted[..ell]
        .iter()
        .map(|row| row[..ell].to_vec())
        .collect();
    let f21: Vec<Vec<u64>> = permuted[ell..]
        .iter()
        .map(|row| row[..ell].to_vec())
        .collect();

    if ell > 0 {
        let z2 = Group::new(&vec![2; ell])?;
        let f11_entries: Vec<Vec<i64>> = f11
            .iter()
            .map(|row| row.iter().map(|&e| e as i64).collect())
            .collect();
        let f11_hom = HomMatrix::new(z2.clone(), z2, &f11_entries)?;
        if !f11_hom.is_isomorphism()? {
            return Err(Error::TheoremViolation(
                "order-2 block is not an automorphism".into(),
            ));
        }
    }

    Ok(BlockFormReport {
        ell,
        permutation,
        matched_moduli,
        diag,
        f11,
        f21,
    })
}
