//! Exact rho invariants of lens spaces and the product-signature model.
//!
//! For the lens space `L(n, q)` with `gcd(n, q) = 1` the rho invariant of
//! the character `k` is the exact rational
//!
//! ```text
//! rho_{n,q}(k) = -(2q/n) k^2 + 2k - 1 + 2 floor(kq/n) + 4 sum_{j=1}^{k-1} floor(jq/n)
//! ```
//!
//! for `0 < k < n`, and 0 at `k = 0`. Reducing mod 2 collapses this to
//! `-(2k^2 q + n)/n`, which is how parity obstructions are computed. For
//! odd `n` the value is nonzero for every `k != 0`; that nonvanishing is
//! what makes the bounded-manifold model "signature-simple" and powers the
//! cancellation argument, which reduces products of twisted signatures to
//! the zero-locus machinery of the rest of this crate.

use num::complex::Complex64;
use num::rational::Ratio;
use num::{Signed, Zero};

use serde::Serialize;

use crate::duality::{analyze_iso, BlockFormReport};
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{gcd, Element, Group};
use crate::hom::HomMatrix;

pub type Rational = Ratio<i64>;

/// Parameters `(n, q)` of a lens space, with `0 < q < n` coprime to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LensSpace {
    n: u64,
    q: u64,
}

impl LensSpace {
    pub fn new(n: u64, q: u64) -> Result<LensSpace> {
        if n < 2 || q == 0 || q >= n || gcd(n, q) != 1 {
            return Err(Error::BadLens { n, q });
        }
        Ok(LensSpace { n, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Exact rho invariant of the character `k`.
    pub fn rho(&self, k: u64) -> Result<Rational> {
        if k >= self.n {
            return Err(Error::BadCharacter { k, n: self.n });
        }
        if k == 0 {
            return Ok(Rational::zero());
        }
        let (n, q, k) = (self.n as i64, self.q as i64, k as i64);
        let floor_sum: i64 = (1..k).map(|j| (j * q).div_euclid(n)).sum();
        Ok(Rational::new(-2 * q * k * k, n)
            + Rational::from_integer(2 * k - 1 + 2 * ((k * q).div_euclid(n)) + 4 * floor_sum))
    }

    /// The table `k -> rho(k)` for all residues.
    pub fn rho_table(&self) -> Vec<Rational> {
        let (n, q) = (self.n as i64, self.q as i64);
        let mut out = Vec::with_capacity(self.n as usize);
        out.push(Rational::zero());
        let mut floor_sum = 0i64; // sum_{j=1}^{k-1} floor(jq/n)
        for k in 1..n {
            if k > 1 {
                floor_sum += ((k - 1) * q).div_euclid(n);
            }
            out.push(
                Rational::new(-2 * q * k * k, n)
                    + Rational::from_integer(2 * k - 1 + 2 * ((k * q).div_euclid(n)) + 4 * floor_sum),
            );
        }
        out
    }

    /// The residue of `-(2 k^2 q + n) / n` in `[0, 2)`. This agrees with
    /// `rho(k)` modulo 2 for every `n`: the difference of the two
    /// expressions is `2k + 2 floor(kq/n) + 4 sum floor(jq/n)`, an even
    /// integer.
    pub fn rho_parity(&self, k: u64) -> Result<Rational> {
        if k == 0 || k >= self.n {
            return Err(Error::BadCharacter { k, n: self.n });
        }
        let (n, q, k) = (self.n as i64, self.q as i64, k as i64);
        let raw = Rational::new(-(2 * k * k * q + n), n);
        Ok(reduce_mod_two(raw))
    }

    /// True iff `rho(k) != 0` for every `0 < k < n`. Nonvanishing is
    /// guaranteed when `n` is odd; for even `n` the table decides.
    pub fn certify_signature_simple(&self) -> bool {
        self.rho_table().iter().skip(1).all(|r| !r.is_zero())
    }

    /// The twisted signature `-copies * rho(phi)` of a 4-manifold whose
    /// boundary is `copies` like-oriented copies of this lens space, all
    /// inducing the same isomorphism on first homology. The rho values lie
    /// in `(1/n) Z`, so the result is an integer only when `copies` clears
    /// the denominator.
    pub fn bounded_signature(&self, copies: u64, phi: u64) -> Result<i64> {
        let rho = self.rho(phi)?;
        let total = rho * Rational::from_integer(copies as i64);
        if !total.is_integer() {
            return Err(Error::NonIntegralSignature {
                copies,
                value: rho.to_string(),
            });
        }
        Ok(-total.to_integer())
    }
}

/// Reduces a rational into `[0, 2)` modulo 2.
fn reduce_mod_two(r: Rational) -> Rational {
    let two = Rational::from_integer(2);
    let mut r = r;
    // r - 2*floor(r/2)
    let q = (r / two).floor();
    r -= two * q;
    if r.is_negative() {
        r += two;
    }
    r
}

/// Signature of the invariant pairing on the `j`'th eigenspace of the
/// cyclic shift acting on `{z in C^n : sum z_i = 0}` with the standard
/// Hermitian form.
///
/// For `j != 0` the eigenspace is spanned by `n^{-1/2} (1, w^j, ...,
/// w^{j(n-1)})` with `w = exp(2 pi i / n)`; the restricted form is positive
/// definite there, so the signature is 1. For `j = 0` the eigenspace is
/// trivial. Computed numerically: eigenvalue signs of the 1x1 Gram matrix
/// are classified against a tolerance of 1e-9.
pub fn model_signature(n: u64, j: u64) -> Result<i64> {
    const TOL: f64 = 1e-9;
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    if j >= n {
        return Err(Error::BadCharacter { k: j, n });
    }
    let nf = n as f64;
    let eigenvector: Vec<Complex64> = (0..n)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * (i as f64) * (j as f64) / nf;
            Complex64::new(theta.cos(), theta.sin()) / nf.sqrt()
        })
        .collect();
    // Lies in the sum-zero subspace only for j != 0.
    let coord_sum: Complex64 = eigenvector.iter().sum();
    if coord_sum.norm() > TOL * nf {
        debug_assert_eq!(j, 0);
        return Ok(0);
    }
    // Gram matrix of the one-dimensional eigenspace under <z, w> = sum z_i conj(w_i).
    let gram: f64 = eigenvector.iter().map(|z| z.norm_sqr()).sum();
    let signature = if gram > TOL {
        1
    } else if gram < -TOL {
        -1
    } else {
        0
    };
    Ok(signature)
}

/// A family of per-factor signature functions `sigma_i : Z/n_i -> Z`.
///
/// A factor is signature-simple when `sigma_i(k) = 0` exactly at `k = 0`.
/// Construction accepts arbitrary integer tables so that non-simple
/// families remain explorable; [`SignatureFamily::warnings`] reports the
/// factors that break simplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureFamily {
    group: Group,
    tables: Vec<Vec<i64>>,
}

impl SignatureFamily {
    /// The model family: every factor has `sigma(0) = 0` and `sigma(k) = 1`
    /// otherwise, matching [`model_signature`].
    pub fn model(moduli: &[u64]) -> Result<SignatureFamily> {
        let group = Group::new(moduli)?;
        let tables = moduli
            .iter()
            .map(|&n| {
                let mut t = vec![1i64; n as usize];
                t[0] = 0;
                t
            })
            .collect();
        Ok(SignatureFamily { group, tables })
    }

    pub fn from_tables(moduli: &[u64], tables: Vec<Vec<i64>>) -> Result<SignatureFamily> {
        let group = Group::new(moduli)?;
        if tables.len() != moduli.len()
            || tables
                .iter()
                .zip(moduli)
                .any(|(t, &n)| t.len() != n as usize)
        {
            return Err(Error::GroupMismatch);
        }
        Ok(SignatureFamily { group, tables })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn moduli(&self) -> &[u64] {
        self.group.moduli()
    }

    /// Descriptions of the factors that are not signature-simple.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, (t, &n)) in self.tables.iter().zip(self.moduli()).enumerate() {
            if t[0] != 0 {
                out.push(format!(
                    "factor {i} (Z/{n}): sigma(0) = {} is nonzero",
                    t[0]
                ));
            }
            for (k, &v) in t.iter().enumerate().skip(1) {
                if v == 0 {
                    out.push(format!("factor {i} (Z/{n}): sigma({k}) = 0"));
                }
            }
        }
        out
    }

    pub fn is_signature_simple(&self) -> bool {
        self.warnings().is_empty()
    }

    /// Product of the per-factor signatures at the given character.
    pub fn signature(&self, phi: &Element) -> Result<i64> {
        self.group.check_element(phi)?;
        Ok(self
            .tables
            .iter()
            .zip(phi.coords())
            .map(|(t, &c)| t[c as usize])
            .product())
    }

    /// Characters at which the product signature vanishes. For a
    /// signature-simple family this is exactly the zero locus of the group.
    pub fn signature_zero_locus(&self) -> Result<ElementSet> {
        self.group.check_budget()?;
        let mut out = ElementSet::empty(self.group.order());
        for (rank, phi) in self.group.elements()?.enumerate() {
            if self.signature(&phi)? == 0 {
                out.insert(rank as u64);
            }
        }
        Ok(out)
    }
}

/// Analyzes an isomorphism `f` of character groups that is supposed to
/// intertwine the signature vanishing loci of two families (up to sign the
/// signatures transport along homotopy equivalences, so the vanishing locus
/// is the invariant content).
///
/// Checks that `f` carries the vanishing locus of `from` onto the vanishing
/// locus of `to`, then extracts the block form. With all moduli odd and
/// greater than 2 the block form has `ell = 0`: the matrix is monomial and
/// the matched moduli prove the families have the same factors.
pub fn cancellation_analyze(
    to: &SignatureFamily,
    from: &SignatureFamily,
    f: &HomMatrix,
) -> Result<BlockFormReport> {
    for (name, fam) in [("target", to), ("source", from)] {
        if let Some(&n) = fam.moduli().iter().find(|&&n| n <= 2 || n % 2 == 0) {
            return Err(Error::CancellationFails(format!(
                "{name} family has a factor Z/{n}; factors must be odd and > 2"
            )));
        }
    }
    if to.group().order() != from.group().order() {
        return Err(Error::CancellationFails(format!(
            "families have orders {} and {}",
            to.group().order(),
            from.group().order()
        )));
    }
    if f.source() != from.group() || f.target() != to.group() {
        return Err(Error::GroupMismatch);
    }
    if !f.is_isomorphism()? {
        return Err(Error::CancellationFails("the map is not an isomorphism".into()));
    }

    let from_zero = from.signature_zero_locus()?;
    let to_zero = to.signature_zero_locus()?;
    let mut image = ElementSet::empty(to.group().order());
    for r in from_zero.iter() {
        image.insert(to.group().rank(&f.apply(&from.group().unrank(r))?));
    }
    if image != to_zero {
        return Err(Error::NotSignaturePreserving);
    }

    analyze_iso(f)
}
