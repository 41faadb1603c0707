//! Quantization `q*` and symbol `sigma*` maps between the exterior algebra and `R_{p,q}`.
//!
//! Both algebras are indexed by the same canonical blades, so the maps are the
//! identity on coefficients. They exist to mark where a value changes meaning
//! and to validate that it fits the target.

use std::collections::BTreeMap;

use crate::algebra::{Blade, Multivector, Signature};
use crate::error::{Error, Result};

/// Sends an exterior form `e^{i1} ^ ... ^ e^{ik}` to the Clifford monomial `e_{i1} ... e_{ik}`.
pub fn quantize(form: &Multivector) -> Multivector {
    form.clone()
}

/// Inverse of [`quantize`]: reads a Clifford element as an exterior form.
pub fn symbolize(element: &Multivector) -> Multivector {
    element.clone()
}

/// A set of generators of `R_{p,q}` spanning a Clifford subalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSubset {
    sig: Signature,
    members: Vec<usize>,
    induced: Signature,
}

impl GeneratorSubset {
    pub fn new(sig: Signature, members: &[usize]) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidSubset("subset must be nonempty".into()));
        }
        let mut last = 0;
        for &m in members {
            if m <= last || m > sig.dim() {
                return Err(Error::InvalidSubset(format!(
                    "members {members:?} must be strictly increasing within 1..={}",
                    sig.dim()
                )));
            }
            last = m;
        }
        let positive = members.iter().filter(|&&m| m <= sig.p()).count();
        let induced = Signature::new(positive, members.len() - positive)?;
        Ok(GeneratorSubset {
            sig,
            members: members.to_vec(),
            induced,
        })
    }

    /// Subset from a bitmask of generators.
    pub fn from_mask(sig: Signature, mask: u32) -> Result<Self> {
        Self::new(sig, &Blade::from_bits(mask).indices())
    }

    pub fn full(sig: Signature) -> Self {
        let members: Vec<usize> = (1..=sig.dim()).collect();
        Self::new(sig, &members).expect("full subset is valid")
    }

    pub fn ambient(&self) -> Signature {
        self.sig
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Signature of the subalgebra: members `<= p` count as positive.
    pub fn induced_signature(&self) -> Signature {
        self.induced
    }

    pub fn mask(&self) -> u32 {
        self.members.iter().fold(0, |acc, m| acc | 1 << (m - 1))
    }

    pub fn contains_blade(&self, blade: Blade) -> bool {
        blade.bits() & !self.mask() == 0
    }
}

/// Restricted symbol map `sigma*|_A`: re-indexes the members of `subset` to `1..=|A|`
/// in increasing order and returns the resulting form together with the re-indexing.
///
/// The form's carrier signature is the subset's induced signature.
pub fn restrict_symbol(
    element: &Multivector,
    subset: &GeneratorSubset,
) -> Result<(Multivector, BTreeMap<usize, usize>)> {
    if element.signature() != subset.ambient() {
        return Err(Error::SignatureMismatch(
            element.signature(),
            subset.ambient(),
        ));
    }
    let reindex: BTreeMap<usize, usize> = subset
        .members()
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i + 1))
        .collect();
    let mut terms = Vec::with_capacity(element.len());
    for (blade, coeff) in element.terms() {
        if !subset.contains_blade(*blade) {
            return Err(Error::NotInSubalgebra {
                blade: *blade,
                members: subset.members().to_vec(),
            });
        }
        // Order preserving, so no reordering sign appears.
        let renamed: Vec<usize> = blade.indices().iter().map(|i| reindex[i]).collect();
        terms.push((Blade::from_indices(&renamed)?, coeff.clone()));
    }
    let form = Multivector::from_terms(subset.induced_signature(), terms)?;
    Ok((symbolize(&form), reindex))
}

/// Embeds a form over `R^n` into `R_{target}` by renaming index `i` to `placement[i - 1]`
/// and quantizing. Reordering the renamed indices contributes the usual exterior sign.
pub fn embed(form: &Multivector, target: Signature, placement: &[usize]) -> Result<Multivector> {
    let n = form.signature().dim();
    if placement.len() != n {
        return Err(Error::InvalidPlacement(format!(
            "placement has {} entries, form lives on R^{n}",
            placement.len()
        )));
    }
    let mut seen = 0u32;
    for &t in placement {
        if t == 0 || t > target.dim() {
            return Err(Error::InvalidPlacement(format!(
                "target index {t} outside 1..={}",
                target.dim()
            )));
        }
        if seen & 1 << (t - 1) != 0 {
            return Err(Error::InvalidPlacement(format!(
                "placement {placement:?} is not injective"
            )));
        }
        seen |= 1 << (t - 1);
    }
    let mut out = Multivector::zero(target);
    for (blade, coeff) in form.terms() {
        let renamed: Vec<usize> = blade.indices().iter().map(|i| placement[i - 1]).collect();
        let (sign, canonical) = sort_with_sign(&renamed);
        let c = if sign > 0 {
            coeff.clone()
        } else {
            -coeff.clone()
        };
        out = &out + &Multivector::term(target, canonical, c);
    }
    Ok(quantize(&out))
}

/// Sorts distinct indices, returning the permutation sign and the blade.
fn sort_with_sign(indices: &[usize]) -> (i32, Blade) {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (sign, Blade::from_indices(&v).expect("distinct indices"))
}
