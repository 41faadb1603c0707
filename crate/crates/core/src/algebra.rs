//! Blades and multivectors of `R_{p,q}` with exact rational coefficients.
//!
//! A blade `e_{i1} ... e_{ik}` (strictly increasing indices) is stored as a bitmask
//! with bit `i - 1` standing for generator `e_i`. The same [`Multivector`] type
//! carries exterior forms; which algebra is meant depends on the operation applied.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact coefficient type.
pub type Rational = BigRational;

/// Largest supported `p + q`.
pub const MAX_GENERATORS: usize = 16;

/// Shorthand for the rational `num / den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 || p + q > MAX_GENERATORS {
            return Err(Error::InvalidSignature { p, q });
        }
        Ok(Signature { p, q })
    }

    /// Number of generators squaring to `+1`.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of generators squaring to `-1`.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Total number of generators `p + q`.
    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Number of canonical basis blades, `2^(p+q)`.
    pub fn algebra_dim(&self) -> usize {
        1 << self.dim()
    }

    /// Square of generator `e_index` (1-based).
    pub fn generator_square(&self, index: usize) -> i32 {
        debug_assert!(index >= 1 && index <= self.dim());
        if index <= self.p {
            1
        } else {
            -1
        }
    }

    /// Bitmask of the generators that square to `-1`.
    pub fn negative_mask(&self) -> u32 {
        let all = full_mask(self.dim());
        all & !full_mask(self.p)
    }

    /// Every canonical blade, ordered by grade and then lexicographically.
    pub fn blades(&self) -> Vec<Blade> {
        let mut blades: Vec<Blade> = (0..self.algebra_dim() as u32).map(Blade).collect();
        blades.sort();
        blades
    }

    /// Canonical blades supported on the given bitmask, in canonical order.
    pub fn blades_within(&self, mask: u32) -> Vec<Blade> {
        let mut blades: Vec<Blade> = (0..self.algebra_dim() as u32)
            .filter(|m| m & !mask == 0)
            .map(Blade)
            .collect();
        blades.sort();
        blades
    }

    pub fn contains(&self, blade: Blade) -> bool {
        blade.0 & !full_mask(self.dim()) == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A canonical basis monomial, stored as a set of generator indices.
///
/// Ordering is by grade first, then lexicographic on the increasing index list,
/// which is the order used for every listing and serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_bits(bits: u32) -> Self {
        Blade(bits)
    }

    /// The blade of a single generator `e_index` (1-based).
    pub fn generator(index: usize) -> Result<Self> {
        if index == 0 || index > MAX_GENERATORS {
            return Err(Error::InvalidBlade(format!(
                "generator index {index} out of range"
            )));
        }
        Ok(Blade(1 << (index - 1)))
    }

    /// Builds a blade from strictly increasing 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > MAX_GENERATORS {
                return Err(Error::InvalidBlade(format!(
                    "generator index {i} out of range"
                )));
            }
            if i <= last {
                return Err(Error::InvalidBlade(format!(
                    "indices must be strictly increasing, got {indices:?}"
                )));
            }
            last = i;
            bits |= 1 << (i - 1);
        }
        Ok(Blade(bits))
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn grade(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_scalar(&self) -> bool {
        self.0 == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.grade());
        let mut bits = self.0;
        while bits != 0 {
            let low = bits.trailing_zeros();
            out.push(low as usize + 1);
            bits &= bits - 1;
        }
        out
    }

    pub fn contains(&self, index: usize) -> bool {
        (1..=32).contains(&index) && self.0 & (1 << (index - 1)) != 0
    }

    pub fn is_disjoint(&self, other: Blade) -> bool {
        self.0 & other.0 == 0
    }

    /// Sign of `B * B`, i.e. `+1` for an involution.
    pub fn square_sign(&self, sig: Signature) -> i32 {
        mul_blades(sig, *self, *self).0
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        match self.grade().cmp(&other.grade()) {
            Ordering::Equal => {
                // The lowest index where the two sets differ decides.
                let diff = self.0 ^ other.0;
                if self.0 & (diff & diff.wrapping_neg()) != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_scalar() {
            return write!(f, "1");
        }
        write!(f, "e{{")?;
        for (n, i) in self.indices().iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn format_blades(blades: &[Blade]) -> String {
    blades
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Number of transpositions needed to sort the concatenation `a b` of two index sets.
fn reorder_parity(a: u32, b: u32) -> u32 {
    let mut swaps = 0;
    let mut a = a >> 1;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    swaps & 1
}

/// Clifford product of two canonical blades: `a * b = sign * result`.
pub fn mul_blades(sig: Signature, a: Blade, b: Blade) -> (i32, Blade) {
    let mut negative = reorder_parity(a.0, b.0);
    negative += (a.0 & b.0 & sig.negative_mask()).count_ones();
    let sign = if negative & 1 == 0 { 1 } else { -1 };
    (sign, Blade(a.0 ^ b.0))
}

/// Exterior product of two canonical blades; `None` when they share an index.
pub fn wedge_blades(a: Blade, b: Blade) -> Option<(i32, Blade)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    let sign = if reorder_parity(a.0, b.0) == 0 { 1 } else { -1 };
    Some((sign, Blade(a.0 | b.0)))
}

pub fn blades_commute(sig: Signature, a: Blade, b: Blade) -> bool {
    mul_blades(sig, a, b).0 == mul_blades(sig, b, a).0
}

/// The top blade `e_1 ... e_{p+q}` with coefficient one.
pub fn pseudoscalar(sig: Signature) -> Multivector {
    Multivector::blade(sig, Blade(full_mask(sig.dim())))
}

/// A finite linear combination of canonical blades with rational coefficients.
///
/// Zero coefficients are never stored, so two multivectors are equal exactly
/// when their term maps are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    sig: Signature,
    terms: BTreeMap<Blade, Rational>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, Rational::one())
    }

    pub fn scalar(sig: Signature, value: Rational) -> Self {
        Self::term(sig, Blade::SCALAR, value)
    }

    /// A single blade with coefficient one. Panics if the blade does not fit `sig`.
    pub fn blade(sig: Signature, blade: Blade) -> Self {
        Self::term(sig, blade, Rational::one())
    }

    pub fn term(sig: Signature, blade: Blade, coeff: Rational) -> Self {
        assert!(sig.contains(blade), "blade {blade} outside signature {sig}");
        let mut mv = Self::zero(sig);
        mv.add_term(blade, coeff);
        mv
    }

    /// Builds a multivector from `(indices, coefficient)` pairs; repeated blades accumulate.
    pub fn from_terms<I>(sig: Signature, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Blade, Rational)>,
    {
        let mut mv = Self::zero(sig);
        for (blade, coeff) in terms {
            if !sig.contains(blade) {
                return Err(Error::InvalidBlade(format!(
                    "{blade} has an index above {} for signature {sig}",
                    sig.dim()
                )));
            }
            mv.add_term(blade, coeff);
        }
        Ok(mv)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> Rational {
        self.terms
            .get(&blade)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn blades(&self) -> impl Iterator<Item = Blade> + '_ {
        self.terms.keys().copied()
    }

    /// Union of the index sets of all blades present.
    pub fn support(&self) -> u32 {
        self.terms.keys().fold(0, |acc, b| acc | b.0)
    }

    pub(crate) fn add_term(&mut self, blade: Blade, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&blade) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&blade);
                }
            }
            None => {
                self.terms.insert(blade, coeff);
            }
        }
    }

    /// Same coefficients over a different signature with room for every blade.
    pub fn with_signature(&self, sig: Signature) -> Result<Self> {
        Multivector::from_terms(sig, self.terms.iter().map(|(b, c)| (*b, c.clone())))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(self.sig, other.sig));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero(self.sig);
        if factor.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(b, c)| (*b, c * factor)).collect();
        out
    }

    /// Geometric (Clifford) product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Blade, Rational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (sign, blade) = mul_blades(self.sig, *a, *b);
                let c = ca * cb;
                let entry = acc.entry(blade).or_insert_with(Rational::zero);
                if sign > 0 {
                    *entry += c;
                } else {
                    *entry -= c;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Multivector {
            sig: self.sig,
            terms: acc,
        })
    }

    /// Exterior product, with no metric contribution.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Blade, Rational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, blade)) = wedge_blades(*a, *b) {
                    let c = ca * cb;
                    let entry = acc.entry(blade).or_insert_with(Rational::zero);
                    if sign > 0 {
                        *entry += c;
                    } else {
                        *entry -= c;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Multivector {
            sig: self.sig,
            terms: acc,
        })
    }

    /// Grade-`k` part.
    pub fn grade(&self, k: usize) -> Self {
        Multivector {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == k)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    /// Grades that carry a nonzero term, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        g.dedup();
        g
    }

    /// Coordinates in the canonical blade basis, indexed by blade bitmask.
    pub fn coordinates(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.sig.algebra_dim()];
        for (b, c) in &self.terms {
            out[b.0 as usize] = c.clone();
        }
        out
    }

    /// `true` if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Largest coefficient magnitude, zero for the zero multivector.
    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("signature mismatch in addition")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        self + &(-rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        Multivector {
            sig: self.sig,
            terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect(),
        }
    }
}

impl Mul for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: &Multivector) -> Multivector {
        self.product(rhs).expect("signature mismatch in product")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn b(indices: &[usize]) -> Blade {
        Blade::from_indices(indices).unwrap()
    }

    #[test]
    fn signature_bounds() {
        assert!(Signature::new(0, 0).is_err());
        assert!(Signature::new(9, 8).is_err());
        assert!(Signature::new(8, 8).is_ok());
        assert_eq!(sig(3, 4).generator_square(3), 1);
        assert_eq!(sig(3, 4).generator_square(4), -1);
    }

    #[test]
    fn blade_construction() {
        assert_eq!(b(&[1, 4]).indices(), vec![1, 4]);
        assert!(Blade::from_indices(&[2, 1]).is_err());
        assert!(Blade::from_indices(&[1, 1]).is_err());
        assert!(Blade::from_indices(&[0]).is_err());
        assert_eq!(b(&[]).grade(), 0);
        assert_eq!(b(&[1, 2, 4, 5]).to_string(), "e{1,2,4,5}");
        assert_eq!(Blade::SCALAR.to_string(), "1");
    }

    #[test]
    fn canonical_order() {
        let order = sig(3, 0).blades();
        let rendered: Vec<String> = order.iter().map(|b| b.to_string()).collect();
        assert_eq!(
            rendered,
            ["1", "e{1}", "e{2}", "e{3}", "e{1,2}", "e{1,3}", "e{2,3}", "e{1,2,3}"]
        );
        assert!(b(&[1, 4]) < b(&[2, 3]));
        assert!(b(&[1, 5, 6]) < b(&[2, 3, 4]));
    }

    #[test]
    fn mul_blades_examples() {
        let s33 = sig(3, 3);
        assert_eq!(mul_blades(s33, b(&[1]), b(&[4])), (1, b(&[1, 4])));
        assert_eq!(mul_blades(s33, b(&[1, 4]), b(&[1, 4])), (1, Blade::SCALAR));

        let s02 = sig(0, 2);
        assert_eq!(mul_blades(s02, b(&[1]), b(&[2])), (1, b(&[1, 2])));
        assert_eq!(mul_blades(s02, b(&[2]), b(&[1])), (-1, b(&[1, 2])));

        let s34 = sig(3, 4);
        let top = b(&[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(mul_blades(s34, top, top), (-1, Blade::SCALAR));
    }

    #[test]
    fn wedge_blade_examples() {
        assert_eq!(wedge_blades(b(&[1]), b(&[1])), None);
        assert_eq!(
            wedge_blades(b(&[1, 3]), b(&[2, 4])),
            Some((-1, b(&[1, 2, 3, 4])))
        );
        assert_eq!(wedge_blades(b(&[2]), b(&[1])), Some((-1, b(&[1, 2]))));
    }

    #[test]
    fn commutation_examples() {
        let s33 = sig(3, 3);
        assert!(blades_commute(s33, b(&[1, 4]), b(&[2, 5])));
        assert!(!blades_commute(s33, b(&[1]), b(&[2])));
        assert!(blades_commute(sig(3, 4), b(&[7]), b(&[1, 2, 3, 4, 5, 6])));
    }

    #[test]
    fn pseudoscalar_examples() {
        let s34 = sig(3, 4);
        let g = pseudoscalar(s34);
        assert_eq!(&g * &g, Multivector::scalar(s34, rat(-1, 1)));
        assert_eq!(
            pseudoscalar(sig(1, 0)),
            Multivector::blade(sig(1, 0), b(&[1]))
        );
        let s33 = sig(3, 3);
        let g = pseudoscalar(s33);
        assert_eq!(&g * &g, Multivector::one(s33));
    }

    #[test]
    fn orthogonal_idempotents() {
        let s33 = sig(3, 3);
        let half = Multivector::scalar(s33, rat(1, 2));
        let e14 = Multivector::term(s33, b(&[1, 4]), rat(1, 2));
        let plus = &half + &e14;
        let minus = &half - &e14;
        assert!((&plus * &minus).is_zero());
        assert_eq!(&plus * &plus, plus);
    }

    #[test]
    fn zero_terms_are_dropped() {
        let s = sig(2, 0);
        let x = Multivector::blade(s, b(&[1]));
        assert!((&x - &x).is_empty());
        assert!(Multivector::scalar(s, rat(0, 1)).is_zero());
    }

    #[test]
    fn signature_mismatch() {
        let x = Multivector::one(sig(1, 0));
        let y = Multivector::one(sig(0, 1));
        assert!(matches!(x.product(&y), Err(Error::SignatureMismatch(_, _))));
        assert!(matches!(x.wedge(&y), Err(Error::SignatureMismatch(_, _))));
    }

    #[test]
    fn grade_projection() {
        let s = sig(2, 1);
        let x = Multivector::from_terms(
            s,
            [
                (Blade::SCALAR, rat(1, 1)),
                (b(&[1]), rat(2, 1)),
                (b(&[1, 3]), rat(3, 1)),
            ],
        )
        .unwrap();
        assert_eq!(x.grade(0), Multivector::one(s));
        assert!(x.grade(3).is_zero());
        assert_eq!(x.grades(), vec![0, 1, 2]);
    }

    #[test]
    fn out_of_range_blade_rejected() {
        let s = sig(1, 1);
        assert!(Multivector::from_terms(s, [(b(&[3]), rat(1, 1))]).is_err());
    }
}
