//! Primitive idempotents, minimal left ideals and the division ring `f R_{p,q} f`.

use std::collections::HashMap;
use std::fmt;

use num_traits::Signed;

use crate::algebra::{blades_commute, mul_blades, rat, Blade, Multivector, Rational, Signature};
use crate::error::{Error, Result};
use crate::linalg::basis_positions;
use crate::maps::GeneratorSubset;

/// Radon-Hurwitz number `r_i`, defined for every integer `i`.
pub fn radon_hurwitz(i: i64) -> i64 {
    match i {
        0 => 0,
        1 => 1,
        2 | 3 => 2,
        4..=7 => 3,
        i if i >= 8 => {
            let periods = (i - 8) / 8 + 1;
            radon_hurwitz(i - 8 * periods) + 4 * periods
        }
        -1 => -1,
        i => {
            let j = -i;
            1 - j + radon_hurwitz(j - 2)
        }
    }
}

/// Precomputed Radon-Hurwitz numbers over a contiguous range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadonHurwitzTable {
    lo: i64,
    values: Vec<i64>,
}

impl RadonHurwitzTable {
    pub fn new(lo: i64, hi: i64) -> Self {
        let values = if hi < lo {
            Vec::new()
        } else {
            (lo..=hi).map(radon_hurwitz).collect()
        };
        RadonHurwitzTable { lo, values }
    }

    pub fn get(&self, i: i64) -> i64 {
        let offset = i - self.lo;
        if offset >= 0 && (offset as usize) < self.values.len() {
            self.values[offset as usize]
        } else {
            radon_hurwitz(i)
        }
    }
}

/// Number of commuting involutions `k = q - r_{q-p}` in a primitive idempotent.
pub fn involution_count(sig: Signature) -> usize {
    let (p, q) = (sig.p() as i64, sig.q() as i64);
    let k = q - radon_hurwitz(q - p);
    debug_assert!(k >= 0);
    k as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseAlgebra {
    Real,
    Complex,
    Quaternion,
    DoubleReal,
    DoubleQuaternion,
}

impl BaseAlgebra {
    /// Real dimension of the underlying division algebra.
    pub fn division_dim(&self) -> usize {
        match self {
            BaseAlgebra::Real | BaseAlgebra::DoubleReal => 1,
            BaseAlgebra::Complex => 2,
            BaseAlgebra::Quaternion | BaseAlgebra::DoubleQuaternion => 4,
        }
    }

    pub fn summands(&self) -> usize {
        match self {
            BaseAlgebra::DoubleReal | BaseAlgebra::DoubleQuaternion => 2,
            _ => 1,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            BaseAlgebra::Real | BaseAlgebra::DoubleReal => "R",
            BaseAlgebra::Complex => "C",
            BaseAlgebra::Quaternion | BaseAlgebra::DoubleQuaternion => "H",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BaseAlgebra::Real => "real",
            BaseAlgebra::Complex => "complex",
            BaseAlgebra::Quaternion => "quaternion",
            BaseAlgebra::DoubleReal => "double-real",
            BaseAlgebra::DoubleQuaternion => "double-quaternion",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            BaseAlgebra::Real,
            BaseAlgebra::Complex,
            BaseAlgebra::Quaternion,
            BaseAlgebra::DoubleReal,
            BaseAlgebra::DoubleQuaternion,
        ]
        .into_iter()
        .find(|b| b.name() == name)
    }
}

/// Matrix algebra isomorphic to `R_{p,q}`: `base(size)`, or two copies for the sum types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatrixType {
    pub base: BaseAlgebra,
    pub size: usize,
}

impl MatrixType {
    /// Real dimension of the whole matrix algebra.
    pub fn real_dim(&self) -> usize {
        self.base.summands() * self.size * self.size * self.base.division_dim()
    }

    /// Real dimension of a minimal left ideal (one column of one simple summand).
    pub fn minimal_ideal_dim(&self) -> usize {
        self.size * self.base.division_dim()
    }
}

impl fmt::Display for MatrixType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = format!("{}({})", self.base.symbol(), self.size);
        if self.base.summands() == 2 {
            write!(f, "{one}⊕{one}")
        } else {
            write!(f, "{one}")
        }
    }
}

/// Matrix-algebra type of `R_{p,q}` from `q - p mod 8`.
pub fn classify(sig: Signature) -> MatrixType {
    let n = sig.dim() as u32;
    let class = (sig.q() as i64 - sig.p() as i64).rem_euclid(8);
    let (base, exp) = match class {
        0 | 6 => (BaseAlgebra::Real, n / 2),
        1 | 5 => (BaseAlgebra::Complex, (n - 1) / 2),
        2 | 4 => (BaseAlgebra::Quaternion, (n - 2) / 2),
        3 => (BaseAlgebra::DoubleQuaternion, (n - 3) / 2),
        _ => (BaseAlgebra::DoubleReal, (n - 1) / 2),
    };
    MatrixType {
        base,
        size: 1 << exp,
    }
}

/// Division ring type of `f R_{p,q} f` for a primitive idempotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivisionType {
    Real,
    Complex,
    Quaternion,
}

impl DivisionType {
    pub fn dim(&self) -> usize {
        match self {
            DivisionType::Real => 1,
            DivisionType::Complex => 2,
            DivisionType::Quaternion => 4,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            DivisionType::Real => "R",
            DivisionType::Complex => "C",
            DivisionType::Quaternion => "H",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "R" => Some(DivisionType::Real),
            "C" => Some(DivisionType::Complex),
            "H" => Some(DivisionType::Quaternion),
            _ => None,
        }
    }
}

impl fmt::Display for DivisionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The signed group `{ +-B }` generated by a set of commuting involutive blades.
#[derive(Debug, Clone)]
pub struct BladeGroup {
    sig: Signature,
    elements: HashMap<u32, i32>,
}

impl BladeGroup {
    pub fn trivial(sig: Signature) -> Self {
        BladeGroup {
            sig,
            elements: HashMap::from([(0, 1)]),
        }
    }

    /// Group generated by `gens`, or `None` if it is smaller than `2^len` or contains `-1`.
    pub fn generated_by(sig: Signature, gens: &[Blade]) -> Option<Self> {
        gens.iter()
            .try_fold(Self::trivial(sig), |g, &b| g.extended(b))
    }

    /// Adjoins `g`, failing if the order does not double (which is also the case
    /// whenever `-1` would become a member).
    pub fn extended(&self, g: Blade) -> Option<Self> {
        let mut elements = self.elements.clone();
        for (&mask, &sign) in &self.elements {
            let (s, prod) = mul_blades(self.sig, Blade::from_bits(mask), g);
            if self.elements.contains_key(&prod.bits()) {
                return None;
            }
            elements.insert(prod.bits(), sign * s);
        }
        Some(BladeGroup {
            sig: self.sig,
            elements,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Sign attached to `blade` if `+-blade` is a member.
    pub fn sign_of(&self, blade: Blade) -> Option<i32> {
        self.elements.get(&blade.bits()).copied()
    }
}

fn check_generators(sig: Signature, gens: &[Blade]) -> Result<()> {
    for (i, &g) in gens.iter().enumerate() {
        if !sig.contains(g) {
            return Err(Error::InvalidGeneratorSet(format!(
                "{g} does not fit signature {sig}"
            )));
        }
        if g.square_sign(sig) != 1 {
            return Err(Error::InvalidGeneratorSet(format!("{g} squares to -1")));
        }
        if let Some(&h) = gens[..i].iter().find(|&&h| !blades_commute(sig, g, h)) {
            return Err(Error::InvalidGeneratorSet(format!(
                "{h} and {g} do not commute"
            )));
        }
    }
    Ok(())
}

/// `true` when the generators are commuting involutions whose group has order
/// `2^len` and does not contain `-1`.
pub fn is_admissible_generator_set(sig: Signature, gens: &[Blade]) -> bool {
    check_generators(sig, gens).is_ok() && BladeGroup::generated_by(sig, gens).is_some()
}

/// Expands `prod (1 + B_i)/2`.
///
/// Degenerate sets whose group contains `-1` are accepted and produce zero.
pub fn build_idempotent(sig: Signature, generators: &[Blade]) -> Result<Multivector> {
    check_generators(sig, generators)?;
    let half = rat(1, 2);
    let mut f = Multivector::one(sig);
    for &g in generators {
        let factor =
            Multivector::from_terms(sig, [(Blade::SCALAR, half.clone()), (g, half.clone())])?;
        f = f.product(&factor)?;
    }
    Ok(f)
}

/// Recovers blades `B_i` with `f = prod (1 + B_i)/2`, if `f` has that shape.
pub fn factor_idempotent(sig: Signature, f: &Multivector) -> Option<Vec<Blade>> {
    if f.signature() != sig || f.is_zero() {
        return None;
    }
    let terms = f.len();
    if !terms.is_power_of_two() {
        return None;
    }
    let mut basis: Vec<u32> = Vec::new();
    let mut chosen = Vec::new();
    for (blade, coeff) in f.terms() {
        if blade.is_scalar() || !coeff.is_positive() {
            continue;
        }
        let mut m = blade.bits();
        for &v in &basis {
            m = m.min(m ^ v);
        }
        if m != 0 {
            basis.push(m);
            basis.sort_unstable_by(|a, b| b.cmp(a));
            chosen.push(*blade);
        }
    }
    if 1usize << chosen.len() != terms {
        return None;
    }
    match build_idempotent(sig, &chosen) {
        Ok(rebuilt) if &rebuilt == f => Some(chosen),
        _ => None,
    }
}

/// An element of a spanning listing, tagged with the blade that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledElement {
    pub label: Blade,
    pub element: Multivector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentReport {
    pub signature: Signature,
    pub f: Multivector,
    /// Involutive blades with `f = prod (1 + B)/2`; empty if `f` has no such factorization.
    pub generators: Vec<Blade>,
    /// Number of generators; derived from the ideal dimension when no factorization is known.
    pub k: usize,
    pub is_idempotent: bool,
    pub is_primitive: bool,
    pub ideal_dim: usize,
    pub expected_ideal_dim: usize,
    pub matrix_type: MatrixType,
    pub division_type: Option<DivisionType>,
    /// `b f` for the first-seen independent blades `b` in canonical order.
    pub ideal_basis: Vec<LabeledElement>,
    /// `f b f` spanning `f R f`, starting with `f` itself.
    pub division_basis: Vec<LabeledElement>,
}

impl IdempotentReport {
    pub fn ideal_elements(&self) -> Vec<Multivector> {
        self.ideal_basis.iter().map(|e| e.element.clone()).collect()
    }

    pub fn division_elements(&self) -> Vec<Multivector> {
        self.division_basis
            .iter()
            .map(|e| e.element.clone())
            .collect()
    }
}

/// Greedy basis `{ b f }` of the left ideal `R_{p,q} f` over canonical blades `b`.
pub fn ideal_basis(sig: Signature, f: &Multivector) -> Result<Vec<LabeledElement>> {
    if f.signature() != sig {
        return Err(Error::SignatureMismatch(sig, f.signature()));
    }
    let blades = sig.blades();
    let products: Vec<Multivector> = blades
        .iter()
        .map(|&b| &Multivector::blade(sig, b) * f)
        .collect();
    Ok(basis_positions(&products)
        .into_iter()
        .map(|i| LabeledElement {
            label: blades[i],
            element: products[i].clone(),
        })
        .collect())
}

/// Basis of `f R f` as elements `f b f`, with `f` first.
///
/// Only blades labelling the ideal basis are tried: `f (R f)` is spanned by `f` times
/// that basis.
fn division_basis_from(f: &Multivector, ideal: &[LabeledElement]) -> Vec<LabeledElement> {
    let candidates: Vec<LabeledElement> = std::iter::once(LabeledElement {
        label: Blade::SCALAR,
        element: f.clone(),
    })
    .chain(ideal.iter().map(|e| LabeledElement {
        label: e.label,
        element: f * &e.element,
    }))
    .collect();
    let elements: Vec<Multivector> = candidates.iter().map(|c| c.element.clone()).collect();
    basis_positions(&elements)
        .into_iter()
        .map(|i| candidates[i].clone())
        .collect()
}

pub fn division_ring_basis_labeled(sig: Signature, f: &Multivector) -> Result<Vec<LabeledElement>> {
    let ideal = ideal_basis(sig, f)?;
    Ok(division_basis_from(f, &ideal))
}

/// Basis of the space `{ f b f }`, starting with `f`.
pub fn division_ring_basis(sig: Signature, f: &Multivector) -> Result<Vec<Multivector>> {
    Ok(division_ring_basis_labeled(sig, f)?
        .into_iter()
        .map(|e| e.element)
        .collect())
}

/// `Some(c)` if `x = c f`.
fn multiple_of(x: &Multivector, f: &Multivector) -> Option<Rational> {
    let (blade, coeff) = f.terms().next()?;
    let c = x.coefficient(*blade) / coeff;
    (f.scale(&c) == *x).then_some(c)
}

/// Division ring type from the dimension of `f R f`, provided every non-identity
/// basis element squares to a negative multiple of `f`.
fn detect_division_type(f: &Multivector, basis: &[LabeledElement]) -> Option<DivisionType> {
    if f.is_zero() {
        return None;
    }
    let candidate = match basis.len() {
        1 => return Some(DivisionType::Real),
        2 => DivisionType::Complex,
        4 => DivisionType::Quaternion,
        _ => return None,
    };
    let all_imaginary = basis[1..].iter().all(|e| {
        let sq = &e.element * &e.element;
        matches!(multiple_of(&sq, f), Some(c) if c.is_negative())
    });
    all_imaginary.then_some(candidate)
}

/// Checks idempotency and primitivity of `f`, and computes its ideal and division ring.
///
/// Primitivity means `f^2 = f`, `f != 0` and the ideal `R_{p,q} f` has the dimension of a
/// minimal left ideal of the classified matrix algebra.
pub fn verify_idempotent(sig: Signature, f: &Multivector) -> Result<IdempotentReport> {
    let generators = factor_idempotent(sig, f).unwrap_or_default();
    verify_with_generators(sig, f, generators)
}

/// [`build_idempotent`] followed by [`verify_idempotent`], recording the generators.
pub fn idempotent_report(sig: Signature, generators: &[Blade]) -> Result<IdempotentReport> {
    let f = build_idempotent(sig, generators)?;
    verify_with_generators(sig, &f, generators.to_vec())
}

/// [`verify_idempotent`] with known generators, used for reporting `k`.
pub fn verify_with_generators(
    sig: Signature,
    f: &Multivector,
    generators: Vec<Blade>,
) -> Result<IdempotentReport> {
    if f.signature() != sig {
        return Err(Error::SignatureMismatch(sig, f.signature()));
    }
    let is_idempotent = &(f * f) == f;
    let ideal = ideal_basis(sig, f)?;
    let ideal_dim = ideal.len();
    let matrix_type = classify(sig);
    let expected_ideal_dim = matrix_type.minimal_ideal_dim();
    let is_primitive = is_idempotent && !f.is_zero() && ideal_dim == expected_ideal_dim;
    let division_basis = division_basis_from(f, &ideal);
    let division_type = if is_primitive {
        detect_division_type(f, &division_basis)
    } else {
        None
    };
    let k = if !generators.is_empty() || f == &Multivector::one(sig) {
        generators.len()
    } else if ideal_dim.is_power_of_two() && ideal_dim > 0 {
        sig.dim() - ideal_dim.trailing_zeros() as usize
    } else {
        0
    };
    Ok(IdempotentReport {
        signature: sig,
        f: f.clone(),
        generators,
        k,
        is_idempotent,
        is_primitive,
        ideal_dim,
        expected_ideal_dim,
        matrix_type,
        division_type,
        ideal_basis: ideal,
        division_basis,
    })
}

/// Quaternion relations in `f R f`: `i^2 = j^2 = k^2 = -f`, `ij = k`, `jk = i`, `ki = j`,
/// `ji = -k`, `kj = -i`, `ik = -j`.
pub fn quaternion_relations_check(
    f: &Multivector,
    i: &Multivector,
    j: &Multivector,
    k: &Multivector,
) -> bool {
    let sig = f.signature();
    if [i, j, k].iter().any(|x| x.signature() != sig) {
        return false;
    }
    let minus_f = -f;
    let squares = [i, j, k].iter().all(|x| *x * *x == minus_f);
    squares
        && &(i * j) == k
        && &(j * k) == i
        && &(k * i) == j
        && (j * i) == -k
        && (k * j) == -i
        && (i * k) == -j
}

/// Extends `seed` to `involution_count(sig)` commuting involutive blades supported on
/// `support`, keeping the generated group of full order and free of `-1`.
///
/// Candidates are tried in canonical blade order (grade, then lexicographic), with
/// backtracking; the first complete extension wins.
pub fn find_generators(
    sig: Signature,
    seed: &[Blade],
    support: &GeneratorSubset,
) -> Result<Vec<Blade>> {
    if support.ambient() != sig {
        return Err(Error::SignatureMismatch(sig, support.ambient()));
    }
    check_generators(sig, seed)?;
    let group = BladeGroup::generated_by(sig, seed).ok_or_else(|| {
        Error::InvalidGeneratorSet("seed generates a group containing -1 or repeats".into())
    })?;
    let k = involution_count(sig);
    if seed.len() >= k {
        return Ok(seed.to_vec());
    }
    let candidates: Vec<Blade> = sig
        .blades_within(support.mask())
        .into_iter()
        .filter(|b| !b.is_scalar() && b.square_sign(sig) == 1)
        .filter(|&b| seed.iter().all(|&s| blades_commute(sig, s, b)))
        .collect();

    let mut search = Search {
        sig,
        candidates: &candidates,
        needed: k - seed.len(),
        chosen: Vec::new(),
        best: Vec::new(),
    };
    if search.run(0, &group) {
        let mut out = seed.to_vec();
        out.extend(search.chosen);
        Ok(out)
    } else {
        let mut found = seed.to_vec();
        found.extend(search.best);
        Err(Error::SearchExhausted { needed: k, found })
    }
}

struct Search<'a> {
    sig: Signature,
    candidates: &'a [Blade],
    needed: usize,
    chosen: Vec<Blade>,
    best: Vec<Blade>,
}

impl Search<'_> {
    fn run(&mut self, start: usize, group: &BladeGroup) -> bool {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.chosen.len() == self.needed {
            return true;
        }
        let remaining = self.needed - self.chosen.len();
        for idx in start..self.candidates.len() {
            if self.candidates.len() - idx < remaining {
                break;
            }
            let b = self.candidates[idx];
            if !self.chosen.iter().all(|&c| blades_commute(self.sig, c, b)) {
                continue;
            }
            let Some(next) = group.extended(b) else {
                continue;
            };
            self.chosen.push(b);
            if self.run(idx + 1, &next) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}
