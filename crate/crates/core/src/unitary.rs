//! U(n)-structures on `R^{2n}` and the idempotents they induce.
//!
//! The standard structure has `J e_k = e_{k+n}`, `J e_{k+n} = -e_k` and Kahler form
//! `omega = sum_j e^j ^ e^{n+j}`. Its Kahler polynomial `P = sum_m omega^m / m!`, scaled
//! by `2^-n` and quantized, is the primitive idempotent `prod_j (1 + e_j e_{n+j}) / 2`
//! of `R_{n,n}`, `R_{n,n+1}` and `R_{n,n+2}`.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{rat, Blade, Multivector, Rational, Signature, MAX_GENERATORS};
use crate::error::{Error, Result};
use crate::ideals::{
    build_idempotent, find_generators, involution_count, verify_with_generators, IdempotentReport,
};
use crate::linalg::RationalMatrix;
use crate::maps::{embed, quantize, restrict_symbol, symbolize, GeneratorSubset};

/// The triple `(g, J, omega)` on `R^{2n}`, with `g` the standard inner product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitaryStructure {
    pub n: usize,
    pub j: RationalMatrix,
    /// Two-form over `R^{2n}`, carried by a multivector of signature `(n,n)`.
    pub omega: Multivector,
}

impl UnitaryStructure {
    /// Gram matrix `Omega[a][b] = omega(e_a, e_b)`.
    pub fn omega_gram(&self) -> Result<RationalMatrix> {
        form_gram(&self.omega, 2 * self.n)
    }

    /// `J^2 = -1`, `J^T J = 1` and `Gram(omega) = J^T`.
    pub fn is_consistent(&self) -> bool {
        let dim = 2 * self.n;
        if self.j.rows() != dim || !self.j.is_square() {
            return false;
        }
        let id = RationalMatrix::identity(dim);
        let Ok(sq) = self.j.mul(&self.j) else {
            return false;
        };
        let Ok(orth) = self.j.transpose().mul(&self.j) else {
            return false;
        };
        let Ok(gram) = self.omega_gram() else {
            return false;
        };
        sq == id.neg() && orth == id && gram == self.j.transpose()
    }
}

fn carrier(n: usize) -> Result<Signature> {
    if n == 0 || 2 * n > MAX_GENERATORS {
        return Err(Error::DimensionMismatch {
            expected: format!("1 <= n <= {}", MAX_GENERATORS / 2),
            found: format!("n = {n}"),
        });
    }
    Signature::new(n, n)
}

/// Gram matrix of a two-form on `R^dim`. Fails if the form has other grades.
pub fn form_gram(omega: &Multivector, dim: usize) -> Result<RationalMatrix> {
    let mut gram = RationalMatrix::zeros(dim, dim);
    for (blade, c) in omega.terms() {
        let idx = blade.indices();
        if idx.len() != 2 || idx[1] > dim {
            return Err(Error::DimensionMismatch {
                expected: format!("a two-form on R^{dim}"),
                found: format!("term {blade}"),
            });
        }
        let (a, b) = (idx[0] - 1, idx[1] - 1);
        gram.set(a, b, c.clone());
        gram.set(b, a, -c.clone());
    }
    Ok(gram)
}

/// Standard `J_0` and `omega_0` on `R^{2n}`.
pub fn standard_structure(n: usize) -> Result<UnitaryStructure> {
    let sig = carrier(n)?;
    let mut j = RationalMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j.set(k + n, k, Rational::one());
        j.set(k, k + n, -Rational::one());
    }
    Ok(UnitaryStructure {
        n,
        j,
        omega: standard_kahler_form(sig, n),
    })
}

/// `sum_{j=1..n} e^j ^ e^{offset+j}` written into `sig`, with `offset = n`.
fn standard_kahler_form(sig: Signature, n: usize) -> Multivector {
    let terms = (1..=n).map(|j| (pair_blade(j, n + j), Rational::one()));
    Multivector::from_terms(sig, terms).expect("pairs fit the carrier")
}

fn pair_blade(a: usize, b: usize) -> Blade {
    Blade::from_indices(&[a, b]).expect("a < b")
}

/// `omega^m / m!` using the exterior product; `omega^0 = 1`.
pub fn kahler_power(omega: &Multivector, n: usize, m: usize) -> Result<Multivector> {
    if m > n {
        return Err(Error::DimensionMismatch {
            expected: format!("m <= {n}"),
            found: format!("m = {m}"),
        });
    }
    let sig = omega.signature();
    let mut power = Multivector::one(sig);
    let mut factorial = BigInt::one();
    for i in 1..=m {
        power = power.wedge(omega)?;
        factorial *= i;
    }
    Ok(power.scale(&Rational::new(BigInt::one(), factorial)))
}

/// `sum_{m=0..n} omega^m / m!` for an arbitrary two-form.
pub fn kahler_polynomial_of(omega: &Multivector, n: usize) -> Result<Multivector> {
    let mut total = Multivector::zero(omega.signature());
    for m in 0..=n {
        total = total.try_add(&kahler_power(omega, n, m)?)?;
    }
    Ok(total)
}

/// `2^-n sum_{m=0..n} omega^m / m!`.
pub fn rational_kahler_polynomial_of(omega: &Multivector, n: usize) -> Result<Multivector> {
    Ok(kahler_polynomial_of(omega, n)?.scale(&rat(1, 1i64 << n)))
}

/// Kahler polynomial of the standard form on `R^{2n}`.
pub fn kahler_polynomial(n: usize) -> Result<Multivector> {
    let structure = standard_structure(n)?;
    kahler_polynomial_of(&structure.omega, n)
}

/// Rational Kahler polynomial `P(omega_0) / 2^n`.
pub fn rational_kahler_polynomial(n: usize) -> Result<Multivector> {
    let structure = standard_structure(n)?;
    rational_kahler_polynomial_of(&structure.omega, n)
}

/// The involutions `e_j e_{offset+j}` for `j = 1..=count`.
pub fn paired_involutions(count: usize, offset: usize) -> Vec<Blade> {
    (1..=count).map(|j| pair_blade(j, offset + j)).collect()
}

fn is_unitary_target(n: usize, target: Signature) -> bool {
    target.p() == n && (n..=n + 2).contains(&target.q())
}

/// Quantizes the rational Kahler polynomial of `R^{2n}` into `R_{n,n}`, `R_{n,n+1}`
/// or `R_{n,n+2}` and verifies it.
///
/// The quantized polynomial is checked against the factorization
/// `prod_j (1 + e_j e_{n+j}) / 2` before the report is built.
pub fn induce_idempotent(n: usize, target: Signature) -> Result<IdempotentReport> {
    if n == 0 || !is_unitary_target(n, target) {
        return Err(Error::UnsupportedSignature {
            sig: target,
            reason: format!(
                "U({n}) induces idempotents only in ({n},{n}), ({n},{}), ({n},{})",
                n + 1,
                n + 2
            ),
        });
    }
    let pq = rational_kahler_polynomial(n)?;
    let identity: Vec<usize> = (1..=2 * n).collect();
    let f = embed(&pq, target, &identity)?;
    let generators = paired_involutions(n, n);
    let factored = build_idempotent(target, &generators)?;
    if f != factored {
        return Err(Error::Inconsistent(format!(
            "quantized Kahler polynomial differs from the product of (1 + e_j e_(n+j))/2 in {target}"
        )));
    }
    verify_with_generators(target, &f, generators)
}

/// Idempotent of an SU(n)-structure; it coincides with the U(n) one.
pub fn su_idempotent(n: usize, target: Signature) -> Result<IdempotentReport> {
    induce_idempotent(n, target)
}

/// Reads the U(p)-structure back off an idempotent of `R_{p,p}`, `R_{p,p+1}` or
/// `R_{p,p+2}`: `omega = sigma*(<2^p f>_2)`, restricted to `<e_1..e_2p>` when `q > p`.
///
/// The scaled grade-2 part must be exactly `sum_j e_j e_{p+j}`; relabelled pairs are rejected.
pub fn recover_structure(sig: Signature, f: &Multivector) -> Result<UnitaryStructure> {
    let p = sig.p();
    if p == 0 || !is_unitary_target(p, sig) {
        return Err(Error::UnsupportedSignature {
            sig,
            reason: "recovery needs signature (p,p), (p,p+1) or (p,p+2) with p >= 1".into(),
        });
    }
    if f.signature() != sig {
        return Err(Error::SignatureMismatch(sig, f.signature()));
    }
    if f.is_zero() {
        return Err(Error::NotAKahlerIdempotent("the zero element".into()));
    }
    if &(f * f) != f {
        return Err(Error::NotAKahlerIdempotent("f^2 != f".into()));
    }
    let scaled = f.scale(&rat(1i64 << p, 1)).grade(2);
    if scaled.len() != p {
        return Err(Error::NotAKahlerIdempotent(format!(
            "scaled grade-2 part has {} terms, expected {p}",
            scaled.len()
        )));
    }
    let expected = paired_involutions(p, p);
    for (blade, coeff) in scaled.terms() {
        if !coeff.is_one() {
            return Err(Error::NotAKahlerIdempotent(format!(
                "coefficient {coeff} on {blade}, expected 1"
            )));
        }
        if !expected.contains(blade) {
            return Err(Error::NotAKahlerIdempotent(format!(
                "{blade} is not one of the pairs e_j e_(p+j)"
            )));
        }
    }
    let subalgebra = GeneratorSubset::new(sig, &(1..=2 * p).collect::<Vec<_>>())?;
    let (omega, _) = restrict_symbol(&scaled, &subalgebra)?;
    let j = form_gram(&omega, 2 * p)?.transpose();
    let structure = UnitaryStructure { n: p, j, omega };
    if !structure.is_consistent() {
        return Err(Error::Inconsistent(
            "recovered J is not an orthogonal complex structure".into(),
        ));
    }
    Ok(structure)
}

/// Factor of a primitive idempotent that recovers a U(m)-structure by projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionDecomposition {
    pub signature: Signature,
    /// `(j, p + j)` for `j = 1..=m`, `m = min(p,q)`.
    pub pairs: Vec<(usize, usize)>,
    /// `prod_j (1 + e_j e_{p+j})`, not normalised.
    pub f_tilde: Multivector,
    pub extra_generators: Vec<Blade>,
    /// `prod (1 + B)/2` over the extra generators.
    pub e: Multivector,
    /// `f_tilde e / 2^m`.
    pub h: Multivector,
    /// `sum_j e^j ^ e^{p+j}` in the ambient exterior algebra.
    pub omega_tilde: Multivector,
    /// The generators occupied by the pairs.
    pub subalgebra: GeneratorSubset,
    /// Generators outside every pair, where the extra generators live.
    pub complement: Vec<usize>,
    /// `sigma*|_A(f_tilde)`, i.e. the Kahler polynomial of `R^{2m}`.
    pub recovered_polynomial: Multivector,
    pub report: IdempotentReport,
    /// `sigma*(h) = P^Q(omega_tilde) ^ sigma*(e)` held exactly.
    pub splitting_holds: bool,
}

impl ProjectionDecomposition {
    pub fn m(&self) -> usize {
        self.pairs.len()
    }
}

/// Builds `h = f_tilde e / 2^m` for signatures outside the `(p,p)`, `(p,p+1)`, `(p,p+2)` family.
pub fn recover_by_projection(sig: Signature) -> Result<ProjectionDecomposition> {
    let (p, q) = (sig.p(), sig.q());
    if p == q || p == 0 || q == 0 || q == p + 1 || q == p + 2 {
        return Err(Error::UnsupportedSignature {
            sig,
            reason: "projection needs p != q, p,q >= 1 and q not in {p+1, p+2}".into(),
        });
    }
    let m = p.min(q);
    let pairs: Vec<(usize, usize)> = (1..=m).map(|j| (j, p + j)).collect();
    let pair_blades = paired_involutions(m, p);

    let one = Multivector::one(sig);
    let mut f_tilde = one.clone();
    for &b in &pair_blades {
        f_tilde = f_tilde.product(&(&one + &Multivector::blade(sig, b)))?;
    }

    let paired_mask = pair_blades.iter().fold(0, |acc, b| acc | b.bits());
    let complement_mask = ((1u32 << sig.dim()) - 1) & !paired_mask;
    let complement = Blade::from_bits(complement_mask).indices();
    let support = GeneratorSubset::from_mask(sig, complement_mask)?;
    let generators = find_generators(sig, &pair_blades, &support)?;
    let extra_generators = generators[m..].to_vec();
    let e = build_idempotent(sig, &extra_generators)?;
    let h = (&f_tilde * &e).scale(&rat(1, 1i64 << m));
    if h != build_idempotent(sig, &generators)? {
        return Err(Error::Inconsistent(
            "f_tilde e / 2^m differs from the full product".into(),
        ));
    }

    let omega_tilde =
        Multivector::from_terms(sig, pair_blades.iter().map(|&b| (b, Rational::one())))?;
    let pq = rational_kahler_polynomial_of(&omega_tilde, m)?;
    let splitting_holds = symbolize(&h) == pq.wedge(&symbolize(&e))?;

    let subalgebra = GeneratorSubset::from_mask(sig, paired_mask)?;
    let (recovered_polynomial, _) = restrict_symbol(&f_tilde, &subalgebra)?;

    let report = verify_with_generators(sig, &h, generators)?;
    Ok(ProjectionDecomposition {
        signature: sig,
        pairs,
        f_tilde,
        extra_generators,
        e,
        h,
        omega_tilde,
        subalgebra,
        complement,
        recovered_polynomial,
        report,
        splitting_holds,
    })
}

/// Membership in `U(n) = O(2n) ∩ Sp(2n)`: `M^T M = 1` and `M^T Omega M = Omega`.
pub fn is_unitary_member(n: usize, m: &RationalMatrix) -> Result<bool> {
    let dim = 2 * n;
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: format!("{dim}x{dim}"),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let structure = standard_structure(n)?;
    let omega = structure.omega_gram()?;
    let mt = m.transpose();
    let orthogonal = mt.mul(m)? == RationalMatrix::identity(dim);
    let symplectic = mt.mul(&omega)?.mul(m)? == omega;
    Ok(orthogonal && symplectic)
}

/// `2^n q*(P^Q)`, i.e. `q*(P(omega_0))`, placed in `target`; handy when printing.
pub fn quantized_kahler_polynomial(n: usize, target: Signature) -> Result<Multivector> {
    let p = kahler_polynomial(n)?;
    let identity: Vec<usize> = (1..=2 * n).collect();
    Ok(quantize(&embed(&p, target, &identity)?))
}

/// Number of involutions the primitive idempotent of `sig` needs beyond the `min(p,q)` pairs.
pub fn extra_involution_count(sig: Signature) -> usize {
    involution_count(sig).saturating_sub(sig.p().min(sig.q()))
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
    fn standard_structure_small() {
        let s1 = standard_structure(1).unwrap();
        assert_eq!(s1.omega, Multivector::blade(sig(1, 1), b(&[1, 2])));
        assert_eq!(
            s1.j,
            RationalMatrix::from_i64_rows(&[vec![0, -1], vec![1, 0]]).unwrap()
        );
        let s2 = standard_structure(2).unwrap();
        assert_eq!(s2.j.mul(&s2.j).unwrap(), RationalMatrix::identity(4).neg());
        assert!(s2.is_consistent());
        let s3 = standard_structure(3).unwrap();
        let expected = Multivector::from_terms(
            sig(3, 3),
            [b(&[1, 4]), b(&[2, 5]), b(&[3, 6])].map(|x| (x, rat(1, 1))),
        )
        .unwrap();
        assert_eq!(s3.omega, expected);
        assert!(standard_structure(0).is_err());
        assert!(standard_structure(9).is_err());
    }

    #[test]
    fn kahler_power_examples() {
        let omega = standard_structure(3).unwrap().omega;
        let sq = kahler_power(&omega, 3, 2).unwrap();
        let expected = Multivector::from_terms(
            sig(3, 3),
            [b(&[1, 2, 4, 5]), b(&[1, 3, 4, 6]), b(&[2, 3, 5, 6])].map(|x| (x, rat(-1, 1))),
        )
        .unwrap();
        assert_eq!(sq, expected);
        assert_eq!(
            kahler_power(&omega, 3, 0).unwrap(),
            Multivector::one(sig(3, 3))
        );
        assert!(kahler_power(&omega, 3, 4).is_err());
    }

    #[test]
    fn kahler_polynomial_small() {
        let p1 = kahler_polynomial(1).unwrap();
        assert_eq!(
            p1,
            Multivector::from_terms(
                sig(1, 1),
                [(Blade::SCALAR, rat(1, 1)), (b(&[1, 2]), rat(1, 1))]
            )
            .unwrap()
        );
        assert_eq!(kahler_polynomial(3).unwrap().len(), 8);
        let q2 = rational_kahler_polynomial(2).unwrap();
        // 1/4 (1 + e13 + e24 + e13^e24), with e13^e24 = -e1234.
        let expected = Multivector::from_terms(
            sig(2, 2),
            [
                (Blade::SCALAR, rat(1, 4)),
                (b(&[1, 3]), rat(1, 4)),
                (b(&[2, 4]), rat(1, 4)),
                (b(&[1, 2, 3, 4]), rat(-1, 4)),
            ],
        )
        .unwrap();
        assert_eq!(q2, expected);
    }

    #[test]
    fn induce_rejects_other_signatures() {
        assert!(matches!(
            induce_idempotent(3, sig(3, 6)),
            Err(Error::UnsupportedSignature { .. })
        ));
        assert!(matches!(
            induce_idempotent(2, sig(3, 3)),
            Err(Error::UnsupportedSignature { .. })
        ));
    }

    #[test]
    fn recover_u1() {
        let s = sig(1, 1);
        let f = build_idempotent(s, &[b(&[1, 2])]).unwrap();
        let structure = recover_structure(s, &f).unwrap();
        assert_eq!(structure, standard_structure(1).unwrap());
    }

    #[test]
    fn recover_rejects_bad_shapes() {
        let s = sig(3, 3);
        assert!(matches!(
            recover_structure(s, &Multivector::zero(s)),
            Err(Error::NotAKahlerIdempotent(_))
        ));
        assert!(matches!(
            recover_structure(s, &Multivector::one(s)),
            Err(Error::NotAKahlerIdempotent(_))
        ));
        // (1 - e14)/2 (1 + e25)/2 (1 + e36)/2 is idempotent but carries -e14.
        let f = build_idempotent(s, &[b(&[2, 5]), b(&[3, 6])]).unwrap();
        let half = Multivector::scalar(s, rat(1, 2));
        let minus = &half - &Multivector::term(s, b(&[1, 4]), rat(1, 2));
        let g = &minus * &f;
        assert_eq!(&g * &g, g);
        assert!(matches!(
            recover_structure(s, &g),
            Err(Error::NotAKahlerIdempotent(_))
        ));
        // A relabelled U(2) idempotent in (2,2).
        let permuted = build_idempotent(sig(2, 2), &[b(&[1, 4]), b(&[2, 3])]).unwrap();
        assert!(matches!(
            recover_structure(sig(2, 2), &permuted),
            Err(Error::NotAKahlerIdempotent(_))
        ));
        assert!(matches!(
            recover_structure(sig(5, 2), &Multivector::one(sig(5, 2))),
            Err(Error::UnsupportedSignature { .. })
        ));
    }

    #[test]
    fn projection_5_2() {
        let d = recover_by_projection(sig(5, 2)).unwrap();
        assert_eq!(d.pairs, vec![(1, 6), (2, 7)]);
        assert_eq!(d.extra_generators, vec![b(&[3])]);
        assert!(d.splitting_holds);
        assert!(d.report.is_primitive);
        assert_eq!(d.report.ideal_dim, 16);
        let expected = build_idempotent(sig(5, 2), &[b(&[1, 6]), b(&[2, 7]), b(&[3])]).unwrap();
        assert_eq!(d.h, expected);
        assert_eq!(d.recovered_polynomial, kahler_polynomial(2).unwrap());
    }

    #[test]
    fn projection_rejects_family() {
        for (p, q) in [(3, 3), (3, 4), (3, 5), (0, 4), (4, 0)] {
            assert!(matches!(
                recover_by_projection(sig(p, q)),
                Err(Error::UnsupportedSignature { .. })
            ));
        }
    }

    #[test]
    fn unitary_membership() {
        let id = RationalMatrix::identity(4);
        assert!(is_unitary_member(2, &id).unwrap());
        let j = standard_structure(2).unwrap().j;
        assert!(is_unitary_member(2, &j).unwrap());
        let mut flip = RationalMatrix::identity(4);
        flip.set(3, 3, rat(-1, 1));
        assert!(!is_unitary_member(2, &flip).unwrap());
        assert!(matches!(
            is_unitary_member(2, &RationalMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
