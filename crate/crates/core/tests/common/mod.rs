#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use spinorial::{Blade, Multivector, Rational, Signature};

pub fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).unwrap()
}

pub fn b(indices: &[usize]) -> Blade {
    Blade::from_indices(indices).unwrap()
}

pub fn r(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Every signature with `lo <= p + q <= hi`.
pub fn signatures(lo: usize, hi: usize) -> Vec<Signature> {
    let mut out = Vec::new();
    for n in lo.max(1)..=hi {
        for p in 0..=n {
            out.push(sig(p, n - p));
        }
    }
    out
}

/// Left-regular representation built from index lists, one generator at a time.
///
/// Basis elements are increasing index lists. `e_i` acting on `e_{j1..jk}` moves past
/// every `j < i`, then either cancels against `e_i` (picking up its square) or is
/// inserted in place.
pub struct Oracle {
    p: usize,
    n: usize,
    basis: Vec<Vec<usize>>,
    position: HashMap<Vec<usize>, usize>,
    /// Signed permutation of each generator: column `c` goes to `(sign, row)`.
    generators: Vec<Vec<(i64, usize)>>,
    cache: HashMap<Vec<usize>, Vec<(i64, usize)>>,
}

impl Oracle {
    pub fn new(p: usize, q: usize) -> Self {
        let n = p + q;
        let mut basis: Vec<Vec<usize>> = vec![vec![]];
        for i in 1..=n {
            let extended: Vec<Vec<usize>> = basis
                .iter()
                .map(|s| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
                .collect();
            basis.extend(extended);
        }
        let position: HashMap<Vec<usize>, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut oracle = Oracle {
            p,
            n,
            basis,
            position,
            generators: Vec::new(),
            cache: HashMap::new(),
        };
        oracle.generators = (1..=n).map(|i| oracle.generator_action(i)).collect();
        oracle
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn generator_action(&self, i: usize) -> Vec<(i64, usize)> {
        let square = if i <= self.p { 1 } else { -1 };
        self.basis
            .iter()
            .map(|list| {
                let before = list.iter().filter(|&&j| j < i).count();
                let mut sign = if before % 2 == 0 { 1 } else { -1 };
                let mut out = list.clone();
                if let Some(at) = list.iter().position(|&j| j == i) {
                    out.remove(at);
                    sign *= square;
                } else {
                    out.insert(before, i);
                }
                (sign, self.position[&out])
            })
            .collect()
    }

    /// Action of the monomial `e_{i1} e_{i2} ... e_{ik}`.
    pub fn monomial(&mut self, indices: &[usize]) -> Vec<(i64, usize)> {
        if let Some(m) = self.cache.get(indices) {
            return m.clone();
        }
        let mut action: Vec<(i64, usize)> = (0..self.dim()).map(|c| (1, c)).collect();
        for &i in indices.iter().rev() {
            let g = &self.generators[i - 1];
            action = action
                .iter()
                .map(|&(s, row)| (s * g[row].0, g[row].1))
                .collect();
        }
        self.cache.insert(indices.to_vec(), action.clone());
        action
    }

    pub fn coordinates(&self, x: &Multivector) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (blade, c) in x.terms() {
            v[self.position[&blade.indices()]] = c.clone();
        }
        v
    }

    pub fn to_multivector(&self, sig: Signature, v: &[Rational]) -> Multivector {
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Blade::from_indices(&self.basis[i]).unwrap(), c.clone()));
        Multivector::from_terms(sig, terms).unwrap()
    }

    /// `x y` computed as `sum_b x_b L(b) y`.
    pub fn product(&mut self, x: &Multivector, y: &Multivector) -> Multivector {
        let yv = self.coordinates(y);
        let mut out = vec![Rational::zero(); self.dim()];
        for (blade, c) in x.terms() {
            let action = self.monomial(&blade.indices());
            for (col, value) in yv.iter().enumerate() {
                if value.is_zero() {
                    continue;
                }
                let (s, row) = action[col];
                let term = c * value;
                if s > 0 {
                    out[row] += term;
                } else {
                    out[row] -= term;
                }
            }
        }
        self.to_multivector(x.signature(), &out)
    }

    /// Dense `L(x)`.
    pub fn matrix(&mut self, x: &Multivector) -> Vec<Vec<Rational>> {
        let d = self.dim();
        let mut m = vec![vec![Rational::zero(); d]; d];
        for (blade, c) in x.terms() {
            let action = self.monomial(&blade.indices());
            for (col, &(s, row)) in action.iter().enumerate() {
                if s > 0 {
                    m[row][col] += c;
                } else {
                    m[row][col] -= c;
                }
            }
        }
        m
    }
}

pub fn dense_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn dense_identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Sparse random multivector with small rational coefficients.
pub fn random_multivector(rng: &mut ChaCha8Rng, s: Signature, max_terms: usize) -> Multivector {
    let blades = s.blades();
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<(Blade, Rational)> = (0..count)
        .map(|_| {
            let blade = blades[rng.gen_range(0..blades.len())];
            (blade, r(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
        })
        .collect();
    let mut x = Multivector::zero(s);
    for (blade, c) in terms {
        x = &x + &Multivector::term(s, blade, c);
    }
    x
}

/// Radon-Hurwitz numbers from the defining table, written out independently.
pub fn rh_reference(i: i64) -> i64 {
    const BASE: [i64; 8] = [0, 1, 2, 2, 3, 3, 3, 3];
    if i >= 0 {
        BASE[(i % 8) as usize] + 4 * (i / 8)
    } else if i == -1 {
        -1
    } else {
        let j = -i;
        1 - j + rh_reference(j - 2)
    }
}

/// Expected (base symbol, size exponent, summands) from `q - p mod 8`.
pub fn case_table(p: usize, q: usize) -> (&'static str, u32, usize) {
    let n = (p + q) as u32;
    match (q as i64 - p as i64).rem_euclid(8) {
        0 | 6 => ("R", n / 2, 1),
        1 | 5 => ("C", (n - 1) / 2, 1),
        2 | 4 => ("H", (n - 2) / 2, 1),
        3 => ("H", (n - 3) / 2, 2),
        _ => ("R", (n - 1) / 2, 2),
    }
}

pub fn division_dim(symbol: &str) -> usize {
    match symbol {
        "R" => 1,
        "C" => 2,
        _ => 4,
    }
}

/// Sign of the permutation sorting `v`.
pub fn sort_sign(v: &[usize]) -> i64 {
    let mut inversions = 0;
    for a in 0..v.len() {
        for c in a + 1..v.len() {
            if v[a] > v[c] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Kahler polynomial of `R^{2n}` written down term by term: one term per subset `S` of
/// `{1..n}`, coefficient +1 in the paired order `e^{j1} e^{j1+n} e^{j2} e^{j2+n} ...`.
pub fn kahler_reference(n: usize) -> Multivector {
    let s = sig(n, n);
    let mut terms = Vec::new();
    for mask in 0u32..1 << n {
        let paired: Vec<usize> = (1..=n)
            .filter(|j| mask & 1 << (j - 1) != 0)
            .flat_map(|j| [j, j + n])
            .collect();
        let mut sorted = paired.clone();
        sorted.sort_unstable();
        terms.push((b(&sorted), r(sort_sign(&paired), 1)));
    }
    Multivector::from_terms(s, terms).unwrap()
}

/// `prod_j (1 + e_j e_{n+j}) / 2` in `target`, multiplied out with the oracle.
pub fn pair_product_reference(n: usize, target: Signature) -> Multivector {
    let mut oracle = Oracle::new(target.p(), target.q());
    let mut f = Multivector::one(target);
    for j in 1..=n {
        let factor = Multivector::from_terms(
            target,
            [(Blade::SCALAR, r(1, 2)), (b(&[j, n + j]), r(1, 2))],
        )
        .unwrap();
        f = oracle.product(&f, &factor);
    }
    f
}
