//! The polynomial in `t = z + 1/z` satisfied by the vertices of a regular
//! n-gon, and the single-fold constructibility test for regular polygons.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

use crate::poly::RatPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("n = {0} is not supported: halved cyclotomic polynomials need odd n >= 3")]
    InvalidN(u64),
}

/// `z^k + z^-k` written as a polynomial in `t = z + z^-1`.
///
/// Uses `p₀ = 2`, `p₁ = t`, `p_{k+1} = t·p_k − p_{k−1}`.
pub fn chebyshev_term(k: usize) -> RatPoly {
    let t = RatPoly::var();
    let (mut prev, mut cur) = (RatPoly::from_ints(&[2]), t.clone());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &(&t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(zⁿ − 1)/(z − 1)` divided by `z^((n−1)/2)` and rewritten in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgonPolynomial {
    pub n: u64,
    pub poly: RatPoly,
}

pub fn halved_cyclotomic(n: u64) -> Result<NgonPolynomial, CyclotomicError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(CyclotomicError::InvalidN(n));
    }
    let half = ((n - 1) / 2) as usize;
    let poly = (1..=half).fold(RatPoly::from_ints(&[1]), |acc, k| &acc + &chebyshev_term(k));
    Ok(NgonPolynomial {
        n,
        poly: poly.monic(),
    })
}

/// `2cos(2πk/n)` for `k = 1..=n/2`, in descending order.
pub fn vertex_cosines(n: u64) -> Vec<f64> {
    (1..=n / 2)
        .map(|k| 2.0 * (2.0 * PI * k as f64 / n as f64).cos())
        .collect()
}

/// A Pierpont prime factor `p = 2^m·3^k + 1` found in `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PierpontWitness {
    pub prime: u64,
    pub exp2: u32,
    pub exp3: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibilityReport {
    pub n: u64,
    /// Exponent of 2 in `n`.
    pub r: u32,
    /// Exponent of 3 in `n`.
    pub s: u32,
    pub pierpont_primes: Vec<PierpontWitness>,
    /// Prime factors above 3 with their multiplicity, in ascending order.
    pub factors: Vec<(u64, u32)>,
    pub single_fold_constructible: bool,
}

impl ConstructibilityReport {
    /// Prime factors that break the `2^r·3^s·p₁⋯p_k` form.
    pub fn obstructions(&self) -> Vec<(u64, u32)> {
        self.factors
            .iter()
            .filter(|(p, e)| *e > 1 || pierpont_exponents(*p).is_none())
            .copied()
            .collect()
    }

    /// `2^2 * 3 * 7`-style factorization text.
    pub fn factorization(&self) -> String {
        let mut parts = Vec::new();
        let mut push = |p: u64, e: u32| match e {
            0 => {}
            1 => parts.push(p.to_string()),
            _ => parts.push(format!("{p}^{e}")),
        };
        push(2, self.r);
        push(3, self.s);
        for &(p, e) in &self.factors {
            push(p, e);
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" * ")
        }
    }
}

impl fmt::Display for ConstructibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "factorization = \"{}\"", self.factorization())?;
        writeln!(f, "r = {}", self.r)?;
        writeln!(f, "s = {}", self.s)?;
        let witnesses: Vec<String> = self
            .pierpont_primes
            .iter()
            .map(|w| {
                format!(
                    "{{ prime = {}, exp2 = {}, exp3 = {} }}",
                    w.prime, w.exp2, w.exp3
                )
            })
            .collect();
        writeln!(f, "pierpont_primes = [{}]", witnesses.join(", "))?;
        let obstructions: Vec<String> = self
            .obstructions()
            .iter()
            .map(|(p, e)| format!("{{ prime = {p}, multiplicity = {e} }}"))
            .collect();
        writeln!(f, "obstructions = [{}]", obstructions.join(", "))?;
        write!(
            f,
            "single_fold_constructible = {}",
            self.single_fold_constructible
        )
    }
}

/// `(m, k)` with `p − 1 = 2^m·3^k`, if any.
fn pierpont_exponents(p: u64) -> Option<(u32, u32)> {
    let mut rest = p.checked_sub(1)?;
    if rest == 0 {
        return None;
    }
    let m = rest.trailing_zeros();
    rest >>= m;
    let mut k = 0;
    while rest % 3 == 0 {
        rest /= 3;
        k += 1;
    }
    (rest == 1).then_some((m, k))
}

fn strip(n: &mut u64, p: u64) -> u32 {
    let mut e = 0;
    while (*n).is_multiple_of(p) {
        *n /= p;
        e += 1;
    }
    e
}

/// Single-fold constructibility of the regular `n`-gon.
///
/// Constructible iff `n = 2^r·3^s·p₁⋯p_k` with the `pᵢ` distinct primes
/// greater than 3 of the form `2^m·3^k + 1`.
pub fn classify_constructible(n: u64) -> ConstructibilityReport {
    let mut rest = n;
    let r = strip(&mut rest, 2);
    let s = strip(&mut rest, 3);
    let mut factors = Vec::new();
    let mut p = 5u64;
    while p.saturating_mul(p) <= rest {
        let e = strip(&mut rest, p);
        if e > 0 {
            factors.push((p, e));
        }
        p += 2;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    let pierpont_primes: Vec<PierpontWitness> = factors
        .iter()
        .filter_map(|&(prime, _)| {
            pierpont_exponents(prime).map(|(exp2, exp3)| PierpontWitness { prime, exp2, exp3 })
        })
        .collect();
    let single_fold_constructible = factors
        .iter()
        .all(|&(p, e)| e == 1 && pierpont_exponents(p).is_some());
    ConstructibilityReport {
        n,
        r,
        s,
        pierpont_primes,
        factors,
        single_fold_constructible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_term(0), RatPoly::from_ints(&[2]));
        assert_eq!(chebyshev_term(1), RatPoly::from_ints(&[0, 1]));
        assert_eq!(chebyshev_term(2), RatPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(chebyshev_term(5), RatPoly::from_ints(&[0, 5, 0, -5, 0, 1]));
    }

    #[test]
    fn halved_cyclotomic_examples() {
        assert_eq!(
            halved_cyclotomic(11).unwrap().poly,
            RatPoly::from_ints(&[1, 3, -3, -4, 1, 1])
        );
        assert_eq!(
            halved_cyclotomic(3).unwrap().poly,
            RatPoly::from_ints(&[1, 1])
        );
        let hept = halved_cyclotomic(7).unwrap().poly;
        assert_eq!(hept, RatPoly::from_ints(&[-1, -2, 1, 1]));
        assert!(hept.eval_f64(2.0 * (2.0 * PI / 7.0).cos()).abs() < 1e-12);
        assert_eq!(halved_cyclotomic(8), Err(CyclotomicError::InvalidN(8)));
        assert_eq!(halved_cyclotomic(1), Err(CyclotomicError::InvalidN(1)));
        assert_eq!(halved_cyclotomic(15).unwrap().poly.degree(), Some(7));
    }

    #[test]
    fn vertex_cosine_examples() {
        let c = vertex_cosines(11);
        assert_eq!(c.len(), 5);
        assert!((c[0] - 1.682_507_065_662_362).abs() < 1e-12);
        assert!(c.windows(2).all(|w| w[0] > w[1]));
        let sq = vertex_cosines(4);
        assert_eq!(sq.len(), 2);
        assert!(sq[0].abs() < 1e-15 && (sq[1] + 2.0).abs() < 1e-15);
        let p = halved_cyclotomic(11).unwrap().poly;
        assert!(c.iter().all(|&t| p.eval_f64(t).abs() < 1e-9));
    }

    #[test]
    fn classify_examples() {
        assert!(!classify_constructible(11).single_fold_constructible);
        let seven = classify_constructible(7);
        assert!(seven.single_fold_constructible);
        assert_eq!(
            seven.pierpont_primes,
            vec![PierpontWitness {
                prime: 7,
                exp2: 1,
                exp3: 1
            }]
        );
        let twelve = classify_constructible(12);
        assert!(twelve.single_fold_constructible);
        assert_eq!((twelve.r, twelve.s), (2, 1));
        assert_eq!(twelve.factorization(), "2^2 * 3");
        let bad: Vec<u64> = (3..=31)
            .filter(|&n| !classify_constructible(n).single_fold_constructible)
            .collect();
        assert_eq!(bad, vec![11, 22, 23, 25, 29, 31]);
        assert_eq!(classify_constructible(25).obstructions(), vec![(5, 2)]);
    }

    #[test]
    fn large_inputs() {
        // 163 = 2·3^4 + 1
        assert!(classify_constructible(1 << 63).single_fold_constructible);
        assert!(classify_constructible(163 * 9).single_fold_constructible);
        assert!(!classify_constructible(163 * 163).single_fold_constructible);
    }
}
