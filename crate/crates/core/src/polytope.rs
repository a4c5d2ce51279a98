//! Exact lattice-point counts in the position simplex and the rational
//! volume of its enlargement.
//!
//! For an admissible pair `(a, b)` the simplex is
//! `Delta = {x >= 0 : b x_1 + (b-1) x_2 + ... + x_b <= a - b^2}`; the
//! enlargement replaces the budget by `a - b(b-1)/2` and its volume is
//! `(a - b(b-1)/2)^b / (b!)^2`. Counting is by direct exhaustive recursion;
//! budgets at this scale are tiny and the counting is trivially auditable.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::model::{BoundCertificate, Relation};
use crate::rational::{self, ExactRational};

/// A simplex `{x >= 0 : b x_1 + (b-1) x_2 + ... + x_b <= budget}` with
/// coefficient vector `(b, b-1, ..., 1)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SimplexSpec {
    pub b: u32,
    pub budget: i64,
}

impl SimplexSpec {
    /// The integer simplex attached to an admissible pair, budget `a - b^2`.
    pub fn delta(a: u32, b: u32) -> Result<SimplexSpec> {
        if b < 1 || a < b * b {
            return Err(Error::InadmissiblePair { a, b });
        }
        Ok(SimplexSpec {
            b,
            budget: (a - b * b) as i64,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.budget < 0
    }

    /// Exact number of lattice points, by exhaustive recursion over
    /// coordinates.
    pub fn count(&self) -> BigInt {
        if self.is_empty() {
            return BigInt::from(0);
        }
        BigInt::from(count_rec(self.b, self.budget as u64))
    }
}

fn count_rec(coeff: u32, budget: u64) -> u128 {
    if coeff == 1 {
        // unit coefficient: x may take any value 0..=budget
        return budget as u128 + 1;
    }
    let mut total = 0u128;
    let mut rem = budget;
    loop {
        total += count_rec(coeff - 1, rem);
        match rem.checked_sub(coeff as u64) {
            Some(r) => rem = r,
            None => break,
        }
    }
    total
}

/// `#(Delta ∩ Z^b)` for the admissible pair `(a, b)`.
pub fn lattice_count(a: u32, b: u32) -> Result<BigInt> {
    Ok(SimplexSpec::delta(a, b)?.count())
}

/// Exact volume of the enlarged simplex: `(a - b(b-1)/2)^b / (b!)^2`.
pub fn volume_plus(a: u32, b: u32) -> Result<ExactRational> {
    if b < 1 {
        return Err(Error::Domain(format!("volume needs b >= 1, got b = {b}")));
    }
    let shift = b * (b - 1) / 2;
    if a < shift {
        return Err(Error::Domain(format!(
            "volume needs a >= b(b-1)/2 = {shift}, got a = {a}"
        )));
    }
    let t = BigInt::from(a - shift).pow(b);
    let f = rational::factorial(b);
    Ok(rational::rat(t, &f * &f))
}

/// Certificate for `#(Delta ∩ Z^b) <= vol(Delta^+)`, compared exactly.
pub fn verify_lemma_4_3(a: u32, b: u32) -> Result<BoundCertificate> {
    let count = lattice_count(a, b)?;
    let vol = volume_plus(a, b)?;
    Ok(BoundCertificate::exact(
        format!("lemma-4.3({a},{b})"),
        count,
        Relation::LessEq,
        vol,
        vec![
            ("a".to_string(), a.to_string()),
            ("b".to_string(), b.to_string()),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// Independent oracle: nested loops, no shared code with `count_rec`.
    fn brute_count(a: u32, b: u32) -> u64 {
        let t = (a - b * b) as u64;
        match b {
            1 => (0..=t).count() as u64,
            2 => {
                let mut n = 0;
                for x1 in 0..=t / 2 {
                    for x2 in 0..=t {
                        if 2 * x1 + x2 <= t {
                            n += 1;
                        }
                    }
                }
                n
            }
            3 => {
                let mut n = 0;
                for x1 in 0..=t / 3 {
                    for x2 in 0..=t / 2 {
                        for x3 in 0..=t {
                            if 3 * x1 + 2 * x2 + x3 <= t {
                                n += 1;
                            }
                        }
                    }
                }
                n
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn counts_match_spec_examples() {
        assert_eq!(lattice_count(4, 2).unwrap(), BigInt::from(1));
        assert_eq!(lattice_count(16, 2).unwrap(), BigInt::from(49));
        assert_eq!(lattice_count(36, 6).unwrap(), BigInt::from(1));
    }

    #[test]
    fn counts_match_independent_brute_force() {
        for b in 1..=3u32 {
            for a in (b * b)..=40 {
                assert_eq!(
                    lattice_count(a, b).unwrap(),
                    BigInt::from(brute_count(a, b)),
                    "(a, b) = ({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn volumes() {
        assert_eq!(volume_plus(4, 2).unwrap(), rat(9, 4));
        assert_eq!(
            volume_plus(36, 6).unwrap(),
            rat(BigInt::from(21).pow(6), BigInt::from(518400))
        );
        assert_eq!(volume_plus(1, 1).unwrap(), rat(1, 1));
    }

    #[test]
    fn volume_domain_errors() {
        assert!(volume_plus(5, 0).is_err());
        assert!(volume_plus(2, 3).is_err()); // needs a >= 3
    }

    #[test]
    fn lemma_4_3_certificates() {
        let c = verify_lemma_4_3(4, 2).unwrap();
        assert!(c.holds); // 1 <= 9/4
        let c = verify_lemma_4_3(16, 2).unwrap();
        assert!(c.holds); // 49 <= 225/4
        for b in 1..=5 {
            let c = verify_lemma_4_3(b * b, b).unwrap();
            assert!(c.holds, "budget-zero cell b = {b}");
        }
        assert!(verify_lemma_4_3(3, 2).is_err());
    }

    #[test]
    fn count_is_monotone_in_a() {
        for b in 1..=4u32 {
            let mut prev = BigInt::from(-1);
            for a in (b * b)..=60 {
                let c = lattice_count(a, b).unwrap();
                assert!(c >= prev, "(a, b) = ({a}, {b})");
                prev = c;
            }
        }
    }
}
