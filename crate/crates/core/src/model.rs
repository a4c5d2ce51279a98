//! Shared domain types: admissible pairs, family parameters, and bound
//! certificates.

use std::fmt;

pub use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::{self, ExactRational};

/// A pair `(a, b)`: codimension budget `a` and rank defect `b`.
///
/// The admissible domain is `U = {(a, b) | a >= b^2}`; outside it the local
/// bound is undefined (the `*` cells of the tabulated values).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalPair {
    pub a: u32,
    pub b: u32,
}

impl LocalPair {
    pub fn new(a: u32, b: u32) -> Self {
        LocalPair { a, b }
    }

    /// Membership in `U`.
    pub fn is_admissible(self) -> bool {
        self.a >= self.b * self.b
    }

    /// Constructor that rejects pairs outside `U`.
    pub fn admissible(a: u32, b: u32) -> Result<Self> {
        let p = LocalPair { a, b };
        if p.is_admissible() {
            Ok(p)
        } else {
            Err(Error::InadmissiblePair { a, b })
        }
    }
}

impl fmt::Display for LocalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `true` iff `(a, b)` lies in `U`.
pub fn is_admissible(p: LocalPair) -> bool {
    p.is_admissible()
}

/// Parameters of a complete intersection of `k1` quadrics and `k2` cubics.
///
/// Derived quantities: codimension `k = k1 + k2`, dimension `M = k1 + 2 k2`,
/// degree `d = 2^k1 * 3^k2`. Construction enforces the standing hypothesis
/// `M >= 4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    k1: u32,
    k2: u32,
}

impl FamilyParams {
    pub fn new(k1: u32, k2: u32) -> Result<Self> {
        if k1 + 2 * k2 < 4 {
            return Err(Error::Domain(format!(
                "family (k1 = {k1}, k2 = {k2}) has dimension M = {} < 4",
                k1 + 2 * k2
            )));
        }
        Ok(FamilyParams { k1, k2 })
    }

    pub fn k1(&self) -> u32 {
        self.k1
    }

    pub fn k2(&self) -> u32 {
        self.k2
    }

    /// Codimension `k = k1 + k2`.
    pub fn k(&self) -> u32 {
        self.k1 + self.k2
    }

    /// Dimension `M = k1 + 2 k2`.
    pub fn m(&self) -> u32 {
        self.k1 + 2 * self.k2
    }

    /// Degree `d = 2^k1 * 3^k2`, exact.
    pub fn degree(&self) -> BigInt {
        rational::big_pow(2, self.k1) * rational::big_pow(3, self.k2)
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{}*3^{}", self.k1, self.k2)
    }
}

/// Comparison relation of a certificate.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Less,
    LessEq,
    Equal,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::LessEq => "<=",
            Relation::Equal => "=",
        }
    }
}

/// One side of a certified inequality.
#[derive(Clone, Debug, PartialEq)]
pub enum CertValue {
    Int(BigInt),
    Rat(ExactRational),
    Float(f64),
}

impl CertValue {
    /// Exact rational view; `None` for floats.
    fn as_rational(&self) -> Option<ExactRational> {
        match self {
            CertValue::Int(n) => Some(rational::rat_int(n.clone())),
            CertValue::Rat(q) => Some(q.clone()),
            CertValue::Float(_) => None,
        }
    }

    pub fn is_float(&self) -> bool {
        matches!(self, CertValue::Float(_))
    }
}

impl fmt::Display for CertValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertValue::Int(n) => write!(f, "{n}"),
            CertValue::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            CertValue::Float(x) => write!(f, "{x}"),
        }
    }
}

impl From<BigInt> for CertValue {
    fn from(n: BigInt) -> Self {
        CertValue::Int(n)
    }
}

impl From<u32> for CertValue {
    fn from(n: u32) -> Self {
        CertValue::Int(BigInt::from(n))
    }
}

impl From<ExactRational> for CertValue {
    fn from(q: ExactRational) -> Self {
        CertValue::Rat(q)
    }
}

impl From<f64> for CertValue {
    fn from(x: f64) -> Self {
        CertValue::Float(x)
    }
}

/// Machine-readable record of one verified inequality.
///
/// For exact operands `holds` is true iff `lhs relation rhs` under exact
/// arithmetic. When a float operand is involved, the comparison and its
/// tolerance are recorded in `context`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCertificate {
    pub claim_id: String,
    pub lhs: CertValue,
    pub rhs: CertValue,
    pub relation: Relation,
    pub holds: bool,
    pub context: Vec<(String, String)>,
}

impl BoundCertificate {
    /// Certificate over exact operands; `holds` is evaluated here.
    pub fn exact(
        claim_id: impl Into<String>,
        lhs: impl Into<CertValue>,
        relation: Relation,
        rhs: impl Into<CertValue>,
        context: Vec<(String, String)>,
    ) -> Self {
        let lhs = lhs.into();
        let rhs = rhs.into();
        let (l, r) = (
            lhs.as_rational().expect("exact certificate with float lhs"),
            rhs.as_rational().expect("exact certificate with float rhs"),
        );
        let holds = match relation {
            Relation::Less => l < r,
            Relation::LessEq => l <= r,
            Relation::Equal => l == r,
        };
        BoundCertificate {
            claim_id: claim_id.into(),
            lhs,
            rhs,
            relation,
            holds,
            context,
        }
    }

    /// Certificate comparing an exact left side against a float right side
    /// with relative slack `rel_tol` applied on the float side.
    pub fn exact_vs_float(
        claim_id: impl Into<String>,
        lhs: impl Into<CertValue>,
        relation: Relation,
        rhs: f64,
        rel_tol: f64,
        mut context: Vec<(String, String)>,
    ) -> Self {
        let lhs = lhs.into();
        let lf = match &lhs {
            CertValue::Int(n) => rational::to_f64(&rational::rat_int(n.clone())),
            CertValue::Rat(q) => rational::to_f64(q),
            CertValue::Float(x) => *x,
        };
        let slack = rhs.abs() * rel_tol;
        let holds = match relation {
            Relation::Less => lf < rhs + slack,
            Relation::LessEq => lf <= rhs + slack,
            Relation::Equal => (lf - rhs).abs() <= slack,
        };
        context.push(("rel_tol".to_string(), format!("{rel_tol:e}")));
        BoundCertificate {
            claim_id: claim_id.into(),
            lhs,
            rhs: CertValue::Float(rhs),
            relation,
            holds,
            context,
        }
    }

    /// Strict float-to-float certificate (used by the analytic ladder scans).
    pub fn float_strict(
        claim_id: impl Into<String>,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        context: Vec<(String, String)>,
    ) -> Self {
        let holds = match relation {
            Relation::Less => lhs < rhs,
            Relation::LessEq => lhs <= rhs,
            Relation::Equal => lhs == rhs,
        };
        BoundCertificate {
            claim_id: claim_id.into(),
            lhs: CertValue::Float(lhs),
            rhs: CertValue::Float(rhs),
            relation,
            holds,
            context,
        }
    }

    /// A recorded assumption: a claim taken as given rather than computed.
    /// Encoded as the trivially true comparison `1 = 1` so the certificate
    /// invariant stays intact; the substance lives in `context`.
    pub fn assumption(claim_id: impl Into<String>, note: impl Into<String>) -> Self {
        BoundCertificate {
            claim_id: claim_id.into(),
            lhs: CertValue::Int(BigInt::from(1)),
            rhs: CertValue::Int(BigInt::from(1)),
            relation: Relation::Equal,
            holds: true,
            context: vec![("assumed".to_string(), note.into())],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn admissibility_matches_definition() {
        assert!(LocalPair::new(4, 2).is_admissible());
        assert!(!LocalPair::new(3, 2).is_admissible());
        assert!(LocalPair::new(0, 0).is_admissible());
        assert_eq!(
            LocalPair::admissible(3, 2),
            Err(Error::InadmissiblePair { a: 3, b: 2 })
        );
    }

    #[test]
    fn family_params_derivations() {
        let f = FamilyParams::new(5, 3).unwrap();
        assert_eq!(f.k(), 8);
        assert_eq!(f.m(), 11);
        assert_eq!(f.degree(), BigInt::from(864));

        let g = FamilyParams::new(0, 2).unwrap();
        assert_eq!(g.m(), 4);
        assert_eq!(g.degree(), BigInt::from(9));
    }

    #[test]
    fn family_params_rejects_small_dimension() {
        assert!(FamilyParams::new(1, 1).is_err());
        assert!(FamilyParams::new(3, 0).is_err());
        assert!(FamilyParams::new(4, 0).is_ok());
    }

    #[test]
    fn exact_certificates_evaluate_exactly() {
        let c = BoundCertificate::exact("t", BigInt::from(1), Relation::LessEq, rat(9, 4), vec![]);
        assert!(c.holds);
        let c = BoundCertificate::exact("t", rat(9, 4), Relation::Less, rat(9, 4), vec![]);
        assert!(!c.holds);
        let c = BoundCertificate::exact("t", rat(8, 9), Relation::Equal, rat(8, 9), vec![]);
        assert!(c.holds);
    }

    #[test]
    fn cert_value_display() {
        assert_eq!(CertValue::Int(BigInt::from(966)).to_string(), "966");
        assert_eq!(CertValue::Rat(rat(9, 4)).to_string(), "9/4");
        assert_eq!(CertValue::Rat(rat(8, 4)).to_string(), "2");
    }
}
