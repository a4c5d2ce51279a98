//! The inductive local multiplicity bound `mubar(a, b)` and its tabulation.
//!
//! On the admissible domain `a >= b^2`:
//!
//! * `mubar(a, 0) = 1`, `mubar(a, 1) = a + 1`;
//! * for `a < b(b+1)`: `mubar(a, b) = 2 mubar(a - (2b-1), b-1)`;
//! * for `a >= b(b+1)`:
//!   `mubar(a, b) = mubar(a - (2b-1), b-1) + max{mubar(a - (2b-1), b-1), mubar(a - b, b)}`.
//!
//! Both recursive arguments stay admissible: `a >= b^2` gives
//! `a - (2b-1) >= (b-1)^2`, and the second branch is guarded by
//! `a >= b(b+1)`. Values are unbounded integers; they grow exponentially in
//! `sqrt(a)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::model::LocalPair;

fn memo() -> &'static RwLock<HashMap<(u32, u32), BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<(u32, u32), BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The local bound, memoized; repeated calls are cache hits.
pub fn mubar(p: LocalPair) -> Result<BigInt> {
    if !p.is_admissible() {
        return Err(Error::InadmissiblePair { a: p.a, b: p.b });
    }
    Ok(mubar_admissible(p.a, p.b))
}

fn mubar_admissible(a: u32, b: u32) -> BigInt {
    debug_assert!(a >= b * b, "recursion left the admissible domain");
    if b == 0 {
        return BigInt::from(1);
    }
    if b == 1 {
        return BigInt::from(a) + 1;
    }
    if let Some(v) = memo().read().unwrap().get(&(a, b)) {
        return v.clone();
    }
    let dec = mubar_admissible(a - (2 * b - 1), b - 1);
    let value = if a < b * (b + 1) {
        &dec * 2u32
    } else {
        let keep = mubar_admissible(a - b, b);
        &dec + dec.clone().max(keep)
    };
    memo().write().unwrap().insert((a, b), value.clone());
    value
}

/// Closed form for defect 1: `a + 1`.
pub fn closed_form_b1(a: u32) -> Result<BigInt> {
    if a < 1 {
        return Err(Error::Domain(format!("closed form for b = 1 needs a >= 1, got {a}")));
    }
    Ok(BigInt::from(a) + 1)
}

/// Closed form for defect 2: `2 + u(u-1)` for even `a = 2u`, `2 + u^2` for
/// odd `a = 2u + 1`.
pub fn closed_form_b2(a: u32) -> Result<BigInt> {
    if a < 4 {
        return Err(Error::Domain(format!("closed form for b = 2 needs a >= 4, got {a}")));
    }
    let u = BigInt::from(a / 2);
    Ok(if a.is_multiple_of(2) {
        2 + &u * (&u - 1)
    } else {
        2 + &u * &u
    })
}

/// The tabulated local bounds for `1 <= a <= a_max`, `0 <= b <= b_max`.
///
/// A cell holds a value iff the pair is admissible; `column_max` records, for
/// each column `a`, the defect attaining the column maximum (ties broken
/// toward smaller `b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTable {
    pub a_max: u32,
    pub b_max: u32,
    pub cells: BTreeMap<(u32, u32), Option<BigInt>>,
    pub column_max: BTreeMap<u32, u32>,
}

impl LocalTable {
    /// Number of cells carrying a value.
    pub fn defined_count(&self) -> usize {
        self.cells.values().filter(|v| v.is_some()).count()
    }

    pub fn value(&self, a: u32, b: u32) -> Option<&BigInt> {
        self.cells.get(&(a, b)).and_then(|v| v.as_ref())
    }
}

/// Fill the full table via `mubar`.
pub fn local_table(a_max: u32, b_max: u32) -> Result<LocalTable> {
    if a_max < 1 {
        return Err(Error::Domain(format!("table needs a_max >= 1, got {a_max}")));
    }
    let mut cells = BTreeMap::new();
    let mut column_max = BTreeMap::new();
    for a in 1..=a_max {
        let mut best: Option<(u32, BigInt)> = None;
        for b in 0..=b_max {
            let pair = LocalPair::new(a, b);
            if pair.is_admissible() {
                let v = mubar(pair)?;
                match &best {
                    Some((_, cur)) if *cur >= v => {}
                    _ => best = Some((b, v.clone())),
                }
                cells.insert((a, b), Some(v));
            } else {
                cells.insert((a, b), None);
            }
        }
        let (b_at, _) = best.expect("b = 0 row is always defined");
        column_max.insert(a, b_at);
    }
    Ok(LocalTable {
        a_max,
        b_max,
        cells,
        column_max,
    })
}
