//! The certificate bundle behind `verify-paper`: every tabulated value and
//! every verification operation of the other modules, run on fixed or
//! scalable grids and folded into per-criterion reports.

use num_bigint::BigInt;

use crate::analytic;
use crate::checker::{self, VerdictStatus};
use crate::error::Result;
use crate::global;
use crate::golden::{self, GlobalGolden, LocalGolden};
use crate::local::{self, mubar};
use crate::model::{BoundCertificate, FamilyParams, LocalPair, Relation};
use crate::polytope;
use crate::words::{self, WordState};

/// Grid caps for the scalable sweeps. The fixed tables (local `a <= 36`,
/// global `a <= 36`, family sweeps) do not scale.
#[derive(Copy, Clone, Debug)]
pub struct GridLimits {
    /// Closed-form agreement sweep (default 200).
    pub closed_form_a_max: u32,
    /// Word-tree / DP equivalence and encoding sweeps (default 60).
    pub words_a_max: u32,
    /// Lattice-count versus volume sweep (default 120, b <= 8).
    pub lattice_a_max: u32,
    pub lattice_b_max: u32,
    /// Analytic ladder scans (default 500).
    pub analytic_a_max: u32,
}

impl GridLimits {
    pub fn scaled(scale: f64) -> Self {
        let s = if scale.is_finite() && scale > 0.0 { scale } else { 1.0 };
        let cap = |base: u32, min: u32| ((base as f64 * s).round() as u32).max(min);
        GridLimits {
            closed_form_a_max: cap(200, 4),
            words_a_max: cap(60, 4),
            lattice_a_max: cap(120, 4),
            lattice_b_max: 8,
            analytic_a_max: cap(500, 20),
        }
    }
}

impl Default for GridLimits {
    fn default() -> Self {
        GridLimits::scaled(1.0)
    }
}

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub index: u32,
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub certificates: Vec<BoundCertificate>,
}

impl CriterionReport {
    fn from_certs(index: u32, name: &str, detail: String, certificates: Vec<BoundCertificate>) -> Self {
        let failing: Vec<&BoundCertificate> =
            certificates.iter().filter(|c| !c.holds).collect();
        let passed = failing.is_empty();
        let summary = if passed {
            format!("{detail} ({} certificates)", certificates.len())
        } else {
            let names: Vec<String> = failing
                .iter()
                .take(4)
                .map(|c| format!("{} [{} {} {}]", c.claim_id, c.lhs, c.relation.symbol(), c.rhs))
                .collect();
            format!(
                "{} of {} certificates fail: {}{}",
                failing.len(),
                certificates.len(),
                names.join("; "),
                if failing.len() > 4 { "; ..." } else { "" }
            )
        };
        CriterionReport {
            index,
            name: name.to_string(),
            passed,
            summary,
            certificates,
        }
    }
}

/// The full bundle.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub grid_scale: f64,
    pub criteria: Vec<CriterionReport>,
}

impl VerifyReport {
    pub fn all_hold(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    /// `0` when every certificate holds, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_hold() {
            0
        } else {
            1
        }
    }

    pub fn total_certificates(&self) -> usize {
        self.criteria.iter().map(|c| c.certificates.len()).sum()
    }

    pub fn failing_certificates(&self) -> Vec<&BoundCertificate> {
        self.criteria
            .iter()
            .flat_map(|c| c.certificates.iter().filter(|c| !c.holds))
            .collect()
    }
}

fn indicator(claim: impl Into<String>, mismatches: usize, context: Vec<(String, String)>) -> BoundCertificate {
    BoundCertificate::exact(
        claim,
        BigInt::from(mismatches),
        Relation::Equal,
        BigInt::from(0u32),
        context,
    )
}

/// Criterion 1 detail: one certificate per golden cell (value match for
/// defined cells, domain exclusion for `*` cells) plus one per column
/// maximum.
pub fn local_table_certificates(golden: &LocalGolden) -> Result<Vec<BoundCertificate>> {
    let a_max = golden.cells.iter().map(|c| c.a).max().unwrap_or(1);
    let b_max = golden.cells.iter().map(|c| c.b).max().unwrap_or(0);
    let table = local::local_table(a_max, b_max)?;
    let mut certs = Vec::with_capacity(golden.cells.len() + a_max as usize);
    for cell in &golden.cells {
        match &cell.value {
            Some(v) => {
                let computed = mubar(LocalPair::new(cell.a, cell.b))?;
                certs.push(BoundCertificate::exact(
                    format!("local-table:cell({},{})", cell.a, cell.b),
                    computed,
                    Relation::Equal,
                    v.clone(),
                    vec![],
                ));
            }
            None => {
                // a `*` cell must lie outside the admissible domain
                certs.push(BoundCertificate::exact(
                    format!("local-table:star({},{})", cell.a, cell.b),
                    BigInt::from(cell.a),
                    Relation::Less,
                    BigInt::from(cell.b) * cell.b,
                    vec![("statement".to_string(), "a < b^2".to_string())],
                ));
            }
        }
    }
    for a in 1..=a_max {
        if let Some(bold_b) = golden.bold_b(a) {
            certs.push(BoundCertificate::exact(
                format!("local-table:column-max({a})"),
                BigInt::from(table.column_max[&a]),
                Relation::Equal,
                BigInt::from(bold_b),
                vec![("tie_break".to_string(), "smaller b".to_string())],
            ));
        }
    }
    Ok(certs)
}

fn criterion_1(golden: &LocalGolden) -> Result<CriterionReport> {
    let certs = local_table_certificates(golden)?;
    let bold_count = golden.cells.iter().filter(|c| c.bold).count();
    Ok(CriterionReport::from_certs(
        1,
        "local table exact match",
        format!(
            "{} defined cells, {} excluded cells and {} column maxima match",
            golden.defined_count(),
            golden.cells.len() - golden.defined_count(),
            bold_count
        ),
        certs,
    ))
}

fn criterion_2(limits: &GridLimits) -> Result<CriterionReport> {
    let mut b1_bad = 0usize;
    let mut b2_bad = 0usize;
    for a in 1..=limits.closed_form_a_max {
        if mubar(LocalPair::new(a, 1))? != local::closed_form_b1(a)? {
            b1_bad += 1;
        }
        if a >= 4 && mubar(LocalPair::new(a, 2))? != local::closed_form_b2(a)? {
            b2_bad += 1;
        }
    }
    let range = limits.closed_form_a_max.to_string();
    let certs = vec![
        indicator(
            "closed-form:b1",
            b1_bad,
            vec![("a_range".to_string(), format!("1..={range}"))],
        ),
        indicator(
            "closed-form:b2",
            b2_bad,
            vec![("a_range".to_string(), format!("4..={range}"))],
        ),
    ];
    Ok(CriterionReport::from_certs(
        2,
        "closed-form equivalence",
        format!("recursion agrees with both closed forms for a <= {range}"),
        certs,
    ))
}

fn criterion_3(limits: &GridLimits) -> Result<CriterionReport> {
    let mut certs = Vec::new();
    let mut prefix_bad = 0usize;
    let mut encoding_bad = 0usize;
    let mut lattice_bad = 0usize;
    let mut pairs = 0usize;
    for a in 0..=limits.words_a_max {
        for b in 0..=(analytic::isqrt(a as u64) as u32) {
            let root = WordState::new(a, b);
            pairs += 1;
            let ws = words::worst_case_words(root)?;
            certs.push(BoundCertificate::exact(
                format!("word-count({a},{b})"),
                BigInt::from(ws.len()),
                Relation::Equal,
                mubar(root)?,
                vec![],
            ));
            if b == 0 {
                continue; // the singleton empty word; no positions to encode
            }
            if !words::check_prefix_free(&ws) {
                prefix_bad += 1;
            }
            if !words::encodings_injective_and_in_simplex(&ws, root)? {
                encoding_bad += 1;
            }
            let cap = crate::rational::big_pow(2, b) * polytope::lattice_count(a, b)?;
            if BigInt::from(ws.len()) > cap {
                lattice_bad += 1;
            }
        }
    }
    let grid = format!("admissible pairs with a <= {}", limits.words_a_max);
    certs.push(indicator(
        "word-nu-prefix-free",
        prefix_bad,
        vec![("grid".to_string(), grid.clone())],
    ));
    certs.push(indicator(
        "word-encoding-injective-in-simplex",
        encoding_bad,
        vec![("grid".to_string(), grid.clone())],
    ));
    certs.push(indicator(
        "word-count-below-2^b-lattice",
        lattice_bad,
        vec![("grid".to_string(), grid.clone())],
    ));
    Ok(CriterionReport::from_certs(
        3,
        "word/DP equivalence and encoding chain",
        format!("{pairs} pairs: tree leaf counts equal the recursion; projections prefix-free; encodings injective inside the simplex"),
        certs,
    ))
}

fn criterion_4(limits: &GridLimits) -> Result<CriterionReport> {
    let mut certs = Vec::new();
    for a in 1..=limits.lattice_a_max {
        for b in 1..=limits.lattice_b_max {
            if a >= b * b {
                certs.push(polytope::verify_lemma_4_3(a, b)?);
            }
        }
    }
    Ok(CriterionReport::from_certs(
        4,
        "lattice count below enlarged volume",
        format!(
            "exact-rational comparison on admissible pairs with a <= {}, b <= {}",
            limits.lattice_a_max, limits.lattice_b_max
        ),
        certs,
    ))
}

fn criterion_5(limits: &GridLimits) -> Result<CriterionReport> {
    let mut certs = Vec::new();
    // Stirling-form bound below the u majorant on the lattice grid
    for a in 1..=limits.lattice_a_max {
        for b in 1..=limits.lattice_b_max {
            if a >= b * b {
                certs.push(analytic::verify_u_dominates_stirling(a, b)?);
            }
        }
    }
    // ladder monotonicity under its hypothesis
    certs.extend(analytic::lemma_4_4_scan(limits.analytic_a_max)?);
    // budget inequality at the ladder argmax
    for a in 17..=limits.analytic_a_max {
        certs.push(analytic::b_max_bound(a)?);
    }
    // the recursion stays below the per-defect closed-form bound
    for a in 1..=36u32 {
        for b in 1..=(analytic::isqrt(a as u64) as u32) {
            let m = mubar(LocalPair::new(a, b))?;
            certs.push(BoundCertificate::exact_vs_float(
                format!("recursion-below-u({a},{b})"),
                m,
                Relation::LessEq,
                analytic::u_bound(a, b)?,
                1e-9,
                vec![],
            ));
        }
    }
    Ok(CriterionReport::from_certs(
        5,
        "analytic chain",
        format!(
            "stirling <= u on the lattice grid; ladder scan and argmax budget up to a = {}; recursion below the per-defect bound for a <= 36",
            limits.analytic_a_max
        ),
        certs,
    ))
}

/// Criterion 6 detail: recomputed global rows against the golden table.
/// Row 4 is a known discrepancy: the certificates pin the recomputed value
/// 8, the tabulated value 6, and the presence of the annotation.
pub fn global_table_certificates(golden: &GlobalGolden) -> Result<Vec<BoundCertificate>> {
    let mut certs = Vec::new();
    for row in &golden.rows {
        let computed = global::mubar_total(row.a)?;
        if row.a == 4 {
            certs.push(BoundCertificate::exact(
                "global-table:row(4):recomputed-is-8",
                computed.value.clone(),
                Relation::Equal,
                BigInt::from(8),
                vec![(
                    "note".to_string(),
                    "tabulated annotation r=4, (1,1,0,0) violates its own budget; the definition admits (1,1) scoring 8".to_string(),
                )],
            ));
            certs.push(BoundCertificate::exact(
                "global-table:row(4):tabulated-is-6",
                row.value.clone(),
                Relation::Equal,
                BigInt::from(6),
                vec![],
            ));
            let table = global::global_table(4)?;
            let annotated = table
                .iter()
                .find(|r| r.row.a == 4)
                .map(|r| r.discrepancy.is_some())
                .unwrap_or(false);
            certs.push(indicator(
                "global-table:row(4):discrepancy-annotated",
                usize::from(!annotated),
                vec![],
            ));
            continue;
        }
        certs.push(BoundCertificate::exact(
            format!("global-table:row({})", row.a),
            computed.value.clone(),
            Relation::Equal,
            row.value.clone(),
            vec![],
        ));
        let printed_profile = global::Profile::new(row.maximizer.clone())
            .expect("golden annotations are non-increasing");
        let present = computed.maximizers.contains(&printed_profile);
        certs.push(indicator(
            format!("global-table:maximizer({})", row.a),
            usize::from(!present),
            vec![
                ("tabulated".to_string(), printed_profile.to_string()),
                (
                    "computed".to_string(),
                    computed
                        .maximizers
                        .iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(" | "),
                ),
            ],
        ));
    }
    Ok(certs)
}

fn criterion_6(golden: &GlobalGolden) -> Result<CriterionReport> {
    let certs = global_table_certificates(golden)?;
    Ok(CriterionReport::from_certs(
        6,
        "global table match",
        format!(
            "{} rows recomputed against the golden table; row 4 carries its known discrepancy annotation",
            golden.rows.len()
        ),
        certs,
    ))
}

fn criterion_7() -> Result<CriterionReport> {
    let mut certs = Vec::new();
    for a in 12..=36 {
        certs.push(checker::prop55_check(a)?);
    }
    certs.extend(checker::prop56_check());
    Ok(CriterionReport::from_certs(
        7,
        "global majorant and sporadic thresholds",
        "3*2^(a-6) majorant for 12 <= a <= 36 and the five sporadic triples".to_string(),
        certs,
    ))
}

fn criterion_8() -> Result<CriterionReport> {
    let sporadic = [(5u32, 3u32), (3, 4), (1, 5), (2, 4), (0, 5)];
    let mut certs = Vec::new();
    for m in [10u32, 11] {
        for k2 in 2..=(m / 2) {
            let k1 = m - 2 * k2;
            let f = FamilyParams::new(k1, k2)?;
            let verdict = checker::theorem1_check(&f, 40)?;
            let expected = sporadic.contains(&(k1, k2));
            certs.push(indicator(
                format!("theorem-1:boundary({k1},{k2})"),
                usize::from(verdict.status.is_established() != expected),
                vec![
                    ("M".to_string(), m.to_string()),
                    ("status".to_string(), verdict.status.to_string()),
                    ("expected_established".to_string(), expected.to_string()),
                ],
            ));
        }
    }
    for m in 12..=36u32 {
        for k2 in 2..=(m / 2) {
            let k1 = m - 2 * k2;
            let f = FamilyParams::new(k1, k2)?;
            let verdict = checker::theorem1_check(&f, 40)?;
            certs.push(indicator(
                format!("theorem-1:established({k1},{k2})"),
                usize::from(!verdict.status.is_established()),
                vec![
                    ("M".to_string(), m.to_string()),
                    ("status".to_string(), verdict.status.to_string()),
                ],
            ));
        }
    }
    for k2 in 0..=1u32 {
        for m in 10..=36u32 {
            let k1 = m - 2 * k2;
            let f = FamilyParams::new(k1, k2)?;
            let verdict = checker::theorem1_check(&f, 40)?;
            certs.push(indicator(
                format!("theorem-1:structural({k1},{k2})"),
                usize::from(verdict.status != VerdictStatus::NotCoveredStructural),
                vec![("status".to_string(), verdict.status.to_string())],
            ));
        }
    }
    Ok(CriterionReport::from_certs(
        8,
        "family verdict reconstruction",
        "boundary dimensions 10-11 match the five sporadic families; 12 <= M <= 36 all established; k2 <= 1 structural".to_string(),
        certs,
    ))
}

fn criterion_9() -> Result<CriterionReport> {
    let mut certs = Vec::new();
    let mut missing_flag = 0usize;
    let mut total = 0usize;
    for k1 in 0..=30u32 {
        for k2 in 2..=30u32 {
            let f = FamilyParams::new(k1, k2)?;
            let ledger = checker::hypertangent_ledger(&f)?;
            total += 1;
            if ledger.notes.is_empty() {
                missing_flag += 1;
            }
            certs.push(BoundCertificate::exact(
                format!("ledger:ratio({k1},{k2})"),
                ledger.post_hypertangent_ratio.clone(),
                Relation::Equal,
                crate::rational::rat(8, 9),
                vec![],
            ));
            certs.push(BoundCertificate::exact(
                format!("ledger:final({k1},{k2})"),
                ledger.final_coefficient.clone(),
                Relation::Equal,
                crate::rational::rat(8, ledger.d.clone()),
                vec![],
            ));
        }
    }
    certs.push(indicator(
        "ledger:exponent-discrepancy-flagged",
        missing_flag,
        vec![("families".to_string(), total.to_string())],
    ));
    Ok(CriterionReport::from_certs(
        9,
        "ledger universality",
        format!("{total} families: carried ratio 8/9 and closing coefficient 8/d, exponent discrepancy flagged"),
        certs,
    ))
}

fn criterion_10(local: &LocalGolden, global_g: &GlobalGolden) -> Result<CriterionReport> {
    // perturb one local value and one global value in memory; each must
    // surface as a freshly failing certificate through the same match path
    let mut perturbed_local = local.clone();
    let cell = perturbed_local
        .cells
        .iter_mut()
        .find(|c| c.value.is_some())
        .expect("golden table has defined cells");
    let target = format!("local-table:cell({},{})", cell.a, cell.b);
    *cell.value.as_mut().unwrap() += 1;
    let local_detected = local_table_certificates(&perturbed_local)?
        .iter()
        .any(|c| c.claim_id == target && !c.holds);

    let mut perturbed_global = global_g.clone();
    let row = perturbed_global
        .rows
        .iter_mut()
        .find(|r| r.a == 16)
        .expect("golden table has row 16");
    row.value += 1;
    let global_detected = global_table_certificates(&perturbed_global)?
        .iter()
        .any(|c| c.claim_id == "global-table:row(16)" && !c.holds);

    let certs = vec![
        indicator(
            "negative-control:local-perturbation-detected",
            usize::from(!local_detected),
            vec![("perturbed".to_string(), target)],
        ),
        indicator(
            "negative-control:global-perturbation-detected",
            usize::from(!global_detected),
            vec![("perturbed".to_string(), "global-table:row(16)".to_string())],
        ),
    ];
    Ok(CriterionReport::from_certs(
        10,
        "negative control",
        "single-constant perturbations of the golden tables are detected".to_string(),
        certs,
    ))
}

/// Run the whole suite against the embedded golden tables.
pub fn run_verification(grid_scale: f64) -> Result<VerifyReport> {
    run_verification_with(
        golden::local_golden(),
        golden::global_golden(),
        GridLimits::scaled(grid_scale),
        grid_scale,
    )
}

/// Run the whole suite against explicit golden data (used by the
/// negative-control tests).
pub fn run_verification_with(
    local: &LocalGolden,
    global_g: &GlobalGolden,
    limits: GridLimits,
    grid_scale: f64,
) -> Result<VerifyReport> {
    let criteria = vec![
        criterion_1(local)?,
        criterion_2(&limits)?,
        criterion_3(&limits)?,
        criterion_4(&limits)?,
        criterion_5(&limits)?,
        criterion_6(global_g)?,
        criterion_7()?,
        criterion_8()?,
        criterion_9()?,
        criterion_10(local, global_g)?,
    ];
    Ok(VerifyReport {
        grid_scale,
        criteria,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_table_certs_all_hold() {
        let certs = local_table_certificates(golden::local_golden()).unwrap();
        assert_eq!(certs.len(), 232 + 36);
        assert!(certs.iter().all(|c| c.holds));
    }

    #[test]
    fn global_table_certs_fail_exactly_at_row_15() {
        let certs = global_table_certificates(golden::global_golden()).unwrap();
        let failing: Vec<&str> = certs
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.claim_id.as_str())
            .collect();
        assert_eq!(
            failing,
            vec!["global-table:row(15)", "global-table:maximizer(15)"]
        );
    }

    #[test]
    fn perturbation_flips_a_cell_certificate() {
        let mut g = golden::local_golden().clone();
        for c in g.cells.iter_mut() {
            if c.a == 36 && c.b == 4 {
                *c.value.as_mut().unwrap() += 1;
            }
        }
        let certs = local_table_certificates(&g).unwrap();
        let cell = certs
            .iter()
            .find(|c| c.claim_id == "local-table:cell(36,4)")
            .unwrap();
        assert!(!cell.holds);
    }
}
