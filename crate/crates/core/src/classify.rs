//! Join-irreducibility classification of small semigroups by the condition
//! tables, applied both directly and in mirror image.

use crate::catalog::{conditions, dual_name, Condition, ConditionKind};
use crate::enumerate::enumerate_semigroups;
use crate::error::ClassifyError;
use crate::satisfy::{satisfies_all, violates_all};
use crate::semigroup::{key_to_hex, CanonicalMode, Semigroup};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Ji { target: String },
    NonJi { reason: String },
    Unclassified,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRecord {
    pub order: usize,
    pub canonical_key: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub matched: Option<String>,
    pub dual_applied: bool,
}

impl ClassificationRecord {
    pub fn csv_line(&self) -> String {
        let (verdict, target) = match &self.verdict {
            Verdict::Ji { target } => ("ji", target.clone()),
            Verdict::NonJi { .. } => ("non_ji", String::new()),
            Verdict::Unclassified => ("unclassified", String::new()),
        };
        format!(
            "{},{},{},{},{},{}",
            self.order,
            self.canonical_key,
            verdict,
            target,
            self.matched.clone().unwrap_or_default(),
            self.dual_applied
        )
    }
}

pub const CSV_HEADER: &str = "order,canonical_key,verdict,target,condition_id,dual_applied";

/// One condition match: which condition fired, and whether on the mirror
/// image of the semigroup.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionMatch {
    pub id: String,
    pub kind: ConditionKind,
    pub target: String,
    pub dual_applied: bool,
}

fn condition_matches(s: &Semigroup, cond: &Condition) -> bool {
    satisfies_all(s, &cond.satisfy) && violates_all(s, &cond.violate)
}

/// Every condition match on `s` or its mirror image, in condition order
/// (direct before mirrored within each condition).
pub fn all_matches(s: &Semigroup) -> Vec<ConditionMatch> {
    let op = s.opposite();
    let mut out = Vec::new();
    for cond in conditions() {
        for (semi, dual) in [(s, false), (&op, true)] {
            if condition_matches(semi, cond) {
                let target = match (cond.kind, dual) {
                    (ConditionKind::Ji, false) => cond.target.clone(),
                    (ConditionKind::Ji, true) => dual_name(&cond.target),
                    (ConditionKind::NonJi, _) => cond.target.clone(),
                };
                out.push(ConditionMatch {
                    id: cond.id.clone(),
                    kind: cond.kind,
                    target,
                    dual_applied: dual,
                });
            }
        }
    }
    out
}

/// Classifies one nontrivial semigroup. The first match in condition order
/// decides; a simultaneous match of a ji and a non-ji condition is an
/// error.
pub fn classify_one(s: &Semigroup) -> Result<ClassificationRecord, ClassifyError> {
    if s.order() < 2 {
        return Err(ClassifyError::TrivialSemigroup);
    }
    let key = if s.order() <= crate::semigroup::MAX_CANONICAL_ORDER {
        key_to_hex(&s.canonical_key(CanonicalMode::IsoAntiIso))
    } else {
        String::new()
    };
    let matches = all_matches(s);
    let first_a = matches.iter().find(|m| m.kind == ConditionKind::Ji);
    let first_b = matches.iter().find(|m| m.kind == ConditionKind::NonJi);
    match (first_a, first_b) {
        (Some(a), Some(b)) => Err(ClassifyError::ConflictingConditions {
            order: s.order(),
            key,
            a_id: a.id.clone(),
            b_id: b.id.clone(),
        }),
        (Some(a), None) => Ok(ClassificationRecord {
            order: s.order(),
            canonical_key: key,
            verdict: Verdict::Ji {
                target: a.target.clone(),
            },
            matched: Some(a.id.clone()),
            dual_applied: a.dual_applied,
        }),
        (None, Some(b)) => Ok(ClassificationRecord {
            order: s.order(),
            canonical_key: key,
            verdict: Verdict::NonJi {
                reason: b.id.clone(),
            },
            matched: Some(b.id.clone()),
            dual_applied: b.dual_applied,
        }),
        (None, None) => Ok(ClassificationRecord {
            order: s.order(),
            canonical_key: key,
            verdict: Verdict::Unclassified,
            matched: None,
            dual_applied: false,
        }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderCounts {
    pub order: usize,
    pub ji: usize,
    pub non_ji: usize,
    pub unclassified: usize,
    pub total: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifySummary {
    pub orders: Vec<OrderCounts>,
    /// Every ji pseudovariety generated by a classified semigroup or its
    /// mirror image.
    pub ji_targets: BTreeSet<String>,
    pub ji_target_count: usize,
    #[serde(skip)]
    pub records: Vec<ClassificationRecord>,
}

/// Enumerates and classifies every nontrivial semigroup of order up to
/// `max_order` (classes taken up to isomorphism and anti-isomorphism).
///
/// Each class stands for the semigroup and its mirror image, so a ji class
/// contributes both its target and the dual target to the target set.
pub fn classify_small_orders(max_order: usize) -> Result<ClassifySummary, ClassifyError> {
    let mut summary = ClassifySummary {
        orders: Vec::new(),
        ji_targets: BTreeSet::new(),
        ji_target_count: 0,
        records: Vec::new(),
    };
    for order in 2..=max_order {
        let enumeration = enumerate_semigroups(order, CanonicalMode::IsoAntiIso)?;
        let records: Result<Vec<ClassificationRecord>, ClassifyError> =
            enumeration.classes.par_iter().map(classify_one).collect();
        let records = records?;
        let mut counts = OrderCounts {
            order,
            ji: 0,
            non_ji: 0,
            unclassified: 0,
            total: records.len(),
        };
        for rec in &records {
            match &rec.verdict {
                Verdict::Ji { target } => {
                    counts.ji += 1;
                    summary.ji_targets.insert(target.clone());
                    summary.ji_targets.insert(dual_name(target));
                }
                Verdict::NonJi { .. } => counts.non_ji += 1,
                Verdict::Unclassified => counts.unclassified += 1,
            }
        }
        summary.orders.push(counts);
        summary.records.extend(records);
    }
    summary.ji_target_count = summary.ji_targets.len();
    Ok(summary)
}
