//! Constructors and verified data for the named semigroups, their identity
//! bases, exclusion pseudoidentities, and the classification conditions.
//!
//! Tables, bases, exclusions, and conditions live in text files under
//! `data/` so they can be audited line by line; nothing here hard-codes an
//! identity.

use crate::error::CatalogError;
use crate::green::minimal_ideal;
use crate::satisfy::{in_local, satisfies};
use crate::semigroup::{AdjoinMode, Semigroup};
use crate::term::Pseudoidentity;
use crate::transform::{augment, AugmentMode};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;

const TABLES_JSON: &str = include_str!("../data/tables.json");
const BASES_TXT: &str = include_str!("../data/bases.txt");
const EXCLUSIONS_TXT: &str = include_str!("../data/exclusions.txt");
const CONDITIONS_TXT: &str = include_str!("../data/conditions.txt");

/// The cyclic group of order `n` (`n = 1` gives the trivial semigroup).
pub fn cyclic(n: usize) -> Result<Semigroup, CatalogError> {
    if n == 0 {
        return Err(CatalogError::BadParams {
            name: "Z".into(),
            why: "order must be positive".into(),
        });
    }
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    Ok(Semigroup::from_rows(&rows)?.with_name(format!("Z{n}")))
}

/// The monogenic nilpotent semigroup of order `n`: elements `0, a, ...,
/// a^(n-1)` with `a^n = 0`. Index 0 is the zero, index `i` is `a^i`.
pub fn nilpotent(n: usize) -> Result<Semigroup, CatalogError> {
    if n == 0 {
        return Err(CatalogError::BadParams {
            name: "N".into(),
            why: "order must be positive".into(),
        });
    }
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == 0 || j == 0 || i + j >= n {
                        0
                    } else {
                        i + j
                    }
                })
                .collect()
        })
        .collect();
    Ok(Semigroup::from_rows(&rows)?.with_name(format!("N{n}")))
}

/// `N_n` with an external identity adjoined.
pub fn nilpotent_monoid(n: usize) -> Result<Semigroup, CatalogError> {
    Ok(nilpotent(n)?
        .adjoin_identity(AdjoinMode::Always)
        .with_name(format!("N{n}I")))
}

/// The semigroup generated by `x, e` with `x^k = x^(k-1) e = 0`, `e x = x`,
/// `e^2 = e`. It has `2k - 1` elements: `0`, then `x^i` for `1 <= i < k` at
/// indices `1..k`, then `x^j e` for `0 <= j <= k-2` at indices `k..2k-1`.
pub fn o_k(k: usize) -> Result<Semigroup, CatalogError> {
    if k < 2 {
        return Err(CatalogError::BadParams {
            name: "O".into(),
            why: "k must be at least 2".into(),
        });
    }
    let n = 2 * k - 1;
    let x_pow = |i: usize| -> usize {
        if i >= k {
            0
        } else {
            i
        }
    };
    let xe = |j: usize| -> usize {
        if j > k - 2 {
            0
        } else {
            k + j
        }
    };
    let mut rows = vec![vec![0usize; n]; n];
    #[allow(clippy::needless_range_loop)]
    for i in 1..k {
        for j in 1..k {
            rows[i][j] = x_pow(i + j);
        }
        for j in 0..k - 1 {
            rows[i][xe(j)] = xe(i + j);
        }
    }
    #[allow(clippy::needless_range_loop)]
    for i in 0..k - 1 {
        for j in 1..k {
            rows[xe(i)][j] = x_pow(i + j);
        }
        for j in 0..k - 1 {
            rows[xe(i)][xe(j)] = xe(i + j);
        }
    }
    Ok(Semigroup::from_rows(&rows)?.with_name(format!("O{k}")))
}

/// The Rees matrix semigroup with zero over a group: elements are `0` and
/// triples `(a, g, b)` with `a` a row index, `b` a column index;
/// `(a,g,b)(a',g',b') = (a, g*h*g', b')` when the sandwich entry
/// `matrix[b][a']` is `Some(h)`, else `0`.
pub fn rees_matrix_zero(
    group: &Semigroup,
    rows: usize,
    cols: usize,
    matrix: &[Vec<Option<usize>>],
) -> Result<Semigroup, CatalogError> {
    let bad = |why: &str| CatalogError::BadParams {
        name: "ReesM0".into(),
        why: why.into(),
    };
    if group.identity().is_none() {
        return Err(bad("structure semigroup must be a group"));
    }
    if rows == 0 || cols == 0 {
        return Err(bad("need at least one row and one column"));
    }
    if matrix.len() != cols || matrix.iter().any(|r| r.len() != rows) {
        return Err(bad("sandwich matrix must be cols x rows"));
    }
    let g = group.order();
    let idx = |a: usize, x: usize, b: usize| 1 + (a * g + x) * cols + b;
    let n = 1 + rows * g * cols;
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..rows {
        for x in 0..g {
            for b in 0..cols {
                for a2 in 0..rows {
                    for x2 in 0..g {
                        for b2 in 0..cols {
                            if let Some(h) = matrix[b][a2] {
                                if h >= g {
                                    return Err(bad("matrix entry outside the group"));
                                }
                                let prod = group.mul(group.mul(x, h), x2);
                                table[idx(a, x, b)][idx(a2, x2, b2)] = idx(a, prod, b2);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Semigroup::from_rows(&table)?)
}

fn tables() -> &'static BTreeMap<String, Semigroup> {
    static TABLES: OnceLock<BTreeMap<String, Semigroup>> = OnceLock::new();
    TABLES.get_or_init(|| {
        let list: Vec<Semigroup> =
            serde_json::from_str(TABLES_JSON).expect("tables.json is valid and associative");
        list.into_iter()
            .map(|s| (s.name().expect("named table").to_string(), s))
            .collect()
    })
}

/// The reference multiplication tables shipped with the catalog.
pub fn reference_tables() -> impl Iterator<Item = (&'static str, &'static Semigroup)> {
    tables().iter().map(|(k, v)| (k.as_str(), v))
}

/// Builds a named semigroup. Names are case-insensitive and ignore `_`;
/// a trailing `op` reverses the multiplication. Parameterized families:
/// `Z{n}`, `N{n}`, `N{n}I`, `O{k}`, `Obar{k}`.
pub fn build_named(name: &str) -> Result<Semigroup, CatalogError> {
    let canon: String = name
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_' && *c != '^')
        .collect::<String>()
        .to_ascii_lowercase();
    build_canon(&canon).map(|s| s.with_name(name.to_string()))
}

fn build_canon(canon: &str) -> Result<Semigroup, CatalogError> {
    let unknown = || CatalogError::UnknownName(canon.to_string());
    match canon {
        "trivial" | "1" => return Ok(Semigroup::trivial()),
        "sl2" => return Ok(tables()["Sl2"].clone()),
        "l2" => return Ok(tables()["L2"].clone()),
        "r2" => return Ok(tables()["R2"].clone()),
        "l2i" => return Ok(tables()["L2"].adjoin_identity(AdjoinMode::Always)),
        "r2i" => return Ok(tables()["R2"].adjoin_identity(AdjoinMode::Always)),
        "z2bar" => return Ok(tables()["Z2bar"].clone()),
        "n2bar" => return Ok(tables()["N2bar"].clone()),
        "n2bari" => return Ok(tables()["N2bar"].adjoin_identity(AdjoinMode::Always)),
        "lzbar" => return Ok(tables()["LZbar"].clone()),
        "a0" => return Ok(tables()["A0"].clone()),
        "a0i" => return Ok(tables()["A0"].adjoin_identity(AdjoinMode::Always)),
        "a2" => return Ok(tables()["A2"].clone()),
        "b2" => return Ok(tables()["B2"].clone()),
        "b0" => return Ok(tables()["B0"].clone()),
        "b0i" => return Ok(tables()["B0"].adjoin_identity(AdjoinMode::Always)),
        "l3" => return Ok(tables()["l3"].clone()),
        "l3bar" | "elb" => return Ok(tables()["elB"].clone()),
        "l3barop" | "elbop" => return Ok(tables()["elBop"].clone()),
        "w" => return Ok(tables()["W"].clone()),
        "wi" => return Ok(tables()["W"].adjoin_identity(AdjoinMode::Always)),
        _ => {}
    }
    if let Some(rest) = canon.strip_prefix("obar") {
        let k: usize = rest.parse().map_err(|_| unknown())?;
        return Ok(augment(&o_k(k)?, AugmentMode::Bar));
    }
    if let Some(rest) = canon.strip_prefix('z') {
        if let Ok(n) = rest.parse::<usize>() {
            return cyclic(n);
        }
    }
    if let Some(rest) = canon.strip_prefix('n') {
        if let Some(digits) = rest.strip_suffix('i') {
            if let Ok(n) = digits.parse::<usize>() {
                return nilpotent_monoid(n);
            }
        }
        if let Ok(n) = rest.parse::<usize>() {
            return nilpotent(n);
        }
    }
    if let Some(rest) = canon.strip_prefix('o') {
        if let Ok(k) = rest.parse::<usize>() {
            return o_k(k);
        }
    }
    if let Some(base) = canon.strip_suffix("op") {
        return Ok(build_canon(base)?.opposite());
    }
    Err(unknown())
}

/// The mirror image of a pseudovariety name, for the names the classifier
/// can produce.
pub fn dual_name(name: &str) -> String {
    if let Some(base) = name.strip_suffix("op") {
        return base.to_string();
    }
    match name {
        "Z2bar" | "N2bar" | "N2barI" | "LZbar" | "elB" | "l3" => format!("{name}op"),
        "L2" => "R2".into(),
        "R2" => "L2".into(),
        "L2I" => "R2I".into(),
        "R2I" => "L2I".into(),
        // commutative families and the self-dual 0-simple semigroups
        _ => name.to_string(),
    }
}

/// Names whose mirror image is itself.
pub fn is_self_dual_name(name: &str) -> bool {
    dual_name(name) == name
}

#[derive(Debug, Clone)]
pub struct BasisRecord {
    pub name: String,
    pub sigma: Vec<Pseudoidentity>,
    pub epsilon: Pseudoidentity,
    pub citation: String,
}

#[derive(Debug, Clone)]
pub struct ExclusionRecord {
    pub name: String,
    pub pid: Pseudoidentity,
    /// The exclusion class is the local of `pid` rather than `pid` itself.
    pub local: bool,
    /// Whether `build_named` can produce the semigroup.
    pub constructible: bool,
    pub citation: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionKind {
    /// Matching proves the generated pseudovariety equals `target`.
    Ji,
    /// Matching proves the generated pseudovariety is not join irreducible.
    NonJi,
}

#[derive(Debug, Clone)]
pub struct Condition {
    pub id: String,
    pub kind: ConditionKind,
    /// The pseudovariety name (A-conditions) or the join bound description
    /// (B-conditions).
    pub target: String,
    pub satisfy: Vec<Pseudoidentity>,
    pub violate: Vec<Pseudoidentity>,
    pub citation: String,
}

fn mirror_basis(rec: &BasisRecord) -> BasisRecord {
    BasisRecord {
        name: dual_name(&rec.name),
        sigma: rec.sigma.iter().map(|p| p.reversed()).collect(),
        epsilon: rec.epsilon.reversed(),
        citation: format!("{} (mirror)", rec.citation),
    }
}

fn mirror_exclusion(rec: &ExclusionRecord) -> ExclusionRecord {
    ExclusionRecord {
        name: dual_name(&rec.name),
        pid: rec.pid.reversed(),
        local: rec.local,
        constructible: rec.constructible,
        citation: format!("{} (mirror)", rec.citation),
    }
}

/// Basis records: the explicit ones plus mirror records for every
/// non-self-dual name.
pub fn basis_records() -> &'static [BasisRecord] {
    static RECORDS: OnceLock<Vec<BasisRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| {
        let mut records = parse_bases(BASES_TXT).expect("bases.txt parses");
        let mirrored: Vec<BasisRecord> = records
            .iter()
            .filter(|r| {
                !is_self_dual_name(&r.name) && !records_contain(&records, &dual_name(&r.name))
            })
            .map(mirror_basis)
            .collect();
        records.extend(mirrored);
        records
    })
}

fn records_contain(records: &[BasisRecord], name: &str) -> bool {
    records.iter().any(|r| r.name == name)
}

pub fn exclusion_records() -> &'static [ExclusionRecord] {
    static RECORDS: OnceLock<Vec<ExclusionRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| {
        let mut records = parse_exclusions(EXCLUSIONS_TXT).expect("exclusions.txt parses");
        let mirrored: Vec<ExclusionRecord> = records
            .iter()
            .filter(|r| {
                !is_self_dual_name(&r.name) && !records.iter().any(|o| o.name == dual_name(&r.name))
            })
            .map(mirror_exclusion)
            .collect();
        records.extend(mirrored);
        records
    })
}

pub fn conditions() -> &'static [Condition] {
    static RECORDS: OnceLock<Vec<Condition>> = OnceLock::new();
    RECORDS.get_or_init(|| parse_conditions(CONDITIONS_TXT).expect("conditions.txt parses"))
}

fn data_err(line_no: usize, msg: impl Into<String>) -> CatalogError {
    CatalogError::Data(format!("line {}: {}", line_no + 1, msg.into()))
}

/// Iterates `key rest-of-line` entries, skipping blanks and `#` comments.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(no, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        Some((no, key, rest.trim()))
    })
}

fn parse_bases(text: &str) -> Result<Vec<BasisRecord>, CatalogError> {
    let mut records = Vec::new();
    let mut current: Option<(String, Vec<Pseudoidentity>, Option<Pseudoidentity>)> = None;
    for (no, key, rest) in data_lines(text) {
        match key {
            "basis" => {
                if current.is_some() {
                    return Err(data_err(no, "unterminated record"));
                }
                current = Some((rest.to_string(), Vec::new(), None));
            }
            "sigma" => {
                let cur = current
                    .as_mut()
                    .ok_or_else(|| data_err(no, "sigma outside record"))?;
                cur.1.push(Pseudoidentity::parse(rest)?);
            }
            "epsilon" => {
                let cur = current
                    .as_mut()
                    .ok_or_else(|| data_err(no, "epsilon outside record"))?;
                cur.2 = Some(Pseudoidentity::parse(rest)?);
            }
            "end" => {
                let (name, sigma, epsilon) = current
                    .take()
                    .ok_or_else(|| data_err(no, "end outside record"))?;
                let epsilon = epsilon.ok_or_else(|| data_err(no, "record without epsilon"))?;
                records.push(BasisRecord {
                    citation: format!("basis:{name}"),
                    name,
                    sigma,
                    epsilon,
                });
            }
            other => return Err(data_err(no, format!("unknown key '{other}'"))),
        }
    }
    Ok(records)
}

fn parse_exclusions(text: &str) -> Result<Vec<ExclusionRecord>, CatalogError> {
    let mut records = Vec::new();
    let mut current: Option<(String, bool, bool, Option<Pseudoidentity>)> = None;
    for (no, key, rest) in data_lines(text) {
        match key {
            "exclusion" => {
                if current.is_some() {
                    return Err(data_err(no, "unterminated record"));
                }
                current = Some((rest.to_string(), false, true, None));
            }
            "local" => {
                current
                    .as_mut()
                    .ok_or_else(|| data_err(no, "local outside record"))?
                    .1 = true;
            }
            "noconstructor" => {
                current
                    .as_mut()
                    .ok_or_else(|| data_err(no, "flag outside record"))?
                    .2 = false;
            }
            "pid" => {
                let cur = current
                    .as_mut()
                    .ok_or_else(|| data_err(no, "pid outside record"))?;
                cur.3 = Some(Pseudoidentity::parse(rest)?);
            }
            "end" => {
                let (name, local, constructible, pid) = current
                    .take()
                    .ok_or_else(|| data_err(no, "end outside record"))?;
                let pid = pid.ok_or_else(|| data_err(no, "record without pid"))?;
                records.push(ExclusionRecord {
                    citation: format!("excl:{name}"),
                    name,
                    pid,
                    local,
                    constructible,
                });
            }
            other => return Err(data_err(no, format!("unknown key '{other}'"))),
        }
    }
    Ok(records)
}

fn parse_conditions(text: &str) -> Result<Vec<Condition>, CatalogError> {
    let mut records = Vec::new();
    let mut current: Option<Condition> = None;
    for (no, key, rest) in data_lines(text) {
        match key {
            "condition" => {
                if current.is_some() {
                    return Err(data_err(no, "unterminated record"));
                }
                current = Some(Condition {
                    id: rest.to_string(),
                    kind: ConditionKind::Ji,
                    target: String::new(),
                    satisfy: Vec::new(),
                    violate: Vec::new(),
                    citation: format!("cond:{rest}"),
                });
            }
            "target" => {
                let cur = current
                    .as_mut()
                    .ok_or_else(|| data_err(no, "target outside record"))?;
                cur.kind = ConditionKind::Ji;
                cur.target = rest.to_string();
            }
            "bound" => {
                let cur = current
                    .as_mut()
                    .ok_or_else(|| data_err(no, "bound outside record"))?;
                cur.kind = ConditionKind::NonJi;
                cur.target = rest.to_string();
            }
            "satisfy" => {
                let cur = current
                    .as_mut()
                    .ok_or_else(|| data_err(no, "satisfy outside record"))?;
                cur.satisfy.push(Pseudoidentity::parse(rest)?);
            }
            "violate" => {
                let cur = current
                    .as_mut()
                    .ok_or_else(|| data_err(no, "violate outside record"))?;
                cur.violate.push(Pseudoidentity::parse(rest)?);
            }
            "end" => {
                let cond = current
                    .take()
                    .ok_or_else(|| data_err(no, "end outside record"))?;
                if cond.target.is_empty() {
                    return Err(data_err(no, "condition without target or bound"));
                }
                records.push(cond);
            }
            other => return Err(data_err(no, format!("unknown key '{other}'"))),
        }
    }
    Ok(records)
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogCheck {
    pub id: String,
    pub kind: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub checks: Vec<CatalogCheck>,
}

impl CatalogReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, id: String, kind: &str, passed: bool, detail: String) {
        self.checks.push(CatalogCheck {
            id,
            kind: kind.to_string(),
            passed,
            detail,
        });
    }
}

/// Re-derives every catalog claim: each basis record's semigroup satisfies
/// its sigma list and violates its epsilon; each constructible exclusion
/// record's semigroup violates its pseudoidentity; the structural
/// cross-identities between constructors and reference tables hold.
pub fn verify_catalog() -> CatalogReport {
    let mut report = CatalogReport { checks: Vec::new() };

    for rec in basis_records() {
        let id = format!("basis:{}", rec.name);
        match build_named(&rec.name) {
            Err(e) => report.push(id, "basis", false, format!("build failed: {e}")),
            Ok(s) => {
                let bad_sigma: Vec<String> = rec
                    .sigma
                    .iter()
                    .filter(|p| !satisfies(&s, p).satisfied)
                    .map(|p| p.to_string())
                    .collect();
                let eps_violated = !satisfies(&s, &rec.epsilon).satisfied;
                let passed = bad_sigma.is_empty() && eps_violated;
                let detail = if passed {
                    format!("{} identities satisfied, epsilon violated", rec.sigma.len())
                } else if !bad_sigma.is_empty() {
                    format!("sigma violated: {}", bad_sigma.join("; "))
                } else {
                    "epsilon unexpectedly satisfied".to_string()
                };
                report.push(id, "basis", passed, detail);
            }
        }
    }

    for rec in exclusion_records() {
        let id = format!("excl:{}", rec.name);
        if !rec.constructible {
            report.push(
                id,
                "exclusion",
                true,
                "catalog-only record, no builder".into(),
            );
            continue;
        }
        match build_named(&rec.name) {
            Err(e) => report.push(id, "exclusion", false, format!("build failed: {e}")),
            Ok(s) => {
                let violated = if rec.local {
                    !in_local(&s, &rec.pid)
                } else {
                    !satisfies(&s, &rec.pid).satisfied
                };
                report.push(
                    id,
                    "exclusion",
                    violated,
                    if violated {
                        "namesake violates its exclusion pseudoidentity".into()
                    } else {
                        "namesake unexpectedly satisfies the pseudoidentity".into()
                    },
                );
            }
        }
    }

    type Check = (&'static str, Box<dyn Fn() -> bool>);
    let structural: Vec<Check> = vec![
        (
            "opposite(L2) = R2",
            Box::new(|| {
                build_named("L2")
                    .unwrap()
                    .opposite()
                    .is_isomorphic(&build_named("R2").unwrap())
            }),
        ),
        (
            "N1 with identity = Sl2",
            Box::new(|| {
                build_named("N1")
                    .unwrap()
                    .adjoin_identity(AdjoinMode::Always)
                    .is_isomorphic(&build_named("Sl2").unwrap())
            }),
        ),
        (
            "opposite(elBop) agrees with elB",
            Box::new(|| build_named("elBop").unwrap().opposite() == *tables().get("elB").unwrap()),
        ),
        (
            "O2 = l3",
            Box::new(|| o_k(2).unwrap().is_isomorphic(&build_named("l3").unwrap())),
        ),
        (
            "bar(l3) = elB",
            Box::new(|| {
                augment(&build_named("l3").unwrap(), AugmentMode::Bar)
                    .is_isomorphic(&build_named("elB").unwrap())
            }),
        ),
        (
            "bar(Z2) = Z2bar",
            Box::new(|| {
                augment(&build_named("Z2").unwrap(), AugmentMode::Bar)
                    .is_isomorphic(&build_named("Z2bar").unwrap())
            }),
        ),
        (
            "bar(N2) = N2bar",
            Box::new(|| {
                augment(&build_named("N2").unwrap(), AugmentMode::Bar)
                    .is_isomorphic(&build_named("N2bar").unwrap())
            }),
        ),
        (
            "bar(L2) = LZbar",
            Box::new(|| {
                augment(&build_named("L2").unwrap(), AugmentMode::Bar)
                    .is_isomorphic(&build_named("LZbar").unwrap())
            }),
        ),
        (
            "B2 as a Rees matrix semigroup",
            Box::new(|| {
                let unit = vec![vec![Some(0), None], vec![None, Some(0)]];
                rees_matrix_zero(&Semigroup::trivial(), 2, 2, &unit)
                    .unwrap()
                    .is_isomorphic(&build_named("B2").unwrap())
            }),
        ),
        (
            "A2 as a Rees matrix semigroup",
            Box::new(|| {
                let sandwich = vec![vec![Some(0), Some(0)], vec![None, Some(0)]];
                rees_matrix_zero(&Semigroup::trivial(), 2, 2, &sandwich)
                    .unwrap()
                    .is_isomorphic(&build_named("A2").unwrap())
            }),
        ),
        (
            "kernel of elB is its constant maps",
            Box::new(|| minimal_ideal(&build_named("elB").unwrap()).len() == 3),
        ),
    ];
    for (name, check) in structural {
        let passed = check();
        report.push(
            format!("structure:{name}"),
            "structure",
            passed,
            if passed {
                "holds".into()
            } else {
                "failed".into()
            },
        );
    }

    report
}
