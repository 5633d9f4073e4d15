//! Entanglement-assisted quantum code parameters: Singleton-type bounds,
//! the Hermitian construction, propagation rules, the six-shape enumerator
//! for the explicit families, and code-level witnesses for small q.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{build_family, hull_lb_formula, Family, FamilyCode, FamilySpec, TRange};
use crate::grs::{mds_certificate, Code, GrsCode, InnerProduct};
use crate::rules::{extend_both, extend_length_infty, extend_length_zero, hull_reduce, Direction, RuleOutcome};

/// Largest q accepted by the witness path.
pub const MAX_WITNESS_Q: u32 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MdsVerdict {
    MdsByEq1,
    MdsByEq3,
    NotMds,
}

impl MdsVerdict {
    pub fn is_mds(self) -> bool {
        self != MdsVerdict::NotMds
    }
}

impl fmt::Display for MdsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MdsVerdict::MdsByEq1 => "mds_by_eq1",
            MdsVerdict::MdsByEq3 => "mds_by_eq3",
            MdsVerdict::NotMds => "not_mds",
        })
    }
}

/// [[n, k, d; c]] with no further data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tuple {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub c: usize,
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{};{}]]", self.n, self.k, self.d, self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundAudit {
    pub eq1: bool,
    pub eq2: bool,
    /// None when 2d < n + 2.
    pub eq3: Option<bool>,
    pub verdict: MdsVerdict,
}

impl BoundAudit {
    pub fn holds(&self) -> bool {
        self.eq1 && self.eq2 && self.eq3.unwrap_or(true)
    }
}

pub fn audit(t: Tuple) -> BoundAudit {
    let (n, k, d, c) = (t.n as i128, t.k as i128, t.d as i128, t.c as i128);
    let rhs1 = c + (n - 2 * d + 2).max(0);
    let eq1 = k <= rhs1;
    let eq2 = k <= n - d + 1;
    let eq3_applies = 2 * d >= n + 2;
    let (l3, r3) = (k * (3 * d - 3 - n), (n - d + 1) * (c + 2 * d - 2 - n));
    let eq3 = eq3_applies.then_some(l3 <= r3);
    let verdict = if 2 * d <= n + 2 && k == rhs1 {
        MdsVerdict::MdsByEq1
    } else if eq3_applies && l3 == r3 {
        MdsVerdict::MdsByEq3
    } else {
        MdsVerdict::NotMds
    };
    BoundAudit { eq1, eq2, eq3, verdict }
}

/// Where a tuple came from: the (k, l) pair of the source code and the shape
/// offsets (i, s).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: Option<Family>,
    pub t: Option<usize>,
    pub branch: Option<u8>,
    pub k: usize,
    pub l: usize,
    pub i: i64,
    pub s: usize,
}

impl Provenance {
    fn bare(k: usize, l: usize, i: i64, s: usize) -> Provenance {
        Provenance { family: None, t: None, branch: None, k, l, i, s }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqeccParams {
    pub q: u32,
    pub n: usize,
    pub k_logical: usize,
    pub d: usize,
    pub c: usize,
    pub mds: MdsVerdict,
    /// Which of the six shapes produced the tuple (0 for a direct construction).
    pub shape_id: u8,
    pub provenance: Provenance,
    /// k_logical = 0.
    pub degenerate: bool,
    /// Some code operation in this crate can produce the tuple.
    pub witnessable: bool,
    pub witnessed: bool,
}

impl EaqeccParams {
    /// Checks the invariants and all three bounds before accepting the tuple.
    pub fn new(q: u32, n: i64, k: i64, d: i64, c: i64, shape_id: u8, provenance: Provenance) -> Result<EaqeccParams> {
        if n < 1 || k < 0 || d < 1 || c < 0 || c > n {
            return Err(Error::RangeViolation(format!("[[{n},{k},{d};{c}]] has out-of-range entries")));
        }
        let t = Tuple { n: n as usize, k: k as usize, d: d as usize, c: c as usize };
        let a = audit(t);
        if !a.holds() {
            return Err(Error::RangeViolation(format!("{t} violates the EAQECC bounds")));
        }
        Ok(EaqeccParams {
            q,
            n: t.n,
            k_logical: t.k,
            d: t.d,
            c: t.c,
            mds: a.verdict,
            shape_id,
            provenance,
            degenerate: k == 0,
            witnessable: provenance.i >= 0,
            witnessed: false,
        })
    }

    pub fn tuple(&self) -> Tuple {
        Tuple { n: self.n, k: self.k_logical, d: self.d, c: self.c }
    }

    pub fn audit(&self) -> BoundAudit {
        audit(self.tuple())
    }

    /// Operations that realise the tuple, in order.
    pub fn rule_chain(&self) -> Vec<String> {
        let p = &self.provenance;
        let mut out = Vec::new();
        if let Some(fam) = p.family {
            out.push(format!("build {fam} k={}", p.k));
        }
        let i = p.i.unsigned_abs();
        match (self.shape_id, p.i.signum()) {
            (1 | 2, _) if i > 0 => out.push(format!("increase-dim x{i}")),
            (3 | 4, 1) => out.push(format!("extend-length x{i}")),
            (5 | 6, 1) => out.push(format!("extend-both x{i}")),
            (3..=6, -1) => out.push(format!("shorten x{i} (not constructed here)")),
            _ => {}
        }
        out.push(format!("reduce hull to {}", p.s));
        out.push(format!("hermitian-construction output {}", if self.shape_id % 2 == 1 { 2 } else { 1 }));
        out
    }

    pub fn csv_row(&self) -> CsvRow {
        CsvRow {
            q: self.q,
            family: self.provenance.family.map(|f| f.number()),
            h: self.provenance.family.and_then(|f| f.h()),
            n: self.n,
            k_logical: self.k_logical,
            d: self.d,
            c: self.c,
            mds: self.mds,
            shape_id: self.shape_id,
            witnessed: self.witnessed,
        }
    }
}

/// Fixed CSV layout: q,family,h,n,k_logical,d,c,mds,shape_id,witnessed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub q: u32,
    pub family: Option<u8>,
    pub h: Option<u32>,
    pub n: usize,
    pub k_logical: usize,
    pub d: usize,
    pub c: usize,
    pub mds: MdsVerdict,
    pub shape_id: u8,
    pub witnessed: bool,
}

/// Parameters of a classical [n, k] code over GF(q²) with Hermitian hull l.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub d_dual: Option<usize>,
    pub hull: usize,
}

impl CodeParams {
    /// An MDS code; its Hermitian dual is MDS with distance k + 1.
    pub fn mds(q: u32, n: usize, k: usize, hull: usize) -> CodeParams {
        CodeParams { q, n, k, d: Some(n - k + 1), d_dual: Some(k + 1), hull }
    }

    /// Reads n, k, the Hermitian hull and the best available distance
    /// certificate off an actual code.
    pub fn of_code(code: &Code) -> Result<CodeParams> {
        let f = code.field();
        let q = f.subfield_order()?;
        let hull = code.hull(InnerProduct::Hermitian)?.hull_dim;
        let (n, k) = (code.length(), code.dimension());
        let d = mds_certificate(code)?.distance;
        let d_dual = d.filter(|&d| d == n - k + 1).map(|_| k + 1);
        Ok(CodeParams { q, n, k, d, d_dual, hull })
    }
}

/// [[n, k−l, d; n−k−l]] and [[n, n−k−l, d⊥; k−l]].
pub fn hermitian_construction(p: &CodeParams) -> Result<(EaqeccParams, EaqeccParams)> {
    let (Some(d), Some(dd)) = (p.d, p.d_dual) else {
        return Err(Error::UnknownDistance);
    };
    if p.hull > p.k || p.k > p.n {
        return Err(Error::RangeViolation(format!("hull {} with [n,k] = [{},{}]", p.hull, p.n, p.k)));
    }
    let (n, k, l) = (p.n as i64, p.k as i64, p.hull as i64);
    let prov = Provenance::bare(p.k, p.hull, 0, p.hull);
    let first = EaqeccParams::new(p.q, n, k - l, d as i64, n - k - l, 0, prov)?;
    let second = EaqeccParams::new(p.q, n, n - k - l, dd as i64, k - l, 0, prov)?;
    if d == p.n - p.k + 1 && !first.mds.is_mds() && !second.mds.is_mds() {
        return Err(Error::PredictionViolated { rule: "hermitian construction MDS output".into(), predicted: 1, computed: 0 });
    }
    Ok((first, second))
}

fn rule_pre(n: usize, k: usize, l: usize) -> Result<()> {
    if 2 * k > n || l > k {
        return Err(Error::RangeViolation(format!("need 2k <= n and l <= k, got n={n} k={k} l={l}")));
    }
    Ok(())
}

/// [[n+i, n+i−k−s, k+1; k−s]] for 0 ≤ i ≤ min(l, q²+1−n), 0 ≤ s ≤ l−i.
pub fn rule_longer_length(n: usize, k: usize, l: usize, q: u32) -> Result<Vec<EaqeccParams>> {
    rule_pre(n, k, l)?;
    if q <= 2 {
        return Err(Error::RangeViolation("q must exceed 2".into()));
    }
    let top = l.min((q as usize * q as usize + 1).saturating_sub(n));
    let mut out = Vec::new();
    for i in 0..=top {
        for s in 0..=l - i {
            let (n, k, i, s) = (n as i64, k as i64, i as i64, s as i64);
            out.push(EaqeccParams::new(q, n + i, n + i - k - s, k + 1, k - s, 3, Provenance::bare(k as usize, l, i, s as usize))?);
        }
    }
    Ok(out)
}

/// [[n, n−k−i−s, k+i+1; k+i−s]] for 0 ≤ i ≤ min(l, n/2−k), 0 ≤ s ≤ l−i.
pub fn rule_larger_distance(n: usize, k: usize, l: usize, q: u32) -> Result<Vec<EaqeccParams>> {
    rule_pre(n, k, l)?;
    if n > q as usize * q as usize {
        return Err(Error::RangeViolation(format!("n={n} exceeds q^2")));
    }
    let top = l.min(n / 2 - k);
    let mut out = Vec::new();
    for i in 0..=top {
        for s in 0..=l - i {
            let (n, k, i, s) = (n as i64, k as i64, i as i64, s as i64);
            out.push(EaqeccParams::new(q, n, n - k - i - s, k + i + 1, k + i - s, 1, Provenance::bare(k as usize, l, i, s as usize))?);
        }
    }
    Ok(out)
}

/// [[n+i, n−k−s, k+i+1; k+i−s]] for 0 ≤ i ≤ min(l, q²+1−n, n−2k), 0 ≤ s ≤ l−i.
pub fn rule_both(n: usize, k: usize, l: usize, q: u32) -> Result<Vec<EaqeccParams>> {
    rule_pre(n, k, l)?;
    let top = l.min((q as usize * q as usize + 1).saturating_sub(n)).min(n - 2 * k);
    let mut out = Vec::new();
    for i in 0..=top {
        for s in 0..=l - i {
            let (n, k, i, s) = (n as i64, k as i64, i as i64, s as i64);
            out.push(EaqeccParams::new(q, n + i, n - k - s, k + i + 1, k + i - s, 5, Provenance::bare(k as usize, l, i, s as usize))?);
        }
    }
    Ok(out)
}

/// The six shapes for one (n, k, l): (shape, i, s, [[N, K, D; C]]).
pub fn six_shapes(q: u32, n: usize, k: usize, l: usize) -> Vec<(u8, i64, usize, [i64; 4])> {
    let (ni, ki, li) = (n as i64, k as i64, l as i64);
    let qq = q as i64 * q as i64;
    let mut out = Vec::new();
    for i in 0..=li.min(ni / 2 - ki) {
        for s in 0..=li - i {
            out.push((1, i, s as usize, [ni, ni - ki - i - s, ki + i + 1, ki + i - s]));
            out.push((2, i, s as usize, [ni, ki + i - s, ni - ki - i + 1, ni - ki - i - s]));
        }
    }
    let top = li.min(qq + 1 - ni);
    for shape in 3..=6u8 {
        for i in -li..=top {
            for s in 0..=li - i.abs() {
                let t = match shape {
                    3 => [ni + i, ni + i - ki - s, ki + 1, ki - s],
                    4 => [ni + i, ki - s, ni + i - ki + 1, ni + i - ki - s],
                    5 => [ni + i, ni - ki - s, ki + i + 1, ki + i - s],
                    _ => [ni + i, ki + i - s, ni - ki + 1, ni - ki - s],
                };
                out.push((shape, i, s as usize, t));
            }
        }
    }
    out
}

/// Every tuple of the six shapes over the family's (t, k, l) ranges, keeping
/// the smallest shape id for duplicates.
pub fn theorem_q22_enumerate(spec: &FamilySpec) -> Result<Vec<EaqeccParams>> {
    if spec.q <= 2 {
        return Err(Error::BadParameters("q must exceed 2".into()));
    }
    let mut seen: BTreeMap<Tuple, EaqeccParams> = BTreeMap::new();
    for k in 1..=spec.n / 2 {
        let Ok(b) = hull_lb_formula(spec, k, TRange::Ceil) else { continue };
        for (shape, i, s, [n, kl, d, c]) in six_shapes(spec.q, spec.n, k, b.l) {
            let prov = Provenance { family: Some(spec.family), t: Some(b.t), branch: Some(b.branch), k, l: b.l, i, s };
            let p = EaqeccParams::new(spec.q, n, kl, d, c, shape, prov)?;
            seen.entry(p.tuple()).or_insert(p);
        }
    }
    Ok(seen.into_values().collect())
}

/// One row of the distance/entanglement summary: shape 1 at i = 0, s = l,
/// grouped by the branch that fixes l.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub q: u32,
    pub family: Family,
    pub n: usize,
    pub t: usize,
    pub branch: u8,
    pub d_min: usize,
    pub d_max: usize,
    /// Closed form of the entanglement count in t, q, d and H.
    pub c_formula: &'static str,
    /// (d, c) for every d in the row.
    pub entries: Vec<(usize, usize)>,
}

/// Closed-form c for a summary branch.
pub fn summary_c(family: Family, q: u32, t: usize, branch: u8, d: usize) -> i64 {
    let (q, t, d) = (q as i64, t as i64, d as i64);
    match (family, branch) {
        (Family::FullField, 1) => (t - 1) * (t - 1),
        (Family::FullField, 2) => (t - 1) * (t - 1) + 1,
        (Family::FullField, _) => t * t - 2 * t * q + 2 * d - 2,
        (_, 1) => 2 * (t - 1) * (t - 1),
        (Family::CosetH(h), 2) => {
            let hh = (h as i64 - 1) * (q + 1) / h as i64;
            2 * (t * t - t - t * q + d + hh - 1)
        }
        (_, 2) => 2 * t * t - 2 * t - 2 * t * q + 2 * d + q - 1,
        (_, 3) => 2 * t * t - 2 * t,
        _ => 2 * (t * t - t * q + d - 1),
    }
}

fn c_formula_text(family: Family, branch: u8) -> &'static str {
    match (family, branch) {
        (Family::FullField, 1) => "(t-1)^2",
        (Family::FullField, 2) => "(t-1)^2+1",
        (Family::FullField, _) => "t^2-2tq+2d-2",
        (_, 1) => "2(t-1)^2",
        (Family::CosetH(_), 2) => "2(t^2-t-tq+d+H-1)",
        (_, 2) => "2t^2-2t-2tq+2d+q-1",
        (_, 3) => "2t^2-2t",
        _ => "2(t^2-tq+d-1)",
    }
}

/// Summary rows, each checked against the enumeration (every (d, c) must be
/// the projection of an enumerated tuple) and against the closed form.
pub fn mds_summary_table(spec: &FamilySpec) -> Result<Vec<SummaryRow>> {
    let tuples: BTreeSet<Tuple> = theorem_q22_enumerate(spec)?.iter().map(EaqeccParams::tuple).collect();
    let mut rows: Vec<SummaryRow> = Vec::new();
    for k in 1..=spec.n / 2 {
        let Ok(b) = hull_lb_formula(spec, k, TRange::Ceil) else { continue };
        let (d, c) = (k + 1, k - b.l);
        let t = Tuple { n: spec.n, k: spec.n - k - b.l, d, c };
        if !tuples.contains(&t) {
            return Err(Error::PredictionViolated { rule: format!("summary projection {t}"), predicted: 1, computed: 0 });
        }
        if summary_c(spec.family, spec.q, b.t, b.branch, d) != c as i64 {
            return Err(Error::PredictionViolated { rule: format!("summary closed form at d={d}"), predicted: c, computed: 0 });
        }
        match rows.last_mut() {
            Some(r) if r.t == b.t && r.branch == b.branch && r.d_max + 1 == d => {
                r.d_max = d;
                r.entries.push((d, c));
            }
            _ => rows.push(SummaryRow {
                q: spec.q,
                family: spec.family,
                n: spec.n,
                t: b.t,
                branch: b.branch,
                d_min: d,
                d_max: d,
                c_formula: c_formula_text(spec.family, b.branch),
                entries: vec![(d, c)],
            }),
        }
    }
    Ok(rows)
}

/// A golden row: [[n, offset + c, d; c]] for c_min ≤ c ≤ c_max.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub block: String,
    pub k: usize,
    pub s: usize,
    pub n: usize,
    pub k_log_offset: usize,
    pub d: usize,
    pub c_min: usize,
    pub c_max: usize,
}

impl GoldenRow {
    pub fn tuples(&self) -> Vec<Tuple> {
        (self.c_min..=self.c_max).map(|c| Tuple { n: self.n, k: self.k_log_offset + c, d: self.d, c }).collect()
    }

    pub fn label(&self) -> String {
        format!("{} k={} s={}", self.block, self.k, self.s)
    }
}

const GOLDEN_Q8: &str = include_str!("../data/q8-full-field.csv");
const GOLDEN_Q11: &str = include_str!("../data/q11-coset-h3.csv");
const GOLDEN_Q9: &str = include_str!("../data/q9-coset-2h2.csv");

/// Family specs with shipped golden rows.
pub fn golden_specs() -> Vec<FamilySpec> {
    [(Family::FullField, 8), (Family::CosetH(3), 11), (Family::Coset2H(2), 9)]
        .into_iter()
        .map(|(f, q)| FamilySpec::new(f, q).expect("golden specs are valid"))
        .collect()
}

/// Golden rows for a spec, if any ship.
pub fn golden_rows(spec: &FamilySpec) -> Result<Option<Vec<GoldenRow>>> {
    let text = match (spec.family, spec.q) {
        (Family::FullField, 8) => GOLDEN_Q8,
        (Family::CosetH(3), 11) => GOLDEN_Q11,
        (Family::Coset2H(2), 9) => GOLDEN_Q9,
        _ => return Ok(None),
    };
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<GoldenRow>, _>>()
        .map(Some)
        .map_err(|e| Error::Descriptor(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    pub rows: usize,
    pub tuples: usize,
    /// Golden tuples absent from the enumeration, with their row label.
    pub missing: Vec<(String, Tuple)>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Diffs the golden rows of `spec` against an enumeration.
pub fn golden_check(spec: &FamilySpec, enumerated: &[EaqeccParams]) -> Result<GoldenReport> {
    let rows = golden_rows(spec)?.ok_or_else(|| Error::BadParameters(format!("no golden rows for {} at q={}", spec.family, spec.q)))?;
    let have: BTreeSet<Tuple> = enumerated.iter().map(EaqeccParams::tuple).collect();
    let mut missing = Vec::new();
    let mut tuples = 0;
    for r in &rows {
        for t in r.tuples() {
            tuples += 1;
            if !have.contains(&t) {
                missing.push((r.label(), t));
            }
        }
    }
    Ok(GoldenReport { rows: rows.len(), tuples, missing })
}

/// Codes actually built for a family: for each (length, dimension), the
/// largest Hermitian hull reached. Every smaller hull was reached too, one
/// rank-certified scaling step at a time.
#[derive(Clone, Debug, Default, Serialize)]
pub struct WitnessSet {
    pub achieved: BTreeMap<(usize, usize), usize>,
    pub reduction_steps: usize,
}

impl WitnessSet {
    fn hull_at(&self, n: usize, k: usize) -> Option<usize> {
        self.achieved.get(&(n, k)).copied()
    }

    /// The code (N, K, hull) behind a tuple, if one was built.
    pub fn source_of(&self, q: u32, t: Tuple) -> Option<CodeParams> {
        // Output 2: K = d − 1, hull = K − c. Output 1: K = n − d + 1, hull = K − k.
        let cands = [
            t.d.checked_sub(1).and_then(|kk| kk.checked_sub(t.c).map(|h| (kk, h))),
            (t.n + 1).checked_sub(t.d).and_then(|kk| kk.checked_sub(t.k).map(|h| (kk, h))),
        ];
        for (kk, h) in cands.into_iter().flatten() {
            if kk == 0 || kk > t.n {
                continue;
            }
            if self.hull_at(t.n, kk).map_or(false, |top| h <= top) {
                let p = CodeParams::mds(q, t.n, kk, h);
                let (a, b) = hermitian_construction(&p).ok()?;
                if a.tuple() == t || b.tuple() == t {
                    return Some(p);
                }
            }
        }
        None
    }

    fn record(&mut self, out: &Code) -> Result<()> {
        if out.as_grs().is_none() {
            return Err(Error::BadCode("witness lost its GRS presentation".into()));
        }
        let (n, k) = (out.length(), out.dimension());
        let hull = out.hull(InnerProduct::Hermitian)?.hull_dim;
        if self.hull_at(n, k).map_or(false, |h| h >= hull) {
            return Ok(());
        }
        if hull > 0 {
            let red = hull_reduce(out, 0, InnerProduct::Hermitian)?;
            let walked: Vec<usize> = red.steps.iter().map(|s| s.hull_after).collect();
            let expect: Vec<usize> = (0..hull).rev().collect();
            if walked != expect || red.code.as_grs().is_none() {
                return Err(Error::PredictionViolated { rule: "witness reduction chain".into(), predicted: 0, computed: red.computed.hull_dim });
            }
            self.reduction_steps += walked.len();
        }
        self.achieved.insert((n, k), hull);
        Ok(())
    }
}

fn best_over_lambda(code: &GrsCode, step: impl Fn(&GrsCode, crate::Elem) -> Result<RuleOutcome>) -> Result<GrsCode> {
    let f = code.field();
    let mut best: Option<(usize, GrsCode)> = None;
    for lambda in f.subfield_elements()? {
        if lambda.is_zero() {
            continue;
        }
        let out = step(code, lambda)?;
        let h = out.computed.hull_dim;
        if best.as_ref().map_or(true, |(bh, _)| h > *bh) {
            best = Some((h, out.grs().expect("rules return GRS codes").clone()));
        }
    }
    best.map(|(_, c)| c).ok_or_else(|| Error::BadParameters("GF(q)* is empty".into()))
}

/// Builds the family code at every dimension, then the length and
/// length-and-dimension extension chains (best λ at each step), and reduces
/// each to hull 0.
pub fn build_witnesses(fc: &FamilyCode, max_i: usize) -> Result<WitnessSet> {
    let spec = fc.spec;
    if spec.q > MAX_WITNESS_Q {
        return Err(Error::BadParameters(format!("witness path needs q <= {MAX_WITNESS_Q}, got {}", spec.q)));
    }
    let qq = spec.q as usize * spec.q as usize;
    let mut ws = WitnessSet::default();
    for k in 1..=spec.n / 2 {
        let base = fc.with_dimension(k)?;
        ws.record(&Code::Grs(base.clone()))?;
        let Ok(b) = hull_lb_formula(&spec, k, TRange::Ceil) else { continue };
        let top = b.l.min(max_i).min(qq + 1 - spec.n);
        let mut cur = base.clone();
        for _ in 0..top {
            cur = if cur.n() < qq {
                best_over_lambda(&cur, extend_length_zero)?
            } else {
                best_over_lambda(&cur, extend_length_infty)?
            };
            ws.record(&Code::Grs(cur.clone()))?;
        }
        let mut cur = base;
        for _ in 0..top {
            let dir = if cur.n() < qq { Direction::Down } else { Direction::Up };
            cur = best_over_lambda(&cur, |c, l| extend_both(c, Some(l), dir))?;
            ws.record(&Code::Grs(cur.clone()))?;
        }
    }
    Ok(ws)
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub witnessable: usize,
    pub witnessed: usize,
    /// Witnessable tuples no built code reproduces.
    pub unwitnessed: Vec<Tuple>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.unwitnessed.is_empty()
    }
}

/// Builds the witnesses for the spec and marks each tuple reproduced by an
/// actual code.
pub fn witness(spec: &FamilySpec, tuples: &mut [EaqeccParams]) -> Result<(WitnessSet, WitnessReport)> {
    let fc = build_family(*spec)?;
    let max_i = tuples.iter().filter(|p| p.witnessable).map(|p| p.provenance.i.max(0) as usize).max().unwrap_or(0);
    let ws = build_witnesses(&fc, max_i)?;
    let mut rep = WitnessReport { witnessable: 0, witnessed: 0, unwitnessed: Vec::new() };
    for p in tuples.iter_mut() {
        p.witnessed = ws.source_of(spec.q, p.tuple()).is_some();
        if p.witnessable {
            rep.witnessable += 1;
            if p.witnessed {
                rep.witnessed += 1;
            } else {
                rep.unwitnessed.push(p.tuple());
            }
        }
    }
    Ok((ws, rep))
}
