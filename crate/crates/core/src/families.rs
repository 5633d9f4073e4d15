//! Explicit GRS families with prescribed Hermitian Gram patterns and the
//! piecewise hull formulas attached to them.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{tower_for, Elem, Field};
use crate::grs::{GrsCode, InnerProduct};
use crate::linalg::Matrix;
use crate::rules::{RuleOutcome, RuleTag};

const SEARCH_SEED: u64 = 0x6875_6c6c;
const RANDOM_TRIES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// All of GRS(q²) evaluated at every field element; n = q².
    FullField,
    /// h−1 cosets of ⟨θ^h⟩; n = (h−1)(q²−1)/h.
    CosetH(u32),
    /// 2h−1 cosets of ⟨θ^{2h}⟩; n = (2h−1)(q²−1)/(2h).
    Coset2H(u32),
}

impl Family {
    pub fn number(self) -> u8 {
        match self {
            Family::FullField => 1,
            Family::CosetH(_) => 2,
            Family::Coset2H(_) => 3,
        }
    }

    pub fn h(self) -> Option<u32> {
        match self {
            Family::FullField => None,
            Family::CosetH(h) | Family::Coset2H(h) => Some(h),
        }
    }

    /// Family by number (1, 2, 3) and optional h.
    pub fn from_number(number: u8, h: Option<u32>) -> Result<Family> {
        match (number, h) {
            (1, _) => Ok(Family::FullField),
            (2, Some(h)) => Ok(Family::CosetH(h)),
            (3, Some(h)) => Ok(Family::Coset2H(h)),
            (2 | 3, None) => Err(Error::BadParameters(format!("family {number} needs h"))),
            _ => Err(Error::BadParameters(format!("unknown family {number}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::FullField => write!(f, "full-field"),
            Family::CosetH(h) => write!(f, "coset-h(h={h})"),
            Family::Coset2H(h) => write!(f, "coset-2h(h={h})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TRange {
    Ceil,
    Floor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub q: u32,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, q: u32) -> Result<FamilySpec> {
        if crate::field::prime_power(q).is_none() {
            return Err(Error::BadParameters(format!("q={q} is not a prime power")));
        }
        let qq = (q as usize) * (q as usize);
        let n = match family {
            Family::FullField => qq,
            Family::CosetH(h) => {
                if h < 2 || (q + 1) % h != 0 {
                    return Err(Error::BadParameters(format!("coset-h needs h >= 2 dividing q+1 = {}", q + 1)));
                }
                if (q + 1) / h < 2 {
                    return Err(Error::BadParameters(format!("coset-h needs (q+1)/h >= 2, got h={h}")));
                }
                (h as usize - 1) * (qq - 1) / h as usize
            }
            Family::Coset2H(h) => {
                if q % 2 == 0 {
                    return Err(Error::BadParameters("coset-2h needs q odd".into()));
                }
                if h == 0 || (q + 1) % h != 0 || ((q + 1) / h) % 2 == 0 || (q + 1) / h < 3 {
                    return Err(Error::BadParameters(format!("coset-2h needs (q+1)/h odd and >= 3 (q={q}, h={h})")));
                }
                (2 * h as usize - 1) * (qq - 1) / (2 * h as usize)
            }
        };
        Ok(FamilySpec { family, q, n })
    }

    pub fn t_max(&self, range: TRange) -> usize {
        let d = 2 * self.q as usize;
        match range {
            TRange::Ceil => self.n.div_ceil(d),
            TRange::Floor => self.n / d,
        }
    }

    /// ⌊·⌋ for family 3, ⌈·⌉ otherwise.
    pub fn default_t_range(&self) -> TRange {
        match self.family {
            Family::Coset2H(_) => TRange::Floor,
            _ => TRange::Ceil,
        }
    }

    /// Index j0 of the exceptional pair (q−1, j0); None for the full field.
    pub fn exceptional_index(&self) -> Option<usize> {
        let q = self.q as usize;
        match self.family {
            Family::FullField => None,
            Family::CosetH(h) => Some((q + 1) / h as usize - 2),
            Family::Coset2H(_) => Some((q + 1) / 2 - 2),
        }
    }

    /// Gram positions (within the q×q block) allowed to be nonzero.
    pub fn exceptional_pairs(&self) -> Vec<(usize, usize)> {
        let q = self.q as usize;
        match self.exceptional_index() {
            None => vec![(q - 1, q - 1)],
            Some(j) => {
                let mut v = vec![(q - 1, j), (j, q - 1)];
                v.dedup();
                v
            }
        }
    }
}

/// Gram pattern of the q×q leading block of a family code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramPattern {
    pub nonzero: Vec<(usize, usize)>,
    pub expected: Vec<(usize, usize)>,
    /// Positions where `nonzero` and `expected` disagree.
    pub deviations: Vec<(usize, usize)>,
}

impl GramPattern {
    pub fn holds(&self) -> bool {
        self.deviations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct FamilyCode {
    pub spec: FamilySpec,
    /// The [n, q] code on the family's points and multipliers.
    pub code: GrsCode,
    /// u = v^{q+1}, all in GF(q)*.
    pub u: Vec<Elem>,
    pub pattern: GramPattern,
}

impl FamilyCode {
    pub fn field(&self) -> &Arc<Field> {
        self.code.field()
    }

    /// GRS_k(a, v) on the family's data.
    pub fn with_dimension(&self, k: usize) -> Result<GrsCode> {
        self.code.with_dimension(k)
    }
}

/// Coordinates of x ∈ GF(q²) in the basis {1, α}, α the polynomial-basis
/// generator.
fn split(f: &Field, alpha: Elem, alpha_diff_inv: Elem, x: Elem) -> (Elem, Elem) {
    let xq = f.conj(x).expect("tower field");
    let x1 = f.mul(f.sub(x, xq), alpha_diff_inv);
    let x0 = f.sub(x, f.mul(x1, alpha));
    (x0, x1)
}

/// Finds u ∈ (GF(q)*)^n with Σ_l u_l a_l^{i+qj} = 0 for every constrained
/// (i, j).
pub fn solve_selforth_multipliers(field: &Arc<Field>, a: &[Elem], constraints: &[(usize, usize)]) -> Result<Vec<Elem>> {
    let f = field.clone();
    let q = f.subfield_order()? as u64;
    let alpha = f.elem(f.characteristic())?;
    let alpha_diff_inv = f.inv(f.sub(alpha, f.conj(alpha)?))?;
    let mut rows = Vec::with_capacity(2 * constraints.len());
    for &(i, j) in constraints {
        let e = i as u64 + q * j as u64;
        let (r0, r1): (Vec<Elem>, Vec<Elem>) = a.iter().map(|&x| split(&f, alpha, alpha_diff_inv, f.powu(x, e))).unzip();
        rows.push(r0);
        rows.push(r1);
    }
    let basis = if rows.is_empty() {
        (0..a.len()).map(|l| (0..a.len()).map(|c| if c == l { Elem::ONE } else { Elem::ZERO }).collect()).collect()
    } else {
        Matrix::from_rows(&f, rows)?.kernel()
    };
    find_all_nonzero(&f, &basis).ok_or_else(|| {
        Error::NoAllNonzeroSolution(format!("kernel of dimension {} over GF({q}) has no vector with all {} coordinates nonzero", basis.len(), a.len()))
    })
}

fn combine(f: &Field, basis: &[Vec<Elem>], coeffs: &[Elem]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; basis[0].len()];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(b) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

fn find_all_nonzero(f: &Field, basis: &[Vec<Elem>]) -> Option<Vec<Elem>> {
    let ok = |v: &Vec<Elem>| v.iter().all(|x| !x.is_zero());
    match basis.len() {
        0 => return None,
        1 => return ok(&basis[0]).then(|| basis[0].clone()),
        _ => {}
    }
    let sub = f.subfield_elements().ok()?;
    let d = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<Elem> = (0..d).map(|_| sub[rng.gen_range(0..sub.len())]).collect();
        let v = combine(f, basis, &coeffs);
        if ok(&v) {
            return Some(v);
        }
    }
    if d <= 3 {
        let total = sub.len().pow(d as u32);
        for idx in 0..total {
            let mut r = idx;
            let coeffs: Vec<Elem> = (0..d).map(|_| {
                let c = sub[r % sub.len()];
                r /= sub.len();
                c
            })
            .collect();
            let v = combine(f, basis, &coeffs);
            if ok(&v) {
                return Some(v);
            }
        }
    }
    None
}

fn all_pairs(q: usize) -> Vec<(usize, usize)> {
    (0..q).flat_map(|i| (0..q).map(move |j| (i, j))).collect()
}

fn pattern_of(code: &GrsCode, expected: Vec<(usize, usize)>) -> Result<GramPattern> {
    let gram = code.gram(InnerProduct::Hermitian)?;
    let q = code.dimension();
    let nonzero: Vec<(usize, usize)> = all_pairs(q).into_iter().filter(|&(i, j)| !gram.get(i, j).is_zero()).collect();
    let a: BTreeSet<_> = nonzero.iter().copied().collect();
    let b: BTreeSet<_> = expected.iter().copied().collect();
    let deviations = a.symmetric_difference(&b).copied().collect();
    Ok(GramPattern { nonzero, expected, deviations })
}

fn assemble(spec: FamilySpec, field: &Arc<Field>, a: Vec<Elem>, u: Vec<Elem>) -> Result<FamilyCode> {
    let v = u.iter().map(|&x| field.norm_root(x)).collect::<Result<Vec<_>>>()?;
    let code = GrsCode::new(field, a, v, spec.q as usize, 0, false)?;
    let pattern = pattern_of(&code, spec.exceptional_pairs())?;
    Ok(FamilyCode { spec, code, u, pattern })
}

/// Evaluation points: 0 first, then the remaining field elements by rep.
pub fn build_full_field(q: u32) -> Result<FamilyCode> {
    let spec = FamilySpec::new(Family::FullField, q)?;
    let f = tower_for(q)?;
    let a: Vec<Elem> = f.elements().collect();
    let constraints: Vec<_> = all_pairs(q as usize).into_iter().filter(|p| !spec.exceptional_pairs().contains(p)).collect();
    let u = solve_selforth_multipliers(&f, &a, &constraints)?;
    let fc = assemble(spec, &f, a, u)?;
    if !fc.pattern.holds() {
        return Err(Error::PredictionViolated { rule: "full-field Gram pattern".into(), predicted: 1, computed: fc.pattern.nonzero.len() });
    }
    Ok(fc)
}

/// ∪_{c<cosets} θ^c ⟨θ^step⟩, coset by coset, ascending powers inside each.
fn coset_points(f: &Field, step: usize, cosets: usize) -> Vec<Elem> {
    let size = (f.order() as usize - 1) / step;
    (0..cosets).flat_map(|c| (0..size).map(move |s| (c + step * s) as i64)).map(|e| f.exp(e)).collect()
}

fn build_cosets(spec: FamilySpec, step: usize, cosets: usize) -> Result<FamilyCode> {
    let f = tower_for(spec.q)?;
    let a = coset_points(&f, step, cosets);
    let constraints: Vec<_> = all_pairs(spec.q as usize).into_iter().filter(|p| !spec.exceptional_pairs().contains(p)).collect();
    let u = solve_selforth_multipliers(&f, &a, &constraints)?;
    assemble(spec, &f, a, u)
}

pub fn build_coset_h(q: u32, h: u32) -> Result<FamilyCode> {
    let spec = FamilySpec::new(Family::CosetH(h), q)?;
    build_cosets(spec, h as usize, h as usize - 1)
}

/// Requires the exact Gram pattern with a single exceptional pair.
pub fn build_coset_2h(q: u32, h: u32) -> Result<FamilyCode> {
    let spec = FamilySpec::new(Family::Coset2H(h), q)?;
    build_cosets(spec, 2 * h as usize, 2 * h as usize - 1)
}

/// Same points as `build_coset_2h`, with multipliers making the leading
/// (q−1)-block self-orthogonal and then zeroing as many further symmetric
/// pairs of the last row and column as still admit a solution.
pub fn build_coset_2h_relaxed(q: u32, h: u32) -> Result<FamilyCode> {
    let spec = FamilySpec::new(Family::Coset2H(h), q)?;
    let f = tower_for(q)?;
    let qs = q as usize;
    let a = coset_points(&f, 2 * h as usize, 2 * h as usize - 1);
    let mut constraints: Vec<(usize, usize)> = all_pairs(qs - 1);
    let mut u = solve_selforth_multipliers(&f, &a, &constraints)?;
    for j in 0..qs {
        let mut extra = vec![(qs - 1, j)];
        if j != qs - 1 {
            extra.push((j, qs - 1));
        }
        let mut trial = constraints.clone();
        trial.extend(&extra);
        if let Ok(found) = solve_selforth_multipliers(&f, &a, &trial) {
            constraints = trial;
            u = found;
        }
    }
    assemble(spec, &f, a, u)
}

/// Family code for any valid spec; the family-3 construction falls back to
/// the relaxed pattern when the exact one has no solution.
pub fn build_family(spec: FamilySpec) -> Result<FamilyCode> {
    match spec.family {
        Family::FullField => build_full_field(spec.q),
        Family::CosetH(h) => build_coset_h(spec.q, h),
        Family::Coset2H(h) => match build_coset_2h(spec.q, h) {
            Err(Error::NoAllNonzeroSolution(_)) => build_coset_2h_relaxed(spec.q, h),
            other => other,
        },
    }
}

/// Predicted count of nonzero entries in the leading k×k Gram block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EntryCount {
    pub value: usize,
    /// False when the count is only an upper bound.
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaBound {
    pub t: usize,
    pub branch: u8,
    pub l: usize,
    /// Number of (t, branch) pairs containing k.
    pub matches: usize,
    pub entries: EntryCount,
}

/// The piecewise hull lower bound l for dimension k; overlapping branches
/// resolve to the largest l.
pub fn hull_lb_formula(spec: &FamilySpec, k: usize, range: TRange) -> Result<FormulaBound> {
    if k == 0 || k > spec.n / 2 {
        return Err(Error::OutOfRange(format!("k={k} outside 1..={}", spec.n / 2)));
    }
    let q = spec.q as i64;
    let ki = k as i64;
    let mut found: Vec<FormulaBound> = Vec::new();
    for t in 1..=spec.t_max(range) as i64 {
        let mut push = |branch: u8, lo: i64, hi: i64, lambda: i64, exact: bool, entries_per: i64| {
            if lo <= ki && ki <= hi {
                let l = ki - entries_per * lambda;
                if l >= 0 {
                    found.push(FormulaBound {
                        t: t as usize,
                        branch,
                        l: l as usize,
                        matches: 0,
                        entries: EntryCount { value: (entries_per * lambda) as usize, exact },
                    });
                }
            }
        };
        match spec.family {
            Family::FullField => {
                push(1, (t - 1) * q + 1, t * q - t, (t - 1) * (t - 1), true, 1);
                push(2, t * q - t + 1, t * q - t + 1, (t - 1) * (t - 1) + 1, true, 1);
                push(3, t * q - t + 2, t * q, t * t - 2 * t * q + 2 * ki, false, 1);
            }
            Family::CosetH(_) | Family::Coset2H(_) => {
                let hh = match spec.family {
                    Family::CosetH(h) => (h as i64 - 1) * (q + 1) / h as i64,
                    _ => (q + 1) / 2,
                };
                push(1, (t - 1) * q + 1, t * q - t - hh + 1, (t - 1) * (t - 1), true, 2);
                push(2, t * q - t - hh + 2, t * q - hh, t * t - t - t * q + ki + hh, true, 2);
                push(3, t * q - hh + 1, t * q - t, t * t - t, true, 2);
                push(4, t * q - t + 1, t * q, t * t - t * q + ki, false, 2);
            }
        }
    }
    let matches = found.len();
    let best = found.into_iter().max_by_key(|b| (b.l, std::cmp::Reverse(b.t), std::cmp::Reverse(b.branch)));
    best.map(|b| FormulaBound { matches, ..b }).ok_or_else(|| Error::OutOfRange(format!("k={k} lies in no branch")))
}

/// GRS_k on the family data, with the computed hull asserted against the
/// formula bound.
pub fn build_family_code(fc: &FamilyCode, k: usize) -> Result<RuleOutcome> {
    let b = hull_lb_formula(&fc.spec, k, fc.spec.default_t_range()).or_else(|_| hull_lb_formula(&fc.spec, k, TRange::Ceil))?;
    let code = fc.with_dimension(k)?;
    RuleOutcome::checked(code.into(), b.l, false, RuleTag::FamilyCode { t: b.t, branch: b.branch }, InnerProduct::Hermitian)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub k: usize,
    pub formula: Option<FormulaBound>,
    pub hull: usize,
    /// Nonzero entries of the leading k×k Hermitian Gram block.
    pub nonzero_entries: usize,
}

impl SweepRow {
    /// Computed hull ≥ l (true when no branch applies).
    pub fn meets_formula(&self) -> bool {
        self.formula.map_or(true, |b| self.hull >= b.l)
    }

    /// Entry count agrees with the formula's count (≤ for bound branches).
    pub fn census_ok(&self) -> bool {
        self.formula.map_or(true, |b| if b.entries.exact { self.nonzero_entries == b.entries.value } else { self.nonzero_entries <= b.entries.value })
    }
}

/// Hull and Gram census for k = 1..=⌊n/2⌋.
pub fn sweep(fc: &FamilyCode, range: TRange) -> Result<Vec<SweepRow>> {
    let kmax = fc.spec.n / 2;
    let gram = fc.with_dimension(kmax)?.gram(InnerProduct::Hermitian)?;
    let mut out = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let lead = gram.leading(k);
        let nonzero = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).filter(|&(i, j)| !lead.get(i, j).is_zero()).count();
        out.push(SweepRow { k, formula: hull_lb_formula(&fc.spec, k, range).ok(), hull: k - lead.rank(), nonzero_entries: nonzero });
    }
    Ok(out)
}
