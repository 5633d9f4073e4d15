//! Propagation rules: lengthen, raise the dimension, or both, while keeping
//! track of the Hermitian hull; hull reduction by coordinate scaling; and the
//! block structure of the full q²×q² Gram matrix.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::grs::{gram, hull_basis, Code, GrsCode, HullReport, InnerProduct};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Adds g_{k1+k} (and the ∞ column for `extend_both`).
    Up,
    /// Adds g_{k1-1} (and the point 0 for `extend_both`).
    Down,
}

/// Which case of the dimension-raising rules applies to the added row g.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// g ⊥ C and the new corner of the Gram matrix is zero.
    Orthogonal,
    /// g is not orthogonal to the hull.
    OutsideHullDual,
    /// g is orthogonal to the hull.
    InsideHullDual,
}

impl Case {
    fn number(self) -> u8 {
        match self {
            Case::Orthogonal => 1,
            Case::OutsideHullDual => 2,
            Case::InsideHullDual => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum RuleTag {
    ExtendInfinity,
    ExtendZero { shift: Option<u32> },
    IncreaseDim { direction: Direction, case: Case, corner_nonzero: bool },
    ExtendBoth { direction: Direction, case: Case, corner_nonzero: bool, shift: Option<u32> },
    Reduce { steps: usize },
    SelfOrthogonalExtension,
    FamilyCode { t: usize, branch: u8 },
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = |d: &Direction| if *d == Direction::Up { "up" } else { "down" };
        match self {
            RuleTag::ExtendInfinity => write!(f, "extend-length/infinity"),
            RuleTag::ExtendZero { shift: None } => write!(f, "extend-length/zero"),
            RuleTag::ExtendZero { shift: Some(b) } => write!(f, "extend-length/zero after shift by {b}"),
            RuleTag::IncreaseDim { direction, case, corner_nonzero } => {
                write!(f, "increase-dim/{} case {}", dir(direction), case.number())?;
                if *corner_nonzero { write!(f, "+4") } else { Ok(()) }
            }
            RuleTag::ExtendBoth { direction, case, corner_nonzero, shift } => {
                write!(f, "extend-both/{} case {}", dir(direction), case.number())?;
                if *corner_nonzero {
                    write!(f, "+4")?;
                }
                match shift {
                    Some(b) => write!(f, " after shift by {b}"),
                    None => Ok(()),
                }
            }
            RuleTag::Reduce { steps } => write!(f, "reduce ({steps} scalings)"),
            RuleTag::SelfOrthogonalExtension => write!(f, "self-orthogonal-extension"),
            RuleTag::FamilyCode { t, branch } => write!(f, "family-code t={t} branch {branch}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RuleOutcome {
    pub code: Code,
    /// Lower bound on the hull of `code` predicted before construction.
    pub predicted_hull_lb: usize,
    /// Whether the prediction is an exact value.
    pub exact: bool,
    pub computed: HullReport,
    pub rule_tag: RuleTag,
}

impl RuleOutcome {
    pub(crate) fn checked(code: Code, predicted: usize, exact: bool, rule_tag: RuleTag, inner: InnerProduct) -> Result<RuleOutcome> {
        let computed = code.hull(inner)?;
        let ok = if exact { computed.hull_dim == predicted } else { computed.hull_dim >= predicted };
        if !ok {
            return Err(Error::PredictionViolated { rule: rule_tag.to_string(), predicted, computed: computed.hull_dim });
        }
        Ok(RuleOutcome { code, predicted_hull_lb: predicted, exact, computed, rule_tag })
    }

    pub fn grs(&self) -> Option<&GrsCode> {
        self.code.as_grs()
    }
}

fn tower(field: &Field) -> Result<u32> {
    field.subfield_order()
}

fn check_lambda(field: &Field, lambda: Elem) -> Result<()> {
    if lambda.is_zero() || !field.in_subfield(lambda)? {
        return Err(Error::LambdaNotInSubfield(lambda.rep()));
    }
    Ok(())
}

fn require_plain(code: &GrsCode) -> Result<()> {
    if code.is_extended() { Err(Error::AlreadyExtended) } else { Ok(()) }
}

/// Hermitian product ⟨x, y⟩ = Σ x_i y_i^q.
pub fn herm(f: &Field, x: &[Elem], y: &[Elem]) -> Elem {
    let m = f.degree() / 2;
    x.iter().zip(y).fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, f.frobenius(b, m))))
}

fn with_corner(g: &Matrix, r: usize, lambda: Elem) -> Matrix {
    let mut m = g.clone();
    let f = g.field().clone();
    m.set(r, r, f.add(m.get(r, r), lambda));
    m
}

/// GRS_k(a, ξv, ∞) with ξ^{q+1} = λ^{-1}.
pub fn extend_length_infty(code: &GrsCode, lambda: Elem) -> Result<RuleOutcome> {
    let f = code.field().clone();
    tower(&f)?;
    require_plain(code)?;
    check_lambda(&f, lambda)?;
    let k = code.dimension();
    let gg = code.gram(InnerProduct::Hermitian)?;
    let predicted = k - with_corner(&gg, k - 1, lambda).rank();
    let xi = f.norm_root(f.inv(lambda)?)?;
    let v = code.multipliers().iter().map(|&x| f.mul(xi, x)).collect();
    let out = GrsCode::new(&f, code.points().to_vec(), v, k, code.k1(), true)?;
    RuleOutcome::checked(out.into(), predicted, true, RuleTag::ExtendInfinity, InnerProduct::Hermitian)
}

/// GRS_k((0, a), (ξ, v)) with ξ^{q+1} = λ, shifting the points first when 0 ∈ a.
pub fn extend_length_zero(code: &GrsCode, lambda: Elem) -> Result<RuleOutcome> {
    let f = code.field().clone();
    tower(&f)?;
    check_lambda(&f, lambda)?;
    if code.n() >= f.order() as usize {
        return Err(Error::FieldFull);
    }
    let (base, shift) = code.normalized().avoid_zero()?;
    let k = base.dimension();
    let gg = base.gram(InnerProduct::Hermitian)?;
    let predicted = k - with_corner(&gg, 0, lambda).rank();
    let xi = f.norm_root(lambda)?;
    let mut a = vec![Elem::ZERO];
    a.extend_from_slice(base.points());
    let mut v = vec![xi];
    v.extend_from_slice(base.multipliers());
    let out = GrsCode::new(&f, a, v, k, 0, base.is_extended())?;
    let tag = RuleTag::ExtendZero { shift: shift.map(Elem::rep) };
    RuleOutcome::checked(out.into(), predicted, true, tag, InnerProduct::Hermitian)
}

/// Classification of a new row g against C = rowspace(G).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub case: Case,
    /// Hull of the bordered code: exact for cases 1 and 2 and whenever the
    /// corner is nonzero, a lower bound otherwise.
    pub predicted: usize,
    pub exact: bool,
    pub corner_nonzero: bool,
}

/// Classifies adding row `g` (Hermitian corner `corner`) to the code with
/// generator `g_mat`.
pub fn classify(g_mat: &Matrix, g: &[Elem], corner: Elem) -> Result<Classification> {
    let f = g_mat.field().clone();
    let k = g_mat.rows();
    let gram = gram(g_mat, InnerProduct::Hermitian)?;
    let l = k - gram.rank();
    let in_dual = (0..k).all(|i| herm(&f, g_mat.row(i), g).is_zero());
    let hb = hull_basis(g_mat, InnerProduct::Hermitian)?;
    let in_hull_dual = (0..hb.rows()).all(|i| herm(&f, hb.row(i), g).is_zero());
    let case = if in_dual && corner.is_zero() {
        Case::Orthogonal
    } else if !in_hull_dual {
        Case::OutsideHullDual
    } else {
        Case::InsideHullDual
    };
    let (mut predicted, mut exact) = match case {
        Case::Orthogonal => (l + 1, true),
        Case::OutsideHullDual => (l - 1, true),
        Case::InsideHullDual => (l, false),
    };
    let corner_nonzero = !corner.is_zero();
    if corner_nonzero {
        // Schur complement: rank of the bordered Gram is 1 + rank(G S G†)
        // with S = corner·E − g†g.
        let gv: Vec<Elem> = (0..k).map(|i| herm(&f, g_mat.row(i), g)).collect();
        let mut s = gram.scale(corner);
        for i in 0..k {
            for j in 0..k {
                let t = f.mul(gv[i], f.conj(gv[j])?);
                s.set(i, j, f.sub(s.get(i, j), t));
            }
        }
        let value = k - s.rank();
        if exact && value != predicted {
            return Err(Error::PredictionViolated { rule: format!("case {} vs Schur complement", case.number()), predicted, computed: value });
        }
        if !exact && value < predicted {
            return Err(Error::PredictionViolated { rule: "case 3 vs Schur complement".into(), predicted, computed: value });
        }
        predicted = value;
        exact = true;
    }
    Ok(Classification { case, predicted, exact, corner_nonzero })
}

/// Adds g_{k1+k} (up) or g_{k1-1} (down) to the generator.
pub fn increase_dim(code: &GrsCode, direction: Direction) -> Result<RuleOutcome> {
    let f = code.field().clone();
    tower(&f)?;
    require_plain(code)?;
    let k = code.dimension();
    if k >= code.n() {
        return Err(Error::DimensionFull);
    }
    let (row, k1) = match direction {
        Direction::Up => (code.k1() + k as i64, code.k1()),
        Direction::Down => {
            if code.points().contains(&Elem::ZERO) {
                return Err(Error::NegativePowerWithZeroPoint);
            }
            (code.k1() - 1, code.k1() - 1)
        }
    };
    let g = code.row(row)?;
    let cls = classify(&code.generator(), &g, herm(&f, &g, &g))?;
    let out = GrsCode::new(&f, code.points().to_vec(), code.multipliers().to_vec(), k + 1, k1, false)?;
    let tag = RuleTag::IncreaseDim { direction, case: cls.case, corner_nonzero: cls.corner_nonzero };
    RuleOutcome::checked(out.into(), cls.predicted, cls.exact, tag, InnerProduct::Hermitian)
}

/// Raises dimension and length together. `lambda = None` requests the
/// cancelling choice λ = −g g†.
///
/// Up: GRS_{k+1}(a, ξv, ∞) with ξ^{q+1} = λ^{-1}.
/// Down: prepends the point 0 with multiplier ξ^{q+1} = λ and the row g_{-1}.
pub fn extend_both(code: &GrsCode, lambda: Option<Elem>, direction: Direction) -> Result<RuleOutcome> {
    let f = code.field().clone();
    tower(&f)?;
    require_plain(code)?;
    let (base, shift) = match direction {
        Direction::Up => {
            if code.dimension() >= code.n() {
                return Err(Error::DimensionFull);
            }
            (code.clone(), None)
        }
        Direction::Down => {
            if code.n() >= f.order() as usize {
                return Err(Error::FieldFull);
            }
            code.normalized().avoid_zero()?
        }
    };
    let k = base.dimension();
    let row = match direction {
        Direction::Up => base.k1() + k as i64,
        Direction::Down => base.k1() - 1,
    };
    let g = base.row(row)?;
    let gg = herm(&f, &g, &g);
    let lambda = match lambda {
        Some(l) => l,
        None if gg.is_zero() => return Err(Error::CornerNotCancellable),
        None => f.neg(gg),
    };
    check_lambda(&f, lambda)?;
    let corner = f.add(gg, lambda);
    let cls = classify(&base.generator(), &g, corner)?;
    let out = match direction {
        Direction::Up => {
            let xi = f.norm_root(f.inv(lambda)?)?;
            let v = base.multipliers().iter().map(|&x| f.mul(xi, x)).collect();
            GrsCode::new(&f, base.points().to_vec(), v, k + 1, base.k1(), true)?
        }
        Direction::Down => {
            let xi = f.norm_root(lambda)?;
            let mut a = vec![Elem::ZERO];
            a.extend_from_slice(base.points());
            let mut v = vec![xi];
            for (&x, &w) in base.points().iter().zip(base.multipliers()) {
                v.push(f.mul(w, f.pow(x, -1)?));
            }
            GrsCode::new(&f, a, v, k + 1, 0, false)?
        }
    };
    let tag = RuleTag::ExtendBoth { direction, case: cls.case, corner_nonzero: cls.corner_nonzero, shift: shift.map(Elem::rep) };
    RuleOutcome::checked(out.into(), cls.predicted, cls.exact, tag, InnerProduct::Hermitian)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScaleStep {
    pub position: usize,
    pub gamma: u32,
    /// Second coordinate of a two-coordinate move.
    pub partner: Option<(usize, u32)>,
    pub hull_after: usize,
}

#[derive(Clone, Debug)]
pub struct ReduceOutcome {
    pub code: Code,
    pub start_hull: usize,
    pub steps: Vec<ScaleStep>,
    pub computed: HullReport,
}

impl ReduceOutcome {
    pub fn into_rule_outcome(self, target: usize) -> RuleOutcome {
        RuleOutcome { code: self.code, predicted_hull_lb: target, exact: true, computed: self.computed, rule_tag: RuleTag::Reduce { steps: self.steps.len() } }
    }
}

/// Gram update for scaling column `c` by a factor whose norm-like power is `factor`.
fn rank_one_update(gram: &Matrix, col: &[Elem], col_op: &[Elem], factor: Elem) -> Matrix {
    let f = gram.field().clone();
    let d = f.sub(factor, Elem::ONE);
    let mut m = gram.clone();
    for i in 0..col.len() {
        if col[i].is_zero() {
            continue;
        }
        let ci = f.mul(d, col[i]);
        for j in 0..col.len() {
            if !col_op[j].is_zero() {
                m.set(i, j, f.add(m.get(i, j), f.mul(ci, col_op[j])));
            }
        }
    }
    m
}

/// Lowers the hull to `target` by scaling single coordinates (falling back to
/// pairs), checking each step by the rank of the updated Gram matrix.
pub fn hull_reduce(code: &Code, target: usize, inner: InnerProduct) -> Result<ReduceOutcome> {
    let f = code.field().clone();
    let e = inner.exponent(&f)?;
    if f.order() <= 4 {
        return Err(Error::FieldTooSmall(format!("field of order {} has no usable scalars", f.order())));
    }
    let start = code.hull(inner)?;
    if target > start.hull_dim {
        return Err(Error::TargetAboveCurrent { target, current: start.hull_dim });
    }
    let k = code.dimension();
    let pe = (f.characteristic() as u64).pow(e);
    let n_group = f.order() as i64 - 1;
    let mut current = code.clone();
    let mut g = current.generator();
    let mut gr = gram(&g, inner)?;
    let mut rank = start.gram_rank;
    let mut steps = Vec::new();

    let factors: Vec<(Elem, Elem)> = {
        let mut seen = HashSet::new();
        (1..n_group)
            .map(|t| f.exp(t))
            .filter_map(|gamma| {
                let fac = f.powu(gamma, pe + 1);
                (fac != Elem::ONE && seen.insert(fac)).then_some((gamma, fac))
            })
            .collect()
    };
    if factors.is_empty() {
        return Err(Error::FieldTooSmall("every scalar preserves the form".into()));
    }

    while k - rank > target {
        let cols: Vec<(Vec<Elem>, Vec<Elem>)> = (0..g.cols())
            .map(|c| {
                let col = g.column(c);
                let op = col.iter().map(|&x| f.powu(x, pe)).collect();
                (col, op)
            })
            .collect();
        let mut chosen = None;
        'single: for (pos, (col, op)) in cols.iter().enumerate() {
            if col.iter().all(|x| x.is_zero()) {
                continue;
            }
            for &(gamma, fac) in &factors {
                let m = rank_one_update(&gr, col, op, fac);
                if m.rank() == rank + 1 {
                    chosen = Some((m, pos, gamma, None));
                    break 'single;
                }
            }
        }
        if chosen.is_none() {
            'pair: for p1 in 0..cols.len() {
                for p2 in p1 + 1..cols.len() {
                    for &(g1, f1) in &factors {
                        let m1 = rank_one_update(&gr, &cols[p1].0, &cols[p1].1, f1);
                        for &(g2, f2) in &factors {
                            let m = rank_one_update(&m1, &cols[p2].0, &cols[p2].1, f2);
                            if m.rank() == rank + 1 {
                                chosen = Some((m, p1, g1, Some((p2, g2))));
                                break 'pair;
                            }
                        }
                    }
                }
            }
        }
        let Some((m, pos, gamma, partner)) = chosen else {
            return Err(Error::SearchExhausted { hull: k - rank });
        };
        current = current.scale_coordinate(pos, gamma)?;
        if let Some((p2, g2)) = partner {
            current = current.scale_coordinate(p2, g2)?;
        }
        g = current.generator();
        gr = gram(&g, inner)?;
        if gr.rank() != m.rank() {
            return Err(Error::PredictionViolated { rule: "hull reduction step".into(), predicted: k - rank - 1, computed: k - gr.rank() });
        }
        rank += 1;
        steps.push(ScaleStep { position: pos, gamma: gamma.rep(), partner: partner.map(|(p, x)| (p, x.rep())), hull_after: k - rank });
    }
    let computed = current.hull(inner)?;
    if computed.hull_dim != target {
        return Err(Error::PredictionViolated { rule: "hull reduction".into(), predicted: target, computed: computed.hull_dim });
    }
    Ok(ReduceOutcome { code: current, start_hull: start.hull_dim, steps, computed })
}

/// Cancels the single nonzero corner of the Gram matrix by adding one
/// coordinate, giving a Hermitian self-orthogonal code.
pub fn self_orthogonal_extension(code: &GrsCode) -> Result<GrsCode> {
    let f = code.field().clone();
    tower(&f)?;
    require_plain(code)?;
    let k = code.dimension();
    let gg = code.gram(InnerProduct::Hermitian)?;
    let only = |r: usize| (0..k).all(|i| (0..k).all(|j| (i == r && j == r) || gg.get(i, j).is_zero())) && !gg.get(r, r).is_zero();
    let out = if only(k - 1) {
        extend_length_infty(code, f.neg(gg.get(k - 1, k - 1)))?
    } else if only(0) && code.n() < f.order() as usize && !code.points().contains(&Elem::ZERO) && code.k1() == 0 {
        extend_length_zero(code, f.neg(gg.get(0, 0)))?
    } else {
        return Err(Error::HullShapeMismatch);
    };
    let c = out.grs().expect("rules return GRS codes").clone();
    if !c.gram(InnerProduct::Hermitian)?.is_zero() {
        return Err(Error::PredictionViolated { rule: "self-orthogonal extension".into(), predicted: k, computed: out.computed.hull_dim });
    }
    Ok(c)
}

/// The q²×q² Hermitian Gram matrix of GRS_{q²}(a, v) when a runs over the
/// whole field, with block access.
pub struct GramBlocks {
    field: Arc<Field>,
    q: usize,
    gram: Matrix,
    /// g_s g_t† for 0 ≤ s, t ≤ q−1, computed from the rows directly.
    base: Matrix,
}

impl GramBlocks {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.gram.get(i, j)
    }

    /// A_{i,j}, whose (r, c) entry is g_{i+r} g_{j+c}†.
    pub fn block(&self, i: usize, j: usize) -> Matrix {
        let q = self.q;
        let rows: Vec<usize> = (0..q).map(|r| j * q + r).collect();
        let cols: Vec<usize> = (0..q).map(|c| i * q + c).collect();
        self.gram.submatrix(&rows, &cols)
    }

    /// The (s, t) ∈ [0, q−1]² with g_I g_J† = g_s g_t†, from the exponent I + qJ.
    pub fn canonical(&self, i: usize, j: usize) -> (usize, usize) {
        let q = self.q;
        let n = q * q - 1;
        let e = i + q * j;
        if e == 0 {
            return (0, 0);
        }
        let r = (e - 1) % n + 1;
        (r % q, r / q)
    }

    pub fn base_entry(&self, s: usize, t: usize) -> Elem {
        self.base.get(s, t)
    }

    /// Checks that every entry equals its canonical representative and that
    /// both folding identities hold; returns the first offending position.
    pub fn validate(&self) -> std::result::Result<(), (usize, usize)> {
        let qq = self.q * self.q;
        let q = self.q;
        for i in 0..qq {
            for j in 0..qq {
                let (s, t) = self.canonical(i, j);
                if self.entry(i, j) != self.base_entry(s, t) {
                    return Err((i, j));
                }
                if i >= q && j + 1 < qq && self.entry(i, j) != self.entry(i - q, j + 1) {
                    return Err((i, j));
                }
                if j >= q && i + 1 < qq && self.entry(i, j) != self.entry(i + 1, j - q) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    /// Positions of A_{i,j} whose canonical representative is (s, t).
    pub fn occurrences(&self, i: usize, j: usize, s: usize, t: usize) -> usize {
        let q = self.q;
        let mut count = 0;
        for r in 0..q {
            for c in 0..q {
                if self.canonical(i + r, j + c) == (s, t) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
}

pub fn full_gram_blocks(a: &[Elem], v: &[Elem], field: &Arc<Field>) -> Result<GramBlocks> {
    let q = tower(field)? as usize;
    let all: HashSet<Elem> = a.iter().copied().collect();
    if a.len() != q * q || all.len() != q * q {
        return Err(Error::NotFullField);
    }
    let f = field.clone();
    let code = GrsCode::new(field, a.to_vec(), v.to_vec(), q * q, 0, false)?;
    let gram = code.gram(InnerProduct::Hermitian)?;
    let rows: Vec<Vec<Elem>> = (0..q as i64).map(|i| code.row(i)).collect::<Result<_>>()?;
    let mut base = Matrix::zeros(&f, q, q);
    for s in 0..q {
        for t in 0..q {
            base.set(s, t, herm(&f, &rows[s], &rows[t]));
        }
    }
    Ok(GramBlocks { field: f, q, gram, base })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HullBound {
    /// Clamped at zero.
    pub bound: usize,
    /// The unclamped bound was negative.
    pub vacuous: bool,
}

/// Hull reachable at dimension k from an [n, k'] Hermitian self-orthogonal
/// GRS code: 2k'−k for k ≤ q, max{2k'−k, k+4k'−4q} for q < k ≤ q+k'−1.
pub fn hull_bound_2q(n: usize, k: usize, k_prime: usize, q: usize) -> Result<HullBound> {
    if q <= 2 || n <= q + 1 || k_prime > q - 1 || k_prime == 0 {
        return Err(Error::OutOfRange(format!("need q > 2, n > q+1 and 1 <= k' <= q-1 (n={n}, k'={k_prime}, q={q})")));
    }
    if k < k_prime || k > (q + k_prime - 1).min(n) {
        return Err(Error::OutOfRange(format!("k={k} outside {k_prime}..={}", (q + k_prime - 1).min(n))));
    }
    let (k, kp, q) = (k as i64, k_prime as i64, q as i64);
    let raw = if k <= q { 2 * kp - k } else { (2 * kp - k).max(k + 4 * kp - 4 * q) };
    Ok(HullBound { bound: raw.max(0) as usize, vacuous: raw < 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        assert_eq!(hull_bound_2q(20, 3, 3, 4).unwrap().bound, 3);
        assert_eq!(hull_bound_2q(20, 5, 4, 5).unwrap().bound, 3);
        for k in 6..=8 {
            assert_eq!(hull_bound_2q(30, k, 4, 5).unwrap().bound, k - 4);
        }
        let b = hull_bound_2q(30, 4, 1, 5).unwrap();
        assert!(b.vacuous && b.bound == 0);
        assert!(hull_bound_2q(30, 10, 4, 5).is_err());
    }
}
