//! Generalized Reed–Solomon codes, general linear codes and their hulls.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{intersection_dim, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerProduct {
    Euclidean,
    Hermitian,
    Galois(u32),
}

impl InnerProduct {
    /// The e of ⟨x,y⟩_e = Σ x_i y_i^{p^e}.
    pub fn exponent(self, field: &Field) -> Result<u32> {
        let m = field.degree();
        match self {
            InnerProduct::Euclidean => Ok(0),
            InnerProduct::Hermitian => {
                if field.is_quadratic_tower() { Ok(m / 2) } else { Err(Error::NotQuadraticTower) }
            }
            InnerProduct::Galois(e) if e < m => Ok(e),
            InnerProduct::Galois(e) => Err(Error::BadExponent { e, m }),
        }
    }
}

impl fmt::Display for InnerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerProduct::Euclidean => write!(f, "euclidean"),
            InnerProduct::Hermitian => write!(f, "hermitian"),
            InnerProduct::Galois(e) => write!(f, "galois({e})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReport {
    pub inner: InnerProduct,
    pub dimension: usize,
    pub gram_rank: usize,
    pub hull_dim: usize,
}

/// Gram matrix (⟨g_i, g_j⟩_e)_{i,j} = G · (G^{p^e})^T.
///
/// Its rank equals rank(G G‡) since the two differ by a field automorphism
/// and a transpose.
pub fn gram(g: &Matrix, inner: InnerProduct) -> Result<Matrix> {
    let e = inner.exponent(g.field())?;
    g.mul(&g.frobenius(e).transpose())
}

pub fn hull_of_generator(g: &Matrix, inner: InnerProduct) -> Result<HullReport> {
    let r = gram(g, inner)?.rank();
    Ok(HullReport { inner, dimension: g.rows(), gram_rank: r, hull_dim: g.rows() - r })
}

/// Generator of C^{⊥_e}.
pub fn dual_generator(g: &Matrix, inner: InnerProduct) -> Result<Matrix> {
    let m = g.field().degree();
    let e = inner.exponent(g.field())?;
    let conj = g.frobenius((m - e) % m);
    let basis = conj.kernel();
    if basis.is_empty() {
        return Ok(Matrix::empty(g.field(), g.cols()));
    }
    Matrix::from_rows(g.field(), basis)
}

/// dim(C ∩ C^⊥) by explicit subspace intersection.
pub fn hull_by_intersection(g: &Matrix, inner: InnerProduct) -> Result<usize> {
    intersection_dim(g, &dual_generator(g, inner)?)
}

/// Basis of C ∩ C^⊥ as rows.
pub fn hull_basis(g: &Matrix, inner: InnerProduct) -> Result<Matrix> {
    let f = g.field();
    let m = f.degree();
    let e = inner.exponent(f)?;
    let ker = gram(g, inner)?.kernel();
    let mut rows = Vec::new();
    for w in ker {
        let u: Vec<Elem> = w.iter().map(|&x| f.frobenius(x, (m - e) % m)).collect();
        let mut x = vec![Elem::ZERO; g.cols()];
        for (i, &ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (c, xc) in x.iter_mut().enumerate() {
                *xc = f.add(*xc, f.mul(ui, g.get(i, c)));
            }
        }
        rows.push(x);
    }
    if rows.is_empty() {
        return Ok(Matrix::empty(f, g.cols()));
    }
    Matrix::from_rows(f, rows)
}

/// GRS_{k,k1}(a, v) or, when `extended`, GRS_{k,k1}(a, v, ∞).
#[derive(Clone)]
pub struct GrsCode {
    field: Arc<Field>,
    a: Vec<Elem>,
    v: Vec<Elem>,
    k: usize,
    k1: i64,
    extended: bool,
}

impl PartialEq for GrsCode {
    fn eq(&self, o: &Self) -> bool {
        *self.field == *o.field && self.a == o.a && self.v == o.v && self.k == o.k && self.k1 == o.k1 && self.extended == o.extended
    }
}

impl fmt::Debug for GrsCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrsCode")
            .field("q_order", &self.field.order())
            .field("n", &self.a.len())
            .field("k", &self.k)
            .field("k1", &self.k1)
            .field("extended", &self.extended)
            .finish()
    }
}

impl GrsCode {
    pub fn new(field: &Arc<Field>, a: Vec<Elem>, v: Vec<Elem>, k: usize, k1: i64, extended: bool) -> Result<GrsCode> {
        let n = a.len();
        if v.len() != n {
            return Err(Error::BadCode(format!("a has {} entries, v has {}", n, v.len())));
        }
        if k == 0 || k > n {
            return Err(Error::BadCode(format!("k={k} outside 1..={n}")));
        }
        if a.iter().chain(&v).any(|x| x.rep() >= field.order()) {
            return Err(Error::BadCode("element out of range".into()));
        }
        if a.iter().collect::<HashSet<_>>().len() != n {
            return Err(Error::BadCode("evaluation points are not distinct".into()));
        }
        if v.iter().any(|x| x.is_zero()) {
            return Err(Error::BadCode("zero column multiplier".into()));
        }
        if k1 != 0 && a.iter().any(|x| x.is_zero()) {
            return Err(Error::NegativePowerWithZeroPoint);
        }
        Ok(GrsCode { field: field.clone(), a, v, k, k1, extended })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn points(&self) -> &[Elem] {
        &self.a
    }

    pub fn multipliers(&self) -> &[Elem] {
        &self.v
    }

    /// Number of evaluation points (excludes the ∞ column).
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn length(&self) -> usize {
        self.a.len() + usize::from(self.extended)
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn k1(&self) -> i64 {
        self.k1
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// g_i = (v_1 a_1^i, .., v_n a_n^i [, ∞ entry]).
    pub fn row(&self, i: i64) -> Result<Vec<Elem>> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.length());
        for (&a, &v) in self.a.iter().zip(&self.v) {
            let p = f.pow(a, i).map_err(|_| Error::NegativePowerWithZeroPoint)?;
            out.push(f.mul(v, p));
        }
        if self.extended {
            out.push(if i == self.k1 + self.k as i64 - 1 { Elem::ONE } else { Elem::ZERO });
        }
        Ok(out)
    }

    pub fn generator(&self) -> Matrix {
        let rows = (0..self.k as i64).map(|i| self.row(self.k1 + i).expect("validated at construction")).collect();
        Matrix::from_rows(&self.field, rows).expect("rows share a length")
    }

    pub fn gram(&self, inner: InnerProduct) -> Result<Matrix> {
        gram(&self.generator(), inner)
    }

    pub fn hull(&self, inner: InnerProduct) -> Result<HullReport> {
        hull_of_generator(&self.generator(), inner)
    }

    pub fn with_dimension(&self, k: usize) -> Result<GrsCode> {
        GrsCode::new(&self.field, self.a.clone(), self.v.clone(), k, self.k1, self.extended)
    }

    /// Same code presented with k1 = 0 (v'_i = v_i a_i^{k1}).
    pub fn normalized(&self) -> GrsCode {
        if self.k1 == 0 {
            return self.clone();
        }
        let f = &self.field;
        let v = self.a.iter().zip(&self.v).map(|(&a, &v)| f.mul(v, f.pow(a, self.k1).expect("nonzero points"))).collect();
        GrsCode { field: f.clone(), a: self.a.clone(), v, k: self.k, k1: 0, extended: self.extended }
    }

    /// GRS_k(αa + b, μv), or GRS_k(αa + b, α^{1-k} v, ∞) for extended codes.
    pub fn affine_reparam(&self, alpha: Elem, b: Elem, mu: Elem) -> Result<GrsCode> {
        if alpha.is_zero() || mu.is_zero() {
            return Err(Error::ZeroScale);
        }
        let f = &self.field;
        let base = self.normalized();
        let a = base.a.iter().map(|&x| f.add(f.mul(alpha, x), b)).collect();
        let v = if self.extended {
            if mu != Elem::ONE {
                return Err(Error::BadParameters("an extended code admits only mu = 1".into()));
            }
            let s = f.pow(alpha, 1 - self.k as i64)?;
            base.v.iter().map(|&x| f.mul(s, x)).collect()
        } else {
            base.v.iter().map(|&x| f.mul(mu, x)).collect()
        };
        GrsCode::new(f, a, v, self.k, 0, self.extended)
    }

    /// Shift evaluation points by the smallest b making them all nonzero.
    pub fn avoid_zero(&self) -> Result<(GrsCode, Option<Elem>)> {
        if !self.a.contains(&Elem::ZERO) {
            return Ok((self.clone(), None));
        }
        let f = &self.field;
        for b in f.elements().skip(1) {
            if self.a.iter().all(|&x| f.add(x, b) != Elem::ZERO) {
                return Ok((self.affine_reparam(Elem::ONE, b, Elem::ONE)?, Some(b)));
            }
        }
        Err(Error::FieldFull)
    }

    /// Multiply one coordinate by γ; scaling the ∞ column is the same code as
    /// dividing every multiplier by γ.
    pub fn scale_coordinate(&self, position: usize, gamma: Elem) -> Result<GrsCode> {
        if gamma.is_zero() {
            return Err(Error::ZeroScale);
        }
        if position >= self.length() {
            return Err(Error::BadPosition { position, length: self.length() });
        }
        let f = &self.field;
        let mut v = self.v.clone();
        if position < self.n() {
            v[position] = f.mul(v[position], gamma);
        } else {
            let inv = f.inv(gamma)?;
            v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        }
        GrsCode::new(f, self.a.clone(), v, self.k, self.k1, self.extended)
    }
}

/// A code given only by a full-rank generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    generator: Matrix,
    cache: Vec<OnceLock<HullReport>>,
}

impl LinearCode {
    pub fn new(generator: Matrix) -> Result<LinearCode> {
        if generator.rank() != generator.rows() {
            return Err(Error::RankDeficient);
        }
        let m = generator.field().degree() as usize;
        Ok(LinearCode { generator, cache: (0..m).map(|_| OnceLock::new()).collect() })
    }

    /// Row space of an arbitrary matrix.
    pub fn spanned_by(m: &Matrix) -> LinearCode {
        LinearCode::new(m.row_basis()).expect("row basis has full rank")
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn field(&self) -> &Arc<Field> {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn hull(&self, inner: InnerProduct) -> Result<HullReport> {
        let e = inner.exponent(self.field())? as usize;
        let mut r = *self.cache[e].get_or_init(|| hull_of_generator(&self.generator, inner).expect("exponent checked"));
        r.inner = inner;
        Ok(r)
    }

    pub fn scale_coordinate(&self, position: usize, gamma: Elem) -> Result<LinearCode> {
        if gamma.is_zero() {
            return Err(Error::ZeroScale);
        }
        if position >= self.length() {
            return Err(Error::BadPosition { position, length: self.length() });
        }
        let f = self.field().clone();
        let mut g = self.generator.clone();
        for r in 0..g.rows() {
            g.set(r, position, f.mul(g.get(r, position), gamma));
        }
        LinearCode::new(g)
    }
}

/// Either presentation of a code.
#[derive(Clone, Debug)]
pub enum Code {
    Grs(GrsCode),
    Linear(LinearCode),
}

impl From<GrsCode> for Code {
    fn from(c: GrsCode) -> Code {
        Code::Grs(c)
    }
}

impl From<LinearCode> for Code {
    fn from(c: LinearCode) -> Code {
        Code::Linear(c)
    }
}

impl Code {
    pub fn field(&self) -> &Arc<Field> {
        match self {
            Code::Grs(c) => c.field(),
            Code::Linear(c) => c.field(),
        }
    }

    pub fn generator(&self) -> Matrix {
        match self {
            Code::Grs(c) => c.generator(),
            Code::Linear(c) => c.generator().clone(),
        }
    }

    pub fn length(&self) -> usize {
        match self {
            Code::Grs(c) => c.length(),
            Code::Linear(c) => c.length(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Code::Grs(c) => c.dimension(),
            Code::Linear(c) => c.dimension(),
        }
    }

    pub fn hull(&self, inner: InnerProduct) -> Result<HullReport> {
        match self {
            Code::Grs(c) => c.hull(inner),
            Code::Linear(c) => c.hull(inner),
        }
    }

    pub fn as_grs(&self) -> Option<&GrsCode> {
        match self {
            Code::Grs(c) => Some(c),
            Code::Linear(_) => None,
        }
    }

    pub fn scale_coordinate(&self, position: usize, gamma: Elem) -> Result<Code> {
        match self {
            Code::Grs(c) => c.scale_coordinate(position, gamma).map(Code::Grs),
            Code::Linear(c) => c.scale_coordinate(position, gamma).map(Code::Linear),
        }
    }

    pub fn dual(&self) -> Result<LinearCode> {
        LinearCode::new(dual_generator(&self.generator(), InnerProduct::Euclidean)?)
    }

    pub fn hermitian_dual(&self) -> Result<LinearCode> {
        LinearCode::new(dual_generator(&self.generator(), InnerProduct::Hermitian)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    Exhaustive,
    MinorCertificate,
    Structural,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every nonzero codeword was enumerated.
    Exhaustive { codewords: u64 },
    /// Every k-subset of columns is independent.
    AllMinorsNonsingular { subsets: u64 },
    /// A k-subset of columns with a singular minor.
    SingularMinor { columns: Vec<usize> },
    Structural,
}

impl Certificate {
    pub fn tier(&self) -> &'static str {
        match self {
            Certificate::Exhaustive { .. } => "exhaustive",
            Certificate::AllMinorsNonsingular { .. } => "minors",
            Certificate::SingularMinor { .. } => "minors-failed",
            Certificate::Structural => "structural",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    /// None when the certificate only shows the code is not MDS.
    pub distance: Option<usize>,
    pub certificate: Certificate,
}

pub const MAX_EXHAUSTIVE: u64 = 1 << 24;
pub const MAX_MINOR_SUBSETS: u64 = 1_000_000;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

pub fn min_distance(code: &Code, mode: DistanceMode) -> Result<DistanceReport> {
    let n = code.length();
    let k = code.dimension();
    match mode {
        DistanceMode::Structural => match code {
            Code::Grs(_) => Ok(DistanceReport { distance: Some(n - k + 1), certificate: Certificate::Structural }),
            Code::Linear(_) => Err(Error::ModeInfeasible("structural certificate needs a GRS presentation".into())),
        },
        DistanceMode::Exhaustive => {
            let q = code.field().order() as u64;
            if q.checked_pow(k as u32).map_or(true, |s| s > MAX_EXHAUSTIVE) {
                return Err(Error::ModeInfeasible(format!("q^k = {q}^{k} exceeds 2^24")));
            }
            let (d, count) = exhaustive_distance(&code.generator());
            Ok(DistanceReport { distance: Some(d), certificate: Certificate::Exhaustive { codewords: count } })
        }
        DistanceMode::MinorCertificate => {
            let subsets = binomial(n, k);
            if subsets > MAX_MINOR_SUBSETS {
                return Err(Error::ModeInfeasible(format!("C({n},{k}) = {subsets} exceeds 10^6")));
            }
            match singular_minor(&code.generator()) {
                None => Ok(DistanceReport { distance: Some(n - k + 1), certificate: Certificate::AllMinorsNonsingular { subsets } }),
                Some(columns) => Ok(DistanceReport { distance: None, certificate: Certificate::SingularMinor { columns } }),
            }
        }
    }
}

/// Best available MDS certificate: minors when feasible, else structural.
pub fn mds_certificate(code: &Code) -> Result<DistanceReport> {
    if binomial(code.length(), code.dimension()) <= MAX_MINOR_SUBSETS {
        min_distance(code, DistanceMode::MinorCertificate)
    } else {
        min_distance(code, DistanceMode::Structural)
    }
}

fn exhaustive_distance(g: &Matrix) -> (usize, u64) {
    let f = g.field().clone();
    let elems: Vec<Elem> = f.elements().collect();
    let k = g.rows();
    let n = g.cols();
    let mut stack = vec![vec![Elem::ZERO; n]; k + 1];
    let mut best = n + 1;
    let mut count = 0u64;
    fn rec(f: &Field, g: &Matrix, elems: &[Elem], depth: usize, nonzero: bool, stack: &mut Vec<Vec<Elem>>, best: &mut usize, count: &mut u64) {
        if depth == g.rows() {
            if nonzero {
                *count += 1;
                let w = stack[depth].iter().filter(|x| !x.is_zero()).count();
                *best = (*best).min(w);
            }
            return;
        }
        for &c in elems {
            let (lo, hi) = stack.split_at_mut(depth + 1);
            let cur = &lo[depth];
            let next = &mut hi[0];
            for (j, x) in next.iter_mut().enumerate() {
                *x = f.add(cur[j], f.mul(c, g.get(depth, j)));
            }
            rec(f, g, elems, depth + 1, nonzero || !c.is_zero(), stack, best, count);
        }
    }
    if k > 0 {
        rec(&f, g, &elems, 0, false, &mut stack, &mut best, &mut count);
    }
    (best, count)
}

/// DFS over column subsets with incremental elimination; returns the first
/// dependent k-subset of columns, if any.
fn singular_minor(g: &Matrix) -> Option<Vec<usize>> {
    let f = g.field().clone();
    let k = g.rows();
    let n = g.cols();
    let cols: Vec<Vec<Elem>> = (0..n).map(|c| g.column(c)).collect();

    // basis[i] is a reduced column with pivot row pivots[i] normalized to 1.
    struct State {
        basis: Vec<Vec<Elem>>,
        pivots: Vec<usize>,
        chosen: Vec<usize>,
    }

    fn reduce(f: &Field, st: &State, col: &[Elem]) -> Vec<Elem> {
        let mut v = col.to_vec();
        for (b, &p) in st.basis.iter().zip(&st.pivots) {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(nc, y));
            }
        }
        v
    }

    fn rec(f: &Field, cols: &[Vec<Elem>], k: usize, start: usize, st: &mut State) -> Option<Vec<usize>> {
        if st.chosen.len() == k {
            return None;
        }
        let remaining = k - st.chosen.len();
        for c in start..=cols.len() - remaining {
            let v = reduce(f, st, &cols[c]);
            let Some(p) = v.iter().position(|x| !x.is_zero()) else {
                let mut bad = st.chosen.clone();
                bad.push(c);
                let mut extra = (c + 1..cols.len()).take(k - bad.len());
                while bad.len() < k {
                    bad.push(extra.next().expect("enough columns remain"));
                }
                return Some(bad);
            };
            let inv = f.inv(v[p]).expect("nonzero pivot");
            let v: Vec<Elem> = v.iter().map(|&x| f.mul(x, inv)).collect();
            st.basis.push(v);
            st.pivots.push(p);
            st.chosen.push(c);
            if let Some(bad) = rec(f, cols, k, c + 1, st) {
                return Some(bad);
            }
            st.basis.pop();
            st.pivots.pop();
            st.chosen.pop();
        }
        None
    }

    if k == 0 || k > n {
        return None;
    }
    let mut st = State { basis: Vec::new(), pivots: Vec::new(), chosen: Vec::new() };
    rec(&f, &cols, k, 0, &mut st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn gf9_code(n: usize, k: usize) -> GrsCode {
        let f = make_field(3, 2).unwrap();
        let a: Vec<Elem> = f.elements().take(n).collect();
        let v = vec![Elem::ONE; n];
        GrsCode::new(&f, a, v, k, 0, false).unwrap()
    }

    #[test]
    fn row_conventions() {
        let c = gf9_code(4, 2);
        assert_eq!(c.row(0).unwrap(), vec![Elem::ONE; 4]);
        assert_eq!(c.row(-1), Err(Error::NegativePowerWithZeroPoint));
        let f = c.field().clone();
        let a: Vec<Elem> = f.elements().skip(1).take(4).collect();
        let e = GrsCode::new(&f, a.clone(), vec![Elem::ONE; 4], 2, 0, true).unwrap();
        assert_eq!(e.row(1).unwrap()[4], Elem::ONE);
        assert_eq!(e.row(0).unwrap()[4], Elem::ZERO);
        let inv: Vec<Elem> = a.iter().map(|&x| f.inv(x).unwrap()).collect();
        assert_eq!(&e.row(-1).unwrap()[..4], &inv[..]);
    }

    #[test]
    fn validation() {
        let f = make_field(3, 2).unwrap();
        let a = vec![Elem::ONE, Elem::ONE];
        assert!(matches!(GrsCode::new(&f, a, vec![Elem::ONE; 2], 1, 0, false), Err(Error::BadCode(_))));
        let a: Vec<Elem> = f.elements().take(3).collect();
        assert_eq!(GrsCode::new(&f, a, vec![Elem::ONE; 3], 1, -1, false), Err(Error::NegativePowerWithZeroPoint));
    }

    #[test]
    fn distances_on_small_codes() {
        let c = Code::Grs(gf9_code(6, 3));
        assert_eq!(min_distance(&c, DistanceMode::Exhaustive).unwrap().distance, Some(4));
        assert_eq!(min_distance(&c, DistanceMode::MinorCertificate).unwrap().distance, Some(4));
        let rep = Code::Grs(gf9_code(4, 1));
        assert_eq!(min_distance(&rep, DistanceMode::Exhaustive).unwrap().distance, Some(4));
        let dual = Code::Grs(gf9_code(6, 2)).dual().unwrap();
        assert_eq!(min_distance(&Code::Linear(dual), DistanceMode::Exhaustive).unwrap().distance, Some(3));
    }

    #[test]
    fn non_mds_detected() {
        let f = make_field(3, 1).unwrap();
        let e = |v| f.elem(v).unwrap();
        let g = Matrix::from_rows(&f, vec![vec![e(1), e(0), e(1)], vec![e(0), e(1), e(0)]]).unwrap();
        let c = Code::Linear(LinearCode::new(g).unwrap());
        let r = min_distance(&c, DistanceMode::MinorCertificate).unwrap();
        assert_eq!(r.distance, None);
        assert_eq!(r.certificate, Certificate::SingularMinor { columns: vec![0, 2] });
        assert_eq!(min_distance(&c, DistanceMode::Exhaustive).unwrap().distance, Some(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(16, 8), 12870);
        assert_eq!(binomial(3, 5), 0);
    }
}
