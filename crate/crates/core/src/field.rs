//! Finite fields GF(p^m) in a polynomial basis.
//!
//! Elements are stored as a single integer `rep = Σ c_i p^i` over the
//! coefficients of the basis `1, x, .., x^{m-1}`. Multiplication goes
//! through exp/log tables built once per field; addition in odd
//! characteristic uses a Zech logarithm table.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 1 << 24;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn rep(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Wire form of a field: characteristic, degree and modulus coefficients
/// (low degree first, leading 1 included).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

pub struct Field {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

/// Builds GF(p^degree) with the lexicographically smallest monic irreducible
/// modulus (coefficients compared low degree first) and the smallest
/// primitive element.
pub fn make_field(p: u32, degree: u32) -> Result<Arc<Field>> {
    Field::new(p, degree).map(Arc::new)
}

/// Builds GF(q^2) for a prime power q.
pub fn tower_for(q: u32) -> Result<Arc<Field>> {
    let (p, m) = prime_power(q).ok_or_else(|| Error::BadParameters(format!("q={q} is not a prime power")))?;
    make_field(p, 2 * m)
}

impl Field {
    pub fn new(p: u32, degree: u32) -> Result<Field> {
        check_size(p, degree)?;
        let modulus = smallest_irreducible(p, degree as usize);
        Self::build(p, modulus)
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus);
        }
        let degree = (modulus.len() - 1) as u32;
        check_size(p, degree)?;
        if !is_irreducible(p, &modulus) {
            return Err(Error::BadModulus);
        }
        Self::build(p, modulus)
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Field> {
        if d.modulus.len() != d.m as usize + 1 {
            return Err(Error::BadModulus);
        }
        Self::with_modulus(d.p, d.modulus.clone())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, m: self.m, modulus: self.modulus.clone() }
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Field> {
        let m = (modulus.len() - 1) as u32;
        let order = p.pow(m);
        let n = order - 1;
        let slow = SlowField { p, m: m as usize, modulus: &modulus };
        let factors = prime_factors(n as u64);
        let primitive = (1..order)
            .find(|&g| factors.iter().all(|&r| slow.pow(g, n as u64 / r) != 1))
            .expect("multiplicative group is cyclic");

        let mut exp = vec![0u32; 2 * n as usize + 2];
        let mut log = vec![NONE; order as usize];
        let mut x = 1u32;
        for t in 0..n {
            exp[t as usize] = x;
            log[x as usize] = t;
            x = slow.mul(x, primitive);
        }
        for t in n as usize..exp.len() {
            exp[t] = exp[t - n as usize];
        }

        let zech = if p == 2 {
            Vec::new()
        } else {
            (0..n).map(|t| {
                let s = slow.add(1, exp[t as usize]);
                if s == 0 { NONE } else { log[s as usize] }
            })
            .collect()
        };

        Ok(Field { p, m, order, modulus, primitive: Elem(primitive), exp, log, zech })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn elem(&self, rep: u32) -> Result<Elem> {
        if rep < self.order { Ok(Elem(rep)) } else { Err(Error::BadElement(rep)) }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    fn group_order(&self) -> u64 {
        (self.order - 1) as u64
    }

    /// θ^t for the primitive element θ.
    pub fn exp(&self, t: i64) -> Elem {
        Elem(self.exp[t.rem_euclid(self.group_order() as i64) as usize])
    }

    pub fn dlog(&self, x: Elem) -> Result<u32> {
        if x.is_zero() { Err(Error::Zero) } else { Ok(self.log[x.0 as usize]) }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.group_order() as u32;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        if z == NONE { Elem::ZERO } else { Elem(self.exp[(la + z) as usize]) }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let half = (self.group_order() / 2) as u32;
        Elem(self.exp[(self.log[a.0 as usize] + half) as usize])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::Zero);
        }
        let n = self.group_order() as u32;
        Ok(Elem(self.exp[(n - self.log[a.0 as usize]) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e with the convention 0^0 = 1.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        if a.0 == 0 {
            return match e {
                0 => Ok(Elem::ONE),
                e if e > 0 => Ok(Elem::ZERO),
                _ => Err(Error::Zero),
            };
        }
        let n = self.group_order() as i128;
        let t = (self.log[a.0 as usize] as i128 * e as i128).rem_euclid(n);
        Ok(Elem(self.exp[t as usize]))
    }

    /// a^e for e >= 0; never fails.
    pub fn powu(&self, a: Elem, e: u64) -> Elem {
        if a.0 == 0 {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let n = self.group_order();
        let t = (self.log[a.0 as usize] as u64 % n) * (e % n) % n;
        Elem(self.exp[t as usize])
    }

    /// x ↦ x^{p^e}.
    pub fn frobenius(&self, x: Elem, e: u32) -> Elem {
        self.powu(x, (self.p as u64).pow(e % self.m.max(1)))
    }

    pub fn is_quadratic_tower(&self) -> bool {
        self.m % 2 == 0
    }

    /// q with this field equal to GF(q^2).
    pub fn subfield_order(&self) -> Result<u32> {
        if !self.is_quadratic_tower() {
            return Err(Error::NotQuadraticTower);
        }
        Ok(self.p.pow(self.m / 2))
    }

    /// Hermitian conjugate x^q.
    pub fn conj(&self, x: Elem) -> Result<Elem> {
        if !self.is_quadratic_tower() {
            return Err(Error::NotQuadraticTower);
        }
        Ok(self.frobenius(x, self.m / 2))
    }

    pub fn in_subfield(&self, x: Elem) -> Result<bool> {
        Ok(self.conj(x)? == x)
    }

    pub fn subfield_elements(&self) -> Result<Vec<Elem>> {
        let q = self.subfield_order()?;
        let step = (self.order - 1) / (q - 1);
        let mut out = vec![Elem::ZERO];
        out.extend((0..q - 1).map(|t| Elem(self.exp[(t * step) as usize])));
        out.sort();
        Ok(out)
    }

    /// The ξ = θ^t with smallest t such that ξ^{q+1} = λ.
    pub fn norm_root(&self, lambda: Elem) -> Result<Elem> {
        if lambda.is_zero() {
            return Err(Error::Zero);
        }
        let q = self.subfield_order()?;
        if !self.in_subfield(lambda)? {
            return Err(Error::NotInSubfield(lambda.0));
        }
        let t = self.log[lambda.0 as usize] / (q + 1);
        Ok(Elem(self.exp[t as usize]))
    }

    /// Coefficient digits of an element, low degree first.
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let mut r = x.0;
        (0..self.m).map(|_| {
            let d = r % self.p;
            r /= self.p;
            d
        })
        .collect()
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }
}

fn check_size(p: u32, degree: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::NonPrime(p));
    }
    if degree == 0 || (p as u64).checked_pow(degree).map_or(true, |o| o > MAX_FIELD_ORDER) {
        return Err(Error::DegreeTooLarge { p, degree });
    }
    Ok(())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// (p, m) with q = p^m, if q is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let f = prime_factors(q as u64);
    if f.len() != 1 {
        return None;
    }
    let p = f[0] as u32;
    let mut m = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    Some((p, m))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn smallest_irreducible(p: u32, m: usize) -> Vec<u32> {
    let count = (p as u64).pow(m as u32);
    for j in 0..count {
        let mut poly = vec![0u32; m + 1];
        let mut r = j;
        for i in (0..m).rev() {
            poly[i] = (r % p as u64) as u32;
            r /= p as u64;
        }
        poly[m] = 1;
        if is_irreducible(p, &poly) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree 1..=m/2.
fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let m = poly.len() - 1;
    if m == 1 {
        return true;
    }
    if poly[0] == 0 {
        return false;
    }
    for d in 1..=m / 2 {
        for j in 0..(p as u64).pow(d as u32) {
            let mut div = vec![0u32; d + 1];
            let mut r = j;
            for c in div.iter_mut().take(d) {
                *c = (r % p as u64) as u32;
                r /= p as u64;
            }
            div[d] = 1;
            if poly_rem(p, poly, &div).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dd;
            for i in 0..dd {
                r[shift + i] = (r[shift + i] + (p - lead) * den[i] % p) % p;
            }
        }
    }
    r
}

/// Digit-level arithmetic used only while the tables are being built.
struct SlowField<'a> {
    p: u32,
    m: usize,
    modulus: &'a [u32],
}

impl SlowField<'_> {
    fn to_digits(&self, mut x: u32) -> Vec<u32> {
        (0..self.m).map(|_| {
            let d = x % self.p;
            x /= self.p;
            d
        })
        .collect()
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let da = self.to_digits(a);
        let db = self.to_digits(b);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&s)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            let mut acc = 0u64;
            let mut aa = a as u64;
            let mut bb = b;
            while bb != 0 {
                if bb & 1 == 1 {
                    acc ^= aa;
                }
                bb >>= 1;
                aa <<= 1;
            }
            let red: u64 = self.modulus.iter().enumerate().map(|(i, &c)| (c as u64) << i).sum();
            for bit in (self.m..2 * self.m).rev() {
                if acc >> bit & 1 == 1 {
                    acc ^= red << (bit - self.m);
                }
            }
            return acc as u32;
        }
        let da = self.to_digits(a);
        let db = self.to_digits(b);
        let mut prod = vec![0u64; 2 * self.m];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] += (x * y) as u64;
            }
        }
        let prod: Vec<u32> = prod.iter().map(|&c| (c % self.p as u64) as u32).collect();
        let r = poly_rem(self.p, &prod, self.modulus);
        self.from_digits(&r[..self.m.min(r.len())])
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.primitive(), Elem::ONE);
        assert_eq!(f.modulus(), &[0, 1]);
        let f = make_field(7, 1).unwrap();
        assert_eq!(f.primitive().rep(), 3);
    }

    #[test]
    fn gf9_basics() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let theta = f.primitive();
        assert_eq!(f.conj(theta).unwrap(), f.powu(theta, 3));
        assert_eq!(f.dlog(theta).unwrap(), 1);
    }

    #[test]
    fn errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrime(4));
        assert!(matches!(make_field(2, 25), Err(Error::DegreeTooLarge { .. })));
        let f = make_field(3, 3).unwrap();
        assert_eq!(f.conj(Elem::ONE), Err(Error::NotQuadraticTower));
        assert_eq!(f.pow(Elem::ZERO, -1), Err(Error::Zero));
        assert_eq!(f.pow(Elem::ZERO, 0), Ok(Elem::ONE));
    }

    #[test]
    fn descriptor_round_trip() {
        let f = make_field(2, 6).unwrap();
        let g = Field::from_descriptor(&f.descriptor()).unwrap();
        assert_eq!(*f, g);
        assert_eq!(g.primitive(), f.primitive());
    }
}
