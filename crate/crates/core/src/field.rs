//! Prime fields `F_p` and their quadratic extensions `F_{p^2} = F_p[u]/(u^2 - n)`.
//!
//! A [`Field`] is an immutable descriptor shared behind an `Arc`; elements
//! ([`Fe`]) are plain `Copy` values that only make sense together with the
//! descriptor that produced them. The descriptor carries a lookup table for
//! the quadratic character, which is the hot path of every point count.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest character table we are willing to materialize.
pub const CHAR_TABLE_CUTOFF: u64 = 1 << 26;

/// Characteristics must fit comfortably in 31 bits so that products of two
/// reduced coefficients never overflow a `u64`.
pub const MAX_CHARACTERISTIC: u64 = (1 << 31) - 1;

/// Element of `F_p` or `F_{p^2}`, stored as `c0 + c1*u`. For prime fields
/// `c1` is always zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    c0: u32,
    c1: u32,
}

impl Fe {
    pub const ZERO: Fe = Fe { c0: 0, c1: 0 };

    pub fn c0(self) -> u32 {
        self.c0
    }

    pub fn c1(self) -> u32 {
        self.c1
    }

    pub fn is_zero(self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    /// True if the element lies in the prime subfield.
    pub fn is_base(self) -> bool {
        self.c1 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0, self.c1) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "u"),
            (0, b) => write!(f, "{b}u"),
            (a, 1) => write!(f, "{a}+u"),
            (a, b) => write!(f, "{a}+{b}u"),
        }
    }
}

#[derive(Debug)]
enum CharTable {
    /// One entry per element, indexed by [`Field::index`].
    Full(Vec<i8>),
    /// Table over `F_p`; extension elements go through the norm.
    Base(Vec<i8>),
    /// Euler's criterion on the norm, for very large `p`.
    Euler,
}

#[derive(Debug)]
struct Inner {
    p: u32,
    degree: u32,
    nonresidue: u32,
    order: u64,
    chi: CharTable,
}

/// Descriptor of `F_p` (degree 1) or `F_{p^2}` (degree 2).
#[derive(Clone, Debug)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.degree == other.inner.degree
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol `(a | p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn base_table(p: u32) -> Vec<i8> {
    let p64 = p as u64;
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for x in 1..=(p64 - 1) / 2 {
        t[(x * x % p64) as usize] = 1;
    }
    t
}

impl Field {
    /// Builds `F_p` (degree 1) or `F_{p^2}` (degree 2).
    ///
    /// For degree 2 the modulus is `u^2 - n` with `n` the smallest positive
    /// quadratic nonresidue mod `p`, so descriptors are reproducible.
    pub fn new(p: u64, degree: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if p == 2 || p == 3 {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(Error::PrimeOutOfRange {
                p,
                max: MAX_CHARACTERISTIC,
            });
        }
        if degree != 1 && degree != 2 {
            return Err(Error::InvalidPencil(format!(
                "field degree {degree} is not supported"
            )));
        }
        let nonresidue = (2..p)
            .find(|&n| legendre(n as i64, p) == -1)
            .expect("odd prime has a nonresidue") as u32;
        let order = p.pow(degree);
        let p32 = p as u32;
        let chi = if order <= CHAR_TABLE_CUTOFF {
            let base = base_table(p32);
            if degree == 1 {
                CharTable::Full(base)
            } else {
                let mut full = vec![0i8; order as usize];
                for c1 in 0..p {
                    for c0 in 0..p {
                        // norm(c0 + c1 u) = c0^2 - n c1^2
                        let norm = (c0 * c0 + (p - nonresidue as u64) * (c1 * c1 % p)) % p;
                        full[(c0 + c1 * p) as usize] = base[norm as usize];
                    }
                }
                CharTable::Full(full)
            }
        } else if p <= CHAR_TABLE_CUTOFF {
            CharTable::Base(base_table(p32))
        } else {
            CharTable::Euler
        };
        Ok(Field {
            inner: Arc::new(Inner {
                p: p32,
                degree,
                nonresidue,
                order,
                chi,
            }),
        })
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.inner.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    /// Field order `q = p^degree`.
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// The `n` in `u^2 = n`. Also the smallest nonresidue mod `p` for prime fields.
    pub fn nonresidue(&self) -> u32 {
        self.inner.nonresidue
    }

    /// The quadratic extension with the same characteristic.
    pub fn extension(&self) -> Field {
        if self.inner.degree == 2 {
            return self.clone();
        }
        Field::new(self.p(), 2).expect("characteristic already validated")
    }

    /// The prime subfield.
    pub fn base(&self) -> Field {
        if self.inner.degree == 1 {
            return self.clone();
        }
        Field::new(self.p(), 1).expect("characteristic already validated")
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe { c0: 1, c1: 0 }
    }

    /// The generator `u` of the extension.
    pub fn u(&self) -> Result<Fe> {
        if self.inner.degree != 2 {
            return Err(Error::FieldMismatch);
        }
        Ok(Fe { c0: 0, c1: 1 })
    }

    pub fn from_int(&self, v: i64) -> Fe {
        Fe {
            c0: v.rem_euclid(self.p() as i64) as u32,
            c1: 0,
        }
    }

    /// Checked constructor from coefficients.
    pub fn element(&self, c0: u32, c1: u32) -> Result<Fe> {
        let x = Fe { c0, c1 };
        self.check(x)?;
        Ok(x)
    }

    /// Verifies that `x` is a canonical element of this field.
    pub fn check(&self, x: Fe) -> Result<()> {
        let p = self.inner.p;
        if x.c0 >= p || x.c1 >= p || (self.inner.degree == 1 && x.c1 != 0) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Dense index in `0..q`, used by lookup tables.
    #[inline]
    pub fn index(&self, x: Fe) -> usize {
        x.c0 as usize + x.c1 as usize * self.inner.p as usize
    }

    #[inline]
    pub fn from_index(&self, i: usize) -> Fe {
        let p = self.inner.p as usize;
        Fe {
            c0: (i % p) as u32,
            c1: (i / p) as u32,
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.inner.order as usize).map(move |i| self.from_index(i))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.inner.p;
        let s0 = a.c0 + b.c0;
        let s1 = a.c1 + b.c1;
        Fe {
            c0: if s0 >= p { s0 - p } else { s0 },
            c1: if s1 >= p { s1 - p } else { s1 },
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.inner.p;
        Fe {
            c0: if a.c0 == 0 { 0 } else { p - a.c0 },
            c1: if a.c1 == 0 { 0 } else { p - a.c1 },
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let p = self.inner.p as u64;
        if self.inner.degree == 1 {
            return Fe {
                c0: (a.c0 as u64 * b.c0 as u64 % p) as u32,
                c1: 0,
            };
        }
        let n = self.inner.nonresidue as u64;
        let (a0, a1, b0, b1) = (a.c0 as u64, a.c1 as u64, b.c0 as u64, b.c1 as u64);
        let c0 = (a0 * b0 % p + n * (a1 * b1 % p)) % p;
        let c1 = (a0 * b1 % p + a1 * b0 % p) % p;
        Fe {
            c0: c0 as u32,
            c1: c1 as u32,
        }
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, mut base: Fe, mut exp: u64) -> Fe {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            exp >>= 1;
        }
        acc
    }

    /// `N(x) = x * x^p`, an element of `F_p`. Identity on prime fields.
    pub fn norm(&self, x: Fe) -> u32 {
        let p = self.inner.p as u64;
        if self.inner.degree == 1 {
            return x.c0;
        }
        let n = self.inner.nonresidue as u64;
        let (c0, c1) = (x.c0 as u64, x.c1 as u64);
        ((c0 * c0 % p + (p - n) * (c1 * c1 % p)) % p) as u32
    }

    /// The Frobenius `x -> x^p`.
    pub fn frobenius(&self, x: Fe) -> Fe {
        if self.inner.degree == 1 {
            return x;
        }
        Fe {
            c0: x.c0,
            c1: if x.c1 == 0 { 0 } else { self.inner.p - x.c1 },
        }
    }

    pub fn inv(&self, x: Fe) -> Result<Fe> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p();
        if self.inner.degree == 1 {
            return Ok(Fe {
                c0: pow_mod(x.c0 as u64, p - 2, p) as u32,
                c1: 0,
            });
        }
        // x^{-1} = conj(x) / N(x)
        let norm_inv = pow_mod(self.norm(x) as u64, p - 2, p) as u32;
        Ok(self.mul(
            self.frobenius(x),
            Fe {
                c0: norm_inv,
                c1: 0,
            },
        ))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
    #[inline]
    pub fn chi(&self, x: Fe) -> i8 {
        match &self.inner.chi {
            CharTable::Full(t) => t[self.index(x)],
            CharTable::Base(t) => t[self.norm(x) as usize],
            CharTable::Euler => legendre(self.norm(x) as i64, self.p()),
        }
    }

    /// Quadratic character by Euler's criterion `x^((q-1)/2)`, bypassing the table.
    pub fn chi_by_power(&self, x: Fe) -> i8 {
        if x.is_zero() {
            return 0;
        }
        let r = self.pow(x, (self.order() - 1) / 2);
        if r == self.one() {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, x: Fe) -> bool {
        self.chi(x) >= 0
    }

    /// Some `y` with `y^3 = z`, if one exists.
    ///
    /// When `q = 2 (mod 3)` cubing is a bijection and the root is `z^((2q-1)/3)`.
    /// Otherwise an Adleman-Manders-Miller style descent through the 3-Sylow
    /// subgroup of `F_q^*` is used.
    pub fn cube_root(&self, z: Fe) -> Result<Option<Fe>> {
        if z.is_zero() {
            return Err(Error::ZeroInput);
        }
        let q = self.order();
        if q % 3 == 2 {
            return Ok(Some(self.pow(z, (2 * q - 1) / 3)));
        }
        if self.pow(z, (q - 1) / 3) != self.one() {
            return Ok(None);
        }
        let mut s = 0u32;
        let mut t = q - 1;
        while t.is_multiple_of(3) {
            t /= 3;
            s += 1;
        }
        // z^k has cube z * z^(3k-1), and z^(3k-1) lies in the 3-Sylow subgroup.
        let k = if t % 3 == 2 {
            (t + 1) / 3
        } else {
            (2 * t + 1) / 3
        };
        let r0 = self.pow(z, k);
        let err = self.div(self.pow(r0, 3), z)?;
        if err == self.one() {
            return Ok(Some(r0));
        }
        let nonresidue = self
            .elements()
            .skip(1)
            .find(|&g| self.pow(g, (q - 1) / 3) != self.one())
            .ok_or_else(|| Error::InternalError("no cubic nonresidue".into()))?;
        // c generates the 3-Sylow subgroup, of order 3^s.
        let c = self.pow(nonresidue, t);
        let log = self.sylow3_log(c, err, s)?;
        if log % 3 != 0 {
            return Err(Error::InternalError("cube root descent failed".into()));
        }
        let order = 3u64.pow(s);
        let h = self.pow(c, (order - log / 3) % order);
        let root = self.mul(r0, h);
        debug_assert_eq!(self.pow(root, 3), z);
        Ok(Some(root))
    }

    /// Discrete log of `x` to base `c`, where `c` has order `3^s`, digit by digit.
    fn sylow3_log(&self, c: Fe, x: Fe, s: u32) -> Result<u64> {
        let order = 3u64.pow(s);
        let gamma = self.pow(c, order / 3);
        let mut log = 0u64;
        for i in 0..s {
            let partial = self.div(x, self.pow(c, log))?;
            let probe = self.pow(partial, 3u64.pow(s - 1 - i));
            let digit = (0..3u64)
                .find(|&d| self.pow(gamma, d) == probe)
                .ok_or_else(|| Error::InternalError("element outside 3-Sylow subgroup".into()))?;
            log += digit * 3u64.pow(i);
        }
        Ok(log)
    }

    /// Smallest generator of `F_p^*` (prime subfield).
    pub fn multiplicative_generator(&self) -> u32 {
        let p = self.p();
        let mut factors = Vec::new();
        let mut m = p - 1;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..p)
            .find(|&g| factors.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
            .unwrap_or(1) as u32
    }

    /// Embeds an element of the prime subfield into this field.
    pub fn embed(&self, x: Fe) -> Fe {
        Fe { c0: x.c0, c1: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Field::prime(9), Err(Error::NonPrime(9))));
        assert!(matches!(Field::prime(1), Err(Error::NonPrime(1))));
        assert!(matches!(
            Field::prime(2),
            Err(Error::UnsupportedCharacteristic(2))
        ));
        assert!(matches!(
            Field::prime(3),
            Err(Error::UnsupportedCharacteristic(3))
        ));
        assert_eq!(f(5).order(), 5);
    }

    #[test]
    fn f25_uses_smallest_nonresidue() {
        let k = Field::new(5, 2).unwrap();
        assert_eq!(k.nonresidue(), 2);
        assert_eq!(k.order(), 25);
        assert_eq!(Field::new(7, 2).unwrap().nonresidue(), 3);
        assert_eq!(Field::new(17, 2).unwrap().nonresidue(), 3);
    }

    #[test]
    fn small_arithmetic() {
        let k = f(5);
        let (two, four) = (k.from_int(2), k.from_int(4));
        assert_eq!(k.add(two, four), k.from_int(1));
        assert_eq!(k.mul(two, four), k.from_int(3));
        assert_eq!(k.inv(two).unwrap(), k.from_int(3));
        assert!(matches!(k.inv(k.zero()), Err(Error::DivisionByZero)));
        let k7 = f(7);
        assert_eq!(k7.pow(k7.from_int(3), 6), k7.one());

        let k25 = Field::new(5, 2).unwrap();
        let u = k25.u().unwrap();
        assert_eq!(k25.mul(u, u), k25.from_int(2));
        assert!(k.u().is_err());
    }

    #[test]
    fn element_rejects_foreign_coefficients() {
        let k = f(5);
        assert!(matches!(k.element(5, 0), Err(Error::FieldMismatch)));
        assert!(matches!(k.element(1, 1), Err(Error::FieldMismatch)));
        assert!(Field::new(5, 2).unwrap().element(1, 1).is_ok());
    }

    #[test]
    fn character_examples() {
        let k = f(5);
        let chis: Vec<i8> = (0..5).map(|v| k.chi(k.from_int(v))).collect();
        assert_eq!(chis, vec![0, 1, -1, -1, 1]);
        assert_eq!(f(7).chi(f(7).from_int(3)), -1);
        let k25 = Field::new(5, 2).unwrap();
        let u = k25.u().unwrap();
        // N(u) = -2 = 3, a nonresidue mod 5
        assert_eq!(k25.norm(u), 3);
        assert_eq!(k25.chi(u), -1);
    }

    #[test]
    fn character_matches_euler_criterion_and_is_multiplicative() {
        for (p, d) in [(5, 1), (7, 1), (13, 1), (5, 2), (7, 2), (11, 2)] {
            let k = Field::new(p, d).unwrap();
            let elems: Vec<Fe> = k.elements().collect();
            let mut total = 0i64;
            for &x in &elems {
                assert_eq!(k.chi(x), k.chi_by_power(x), "p={p} d={d} x={x}");
                total += k.chi(x) as i64;
                for &y in &elems {
                    assert_eq!(k.chi(k.mul(x, y)), k.chi(x) * k.chi(y));
                }
            }
            assert_eq!(total, 0);
        }
    }

    #[test]
    fn inverse_and_frobenius() {
        let k = Field::new(11, 2).unwrap();
        for x in k.elements().skip(1) {
            assert_eq!(k.mul(x, k.inv(x).unwrap()), k.one());
            assert_eq!(k.frobenius(x), k.pow(x, 11));
            assert_eq!(
                k.embed(k.from_int(k.norm(x) as i64)),
                k.mul(x, k.frobenius(x))
            );
        }
    }

    #[test]
    fn cube_root_examples() {
        let k13 = f(13);
        let r = k13.cube_root(k13.from_int(12)).unwrap().unwrap();
        assert_eq!(k13.pow(r, 3), k13.from_int(12));
        let k5 = f(5);
        assert_eq!(k5.cube_root(k5.from_int(2)).unwrap(), Some(k5.from_int(3)));
        let k7 = f(7);
        assert_eq!(k7.cube_root(k7.from_int(2)).unwrap(), None);
        assert!(matches!(k7.cube_root(k7.zero()), Err(Error::ZeroInput)));
    }

    #[test]
    fn cube_root_exhaustive() {
        // 19 and 37 have 3-Sylow subgroups of order 9, exercising the descent.
        for (p, d) in [
            (5, 1),
            (7, 1),
            (13, 1),
            (19, 1),
            (37, 1),
            (5, 2),
            (7, 2),
            (11, 2),
        ] {
            let k = Field::new(p, d).unwrap();
            let cubes: std::collections::HashSet<Fe> =
                k.elements().skip(1).map(|x| k.pow(x, 3)).collect();
            for z in k.elements().skip(1) {
                match k.cube_root(z).unwrap() {
                    Some(r) => assert_eq!(k.pow(r, 3), z),
                    None => assert!(!cubes.contains(&z), "missed root of {z} in F_{p}^{d}"),
                }
                if k.order() % 3 == 2 {
                    assert!(k.cube_root(z).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn generators() {
        assert_eq!(f(5).multiplicative_generator(), 2);
        assert_eq!(f(7).multiplicative_generator(), 3);
        assert_eq!(f(11).multiplicative_generator(), 2);
        assert_eq!(f(13).multiplicative_generator(), 2);
    }
}
