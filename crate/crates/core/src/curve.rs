//! Short Weierstrass curves `y^2 = x^3 + a x + b` over `F_p` and `F_{p^2}`.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    field: Field,
    a: Fe,
    b: Fe,
}

/// `4a^3 + 27b^2`; the curve discriminant is `-16` times this.
pub fn cubic_discriminant(field: &Field, a: Fe, b: Fe) -> Fe {
    let a3 = field.mul(field.square(a), a);
    field.add(
        field.mul(field.from_int(4), a3),
        field.mul(field.from_int(27), field.square(b)),
    )
}

/// `q + 1 + sum_x chi(x^3 + a x + b)`: the number of projective points of
/// the Weierstrass cubic, singular or not.
pub fn weierstrass_count(field: &Field, a: Fe, b: Fe) -> i64 {
    let q = field.order() as i64;
    let sum: i64 = field
        .elements()
        .map(|x| {
            let x3 = field.mul(field.square(x), x);
            field.chi(field.add(field.add(x3, field.mul(a, x)), b)) as i64
        })
        .sum();
    q + 1 + sum
}

impl Curve {
    pub fn new(field: &Field, a: Fe, b: Fe) -> Result<Curve> {
        field.check(a)?;
        field.check(b)?;
        if cubic_discriminant(field, a, b).is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve {
            field: field.clone(),
            a,
            b,
        })
    }

    pub fn from_ints(field: &Field, a: i64, b: i64) -> Result<Curve> {
        Curve::new(field, field.from_int(a), field.from_int(b))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> Fe {
        self.a
    }

    pub fn b(&self) -> Fe {
        self.b
    }

    /// Evaluates the cubic `x^3 + a x + b`.
    pub fn cubic_at(&self, x: Fe) -> Fe {
        let k = &self.field;
        k.add(k.add(k.mul(k.square(x), x), k.mul(self.a, x)), self.b)
    }

    pub fn point_count(&self) -> i64 {
        weierstrass_count(&self.field, self.a, self.b)
    }

    /// Frobenius trace `q + 1 - #E(F_q)`.
    pub fn trace(&self) -> i64 {
        self.field.order() as i64 + 1 - self.point_count()
    }

    pub fn j_invariant(&self) -> Fe {
        let k = &self.field;
        let a3 = k.mul(k.square(self.a), self.a);
        let num = k.mul(k.from_int(1728 * 4), a3);
        k.div(num, cubic_discriminant(k, self.a, self.b))
            .expect("nonsingular curve has nonzero discriminant")
    }

    /// `y^2 = x^3 + a d^2 x + b d^3`.
    pub fn quadratic_twist(&self, d: Fe) -> Result<Curve> {
        let k = &self.field;
        k.check(d)?;
        if d.is_zero() {
            return Err(Error::ZeroTwist);
        }
        let d2 = k.square(d);
        Curve::new(k, k.mul(self.a, d2), k.mul(self.b, k.mul(d2, d)))
    }

    /// Roots of the cubic in the field of definition: the x-coordinates of
    /// the rational 2-torsion points.
    pub fn two_torsion_roots(&self) -> Vec<Fe> {
        self.field
            .elements()
            .filter(|&x| self.cubic_at(x).is_zero())
            .collect()
    }

    /// The same equation read over the quadratic extension.
    pub fn base_change(&self) -> Curve {
        let ext = self.field.extension();
        Curve {
            a: ext.embed(self.a),
            b: ext.embed(self.b),
            field: ext,
        }
    }
}

/// Trace over `F_{p^k}` from the trace over `F_p`, via `a_{k} = a_1 a_{k-1} - p a_{k-2}`.
pub fn trace_lift(a1: i64, p: u64, k: u32) -> i64 {
    let p = p as i64;
    let (mut prev, mut cur) = (2i64, a1);
    for _ in 1..k {
        let next = a1 * cur - p * prev;
        prev = cur;
        cur = next;
    }
    if k == 0 {
        2
    } else {
        cur
    }
}

/// A curve over `F_p` with trace zero.
///
/// `p = 2 (mod 3)` gives `y^2 = x^3 + 1` (j = 0), `p = 3 (mod 4)` gives
/// `y^2 = x^3 - x` (j = 1728). Otherwise `p = 1 (mod 12)` and we scan
/// `y^2 = x^3 + 3s x + 2s` with `s = j / (1728 - j)`; any model with
/// supersingular `j` already has trace zero because `p | a` and `|a| <= 2 sqrt(p)`.
pub fn find_supersingular(p: u64) -> Result<Curve> {
    let k = Field::prime(p)?;
    if p % 3 == 2 {
        return Curve::from_ints(&k, 0, 1);
    }
    if p % 4 == 3 {
        return Curve::from_ints(&k, -1, 0);
    }
    find_supersingular_generic(p)?.ok_or_else(|| {
        Error::InternalError(format!("j-scan found no supersingular curve over F_{p}"))
    })
}

/// The member of the `j`-scan family `y^2 = x^3 + 3s x + 2s` with `j`.
/// Only defined for `j` outside `{0, 1728}`.
pub fn curve_with_j(field: &Field, j: Fe) -> Result<Curve> {
    let s = field.div(j, field.sub(field.from_int(1728), j))?;
    Curve::new(
        field,
        field.mul(field.from_int(3), s),
        field.mul(field.from_int(2), s),
    )
}

/// First trace-zero curve in the `j`-scan with `j` outside `{0, 1728}`, if any.
pub fn find_supersingular_generic(p: u64) -> Result<Option<Curve>> {
    let k = Field::prime(p)?;
    let j1728 = k.from_int(1728);
    for j in k.elements() {
        if j.is_zero() || j == j1728 {
            continue;
        }
        let Ok(e) = curve_with_j(&k, j) else {
            continue;
        };
        if e.trace() == 0 {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// A trace-zero curve with all three 2-torsion points rational, if one exists.
/// For `p = 3 (mod 4)` this is `y^2 = x^3 - x`; for `p = 1 (mod 4)` none
/// exists since `#E(F_p) = p + 1` is not divisible by 4.
pub fn find_supersingular_full_two_torsion(p: u64) -> Result<Option<Curve>> {
    let k = Field::prime(p)?;
    if p % 4 == 1 {
        return Ok(None);
    }
    let e = Curve::from_ints(&k, -1, 0)?;
    debug_assert_eq!(e.trace(), 0);
    Ok(Some(e))
}
