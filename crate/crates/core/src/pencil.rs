//! Elliptic surfaces over the `t`-line in Weierstrass form
//! `y^2 = x^3 + A4(t) x + A6(t)`.
//!
//! Three families live here:
//!
//! * the Inose pencil `y^2 = x^3 - 3A t^4 x + c t^5 (t^2 - 2B t + 1)` attached
//!   to `E x E`, with `J = j(E)/1728`, `B = +-(1 - J)` and `A^3 = J^2 c^2`;
//! * its quadratic twists `(A4, A6) -> (d^2 A4, d^3 A6)`;
//! * the isotrivial fibration on the Kummer model `f(t) y^2 = g(x)`, whose
//!   fiber over `t` is the twist of `y^2 = g(x)` by `f(t)`.
//!
//! The Inose normalization is not taken on faith: its fiber configuration
//! and point counts are checked by [`crate::kodaira`] and [`crate::certify`].

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::kodaira::Place;
use crate::poly::Poly;

/// Where a pencil came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Inose {
        curve_a: u32,
        curve_b: u32,
        j: u32,
        b_sign: i8,
        c: u32,
        twist_d: u32,
    },
    KummerPi0,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    field: Field,
    a4: Poly,
    a6: Poly,
    weight: u32,
    provenance: Provenance,
}

/// Fiber data at a place, as needed by the classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberEquation {
    /// Weierstrass coefficients of the fiber at a finite place.
    Finite { a: Fe, b: Fe },
    /// The chart `s = 1/t`: `s^{4w} A4(1/s)` and `s^{6w} A6(1/s)`, to be read at `s = 0`.
    InfinityChart { a4: Poly, a6: Poly },
}

fn minimal_at_zero(a4: &Poly, a6: &Poly, field: &Field) -> bool {
    let (k4, _) = a4.valuation_at(field, Fe::ZERO);
    let (k6, _) = a6.valuation_at(field, Fe::ZERO);
    !(k4 >= 4 && k6 >= 6)
}

impl Pencil {
    /// Builds a pencil of weight `w`: `w = 2` for K3 surfaces (`deg A4 <= 8`,
    /// `deg A6 <= 12`), `w = 1` for rational elliptic surfaces.
    pub fn new(
        field: &Field,
        a4: Poly,
        a6: Poly,
        weight: u32,
        provenance: Provenance,
    ) -> Result<Pencil> {
        if field.degree() != 1 {
            return Err(Error::InvalidPencil(
                "pencil coefficients must lie in F_p".into(),
            ));
        }
        if weight == 0 || weight > 2 {
            return Err(Error::InvalidPencil(format!(
                "weight {weight} not supported"
            )));
        }
        let (max4, max6) = (4 * weight as usize, 6 * weight as usize);
        if a4.degree().is_some_and(|d| d > max4) || a6.degree().is_some_and(|d| d > max6) {
            return Err(Error::InvalidPencil(format!(
                "coefficient degrees exceed ({max4}, {max6})"
            )));
        }
        let pencil = Pencil {
            field: field.clone(),
            a4,
            a6,
            weight,
            provenance,
        };
        if pencil.discriminant().is_zero() {
            return Err(Error::InvalidPencil(
                "discriminant vanishes identically".into(),
            ));
        }
        if !minimal_at_zero(&pencil.a4, &pencil.a6, field) {
            return Err(Error::InvalidPencil("not minimal at t = 0".into()));
        }
        let (f4, f6) = pencil.infinity_chart();
        if !minimal_at_zero(&f4, &f6, field) {
            return Err(Error::InvalidPencil("not minimal at t = infinity".into()));
        }
        Ok(pencil)
    }

    pub fn k3(field: &Field, a4: Poly, a6: Poly, provenance: Provenance) -> Result<Pencil> {
        Pencil::new(field, a4, a6, 2, provenance)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a4(&self) -> &Poly {
        &self.a4
    }

    pub fn a6(&self) -> &Poly {
        &self.a6
    }

    /// 1 for rational elliptic surfaces, 2 for K3 surfaces.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Total Euler number `12 w` of the smooth minimal model.
    pub fn euler_number(&self) -> u32 {
        12 * self.weight
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `Delta(t) = -16 (4 A4^3 + 27 A6^2)`.
    pub fn discriminant(&self) -> Poly {
        let k = &self.field;
        let cube = self.a4.pow(3, k).scale(k.from_int(4), k);
        let sq = self.a6.pow(2, k).scale(k.from_int(27), k);
        cube.add(&sq, k).scale(k.from_int(-16), k)
    }

    /// Chart at infinity: `(s^{4w} A4(1/s), s^{6w} A6(1/s))`.
    pub fn infinity_chart(&self) -> (Poly, Poly) {
        let w = self.weight as usize;
        (self.a4.flip(4 * w), self.a6.flip(6 * w))
    }

    /// Fiber coefficients at a finite point `t` of `ext`, an extension of the
    /// pencil's field.
    #[inline]
    pub fn fiber_at(&self, ext: &Field, t: Fe) -> (Fe, Fe) {
        (self.a4.eval(ext, t), self.a6.eval(ext, t))
    }

    pub fn fiber_equation_at(&self, ext: &Field, place: &Place) -> FiberEquation {
        match place {
            Place::Infinity => {
                let (a4, a6) = self.infinity_chart();
                FiberEquation::InfinityChart { a4, a6 }
            }
            Place::Finite { root, .. } => {
                let (a, b) = self.fiber_at(ext, *root);
                FiberEquation::Finite { a, b }
            }
        }
    }
}

/// `(A4, A6) -> (d^2 A4, d^3 A6)`.
pub fn pencil_twist(pencil: &Pencil, d: Fe) -> Result<Pencil> {
    let k = &pencil.field;
    k.check(d)?;
    if d.is_zero() {
        return Err(Error::ZeroTwist);
    }
    let d2 = k.square(d);
    let d3 = k.mul(d2, d);
    let provenance = match &pencil.provenance {
        Provenance::Inose {
            curve_a,
            curve_b,
            j,
            b_sign,
            c,
            twist_d,
        } => Provenance::Inose {
            curve_a: *curve_a,
            curve_b: *curve_b,
            j: *j,
            b_sign: *b_sign,
            c: *c,
            twist_d: k.mul(k.from_int(*twist_d as i64), d).c0(),
        },
        other => other.clone(),
    };
    Pencil::new(
        k,
        pencil.a4.scale(d2, k),
        pencil.a6.scale(d3, k),
        pencil.weight,
        provenance,
    )
}

/// Inose pencil for `E x E`:
/// `y^2 = x^3 - 3A t^4 x + c t^5 (t^2 - 2B t + 1)` with `J = j(E)/1728`,
/// `B = b_sign (1 - J)` and `A` a cube root of `J^2 c^2` (`A = 0` when `J = 0`).
pub fn inose_pencil(curve: &Curve, b_sign: i8, c: Fe) -> Result<Pencil> {
    let k = curve.field();
    if k.degree() != 1 {
        return Err(Error::FieldMismatch);
    }
    k.check(c)?;
    if c.is_zero() {
        return Err(Error::ZeroC);
    }
    let j = curve.j_invariant();
    let big_j = k.div(j, k.from_int(1728))?;
    let one_minus_j = k.sub(k.one(), big_j);
    let b = if b_sign >= 0 {
        one_minus_j
    } else {
        k.neg(one_minus_j)
    };
    let a = if big_j.is_zero() {
        Fe::ZERO
    } else {
        let target = k.square(k.mul(big_j, c));
        k.cube_root(target)?
            .ok_or(Error::NoCubeRoot { c: c.c0() })?
    };
    let a4 = Poly::monomial(k.mul(k.from_int(-3), a).c0(), 4);
    let mut a6 = vec![0u32; 8];
    a6[5] = c.c0();
    a6[6] = k.mul(k.mul(k.from_int(-2), b), c).c0();
    a6[7] = c.c0();
    Pencil::k3(
        k,
        a4,
        Poly::from_coeffs(a6),
        Provenance::Inose {
            curve_a: curve.a().c0(),
            curve_b: curve.b().c0(),
            j: j.c0(),
            b_sign: if b_sign >= 0 { 1 } else { -1 },
            c: c.c0(),
            twist_d: 1,
        },
    )
}

/// Representatives `g^0, ..., g^(m-1)` of `F_p^* / (F_p^*)^6`, `m = gcd(6, p-1)`,
/// for the smallest generator `g`.
pub fn sextic_class_representatives(field: &Field) -> Vec<Fe> {
    let p = field.p();
    let m = if (p - 1).is_multiple_of(6) { 6 } else { 2 };
    let g = field.from_int(field.multiplicative_generator() as i64);
    (0..m).map(|e| field.pow(g, e)).collect()
}

/// The finite family of Inose models searched for a Picard-number-21 model.
///
/// Enumerates `b_sign` in `{+1, -1}` (only `+1` when `J = 0`, where the two
/// signs are exchanged by `t -> -t` up to a change of `c`), `c` over the
/// sextic classes, and the quadratic twist `d` in `{1, n}` with `n` the
/// smallest nonresidue. Classes with no cube root of `J^2 c^2` are skipped
/// and pencils with identical coefficients are kept once.
pub fn candidate_models(curve: &Curve) -> Result<Vec<Pencil>> {
    let k = curve.field();
    let j_zero = curve.j_invariant().is_zero();
    let signs: &[i8] = if j_zero { &[1] } else { &[1, -1] };
    let twists = [k.one(), k.from_int(k.nonresidue() as i64)];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &b_sign in signs {
        for c in sextic_class_representatives(k) {
            let base = match inose_pencil(curve, b_sign, c) {
                Ok(p) => p,
                Err(Error::NoCubeRoot { .. }) => continue,
                Err(e) => return Err(e),
            };
            for &d in &twists {
                let pencil = if d == k.one() {
                    base.clone()
                } else {
                    pencil_twist(&base, d)?
                };
                if seen.insert((pencil.a4.clone(), pencil.a6.clone())) {
                    out.push(pencil);
                }
            }
        }
    }
    Ok(out)
}

/// `f(t) y^2 = g(x)` for the cubics `f`, `g` of two curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerModel {
    e1: Curve,
    e2: Curve,
}

pub fn kummer_model(e1: &Curve, e2: &Curve) -> Result<KummerModel> {
    if e1.field() != e2.field() || e1.field().degree() != 1 {
        return Err(Error::FieldMismatch);
    }
    Ok(KummerModel {
        e1: e1.clone(),
        e2: e2.clone(),
    })
}

impl KummerModel {
    /// The curve whose cubic is `f`, in the base variable `t`.
    pub fn base_curve(&self) -> &Curve {
        &self.e1
    }

    /// The curve whose cubic is `g`, twisted fiber by fiber.
    pub fn fiber_curve(&self) -> &Curve {
        &self.e2
    }

    pub fn field(&self) -> &Field {
        self.e1.field()
    }

    /// `f(t) = t^3 + a t + b`.
    pub fn f(&self) -> Poly {
        Poly::from_coeffs(vec![self.e1.b().c0(), self.e1.a().c0(), 0, 1])
    }

    /// `g(x) = x^3 + a' x + b'`.
    pub fn g(&self) -> Poly {
        Poly::from_coeffs(vec![self.e2.b().c0(), self.e2.a().c0(), 0, 1])
    }

    /// Weierstrass form of the projection to the `t`-line:
    /// `Y^2 = X^3 + a' f(t)^2 X + b' f(t)^3`.
    pub fn pi0_pencil(&self) -> Result<Pencil> {
        let k = self.field();
        let f = self.f();
        Pencil::k3(
            k,
            f.pow(2, k).scale(self.e2.a(), k),
            f.pow(3, k).scale(self.e2.b(), k),
            Provenance::KummerPi0,
        )
    }
}
