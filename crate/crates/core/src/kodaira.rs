//! Singular fibers of a pencil, classified from the valuations of
//! `(A4, A6, Delta)` at each place (residue characteristic at least 5),
//! together with the number of rational points each fiber type contributes
//! on the smooth minimal model.
//!
//! | v(A4) | v(A6) | v(Delta) | type | Euler |
//! |-------|-------|----------|------|-------|
//! | 0     | 0     | n        | I_n  | n     |
//! | >= 1  | 1     | 2        | II   | 2     |
//! | >= 2  | 2     | 4        | IV   | 4     |
//! | >= 2  | >= 3  | 6        | I0*  | 6     |
//! | >= 4  | 5     | 10       | II*  | 10    |
//!
//! Only `I1`, `I2` among the multiplicative types are accepted. Anything else
//! is reported as [`Error::UnsupportedFiberType`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::pencil::Pencil;
use crate::poly::Poly;

/// A closed point of `P^1` over `F_p` of degree at most 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// `min_poly` is monic over `F_p`; `root` is a designated root of it,
    /// in `F_p` or `F_{p^2}`.
    Finite {
        root: Fe,
        min_poly: Poly,
    },
    Infinity,
}

impl Place {
    /// The place `t = root` for `root` in `F_p`.
    pub fn rational(field: &Field, root: Fe) -> Place {
        Place::Finite {
            root,
            min_poly: Poly::from_coeffs(vec![field.neg(root).c0(), 1]),
        }
    }

    /// The closed point through `root`; degree 2 when `root` lies outside `F_p`.
    pub fn through(ext: &Field, root: Fe) -> Place {
        if root.is_base() {
            return Place::rational(&ext.base(), root);
        }
        let conj = ext.frobenius(root);
        let trace = ext.add(root, conj);
        let norm = ext.mul(root, conj);
        Place::Finite {
            root,
            min_poly: Poly::from_coeffs(vec![norm.c0(), ext.neg(trace).c0(), 1]),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Place::Infinity => 1,
            Place::Finite { min_poly, .. } => min_poly.degree().unwrap_or(1) as u32,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite { root, min_poly } if min_poly.degree() == Some(1) => write!(f, "{root}"),
            Place::Finite { min_poly, .. } => write!(f, "root of {min_poly}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KodairaClass {
    I0,
    I1,
    I2,
    II,
    IV,
    I0Star,
    IIStar,
}

impl KodairaClass {
    pub fn euler(self) -> u32 {
        match self {
            KodairaClass::I0 => 0,
            KodairaClass::I1 => 1,
            KodairaClass::I2 => 2,
            KodairaClass::II => 2,
            KodairaClass::IV => 4,
            KodairaClass::I0Star => 6,
            KodairaClass::IIStar => 10,
        }
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, KodairaClass::I1 | KodairaClass::I2)
    }
}

impl fmt::Display for KodairaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KodairaClass::I0 => "I0",
            KodairaClass::I1 => "I1",
            KodairaClass::I2 => "I2",
            KodairaClass::II => "II",
            KodairaClass::IV => "IV",
            KodairaClass::I0Star => "I0*",
            KodairaClass::IIStar => "II*",
        };
        f.write_str(s)
    }
}

/// A fiber at a place, with the arithmetic data the point count needs. The
/// optional fields are read over the residue field the fiber was classified in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDatum {
    pub place: Place,
    pub class: KodairaClass,
    pub euler: u32,
    /// Multiplicative fibers: whether the node's tangents are rational.
    pub split: Option<bool>,
    /// I0*: identity leaf plus the rational roots of the residual cubic.
    pub rational_leaves: Option<u32>,
    /// IV: whether all three components are rational.
    pub iv_all_rational: Option<bool>,
}

impl FiberDatum {
    pub fn new(place: Place, class: KodairaClass) -> FiberDatum {
        FiberDatum {
            place,
            class,
            euler: class.euler(),
            split: None,
            rational_leaves: None,
            iv_all_rational: None,
        }
    }
}

/// `Delta(t)` and its order of vanishing at infinity, `12 w - deg Delta`.
pub fn discriminant_poly(pencil: &Pencil) -> (Poly, u32) {
    let delta = pencil.discriminant();
    let deg = delta.degree().unwrap_or(0) as u32;
    (delta, pencil.euler_number() - deg)
}

/// Classifies the fiber at `place`, reading splitness data over `residue`
/// (which must contain the place's designated root).
pub fn classify_at(pencil: &Pencil, residue: &Field, place: &Place) -> Result<FiberDatum> {
    let (delta, a4, a6, t0) = match place {
        Place::Infinity => {
            let (a4, a6) = pencil.infinity_chart();
            let w = pencil.weight() as usize;
            (pencil.discriminant().flip(12 * w), a4, a6, Fe::ZERO)
        }
        Place::Finite { root, .. } => (
            pencil.discriminant(),
            pencil.a4().clone(),
            pencil.a6().clone(),
            *root,
        ),
    };
    let (m, _) = delta.valuation_at(residue, t0);
    let (k4, r4) = a4.valuation_at(residue, t0);
    let (k6, r6) = a6.valuation_at(residue, t0);
    classify_valuations(residue, place.clone(), m, (k4, r4), (k6, r6))
}

fn classify_valuations(
    k: &Field,
    place: Place,
    m: u32,
    (k4, r4): (u32, Fe),
    (k6, r6): (u32, Fe),
) -> Result<FiberDatum> {
    if m == 0 {
        return Ok(FiberDatum::new(place, KodairaClass::I0));
    }
    if k4 >= 4 && k6 >= 6 {
        return Err(Error::NonMinimalPlace {
            place: place.to_string(),
        });
    }
    let unsupported = |place: &Place| Error::UnsupportedFiberType {
        place: place.to_string(),
        m,
        k4,
        k6,
    };
    if k4 == 0 {
        let class = match m {
            1 => KodairaClass::I1,
            2 => KodairaClass::I2,
            _ => return Err(unsupported(&place)),
        };
        // Fiber cubic x^3 + a x + b has a double root x0 = -3b/(2a) and a
        // simple root x1 = -2 x0; the node's tangents have slopes +-sqrt(x0 - x1).
        let (a, b) = (r4, r6);
        let x0 = k.div(k.mul(k.from_int(-3), b), k.mul(k.from_int(2), a))?;
        let mut datum = FiberDatum::new(place, class);
        datum.split = Some(k.chi(k.mul(k.from_int(3), x0)) == 1);
        return Ok(datum);
    }
    if k6 == 1 && m == 2 {
        return Ok(FiberDatum::new(place, KodairaClass::II));
    }
    if k4 >= 2 && k6 == 2 && m == 4 {
        let mut datum = FiberDatum::new(place, KodairaClass::IV);
        datum.iv_all_rational = Some(k.chi(r6) == 1);
        return Ok(datum);
    }
    if k4 >= 2 && k6 >= 3 && m == 6 {
        let a = if k4 == 2 { r4 } else { Fe::ZERO };
        let b = if k6 == 3 { r6 } else { Fe::ZERO };
        let roots = k
            .elements()
            .filter(|&x| {
                k.add(k.add(k.mul(k.square(x), x), k.mul(a, x)), b)
                    .is_zero()
            })
            .count() as u32;
        let mut datum = FiberDatum::new(place, KodairaClass::I0Star);
        datum.rational_leaves = Some(1 + roots);
        return Ok(datum);
    }
    if k4 >= 4 && k6 == 5 && m == 10 {
        return Ok(FiberDatum::new(place, KodairaClass::IIStar));
    }
    Err(unsupported(&place))
}

/// Singular fibers at the places of `P^1` that are rational over `ext`,
/// classified over `ext` (finite places in index order, then infinity).
pub fn rational_fibers(pencil: &Pencil, ext: &Field) -> Result<Vec<FiberDatum>> {
    let delta = pencil.discriminant();
    let mut out = Vec::new();
    for t in ext.elements() {
        if delta.eval(ext, t).is_zero() {
            out.push(classify_at(pencil, ext, &Place::through(ext, t))?);
        }
    }
    let inf = classify_at(pencil, ext, &Place::Infinity)?;
    if inf.class != KodairaClass::I0 {
        out.push(inf);
    }
    Ok(out)
}

/// Inventory of all singular fibers at closed points of degree at most 2.
///
/// Degree-1 places are classified over `F_p`; each conjugate pair of roots
/// in `F_{p^2}` gives one degree-2 place, classified over `F_{p^2}` at the
/// root with the smaller index.
pub fn classify_fibers(pencil: &Pencil) -> Result<Vec<FiberDatum>> {
    let base = pencil.field().clone();
    let ext = base.extension();
    let delta = pencil.discriminant();
    let mut out = Vec::new();
    for t in base.elements() {
        if delta.eval(&base, t).is_zero() {
            out.push(classify_at(pencil, &base, &Place::rational(&base, t))?);
        }
    }
    for t in ext.elements().filter(|t| !t.is_base()) {
        let conj = ext.frobenius(t);
        if ext.index(conj) < ext.index(t) || !delta.eval(&ext, t).is_zero() {
            continue;
        }
        out.push(classify_at(pencil, &ext, &Place::through(&ext, t))?);
    }
    let inf = classify_at(pencil, &base, &Place::Infinity)?;
    if inf.class != KodairaClass::I0 {
        out.push(inf);
    }
    Ok(out)
}

/// Checks that the geometric Euler numbers (`deg(place) * euler`) add up to `expected`.
pub fn euler_audit(fibers: &[FiberDatum], expected: u32) -> Result<()> {
    let sum: u32 = fibers.iter().map(|f| f.place.degree() * f.euler).sum();
    if sum == expected {
        Ok(())
    } else {
        Err(Error::AuditFailed { sum, expected })
    }
}

/// Rational points on a singular fiber of the smooth minimal model over `F_q`.
///
/// Smooth fibers have no table entry; they are counted by character sums.
pub fn fiber_point_count(fiber: &FiberDatum, q: u64) -> Result<i64> {
    let q = q as i64;
    let missing = || Error::InternalError(format!("incomplete fiber datum at {}", fiber.place));
    Ok(match fiber.class {
        KodairaClass::I0 => {
            return Err(Error::InternalError(
                "smooth fibers are counted by character sums".into(),
            ))
        }
        KodairaClass::I1 => {
            if fiber.split.ok_or_else(missing)? {
                q
            } else {
                q + 2
            }
        }
        KodairaClass::I2 => {
            if fiber.split.ok_or_else(missing)? {
                2 * q
            } else {
                2 * q + 2
            }
        }
        KodairaClass::II => q + 1,
        KodairaClass::IV => {
            if fiber.iv_all_rational.ok_or_else(missing)? {
                3 * q + 1
            } else {
                q + 1
            }
        }
        KodairaClass::I0Star => q + 1 + fiber.rational_leaves.ok_or_else(missing)? as i64 * q,
        KodairaClass::IIStar => 9 * q + 1,
    })
}
