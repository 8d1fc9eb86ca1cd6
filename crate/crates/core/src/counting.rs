//! Fiberwise point counting on elliptic surfaces over `F_p` and `F_{p^2}`.
//!
//! `#X(F_q)` is the sum over `t` in `P^1(F_q)` of the points on the fiber of
//! the smooth minimal model. Smooth fibers are counted with the quadratic
//! character, `q + 1 + sum_x chi(x^3 + a x + b)`; singular fibers use the
//! table in [`crate::kodaira::fiber_point_count`], or any other
//! [`FiberCorrection`].
//!
//! The loop over places is a data-parallel map with an integer-sum
//! reduction, so the result does not depend on the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::kodaira::{self, FiberDatum, KodairaClass, Place};
use crate::pencil::{KummerModel, Pencil, Provenance};
use crate::poly::Poly;

/// Point counts of singular fibers.
pub trait FiberCorrection: Sync {
    fn fiber_count(&self, fiber: &FiberDatum, q: u64) -> Result<i64>;
}

/// The Kodaira-Neron table.
#[derive(Clone, Copy, Debug, Default)]
pub struct KodairaNeron;

impl FiberCorrection for KodairaNeron {
    fn fiber_count(&self, fiber: &FiberDatum, q: u64) -> Result<i64> {
        kodaira::fiber_point_count(fiber, q)
    }
}

/// How the loop over places is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Engine {
    /// Sum of `f(i)` over `0..n`.
    fn sum<F>(self, n: usize, f: F) -> i64
    where
        F: Fn(usize) -> i64 + Sync + Send,
    {
        match self {
            Engine::Sequential => (0..n).map(f).sum(),
            #[cfg(feature = "parallel")]
            Engine::Parallel => (0..n).into_par_iter().map(f).sum(),
        }
    }
}

/// `F_p` for `k = 1`, `F_{p^2}` for `k = 2`.
pub fn counting_field(base: &Field, k: u32) -> Result<Field> {
    match k {
        1 => Ok(base.base()),
        2 => Ok(base.extension()),
        _ => Err(Error::InvalidPencil(format!(
            "counts over F_p^{k} are not supported"
        ))),
    }
}

/// Precomputed `x^3` for every `x`, indexed by [`Field::index`].
struct Cubes(Vec<Fe>);

impl Cubes {
    fn new(field: &Field) -> Cubes {
        Cubes(
            field
                .elements()
                .map(|x| field.mul(field.square(x), x))
                .collect(),
        )
    }
}

/// `q + 1 + sum_x chi(x^3 + a x + b)` using the cube table.
#[inline]
fn smooth_count(field: &Field, cubes: &Cubes, a: Fe, b: Fe) -> i64 {
    let mut sum = 0i64;
    if a.is_zero() {
        for &x3 in &cubes.0 {
            sum += field.chi(field.add(x3, b)) as i64;
        }
    } else {
        for (i, &x3) in cubes.0.iter().enumerate() {
            let x = field.from_index(i);
            sum += field.chi(field.add(field.add(x3, field.mul(a, x)), b)) as i64;
        }
    }
    field.order() as i64 + 1 + sum
}

/// `#X(F_{p^k})` on the smooth minimal model, with the default engine and table.
pub fn surface_count(pencil: &Pencil, k: u32) -> Result<i64> {
    surface_count_with(pencil, k, Engine::default(), &KodairaNeron)
}

pub fn surface_count_with(
    pencil: &Pencil,
    k: u32,
    engine: Engine,
    corrections: &dyn FiberCorrection,
) -> Result<i64> {
    let ext = counting_field(pencil.field(), k)?;
    let q = ext.order();
    let p = ext.p() as u32;
    let fibers = kodaira::rational_fibers(pencil, &ext)?;

    let mut singular: Vec<Option<i64>> = vec![None; q as usize];
    let mut at_infinity = None;
    for fiber in &fibers {
        let n = corrections.fiber_count(fiber, q)?;
        match &fiber.place {
            Place::Infinity => at_infinity = Some(n),
            Place::Finite { root, .. } => singular[ext.index(*root)] = Some(n),
        }
    }
    let infinity = match at_infinity {
        Some(n) => n,
        None => {
            let (a4, a6) = pencil.infinity_chart();
            let (a, b) = (
                ext.from_int(a4.coeff(0) as i64),
                ext.from_int(a6.coeff(0) as i64),
            );
            smooth_count(&ext, &Cubes::new(&ext), a, b)
        }
    };

    let cubes = Cubes::new(&ext);
    let finite = engine.sum(q as usize, |i| {
        let t = ext.from_index(i);
        // The pencil is defined over F_p, so conjugate fibers have equal
        // counts; visit each conjugate pair once.
        let weight = if t.is_base() {
            1
        } else if t.c1() > p - t.c1() {
            return 0;
        } else {
            2
        };
        let n = match singular[i] {
            Some(n) => n,
            None => {
                let (a, b) = pencil.fiber_at(&ext, t);
                smooth_count(&ext, &cubes, a, b)
            }
        };
        weight * n
    });
    Ok(finite + infinity)
}

/// Double loop over `(x, y)` counting solutions of `y^2 = x^3 + a x + b`,
/// plus the point at infinity. Test oracle; `O(q^2)`.
pub fn naive_fiber_count(field: &Field, a: Fe, b: Fe) -> i64 {
    let squares: Vec<Fe> = field.elements().map(|y| field.square(y)).collect();
    let mut n = 1;
    for x in field.elements() {
        let rhs = field.add(field.add(field.mul(field.square(x), x), field.mul(a, x)), b);
        n += squares.iter().filter(|&&y2| y2 == rhs).count() as i64;
    }
    n
}

/// Count of `Km(E1 x E2)` through the projection to the `t`-line, using
/// that the fiber over a good `t` is the twist of `E2` by `f(t)`, so its
/// trace is `chi(f(t)) a(E2)`.
pub fn kummer_count(model: &KummerModel, k: u32) -> Result<i64> {
    kummer_count_with(model, k, Engine::default(), &KodairaNeron)
}

pub fn kummer_count_with(
    model: &KummerModel,
    k: u32,
    engine: Engine,
    corrections: &dyn FiberCorrection,
) -> Result<i64> {
    let ext = counting_field(model.field(), k)?;
    let q = ext.order();
    let e2: Curve = if k == 1 {
        model.fiber_curve().clone()
    } else {
        model.fiber_curve().base_change()
    };
    let a2 = e2.trace();
    let f = model.f();
    let good = engine.sum(q as usize, |i| {
        let ft = f.eval(&ext, ext.from_index(i));
        if ft.is_zero() {
            0
        } else {
            q as i64 + 1 - ext.chi(ft) as i64 * a2
        }
    });
    // Every singular fiber is I0*; its residual cubic is a rescaling of g,
    // so the leaf count is the same everywhere.
    let g_roots = e2.two_torsion_roots().len() as u32;
    let f_roots = ext
        .elements()
        .filter(|&t| f.eval(&ext, t).is_zero())
        .count();
    let mut datum = FiberDatum::new(Place::Infinity, KodairaClass::I0Star);
    datum.rational_leaves = Some(1 + g_roots);
    let per_fiber = corrections.fiber_count(&datum, q)?;
    Ok(good + (f_roots as i64 + 1) * per_fiber)
}

/// Counts the smooth minimal model of the rational surface `y^2 = x^3 + t`
/// (II at `t = 0`, II* at infinity) over `F_{p^k}` and checks it against
/// `q^2 + 10q + 1`.
pub fn selftest_rational_surface(p: u64, k: u32) -> Result<i64> {
    let base = Field::prime(p)?;
    let pencil = Pencil::new(
        &base,
        Poly::zero(),
        Poly::monomial(1, 1),
        1,
        Provenance::Custom,
    )?;
    let q = counting_field(&base, k)?.order() as i64;
    let counted = surface_count(&pencil, k)?;
    let expected = q * q + 10 * q + 1;
    if counted != expected {
        return Err(Error::SelftestFailed {
            q: q as u64,
            counted,
            expected,
        });
    }
    Ok(counted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{kummer_curve, verify_kummer_ranks_with};
    use crate::curve::find_supersingular;
    use crate::pencil::{candidate_models, kummer_model, pencil_twist};

    /// Sum over `P^1(F_q)` with every smooth fiber counted by enumeration.
    fn oracle_count(pencil: &Pencil, k: u32) -> i64 {
        let ext = counting_field(pencil.field(), k).unwrap();
        let q = ext.order();
        let mut total = 0;
        let fibers = kodaira::rational_fibers(pencil, &ext).unwrap();
        let singular_at = |t: Option<Fe>| {
            fibers.iter().find(|f| match (&f.place, t) {
                (Place::Infinity, None) => true,
                (Place::Finite { root, .. }, Some(t)) => *root == t,
                _ => false,
            })
        };
        for t in ext.elements() {
            total += match singular_at(Some(t)) {
                Some(f) => kodaira::fiber_point_count(f, q).unwrap(),
                None => {
                    let (a, b) = pencil.fiber_at(&ext, t);
                    naive_fiber_count(&ext, a, b)
                }
            };
        }
        total += match singular_at(None) {
            Some(f) => kodaira::fiber_point_count(f, q).unwrap(),
            None => {
                let (a4, a6) = pencil.infinity_chart();
                naive_fiber_count(
                    &ext,
                    ext.from_int(a4.coeff(0) as i64),
                    ext.from_int(a6.coeff(0) as i64),
                )
            }
        };
        total
    }

    #[test]
    fn smooth_count_matches_enumeration() {
        for p in [5u64, 7] {
            for k in [1, 2] {
                let ext = counting_field(&Field::prime(p).unwrap(), k).unwrap();
                let cubes = Cubes::new(&ext);
                for a in ext.elements().step_by(3) {
                    for b in ext.elements().step_by(5) {
                        assert_eq!(
                            smooth_count(&ext, &cubes, a, b),
                            naive_fiber_count(&ext, a, b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn surface_count_matches_oracle() {
        // q <= 49, including F_25 and F_49
        for p in [5u64, 7] {
            let curve = find_supersingular(p).unwrap();
            for pencil in candidate_models(&curve).unwrap() {
                for k in [1, 2] {
                    assert_eq!(
                        surface_count(&pencil, k).unwrap(),
                        oracle_count(&pencil, k),
                        "p={p} k={k}"
                    );
                }
            }
        }
        for p in [11u64, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            let curve = find_supersingular(p).unwrap();
            let pencil = &candidate_models(&curve).unwrap()[0];
            assert_eq!(
                surface_count(pencil, 1).unwrap(),
                oracle_count(pencil, 1),
                "p={p}"
            );
        }
    }

    #[test]
    fn engines_agree() {
        let curve = find_supersingular(13).unwrap();
        for pencil in candidate_models(&curve).unwrap() {
            for k in [1, 2] {
                let seq =
                    surface_count_with(&pencil, k, Engine::Sequential, &KodairaNeron).unwrap();
                assert_eq!(surface_count(&pencil, k).unwrap(), seq);
            }
        }
    }

    #[test]
    fn kummer_paths_agree() {
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            let e = kummer_curve(p).unwrap();
            let model = kummer_model(&e, &e).unwrap();
            let pencil = model.pi0_pencil().unwrap();
            for k in [1, 2] {
                assert_eq!(
                    kummer_count(&model, k).unwrap(),
                    surface_count(&pencil, k).unwrap(),
                    "p={p} k={k}"
                );
            }
        }
    }

    #[test]
    fn square_twist_leaves_counts_alone() {
        for p in [7u64, 11, 13] {
            let k = Field::prime(p).unwrap();
            let curve = find_supersingular(p).unwrap();
            let pencil = &candidate_models(&curve).unwrap()[0];
            let twisted = pencil_twist(pencil, k.from_int(4)).unwrap();
            for e in [1, 2] {
                assert_eq!(
                    surface_count(pencil, e).unwrap(),
                    surface_count(&twisted, e).unwrap()
                );
            }
        }
    }

    #[test]
    fn rational_surface_selftest() {
        for (p, k) in [
            (5u64, 1u32),
            (7, 1),
            (11, 1),
            (13, 1),
            (5, 2),
            (7, 2),
            (11, 2),
        ] {
            let q = p.pow(k) as i64;
            assert_eq!(selftest_rational_surface(p, k).unwrap(), q * q + 10 * q + 1);
        }
        assert!(selftest_rational_surface(7, 3).is_err());
    }

    struct WrongLeaves;

    impl FiberCorrection for WrongLeaves {
        fn fiber_count(&self, fiber: &FiberDatum, q: u64) -> Result<i64> {
            let mut f = fiber.clone();
            if f.class == KodairaClass::I0Star {
                f.rational_leaves = Some(1);
            }
            kodaira::fiber_point_count(&f, q)
        }
    }

    #[test]
    fn wrong_leaf_table_is_reported() {
        assert!(matches!(
            verify_kummer_ranks_with(7, &WrongLeaves),
            Err(Error::ReportedMismatch { p: 7, .. })
        ));
    }
}
