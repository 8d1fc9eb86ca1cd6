//! Dense univariate polynomials over `F_p` in the pencil parameter `t`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::{Fe, Field};

/// Coefficients in ascending order, reduced mod `p`, with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly(Vec<u32>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// Builds from signed integers, reducing mod `p`.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| field.from_int(c).c0()).collect())
    }

    /// `c * t^k`.
    pub fn monomial(c: u32, k: usize) -> Poly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly, field: &Field) -> Poly {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|k| {
                field
                    .add(
                        field.from_int(self.coeff(k) as i64),
                        field.from_int(other.coeff(k) as i64),
                    )
                    .c0()
            })
            .collect();
        Poly::from_coeffs(v)
    }

    pub fn mul(&self, other: &Poly, field: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let p = field.p();
        let mut v = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                v[i + j] = (v[i + j] + a as u64 * b as u64) % p;
            }
        }
        Poly::from_coeffs(v.into_iter().map(|c| c as u32).collect())
    }

    pub fn scale(&self, c: Fe, field: &Field) -> Poly {
        Poly::from_coeffs(
            self.0
                .iter()
                .map(|&a| field.mul(field.from_int(a as i64), c).c0())
                .collect(),
        )
    }

    pub fn pow(&self, e: u32, field: &Field) -> Poly {
        let mut acc = Poly::from_coeffs(vec![1]);
        for _ in 0..e {
            acc = acc.mul(self, field);
        }
        acc
    }

    /// `t^w * P(1/t)`, the chart at infinity for a polynomial of weight `w`.
    ///
    /// Panics if the degree exceeds `w`.
    pub fn flip(&self, w: usize) -> Poly {
        assert!(self.0.len() <= w + 1, "degree exceeds chart weight");
        let mut v = vec![0; w + 1];
        for (k, &c) in self.0.iter().enumerate() {
            v[w - k] = c;
        }
        Poly::from_coeffs(v)
    }

    /// Horner evaluation at a point of `ext`, which may be an extension of
    /// the coefficient field.
    #[inline]
    pub fn eval(&self, ext: &Field, t: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        for &c in self.0.iter().rev() {
            acc = ext.add(ext.mul(acc, t), ext.from_int(c as i64));
        }
        acc
    }

    /// Multiplicity of `t0` as a root, over the field of `t0`, together with
    /// the value of `P / (t - t0)^m` at `t0`. The zero polynomial has
    /// valuation `u32::MAX` and residual zero.
    pub fn valuation_at(&self, ext: &Field, t0: Fe) -> (u32, Fe) {
        if self.is_zero() {
            return (u32::MAX, Fe::ZERO);
        }
        let mut cur: Vec<Fe> = self.0.iter().map(|&c| ext.from_int(c as i64)).collect();
        let mut v = 0u32;
        loop {
            // synthetic division by (t - t0)
            let n = cur.len() - 1;
            let mut quotient = vec![Fe::ZERO; n];
            let mut r = cur[n];
            for i in (0..n).rev() {
                quotient[i] = r;
                r = ext.add(cur[i], ext.mul(r, t0));
            }
            if !r.is_zero() {
                return (v, r);
            }
            cur = quotient;
            v += 1;
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}t^{k}")?,
            }
        }
        Ok(())
    }
}
