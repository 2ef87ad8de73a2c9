//! Parametrized planar curves with optional log-abs coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::scalar::Rational;
use crate::UniPoly;
use num_traits::{One, Zero};

/// Coordinate transform applied to a polynomial coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    Identity,
    /// `v -> log|v|`, defined where `v != 0`.
    LogAbs,
}

impl Transform {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "id" | "identity" => Ok(Transform::Identity),
            "log" | "logabs" | "log-abs" => Ok(Transform::LogAbs),
            _ => precondition(format!("unknown transform '{s}' (expected id or log)")),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Transform::Identity => "id",
            Transform::LogAbs => "log",
        }
    }

    /// Exact encoding of a shift along this coordinate. Identity coordinates
    /// shift by adding a rational; log coordinates shift by `log(rho)`,
    /// encoded by the positive multiplier `rho`.
    pub fn zero_shift(self) -> Rational {
        match self {
            Transform::Identity => Rational::zero(),
            Transform::LogAbs => Rational::one(),
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The curve `{(fx(p(t)), fy(q(t)))}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamCurve {
    p: UniPoly,
    q: UniPoly,
    fx: Transform,
    fy: Transform,
}

impl ParamCurve {
    pub fn new(p: UniPoly, q: UniPoly, fx: Transform, fy: Transform) -> Result<Self> {
        if p.is_constant() && q.is_constant() {
            return precondition("curve needs a nonconstant coordinate");
        }
        if (fx == Transform::LogAbs && p.is_zero()) || (fy == Transform::LogAbs && q.is_zero()) {
            return precondition("log-abs coordinate of the zero polynomial is nowhere defined");
        }
        Ok(ParamCurve { p, q, fx, fy })
    }

    pub fn identity(p: UniPoly, q: UniPoly) -> Result<Self> {
        Self::new(p, q, Transform::Identity, Transform::Identity)
    }

    pub fn p(&self) -> &UniPoly {
        &self.p
    }

    pub fn q(&self) -> &UniPoly {
        &self.q
    }

    pub fn fx(&self) -> Transform {
        self.fx
    }

    pub fn fy(&self) -> Transform {
        self.fy
    }

    /// Maximum coordinate degree.
    pub fn delta(&self) -> usize {
        self.p.deg().max(self.q.deg())
    }

    /// Whether the parameter value lies in the curve's domain.
    pub fn defined_at(&self, t: &Rational) -> bool {
        (self.fx == Transform::Identity || !self.p.eval(t).is_zero())
            && (self.fy == Transform::Identity || !self.q.eval(t).is_zero())
    }

    /// Exact encoding of the point at parameter `t`: identity coordinates as
    /// is, log coordinates by the absolute value of their argument. `None`
    /// outside the domain.
    pub fn point(&self, t: &Rational) -> Option<(Rational, Rational)> {
        if !self.defined_at(t) {
            return None;
        }
        let enc = |f: Transform, v: Rational| match f {
            Transform::Identity => v,
            Transform::LogAbs => num_traits::Signed::abs(&v),
        };
        Some((enc(self.fx, self.p.eval(t)), enc(self.fy, self.q.eval(t))))
    }
}

/// A translation vector in the encoding of [`Transform::zero_shift`]:
/// additive for identity coordinates, a positive multiplier for log
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    pub ax: Rational,
    pub ay: Rational,
}

impl Shift {
    pub fn new(ax: Rational, ay: Rational) -> Self {
        Shift { ax, ay }
    }

    /// Checks the encoding against the curve's transforms and rejects the
    /// zero translation.
    pub fn validate(&self, curve: &ParamCurve) -> Result<()> {
        for (f, v, name) in [(curve.fx, &self.ax, "ax"), (curve.fy, &self.ay, "ay")] {
            if f == Transform::LogAbs && !num_traits::Signed::is_positive(v) {
                return precondition(format!("{name} must be a positive multiplier for a log coordinate"));
            }
        }
        if self.ax == curve.fx.zero_shift() && self.ay == curve.fy.zero_shift() {
            return precondition("translation must be nonzero");
        }
        Ok(())
    }

    /// Applies the shift to an encoded point.
    pub fn apply(&self, curve: &ParamCurve, pt: &(Rational, Rational)) -> (Rational, Rational) {
        let go = |f: Transform, v: &Rational, a: &Rational| match f {
            Transform::Identity => v + a,
            Transform::LogAbs => v * a,
        };
        (go(curve.fx, &pt.0, &self.ax), go(curve.fy, &pt.1, &self.ay))
    }
}
