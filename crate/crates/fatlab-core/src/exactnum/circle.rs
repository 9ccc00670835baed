use serde::{Deserialize, Serialize};

use super::{ExactError, MatQ, Rational};

/// A rotation angle stored exactly as the point `(cos, sin)` on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Rational, Rational)", into = "(Rational, Rational)")]
pub struct CirclePoint {
    c: Rational,
    s: Rational,
}

impl CirclePoint {
    pub fn new(c: Rational, s: Rational) -> Result<Self, ExactError> {
        if &(&c * &c) + &(&s * &s) != Rational::one() {
            return Err(ExactError::NotOnCircle {
                c: c.to_string(),
                s: s.to_string(),
            });
        }
        Ok(CirclePoint { c, s })
    }

    pub fn identity() -> Self {
        CirclePoint {
            c: Rational::one(),
            s: Rational::zero(),
        }
    }

    /// Rotation by pi.
    pub fn half_turn() -> Self {
        CirclePoint {
            c: -Rational::one(),
            s: Rational::zero(),
        }
    }

    /// Rotation by pi/2.
    pub fn quarter_turn() -> Self {
        CirclePoint {
            c: Rational::zero(),
            s: Rational::one(),
        }
    }

    /// The point `(m + i n)^2 / (m^2 + n^2)`, i.e. `((m²−n²)/(m²+n²), 2mn/(m²+n²))`.
    ///
    /// Its exact half is `(m, n)/sqrt(m² + n²)` when `m² + n²` is a square,
    /// so callers wanting a halvable angle should compose two such points.
    ///
    /// # Panics
    /// Panics if `m == n == 0`.
    pub fn from_pythagorean(m: i64, n: i64) -> Self {
        assert!(m != 0 || n != 0, "degenerate Pythagorean parameter");
        let d = Rational::integer(m * m + n * n);
        CirclePoint {
            c: Rational::integer(m * m - n * n) / &d,
            s: Rational::integer(2 * m * n) / d,
        }
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn is_identity(&self) -> bool {
        self.c.is_one()
    }

    pub fn compose(&self, other: &CirclePoint) -> CirclePoint {
        CirclePoint {
            c: &(&self.c * &other.c) - &(&self.s * &other.s),
            s: &(&self.c * &other.s) + &(&self.s * &other.c),
        }
    }

    pub fn inverse(&self) -> CirclePoint {
        CirclePoint {
            c: self.c.clone(),
            s: -&self.s,
        }
    }

    /// `k`-fold composition; negative `k` composes the inverse.
    pub fn pow(&self, k: i64) -> CirclePoint {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CirclePoint::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// The principal half angle (cosine ≥ 0) when it is rational.
    pub fn half(&self) -> Option<CirclePoint> {
        let two = Rational::integer(2);
        let ch2 = (&Rational::one() + &self.c) / &two;
        if ch2.is_zero() {
            return Some(CirclePoint::quarter_turn());
        }
        let ch = ch2.sqrt_exact()?;
        let sh = &self.s / &(&two * &ch);
        Some(CirclePoint { c: ch, s: sh })
    }

    /// The 2×2 matrix `[[c, −s], [s, c]]`.
    pub fn rotation(&self) -> MatQ {
        MatQ::from_rows(vec![
            vec![self.c.clone(), -&self.s],
            vec![self.s.clone(), self.c.clone()],
        ])
        .expect("2x2")
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.c.to_f64(), self.s.to_f64())
    }
}

impl TryFrom<(Rational, Rational)> for CirclePoint {
    type Error = ExactError;

    fn try_from((c, s): (Rational, Rational)) -> Result<Self, Self::Error> {
        CirclePoint::new(c, s)
    }
}

impl From<CirclePoint> for (Rational, Rational) {
    fn from(p: CirclePoint) -> Self {
        (p.c, p.s)
    }
}

/// Angle addition: complex multiplication of `a.c + i a.s` and `b.c + i b.s`.
pub fn circle_compose(a: &CirclePoint, b: &CirclePoint) -> CirclePoint {
    a.compose(b)
}
