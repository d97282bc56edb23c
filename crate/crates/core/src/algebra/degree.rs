use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A tridegree `(c, w, s)`: integer and sign-representation parts of the stem, then filtration.
///
/// Ordered lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree {
    pub c: i64,
    pub w: i64,
    pub s: i64,
}

impl Degree {
    pub const ZERO: Degree = Degree { c: 0, w: 0, s: 0 };

    pub const fn new(c: i64, w: i64, s: i64) -> Self {
        Degree { c, w, s }
    }

    pub fn is_integer_part(&self) -> bool {
        self.w == 0
    }

    /// Underlying (non-equivariant) stem `c + w`.
    pub fn underlying(&self) -> i64 {
        self.c + self.w
    }

    /// The degree shift of a `d_r` differential.
    pub const fn differential(r: i64) -> Degree {
        Degree { c: -1, w: 0, s: r }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, o: Degree) -> Degree {
        Degree::new(self.c + o.c, self.w + o.w, self.s + o.s)
    }
}

impl Sub for Degree {
    type Output = Degree;
    fn sub(self, o: Degree) -> Degree {
        Degree::new(self.c - o.c, self.w - o.w, self.s - o.s)
    }
}

impl Neg for Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree::new(-self.c, -self.w, -self.s)
    }
}

impl Mul<i64> for Degree {
    type Output = Degree;
    fn mul(self, k: i64) -> Degree {
        Degree::new(self.c * k, self.w * k, self.s * k)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.c, self.w, self.s)
    }
}

/// Linear functional `λ(d) = λ_c·c + λ_w·w + λ_s·s` used to bound monomial enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Positivity {
    pub c: i64,
    pub w: i64,
    pub s: i64,
}

impl Default for Positivity {
    fn default() -> Self {
        Positivity { c: 2, w: 0, s: 1 }
    }
}

impl Positivity {
    pub fn eval(&self, d: Degree) -> i64 {
        self.c * d.c + self.w * d.w + self.s * d.s
    }
}
