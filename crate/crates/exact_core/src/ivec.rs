use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::ExactError;

/// Cross products are only taken between vectors whose coordinates are
/// strictly below this bound, so every intermediate fits in an `i64`.
pub const CROSS_BOUND: i64 = 1 << 30;

/// An integer 3-vector with checked arithmetic.
///
/// The infallible operators (`+`, `-`, unary `-`) panic on overflow even in
/// release builds; the `checked_*` methods report it instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "[i64; 3]", from = "[i64; 3]")]
pub struct IVec3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl IVec3 {
    pub const ZERO: IVec3 = IVec3 { x: 0, y: 0, z: 0 };

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        IVec3 { x, y, z }
    }

    pub fn to_array(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn checked_add(self, o: IVec3) -> Result<IVec3, ExactError> {
        let f = |a: i64, b: i64| a.checked_add(b).ok_or(ExactError::Overflow("vector add"));
        Ok(IVec3::new(f(self.x, o.x)?, f(self.y, o.y)?, f(self.z, o.z)?))
    }

    pub fn checked_sub(self, o: IVec3) -> Result<IVec3, ExactError> {
        let f = |a: i64, b: i64| a.checked_sub(b).ok_or(ExactError::Overflow("vector sub"));
        Ok(IVec3::new(f(self.x, o.x)?, f(self.y, o.y)?, f(self.z, o.z)?))
    }

    pub fn checked_scale(self, k: i64) -> Result<IVec3, ExactError> {
        let f = |a: i64| a.checked_mul(k).ok_or(ExactError::Overflow("vector scale"));
        Ok(IVec3::new(f(self.x)?, f(self.y)?, f(self.z)?))
    }

    pub fn checked_dot(self, o: IVec3) -> Result<i64, ExactError> {
        let v = self.x as i128 * o.x as i128 + self.y as i128 * o.y as i128 + self.z as i128 * o.z as i128;
        i64::try_from(v).map_err(|_| ExactError::Overflow("dot product"))
    }

    /// Dot product widened to `i128`; cannot overflow.
    pub fn dot_wide(self, o: IVec3) -> i128 {
        self.x as i128 * o.x as i128 + self.y as i128 * o.y as i128 + self.z as i128 * o.z as i128
    }

    /// Cross product. Both inputs must have every coordinate `< 2^30` in
    /// magnitude; otherwise the call is refused rather than risking overflow.
    pub fn cross(self, o: IVec3) -> Result<IVec3, ExactError> {
        let ok = |v: IVec3| v.to_array().iter().all(|c| c.unsigned_abs() < CROSS_BOUND as u64);
        if !ok(self) || !ok(o) {
            return Err(ExactError::Overflow("cross product input exceeds 2^30"));
        }
        Ok(IVec3::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x))
    }

    /// Divides every coordinate by `d`, failing unless all divide exactly.
    pub fn divide_exact(self, d: i64) -> Result<IVec3, ExactError> {
        if d == 0 {
            return Err(ExactError::DivisionByZero);
        }
        let f = |a: i64| {
            if a % d == 0 {
                a.checked_div(d).ok_or(ExactError::Overflow("vector divide"))
            } else {
                Err(ExactError::NonDivisible { value: a, divisor: d })
            }
        };
        Ok(IVec3::new(f(self.x)?, f(self.y)?, f(self.z)?))
    }

    /// Divides out the gcd of the coordinates; the zero vector is unchanged.
    pub fn primitive(self) -> IVec3 {
        let g = gcd(gcd(self.x, self.y), self.z);
        if g <= 1 {
            self
        } else {
            IVec3::new(self.x / g, self.y / g, self.z / g)
        }
    }

    pub fn max_norm(self) -> u64 {
        self.x.unsigned_abs().max(self.y.unsigned_abs()).max(self.z.unsigned_abs())
    }

    pub fn l1_norm(self) -> u64 {
        self.x.unsigned_abs() + self.y.unsigned_abs() + self.z.unsigned_abs()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

impl Add for IVec3 {
    type Output = IVec3;
    fn add(self, o: IVec3) -> IVec3 {
        self.checked_add(o).expect("IVec3 addition overflow")
    }
}

impl Sub for IVec3 {
    type Output = IVec3;
    fn sub(self, o: IVec3) -> IVec3 {
        self.checked_sub(o).expect("IVec3 subtraction overflow")
    }
}

impl Neg for IVec3 {
    type Output = IVec3;
    fn neg(self) -> IVec3 {
        IVec3::ZERO - self
    }
}

impl fmt::Debug for IVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Display for IVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<IVec3> for [i64; 3] {
    fn from(v: IVec3) -> Self {
        v.to_array()
    }
}

impl From<[i64; 3]> for IVec3 {
    fn from(a: [i64; 3]) -> Self {
        IVec3::new(a[0], a[1], a[2])
    }
}
