use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::Q;

/// A complex value with a conservative absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexEstimate {
    pub value: Complex64,
    pub err: f64,
}

impl ComplexEstimate {
    pub fn new(value: Complex64, err: f64) -> Self {
        ComplexEstimate { value, err }
    }

    pub fn exact(value: Complex64) -> Self {
        Self::new(value, 0.0)
    }

    pub fn zero() -> Self {
        Self::exact(Complex64::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        Self::exact(Complex64::new(1.0, 0.0))
    }

    pub fn abs(&self) -> f64 {
        self.value.norm()
    }

    /// Scales by a rational, charging one rounding of the conversion.
    pub fn scale_q(&self, c: &Q) -> Self {
        let f = c.to_f64().unwrap_or(f64::NAN);
        ComplexEstimate {
            value: self.value * f,
            err: self.err * f.abs() + f64::EPSILON * (self.value * f).norm(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        ComplexEstimate {
            value: self.value * c,
            err: self.err * c.norm(),
        }
    }

    pub fn powi(&self, j: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..j {
            acc = acc * *self;
        }
        acc
    }

    /// True when `other` lies within the combined error bars plus `slack`.
    pub fn agrees_with(&self, other: &ComplexEstimate, slack: f64) -> bool {
        (self.value - other.value).norm() <= self.err + other.err + slack
    }
}

impl Add for ComplexEstimate {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ComplexEstimate::new(self.value + o.value, self.err + o.err)
    }
}

impl Sub for ComplexEstimate {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ComplexEstimate::new(self.value - o.value, self.err + o.err)
    }
}

impl Neg for ComplexEstimate {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexEstimate::new(-self.value, self.err)
    }
}

impl Mul for ComplexEstimate {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ComplexEstimate::new(
            self.value * o.value,
            self.abs() * o.err + o.abs() * self.err + self.err * o.err,
        )
    }
}

impl fmt::Display for ComplexEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.im == 0.0 {
            write!(f, "{:.15} ± {:.1e}", self.value.re, self.err)
        } else {
            write!(
                f,
                "{:.15} {:+.15}i ± {:.1e}",
                self.value.re, self.value.im, self.err
            )
        }
    }
}

impl Serialize for ComplexEstimate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ComplexEstimate", 3)?;
        st.serialize_field("re", &self.value.re)?;
        st.serialize_field("im", &self.value.im)?;
        st.serialize_field("err", &self.err)?;
        st.end()
    }
}
