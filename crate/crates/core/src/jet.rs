//! Truncated Taylor arithmetic used to differentiate the analytic field
//! families exactly along a direction.
//!
//! A [`Jet`] stores the Taylor coefficients `c_k = f^(k)(0) / k!` of
//! `t -> f(x + t e)` up to fifth order. Field formulas are written once,
//! generic over [`Real`], and evaluated either on plain `f64` or on jets.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub(crate) const ORDER: usize = 5;

pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn cst(v: f64) -> Self;
    /// The value part, used for branching.
    fn re(&self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn powf(self, a: f64) -> Self;
    fn sqrt(self) -> Self {
        self.powf(0.5)
    }
    fn scale(self, c: f64) -> Self {
        self * Self::cst(c)
    }
}

impl Real for f64 {
    #[inline]
    fn cst(v: f64) -> Self {
        v
    }
    #[inline]
    fn re(&self) -> f64 {
        *self
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn powf(self, a: f64) -> Self {
        f64::powf(self, a)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn scale(self, c: f64) -> Self {
        self * c
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub c: [f64; ORDER + 1],
}

impl Jet {
    /// The independent variable `x + t * dir`.
    pub fn var(x: f64, dir: f64) -> Self {
        let mut c = [0.0; ORDER + 1];
        c[0] = x;
        c[1] = dir;
        Self { c }
    }

    /// k-th derivative with respect to t at t = 0.
    pub fn derivative(&self, k: usize) -> f64 {
        const FACT: [f64; ORDER + 1] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0];
        self.c[k] * FACT[k]
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(o.c) {
            *a += b;
        }
        Jet { c }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(o.c) {
            *a -= b;
        }
        Jet { c }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            c: self.c.map(|v| -v),
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; ORDER + 1];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = (0..=k).map(|j| self.c[j] * o.c[k - j]).sum();
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let mut c = [0.0; ORDER + 1];
        for k in 0..=ORDER {
            let acc: f64 = (1..=k).map(|j| o.c[j] * c[k - j]).sum();
            c[k] = (self.c[k] - acc) / o.c[0];
        }
        Jet { c }
    }
}

impl Real for Jet {
    fn cst(v: f64) -> Self {
        let mut c = [0.0; ORDER + 1];
        c[0] = v;
        Jet { c }
    }

    fn re(&self) -> f64 {
        self.c[0]
    }

    fn exp(self) -> Self {
        let mut h = [0.0; ORDER + 1];
        h[0] = self.c[0].exp();
        for k in 1..=ORDER {
            let acc: f64 = (1..=k).map(|j| j as f64 * self.c[j] * h[k - j]).sum();
            h[k] = acc / k as f64;
        }
        Jet { c: h }
    }

    fn ln(self) -> Self {
        let f = self.c;
        let mut h = [0.0; ORDER + 1];
        h[0] = f[0].ln();
        for k in 1..=ORDER {
            let acc: f64 = (1..k).map(|j| j as f64 * h[j] * f[k - j]).sum();
            h[k] = (f[k] - acc / k as f64) / f[0];
        }
        Jet { c: h }
    }

    fn powf(self, a: f64) -> Self {
        let f = self.c;
        let mut h = [0.0; ORDER + 1];
        h[0] = f[0].powf(a);
        for k in 1..=ORDER {
            let acc: f64 = (1..=k)
                .map(|j| ((a + 1.0) * j as f64 - k as f64) * f[j] * h[k - j])
                .sum();
            h[k] = acc / (k as f64 * f[0]);
        }
        Jet { c: h }
    }

    fn scale(self, s: f64) -> Self {
        Jet {
            c: self.c.map(|v| v * s),
        }
    }
}
