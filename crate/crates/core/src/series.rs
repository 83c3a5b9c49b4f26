//! Truncated Taylor series in one real variable with complex coefficients.
//!
//! `Series<N>` holds `c_0, ..., c_{N-1}` of `f(s0 + h) = Σ c_k h^k`; the k-th
//! derivative at `s0` is `k!·c_k`. Elementary functions use the usual
//! first-order recurrences, so closed-form profiles yield exact derivatives
//! to rounding without symbolic differentiation.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Series<const N: usize>(pub [Complex64; N]);

impl<const N: usize> Series<N> {
    pub fn constant(v: Complex64) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); N];
        c[0] = v;
        Series(c)
    }

    pub fn real(v: f64) -> Self {
        Self::constant(Complex64::new(v, 0.0))
    }

    /// The independent variable expanded at `s0`.
    pub fn variable(s0: f64) -> Self {
        let mut s = Self::real(s0);
        if N > 1 {
            s.0[1] = Complex64::new(1.0, 0.0);
        }
        s
    }

    pub fn value(&self) -> Complex64 {
        self.0[0]
    }

    /// `f^(k)(s0)`.
    pub fn derivative(&self, k: usize) -> Complex64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.0[k] * fact
    }

    /// `[f, f', ..., f^(N-1)]`.
    pub fn derivatives(&self) -> [Complex64; N] {
        let mut out = self.0;
        let mut fact = 1.0;
        for (k, v) in out.iter_mut().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            *v *= fact;
        }
        out
    }

    pub fn scale(&self, a: Complex64) -> Self {
        let mut out = *self;
        for v in &mut out.0 {
            *v *= a;
        }
        out
    }

    pub fn scale_re(&self, a: f64) -> Self {
        self.scale(Complex64::new(a, 0.0))
    }

    pub fn add_const(&self, a: Complex64) -> Self {
        let mut out = *self;
        out.0[0] += a;
        out
    }

    /// Coefficient-wise conjugate; valid because the expansion variable is real.
    pub fn conj(&self) -> Self {
        let mut out = *self;
        for v in &mut out.0 {
            *v = v.conj();
        }
        out
    }

    pub fn exp(&self) -> Self {
        let a = &self.0;
        let mut f = [Complex64::new(0.0, 0.0); N];
        f[0] = a[0].exp();
        for k in 1..N {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += a[j] * f[k - j] * j as f64;
            }
            f[k] = acc / k as f64;
        }
        Series(f)
    }

    /// `(sinh a, cosh a)` from the coupled recurrence.
    pub fn sinh_cosh(&self) -> (Self, Self) {
        let a = &self.0;
        let mut s = [Complex64::new(0.0, 0.0); N];
        let mut c = [Complex64::new(0.0, 0.0); N];
        s[0] = a[0].sinh();
        c[0] = a[0].cosh();
        for k in 1..N {
            let mut sa = Complex64::new(0.0, 0.0);
            let mut ca = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                sa += a[j] * c[k - j] * j as f64;
                ca += a[j] * s[k - j] * j as f64;
            }
            s[k] = sa / k as f64;
            c[k] = ca / k as f64;
        }
        (Series(s), Series(c))
    }

    pub fn cosh(&self) -> Self {
        self.sinh_cosh().1
    }

    /// `tanh a` via `t' = a'(1 − t²)`; stays bounded for large arguments.
    pub fn tanh(&self) -> Self {
        let a = &self.0;
        let mut t = [Complex64::new(0.0, 0.0); N];
        let mut w = [Complex64::new(0.0, 0.0); N];
        t[0] = a[0].tanh();
        w[0] = Complex64::new(1.0, 0.0) - t[0] * t[0];
        for k in 1..N {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += a[j] * w[k - j] * j as f64;
            }
            t[k] = acc / k as f64;
            let mut sq = Complex64::new(0.0, 0.0);
            for i in 0..=k {
                sq += t[i] * t[k - i];
            }
            w[k] = -sq;
        }
        Series(t)
    }

    /// `sech a` via `s' = −a' s tanh a`; stays bounded for large arguments.
    pub fn sech(&self) -> Self {
        let a = &self.0;
        let th = self.tanh().0;
        let mut s = [Complex64::new(0.0, 0.0); N];
        let mut p = [Complex64::new(0.0, 0.0); N];
        s[0] = 1.0 / a[0].cosh();
        p[0] = s[0] * th[0];
        for k in 1..N {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += a[j] * p[k - j] * j as f64;
            }
            s[k] = -acc / k as f64;
            let mut st = Complex64::new(0.0, 0.0);
            for i in 0..=k {
                st += s[i] * th[k - i];
            }
            p[k] = st;
        }
        Series(s)
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut out = Self::real(1.0);
        for _ in 0..n {
            out = out * *self;
        }
        out
    }

    pub fn recip(&self) -> Self {
        Self::real(1.0) / *self
    }
}

impl<const N: usize> Add for Series<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        out
    }
}

impl<const N: usize> Sub for Series<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        out
    }
}

impl<const N: usize> Neg for Series<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl<const N: usize> Mul for Series<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [Complex64::new(0.0, 0.0); N];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().take(N - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Series(out)
    }
}

impl<const N: usize> Div for Series<N> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let b = &rhs.0;
        let mut q = [Complex64::new(0.0, 0.0); N];
        for k in 0..N {
            let mut acc = self.0[k];
            for j in 1..=k {
                acc -= b[j] * q[k - j];
            }
            q[k] = acc / b[0];
        }
        Series(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: f64, tol: f64) -> bool {
        (a - Complex64::new(b, 0.0)).norm() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn elementary_derivatives() {
        let x0 = 0.7;
        let x = Series::<5>::variable(x0);
        let t = x.tanh().derivatives();
        let th = x0.tanh();
        let s2 = 1.0 - th * th;
        assert!(close(t[1], s2, 1e-15));
        assert!(close(t[2], -2.0 * th * s2, 1e-15));
        assert!(close(t[3], s2 * (6.0 * th * th - 2.0), 1e-14));
        let s = x.sech().derivatives();
        let se = 1.0 / x0.cosh();
        assert!(close(s[1], -se * th, 1e-15));
        assert!(close(s[2], se * (th * th - se * se), 1e-15));
        let e = x.scale_re(2.0).exp().derivatives();
        assert!(close(e[4], 16.0 * (2.0 * x0).exp(), 1e-13));
        let (sh, ch) = x.sinh_cosh();
        assert!(close(sh.derivative(3), x0.cosh(), 1e-14));
        assert!(close(ch.derivative(2), x0.cosh(), 1e-14));
    }

    #[test]
    fn sech_tanh_identity_far_out() {
        let x = Series::<6>::variable(300.0);
        let lhs = x.tanh() * x.tanh() + x.sech() * x.sech();
        assert!(close(lhs.value(), 1.0, 1e-15));
        for k in 1..6 {
            assert!(lhs.0[k].norm() < 1e-14);
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = Series::<6>::variable(0.3);
        let a = x.exp() + x.powi(3);
        let b = x.cosh().add_const(Complex64::new(0.5, 0.25));
        let back = (a * b) / b;
        for k in 0..6 {
            assert!((back.0[k] - a.0[k]).norm() < 1e-14);
        }
    }
}
