//! Numerically stable primitives shared across the crate.
//!
//! The quantities that drive everything here are powers of numbers barely
//! below one raised to huge exponents: `(1 - p)^n` with `p` around `1/t`
//! (as small as ~5.7e-9 for the big multi-state games) and `n` in the
//! hundreds of millions. Evaluating that by repeated multiplication or via
//! `ln(1 - p)` throws away the entire answer, so everything funnels through
//! `ln_1p` / `exp_m1`.

/// `(1 - p)^n` for `0 < p < 1` and real `n >= 0`.
pub fn pow_one_minus(p: f64, n: f64) -> f64 {
    (n * (-p).ln_1p()).exp()
}

/// Finite and strictly positive; rejects NaN.
pub(crate) fn positive_finite(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

/// Strictly inside (0, 1); rejects NaN.
pub(crate) fn in_open_unit_interval(p: f64) -> bool {
    p > 0.0 && p < 1.0
}

/// `1 - (1 - p)^n`, accurate even when the result is tiny.
pub fn one_minus_pow_one_minus(p: f64, n: f64) -> f64 {
    -(n * (-p).ln_1p()).exp_m1()
}

/// Running compensated (Kahan) sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// `ln(k!)` for `k = 0..=n`, built by compensated accumulation of `ln k`.
///
/// Plain accumulation drifts by ~`n * eps * ln(n!)`, which at n = 2000 is
/// already 1e-9 relative -- too coarse for oracle comparisons.
pub fn ln_factorial_table(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = KahanSum::default();
    table.push(0.0);
    for k in 1..=n {
        acc.add((k as f64).ln());
        table.push(acc.value());
    }
    table
}
