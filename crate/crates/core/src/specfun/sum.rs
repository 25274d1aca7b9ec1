/// Neumaier-compensated running sum that also tracks the largest term.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
    max_abs: f64,
}

impl KahanSum {
    /// Empty sum.
    pub const fn new() -> Self {
        Self { sum: 0.0, comp: 0.0, max_abs: 0.0 }
    }

    /// Adds one term.
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        if x.abs() > self.max_abs {
            self.max_abs = x.abs();
        }
    }

    /// Current value.
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Largest absolute term added so far.
    pub fn max_term(&self) -> f64 {
        self.max_abs
    }

    /// `max|term| / |sum|`, infinite for an exactly cancelling sum of nonzero terms.
    pub fn cancellation_ratio(&self) -> f64 {
        let v = self.value().abs();
        if self.max_abs == 0.0 {
            1.0
        } else if v == 0.0 {
            f64::INFINITY
        } else {
            self.max_abs / v
        }
    }
}

impl core::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = KahanSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}
