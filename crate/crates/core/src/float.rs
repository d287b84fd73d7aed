//! Small floating point helpers shared by the analytic modules.

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if libm::fabs(self.sum) >= libm::fabs(v) {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `(cos 2πr/q, sin 2πr/q)` for an already-reduced residue `r` in `[0, q)`.
pub(crate) fn unit_root(r: u64, q: u64) -> (f64, f64) {
    let t = 2.0 * core::f64::consts::PI * (r as f64) / (q as f64);
    (libm::cos(t), libm::sin(t))
}
