//! Small crate-internal numeric helpers.

/// Kahan compensated accumulator. The oracle sums thousands of tiny
/// branch probabilities that must land within 1e-10 of 1, which plain
/// summation does not guarantee comfortably.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub(crate) fn new() -> Kahan {
        Kahan::default()
    }

    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_beats_naive_sum() {
        let mut k = Kahan::default();
        let parts = 10_000_000u64;
        let x = 1.0 / parts as f64;
        for _ in 0..parts {
            k.add(x);
        }
        assert!((k.value() - 1.0).abs() < 1e-14);
    }
}
