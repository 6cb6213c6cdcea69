use serde::Serialize;

/// Labeled rate-combination ceilings produced by a region evaluator at one
/// specific auxiliary choice. Raw values may be negative (the corresponding
/// choice contributes nothing to the region); `clamped` floors them at zero.
#[derive(Debug, Clone, Serialize)]
pub struct RateBounds {
    r12: f64,
    entries: Vec<(String, f64)>,
}

impl RateBounds {
    pub fn new(r12: f64) -> Self {
        Self {
            r12,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, label: &str, value: f64) {
        debug_assert!(
            self.entries.iter().all(|(l, _)| l != label),
            "duplicate bound label {label}"
        );
        self.entries.push((label.to_string(), value));
    }

    pub fn r12(&self) -> f64 {
        self.r12
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    /// The bound as computed, possibly negative.
    pub fn raw(&self, label: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|&(_, v)| v)
    }

    /// The bound floored at zero.
    pub fn clamped(&self, label: &str) -> Option<f64> {
        self.raw(label).map(|v| v.max(0.0))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(l, _)| l.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_and_clamped_views() {
        let mut b = RateBounds::new(0.2);
        b.push("R1", -0.25);
        b.push("sum", 1.5);
        assert_eq!(b.raw("R1"), Some(-0.25));
        assert_eq!(b.clamped("R1"), Some(0.0));
        assert_eq!(b.clamped("sum"), Some(1.5));
        assert_eq!(b.raw("missing"), None);
        assert_eq!(b.labels().collect::<Vec<_>>(), vec!["R1", "sum"]);
    }
}
