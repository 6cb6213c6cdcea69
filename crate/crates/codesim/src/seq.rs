//! Sequence ranking and product-measure helpers shared by the simulators.

/// Writes the length-`out.len()` digit string of `rank` over an alphabet of
/// `size` letters, most significant letter first.
pub(crate) fn unrank_seq(mut rank: usize, size: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = rank % size;
        rank /= size;
    }
    debug_assert_eq!(rank, 0);
}

/// Rank of `seq` over an alphabet of `size` letters, inverse of [`unrank_seq`].
#[cfg(test)]
pub(crate) fn rank_seq(seq: &[usize], size: usize) -> usize {
    seq.iter().fold(0, |acc, &letter| acc * size + letter)
}

/// Fills `out` with the product measure of `rows`: `out[rank of (j_1..j_n)] =
/// Π_t rows[t][j_t]`, every row having width `width` and `out` having length
/// `width^n`. Expands in place, most significant letter first.
pub(crate) fn fill_product(rows: &[&[f64]], width: usize, out: &mut [f64]) {
    debug_assert_eq!(out.len(), width.pow(rows.len() as u32));
    out[0] = 1.0;
    let mut filled = 1;
    for row in rows {
        debug_assert_eq!(row.len(), width);
        for idx in (0..filled).rev() {
            let base = out[idx];
            for (j, &p) in row.iter().enumerate() {
                out[idx * width + j] = base * p;
            }
        }
        filled *= width;
    }
}

/// Streaming `log2(Σ_k 2^{x_k})` accumulator, stable for widely spread inputs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Log2Sum {
    max: f64,
    sum: f64,
}

impl Log2Sum {
    pub(crate) fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            sum: 0.0,
        }
    }

    pub(crate) fn push(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x <= self.max {
            self.sum += (x - self.max).exp2();
        } else {
            self.sum = self.sum * (self.max - x).exp2() + 1.0;
            self.max = x;
        }
    }

    /// The accumulated value; `-inf` when nothing finite was pushed.
    pub(crate) fn value(&self) -> f64 {
        if self.sum <= 0.0 {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.log2()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_round_trip() {
        let mut seq = [0usize; 3];
        for rank in 0..27 {
            unrank_seq(rank, 3, &mut seq);
            assert_eq!(rank_seq(&seq, 3), rank);
        }
    }

    #[test]
    fn product_fill_matches_direct_expansion() {
        let r0 = [0.25, 0.75];
        let r1 = [0.5, 0.5];
        let r2 = [0.1, 0.9];
        let mut out = vec![0.0; 8];
        fill_product(&[&r0, &r1, &r2], 2, &mut out);
        let mut seq = [0usize; 3];
        for (rank, &value) in out.iter().enumerate() {
            unrank_seq(rank, 2, &mut seq);
            let direct = r0[seq[0]] * r1[seq[1]] * r2[seq[2]];
            assert!((value - direct).abs() < 1e-15);
        }
        let total: f64 = out.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log2_sum_handles_spread_and_empty_inputs() {
        let mut acc = Log2Sum::new();
        assert_eq!(acc.value(), f64::NEG_INFINITY);
        acc.push(f64::NEG_INFINITY);
        assert_eq!(acc.value(), f64::NEG_INFINITY);
        for &x in &[-900.0, -899.0, -901.0] {
            acc.push(x);
        }
        let direct = (2f64.powi(0) + 2f64.powi(-1) + 2f64.powi(-2)).log2() - 899.0;
        assert!((acc.value() - direct).abs() < 1e-12);
    }
}
