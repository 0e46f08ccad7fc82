use alloc::vec::Vec;

/// `n` evenly spaced points on `[lo, hi]` with both endpoints exact.
///
/// `n < 2` yields just `lo` (or nothing for `n == 0`).
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let last = n - 1;
            (0..n)
                .map(|i| {
                    if i == last {
                        hi
                    } else {
                        lo + (hi - lo) * (i as f64) / (last as f64)
                    }
                })
                .collect()
        }
    }
}
