//! Index-set enumeration used by the subset scans.

/// Iterates over all `k`-element subsets of `0..n` in lexicographic order.
pub struct Combinations {
    n: usize,
    k: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, k, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.as_mut()?;
        let item = current.clone();
        // Advance: rightmost index that can still move, then reset the tail.
        let mut pos = self.k;
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            if current[pos] < self.n - (self.k - pos) {
                current[pos] += 1;
                for i in pos + 1..self.k {
                    current[i] = current[i - 1] + 1;
                }
                break;
            }
        }
        Some(item)
    }
}

/// All `k`-subsets of `0..n`, lexicographic.
pub fn k_subsets(n: usize, k: usize) -> Combinations {
    Combinations::new(n, k)
}
