//! Euler transform for alternating series, applied as repeated averaging of
//! partial sums. Polynomially varying term magnitudes are annihilated by the
//! successive averages, so the scheme also sums alternating block integrals
//! whose size grows slowly.

/// Streaming accelerator: feed terms one by one, read the current estimate.
#[derive(Debug, Clone)]
pub struct EulerSum {
    partial: f64,
    sums: Vec<f64>,
    depth: usize,
    last: Option<f64>,
}

impl EulerSum {
    /// `depth` bounds the number of averaging passes (and partial sums kept).
    pub fn new(depth: usize) -> Self {
        Self {
            partial: 0.0,
            sums: Vec::new(),
            depth: depth.max(1),
            last: None,
        }
    }

    pub fn push(&mut self, term: f64) -> f64 {
        self.partial += term;
        self.sums.push(self.partial);
        if self.sums.len() > self.depth + 1 {
            self.sums.remove(0);
        }
        let est = averaged(&self.sums);
        self.last = Some(est);
        est
    }

    pub fn estimate(&self) -> f64 {
        self.last.unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }
}

fn averaged(sums: &[f64]) -> f64 {
    let mut row = sums.to_vec();
    while row.len() > 1 {
        row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    row[0]
}

/// Sums `Σ term(k)` for an alternating sequence of terms, stopping when two
/// consecutive estimates agree to `tol`. Returns `(sum, error_estimate, terms_used)`.
pub fn sum_alternating<F>(mut term: F, tol: f64, min_terms: usize, max_terms: usize, depth: usize) -> (f64, f64, usize)
where
    F: FnMut(usize) -> f64,
{
    let mut acc = EulerSum::new(depth);
    let mut prev = f64::NAN;
    let mut prev_diff = f64::INFINITY;
    for k in 0..max_terms {
        let est = acc.push(term(k));
        let diff = (est - prev).abs();
        if k + 1 >= min_terms && diff <= tol && prev_diff <= tol {
            return (est, diff.max(prev_diff), k + 1);
        }
        prev_diff = diff;
        prev = est;
    }
    (acc.estimate(), prev_diff, max_terms)
}
