//! Lower convex envelope of a sampled 1D curve (monotone chain).

/// Indices of the lower hull vertices of `(xs[i], ys[i])`, left to right.
/// `xs` must be strictly increasing. Collinear interior points are dropped.
pub fn lower_hull_indices(xs: &[f64], ys: &[f64]) -> Vec<usize> {
    assert_eq!(xs.len(), ys.len(), "xs and ys differ in length");
    let mut hull: Vec<usize> = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Pop b unless a → b → i turns strictly counter-clockwise.
            let cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

/// The lower convex envelope evaluated back at every sample abscissa.
///
/// Points on the hull keep their value exactly; the rest are replaced by the
/// chord between the neighbouring hull vertices, capped at the original
/// value so the result never exceeds the input.
pub fn lower_convex_envelope(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    if xs.len() < 3 {
        return ys.to_vec();
    }
    let hull = lower_hull_indices(xs, ys);
    let mut out = ys.to_vec();
    for seg in hull.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let slope = (ys[b] - ys[a]) / (xs[b] - xs[a]);
        for k in (a + 1)..b {
            out[k] = (ys[a] + slope * (xs[k] - xs[a])).min(ys[k]);
        }
    }
    out
}

/// Convenience for uniformly spaced samples on `[0, 1]`.
pub fn lower_convex_envelope_uniform(ys: &[f64]) -> Vec<f64> {
    let n = ys.len();
    if n < 2 {
        return ys.to_vec();
    }
    let xs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    lower_convex_envelope(&xs, ys)
}
