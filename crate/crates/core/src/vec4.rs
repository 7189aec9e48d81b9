//! Small helpers for vectors in R^4. Kept in one place so that the metric,
//! the isometric embedding and the cap membership test all share one
//! inner-product code path.

pub(crate) fn dot(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

pub(crate) fn sub(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

pub(crate) fn len(a: [f64; 4]) -> f64 {
    dot(a, a).sqrt()
}
