//! Piecewise-linear profiles of time with exact integrals.

/// A continuous piecewise-linear function defined by `(t, value)` knots.
///
/// Evaluation clamps outside the knot range. The running integral is
/// precomputed at the knots so `integral(t)` is exact for the trapezoidal
/// segments rather than accumulated step by step.
#[derive(Debug, Clone)]
pub struct PiecewiseLinear {
    times: Vec<f64>,
    values: Vec<f64>,
    cumulative: Vec<f64>,
}

impl PiecewiseLinear {
    /// Build from knots; times must be non-decreasing and non-empty.
    pub fn new(knots: &[(f64, f64)]) -> Self {
        assert!(!knots.is_empty(), "piecewise profile needs at least one knot");
        let times: Vec<f64> = knots.iter().map(|k| k.0).collect();
        let values: Vec<f64> = knots.iter().map(|k| k.1).collect();
        for w in times.windows(2) {
            assert!(w[1] >= w[0], "knot times must be non-decreasing");
        }
        let mut cumulative = vec![0.0; times.len()];
        for i in 1..times.len() {
            let dt = times[i] - times[i - 1];
            cumulative[i] = cumulative[i - 1] + 0.5 * (values[i] + values[i - 1]) * dt;
        }
        Self { times, values, cumulative }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(&[(0.0, value)])
    }

    pub fn start_time(&self) -> f64 {
        self.times[0]
    }

    pub fn end_time(&self) -> f64 {
        *self.times.last().unwrap()
    }

    /// True when every knot carries the same value.
    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|v| *v == self.values[0])
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn segment_index(&self, t: f64) -> usize {
        match self.times.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.times.len() - 1),
            Err(0) => 0,
            Err(i) => i - 1,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= self.times[0] {
            return self.values[0];
        }
        if t >= *self.times.last().unwrap() {
            return *self.values.last().unwrap();
        }
        let i = self.segment_index(t);
        let (t0, t1) = (self.times[i], self.times[i + 1]);
        if t1 == t0 {
            return self.values[i + 1];
        }
        let f = (t - t0) / (t1 - t0);
        self.values[i] + f * (self.values[i + 1] - self.values[i])
    }

    /// Exact integral from the first knot time to `t` (clamped evaluation
    /// outside the range, i.e. constant extension).
    pub fn integral(&self, t: f64) -> f64 {
        if t <= self.times[0] {
            return self.values[0] * (t - self.times[0]);
        }
        let last = *self.times.last().unwrap();
        if t >= last {
            return self.cumulative.last().unwrap()
                + self.values.last().unwrap() * (t - last);
        }
        let i = self.segment_index(t);
        let dt = t - self.times[i];
        let v_t = self.eval(t);
        self.cumulative[i] + 0.5 * (self.values[i] + v_t) * dt
    }
}
