use gauss_quad::legendre::GaussLegendre;

/// Gauss-Legendre rule on `[-1, 1]` with nodes forced to exact mirror symmetry,
/// so odd integrands integrate to zero up to summation rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct GlRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GlRule {
    pub fn new(n: usize) -> Self {
        let n = n.max(1);
        let gl = GaussLegendre::new(n.try_into().expect("n >= 1"));
        let mut pairs: Vec<(f64, f64)> = gl.as_node_weight_pairs().to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let x = 0.5 * (pairs[j].0 - pairs[i].0);
            let w = 0.5 * (pairs[i].1 + pairs[j].1);
            pairs[i] = (-x, w);
            pairs[j] = (x, w);
        }
        if n % 2 == 1 {
            pairs[n / 2].0 = 0.0;
        }
        GlRule {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `(node, weight)` pairs on `[-1, 1]`, nodes ascending.
    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let h = 0.5 * (b - a);
        let m = 0.5 * (b + a);
        h * self.pairs().map(|(x, w)| w * f(m + h * x)).sum::<f64>()
    }

    /// Composite rule over `panels` equal subintervals, generic over the value type.
    pub fn integrate_composite<T>(&self, a: f64, b: f64, panels: usize, mut f: impl FnMut(f64) -> T) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    {
        let step = (b - a) / panels as f64;
        let mut acc = T::default();
        for p in 0..panels {
            let lo = a + step * p as f64;
            let h = 0.5 * step;
            let m = lo + h;
            for (x, w) in self.pairs() {
                acc = acc + f(m + h * x) * (w * h);
            }
        }
        acc
    }
}

/// Composite Simpson rule with an even number of intervals `n`.
pub fn simpson<T>(a: f64, b: f64, n: usize, mut f: impl FnMut(f64) -> T) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
{
    assert!(n >= 2 && n % 2 == 0, "Simpson needs an even interval count");
    let h = (b - a) / n as f64;
    let mut acc = T::default();
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc = acc + f(a + h * i as f64) * w;
    }
    acc * (h / 3.0)
}

/// Samples of a Simpson grid: `(points, weights)` for `n` intervals.
pub fn simpson_grid(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2 && n % 2 == 0, "Simpson needs an even interval count");
    let h = (b - a) / n as f64;
    (0..=n)
        .map(|i| {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (a + h * i as f64, w * h / 3.0)
        })
        .unzip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_is_exact_for_polynomials_and_symmetric() {
        let r = GlRule::new(7);
        let v = r.integrate(0.0, 2.0, |x| x.powi(13));
        assert!((v - 2f64.powi(14) / 14.0).abs() < 1e-9);
        let nodes: Vec<f64> = r.pairs().map(|p| p.0).collect();
        for i in 0..nodes.len() {
            assert_eq!(nodes[i], -nodes[nodes.len() - 1 - i]);
        }
    }

    #[test]
    fn simpson_on_cubic() {
        let v: f64 = simpson(0.0, 1.0, 2, |x| x * x * x);
        assert!((v - 0.25).abs() < 1e-15);
        let (p, w) = simpson_grid(0.0, 1.0, 4);
        let s: f64 = p.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        assert!((s - 1.0 / 3.0).abs() < 1e-15);
    }
}
