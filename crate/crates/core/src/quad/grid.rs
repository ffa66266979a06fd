use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::Vector3;

/// Tensor-product Gauss–Legendre rule on an axis-aligned box.
#[derive(Clone, Debug)]
pub struct ProductGrid {
    axes: [Vec<(f64, f64)>; 3],
}

impl ProductGrid {
    pub fn new(lower: Vector3<f64>, upper: Vector3<f64>, points_per_axis: usize) -> Self {
        let n = NonZeroUsize::new(points_per_axis.max(1)).unwrap();
        let rule = GaussLegendre::new(n);
        let axis = |k: usize| {
            let (a, b) = (lower[k], upper[k]);
            rule.as_node_weight_pairs().iter().map(|&(x, w)| (0.5 * ((b - a) * x + b + a), 0.5 * (b - a) * w)).collect()
        };
        ProductGrid { axes: [axis(0), axis(1), axis(2)] }
    }

    /// Smallest box containing every point padded by `margin`.
    pub fn covering(points: &[Vector3<f64>], margin: f64, points_per_axis: usize) -> Self {
        let mut lo = Vector3::repeat(f64::INFINITY);
        let mut hi = Vector3::repeat(f64::NEG_INFINITY);
        for p in points {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        Self::new(lo.add_scalar(-margin), hi.add_scalar(margin), points_per_axis)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vector3<f64>, f64)> + '_ {
        let [ax, ay, az] = &self.axes;
        ax.iter().flat_map(move |&(x, wx)| {
            ay.iter().flat_map(move |&(y, wy)| az.iter().map(move |&(z, wz)| (Vector3::new(x, y, z), wx * wy * wz)))
        })
    }

    pub fn integrate(&self, f: impl Fn(&Vector3<f64>) -> f64) -> f64 {
        self.iter().map(|(p, w)| w * f(&p)).sum()
    }
}
