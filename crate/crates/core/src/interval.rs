use crate::error::Error;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Integration domain `[a, b]` with `a < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<T> {
    a: T,
    b: T,
}

impl<T: Scalar> Interval<T> {
    /// Fails unless `a < b` (which also rejects NaN endpoints).
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(a: T, b: T) -> Result<Self, Error> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::EmptyInterval {
                a: format!("{a:?}"),
                b: format!("{b:?}"),
            });
        }
        Ok(Interval { a, b })
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn width(&self) -> T {
        self.b.clone() - self.a.clone()
    }

    /// Node spacing `h = (b - a)/4`.
    pub fn step(&self) -> T {
        self.width() / T::from_i64(4)
    }

    /// The five equally spaced nodes, left to right:
    /// `a, (3a+b)/4, (a+b)/2, (a+3b)/4, b`.
    pub fn nodes(&self) -> [T; 5] {
        let (a, b) = (self.a.clone(), self.b.clone());
        let four = T::from_i64(4);
        [
            a.clone(),
            (T::from_i64(3) * a.clone() + b.clone()) / four.clone(),
            (a.clone() + b.clone()) / T::from_i64(2),
            (a.clone() + T::from_i64(3) * b.clone()) / four,
            b,
        ]
    }

    /// Uniform partition into `panels` cells. The first cell starts at `a`
    /// and the last ends at `b` exactly.
    pub fn subdivide(&self, panels: usize) -> Result<Vec<Interval<T>>, Error> {
        if panels == 0 {
            return Err(Error::ZeroPanels);
        }
        let n = T::from_i64(panels as i64);
        let width = self.width();
        let point = |j: usize| -> T {
            if j == 0 {
                self.a.clone()
            } else if j == panels {
                self.b.clone()
            } else {
                self.a.clone() + width.clone() * T::from_i64(j as i64) / n.clone()
            }
        };
        (0..panels)
            .map(|j| Interval::new(point(j), point(j + 1)))
            .collect()
    }

    pub fn contains(&self, t: &T) -> bool {
        &self.a <= t && t <= &self.b
    }
}

impl Interval<Rational> {
    pub fn unit() -> Self {
        Interval {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    pub fn to_f64(&self) -> Interval<f64> {
        Interval {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_reversed() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert!(Interval::new(Rational::one(), Rational::one()).is_err());
    }

    #[test]
    fn nodes_and_step() {
        let iv = Interval::new(Rational::from_integer(-1), Rational::from_integer(3)).unwrap();
        let nodes: Vec<i64> = vec![-1, 0, 1, 2, 3];
        for (n, e) in iv.nodes().iter().zip(nodes) {
            assert_eq!(*n, e);
        }
        assert_eq!(iv.step(), 1);
        assert_eq!(iv.width(), 4);
    }

    #[test]
    fn subdivide_hits_endpoints() {
        let iv = Interval::new(0.1, 0.7).unwrap();
        let cells = iv.subdivide(7).unwrap();
        assert_eq!(cells.len(), 7);
        assert_eq!(*cells[0].a(), 0.1);
        assert_eq!(*cells[6].b(), 0.7);
        for w in cells.windows(2) {
            assert_eq!(w[0].b(), w[1].a());
        }
        assert_eq!(iv.subdivide(1).unwrap()[0], iv);
        assert_eq!(iv.subdivide(0), Err(Error::ZeroPanels));
    }
}
