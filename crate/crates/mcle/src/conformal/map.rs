//! Composable numerical conformal maps.
//!
//! A [`MapRep`] is an ordered list of elementary factors applied left to
//! right in the forward (uniformizing) direction. Every factor preserves the
//! extended real line, except for a final disc Mobius factor, so boundary
//! points can be pushed through the composition without leaving the
//! boundary. All square roots are taken on the branch with values in the
//! closed upper half-plane; real inputs are special-cased so that boundary
//! evaluation does not depend on the sign of a floating-point zero.

use num_complex::Complex64 as C;

/// sqrt with values in the closed upper half-plane, continuous on C minus
/// the ray [0, inf).
fn sqrt_upper(w: C) -> C {
    let s = (-w).sqrt(); // principal: Re >= 0
    C::new(0.0, 1.0) * s
}

/// One elementary factor of a composed conformal map.
#[derive(Debug, Clone, Copy)]
pub enum Factor {
    /// w = (a z + b) / (c z + d), with ad - bc != 0.
    Mobius { a: C, b: C, c: C, d: C },
    /// Forward removes the vertical slit of half-plane capacity `dt` rooted
    /// at `u`: w = u + sqrt((z - u)^2 + 4 dt). Inverse welds it back.
    Slit { u: f64, dt: f64 },
    /// w = s * sqrt(z) (principal branch), used as the opening factor of a
    /// zipper; `s` is a unit modulus constant fixing the branch.
    SqrtBranch { s: C },
    /// w = z^2 or w = -z^2, the closing factor of a zipper, mapping a
    /// quadrant at the origin onto the half-plane.
    Square { neg: bool },
}

impl Factor {
    pub fn forward(&self, z: C) -> C {
        match *self {
            Factor::Mobius { a, b, c, d } => {
                let den = c * z + d;
                if den.norm_sqr() == 0.0 {
                    C::new(f64::INFINITY, 0.0)
                } else {
                    (a * z + b) / den
                }
            }
            Factor::Slit { u, dt } => {
                if z.im == 0.0 {
                    // Real points stay real on both sides of the slit base.
                    let h = z.re - u;
                    let v = (h * h + 4.0 * dt).sqrt();
                    return C::new(u + if h >= 0.0 { v } else { -v }, 0.0);
                }
                let h = z - C::new(u, 0.0);
                C::new(u, 0.0) + sqrt_upper(h * h + C::new(4.0 * dt, 0.0))
            }
            Factor::SqrtBranch { s } => s * z.sqrt(),
            Factor::Square { neg } => {
                let w = z * z;
                if neg {
                    -w
                } else {
                    w
                }
            }
        }
    }

    pub fn inverse(&self, w: C) -> C {
        match *self {
            Factor::Mobius { a, b, c, d } => {
                let den = -c * w + a;
                if den.norm_sqr() == 0.0 {
                    C::new(f64::INFINITY, 0.0)
                } else {
                    (d * w - b) / den
                }
            }
            Factor::Slit { u, dt } => {
                if w.im == 0.0 {
                    let h = w.re - u;
                    let disc = h * h - 4.0 * dt;
                    if disc >= 0.0 {
                        let v = disc.sqrt();
                        return C::new(u + if h >= 0.0 { v } else { -v }, 0.0);
                    }
                    // Image lands on the slit itself.
                    return C::new(u, (4.0 * dt - h * h).sqrt());
                }
                let h = w - C::new(u, 0.0);
                C::new(u, 0.0) + sqrt_upper(h * h - C::new(4.0 * dt, 0.0))
            }
            Factor::SqrtBranch { s } => {
                let y = w / s;
                y * y
            }
            Factor::Square { neg } => {
                if neg {
                    -(-w).sqrt() // second quadrant
                } else {
                    w.sqrt() // first quadrant
                }
            }
        }
    }
}

/// A composable numerical conformal map; forward is the uniformizing
/// direction.
#[derive(Debug, Clone, Default)]
pub struct MapRep {
    factors: Vec<Factor>,
}

impl MapRep {
    pub fn new() -> Self {
        MapRep { factors: Vec::new() }
    }

    pub fn push(&mut self, f: Factor) {
        self.factors.push(f);
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn forward(&self, z: C) -> C {
        let mut w = z;
        for f in &self.factors {
            w = f.forward(w);
        }
        w
    }

    pub fn inverse(&self, w: C) -> C {
        let mut z = w;
        for f in self.factors.iter().rev() {
            z = f.inverse(z);
        }
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn slit_forward_matches_halfplane_branch() {
        let f = Factor::Slit { u: 0.3, dt: 0.01 };
        // Far-field: approximately the identity plus 2 dt / z.
        let z = C::new(0.0, 50.0);
        let w = f.forward(z);
        assert_relative_eq!((w - z).norm(), 2.0 * 0.01 / 50.0, epsilon = 1e-5);
        // Tip of the slit maps to the base point.
        let tip = C::new(0.3, 2.0 * 0.01f64.sqrt());
        let w = f.forward(tip);
        assert_relative_eq!(w.re, 0.3, epsilon = 1e-12);
        assert!(w.im.abs() < 1e-8);
    }

    #[test]
    fn slit_real_points_stay_real_and_ordered() {
        let f = Factor::Slit { u: -0.2, dt: 0.05 };
        let right = f.forward(C::new(0.5, 0.0));
        let left = f.forward(C::new(-0.9, 0.0));
        assert_eq!(right.im, 0.0);
        assert_eq!(left.im, 0.0);
        assert!(right.re > -0.2);
        assert!(left.re < -0.2);
    }

    #[test]
    fn slit_round_trip() {
        let f = Factor::Slit { u: 0.1, dt: 0.02 };
        for &z in &[C::new(0.4, 0.7), C::new(-1.2, 0.05), C::new(0.1, 3.0)] {
            let w = f.forward(z);
            assert!(w.im >= 0.0);
            let back = f.inverse(w);
            assert_relative_eq!((back - z).norm(), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn mobius_round_trip() {
        let f = Factor::Mobius {
            a: C::new(2.0, 1.0),
            b: C::new(0.0, -1.0),
            c: C::new(0.5, 0.0),
            d: C::new(1.0, 0.2),
        };
        let z = C::new(0.3, 0.8);
        assert_relative_eq!((f.inverse(f.forward(z)) - z).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn square_branches() {
        let fpos = Factor::Square { neg: false };
        let q1 = C::new(0.5, 0.6); // first quadrant
        let w = fpos.forward(q1);
        assert!(w.im > 0.0);
        assert_relative_eq!((fpos.inverse(w) - q1).norm(), 0.0, epsilon = 1e-12);

        let fneg = Factor::Square { neg: true };
        let q2 = C::new(-0.5, 0.6); // second quadrant
        let w = fneg.forward(q2);
        assert!(w.im > 0.0);
        assert_relative_eq!((fneg.inverse(w) - q2).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn composition_round_trip() {
        let mut m = MapRep::new();
        m.push(Factor::Mobius {
            a: C::new(1.0, 0.0),
            b: C::new(0.3, 0.0),
            c: C::new(0.0, 0.0),
            d: C::new(1.0, 0.0),
        });
        m.push(Factor::Slit { u: 0.0, dt: 0.03 });
        m.push(Factor::Slit { u: 0.4, dt: 0.01 });
        let z = C::new(-0.2, 0.9);
        let w = m.forward(z);
        assert_relative_eq!((m.inverse(w) - z).norm(), 0.0, epsilon = 1e-10);
    }
}
