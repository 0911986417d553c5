//! Boundary cross-ratios and the conformal modulus of a quadrilateral.
//!
//! The quadrilateral `(H; 0, 1-r, 1, inf)` is conformally equivalent to the
//! rectangle `(0, L) x (0, 1)` with corners matched in order; `L` is its
//! modulus. `L` is computed from the two Schwarz-Christoffel side integrals
//!
//! ```text
//! I1 = int_0^m dt / sqrt(t (m - t)(1 - t)),   m = 1 - r,
//! I2 = int_m^1 dt / sqrt(t (t - m)(1 - t)),   L = I1 / I2,
//! ```
//!
//! with Gauss-Jacobi (Chebyshev) quadrature absorbing the inverse
//! square-root endpoint singularities. `r_from_modulus` inverts by monotone
//! bisection. The map `r -> L` is strictly decreasing with `L(1/2) = 1` and
//! satisfies the reciprocity `L(1-r) = 1/L(r)`.

use crate::error::{Error, Result};

/// Normalized position of `b` under the Mobius map sending `(a, c, d)` to
/// `(0, 1, inf)`. For boundary points in cyclic order `a < b < c < d` (one
/// of them may be `f64::INFINITY`) the value lies in `(0, 1)`; the
/// quadrilateral `(H; a, b, c, d)` is then equivalent to
/// `(H; 0, 1 - r, 1, inf)` with `r = 1 -` the returned value.
pub fn cross_ratio(a: f64, b: f64, c: f64, d: f64) -> Result<f64> {
    let pts = [a, b, c, d];
    let n_inf = pts.iter().filter(|p| p.is_infinite()).count();
    if n_inf > 1 {
        return Err(Error::Domain("at most one boundary point may be infinite".into()));
    }
    if pts.iter().any(|p| p.is_nan()) {
        return Err(Error::Domain("cross-ratio input is NaN".into()));
    }
    // Check strict cyclic order on the extended real boundary of H: some
    // rotation of (a, b, c, d) must be strictly increasing, with infinity
    // allowed only in the last slot of that rotation.
    let cyclic_ok = (0..4).any(|s| {
        let q = [pts[s], pts[(s + 1) % 4], pts[(s + 2) % 4], pts[(s + 3) % 4]];
        if q[..3].iter().any(|p| p.is_infinite()) {
            return false;
        }
        let fin_sorted = q[0] < q[1] && q[1] < q[2];
        fin_sorted && (q[3].is_infinite() || q[2] < q[3])
    });
    if !cyclic_ok {
        return Err(Error::Domain(format!(
            "boundary points ({a}, {b}, {c}, {d}) are not in strict cyclic order"
        )));
    }

    // rho = (b-a)/(b-d) * (c-d)/(c-a), with limits when one point is inf.
    let rho = if a.is_infinite() {
        (c - d) / (b - d)
    } else if b.is_infinite() {
        (c - d) / (c - a)
    } else if c.is_infinite() {
        (b - a) / (b - d)
    } else if d.is_infinite() {
        (b - a) / (c - a)
    } else {
        ((b - a) / (b - d)) * ((c - d) / (c - a))
    };
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Domain(format!(
            "degenerate quadrilateral: normalized position {rho}"
        )));
    }
    Ok(rho)
}

/// Chebyshev-Gauss quadrature of `int_{-1}^{1} f(x) / sqrt(1 - x^2) dx`
/// where the integrand callback receives `(x, (1 - x) / 2)`; the second
/// argument is computed as `sin^2` to stay accurate near `x = 1`.
fn chebyshev_gauss<F: Fn(f64, f64) -> f64>(n: usize, f: F) -> f64 {
    let mut s = 0.0;
    for k in 1..=n {
        let theta = (2.0 * k as f64 - 1.0) * std::f64::consts::PI / (2.0 * n as f64);
        let x = theta.cos();
        let hx = (theta / 2.0).sin().powi(2); // (1 - x) / 2, cancellation-free
        s += f(x, hx);
    }
    s * std::f64::consts::PI / n as f64
}

fn side_integrals(r: f64, n: usize) -> (f64, f64) {
    let m = 1.0 - r;
    // I1 over [0, m]: t = m (1 + x) / 2, so 1 - t = r + m (1 - x) / 2.
    let i1 = chebyshev_gauss(n, |_x, hx| 1.0 / (r + m * hx).sqrt());
    // I2 over [m, 1]: t = m + (1 - m)(1 + x) / 2 = 1 - r (1 - x) / 2.
    let i2 = chebyshev_gauss(n, |_x, hx| 1.0 / (1.0 - r * hx).sqrt());
    (i1, i2)
}

/// Modulus by adaptive quadrature, returning the achieved relative change
/// of the last doubling alongside the value. Never errors; accuracy
/// degrades only for `r` within ~1e-9 of the endpoints.
pub(crate) fn modulus_quadrature(r: f64) -> (f64, f64) {
    let mut n = 64usize;
    let (mut i1, mut i2) = side_integrals(r, n);
    let mut prev = i1 / i2;
    loop {
        n *= 2;
        let (a, b) = side_integrals(r, n);
        i1 = a;
        i2 = b;
        let cur = i1 / i2;
        let change = (cur - prev).abs() / cur.abs().max(1e-300);
        if change < 1e-13 || n >= 1 << 15 {
            return (cur, change);
        }
        prev = cur;
    }
}

/// Conformal modulus `L` of `(H; 0, 1-r, 1, inf)` for `r in (0, 1)`.
pub fn modulus_from_r(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r must lie strictly in (0,1), got {r}")));
    }
    let (l, achieved) = modulus_quadrature(r);
    if achieved > 1e-9 {
        return Err(Error::Accuracy {
            context: format!("modulus quadrature at r = {r}"),
            achieved,
            wanted: 1e-9,
        });
    }
    Ok(l)
}

/// Inverts [`modulus_from_r`] by monotone bisection to `1e-10` in `r`.
///
/// For `L < 1` the reflected problem `1/L` is solved and the complementary
/// root returned, so the small side of `r` is always the directly computed
/// one.
pub fn r_from_modulus(l: f64) -> Result<f64> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::Domain(format!("modulus must be positive and finite, got {l}")));
    }
    if l < 1.0 {
        return Ok(1.0 - r_from_modulus(1.0 / l)?);
    }
    // L >= 1 corresponds to r in (0, 1/2]; L(r) is strictly decreasing.
    let mut lo = 1e-15f64;
    let mut hi = 0.5f64;
    // The quadrature loses precision only below r ~ 1e-9, where monotonicity
    // of the computed values still holds; bisection tolerance is far coarser.
    for _ in 0..60 {
        if hi - lo <= 1e-10 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (lm, _) = modulus_quadrature(mid);
        if lm > l {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Four boundary marked points of the upper half-plane in counterclockwise
/// (increasing) order; one may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrilateral {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quadrilateral {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        cross_ratio(a, b, c, d)?;
        Ok(Quadrilateral { a, b, c, d })
    }

    /// `r` such that the quadrilateral is equivalent to `(H; 0, 1-r, 1, inf)`.
    pub fn r(&self) -> Result<f64> {
        Ok(1.0 - cross_ratio(self.a, self.b, self.c, self.d)?)
    }

    /// Conformal modulus of the quadrilateral.
    pub fn modulus(&self) -> Result<f64> {
        modulus_from_r(self.r()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Complete elliptic integral K(m) (parameter convention) by the
    /// arithmetic-geometric mean; independent oracle for the quadrature.
    fn elliptic_k(m: f64) -> f64 {
        let mut a = 1.0f64;
        let mut b = (1.0 - m).sqrt();
        for _ in 0..60 {
            if (a - b).abs() < 1e-17 * a {
                break;
            }
            let an = 0.5 * (a + b);
            b = (a * b).sqrt();
            a = an;
        }
        std::f64::consts::FRAC_PI_2 / a
    }

    fn modulus_oracle(r: f64) -> f64 {
        elliptic_k(1.0 - r) / elliptic_k(r)
    }

    #[test]
    fn cross_ratio_normalized_case() {
        let rho = cross_ratio(0.0, 0.5, 1.0, f64::INFINITY).unwrap();
        assert_relative_eq!(rho, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn cross_ratio_mobius_invariance() {
        // 20 random half-plane Mobius maps (real coefficients, positive
        // determinant), applied to a fixed quadruple.
        let (a, b, c, d) = (-1.3, -0.2, 0.7, 2.9);
        let base = cross_ratio(a, b, c, d).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut checked = 0;
        while checked < 20 {
            let (ma, mb, mc, md) = (next() * 4.0 - 2.0, next() * 4.0 - 2.0, next() * 4.0 - 2.0, next() * 4.0 - 2.0);
            if (ma * md - mb * mc) <= 1e-3 {
                continue;
            }
            let f = |x: f64| (ma * x + mb) / (mc * x + md);
            // Skip maps with a pole inside the quadruple range (they break
            // the chosen finite representation, not the invariance).
            let pole = -md / mc;
            if mc.abs() > 1e-12 && pole > a && pole < d {
                continue;
            }
            let vals = [f(a), f(b), f(c), f(d)];
            let got = match cross_ratio(vals[0], vals[1], vals[2], vals[3]) {
                Ok(v) => v,
                Err(_) => continue,
            };
            assert_relative_eq!(got, base, epsilon = 1e-10);
            checked += 1;
        }
    }

    #[test]
    fn cross_ratio_cyclic_shift_complements() {
        // Shifting (a,b,c,d) -> (b,c,d,a) swaps r and 1 - r.
        for &(a, b, c, d) in &[(-2.0, -1.0, 0.5, 3.0), (0.0, 0.1, 0.9, 4.0), (-5.0, 0.0, 1.0, 2.0)] {
            let rho = cross_ratio(a, b, c, d).unwrap();
            let rho_shift = cross_ratio(b, c, d, a).unwrap();
            assert_relative_eq!(rho_shift, 1.0 - rho, epsilon = 1e-10);
        }
        // And on a grid with the point at infinity.
        for k in 1..20 {
            let b = k as f64 / 20.0;
            let rho = cross_ratio(0.0, b, 1.0, f64::INFINITY).unwrap();
            let rho_shift = cross_ratio(b, 1.0, f64::INFINITY, 0.0).unwrap();
            assert_relative_eq!(rho_shift, 1.0 - rho, epsilon = 1e-12);
        }
    }

    #[test]
    fn cross_ratio_rejects_degenerate() {
        assert!(cross_ratio(0.0, 0.0, 1.0, 2.0).is_err());
        assert!(cross_ratio(0.0, 1.0, 0.5, 2.0).is_err());
        assert!(cross_ratio(f64::INFINITY, 1.0, f64::INFINITY, 2.0).is_err());
    }

    #[test]
    fn modulus_square_symmetry() {
        // r = 1/2 is the fixed point of r -> 1-r, so L must be 1.
        assert_relative_eq!(modulus_from_r(0.5).unwrap(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn modulus_matches_elliptic_oracle() {
        for k in 1..=19 {
            let r = k as f64 / 20.0;
            let l = modulus_from_r(r).unwrap();
            assert_relative_eq!(l, modulus_oracle(r), epsilon = 1e-10);
        }
        // A couple of harder values toward the ends.
        for &r in &[1e-3, 1e-5, 1.0 - 1e-3] {
            let l = modulus_from_r(r).unwrap();
            assert_relative_eq!(l, modulus_oracle(r), epsilon = 1e-8);
        }
    }

    #[test]
    fn modulus_round_trip_and_reciprocity() {
        for k in 1..=19 {
            let r = 0.05 * k as f64;
            let l = modulus_from_r(r).unwrap();
            let back = r_from_modulus(l).unwrap();
            assert!((back - r).abs() < 1e-8, "r={r} back={back}");
            let l_rev = modulus_from_r(1.0 - r).unwrap();
            assert_relative_eq!(l * l_rev, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn modulus_strictly_decreasing() {
        let mut prev = f64::INFINITY;
        for k in 1..=50 {
            let r = k as f64 / 51.0;
            let l = modulus_from_r(r).unwrap();
            assert!(l < prev, "not decreasing at r={r}");
            prev = l;
        }
    }

    #[test]
    fn modulus_rejects_out_of_range() {
        assert!(modulus_from_r(0.0).is_err());
        assert!(modulus_from_r(1.0).is_err());
        assert!(modulus_from_r(-0.5).is_err());
        assert!(r_from_modulus(0.0).is_err());
        assert!(r_from_modulus(f64::INFINITY).is_err());
    }

    #[test]
    fn quadrilateral_modulus_of_symmetric_points() {
        // (H; -1, 0, 1, inf): rho = cross_ratio = (0 - (-1))/(1 - (-1)) = 1/2.
        let q = Quadrilateral::new(-1.0, 0.0, 1.0, f64::INFINITY).unwrap();
        assert_relative_eq!(q.modulus().unwrap(), 1.0, epsilon = 1e-10);
    }
}
