//! Shared planar geometry helpers: polylines, point-in-polygon tests,
//! segment intersection, arc-length resampling, hyperbolic geodesics of the
//! unit disc, and the discrete Frechet distance.

use num_complex::Complex64;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn cross(o: C, a: C, b: C) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Distance from `p` to the segment `[a, b]`.
pub fn dist_point_segment(p: C, a: C, b: C) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Distance from `p` to a polyline, together with the nearest point.
pub fn dist_point_polyline(p: C, poly: &[C]) -> (f64, C) {
    let mut best = f64::INFINITY;
    let mut best_pt = poly[0];
    for w in poly.windows(2) {
        let (a, b) = (w[0], w[1]);
        let ab = b - a;
        let len2 = ab.norm_sqr();
        let t = if len2 == 0.0 {
            0.0
        } else {
            (((p - a).re * ab.re + (p - a).im * ab.im) / len2).clamp(0.0, 1.0)
        };
        let q = a + ab * t;
        let d = (p - q).norm();
        if d < best {
            best = d;
            best_pt = q;
        }
    }
    (best, best_pt)
}

/// Proper (transversal) intersection test for segments `[a,b]` and `[c,d]`.
///
/// Touching within `tol` does not count: endpoints that merely come close
/// are tolerated, only genuine crossings are flagged.
pub fn segments_cross(a: C, b: C, cc: C, d: C, tol: f64) -> bool {
    let d1 = cross(cc, d, a);
    let d2 = cross(cc, d, b);
    let d3 = cross(a, b, cc);
    let d4 = cross(a, b, d);
    let scale1 = (d - cc).norm();
    let scale2 = (b - a).norm();
    // Signed distances of each endpoint from the other segment's line.
    let (s1, s2) = (d1 / scale1.max(1e-300), d2 / scale1.max(1e-300));
    let (s3, s4) = (d3 / scale2.max(1e-300), d4 / scale2.max(1e-300));
    s1 * s2 < 0.0 && s3 * s4 < 0.0 && s1.abs() > tol && s2.abs() > tol && s3.abs() > tol && s4.abs() > tol
}

/// Counts proper crossings between two polylines using a coarse spatial grid
/// to prune segment pairs.
pub fn polylines_cross(p: &[C], q: &[C], tol: f64) -> bool {
    if p.len() < 2 || q.len() < 2 {
        return false;
    }
    // Bounding-box prefilter per segment of q, bucketed on a uniform grid.
    let cell = {
        let mut len = 0.0;
        for w in q.windows(2) {
            len += (w[1] - w[0]).norm();
        }
        (len / q.len() as f64).max(1e-6) * 4.0
    };
    let key = |x: f64, y: f64| ((x / cell).floor() as i64, (y / cell).floor() as i64);
    let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> = std::collections::HashMap::new();
    for (i, w) in q.windows(2).enumerate() {
        let (x0, x1) = (w[0].re.min(w[1].re), w[0].re.max(w[1].re));
        let (y0, y1) = (w[0].im.min(w[1].im), w[0].im.max(w[1].im));
        let (kx0, ky0) = key(x0, y0);
        let (kx1, ky1) = key(x1, y1);
        for kx in kx0..=kx1 {
            for ky in ky0..=ky1 {
                grid.entry((kx, ky)).or_default().push(i);
            }
        }
    }
    let mut seen = vec![usize::MAX; q.len()];
    for (pi, w) in p.windows(2).enumerate() {
        let (x0, x1) = (w[0].re.min(w[1].re), w[0].re.max(w[1].re));
        let (y0, y1) = (w[0].im.min(w[1].im), w[0].im.max(w[1].im));
        let (kx0, ky0) = key(x0, y0);
        let (kx1, ky1) = key(x1, y1);
        for kx in kx0..=kx1 {
            for ky in ky0..=ky1 {
                if let Some(cands) = grid.get(&(kx, ky)) {
                    for &qi in cands {
                        if seen[qi] == pi {
                            continue;
                        }
                        seen[qi] = pi;
                        if segments_cross(w[0], w[1], q[qi], q[qi + 1], tol) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Winding number of a closed polygon around `p` (vertices in order, the
/// closing edge is implicit). Nonzero means inside.
pub fn winding_number(p: C, poly: &[C]) -> i32 {
    let mut wn = 0i32;
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if a.im <= p.im {
            if b.im > p.im && cross(a, b, p) > 0.0 {
                wn += 1;
            }
        } else if b.im <= p.im && cross(a, b, p) < 0.0 {
            wn -= 1;
        }
    }
    wn
}

pub fn point_in_polygon(p: C, poly: &[C]) -> bool {
    winding_number(p, poly) != 0
}

/// Signed distance to a closed polygon: negative inside, positive outside.
pub fn signed_distance_polygon(p: C, poly: &[C]) -> f64 {
    let mut closed = Vec::with_capacity(poly.len() + 1);
    closed.extend_from_slice(poly);
    closed.push(poly[0]);
    let (d, _) = dist_point_polyline(p, &closed);
    if point_in_polygon(p, poly) {
        -d
    } else {
        d
    }
}

/// Signed area of a closed polygon; positive for counterclockwise.
pub fn polygon_area(poly: &[C]) -> f64 {
    let n = poly.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        s += a.re * b.im - b.re * a.im;
    }
    s / 2.0
}

pub fn polyline_length(poly: &[C]) -> f64 {
    poly.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
}

/// Resamples a polyline to `n` points equally spaced in arc length, keeping
/// the exact endpoints.
pub fn resample_polyline(poly: &[C], n: usize) -> Vec<C> {
    assert!(n >= 2 && poly.len() >= 2);
    let total = polyline_length(poly);
    if total == 0.0 {
        return vec![poly[0]; n];
    }
    let mut out = Vec::with_capacity(n);
    out.push(poly[0]);
    let mut seg = 0usize;
    let mut seg_start_len = 0.0;
    let mut seg_len = (poly[1] - poly[0]).norm();
    for k in 1..n - 1 {
        let target = total * k as f64 / (n - 1) as f64;
        while seg_start_len + seg_len < target && seg + 2 < poly.len() {
            seg_start_len += seg_len;
            seg += 1;
            seg_len = (poly[seg + 1] - poly[seg]).norm();
        }
        let t = if seg_len == 0.0 { 0.0 } else { (target - seg_start_len) / seg_len };
        out.push(poly[seg] + (poly[seg + 1] - poly[seg]) * t.clamp(0.0, 1.0));
    }
    out.push(*poly.last().unwrap());
    out
}

/// Hyperbolic geodesic of the unit disc between boundary points at angles
/// `thـa` and `th_b`, sampled at `n` points from a to b.
///
/// The geodesic is the circular arc through the two points orthogonal to the
/// unit circle; for antipodal points it degenerates to the diameter.
pub fn disc_geodesic(th_a: f64, th_b: f64, n: usize) -> Vec<C> {
    let u = c(th_a.cos(), th_a.sin());
    let v = c(th_b.cos(), th_b.sin());
    let denom = 1.0 + (u * v.conj()).re; // 1 + cos(angle between)
    if denom.abs() < 1e-9 {
        // Antipodal: straight diameter.
        return (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                u + (v - u) * t
            })
            .collect();
    }
    let center = (u + v) / denom;
    let radius = (u - center).norm();
    let a0 = (u - center).arg();
    let mut a1 = (v - center).arg();
    // Take the arc lying inside the disc: it is the minor arc as seen from
    // the circle center (sweep less than pi).
    let mut sweep = a1 - a0;
    while sweep > std::f64::consts::PI {
        sweep -= std::f64::consts::TAU;
        a1 -= std::f64::consts::TAU;
    }
    while sweep < -std::f64::consts::PI {
        sweep += std::f64::consts::TAU;
        a1 += std::f64::consts::TAU;
    }
    let _ = a1;
    (0..n)
        .map(|k| {
            let t = k as f64 / (n - 1) as f64;
            let ang = a0 + sweep * t;
            center + c(ang.cos(), ang.sin()) * radius
        })
        .collect()
}

/// Discrete Frechet distance between two polylines (Eiter-Mannila dynamic
/// program, rolling rows).
pub fn discrete_frechet(p: &[C], q: &[C]) -> f64 {
    let (n, m) = (p.len(), q.len());
    assert!(n > 0 && m > 0);
    let mut prev = vec![0.0f64; m];
    let mut cur = vec![0.0f64; m];
    for j in 0..m {
        let d = (p[0] - q[j]).norm();
        prev[j] = if j == 0 { d } else { prev[j - 1].max(d) };
    }
    for i in 1..n {
        for j in 0..m {
            let d = (p[i] - q[j]).norm();
            let reach = if j == 0 {
                prev[0]
            } else {
                prev[j].min(prev[j - 1]).min(cur[j - 1])
            };
            cur[j] = reach.max(d);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m - 1]
}

/// Frechet distance modulo orientation: minimum over both directions of `q`.
pub fn frechet_mod_orientation(p: &[C], q: &[C]) -> f64 {
    let fwd = discrete_frechet(p, q);
    let rev: Vec<C> = q.iter().rev().copied().collect();
    fwd.min(discrete_frechet(p, &rev))
}
