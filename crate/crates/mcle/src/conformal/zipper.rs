//! Geodesic zipper uniformization of Jordan domains onto the unit disc.
//!
//! Given boundary samples `p_0, ..., p_{n-1}` of a Jordan region (in order)
//! and an interior base point, the geodesic algorithm composes elementary
//! maps that successively "unzip" the boundary onto the real line:
//!
//! 1. an opening factor `z -> s sqrt((z - p_1)/(z - p_0))` welding the first
//!    edge,
//! 2. for each further vertex with current image `a` in the upper
//!    half-plane, a Mobius factor `z -> z / (1 - z / p)` with
//!    `p = |a|^2 / Re a` followed by the capacity-`(|a|^2 / Im a)^2 / 4`
//!    slit factor, which together unzip the hyperbolic geodesic from 0 to
//!    `a`,
//! 3. a closing Mobius `z -> z / (1 - z / x_0)` (with `x_0` the image of
//!    `p_0`) and a square `z -> +-z^2` welding the final seam, and
//! 4. a Mobius from the half-plane onto the disc sending the base to 0 with
//!    positive derivative.
//!
//! The per-vertex cost of the construction is linear in the number of
//! remaining vertices, so building the map is `O(n^2)`; evaluating it is
//! `O(n)` per point. Accuracy improves with boundary resolution; boundary
//! vertices land on the unit circle exactly by construction.

use num_complex::Complex64 as C;

use super::map::{Factor, MapRep};
use crate::error::{Error, Result};
use crate::geom;

/// A zipper-built uniformizer together with the boundary vertex images.
#[derive(Debug, Clone)]
pub struct ZipperMap {
    /// Forward maps the region onto the unit disc, base to 0.
    pub map: MapRep,
    /// Images of the input boundary vertices on the unit circle.
    pub vertex_images: Vec<C>,
    /// Vertices skipped by degeneracy guards during construction.
    pub skipped: usize,
}

/// Inserts evenly spaced intermediate points along the edges of a closed
/// polyline until it has at least `n` vertices. The region is unchanged;
/// this only refines the sampling the zipper works with.
pub fn densify_closed_polyline(poly: &[C], n: usize) -> Vec<C> {
    if poly.len() >= n {
        return poly.to_vec();
    }
    let total: f64 = (0..poly.len())
        .map(|i| (poly[(i + 1) % poly.len()] - poly[i]).norm())
        .sum();
    let target = total / n as f64;
    let mut out = Vec::with_capacity(n + poly.len());
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        out.push(a);
        let len = (b - a).norm();
        let extra = (len / target).floor() as usize;
        for k in 1..=extra {
            let t = k as f64 / (extra + 1) as f64;
            out.push(a + (b - a) * t);
        }
    }
    out
}

fn check_simple(poly: &[C], tol: f64) -> Result<()> {
    let n = poly.len();
    // Proper crossings between non-adjacent edges; a coarse grid prunes the
    // quadratic scan.
    let segs: Vec<(C, C)> = (0..n).map(|i| (poly[i], poly[(i + 1) % n])).collect();
    let mean_len: f64 = segs.iter().map(|(a, b)| (b - a).norm()).sum::<f64>() / n as f64;
    let cell = (mean_len * 4.0).max(1e-9);
    let key = |x: f64, y: f64| ((x / cell).floor() as i64, (y / cell).floor() as i64);
    let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> = std::collections::HashMap::new();
    for (i, (a, b)) in segs.iter().enumerate() {
        let (kx0, ky0) = key(a.re.min(b.re), a.im.min(b.im));
        let (kx1, ky1) = key(a.re.max(b.re), a.im.max(b.im));
        for kx in kx0..=kx1 {
            for ky in ky0..=ky1 {
                grid.entry((kx, ky)).or_default().push(i);
            }
        }
    }
    let mut checked: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    for (i, (a, b)) in segs.iter().enumerate() {
        let (kx0, ky0) = key(a.re.min(b.re), a.im.min(b.im));
        let (kx1, ky1) = key(a.re.max(b.re), a.im.max(b.im));
        for kx in kx0..=kx1 {
            for ky in ky0..=ky1 {
                let Some(cands) = grid.get(&(kx, ky)) else { continue };
                for &j in cands {
                    if j <= i + 1 || (i == 0 && j == n - 1) {
                        continue;
                    }
                    if !checked.insert((i, j)) {
                        continue;
                    }
                    let (c0, d0) = segs[j];
                    if geom::segments_cross(*a, *b, c0, d0, tol) {
                        return Err(Error::Geometry(format!(
                            "boundary self-intersects between edges {i} and {j}"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Tracked image of the seam vertex `p_0`, which passes through infinity.
#[derive(Debug, Clone, Copy)]
enum Seam {
    Infinity,
    At(C),
}

impl Seam {
    fn apply(self, f: &Factor) -> Seam {
        match self {
            Seam::At(z) => {
                let w = f.forward(z);
                if w.is_finite() {
                    Seam::At(w)
                } else {
                    Seam::Infinity
                }
            }
            Seam::Infinity => match *f {
                Factor::Mobius { a, c, .. } => {
                    if c.norm_sqr() == 0.0 {
                        Seam::Infinity
                    } else {
                        Seam::At(a / c)
                    }
                }
                // sqrt, square and slit all fix infinity.
                _ => Seam::Infinity,
            },
        }
    }
}

/// Uniformizes the Jordan region bounded by `boundary` onto the unit disc
/// with `interior_base` mapped to 0 and positive derivative there.
///
/// `boundary` is a closed polyline (the closing edge is implicit; a
/// repeated last point is tolerated) that must be simple to within
/// tolerance `1e-9` and must wind around `interior_base`.
pub fn zipper_uniformize(boundary: &[C], interior_base: C) -> Result<ZipperMap> {
    let mut pts: Vec<C> = boundary.to_vec();
    if pts.len() >= 2 && (pts[0] - *pts.last().unwrap()).norm() < 1e-14 {
        pts.pop();
    }
    if pts.len() < 4 {
        return Err(Error::Geometry(format!(
            "need at least 4 boundary points, got {}",
            pts.len()
        )));
    }
    // Drop exactly coincident consecutive vertices.
    let mut dedup: Vec<C> = Vec::with_capacity(pts.len());
    for &p in &pts {
        if dedup.last().map_or(true, |&q: &C| (p - q).norm() > 1e-13) {
            dedup.push(p);
        }
    }
    if (dedup[0] - *dedup.last().unwrap()).norm() <= 1e-13 {
        dedup.pop();
    }
    let reversed = geom::polygon_area(&dedup) < 0.0;
    if reversed {
        dedup.reverse();
    }
    check_simple(&dedup, 1e-9)?;
    if !geom::point_in_polygon(interior_base, &dedup) {
        return Err(Error::Geometry("base point is not inside the boundary".into()));
    }

    let n = dedup.len();
    let mut map = MapRep::new();
    let mut skipped = 0usize;

    // Working images: vertex 0 tracked through infinity separately.
    let mut seam = Seam::At(dedup[0]);
    let mut imgs: Vec<C> = dedup[1..].to_vec();
    let mut base = interior_base;

    let push_all = |f: Factor, imgs: &mut Vec<C>, base: &mut C, seam: &mut Seam, map: &mut MapRep| {
        for z in imgs.iter_mut() {
            *z = f.forward(*z);
        }
        *base = f.forward(*base);
        *seam = seam.apply(&f);
        map.push(f);
    };

    // Opening: z -> s sqrt((z - p1)/(z - p0)).
    let m0 = Factor::Mobius {
        a: C::new(1.0, 0.0),
        b: -dedup[1],
        c: C::new(1.0, 0.0),
        d: -dedup[0],
    };
    push_all(m0, &mut imgs, &mut base, &mut seam, &mut map);
    let s = {
        let trial = C::new(0.0, 1.0) * base.sqrt();
        if trial.im > 0.0 {
            C::new(0.0, 1.0)
        } else {
            C::new(0.0, -1.0)
        }
    };
    push_all(Factor::SqrtBranch { s }, &mut imgs, &mut base, &mut seam, &mut map);
    imgs[0] = C::new(0.0, 0.0); // p1 is the first weld tip, exactly

    // Geodesic welds for p2 .. p_{n-1}.
    for k in 1..n - 1 {
        let a = imgs[k];
        if !a.is_finite() || a.im <= 1e-13 * (1.0 + a.norm()) || a.norm() < 1e-13 {
            // Degenerate vertex: collapse onto the current tip and move on.
            skipped += 1;
            imgs[k] = C::new(0.0, 0.0);
            continue;
        }
        if a.re.abs() > 1e-14 * a.norm() {
            let p = a.norm_sqr() / a.re;
            let t = Factor::Mobius {
                a: C::new(1.0, 0.0),
                b: C::new(0.0, 0.0),
                c: C::new(-1.0 / p, 0.0),
                d: C::new(1.0, 0.0),
            };
            push_all(t, &mut imgs, &mut base, &mut seam, &mut map);
        }
        let h = {
            let a2 = imgs[k];
            // After the Mobius the point is (numerically) purely imaginary.
            a2.im.max(a2.norm() * 0.5)
        };
        let slit = Factor::Slit { u: 0.0, dt: h * h / 4.0 };
        push_all(slit, &mut imgs, &mut base, &mut seam, &mut map);
        imgs[k] = C::new(0.0, 0.0);
    }

    // Closing: weld the seam at p0. Its image must be finite and nonzero.
    let x0 = match seam {
        Seam::At(z) if z.im.abs() <= 1e-9 * (1.0 + z.norm()) && z.re.abs() > 1e-12 => z.re,
        Seam::At(z) => {
            return Err(Error::Geometry(format!(
                "seam image {z} is not on the real axis; boundary too irregular"
            )))
        }
        Seam::Infinity => {
            return Err(Error::Geometry("seam image stayed at infinity".into()))
        }
    };
    let mc = Factor::Mobius {
        a: C::new(1.0, 0.0),
        b: C::new(0.0, 0.0),
        c: C::new(-1.0 / x0, 0.0),
        d: C::new(1.0, 0.0),
    };
    push_all(mc, &mut imgs, &mut base, &mut seam, &mut map);
    let neg = (base * base).im <= 0.0;
    push_all(Factor::Square { neg }, &mut imgs, &mut base, &mut seam, &mut map);
    if base.im <= 0.0 {
        return Err(Error::Geometry(
            "base image left the half-plane during closing; boundary too irregular".into(),
        ));
    }

    // Half-plane onto disc: w = (z - q)/(z - conj q), then rotate for a
    // positive derivative at the base.
    let q = base;
    let cayley = Factor::Mobius {
        a: C::new(1.0, 0.0),
        b: -q,
        c: C::new(1.0, 0.0),
        d: -q.conj(),
    };
    push_all(cayley, &mut imgs, &mut base, &mut seam, &mut map);

    let delta = 1e-6;
    let d1 = map.forward(interior_base + C::new(delta, 0.0));
    let d2 = map.forward(interior_base - C::new(delta, 0.0));
    let deriv = (d1 - d2) / C::new(2.0 * delta, 0.0);
    if !deriv.is_finite() || deriv.norm() < 1e-300 {
        return Err(Error::Geometry("degenerate derivative at base point".into()));
    }
    let rot = deriv.conj() / deriv.norm();
    let rot_f = Factor::Mobius {
        a: rot,
        b: C::new(0.0, 0.0),
        c: C::new(0.0, 0.0),
        d: C::new(1.0, 0.0),
    };
    push_all(rot_f, &mut imgs, &mut base, &mut seam, &mut map);

    // Collect vertex images in the order of the *input* boundary.
    let seam_img = match seam {
        Seam::At(z) => z,
        Seam::Infinity => rot, // (z - q)/(z - conj q) sends inf to 1, then rotates
    };
    let mut vertex_images = Vec::with_capacity(n);
    vertex_images.push(seam_img);
    vertex_images.extend_from_slice(&imgs);
    if reversed {
        // Undo the orientation flip: vertex 0 stayed vertex 0.
        vertex_images[1..].reverse();
    }

    Ok(ZipperMap { map, vertex_images, skipped })
}
