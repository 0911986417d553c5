//! Sampling SLE_kappa(rho) driving paths.
//!
//! The driving function solves
//! `dW_t = sqrt(kappa) dB_t + sum_i rho_i / (W_t - V_t^i) dt` with force
//! points evolving as `dV^i_t = 2 / (V^i_t - W_t) dt`. The noise and drift
//! on `W` use Euler-Maruyama; the force points use the exact one-step slit
//! solution for frozen `W`, which keeps their ordering relative to the
//! driving value. Collisions are grazed with a step-scale floor on the
//! drift denominator; the path stops early only when the accumulated weight
//! of collided force points reaches the continuation threshold `-2`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::loewner::{DrivingPath, ForceTrack};
use crate::error::{Error, Result};

/// Why integration ended.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StopReason {
    /// Ran to the requested horizon.
    Completed,
    /// Force points with accumulated weight <= -2 collided with W.
    ContinuationThreshold { t: f64 },
}

/// Parameters for [`sample_driving`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DrivingConfig {
    pub kappa: f64,
    pub rhos: Vec<f64>,
    pub force_points: Vec<f64>,
    pub horizon: f64,
    pub dt: f64,
}

impl DrivingConfig {
    pub fn plain(kappa: f64, horizon: f64, dt: f64) -> Self {
        DrivingConfig { kappa, rhos: Vec::new(), force_points: Vec::new(), horizon, dt }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=8.0).contains(&self.kappa) {
            return Err(Error::Domain(format!("kappa must be in [0, 8], got {}", self.kappa)));
        }
        if self.rhos.len() != self.force_points.len() {
            return Err(Error::Domain(format!(
                "{} weights for {} force points",
                self.rhos.len(),
                self.force_points.len()
            )));
        }
        if self.force_points.iter().any(|&z| z == 0.0) {
            return Err(Error::Domain("force points must be distinct from the root 0".into()));
        }
        if !(self.dt > 0.0) || !(self.horizon > 0.0) {
            return Err(Error::Domain("dt and horizon must be positive".into()));
        }
        Ok(())
    }
}

/// Samples a driving path from the given seed. Deterministic per seed.
pub fn sample_driving(cfg: &DrivingConfig, seed: u64) -> Result<DrivingPath> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    sample_driving_with(cfg, &mut rng)
}

/// As [`sample_driving`] but drawing from a caller-supplied generator, so a
/// path can be extended chunk by chunk from one stream.
pub fn sample_driving_with<R: Rng>(cfg: &DrivingConfig, rng: &mut R) -> Result<DrivingPath> {
    cfg.validate()?;
    let steps = (cfg.horizon / cfg.dt).ceil() as usize;
    let steps = steps.max(1);
    let dt = cfg.dt;
    let sqrt_kdt = (cfg.kappa * dt).sqrt();
    // Drift floor on |W - V|: of the order of one diffusion step, so the
    // clamped drift stays comparable to the noise.
    let floor = 0.5 * (cfg.kappa.max(1.0) * dt).sqrt();

    let nf = cfg.rhos.len();
    let mut w = Vec::with_capacity(steps + 1);
    let mut v_tracks: Vec<Vec<f64>> = (0..nf).map(|_| Vec::with_capacity(steps + 1)).collect();
    let mut wk = 0.0f64;
    let mut vk: Vec<f64> = cfg.force_points.clone();
    let side: Vec<f64> = cfg.force_points.iter().map(|&z| z.signum()).collect();
    let mut collided = vec![false; nf];
    w.push(wk);
    for (i, t) in v_tracks.iter_mut().enumerate() {
        t.push(vk[i]);
    }

    let mut stop = StopReason::Completed;
    'outer: for k in 0..steps {
        let noise: f64 = if cfg.kappa == 0.0 {
            0.0
        } else {
            let g: f64 = rng.sample(StandardNormal);
            sqrt_kdt * g
        };
        let mut drift = 0.0;
        for i in 0..nf {
            let mut den = wk - vk[i];
            if den.abs() < floor {
                den = floor * -side[i];
            }
            drift += cfg.rhos[i] / den * dt;
        }
        let w_old = wk;
        wk = wk + noise + drift;
        if !wk.is_finite() {
            return Err(Error::IntegratorBlowup(format!(
                "driving value non-finite at step {k}; decrease dt"
            )));
        }
        for i in 0..nf {
            // Exact one-step evolution for frozen driving value.
            let h = vk[i] - w_old;
            let mag = (h * h + 4.0 * dt).sqrt();
            vk[i] = w_old + if h >= 0.0 { mag } else { -mag };
            // The continuum process keeps V on its side of W; if the noise
            // stepped W across, graze the collision and push V back out.
            if (vk[i] - wk) * side[i] < floor {
                vk[i] = wk + side[i] * floor;
                if !collided[i] {
                    collided[i] = true;
                    let weight: f64 =
                        (0..nf).filter(|&j| collided[j]).map(|j| cfg.rhos[j]).sum();
                    if weight <= -2.0 {
                        stop = StopReason::ContinuationThreshold { t: (k + 1) as f64 * dt };
                        w.push(wk);
                        for (i, t) in v_tracks.iter_mut().enumerate() {
                            t.push(vk[i]);
                        }
                        break 'outer;
                    }
                }
            }
            if !vk[i].is_finite() {
                return Err(Error::IntegratorBlowup(format!(
                    "force point {i} non-finite at step {k}; decrease dt"
                )));
            }
        }
        w.push(wk);
        for (i, t) in v_tracks.iter_mut().enumerate() {
            t.push(vk[i]);
        }
    }

    let forces = (0..nf)
        .map(|i| ForceTrack { z0: cfg.force_points[i], rho: cfg.rhos[i], v: std::mem::take(&mut v_tracks[i]) })
        .collect();
    DrivingPath::new(dt, w, forces, stop)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_driving_variance_matches_brownian_motion() {
        // Var W_T = kappa T; estimate over many seeds and compare within
        // three standard errors of the sample variance.
        let kappa = 6.0;
        let t = 1.0;
        let n = 2000;
        let cfg = DrivingConfig::plain(kappa, t, 1e-3);
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for seed in 0..n {
            let d = sample_driving(&cfg, seed).unwrap();
            let wt = *d.w().last().unwrap();
            sum += wt;
            sum2 += wt * wt;
        }
        let nf = n as f64;
        let mean = sum / nf;
        let var = sum2 / nf - mean * mean;
        // Standard error of the variance of a Gaussian: var * sqrt(2/n).
        let se = kappa * t * (2.0 / nf).sqrt();
        assert!(
            (var - kappa * t).abs() < 3.0 * se,
            "sample variance {var} vs {} +- {}",
            kappa * t,
            3.0 * se
        );
    }

    #[test]
    fn kappa_zero_is_constant() {
        let cfg = DrivingConfig::plain(0.0, 1.0, 1e-3);
        let d = sample_driving(&cfg, 7).unwrap();
        assert!(d.w().iter().all(|&w| w == 0.0));
        assert_eq!(d.stop(), StopReason::Completed);
    }

    #[test]
    fn rho_zero_equals_plain_in_law() {
        // With rho = 0 the force point changes nothing about W: paths from
        // the same seed agree exactly step by step.
        let kappa = 6.0;
        let plain = DrivingConfig::plain(kappa, 1.0, 1e-3);
        let forced = DrivingConfig {
            kappa,
            rhos: vec![0.0],
            force_points: vec![1.0],
            horizon: 1.0,
            dt: 1e-3,
        };
        for seed in 0..20 {
            let a = sample_driving(&plain, seed).unwrap();
            let b = sample_driving(&forced, seed).unwrap();
            assert_eq!(a.w(), b.w(), "seed {seed}");
        }
    }

    #[test]
    fn rho_zero_two_sample_ks() {
        // Two-sample Kolmogorov-Smirnov on W_T between plain SLE_6 driving
        // and a rho = 0 force-point variant across disjoint seeds.
        let kappa = 6.0;
        let n = 500;
        let plain = DrivingConfig::plain(kappa, 1.0, 2e-3);
        let forced = DrivingConfig {
            kappa,
            rhos: vec![0.0],
            force_points: vec![0.5],
            horizon: 1.0,
            dt: 2e-3,
        };
        let mut xs: Vec<f64> = (0..n)
            .map(|s| *sample_driving(&plain, s).unwrap().w().last().unwrap())
            .collect();
        let mut ys: Vec<f64> = (0..n)
            .map(|s| *sample_driving(&forced, s + 10_000).unwrap().w().last().unwrap())
            .collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut d = 0.0f64;
        let (mut i, mut j) = (0usize, 0usize);
        while i < xs.len() && j < ys.len() {
            if xs[i] <= ys[j] {
                i += 1;
            } else {
                j += 1;
            }
            let fx = i as f64 / xs.len() as f64;
            let fy = j as f64 / ys.len() as f64;
            d = d.max((fx - fy).abs());
        }
        // p > 0.01 for KS statistic below c(0.01) * sqrt(2/n), c ~ 1.63.
        let crit = 1.63 * (2.0 / n as f64).sqrt();
        assert!(d < crit, "KS statistic {d} >= {crit}");
    }

    #[test]
    fn continuation_threshold_stops_path() {
        // A single rho <= -2 force point is reached almost immediately when
        // it starts adjacent to the root.
        let cfg = DrivingConfig {
            kappa: 6.0,
            rhos: vec![-2.5],
            force_points: vec![1e-6],
            horizon: 1.0,
            dt: 1e-4,
        };
        let d = sample_driving(&cfg, 3).unwrap();
        match d.stop() {
            StopReason::ContinuationThreshold { t } => assert!(t < 1.0),
            other => panic!("expected threshold stop, got {other:?}"),
        }
    }

    #[test]
    fn force_point_repelled_for_positive_rho() {
        // kappa - 6 = 1 > 0 at kappa = 7: V - W stays positive throughout.
        let cfg = DrivingConfig {
            kappa: 7.0,
            rhos: vec![1.0],
            force_points: vec![1e-9],
            horizon: 0.5,
            dt: 1e-4,
        };
        for seed in 0..10 {
            let d = sample_driving(&cfg, seed).unwrap();
            let f = &d.forces()[0];
            for (k, (&v, &w)) in f.v.iter().zip(d.w().iter()).enumerate() {
                assert!(v >= w, "seed {seed} step {k}: v={v} < w={w}");
            }
        }
    }
}
