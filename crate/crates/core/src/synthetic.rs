//! Seeded synthetic datasets for examples and tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::{ClassData, Dataset};
use crate::error::Result;
use crate::law::TimeSeries;

/// `a + b t` with `a`, `b` drawn uniformly from `[-10, 10]`.
pub fn progression(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    let a: f64 = rng.gen_range(-10.0..10.0);
    let b: f64 = rng.gen_range(-10.0..10.0);
    (0..len).map(|t| a + b * t as f64).collect()
}

/// High-pass moving-average noise `50 (e_t - 0.9 e_{t-1})`, `e` uniform on `[-1, 1]`.
pub fn high_pass_noise(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    let mut prev: f64 = rng.gen_range(-1.0..1.0);
    (0..len)
        .map(|_| {
            let e: f64 = rng.gen_range(-1.0..1.0);
            let x = 50.0 * (e - 0.9 * prev);
            prev = e;
            x
        })
        .collect()
}

/// Two classes: `progression` (arithmetic progressions) and `noise`
/// (high-pass noise), one feature named `value`, `per_class` instances each.
pub fn progression_vs_noise(per_class: usize, len: usize, seed: u64) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut make = |label: &str, gen: &mut dyn FnMut(&mut ChaCha8Rng) -> Vec<f64>| -> Result<ClassData> {
        let instances = (0..per_class)
            .map(|i| Ok((format!("instance_{i:03}"), vec![TimeSeries::new(gen(&mut rng))?])))
            .collect::<Result<_>>()?;
        Ok(ClassData {
            label: label.to_owned(),
            instances,
        })
    };
    let a = make("progression", &mut |r| progression(r, len))?;
    let b = make("noise", &mut |r| high_pass_noise(r, len))?;
    Dataset::from_classes(vec!["value".into()], vec![a, b])
}

/// Noisy sinusoids: every feature of class `c` is a sinusoid with
/// angular frequency `base_freq * (c + 1)` (plus a per-feature offset),
/// random phase and amplitude, and uniform noise of the given amplitude.
#[derive(Debug, Clone)]
pub struct OscillatorSpec {
    pub classes: usize,
    pub per_class: usize,
    pub features: usize,
    pub len: usize,
    pub base_freq: f64,
    pub noise: f64,
    pub seed: u64,
}

impl Default for OscillatorSpec {
    fn default() -> Self {
        OscillatorSpec {
            classes: 3,
            per_class: 20,
            features: 2,
            len: 120,
            base_freq: 0.35,
            noise: 0.05,
            seed: 1,
        }
    }
}

pub fn oscillators(spec: &OscillatorSpec) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let features: Vec<String> = (0..spec.features).map(|j| format!("sensor_{}", j + 1)).collect();
    let classes = (0..spec.classes)
        .map(|c| {
            let instances = (0..spec.per_class)
                .map(|i| {
                    let series = (0..spec.features)
                        .map(|j| {
                            let omega = spec.base_freq * (c + 1) as f64 + 0.05 * j as f64;
                            let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                            let amp: f64 = rng.gen_range(0.5..2.0);
                            let values = (0..spec.len)
                                .map(|t| {
                                    amp * (omega * t as f64 + phase).sin()
                                        + spec.noise * rng.gen_range(-1.0..1.0)
                                })
                                .collect();
                            TimeSeries::new(values)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok((format!("instance_{i:03}"), series))
                })
                .collect::<Result<_>>()?;
            Ok(ClassData {
                label: format!("class_{}", c + 1),
                instances,
            })
        })
        .collect::<Result<_>>()?;
    Dataset::from_classes(features, classes)
}
