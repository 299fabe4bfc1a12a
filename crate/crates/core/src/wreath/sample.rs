//! Uniform sampling of wreath elements.
//!
//! At a node of level `m` the label `a` is drawn with probability
//! `N_{m-1}^{|dom a|} / N_m`, after which each branch in `dom a` is filled
//! with an independent uniform element of level `m - 1`. The product of these
//! probabilities is `1 / N_m` for every element.
//!
//! In exact mode the label is chosen by drawing one uniform integer in
//! `[0, N_m)` and locating it among the cumulative weights, so no rounding
//! enters. Approximate mode replaces the weights by `f64` probabilities and
//! works at any level, at the price of a bias below double precision.

use std::sync::Arc;

use num_bigint::{BigUint, RandBigInt};
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha20Rng;

use super::{count_table, WreathElement};
use crate::base_i2::I2Element;
use crate::error::{Error, Result};
use crate::rng::indexed_rng;

/// Largest level for which exact sampling is allowed by default.
pub const DEFAULT_EXACT_SAMPLING_CAP: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SamplingMode {
    #[default]
    Exact,
    Approximate,
}

#[derive(Debug, Clone)]
enum LevelTable {
    /// `cumulative[k]` = total weight of the first `k + 1` labels in canonical order.
    Exact { total: BigUint, cumulative: [BigUint; 7] },
    Approximate { cumulative: [f64; 7] },
}

/// Precomputed per-level label distributions up to some maximum level.
#[derive(Debug, Clone)]
pub struct Sampler {
    mode: SamplingMode,
    levels: Vec<LevelTable>,
}

impl Sampler {
    /// Exact sampler for levels `1..=max_level`, refusing levels above
    /// [`DEFAULT_EXACT_SAMPLING_CAP`].
    pub fn exact(max_level: u32) -> Result<Self> {
        Self::new(max_level, SamplingMode::Exact, DEFAULT_EXACT_SAMPLING_CAP)
    }

    pub fn new(max_level: u32, mode: SamplingMode, exact_cap: u32) -> Result<Self> {
        if max_level == 0 {
            return Err(Error::ZeroLevel);
        }
        let levels = match mode {
            SamplingMode::Exact => {
                if max_level > exact_cap {
                    return Err(Error::SamplingCap { n: max_level, cap: exact_cap });
                }
                let counts = count_table(max_level);
                (1..=max_level as usize)
                    .map(|m| {
                        let below = &counts[m - 1];
                        let weights = [BigUint::from(1u32), below.clone(), below * below];
                        let mut acc = BigUint::default();
                        let cumulative = I2Element::ALL.map(|a| {
                            acc += &weights[a.domain_size()];
                            acc.clone()
                        });
                        debug_assert_eq!(acc, counts[m]);
                        LevelTable::Exact { total: counts[m].clone(), cumulative }
                    })
                    .collect()
            }
            SamplingMode::Approximate => (1..=max_level).map(approximate_level).collect(),
        };
        Ok(Sampler { mode, levels })
    }

    pub fn mode(&self) -> SamplingMode {
        self.mode
    }

    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Draws one element of level `n`.
    ///
    /// # Panics
    /// If `n` is zero or above [`Sampler::max_level`].
    pub fn sample<R: Rng + ?Sized>(&self, n: u32, rng: &mut R) -> WreathElement {
        assert!(n >= 1 && n <= self.max_level(), "level {n} outside sampler range 1..={}", self.max_level());
        self.sample_level(n, rng)
    }

    fn draw_label<R: Rng + ?Sized>(&self, level: u32, rng: &mut R) -> I2Element {
        let k = match &self.levels[level as usize - 1] {
            LevelTable::Exact { total, cumulative } => {
                let u = rng.gen_biguint_below(total);
                cumulative.iter().position(|c| &u < c).expect("u < total")
            }
            LevelTable::Approximate { cumulative } => {
                let u: f64 = rng.gen();
                cumulative.iter().position(|&c| u < c).unwrap_or(6)
            }
        };
        I2Element::ALL[k]
    }

    fn sample_level<R: Rng + ?Sized>(&self, level: u32, rng: &mut R) -> WreathElement {
        let top = self.draw_label(level, rng);
        let mut children: [Option<Arc<WreathElement>>; 2] = [None, None];
        if level > 1 {
            for y in top.domain() {
                children[usize::from(y) - 1] = Some(Arc::new(self.sample_level(level - 1, rng)));
            }
        }
        WreathElement::from_parts(level, top, children)
    }

    /// Element number `index` of the stream determined by `seed` at level `n`.
    /// The result depends only on `(seed, n, index)`.
    pub fn sample_indexed(&self, n: u32, seed: u64, index: u64) -> WreathElement {
        let mut rng: ChaCha20Rng = indexed_rng(seed, u64::from(n), index);
        self.sample(n, &mut rng)
    }
}

fn approximate_level(level: u32) -> LevelTable {
    // With y = 1 / N_{m-1} the weights 1, N, N^2 normalize to
    // y^2, y, 1 over 2 + 4y + y^2.
    let y = if level >= 11 {
        0.0
    } else {
        1.0 / count_table(level - 1).pop().unwrap().to_f64().unwrap()
    };
    let denom = 2.0 + 4.0 * y + y * y;
    let probs = [y * y, y, 1.0].map(|w| w / denom);
    let mut acc = 0.0;
    let cumulative = I2Element::ALL.map(|a| {
        acc += probs[a.domain_size()];
        acc
    });
    LevelTable::Approximate { cumulative }
}

/// Draws one exactly uniform element of level `n` from `rng`.
pub fn sample_uniform<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<WreathElement> {
    Ok(Sampler::exact(n)?.sample(n, rng))
}

/// Exactly uniform element number `index` of the `(seed, n)` stream.
pub fn sample_indexed(n: u32, seed: u64, index: u64) -> Result<WreathElement> {
    Ok(Sampler::exact(n)?.sample_indexed(n, seed, index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn exact_label_probabilities_at_level_two() {
        let sampler = Sampler::exact(2).unwrap();
        let LevelTable::Exact { total, cumulative } = &sampler.levels[1] else { panic!() };
        assert_eq!(total, &BigUint::from(127u32));
        let mut prev = BigUint::default();
        let weights: Vec<u32> = cumulative
            .iter()
            .map(|c| {
                let w = (c - &prev).to_u32().unwrap();
                prev = c.clone();
                w
            })
            .collect();
        // canonical order: [1,2],[1,0],[2,1],[2,0],[0,1],[0,2],[0,0]
        assert_eq!(weights, vec![49, 7, 49, 7, 7, 7, 1]);
    }

    #[test]
    fn level_one_weights_are_equal() {
        let sampler = Sampler::exact(1).unwrap();
        let LevelTable::Exact { cumulative, .. } = &sampler.levels[0] else { panic!() };
        let c: Vec<u32> = cumulative.iter().map(|c| c.to_u32().unwrap()).collect();
        assert_eq!(c, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn indexed_samples_are_reproducible() {
        let sampler = Sampler::exact(6).unwrap();
        for i in 0..20 {
            assert_eq!(sampler.sample_indexed(6, 7, i), sampler.sample_indexed(6, 7, i));
        }
        let distinct: std::collections::HashSet<_> = (0..50).map(|i| sampler.sample_indexed(6, 7, i)).collect();
        assert!(distinct.len() > 40);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(Sampler::exact(15).unwrap_err(), Error::SamplingCap { n: 15, cap: 14 });
        assert!(Sampler::new(20, SamplingMode::Approximate, DEFAULT_EXACT_SAMPLING_CAP).is_ok());
    }

    #[test]
    fn approximate_mode_matches_exact_probabilities() {
        let approx = Sampler::new(3, SamplingMode::Approximate, 0).unwrap();
        let LevelTable::Approximate { cumulative } = &approx.levels[1] else { panic!() };
        assert!((cumulative[0] - 49.0 / 127.0).abs() < 1e-15, "{cumulative:?}");
        assert!((cumulative[6] - 1.0).abs() < 1e-15);
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let x = approx.sample(3, &mut rng);
        assert_eq!(x.level(), 3);
    }

    #[test]
    fn samples_have_the_requested_level() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for n in 1..=8 {
            let x = sample_uniform(n, &mut rng).unwrap();
            assert_eq!(x.level(), n);
        }
    }
}
