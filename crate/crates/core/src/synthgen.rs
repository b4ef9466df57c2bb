//! Seeded generators for artificial datasets with known relevant features.
//!
//! Every generator is a pure function of its parameters and seed. All
//! features are nominal; binary features use the values `0` and `1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::datamodel::Dataset;
use crate::error::{Error, Result};

pub const CLASS_NAME: &str = "class";

/// Which features actually determine the class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub relevant: Vec<String>,
    pub irrelevant: Vec<String>,
}

impl GroundTruth {
    /// Splits the dataset's features into `relevant` and everything else.
    pub fn from_relevant(d: &Dataset, relevant: &[&str]) -> Result<Self> {
        for r in relevant {
            d.feature_index(r)?;
        }
        let irrelevant = d
            .feature_names()
            .filter(|n| !relevant.contains(n))
            .map(str::to_string)
            .collect();
        Ok(GroundTruth {
            relevant: relevant.iter().map(|s| s.to_string()).collect(),
            irrelevant,
        })
    }

    pub fn is_relevant(&self, feature: &str) -> bool {
        self.relevant.iter().any(|r| r == feature)
    }
}

fn symbols(k: usize) -> Vec<String> {
    (0..k).map(|v| v.to_string()).collect()
}

fn binary() -> Vec<String> {
    symbols(2)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::param("n must be >= 1"));
    }
    Ok(())
}

fn check_probability(name: &str, p: f64, upper: f64) -> Result<()> {
    if !(0.0..upper).contains(&p) {
        return Err(Error::param(format!("{name} must lie in [0, {upper}), got {p}")));
    }
    Ok(())
}

fn build(
    name: &str,
    features: Vec<(String, Vec<String>)>,
    class_values: Vec<String>,
    rows: Vec<Vec<usize>>,
    labels: Vec<usize>,
    relevant: &[String],
) -> Result<(Dataset, GroundTruth)> {
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(Some).collect())
        .collect();
    let d = Dataset::from_nominal(name, features, CLASS_NAME, class_values, rows, labels)?;
    let rel: Vec<&str> = relevant.iter().map(String::as_str).collect();
    let truth = GroundTruth::from_relevant(&d, &rel)?;
    Ok((d, truth))
}

/// Class of a Modulo-p-I instance from its important values.
pub fn modulo_class(p: usize, important: &[usize]) -> usize {
    important.iter().sum::<usize>() % p
}

/// `important` features `X1..` and `random` features `R1..`, all uniform over
/// `0..p`; the class is the sum of the important values modulo `p`.
pub fn gen_modulo(
    p: usize,
    important: usize,
    random: usize,
    n: usize,
    seed: u64,
) -> Result<(Dataset, GroundTruth)> {
    if p < 2 {
        return Err(Error::param(format!("p must be >= 2, got {p}")));
    }
    if important == 0 {
        return Err(Error::param("at least one important feature is required"));
    }
    check_n(n)?;
    let relevant: Vec<String> = (1..=important).map(|i| format!("X{i}")).collect();
    let features: Vec<(String, Vec<String>)> = relevant
        .iter()
        .cloned()
        .chain((1..=random).map(|i| format!("R{i}")))
        .map(|name| (name, symbols(p)))
        .collect();
    let mut g = rng(seed);
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let row: Vec<usize> = (0..important + random).map(|_| g.random_range(0..p)).collect();
        labels.push(modulo_class(p, &row[..important]));
        rows.push(row);
    }
    let name = format!("modulo-{p}-{important}");
    build(&name, features, symbols(p), rows, labels, &relevant)
}

pub const CORRAL_FEATURES: [&str; 6] = ["A0", "A1", "B0", "B1", "C", "I"];

pub fn corral_class(a0: bool, a1: bool, b0: bool, b1: bool) -> bool {
    (a0 && a1) || (b0 && b1)
}

fn corral_features() -> Vec<(String, Vec<String>)> {
    CORRAL_FEATURES.iter().map(|f| (f.to_string(), binary())).collect()
}

fn corral_relevant() -> Vec<String> {
    CORRAL_FEATURES[..4].iter().map(|s| s.to_string()).collect()
}

/// `n` i.i.d. CorrAl rows. `C` copies the class with probability 0.75 and is
/// its negation otherwise; `I` is a fair coin.
pub fn gen_corral(n: usize, seed: u64) -> Result<(Dataset, GroundTruth)> {
    check_n(n)?;
    let mut g = rng(seed);
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let bits: [bool; 4] = std::array::from_fn(|_| g.random_bool(0.5));
        let class = corral_class(bits[0], bits[1], bits[2], bits[3]);
        let c = if g.random_bool(0.75) { class } else { !class };
        let i = g.random_bool(0.5);
        let mut row: Vec<usize> = bits.iter().map(|&b| b as usize).collect();
        row.extend([c as usize, i as usize]);
        rows.push(row);
        labels.push(class as usize);
    }
    build("corral", corral_features(), binary(), rows, labels, &corral_relevant())
}

/// Canonical 64-row CorrAl: each of the 16 `A0 A1 B0 B1` configurations
/// appears four times, with `I` taking each value twice and `C` agreeing with
/// the class in three of the four copies (exactly 75% overall). Within each
/// class the copy whose `C` disagrees alternates between `I = 0` and `I = 1`,
/// which leaves `C` and `I` independent.
pub fn corral_exhaustive() -> Result<(Dataset, GroundTruth)> {
    let mut rows = Vec::with_capacity(64);
    let mut labels = Vec::with_capacity(64);
    let mut seen = [0usize; 2];
    for cfg in 0..16usize {
        let bits = [cfg >> 3 & 1, cfg >> 2 & 1, cfg >> 1 & 1, cfg & 1];
        let class = corral_class(bits[0] == 1, bits[1] == 1, bits[2] == 1, bits[3] == 1) as usize;
        let flipped = 2 + seen[class] % 2;
        seen[class] += 1;
        for j in 0..4usize {
            let c = if j == flipped { 1 - class } else { class };
            let mut row = bits.to_vec();
            row.extend([c, j & 1]);
            rows.push(row);
            labels.push(class);
        }
    }
    build("corral", corral_features(), binary(), rows, labels, &corral_relevant())
}

/// Segments lit for each digit, in feature order `I1..I7`:
/// upper-left, upper-right, top, middle, lower-left, lower-right, bottom.
pub const LED_SEGMENTS: [[bool; 7]; 10] = {
    const fn lit(on: &[usize]) -> [bool; 7] {
        let mut s = [false; 7];
        let mut i = 0;
        while i < on.len() {
            s[on[i] - 1] = true;
            i += 1;
        }
        s
    }
    [
        lit(&[1, 2, 3, 5, 6, 7]),
        lit(&[2, 6]),
        lit(&[2, 3, 4, 5, 7]),
        lit(&[2, 3, 4, 6, 7]),
        lit(&[1, 2, 4, 6]),
        lit(&[1, 3, 4, 6, 7]),
        lit(&[1, 3, 4, 5, 6, 7]),
        lit(&[2, 3, 6]),
        lit(&[1, 2, 3, 4, 5, 6, 7]),
        lit(&[1, 2, 3, 4, 6, 7]),
    ]
};

/// LED display digits: seven segment features `I1..I7`, each negated with
/// probability `noise`, followed by `irrelevant` fair-coin features `R1..`.
pub fn gen_led(n: usize, irrelevant: usize, noise: f64, seed: u64) -> Result<(Dataset, GroundTruth)> {
    check_n(n)?;
    check_probability("noise", noise, 0.5)?;
    let relevant: Vec<String> = (1..=7).map(|i| format!("I{i}")).collect();
    let features: Vec<(String, Vec<String>)> = relevant
        .iter()
        .cloned()
        .chain((1..=irrelevant).map(|i| format!("R{i}")))
        .map(|name| (name, binary()))
        .collect();
    let mut g = rng(seed);
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let digit = g.random_range(0..10);
        let mut row: Vec<usize> = LED_SEGMENTS[digit]
            .iter()
            .map(|&on| (on ^ g.random_bool(noise)) as usize)
            .collect();
        row.extend((0..irrelevant).map(|_| g.random_bool(0.5) as usize));
        rows.push(row);
        labels.push(digit);
    }
    let name = format!("led{}", 7 + irrelevant);
    build(&name, features, symbols(10), rows, labels, &relevant)
}

/// Number of values of `A1..A6`.
pub const MONK_CARDINALITIES: [usize; 6] = [3, 3, 2, 3, 4, 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Monk {
    One,
    Three,
}

impl Monk {
    pub fn from_number(which: u8) -> Result<Self> {
        match which {
            1 => Ok(Monk::One),
            3 => Ok(Monk::Three),
            2 => Err(Error::param(
                "Monk-2 does not contain unimportant features; use 1 or 3",
            )),
            _ => Err(Error::param(format!("no Monk problem {which}; use 1 or 3"))),
        }
    }

    pub fn default_noise(self) -> f64 {
        match self {
            Monk::One => 0.0,
            Monk::Three => 0.05,
        }
    }

    pub fn relevant(self) -> [&'static str; 3] {
        match self {
            Monk::One => ["A1", "A2", "A5"],
            Monk::Three => ["A2", "A4", "A5"],
        }
    }

    /// Noise-free class from 1-based attribute values `a[0..6]`.
    pub fn class(self, a: &[usize; 6]) -> bool {
        match self {
            Monk::One => a[0] == a[1] || a[4] == 1,
            Monk::Three => (a[4] == 3 && a[3] == 1) || (a[4] != 4 && a[1] != 3),
        }
    }

    fn number(self) -> u8 {
        match self {
            Monk::One => 1,
            Monk::Three => 3,
        }
    }
}

fn monk_dataset(which: Monk, configs: Vec<[usize; 6]>, noise: f64, g: &mut ChaCha8Rng) -> Result<(Dataset, GroundTruth)> {
    let features: Vec<(String, Vec<String>)> = MONK_CARDINALITIES
        .iter()
        .enumerate()
        .map(|(i, &k)| (format!("A{}", i + 1), (1..=k).map(|v| v.to_string()).collect()))
        .collect();
    let mut labels = Vec::with_capacity(configs.len());
    let mut rows = Vec::with_capacity(configs.len());
    for a in configs {
        let class = which.class(&a) ^ g.random_bool(noise);
        labels.push(class as usize);
        rows.push(a.iter().map(|v| v - 1).collect());
    }
    let relevant: Vec<String> = which.relevant().iter().map(|s| s.to_string()).collect();
    let name = format!("monk-{}", which.number());
    build(&name, features, binary(), rows, labels, &relevant)
}

/// `n` rows drawn uniformly over the attribute space, class flipped with
/// probability `noise`.
pub fn gen_monk(which: Monk, n: usize, noise: f64, seed: u64) -> Result<(Dataset, GroundTruth)> {
    check_n(n)?;
    check_probability("noise", noise, 1.0)?;
    let mut g = rng(seed);
    let configs: Vec<[usize; 6]> = (0..n)
        .map(|_| std::array::from_fn(|i| g.random_range(1..=MONK_CARDINALITIES[i])))
        .collect();
    monk_dataset(which, configs, noise, &mut g)
}

/// All 432 attribute configurations in lexicographic order, class flipped
/// with probability `noise` (the seed only matters when `noise > 0`).
pub fn monk_exhaustive(which: Monk, noise: f64, seed: u64) -> Result<(Dataset, GroundTruth)> {
    check_probability("noise", noise, 1.0)?;
    let mut configs = vec![[1usize; 6]];
    for (i, &k) in MONK_CARDINALITIES.iter().enumerate() {
        configs = configs
            .into_iter()
            .flat_map(|c| {
                (1..=k).map(move |v| {
                    let mut next = c;
                    next[i] = v;
                    next
                })
            })
            .collect();
    }
    monk_dataset(which, configs, noise, &mut rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datamodel::Cell;

    fn value(d: &Dataset, i: usize, f: &str) -> usize {
        match d.cell(i, d.feature_index(f).unwrap()) {
            Cell::Symbol(s) => s,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn modulo_examples() {
        assert_eq!(modulo_class(2, &[1, 1]), 0);
        assert_eq!(modulo_class(4, &[3, 3, 3]), 1);
    }

    #[test]
    fn modulo_labels_consistent() {
        let (d, t) = gen_modulo(4, 3, 5, 300, 11).unwrap();
        assert_eq!(d.n_features(), 8);
        assert_eq!(t.relevant, vec!["X1", "X2", "X3"]);
        assert_eq!(t.irrelevant.len(), 5);
        for i in 0..d.n_instances() {
            let imp: Vec<usize> = ["X1", "X2", "X3"].iter().map(|f| value(&d, i, f)).collect();
            assert_eq!(d.label(i), modulo_class(4, &imp));
        }
        assert!(gen_modulo(1, 2, 0, 10, 0).is_err());
    }

    #[test]
    fn generators_deterministic() {
        assert_eq!(gen_modulo(2, 2, 3, 50, 4).unwrap(), gen_modulo(2, 2, 3, 50, 4).unwrap());
        assert_ne!(gen_modulo(2, 2, 3, 50, 4).unwrap().0, gen_modulo(2, 2, 3, 50, 5).unwrap().0);
        assert_eq!(gen_led(40, 17, 0.1, 2).unwrap(), gen_led(40, 17, 0.1, 2).unwrap());
        assert_eq!(gen_corral(40, 2).unwrap(), gen_corral(40, 2).unwrap());
        assert_eq!(
            gen_monk(Monk::Three, 40, 0.05, 2).unwrap(),
            gen_monk(Monk::Three, 40, 0.05, 2).unwrap()
        );
    }

    #[test]
    fn corral_rule() {
        assert!(corral_class(true, true, false, false));
        assert!(!corral_class(false, true, true, false));
        let (d, t) = gen_corral(2000, 8).unwrap();
        assert_eq!(t.relevant, vec!["A0", "A1", "B0", "B1"]);
        for i in 0..d.n_instances() {
            let b: Vec<bool> = ["A0", "A1", "B0", "B1"].iter().map(|f| value(&d, i, f) == 1).collect();
            assert_eq!(d.label(i) == 1, corral_class(b[0], b[1], b[2], b[3]));
        }
    }

    #[test]
    fn corral_exhaustive_shape() {
        let (d, _) = corral_exhaustive().unwrap();
        assert_eq!(d.n_instances(), 64);
        let agree = (0..64).filter(|&i| value(&d, i, "C") == d.label(i)).count();
        assert_eq!(agree, 48);
        let ones = (0..64).filter(|&i| value(&d, i, "I") == 1).count();
        assert_eq!(ones, 32);
        // C and I independent: each (C, I) cell holds half of C's rows.
        for c in 0..2 {
            let with_c = (0..64).filter(|&i| value(&d, i, "C") == c).count();
            for v in 0..2 {
                let cell = (0..64)
                    .filter(|&i| value(&d, i, "C") == c && value(&d, i, "I") == v)
                    .count();
                assert_eq!(2 * cell, with_c);
            }
        }
    }

    #[test]
    fn led_digits() {
        assert!(LED_SEGMENTS[8].iter().all(|&s| s));
        let one: Vec<usize> = (0..7).filter(|&s| LED_SEGMENTS[1][s]).map(|s| s + 1).collect();
        assert_eq!(one, vec![2, 6]);
        let (d, t) = gen_led(500, 17, 0.0, 1).unwrap();
        assert_eq!(d.n_features(), 24);
        assert_eq!(t.relevant.len(), 7);
        for i in 0..d.n_instances() {
            for s in 0..7 {
                assert_eq!(value(&d, i, &format!("I{}", s + 1)) == 1, LED_SEGMENTS[d.label(i)][s]);
            }
        }
        assert!(gen_led(10, 0, 0.5, 0).is_err());
    }

    #[test]
    fn led_segments_distinct() {
        for a in 0..10 {
            for b in a + 1..10 {
                assert_ne!(LED_SEGMENTS[a], LED_SEGMENTS[b]);
            }
        }
    }

    #[test]
    fn monk_rules() {
        assert!(Monk::One.class(&[2, 2, 1, 1, 3, 1]));
        assert!(Monk::One.class(&[1, 2, 1, 1, 1, 1]));
        assert!(!Monk::One.class(&[1, 2, 1, 1, 2, 1]));
        for a2 in 1..=3 {
            for a4 in 2..=3 {
                assert!(!Monk::Three.class(&[1, a2, 1, a4, 4, 1]));
            }
        }
        assert!(Monk::from_number(2).is_err());
        assert!(Monk::from_number(4).is_err());
    }

    #[test]
    fn monk_exhaustive_space() {
        let (d, t) = monk_exhaustive(Monk::One, 0.0, 0).unwrap();
        assert_eq!(d.n_instances(), 432);
        assert_eq!(t.irrelevant, vec!["A3", "A4", "A6"]);
        for i in 0..432 {
            let a: [usize; 6] = std::array::from_fn(|j| value(&d, i, &format!("A{}", j + 1)) + 1);
            assert_eq!(d.label(i) == 1, Monk::One.class(&a));
        }
    }

    #[test]
    fn monk_noise_rate() {
        let n = 100_000;
        let (d, _) = gen_monk(Monk::Three, n, 0.05, 3).unwrap();
        let flips = (0..n)
            .filter(|&i| {
                let a: [usize; 6] = std::array::from_fn(|j| value(&d, i, &format!("A{}", j + 1)) + 1);
                (d.label(i) == 1) != Monk::Three.class(&a)
            })
            .count();
        let rate = flips as f64 / n as f64;
        let band = 3.0 * (0.05f64 * 0.95 / n as f64).sqrt();
        assert!((rate - 0.05).abs() <= band, "{rate}");
    }
}
