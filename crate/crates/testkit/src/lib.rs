//! Test-only oracles and golden data.
//!
//! Nothing here depends on the engine crates: the equilibrium oracles work
//! on plain `f64` matrices and the golden table uses token ids as strings.

#![allow(clippy::needless_range_loop)]

pub mod lp;
pub mod support;

/// Deterministic SplitMix64 stream for test-data generation.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Vec<Vec<f64>> {
        (0..rows).map(|_| (0..cols).map(|_| self.next_f64()).collect()).collect()
    }
}

/// One row of the golden scoring table, transcribed by token id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenRow {
    pub iteration: u32,
    pub attacker: &'static str,
    pub defender: &'static str,
    pub attacker_points: u8,
    pub defender_points: u8,
    pub comment: &'static str,
}

const fn g(
    iteration: u32,
    attacker: &'static str,
    defender: &'static str,
    attacker_points: u8,
    defender_points: u8,
    comment: &'static str,
) -> GoldenRow {
    GoldenRow { iteration, attacker, defender, attacker_points, defender_points, comment }
}

/// Scoring table rows with names mapped to ids by hand.
pub const GOLDEN_TABLE: [GoldenRow; 26] = [
    g(1, "A1", "D5", 0, 1, "Never trust malicious emails"),
    g(2, "A11", "D1", 0, 1, "Denied malicious link"),
    g(3, "A3", "D4", 0, 1, "Identified malicious chats"),
    g(4, "A2", "D7", 1, 0, "Malicious calls trusted"),
    g(5, "A7", "D12", 0, 1, "Secure connections suggested"),
    g(6, "A8", "D4", 0, 1, "Data access monitored"),
    g(7, "A10", "D13", 0, 1, "The defender data recovery"),
    g(8, "A13", "D4", 0, 1, "Abnormal message identified"),
    g(9, "A11", "D6", 1, 0, "The defender uploaded files"),
    g(10, "A6", "D8", 1, 0, "The defender shared passwords"),
    g(11, "A9", "D2", 0, 1, "Malicious data monitored"),
    g(12, "A5", "D5", 0, 1, "The defender did not share data"),
    g(13, "A5", "D8", 1, 0, "Device validation details shared"),
    g(14, "A5", "D11", 1, 0, "Relevant information shared"),
    g(15, "A7", "D10", 0, 1, "Malicious connection reported"),
    g(16, "A8", "D12", 0, 1, "Secure connection"),
    g(17, "A10", "D8", 1, 0, "The defender lost information"),
    g(18, "A11", "D4", 0, 1, "Malicious link identification"),
    g(19, "A13", "D13", 1, 0, "The defender shared backups"),
    g(20, "A4", "D3", 0, 1, "Malicious attachments avoided"),
    g(21, "A3", "D7", 1, 0, "Malicious chat trusted"),
    g(22, "A2", "D2", 0, 1, "Secure network monitored"),
    g(23, "A9", "D3", 0, 1, "Abnormal data avoided"),
    g(24, "A12", "D13", 0, 1, "Data recovery"),
    g(25, "A6", "D3", 0, 1, "Secured passwords"),
    g(26, "A10", "D6", 1, 0, "Information uploaded and lost"),
];

/// 13×13 attacker-payoff matrix built straight from [`GOLDEN_TABLE`]:
/// attacker wins 1, defender wins 0, every other cell 0.5.
pub fn golden_payoff() -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.5; 13]; 13];
    for row in GOLDEN_TABLE {
        let i: usize = row.attacker[1..].parse::<usize>().unwrap() - 1;
        let j: usize = row.defender[1..].parse::<usize>().unwrap() - 1;
        m[i][j] = f64::from(row.attacker_points);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_sums() {
        let a: u32 = GOLDEN_TABLE.iter().map(|r| u32::from(r.attacker_points)).sum();
        let d: u32 = GOLDEN_TABLE.iter().map(|r| u32::from(r.defender_points)).sum();
        assert_eq!((a, d), (9, 17));
        let mut pairs: Vec<_> = GOLDEN_TABLE.iter().map(|r| (r.attacker, r.defender)).collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 26);
    }

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(3);
        let mut b = SplitMix64::new(3);
        assert_eq!(a.next_u64(), b.next_u64());
        assert!((0.0..1.0).contains(&a.next_f64()));
    }
}
