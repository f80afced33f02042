//! Zero-pattern classification of bilinear sets.

use std::fmt;
use std::str::FromStr;

use crate::bilinears::BilinearSet;
use crate::error::Error;
use crate::tensor::max_abs_vector;

/// Threshold rule for deciding which blocks vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPolicy {
    pub abs_floor: f64,
    pub rel_factor: f64,
}

impl Default for ZeroPolicy {
    fn default() -> Self {
        Self { abs_floor: 1e-9, rel_factor: 1e-9 }
    }
}

impl ZeroPolicy {
    pub fn new(abs_floor: f64, rel_factor: f64) -> crate::error::Result<Self> {
        if !(abs_floor >= 0.0 && rel_factor >= 0.0 && abs_floor.is_finite() && rel_factor.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "zero policy needs finite nonnegative thresholds, got abs_floor={abs_floor}, rel_factor={rel_factor}"
            )));
        }
        Ok(Self { abs_floor, rel_factor })
    }

    pub fn threshold(&self, b: &BilinearSet) -> f64 {
        self.abs_floor.max(self.rel_factor * b.max_abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    Phi,
    Theta,
    U,
    S,
    M,
}

impl Block {
    pub const ALL: [Block; 5] = [Block::Phi, Block::Theta, Block::U, Block::S, Block::M];

    pub fn name(&self) -> &'static str {
        match self {
            Block::Phi => "Phi",
            Block::Theta => "Theta",
            Block::U => "U",
            Block::S => "S",
            Block::M => "M",
        }
    }
}

/// Zero flags for (Φ, Θ, U, S, M). `true` means the block vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZeroPattern {
    pub phi: bool,
    pub theta: bool,
    pub u: bool,
    pub s: bool,
    pub m: bool,
}

impl ZeroPattern {
    /// From a string such as `"10110"` where `1` marks a nonzero block.
    const fn from_nonzero_mask(mask: &[u8; 5]) -> Self {
        Self {
            phi: mask[0] == b'0',
            theta: mask[1] == b'0',
            u: mask[2] == b'0',
            s: mask[3] == b'0',
            m: mask[4] == b'0',
        }
    }

    pub fn from_flags(flags: [bool; 5]) -> Self {
        Self { phi: flags[0], theta: flags[1], u: flags[2], s: flags[3], m: flags[4] }
    }

    pub fn flags(&self) -> [bool; 5] {
        [self.phi, self.theta, self.u, self.s, self.m]
    }

    pub fn is_zero(&self, block: Block) -> bool {
        self.flags()[block as usize]
    }

    pub fn nonzero_blocks(&self) -> Vec<Block> {
        Block::ALL.into_iter().filter(|b| !self.is_zero(*b)).collect()
    }

    /// Blocks on which two patterns disagree.
    pub fn differences(&self, other: &ZeroPattern) -> Vec<Block> {
        Block::ALL.into_iter().filter(|b| self.is_zero(*b) != other.is_zero(*b)).collect()
    }
}

impl fmt::Display for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<&str> = self.flags().iter().map(|z| if *z { "0" } else { "≠0" }).collect();
        write!(f, "({})", cells.join(","))
    }
}

pub fn zero_pattern(b: &BilinearSet, policy: &ZeroPolicy) -> ZeroPattern {
    let t = policy.threshold(b);
    ZeroPattern {
        phi: b.phi.norm() <= t,
        theta: b.theta.norm() <= t,
        u: max_abs_vector(&b.u) <= t,
        s: max_abs_vector(&b.s) <= t,
        m: b.m.max_abs() <= t,
    }
}

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C1_1,
    C1_2,
    C1_3,
    C1_4,
    C1_5,
    C1_6,
    C1_7,
    C2_1,
    C3_1,
    C4_1,
    C5_1,
    C6_1,
    C7,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 19] = [
        ClassLabel::C1,
        ClassLabel::C2,
        ClassLabel::C3,
        ClassLabel::C4,
        ClassLabel::C5,
        ClassLabel::C6,
        ClassLabel::C1_1,
        ClassLabel::C1_2,
        ClassLabel::C1_3,
        ClassLabel::C1_4,
        ClassLabel::C1_5,
        ClassLabel::C1_6,
        ClassLabel::C1_7,
        ClassLabel::C2_1,
        ClassLabel::C3_1,
        ClassLabel::C4_1,
        ClassLabel::C5_1,
        ClassLabel::C6_1,
        ClassLabel::C7,
    ];

    pub const STANDARD: [ClassLabel; 6] =
        [ClassLabel::C1, ClassLabel::C2, ClassLabel::C3, ClassLabel::C4, ClassLabel::C5, ClassLabel::C6];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClassLabel::C1 => "1",
            ClassLabel::C2 => "2",
            ClassLabel::C3 => "3",
            ClassLabel::C4 => "4",
            ClassLabel::C5 => "5",
            ClassLabel::C6 => "6",
            ClassLabel::C1_1 => "1.1",
            ClassLabel::C1_2 => "1.2",
            ClassLabel::C1_3 => "1.3",
            ClassLabel::C1_4 => "1.4",
            ClassLabel::C1_5 => "1.5",
            ClassLabel::C1_6 => "1.6",
            ClassLabel::C1_7 => "1.7",
            ClassLabel::C2_1 => "2.1",
            ClassLabel::C3_1 => "3.1",
            ClassLabel::C4_1 => "4.1",
            ClassLabel::C5_1 => "5.1",
            ClassLabel::C6_1 => "6.1",
            ClassLabel::C7 => "7",
        }
    }

    fn nonzero_mask(&self) -> &'static [u8; 5] {
        match self {
            ClassLabel::C1 => b"11111",
            ClassLabel::C2 => b"10111",
            ClassLabel::C3 => b"01111",
            ClassLabel::C4 => b"00111",
            ClassLabel::C5 => b"00101",
            ClassLabel::C6 => b"00110",
            ClassLabel::C1_1 => b"11110",
            ClassLabel::C1_2 => b"11101",
            ClassLabel::C1_3 => b"11100",
            ClassLabel::C1_4 => b"11011",
            ClassLabel::C1_5 => b"11000",
            ClassLabel::C1_6 => b"11001",
            ClassLabel::C1_7 => b"11010",
            ClassLabel::C2_1 => b"10110",
            ClassLabel::C3_1 => b"01110",
            ClassLabel::C4_1 => b"00011",
            ClassLabel::C5_1 => b"00001",
            ClassLabel::C6_1 => b"00010",
            ClassLabel::C7 => b"00100",
        }
    }

    pub fn pattern(&self) -> ZeroPattern {
        ZeroPattern::from_nonzero_mask(self.nonzero_mask())
    }

    pub fn is_standard(&self) -> bool {
        ClassLabel::STANDARD.contains(self)
    }

    pub fn from_pattern(pattern: &ZeroPattern) -> Option<ClassLabel> {
        ClassLabel::ALL.into_iter().find(|l| l.pattern() == *pattern)
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ClassLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown class label '{s}'")))
    }
}

/// Classes 1–6, or `None` when the pattern is outside the standard table.
pub fn lounesto_class(b: &BilinearSet, policy: &ZeroPolicy) -> Option<ClassLabel> {
    ClassLabel::from_pattern(&zero_pattern(b, policy)).filter(ClassLabel::is_standard)
}

/// Any of the 19 labels, or `None` for a forbidden or degenerate pattern.
pub fn extended_class(b: &BilinearSet, policy: &ZeroPolicy) -> Option<ClassLabel> {
    ClassLabel::from_pattern(&zero_pattern(b, policy))
}
