//! Qualitative symbols and the QTC variants built from them.
//!
//! | variant  | constraints            |
//! |----------|------------------------|
//! | `B1`     | A B                    |
//! | `B2`     | A B C                  |
//! | `C1`     | A B D E                |
//! | `C2`     | A B C D E F            |
//! | `ThreeD` | A B C F G H I          |

mod constraints;
mod encode;
mod io;

pub use constraints::{
    constraint_a, constraint_b, constraint_c, constraint_d, constraint_e, constraint_f,
    constraints_ghi, quantize_angles, Relation,
};
pub use encode::{encode, relative_angles, EncodeConfig};
pub use io::{read_sequence_csv, read_sequence_json, write_sequence_csv, write_sequence_json};

use std::fmt;
use std::str::FromStr;

use bitflags::bitflags;
use serde::{Deserialize, Serialize};

use crate::error::{QtcError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QtcSymbol {
    Minus,
    Zero,
    Plus,
}

impl QtcSymbol {
    pub const ALL: [QtcSymbol; 3] = [QtcSymbol::Minus, QtcSymbol::Zero, QtcSymbol::Plus];

    pub fn as_char(self) -> char {
        match self {
            QtcSymbol::Minus => '-',
            QtcSymbol::Zero => '0',
            QtcSymbol::Plus => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '-' => Some(QtcSymbol::Minus),
            '0' => Some(QtcSymbol::Zero),
            '+' => Some(QtcSymbol::Plus),
            _ => None,
        }
    }

    /// Position in the order `(-, 0, +)`.
    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn negate(self) -> Self {
        match self {
            QtcSymbol::Minus => QtcSymbol::Plus,
            QtcSymbol::Zero => QtcSymbol::Zero,
            QtcSymbol::Plus => QtcSymbol::Minus,
        }
    }
}

impl fmt::Display for QtcSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// `0` on the closed band `[-th, th]`, otherwise the sign of `x`.
pub fn quantize(x: f64, th: f64) -> QtcSymbol {
    debug_assert!(th >= 0.0, "negative threshold {th}");
    if x > th {
        QtcSymbol::Plus
    } else if x < -th {
        QtcSymbol::Minus
    } else {
        QtcSymbol::Zero
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

impl Constraint {
    pub fn letter(self) -> char {
        b"ABCDEFGHI"[self as usize] as char
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    B1,
    B2,
    C1,
    C2,
    #[serde(rename = "3D")]
    ThreeD,
}

impl Variant {
    pub const ALL: [Variant; 5] = [Variant::B1, Variant::B2, Variant::C1, Variant::C2, Variant::ThreeD];

    pub fn constraints(self) -> &'static [Constraint] {
        use Constraint::*;
        match self {
            Variant::B1 => &[A, B],
            Variant::B2 => &[A, B, C],
            Variant::C1 => &[A, B, D, E],
            Variant::C2 => &[A, B, C, D, E, F],
            Variant::ThreeD => &[A, B, C, F, G, H, I],
        }
    }

    pub fn arity(self) -> usize {
        self.constraints().len()
    }

    pub fn is_planar(self) -> bool {
        self != Variant::ThreeD
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::B1 => "B1",
            Variant::B2 => "B2",
            Variant::C1 => "C1",
            Variant::C2 => "C2",
            Variant::ThreeD => "3D",
        }
    }
}

impl FromStr for Variant {
    type Err = QtcError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "B1" => Ok(Variant::B1),
            "B2" => Ok(Variant::B2),
            "C1" => Ok(Variant::C1),
            "C2" => Ok(Variant::C2),
            "3D" | "THREED" => Ok(Variant::ThreeD),
            _ => Err(QtcError::InvalidArgument(format!("unknown variant '{s}'"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

bitflags! {
    /// Reasons a tuple holds zeros that were not measured.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
    pub struct Warnings: u8 {
        /// The two objects share a position.
        const COINCIDENT = 1;
        /// A velocity is below the displacement tolerance.
        const STATIONARY = 1 << 1;
        /// A Frenet frame was left undefined.
        const UNDEFINED_FRAME = 1 << 2;
    }
}

impl Warnings {
    const NAMES: [(Warnings, &'static str); 3] = [
        (Warnings::COINCIDENT, "coincident"),
        (Warnings::STATIONARY, "stationary"),
        (Warnings::UNDEFINED_FRAME, "undefined-frame"),
    ];

    pub fn names(self) -> Vec<&'static str> {
        Self::NAMES.iter().filter(|(w, _)| self.contains(*w)).map(|(_, n)| *n).collect()
    }

    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        names.into_iter().filter(|n| !n.is_empty()).try_fold(Warnings::empty(), |acc, n| {
            Self::NAMES
                .iter()
                .find(|(_, name)| *name == n)
                .map(|(w, _)| acc | *w)
                .ok_or_else(|| QtcError::InvalidArgument(format!("unknown warning '{n}'")))
        })
    }
}

/// Thresholds around zero, one per kind of quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    /// Distance change, meters per sample (A, B).
    pub dist: f64,
    /// Speed difference, meters per sample (C).
    pub speed: f64,
    /// Sine of the angle between velocity and the connecting line (D, E).
    pub side: f64,
    /// Angle difference, radians (F).
    pub angle_f: f64,
    /// Tait-Bryan angles, radians (G, H, I).
    pub tait_bryan: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            dist: 0.0,
            speed: 0.0,
            side: 0.0,
            angle_f: 0.0,
            tait_bryan: 10f64.to_radians(),
        }
    }
}

impl Thresholds {
    /// All thresholds zero: the ideal continuous-case quantization.
    pub fn zero() -> Self {
        Self { dist: 0.0, speed: 0.0, side: 0.0, angle_f: 0.0, tait_bryan: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("dist", self.dist),
            ("speed", self.speed),
            ("side", self.side),
            ("angle_f", self.angle_f),
            ("tait_bryan", self.tait_bryan),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(QtcError::InvalidArgument(format!("threshold {name} must be >= 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// One time step of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QtcTuple {
    pub tau: usize,
    pub variant: Variant,
    /// In the variant's constraint order.
    pub symbols: Vec<QtcSymbol>,
    pub warnings: Warnings,
}

impl QtcTuple {
    pub fn get(&self, c: Constraint) -> Option<QtcSymbol> {
        self.variant
            .constraints()
            .iter()
            .position(|&x| x == c)
            .map(|i| self.symbols[i])
    }

    /// `(G, H, I)` of a 3D tuple.
    pub fn ghi(&self) -> Option<[QtcSymbol; 3]> {
        Some([self.get(Constraint::G)?, self.get(Constraint::H)?, self.get(Constraint::I)?])
    }

    /// Fixed-order symbol string such as `-+-+--`.
    pub fn symbol_string(&self) -> String {
        self.symbols.iter().map(|s| s.as_char()).collect()
    }
}

impl fmt::Display for QtcTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QtcSequence {
    pub variant: Variant,
    pub thresholds: Thresholds,
    pub tuples: Vec<QtcTuple>,
}

impl QtcSequence {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn symbol_strings(&self) -> Vec<String> {
        self.tuples.iter().map(QtcTuple::symbol_string).collect()
    }
}
