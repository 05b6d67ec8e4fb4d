//! Switch-level path model of the two single-supply binary-to-quaternary
//! encoders.
//!
//! Each encoder core has ten transistors. Four of them are permanently on and
//! act as the resistive divider that produces levels 1 and 2; they carry no
//! control input and are folded into the path definitions below. The other
//! six are driven by the control vector. A p-type device conducts when its
//! gate is low, an n-type device when it is high. A level is driven when every
//! controlled transistor on its path conducts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mvq::{BitPair, BitValue, QuatValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EncoderVariant {
    /// Divider with two resistive branches, controls on T0, T3, T4, T7, T8, T9.
    V1,
    /// Single resistive branch with bypass devices, controls on T0, T5, T6, T7, T8, T9.
    V2,
}

impl EncoderVariant {
    pub const ALL: [EncoderVariant; 2] = [EncoderVariant::V1, EncoderVariant::V2];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Polarity {
    P,
    N,
}

struct Device {
    name: &'static str,
    polarity: Polarity,
}

struct PathModel {
    devices: [Device; 6],
    /// Indices into `devices` for the path that drives each level 0..=3.
    paths: [&'static [usize]; 4],
}

const fn p(name: &'static str) -> Device {
    Device {
        name,
        polarity: Polarity::P,
    }
}

const fn n(name: &'static str) -> Device {
    Device {
        name,
        polarity: Polarity::N,
    }
}

// Polarities follow from the level-0 row, where every device except T9 is off.
static V1_MODEL: PathModel = PathModel {
    devices: [p("T0"), n("T3"), p("T4"), n("T7"), p("T8"), n("T9")],
    paths: [&[5], &[0, 1], &[2, 3], &[4]],
};

static V2_MODEL: PathModel = PathModel {
    devices: [p("T0"), n("T5"), p("T6"), n("T7"), p("T8"), n("T9")],
    paths: [&[5], &[0, 3], &[1, 2], &[4]],
};

fn model(variant: EncoderVariant) -> &'static PathModel {
    match variant {
        EncoderVariant::V1 => &V1_MODEL,
        EncoderVariant::V2 => &V2_MODEL,
    }
}

/// Gate inputs of the six controlled transistors, named `IT<n>` after the
/// device they drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ControlVector {
    pub variant: EncoderVariant,
    pub values: [BitValue; 6],
}

impl ControlVector {
    pub fn names(&self) -> [&'static str; 6] {
        match self.variant {
            EncoderVariant::V1 => ["IT0", "IT3", "IT4", "IT7", "IT8", "IT9"],
            EncoderVariant::V2 => ["IT0", "IT5", "IT6", "IT7", "IT8", "IT9"],
        }
    }

    pub fn get(&self, name: &str) -> Option<BitValue> {
        self.names()
            .iter()
            .position(|n| *n == name)
            .map(|i| self.values[i])
    }

    /// Levels whose path fully conducts under this control vector.
    pub fn conducting_levels(&self) -> Vec<QuatValue> {
        let m = model(self.variant);
        let on = |i: usize| match m.devices[i].polarity {
            Polarity::P => !self.values[i].is_high(),
            Polarity::N => self.values[i].is_high(),
        };
        QuatValue::ALL
            .into_iter()
            .zip(m.paths)
            .filter(|(_, path)| path.iter().all(|&i| on(i)))
            .map(|(level, _)| level)
            .collect()
    }

    /// Transistor names that conduct under this control vector.
    pub fn devices_on(&self) -> Vec<&'static str> {
        let m = model(self.variant);
        m.devices
            .iter()
            .zip(self.values)
            .filter(|(d, v)| (d.polarity == Polarity::N) == v.is_high())
            .map(|(d, _)| d.name)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathConflict {
    #[error("encoder {variant:?}: no conducting path for input {input:?}")]
    Floating {
        variant: EncoderVariant,
        input: BitPair,
    },
    #[error("encoder {variant:?}: {levels:?} conduct simultaneously for input {input:?}")]
    Contention {
        variant: EncoderVariant,
        input: BitPair,
        levels: Vec<QuatValue>,
    },
}

fn nand(a: bool, b: bool) -> bool {
    !(a && b)
}

fn nor(a: bool, b: bool) -> bool {
    !(a || b)
}

/// Control logic of the first encoder: 4 inverters, 3 NAND2 and 1 NOR2.
pub fn control_signals_v1(p: BitPair) -> ControlVector {
    let (x1, x0) = (p.x1.is_high(), p.x0.is_high());
    let it0 = nand(!x1, x0);
    let it4 = nand(x1, !x0);
    let values = [it0, !it0, it4, !it4, nand(x1, x0), nor(x1, x0)].map(BitValue::from);
    ControlVector {
        variant: EncoderVariant::V1,
        values,
    }
}

/// Control logic of the second encoder: 4 inverters, 2 NAND2 and 2 NOR2.
pub fn control_signals_v2(p: BitPair) -> ControlVector {
    let (x1, x0) = (p.x1.is_high(), p.x0.is_high());
    let it0 = nand(!x1, x0);
    let it5 = nor(!x1, x0);
    let values = [it0, it5, !it5, !it0, nand(x1, x0), nor(x1, x0)].map(BitValue::from);
    ControlVector {
        variant: EncoderVariant::V2,
        values,
    }
}

pub fn control_signals(p: BitPair, variant: EncoderVariant) -> ControlVector {
    match variant {
        EncoderVariant::V1 => control_signals_v1(p),
        EncoderVariant::V2 => control_signals_v2(p),
    }
}

/// Resolves a control vector to the single level it drives.
pub fn resolve(controls: &ControlVector, input: BitPair) -> Result<QuatValue, PathConflict> {
    let levels = controls.conducting_levels();
    match levels.as_slice() {
        [level] => Ok(*level),
        [] => Err(PathConflict::Floating {
            variant: controls.variant,
            input,
        }),
        _ => Err(PathConflict::Contention {
            variant: controls.variant,
            input,
            levels,
        }),
    }
}

pub fn switch_encode_single(
    p: BitPair,
    variant: EncoderVariant,
) -> Result<QuatValue, PathConflict> {
    resolve(&control_signals(p, variant), p)
}

/// Controlled transistors plus the always-on divider devices.
pub const ENCODER_CORE_TRANSISTORS: u32 = 10;
