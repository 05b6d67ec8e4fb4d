//! Quaternary and binary value domains, the arithmetic oracle and the pure
//! helper functions every block model is checked against.
//!
//! Logic-high is physical level 3 everywhere: a [`BitValue`] of 1 is driven
//! at level 3, and all indicator signals are active-high.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("quaternary value {0} out of range 0..=3")]
    QuatOutOfRange(u8),
    #[error("bit value {0} out of range 0..=1")]
    BitOutOfRange(u8),
}

/// One quaternary digit, i.e. a voltage-level index in `0..=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct QuatValue(u8);

impl QuatValue {
    pub const ZERO: QuatValue = QuatValue(0);
    pub const ONE: QuatValue = QuatValue(1);
    pub const TWO: QuatValue = QuatValue(2);
    pub const THREE: QuatValue = QuatValue(3);
    pub const ALL: [QuatValue; 4] = [Self::ZERO, Self::ONE, Self::TWO, Self::THREE];

    pub fn new(value: u8) -> Result<Self, ValueError> {
        if value <= 3 {
            Ok(QuatValue(value))
        } else {
            Err(ValueError::QuatOutOfRange(value))
        }
    }

    /// Reduces any integer modulo 4.
    pub fn wrapping(value: u32) -> Self {
        QuatValue((value % 4) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl TryFrom<u8> for QuatValue {
    type Error = ValueError;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        QuatValue::new(value)
    }
}

impl From<QuatValue> for u8 {
    fn from(q: QuatValue) -> u8 {
        q.0
    }
}

impl fmt::Display for QuatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A logical bit. Physically it only ever sits at level 0 or level 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct BitValue(bool);

impl BitValue {
    pub const LOW: BitValue = BitValue(false);
    pub const HIGH: BitValue = BitValue(true);
    pub const ALL: [BitValue; 2] = [Self::LOW, Self::HIGH];

    pub fn new(value: u8) -> Result<Self, ValueError> {
        match value {
            0 => Ok(Self::LOW),
            1 => Ok(Self::HIGH),
            other => Err(ValueError::BitOutOfRange(other)),
        }
    }

    pub fn is_high(self) -> bool {
        self.0
    }

    pub fn value(self) -> u8 {
        self.0 as u8
    }

    /// Physical voltage level: 0 for logical 0, 3 for logical 1.
    pub fn level(self) -> QuatValue {
        if self.0 {
            QuatValue::THREE
        } else {
            QuatValue::ZERO
        }
    }
}

impl From<bool> for BitValue {
    fn from(b: bool) -> Self {
        BitValue(b)
    }
}

impl From<BitValue> for bool {
    fn from(b: BitValue) -> bool {
        b.0
    }
}

impl TryFrom<u8> for BitValue {
    type Error = ValueError;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        BitValue::new(value)
    }
}

impl From<BitValue> for u8 {
    fn from(b: BitValue) -> u8 {
        b.0 as u8
    }
}

impl std::ops::Not for BitValue {
    type Output = BitValue;

    fn not(self) -> BitValue {
        BitValue(!self.0)
    }
}

impl fmt::Display for BitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

/// Two-bit binary code of a quaternary digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitPair {
    /// Weight-2 bit.
    pub x1: BitValue,
    /// Weight-1 bit.
    pub x0: BitValue,
}

impl BitPair {
    pub fn new(x1: BitValue, x0: BitValue) -> Self {
        BitPair { x1, x0 }
    }

    pub fn all() -> [BitPair; 4] {
        QuatValue::ALL.map(q_to_bits)
    }
}

/// The seven indicator signals produced by the complete quaternary decoder.
///
/// `i0`, `i1`, `i2` are one-hot for 0, 1, 2; `ii` is `q <= 1`; `i3` is `q <= 2`
/// (so the value 3 is signalled by `i3` being low).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecodedQuat {
    pub i0: BitValue,
    pub i1: BitValue,
    pub i1_bar: BitValue,
    pub ii: BitValue,
    pub i2_bar: BitValue,
    pub i2: BitValue,
    pub i3: BitValue,
}

impl DecodedQuat {
    /// Checks the structural invariants that hold for every legal decode.
    pub fn is_consistent(&self) -> bool {
        let hot = [self.i0, self.i1, self.i2, !self.i3]
            .iter()
            .filter(|b| b.is_high())
            .count();
        self.i1_bar == !self.i1
            && self.i2_bar == !self.i2
            && self.ii.is_high() == (self.i0.is_high() || self.i1.is_high())
            && hot == 1
    }

    /// One-hot indicator of the value 3, which the decoder exposes only as `!i3`.
    pub fn is_three(&self) -> BitValue {
        !self.i3
    }
}

/// Step applied by the successor family: `(q + k) mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shift {
    /// `k = 1`
    Successor,
    /// `k = 2`
    SecondSuccessor,
    /// `k = 3`, the predecessor.
    Predecessor,
}

impl Shift {
    pub const ALL: [Shift; 3] = [Shift::Successor, Shift::SecondSuccessor, Shift::Predecessor];

    pub fn amount(self) -> u8 {
        match self {
            Shift::Successor => 1,
            Shift::SecondSuccessor => 2,
            Shift::Predecessor => 3,
        }
    }
}

/// Reference one-digit addition: `(a + b + cin) mod 4` and its carry.
pub fn quat_add_oracle(a: QuatValue, b: QuatValue, cin: BitValue) -> (QuatValue, BitValue) {
    let total = a.0 as u32 + b.0 as u32 + cin.value() as u32;
    (QuatValue::wrapping(total), BitValue::from(total >= 4))
}

/// Reference N-digit addition, least significant digit first.
///
/// Panics if the operands differ in length.
pub fn add_digits(a: &[QuatValue], b: &[QuatValue], cin: BitValue) -> (Vec<QuatValue>, BitValue) {
    assert_eq!(
        a.len(),
        b.len(),
        "operands must have the same number of digits"
    );
    let value = |digits: &[QuatValue]| {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, d| acc * 4 + d.0 as u64)
    };
    let total = value(a) + value(b) + cin.value() as u64;
    let sum = (0..a.len())
        .map(|i| QuatValue(((total >> (2 * i)) & 3) as u8))
        .collect();
    (sum, BitValue::from(total >> (2 * a.len()) != 0))
}

/// Negative threshold inverter: high iff `q == 0`.
pub fn nqi(q: QuatValue) -> BitValue {
    BitValue::from(q.0 == 0)
}

/// Intermediate threshold inverter: high iff `q <= 1`.
pub fn iqi(q: QuatValue) -> BitValue {
    BitValue::from(q.0 <= 1)
}

/// Positive threshold inverter: high iff `q <= 2`.
pub fn pqi(q: QuatValue) -> BitValue {
    BitValue::from(q.0 <= 2)
}

pub fn decode_full(q: QuatValue) -> DecodedQuat {
    let i1 = BitValue::from(q.0 == 1);
    let i2 = BitValue::from(q.0 == 2);
    DecodedQuat {
        i0: nqi(q),
        i1,
        i1_bar: !i1,
        ii: iqi(q),
        i2_bar: !i2,
        i2,
        i3: pqi(q),
    }
}

pub fn q_to_bits(q: QuatValue) -> BitPair {
    BitPair {
        x1: BitValue::from(q.0 >= 2),
        x0: BitValue::from(q.0 & 1 == 1),
    }
}

pub fn bits_to_q(p: BitPair) -> QuatValue {
    QuatValue(p.x1.value() * 2 + p.x0.value())
}

pub fn successor_k(q: QuatValue, k: Shift) -> QuatValue {
    QuatValue((q.0 + k.amount()) % 4)
}

/// Half-adder digit `H = (a + b) mod 4`.
pub fn h_mod(a: QuatValue, b: QuatValue) -> QuatValue {
    QuatValue((a.0 + b.0) % 4)
}

/// Carry generator working from the half-adder digit `h`:
///
/// `!cout = H0.A0 + H1.Ai + H2.A3 + !cin.!H3`
///
/// with `H0`/`H1`/`H2` one-hot on `h`, `H3 = (h <= 2)`, `A0 = (a == 0)`,
/// `Ai = (a <= 1)` and `A3 = (a <= 2)`.
pub fn cout_from_h(h: QuatValue, a: QuatValue, cin: BitValue) -> BitValue {
    let dh = decode_full(h);
    let da = decode_full(a);
    let no_carry = (dh.i0.is_high() && da.i0.is_high())
        || (dh.i1.is_high() && da.ii.is_high())
        || (dh.i2.is_high() && da.i3.is_high())
        || (!cin.is_high() && !dh.i3.is_high());
    BitValue::from(!no_carry)
}

/// Quaternary generate and propagate: `g = (a + b >= 4)`, `p = (a + b == 3)`.
pub fn quat_g_p(a: QuatValue, b: QuatValue) -> (BitValue, BitValue) {
    let s = a.0 + b.0;
    (BitValue::from(s >= 4), BitValue::from(s == 3))
}

/// Gate form of the generate signal, `G = !((A3 + B0).(Ai + Bi).(B3 + A0))`,
/// where `X0`, `Xi`, `X3` are the NQI, IQI and PQI outputs of each operand.
pub fn g_gate_form(a: QuatValue, b: QuatValue) -> BitValue {
    let (a0, ai, a3) = (nqi(a).is_high(), iqi(a).is_high(), pqi(a).is_high());
    let (b0, bi, b3) = (nqi(b).is_high(), iqi(b).is_high(), pqi(b).is_high());
    BitValue::from(!((a3 || b0) && (ai || bi) && (b3 || a0)))
}

/// Published propagate formula `P = A3.B1 + A2.B2 + A1.B3` with every `Xk`
/// read as the one-hot indicator of the value `k`.
pub fn p_formula_one_hot(a: QuatValue, b: QuatValue) -> BitValue {
    let is = |q: QuatValue, k: u8| q.0 == k;
    BitValue::from((is(a, 3) && is(b, 1)) || (is(a, 2) && is(b, 2)) || (is(a, 1) && is(b, 3)))
}

/// Same formula with `A3`/`B3` read as PQI outputs (`<= 2`) and
/// `A1`, `A2`, `B1`, `B2` as one-hot decoder outputs, the convention
/// under which the gate form of `G` is correct.
pub fn p_formula_threshold(a: QuatValue, b: QuatValue) -> BitValue {
    let (da, db) = (decode_full(a), decode_full(b));
    BitValue::from(
        (da.i3.is_high() && db.i1.is_high())
            || (da.i2.is_high() && db.i2.is_high())
            || (da.i1.is_high() && db.i3.is_high()),
    )
}

/// Combines three mutually exclusive level functions as `3.f3 + 2.f2 + 1.f1`.
///
/// Outside their legal domain the functions may overlap; the highest active
/// level wins, which keeps the result total.
pub fn weighted_level(f3: bool, f2: bool, f1: bool) -> QuatValue {
    if f3 {
        QuatValue::THREE
    } else if f2 {
        QuatValue::TWO
    } else if f1 {
        QuatValue::ONE
    } else {
        QuatValue::ZERO
    }
}

/// Recovers a selector level from its NQI/IQI/PQI outputs
/// (priority order, so every bit pattern maps to some level).
pub fn level_from_thresholds(nqi: bool, iqi: bool, pqi: bool) -> QuatValue {
    if nqi {
        QuatValue::ZERO
    } else if iqi {
        QuatValue::ONE
    } else if pqi {
        QuatValue::TWO
    } else {
        QuatValue::THREE
    }
}

/// Recovers a selector level from its complemented thresholds
/// `(q >= 1, q >= 2, q >= 3)`.
pub fn level_from_ge(ge1: bool, ge2: bool, ge3: bool) -> QuatValue {
    level_from_thresholds(!ge1, !ge2, !ge3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: u8) -> QuatValue {
        QuatValue::new(v).unwrap()
    }

    fn b(v: u8) -> BitValue {
        BitValue::new(v).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(quat_add_oracle(q(1), q(3), b(0)), (q(0), b(1)));
        assert_eq!(quat_add_oracle(q(0), q(0), b(0)), (q(0), b(0)));
        assert_eq!(quat_add_oracle(q(3), q(3), b(1)), (q(3), b(1)));
        assert_eq!(quat_add_oracle(q(3), q(3), b(0)), (q(2), b(1)));
    }

    #[test]
    fn oracle_integer_identity() {
        for a in QuatValue::ALL {
            for bb in QuatValue::ALL {
                for c in BitValue::ALL {
                    let (s, co) = quat_add_oracle(a, bb, c);
                    assert_eq!(
                        4 * co.value() + s.value(),
                        a.value() + bb.value() + c.value()
                    );
                }
            }
        }
    }

    #[test]
    fn out_of_range_values_are_rejected() {
        assert_eq!(QuatValue::new(4), Err(ValueError::QuatOutOfRange(4)));
        assert_eq!(BitValue::new(2), Err(ValueError::BitOutOfRange(2)));
    }

    #[test]
    fn threshold_inverters() {
        assert_eq!(nqi(q(1)), b(0));
        assert_eq!(pqi(q(2)), b(1));
        assert_eq!(iqi(q(0)), b(1));
        // decoder truth table: rows 0..3 as (NQI, IQI, PQI) in level terms
        let table = [[3, 3, 3], [0, 3, 3], [0, 0, 3], [0, 0, 0]];
        for (v, row) in QuatValue::ALL.iter().zip(table) {
            let got = [nqi(*v), iqi(*v), pqi(*v)].map(|x| x.level().value());
            assert_eq!(got, row, "q = {v}");
        }
    }

    #[test]
    fn decode_full_rows() {
        let d0 = decode_full(q(0));
        assert_eq!(
            [d0.i0, d0.i1, d0.i1_bar, d0.ii, d0.i2_bar, d0.i2, d0.i3],
            [1, 0, 1, 1, 1, 0, 1].map(b)
        );
        let d2 = decode_full(q(2));
        assert_eq!(
            [d2.i0, d2.i1, d2.i1_bar, d2.ii, d2.i2_bar, d2.i2, d2.i3],
            [0, 0, 1, 0, 0, 1, 1].map(b)
        );
        let d3 = decode_full(q(3));
        assert_eq!(d3.i3, b(0));
        assert_eq!([d3.i0, d3.i1, d3.i2], [b(0); 3]);
        assert_eq!(d3.is_three(), b(1));
        for v in QuatValue::ALL {
            assert!(decode_full(v).is_consistent(), "q = {v}");
        }
    }

    #[test]
    fn bit_pairs() {
        assert_eq!(q_to_bits(q(2)), BitPair::new(b(1), b(0)));
        assert_eq!(q_to_bits(q(0)), BitPair::new(b(0), b(0)));
        for v in QuatValue::ALL {
            assert_eq!(bits_to_q(q_to_bits(v)), v);
        }
        let mut seen: Vec<_> = BitPair::all().iter().map(|p| (p.x1, p.x0)).collect();
        seen.dedup();
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn successor_family() {
        assert_eq!(successor_k(q(3), Shift::Successor), q(0));
        assert_eq!(successor_k(q(1), Shift::SecondSuccessor), q(3));
        assert_eq!(successor_k(q(0), Shift::Predecessor), q(3));
        for v in QuatValue::ALL {
            assert_eq!(
                successor_k(successor_k(v, Shift::Successor), Shift::Predecessor),
                v
            );
        }
    }

    #[test]
    fn half_adder_digit() {
        assert_eq!(h_mod(q(3), q(3)), q(2));
        for v in QuatValue::ALL {
            assert_eq!(h_mod(q(0), v), v);
        }
        // carry-out table: A+B from 0 to 6 maps to H = 0,1,2,3,0,1,2
        for (sum, h) in [0u8, 1, 2, 3, 0, 1, 2].iter().enumerate() {
            let a = q((sum as u8).min(3));
            let bb = q(sum as u8 - a.value());
            assert_eq!(h_mod(a, bb), q(*h));
        }
    }

    #[test]
    fn carry_from_h_matches_oracle() {
        assert_eq!(cout_from_h(q(3), q(0), b(0)), b(0));
        assert_eq!(cout_from_h(q(3), q(0), b(1)), b(1));
        assert_eq!(cout_from_h(q(0), q(0), b(1)), b(0));
        let mut checked = 0;
        for a in QuatValue::ALL {
            for bb in QuatValue::ALL {
                for c in BitValue::ALL {
                    assert_eq!(cout_from_h(h_mod(a, bb), a, c), quat_add_oracle(a, bb, c).1);
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 32);
    }

    #[test]
    fn generate_propagate() {
        assert_eq!(quat_g_p(q(2), q(2)), (b(1), b(0)));
        assert_eq!(quat_g_p(q(0), q(3)), (b(0), b(1)));
        assert_eq!(quat_g_p(q(0), q(0)), (b(0), b(0)));
        for a in QuatValue::ALL {
            for bb in QuatValue::ALL {
                assert_eq!(g_gate_form(a, bb), quat_g_p(a, bb).0, "({a},{bb})");
            }
        }
    }

    #[test]
    fn published_p_formula_is_not_propagate() {
        let sem = |a, bb| quat_g_p(a, bb).1;
        assert_ne!(p_formula_one_hot(q(0), q(3)), sem(q(0), q(3)));
        assert_ne!(p_formula_threshold(q(0), q(1)), sem(q(0), q(1)));
    }

    #[test]
    fn multi_digit_oracle() {
        let (s, c) = add_digits(&[q(3), q(3)], &[q(1), q(0)], b(0));
        assert_eq!(s, vec![q(0), q(0)]);
        assert_eq!(c, b(1));
        let (s, c) = add_digits(&[q(1)], &[q(2)], b(1));
        assert_eq!((s, c), (vec![q(0)], b(1)));
    }

    proptest! {
        #[test]
        fn multi_digit_matches_single_digit_ripple(
            a in proptest::collection::vec(0u8..4, 1..6),
            seed in proptest::collection::vec(0u8..4, 6),
            cin in 0u8..2,
        ) {
            let a: Vec<_> = a.into_iter().map(q).collect();
            let bv: Vec<_> = seed[..a.len()].iter().map(|v| q(*v)).collect();
            let mut carry = b(cin);
            let mut digits = Vec::new();
            for (x, y) in a.iter().zip(&bv) {
                let (s, c) = quat_add_oracle(*x, *y, carry);
                digits.push(s);
                carry = c;
            }
            prop_assert_eq!(add_digits(&a, &bv, b(cin)), (digits, carry));
        }

        #[test]
        fn thresholds_roundtrip(v in 0u8..4) {
            let v = q(v);
            prop_assert_eq!(level_from_thresholds(nqi(v).is_high(), iqi(v).is_high(), pqi(v).is_high()), v);
            prop_assert_eq!(level_from_ge(!nqi(v).is_high(), !iqi(v).is_high(), !pqi(v).is_high()), v);
        }
    }
}
